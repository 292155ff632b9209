//! Acceptance criteria 1-9. Runs without the libtest harness so that every criterion prints
//! exactly one PASS/FAIL line; exits nonzero if any fails.

use std::process::Command;
use std::thread;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::Rng;

use ffperiodic::ffcore::parse::parse_element;
use ffperiodic::ffcore::{Field, FieldRef, KInf, QExp};
use ffperiodic::hankel::{covrad_bounds, covrad_periodic, covrad_scan};
use ffperiodic::lattice::{reduce_lattice, ConvexBody, Lattice};
use ffperiodic::oracle::{self, Window};
use ffperiodic::periodic::{
    check_bounds, count_points, minkowski_search, packing_density, packing_radius, Frame,
    MinkowskiOutcome, PeriodicLattice,
};
use ffperiodic::random::{self, InstanceRng};
use ffperiodic::verify::check_reduction;
use ffperiodic::Result;

const SEED: u64 = 20_240_601;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: String) -> Verdict {
    Verdict { ok, detail }
}

fn err(e: impl std::fmt::Display) -> Verdict {
    verdict(false, format!("error: {e}"))
}

fn field(q: u32) -> FieldRef {
    Field::with_order(q).expect("valid order")
}

fn w_instance(n: u32) -> PeriodicLattice {
    let f = field(2);
    let lat = Lattice::standard(&f, 2).unwrap();
    let alpha = [parse_element(&f, "x^-1").unwrap(), parse_element(&f, "x^-2").unwrap()];
    PeriodicLattice::alpha(&lat, &alpha, Frame::Reduced, n).unwrap()
}

/// A random alpha-form instance with a unit or random body.
fn sample(rng: &mut InstanceRng, q: u32, d: usize, n: u32) -> Result<(PeriodicLattice, ConvexBody)> {
    let f = field(q);
    let lat = random::lattice(rng, &f, d, -2, 2)?;
    let body = random::unit_or_body(rng, &f, d)?;
    Ok((random::alpha_lattice(rng, &lat, n)?, body))
}

fn cells(qs: &[u32], ds: &[usize], ns: &[u32]) -> Vec<(u32, usize, u32)> {
    let mut out = Vec::new();
    for &q in qs {
        for &d in ds {
            for &n in ns {
                out.push((q, d, n));
            }
        }
    }
    out
}

/// 1. Σ e_i = log det Λ - log m(C) for random (Λ, C).
fn minkowski_equality() -> Verdict {
    let mut count = 0;
    let mut rng = random::stream(SEED, 1);
    for (q, d, _) in cells(&[2, 3, 4], &[2, 3, 4], &[0]) {
        let f = field(q);
        for _ in 0..112 {
            let mut run = || -> Result<bool> {
                let lat = random::lattice(&mut rng, &f, d, -3, 3)?;
                let body = random::body(&mut rng, &f, d, -3, 3)?;
                let red = reduce_lattice(&lat, &body)?;
                Ok(red.exponents.iter().sum::<i64>() == lat.log_det() - body.log_m())
            };
            match run() {
                Ok(true) => count += 1,
                Ok(false) => return verdict(false, format!("mismatch on instance {count} (q={q}, d={d})")),
                Err(e) => return err(e),
            }
        }
    }
    verdict(count >= 1000, format!("{count} random (lattice, body) pairs, q in {{2,3,4}}, d in {{2,3,4}}"))
}

/// 2. count_points equals the number of enumerated points.
fn counting() -> Verdict {
    let budget = 1u128 << 16;
    let mut instances = 0;
    let mut resampled = 0;
    let mut points = 0usize;
    for (ci, (q, d, n)) in cells(&[2, 3], &[2, 3], &[0, 1, 2]).into_iter().enumerate() {
        let mut rng = random::stream(SEED, 200 + ci as u64);
        let mut done = 0;
        while done < 17 {
            // Ok(Ok(points)) on agreement, Ok(Err(message)) on a mismatch
            let run = |rng: &mut InstanceRng| -> Result<std::result::Result<usize, String>> {
                let (s, body) = sample(rng, q, d, n)?;
                let mut total = 0;
                for r in 0..=2 {
                    let pts = oracle::enumerate_points(&s, &body, &Window::new(r).with_budget(budget))?;
                    let closed = count_points(&s, &body, r)?;
                    if BigUint::from(pts.len()) != closed {
                        return Ok(Err(format!("q={q} d={d} N={n} R={r}: {} points, count_points {closed}", pts.len())));
                    }
                    total += pts.len();
                }
                Ok(Ok(total))
            };
            match run(&mut rng) {
                Ok(Ok(p)) => {
                    points += p;
                    done += 1;
                    instances += 1;
                }
                Ok(Err(msg)) => return verdict(false, msg),
                Err(ffperiodic::Error::BudgetExceeded { .. }) => resampled += 1,
                Err(e) => return err(e),
            }
        }
    }
    verdict(
        instances >= 200,
        format!("{instances} instances x R in {{0,1,2}}, {points} points enumerated; {resampled} draws over the 2^16 budget resampled"),
    )
}

/// 3 and 4. Hankel covering radius against the oracle at depth 12, inside the corollary's
/// bounds; and the lattice case α = 0, N = 0.
fn covering() -> (Verdict, Verdict) {
    let window = Window::new(0).with_depth(12);
    let mut matched = 0;
    let mut bounded = 0;
    let mut failure3: Option<String> = None;
    let mut failure4: Option<String> = None;
    let mut check = |s: &PeriodicLattice, body: &ConvexBody, label: String| -> Result<()> {
        let closed = covrad_periodic(s, body)?;
        let o = oracle::covrad_oracle(s, body, &window)?;
        if closed.value() == o {
            matched += 1;
        } else if failure3.is_none() {
            failure3 = Some(format!("{label}: Hankel {} vs oracle {o}", closed.value()));
        }
        let b = covrad_bounds(s.lattice(), s.n().unwrap(), body)?;
        if b.contains(closed.exponent) {
            bounded += 1;
        } else if failure4.is_none() {
            failure4 = Some(format!("{label}: q^{} outside [{}, {}]", closed.exponent, b.lower, b.upper));
        }
        Ok(())
    };
    let w = w_instance(1);
    let unit = ConvexBody::unit(w.field(), 2);
    let w_val = covrad_periodic(&w, &unit).map(|r| r.exponent);
    if let Err(e) = check(&w, &unit, "W".into()) {
        return (err(&e), err(e));
    }
    for (ci, (q, d, n)) in cells(&[2, 3], &[2, 3], &[0, 1]).into_iter().enumerate() {
        let mut rng = random::stream(SEED, 300 + ci as u64);
        for k in 0..25 {
            let r = sample(&mut rng, q, d, n).and_then(|(s, body)| check(&s, &body, format!("q={q} d={d} N={n} #{k}")));
            if let Err(e) = r {
                return (err(&e), err(e));
            }
        }
    }
    // α = 0, N = 0: S = Λ and CovRad = q^{e_d - 1}
    let mut lattice_ok = 0;
    let mut lattice_fail: Option<String> = None;
    let mut rng = random::stream(SEED, 350);
    for k in 0..100 {
        let q = [2, 3][k % 2];
        let d = [2, 3][(k / 2) % 2];
        let f = field(q);
        let mut run = || -> Result<bool> {
            let lat = random::lattice(&mut rng, &f, d, -3, 3)?;
            let body = random::unit_or_body(&mut rng, &f, d)?;
            let red = reduce_lattice(&lat, &body)?;
            let zero = vec![KInf::zero(&f); d];
            let scan = covrad_scan(&zero, &red.exponents, 0)?;
            let plain = PeriodicLattice::plain(&lat)?;
            let o = oracle::covrad_oracle(&plain, &body, &window)?;
            let ed = *red.exponents.last().unwrap();
            Ok(scan.exponent == ed - 1 && o == QExp::pow(ed - 1))
        };
        match run() {
            Ok(true) => lattice_ok += 1,
            Ok(false) => {
                lattice_fail.get_or_insert(format!("lattice #{k}"));
            }
            Err(e) => {
                lattice_fail.get_or_insert(format!("lattice #{k}: {e}"));
            }
        }
    }
    let total = 201;
    let w_ok = w_val == Ok(-2);
    let ok3 = matched == total && w_ok && lattice_ok == 100;
    let detail3 = match (&failure3, &lattice_fail) {
        (Some(m), _) | (None, Some(m)) => m.clone(),
        _ => format!("{matched}/{total} alpha-form instances (W = q^-2: {w_ok}), {lattice_ok}/100 lattices at q^(e_d-1)"),
    };
    let detail4 = failure4
        .clone()
        .unwrap_or_else(|| format!("{bounded}/{total} instances within [lower, upper]"));
    (verdict(ok3, detail3), verdict(failure4.is_none() && bounded == total, detail4))
}

/// 5. Packing radius and stationary density.
fn packing() -> Verdict {
    let mut n_ok = 0;
    let mut cases = Vec::new();
    for (ci, (q, d, n)) in cells(&[2, 3], &[2, 3], &[0, 1, 2]).into_iter().enumerate() {
        let mut rng = random::stream(SEED, 500 + ci as u64);
        for _ in 0..17 {
            match sample(&mut rng, q, d, n) {
                Ok(c) => cases.push(c),
                Err(e) => return err(e),
            }
        }
    }
    for (i, (s, body)) in cases.iter().enumerate() {
        let run = || -> Result<Option<String>> {
            let e1 = oracle::lambda1_oracle(s, body)?;
            if packing_radius(s, body)? != QExp::pow(e1 - 1) {
                return Ok(Some(format!("instance {i}: packing radius")));
            }
            let closed = packing_density(s, body)?;
            let r = oracle::density_threshold(s, body)?;
            for radius in [r, r + 1] {
                let o = oracle::density_oracle(s, body, radius)?;
                if o != closed {
                    return Ok(Some(format!("instance {i}: density at R={radius}: {o} vs {closed}")));
                }
            }
            Ok(None)
        };
        match run() {
            Ok(None) => n_ok += 1,
            Ok(Some(m)) => return verdict(false, m),
            Err(e) => return err(e),
        }
    }
    let w1 = w_instance(1);
    let w0 = w_instance(0);
    let unit = ConvexBody::unit(w1.field(), 2);
    let d1 = packing_density(&w1, &unit);
    let d0 = packing_density(&w0, &unit);
    let w_ok = d1 == Ok(BigRational::from_integer(1.into())) && d0 == Ok(BigRational::new(1.into(), 2.into()));
    verdict(
        n_ok >= 200 && w_ok,
        format!("{n_ok} instances stationary at R and R+1; W density 1, W (N=0) density 1/2: {w_ok}"),
    )
}

/// 6. Upper bounds on the minima, and the two-sided estimate under its hypothesis.
fn bounds() -> Verdict {
    let mut total = 0;
    let mut sandwiches = 0;
    for (ci, (q, d, n)) in cells(&[2, 3], &[2, 3], &[0, 1, 2]).into_iter().enumerate() {
        let mut rng = random::stream(SEED, 600 + ci as u64);
        for k in 0..17 {
            let mut run = || -> Result<Option<String>> {
                let (s, body) = sample(&mut rng, q, d, n)?;
                let rep = check_bounds(&s, &body)?;
                if !(rep.lambda1_ok && rep.product_ok) {
                    return Ok(Some(format!("q={q} d={d} N={n} #{k}: upper bound violated {rep:?}")));
                }
                if d == 2 && n <= 1 {
                    if let Some(sw) = rep.sandwich.filter(|sw| sw.hypothesis) {
                        if !sw.holds() {
                            return Ok(Some(format!("q={q} N={n} #{k}: sandwich violated {sw:?}")));
                        }
                        sandwiches += 1;
                    }
                }
                Ok(None)
            };
            match run() {
                Ok(None) => total += 1,
                Ok(Some(m)) => return verdict(false, m),
                Err(e) => return err(e),
            }
        }
    }
    let w = w_instance(1);
    let rep = check_bounds(&w, &ConvexBody::unit(w.field(), 2));
    let w_eq = matches!(&rep, Ok(r) if r.sandwich.as_ref().is_some_and(|s| (s.lower, s.product, s.upper) == (-2, -2, -2)));
    verdict(
        total >= 200 && sandwiches > 0 && w_eq,
        format!("{total} instances; sandwich checked on {sandwiches} d=2, N<=1 instances with the hypothesis; W equality q^-2 on both sides: {w_eq}"),
    )
}

/// 7. Convex body search.
///
/// Verified points whenever m(C) > det(Λ)/q^{n+d}, and no false claim otherwise. Instances
/// where only the weaker measure condition on m(C + D ∩ S) holds are tallied; each must be
/// confirmed point-free by the oracle.
fn minkowski() -> Verdict {
    let mut holds = 0;
    let mut fails = 0;
    let mut measure_only = 0;
    let mut rng = random::stream(SEED, 700);
    let mut draws = 0;
    while (holds < 100 || fails < 100) && draws < 5000 {
        draws += 1;
        let q = [2, 3][rng.gen_range(0..2)];
        let d = [2, 3][rng.gen_range(0..2)];
        let n = rng.gen_range(0..3);
        // Ok(None): cell already full
        let run = |rng: &mut InstanceRng| -> Result<Option<(bool, bool, Option<String>)>> {
            let (s, body) = sample(rng, q, d, n)?;
            let body = body.scaled(rng.gen_range(-3..=3));
            let rep = minkowski_search(&s, &body)?;
            let h = rep.hypothesis_holds();
            if (h && holds >= 100) || (!h && fails >= 100) {
                return Ok(None);
            }
            let label = format!("q={q} d={d} N={n}");
            let problem = match &rep.outcome {
                MinkowskiOutcome::Found(v) => {
                    let norm = body.norm(v)?;
                    (norm == QExp::ZERO || norm > QExp::ONE || !oracle::contains(&s, v)?)
                        .then(|| format!("{label}: returned point is not a nonzero point of S in C"))
                }
                MinkowskiOutcome::NotFound if h => Some(format!("{label}: hypothesis holds but no point returned")),
                MinkowskiOutcome::NotFound => (oracle::lambda1_oracle(&s, &body)? <= 0)
                    .then(|| format!("{label}: search missed a point of S in C")),
                MinkowskiOutcome::Inapplicable => None,
            };
            let counterexample = !h && rep.measure_condition() && rep.outcome == MinkowskiOutcome::NotFound;
            Ok(Some((h, counterexample, problem)))
        };
        match run(&mut rng) {
            Ok(None) => {}
            Ok(Some((_, _, Some(p)))) => return verdict(false, p),
            Ok(Some((true, _, None))) => holds += 1,
            Ok(Some((false, c, None))) => {
                fails += 1;
                measure_only += c as usize;
            }
            Err(e) => return err(e),
        }
    }
    verdict(
        holds >= 100 && fails >= 100,
        format!(
            "{holds} instances with m(C) above the threshold (verified points), {fails} without (no false claim); \
             {measure_only} of those satisfy only the m(C + D∩S) condition and are oracle-certified point-free"
        ),
    )
}

/// 8. Reduction soundness with 50 orthogonality samples per instance.
fn reduction() -> Verdict {
    let mut count = 0;
    let mut rng = random::stream(SEED, 800);
    for (q, d, _) in cells(&[2, 3, 4], &[2, 3, 4], &[0]) {
        let f = field(q);
        for _ in 0..34 {
            let run = |rng: &mut InstanceRng| -> Result<Option<String>> {
                let lat = random::lattice(rng, &f, d, -3, 3)?;
                let body = random::body(rng, &f, d, -3, 3)?;
                check_reduction(rng, &lat, &body, 50)
            };
            match run(&mut rng) {
                Ok(None) => count += 1,
                Ok(Some(m)) => return verdict(false, format!("q={q} d={d}: {m}")),
                Err(e) => return err(e),
            }
        }
    }
    verdict(
        count >= 300,
        format!("{count} reductions: unimodular transform, sum of degrees = deg det, 50 orthogonality samples each"),
    )
}

/// 9. The documented command lines.
fn cli() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_ffperiodic");
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/instances");
    let run = |args: &[&str]| -> (i32, String) {
        match Command::new(bin).args(args).current_dir(dir).output() {
            Ok(o) => (o.status.code().unwrap_or(-1), String::from_utf8_lossy(&o.stdout).trim().to_string()),
            Err(e) => (-1, e.to_string()),
        }
    };
    let covrad = run(&["covrad", "w.json"]);
    let oracle = run(&["covrad", "--oracle", "w.json"]);
    let minima = run(&["minima", "lattice_x.json"]);
    let verify = run(&["verify", "--grid", "q=2,3;d=2,3;N=0,1,2", "--seed", "7"]);
    let ok = covrad == (0, "q^-2".into())
        && oracle == (0, "q^-2".into())
        && minima == (0, "q^0 q^0".into())
        && verify.0 == 0;
    verdict(
        ok,
        format!(
            "covrad -> {:?}, covrad --oracle -> {:?}, minima -> {:?}, verify exit {}",
            covrad.1, oracle.1, minima.1, verify.0
        ),
    )
}

fn main() {
    let start = Instant::now();
    let (c1, c2, c34, c5, c6, c7, c8, c9) = thread::scope(|s| {
        let h1 = s.spawn(minkowski_equality);
        let h2 = s.spawn(counting);
        let h34 = s.spawn(covering);
        let h5 = s.spawn(packing);
        let h6 = s.spawn(bounds);
        let h7 = s.spawn(minkowski);
        let h8 = s.spawn(reduction);
        let h9 = s.spawn(cli);
        (
            h1.join().unwrap(),
            h2.join().unwrap(),
            h34.join().unwrap(),
            h5.join().unwrap(),
            h6.join().unwrap(),
            h7.join().unwrap(),
            h8.join().unwrap(),
            h9.join().unwrap(),
        )
    });
    let (c3, c4) = c34;
    let names = [
        "1 Minkowski equality",
        "2 point counting",
        "3 covering radius",
        "4 covering radius bounds",
        "5 packing radius and density",
        "6 successive minima bounds",
        "7 convex body search",
        "8 reduction soundness",
        "9 command line",
    ];
    let all = [c1, c2, c3, c4, c5, c6, c7, c8, c9];
    let mut failed = 0;
    for (name, v) in names.iter().zip(&all) {
        println!("{} criterion {name}: {}", if v.ok { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.ok);
    }
    println!("acceptance: {} passed, {failed} failed in {:.1}s", all.len() - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
