//! Closed forms against oracles on a seeded grid of random instances.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ffcore::{Field, FieldRef, QExp};
use crate::hankel::{covrad_bounds, covrad_periodic};
use crate::lattice::{reduce_lattice, ConvexBody, Lattice};
use crate::linalg::{polymat, ratmat, MatFq};
use crate::oracle::{self, Window};
use crate::periodic::{
    check_bounds, count_points, minkowski_search, packing_density, packing_radius,
    succ_minima_periodic, MinkowskiOutcome, PeriodicLattice,
};
use crate::random;

/// Largest window `verify` materializes point by point.
pub const ENUMERATION_LIMIT: u128 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub qs: Vec<u32>,
    pub ds: Vec<usize>,
    pub ns: Vec<u32>,
    /// Instances per (q, d, N) cell.
    pub per_cell: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            qs: vec![2, 3],
            ds: vec![2, 3],
            ns: vec![0, 1, 2],
            per_cell: 3,
        }
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// `q=2,3;d=2,3;N=0,1,2` with an optional `;k=<per cell>`.
    fn from_str(s: &str) -> Result<Self> {
        fn list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
            v.split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::parse("grid", format!("bad {key} value '{x}'"))))
                .collect()
        }
        let mut g = GridSpec::default();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::parse("grid", format!("expected key=values, got '{part}'")))?;
            match k.trim() {
                "q" => g.qs = list("q", v)?,
                "d" => g.ds = list("d", v)?,
                "N" | "n" => g.ns = list("N", v)?,
                "k" => {
                    g.per_cell = v
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse("grid", format!("bad k value '{v}'")))?
                }
                other => return Err(Error::parse("grid", format!("unknown key '{other}'"))),
            }
        }
        if g.ds.iter().any(|&d| d < 2) {
            return Err(Error::parse("grid", "d must be at least 2"));
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckRow {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    /// Cases the oracle could not decide within its budget or precision.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl CheckRow {
    fn new(name: &str) -> Self {
        CheckRow {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn record(&mut self, label: &str, outcome: Result<Option<String>>) {
        self.cases += 1;
        match outcome {
            Ok(None) => self.passed += 1,
            Ok(Some(msg)) => self.failures.push(format!("{label}: {msg}")),
            Err(Error::BudgetExceeded { .. } | Error::CapExceeded { .. }) => self.skipped += 1,
            Err(e) if e.is_precision() => self.skipped += 1,
            Err(e) => self.failures.push(format!("{label}: error: {e}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub seed: u64,
    pub instances: usize,
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.failures.is_empty())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}  instances {}", self.seed, self.instances)?;
        writeln!(f, "{:<12} {:>6} {:>6} {:>6} {:>6}  status", "check", "cases", "pass", "skip", "fail")?;
        for r in &self.rows {
            let status = if r.failures.is_empty() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{:<12} {:>6} {:>6} {:>6} {:>6}  {status}",
                r.name,
                r.cases,
                r.passed,
                r.skipped,
                r.failures.len()
            )?;
        }
        for r in &self.rows {
            for msg in r.failures.iter().take(5) {
                writeln!(f, "  {}: {msg}", r.name)?;
            }
        }
        Ok(())
    }
}

fn mismatch<T: PartialEq + fmt::Debug>(what: &str, closed: T, oracle: T) -> Option<String> {
    (closed != oracle).then(|| format!("{what}: closed form {closed:?}, oracle {oracle:?}"))
}

/// Reduction soundness for one (Λ, C): unimodular transform, `Σ degs = deg det`, reducedness
/// of the output, the Minkowski equality, and orthogonality for `samples` random vectors.
pub fn check_reduction<R: Rng>(
    rng: &mut R,
    lattice: &Lattice,
    body: &ConvexBody,
    samples: usize,
) -> Result<Option<String>> {
    let field = lattice.field();
    let b = ratmat::mul(&body.inverse()?, lattice.basis(), field)?;
    let c = ratmat::common_denominator(&b, field);
    let p = ratmat::clear_denominators(&b, &c)?;
    let res = polymat::popov_reduce(&p, field)?;
    if !polymat::is_unimodular(&res.transform, field)? {
        return Ok(Some("transform is not unimodular".into()));
    }
    if polymat::mul(&p, &res.transform, field)? != res.reduced {
        return Ok(Some("reduced != input * transform".into()));
    }
    let det_deg = polymat::det_poly(&p, field)?.deg();
    if res.degrees.iter().sum::<i64>() != det_deg {
        return Ok(Some(format!("sum of degrees {:?} != deg det {det_deg}", res.degrees)));
    }
    let lead: MatFq = polymat::leading_matrix(&res.reduced, field);
    if lead.rank() != lattice.dim() {
        return Ok(Some("leading matrix is singular".into()));
    }
    let red = reduce_lattice(lattice, body)?;
    let sum: i64 = red.exponents.iter().sum();
    if sum != lattice.log_det() - body.log_m() {
        return Ok(Some(format!(
            "sum e_i = {sum}, log det - log m = {}",
            lattice.log_det() - body.log_m()
        )));
    }
    for _ in 0..samples {
        let coeffs = random::kinf_vector(rng, field, lattice.dim());
        let v = red.ambient(&coeffs);
        let lhs = body.norm(&v)?;
        let rhs = red.norm_of_coords(&coeffs)?;
        if lhs != rhs {
            return Ok(Some(format!("orthogonality: |v|_C = {lhs}, max |c_i| q^e_i = {rhs}")));
        }
    }
    Ok(None)
}

pub fn check_minima(s: &PeriodicLattice, body: &ConvexBody) -> Result<Option<String>> {
    let closed = succ_minima_periodic(s, body)?;
    let oracle = oracle::succmin_oracle(s, body)?;
    for (w, &e) in closed.witnesses.iter().zip(&closed.exponents) {
        if body.norm(w)? != QExp::pow(e) || !oracle::contains(s, w)? {
            return Ok(Some(format!("witness of norm q^{e} is not a point of S with that norm")));
        }
    }
    Ok(mismatch("minima", closed.exponents, oracle))
}

/// `count_points` against the window dimension for each radius, and against the
/// materialized window when it is small.
pub fn check_count(s: &PeriodicLattice, body: &ConvexBody, radii: &[i64]) -> Result<Option<String>> {
    for &r in radii {
        let closed = count_points(s, body, r)?;
        let window = oracle::count_window(s, body, r)?;
        if closed != window {
            return Ok(mismatch(&format!("count at R={r}"), closed, window));
        }
        if window <= ENUMERATION_LIMIT.into() {
            let pts = oracle::enumerate_points(s, body, &Window::new(r))?;
            let distinct: HashSet<String> = pts.iter().map(|p| format!("{p:?}")).collect();
            if distinct.len() != pts.len() || num_bigint::BigUint::from(pts.len()) != closed {
                return Ok(Some(format!("enumeration at R={r} has {} points, expected {closed}", pts.len())));
            }
            for p in &pts {
                if body.norm(p)? > QExp::pow(r) {
                    return Ok(Some(format!("enumerated point outside the ball at R={r}")));
                }
            }
        }
    }
    Ok(None)
}

/// Hankel covering radius against the pattern oracle, inside the corollary's bounds.
pub fn check_covrad(s: &PeriodicLattice, body: &ConvexBody, depth: Option<i64>) -> Result<Option<String>> {
    let closed = covrad_periodic(s, body)?;
    let exps = reduce_lattice(s.lattice(), body)?.exponents;
    let m = depth.unwrap_or_else(|| oracle::default_depth(s.n().unwrap_or(0), &exps).max(12));
    let o = oracle::covrad_oracle(s, body, &Window::new(0).with_depth(m))?;
    if let Some(msg) = mismatch("covering radius", closed.value(), o) {
        return Ok(Some(msg));
    }
    let b = covrad_bounds(s.lattice(), s.n().unwrap_or(0), body)?;
    if !b.contains(closed.exponent) {
        return Ok(Some(format!(
            "covering radius q^{} outside [{}, {}]",
            closed.exponent, b.lower, b.upper
        )));
    }
    Ok(None)
}

pub fn check_packing(s: &PeriodicLattice, body: &ConvexBody) -> Result<Option<String>> {
    let e1 = oracle::lambda1_oracle(s, body)?;
    if let Some(msg) = mismatch("packing radius", packing_radius(s, body)?, QExp::pow(e1 - 1)) {
        return Ok(Some(msg));
    }
    let closed = packing_density(s, body)?;
    let r = oracle::density_threshold(s, body)?;
    for radius in [r, r + 1] {
        let o = oracle::density_oracle(s, body, radius)?;
        if o != closed {
            return Ok(Some(format!("density at R={radius}: closed form {closed}, oracle {o}")));
        }
    }
    Ok(None)
}

pub fn check_theorem_bounds(s: &PeriodicLattice, body: &ConvexBody) -> Result<Option<String>> {
    let rep = check_bounds(s, body)?;
    Ok((!rep.pass()).then(|| format!("bounds violated: {rep:?}")))
}

/// A found point must be a nonzero point of S in C; under the hypothesis a point must be found.
pub fn check_minkowski(s: &PeriodicLattice, body: &ConvexBody) -> Result<Option<String>> {
    let rep = minkowski_search(s, body)?;
    let holds = rep.hypothesis_holds();
    Ok(match &rep.outcome {
        MinkowskiOutcome::Found(v) => {
            if !rep.measure_condition() {
                Some("claimed a point without the measure condition".into())
            } else if body.norm(v)? > QExp::ONE || body.norm(v)? == QExp::ZERO {
                Some("found point is zero or outside C".into())
            } else if !oracle::contains(s, v)? {
                Some("found point is not in S".into())
            } else {
                None
            }
        }
        MinkowskiOutcome::NotFound => {
            if holds {
                Some("hypothesis holds but nothing found".into())
            } else if oracle::lambda1_oracle(s, body)? <= 0 {
                Some("search missed a point of S in C".into())
            } else {
                None
            }
        }
        MinkowskiOutcome::Inapplicable => rep.measure_condition().then(|| "inconsistent measure flag".into()),
    })
}

/// Run every check on `per_cell` random instances of each (q, d, N) cell.
pub fn run_verify(grid: &GridSpec, seed: u64) -> Result<VerifyReport> {
    let names = [
        "reduction", "minima", "count", "covrad", "packing", "bounds", "minkowski", "coset",
    ];
    let mut rows: Vec<CheckRow> = names.iter().map(|n| CheckRow::new(n)).collect();
    let mut instances = 0;
    let mut cell: u64 = 0;
    for &q in &grid.qs {
        let field: FieldRef = Field::with_order(q)?;
        for &d in &grid.ds {
            for &n in &grid.ns {
                cell += 1;
                let mut rng = random::stream(seed, cell);
                for k in 0..grid.per_cell {
                    let label = format!("q={q} d={d} N={n} #{k}");
                    let lattice = random::lattice(&mut rng, &field, d, -2, 2)?;
                    let body = random::unit_or_body(&mut rng, &field, d)?;
                    let s = random::alpha_lattice(&mut rng, &lattice, n)?;
                    instances += 1;
                    rows[0].record(&label, check_reduction(&mut rng, &lattice, &body, 10));
                    rows[1].record(&label, check_minima(&s, &body));
                    rows[2].record(&label, check_count(&s, &body, &[0, 1, 2]));
                    rows[3].record(&label, check_covrad(&s, &body, None));
                    rows[4].record(&label, check_packing(&s, &body));
                    rows[5].record(&label, check_theorem_bounds(&s, &body));
                    let scaled = body.scaled(rng.gen_range(-2..=2));
                    rows[6].record(&label, check_minkowski(&s, &scaled));
                    let coset = random::coset_lattice(&mut rng, &lattice, (n as usize + 1).min(2))?;
                    let outcome = check_minima(&coset, &body).and_then(|m| match m {
                        Some(msg) => Ok(Some(msg)),
                        None => match check_count(&coset, &body, &[0, 1])? {
                            Some(msg) => Ok(Some(msg)),
                            None => check_packing(&coset, &body),
                        },
                    });
                    rows[7].record(&label, outcome);
                }
            }
        }
    }
    Ok(VerifyReport {
        seed,
        instances,
        rows,
    })
}
