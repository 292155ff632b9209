use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};

use super::{frac_vec, BodyView, PeriodicForm, PeriodicLattice};
use crate::error::{Error, Result};
use crate::ffcore::{KInf, Poly, QExp};
use crate::lattice::ConvexBody;
use crate::linalg::{det_kinf, rank_kinf, Matrix};

/// `q^e` as an exact rational.
pub(crate) fn q_pow(q: u32, e: i64) -> BigRational {
    let base = BigInt::from(q);
    let mag: BigInt = Pow::pow(&base, e.unsigned_abs());
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// Integer log_q of a power of q.
fn log_q(q: u64, mut n: u64) -> i64 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % q, 0, "count is a power of q");
        n /= q;
        k += 1;
    }
    k
}

/// `⟨Qα⟩` in reduced coordinates for every `Q` of degree at most N (zero included), in
/// base-q index order.
pub fn frac_orbit(s: &PeriodicLattice, body: &ConvexBody) -> Result<Vec<(Poly, Vec<KInf>)>> {
    let PeriodicForm::Alpha { alpha, n } = s.form() else {
        return Err(Error::Unsupported("an alpha-form periodic lattice".into()));
    };
    let view = s.view(body)?;
    let count = view.rep_count()?;
    let c = frac_vec(&view.basis.coordinates(alpha));
    let field = s.field();
    Ok((0..count)
        .map(|i| {
            let q = Poly::from_index(field, i, *n as usize + 1);
            let v = frac_vec(&c.iter().map(|x| x.mul_poly(&q)).collect::<Vec<_>>());
            (q, v)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuccessiveMinima {
    /// `λ_{i,C}(S) = q^{e_i}`.
    pub exponents: Vec<i64>,
    /// Linearly independent points of S realizing the minima, ambient coordinates.
    pub witnesses: Vec<Vec<KInf>>,
}

/// Successive minima by greedy selection.
///
/// Any `s ∈ S` splits as `f + w` with `f` a representative in D and `w ∈ Λ`, and
/// `‖f + w‖_C = max(‖f‖_C, ‖w‖_C)` coordinatewise, so `S ∩ B(0, r)` spans the same space as
/// the representatives of norm <= r together with the reduced vectors of norm <= r.
pub fn succ_minima_periodic(s: &PeriodicLattice, body: &ConvexBody) -> Result<SuccessiveMinima> {
    let view = s.view(body)?;
    succ_minima_in_view(&view)
}

pub(crate) fn succ_minima_in_view(view: &BodyView) -> Result<SuccessiveMinima> {
    let field = view.field().clone();
    let d = view.basis.dim();
    let count = view.rep_count()?;
    let mut candidates: Vec<(i64, u64, Vec<KInf>)> = Vec::new();
    for i in 1..count {
        let f = view.rep(i);
        let e = view.norm(&f)?.exp();
        candidates.push((e, i, f));
    }
    for (i, &e) in view.exponents().iter().enumerate() {
        let unit: Vec<KInf> = (0..d)
            .map(|j| if i == j { KInf::one(&field) } else { KInf::zero(&field) })
            .collect();
        candidates.push((e, count + i as u64, unit));
    }
    candidates.sort_by_key(|(e, order, _)| (*e, *order));
    let mut chosen: Vec<Vec<KInf>> = Vec::new();
    let mut exponents = Vec::new();
    for (e, _, f) in candidates {
        if chosen.len() == d {
            break;
        }
        chosen.push(f);
        if rank_kinf(&chosen, &field)? == chosen.len() {
            exponents.push(e);
        } else {
            chosen.pop();
        }
    }
    let witnesses = chosen.iter().map(|f| view.ambient(f)).collect();
    Ok(SuccessiveMinima {
        exponents,
        witnesses,
    })
}

/// PackRad_C(S) = q^{-1} λ_{1,C}(S).
pub fn packing_radius(s: &PeriodicLattice, body: &ConvexBody) -> Result<QExp> {
    let m = succ_minima_periodic(s, body)?;
    Ok(QExp::pow(m.exponents[0] - 1))
}

/// Density of the densest packing `x^{-1} λ_{1,C}(S) C + S`:
/// `q^{n} λ_{1,C}(S)^d m(C) / det(Λ)` with `n = log_q #(D ∩ S)`.
pub fn packing_density(s: &PeriodicLattice, body: &ConvexBody) -> Result<BigRational> {
    let m = succ_minima_periodic(s, body)?;
    let d = s.dim() as i64;
    let e = s.period_size() as i64 + d * m.exponents[0] + body.log_m() - s.lattice().log_det();
    Ok(q_pow(s.field().q(), e))
}

/// `|x^R C ∩ S| = #{reps with ‖f‖_C <= q^R} · ∏_i ⌈q^{R+1}/λ_{i,C}(Λ)⌉`.
pub fn count_points(s: &PeriodicLattice, body: &ConvexBody, radius: i64) -> Result<BigUint> {
    let view = s.view(body)?;
    count_in_view(&view, radius)
}

pub(crate) fn count_in_view(view: &BodyView, radius: i64) -> Result<BigUint> {
    let mut reps: u64 = 0;
    for i in 0..view.rep_count()? {
        if view.norm(&view.rep(i))? <= QExp::pow(radius) {
            reps += 1;
        }
    }
    let lattice_exp: i64 = view.exponents().iter().map(|&e| (radius + 1 - e).max(0)).sum();
    let q = BigUint::from(view.field().q());
    Ok(BigUint::from(reps) * Pow::pow(&q, lattice_exp as u64))
}

#[derive(Debug, Clone, PartialEq)]
pub enum MinkowskiOutcome {
    /// A nonzero point of S inside C.
    Found(Vec<KInf>),
    /// The searched space contains no nonzero point of S in C.
    NotFound,
    /// `m(C + D ∩ S) <= det(Λ) / q^{n+d}`: nothing is claimed.
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinkowskiReport {
    /// log_q m(C + D ∩ S).
    pub measure_exp: i64,
    /// log_q m(C).
    pub volume_exp: i64,
    /// log_q (det(Λ) / q^{n+d}).
    pub threshold_exp: i64,
    pub outcome: MinkowskiOutcome,
}

impl MinkowskiReport {
    /// `m(C) > det(Λ) / q^{n+d}`, which forces a nonzero point of S into C: otherwise the
    /// translates `s + C` are disjoint and their density `q^{n+d} m(C) / det(Λ)` exceeds 1.
    pub fn hypothesis_holds(&self) -> bool {
        self.volume_exp > self.threshold_exp
    }

    /// The weaker condition `m(C + D ∩ S) > det(Λ) / q^{n+d}`. It does not force a point
    /// once the representatives fall into several classes modulo C.
    pub fn measure_condition(&self) -> bool {
        self.measure_exp > self.threshold_exp
    }
}

/// Convex body search: `m(C + D ∩ S) = m(C) · #(reps modulo the group C)`, since translates
/// of `C` are disjoint or equal. When the measure condition holds a point is sought among
/// the reduced basis and the representatives; the C-norm of `f + w` is at least that of
/// `f`, so this search is exhaustive and `NotFound` certifies `S ∩ C = {0}`.
pub fn minkowski_search(s: &PeriodicLattice, body: &ConvexBody) -> Result<MinkowskiReport> {
    let view = s.view(body)?;
    let count = view.rep_count()?;
    let mut in_c: Vec<u64> = Vec::new();
    for i in 0..count {
        if view.norm(&view.rep(i))? <= QExp::ONE {
            in_c.push(i);
        }
    }
    let q = s.field().q() as u64;
    let classes_exp = view.period_size() as i64 - log_q(q, in_c.len() as u64);
    let measure_exp = body.log_m() + classes_exp;
    let threshold_exp = s.lattice().log_det() - view.period_size() as i64 - s.dim() as i64;
    let outcome = if measure_exp <= threshold_exp {
        MinkowskiOutcome::Inapplicable
    } else if view.exponents()[0] <= 0 {
        MinkowskiOutcome::Found(view.basis.vector_kinf(0))
    } else if let Some(&i) = in_c.iter().find(|&&i| i != 0) {
        MinkowskiOutcome::Found(view.ambient(&view.rep(i)))
    } else {
        MinkowskiOutcome::NotFound
    };
    Ok(MinkowskiReport {
        measure_exp,
        volume_exp: body.log_m(),
        threshold_exp,
        outcome,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `d(Λ(α, q^N))`: the least nonzero `|det(⟨Q_i α_{ℓ_j}⟩)|` over `k = 1..d`, index sets
/// `ℓ_1 < ... < ℓ_k`, and sets of `k` distinct nonzero `Q_i` of degree <= N. Coordinates are
/// taken in the reduced basis for `body`. Brute force, so limited to `d <= 3`, `N <= 2`.
pub fn d_invariant(s: &PeriodicLattice, body: &ConvexBody) -> Result<QExp> {
    let Some(n) = s.n() else {
        return Err(Error::Unsupported("an alpha-form periodic lattice".into()));
    };
    if s.dim() > 3 || n > 2 {
        return Err(Error::Unsupported("d <= 3 and N <= 2 for the d-invariant".into()));
    }
    let field = s.field().clone();
    let orbit: Vec<Vec<KInf>> = frac_orbit(s, body)?.into_iter().skip(1).map(|(_, v)| v).collect();
    let d = s.dim();
    let mut best: Option<i64> = None;
    for k in 1..=d {
        for idx in combinations(d, k) {
            for qs in combinations(orbit.len(), k) {
                let m = Matrix::from_fn(k, k, |i, j| orbit[qs[j]][idx[i]].clone());
                let det = det_kinf(&m, &field)?;
                if let Some(e) = det.abs()?.exponent() {
                    best = Some(best.map_or(e, |b| b.min(e)));
                }
            }
        }
    }
    best.map(QExp::pow)
        .ok_or_else(|| Error::Undefined("every determinant vanishes".into()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sandwich {
    pub d_exp: i64,
    /// log_q of `d(S) det(Λ) / m(C)`.
    pub lower: i64,
    /// `Σ e_i`.
    pub product: i64,
    /// log_q of `det(Λ) / (q^{N+1} m(C))`.
    pub upper: i64,
    /// Whether `R_{≤N} α_i ∩ R = {0}` holds for every reduced coordinate; only then is
    /// the estimate a theorem.
    pub hypothesis: bool,
}

impl Sandwich {
    pub fn holds(&self) -> bool {
        self.lower <= self.product && self.product <= self.upper
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub exponents: Vec<i64>,
    pub log_det: i64,
    pub log_m: i64,
    pub period_size: usize,
    /// log_q of `det(Λ) / (q^n m(C))`.
    pub bound: i64,
    /// `d e_1 <= bound`.
    pub lambda1_ok: bool,
    /// `Σ e_i <= bound`.
    pub product_ok: bool,
    /// The two-sided estimate, evaluated for alpha forms within the d-invariant's scope.
    pub sandwich: Option<Sandwich>,
    /// Why the sandwich was not evaluated.
    pub sandwich_skipped: Option<String>,
}

impl BoundsReport {
    pub fn pass(&self) -> bool {
        self.lambda1_ok
            && self.product_ok
            && self.sandwich.as_ref().is_none_or(|s| !s.hypothesis || s.holds())
    }
}

/// True when every reduced coordinate of α is 0 or has a denominator of degree > N,
/// i.e. `R_{≤N} α_i ∩ R = {0}`. `None` when this cannot be decided (series data).
fn hypothesis_holds(coords: &[KInf], n: u32) -> Option<bool> {
    coords
        .iter()
        .map(|c| c.as_exact().map(|r| r.is_zero() || r.den().deg() > n as i64))
        .try_fold(true, |acc, x| x.map(|b| acc && b))
}

/// Evaluate both upper bounds on the successive minima, and for `Λ(α, q^N)` the two-sided
/// estimate involving the d-invariant.
pub fn check_bounds(s: &PeriodicLattice, body: &ConvexBody) -> Result<BoundsReport> {
    let view = s.view(body)?;
    let minima = succ_minima_in_view(&view)?;
    let e = minima.exponents.clone();
    let d = s.dim() as i64;
    let log_det = s.lattice().log_det();
    let log_m = body.log_m();
    let n = s.period_size();
    let bound = log_det - n as i64 - log_m;
    let product: i64 = e.iter().sum();
    let (sandwich, sandwich_skipped) = match s.form() {
        PeriodicForm::Coset { .. } => (None, Some("coset form".to_string())),
        PeriodicForm::Alpha { alpha, n: big_n } => {
            let coords = frac_vec(&view.basis.coordinates(alpha));
            match hypothesis_holds(&coords, *big_n) {
                None => (None, Some("hypothesis undecidable for series data".to_string())),
                Some(_) if s.dim() > 3 || *big_n > 2 => {
                    (None, Some("d-invariant limited to d <= 3, N <= 2".to_string()))
                }
                Some(hypothesis) => {
                    let d_exp = d_invariant(s, body)?.exp();
                    (
                        Some(Sandwich {
                            d_exp,
                            lower: d_exp + log_det - log_m,
                            product,
                            upper: log_det - (*big_n as i64 + 1) - log_m,
                            hypothesis,
                        }),
                        None,
                    )
                }
            }
        }
    };
    Ok(BoundsReport {
        lambda1_ok: d * e[0] <= bound,
        product_ok: product <= bound,
        exponents: e,
        log_det,
        log_m,
        period_size: n,
        bound,
        sandwich,
        sandwich_skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::w_instance;
    use super::super::Frame;
    use super::*;
    use crate::ffcore::parse::parse_element;
    use crate::ffcore::Field;
    use crate::lattice::Lattice;

    fn unit2(s: &PeriodicLattice) -> ConvexBody {
        ConvexBody::unit(s.field(), 2)
    }

    #[test]
    fn w_minima_and_packing() {
        let w = w_instance(1);
        let c = unit2(&w);
        let m = succ_minima_periodic(&w, &c).unwrap();
        assert_eq!(m.exponents, vec![-1, -1]);
        let f = w.field();
        let e = |t: &str| parse_element(f, t).unwrap();
        assert_eq!(m.witnesses, vec![vec![e("x^-1"), e("x^-2")], vec![e("0"), e("x^-1")]]);
        assert_eq!(packing_radius(&w, &c).unwrap(), QExp::pow(-2));
        assert_eq!(packing_density(&w, &c).unwrap(), q_pow(2, 0));
        let w0 = w_instance(0);
        assert_eq!(succ_minima_periodic(&w0, &c).unwrap().exponents, vec![-1, 0]);
        assert_eq!(packing_density(&w0, &c).unwrap(), q_pow(2, -1));
    }

    #[test]
    fn frac_orbit_matches_generator_combinations() {
        let w = w_instance(1);
        let c = unit2(&w);
        let view = w.view(&c).unwrap();
        for (i, (_, v)) in frac_orbit(&w, &c).unwrap().into_iter().enumerate() {
            assert_eq!(v, view.rep(i as u64));
        }
    }

    #[test]
    fn w_counts() {
        let w = w_instance(1);
        let c = unit2(&w);
        assert_eq!(count_points(&w, &c, 0).unwrap(), BigUint::from(16u32));
        assert_eq!(count_points(&w, &c, 1).unwrap(), BigUint::from(64u32));
        let std = PeriodicLattice::plain(w.lattice()).unwrap();
        assert_eq!(count_points(&std, &c, 0).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn plain_lattice_packing() {
        let f = Field::prime(3).unwrap();
        let s = PeriodicLattice::plain(&Lattice::standard(&f, 2).unwrap()).unwrap();
        let c = unit2(&s);
        assert_eq!(packing_radius(&s, &c).unwrap(), QExp::pow(-1));
        assert_eq!(packing_density(&s, &c).unwrap(), q_pow(3, 0));
    }

    #[test]
    fn minkowski_examples() {
        let w = w_instance(1);
        let f = w.field().clone();
        let small = ConvexBody::ball(&f, 2, -1);
        let rep = minkowski_search(&w, &small).unwrap();
        assert_eq!(rep.measure_exp, -2);
        assert_eq!(rep.threshold_exp, -4);
        let e = |t: &str| parse_element(&f, t).unwrap();
        assert_eq!(rep.outcome, MinkowskiOutcome::Found(vec![e("x^-1"), e("x^-2")]));
        let std = PeriodicLattice::plain(w.lattice()).unwrap();
        let r = minkowski_search(&std, &small).unwrap();
        assert!(!r.hypothesis_holds());
        assert_eq!(r.outcome, MinkowskiOutcome::Inapplicable);
        let big = ConvexBody::ball(&f, 2, 3);
        assert!(matches!(minkowski_search(&std, &big).unwrap().outcome, MinkowskiOutcome::Found(_)));
    }

    #[test]
    fn measure_condition_without_a_point() {
        // minima (1, 2), N = 0: the two reps sit in different C-classes, so
        // m(C + D ∩ S) = q > det / q^{1+2} = 1 while S ∩ O^2 = {0}
        let f = Field::prime(2).unwrap();
        let e = |t: &str| parse_element(&f, t).unwrap();
        let diag = crate::lattice::diagonal(&f, &[e("x").as_exact().unwrap().clone(), e("x^2").as_exact().unwrap().clone()]);
        let lat = Lattice::new(&f, diag).unwrap();
        let s = PeriodicLattice::alpha(&lat, &[e("x^-1"), e("x^-1")], Frame::Reduced, 0).unwrap();
        let rep = minkowski_search(&s, &ConvexBody::unit(&f, 2)).unwrap();
        assert_eq!((rep.measure_exp, rep.volume_exp, rep.threshold_exp), (1, 0, 0));
        assert!(rep.measure_condition() && !rep.hypothesis_holds());
        assert_eq!(rep.outcome, MinkowskiOutcome::NotFound);
        assert_eq!(crate::oracle::lambda1_oracle(&s, &ConvexBody::unit(&f, 2)).unwrap(), 1);
    }

    #[test]
    fn w_d_invariant_and_bounds() {
        let w = w_instance(1);
        let c = unit2(&w);
        assert_eq!(d_invariant(&w, &c).unwrap(), QExp::pow(-2));
        let rep = check_bounds(&w, &c).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.bound, -2);
        assert_eq!(rep.exponents.len() as i64 * rep.exponents[0], -2);
        let sw = rep.sandwich.unwrap();
        assert_eq!((sw.lower, sw.product, sw.upper), (-2, -2, -2));
        // x * x^-1 = 1, so the hypothesis of the two-sided estimate fails for W
        assert!(!sw.hypothesis);
    }

    #[test]
    fn equal_coordinates_only_use_k1() {
        let f = Field::prime(2).unwrap();
        let lat = Lattice::standard(&f, 2).unwrap();
        let a = parse_element(&f, "1/(x^2+x+1)").unwrap();
        let s = PeriodicLattice::alpha(&lat, &[a.clone(), a], Frame::Reduced, 1).unwrap();
        let c = unit2(&s);
        // k = 2 determinants vanish; k = 1 gives |<Q a>| >= q^-2
        assert_eq!(d_invariant(&s, &c).unwrap(), QExp::pow(-2));
    }
}
