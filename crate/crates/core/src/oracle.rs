//! Brute-force reference implementations of the invariants.
//!
//! The window `S ∩ x^R C` is computed without lattice reduction. A point of S is
//! `Σ b_j s_j + g a` with `b_j ∈ F_q` (the `s_j` span S modulo Λ) and `a ∈ F_q[x]^d`.
//! Writing `G = max_k |(g^{-1}h)_{ik}|`, any point of norm at most q^R has
//! `deg a_i <= max(G + R, max_j |(g^{-1}s_j)_i|)`, so the window is the F_q-kernel of the
//! map sending these finitely many unknowns to the coefficients of `h^{-1}v` above x^R.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::ffcore::{FieldRef, Fq, KInf, Poly, QExp};
use crate::lattice::{reduce_lattice, ConvexBody};
use crate::linalg::{mul_rat_vec, rank_kinf, ratmat, MatFq};
use crate::periodic::{frac_vec, PeriodicForm, PeriodicLattice};

/// Largest enumeration an oracle performs unless overridden.
pub const DEFAULT_BUDGET: u128 = 1 << 22;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_VAR: &str = "FFPERIODIC_BUDGET";

pub fn default_budget() -> u128 {
    std::env::var(BUDGET_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    /// Radius exponent R of the ball `x^R C`.
    pub radius: i64,
    /// Coefficient depth M of the covering grid.
    pub depth: i64,
    pub budget: u128,
}

impl Window {
    pub fn new(radius: i64) -> Self {
        Window {
            radius,
            depth: 12,
            budget: default_budget(),
        }
    }

    pub fn with_depth(mut self, depth: i64) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }
}

/// Default grid depth `N + |e_1| + |e_d| + 4`.
pub fn default_depth(n: u32, exponents: &[i64]) -> i64 {
    let e1 = exponents.first().copied().unwrap_or(0);
    let ed = exponents.last().copied().unwrap_or(0);
    n as i64 + e1.abs() + ed.abs() + 4
}

fn q_pow(q: u32, e: i64) -> BigRational {
    let mag: BigInt = Pow::pow(&BigInt::from(q), e.unsigned_abs());
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

fn exponent_of(x: &KInf) -> Result<Option<i64>> {
    Ok(x.abs()?.exponent())
}

/// Vectors spanning S modulo Λ, ambient coordinates.
fn period_generators(s: &PeriodicLattice) -> Vec<Vec<KInf>> {
    let field = s.field();
    match s.form() {
        PeriodicForm::Alpha { alpha, n } => (0..=*n as usize)
            .map(|j| {
                let xj = Poly::monomial(field, Fq::ONE, j);
                alpha.iter().map(|a| a.mul_poly(&xj)).collect()
            })
            .collect(),
        PeriodicForm::Coset { reps } => reps.clone(),
    }
}

/// An F_q-basis of `S ∩ x^R C` in ambient coordinates.
pub fn window_basis(s: &PeriodicLattice, body: &ConvexBody, radius: i64) -> Result<Vec<Vec<KInf>>> {
    let field = s.field();
    let d = s.dim();
    let g = s.lattice().basis();
    let ginv = ratmat::inverse(g, field)?;
    let hinv = body.inverse()?;
    let gh = ratmat::mul(&ginv, body.matrix(), field)?;
    let gens = period_generators(s);
    let gen_coords: Vec<Vec<KInf>> = gens.iter().map(|v| mul_rat_vec(&ginv, v, field)).collect();

    let mut unknowns: Vec<Vec<KInf>> = gens.clone();
    for i in 0..d {
        let mut bound = (0..d)
            .filter_map(|k| gh.get(i, k).abs().exponent())
            .max()
            .map_or(i64::MIN, |e| e + radius);
        for c in &gen_coords {
            if let Some(e) = exponent_of(&c[i])? {
                bound = bound.max(e);
            }
        }
        let col: Vec<KInf> = g.col(i).into_iter().map(KInf::Exact).collect();
        for k in 0..=bound.max(-1) {
            let xk = Poly::monomial(field, Fq::ONE, k as usize);
            unknowns.push(col.iter().map(|x| x.mul_poly(&xk)).collect());
        }
    }

    let images: Vec<Vec<KInf>> = unknowns.iter().map(|v| mul_rat_vec(&hinv, v, field)).collect();
    let mut top = radius;
    for w in &images {
        for x in w {
            if let Some(e) = exponent_of(x)? {
                top = top.max(e);
            }
        }
    }
    let mut rows: Vec<Vec<Fq>> = Vec::new();
    for i in 0..d {
        for e in radius + 1..=top {
            rows.push(images.iter().map(|w| w[i].coeff(e)).collect::<Result<_>>()?);
        }
    }
    let m = if rows.is_empty() {
        MatFq::zeros(field, 0, unknowns.len())
    } else {
        MatFq::from_rows(field, &rows)?
    };
    Ok(m.kernel_basis()
        .into_iter()
        .map(|c| combine(field, d, &unknowns, &c))
        .collect())
}

fn combine(field: &FieldRef, d: usize, vectors: &[Vec<KInf>], c: &[Fq]) -> Vec<KInf> {
    let mut out = vec![KInf::zero(field); d];
    for (v, &a) in vectors.iter().zip(c) {
        if a.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = o.add(&x.scale(a));
        }
    }
    out
}

/// Membership `v ∈ S`: some `v - Σ b_j s_j` with `b_j ∈ F_q` has polynomial coordinates
/// in the basis of Λ.
pub fn contains(s: &PeriodicLattice, v: &[KInf]) -> Result<bool> {
    let field = s.field();
    let ginv = ratmat::inverse(s.lattice().basis(), field)?;
    let gens = period_generators(s);
    let q = field.q() as u64;
    let total = q.checked_pow(gens.len() as u32).ok_or_else(|| Error::BudgetExceeded {
        what: "membership test".into(),
        needed: u128::MAX,
        budget: default_budget(),
    })?;
    for idx in 0..total {
        let mut rest = idx;
        let mut w = v.to_vec();
        for g in &gens {
            let c = field.element((rest % q) as u32);
            rest /= q;
            for (x, y) in w.iter_mut().zip(g) {
                *x = x.sub(&y.scale(c));
            }
        }
        let mut integral = true;
        for c in mul_rat_vec(&ginv, &w, field) {
            match c.as_exact() {
                Some(r) => integral &= r.is_poly(),
                None => return Err(Error::precision("membership of a series vector", i64::MIN, c.precision().unwrap_or(0))),
            }
        }
        if integral {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `#(S ∩ x^R C)`, read off the dimension of the window.
pub fn count_window(s: &PeriodicLattice, body: &ConvexBody, radius: i64) -> Result<BigUint> {
    let dim = window_basis(s, body, radius)?.len();
    Ok(Pow::pow(&BigUint::from(s.field().q()), dim))
}

/// Every point of `S ∩ x^R C`, each exactly once.
pub fn enumerate_points(s: &PeriodicLattice, body: &ConvexBody, window: &Window) -> Result<Vec<Vec<KInf>>> {
    let field = s.field();
    let basis = window_basis(s, body, window.radius)?;
    let q = field.q() as u128;
    let needed = (0..basis.len()).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX);
    if needed > window.budget {
        return Err(Error::BudgetExceeded {
            what: "points in the window".into(),
            needed,
            budget: window.budget,
        });
    }
    let mut points = vec![vec![KInf::zero(field); s.dim()]];
    for b in &basis {
        let mut next = Vec::with_capacity(points.len() * field.q() as usize);
        for c in field.elements() {
            let shift: Vec<KInf> = b.iter().map(|x| x.scale(c)).collect();
            for p in &points {
                next.push(p.iter().zip(&shift).map(|(x, y)| x.add(y)).collect());
            }
        }
        points = next;
    }
    Ok(points)
}

/// The least R with `S ∩ x^R C ≠ {0}`.
pub fn lambda1_oracle(s: &PeriodicLattice, body: &ConvexBody) -> Result<i64> {
    let mut r = 0;
    if window_basis(s, body, r)?.is_empty() {
        while window_basis(s, body, r)?.is_empty() {
            r += 1;
        }
        Ok(r)
    } else {
        while !window_basis(s, body, r - 1)?.is_empty() {
            r -= 1;
        }
        Ok(r)
    }
}

/// Successive minima exponents: `e_i` is the least R at which the window spans a space of
/// dimension at least i over K_∞.
pub fn succmin_oracle(s: &PeriodicLattice, body: &ConvexBody) -> Result<Vec<i64>> {
    let field = s.field();
    let d = s.dim();
    let mut r = lambda1_oracle(s, body)?;
    let mut out = Vec::with_capacity(d);
    while out.len() < d {
        let rank = rank_kinf(&window_basis(s, body, r)?, field)?;
        while out.len() < rank.min(d) {
            out.push(r);
        }
        r += 1;
    }
    Ok(out)
}

/// Smallest sup-norm radius exponent from which the density count is stationary:
/// the ball must contain a fundamental domain of Λ and the packing body `x^{e_1-1} C`.
pub fn density_threshold(s: &PeriodicLattice, body: &ConvexBody) -> Result<i64> {
    let field = s.field();
    let d = s.dim();
    let ed_unit = *reduce_lattice(s.lattice(), &ConvexBody::unit(field, d))?
        .exponents
        .last()
        .expect("d >= 2");
    let e1 = lambda1_oracle(s, body)?;
    let h = body
        .matrix()
        .iter()
        .filter_map(|x| x.abs().exponent())
        .max()
        .expect("invertible body");
    Ok(ed_unit.max(e1 - 1 + h).max(0) + 1)
}

/// `m(C') #(S ∩ B(0, q^R)) / q^{dR}` with `C' = x^{e_1 - 1} C` the densest packing body.
/// Equals the packing density once `radius >= density_threshold`.
pub fn density_oracle(s: &PeriodicLattice, body: &ConvexBody, radius: i64) -> Result<BigRational> {
    let field = s.field();
    let d = s.dim() as i64;
    let q = field.q();
    let e1 = lambda1_oracle(s, body)?;
    let count = count_window(s, &ConvexBody::unit(field, s.dim()), radius)?;
    let m_packing = q_pow(q, d * (e1 - 1) + body.log_m());
    Ok(m_packing * BigRational::from_integer(BigInt::from(count)) / q_pow(q, d * radius))
}

/// Representatives of `S ∩ D` in reduced fractional coordinates, straight from the
/// definition: `⟨Qα⟩` for every Q of degree at most N, or every F_q-combination of reps.
fn definitional_reps(s: &PeriodicLattice, body: &ConvexBody, budget: u128) -> Result<(Vec<i64>, Vec<Vec<KInf>>)> {
    let field = s.field();
    let red = reduce_lattice(s.lattice(), body)?;
    let q = field.q() as u128;
    let size = s.period_size();
    let needed = (0..size).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: "coset representatives".into(),
            needed,
            budget,
        });
    }
    let reps = match s.form() {
        PeriodicForm::Alpha { alpha, n } => Poly::all_up_to_degree(field, *n as usize)
            .map(|poly| {
                let v: Vec<KInf> = alpha.iter().map(|a| a.mul_poly(&poly)).collect();
                frac_vec(&red.coordinates(&v))
            })
            .collect(),
        PeriodicForm::Coset { reps } => {
            let mut out = vec![vec![KInf::zero(field); s.dim()]];
            for r in reps {
                let mut next = Vec::new();
                for c in field.elements() {
                    for p in &out {
                        next.push(p.iter().zip(r).map(|(x, y)| x.add(&y.scale(c))).collect());
                    }
                }
                out = next;
            }
            out.iter().map(|v| frac_vec(&red.coordinates(v))).collect()
        }
    };
    Ok((red.exponents, reps))
}

/// Covering radius by counting coefficient patterns of the representatives.
///
/// At level r, a grid point `u ∈ D` is within q^r of S iff some rep agrees with it in the
/// first `c_i = max(e_i - r - 1, 0)` coefficients of coordinate i, so S covers at level r
/// iff the reps realize all `q^{Σ c_i}` prefix patterns. Levels needing `c_i > M` raise
/// `PrecisionTooCoarse`.
pub fn covrad_oracle(s: &PeriodicLattice, body: &ConvexBody, window: &Window) -> Result<QExp> {
    let field = s.field();
    let q = field.q() as u128;
    let (exps, reps) = definitional_reps(s, body, window.budget)?;
    let e_d = *exps.last().expect("d >= 2");
    let mut r = e_d - 1;
    loop {
        let next = r - 1;
        let c: Vec<i64> = exps.iter().map(|&e| (e - next - 1).max(0)).collect();
        let total: i64 = c.iter().sum();
        let patterns = (0..total).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX);
        if patterns > reps.len() as u128 {
            return Ok(QExp::pow(r));
        }
        if let Some(&need) = c.iter().max().filter(|&&m| m > window.depth) {
            return Err(Error::PrecisionTooCoarse {
                depth: window.depth,
                needed: need,
            });
        }
        let mut seen: HashSet<Vec<u32>> = HashSet::with_capacity(reps.len());
        for f in &reps {
            let mut key = Vec::with_capacity(total as usize);
            for (x, &ci) in f.iter().zip(&c) {
                for k in 1..=ci {
                    key.push(x.coeff(-k)?.index());
                }
            }
            seen.insert(key);
        }
        if (seen.len() as u128) < patterns {
            return Ok(QExp::pow(r));
        }
        r = next;
    }
}

/// Literal `max_u min_f max_i |⟨u_i - f_i⟩| q^{e_i}` over the depth-M grid of D.
/// Only for tiny instances; agrees with the covering radius when its exponent is at least
/// `e_d - M`.
pub fn covrad_grid(s: &PeriodicLattice, body: &ConvexBody, window: &Window) -> Result<QExp> {
    let field = s.field();
    let d = s.dim();
    let (exps, reps) = definitional_reps(s, body, window.budget)?;
    let q = field.q() as u128;
    let m = window.depth.max(0) as usize;
    let grid = (0..d * m).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX);
    let needed = grid.saturating_mul(reps.len() as u128);
    if needed > window.budget {
        return Err(Error::BudgetExceeded {
            what: "covering grid".into(),
            needed,
            budget: window.budget,
        });
    }
    let mut worst = QExp::ZERO;
    for idx in 0..grid as u64 {
        let mut rest = idx;
        let u: Vec<KInf> = (0..d)
            .map(|_| {
                let mut coeffs = vec![Fq::ZERO; m + 1];
                for c in coeffs.iter_mut().take(m) {
                    *c = field.element((rest % q as u64) as u32);
                    rest /= q as u64;
                }
                // coefficient k sits at x^{-(k+1)}
                coeffs.reverse();
                let p = Poly::new(field, coeffs);
                KInf::from(p).div(&KInf::from(Poly::monomial(field, Fq::ONE, m + 1)))
            })
            .collect::<Result<_>>()?;
        let mut best: Option<QExp> = None;
        for f in &reps {
            let mut dist = QExp::ZERO;
            for ((ui, fi), &e) in u.iter().zip(f).zip(&exps) {
                dist = dist.max(ui.sub(fi).frac().abs()?.shift(e));
            }
            best = Some(best.map_or(dist, |b| b.min(dist)));
        }
        worst = worst.max(best.expect("at least the zero rep"));
    }
    Ok(worst)
}
