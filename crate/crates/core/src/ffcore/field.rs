//! The finite field F_q, q = p^k, realised as F_p[t]/(modulus).
//!
//! Elements are stored as `Fq(u32)`, the base-p encoding `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! of the coefficient vector of a residue class. Arithmetic goes through the owning [`Field`],
//! which every polynomial and matrix carries as a shared [`FieldRef`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type FieldRef = Arc<Field>;

/// An element of F_q in base-p encoding. Only meaningful together with its [`Field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(pub(crate) u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The integer encoding, in `0..q`.
    pub fn index(self) -> u32 {
        self.0
    }
}

const MAX_P: u32 = 17;
const MAX_Q: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus over F_p, lowest degree first, length k + 1.
    modulus: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Remainder of `a` modulo monic `b` over F_p (both lowest degree first).
fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - (c * bj) % p) % p;
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

/// Irreducibility over F_p by trial division with every monic polynomial of degree <= k/2.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    for deg in 1..=k / 2 {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut g: Vec<u32> = (0..deg).map(|i| (code / p.pow(i as u32)) % p).collect();
            g.push(1);
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<FieldRef> {
        if !is_prime(p) || p > MAX_P {
            return Err(Error::InvalidField(format!("p = {p} must be a prime <= {MAX_P}")));
        }
        Ok(Arc::new(Field {
            p,
            k: 1,
            q: p,
            modulus: vec![0, 1],
        }))
    }

    /// F_p[t]/(modulus); `modulus` is given lowest degree first and must be irreducible.
    pub fn extension(p: u32, modulus: &[u32]) -> Result<FieldRef> {
        if !is_prime(p) || p > MAX_P {
            return Err(Error::InvalidField(format!("p = {p} must be a prime <= {MAX_P}")));
        }
        let mut m: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        while m.last() == Some(&0) {
            m.pop();
        }
        if m.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        let k = (m.len() - 1) as u32;
        if k == 1 {
            return Field::prime(p);
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_Q)
            .ok_or_else(|| Error::InvalidField(format!("q = {p}^{k} exceeds 2^16")))?;
        // normalise to monic
        let lead = *m.last().unwrap();
        let lead_inv = (1..p).find(|c| (c * lead) % p == 1).unwrap();
        for c in m.iter_mut() {
            *c = (*c * lead_inv) % p;
        }
        if !is_irreducible(&m, p) {
            return Err(Error::InvalidField(format!(
                "modulus of degree {k} is reducible over F_{p}"
            )));
        }
        Ok(Arc::new(Field { p, k, q, modulus: m }))
    }

    /// The field of order q, using the first monic irreducible modulus in encoding order.
    pub fn with_order(q: u32) -> Result<FieldRef> {
        let p = (2..=q)
            .find(|d| q.is_multiple_of(*d))
            .ok_or_else(|| Error::InvalidField(format!("q = {q} is not a prime power")))?;
        let mut k = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidField(format!("q = {q} is not a prime power")));
        }
        if k == 1 {
            return Field::prime(p);
        }
        if !is_prime(p) || p > MAX_P || q > MAX_Q {
            return Err(Error::InvalidField(format!("q = {q} out of range")));
        }
        for code in 0..p.pow(k) {
            let mut m: Vec<u32> = (0..k).map(|i| (code / p.pow(i)) % p).collect();
            m.push(1);
            if is_irreducible(&m, p) {
                return Field::extension(p, &m);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    /// All q elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    pub fn element(&self, index: u32) -> Fq {
        debug_assert!(index < self.q);
        Fq(index)
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u32)
    }

    /// The class of t in F_p[t]/(modulus). For a prime field this is an error.
    pub fn generator(&self) -> Result<Fq> {
        if self.k == 1 {
            return Err(Error::InvalidField("prime field has no generator t".into()));
        }
        Ok(Fq(self.p))
    }

    pub fn digits(&self, a: Fq) -> Vec<u32> {
        let mut v = a.0;
        (0..self.k)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fq {
        let mut v = 0u32;
        for &d in digits.iter().rev() {
            v = v * self.p + d % self.p;
        }
        Fq(v)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.k == 1 {
            return Fq((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fq(out)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if self.k == 1 {
            return Fq((self.p - a.0) % self.p);
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Fq(out)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if self.k == 1 {
            return Fq((a.0 * b.0) % self.p);
        }
        let p = self.p;
        let k = self.k as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let t = (c * self.modulus[j]) % p;
                prod[i - k + j] = (prod[i - k + j] + p - t) % p;
            }
            prod[i] = 0;
        }
        self.from_digits(&prod[..k])
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Render an element: an integer for prime fields, `(t-expression)` otherwise.
    pub fn format(&self, a: Fq) -> String {
        if self.k == 1 {
            return a.0.to_string();
        }
        let digits = self.digits(a);
        let mut terms = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else if terms.len() == 1 && digits.iter().skip(1).all(|&c| c == 0) {
            terms.remove(0)
        } else {
            format!("({})", terms.join("+"))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            let terms: Vec<String> = self
                .modulus
                .iter()
                .enumerate()
                .rev()
                .filter(|&(_, &c)| c != 0)
                .map(|(i, &c)| {
                    let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
                    match i {
                        0 => coef,
                        1 => format!("{coef}t"),
                        _ => format!("{coef}t^{i}"),
                    }
                })
                .collect();
            write!(f, "F_{} = F_{}[t]/({})", self.q, self.p, terms.join(" + "))
        }
    }
}
