//! JSON instance files.
//!
//! ```json
//! {
//!   "q": 2,
//!   "d": 2,
//!   "basis": [["1", "0"], ["0", "1"]],
//!   "alpha": ["x^-1", "x^-2"],
//!   "frame": "reduced",
//!   "N": 1
//! }
//! ```
//!
//! `basis` and `body` list matrix rows; the basis vectors of Λ (and the generators of C) are
//! the columns. Entries use the element grammar of [`crate::ffcore::parse`]: rational
//! expressions in `x` (constants of F_{p^k} written in `t`), or series literals
//! `{floor: F, top: T, coeffs: [...]}`. `modulus` lists the coefficients of the defining
//! polynomial of F_q over F_p, lowest degree first. At most one of `alpha` and `reps` may be
//! present; `reps` are coset representatives of `S ∩ D`. `frame` (default `ambient`)
//! says whether `alpha`/`reps` are ambient vectors or coefficients in the reduced basis of
//! Λ for the unit body. `precision` is the coefficient floor the oracles may use: the
//! covering grid has depth `-precision`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffcore::parse::parse_element;
use crate::ffcore::{Field, FieldRef, KInf, RationalFunc};
use crate::lattice::{ConvexBody, Lattice};
use crate::linalg::{MatRat, Matrix};
use crate::periodic::{frac_vec, Frame, PeriodicLattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameName {
    #[default]
    Ambient,
    Reduced,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub q: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub d: usize,
    pub basis: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<FrameName>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reps: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Plain,
    Alpha,
    Coset,
}

/// A validated instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub file: InstanceFile,
    pub field: FieldRef,
    pub lattice: Lattice,
    pub body: ConvexBody,
    pub periodic: PeriodicLattice,
    pub kind: Kind,
}

impl Instance {
    /// Covering-grid depth requested by `precision`, if any.
    pub fn depth(&self) -> Option<i64> {
        self.file.precision.map(|p| -p)
    }
}

impl InstanceFile {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::parse("instance", e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
        InstanceFile::from_json(&src)
    }

    /// Serialize a lattice basis back into the row layout of `basis`.
    pub fn matrix_rows(m: &MatRat) -> Vec<Vec<String>> {
        m.to_rows().iter().map(|r| r.iter().map(RationalFunc::to_string).collect()).collect()
    }

    pub fn field(&self) -> Result<FieldRef> {
        let f = match &self.modulus {
            Some(m) => {
                let p = (2..=self.q).find(|d| self.q.is_multiple_of(*d)).unwrap_or(self.q);
                let f = Field::extension(p, m)?;
                if f.q() != self.q {
                    return Err(Error::parse(
                        "modulus",
                        format!("defines a field of order {}, but q = {}", f.q(), self.q),
                    ));
                }
                f
            }
            None => Field::with_order(self.q)?,
        };
        Ok(f)
    }

    fn matrix(&self, field: &FieldRef, name: &str, rows: &[Vec<String>]) -> Result<MatRat> {
        if rows.len() != self.d || rows.iter().any(|r| r.len() != self.d) {
            return Err(Error::parse(name, format!("expected a {0} x {0} matrix", self.d)));
        }
        let mut out = Vec::with_capacity(self.d);
        for (i, row) in rows.iter().enumerate() {
            let mut r = Vec::with_capacity(self.d);
            for (j, s) in row.iter().enumerate() {
                match parse_element(field, s) {
                    Ok(KInf::Exact(x)) => r.push(x),
                    Ok(KInf::Approx(_)) => {
                        return Err(Error::parse(format!("{name}[{i}][{j}]"), "matrix entries must be exact"))
                    }
                    Err(e) => return Err(Error::parse(format!("{name}[{i}][{j}]"), e.to_string())),
                }
            }
            out.push(r);
        }
        Matrix::from_rows(out)
    }

    fn vector(&self, field: &FieldRef, name: &str, v: &[String]) -> Result<Vec<KInf>> {
        if v.len() != self.d {
            return Err(Error::parse(name, format!("expected {} entries, got {}", self.d, v.len())));
        }
        v.iter()
            .enumerate()
            .map(|(i, s)| parse_element(field, s).map_err(|e| Error::parse(format!("{name}[{i}]"), e.to_string())))
            .collect()
    }

    pub fn load(self) -> Result<Instance> {
        let field = self.field()?;
        if self.d < 2 {
            return Err(Error::parse("d", "dimension must be at least 2"));
        }
        let lattice = Lattice::new(&field, self.matrix(&field, "basis", &self.basis)?)?;
        let body = match &self.body {
            Some(rows) => ConvexBody::new(&field, self.matrix(&field, "body", rows)?)?,
            None => ConvexBody::unit(&field, self.d),
        };
        let frame = match self.frame.unwrap_or_default() {
            FrameName::Ambient => Frame::Ambient,
            FrameName::Reduced => Frame::Reduced,
        };
        let (periodic, kind) = match (&self.alpha, &self.reps) {
            (Some(_), Some(_)) => return Err(Error::parse("instance", "give at most one of alpha and reps")),
            (Some(a), None) => {
                let n = self.n.ok_or_else(|| Error::parse("N", "required with alpha"))?;
                let alpha = self.vector(&field, "alpha", a)?;
                (PeriodicLattice::alpha(&lattice, &alpha, frame, n)?, Kind::Alpha)
            }
            (None, Some(reps)) => {
                let parsed = reps
                    .iter()
                    .enumerate()
                    .map(|(j, r)| self.vector(&field, &format!("reps[{j}]"), r))
                    .collect::<Result<Vec<_>>>()?;
                let reduced = match frame {
                    Frame::Reduced => parsed,
                    Frame::Ambient => {
                        let base = PeriodicLattice::plain(&lattice)?.base().clone();
                        parsed.iter().map(|r| frac_vec(&base.coordinates(r))).collect()
                    }
                };
                (PeriodicLattice::cosets(&lattice, &reduced)?, Kind::Coset)
            }
            (None, None) => (PeriodicLattice::plain(&lattice)?, Kind::Plain),
        };
        Ok(Instance {
            file: self,
            field,
            lattice,
            body,
            periodic,
            kind,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: &str = r#"{"q": 2, "d": 2, "basis": [["1","0"],["0","1"]],
        "alpha": ["x^-1", "x^-2"], "frame": "reduced", "N": 1}"#;

    #[test]
    fn loads_w() {
        let inst = InstanceFile::from_json(W).unwrap().load().unwrap();
        assert_eq!(inst.kind, Kind::Alpha);
        assert_eq!(inst.periodic.period_size(), 2);
    }

    #[test]
    fn errors_name_the_field() {
        let bad = W.replace("\"x^-2\"", "\"x^^2\"");
        match InstanceFile::from_json(&bad).unwrap().load() {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "alpha[1]"),
            other => panic!("{other:?}"),
        }
        let unknown = W.replace("\"frame\"", "\"frames\"");
        assert!(matches!(InstanceFile::from_json(&unknown), Err(Error::Parse { .. })));
        let no_n = W.replace(", \"N\": 1", "");
        match InstanceFile::from_json(&no_n).unwrap().load() {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "N"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn prime_power_with_modulus() {
        let src = r#"{"q": 4, "modulus": [1,1,1], "d": 2, "basis": [["t","0"],["1","x"]]}"#;
        let inst = InstanceFile::from_json(src).unwrap().load().unwrap();
        assert_eq!(inst.field.q(), 4);
        let bad = r#"{"q": 8, "modulus": [1,1,1], "d": 2, "basis": [["1","0"],["0","1"]]}"#;
        assert!(InstanceFile::from_json(bad).unwrap().load().is_err());
    }
}
