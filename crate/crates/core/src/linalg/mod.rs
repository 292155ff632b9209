//! Exact linear algebra over F_q, F_q[x], F_q(x) and K_∞.

mod fq;
mod kmat;
mod matrix;
pub mod polymat;
pub mod ratmat;

pub use fq::{rank_fq, MatFq};
pub use kmat::{det_kinf, mul_rat_vec, rank_kinf, sup_norm, MatK};
pub use matrix::Matrix;
pub use polymat::{det_poly, popov_reduce, MatPoly, PopovResult};
pub use ratmat::{rank_rational, MatRat};
