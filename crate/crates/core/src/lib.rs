pub mod cli;
pub mod error;
pub mod ffcore;
pub mod hankel;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod periodic;
pub mod random;
pub mod verify;

pub use error::{Error, Result};
