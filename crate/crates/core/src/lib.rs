pub mod bigfix;
pub mod pell;
pub mod smooth;
pub mod linforms;
pub mod lattice;
pub mod solver;
pub mod error;

pub use error::{Error, Result};
