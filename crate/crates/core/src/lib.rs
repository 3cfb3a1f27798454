//! Exact invariants, explicit bounds and box enumeration for Thue inequalities.

pub mod bounds;
pub mod clustering;
pub mod dyadic;
pub mod enclosure;
pub mod error;
pub mod forms;
pub mod harness;
pub mod invariants;
pub mod irreducible;
pub mod isolate;
pub mod logscalar;
pub mod poly;
pub mod primes;
pub mod real;
pub mod reduce;
pub mod roots;
pub mod solver;

pub use error::{Error, Result};
pub use forms::{decomposition_matrices, parse_form, parse_forms, BinaryForm, IntMatrix2};
pub use poly::IntPoly;
