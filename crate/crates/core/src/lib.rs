//! Exact lattice and root-datum computations for Whittaker dimensions of
//! depth-zero genuine representations of covering groups.

pub mod cover;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod matrix;
pub mod modone;
pub mod parahoric;
pub mod root_datum;
pub mod whittaker;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
