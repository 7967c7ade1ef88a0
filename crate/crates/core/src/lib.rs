//! Exact computational Galois theory over `Q` and `F_p`.
//!
//! The layers build on each other: exact scalars ([`numbers`]), polynomial
//! rings ([`poly`]), factorization ([`factor`]), towers of simple extensions
//! ([`tower`]), splitting fields ([`splitting`]), Galois groups
//! ([`galois`]), the Galois correspondence ([`correspondence`]), finite
//! fields ([`finitefield`]) and the classical applications ([`apps`]).

pub mod apps;
pub mod correspondence;
pub mod error;
pub mod factor;
pub mod field;
pub mod finitefield;
pub mod galois;
pub mod group;
pub mod limits;
pub mod linalg;
pub mod numbers;
pub mod poly;
pub mod splitting;
pub mod tower;

pub use error::{Error, Result};
pub use limits::Limits;
