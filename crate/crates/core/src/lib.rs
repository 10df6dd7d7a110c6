//! Exact linear algebra over prime fields, linear-code tooling, the
//! Bogdanov-Lee public-key homomorphic scheme, and a key-recovery attack on
//! it driven by the dimension of square codes.

pub mod attack;
pub mod code;
pub mod experiment;
pub mod field;
pub mod io;
pub mod matrix;
pub mod rng;
pub mod scheme;

pub use code::{GrsSpec, LinearCode};
pub use field::{Fe, Field};
pub use matrix::Matrix;
