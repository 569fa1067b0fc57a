//! Exact-arithmetic library for SL3-extensions of unimodular 2x2 matrices
//! over commutative rings: building extensions, deciding the ten per-matrix
//! statements with witnesses, enumerating characteristic-polynomial
//! invariant sets, t-adic determinant lifting, and exhaustive
//! classification of small finite rings.

pub mod classes;
pub mod error;
pub mod extend;
pub mod finite;
pub mod matrix;
pub mod report;
pub mod ring;
pub mod scan;
pub mod statements;
pub mod verify;

pub use error::{Error, Result};
pub use extend::ExtWitness;
pub use matrix::{sigma, theta, KernelGens, Mat2, Mat3};
pub use ring::{BezoutData, RElem, RingSpec};
