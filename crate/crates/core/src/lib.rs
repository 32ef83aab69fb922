//! Kernels of Weitzenböck derivations via the symbolic method.
//!
//! Polynomials are exact (rational coefficients); see [`poly`] for the ring,
//! [`sl2`] for the derivation `D`, its partner `D*` and the weight operator,
//! [`symbolic`] and [`transfer`] for bracket expressions and the maps between
//! symbolic and roman letters, [`transvect`] for transvectants and
//! [`gordan`] for the generator search.

pub mod cli;
pub mod context;
pub mod error;
pub mod gordan;
pub mod linalg;
pub mod poly;
pub mod sl2;
pub mod symbolic;
pub mod transfer;
pub mod transvect;

pub use context::{Letter, LetterContext, LetterKind, Variable};
pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial, Rational};
