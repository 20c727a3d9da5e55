//! Quadratic (polynomially deformed) su(2)/su(1,1) algebras built from three
//! bosonic modes.
//!
//! Modules:
//! - [`polyalg`]: structure functions `f(N0)` and the Casimir recipe `g`
//! - [`fock3`]: truncated Fock spaces and bosonic realizations
//! - [`reps`]: closed-form matrix representations
//! - [`diffreal`]: single-variable differential realizations over the rationals
//! - [`coherent`]: hypergeometric series and coherent states
//! - [`measures`]: resolution-of-identity moment checks and quadrature
//! - [`spectrum`]: the (1,1,2) anisotropic oscillator and its level counting
//! - [`defosc`]: the quadratic oscillator and the canonical fermion

pub mod coherent;
pub mod defosc;
pub mod diffreal;
pub mod error;
pub mod fock3;
pub mod linalg;
pub mod measures;
pub mod output;
pub mod poly;
pub mod polyalg;
pub mod rational;
pub mod reps;
pub mod special;
pub mod spectrum;

pub use error::{Error, Result};
pub use poly::Poly;
pub use rational::Rational;
pub use reps::{AlgebraKind, AlgebraLabel, RepLabel, Representation, Sector};
