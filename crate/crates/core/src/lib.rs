//! Exact computer algebra for free Poisson algebras `P<x1..xn>` over the
//! rationals, their fraction fields (free Poisson fields) and the universal
//! enveloping algebras of those fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`lie_basis`]: Lyndon words, the free Lie algebra and its structure constants;
//! * [`poisson_poly`]: the free Poisson algebra as a polynomial ring on the Lyndon basis;
//! * [`poisson_field`]: normalized fractions and the extended bracket;
//! * [`env_algebra`]: canonical forms in the enveloping algebra, the universal derivation `h`;
//! * [`weak_algorithm`]: interreduction, left dependence and left-ideal membership;
//! * [`dependence`]: three independent tests for Poisson dependence of two elements;
//! * [`automorphism`]: endomorphisms of the two-variable free Poisson field;
//! * [`cli`]: expression syntax, printing, JSON and the command-line front end.

pub mod automorphism;
pub mod cli;
pub mod dependence;
pub mod env_algebra;
pub mod error;
pub mod lie_basis;
pub mod poisson_field;
pub mod poisson_poly;
pub mod weak_algorithm;
pub mod word;

pub use automorphism::{
    apply_endo, extend_endo, is_rational_in_generators, verify_automorphism, Endomorphism,
};
pub use env_algebra::{h_of, EnvElement};
pub use error::{Error, Result};
pub use lie_basis::{LieElement, LyndonWord};
pub use poisson_field::PoissonFrac;
pub use poisson_poly::{Monomial, PoissonPoly};
pub use word::{Letter, Word};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
