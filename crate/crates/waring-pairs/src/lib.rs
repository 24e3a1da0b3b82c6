//! Exact-arithmetic and numeric toolkit for simultaneous Waring
//! decompositions of pairs of ternary forms.
//!
//! A pair (f, g) of ternary forms of degrees c <= d has a simultaneous
//! decomposition when common linear forms l_1, ..., l_k and scalars exist
//! with f = sum lambda_i l_i^c and g = sum mu_i l_i^d. The toolkit classifies
//! for which (c, d) the general pair has a *unique* such decomposition, and
//! verifies every finite computation that classification rests on:
//!
//! * exact rank/kernel linear algebra over a prime field and the rationals
//!   ([`linalg`], [`scalar`]);
//! * dense ternary-form arithmetic ([`forms`]);
//! * tangent frames and Monte Carlo secant dimensions of the projective
//!   bundle X = P(O(c) ⊕ O(d)) via Terracini's lemma, plus its integer
//!   intersection ring ([`bundle`]);
//! * conditions matrices for plane and bundle linear systems with assigned
//!   double points, and the Castelnuovo dimension split used by the
//!   degeneration arguments ([`interpolation`]);
//! * the arithmetic classification pipeline producing per-case verdicts
//!   ([`classifier`]);
//! * float64 decomposition experiments: pencil diagonalization for pairs of
//!   conics and a damped Newton multistart solver ([`decompose`]).
//!
//! Core arithmetic is generic over the scalar type through the
//! [`scalar::Field`] trait (prime field, exact rationals, f64); concrete
//! aliases for the common instantiations live at the crate root.

pub mod bundle;
pub mod classifier;
pub mod decompose;
pub mod forms;
pub mod interpolation;
pub mod linalg;
pub mod scalar;
pub mod seeding;

pub use scalar::{Field, Fp, PrimeField, Rat, DEFAULT_PRIME};

/// Matrix over the prime field.
pub type FpMatrix = linalg::Matrix<Fp>;
/// Matrix over the exact rationals.
pub type RatMatrix = linalg::Matrix<Rat>;
/// Matrix over f64 (square solves only).
pub type F64Matrix = linalg::Matrix<f64>;

/// Ternary form over the prime field.
pub type FpForm = forms::TernaryForm<Fp>;
/// Ternary form over the exact rationals.
pub type RatForm = forms::TernaryForm<Rat>;
/// Ternary form over f64.
pub type F64Form = forms::TernaryForm<f64>;

/// Pair of f64 forms, the decomposition engines' input.
pub type F64Pair = forms::FormPair<f64>;
