//! The threefold X = P(O(c) ⊕ O(d)) over the plane, embedded by its
//! tautological divisor in P^N, N + 1 = binom(c+2,2) + binom(d+2,2).
//!
//! A point is [a1 l^c, a2 l^d] for a linear form l and fiber coordinates
//! (a1, a2). The module provides the embedding, affine tangent frames, and
//! Monte Carlo secant-dimension computations via Terracini's lemma: the span
//! of the tangent spaces at k general points has the dimension of the k-th
//! secant variety.

pub mod chow;


use rand::Rng;
use thiserror::Error;

use crate::forms::{ambient_dim, monomial_count, power_of_linear, power_of_linear_partial};
use crate::linalg::Matrix;
use crate::scalar::{Field, Fp, PrimeField};
use crate::seeding::{derive_rng_indexed, stream};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error("invalid bundle point: base and fiber coordinates must be nonzero")]
    InvalidPoint,
}

/// Point of X given by base coordinates `u` (a linear form, not all zero)
/// and fiber coordinates `a = (a1, a2)` (not both zero). Points with a1 = 0
/// lie on the section Z.
#[derive(Debug, Clone, PartialEq)]
pub struct BundlePoint<T> {
    pub u: [T; 3],
    pub a: [T; 2],
}

impl<T: Field> BundlePoint<T> {
    pub fn new(u: [T; 3], a: [T; 2]) -> Result<Self, BundleError> {
        let p = BundlePoint { u, a };
        if p.is_valid() {
            Ok(p)
        } else {
            Err(BundleError::InvalidPoint)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.u.iter().any(|x| !x.is_zero()) && self.a.iter().any(|x| !x.is_zero())
    }

    /// Whether the point lies on the section Z = {a1 = 0}.
    pub fn on_section(&self) -> bool {
        self.a[0].is_zero()
    }
}

/// Ambient coordinates of [a1 l^c, a2 l^d]: the concatenation of
/// a1 * power_of_linear(u, c) and a2 * power_of_linear(u, d).
pub fn embed<T: Field>(p: &BundlePoint<T>, c: usize, d: usize) -> Result<Vec<T>, BundleError> {
    if !p.is_valid() {
        return Err(BundleError::InvalidPoint);
    }
    let mut v = Vec::with_capacity(ambient_dim(c, d));
    for x in power_of_linear(&p.u, c).into_coeffs() {
        v.push(p.a[0].clone() * x);
    }
    for x in power_of_linear(&p.u, d).into_coeffs() {
        v.push(p.a[1].clone() * x);
    }
    Ok(v)
}

/// The five partial derivatives of (u, a) -> (a1 u^c | a2 u^d): with respect
/// to a1, a2 and the three base coordinates. They span the affine cone over
/// the embedded tangent space; the generic rank is 4 = dim X + 1 (one Euler
/// relation ties the five vectors together).
pub fn tangent_frame<T: Field>(
    p: &BundlePoint<T>,
    c: usize,
    d: usize,
) -> Result<[Vec<T>; 5], BundleError> {
    if !p.is_valid() {
        return Err(BundleError::InvalidPoint);
    }
    let nc = monomial_count(c);
    let nd = monomial_count(d);
    let zero_c = vec![T::zero(); nc];
    let zero_d = vec![T::zero(); nd];

    let mut d_a1 = power_of_linear(&p.u, c).into_coeffs();
    d_a1.extend_from_slice(&zero_d);

    let mut d_a2 = zero_c.clone();
    d_a2.extend(power_of_linear(&p.u, d).into_coeffs());

    let mut frame = [d_a1, d_a2, Vec::new(), Vec::new(), Vec::new()];
    for i in 0..3 {
        let mut row: Vec<T> = power_of_linear_partial(&p.u, c, i)
            .into_iter()
            .map(|x| p.a[0].clone() * x)
            .collect();
        row.extend(
            power_of_linear_partial(&p.u, d, i)
                .into_iter()
                .map(|x| p.a[1].clone() * x),
        );
        frame[2 + i] = row;
    }
    Ok(frame)
}

/// Uniformly random point of X over F_p (resampled until valid).
pub fn sample_point<R: Rng + ?Sized>(gf: &PrimeField, rng: &mut R) -> BundlePoint<Fp> {
    let u = gf.sample_nonzero_vec(rng, 3);
    let a = gf.sample_nonzero_vec(rng, 2);
    BundlePoint {
        u: [u[0], u[1], u[2]],
        a: [a[0], a[1]],
    }
}

/// Expected secant dimension min(4k - 1, N) for the non-defective case.
pub fn expected_secant_dimension(c: usize, d: usize, k: usize) -> usize {
    (4 * k - 1).min(ambient_dim(c, d) - 1)
}

/// One Terracini trial: the rank of the 5k frame rows at k random points,
/// minus 1. This lower-bounds dim Sec_k(X) with overwhelming probability
/// and never exceeds it.
fn secant_trial(gf: &PrimeField, c: usize, d: usize, k: usize, seed: u64, trial: u64) -> usize {
    let mut rng = derive_rng_indexed(seed, stream::SECANT_TRIAL, trial);
    let mut rows = Vec::with_capacity(5 * k);
    for _ in 0..k {
        let p = sample_point(gf, &mut rng);
        rows.extend(tangent_frame(&p, c, d).expect("sampled points are valid"));
    }
    let rank = Matrix::from_rows(rows)
        .rank()
        .expect("sampled entries share one prime field");
    rank - 1
}

/// Per-trial secant dimensions (rank of stacked tangent frames minus 1).
pub fn secant_dimension_trials(
    gf: &PrimeField,
    c: usize,
    d: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Vec<usize> {
    assert!(k >= 1 && trials >= 1);
    (0..trials)
        .map(|t| secant_trial(gf, c, d, k, seed, t as u64))
        .collect()
}

/// dim Sec_k(X) as the max over `trials` Monte Carlo trials. Special points
/// can only lower the rank, so the max is the best certified value.
pub fn secant_dimension(
    gf: &PrimeField,
    c: usize,
    d: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> usize {
    secant_dimension_trials(gf, c, d, k, trials, seed)
        .into_iter()
        .max()
        .expect("at least one trial")
}

/// Whether X is k-defective: dim Sec_k(X) < min(4k - 1, N).
pub fn is_defective(
    gf: &PrimeField,
    c: usize,
    d: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> bool {
    secant_dimension(gf, c, d, k, trials, seed) < expected_secant_dimension(c, d, k)
}
