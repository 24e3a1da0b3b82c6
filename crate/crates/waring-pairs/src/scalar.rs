//! Scalar domains: a prime field with runtime modulus, exact rationals, and `f64`.
//!
//! Everything downstream (matrices, forms, conditions matrices) is generic over
//! [`Field`]. Exact elimination is restricted to [`ExactField`] types; `f64` only
//! participates in square solves for the Newton iteration.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

/// Arbitrary-precision rational scalar.
pub type Rat = BigRational;

/// Default prime field modulus: a 31-bit prime, large enough that every degree
/// in scope stays invertible and Schwartz–Zippel failure odds are negligible.
pub const DEFAULT_PRIME: u64 = 2_147_483_629;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("invalid prime modulus {0}: must be a prime with 10^6 < p < 2^31")]
    InvalidPrime(u64),
}

/// Common interface for the scalar domains used by the toolkit.
///
/// `Zero`/`One` come from `num-traits`. For `Fp` those constants carry no
/// modulus yet; they bind to a concrete field on first contact with a bound
/// element. Integer embeddings therefore take a context element (`self`)
/// whose domain the result should live in.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether arithmetic in this domain is exact.
    const EXACT: bool;

    /// Embed a nonnegative integer into the domain of `self`.
    fn embed_u128(&self, n: u128) -> Self;

    /// Embed a signed integer into the domain of `self`.
    fn embed_i64(&self, n: i64) -> Self;

    /// Whether the two elements belong to the same scalar domain
    /// (same modulus for `Fp`; always true otherwise).
    fn same_domain(&self, other: &Self) -> bool;

    /// Multiplicative inverse, `None` for zero.
    fn try_inverse(&self) -> Option<Self>;

    /// Pivot quality used by elimination: exact fields report 1.0 for any
    /// nonzero entry (first-nonzero pivoting), floats report the magnitude.
    fn pivot_magnitude(&self) -> f64;
}

/// Exact domains where Gaussian elimination reveals true ranks.
pub trait ExactField: Field {}

// ---------------------------------------------------------------------------
// Prime field
// ---------------------------------------------------------------------------

/// Element of Z/pZ. The modulus travels with the element; `modulus == 0`
/// marks an unbound integer constant produced by `Zero::zero()`/`One::one()`,
/// which binds to the other operand's field on first use.
#[derive(Clone, Copy, Eq)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn bind(self, modulus: u64) -> Fp {
        if self.modulus == modulus || modulus == 0 {
            self
        } else if self.modulus == 0 {
            Fp {
                value: self.value % modulus,
                modulus,
            }
        } else {
            panic!(
                "prime field modulus mismatch: {} vs {}",
                self.modulus, modulus
            );
        }
    }

    fn unified(self, other: Fp) -> (u64, u64, u64) {
        let m = match (self.modulus, other.modulus) {
            (0, m) | (m, 0) => m,
            (a, b) if a == b => a,
            (a, b) => panic!("prime field modulus mismatch: {a} vs {b}"),
        };
        (self.bind(m).value, other.bind(m).value, m)
    }

    fn pow(self, mut e: u64) -> Fp {
        let m = self.modulus;
        assert!(m != 0, "cannot exponentiate an unbound constant");
        let mut base = self.value as u128;
        let mut acc: u128 = 1;
        let m128 = m as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m128;
            }
            base = base * base % m128;
            e >>= 1;
        }
        Fp {
            value: acc as u64,
            modulus: m,
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.unified(*other);
        a == b
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (a, b, m) = self.unified(rhs);
        if m == 0 {
            return Fp {
                value: a + b,
                modulus: 0,
            };
        }
        let s = a + b;
        Fp {
            value: if s >= m { s - m } else { s },
            modulus: m,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.modulus == 0 {
            assert!(self.value == 0, "cannot negate an unbound constant");
            return self;
        }
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (a, b, m) = self.unified(rhs);
        if m == 0 {
            return Fp {
                value: a * b,
                modulus: 0,
            };
        }
        Fp {
            value: (a as u128 * b as u128 % m as u128) as u64,
            modulus: m,
        }
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        let inv = rhs.try_inverse().expect("division by zero in prime field");
        self * inv
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp {
            value: 0,
            modulus: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp {
            value: 1,
            modulus: 0,
        }
    }
}

impl Field for Fp {
    const EXACT: bool = true;

    fn embed_u128(&self, n: u128) -> Self {
        if self.modulus == 0 {
            assert!(
                n <= u64::MAX as u128,
                "unbound integer constant out of range"
            );
            return Fp {
                value: n as u64,
                modulus: 0,
            };
        }
        Fp {
            value: (n % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }

    fn embed_i64(&self, n: i64) -> Self {
        let v = self.embed_u128(n.unsigned_abs() as u128);
        if n < 0 {
            -v
        } else {
            v
        }
    }

    fn same_domain(&self, other: &Self) -> bool {
        self.modulus == other.modulus || self.modulus == 0 || other.modulus == 0
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        if self.modulus == 0 {
            assert!(self.value == 1, "cannot invert an unbound constant");
            return Some(*self);
        }
        Some(self.pow(self.modulus - 2))
    }

    fn pivot_magnitude(&self) -> f64 {
        if self.value == 0 {
            0.0
        } else {
            1.0
        }
    }
}

impl ExactField for Fp {}

/// Handle to a concrete prime field F_p; the factory for bound [`Fp`] elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Construct F_p. The modulus must be prime with 10^6 < p < 2^31 so that
    /// single-word arithmetic suffices and p exceeds every degree in scope.
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if p <= 1_000_000 || p >= 1 << 31 || !is_prime(p) {
            return Err(ScalarError::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn default_field() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> Fp {
        let v = n.rem_euclid(self.p as i64) as u64;
        Fp {
            value: v,
            modulus: self.p,
        }
    }

    pub fn from_u64(&self, n: u64) -> Fp {
        Fp {
            value: n % self.p,
            modulus: self.p,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp {
            value: rng.gen_range(0..self.p),
            modulus: self.p,
        }
    }

    /// A uniformly random vector that is not identically zero.
    pub fn sample_nonzero_vec<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> Vec<Fp> {
        loop {
            let v: Vec<Fp> = (0..len).map(|_| self.sample(rng)).collect();
            if v.iter().any(|x| !x.is_zero()) {
                return v;
            }
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self::default_field()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// ---------------------------------------------------------------------------
// Rationals and floats
// ---------------------------------------------------------------------------

impl Field for Rat {
    const EXACT: bool = true;

    fn embed_u128(&self, n: u128) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn embed_i64(&self, n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn same_domain(&self, _other: &Self) -> bool {
        true
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rat::one() / self.clone())
        }
    }

    fn pivot_magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl ExactField for Rat {}

impl Field for f64 {
    const EXACT: bool = false;

    fn embed_u128(&self, n: u128) -> Self {
        n as f64
    }

    fn embed_i64(&self, n: i64) -> Self {
        n as f64
    }

    fn same_domain(&self, _other: &Self) -> bool {
        true
    }

    fn try_inverse(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }

    fn pivot_magnitude(&self) -> f64 {
        self.abs()
    }
}

/// Parse a rational from a decimal string: "7", "-3/4" or "1.25".
pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.trim_start().starts_with('-');
        let i: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        if frac_part.is_empty() {
            return Some(Rat::from_integer(i));
        }
        let f: BigInt = frac_part.parse().ok()?;
        if f.is_negative() {
            return None;
        }
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = Rat::new(f, scale);
        let int = Rat::from_integer(i);
        return Some(if neg { int - frac } else { int + frac });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(n))
}
