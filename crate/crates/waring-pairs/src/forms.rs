//! Dense homogeneous ternary forms: graded-lex monomial indexing, evaluation,
//! gradients, and powers of linear forms.
//!
//! The monomial order is graded-lexicographic with x0 > x1 > x2, fixed
//! globally; a form of degree d is the vector of its binom(d+2,2) plain
//! monomial coefficients in that order.

use serde_json::{json, Value};
use thiserror::Error;

use crate::scalar::{parse_rational, Field, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormsError {
    #[error("coefficient vector has length {got}, expected {expected} for degree {degree}")]
    CoefficientCount {
        degree: usize,
        expected: usize,
        got: usize,
    },
    #[error("operands drawn from mismatched scalar domains")]
    DomainMismatch,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("malformed form pair: {0}")]
    Parse(String),
}

/// Number of degree-`d` monomials in three variables: binom(d+2, 2).
pub fn monomial_count(degree: usize) -> usize {
    (degree + 2) * (degree + 1) / 2
}

/// Exponent triple (e0, e1, e2) of a monomial x0^e0 x1^e1 x2^e2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialIndex {
    pub exponents: [usize; 3],
}

impl MonomialIndex {
    pub fn degree(&self) -> usize {
        self.exponents.iter().sum()
    }

    /// Position of this monomial in the graded-lex order of its degree;
    /// this is the slot it occupies in a coefficient vector.
    pub fn position(&self) -> usize {
        let [e0, e1, _] = self.exponents;
        let level = self.degree() - e0;
        level * (level + 1) / 2 + (level - e1)
    }
}

/// All degree-`d` monomials in graded-lex order (x0 > x1 > x2), so that
/// `basis[m.position()] == m`.
pub fn monomial_basis(degree: usize) -> Vec<MonomialIndex> {
    let mut out = Vec::with_capacity(monomial_count(degree));
    for e0 in (0..=degree).rev() {
        for e1 in (0..=degree - e0).rev() {
            out.push(MonomialIndex {
                exponents: [e0, e1, degree - e0 - e1],
            });
        }
    }
    out
}

/// Multinomial coefficient m! / (e0! e1! e2!) for e0+e1+e2 = m.
pub fn multinomial(m: usize, e: [usize; 3]) -> u128 {
    debug_assert_eq!(e[0] + e[1] + e[2], m);
    binomial(m, e[0]) * binomial(m - e[0], e[1])
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .expect("binomial coefficient exceeds u128; degree out of supported range");
        acc /= (i + 1) as u128;
    }
    acc
}

/// Homogeneous ternary form as a dense coefficient vector.
#[derive(Debug, Clone, PartialEq)]
pub struct TernaryForm<T> {
    degree: usize,
    coeffs: Vec<T>,
}

impl<T: Field> TernaryForm<T> {
    pub fn new(degree: usize, coeffs: Vec<T>) -> Result<Self, FormsError> {
        if coeffs.len() != monomial_count(degree) {
            return Err(FormsError::CoefficientCount {
                degree,
                expected: monomial_count(degree),
                got: coeffs.len(),
            });
        }
        Ok(TernaryForm { degree, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    fn check_domain(&self, u: &[T; 3]) -> Result<(), FormsError> {
        let mut witness: Option<&T> = None;
        for e in self.coeffs.iter().chain(u.iter()) {
            match witness {
                None => witness = Some(e),
                Some(w) => {
                    if !w.same_domain(e) {
                        return Err(FormsError::DomainMismatch);
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluate at a point: sum of coeff * u0^e0 u1^e1 u2^e2.
    pub fn evaluate(&self, u: &[T; 3]) -> Result<T, FormsError> {
        self.check_domain(u)?;
        let pows = power_tables(u, self.degree);
        let mut acc = T::zero();
        for (m, coeff) in monomial_basis(self.degree).iter().zip(&self.coeffs) {
            let [e0, e1, e2] = m.exponents;
            acc = acc
                + coeff.clone() * pows[0][e0].clone() * pows[1][e1].clone() * pows[2][e2].clone();
        }
        Ok(acc)
    }

    /// Gradient (dF/du0, dF/du1, dF/du2) evaluated at `u`.
    pub fn gradient(&self, u: &[T; 3]) -> Result<[T; 3], FormsError> {
        self.check_domain(u)?;
        let pows = power_tables(u, self.degree);
        let mut out = [T::zero(), T::zero(), T::zero()];
        for (m, coeff) in monomial_basis(self.degree).iter().zip(&self.coeffs) {
            for i in 0..3 {
                let mut e = m.exponents;
                if e[i] == 0 {
                    continue;
                }
                let mult = coeff.embed_u128(e[i] as u128);
                e[i] -= 1;
                out[i] = out[i].clone()
                    + coeff.clone()
                        * mult
                        * pows[0][e[0]].clone()
                        * pows[1][e[1]].clone()
                        * pows[2][e[2]].clone();
            }
        }
        Ok(out)
    }
}

fn power_tables<T: Field>(u: &[T; 3], degree: usize) -> [Vec<T>; 3] {
    let table = |x: &T| {
        let mut v = Vec::with_capacity(degree + 1);
        v.push(x.embed_u128(1));
        for i in 0..degree {
            let next = v[i].clone() * x.clone();
            v.push(next);
        }
        v
    };
    [table(&u[0]), table(&u[1]), table(&u[2])]
}

/// Coefficient vector of (l0 x0 + l1 x1 + l2 x2)^m: the coefficient of the
/// monomial e is multinomial(m; e) * l^e.
pub fn power_of_linear<T: Field>(l: &[T; 3], m: usize) -> TernaryForm<T> {
    let pows = power_tables(l, m);
    let coeffs = monomial_basis(m)
        .iter()
        .map(|mono| {
            let [e0, e1, e2] = mono.exponents;
            l[0].embed_u128(multinomial(m, mono.exponents))
                * pows[0][e0].clone()
                * pows[1][e1].clone()
                * pows[2][e2].clone()
        })
        .collect();
    TernaryForm::new(m, coeffs).expect("basis enumeration matches coefficient count")
}

/// Derivative of the `power_of_linear(l, m)` coefficient vector with respect
/// to the coordinate `l[i]`: entry at monomial e is multinomial(m;e) * e_i * l^(e - delta_i).
pub fn power_of_linear_partial<T: Field>(l: &[T; 3], m: usize, i: usize) -> Vec<T> {
    assert!(i < 3);
    let pows = power_tables(l, m);
    monomial_basis(m)
        .iter()
        .map(|mono| {
            let mut e = mono.exponents;
            if e[i] == 0 {
                return T::zero();
            }
            let mult = multinomial(m, e) * e[i] as u128;
            e[i] -= 1;
            l[0].embed_u128(mult)
                * pows[0][e[0]].clone()
                * pows[1][e[1]].clone()
                * pows[2][e[2]].clone()
        })
        .collect()
}

/// A pair (f, g) of ternary forms of degrees c <= d; its concatenated
/// coefficient vector is the ambient coordinate vector in P^N.
#[derive(Debug, Clone, PartialEq)]
pub struct FormPair<T> {
    pub c: usize,
    pub d: usize,
    pub f: TernaryForm<T>,
    pub g: TernaryForm<T>,
}

impl<T: Field> FormPair<T> {
    pub fn new(f: TernaryForm<T>, g: TernaryForm<T>) -> Result<Self, FormsError> {
        if f.degree() > g.degree() {
            return Err(FormsError::DegreeMismatch {
                expected: f.degree(),
                got: g.degree(),
            });
        }
        Ok(FormPair {
            c: f.degree(),
            d: g.degree(),
            f,
            g,
        })
    }

    /// N + 1 = binom(c+2,2) + binom(d+2,2).
    pub fn ambient_dim(&self) -> usize {
        monomial_count(self.c) + monomial_count(self.d)
    }

    pub fn concat_coeffs(&self) -> Vec<T> {
        let mut v = Vec::with_capacity(self.ambient_dim());
        v.extend_from_slice(self.f.coeffs());
        v.extend_from_slice(self.g.coeffs());
        v
    }
}

/// Ambient dimension helper for a degree pair: binom(c+2,2)+binom(d+2,2).
pub fn ambient_dim(c: usize, d: usize) -> usize {
    monomial_count(c) + monomial_count(d)
}

// ---------------------------------------------------------------------------
// JSON file format: {"c": int, "d": int, "f": [coeffs], "g": [coeffs]},
// coefficients as decimal strings (rational) or numbers (float64).
// ---------------------------------------------------------------------------

fn coeffs_from_json(v: &Value, expected: usize) -> Result<Vec<Value>, FormsError> {
    let arr = v
        .as_array()
        .ok_or_else(|| FormsError::Parse("coefficient field is not an array".into()))?;
    if arr.len() != expected {
        return Err(FormsError::Parse(format!(
            "expected {expected} coefficients, got {}",
            arr.len()
        )));
    }
    Ok(arr.clone())
}

fn parse_pair_json(src: &str) -> Result<(usize, usize, Vec<Value>, Vec<Value>), FormsError> {
    let v: Value =
        serde_json::from_str(src).map_err(|e| FormsError::Parse(e.to_string()))?;
    let c = v["c"]
        .as_u64()
        .ok_or_else(|| FormsError::Parse("missing integer field c".into()))? as usize;
    let d = v["d"]
        .as_u64()
        .ok_or_else(|| FormsError::Parse("missing integer field d".into()))? as usize;
    if c > d {
        return Err(FormsError::Parse(format!("degrees out of order: c={c} > d={d}")));
    }
    let f = coeffs_from_json(&v["f"], monomial_count(c))?;
    let g = coeffs_from_json(&v["g"], monomial_count(d))?;
    Ok((c, d, f, g))
}

impl FormPair<f64> {
    pub fn from_json_str(src: &str) -> Result<Self, FormsError> {
        let (c, d, f, g) = parse_pair_json(src)?;
        let conv = |vals: Vec<Value>, degree: usize| -> Result<TernaryForm<f64>, FormsError> {
            let coeffs = vals
                .iter()
                .map(|v| match v {
                    Value::Number(n) => n
                        .as_f64()
                        .ok_or_else(|| FormsError::Parse("non-finite coefficient".into())),
                    Value::String(s) => parse_rational(s)
                        .map(|r| rat_to_f64(&r))
                        .ok_or_else(|| FormsError::Parse(format!("bad coefficient '{s}'"))),
                    other => Err(FormsError::Parse(format!("bad coefficient {other}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            TernaryForm::new(degree, coeffs)
        };
        FormPair::new(conv(f, c)?, conv(g, d)?)
    }

    pub fn to_json_string(&self) -> String {
        json!({
            "c": self.c,
            "d": self.d,
            "f": self.f.coeffs(),
            "g": self.g.coeffs(),
        })
        .to_string()
    }
}

impl FormPair<Rat> {
    pub fn from_json_str(src: &str) -> Result<Self, FormsError> {
        let (c, d, f, g) = parse_pair_json(src)?;
        let conv = |vals: Vec<Value>, degree: usize| -> Result<TernaryForm<Rat>, FormsError> {
            let coeffs = vals
                .iter()
                .map(|v| match v {
                    Value::String(s) => parse_rational(s)
                        .ok_or_else(|| FormsError::Parse(format!("bad coefficient '{s}'"))),
                    Value::Number(n) if n.is_i64() => {
                        Ok(Rat::from_integer(n.as_i64().unwrap().into()))
                    }
                    other => Err(FormsError::Parse(format!(
                        "rational coefficients must be strings or integers, got {other}"
                    ))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            TernaryForm::new(degree, coeffs)
        };
        FormPair::new(conv(f, c)?, conv(g, d)?)
    }

    pub fn to_json_string(&self) -> String {
        let render = |form: &TernaryForm<Rat>| -> Vec<String> {
            form.coeffs().iter().map(|r| r.to_string()).collect()
        };
        json!({
            "c": self.c,
            "d": self.d,
            "f": render(&self.f),
            "g": render(&self.g),
        })
        .to_string()
    }
}

fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, PrimeField};
    use num_traits::{One, Zero};
    use proptest::prelude::*;
    use rand::Rng;

    fn gf() -> PrimeField {
        PrimeField::default_field()
    }

    #[test]
    fn basis_degree_one_and_two() {
        let b1 = monomial_basis(1);
        assert_eq!(
            b1.iter().map(|m| m.exponents).collect::<Vec<_>>(),
            vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        );
        let b2 = monomial_basis(2);
        assert_eq!(b2.len(), 6);
        assert_eq!(b2[0].exponents, [2, 0, 0]);
        assert_eq!(b2[5].exponents, [0, 0, 2]);
    }

    #[test]
    fn basis_count_and_positions() {
        assert_eq!(monomial_basis(8).len(), 45);
        for d in 0..=10 {
            let basis = monomial_basis(d);
            assert_eq!(basis.len(), monomial_count(d));
            for (i, m) in basis.iter().enumerate() {
                assert_eq!(m.degree(), d);
                assert_eq!(m.position(), i);
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let gf = gf();
        // F = x0^2
        let mut coeffs = vec![Fp::zero(); 6];
        coeffs[0] = gf.elem(1);
        let f = TernaryForm::new(2, coeffs).unwrap();
        let v = f
            .evaluate(&[gf.elem(3), gf.elem(0), gf.elem(0)])
            .unwrap();
        assert_eq!(v, gf.elem(9));

        // F = x0 x1 + x2^2 at (1,2,1) -> 3
        let mut coeffs = vec![Fp::zero(); 6];
        coeffs[1] = gf.elem(1);
        coeffs[5] = gf.elem(1);
        let f = TernaryForm::new(2, coeffs).unwrap();
        let v = f
            .evaluate(&[gf.elem(1), gf.elem(2), gf.elem(1)])
            .unwrap();
        assert_eq!(v, gf.elem(3));

        // any positive-degree form vanishes at the origin
        let zero = [gf.elem(0), gf.elem(0), gf.elem(0)];
        assert_eq!(f.evaluate(&zero).unwrap(), gf.elem(0));
    }

    #[test]
    fn gradient_examples() {
        let gf = gf();
        let mut coeffs = vec![Fp::zero(); 6];
        coeffs[0] = gf.elem(1); // x0^2
        let f = TernaryForm::new(2, coeffs).unwrap();
        let g = f
            .gradient(&[gf.elem(1), gf.elem(1), gf.elem(1)])
            .unwrap();
        assert_eq!(g, [gf.elem(2), gf.elem(0), gf.elem(0)]);

        // F = x0 x1 x2 at (1,2,3) -> (6, 3, 2)
        let basis = monomial_basis(3);
        let idx = basis
            .iter()
            .position(|m| m.exponents == [1, 1, 1])
            .unwrap();
        let mut coeffs = vec![Fp::zero(); basis.len()];
        coeffs[idx] = gf.elem(1);
        let f = TernaryForm::new(3, coeffs).unwrap();
        let g = f
            .gradient(&[gf.elem(1), gf.elem(2), gf.elem(3)])
            .unwrap();
        assert_eq!(g, [gf.elem(6), gf.elem(3), gf.elem(2)]);
    }

    #[test]
    fn power_of_linear_examples() {
        let gf = gf();
        // (x0)^3
        let p = power_of_linear(&[gf.elem(1), gf.elem(0), gf.elem(0)], 3);
        assert!(p.coeffs()[0].is_one());
        assert!(p.coeffs()[1..].iter().all(Fp::is_zero));

        // (x0 + x1)^2 = x0^2 + 2 x0 x1 + x1^2
        let p = power_of_linear(&[gf.elem(1), gf.elem(1), gf.elem(0)], 2);
        let want: Vec<Fp> = [1, 2, 0, 1, 0, 0].iter().map(|&x| gf.elem(x)).collect();
        assert_eq!(p.coeffs(), &want[..]);

        // coefficient of x0 x1 x2 in (x0+x1+x2)^3 is 3!/(1!1!1!) = 6
        let p = power_of_linear(&[gf.elem(1), gf.elem(1), gf.elem(1)], 3);
        let idx = MonomialIndex {
            exponents: [1, 1, 1],
        }
        .position();
        assert_eq!(p.coeffs()[idx], gf.elem(6));
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(3, [1, 1, 1]), 6);
        assert_eq!(multinomial(2, [1, 1, 0]), 2);
        assert_eq!(multinomial(8, [4, 2, 2]), 420);
        assert_eq!(multinomial(0, [0, 0, 0]), 1);
    }

    #[test]
    fn pair_json_roundtrip_f64() {
        let src = r#"{"c":2,"d":3,"f":[1,0,0,0,0,-2.5],"g":[0,0,0,0,0,0,0,0,0,"1/2"]}"#;
        let pair = FormPair::<f64>::from_json_str(src).unwrap();
        assert_eq!(pair.c, 2);
        assert_eq!(pair.f.coeffs()[5], -2.5);
        assert_eq!(pair.g.coeffs()[9], 0.5);
        let back = FormPair::<f64>::from_json_str(&pair.to_json_string()).unwrap();
        assert_eq!(back, pair);
    }

    #[test]
    fn pair_json_roundtrip_rational() {
        let src = r#"{"c":1,"d":1,"f":["1/3","0","-2"],"g":[1,2,3]}"#;
        let pair = FormPair::<Rat>::from_json_str(src).unwrap();
        assert_eq!(pair.f.coeffs()[0], Rat::new(1.into(), 3.into()));
        let back = FormPair::<Rat>::from_json_str(&pair.to_json_string()).unwrap();
        assert_eq!(back, pair);
    }

    #[test]
    fn pair_json_rejects_malformed() {
        assert!(FormPair::<f64>::from_json_str("{}").is_err());
        assert!(FormPair::<f64>::from_json_str(r#"{"c":3,"d":2,"f":[],"g":[]}"#).is_err());
        assert!(
            FormPair::<f64>::from_json_str(r#"{"c":1,"d":1,"f":[1,2],"g":[1,2,3]}"#).is_err()
        );
    }

    proptest! {
        /// Euler identity: deg * F(u) = u . grad F(u).
        #[test]
        fn euler_identity(seed in 0u64..100, degree in 1usize..8) {
            let gf = gf();
            let mut rng = crate::seeding::derive_rng(seed, 0xE01E);
            let coeffs: Vec<Fp> = (0..monomial_count(degree)).map(|_| gf.sample(&mut rng)).collect();
            let f = TernaryForm::new(degree, coeffs).unwrap();
            let u = [gf.sample(&mut rng), gf.sample(&mut rng), gf.sample(&mut rng)];
            let lhs = gf.elem(degree as i64) * f.evaluate(&u).unwrap();
            let grad = f.gradient(&u).unwrap();
            let rhs = u[0] * grad[0] + u[1] * grad[1] + u[2] * grad[2];
            prop_assert_eq!(lhs, rhs);
        }

        /// power_of_linear(l, m) evaluated at x equals (l . x)^m.
        #[test]
        fn power_of_linear_is_power(seed in 0u64..100, m in 0usize..9) {
            let gf = gf();
            let mut rng = crate::seeding::derive_rng(seed, 0x90E1);
            let l = [gf.sample(&mut rng), gf.sample(&mut rng), gf.sample(&mut rng)];
            let p = power_of_linear(&l, m);
            for _ in 0..20 {
                let x = [gf.sample(&mut rng), gf.sample(&mut rng), gf.sample(&mut rng)];
                let dot = l[0] * x[0] + l[1] * x[1] + l[2] * x[2];
                let mut want = gf.elem(1);
                for _ in 0..m {
                    want = want * dot;
                }
                prop_assert_eq!(p.evaluate(&x).unwrap(), want);
            }
        }

        /// gradient of power_of_linear matches the independent route
        /// d/du_i (u.x)^m = m * x_i * (u.x)^(m-1) coefficientwise.
        #[test]
        fn power_partial_cross_route(seed in 0u64..60, m in 1usize..8) {
            let gf = gf();
            let mut rng = crate::seeding::derive_rng(seed, 0xC805);
            let l = [gf.sample(&mut rng), gf.sample(&mut rng), gf.sample(&mut rng)];
            let lower = power_of_linear(&l, m - 1);
            for i in 0..3 {
                let direct = power_of_linear_partial(&l, m, i);
                // multiply lower by x_i and by m: coefficient of e in x_i * F
                // is the coefficient of e - delta_i in F
                let mut alt = vec![Fp::zero(); monomial_count(m)];
                for (mono, coeff) in monomial_basis(m - 1).iter().zip(lower.coeffs()) {
                    let mut e = mono.exponents;
                    e[i] += 1;
                    let pos = MonomialIndex { exponents: e }.position();
                    alt[pos] = gf.elem(m as i64) * *coeff;
                }
                prop_assert_eq!(&direct, &alt);
            }
        }

        #[test]
        fn evaluate_matches_rational_route(seed in 0u64..40) {
            // same integer data evaluated over F_p and over Q agree mod p
            let gf = gf();
            let mut rng = crate::seeding::derive_rng(seed, 0x0A7B);
            let degree = 3usize;
            let ints: Vec<i64> = (0..monomial_count(degree)).map(|_| rng.gen_range(-5..=5)).collect();
            let pt: Vec<i64> = (0..3).map(|_| rng.gen_range(-5..=5)).collect();
            let f_p = TernaryForm::new(degree, ints.iter().map(|&x| gf.elem(x)).collect()).unwrap();
            let f_q = TernaryForm::new(degree, ints.iter().map(|&x| Rat::from_integer(x.into())).collect()).unwrap();
            let vp = f_p.evaluate(&[gf.elem(pt[0]), gf.elem(pt[1]), gf.elem(pt[2])]).unwrap();
            let vq = f_q.evaluate(&[
                Rat::from_integer(pt[0].into()),
                Rat::from_integer(pt[1].into()),
                Rat::from_integer(pt[2].into()),
            ]).unwrap();
            let vq_int: i64 = vq.to_integer().try_into().unwrap();
            prop_assert_eq!(vp, gf.elem(vq_int));
        }
    }
}
