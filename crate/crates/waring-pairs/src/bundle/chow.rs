//! Integer intersection ring of X = P(O(c) ⊕ O(d)) over the plane.
//!
//! Generators: the tautological class T and the pulled-back line class H.
//! Relations: H^3 = 0 and the fundamental relation
//! T^2 = (c + d) T H - c d H^2 (Whitney: c1 = (c+d)h, c2 = cd pt).
//! As a Z-module the ring has basis {1; T, H; TH, H^2; TH^2}, and the
//! top-degree class TH^2 is one point.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("integer overflow while reducing an intersection class")]
    Overflow,
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
}

/// Element of the intersection ring in the basis {1; T, H; TH, H^2; TH^2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ChowClass {
    pub unit: i128,
    pub t: i128,
    pub h: i128,
    pub th: i128,
    pub h2: i128,
    pub th2: i128,
}

impl ChowClass {
    pub fn zero() -> Self {
        ChowClass::default()
    }

    pub fn scalar(n: i128) -> Self {
        ChowClass {
            unit: n,
            ..Default::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == ChowClass::zero()
    }

    /// Integer degree of a top-dimensional class (via TH^2 = 1 point);
    /// `None` when lower-degree components are present.
    pub fn degree(&self) -> Option<i128> {
        if self.unit == 0 && self.t == 0 && self.h == 0 && self.th == 0 && self.h2 == 0 {
            Some(self.th2)
        } else {
            None
        }
    }
}

impl Add for ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: ChowClass) -> ChowClass {
        ChowClass {
            unit: self.unit + rhs.unit,
            t: self.t + rhs.t,
            h: self.h + rhs.h,
            th: self.th + rhs.th,
            h2: self.h2 + rhs.h2,
            th2: self.th2 + rhs.th2,
        }
    }
}

impl Sub for ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: ChowClass) -> ChowClass {
        self + (-rhs)
    }
}

impl Neg for ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        ChowClass {
            unit: -self.unit,
            t: -self.t,
            h: -self.h,
            th: -self.th,
            h2: -self.h2,
            th2: -self.th2,
        }
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = [
            (self.unit, ""),
            (self.t, "T"),
            (self.h, "H"),
            (self.th, "T*H"),
            (self.h2, "H^2"),
            (self.th2, "T*H^2"),
        ]
        .iter()
        .filter(|(cf, _)| *cf != 0)
        .map(|(cf, sym)| {
            if sym.is_empty() {
                cf.to_string()
            } else if *cf == 1 {
                sym.to_string()
            } else if *cf == -1 {
                format!("-{sym}")
            } else {
                format!("{cf}*{sym}")
            }
        })
        .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// The intersection ring for fixed bundle degrees (c, d).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChowRing {
    c: i128,
    d: i128,
}

impl ChowRing {
    pub fn new(c: usize, d: usize) -> Self {
        ChowRing {
            c: c as i128,
            d: d as i128,
        }
    }

    pub fn t() -> ChowClass {
        ChowClass {
            t: 1,
            ..Default::default()
        }
    }

    pub fn h() -> ChowClass {
        ChowClass {
            h: 1,
            ..Default::default()
        }
    }

    /// Normal form of the monomial T^a H^b.
    pub fn reduce_monomial(&self, t_exp: u32, h_exp: u32) -> Result<ChowClass, ChowError> {
        if h_exp >= 3 {
            return Ok(ChowClass::zero());
        }
        match t_exp {
            0 => Ok(match h_exp {
                0 => ChowClass::scalar(1),
                1 => ChowRing::h(),
                _ => ChowClass {
                    h2: 1,
                    ..Default::default()
                },
            }),
            1 => Ok(match h_exp {
                0 => ChowRing::t(),
                1 => ChowClass {
                    th: 1,
                    ..Default::default()
                },
                _ => ChowClass {
                    th2: 1,
                    ..Default::default()
                },
            }),
            _ => {
                // T^a H^b = (c+d) T^(a-1) H^(b+1) - cd T^(a-2) H^(b+2)
                let hi = self.reduce_monomial(t_exp - 1, h_exp + 1)?;
                let lo = self.reduce_monomial(t_exp - 2, h_exp + 2)?;
                let hi = scale(hi, self.c + self.d)?;
                let lo = scale(lo, self.c * self.d)?;
                checked_add(hi, neg_checked(lo))
            }
        }
    }

    /// Ring product of two normal-form classes.
    pub fn mul(&self, a: &ChowClass, b: &ChowClass) -> Result<ChowClass, ChowError> {
        // basis index -> (t exponent, h exponent)
        const BASIS: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)];
        let av = [a.unit, a.t, a.h, a.th, a.h2, a.th2];
        let bv = [b.unit, b.t, b.h, b.th, b.h2, b.th2];
        let mut acc = ChowClass::zero();
        for (i, &ca) in av.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in bv.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                let (ta, ha) = BASIS[i];
                let (tb, hb) = BASIS[j];
                let mono = self.reduce_monomial(ta + tb, ha + hb)?;
                let coeff = ca.checked_mul(cb).ok_or(ChowError::Overflow)?;
                acc = checked_add(acc, scale(mono, coeff)?)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &ChowClass, n: u32) -> Result<ChowClass, ChowError> {
        let mut acc = ChowClass::scalar(1);
        for _ in 0..n {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Evaluate a parsed expression to its normal form.
    pub fn eval(&self, expr: &ChowExpr) -> Result<ChowClass, ChowError> {
        match expr {
            ChowExpr::Int(n) => Ok(ChowClass::scalar(*n)),
            ChowExpr::T => Ok(ChowRing::t()),
            ChowExpr::H => Ok(ChowRing::h()),
            ChowExpr::Neg(e) => Ok(-self.eval(e)?),
            ChowExpr::Add(a, b) => checked_add(self.eval(a)?, self.eval(b)?),
            ChowExpr::Sub(a, b) => checked_add(self.eval(a)?, -self.eval(b)?),
            ChowExpr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?),
            ChowExpr::Pow(a, n) => self.pow(&self.eval(a)?, *n),
        }
    }

    /// Parse and reduce a polynomial in T and H.
    pub fn reduce_str(&self, src: &str) -> Result<ChowClass, ChowError> {
        self.eval(&parse_expression(src)?)
    }
}

fn scale(a: ChowClass, s: i128) -> Result<ChowClass, ChowError> {
    let m = |x: i128| x.checked_mul(s).ok_or(ChowError::Overflow);
    Ok(ChowClass {
        unit: m(a.unit)?,
        t: m(a.t)?,
        h: m(a.h)?,
        th: m(a.th)?,
        h2: m(a.h2)?,
        th2: m(a.th2)?,
    })
}

fn neg_checked(a: ChowClass) -> ChowClass {
    -a
}

fn checked_add(a: ChowClass, b: ChowClass) -> Result<ChowClass, ChowError> {
    let s = |x: i128, y: i128| x.checked_add(y).ok_or(ChowError::Overflow);
    Ok(ChowClass {
        unit: s(a.unit, b.unit)?,
        t: s(a.t, b.t)?,
        h: s(a.h, b.h)?,
        th: s(a.th, b.th)?,
        h2: s(a.h2, b.h2)?,
        th2: s(a.th2, b.th2)?,
    })
}

// ---------------------------------------------------------------------------
// Expression parser. Grammar (juxtaposition multiplies, ^ binds tightest):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*' | juxtaposition) factor)*
//   factor := atom ('^' nat)?
//   atom   := nat | 'T' | 'H' | '-' factor | '(' expr ')'
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChowExpr {
    Int(i128),
    T,
    H,
    Neg(Box<ChowExpr>),
    Add(Box<ChowExpr>, Box<ChowExpr>),
    Sub(Box<ChowExpr>, Box<ChowExpr>),
    Mul(Box<ChowExpr>, Box<ChowExpr>),
    Pow(Box<ChowExpr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ChowError> {
        Err(ChowError::Parse {
            at: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ChowExpr, ChowError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = ChowExpr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = ChowExpr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ChowExpr, ChowError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = ChowExpr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                // juxtaposition: "4H", "T H", "2(T+H)"
                Some(c) if c == b'T' || c == b'H' || c == b'(' || c.is_ascii_digit() => {
                    acc = ChowExpr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ChowExpr, ChowError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.nat()?;
            if n > 64 {
                return self.err("exponent too large (max 64)");
            }
            return Ok(ChowExpr::Pow(Box::new(base), n as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ChowExpr, ChowError> {
        match self.peek() {
            Some(b'T') => {
                self.pos += 1;
                Ok(ChowExpr::T)
            }
            Some(b'H') => {
                self.pos += 1;
                Ok(ChowExpr::H)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(ChowExpr::Neg(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(ChowExpr::Int(self.nat()? as i128)),
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of expression"),
        }
    }

    fn nat(&mut self) -> Result<u64, ChowError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ChowError::Parse {
                at: start,
                msg: "number out of range".into(),
            })
    }
}

/// Parse a polynomial expression in the symbols T and H.
pub fn parse_expression(src: &str) -> Result<ChowExpr, ChowError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_of_x_in_projective_space() {
        // T^3 = c^2 + cd + d^2 points
        for (c, d) in [(2usize, 3usize), (3, 3), (4, 8), (1, 1)] {
            let ring = ChowRing::new(c, d);
            let t3 = ring.reduce_str("T^3").unwrap();
            let want = (c * c + c * d + d * d) as i128;
            assert_eq!(t3.degree(), Some(want), "({c},{d})");
        }
    }

    #[test]
    fn section_class_restriction() {
        // (T - cH) * T * H = d: the section Z has class T - cH and T
        // restricts to Z as d times a line
        let ring = ChowRing::new(4, 8);
        let cls = ring.reduce_str("(T-4H)*T*H").unwrap();
        assert_eq!(cls.degree(), Some(8));
        let ring = ChowRing::new(3, 3);
        assert_eq!(ring.reduce_str("(T-3H)*T*H").unwrap().degree(), Some(3));
    }

    #[test]
    fn plane_relation() {
        let ring = ChowRing::new(4, 8);
        assert!(ring.reduce_str("H^3").unwrap().is_zero());
        assert_eq!(ring.reduce_str("H^3").unwrap().degree(), Some(0));
    }

    #[test]
    fn fundamental_relation_normal_form() {
        let ring = ChowRing::new(2, 5);
        let t2 = ring.reduce_str("T^2").unwrap();
        assert_eq!(
            t2,
            ChowClass {
                th: 7,
                h2: -10,
                ..Default::default()
            }
        );
        // T^2 H = (c+d) TH^2
        assert_eq!(ring.reduce_str("T^2*H").unwrap().degree(), Some(7));
    }

    #[test]
    fn confluence_of_reduction_orders() {
        // (T - cH)^2 * T computed as ((T-cH)^2)*T and as (T-cH)*((T-cH)*T)
        for (c, d) in [(3usize, 7usize), (5, 9), (10, 10)] {
            let ring = ChowRing::new(c, d);
            let z = ChowRing::t() - scale(ChowRing::h(), c as i128).unwrap();
            let left = ring
                .mul(&ring.mul(&z, &z).unwrap(), &ChowRing::t())
                .unwrap();
            let right = ring
                .mul(&z, &ring.mul(&z, &ChowRing::t()).unwrap())
                .unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn parser_handles_juxtaposition_and_spaces() {
        let ring = ChowRing::new(4, 8);
        assert_eq!(
            ring.reduce_str("(T-4H)*T*H").unwrap(),
            ring.reduce_str("( T - 4 H ) T H").unwrap()
        );
        assert_eq!(
            ring.reduce_str("2T^2 - T T").unwrap(),
            ring.reduce_str("T^2").unwrap()
        );
        assert_eq!(ring.reduce_str("-H + H").unwrap(), ChowClass::zero());
        assert_eq!(ring.reduce_str("TH^2").unwrap().degree(), Some(1));
    }

    #[test]
    fn parser_rejects_malformed() {
        assert!(parse_expression("T +").is_err());
        assert!(parse_expression("(T").is_err());
        assert!(parse_expression("T^").is_err());
        assert!(parse_expression("X").is_err());
        assert!(parse_expression("T^200").is_err());
        assert!(parse_expression("").is_err());
    }

    #[test]
    fn display_roundtrips_through_parser() {
        let ring = ChowRing::new(2, 5);
        let cls = ring.reduce_str("T^2 + 3H - 1").unwrap();
        let printed = cls.to_string();
        assert_eq!(ring.reduce_str(&printed).unwrap(), cls);
    }
}
