//! Signed and nonnegative multivariate polynomials.
//!
//! A polynomial is an ordered list of monomials, each a coefficient paired
//! with an exponent vector. Order is preserved verbatim and like terms are
//! never merged. Evaluation zips the exponent vector against the variable
//! list and silently truncates to the shorter of the two; use
//! [`Poly::check_arity`] when a caller wants mismatches reported instead.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::PolyError;

/// Exponents are naturals; `u32` is what `BigUint::pow` accepts.
pub type Exp = u32;

/// `base^exp` with `pow(b, 0) = 1`.
pub fn pow(base: &BigUint, exp: Exp) -> BigUint {
    num_traits::pow::Pow::pow(base, exp)
}

/// Signed-coefficient monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigInt,
    pub exps: Vec<Exp>,
}

/// Nonnegative-coefficient monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NatMonomial {
    pub coeff: BigUint,
    pub exps: Vec<Exp>,
}

/// Signed-coefficient polynomial.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    pub monomials: Vec<Monomial>,
}

/// Nonnegative-coefficient polynomial.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NatPoly {
    pub monomials: Vec<NatMonomial>,
}

impl Monomial {
    pub fn new(coeff: impl Into<BigInt>, exps: Vec<Exp>) -> Self {
        Monomial {
            coeff: coeff.into(),
            exps,
        }
    }

    /// `coeff * prod(vars[i]^exps[i])` over the zipped prefix.
    pub fn eval(&self, vars: &[BigUint]) -> BigInt {
        let term = product_over_prefix(&self.exps, vars);
        &self.coeff * BigInt::from(term)
    }
}

impl NatMonomial {
    pub fn new(coeff: impl Into<BigUint>, exps: Vec<Exp>) -> Self {
        NatMonomial {
            coeff: coeff.into(),
            exps,
        }
    }

    pub fn eval(&self, vars: &[BigUint]) -> BigUint {
        &self.coeff * product_over_prefix(&self.exps, vars)
    }

    /// Coefficient product, pointwise exponent sum.
    pub fn mult(&self, other: &NatMonomial) -> NatMonomial {
        NatMonomial {
            coeff: &self.coeff * &other.coeff,
            exps: map2_add(&self.exps, &other.exps),
        }
    }

    /// Lift to a signed monomial with a positive coefficient.
    pub fn to_positive(&self) -> Monomial {
        Monomial {
            coeff: BigInt::from(self.coeff.clone()),
            exps: self.exps.clone(),
        }
    }

    /// Lift to a signed monomial with a negated coefficient.
    pub fn to_negative(&self) -> Monomial {
        Monomial {
            coeff: -BigInt::from(self.coeff.clone()),
            exps: self.exps.clone(),
        }
    }
}

fn product_over_prefix(exps: &[Exp], vars: &[BigUint]) -> BigUint {
    let mut acc = BigUint::one();
    for (v, &e) in vars.iter().zip(exps) {
        if e == 0 {
            continue;
        }
        if v.is_zero() {
            return BigUint::zero();
        }
        acc *= pow(v, e);
    }
    acc
}

/// Pointwise sum of two exponent vectors, truncated to the shorter one.
pub fn map2_add(e1: &[Exp], e2: &[Exp]) -> Vec<Exp> {
    e1.iter().zip(e2).map(|(a, b)| a + b).collect()
}

impl Poly {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        Poly { monomials }
    }

    /// Build from `(coeff, exps)` pairs with small coefficients.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, Vec<Exp>)>,
        C: Into<BigInt>,
    {
        Poly::new(
            terms
                .into_iter()
                .map(|(c, e)| Monomial::new(c, e))
                .collect(),
        )
    }

    /// The constant polynomial `c` with an empty exponent vector.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::new(vec![Monomial::new(c, Vec::new())])
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn eval(&self, vars: &[BigUint]) -> BigInt {
        self.monomials
            .iter()
            .fold(BigInt::zero(), |acc, m| acc + m.eval(vars))
    }

    /// Positive and negative halves: `(|c|, exps)` for `c > 0` and `c < 0`
    /// respectively. Zero-coefficient monomials go to neither.
    pub fn split(&self) -> (NatPoly, NatPoly) {
        (self.pos_monomials(), self.neg_monomials())
    }

    pub fn pos_monomials(&self) -> NatPoly {
        self.sign_filter(Sign::Plus)
    }

    pub fn neg_monomials(&self) -> NatPoly {
        self.sign_filter(Sign::Minus)
    }

    fn sign_filter(&self, sign: Sign) -> NatPoly {
        NatPoly::new(
            self.monomials
                .iter()
                .filter(|m| m.coeff.sign() == sign)
                .map(|m| NatMonomial {
                    coeff: m.coeff.magnitude().clone(),
                    exps: m.exps.clone(),
                })
                .collect(),
        )
    }

    /// Report every monomial whose exponent vector length differs from `arity`.
    ///
    /// Evaluation itself never rejects a mismatch; this is for callers that
    /// read polynomials from outside and want to catch typos early.
    pub fn check_arity(&self, arity: usize) -> Result<(), PolyError> {
        let bad: Vec<(usize, usize)> = self
            .monomials
            .iter()
            .enumerate()
            .filter(|(_, m)| m.exps.len() != arity)
            .map(|(i, m)| (i, m.exps.len()))
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch {
                arity,
                offending: bad,
            })
        }
    }

    /// Parse the JSON text format `[["coeff",[e1,...,ek]], ...]`.
    ///
    /// Coefficients are decimal strings (integer JSON numbers are also
    /// accepted); exponents must be nonnegative integers.
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let value: Value = serde_json::from_str(text)?;
        let terms = parse_terms(&value)?;
        let monomials = terms
            .into_iter()
            .map(|(c, exps)| {
                let coeff = parse_signed(&c)?;
                Ok(Monomial { coeff, exps })
            })
            .collect::<Result<_, PolyError>>()?;
        Ok(Poly { monomials })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.monomials
                .iter()
                .map(|m| term_json(m.coeff.to_string(), &m.exps))
                .collect(),
        )
    }

    /// Canonical single-line text form, the inverse of [`Poly::parse`].
    pub fn to_text(&self) -> String {
        self.to_json().to_string()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&self.to_json(), serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = <Value as serde::Deserialize>::deserialize(deserializer)?;
        Poly::parse(&value.to_string()).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Poly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Poly::parse(s)
    }
}

impl NatPoly {
    pub fn new(monomials: Vec<NatMonomial>) -> Self {
        NatPoly { monomials }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, Vec<Exp>)>,
        C: Into<BigUint>,
    {
        NatPoly::new(
            terms
                .into_iter()
                .map(|(c, e)| NatMonomial::new(c, e))
                .collect(),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn eval(&self, vars: &[BigUint]) -> BigUint {
        self.monomials
            .iter()
            .fold(BigUint::zero(), |acc, m| acc + m.eval(vars))
    }

    /// Every monomial paired with every monomial of `other`, in
    /// `self`-major order.
    pub fn mult(&self, other: &NatPoly) -> NatPoly {
        NatPoly::new(
            self.monomials
                .iter()
                .flat_map(|m1| other.monomials.iter().map(move |m2| m1.mult(m2)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigUint) -> NatPoly {
        NatPoly::new(
            self.monomials
                .iter()
                .map(|m| NatMonomial {
                    coeff: c * &m.coeff,
                    exps: m.exps.clone(),
                })
                .collect(),
        )
    }

    pub fn square(&self) -> NatPoly {
        self.mult(self)
    }

    /// List concatenation; evaluates to the sum.
    pub fn concat(&self, other: &NatPoly) -> NatPoly {
        let mut monomials = self.monomials.clone();
        monomials.extend(other.monomials.iter().cloned());
        NatPoly::new(monomials)
    }

    /// True when every exponent vector has length `k`.
    pub fn all_len(&self, k: usize) -> bool {
        self.monomials.iter().all(|m| m.exps.len() == k)
    }

    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let value: Value = serde_json::from_str(text)?;
        Self::from_json(&value)
    }

    pub fn from_json(value: &Value) -> Result<Self, PolyError> {
        let terms = parse_terms(value)?;
        let monomials = terms
            .into_iter()
            .map(|(c, exps)| {
                let coeff = parse_signed(&c)?;
                let coeff = coeff
                    .to_biguint()
                    .ok_or_else(|| PolyError::NegativeCoefficient(c.to_string()))?;
                Ok(NatMonomial { coeff, exps })
            })
            .collect::<Result<_, PolyError>>()?;
        Ok(NatPoly { monomials })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.monomials
                .iter()
                .map(|m| term_json(m.coeff.to_string(), &m.exps))
                .collect(),
        )
    }
}

/// Free-function spellings of the NatPoly arithmetic.
pub fn poly_mult(p1: &NatPoly, p2: &NatPoly) -> NatPoly {
    p1.mult(p2)
}

pub fn poly_scale(c: &BigUint, p: &NatPoly) -> NatPoly {
    p.scale(c)
}

pub fn poly_sq(p: &NatPoly) -> NatPoly {
    p.square()
}

fn term_json(coeff: String, exps: &[Exp]) -> Value {
    Value::Array(vec![
        Value::String(coeff),
        Value::Array(exps.iter().map(|&e| Value::from(e)).collect()),
    ])
}

/// Raw coefficient token as it appeared in the input.
enum CoeffToken {
    Text(String),
    Int(String),
}

impl fmt::Display for CoeffToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffToken::Text(s) | CoeffToken::Int(s) => f.write_str(s),
        }
    }
}

fn parse_terms(value: &Value) -> Result<Vec<(CoeffToken, Vec<Exp>)>, PolyError> {
    let items = value
        .as_array()
        .ok_or_else(|| PolyError::Malformed("expected a JSON array of terms".into()))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                PolyError::Malformed(format!("term {i}: expected [coeff, [exps...]]"))
            })?;
            let coeff = match &pair[0] {
                Value::String(s) => CoeffToken::Text(s.clone()),
                Value::Number(n) if n.is_i64() || n.is_u64() => CoeffToken::Int(n.to_string()),
                other => return Err(PolyError::BadCoefficient(other.to_string())),
            };
            let exps = pair[1]
                .as_array()
                .ok_or_else(|| PolyError::Malformed(format!("term {i}: exponents must be a list")))?
                .iter()
                .map(|e| {
                    e.as_u64()
                        .and_then(|e| Exp::try_from(e).ok())
                        .ok_or_else(|| PolyError::BadExponent(e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((coeff, exps))
        })
        .collect()
}

fn parse_signed(token: &CoeffToken) -> Result<BigInt, PolyError> {
    let s = match token {
        CoeffToken::Text(s) | CoeffToken::Int(s) => s.trim(),
    };
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(PolyError::BadCoefficient(s.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| PolyError::BadCoefficient(s.to_string()))
}

/// `x^2 - y^2 - z^2 - 1`, the solvable instance used throughout the demos.
pub fn hyperboloid() -> Poly {
    Poly::from_terms([
        (1, vec![2, 0, 0]),
        (-1, vec![0, 2, 0]),
        (-1, vec![0, 0, 2]),
        (-1, vec![0, 0, 0]),
    ])
}
