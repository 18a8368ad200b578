//! The three-constructor constraint language and its reductions to
//! polynomial equations.
//!
//! A constraint list reduces to a single instance `(ar, pos, neg)` which is
//! satisfied at code `n` when `pos` and `neg` agree on `decode_k(ar, n)`.
//! Conjunction is folded by sum of squares: over the naturals
//! `a^2 + b^2 = 2ab` exactly when `a = b`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::cantor::decode_k;
use crate::error::{H10cError, PolyError};
use crate::poly::{Exp, NatMonomial, NatPoly, Poly};

/// `x = 1`, `x + y = z` or `x * y = z` over variable indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum H10cConstraint {
    One(usize),
    Plus(usize, usize, usize),
    Mult(usize, usize, usize),
}

impl H10cConstraint {
    pub fn max_var(&self) -> usize {
        match *self {
            H10cConstraint::One(x) => x,
            H10cConstraint::Plus(x, y, z) | H10cConstraint::Mult(x, y, z) => x.max(y).max(z),
        }
    }

    /// Truth under `phi`; every index must be below `phi.len()`.
    pub fn holds(&self, phi: &[BigUint]) -> Result<bool, H10cError> {
        let get = |i: usize| {
            phi.get(i).ok_or(H10cError::IndexOutOfRange {
                index: i,
                arity: phi.len(),
            })
        };
        Ok(match *self {
            H10cConstraint::One(x) => *get(x)? == BigUint::from(1u32),
            H10cConstraint::Plus(x, y, z) => get(x)? + get(y)? == *get(z)?,
            H10cConstraint::Mult(x, y, z) => get(x)? * get(y)? == *get(z)?,
        })
    }
}

impl fmt::Display for H10cConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            H10cConstraint::One(x) => write!(f, "one {x}"),
            H10cConstraint::Plus(x, y, z) => write!(f, "plus {x} {y} {z}"),
            H10cConstraint::Mult(x, y, z) => write!(f, "mult {x} {y} {z}"),
        }
    }
}

impl FromStr for H10cConstraint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut words = s.split_whitespace();
        let head = words.next().ok_or("empty constraint")?;
        let args = words
            .map(|w| {
                w.parse::<usize>()
                    .map_err(|_| format!("bad variable index `{w}`"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        match (head, args.as_slice()) {
            ("one", &[x]) => Ok(H10cConstraint::One(x)),
            ("plus", &[x, y, z]) => Ok(H10cConstraint::Plus(x, y, z)),
            ("mult", &[x, y, z]) => Ok(H10cConstraint::Mult(x, y, z)),
            ("one" | "plus" | "mult", _) => Err(format!("wrong number of operands for `{head}`")),
            _ => Err(format!("unknown constraint `{head}`")),
        }
    }
}

/// Parse one constraint per line. Blank lines and `#` comments are skipped.
pub fn parse_constraints(text: &str) -> Result<Vec<H10cConstraint>, H10cError> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then_some((i + 1, line))
        })
        .map(|(line, s)| s.parse().map_err(|msg| H10cError::Parse { line, msg }))
        .collect()
}

pub fn format_constraints(cs: &[H10cConstraint]) -> String {
    cs.iter().map(|c| format!("{c}\n")).collect()
}

/// `h10c_sem`.
pub fn h10c_sem(c: &H10cConstraint, phi: &[BigUint]) -> Result<bool, H10cError> {
    c.holds(phi)
}

/// Largest variable index mentioned, 0 for the empty list.
pub fn list_max_var(cs: &[H10cConstraint]) -> usize {
    cs.iter().map(H10cConstraint::max_var).fold(0, usize::max)
}

/// Conjunction of every constraint under `phi`.
pub fn sat_check(cs: &[H10cConstraint], phi: &[BigUint]) -> Result<bool, H10cError> {
    if !cs.is_empty() {
        let max_var = list_max_var(cs);
        if phi.len() <= max_var {
            return Err(H10cError::ArityTooSmall {
                len: phi.len(),
                max_var,
            });
        }
    }
    for c in cs {
        if !c.holds(phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_index(i: usize, k: usize) -> Result<(), H10cError> {
    if i < k {
        Ok(())
    } else {
        Err(H10cError::IndexOutOfRange { index: i, arity: k })
    }
}

/// Indicator vector of length `k` with a 1 at `i`.
pub fn unit_exp(k: usize, i: usize) -> Result<Vec<Exp>, H10cError> {
    check_index(i, k)?;
    Ok((0..k).map(|p| Exp::from(p == i)).collect())
}

/// Sum of the indicators at `i` and `j` (a 2 at `i` when `i == j`).
pub fn mul_exp(k: usize, i: usize, j: usize) -> Result<Vec<Exp>, H10cError> {
    check_index(i, k)?;
    check_index(j, k)?;
    Ok((0..k)
        .map(|p| Exp::from(p == i) + Exp::from(p == j))
        .collect())
}

/// The constant 1 as a monomial over `k` variables.
pub fn const_one(k: usize) -> NatMonomial {
    NatMonomial::new(1u32, vec![0; k])
}

pub fn var_mono(k: usize, i: usize) -> Result<NatMonomial, H10cError> {
    Ok(NatMonomial::new(1u32, unit_exp(k, i)?))
}

pub fn mul_mono(k: usize, i: usize, j: usize) -> Result<NatMonomial, H10cError> {
    Ok(NatMonomial::new(1u32, mul_exp(k, i, j)?))
}

/// `(pos, neg)` over `k` variables whose values agree exactly when `c` holds.
pub fn encode_c(k: usize, c: &H10cConstraint) -> Result<(NatPoly, NatPoly), H10cError> {
    check_index(c.max_var(), k)?;
    Ok(match *c {
        H10cConstraint::One(x) => (
            NatPoly::new(vec![const_one(k)]),
            NatPoly::new(vec![var_mono(k, x)?]),
        ),
        H10cConstraint::Plus(x, y, z) => (
            NatPoly::new(vec![var_mono(k, x)?, var_mono(k, y)?]),
            NatPoly::new(vec![var_mono(k, z)?]),
        ),
        H10cConstraint::Mult(x, y, z) => (
            NatPoly::new(vec![mul_mono(k, x, y)?]),
            NatPoly::new(vec![var_mono(k, z)?]),
        ),
    })
}

/// Fold `p_i = n_i` for all `i` into one equation
/// `sum(p_i^2 + n_i^2) = sum(2 p_i n_i)`.
///
/// Every exponent vector across all pairs must have the same length.
pub fn conj_encode(pairs: &[(NatPoly, NatPoly)]) -> Result<(NatPoly, NatPoly), H10cError> {
    let mut lengths = pairs
        .iter()
        .flat_map(|(p, n)| p.monomials.iter().chain(&n.monomials))
        .map(|m| m.exps.len());
    if let Some(expected) = lengths.next() {
        if let Some(found) = lengths.find(|&l| l != expected) {
            return Err(H10cError::LengthMismatch { expected, found });
        }
    }
    Ok(conj_encode_unchecked(pairs))
}

/// Right fold matching the recursive definition: the head pair's squares
/// come first, followed by the encoding of the rest.
fn conj_encode_unchecked(pairs: &[(NatPoly, NatPoly)]) -> (NatPoly, NatPoly) {
    let two = BigUint::from(2u32);
    pairs.iter().rev().fold(
        (NatPoly::default(), NatPoly::default()),
        |(rp, rn), (p, n)| {
            let pos = p.square().concat(&n.square()).concat(&rp);
            let neg = p.mult(n).scale(&two).concat(&rn);
            (pos, neg)
        },
    )
}

/// `(ar, pos, neg)`: satisfied at code `n` when both halves agree on
/// `decode_k(ar, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H10cInst {
    pub ar: usize,
    pub pos: NatPoly,
    pub neg: NatPoly,
}

impl H10cInst {
    pub fn satisfied_by(&self, vars: &[BigUint]) -> bool {
        self.pos.eval(vars) == self.neg.eval(vars)
    }

    pub fn satisfied_at(&self, n: &BigUint) -> bool {
        self.satisfied_by(&decode_k(self.ar, n))
    }

    pub fn all_len(&self) -> bool {
        self.pos.all_len(self.ar) && self.neg.all_len(self.ar)
    }

    /// `{"ar":k,"pos":[["c",[e...]],...],"neg":[...]}`
    pub fn to_json(&self) -> Value {
        json!({
            "ar": self.ar,
            "pos": self.pos.to_json(),
            "neg": self.neg.to_json(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self, PolyError> {
        let obj = value
            .as_object()
            .ok_or_else(|| PolyError::Malformed("instance must be a JSON object".into()))?;
        let ar = obj
            .get("ar")
            .and_then(Value::as_u64)
            .and_then(|a| usize::try_from(a).ok())
            .ok_or_else(|| PolyError::Malformed("missing or invalid `ar`".into()))?;
        let half = |key: &str| {
            obj.get(key)
                .ok_or_else(|| PolyError::Malformed(format!("missing `{key}`")))
                .and_then(NatPoly::from_json)
        };
        Ok(H10cInst {
            ar,
            pos: half("pos")?,
            neg: half("neg")?,
        })
    }

    pub fn parse(text: &str) -> Result<Self, PolyError> {
        Self::from_json(&serde_json::from_str(text)?)
    }
}

/// Reduce a constraint list to a single instance over
/// `k = list_max_var(cs) + 1` variables.
pub fn reduce(cs: &[H10cConstraint]) -> H10cInst {
    let k = list_max_var(cs) + 1;
    let pairs: Vec<_> = cs
        .iter()
        .map(|c| encode_c(k, c).expect("every index is at most list_max_var"))
        .collect();
    let (pos, neg) = conj_encode_unchecked(&pairs);
    H10cInst { ar: k, pos, neg }
}

/// Split a signed polynomial into an instance of arity `ar`.
pub fn poly_encode(ar: usize, p: &Poly) -> H10cInst {
    let (pos, neg) = p.split();
    H10cInst { ar, pos, neg }
}

/// `pos - neg` as a signed polynomial.
pub fn h10c_to_poly(inst: &H10cInst) -> Poly {
    Poly::new(
        inst.pos
            .monomials
            .iter()
            .map(NatMonomial::to_positive)
            .chain(inst.neg.monomials.iter().map(NatMonomial::to_negative))
            .collect(),
    )
}
