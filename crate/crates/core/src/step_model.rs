//! Step-indexed programs and the two-witness search construction.
//!
//! A program maps `(input, fuel)` to an optional output. Divergence is the
//! program that returns `None` at every fuel. Programs are closed values
//! built from a handful of constructors so they can be compared, serialized
//! and replayed.
//!
//! Only bounded probes are offered here: [`obs_agree`] checks agreement over
//! a finite fuel window and [`terminates_check`] looks for a stable return
//! below a fuel bound. Neither claims anything about unbounded behaviour.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dio_search::{find_sol, SearchMemo};
use crate::error::ModelError;
use crate::poly::Poly;

/// A step-indexed program.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Program {
    /// `None` everywhere.
    Diverge,
    /// `Some(0)` everywhere.
    Halt,
    /// `Some(value)` everywhere.
    Const {
        #[serde(with = "decimal")]
        value: BigUint,
    },
    /// Finite `(input, fuel)` lookup with a default for everything else.
    /// Need not be monotone in fuel.
    Table(Table),
    /// The search-then-behave construction; see [`s_d`].
    SearchThen(Arc<SearchThen>),
}

impl Program {
    pub fn constant(value: impl Into<BigUint>) -> Self {
        Program::Const {
            value: value.into(),
        }
    }

    pub fn eval(&self, input: u64, fuel: u64) -> Option<BigUint> {
        match self {
            Program::Diverge => None,
            Program::Halt => Some(BigUint::zero()),
            Program::Const { value } => Some(value.clone()),
            Program::Table(t) => t.eval(input, fuel),
            Program::SearchThen(sd) => sd.eval(input, fuel),
        }
    }

    /// Same answers as [`Program::eval`] but every search node rescans from
    /// code 0 instead of consulting its memo.
    pub fn eval_uncached(&self, input: u64, fuel: u64) -> Option<BigUint> {
        match self {
            Program::SearchThen(sd) => match find_sol(sd.arity, &sd.poly, fuel) {
                Some(_) => sd.witness().eval_uncached(input, fuel),
                None => None,
            },
            other => other.eval(input, fuel),
        }
    }
}

/// Lookup-table program.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "TableRepr", into = "TableRepr")]
pub struct Table {
    entries: BTreeMap<(u64, u64), Option<BigUint>>,
    default: Option<BigUint>,
}

impl Table {
    pub fn new(default: Option<BigUint>) -> Self {
        Table {
            entries: BTreeMap::new(),
            default,
        }
    }

    pub fn with(mut self, input: u64, fuel: u64, output: Option<BigUint>) -> Self {
        self.entries.insert((input, fuel), output);
        self
    }

    pub fn eval(&self, input: u64, fuel: u64) -> Option<BigUint> {
        match self.entries.get(&(input, fuel)) {
            Some(out) => out.clone(),
            None => self.default.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    entries: Vec<TableEntry>,
    #[serde(with = "decimal_opt")]
    default: Option<BigUint>,
}

#[derive(Serialize, Deserialize)]
struct TableEntry {
    input: u64,
    fuel: u64,
    #[serde(with = "decimal_opt")]
    output: Option<BigUint>,
}

impl From<TableRepr> for Table {
    fn from(r: TableRepr) -> Self {
        Table {
            entries: r
                .entries
                .into_iter()
                .map(|e| ((e.input, e.fuel), e.output))
                .collect(),
            default: r.default,
        }
    }
}

impl From<Table> for TableRepr {
    fn from(t: Table) -> Self {
        TableRepr {
            entries: t
                .entries
                .into_iter()
                .map(|((input, fuel), output)| TableEntry {
                    input,
                    fuel,
                    output,
                })
                .collect(),
            default: t.default,
        }
    }
}

/// Search for a zero of `poly` within the current fuel; once one is found,
/// behave exactly like the selected witness at the same input and fuel.
#[derive(Debug, Serialize, Deserialize)]
pub struct SearchThen {
    pub negative: Program,
    pub positive: Program,
    pub arity: usize,
    pub poly: Poly,
    /// `true` selects `positive`.
    pub branch: bool,
    #[serde(skip)]
    memo: SearchMemo,
}

impl SearchThen {
    pub fn witness(&self) -> &Program {
        if self.branch {
            &self.positive
        } else {
            &self.negative
        }
    }

    fn eval(&self, input: u64, fuel: u64) -> Option<BigUint> {
        // the memo only short-cuts repeated scans; answers match find_sol
        self.memo.find_sol(self.arity, &self.poly, fuel)?;
        self.witness().eval(input, fuel)
    }
}

impl PartialEq for SearchThen {
    fn eq(&self, other: &Self) -> bool {
        self.negative == other.negative
            && self.positive == other.positive
            && self.arity == other.arity
            && self.poly == other.poly
            && self.branch == other.branch
    }
}

impl Eq for SearchThen {}

pub fn diverge() -> Program {
    Program::Diverge
}

pub fn halt() -> Program {
    Program::Halt
}

/// The two-witness program: `None` while `find_sol(ar, d, fuel)` is `None`,
/// otherwise `e1(x, fuel)` when `b` holds and `e0(x, fuel)` when not.
///
/// Fuel is passed through unchanged and nothing is assumed about `e0`/`e1`.
pub fn s_d(e0: Program, e1: Program, ar: usize, d: Poly, b: bool) -> Program {
    Program::SearchThen(Arc::new(SearchThen {
        negative: e0,
        positive: e1,
        arity: ar,
        poly: d,
        branch: b,
        memo: SearchMemo::new(),
    }))
}

/// Agreement of `p1` and `p2` at input `x` for every fuel in `[n, k]`.
pub fn obs_agree(p1: &Program, p2: &Program, x: u64, n: u64, k: u64) -> Result<bool, ModelError> {
    if n > k {
        return Err(ModelError::ThresholdAfterHorizon {
            threshold: n,
            horizon: k,
        });
    }
    Ok((n..=k).all(|fuel| p1.eval(x, fuel) == p2.eval(x, fuel)))
}

/// Finite certificate that two programs agreed at `input` on `[threshold, horizon]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    pub input: u64,
    pub threshold: u64,
    pub horizon: u64,
}

impl EquivalenceWitness {
    /// `Some` exactly when [`obs_agree`] holds.
    pub fn certify(
        p1: &Program,
        p2: &Program,
        input: u64,
        threshold: u64,
        horizon: u64,
    ) -> Result<Option<Self>, ModelError> {
        Ok(
            obs_agree(p1, p2, input, threshold, horizon)?.then_some(EquivalenceWitness {
                input,
                threshold,
                horizon,
            }),
        )
    }

    /// Re-run the check this witness records.
    pub fn recheck(&self, p1: &Program, p2: &Program) -> bool {
        obs_agree(p1, p2, self.input, self.threshold, self.horizon).unwrap_or(false)
    }

    /// Chain with a witness for `(p2, p3)` at the same input: the combined
    /// window starts at the larger threshold and ends at the smaller horizon.
    pub fn compose(&self, other: &Self) -> Option<Self> {
        if self.input != other.input {
            return None;
        }
        let threshold = self.threshold.max(other.threshold);
        let horizon = self.horizon.min(other.horizon);
        (threshold <= horizon).then_some(EquivalenceWitness {
            input: self.input,
            threshold,
            horizon,
        })
    }
}

/// A stable return found by [`terminates_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Termination {
    pub fuel: u64,
    pub value: BigUint,
}

/// Least `fuel <= bound` such that `p(0, f) = Some(v)` for every `f` in
/// `[fuel, bound]`, with the common value `v`.
pub fn terminates_check(p: &Program, bound: u64) -> Option<Termination> {
    let value = p.eval(0, bound)?;
    let mut fuel = bound;
    while fuel > 0 && p.eval(0, fuel - 1).as_ref() == Some(&value) {
        fuel -= 1;
    }
    Some(Termination { fuel, value })
}

/// The bounded termination probe: 1 when [`terminates_check`] succeeds
/// within `fuel`, else 0.
pub fn termination_probe(fuel: u64) -> impl Fn(&Program) -> BigInt {
    move |p| {
        if terminates_check(p, fuel).is_some() {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }
}

/// `(ar, p) -> f(ar, p) == 1`.
pub fn z_to_bool_separator<F>(f: F) -> impl Fn(usize, &Poly) -> bool
where
    F: Fn(usize, &Poly) -> BigInt,
{
    move |ar, p| f(ar, p).is_one()
}

/// `(ar, D) -> dec(s_d(e0, e1, ar, D, true)) - dec(s_d(e0, e1, ar, D, false))`.
pub fn induced_separator<F>(dec: F, e0: Program, e1: Program) -> impl Fn(usize, &Poly) -> BigInt
where
    F: Fn(&Program) -> BigInt,
{
    move |ar, d| {
        let a = dec(&s_d(e0.clone(), e1.clone(), ar, d.clone(), true));
        let b = dec(&s_d(e0.clone(), e1.clone(), ar, d.clone(), false));
        a - b
    }
}

/// The two halves of the induced separator, reported separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorValues {
    pub positive: BigInt,
    pub negative: BigInt,
}

impl SeparatorValues {
    pub fn compute<F>(dec: F, e0: &Program, e1: &Program, ar: usize, d: &Poly) -> Self
    where
        F: Fn(&Program) -> BigInt,
    {
        SeparatorValues {
            positive: dec(&s_d(e0.clone(), e1.clone(), ar, d.clone(), true)),
            negative: dec(&s_d(e0.clone(), e1.clone(), ar, d.clone(), false)),
        }
    }

    pub fn delta(&self) -> BigInt {
        &self.positive - &self.negative
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod decimal_opt {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}
