//! The demonstration programs: a provably terminating search, and the
//! two-witness separator driven by a bounded termination probe.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::cantor::decode_k;
use crate::dio_search::{bounded_solvable, SearchOutcome};
use crate::poly::{hyperboloid, Poly};
use crate::step_model::{diverge, halt, termination_probe, SeparatorValues};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecidableReport {
    pub outcome: SearchOutcome,
    /// Decoded triple at the found code.
    pub decoded: Option<Vec<BigUint>>,
    /// Number of codes inspected.
    pub tuples_checked: u64,
}

/// Search `x^2 - y^2 - z^2 - 1` over codes `0..=budget`.
pub fn demo_decidable(budget: u64) -> DecidableReport {
    let p = hyperboloid();
    let outcome = bounded_solvable(3, &p, budget);
    let (decoded, tuples_checked) = match outcome {
        SearchOutcome::Found(n) => (Some(decode_k(3, &BigUint::from(n))), n + 1),
        SearchOutcome::Exhausted(b) => (None, b.saturating_add(1)),
    };
    DecidableReport {
        outcome,
        decoded,
        tuples_checked,
    }
}

/// How the separator value relates to what a bounded search knows about `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RiceClassification {
    /// A solution exists and the probe separated the two programs (δ = 1).
    SolvableSeparated { least_code: u64 },
    /// A solution exists but lies beyond the probe's fuel, so both programs
    /// look divergent to it (δ = 0).
    ProbeBudgetTooSmall { least_code: u64 },
    /// No solution within the status budget and δ = 0, as for an
    /// unsolvable `D`.
    NoSolutionFound { status_fuel: u64 },
    /// Anything else; cannot happen when `status_fuel >= probe_fuel`.
    Inconsistent,
}

impl fmt::Display for RiceClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RiceClassification::SolvableSeparated { least_code } => write!(
                f,
                "solvable (least code {least_code}): delta = 1, separated as expected for solvable D"
            ),
            RiceClassification::ProbeBudgetTooSmall { least_code } => write!(
                f,
                "solvable (least code {least_code}) but probe budget too small: delta = 0; \
                 illustrates why no finite budget suffices"
            ),
            RiceClassification::NoSolutionFound { status_fuel } => write!(
                f,
                "no solution among codes 0..={status_fuel}: delta = 0, as expected for unsolvable D"
            ),
            RiceClassification::Inconsistent => f.write_str("inconsistent probe and search results"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiceReport {
    pub probe_fuel: u64,
    /// Probe verdict on the program that halts once a solution is found.
    pub a_d: BigInt,
    /// Probe verdict on the program that diverges either way.
    pub b_d: BigInt,
    pub delta: BigInt,
    pub status: SearchOutcome,
    pub classification: RiceClassification,
}

/// Run the induced separator with `e0 = diverge`, `e1 = halt` and the
/// fuel-`probe_fuel` termination probe, then classify δ against a
/// separate bounded search over codes `0..=status_fuel`.
pub fn demo_rice(d: &Poly, ar: usize, probe_fuel: u64, status_fuel: u64) -> RiceReport {
    let values =
        SeparatorValues::compute(termination_probe(probe_fuel), &diverge(), &halt(), ar, d);
    let delta = values.delta();
    let status = bounded_solvable(ar, d, status_fuel);
    let classification = match status {
        SearchOutcome::Found(m) if delta.is_one() => {
            RiceClassification::SolvableSeparated { least_code: m }
        }
        SearchOutcome::Found(m) if delta.is_zero() && m > probe_fuel => {
            RiceClassification::ProbeBudgetTooSmall { least_code: m }
        }
        SearchOutcome::Exhausted(b) if delta.is_zero() => {
            RiceClassification::NoSolutionFound { status_fuel: b }
        }
        _ => RiceClassification::Inconsistent,
    };
    RiceReport {
        probe_fuel,
        a_d: values.positive,
        b_d: values.negative,
        delta,
        status,
        classification,
    }
}
