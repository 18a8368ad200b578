//! Sequential frontier search for sums of three cubes.
//!
//! For `k = 0, 1, 2, ...` (skipping `k ≡ 4, 5 (mod 9)`) the search walks
//! tuple codes `0, 1, 2, ...`, decodes each into three naturals, maps them
//! to integers by [`zigzag`], and stops at the first `(x, y, z)` with
//! `x^3 + y^3 + z^3 = k`. It then moves on to the next admissible `k`.
//! When the per-`k` budget runs out the search stalls at that `k`.
//!
//! All counters are unbounded. The whole search state is three numbers plus
//! the list of solutions found, so it checkpoints to a small text file and
//! resumes exactly where it stopped.

use std::fs::{self, File};
use std::io::Write;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::cantor::{decode_k, zigzag};
use crate::error::CheckpointError;

pub const CHECKPOINT_MAGIC: &str = "three-cubes-frontier";
pub const CHECKPOINT_VERSION: u32 = 1;
/// Enumeration order recorded in the checkpoint header.
pub const ENUMERATION_ORDER: &str = "cantor3-zigzag";

/// `k mod 9 ∈ {4, 5}`; such `k` are never sums of three cubes.
pub fn is_skipped(k: &BigUint) -> bool {
    let r = (k % 9u32).to_u32().unwrap_or(0);
    r == 4 || r == 5
}

/// Smallest admissible value `>= k`.
pub fn next_admissible(mut k: BigUint) -> BigUint {
    while is_skipped(&k) {
        k += 1u32;
    }
    k
}

/// Signed triple at tuple code `code`.
pub fn triple_at(code: &BigUint) -> [BigInt; 3] {
    let t = decode_k(3, code);
    [zigzag(&t[0]), zigzag(&t[1]), zigzag(&t[2])]
}

pub fn cube_sum(t: &[BigInt; 3]) -> BigInt {
    t.iter().map(|v| v * v * v).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeSolution {
    pub k: BigUint,
    pub code: BigUint,
    pub triple: [BigInt; 3],
}

impl CubeSolution {
    pub fn verify(&self) -> bool {
        !is_skipped(&self.k) && cube_sum(&self.triple) == BigInt::from(self.k.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubesConfig {
    /// Search stops once the frontier passes this value.
    pub max_k: BigUint,
    /// Codes `0..=per_k_budget` are tried for each `k`.
    pub per_k_budget: BigUint,
}

/// Why a call to [`CubesFrontierState::run`] returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubesStatus {
    /// Every admissible `k <= max_k` has a solution.
    Complete,
    /// The budget ran out at this `k`.
    Stalled { k: BigUint },
    /// The step limit was reached; call `run` again to continue.
    Paused,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubesFrontierState {
    /// The `k` currently being searched.
    pub k: BigUint,
    /// Next tuple code to try for `k`.
    pub counter: BigUint,
    pub solutions: Vec<CubeSolution>,
}

impl Default for CubesFrontierState {
    fn default() -> Self {
        Self::new()
    }
}

impl CubesFrontierState {
    pub fn new() -> Self {
        CubesFrontierState {
            k: BigUint::zero(),
            counter: BigUint::zero(),
            solutions: Vec::new(),
        }
    }

    /// Check at most `max_steps` codes (unlimited when `None`).
    ///
    /// The state alone determines what happens next, so splitting a run into
    /// several calls yields the same final state as one long call.
    pub fn run(&mut self, cfg: &CubesConfig, max_steps: Option<u64>) -> CubesStatus {
        self.run_with(cfg, max_steps, |_| {})
    }

    /// As [`run`](Self::run), calling `on_solution` for each new solution.
    pub fn run_with<F>(
        &mut self,
        cfg: &CubesConfig,
        max_steps: Option<u64>,
        mut on_solution: F,
    ) -> CubesStatus
    where
        F: FnMut(&CubeSolution),
    {
        let mut steps = 0u64;
        loop {
            if self.k > cfg.max_k {
                return CubesStatus::Complete;
            }
            if self.counter > cfg.per_k_budget {
                return CubesStatus::Stalled { k: self.k.clone() };
            }
            if max_steps.is_some_and(|m| steps >= m) {
                return CubesStatus::Paused;
            }
            steps += 1;
            let triple = triple_at(&self.counter);
            if cube_sum(&triple) == BigInt::from(self.k.clone()) {
                let sol = CubeSolution {
                    k: self.k.clone(),
                    code: self.counter.clone(),
                    triple,
                };
                on_solution(&sol);
                self.solutions.push(sol);
                self.k = next_admissible(&self.k + 1u32);
                self.counter = BigUint::zero();
            } else {
                self.counter += 1u32;
            }
        }
    }

    pub fn to_checkpoint(&self) -> String {
        let mut out = format!(
            "{CHECKPOINT_MAGIC} v{CHECKPOINT_VERSION}\norder {ENUMERATION_ORDER}\nk {}\ncounter {}\nsolutions {}\n",
            self.k,
            self.counter,
            self.solutions.len()
        );
        for s in &self.solutions {
            let [x, y, z] = &s.triple;
            out.push_str(&format!("{} {} {} {} {}\n", s.k, s.code, x, y, z));
        }
        out.push_str("end\n");
        out
    }

    pub fn from_checkpoint(text: &str) -> Result<Self, CheckpointError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let mut next = |what: &str| {
            lines.next().ok_or_else(|| CheckpointError::Corrupt {
                line: 0,
                msg: format!("truncated before {what}"),
            })
        };
        let corrupt = |line: usize, msg: String| CheckpointError::Corrupt { line, msg };

        let (_, header) = next("header")?;
        let expected = format!("{CHECKPOINT_MAGIC} v{CHECKPOINT_VERSION}");
        if header != expected {
            return Err(CheckpointError::Incompatible(format!(
                "header `{header}`, expected `{expected}`"
            )));
        }
        let (_, order) = next("order")?;
        if order != format!("order {ENUMERATION_ORDER}") {
            return Err(CheckpointError::Incompatible(format!(
                "enumeration `{order}`"
            )));
        }

        let field = |(line, text): (usize, &str), key: &str| -> Result<BigUint, CheckpointError> {
            let value = text
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix(' '))
                .ok_or_else(|| corrupt(line, format!("expected `{key} <n>`")))?;
            value
                .parse()
                .map_err(|_| corrupt(line, format!("bad number `{value}`")))
        };
        let k = field(next("k")?, "k")?;
        let counter = field(next("counter")?, "counter")?;
        let count_line = next("solutions")?;
        let count = field(count_line, "solutions")?
            .to_usize()
            .ok_or_else(|| corrupt(count_line.0, "solution count too large".into()))?;

        let mut solutions = Vec::with_capacity(count.min(1 << 16));
        for _ in 0..count {
            let (line, text) = next("solution")?;
            let parts: Vec<&str> = text.split_whitespace().collect();
            if parts.len() != 5 {
                return Err(corrupt(line, "expected `k code x y z`".into()));
            }
            let nat = |s: &str| {
                s.parse::<BigUint>()
                    .map_err(|_| corrupt(line, format!("bad natural `{s}`")))
            };
            let int = |s: &str| {
                s.parse::<BigInt>()
                    .map_err(|_| corrupt(line, format!("bad integer `{s}`")))
            };
            let sol = CubeSolution {
                k: nat(parts[0])?,
                code: nat(parts[1])?,
                triple: [int(parts[2])?, int(parts[3])?, int(parts[4])?],
            };
            if !sol.verify() || triple_at(&sol.code) != sol.triple {
                return Err(corrupt(line, "solution does not check out".into()));
            }
            solutions.push(sol);
        }
        let (line, end) = next("end")?;
        if end != "end" {
            return Err(corrupt(line, "expected `end`".into()));
        }
        if is_skipped(&k) {
            return Err(corrupt(0, format!("frontier k = {k} is never searched")));
        }
        if solutions.last().is_some_and(|s| s.k >= k) {
            return Err(corrupt(0, "solutions run past the frontier".into()));
        }
        Ok(CubesFrontierState {
            k,
            counter,
            solutions,
        })
    }

    /// Write the checkpoint atomically: temp file, fsync, rename.
    pub fn save(&self, path: &Path) -> Result<(), CheckpointError> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = File::create(&tmp)?;
            f.write_all(self.to_checkpoint().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            // directory fsync is not supported everywhere
            if let Ok(d) = File::open(dir) {
                let _ = d.sync_all();
            }
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, CheckpointError> {
        Self::from_checkpoint(&fs::read_to_string(path)?)
    }
}
