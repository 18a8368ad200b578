//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.
//!
//! All checks are exact integer equalities. Runtime limits are wall-clock
//! and apply per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rice_core::cantor::{
    cantor_pair, cantor_unpair_fst, cantor_unpair_snd, decode_k, encode_tuple, isqrt,
};
use rice_core::cubes::{is_skipped, CubesConfig, CubesFrontierState, CubesStatus};
use rice_core::demos::{demo_decidable, demo_rice, RiceClassification};
use rice_core::dio_search::{check_solution, find_sol, planted_poly, SearchOutcome};
use rice_core::h10c::{
    conj_encode, encode_c, h10c_sem, h10c_to_poly, poly_encode, reduce, sat_check, H10cConstraint,
};
use rice_core::poly::{hyperboloid, NatPoly, Poly};
use rice_core::step_model::{
    diverge, halt, induced_separator, s_d, termination_probe, Program, Table,
};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn nats(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_poly<R: Rng>(r: &mut R, max_vars: usize) -> Poly {
    let k = r.gen_range(0..=max_vars);
    let terms = r.gen_range(0..=6);
    Poly::from_terms((0..terms).map(|_| {
        let coeff = r.gen_range(-20i64..=20);
        let exps = (0..k).map(|_| r.gen_range(0u32..=3)).collect();
        (coeff, exps)
    }))
}

fn random_nat_poly<R: Rng>(r: &mut R, k: usize) -> NatPoly {
    let terms = r.gen_range(0..=4);
    NatPoly::from_terms((0..terms).map(|_| {
        let coeff = r.gen_range(0u64..=10);
        let exps = (0..k).map(|_| r.gen_range(0u32..=2)).collect();
        (coeff, exps)
    }))
}

fn random_constraint<R: Rng>(r: &mut R, vars: usize) -> H10cConstraint {
    let mut v = || r.gen_range(0..vars);
    match v() % 3 {
        0 => H10cConstraint::One(v()),
        1 => H10cConstraint::Plus(v(), v(), v()),
        _ => H10cConstraint::Mult(v(), v(), v()),
    }
}

/// A planted instance: arity in 1..=3, unique zero at a random code <= max_code.
fn planted<R: Rng>(r: &mut R, max_code: u64) -> (usize, Poly, u64) {
    let ar = r.gen_range(1..=3);
    let code = r.gen_range(0..=max_code);
    let target = decode_k(ar, &BigUint::from(code));
    (ar, planted_poly(&target), code)
}

// ---------------------------------------------------------------------------

fn cantor_suite() -> Check {
    let mut r = rng(1);
    for _ in 0..10_000 {
        let (a, b) = (r.gen_range(0u64..=10_000), r.gen_range(0u64..=10_000));
        let n = cantor_pair(&a.into(), &b.into());
        ensure!(
            cantor_unpair_fst(&n) == BigUint::from(a) && cantor_unpair_snd(&n) == BigUint::from(b),
            "pair round trip failed at ({a}, {b})"
        );
    }
    for _ in 0..10_000 {
        let n = BigUint::from(r.gen_range(0u64..=1_000_000));
        ensure!(
            cantor_pair(&cantor_unpair_fst(&n), &cantor_unpair_snd(&n)) == n,
            "code round trip failed at {n}"
        );
        let m = &n * 8u32 + 1u32;
        let s = isqrt(&m);
        ensure!(
            &s * &s <= m && m < (&s + 1u32) * (&s + 1u32),
            "isqrt sandwich failed at {m}"
        );
    }
    for _ in 0..1_000 {
        let k = r.gen_range(0..=6);
        let vs: Vec<u64> = (0..k).map(|_| r.gen_range(0..=50)).collect();
        let v = nats(&vs);
        ensure!(
            decode_k(k, &encode_tuple(&v)) == v,
            "tuple round trip failed for {vs:?}"
        );
    }
    for _ in 0..1_000 {
        let ar = r.gen_range(0..=8);
        let n = BigUint::from(r.gen_range(0u64..=1_000_000_000));
        ensure!(
            decode_k(ar, &n).len() == ar,
            "length law failed at ({ar}, {n})"
        );
    }
    Ok(())
}

fn eval_poly_split() -> Check {
    let mut r = rng(2);
    for _ in 0..1_000 {
        let p = random_poly(&mut r, 4);
        let len = r.gen_range(0..=5);
        let vars: Vec<u64> = (0..len).map(|_| r.gen_range(0..=10)).collect();
        let v = nats(&vars);
        let (pos, neg) = p.split();
        let diff = BigInt::from(pos.eval(&v)) - BigInt::from(neg.eval(&v));
        ensure!(p.eval(&v) == diff, "split mismatch for {p} at {vars:?}");
    }
    Ok(())
}

fn find_sol_dynamics() -> Check {
    let mut r = rng(3);
    for _ in 0..100 {
        let (ar, p, m) = planted(&mut r, 200);
        // brute-force least solution, independent of find_sol
        let least = (0..=m + 50).find(|&j| check_solution(ar, &p, &j.into()));
        ensure!(least == Some(m), "planted code {m} not least: {least:?}");
        ensure!(
            find_sol(ar, &p, m) == Some(m),
            "find_sol missed planted code {m}"
        );
        if m > 0 {
            ensure!(
                find_sol(ar, &p, m - 1).is_none(),
                "find_sol found early for code {m}"
            );
        }
        for f in m..=m + 50 {
            let got = find_sol(ar, &p, f);
            ensure!(got == Some(m), "unstable at fuel {f}: {got:?}");
            ensure!(got.is_some_and(|n| n <= f), "bound violated at fuel {f}");
        }
    }
    Ok(())
}

fn witness_pairs() -> Vec<(Program, Program)> {
    let two = || Some(BigUint::from(2u32));
    vec![
        (diverge(), halt()),
        (Program::constant(7u32), diverge()),
        (
            Program::Table(
                Table::new(two())
                    .with(3, 40, None)
                    .with(0, 5, Some(9u32.into())),
            ),
            Program::Table(Table::new(None).with(1, 60, two())),
        ),
        (halt(), Program::constant(1u32)),
    ]
}

fn s_d_lemmas() -> Check {
    let mut r = rng(4);
    let pairs = witness_pairs();
    for i in 0..20 {
        let (ar, d, m) = planted(&mut r, 200);
        let (e0, e1) = &pairs[i % pairs.len()];
        for b in [false, true] {
            let sd = s_d(e0.clone(), e1.clone(), ar, d.clone(), b);
            let wit = if b { e1 } else { e0 };
            for x in 0..=10 {
                for fuel in m..=m + 100 {
                    ensure!(
                        sd.eval(x, fuel) == wit.eval(x, fuel),
                        "s_d(b={b}) differs from witness at x={x}, fuel={fuel} (m={m})"
                    );
                }
            }
        }
    }
    let one = Poly::constant(1);
    for (e0, e1) in &pairs {
        for b in [false, true] {
            let sd = s_d(e0.clone(), e1.clone(), 0, one.clone(), b);
            for fuel in 0..=10_000 {
                ensure!(
                    sd.eval(fuel % 11, fuel).is_none(),
                    "unsolvable s_d returned at fuel {fuel}"
                );
            }
        }
    }
    Ok(())
}

fn rice_delta() -> Check {
    let delta = induced_separator(termination_probe(1000), diverge(), halt());
    ensure!(
        delta(3, &hyperboloid()) == BigInt::from(1),
        "delta != 1 on hyperboloid"
    );
    ensure!(
        delta(0, &Poly::constant(1)) == BigInt::from(0),
        "delta != 0 on constant 1"
    );

    let solvable = demo_rice(&hyperboloid(), 3, 1000, 100_000);
    ensure!(
        solvable.delta == BigInt::from(1)
            && solvable.classification == RiceClassification::SolvableSeparated { least_code: 1 },
        "hyperboloid report: {solvable:?}"
    );
    let unsolvable = demo_rice(&Poly::constant(1), 0, 1000, 100_000);
    ensure!(
        unsolvable.delta == BigInt::from(0)
            && matches!(
                unsolvable.classification,
                RiceClassification::NoSolutionFound { .. }
            ),
        "constant-1 report: {unsolvable:?}"
    );

    // planted beyond the probe: pair(40, 7) = 1135
    let target = nats(&[40, 7]);
    let code = encode_tuple(&target);
    ensure!(
        code == BigUint::from(1135u32),
        "unexpected planted code {code}"
    );
    let far = demo_rice(&planted_poly(&target), 2, 1000, 100_000);
    ensure!(
        far.delta == BigInt::from(0),
        "far-solution delta {}",
        far.delta
    );
    ensure!(
        far.classification == RiceClassification::ProbeBudgetTooSmall { least_code: 1135 },
        "far-solution classification {:?}",
        far.classification
    );
    ensure!(
        far.classification
            .to_string()
            .contains("probe budget too small"),
        "report does not flag the finite budget"
    );
    Ok(())
}

fn h10c_suite() -> Check {
    for a in 0u64..=100 {
        for b in 0u64..=100 {
            let (lhs, rhs) = (a * a + b * b, 2 * a * b);
            ensure!(
                lhs >= rhs && ((lhs == rhs) == (a == b)),
                "sum of squares fails at ({a}, {b})"
            );
        }
    }

    let mut r = rng(6);
    for _ in 0..500 {
        let k = r.gen_range(1..=4);
        let c = random_constraint(&mut r, k);
        let vars: Vec<u64> = (0..k).map(|_| r.gen_range(0..=20)).collect();
        let v = nats(&vars);
        let (pos, neg) = encode_c(k, &c).map_err(|e| e.to_string())?;
        let sem = h10c_sem(&c, &v).map_err(|e| e.to_string())?;
        ensure!(
            (pos.eval(&v) == neg.eval(&v)) == sem,
            "encode_c wrong for {c} at {vars:?}"
        );
    }

    for _ in 0..200 {
        let k = r.gen_range(0..=3);
        let n = r.gen_range(0..=4);
        let pairs: Vec<_> = (0..n)
            .map(|_| {
                // bias half the pairs towards equality so both outcomes occur
                let p = random_nat_poly(&mut r, k);
                let q = if r.gen_bool(0.5) {
                    p.clone()
                } else {
                    random_nat_poly(&mut r, k)
                };
                (p, q)
            })
            .collect();
        let vars: Vec<u64> = (0..k).map(|_| r.gen_range(0..=10)).collect();
        let v = nats(&vars);
        let (pos, neg) = conj_encode(&pairs).map_err(|e| e.to_string())?;
        let all_eq = pairs.iter().all(|(p, q)| p.eval(&v) == q.eval(&v));
        ensure!(
            (pos.eval(&v) == neg.eval(&v)) == all_eq,
            "conj_encode wrong at {vars:?}"
        );
        ensure!(pos.eval(&v) >= neg.eval(&v), "POS < NEG at {vars:?}");
    }

    for _ in 0..100 {
        let n = r.gen_range(0..=3);
        let cs: Vec<_> = (0..n).map(|_| random_constraint(&mut r, 3)).collect();
        let inst = reduce(&cs);
        ensure!(inst.all_len(), "reduce broke uniform exponent length");
        let ar = inst.ar;
        let total = 6u64.pow(ar as u32);
        for idx in 0..total {
            let phi: Vec<u64> = (0..ar).map(|i| (idx / 6u64.pow(i as u32)) % 6).collect();
            let phi = nats(&phi);
            let sat = sat_check(&cs, &phi).map_err(|e| e.to_string())?;
            ensure!(
                sat == inst.satisfied_at(&encode_tuple(&phi)),
                "reduce disagrees with sat_check for {cs:?} at {phi:?}"
            );
        }
    }
    Ok(())
}

fn bridge_suite() -> Check {
    let mut r = rng(7);
    let mut solutions_seen = 0usize;
    for i in 0..200 {
        let (ar, p) = if i % 4 == 0 {
            let (ar, p, _) = planted(&mut r, 500);
            (ar, p)
        } else {
            let p = random_poly(&mut r, 3);
            let ar = p.monomials.first().map_or(0, |m| m.exps.len());
            (ar, p)
        };
        let inst = poly_encode(ar, &p);
        let lifted = h10c_to_poly(&inst);
        for n in 0u64..=500 {
            let code = BigUint::from(n);
            let sol = check_solution(ar, &p, &code);
            solutions_seen += usize::from(sol);
            ensure!(
                inst.satisfied_at(&code) == sol,
                "poly_encode disagrees at n={n} for {p}"
            );
            ensure!(
                check_solution(ar, &lifted, &code) == inst.satisfied_at(&code),
                "h10c_to_poly disagrees at n={n} for {p}"
            );
        }
    }
    ensure!(solutions_seen > 0, "bridge suite never saw a solution");
    Ok(())
}

fn decidable_demo() -> Check {
    let report = demo_decidable(10);
    ensure!(
        report.outcome == SearchOutcome::Found(1),
        "outcome {:?}",
        report.outcome
    );
    ensure!(
        report.decoded == Some(nats(&[1, 0, 0])),
        "decoded {:?}",
        report.decoded
    );
    Ok(())
}

/// Least tuple codes per admissible k <= 20 under the Cantor/zigzag order,
/// computed by an independent script before the library was written.
const LEAST_CODES: [(u64, u64, [i64; 3]); 17] = [
    (0, 0, [0, 0, 0]),
    (1, 5, [0, 0, 1]),
    (2, 17, [1, 0, 1]),
    (3, 107, [1, 1, 1]),
    (6, 40, [-1, -1, 2]),
    (7, 19, [-1, 0, 2]),
    (8, 14, [0, 0, 2]),
    (9, 32, [1, 0, 2]),
    (10, 140, [1, 1, 2]),
    (11, 471, [-2, -2, 3]),
    (12, 198_786, [10, 7, -11]),
    (15, 214, [2, -1, 2]),
    (16, 109, [2, 0, 2]),
    (17, 382, [2, 1, 2]),
    (18, 159, [-2, -1, 3]),
    (19, 84, [-2, 0, 3]),
    (20, 282, [-2, 1, 3]),
];

/// Admissible k <= 20 with a representation in |x|, |y|, |z| <= 50, by
/// exhaustive scan in machine integers.
fn brute_force_representable() -> Vec<u64> {
    let mut hit = [false; 21];
    for x in -50i64..=50 {
        for y in x..=50 {
            for z in y..=50 {
                let s = x * x * x + y * y * y + z * z * z;
                if (0..=20).contains(&s) {
                    hit[s as usize] = true;
                }
            }
        }
    }
    (0..=20).filter(|&k| hit[k as usize]).collect()
}

fn cubes_demo() -> Check {
    let admissible: Vec<u64> = (0..=20u64)
        .filter(|k| !is_skipped(&BigUint::from(*k)))
        .collect();
    let oracle = brute_force_representable();
    ensure!(
        oracle == admissible,
        "oracle representable set {oracle:?} != admissible {admissible:?}"
    );

    let cfg = CubesConfig {
        max_k: 20u32.into(),
        per_k_budget: 1_000_000u32.into(),
    };
    let mut whole = CubesFrontierState::new();
    let status = whole.run(&cfg, None);
    ensure!(
        status == CubesStatus::Complete,
        "frontier stopped: {status:?}"
    );
    ensure!(
        whole.solutions.len() == LEAST_CODES.len(),
        "found {} solutions",
        whole.solutions.len()
    );
    for (sol, (k, code, t)) in whole.solutions.iter().zip(LEAST_CODES) {
        let [x, y, z] = &sol.triple;
        let sum: BigInt = x * x * x + y * y * y + z * z * z;
        ensure!(
            sol.k == BigUint::from(k) && sum == BigInt::from(k),
            "bad solution {sol:?}"
        );
        ensure!(!is_skipped(&sol.k), "searched skipped k {}", sol.k);
        ensure!(
            sol.code == BigUint::from(code),
            "k={k}: code {} != oracle {code}",
            sol.code
        );
        ensure!(
            sol.triple == t.map(BigInt::from),
            "k={k}: triple {:?} != oracle {t:?}",
            sol.triple
        );
        ensure!(
            t.iter().all(|v| v.abs() <= 50),
            "oracle triple outside scan range"
        );
    }

    // split run with a checkpoint in the middle
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("frontier.ckpt");
    let mut first = CubesFrontierState::new();
    let paused = first.run(&cfg, Some(50_000));
    ensure!(
        paused == CubesStatus::Paused,
        "first leg did not pause: {paused:?}"
    );
    first.save(&path).map_err(|e| e.to_string())?;
    let mut resumed = CubesFrontierState::load(&path).map_err(|e| e.to_string())?;
    ensure!(resumed == first, "checkpoint did not reload exactly");
    let status = resumed.run(&cfg, None);
    ensure!(
        status == CubesStatus::Complete,
        "resumed run stopped: {status:?}"
    );
    ensure!(
        resumed == whole,
        "resumed state differs from uninterrupted run"
    );
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "cantor round trips and length law",
            limit: secs(5),
            run: cantor_suite,
        },
        Criterion {
            id: 2,
            name: "signed evaluation equals pos minus neg",
            limit: secs(2),
            run: eval_poly_split,
        },
        Criterion {
            id: 3,
            name: "find_sol least index, stability, bound",
            limit: secs(5),
            run: find_sol_dynamics,
        },
        Criterion {
            id: 4,
            name: "search-then-behave witness equivalences",
            limit: secs(10),
            run: s_d_lemmas,
        },
        Criterion {
            id: 5,
            name: "induced separator with fuel-1000 probe",
            limit: secs(5),
            run: rice_delta,
        },
        Criterion {
            id: 6,
            name: "constraint encodings and reduction",
            limit: secs(30),
            run: h10c_suite,
        },
        Criterion {
            id: 7,
            name: "polynomial/instance bridges",
            limit: secs(30),
            run: bridge_suite,
        },
        Criterion {
            id: 8,
            name: "decidable demo finds (1,0,0)",
            limit: secs(1),
            run: decidable_demo,
        },
        Criterion {
            id: 9,
            name: "three-cubes frontier through k = 20",
            limit: secs(60),
            run: cubes_demo,
        },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(()) if elapsed <= c.limit => Ok(()),
            Ok(()) => Err(format!("took {elapsed:.2?}, limit {:?}", c.limit)),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(()) => println!("PASS  criterion {}: {} ({elapsed:.2?})", c.id, c.name),
            Err(e) => {
                failures += 1;
                println!("FAIL  criterion {}: {} ({elapsed:.2?}): {e}", c.id, c.name);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
