//! Fuel-bounded search for zeros of a polynomial over Cantor-coded tuples.
//!
//! Fuel counts candidate codes: `find_sol(ar, p, fuel)` inspects codes
//! `0..=fuel` in ascending order and reports the least one whose decoded
//! tuple is a zero of `p`. Only bounded verdicts are ever produced.

use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::cantor::decode_k;
use crate::poly::{Monomial, Poly};

/// Result of a bounded search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Least solution code within the budget.
    Found(u64),
    /// No solution among codes `0..=fuel`.
    Exhausted(u64),
}

impl SearchOutcome {
    pub fn found(self) -> Option<u64> {
        match self {
            SearchOutcome::Found(n) => Some(n),
            SearchOutcome::Exhausted(_) => None,
        }
    }
}

/// `eval(p, decode_k(ar, n)) == 0`.
pub fn check_solution(ar: usize, p: &Poly, n: &BigUint) -> bool {
    p.eval(&decode_k(ar, n)).is_zero()
}

fn check_code(ar: usize, p: &Poly, n: u64) -> bool {
    check_solution(ar, p, &BigUint::from(n))
}

/// Least `n <= fuel` with `check_solution(ar, p, n)`, if any.
pub fn find_sol(ar: usize, p: &Poly, fuel: u64) -> Option<u64> {
    (0..=fuel).find(|&n| check_code(ar, p, n))
}

pub fn bounded_solvable(ar: usize, p: &Poly, bound: u64) -> SearchOutcome {
    match find_sol(ar, p, bound) {
        Some(n) => SearchOutcome::Found(n),
        None => SearchOutcome::Exhausted(bound),
    }
}

/// Memoised [`find_sol`] for a fixed `(ar, p)`.
///
/// Remembers how far the scan has progressed, so repeated queries at growing
/// fuel cost only the new codes. Answers are identical to [`find_sol`].
#[derive(Debug, Default)]
pub struct SearchMemo {
    state: Mutex<MemoState>,
}

#[derive(Debug, Default, Clone, Copy)]
struct MemoState {
    /// Codes below this have been checked and none is a solution
    /// (unless `found` is set).
    next: u64,
    found: Option<u64>,
}

impl SearchMemo {
    pub fn new() -> Self {
        SearchMemo::default()
    }

    pub fn find_sol(&self, ar: usize, p: &Poly, fuel: u64) -> Option<u64> {
        let mut st = self.state.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(m) = st.found {
            return (m <= fuel).then_some(m);
        }
        while st.next <= fuel {
            let n = st.next;
            if check_code(ar, p, n) {
                st.found = Some(n);
                return Some(n);
            }
            match n.checked_add(1) {
                Some(next) => st.next = next,
                None => break,
            }
        }
        None
    }
}

impl Clone for SearchMemo {
    fn clone(&self) -> Self {
        let st = *self.state.lock().unwrap_or_else(|e| e.into_inner());
        SearchMemo {
            state: Mutex::new(st),
        }
    }
}

/// `sum_i (x_i - t_i)^2`: its only zero is `target`, so over arity
/// `target.len()` the least solution code is `encode_tuple(target)`.
pub fn planted_poly(target: &[BigUint]) -> Poly {
    let k = target.len();
    let mut monomials = Vec::with_capacity(3 * k);
    let mut constant = BigInt::zero();
    for (i, t) in target.iter().enumerate() {
        let mut sq = vec![0; k];
        sq[i] = 2;
        monomials.push(Monomial::new(1, sq));
        if !t.is_zero() {
            let mut lin = vec![0; k];
            lin[i] = 1;
            monomials.push(Monomial::new(-(BigInt::from(t.clone()) * 2u32), lin));
            constant += BigInt::from(t * t);
        }
    }
    if !constant.is_zero() {
        monomials.push(Monomial::new(constant, vec![0; k]));
    }
    Poly::new(monomials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::encode_tuple_u64;
    use crate::poly::hyperboloid;

    #[test]
    fn check_solution_examples() {
        let p = hyperboloid();
        assert!(check_solution(3, &p, &BigUint::from(1u32)));
        assert!(!check_solution(3, &p, &BigUint::zero()));
        assert!(check_solution(0, &Poly::default(), &BigUint::zero()));
    }

    #[test]
    fn find_sol_examples() {
        let p = hyperboloid();
        assert_eq!(find_sol(3, &p, 0), None);
        assert_eq!(find_sol(3, &p, 1), Some(1));
        assert_eq!(find_sol(3, &p, 500), Some(1));
        assert_eq!(find_sol(0, &Poly::constant(1), 10_000), None);
    }

    #[test]
    fn bounded_solvable_examples() {
        assert_eq!(
            bounded_solvable(3, &hyperboloid(), 10),
            SearchOutcome::Found(1)
        );
        let x = Poly::from_terms([(1, vec![1])]);
        assert_eq!(bounded_solvable(1, &x, 0), SearchOutcome::Found(0));
        assert_eq!(
            bounded_solvable(0, &Poly::constant(1), 1_000_000),
            SearchOutcome::Exhausted(1_000_000)
        );
    }

    #[test]
    fn memo_matches_plain_search() {
        let p = planted_poly(&[BigUint::from(3u32), BigUint::from(2u32)]);
        // pair(3, 2) = 5*6/2 + 2
        assert_eq!(encode_tuple_u64(&[3, 2]), BigUint::from(17u32));
        let memo = SearchMemo::new();
        for fuel in [0, 5, 3, 16, 17, 2, 40, 17, 1] {
            assert_eq!(
                memo.find_sol(2, &p, fuel),
                find_sol(2, &p, fuel),
                "fuel {fuel}"
            );
        }
        let memo = SearchMemo::new();
        for fuel in (0..30).rev() {
            assert_eq!(memo.find_sol(2, &p, fuel), find_sol(2, &p, fuel));
        }
    }

    #[test]
    fn planted_poly_has_unique_zero() {
        let target = [4u64, 0, 7];
        let t: Vec<BigUint> = target.iter().map(|&v| BigUint::from(v)).collect();
        let p = planted_poly(&t);
        let code = encode_tuple_u64(&target);
        let code = u64::try_from(code).unwrap();
        assert_eq!(find_sol(3, &p, code + 10), Some(code));
        assert_eq!(find_sol(3, &p, code - 1), None);
    }
}
