//! Cantor pairing and the k-ary tuple codec built on top of it.
//!
//! `decode_k(k + 1, n)` decodes the first component of `n` as a k-tuple and
//! appends the second component last, so `encode_tuple` folds from the left:
//! `encode([a, b, c]) = pair(pair(a, b), c)`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Exact floor square root: `r*r <= m < (r+1)*(r+1)`.
pub fn isqrt(m: &BigUint) -> BigUint {
    if let Some(small) = m.to_u128() {
        return BigUint::from(small.isqrt());
    }
    // Newton from above: x_{i+1} = (x_i + m / x_i) / 2 decreases until it
    // reaches the floor root.
    let bits = m.bits();
    let mut x = BigUint::one() << bits.div_ceil(2);
    loop {
        let y = (&x + m / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `(a + b)(a + b + 1) / 2 + b`.
pub fn cantor_pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    let tri = (&s * (&s + 1u32)) >> 1u32;
    tri + b
}

/// Index of the diagonal containing `n`: `(isqrt(8n + 1) - 1) / 2`.
pub fn cantor_w(n: &BigUint) -> BigUint {
    let disc = (n << 3u32) + 1u32;
    (isqrt(&disc) - 1u32) >> 1u32
}

fn triangle(w: &BigUint) -> BigUint {
    (w * (w + 1u32)) >> 1u32
}

/// Both components at once; `(fst, snd)` with `pair(fst, snd) = n`.
pub fn cantor_unpair(n: &BigUint) -> (BigUint, BigUint) {
    let w = cantor_w(n);
    let snd = n - triangle(&w);
    let fst = &w - &snd;
    (fst, snd)
}

pub fn cantor_unpair_fst(n: &BigUint) -> BigUint {
    cantor_unpair(n).0
}

pub fn cantor_unpair_snd(n: &BigUint) -> BigUint {
    cantor_unpair(n).1
}

/// Decode `n` into a tuple of exactly `ar` naturals.
pub fn decode_k(ar: usize, n: &BigUint) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); ar];
    if ar == 0 {
        return out;
    }
    let mut code = n.clone();
    // fill from the back: each unpair peels off the last component
    for slot in (1..ar).rev() {
        let (fst, snd) = cantor_unpair(&code);
        out[slot] = snd;
        code = fst;
    }
    out[0] = code;
    out
}

/// Inverse of [`decode_k`] at arity `values.len()`. The empty tuple encodes to 0.
pub fn encode_tuple(values: &[BigUint]) -> BigUint {
    match values.split_first() {
        None => BigUint::zero(),
        Some((first, rest)) => rest
            .iter()
            .fold(first.clone(), |acc, v| cantor_pair(&acc, v)),
    }
}

/// Convenience for small inputs.
pub fn encode_tuple_u64(values: &[u64]) -> BigUint {
    let values: Vec<BigUint> = values.iter().map(|&v| BigUint::from(v)).collect();
    encode_tuple(&values)
}

/// Map a natural onto the integers: 0, -1, 1, -2, 2, ...
pub fn zigzag(n: &BigUint) -> num_bigint::BigInt {
    let (half, odd) = n.div_rem(&BigUint::from(2u32));
    if odd.is_zero() {
        half.into()
    } else {
        -num_bigint::BigInt::from(half + 1u32)
    }
}

/// Inverse of [`zigzag`].
pub fn unzigzag(z: &num_bigint::BigInt) -> BigUint {
    use num_bigint::Sign;
    match z.sign() {
        Sign::Minus => (z.magnitude() << 1u32) - 1u32,
        _ => z.magnitude() << 1u32,
    }
}
