//! Small integer helpers: trial-division primality and factorization.

use num_integer::Roots;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(p, m)` with `q = p^m` when `q` is a prime power. `q = 1` is rejected.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, m)] => Some((*p, *m)),
        _ => None,
    }
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

/// Closest prime powers below and above `q` (the lower one absent when `q <= 2`).
pub fn nearest_prime_powers(q: u64) -> (Option<u64>, u64) {
    let below = (2..q).rev().find(|&x| is_prime_power(x));
    let above = (q + 1..)
        .find(|&x| is_prime_power(x))
        .expect("prime powers are unbounded");
    (below, above)
}

pub fn binom2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// Exact square root when `n` is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}
