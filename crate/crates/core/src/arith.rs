//! Divisor bookkeeping for cyclic groups.

use num_integer::Integer;

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|i| i * i <= n).all(|i| !n.is_multiple_of(i))
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exponent of `p` in `n`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Pairs `(d, e)` with `d | e | n` and `e / d` prime.
pub fn prime_edges(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for d in divisors(n) {
        for p in prime_factors(n / d) {
            out.push((d, d * p));
        }
    }
    out.sort();
    out
}

/// A chain `d = c_0 | c_1 | ... | c_k = e` with prime steps.
pub fn prime_chain(d: u64, e: u64) -> Vec<u64> {
    assert!(e.is_multiple_of(d), "{d} does not divide {e}");
    let mut chain = vec![d];
    let mut cur = d;
    for p in prime_factors(e / d) {
        while (e / cur).is_multiple_of(p) {
            cur *= p;
            chain.push(cur);
        }
    }
    chain
}

pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128 % m;
    let mut base = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(valuation(24, 2), 3);
        assert_eq!(prime_chain(1, 12), vec![1, 2, 4, 12]);
        assert_eq!(prime_edges(4), vec![(1, 2), (2, 4)]);
    }
}
