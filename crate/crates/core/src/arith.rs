//! Small integer helpers shared by the field and lattice code.

use alloc::vec::Vec;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = r^e` with `r` prime, or returns `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut r = 2;
    while r * r <= q && !q.is_multiple_of(r) {
        r += 1;
    }
    if !q.is_multiple_of(r) {
        r = q;
    }
    let mut e = 0;
    let mut rest = q;
    while rest.is_multiple_of(r) {
        rest /= r;
        e += 1;
    }
    (rest == 1).then_some((r, e))
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn checked_pow(base: u64, exp: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// `a mod m` in `[0, m)` for signed `a`.
pub fn rem_i128(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}
