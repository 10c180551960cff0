//! Small integer helpers shared across modules.

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut f = 2u64;
    while f * f <= x {
        if x.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub(crate) fn factorize(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f * f <= x {
        if x.is_multiple_of(f) {
            let mut e = 0;
            while x.is_multiple_of(f) {
                x /= f;
                e += 1;
            }
            out.push((f, e));
        }
        f += 1;
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

/// Sorted list of all divisors of `x`.
pub(crate) fn divisors(x: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (prime, exp) in factorize(x) {
        let snapshot = out.clone();
        let mut power = 1u64;
        for _ in 0..exp {
            power *= prime;
            out.extend(snapshot.iter().map(|d| d * power));
        }
    }
    out.sort_unstable();
    out
}

/// Binomial coefficient C(n, k), saturating at `cap` to keep budget checks
/// overflow-free.
pub(crate) fn binomial_capped(n: u64, k: u64, cap: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 {
            return cap.saturating_add(1);
        }
    }
    acc as u64
}
