//! Integer factorization and perfect-power utilities.
//!
//! Deterministic trial division up to 10^6, then Brent-cycle Pollard rho on
//! the remaining cofactor. Everything here is exact; primality testing is
//! Miller-Rabin (deterministic for u64, fixed witness set above that).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::collections::BTreeMap;

const TRIAL_BOUND: u64 = 1_000_000;

static SMALL_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
    let n = TRIAL_BOUND as usize;
    let mut sieve = vec![true; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if sieve[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
    }
    primes
});

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (witness set valid for all n < 2^64).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_big(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // Fixed witnesses; desk-scale inputs (< 2^256) make a false positive
    // astronomically unlikely, and all call sites re-verify by multiplication.
    for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71] {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        let mut composite = true;
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                composite = false;
                break;
            }
        }
        if composite {
            return false;
        }
    }
    true
}

fn rho_u64(n: u64) -> u64 {
    // Brent's cycle variant. n must be odd, composite, not a prime power < 4.
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
            count += 1;
            if count > 100_000_000 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

fn rho_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = BigUint::one();
        let mut count = 0u64;
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
            count += 1;
            if count > 50_000_000 {
                break;
            }
        }
        if !d.is_zero() && d != one && &d != n {
            return d;
        }
        c += 1u32;
    }
}

/// Full factorization of |n| into prime powers. Panics on n = 0.
pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, u32> {
    assert!(!n.is_zero(), "cannot factorize zero");
    let mut out: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut rem = n.clone();
    for &p in SMALL_PRIMES.iter() {
        if rem.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rem {
            break;
        }
        while (&rem % &pb).is_zero() {
            rem /= &pb;
            *out.entry(pb.clone()).or_insert(0) += 1;
        }
    }
    if rem.is_one() {
        return out;
    }
    if rem < BigUint::from(TRIAL_BOUND * TRIAL_BOUND) {
        // remaining cofactor below the trial-division square is prime
        *out.entry(rem).or_insert(0) += 1;
        return out;
    }
    let mut stack = vec![rem];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime_big(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        // perfect powers trip up rho; peel them first
        if let Some((root, _)) = perfect_power_split(&m) {
            let k = exact_log(&m, &root);
            for _ in 0..k {
                stack.push(root.clone());
            }
            continue;
        }
        let d = if let Some(v) = m.to_u64() {
            BigUint::from(rho_u64(v))
        } else {
            rho_big(&m)
        };
        stack.push(&m / &d);
        stack.push(d);
    }
    out
}

fn exact_log(n: &BigUint, base: &BigUint) -> u32 {
    let mut k = 0u32;
    let mut acc = BigUint::one();
    while &acc < n {
        acc *= base;
        k += 1;
    }
    assert_eq!(&acc, n);
    k
}

/// Some (r, k) with n = r^k and k >= 2, if n is a perfect power.
fn perfect_power_split(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits() as u32;
    for k in 2..=bits {
        let r = n.nth_root(k);
        if &r.pow(k) == n {
            return Some((r, k));
        }
        if r < BigUint::from(2u32) {
            break;
        }
    }
    None
}

/// Returns e >= 0 with |n| = e^k, if such e exists. n = 0 gives 0.
pub fn perfect_power_root(n: &BigInt, k: u32) -> Option<BigUint> {
    assert!(k >= 1, "power index must be >= 1");
    let m = n.magnitude();
    if m.is_zero() {
        return Some(BigUint::zero());
    }
    let r = m.nth_root(k);
    if &r.pow(k) == m {
        Some(r)
    } else {
        None
    }
}

/// Decomposes n = C * x^k with x > 0 and C free of k-th powers.
///
/// When `s_primes` is nonempty the decomposition is the same (valuations over
/// all primes); the set is only consulted by callers checking that C is an
/// S-unit. n must be nonzero, k >= 2.
pub fn power_free_part(n: &BigInt, k: u32, _s_primes: &[u64]) -> (BigInt, BigUint) {
    assert!(!n.is_zero(), "zero has no power-free decomposition");
    assert!(k >= 2);
    let fac = factorize(n.magnitude());
    let mut c = BigUint::one();
    let mut x = BigUint::one();
    for (p, e) in fac {
        c *= p.pow(e % k);
        x *= p.pow(e / k);
    }
    let c = BigInt::from(c) * n.signum();
    (c, x)
}

/// v_p(n) together with the cofactor n / p^v. n must be nonzero.
pub fn valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0u32;
    let mut rem = n.clone();
    while (&rem % &pb).is_zero() {
        rem /= &pb;
        v += 1;
    }
    (v, rem)
}

/// Strips every prime of `s_primes` from |n|; n must be nonzero.
pub fn strip_primes(n: &BigInt, s_primes: &[u64]) -> BigUint {
    let mut rem = n.magnitude().clone();
    for &p in s_primes {
        let pb = BigUint::from(p);
        while (&rem % &pb).is_zero() {
            rem /= &pb;
        }
    }
    rem
}

/// All positive divisors of |n| that do not exceed `bound`, ascending.
pub fn divisors_up_to(n: &BigUint, bound: &BigUint) -> Vec<BigUint> {
    let fac = factorize(n);
    let mut out = vec![BigUint::one()];
    for (p, e) in fac {
        let mut next = Vec::new();
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = &acc * &p;
                if &acc > bound {
                    break;
                }
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out.retain(|d| d <= bound);
    out.sort();
    out.dedup();
    out
}
