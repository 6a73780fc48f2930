//! Exact integer helpers: valuations, factorization and squarefree parts.
//!
//! Factorization is trial division up to [`TRIAL_BOUND`], then Pollard rho
//! (Brent variant) guarded by a Miller-Rabin test.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Trial division bound used before falling back to Pollard rho.
pub const TRIAL_BOUND: u64 = 1_000_000;

/// Bases for Miller-Rabin. Deterministic below 3.3 * 10^24, which covers
/// every value the library produces in practice.
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Exponent of the prime `p` in the nonzero integer `n`.
#[must_use]
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Exponent of the prime `p` in a nonzero rational.
#[must_use]
pub fn rat_valuation(q: &BigRational, p: u64) -> i64 {
    i64::from(valuation(q.numer(), p)) - i64::from(valuation(q.denom(), p))
}

/// Exponent of `p` in a machine integer.
#[must_use]
pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    assert!(n != 0, "valuation of zero");
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

#[must_use]
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = u128::from(m);
    let mut acc: u128 = 1;
    let mut b = u128::from(base % m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic primality for machine integers.
#[must_use]
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (u128::from(x) * u128::from(x) % u128::from(n)) as u64;
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m: u64 = 128;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn factor_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(&n);
    let other = &n / &d;
    factor_into(d, out);
    factor_into(other, out);
}

/// Prime factorization of a positive integer, primes ascending.
#[must_use]
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factor of zero");
    let mut n = n.clone();
    let mut primes: Vec<BigUint> = Vec::new();
    let mut p: u64 = 2;
    while p <= TRIAL_BOUND {
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            primes.push(bp.clone());
            n /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        if BigUint::from(p) * BigUint::from(p) > n {
            primes.push(n);
        } else {
            factor_into(n, &mut primes);
        }
    }
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// Signed squarefree integer in the same class mod squares as `n`.
#[must_use]
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "squarefree part of zero");
    let mut acc = BigInt::one();
    for (p, e) in factor(n.magnitude()) {
        if e % 2 == 1 {
            acc *= BigInt::from(p);
        }
    }
    if n.sign() == Sign::Minus {
        -acc
    } else {
        acc
    }
}

/// Prime divisors of a nonzero integer, ascending.
#[must_use]
pub fn prime_divisors(n: &BigInt) -> Vec<BigUint> {
    factor(n.magnitude()).into_iter().map(|(p, _)| p).collect()
}

#[must_use]
pub fn is_prime(n: u64) -> bool {
    is_prime_u64(n)
}

/// Smallest primitive root modulo the odd prime `p` (or 1 for `p = 2`).
#[must_use]
pub fn primitive_root(p: u64) -> u64 {
    assert!(is_prime(p), "{p} is not prime");
    if p == 2 {
        return 1;
    }
    let phi = p - 1;
    let factors: Vec<u64> = factor(&BigUint::from(phi))
        .into_iter()
        .map(|(q, _)| q.to_u64().expect("small"))
        .collect();
    (2..p)
        .find(|&a| factors.iter().all(|&q| mod_pow(a, phi / q, p) != 1))
        .expect("primitive root exists")
}

/// Multiplicative order of `a` modulo `m`, for `gcd(a, m) = 1`.
#[must_use]
pub fn mult_order(a: u64, m: u64) -> u64 {
    assert!(m > 1 && a.gcd(&m) == 1, "order needs a unit modulo m");
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = (u128::from(x) * u128::from(a) % u128::from(m)) as u64;
        k += 1;
    }
    k
}

/// Mobius function of a small positive integer.
#[must_use]
pub fn mobius(n: u64) -> i64 {
    let mut sign = 1;
    for (_, e) in factor(&BigUint::from(n)) {
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Positive divisors of `n`, ascending.
#[must_use]
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut big: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&q| q * q != n).collect();
    out.append(&mut big);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_small_and_large() {
        let n = BigUint::from(2u32 * 2 * 3 * 7 * 7 * 7);
        assert_eq!(
            factor(&n),
            vec![(2u32.into(), 2), (3u32.into(), 1), (7u32.into(), 3)]
        );
        let p1 = BigUint::from(1_000_003u64);
        let p2 = BigUint::from(1_000_033u64);
        let f = factor(&(&p1 * &p2 * &p2));
        assert_eq!(f, vec![(p1, 1), (p2, 2)]);
    }

    #[test]
    fn squarefree_keeps_sign() {
        assert_eq!(squarefree_part(&BigInt::from(-12)), BigInt::from(-3));
        assert_eq!(squarefree_part(&BigInt::from(50)), BigInt::from(2));
        assert_eq!(squarefree_part(&BigInt::from(1)), BigInt::from(1));
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(-24), 2), 3);
        let q = BigRational::new(BigInt::from(9), BigInt::from(50));
        assert_eq!(rat_valuation(&q, 3), 2);
        assert_eq!(rat_valuation(&q, 5), -2);
    }

    #[test]
    fn primes_and_roots() {
        assert!(is_prime(97) && !is_prime(91));
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(mult_order(7, 9), 3);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
    }
}
