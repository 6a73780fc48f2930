//! Univariate polynomials over the rationals, with factorization over Q.
//!
//! Factoring follows Zassenhaus: reduce modulo a small good prime, split with
//! distinct-degree and Cantor-Zassenhaus equal-degree factorization, Hensel
//! lift past the Mignotte bound and recombine.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::is_prime_u64;
use crate::linalg::Rat;

/// Dense polynomial with rational coefficients, lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl QPoly {
    #[must_use]
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    #[must_use]
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    #[must_use]
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    #[must_use]
    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    #[must_use]
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    #[must_use]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[must_use]
    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    #[must_use]
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::default(),
            Some(l) => {
                let inv = l.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                    a + b
                })
                .collect(),
        )
    }

    #[must_use]
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    #[must_use]
    pub fn scale(&self, s: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division: `(q, r)` with `self = q * d + r`.
    #[must_use]
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::default(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Monic greatest common divisor.
    #[must_use]
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    #[must_use]
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Monic squarefree part `f / gcd(f, f')`.
    #[must_use]
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    #[must_use]
    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Primitive integer polynomial with positive leading coefficient and
    /// the same roots.
    #[must_use]
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
        let mut out = zpoly::primitive(&ints);
        if out.last().is_some_and(Signed::is_negative) {
            out.iter_mut().for_each(|c| *c = -&*c);
        }
        out
    }

    #[must_use]
    pub fn from_integer(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    /// Distinct monic irreducible factors over Q, sorted by degree then
    /// coefficients.
    #[must_use]
    pub fn irreducible_factors(&self) -> Vec<Self> {
        assert!(!self.is_zero(), "factoring the zero polynomial");
        let sf = self.squarefree();
        if sf.degree() == Some(0) {
            return Vec::new();
        }
        let mut out: Vec<Self> = zassenhaus(&sf.primitive_integer())
            .iter()
            .map(|f| Self::from_integer(f).monic())
            .collect();
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs.cmp(&b.coeffs)));
        out
    }

    /// Factorization into monic irreducibles with multiplicities.
    #[must_use]
    pub fn factor(&self) -> Vec<(Self, u32)> {
        self.irreducible_factors()
            .into_iter()
            .map(|g| {
                let mut rest = self.clone();
                let mut m = 0;
                loop {
                    let (q, r) = rest.div_rem(&g);
                    if !r.is_zero() {
                        break;
                    }
                    rest = q;
                    m += 1;
                }
                (g, m)
            })
            .collect()
    }

    #[must_use]
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(n) => {
                let f = self.irreducible_factors();
                f.len() == 1 && f[0].degree() == Some(n) && self.squarefree().degree() == Some(n)
            }
        }
    }
}

/// Integer polynomial helpers on coefficient vectors (lowest degree first).
pub(crate) mod zpoly {
    use super::*;

    pub fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }

    pub fn content(f: &[BigInt]) -> BigInt {
        f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn primitive(f: &[BigInt]) -> Vec<BigInt> {
        let c = content(f);
        if c.is_zero() {
            return Vec::new();
        }
        trim(f.iter().map(|x| x / &c).collect())
    }

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    /// Exact quotient `a / b` over Z, if it exists.
    pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        let db = b.len().checked_sub(1)?;
        let mut r = a.to_vec();
        if r.len() <= db {
            return if r.is_empty() { Some(Vec::new()) } else { None };
        }
        let lead = &b[db];
        let mut q = vec![BigInt::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let (c, rem) = r[k + db].div_rem(lead);
            if !rem.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (j, bc) in b.iter().enumerate() {
                    r[k + j] -= &c * bc;
                }
            }
            q[k] = c;
        }
        if r.iter().all(Zero::is_zero) {
            Some(trim(q))
        } else {
            None
        }
    }
}

/// Polynomial arithmetic over Z/m with coefficients kept in `[0, m)`.
struct ModRing {
    m: BigInt,
}

impl ModRing {
    fn reduce(&self, v: Vec<BigInt>) -> Vec<BigInt> {
        zpoly::trim(v.into_iter().map(|c| c.mod_floor(&self.m)).collect())
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.reduce(zpoly::mul(a, b))
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        self.reduce((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        self.reduce((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
    }

    fn scale(&self, a: &[BigInt], s: &BigInt) -> Vec<BigInt> {
        self.reduce(a.iter().map(|c| c * s).collect())
    }

    fn inv(&self, a: &BigInt) -> BigInt {
        let e = a.extended_gcd(&self.m);
        assert!(e.gcd.is_one(), "non-invertible leading coefficient");
        e.x.mod_floor(&self.m)
    }

    /// Division by a polynomial whose leading coefficient is a unit.
    fn div_rem(&self, a: &[BigInt], d: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let dd = d.len() - 1;
        let inv = self.inv(&d[dd]);
        let mut r = a.to_vec();
        if r.len() <= dd {
            return (Vec::new(), self.reduce(r));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = (&r[k + dd] * &inv).mod_floor(&self.m);
            if !c.is_zero() {
                for (j, dc) in d.iter().enumerate() {
                    r[k + j] = (&r[k + j] - &c * dc).mod_floor(&self.m);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (self.reduce(q), self.reduce(r))
    }

    fn rem(&self, a: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
        self.div_rem(a, d).1
    }

    fn monic(&self, a: &[BigInt]) -> Vec<BigInt> {
        match a.last() {
            None => Vec::new(),
            Some(l) => {
                let inv = self.inv(l);
                self.scale(a, &inv)
            }
        }
    }

    /// Monic gcd; only valid when the modulus is prime.
    fn gcd(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let (mut a, mut b) = (self.reduce(a.to_vec()), self.reduce(b.to_vec()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(s, t)` with `s a + t b = 1`, for coprime `a`, `b` modulo a prime.
    fn bezout(&self, a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let (mut r0, mut r1) = (self.reduce(a.to_vec()), self.reduce(b.to_vec()));
        let (mut s0, mut s1) = (vec![BigInt::one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![BigInt::one()]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        assert_eq!(r0.len(), 1, "bezout on non-coprime polynomials");
        let inv = self.inv(&r0[0]);
        (self.scale(&s0, &inv), self.scale(&t0, &inv))
    }

    fn pow_mod(&self, base: &[BigInt], exp: &BigUint, modulus: &[BigInt]) -> Vec<BigInt> {
        let mut acc = vec![BigInt::one()];
        let base = self.rem(base, modulus);
        for i in (0..exp.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), modulus);
            if exp.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), modulus);
            }
        }
        acc
    }
}

/// Distinct-degree then equal-degree factorization of a monic squarefree
/// polynomial modulo an odd prime.
fn factor_mod_p(f: &[BigInt], p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<BigInt>> {
    let ring = ModRing { m: BigInt::from(p) };
    let pb = BigUint::from(p);
    let x = vec![BigInt::zero(), BigInt::one()];
    let mut rest = ring.monic(f);
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.len() > 1 && 2 * d < rest.len() {
        h = ring.pow_mod(&h, &pb, &rest);
        let g = ring.gcd(&ring.sub(&h, &x), &rest);
        if g.len() > 1 {
            equal_degree(&ring, &g, d, &pb, rng, &mut out);
            rest = ring.div_rem(&rest, &g).0;
            h = ring.rem(&h, &rest);
        }
        d += 1;
    }
    if rest.len() > 1 {
        out.push(ring.monic(&rest));
    }
    out
}

fn equal_degree(
    ring: &ModRing,
    g: &[BigInt],
    d: usize,
    p: &BigUint,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Vec<BigInt>>,
) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.to_vec());
        return;
    }
    let exp = (p.pow(u32::try_from(d).expect("small degree")) - 1u32) / 2u32;
    let pm = p.to_u64().expect("small prime");
    loop {
        let a: Vec<BigInt> = ring.reduce((0..n).map(|_| BigInt::from(rng.random_range(0..pm))).collect());
        if a.len() < 2 {
            continue;
        }
        let b = ring.sub(&ring.pow_mod(&a, &exp, g), &[BigInt::one()]);
        let h = ring.gcd(&b, g);
        if h.len() > 1 && h.len() < g.len() {
            let other = ring.div_rem(g, &h).0;
            equal_degree(ring, &h, d, p, rng, out);
            equal_degree(ring, &other, d, p, rng, out);
            return;
        }
    }
}

/// Lifts `f = lc * prod(factors)` from mod p to mod p^k.
fn hensel_lift(f: &[BigInt], factors: &[Vec<BigInt>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let pk = BigInt::from(p).pow(k);
    let ring_k = ModRing { m: pk.clone() };
    if factors.len() == 1 {
        return vec![ring_k.monic(f)];
    }
    let ring_p = ModRing { m: BigInt::from(p) };
    let (a, b) = factors.split_at(factors.len() / 2);
    let lc = f.last().expect("nonzero").clone();
    let g0 = a.iter().fold(vec![BigInt::one()], |acc, x| ring_p.mul(&acc, x));
    let h0 = ring_p.scale(&b.iter().fold(vec![BigInt::one()], |acc, x| ring_p.mul(&acc, x)), &lc);
    let (_, t) = ring_p.bezout(&g0, &h0);
    let mut g = g0;
    let mut h = h0;
    // Keep h's leading coefficient equal to lc exactly.
    *h.last_mut().expect("nonzero") = lc.mod_floor(&pk);
    let mut pj = BigInt::from(p);
    for _ in 1..k {
        let next = &pj * p;
        let ring_next = ModRing { m: next.clone() };
        let diff = ring_next.sub(f, &ring_next.mul(&g, &h));
        let e: Vec<BigInt> = ring_p.reduce(diff.iter().map(|c| c / &pj).collect());
        let tau = ring_p.rem(&ring_p.mul(&e, &t), &g);
        let sigma = ring_p.div_rem(&ring_p.sub(&e, &ring_p.mul(&tau, &h)), &g).0;
        g = ring_next.add(&g, &ring_next.scale(&tau, &pj));
        h = ring_next.add(&h, &ring_next.scale(&sigma, &pj));
        pj = next;
    }
    let mut out = hensel_lift(&ring_k.reduce(g), a, p, k);
    out.extend(hensel_lift(&ring_k.reduce(h), b, p, k));
    out
}

fn symmetric(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    zpoly::trim(
        v.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Irreducible factors over Z of a primitive squarefree polynomial.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let lc = f[n].clone();
    // Pick, among the first few good primes, one with the fewest modular factors.
    let mut best: Option<(u64, Vec<Vec<BigInt>>)> = None;
    let mut tried = 0;
    let mut p = 2;
    while tried < 6 {
        p += 1;
        if !is_prime_u64(p) || (&lc % p).is_zero() {
            continue;
        }
        let ring = ModRing { m: BigInt::from(p) };
        let fp = ring.reduce(f.to_vec());
        let dfp = ring.reduce(fp.iter().enumerate().skip(1).map(|(i, c)| c * i).collect());
        if ring.gcd(&fp, &dfp).len() != 1 {
            continue;
        }
        tried += 1;
        let facs = factor_mod_p(&fp, p, &mut rng);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, modular) = best.expect("a good prime exists");
    // Mignotte-style bound on factor coefficients, times lc for recombination.
    let max_coeff = f.iter().map(Signed::abs).max().expect("nonzero");
    let bound = BigInt::from(n + 1) * (BigInt::one() << n) * max_coeff * lc.abs() * 2;
    let mut k = 1;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let mut lifted = hensel_lift(f, &modular, p, k);
    let ring = ModRing { m: pk.clone() };
    let mut rest = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let rlc = rest.last().expect("nonzero").clone();
        for subset in subsets(lifted.len(), size) {
            let prod = subset.iter().fold(vec![rlc.clone()], |acc, &i| ring.mul(&acc, &lifted[i]));
            let cand = zpoly::primitive(&symmetric(&prod, &pk));
            if let Some(q) = zpoly::div_exact(&rest, &cand) {
                found.push(cand);
                rest = q;
                let mut keep = Vec::new();
                for (i, g) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(g);
                    }
                }
                lifted = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    found.push(zpoly::primitive(&rest));
    found
}

/// All `size`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..size).collect();
    if size > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..size).rev().find(|&i| cur[i] < n - size + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..size {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64(c)
    }

    #[test]
    fn arithmetic_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1]).mul(&p(&[2, 1]))), p(&[-1, 1]));
        assert_eq!(p(&[1, 2, 1]).squarefree(), p(&[1, 1]));
        assert_eq!(p(&[1, -3, 0, 2]).to_string(), "2x^3 - 3x + 1");
    }

    #[test]
    fn factors_products_of_known_irreducibles() {
        let parts = [p(&[1, 1, 1]), p(&[-2, 0, 1]), p(&[1, 0, 0, 0, 1]), p(&[-3, 1])];
        let f = parts.iter().fold(QPoly::one(), |acc, g| acc.mul(g));
        let got = f.irreducible_factors();
        assert_eq!(got.len(), 4);
        for g in &parts {
            assert!(got.contains(&g.monic()), "missing {g}");
        }
    }

    #[test]
    fn irreducible_but_split_mod_every_prime() {
        // x^4 + 1 is irreducible over Q and reducible modulo every prime.
        assert!(p(&[1, 0, 0, 0, 1]).is_irreducible());
        // x^4 - 10x^2 + 1 likewise.
        assert!(p(&[1, 0, -10, 0, 1]).is_irreducible());
        assert!(!p(&[-1, 0, 0, 0, 1]).is_irreducible());
    }

    #[test]
    fn non_monic_factoring() {
        let f = p(&[3, 2]).mul(&p(&[-1, 5])).mul(&p(&[1, 0, 7]));
        let got = f.irreducible_factors();
        assert_eq!(got, vec![p(&[-1, 5]).monic(), p(&[3, 2]).monic(), p(&[1, 0, 7]).monic()]);
        assert_eq!(f.factor().iter().map(|(_, m)| *m).sum::<u32>(), 3);
    }

    #[test]
    fn cyclotomic_factorization() {
        // x^12 - 1 = product of cyclotomic polynomials of degrees 1,1,2,2,2,4.
        let mut c = vec![0; 13];
        c[0] = -1;
        c[12] = 1;
        let degs: Vec<usize> = p(&c).irreducible_factors().iter().map(|g| g.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4]);
    }
}
