//! Prime decompositions in the radical and cyclotomic extensions of `Q`
//! used by the towers.

use num_integer::Integer;

use super::galois::{Affine, LocalGalois, PlaceDecomposition};
use super::LocalError;
use crate::arith::{divisors, is_prime_u64, mobius, mod_pow, mult_order, valuation_u64};

fn unsupported(l: u64, reason: &str) -> LocalError {
    LocalError::Unsupported { place: l.to_string(), reason: reason.into() }
}

/// `(prime-to-l part of m) mod l`, with `ord_l(m)`.
fn split_off(m: u64, l: u64) -> (u64, u32) {
    let v = valuation_u64(m, l);
    (m / l.pow(v), v)
}

/// Local Galois data at the prime `l` of `Q` in `Q(mu_p, m^{1/p})`, assumed
/// to have degree `p(p-1)`.
pub fn borel_local_galois(p: u64, m: u64, l: u64) -> Result<LocalGalois, LocalError> {
    assert!(is_prime_u64(p) && p > 2 && is_prime_u64(l) && m > 1);
    let (u, v) = split_off(m, l);
    if l != p {
        let frob = Affine::scaling(l % p);
        if v % p as u32 != 0 {
            return LocalGalois::new(p, &[Affine::translation(1)], frob);
        }
        if l % p != 1 {
            return LocalGalois::new(p, &[], frob);
        }
        // Frobenius lies in the translations; it is trivial iff u is a
        // p-th power mod l.
        let is_power = mod_pow(u % l, (l - 1) / p, l) == 1;
        return LocalGalois::new(p, &[], if is_power { Affine::identity() } else { Affine::translation(1) });
    }
    let torus = Affine::scaling(crate::arith::primitive_root(p));
    if v % p as u32 != 0 {
        return LocalGalois::new(p, &[Affine::translation(1), torus], Affine::identity());
    }
    // A unit is a p-th power in Q_p iff u^{p-1} = 1 mod p^2.
    if mod_pow(u, p - 1, p * p) == 1 {
        LocalGalois::new(p, &[torus], Affine::identity())
    } else {
        LocalGalois::new(p, &[Affine::translation(1), torus], Affine::identity())
    }
}

/// The real place of `Q` in the same extension: complex conjugation.
#[must_use]
pub fn borel_infinite_galois(p: u64) -> LocalGalois {
    LocalGalois::new(p, &[Affine::scaling(p - 1)], Affine::identity()).expect("valid")
}

/// Primes above `l` in `Q(m^{1/n})`, assuming `x^n - m` is irreducible.
/// Unramified primes are counted from the number of roots of `x^n = m` in
/// each `F_{l^f}`; primes dividing `m` to a power prime to `n` are totally
/// ramified.
pub fn radical_decomposition(l: u64, n: u64, m: u64) -> Result<PlaceDecomposition, LocalError> {
    let (u, v) = split_off(m, l);
    if v > 0 {
        if u64::from(v).gcd(&n) == 1 {
            return Ok(PlaceDecomposition { profiles: vec![(n as u32, 1, 1)] });
        }
        return Err(unsupported(l, "ord_l(m) shares a factor with the degree"));
    }
    if n.is_multiple_of(l) {
        return Err(unsupported(l, "l divides the degree; wild ramification is not modelled"));
    }
    let u = u % l;
    let roots_in = |f: u64| -> u64 {
        // x^n = u in F_q^*, q = l^f: solvable iff u^{(q-1)/g} = 1, g = gcd(n, q-1).
        let g = (mod_pow(l, f, n) + n - 1) % n;
        let g = g.gcd(&n);
        let modulus = g * (l - 1);
        let e = ((mod_pow(l, f, modulus) + modulus - 1) % modulus) / g;
        if mod_pow(u, e, l) == 1 {
            g
        } else {
            0
        }
    };
    let mut profiles = Vec::new();
    let mut covered = 0;
    let mut f = 1;
    while covered < n {
        let exact: i64 = divisors(f).into_iter().map(|d| mobius(f / d) * roots_in(d) as i64).sum();
        let count = exact as u64 / f;
        if count > 0 {
            profiles.push((1, f as u32, count as u32));
            covered += count * f;
        }
        f += 1;
    }
    Ok(PlaceDecomposition { profiles })
}

/// Primes above `l` in `Q(mu_p)`.
#[must_use]
pub fn cyclotomic_decomposition(l: u64, p: u64) -> PlaceDecomposition {
    if l == p {
        return PlaceDecomposition { profiles: vec![(p as u32 - 1, 1, 1)] };
    }
    let f = mult_order(l % p, p);
    PlaceDecomposition { profiles: vec![(1, f as u32, ((p - 1) / f) as u32)] }
}

/// Real and complex places of `Q(m^{1/n})` for odd `n`.
#[must_use]
pub fn radical_infinite_places(n: u64) -> (u64, u64) {
    (1, (n - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::super::galois::Field;
    use super::*;

    #[test]
    fn cube_root_of_two() {
        // 2 is not a cube mod 7, so 7 is inert in Q(2^{1/3}).
        assert_eq!(radical_decomposition(7, 3, 2).unwrap().profiles, vec![(1, 3, 1)]);
        // 5: x^3 = 2 has one root in F_5 (cubing is bijective).
        assert_eq!(radical_decomposition(5, 3, 2).unwrap().profiles, vec![(1, 1, 1), (1, 2, 1)]);
        // 31: 2 = 4^3 mod 31 gives three roots.
        assert_eq!(radical_decomposition(31, 3, 2).unwrap().profiles, vec![(1, 1, 3)]);
        assert_eq!(radical_decomposition(2, 9, 2).unwrap().profiles, vec![(9, 1, 1)]);
    }

    #[test]
    fn degrees_match() {
        for n in [3u64, 9, 27, 81] {
            for l in [5u64, 7, 11, 13, 19, 37] {
                assert_eq!(radical_decomposition(l, n, 2).unwrap().degree(), n, "l={l} n={n}");
            }
        }
    }

    #[test]
    fn borel_at_eleven() {
        let g = borel_local_galois(3, 11, 11).unwrap();
        assert_eq!(g.decompose(Field::L).profiles, vec![(3, 1, 1)]);
        let g = borel_local_galois(3, 2, 11).unwrap();
        assert_eq!(g.decompose(Field::L).profiles, vec![(1, 1, 1), (1, 2, 1)]);
        let g = borel_local_galois(3, 10, 3).unwrap();
        assert_eq!(g.decompose(Field::L).profiles, vec![(1, 1, 1), (2, 1, 1)]);
        assert_eq!(cyclotomic_decomposition(7, 3).profiles, vec![(1, 1, 2)]);
    }
}
