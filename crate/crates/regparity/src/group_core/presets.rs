//! Named groups.

use crate::arith::{is_prime, primitive_root};

use super::{GroupError, Perm, PermGroup};

fn cycle(n: usize, points: impl IntoIterator<Item = usize>) -> Result<Perm, GroupError> {
    Perm::from_cycles(n, &[points.into_iter().collect()])
}

/// Symmetric group on `n` points, generated by an `n`-cycle and a
/// transposition.
pub fn symmetric(n: usize) -> Result<PermGroup, GroupError> {
    match n {
        0 => Err(GroupError::InvalidParameter("S0 is not defined".into())),
        1 => PermGroup::new(1, vec![]),
        2 => PermGroup::new(2, vec![cycle(2, [0, 1])?]),
        _ => PermGroup::new(n, vec![cycle(n, 0..n)?, cycle(n, [0, 1])?]),
    }
}

/// Alternating group on `n` points. `A5` uses `(0 1 2 3 4)` and `(0 1 2)`.
pub fn alternating(n: usize) -> Result<PermGroup, GroupError> {
    match n {
        0 => Err(GroupError::InvalidParameter("A0 is not defined".into())),
        1 | 2 => PermGroup::new(n, vec![]),
        _ if n % 2 == 1 => PermGroup::new(n, vec![cycle(n, 0..n)?, cycle(n, [0, 1, 2])?]),
        _ => PermGroup::new(n, vec![cycle(n, 1..n)?, cycle(n, [0, 1, 2])?]),
    }
}

pub fn cyclic(n: usize) -> Result<PermGroup, GroupError> {
    match n {
        0 => Err(GroupError::InvalidParameter("C0 is not defined".into())),
        1 => PermGroup::new(1, vec![]),
        _ => PermGroup::new(n, vec![cycle(n, 0..n)?]),
    }
}

/// Dihedral group of order `2n`, generated by a rotation `g` and a
/// reflection `h` with `h g h = g^-1`.
///
/// For `n >= 3` this is the action on the vertices of an `n`-gon; `D4`
/// acts regularly on four points.
pub fn dihedral(n: usize) -> Result<PermGroup, GroupError> {
    match n {
        0 | 1 => Err(GroupError::InvalidParameter(format!("dihedral group needs n >= 2, got {n}"))),
        2 => PermGroup::new(
            4,
            vec![Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]])?, Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]])?],
        ),
        _ => {
            let g = Perm::from_images((0..n).map(|i| (i + 1) % n).collect())?;
            let h = Perm::from_images((0..n).map(|i| (n - i) % n).collect())?;
            PermGroup::new(n, vec![g, h])
        }
    }
}

/// Points of the Borel action: `0..p` is the affine line, `p + y - 1` is
/// the unit `y` of `F_p^*`.
#[must_use]
pub fn borel_degree(p: u64) -> usize {
    (2 * p - 1) as usize
}

/// The group of matrices `(1 b; 0 d)` in `GL2(F_p)`, acting on
/// `F_p` by `x -> (x + b) / d` and on `F_p^*` by `y -> d y`.
///
/// Generators are `g = (1 1; 0 1)` and `h = (1 0; 0 a)` with `a` the least
/// primitive root, so that `h g h^-1 = g^(1/a)`.
pub fn borel(p: u64) -> Result<PermGroup, GroupError> {
    if p < 3 || !is_prime(p) {
        return Err(GroupError::InvalidParameter(format!("Borel group needs an odd prime, got {p}")));
    }
    let a = primitive_root(p);
    let a_inv = crate::arith::mod_pow(a, p - 2, p);
    let n = borel_degree(p);
    let pu = p as usize;
    let unit = |y: u64| pu + y as usize - 1;
    let mut g = vec![0; n];
    let mut h = vec![0; n];
    for x in 0..p {
        g[x as usize] = ((x + 1) % p) as usize;
        h[x as usize] = (x * a_inv % p) as usize;
    }
    for y in 1..p {
        g[unit(y)] = unit(y);
        h[unit(y)] = unit(y * a % p);
    }
    let group = PermGroup::new(n, vec![Perm::from_images(g)?, Perm::from_images(h)?])?;
    if group.order() != u128::from(p * (p - 1)) {
        return Err(GroupError::MalformedGenerator(format!("Borel action for p = {p} is not faithful")));
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(3).unwrap().order(), 6);
        assert_eq!(symmetric(6).unwrap().order(), 720);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(cyclic(5).unwrap().order(), 5);
        for n in 2..10 {
            assert_eq!(dihedral(n).unwrap().order(), 2 * n as u128);
        }
        for p in [3, 5, 7, 11] {
            assert_eq!(borel(p).unwrap().order(), u128::from(p * (p - 1)));
        }
        assert!(borel(4).is_err());
        assert!(dihedral(1).is_err());
    }

    #[test]
    fn borel_relation() {
        let p = 7;
        let g = borel(p).unwrap();
        let (x, y) = (&g.gens()[0], &g.gens()[1]);
        let a = primitive_root(p);
        let a_inv = crate::arith::mod_pow(a, p - 2, p);
        assert_eq!(y.compose(x).compose(&y.inverse()), x.pow(a_inv));
        assert_eq!(x.order(), p);
        assert_eq!(y.order(), p - 1);
    }
}
