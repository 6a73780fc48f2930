use std::sync::Arc;

use num_bigint::BigInt;

use super::map::{power, GroupRingElement as R};
use super::{compose_transpose, IntegerGModuleMap, IsogenyError, PermLattice};
use crate::group_core::{presets, Elements, PermGroup, Subgroup};

/// `f: V_1 -> V_2` for `D_{2n}` with
/// `V_1 = Z[G/<g^-1 h>] v_1 + Z[G/<g^-2 h>] v_2 + Z[G/<g>] v_3` and
/// `V_2 = Z w_1 + Z w_2 + Z[G] w_3`, together with `f^t f` and its blocks.
#[derive(Clone, Debug)]
pub struct DihedralMaps {
    pub n: u64,
    pub f: IntegerGModuleMap,
    pub ftf: IntegerGModuleMap,
    pub alpha1: IntegerGModuleMap,
    pub alpha2: IntegerGModuleMap,
    pub alpha3: IntegerGModuleMap,
}

struct Setup {
    group: Arc<PermGroup>,
    g: usize,
}

impl Setup {
    fn e(&self) -> Result<&Elements, IsogenyError> {
        Ok(self.group.elements()?)
    }

    fn gp(&self, i: i64) -> Result<usize, IsogenyError> {
        Ok(power(self.e()?, self.g, i))
    }

    fn mul(&self, a: usize, b: usize) -> Result<usize, IsogenyError> {
        Ok(self.e()?.mul(a, b))
    }

    fn ring_mul(&self, a: &R, b: &R) -> Result<R, IsogenyError> {
        let e = self.e()?;
        Ok(a.times(b, |x, y| e.mul(x, y)))
    }

    /// `sum_{i=0}^{n-1} g^i`.
    fn norm_g(&self, n: u64) -> Result<R, IsogenyError> {
        Ok(R((0..n as i64).map(|i| Ok((1, self.gp(i)?))).collect::<Result<_, IsogenyError>>()?))
    }
}

fn add(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    a.into_iter().zip(b).map(|(x, y)| x + y).collect()
}

/// With `n = 2m + d`:
/// `v_1 -> (1 + g^-1 h) w_3`,
/// `v_2 -> w_2 + g^{m-2} (1 - g^{1+d}) (g - h) w_3`,
/// `v_3 -> w_1 + sum_i g^i (1 - h) w_3`.
pub fn build_dihedral_maps(n: u64) -> Result<DihedralMaps, IsogenyError> {
    if n < 2 {
        return Err(IsogenyError::Parameter(format!("dihedral maps need n >= 2, got {n}")));
    }
    let group = Arc::new(presets::dihedral(n as usize)?);
    let e = group.elements()?;
    let (g, h) = (e.index[&group.gens()[0]], e.index[&group.gens()[1]]);
    let s = Setup { group: Arc::clone(&group), g };
    let sub = |gens: &[usize]| Subgroup::generated(e, gens);
    let v1 = PermLattice::new(
        Arc::clone(&group),
        vec![
            ("v1".into(), sub(&[s.mul(s.gp(-1)?, h)?])),
            ("v2".into(), sub(&[s.mul(s.gp(-2)?, h)?])),
            ("v3".into(), sub(&[g])),
        ],
    )?;
    let whole = sub(&[g, h]);
    let v2 = PermLattice::new(
        Arc::clone(&group),
        vec![("w1".into(), whole.clone()), ("w2".into(), whole), ("w3".into(), Subgroup::trivial())],
    )?;
    let (m, d) = ((n / 2) as i64, (n % 2) as i64);
    let one = R::element(0);
    let img1 = one.clone().plus(R::element(s.mul(s.gp(-1)?, h)?)).on(&v2, 2);
    let twist = s.ring_mul(
        &R::element(s.gp(m - 2)?),
        &s.ring_mul(&one.clone().plus(R::element(s.gp(1 + d)?).scaled(-1)), &R::element(g).plus(R::element(h).scaled(-1)))?,
    )?;
    let img2 = add(one.on(&v2, 1), twist.on(&v2, 2));
    let img3 = add(one.on(&v2, 0), s.ring_mul(&s.norm_g(n)?, &one.clone().plus(R::element(h).scaled(-1)))?.on(&v2, 2));
    let f = IntegerGModuleMap::from_generator_images(v1, v2, &[img1, img2, img3])?;
    let ftf = compose_transpose(&f)?;
    Ok(DihedralMaps { n, alpha1: ftf.restrict(&[0])?, alpha2: ftf.restrict(&[1])?, alpha3: ftf.restrict(&[2])?, f, ftf })
}

/// The blocks of `f^t f` from their closed forms: `v_1 -> 2 v_1`,
/// `v_2 -> (4 - 2g^{1+d} - 2g^{-1-d} + sum_i g^i) v_2`,
/// `v_3 -> ((2n+1) - (2n-1) h) v_3`.
pub fn dihedral_blocks_closed_form(maps: &DihedralMaps) -> Result<[IntegerGModuleMap; 3], IsogenyError> {
    let n = maps.n;
    let group = Arc::clone(maps.f.source().group());
    let e = group.elements()?;
    let (g, h) = (e.index[&group.gens()[0]], e.index[&group.gens()[1]]);
    let s = Setup { group: Arc::clone(&group), g };
    let d = (n % 2) as i64;
    let lat = |i: usize| maps.f.source().sub(&[i]);
    let a1 = IntegerGModuleMap::scalar(lat(0), 2)?;
    let r2 = R::element(0)
        .scaled(4)
        .plus(R::element(s.gp(1 + d)?).scaled(-2))
        .plus(R::element(s.gp(-1 - d)?).scaled(-2))
        .plus(s.norm_g(n)?);
    let a2 = IntegerGModuleMap::from_generator_images(lat(1), lat(1), &[r2.on(&lat(1), 0)])?;
    let ni = n as i64;
    let r3 = R::element(0).scaled(2 * ni + 1).plus(R::element(h).scaled(1 - 2 * ni));
    let a3 = IntegerGModuleMap::from_generator_images(lat(2), lat(2), &[r3.on(&lat(2), 0)])?;
    Ok([a1, a2, a3])
}

/// `2^{n-1} n^3`.
#[must_use]
pub fn dihedral_alpha2_det_formula(n: u64) -> BigInt {
    BigInt::from(2).pow((n - 1) as u32) * BigInt::from(n).pow(3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha2_determinants() {
        for n in 2..=9 {
            let maps = build_dihedral_maps(n).unwrap();
            assert_eq!(maps.alpha2.det().unwrap(), dihedral_alpha2_det_formula(n), "n = {n}");
            let [a1, a2, a3] = dihedral_blocks_closed_form(&maps).unwrap();
            assert_eq!((a1, a2, a3), (maps.alpha1.clone(), maps.alpha2.clone(), maps.alpha3.clone()), "n = {n}");
        }
        assert_eq!(dihedral_alpha2_det_formula(3), BigInt::from(108));
    }

    #[test]
    fn alpha2_circulant_rows() {
        // Row 0 on the basis g^i v_2 is (5, -1, 1, ..., 1, -1) for even n and
        // (5, 1, -1, 1, ..., 1, -1, 1) for odd n.
        for n in 4..=9u64 {
            let maps = build_dihedral_maps(n).unwrap();
            let lat = maps.alpha2.source();
            let e = lat.group().elements().unwrap();
            let g = e.index[&lat.group().gens()[0]];
            let idx: Vec<usize> = (0..n as i64).map(|i| lat.index_of(0, power(e, g, i))).collect();
            let k = if n % 2 == 0 { 1 } else { 2 };
            for j in 0..n as usize {
                let expected = if j == 0 { 5 } else if j == k || j == n as usize - k { -1 } else { 1 };
                assert_eq!(maps.alpha2.matrix()[(idx[0], idx[j])], BigInt::from(expected), "n = {n}, j = {j}");
            }
        }
    }
}
