use std::sync::Arc;

use num_bigint::BigInt;

use super::map::{power, GroupRingElement as R};
use super::{compose_transpose, IntegerGModuleMap, IsogenyError, PermLattice};
use crate::arith::is_prime_u64;
use crate::group_core::{presets, Elements, PermGroup, Subgroup};
use crate::linalg::ZMatrix;

/// The Borel group with `g` of order `p`, `h` of order `p - 1`, and the
/// lattices `Z_K`, `Z_L`, `Z_M`, `Z_F`.
#[derive(Clone, Debug)]
pub struct BorelSetup {
    pub p: u64,
    pub group: Arc<PermGroup>,
    pub g: usize,
    pub h: usize,
    pub whole: Subgroup,
    pub g_sub: Subgroup,
    pub h_sub: Subgroup,
    pub trivial: Subgroup,
}

impl BorelSetup {
    pub fn new(p: u64) -> Result<Self, IsogenyError> {
        if p < 3 || !is_prime_u64(p) {
            return Err(IsogenyError::Parameter(format!("p must be an odd prime, got {p}")));
        }
        let group = Arc::new(presets::borel(p)?);
        let e = group.elements()?;
        let (g, h) = (e.index[&group.gens()[0]], e.index[&group.gens()[1]]);
        let whole = Subgroup::generated(e, &[g, h]);
        Ok(Self { p, g, h, whole, g_sub: Subgroup::generated(e, &[g]), h_sub: Subgroup::generated(e, &[h]), trivial: Subgroup::trivial(), group })
    }

    pub fn elements(&self) -> Result<&Elements, IsogenyError> {
        Ok(self.group.elements()?)
    }

    /// `g^i` for any integer `i`.
    pub fn gp(&self, i: i64) -> Result<usize, IsogenyError> {
        self.power(self.g, i)
    }

    /// `h^j` for any integer `j`.
    pub fn hp(&self, j: i64) -> Result<usize, IsogenyError> {
        self.power(self.h, j)
    }

    fn power(&self, x: usize, i: i64) -> Result<usize, IsogenyError> {
        Ok(power(self.elements()?, x, i))
    }

    pub fn mul(&self, a: usize, b: usize) -> Result<usize, IsogenyError> {
        Ok(self.elements()?.mul(a, b))
    }

    fn lattice(&self, parts: Vec<(String, &Subgroup)>) -> Result<PermLattice, IsogenyError> {
        PermLattice::new(Arc::clone(&self.group), parts.into_iter().map(|(l, s)| (l, s.clone())).collect())
    }

    /// `Z_L x_1 + ... + Z_L x_{p-1} + Z_M x_p`.
    pub fn v1(&self) -> Result<PermLattice, IsogenyError> {
        let p = self.p as usize;
        let mut parts: Vec<(String, &Subgroup)> = (1..p).map(|k| (format!("x{k}"), &self.h_sub)).collect();
        parts.push((format!("x{p}"), &self.g_sub));
        self.lattice(parts)
    }

    /// `Z_K y_1 + ... + Z_K y_{p-1} + Z_F y_p`.
    pub fn v2(&self) -> Result<PermLattice, IsogenyError> {
        let p = self.p as usize;
        let mut parts: Vec<(String, &Subgroup)> = (1..p).map(|k| (format!("y{k}"), &self.whole)).collect();
        parts.push((format!("y{p}"), &self.trivial));
        self.lattice(parts)
    }

    /// `Z_M z_1 + Z_K z_2`.
    pub fn z_lattice(&self) -> Result<PermLattice, IsogenyError> {
        self.lattice(vec![("z1".into(), &self.g_sub), ("z2".into(), &self.whole)])
    }

    /// `sum_j h^j`.
    pub fn norm_h(&self) -> Result<R, IsogenyError> {
        Ok(R((0..self.p as i64 - 1).map(|j| Ok((1, self.hp(j)?))).collect::<Result<_, IsogenyError>>()?))
    }

    fn ring_mul(&self, a: &R, b: &R) -> Result<R, IsogenyError> {
        let e = self.elements()?;
        Ok(a.times(b, |x, y| e.mul(x, y)))
    }
}

fn add(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    a.into_iter().zip(b).map(|(x, y)| x + y).collect()
}

/// The map `V_1 -> V_2` with
/// `x_1 -> y_1 + sum_j h^j y_p`,
/// `x_k -> y_1 - y_k + sum_j h^j (1 - g^{1-k}) y_p` and
/// `x_p -> y_1 + ... + y_{p-1} - sum_i h^{-1} g^i y_p`.
pub fn build_borel_f(p: u64) -> Result<IntegerGModuleMap, IsogenyError> {
    let b = BorelSetup::new(p)?;
    let (v1, v2) = (b.v1()?, b.v2()?);
    let pu = p as usize;
    let y = |k: usize| R::element(0).on(&v2, k - 1);
    let norm = b.norm_h()?;
    let mut images = vec![add(y(1), norm.on(&v2, pu - 1))];
    for k in 2..pu {
        let one_minus = R::element(0).plus(R::element(b.gp(1 - k as i64)?).scaled(-1));
        let elt = b.ring_mul(&norm, &one_minus)?;
        let ys: Vec<BigInt> = y(1).into_iter().zip(y(k)).map(|(a, c)| a - c).collect();
        images.push(add(ys, elt.on(&v2, pu - 1)));
    }
    let h_inv = b.hp(-1)?;
    let tail = R((0..p as i64).map(|i| Ok((-1, b.mul(h_inv, b.gp(i)?)?))).collect::<Result<_, IsogenyError>>()?);
    let ys = (1..pu).map(y).reduce(add).expect("p > 2");
    images.push(add(ys, tail.on(&v2, pu - 1)));
    IntegerGModuleMap::from_generator_images(v1, v2, &images)
}

/// `(p^2 - p + 1) p^{p(p-1)/2 - 1}`.
#[must_use]
pub fn borel_det_formula(p: u64) -> BigInt {
    BigInt::from(p * p - p + 1) * BigInt::from(p).pow((p * (p - 1) / 2 - 1) as u32)
}

/// The blocks of `f^t f`: `alpha_1` on `Z_L^{p-1}` and `alpha_2` on `Z_M`.
#[derive(Clone, Debug)]
pub struct BorelBlocks {
    pub ftf: IntegerGModuleMap,
    pub alpha1: IntegerGModuleMap,
    pub alpha2: IntegerGModuleMap,
}

/// `f^t f` and its two blocks, checking that the block structure is
/// exactly `Z_L^{p-1}` and `Z_M`.
pub fn borel_blocks(f: &IntegerGModuleMap) -> Result<BorelBlocks, IsogenyError> {
    let ftf = compose_transpose(f)?;
    let blocks = ftf.block_decomposition()?;
    let k = f.source().summands().len();
    if blocks != vec![(0..k - 1).collect::<Vec<_>>(), vec![k - 1]] {
        return Err(IsogenyError::Shape(format!("unexpected block structure {blocks:?}")));
    }
    Ok(BorelBlocks { alpha1: ftf.restrict(&blocks[0])?, alpha2: ftf.restrict(&blocks[1])?, ftf })
}

/// `alpha_1` and `alpha_2` from their closed forms:
/// `x_1 -> sum_{i != 0} g^i x_1 + p (x_1 + ... + x_{p-1})`,
/// `x_k -> p x_k + p (x_1 + ... + x_{p-1})`, `x_p -> (p + (p-1) sum_j h^j) x_p`.
pub fn borel_blocks_closed_form(p: u64) -> Result<(IntegerGModuleMap, IntegerGModuleMap), IsogenyError> {
    let b = BorelSetup::new(p)?;
    let v1 = b.v1()?;
    let pu = p as usize;
    let zl = v1.sub(&(0..pu - 1).collect::<Vec<_>>());
    let zm = v1.sub(&[pu - 1]);
    let pi = p as i64;
    let all_x = (0..pu - 1).map(|i| R::element(0).scaled(pi).on(&zl, i)).reduce(add).expect("p > 2");
    let mut images = Vec::new();
    let rest = R((1..pi).map(|i| Ok((1, b.gp(i)?))).collect::<Result<_, IsogenyError>>()?);
    images.push(add(rest.on(&zl, 0), all_x.clone()));
    for k in 1..pu - 1 {
        images.push(add(R::element(0).scaled(pi).on(&zl, k), all_x.clone()));
    }
    let alpha1 = IntegerGModuleMap::from_generator_images(zl.clone(), zl, &images)?;
    let a2 = R::element(0).scaled(pi).plus(b.norm_h()?.scaled(pi - 1));
    let alpha2 = IntegerGModuleMap::from_generator_images(zm.clone(), zm.clone(), &[a2.on(&zm, 0)])?;
    Ok((alpha1, alpha2))
}

/// The maps in `alpha_3 (alpha_2 + [p]) = ([p] + id) alpha_4` on
/// `Z_M z_1 + Z_K z_2`, with `N = sum_j h^j`:
/// `alpha_3: z_1 -> z_1 + N z_1 + z_2, z_2 -> (p-1) N z_1` and
/// `alpha_4: z_1 -> z_1 + p N z_1 + (p^2-p+1) z_2, z_2 -> (p-1) N z_1`.
#[derive(Clone, Debug)]
pub struct AlphaFactorization {
    pub alpha2_plus_p: IntegerGModuleMap,
    pub alpha3: IntegerGModuleMap,
    pub alpha4: IntegerGModuleMap,
    pub p_plus_id: IntegerGModuleMap,
}

impl AlphaFactorization {
    /// Whether `alpha_3 (alpha_2 + [p]) = ([p] + id) alpha_4`.
    pub fn identity_holds(&self) -> Result<bool, IsogenyError> {
        Ok(self.alpha3.compose(&self.alpha2_plus_p)? == self.p_plus_id.compose(&self.alpha4)?)
    }

    /// `det alpha_3` and `det alpha_4`.
    #[must_use]
    pub fn dets(&self) -> (BigInt, BigInt) {
        (self.alpha3.det().expect("square"), self.alpha4.det().expect("square"))
    }
}

pub fn alpha_factorization(p: u64) -> Result<AlphaFactorization, IsogenyError> {
    alpha_factorization_with(p, 1, p * p - p + 1)
}

/// The same maps with `alpha_3: z_1 -> z_1 + N z_1 + c_3 z_2` and
/// `alpha_4: z_1 -> z_1 + p N z_1 + c_4 z_2`.
pub fn alpha_factorization_with(p: u64, c3: u64, c4: u64) -> Result<AlphaFactorization, IsogenyError> {
    let b = BorelSetup::new(p)?;
    let z = b.z_lattice()?;
    let pi = p as i64;
    let n = b.norm_h()?;
    let z2 = |c: i64| R::element(0).scaled(c).on(&z, 1);
    let z1 = |r: R| r.on(&z, 0);
    let map = |img1: Vec<BigInt>, img2: Vec<BigInt>| IntegerGModuleMap::from_generator_images(z.clone(), z.clone(), &[img1, img2]);
    let alpha2_plus_p = map(z1(R::element(0).scaled(pi).plus(n.clone().scaled(pi - 1))), z2(pi))?;
    let alpha3 = map(add(z1(R::element(0).plus(n.clone())), z2(c3 as i64)), z1(n.clone().scaled(pi - 1)))?;
    let alpha4 = map(add(z1(R::element(0).plus(n.clone().scaled(pi))), z2(c4 as i64)), z1(n.clone().scaled(pi - 1)))?;
    let p_plus_id = map(z1(R::element(0).scaled(pi)), z2(1))?;
    Ok(AlphaFactorization { alpha2_plus_p, alpha3, alpha4, p_plus_id })
}

/// The bases in which the `p = 3` matrices are printed: for `V_1`
/// `x1, gx1, g^2x1, x2, gx2, g^2x2, x3, hx3`, for `V_2`
/// `y1, y2, y3, gy3, g^2y3, hy3, hgy3, hg^2y3`. Each entry is a summand and
/// a word `(power of h, power of g)` for the element `h^a g^b`.
pub const PRINTED_V1_BASIS: [(usize, i64, i64); 8] = [(0, 0, 0), (0, 0, 1), (0, 0, 2), (1, 0, 0), (1, 0, 1), (1, 0, 2), (2, 0, 0), (2, 1, 0)];
pub const PRINTED_V2_BASIS: [(usize, i64, i64); 8] = [(0, 0, 0), (1, 0, 0), (2, 0, 0), (2, 0, 1), (2, 0, 2), (2, 1, 0), (2, 1, 1), (2, 1, 2)];

/// `f` for `p = 3` as printed.
pub const PRINTED_F3: [[i64; 8]; 8] = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [0, 0, 0, -1, -1, -1, 1, 1],
    [1, 0, 0, 1, -1, 0, 0, -1],
    [0, 1, 0, 0, 1, -1, 0, -1],
    [0, 0, 1, -1, 0, 1, 0, -1],
    [1, 0, 0, 1, 0, -1, -1, 0],
    [0, 0, 1, 0, -1, 1, -1, 0],
    [0, 1, 0, -1, 1, 0, -1, 0],
];

/// `f^t f` for `p = 3` as printed.
pub const PRINTED_FTF3: [[i64; 8]; 8] = [
    [3, 1, 1, 3, 0, 0, 0, 0],
    [1, 3, 1, 0, 3, 0, 0, 0],
    [1, 1, 3, 0, 0, 3, 0, 0],
    [3, 0, 0, 6, 0, 0, 0, 0],
    [0, 3, 0, 0, 6, 0, 0, 0],
    [0, 0, 3, 0, 0, 6, 0, 0],
    [0, 0, 0, 0, 0, 0, 5, 2],
    [0, 0, 0, 0, 0, 0, 2, 5],
];

fn printed_positions(b: &BorelSetup, lattice: &PermLattice, basis: &[(usize, i64, i64)]) -> Result<Vec<usize>, IsogenyError> {
    basis.iter().map(|&(s, a, c)| Ok(lattice.index_of(s, b.mul(b.hp(a)?, b.gp(c)?)?))).collect()
}

/// A matrix of a map `V_1 -> V_2` (or `V_1 -> V_1`) rewritten in the
/// printed bases.
pub fn in_printed_basis(f: &IntegerGModuleMap) -> Result<ZMatrix, IsogenyError> {
    let b = BorelSetup::new(3)?;
    let cols = printed_positions(&b, f.source(), &PRINTED_V1_BASIS)?;
    let row_basis: &[(usize, i64, i64)] = if f.target() == f.source() { &PRINTED_V1_BASIS } else { &PRINTED_V2_BASIS };
    let rows = printed_positions(&b, f.target(), row_basis)?;
    Ok(f.matrix().permuted(&rows, &cols))
}

/// Whether `f` and `f^t f` for `p = 3` agree with the printed matrices.
pub fn matches_printed_p3() -> Result<bool, IsogenyError> {
    let f = build_borel_f(3)?;
    let ftf = compose_transpose(&f)?;
    let printed = |m: &[[i64; 8]; 8]| ZMatrix::from_i64_rows(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    Ok(in_printed_basis(&f)? == printed(&PRINTED_F3) && in_printed_basis(&ftf)? == printed(&PRINTED_FTF3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn determinants_match_closed_form() {
        for p in [3u64, 5, 7] {
            let f = build_borel_f(p).unwrap();
            assert_eq!(f.det().unwrap().abs(), borel_det_formula(p), "p = {p}");
        }
        assert_eq!(borel_det_formula(3), BigInt::from(63));
    }

    #[test]
    fn printed_matrices() {
        assert!(matches_printed_p3().unwrap());
    }

    #[test]
    fn blocks_have_closed_forms() {
        for p in [3u64, 5, 7] {
            let blocks = borel_blocks(&build_borel_f(p).unwrap()).unwrap();
            let (a1, a2) = borel_blocks_closed_form(p).unwrap();
            assert_eq!(blocks.alpha1, a1);
            assert_eq!(blocks.alpha2, a2);
        }
    }

    #[test]
    fn alpha_identity() {
        for p in [3u64, 5, 7] {
            let a = alpha_factorization(p).unwrap();
            assert!(a.identity_holds().unwrap(), "p = {p}");
            let (d3, d4) = a.dets();
            assert!(crate::arith::valuation(&d3, p) == 0 && crate::arith::valuation(&d4, p) == 0);
            // z_2 coefficients 1 in alpha_3 and (p^2-p+1) in alpha_4 are forced.
            assert!(!alpha_factorization_with(p, 0, 1).unwrap().identity_holds().unwrap());
        }
    }
}
