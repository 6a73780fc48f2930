use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{IsogenyError, PermLattice};
use crate::group_core::Elements;
use crate::linalg::ZMatrix;

/// An element `sum c_x x` of `Z[G]`, with `x` an element index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement(pub Vec<(i64, usize)>);

impl GroupRingElement {
    #[must_use]
    pub fn element(x: usize) -> Self {
        Self(vec![(1, x)])
    }

    #[must_use]
    pub fn scaled(mut self, c: i64) -> Self {
        self.0.iter_mut().for_each(|t| t.0 *= c);
        self
    }

    #[must_use]
    pub fn plus(mut self, other: Self) -> Self {
        self.0.extend(other.0);
        self
    }

    /// `self * other` in `Z[G]`, given the multiplication of elements.
    #[must_use]
    pub fn times(&self, other: &Self, mul: impl Fn(usize, usize) -> usize) -> Self {
        Self(self.0.iter().flat_map(|&(a, x)| other.0.iter().map(move |&(b, y)| (a * b, (x, y)))).map(|(c, (x, y))| (c, mul(x, y))).collect())
    }

    /// `self . x_i` as a vector of `lattice`.
    #[must_use]
    pub fn on(&self, lattice: &PermLattice, summand: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); lattice.rank()];
        for &(c, x) in &self.0 {
            v[lattice.index_of(summand, x)] += c;
        }
        v
    }
}

/// `x^i` for any integer `i`, with `x` an element index.
#[must_use]
pub fn power(e: &Elements, x: usize, i: i64) -> usize {
    (0..i.rem_euclid(e.orders[x] as i64)).fold(0, |acc, _| e.mul(acc, x))
}

/// A G-equivariant map between permutation lattices; the matrix has one
/// column per basis vector of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerGModuleMap {
    source: PermLattice,
    target: PermLattice,
    matrix: ZMatrix,
}

impl IntegerGModuleMap {
    /// Checks shape and equivariance on every generator.
    pub fn new(source: PermLattice, target: PermLattice, matrix: ZMatrix) -> Result<Self, IsogenyError> {
        if source.group().gens() != target.group().gens() {
            return Err(IsogenyError::Shape("source and target are lattices for different groups".into()));
        }
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(IsogenyError::Shape(format!(
                "matrix is {}x{}, lattices have ranks {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.rank(),
                target.rank()
            )));
        }
        for (k, (s, t)) in source.generator_matrices()?.iter().zip(target.generator_matrices()?).enumerate() {
            if &t * &matrix != &matrix * s {
                return Err(IsogenyError::NotEquivariant(format!("generator {k}")));
            }
        }
        Ok(Self { source, target, matrix })
    }

    /// The map determined by the image of each generator `x_i` of the
    /// source; each image must be fixed by the stabiliser of `x_i`.
    pub fn from_generator_images(source: PermLattice, target: PermLattice, images: &[Vec<BigInt>]) -> Result<Self, IsogenyError> {
        if images.len() != source.summands().len() || images.iter().any(|v| v.len() != target.rank()) {
            return Err(IsogenyError::Shape("one image in the target per source summand".into()));
        }
        let mut matrix = ZMatrix::zeros(target.rank(), source.rank());
        for (i, (s, v)) in source.summands().iter().zip(images).enumerate() {
            for &h in s.subgroup.gens() {
                if &target.act(h, v)? != v {
                    return Err(IsogenyError::NotWellDefined(s.label.clone()));
                }
            }
            for (k, &r) in s.reps().iter().enumerate() {
                for (row, c) in target.act(r, v)?.into_iter().enumerate() {
                    matrix[(row, source.offset(i) + k)] = c;
                }
            }
        }
        Self::new(source, target, matrix)
    }

    /// Multiplication by `n` on a lattice.
    pub fn scalar(lattice: PermLattice, n: i64) -> Result<Self, IsogenyError> {
        let m = ZMatrix::identity(lattice.rank()).scale(&BigInt::from(n));
        Self::new(lattice.clone(), lattice, m)
    }

    #[must_use]
    pub fn source(&self) -> &PermLattice {
        &self.source
    }

    #[must_use]
    pub fn target(&self) -> &PermLattice {
        &self.target
    }

    #[must_use]
    pub fn matrix(&self) -> &ZMatrix {
        &self.matrix
    }

    #[must_use]
    pub fn det(&self) -> Option<BigInt> {
        self.matrix.is_square().then(|| self.matrix.det())
    }

    /// Injective with finite cokernel.
    #[must_use]
    pub fn is_isogeny(&self) -> bool {
        self.det().is_some_and(|d| !d.is_zero())
    }

    /// Degree `|det f|^{2 dim A}` of the induced isogeny of abelian varieties.
    #[must_use]
    pub fn abelian_variety_degree(&self, dim_a: u32) -> Option<BigInt> {
        self.det().map(|d| num_traits::Signed::abs(&d).pow(2 * dim_a))
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Self) -> Result<Self, IsogenyError> {
        if first.target != self.source {
            return Err(IsogenyError::Shape("maps are not composable".into()));
        }
        Ok(Self { source: first.source.clone(), target: self.target.clone(), matrix: &self.matrix * &first.matrix })
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        Self { source: self.target.clone(), target: self.source.clone(), matrix: self.matrix.transpose() }
    }

    #[must_use]
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            matrix: self.matrix.direct_sum(&other.matrix),
        }
    }

    /// Groups of source summands that the endomorphism does not mix, in
    /// order of first summand.
    pub fn block_decomposition(&self) -> Result<Vec<Vec<usize>>, IsogenyError> {
        if self.source != self.target {
            return Err(IsogenyError::Shape("block decomposition needs an endomorphism".into()));
        }
        let k = self.source.summands().len();
        let range = |i: usize| self.source.offset(i)..self.source.offset(i) + self.source.summands()[i].rank();
        let mut parent: Vec<usize> = (0..k).collect();
        fn root(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..k {
            for j in 0..k {
                if i != j && !self.matrix.block(range(i), range(j)).is_zero() {
                    let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..k {
            let r = root(&mut parent, i);
            match blocks.iter_mut().find(|b| b[0] == r) {
                Some(b) => b.push(i),
                None => blocks.push(vec![i]),
            }
        }
        Ok(blocks)
    }

    /// The restriction of an endomorphism to a union of summands that it
    /// preserves.
    pub fn restrict(&self, summands: &[usize]) -> Result<Self, IsogenyError> {
        let sub = self.source.sub(summands);
        let idx: Vec<usize> = summands
            .iter()
            .flat_map(|&i| {
                let o = self.source.offset(i);
                o..o + self.source.summands()[i].rank()
            })
            .collect();
        let m = ZMatrix::from_fn(idx.len(), idx.len(), |r, c| self.matrix[(idx[r], idx[c])].clone());
        for (r, _) in (0..self.matrix.rows()).enumerate().filter(|(r, _)| !idx.contains(r)) {
            if idx.iter().any(|&c| !self.matrix[(r, c)].is_zero()) {
                return Err(IsogenyError::Shape("summands are not preserved".into()));
            }
        }
        Self::new(sub.clone(), sub, m)
    }
}

/// `f^t f`, an endomorphism of the source.
pub fn compose_transpose(f: &IntegerGModuleMap) -> Result<IntegerGModuleMap, IsogenyError> {
    if !f.matrix.is_square() {
        return Err(IsogenyError::Shape("f^t f is only formed for square f".into()));
    }
    f.transpose().compose(f)
}

impl fmt::Display for IntegerGModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.matrix.rows() {
            let row: Vec<String> = self.matrix.row(r).iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
