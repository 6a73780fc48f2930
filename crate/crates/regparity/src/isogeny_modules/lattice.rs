use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IsogenyError;
use crate::group_core::{CosetAction, PermGroup, Subgroup, SubgroupClass};
use crate::linalg::ZMatrix;
use crate::repq::{word_of, RationalModule};

/// One summand `Z[G/H]` of a permutation lattice.
#[derive(Clone, Debug)]
pub struct LatticeSummand {
    pub label: String,
    pub subgroup: Subgroup,
    action: CosetAction,
}

impl LatticeSummand {
    #[must_use]
    pub fn rank(&self) -> usize {
        self.action.degree()
    }

    /// Coset representatives as element indices, in basis order.
    #[must_use]
    pub fn reps(&self) -> &[usize] {
        &self.action.reps
    }
}

/// `Z[G/H_1] + ... + Z[G/H_k]` with the basis `r x_i` for `r` running over
/// coset representatives in Schreier order.
#[derive(Clone, Debug)]
pub struct PermLattice {
    group: Arc<PermGroup>,
    summands: Vec<LatticeSummand>,
    offsets: Vec<usize>,
}

impl PartialEq for PermLattice {
    fn eq(&self, other: &Self) -> bool {
        self.group.gens() == other.group.gens()
            && self.summands.len() == other.summands.len()
            && self.summands.iter().zip(&other.summands).all(|(a, b)| a.subgroup == b.subgroup)
    }
}

impl Eq for PermLattice {}

impl PermLattice {
    pub fn new(group: Arc<PermGroup>, summands: Vec<(String, Subgroup)>) -> Result<Self, IsogenyError> {
        let mut out = Vec::new();
        let mut offsets = Vec::new();
        let mut at = 0;
        for (label, subgroup) in summands {
            let action = CosetAction::new(&group, &subgroup)?;
            offsets.push(at);
            at += action.degree();
            out.push(LatticeSummand { label, subgroup, action });
        }
        Ok(Self { group, summands: out, offsets })
    }

    #[must_use]
    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    #[must_use]
    pub fn summands(&self) -> &[LatticeSummand] {
        &self.summands
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.summands.iter().map(LatticeSummand::rank).sum()
    }

    #[must_use]
    pub fn offset(&self, summand: usize) -> usize {
        self.offsets[summand]
    }

    /// Index of `x * x_i` in the basis, for a group element `x`.
    #[must_use]
    pub fn index_of(&self, summand: usize, x: usize) -> usize {
        self.offsets[summand] + self.summands[summand].action.coset_of(x)
    }

    /// The sublattice made of the given summands.
    #[must_use]
    pub fn sub(&self, summands: &[usize]) -> Self {
        let picked: Vec<LatticeSummand> = summands.iter().map(|&i| self.summands[i].clone()).collect();
        let offsets = picked.iter().scan(0, |at, s| Some(std::mem::replace(at, *at + s.rank()))).collect();
        Self { group: Arc::clone(&self.group), summands: picked, offsets }
    }

    #[must_use]
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        let offsets = summands.iter().scan(0, |at, s| Some(std::mem::replace(at, *at + s.rank()))).collect();
        Self { group: Arc::clone(&self.group), summands, offsets }
    }

    /// The permutation matrix of the element with index `x`.
    pub fn element_matrix(&self, x: usize) -> Result<ZMatrix, IsogenyError> {
        let e = self.group.elements()?;
        let n = self.rank();
        let mut m = ZMatrix::zeros(n, n);
        for (i, s) in self.summands.iter().enumerate() {
            for (k, &r) in s.reps().iter().enumerate() {
                m[(self.index_of(i, e.mul(x, r)), self.offsets[i] + k)] = BigInt::one();
            }
        }
        Ok(m)
    }

    /// Permutation matrices of the group's generators.
    pub fn generator_matrices(&self) -> Result<Vec<ZMatrix>, IsogenyError> {
        let e = self.group.elements()?;
        self.group.gens().iter().map(|g| self.element_matrix(e.index[g])).collect()
    }

    /// `x . v` for an element index `x`.
    pub fn act(&self, x: usize, v: &[BigInt]) -> Result<Vec<BigInt>, IsogenyError> {
        let e = self.group.elements()?;
        let mut out = vec![BigInt::zero(); v.len()];
        for (i, s) in self.summands.iter().enumerate() {
            for (k, &r) in s.reps().iter().enumerate() {
                out[self.index_of(i, e.mul(x, r))] += &v[self.offsets[i] + k];
            }
        }
        Ok(out)
    }

    /// Basis labels such as `hg^2*x3`, from the BFS words of the coset
    /// representatives in the generators `g, h, ...`.
    pub fn basis_labels(&self) -> Result<Vec<String>, IsogenyError> {
        let e = self.group.elements()?;
        let names = generator_names(self.group.gens().len());
        let mut out = Vec::new();
        for s in &self.summands {
            for &r in s.reps() {
                let word = compress(&word_of(e, r), &names);
                out.push(if word.is_empty() { s.label.clone() } else { format!("{word}*{}", s.label) });
            }
        }
        Ok(out)
    }

    /// The lattice tensored with Q, as a module for the generators.
    pub fn rational_module(&self) -> Result<RationalModule, IsogenyError> {
        let gens = self.generator_matrices()?.iter().map(ZMatrix::to_rational).collect();
        Ok(RationalModule::new(self.rank(), gens)?)
    }

    /// Permutation character, indexed by conjugacy classes.
    pub fn character(&self) -> Result<Vec<i64>, IsogenyError> {
        let e = self.group.elements()?;
        Ok(e.classes
            .iter()
            .map(|c| {
                self.summands
                    .iter()
                    .map(|s| s.reps().iter().filter(|&&r| s.action.coset_of(e.mul(c.rep, r)) == s.action.coset_of(r)).count() as i64)
                    .sum()
            })
            .collect())
    }

    /// Number of summands in each conjugacy class of subgroups.
    pub fn class_counts(&self, classes: &[SubgroupClass]) -> Result<Vec<i64>, IsogenyError> {
        let e = self.group.elements()?;
        let mut counts = vec![0; classes.len()];
        for s in &self.summands {
            let conjugates: HashSet<Vec<usize>> = (0..e.len()).map(|g| s.subgroup.conjugate(e, g).elements().to_vec()).collect();
            let c = classes
                .iter()
                .position(|c| conjugates.contains(c.rep.elements()))
                .ok_or_else(|| IsogenyError::Shape(format!("summand {} matches no subgroup class", s.label)))?;
            counts[c] += 1;
        }
        Ok(counts)
    }

    /// Z-basis of the G-equivariant endomorphisms: one 0/1 matrix per
    /// orbit of `G` on pairs of basis vectors.
    pub fn endomorphism_basis(&self) -> Result<Vec<ZMatrix>, IsogenyError> {
        let e = self.group.elements()?;
        let n = self.rank();
        let gens: Vec<usize> = self.group.gens().iter().map(|g| e.index[g]).collect();
        let images: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let mut img = vec![0; n];
                for (i, s) in self.summands.iter().enumerate() {
                    for (k, &r) in s.reps().iter().enumerate() {
                        img[self.offsets[i] + k] = self.index_of(i, e.mul(g, r));
                    }
                }
                img
            })
            .collect();
        let mut seen = vec![false; n * n];
        let mut out = Vec::new();
        for start in 0..n * n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut m = ZMatrix::zeros(n, n);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let (a, b) = (x / n, x % n);
                m[(a, b)] = BigInt::one();
                for img in &images {
                    let y = img[a] * n + img[b];
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            out.push(m);
        }
        Ok(out)
    }
}

pub(crate) fn generator_names(k: usize) -> Vec<String> {
    if k <= 2 {
        ["g", "h"].iter().take(k).map(|s| s.to_string()).collect()
    } else {
        (0..k).map(|i| format!("s{i}")).collect()
    }
}

/// Generator word (leftmost factor first) with runs written as powers.
fn compress(word: &[usize], names: &[String]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        out.push_str(&names[word[i]]);
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}
