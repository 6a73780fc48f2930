use std::fmt::Write as _;

use crate::group_core::{CosetAction, PermGroup, Subgroup, SubgroupClass};
use crate::linalg::ZMatrix;

use super::RepError;

/// Fixed-point counts of each conjugacy class on `G/H`.
pub fn perm_character(g: &PermGroup, h: &Subgroup) -> Result<Vec<i64>, RepError> {
    let e = g.elements()?;
    let action = CosetAction::new(g, h)?;
    Ok(e
        .classes
        .iter()
        .map(|c| (0..action.degree()).filter(|&i| action.coset_of(e.mul(c.rep, action.reps[i])) == i).count() as i64)
        .collect())
}

/// Rows are subgroup classes, columns conjugacy classes of elements.
pub fn character_matrix(g: &PermGroup, classes: &[SubgroupClass]) -> Result<ZMatrix, RepError> {
    let rows = classes.iter().map(|c| perm_character(g, &c.rep)).collect::<Result<Vec<_>, _>>()?;
    Ok(ZMatrix::from_i64_rows(&rows))
}

/// Integer combination of subgroup classes, indexed like the class list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationVector(pub Vec<i64>);

impl RelationVector {
    #[must_use]
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    #[must_use]
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    #[must_use]
    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    /// Virtual permutation character `sum n_H * 1_H^G`.
    #[must_use]
    pub fn virtual_character(&self, chars: &ZMatrix) -> Vec<i64> {
        (0..chars.cols())
            .map(|c| {
                self.0
                    .iter()
                    .enumerate()
                    .map(|(r, &n)| n * i64::try_from(&chars[(r, c)]).expect("small character value"))
                    .sum()
            })
            .collect()
    }

    /// Display in class order, e.g. `1-2C2-C3+2S3`.
    #[must_use]
    pub fn display(&self, classes: &[SubgroupClass]) -> String {
        format_terms(self.0.iter().zip(classes).filter(|(&n, _)| n != 0).map(|(&n, c)| (n, c.label.as_str())))
    }
}

/// Formats signed terms like `2S3+1-2C2-C3`; the trivial subgroup with a
/// coefficient other than one is written `2(1)`.
pub fn format_terms<'a>(terms: impl IntoIterator<Item = (i64, &'a str)>) -> String {
    let mut out = String::new();
    for (n, label) in terms {
        if n < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = n.unsigned_abs();
        match (a, label) {
            (1, l) => out.push_str(l),
            (a, "1") => {
                let _ = write!(out, "{a}(1)");
            }
            (a, l) => {
                let _ = write!(out, "{a}{l}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Whether the virtual permutation character of `v` vanishes.
pub fn is_relation(g: &PermGroup, classes: &[SubgroupClass], v: &RelationVector) -> Result<bool, RepError> {
    if v.0.len() != classes.len() {
        return Err(RepError::Shape(format!("relation has {} entries for {} classes", v.0.len(), classes.len())));
    }
    let chars = character_matrix(g, classes)?;
    Ok(v.virtual_character(&chars).iter().all(|&x| x == 0))
}

/// Saturated integer basis of all relations, in Hermite normal form.
pub fn relation_lattice(g: &PermGroup, classes: &[SubgroupClass]) -> Result<Vec<RelationVector>, RepError> {
    let chars = character_matrix(g, classes)?;
    let kernel = chars.transpose().integer_kernel();
    Ok((0..kernel.rows())
        .map(|r| RelationVector(kernel.row(r).iter().map(|x| i64::try_from(x).expect("small relation coefficient")).collect()))
        .collect())
}
