//! Rational representations: permutation characters, relations between
//! permutation modules, decomposition into Q-irreducibles, invariant inner
//! products and fixed subspaces.

mod decompose;
mod module;
mod relations;

pub use decompose::{
    class_inner, cyclic_class_count, decompose_gset, decompose_perm_module, perm_module, rational_irreducibles, Decomposition,
    Irreducible, IrreducibleSet, Piece, DEFAULT_SEED, DIMENSION_CAP, SAMPLE_BUDGET,
};
pub use module::{
    averaged_form, fixed_subspace, gram_det_on_fixed, invariant_inner_product, random_inner_product, rng, word_of,
    InnerProductGram, RationalModule,
};
pub use relations::{character_matrix, format_terms, is_relation, perm_character, relation_lattice, RelationVector};

use thiserror::Error;

use crate::group_core::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0}")]
    Shape(String),
    #[error("irreducibility undecided for a {dim}-dimensional piece with {end_dim}-dimensional commutant; sample budget exhausted")]
    Undecided { dim: usize, end_dim: usize },
    #[error("module dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("found {found} irreducible representations, expected {expected}")]
    Incomplete { found: usize, expected: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::{presets, subgroup_classes};
    use crate::linalg::{rat, ratio, QMatrix};

    #[test]
    fn s3_perm_module_splits() {
        let g = presets::symmetric(3).unwrap();
        let classes = subgroup_classes(&g).unwrap();
        let d = decompose_perm_module(&g, &classes[1].rep, DEFAULT_SEED).unwrap();
        let dims: Vec<(usize, usize)> = d.summands().iter().map(|(p, m)| (p.dim(), *m)).collect();
        let mut sorted = dims.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![(1, 1), (2, 1)]);
        assert_eq!(perm_character(&g, &classes[1].rep).unwrap(), vec![3, 1, 0]);
    }

    #[test]
    fn regular_s3_has_isotypic_block() {
        let g = presets::symmetric(3).unwrap();
        let classes = subgroup_classes(&g).unwrap();
        let d = decompose_perm_module(&g, &classes[0].rep, DEFAULT_SEED).unwrap();
        let mut dims: Vec<(usize, usize)> = d.summands().iter().map(|(p, m)| (p.dim(), *m)).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![(1, 1), (1, 1), (2, 2)]);
    }

    #[test]
    fn s3_relations() {
        let g = presets::symmetric(3).unwrap();
        let classes = subgroup_classes(&g).unwrap();
        let lattice = relation_lattice(&g, &classes).unwrap();
        assert_eq!(lattice.len(), 1);
        let theta = RelationVector(vec![1, -2, -1, 2]);
        assert!(is_relation(&g, &classes, &theta).unwrap());
        assert!(!is_relation(&g, &classes, &RelationVector(vec![1, 0, 0, -1])).unwrap());
        assert!(lattice[0] == theta || lattice[0] == theta.scale(-1));
        assert_eq!(theta.display(&classes), "1-2C2-C3+2S3");
    }

    #[test]
    fn cyclic_group_has_no_relations() {
        let g = presets::cyclic(5).unwrap();
        let classes = subgroup_classes(&g).unwrap();
        assert!(relation_lattice(&g, &classes).unwrap().is_empty());
    }

    #[test]
    fn s3_irreducibles_and_gram() {
        let g = presets::symmetric(3).unwrap();
        let classes = subgroup_classes(&g).unwrap();
        let irr = rational_irreducibles(&g, &classes, DEFAULT_SEED).unwrap();
        let names: Vec<&str> = irr.irreducibles.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["1", "eps", "rho2"]);
        let triv = &irr.irreducibles[0].module;
        let b = invariant_inner_product(&g, triv).unwrap();
        assert_eq!(b.0, QMatrix::from_i64_rows(&[vec![6]]));
        assert_eq!(gram_det_on_fixed(&g, triv, &classes[3].rep, &b).unwrap(), rat(1));
        let delta = &irr.irreducibles[2].module;
        assert_eq!(fixed_subspace(&g, delta, &classes[3].rep).unwrap().cols(), 0);
        assert_eq!(fixed_subspace(&g, delta, &classes[1].rep).unwrap().cols(), 1);
        let bd = invariant_inner_product(&g, delta).unwrap();
        assert!(bd.is_valid_for(delta));
        assert!(delta.verify_action(&g).unwrap());
        assert_eq!(delta.certify_by_commutant(), Some(true));
        let _ = ratio(1, 2);
    }
}
