//! Integral permutation lattices `Z[G/H_1] + ... + Z[G/H_k]`, G-equivariant
//! maps between them, the explicit Borel and dihedral isogenies, and the
//! Q-parity of a self-isogeny.

mod borel;
mod dihedral;
mod lattice;
mod map;
mod newton;
mod qparity;

pub use borel::{
    alpha_factorization, alpha_factorization_with, borel_blocks, borel_blocks_closed_form, borel_det_formula, build_borel_f,
    in_printed_basis, matches_printed_p3, AlphaFactorization, BorelBlocks, BorelSetup, PRINTED_F3, PRINTED_FTF3,
    PRINTED_V1_BASIS, PRINTED_V2_BASIS,
};
pub use dihedral::{build_dihedral_maps, dihedral_alpha2_det_formula, dihedral_blocks_closed_form, DihedralMaps};
pub use lattice::{LatticeSummand, PermLattice};
pub use newton::newton_polygon_single_slope;
pub use qparity::{lattice_relation, q_parity, q_parity_endo, regconst_agreement, Agreement, Gate, QParityExpression, QParityTerm};
pub use map::{compose_transpose, power, GroupRingElement, IntegerGModuleMap};

use thiserror::Error;

use crate::group_core::GroupError;
use crate::regconst::RegError;
use crate::repq::RepError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsogenyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Reg(#[from] RegError),
    #[error("{0}")]
    Shape(String),
    #[error("map is not G-equivariant: {0}")]
    NotEquivariant(String),
    #[error("image of {0} is not fixed by its stabilizer")]
    NotWellDefined(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("cannot certify Q-parity on {component}: {reason}")]
    Refused { component: String, reason: String },
}
