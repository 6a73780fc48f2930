//! Finite permutation groups: elements, conjugacy classes, subgroup classes
//! and coset actions.

mod group;
mod parse;
mod perm;
pub mod presets;
mod schreier;
mod subgroups;

pub use group::{ConjClass, Elements, PermGroup, ELEMENT_CAP};
pub use parse::{parse_generators, preset};
pub use perm::Perm;
pub use schreier::order as stabilizer_chain_order;
pub use subgroups::{
    structure_label, subgroup_classes, subgroup_classes_with_cap, CosetAction, Subgroup, SubgroupClass, SUBGROUP_CAP,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed generator: {0}")]
    MalformedGenerator(String),
    #[error("group of order {order} exceeds the cap of {cap}; raise the cap to proceed")]
    Capacity { order: u128, cap: u128 },
    #[error("{0} is not an element of the group")]
    NotContained(String),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown group preset '{0}'")]
    UnknownPreset(String),
    #[error("{0}")]
    InvalidParameter(String),
}
