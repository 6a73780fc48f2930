pub mod arith;
pub mod linalg;
pub mod poly;
pub mod group_core;
pub mod repq;
pub mod regconst;
pub mod local_curve;
pub mod parity_engine;
pub mod isogeny_modules;

pub mod selftest;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/regulator_constants.md")]
    mod regulator_constants {}
    #[doc = include_str!("../../../book/src/local_data.md")]
    mod local_data {}
    #[doc = include_str!("../../../book/src/parity.md")]
    mod parity {}
    #[doc = include_str!("../../../book/src/isogenies.md")]
    mod isogenies {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

use thiserror::Error;

/// Any failure from the library's modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] group_core::GroupError),
    #[error(transparent)]
    Rep(#[from] repq::RepError),
    #[error(transparent)]
    Reg(#[from] regconst::RegError),
    #[error(transparent)]
    Local(#[from] local_curve::LocalError),
    #[error(transparent)]
    Parity(#[from] parity_engine::ParityError),
    #[error(transparent)]
    Isogeny(#[from] isogeny_modules::IsogenyError),
    #[error("{0}")]
    Input(String),
}
