//! Parity predictions for ranks in Borel, false Tate and dihedral towers,
//! assembled from local curve data.

mod borel;
mod dihedral;
mod height;
mod ladder;
mod tower;

pub use borel::{borel_parity, s3_theorem_parity, tamagawa_quotient_class, SELMER_COMBINATION};
pub use dihedral::{dihedral_parity, DihedralVerdict};
pub use height::{height_block, height_block_identity_check};
pub use ladder::{false_tate_ladder, LadderLayer};
pub use tower::{Family, TowerDescription};

use std::fmt;
use std::ops::Add;

use thiserror::Error;

use crate::local_curve::{LocalError, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    #[must_use]
    pub fn from_bit(bit: i64) -> Self {
        if bit.rem_euclid(2) == 0 {
            Self::Even
        } else {
            Self::Odd
        }
    }

    /// Even iff the root number is `+1`.
    #[must_use]
    pub fn from_sign(w: Sign) -> Self {
        if w.is_minus() {
            Self::Odd
        } else {
            Self::Even
        }
    }

    #[must_use]
    pub fn bit(self) -> u8 {
        u8::from(self == Self::Odd)
    }

    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::Even => "even",
            Self::Odd => "odd",
        }
    }

    #[must_use]
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "even" | "0" => Some(Self::Even),
            "odd" | "1" => Some(Self::Odd),
            _ => None,
        }
    }
}

impl Add for Parity {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        Self::from_bit(i64::from(self.bit() + other.bit()))
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which computation a verdict rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Evidence {
    TamagawaSide,
    RootNumberSide,
    Both,
}

impl Evidence {
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::TamagawaSide => "tamagawa_side",
            Self::RootNumberSide => "root_number_side",
            Self::Both => "both",
        }
    }

    #[must_use]
    pub fn parse(s: &str) -> Option<Self> {
        [Self::TamagawaSide, Self::RootNumberSide, Self::Both].into_iter().find(|e| e.name() == s)
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The parity of a combination of ranks, the evidence for it and the
/// assumptions it is conditional on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityVerdict {
    pub combination: String,
    pub parity: Parity,
    pub evidence: Evidence,
    pub assumptions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParityError {
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error("{combination}: Tamagawa side gives {tamagawa}, root numbers give {root}")]
    Inconsistent { combination: String, tamagawa: Parity, root: Parity },
    #[error("rejected: {0}")]
    Rejected(String),
    #[error("neither side is computable: {0}")]
    Undetermined(String),
}

/// Local failures that make one side unavailable rather than the whole
/// computation invalid.
pub(crate) fn is_gap(e: &LocalError) -> bool {
    matches!(e, LocalError::Unsupported { .. } | LocalError::TamagawaUnknown { .. })
}
