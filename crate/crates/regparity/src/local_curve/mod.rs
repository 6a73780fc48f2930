//! Local data of elliptic curves: root numbers, base change, Tamagawa
//! quotients and the local comparison between the two in Borel extensions.

mod base_change;
mod data;
mod file;
mod galois;
mod root;
mod scenario;
mod tower;

pub use base_change::{base_change, base_change_semistable, c_contribution, c_quotient_ord_parity, AdditiveHint};
pub use data::{prime_of_power, Kodaira, LocalCurveData, PlaceKind, ReductionType, Sign, Tamagawa};
pub use file::{parse_curve_file, parse_tower_file, write_curve_file, write_tower_file, CurveFile, TowerFamily, TowerFile};
pub use galois::{Affine, Field, LocalGalois, PlaceDecomposition};
pub use root::{global_root_number, local_root_number, minus_one_symbol, place_root_number, pot_good_sign};
pub use scenario::{
    equivalence_outcome, scenario_grid, tamagawa_root_equivalence_check, EquivalenceOutcome, Scenario, ScenarioCase,
};
pub use tower::{
    borel_infinite_galois, borel_local_galois, cyclotomic_decomposition, radical_decomposition, radical_infinite_places,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("invalid data at {place}: {message}")]
    InvalidData { place: String, message: String },
    #[error("unsupported at {place}: {reason}")]
    Unsupported { place: String, reason: String },
    #[error("override at {place} says {supplied} but the classifier gives {computed}")]
    OverrideConflict { place: String, computed: Sign, supplied: Sign },
    #[error("Tamagawa number at {place} is not determined at {prime}")]
    TamagawaUnknown { place: String, prime: u64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid local Galois data: {0}")]
    InvalidGalois(String),
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}
