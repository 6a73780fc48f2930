use super::data::{LocalCurveData, PlaceKind, ReductionType, Sign};
use super::LocalError;

/// `(-1)^{floor(ord_delta * q / 12)}`, the potentially good case.
#[must_use]
pub fn pot_good_sign(ord_delta: u32, q: u64) -> Sign {
    Sign::from_parity((u128::from(ord_delta) * u128::from(q) / 12) % 2 == 1)
}

/// `(-1/k)` for a residue field of odd size `q`.
#[must_use]
pub fn minus_one_symbol(q: u64) -> Sign {
    Sign::from_parity(q % 4 == 3)
}

/// Local root number from reduction data. Additive reduction in residue
/// characteristic 2 (and 3 when potentially good) is not covered and must
/// be supplied as an override.
pub fn local_root_number(d: &LocalCurveData) -> Result<Sign, LocalError> {
    if d.kind != PlaceKind::Finite {
        return Ok(Sign::Minus);
    }
    let unsupported = |reason: &str| LocalError::Unsupported { place: d.label.clone(), reason: reason.into() };
    match d.reduction {
        ReductionType::SplitMult => Ok(Sign::Minus),
        ReductionType::Good | ReductionType::NonsplitMult => Ok(Sign::Plus),
        ReductionType::AdditivePotMult if d.residue_char < 3 => {
            Err(unsupported("additive reduction in residue characteristic 2; supply w_override"))
        }
        ReductionType::AdditivePotMult => Ok(minus_one_symbol(d.residue_size)),
        ReductionType::AdditivePotGood if d.residue_char < 5 => {
            Err(unsupported("potentially good additive reduction in residue characteristic 2 or 3; supply w_override"))
        }
        ReductionType::AdditivePotGood => Ok(pot_good_sign(d.ord_delta, d.residue_size)),
    }
}

/// Root number of one place, preferring the classifier and falling back on
/// a supplied override. A disagreement between the two is an error.
pub fn place_root_number(d: &LocalCurveData) -> Result<Sign, LocalError> {
    match (local_root_number(d), d.w_override) {
        (Ok(w), Some(o)) if w != o => Err(LocalError::OverrideConflict { place: d.label.clone(), computed: w, supplied: o }),
        (Ok(w), _) => Ok(w),
        (Err(LocalError::Unsupported { .. }), Some(o)) => Ok(o),
        (Err(e), _) => Err(e),
    }
}

/// Product of the local root numbers.
pub fn global_root_number(places: &[LocalCurveData]) -> Result<Sign, LocalError> {
    places.iter().map(place_root_number).product()
}
