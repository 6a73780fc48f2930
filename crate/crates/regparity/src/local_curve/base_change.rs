use super::data::{Kodaira, LocalCurveData, PlaceKind, ReductionType, Tamagawa};
use super::LocalError;
use crate::arith::valuation_u64;

/// Extra input needed to base change potentially multiplicative reduction
/// through an extension of even ramification degree and odd residue degree:
/// whether the curve becomes split there.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AdditiveHint {
    pub pot_mult_split: bool,
}

/// Base change of semistable data to an extension with ramification degree
/// `e` and residue degree `f`.
pub fn base_change_semistable(d: &LocalCurveData, e: u32, f: u32) -> Result<LocalCurveData, LocalError> {
    if d.reduction.is_additive() {
        return Err(LocalError::Unsupported {
            place: d.label.clone(),
            reason: "additive reduction needs explicit data over the extension".into(),
        });
    }
    base_change(d, e, f, AdditiveHint::default())
}

/// Base change to an extension with invariants `(e, f)`.
///
/// Potentially good reduction is handled in residue characteristic at
/// least 5, where the type over the extension is read off from
/// `e * ord_delta mod 12`. Potentially multiplicative reduction becomes
/// `I_{en}*` for odd `e` and multiplicative for even `e`.
pub fn base_change(d: &LocalCurveData, e: u32, f: u32, hint: AdditiveHint) -> Result<LocalCurveData, LocalError> {
    assert!(e >= 1 && f >= 1, "ramification and residue degrees are positive");
    if d.kind != PlaceKind::Finite {
        let mut out = d.clone();
        if d.kind == PlaceKind::Real && e * f == 2 {
            out.kind = PlaceKind::Complex;
        }
        return Ok(out);
    }
    let q = d.residue_size.checked_pow(f).ok_or_else(|| LocalError::InvalidData {
        place: d.label.clone(),
        message: "residue field too large".into(),
    })?;
    let mut out = d.clone();
    out.residue_size = q;
    out.w_override = None;
    let e64 = u64::from(e);
    let (reduction, ord, tamagawa, drop) = match d.reduction {
        ReductionType::Good => (ReductionType::Good, 0, Tamagawa::Exact(1), 0),
        ReductionType::SplitMult => {
            let n = e * d.ord_delta;
            (ReductionType::SplitMult, n, Tamagawa::Exact(u64::from(n)), 0)
        }
        ReductionType::NonsplitMult => {
            let n = e * d.ord_delta;
            if f.is_multiple_of(2) {
                (ReductionType::SplitMult, n, Tamagawa::Exact(u64::from(n)), 0)
            } else {
                (ReductionType::NonsplitMult, n, Tamagawa::Exact(if n.is_multiple_of(2) { 2 } else { 1 }), 0)
            }
        }
        ReductionType::AdditivePotMult => {
            if d.residue_char < 3 {
                return Err(LocalError::Unsupported {
                    place: d.label.clone(),
                    reason: "potentially multiplicative base change in residue characteristic 2".into(),
                });
            }
            let n = d.ord_delta - 6;
            if e % 2 == 1 {
                (ReductionType::AdditivePotMult, e * n + 6, Tamagawa::DividesFour, i64::from((e - 1) / 2))
            } else if f.is_multiple_of(2) || hint.pot_mult_split {
                (ReductionType::SplitMult, e * n, Tamagawa::Exact(u64::from(e * n)), i64::from(e / 2))
            } else {
                (ReductionType::NonsplitMult, e * n, Tamagawa::Exact(2), i64::from(e / 2))
            }
        }
        ReductionType::AdditivePotGood => {
            if d.residue_char < 5 {
                return Err(LocalError::Unsupported {
                    place: d.label.clone(),
                    reason: "potentially good base change in residue characteristic 2 or 3".into(),
                });
            }
            let total = e64 * u64::from(d.ord_delta);
            let ord = (total % 12) as u32;
            let drop = ((total - u64::from(ord)) / 12) as i64;
            let from = Kodaira::from_pot_good_ord(d.ord_delta);
            let to = Kodaira::from_pot_good_ord(ord);
            let c = match to {
                Some(Kodaira::I(0)) => Tamagawa::Exact(1),
                Some(Kodaira::II | Kodaira::IIStar) => Tamagawa::Exact(1),
                Some(Kodaira::III | Kodaira::IIIStar) => Tamagawa::Exact(2),
                Some(Kodaira::IV | Kodaira::IVStar) if f.is_multiple_of(2) => Tamagawa::Exact(3),
                Some(Kodaira::IV | Kodaira::IVStar) if matches!(from, Some(Kodaira::IV | Kodaira::IVStar)) => d.tamagawa,
                Some(Kodaira::IV | Kodaira::IVStar) => Tamagawa::OneOrThree,
                _ => Tamagawa::DividesFour,
            };
            let red = if ord == 0 { ReductionType::Good } else { ReductionType::AdditivePotGood };
            (red, ord, c, drop)
        }
    };
    out.reduction = reduction;
    out.ord_delta = ord;
    out.tamagawa = tamagawa;
    out.omega_disc = i64::from(e) * d.omega_disc - drop;
    out.kodaira = match reduction {
        ReductionType::Good => Some(Kodaira::I(0)),
        ReductionType::SplitMult | ReductionType::NonsplitMult => Some(Kodaira::I(ord)),
        ReductionType::AdditivePotMult => Some(Kodaira::IStar(ord - 6)),
        ReductionType::AdditivePotGood => Kodaira::from_pot_good_ord(ord),
    };
    Ok(out)
}

/// `ord_p` of `c_v |omega/omega_min|_v`; zero at infinite places.
pub fn c_contribution(d: &LocalCurveData, p: u64) -> Result<i64, LocalError> {
    if d.kind != PlaceKind::Finite {
        return Ok(0);
    }
    let c = d.tamagawa.ord(p).ok_or_else(|| LocalError::TamagawaUnknown { place: d.label.clone(), prime: p })?;
    let q = i64::from(valuation_u64(d.residue_size, p));
    Ok(i64::from(c) - d.omega_disc * q)
}

/// `ord_p(prod C_v(numerator) / prod C_v(denominator)) mod 2`.
pub fn c_quotient_ord_parity(p: u64, numerator: &[LocalCurveData], denominator: &[LocalCurveData]) -> Result<u8, LocalError> {
    let sum = |places: &[LocalCurveData]| places.iter().map(|d| c_contribution(d, p)).sum::<Result<i64, _>>();
    Ok((sum(numerator)? - sum(denominator)?).rem_euclid(2) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semistable_rules() {
        let split = LocalCurveData::finite("11", 11, ReductionType::SplitMult, 5);
        let b = base_change_semistable(&split, 3, 1).unwrap();
        assert_eq!((b.reduction, b.ord_delta, b.tamagawa), (ReductionType::SplitMult, 15, Tamagawa::Exact(15)));
        let good = LocalCurveData::finite("5", 5, ReductionType::Good, 0);
        assert_eq!(base_change_semistable(&good, 4, 2).unwrap().tamagawa, Tamagawa::Exact(1));
        let ns = LocalCurveData::finite("13", 13, ReductionType::NonsplitMult, 1);
        let b = base_change_semistable(&ns, 1, 2).unwrap();
        assert_eq!((b.reduction, b.tamagawa, b.residue_size), (ReductionType::SplitMult, Tamagawa::Exact(1), 169));
        let b = base_change_semistable(&ns, 2, 1).unwrap();
        assert_eq!((b.reduction, b.tamagawa), (ReductionType::NonsplitMult, Tamagawa::Exact(2)));
        let add = LocalCurveData::finite("7", 7, ReductionType::AdditivePotGood, 3);
        assert!(base_change_semistable(&add, 2, 1).is_err());
    }

    #[test]
    fn additive_rules() {
        let iii = LocalCurveData::finite("7", 7, ReductionType::AdditivePotGood, 3);
        let b = base_change(&iii, 3, 1, AdditiveHint::default()).unwrap();
        assert_eq!((b.ord_delta, b.omega_disc, b.kodaira), (9, 0, Some(Kodaira::IIIStar)));
        let b = base_change(&iii, 4, 1, AdditiveHint::default()).unwrap();
        assert_eq!((b.reduction, b.omega_disc), (ReductionType::Good, -1));
        let pm = LocalCurveData::finite("5", 5, ReductionType::AdditivePotMult, 8);
        let b = base_change(&pm, 3, 1, AdditiveHint::default()).unwrap();
        assert_eq!((b.ord_delta, b.omega_disc), (12, -1));
        let b = base_change(&pm, 2, 1, AdditiveHint { pot_mult_split: true }).unwrap();
        assert_eq!((b.reduction, b.ord_delta, b.tamagawa), (ReductionType::SplitMult, 4, Tamagawa::Exact(4)));
    }

    #[test]
    fn quotient_parity() {
        let a = LocalCurveData::finite("11", 11, ReductionType::SplitMult, 3);
        let b = LocalCurveData::finite("11", 11, ReductionType::SplitMult, 1);
        assert_eq!(c_quotient_ord_parity(3, std::slice::from_ref(&a), std::slice::from_ref(&b)).unwrap(), 1);
        assert_eq!(c_quotient_ord_parity(3, std::slice::from_ref(&a), std::slice::from_ref(&a)).unwrap(), 0);
        let w = LocalCurveData::finite("3", 3, ReductionType::Good, 0).with_omega_disc(1);
        assert_eq!(c_quotient_ord_parity(3, &[w], &[]).unwrap(), 1);
    }
}
