use num_bigint::BigInt;
use num_rational::BigRational;

use super::{is_gap, Evidence, Family, Parity, ParityError, ParityVerdict, TowerDescription};
use crate::local_curve::{Field, LocalError, Sign, Tamagawa};
use crate::regconst::SquareClass;

/// The mixed 2- and 3-Selmer combination whose parity is `w(E/K)` when
/// `F = K(E[2])` has group `S_3`.
pub const SELMER_COMBINATION: &str = "rk_3(E/K)+(rk_3(E/M)-rk_2(E/M))+(rk_3(E/L)-rk_2(E/L))";

const BOREL_COMBINATION: &str = "rk(E/K)+rk(E/M)+rk(E/L)";

fn borel_assumptions(p: u64) -> Vec<String> {
    vec![
        format!("Sha(E/F)[{p}^inf] finite"),
        "E semistable at places above 2 and 3 that ramify in L/K".into(),
    ]
}

/// One side summed over places: `Ok(None)` when some place cannot be
/// evaluated, an error when the data is invalid.
fn side<T>(
    tower: &TowerDescription,
    per_place: impl Fn(&crate::local_curve::Scenario) -> Result<T, LocalError>,
) -> Result<Result<Vec<T>, LocalError>, ParityError> {
    let mut out = Vec::new();
    for s in &tower.places {
        match per_place(s) {
            Ok(x) => out.push(x),
            Err(e) if is_gap(&e) => return Ok(Err(e)),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Ok(out))
}

/// Parity of `rk(E/K)+rk(E/M)+rk(E/L)` in a Borel tower, from the Tamagawa
/// quotient and, where every local root number is available, from root
/// numbers as well. The two must agree.
pub fn borel_parity(tower: &TowerDescription) -> Result<ParityVerdict, ParityError> {
    let p = match tower.family {
        Family::Borel(p) => p,
        Family::S3 => 3,
        Family::Dihedral(_) => return Err(ParityError::Rejected("borel_parity needs a Borel tower".into())),
    };
    for s in &tower.places {
        s.check_hypotheses()?;
    }
    let tamagawa = side(tower, |s| s.tamagawa_side())?.map(|bits| Parity::from_bit(bits.iter().map(|&b| i64::from(b)).sum()));
    let root = side(tower, |s| s.root_side())?.map(|ws| Parity::from_sign(ws.into_iter().product()));
    let (parity, evidence) = match (tamagawa, root) {
        (Ok(t), Ok(r)) if t == r => (t, Evidence::Both),
        (Ok(t), Ok(r)) => {
            return Err(ParityError::Inconsistent { combination: BOREL_COMBINATION.into(), tamagawa: t, root: r });
        }
        (Ok(t), Err(_)) => (t, Evidence::TamagawaSide),
        (Err(_), Ok(r)) => (r, Evidence::RootNumberSide),
        (Err(a), Err(b)) => return Err(ParityError::Undetermined(format!("{a}; {b}"))),
    };
    Ok(ParityVerdict { combination: BOREL_COMBINATION.into(), parity, evidence, assumptions: borel_assumptions(p) })
}

/// The `S_3` case: the Borel verdict for `p = 3`, and when asked the parity
/// of [`SELMER_COMBINATION`] from `w(E/K)`. The 2-Selmer ranks in it are
/// not computed here.
pub fn s3_theorem_parity(
    tower: &TowerDescription,
    with_selmer: bool,
) -> Result<(ParityVerdict, Option<ParityVerdict>), ParityError> {
    if tower.family != Family::S3 && tower.family != Family::Borel(3) {
        return Err(ParityError::Rejected(format!("{} is not an S3 tower", tower.family)));
    }
    let main = borel_parity(tower)?;
    if !with_selmer {
        return Ok((main, None));
    }
    let w_k: Sign = tower.places.iter().map(|s| s.root_product(Field::K)).product::<Result<Sign, _>>()?;
    let selmer = ParityVerdict {
        combination: SELMER_COMBINATION.into(),
        parity: Parity::from_sign(w_k),
        evidence: Evidence::RootNumberSide,
        assumptions: vec!["F = K(E[2])".into(), "rk_2(E/M) and rk_2(E/L) are external inputs".into()],
    };
    Ok((main, Some(selmer)))
}

/// `prod_v C_v` over the primes of `field`, where `C_v = c_v |omega/omega_min|_v`.
fn c_product(tower: &TowerDescription, field: Field) -> Result<BigRational, ParityError> {
    let mut out = BigRational::from_integer(1.into());
    for s in &tower.places {
        for d in s.places_over(field)? {
            if !d.is_finite() {
                continue;
            }
            let Tamagawa::Exact(c) = d.tamagawa else {
                return Err(LocalError::TamagawaUnknown { place: d.label.clone(), prime: 0 }.into());
            };
            let q = BigRational::from_integer(BigInt::from(d.residue_size));
            out *= BigRational::from_integer(c.into()) * q.pow(-d.omega_disc as i32);
        }
    }
    Ok(out)
}

/// `prod C(E/field)^k` over the numerator divided by the same over the
/// denominator, as a square class.
pub fn tamagawa_quotient_class(
    tower: &TowerDescription,
    numerator: &[(Field, u32)],
    denominator: &[(Field, u32)],
) -> Result<SquareClass, ParityError> {
    let mut value = BigRational::from_integer(1.into());
    for &(k, e) in numerator {
        value *= c_product(tower, k)?.pow(e as i32);
    }
    for &(k, e) in denominator {
        value /= c_product(tower, k)?.pow(e as i32);
    }
    Ok(SquareClass::from_rat(&value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_curve::{parse_curve_file, Affine, LocalCurveData, LocalGalois, ReductionType, Scenario};

    fn x1_11() -> crate::local_curve::CurveFile {
        parse_curve_file("[[place]]\nplace = \"inf\"\nkind = \"real\"\n\n[[place]]\nplace = \"11\"\nkind = \"finite\"\np = 11\ntype = \"split_mult\"\nord_delta = 1\n").unwrap()
    }

    #[test]
    fn x1_11_parity_follows_eleven() {
        for m in 2..40u64 {
            let Ok(t) = TowerDescription::borel_over_q(&x1_11(), 3, m) else { continue };
            let v = borel_parity(&t).unwrap();
            assert_eq!(v.evidence, Evidence::Both);
            assert_eq!(v.parity == Parity::Odd, m % 11 == 0, "m = {m}");
        }
    }

    #[test]
    fn x1_11_quotient() {
        let t = TowerDescription::borel_over_q(&x1_11(), 3, 22).unwrap();
        let q = tamagawa_quotient_class(&t, &[(Field::M, 1), (Field::L, 2)], &[(Field::F, 1), (Field::K, 2)]).unwrap();
        assert_eq!(q.to_string(), "3");
        let t = TowerDescription::borel_over_q(&x1_11(), 3, 2).unwrap();
        let q = tamagawa_quotient_class(&t, &[(Field::M, 1), (Field::L, 2)], &[(Field::F, 1), (Field::K, 2)]).unwrap();
        assert!(q.is_one());
    }

    #[test]
    fn good_everywhere_is_even() {
        let galois = LocalGalois::new(5, &[], Affine::translation(1)).unwrap();
        let place = LocalCurveData::finite("31", 31, ReductionType::Good, 0);
        let t = TowerDescription::new(Family::Borel(5), vec![Scenario { galois, place, hint: Default::default() }]).unwrap();
        assert_eq!(borel_parity(&t).unwrap().parity, Parity::Even);
    }

    #[test]
    fn s3_split_prime_ramified_in_f_over_m() {
        let galois = LocalGalois::new(3, &[Affine::translation(1)], Affine::scaling(2)).unwrap();
        let place = LocalCurveData::finite("5", 5, ReductionType::SplitMult, 1);
        let t = TowerDescription::new(Family::S3, vec![Scenario { galois, place, hint: Default::default() }]).unwrap();
        let (v, sel) = s3_theorem_parity(&t, true).unwrap();
        assert_eq!(v.parity, Parity::Odd);
        let sel = sel.unwrap();
        assert_eq!(sel.combination, SELMER_COMBINATION);
        assert_eq!(sel.parity, Parity::Odd);
    }
}
