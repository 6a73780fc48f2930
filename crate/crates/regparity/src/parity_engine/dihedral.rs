use super::{is_gap, Evidence, Family, Parity, ParityError, ParityVerdict, TowerDescription};
use crate::arith::valuation_u64;
use crate::local_curve::{base_change, Field, ReductionType};

/// The dihedral verdict with the sets of primes of `M` that carry the parity
/// when `p > 3`, and the rank growth it forces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralVerdict {
    pub verdict: ParityVerdict,
    /// Primes of `M` ramified in `F/M` with split multiplicative reduction.
    pub s1: Vec<String>,
    /// Primes of `M` above `p` ramified in `F/M` with additive reduction,
    /// odd residue degree over `Q_p` and `floor(p ord(Delta)/12)` odd.
    pub s2: Vec<String>,
    /// `rk_p(E/L) >= rk_p(E/K) + rank_jump` when the parity of `rk_p(E/M)`
    /// was supplied and forces it.
    pub rank_jump: Option<u64>,
}

/// Parity of `rk_p(E/M) + (2/(p-1))(rk_p(E/L) - rk_p(E/K))` for
/// `Gal(F/K) = D_{2p}`, from `ord_p C(E/F)/C(E/M)`. For `p > 3` the count
/// `|S_1| + |S_2|` is computed separately and must agree.
pub fn dihedral_parity(tower: &TowerDescription, rk_m: Option<Parity>) -> Result<DihedralVerdict, ParityError> {
    let Family::Dihedral(p) = tower.family else {
        return Err(ParityError::Rejected(format!("{} is not dihedral", tower.family)));
    };
    if p == 2 {
        return Err(ParityError::Rejected("D_4 is not covered; p must be odd".into()));
    }
    let combination = format!("rk_{p}(E/M)+(2/{})(rk_{p}(E/L)-rk_{p}(E/K))", p - 1);
    let mut ord = Ok(0i64);
    for s in &tower.places {
        let local = s.c_ord(Field::F, p).and_then(|f| Ok(f - s.c_ord(Field::M, p)?));
        match (local, &mut ord) {
            (Ok(x), Ok(total)) => *total += x,
            (Err(e), Ok(_)) if is_gap(&e) => ord = Err(e),
            (Err(e), _) if !is_gap(&e) => return Err(e.into()),
            _ => {}
        }
    }
    let (mut s1, mut s2) = (Vec::new(), Vec::new());
    if p > 3 {
        for s in tower.places.iter().filter(|s| s.place.is_finite() && s.galois.inertia_meets_translations()) {
            for (e, f, n) in s.galois.decompose(Field::M).profiles {
                let w = base_change(&s.place, e, f, s.hint)?;
                let names = (0..n).map(|k| format!("{}/M:e{e}f{f}#{k}", s.place.label));
                if w.reduction == ReductionType::SplitMult {
                    s1.extend(names);
                } else if w.reduction.is_additive() && w.residue_char == p {
                    let residue_degree = valuation_u64(w.residue_size, p);
                    if residue_degree % 2 == 1 && (p * u64::from(w.ord_delta) / 12) % 2 == 1 {
                        s2.extend(names);
                    }
                }
            }
        }
    }
    let count = Parity::from_bit((s1.len() + s2.len()) as i64);
    let parity = match ord {
        Ok(x) => {
            let t = Parity::from_bit(x);
            if p > 3 && t != count {
                return Err(ParityError::Inconsistent { combination, tamagawa: t, root: count });
            }
            t
        }
        Err(_) if p > 3 => count,
        Err(e) => return Err(ParityError::Undetermined(e.to_string())),
    };
    let rank_jump = rk_m.and_then(|r| (r + parity == Parity::Odd).then_some((p - 1) / 2));
    let verdict = ParityVerdict { combination, parity, evidence: Evidence::TamagawaSide, assumptions: Vec::new() };
    Ok(DihedralVerdict { verdict, s1, s2, rank_jump })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_curve::{parse_tower_file, Affine, LocalCurveData, LocalGalois, Scenario};

    fn tower(places: Vec<Scenario>) -> TowerDescription {
        TowerDescription::new(Family::Dihedral(5), places).unwrap()
    }

    fn split_19() -> Scenario {
        // 19 = -1 mod 5: inert in M, tamely ramified in F/M.
        let galois = LocalGalois::dihedral(5, &[Affine::translation(1)], Affine::scaling(4)).unwrap();
        Scenario { galois, place: LocalCurveData::finite("19", 19, ReductionType::SplitMult, 1), hint: Default::default() }
    }

    fn additive_5() -> Scenario {
        let galois = LocalGalois::dihedral(5, &[Affine::translation(1), Affine::scaling(4)], Affine::identity()).unwrap();
        Scenario { galois, place: LocalCurveData::finite("5", 5, ReductionType::AdditivePotGood, 2), hint: Default::default() }
    }

    #[test]
    fn one_split_prime_forces_rank_growth() {
        let v = dihedral_parity(&tower(vec![split_19()]), Some(Parity::Even)).unwrap();
        assert_eq!(v.s1.len(), 1);
        assert_eq!(v.verdict.parity, Parity::Odd);
        assert_eq!(v.rank_jump, Some(2));
        assert_eq!(dihedral_parity(&tower(vec![split_19()]), Some(Parity::Odd)).unwrap().rank_jump, None);
    }

    #[test]
    fn s1_and_s2_cancel() {
        let v = dihedral_parity(&tower(vec![split_19(), additive_5()]), None).unwrap();
        assert_eq!((v.s1.len(), v.s2.len()), (1, 1));
        assert_eq!(v.verdict.parity, Parity::Even);
        let v = dihedral_parity(&tower(vec![additive_5()]), None).unwrap();
        assert_eq!(v.verdict.parity, Parity::Odd);
    }

    #[test]
    fn unramified_is_even() {
        let galois = LocalGalois::dihedral(7, &[], Affine::scaling(6)).unwrap();
        let place = LocalCurveData::finite("13", 13, ReductionType::SplitMult, 3);
        let t = TowerDescription::new(Family::Dihedral(7), vec![Scenario { galois, place, hint: Default::default() }]).unwrap();
        let v = dihedral_parity(&t, None).unwrap();
        assert!(v.s1.is_empty() && v.s2.is_empty());
        assert_eq!(v.verdict.parity, Parity::Even);
    }

    #[test]
    fn rejects_other_families() {
        let text = "family = \"borel\"\np = 5\n";
        let t = TowerDescription::from_file(&parse_tower_file(text).unwrap()).unwrap();
        assert!(dihedral_parity(&t, None).is_err());
    }
}
