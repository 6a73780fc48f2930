use std::fmt;

use super::base_change::{base_change, c_contribution, AdditiveHint};
use super::data::{LocalCurveData, PlaceKind, ReductionType, Sign};
use super::galois::{Affine, Field, LocalGalois};
use super::root::place_root_number;
use super::LocalError;
use crate::arith::{divisors, is_prime_u64, primitive_root};

/// How the place behaves in `F/M`, which decides the shape of the argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScenarioCase {
    /// Primes of `M` split in `F/M`, including all infinite places.
    Split,
    /// `F/M` is inert.
    Inert,
    /// `F/M` is ramified and the curve is semistable.
    RamifiedSemistable,
    /// Ramified, additive, residue characteristic prime to `6p`.
    RamifiedAdditiveTame,
    /// Ramified, additive, residue characteristic `p > 3`.
    RamifiedAdditiveWild,
}

impl ScenarioCase {
    pub const ALL: [Self; 5] =
        [Self::Split, Self::Inert, Self::RamifiedSemistable, Self::RamifiedAdditiveTame, Self::RamifiedAdditiveWild];

    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::Split => "split",
            Self::Inert => "inert",
            Self::RamifiedSemistable => "ramified-semistable",
            Self::RamifiedAdditiveTame => "ramified-additive-tame",
            Self::RamifiedAdditiveWild => "ramified-additive-wild",
        }
    }
}

impl fmt::Display for ScenarioCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One place `v` of `K` in a Borel extension: its local Galois data and the
/// curve over `K_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub galois: LocalGalois,
    pub place: LocalCurveData,
    pub hint: AdditiveHint,
}

/// Both sides of the equivalence, computed independently.
#[derive(Clone, Debug)]
pub struct EquivalenceOutcome {
    pub case: ScenarioCase,
    /// `ord_p C_v(F) C_v(K)^{p-1} / (C_v(M) C_v(L)^{p-1}) mod 2`.
    pub c_parity: u8,
    /// `W_v(K) W_v(M) W_v(L)`.
    pub root_product: Sign,
    pub places: Vec<(Field, Vec<LocalCurveData>)>,
}

impl EquivalenceOutcome {
    #[must_use]
    pub fn agrees(&self) -> bool {
        (self.c_parity == 0) == (self.root_product == Sign::Plus)
    }
}

impl Scenario {
    #[must_use]
    pub fn p(&self) -> u64 {
        self.galois.p()
    }

    fn residue_char(&self) -> u64 {
        self.place.residue_char
    }

    /// Rejects scenarios outside the hypotheses: additive reduction at a
    /// place above 2 or 3 that ramifies in `L/K`.
    pub fn check_hypotheses(&self) -> Result<(), LocalError> {
        self.place.validate()?;
        let l = self.residue_char();
        if self.place.is_finite()
            && (l == 2 || l == 3)
            && self.place.reduction.is_additive()
            && self.galois.decompose(Field::L).is_ramified()
        {
            return Err(LocalError::Hypothesis(format!(
                "place {} divides 6, ramifies in L/K and the curve is not semistable there",
                self.place.label
            )));
        }
        Ok(())
    }

    #[must_use]
    pub fn case(&self) -> ScenarioCase {
        if !self.place.is_finite() || !self.galois.meets_translations() {
            ScenarioCase::Split
        } else if !self.galois.inertia_meets_translations() {
            ScenarioCase::Inert
        } else if self.place.reduction.is_semistable() {
            ScenarioCase::RamifiedSemistable
        } else if self.residue_char() == self.p() {
            ScenarioCase::RamifiedAdditiveWild
        } else {
            ScenarioCase::RamifiedAdditiveTame
        }
    }

    /// Curve data at every prime above `v` in `field`.
    pub fn places_over(&self, field: Field) -> Result<Vec<LocalCurveData>, LocalError> {
        let mut out = Vec::new();
        for (e, f, n) in self.galois.decompose(field).profiles {
            let mut d = base_change(&self.place, e, f, self.hint)?;
            for k in 0..n {
                d.label = format!("{}/{}:e{e}f{f}#{k}", self.place.label, field.name());
                out.push(d.clone());
            }
        }
        Ok(out)
    }
}

impl Scenario {
    /// `sum over primes above v in field of ord_p C`.
    pub fn c_ord(&self, field: Field, p: u64) -> Result<i64, LocalError> {
        self.places_over(field)?.iter().map(|d| c_contribution(d, p)).sum()
    }

    /// `W_v(field)`.
    pub fn root_product(&self, field: Field) -> Result<Sign, LocalError> {
        self.places_over(field)?.iter().map(place_root_number).product()
    }

    /// `ord_p C_v(F) C_v(K)^{p-1} / (C_v(M) C_v(L)^{p-1}) mod 2`.
    pub fn tamagawa_side(&self) -> Result<u8, LocalError> {
        self.check_hypotheses()?;
        let p = self.p();
        let pm1 = p as i64 - 1;
        let ord = self.c_ord(Field::F, p)? + pm1 * self.c_ord(Field::K, p)? - self.c_ord(Field::M, p)? - pm1 * self.c_ord(Field::L, p)?;
        Ok(ord.rem_euclid(2) as u8)
    }

    /// `W_v(K) W_v(M) W_v(L)`.
    pub fn root_side(&self) -> Result<Sign, LocalError> {
        self.check_hypotheses()?;
        Ok(self.root_product(Field::K)? * self.root_product(Field::M)? * self.root_product(Field::L)?)
    }
}

/// Computes the Tamagawa side and the root-number side for one place.
pub fn equivalence_outcome(s: &Scenario) -> Result<EquivalenceOutcome, LocalError> {
    let c_parity = s.tamagawa_side()?;
    let root_product = s.root_side()?;
    let places = Field::ALL.iter().map(|&k| Ok((k, s.places_over(k)?))).collect::<Result<Vec<_>, LocalError>>()?;
    Ok(EquivalenceOutcome { case: s.case(), c_parity, root_product, places })
}

/// Whether the two sides agree for this scenario.
pub fn tamagawa_root_equivalence_check(s: &Scenario) -> Result<bool, LocalError> {
    equivalence_outcome(s).map(|o| o.agrees())
}

fn local_curves(l: u64, q: u64, p: u64) -> Vec<(LocalCurveData, AdditiveHint)> {
    let label = format!("v{l}");
    let plain = AdditiveHint::default();
    let mut out = vec![(LocalCurveData::finite(&label, q, ReductionType::Good, 0), plain)];
    for n in [1, 2, 3, p as u32] {
        out.push((LocalCurveData::finite(&label, q, ReductionType::SplitMult, n), plain));
    }
    for n in [1, 2] {
        out.push((LocalCurveData::finite(&label, q, ReductionType::NonsplitMult, n), plain));
    }
    if l == p {
        let with_omega: Vec<_> = out.iter().map(|(d, h)| (d.clone().with_omega_disc(1), *h)).collect();
        out.extend(with_omega);
    }
    if l >= 5 {
        for ord in [7, 8] {
            for split in [false, true] {
                let d = LocalCurveData::finite(&label, q, ReductionType::AdditivePotMult, ord);
                out.push((d, AdditiveHint { pot_mult_split: split }));
            }
        }
        for ord in [2, 3, 4, 6, 8, 9, 10] {
            let d = LocalCurveData::finite(&label, q, ReductionType::AdditivePotGood, ord);
            if ord == 4 || ord == 8 {
                out.push((d.clone().with_tamagawa(3), plain));
            }
            if l == p {
                out.push((d.clone().with_omega_disc(1), plain));
            }
            out.push((d, plain));
        }
    }
    out
}

/// Local Galois configurations at a finite place of residue characteristic
/// `l` and residue field size `q`, respecting the structure of tame and
/// wild inertia.
fn local_galois_grid(p: u64, l: u64, q: u64) -> Vec<LocalGalois> {
    let g = primitive_root(p);
    let torus = |k: u64| Affine::scaling(crate::arith::mod_pow(g, (p - 1) / k, p));
    let mut out = Vec::new();
    let mut push = |inertia: &[Affine], frob: Affine| {
        if let Ok(x) = LocalGalois::new(p, inertia, frob) {
            out.push(x);
        }
    };
    // Unramified: frobenius runs over conjugacy class representatives.
    push(&[], Affine::identity());
    push(&[], Affine::translation(1));
    for a in 2..p {
        push(&[], Affine::scaling(a));
    }
    if l != p {
        // Tame ramification through the translations; frobenius acts by q.
        push(&[Affine::translation(1)], Affine::scaling(q % p));
        // Tame ramification in the torus needs mu_k in the residue field.
        for k in divisors(p - 1).into_iter().filter(|&k| k > 1 && (q - 1).is_multiple_of(k) && !l.is_multiple_of(k)) {
            for a in 1..p {
                push(&[torus(k)], Affine::scaling(a));
            }
        }
    } else {
        for k in divisors(p - 1) {
            for a in 1..p {
                push(&[Affine::translation(1), torus(k)], Affine::scaling(a));
                if k > 1 {
                    push(&[torus(k)], Affine::scaling(a));
                }
            }
        }
    }
    out.sort_by_key(|x| (x.decomposition_order(), x.inertia_order()));
    out.dedup();
    out
}

/// Residue characteristics used by the grid for a given `p`.
fn residue_chars(p: u64) -> Vec<u64> {
    let mut ls: Vec<u64> = [2u64, 3, 5, 7, 11, 13, 19, 23, 29, 31, 37, 43].into_iter().filter(|&l| is_prime_u64(l)).collect();
    if !ls.contains(&p) {
        ls.push(p);
    }
    ls
}

/// The deterministic scenario grid for `p`: infinite places plus every
/// combination of residue field, local Galois data and reduction type.
#[must_use]
pub fn scenario_grid(p: u64) -> Vec<Scenario> {
    let mut out = Vec::new();
    let plain = AdditiveHint::default();
    for (kind, inertia) in [(PlaceKind::Real, vec![]), (PlaceKind::Real, vec![Affine::scaling(p - 1)]), (PlaceKind::Complex, vec![])] {
        let galois = LocalGalois::new(p, &inertia, Affine::identity()).expect("valid");
        let place = if kind == PlaceKind::Real { LocalCurveData::real("inf") } else { LocalCurveData::complex("inf") };
        out.push(Scenario { galois, place, hint: plain });
    }
    for l in residue_chars(p) {
        // Residue degrees in F reach p - 1; keep q^(p-1) within u64.
        let qs = if l < 20 { vec![l, l * l] } else { vec![l] };
        for q in qs {
            let grid = local_galois_grid(p, l, q);
            for (place, hint) in local_curves(l, q, p) {
                for galois in &grid {
                    out.push(Scenario { galois: galois.clone(), place: place.clone(), hint });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_multiplicative_ramified_prime() {
        // p = 3, tame place ramified through the translations, M/K inert.
        let galois = LocalGalois::new(3, &[Affine::translation(1)], Affine::scaling(2)).unwrap();
        let place = LocalCurveData::finite("11", 11, ReductionType::SplitMult, 1);
        let s = Scenario { galois, place, hint: AdditiveHint::default() };
        let o = equivalence_outcome(&s).unwrap();
        assert_eq!(o.case, ScenarioCase::RamifiedSemistable);
        assert_eq!(o.c_parity, 1);
        assert_eq!(o.root_product, Sign::Minus);
        assert!(o.agrees());
    }

    #[test]
    fn split_over_split_prime_of_m() {
        // Two primes of M, each ramified in F/M: the contributions pair up.
        let galois = LocalGalois::new(3, &[Affine::translation(1)], Affine::identity()).unwrap();
        let place = LocalCurveData::finite("7", 7, ReductionType::SplitMult, 1);
        let s = Scenario { galois, place, hint: AdditiveHint::default() };
        let o = equivalence_outcome(&s).unwrap();
        assert_eq!(o.c_parity, 0);
        assert!(o.agrees());
    }

    #[test]
    fn rejects_additive_above_six_when_ramified() {
        let galois = LocalGalois::new(3, &[Affine::translation(1)], Affine::scaling(2)).unwrap();
        let place = LocalCurveData::finite("2", 2, ReductionType::AdditivePotMult, 7);
        let s = Scenario { galois, place, hint: AdditiveHint::default() };
        assert!(matches!(equivalence_outcome(&s), Err(LocalError::Hypothesis(_))));
    }

    #[test]
    fn good_everywhere_is_trivial() {
        for s in scenario_grid(5).into_iter().filter(|s| s.place.reduction == ReductionType::Good && s.place.omega_disc == 0) {
            let o = equivalence_outcome(&s).unwrap();
            assert_eq!((o.c_parity, o.root_product), (0, Sign::Plus));
        }
    }
}
