use std::fmt;

use num_bigint::BigInt;

use super::ParityError;
use crate::arith::{is_prime_u64, prime_divisors};
use crate::local_curve::{
    borel_infinite_galois, borel_local_galois, CurveFile, Field, LocalCurveData, PlaceDecomposition, PlaceKind, Scenario,
    TowerFamily, TowerFile,
};

/// The Galois group of `F/K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `C_p : C_{p-1}`.
    Borel(u64),
    /// The Borel group for `p = 3`, with the quadratic and cubic subfields.
    S3,
    /// `D_{2p}`.
    Dihedral(u64),
}

impl Family {
    #[must_use]
    pub fn p(self) -> u64 {
        match self {
            Self::Borel(p) | Self::Dihedral(p) => p,
            Self::S3 => 3,
        }
    }

    fn unit_count(self) -> usize {
        match self {
            Self::Dihedral(_) => 2,
            _ => self.p() as usize - 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Borel(p) => write!(f, "borel({p})"),
            Self::S3 => f.write_str("s3"),
            Self::Dihedral(p) => write!(f, "dihedral({})", 2 * p),
        }
    }
}

/// The places of `K` that matter for `F/K`, each with its decomposition
/// data. Places not listed are unramified with good reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerDescription {
    pub family: Family,
    pub places: Vec<Scenario>,
}

impl TowerDescription {
    pub fn new(family: Family, places: Vec<Scenario>) -> Result<Self, ParityError> {
        let p = family.p();
        if p < 3 || !is_prime_u64(p) {
            return Err(ParityError::Rejected(format!("{family} needs an odd prime, got {p}")));
        }
        let t = Self { family, places };
        t.validate()?;
        Ok(t)
    }

    /// Every place lives in the right ambient group and its decomposition
    /// in each field has `sum e f = [field : K]`.
    pub fn validate(&self) -> Result<(), ParityError> {
        for s in &self.places {
            let g = &s.galois;
            if g.p() != self.family.p() || g.units().len() != self.family.unit_count() {
                return Err(ParityError::Rejected(format!("place {} does not sit in {}", s.place.label, self.family)));
            }
            for field in Field::ALL {
                let d = g.decompose(field);
                if d.degree() != g.field_degree(field) {
                    return Err(ParityError::Rejected(format!(
                        "place {}: degrees in {} sum to {}, expected {}",
                        s.place.label,
                        field.name(),
                        d.degree(),
                        g.field_degree(field)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn from_file(file: &TowerFile) -> Result<Self, ParityError> {
        let family = match file.family {
            TowerFamily::Borel => Family::Borel(file.p),
            TowerFamily::S3 => Family::S3,
            TowerFamily::Dihedral => Family::Dihedral(file.p),
        };
        Self::new(family, file.places.clone())
    }

    /// `K = Q`, `F = Q(mu_p, m^{1/p})`: the real place, every listed prime,
    /// the primes dividing `m` and `p` itself.
    pub fn borel_over_q(curve: &CurveFile, p: u64, m: u64) -> Result<Self, ParityError> {
        if p < 3 || !is_prime_u64(p) {
            return Err(ParityError::Rejected(format!("p must be an odd prime, got {p}")));
        }
        if m < 2 || is_pth_power(m, p) {
            return Err(ParityError::Rejected(format!("m = {m} must be > 1 and not a {p}-th power")));
        }
        let mut places = Vec::new();
        let infinite = curve.infinite_places();
        match infinite.as_slice() {
            [] => places.push(LocalCurveData::real("inf")),
            [d] if d.kind == PlaceKind::Real => places.push((*d).clone()),
            _ => return Err(ParityError::Rejected("a curve over Q has exactly one real place".into())),
        }
        let mut primes = curve.listed_primes();
        primes.extend(prime_divisors(&BigInt::from(m)).iter().map(|q| u64::try_from(q).expect("divides a u64")));
        primes.push(p);
        primes.sort_unstable();
        primes.dedup();
        let mut scenarios = vec![Scenario { galois: borel_infinite_galois(p), place: places.remove(0), hint: Default::default() }];
        for l in primes {
            let place = curve.at_prime(l);
            if place.residue_size != l {
                return Err(ParityError::Rejected(format!("place {} is not a prime of Q", place.label)));
            }
            scenarios.push(Scenario { galois: borel_local_galois(p, m, l)?, place, hint: Default::default() });
        }
        Self::new(Family::Borel(p), scenarios)
    }

    /// The `p = 3` case of [`Self::borel_over_q`], read through `S_3`.
    pub fn s3_over_q(curve: &CurveFile, m: u64) -> Result<Self, ParityError> {
        let t = Self::borel_over_q(curve, 3, m)?;
        Ok(Self { family: Family::S3, ..t })
    }

    /// Decomposition of each place in `M`, `L` and `F`.
    #[must_use]
    pub fn decompositions(&self) -> Vec<(String, Vec<(Field, PlaceDecomposition)>)> {
        self.places
            .iter()
            .map(|s| (s.place.label.clone(), [Field::M, Field::L, Field::F].map(|k| (k, s.galois.decompose(k))).to_vec()))
            .collect()
    }
}

fn is_pth_power(m: u64, p: u64) -> bool {
    let r = (m as f64).powf(1.0 / p as f64).round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|x| x.checked_pow(p as u32) == Some(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_curve::parse_curve_file;

    #[test]
    fn x1_11_tower() {
        let curve = parse_curve_file("[[place]]\nplace = \"11\"\nkind = \"finite\"\np = 11\ntype = \"split_mult\"\nord_delta = 1\n").unwrap();
        let t = TowerDescription::borel_over_q(&curve, 3, 22).unwrap();
        let labels: Vec<&str> = t.places.iter().map(|s| s.place.label.as_str()).collect();
        assert_eq!(labels, ["inf", "2", "3", "11"]);
        let (_, d) = &t.decompositions()[3];
        assert_eq!(d[1].1.profiles, vec![(3, 1, 1)]);
        assert!(TowerDescription::borel_over_q(&curve, 3, 8).is_err());
        assert!(TowerDescription::borel_over_q(&curve, 2, 5).is_err());
    }
}
