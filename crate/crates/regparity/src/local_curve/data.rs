use std::fmt;
use std::ops::Mul;

use super::LocalError;
use crate::arith::{factor, is_prime_u64};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// A root number, `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[must_use]
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Self::Minus
        } else {
            Self::Plus
        }
    }

    #[must_use]
    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Self::Plus),
            -1 => Some(Self::Minus),
            _ => None,
        }
    }

    #[must_use]
    pub fn value(self) -> i64 {
        match self {
            Self::Plus => 1,
            Self::Minus => -1,
        }
    }

    #[must_use]
    pub fn is_minus(self) -> bool {
        self == Self::Minus
    }

    #[must_use]
    pub fn pow(self, k: u64) -> Self {
        if k.is_multiple_of(2) {
            Self::Plus
        } else {
            self
        }
    }
}

impl Mul for Sign {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_parity(self.is_minus() != rhs.is_minus())
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::Plus, |a, b| a * b)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Plus => "+1",
            Self::Minus => "-1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaceKind {
    Finite,
    Real,
    Complex,
}

impl PlaceKind {
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::Finite => "finite",
            Self::Real => "real",
            Self::Complex => "complex",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionType {
    Good,
    SplitMult,
    NonsplitMult,
    AdditivePotMult,
    AdditivePotGood,
}

impl ReductionType {
    pub const ALL: [Self; 5] =
        [Self::Good, Self::SplitMult, Self::NonsplitMult, Self::AdditivePotMult, Self::AdditivePotGood];

    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::Good => "good",
            Self::SplitMult => "split_mult",
            Self::NonsplitMult => "nonsplit_mult",
            Self::AdditivePotMult => "additive_pot_mult",
            Self::AdditivePotGood => "additive_pot_good",
        }
    }

    #[must_use]
    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }

    #[must_use]
    pub fn is_semistable(self) -> bool {
        matches!(self, Self::Good | Self::SplitMult | Self::NonsplitMult)
    }

    #[must_use]
    pub fn is_additive(self) -> bool {
        !self.is_semistable()
    }
}

/// Kodaira symbol. `I(n)` with `n = 0` is good reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Type of potentially good reduction with `ord(Delta) = ord` in
    /// residue characteristic at least 5.
    #[must_use]
    pub fn from_pot_good_ord(ord: u32) -> Option<Self> {
        Some(match ord {
            0 => Self::I(0),
            2 => Self::II,
            3 => Self::III,
            4 => Self::IV,
            6 => Self::IStar(0),
            8 => Self::IVStar,
            9 => Self::IIIStar,
            10 => Self::IIStar,
            _ => return None,
        })
    }

    #[must_use]
    pub fn parse(s: &str) -> Option<Self> {
        let fixed = match s {
            "II" => Some(Self::II),
            "III" => Some(Self::III),
            "IV" => Some(Self::IV),
            "IV*" => Some(Self::IVStar),
            "III*" => Some(Self::IIIStar),
            "II*" => Some(Self::IIStar),
            _ => None,
        };
        if fixed.is_some() {
            return fixed;
        }
        let rest = s.strip_prefix('I')?;
        match rest.strip_suffix('*') {
            Some(n) => n.parse().ok().map(Self::IStar),
            None => rest.parse().ok().map(Self::I),
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::I(n) => write!(f, "I{n}"),
            Self::II => f.write_str("II"),
            Self::III => f.write_str("III"),
            Self::IV => f.write_str("IV"),
            Self::IStar(n) => write!(f, "I{n}*"),
            Self::IVStar => f.write_str("IV*"),
            Self::IIIStar => f.write_str("III*"),
            Self::IIStar => f.write_str("II*"),
        }
    }
}

/// Local Tamagawa number. Some base changes only pin it down to a divisor
/// of 4, or to `{1, 3}`, which is enough away from 2 (resp. 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tamagawa {
    Exact(u64),
    DividesFour,
    OneOrThree,
}

impl Tamagawa {
    /// `ord_p(c)` for a prime `p`, when determined.
    #[must_use]
    pub fn ord(self, p: u64) -> Option<u32> {
        match self {
            Self::Exact(c) => Some(crate::arith::valuation_u64(c, p)),
            Self::DividesFour => (p != 2).then_some(0),
            Self::OneOrThree => (p != 3).then_some(0),
        }
    }
}

impl fmt::Display for Tamagawa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(c) => write!(f, "{c}"),
            Self::DividesFour => f.write_str("c|4"),
            Self::OneOrThree => f.write_str("c|3"),
        }
    }
}

/// Reduction data of an elliptic curve at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCurveData {
    pub label: String,
    pub kind: PlaceKind,
    /// Residue characteristic; 0 at infinite places.
    pub residue_char: u64,
    /// Residue field size; 0 at infinite places.
    pub residue_size: u64,
    pub reduction: ReductionType,
    pub ord_delta: u32,
    pub tamagawa: Tamagawa,
    /// `d` with `|omega/omega_min|_v = q^{-d}`.
    pub omega_disc: i64,
    pub kodaira: Option<Kodaira>,
    pub w_override: Option<Sign>,
}

impl LocalCurveData {
    #[must_use]
    pub fn real(label: &str) -> Self {
        Self::infinite(label, PlaceKind::Real)
    }

    #[must_use]
    pub fn complex(label: &str) -> Self {
        Self::infinite(label, PlaceKind::Complex)
    }

    fn infinite(label: &str, kind: PlaceKind) -> Self {
        Self {
            label: label.into(),
            kind,
            residue_char: 0,
            residue_size: 0,
            reduction: ReductionType::Good,
            ord_delta: 0,
            tamagawa: Tamagawa::Exact(1),
            omega_disc: 0,
            kodaira: None,
            w_override: None,
        }
    }

    /// Finite place with residue field of size `q`. The Tamagawa number
    /// defaults to the value forced by the reduction type where there is one.
    #[must_use]
    pub fn finite(label: &str, q: u64, reduction: ReductionType, ord_delta: u32) -> Self {
        let p = prime_of_power(q).unwrap_or(0);
        let tamagawa = match reduction {
            ReductionType::Good => Tamagawa::Exact(1),
            ReductionType::SplitMult => Tamagawa::Exact(u64::from(ord_delta)),
            ReductionType::NonsplitMult => Tamagawa::Exact(if ord_delta.is_multiple_of(2) { 2 } else { 1 }),
            ReductionType::AdditivePotMult => Tamagawa::DividesFour,
            ReductionType::AdditivePotGood => match Kodaira::from_pot_good_ord(ord_delta) {
                Some(Kodaira::II | Kodaira::IIStar) => Tamagawa::Exact(1),
                Some(Kodaira::III | Kodaira::IIIStar) => Tamagawa::Exact(2),
                Some(Kodaira::IV | Kodaira::IVStar) => Tamagawa::Exact(1),
                _ => Tamagawa::DividesFour,
            },
        };
        let kodaira = match reduction {
            ReductionType::Good => Some(Kodaira::I(0)),
            ReductionType::SplitMult | ReductionType::NonsplitMult => Some(Kodaira::I(ord_delta)),
            ReductionType::AdditivePotMult => ord_delta.checked_sub(6).map(Kodaira::IStar),
            ReductionType::AdditivePotGood if p >= 5 => Kodaira::from_pot_good_ord(ord_delta),
            ReductionType::AdditivePotGood => None,
        };
        Self {
            label: label.into(),
            kind: PlaceKind::Finite,
            residue_char: p,
            residue_size: q,
            reduction,
            ord_delta,
            tamagawa,
            omega_disc: 0,
            kodaira,
            w_override: None,
        }
    }

    #[must_use]
    pub fn with_tamagawa(mut self, c: u64) -> Self {
        self.tamagawa = Tamagawa::Exact(c);
        self
    }

    #[must_use]
    pub fn with_omega_disc(mut self, d: i64) -> Self {
        self.omega_disc = d;
        self
    }

    #[must_use]
    pub fn with_override(mut self, w: Sign) -> Self {
        self.w_override = Some(w);
        self
    }

    #[must_use]
    pub fn is_finite(&self) -> bool {
        self.kind == PlaceKind::Finite
    }

    /// Checks the invariants tying the fields together.
    pub fn validate(&self) -> Result<(), LocalError> {
        let bad = |msg: String| Err(LocalError::InvalidData { place: self.label.clone(), message: msg });
        if !self.is_finite() {
            if self.reduction != ReductionType::Good || self.ord_delta != 0 || self.omega_disc != 0 {
                return bad("infinite places carry no reduction data".into());
            }
            return Ok(());
        }
        match prime_of_power(self.residue_size) {
            Some(p) if p == self.residue_char => {}
            _ => return bad(format!("q = {} is not a power of p = {}", self.residue_size, self.residue_char)),
        }
        let c = match self.tamagawa {
            Tamagawa::Exact(0) => return bad("Tamagawa number must be positive".into()),
            Tamagawa::Exact(c) => Some(c),
            Tamagawa::DividesFour | Tamagawa::OneOrThree => None,
        };
        match self.reduction {
            ReductionType::Good if self.ord_delta != 0 || c != Some(1) => bad("good reduction needs ord_delta = 0 and c = 1".into()),
            ReductionType::SplitMult if self.ord_delta == 0 || c != Some(u64::from(self.ord_delta)) => {
                bad("split multiplicative reduction needs c = ord_delta > 0".into())
            }
            ReductionType::NonsplitMult if self.ord_delta == 0 || !matches!(c, Some(1 | 2)) => {
                bad("nonsplit multiplicative reduction needs ord_delta > 0 and c in {1, 2}".into())
            }
            ReductionType::AdditivePotMult if self.ord_delta < 6 => bad("potentially multiplicative needs ord_delta >= 6".into()),
            ReductionType::AdditivePotGood if self.ord_delta == 0 => bad("additive reduction needs ord_delta > 0".into()),
            ReductionType::AdditivePotGood
                if self.residue_char >= 5 && Kodaira::from_pot_good_ord(self.ord_delta).is_none() =>
            {
                bad(format!("ord_delta = {} is impossible for potentially good reduction", self.ord_delta))
            }
            _ => Ok(()),
        }
    }
}

/// The prime `p` when `q = p^f` with `f >= 1`.
#[must_use]
pub fn prime_of_power(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    if is_prime_u64(q) {
        return Some(q);
    }
    let f = factor(&BigUint::from(q));
    (f.len() == 1).then(|| f[0].0.to_u64().expect("fits"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants() {
        assert!(LocalCurveData::finite("11", 11, ReductionType::SplitMult, 5).validate().is_ok());
        assert!(LocalCurveData::finite("11", 11, ReductionType::SplitMult, 5).with_tamagawa(1).validate().is_err());
        assert!(LocalCurveData::finite("3", 9, ReductionType::Good, 0).validate().is_ok());
        assert!(LocalCurveData::finite("x", 12, ReductionType::Good, 0).validate().is_err());
        assert!(LocalCurveData::finite("7", 7, ReductionType::AdditivePotGood, 5).validate().is_err());
        assert!(LocalCurveData::finite("7", 7, ReductionType::NonsplitMult, 3).with_tamagawa(2).validate().is_ok());
        assert!(LocalCurveData::real("inf").validate().is_ok());
    }

    #[test]
    fn kodaira_round_trip() {
        for k in [Kodaira::I(0), Kodaira::I(5), Kodaira::II, Kodaira::III, Kodaira::IV, Kodaira::IStar(3), Kodaira::IVStar, Kodaira::IIIStar, Kodaira::IIStar] {
            assert_eq!(Kodaira::parse(&k.to_string()), Some(k));
        }
        assert_eq!(Kodaira::from_pot_good_ord(3), Some(Kodaira::III));
    }

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!([Sign::Minus, Sign::Plus, Sign::Minus].into_iter().product::<Sign>(), Sign::Plus);
        assert_eq!(Sign::Minus.pow(3), Sign::Minus);
    }
}
