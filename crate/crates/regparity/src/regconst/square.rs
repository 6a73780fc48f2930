use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{squarefree_part, valuation};
use crate::linalg::Rat;

/// An element of `Q*/Q*^2`, stored as its signed squarefree representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(BigInt);

impl SquareClass {
    #[must_use]
    pub fn one() -> Self {
        Self(BigInt::one())
    }

    /// Class of a nonzero rational. Panics on zero.
    #[must_use]
    pub fn from_rat(q: &Rat) -> Self {
        assert!(!q.is_zero(), "square class of zero");
        Self(squarefree_part(&(q.numer() * q.denom())))
    }

    #[must_use]
    pub fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::from_integer(n.into()))
    }

    /// Parses a representative; it need not be squarefree.
    pub fn parse(s: &str) -> Option<Self> {
        let n: BigInt = s.trim().parse().ok()?;
        (!n.is_zero()).then(|| Self(squarefree_part(&n)))
    }

    #[must_use]
    pub fn value(&self) -> &BigInt {
        &self.0
    }

    #[must_use]
    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `self^k`; only the parity of `k` matters.
    #[must_use]
    pub fn pow(&self, k: i64) -> Self {
        if k % 2 == 0 {
            Self::one()
        } else {
            self.clone()
        }
    }

    /// `ord_p` of the representative modulo 2.
    #[must_use]
    pub fn ord_parity(&self, p: u64) -> u8 {
        u8::from(valuation(&self.0, p) % 2 == 1)
    }

    #[must_use]
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl Mul for &SquareClass {
    type Output = SquareClass;
    fn mul(self, rhs: &SquareClass) -> SquareClass {
        SquareClass(squarefree_part(&(&self.0 * &rhs.0)))
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    #[test]
    fn classes_mod_squares() {
        assert_eq!(SquareClass::from_rat(&ratio(3, 4)), SquareClass::from_int(3));
        assert_eq!(SquareClass::from_rat(&ratio(2, 3)), SquareClass::from_int(6));
        assert_eq!(SquareClass::from_rat(&ratio(-8, 1)).value(), &BigInt::from(-2));
        let a = SquareClass::from_int(6);
        let b = SquareClass::from_int(10);
        assert_eq!(&a * &b, SquareClass::from_int(15));
        assert!((&a * &a).is_one());
        assert_eq!(SquareClass::from_int(15).ord_parity(5), 1);
        assert_eq!(SquareClass::parse("12"), Some(SquareClass::from_int(3)));
    }
}
