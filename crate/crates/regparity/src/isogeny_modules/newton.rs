use num_bigint::BigInt;
use num_traits::Zero;

use super::IsogenyError;
use crate::arith::valuation;

/// Whether the lower Newton polygon of an integer polynomial (coefficients
/// lowest degree first) at `p` is a single segment, i.e. all roots in
/// `Q_p-bar` have the same valuation.
pub fn newton_polygon_single_slope(poly: &[BigInt], p: u64) -> Result<bool, IsogenyError> {
    let Some(d) = poly.iter().rposition(|c| !c.is_zero()) else {
        return Err(IsogenyError::Parameter("Newton polygon of the zero polynomial".into()));
    };
    if poly[0].is_zero() {
        // The root 0 has infinite valuation; only x^d is single-sloped.
        return Ok(poly[..d].iter().all(Zero::is_zero));
    }
    if d == 0 {
        return Ok(true);
    }
    let v = |c: &BigInt| i64::from(valuation(c, p));
    let (v0, vd, d) = (v(&poly[0]), v(&poly[d]), d as i64);
    Ok(poly
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .all(|(i, c)| d * v(c) >= d * v0 + (vd - v0) * i as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        for p in [2u64, 3, 5, 7] {
            let pi = p as i64;
            assert!(newton_polygon_single_slope(&z(&[-pi * pi, 0, 1]), p).unwrap());
            assert!(!newton_polygon_single_slope(&z(&[pi, -(pi + 1), 1]), p).unwrap());
            assert!(newton_polygon_single_slope(&z(&[1, 1, 1]), p).unwrap());
        }
        // Eisenstein: one slope 1/3.
        assert!(newton_polygon_single_slope(&z(&[3, 3, 0, 1]), 3).unwrap());
        assert!(newton_polygon_single_slope(&z(&[0, 0, 5]), 5).unwrap());
        assert!(!newton_polygon_single_slope(&z(&[0, 1, 1]), 5).unwrap());
        assert!(newton_polygon_single_slope(&z(&[]), 3).is_err());
    }
}
