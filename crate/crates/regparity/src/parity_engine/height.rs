use num_bigint::BigInt;
use num_rational::BigRational;

use crate::linalg::QMatrix;

/// `[[2H, -H], [-H, 2H]]`.
#[must_use]
pub fn height_block(h: &QMatrix) -> QMatrix {
    let two = h.scale(&BigRational::from_integer(2.into()));
    let neg = h.scale(&BigRational::from_integer((-1).into()));
    two.hcat(&neg).vcat(&neg.hcat(&two))
}

/// `det [[2H, -H], [-H, 2H]] = 3^n det(H)^2`.
#[must_use]
pub fn height_block_identity_check(h: &QMatrix) -> bool {
    assert!(h.is_square());
    let n = h.rows() as u32;
    let d = h.det();
    height_block(h).det() == BigRational::from_integer(BigInt::from(3).pow(n)) * &d * &d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn small_cases() {
        let h = QMatrix::from_i64_rows(&[vec![5]]);
        assert_eq!(height_block(&h).det(), rat(75));
        assert_eq!(height_block(&QMatrix::identity(2)).det(), rat(9));
        assert!(height_block_identity_check(&QMatrix::from_i64_rows(&[vec![1, 2, 0], vec![3, -1, 4], vec![0, 7, 2]])));
    }
}
