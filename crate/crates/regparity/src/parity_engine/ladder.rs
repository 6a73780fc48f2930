use super::{Evidence, Parity, ParityError, ParityVerdict};
use crate::arith::is_prime_u64;
use crate::local_curve::{
    base_change, cyclotomic_decomposition, place_root_number, radical_decomposition, radical_infinite_places, CurveFile,
    LocalCurveData, LocalError, PlaceDecomposition, PlaceKind, Sign,
};

/// Root numbers and Selmer rank bounds at level `i` of the false Tate
/// tower: `L_i = Q(m^{1/p^i})` and `F_i = Q(mu_{p^i}, m^{1/p^i})`, with
/// `F_0 = Q(mu_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderLayer {
    pub level: u32,
    pub w_l: Sign,
    pub w_f: Sign,
    /// Lower bound for the `p^inf`-Selmer rank over `L_i`.
    pub lower_bound_l: u64,
    /// Lower bound for the `p^inf`-Selmer rank over `F_i`.
    pub lower_bound_f: u64,
    pub verdict_l: ParityVerdict,
    pub verdict_f: ParityVerdict,
}

fn root_number_over(curve: &CurveFile, infinite: (u64, u64), decompose: impl Fn(u64) -> Result<PlaceDecomposition, LocalError>) -> Result<Sign, ParityError> {
    let (real, complex) = infinite;
    let mut w = Sign::Minus.pow(real + complex);
    for d in curve.places.iter().filter(|d| d.is_finite() && !is_good(d)) {
        for (e, f, n) in decompose(d.residue_char)?.profiles {
            // For l >= 5 the local root number sees q only mod 24, and
            // l^2 = 1 mod 24, so only the parity of f matters.
            let f = if d.residue_char >= 5 { 2 - f % 2 } else { f };
            let local = place_root_number(&base_change(d, e, f, Default::default())?)?;
            w = w * local.pow(u64::from(n));
        }
    }
    Ok(w)
}

fn is_good(d: &LocalCurveData) -> bool {
    d.reduction == crate::local_curve::ReductionType::Good
}

fn parity_assumptions(p: u64) -> Vec<String> {
    vec![format!("p^inf-Selmer parity agrees with the root number over Q and Q(mu_{p})")]
}

/// Root numbers of `E` over the layers `L_0, ..., L_n` and `F_0, ..., F_n`,
/// with Selmer rank lower bounds. `w(F_i) = w(F_0)` since each step is Galois
/// of odd degree; a change of root number between `L_{i-1}` and `L_i` forces
/// the irreducible `Ind L_i - Ind L_{i-1}` (of dimension `p^i - p^{i-1}`)
/// into the Selmer group.
pub fn false_tate_ladder(curve: &CurveFile, p: u64, m: u64, n: u32) -> Result<Vec<LadderLayer>, ParityError> {
    if p < 3 || !is_prime_u64(p) {
        return Err(ParityError::Rejected(format!("p must be an odd prime, got {p}")));
    }
    if m < 2 || crate::arith::factor(&m.into()).iter().any(|(_, e)| u64::from(*e) % p == 0) {
        return Err(ParityError::Rejected(format!("every prime of m = {m} must occur to a power prime to {p}")));
    }
    let mut reals = curve.infinite_places();
    reals.retain(|d| d.kind == PlaceKind::Real);
    if curve.infinite_places().len() > 1 || reals.len() != curve.infinite_places().len() {
        return Err(ParityError::Rejected("a curve over Q has exactly one real place".into()));
    }
    for d in curve.places.iter().filter(|d| d.is_finite() && d.reduction.is_additive()) {
        let l = d.residue_char;
        if (l == 2 || l == 3) && (l == p || m.is_multiple_of(l)) {
            return Err(LocalError::Hypothesis(format!("E is additive at {l}, which ramifies in the tower")).into());
        }
    }
    let w_k = root_number_over(curve, (1, 0), |_| Ok(PlaceDecomposition { profiles: vec![(1, 1, 1)] }))?;
    let w_m = root_number_over(curve, (0, (p - 1) / 2), |l| Ok(cyclotomic_decomposition(l, p)))?;
    let assumptions = parity_assumptions(p);
    let lb_k = u64::from(w_k.is_minus());
    let lb_m = lb_k + u64::from(w_m != w_k);
    let verdict = |combination: String, w: Sign| ParityVerdict {
        combination,
        parity: Parity::from_sign(w),
        evidence: Evidence::RootNumberSide,
        assumptions: assumptions.clone(),
    };
    let mut layers = vec![LadderLayer {
        level: 0,
        w_l: w_k,
        w_f: w_m,
        lower_bound_l: lb_k,
        lower_bound_f: lb_m,
        verdict_l: verdict(format!("rk_{p}(E/Q)"), w_k),
        verdict_f: verdict(format!("rk_{p}(E/Q(mu_{p}))"), w_m),
    }];
    for i in 1..=n {
        let degree = p.pow(i);
        let w = root_number_over(curve, radical_infinite_places(degree), |l| radical_decomposition(l, degree, m))?;
        let prev = layers.last().expect("layer 0");
        let jump = w != prev.w_l;
        layers.push(LadderLayer {
            level: i,
            w_l: w,
            w_f: w_m,
            lower_bound_l: prev.lower_bound_l + u64::from(jump),
            lower_bound_f: prev.lower_bound_f + if jump { degree - degree / p } else { 0 },
            verdict_l: verdict(format!("rk_{p}(E/L_{i})"), w),
            verdict_f: verdict(format!("rk_{p}(E/F_{i})"), w_m),
        });
    }
    Ok(layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_curve::{parse_curve_file, Kodaira};

    fn curve_49a1() -> CurveFile {
        parse_curve_file("[[place]]\nplace = \"inf\"\nkind = \"real\"\n\n[[place]]\nplace = \"7\"\nkind = \"finite\"\np = 7\ntype = \"additive_pot_good\"\nord_delta = 3\n").unwrap()
    }

    #[test]
    fn ladder_49a1() {
        assert_eq!(curve_49a1().places[1].kodaira, Some(Kodaira::III));
        for m in [2u64, 3, 5, 10, 12] {
            let layers = false_tate_ladder(&curve_49a1(), 3, m, 5).unwrap();
            for l in &layers {
                assert_eq!(l.w_l, Sign::Minus.pow(u64::from(l.level)), "m = {m} level {}", l.level);
                assert_eq!(l.lower_bound_l, u64::from(l.level));
                assert_eq!(l.lower_bound_f, 3u64.pow(l.level));
                assert_eq!(l.w_f, Sign::Minus);
            }
        }
    }

    #[test]
    fn rejects_bad_m() {
        assert!(false_tate_ladder(&curve_49a1(), 3, 8, 2).is_err());
        assert!(false_tate_ladder(&curve_49a1(), 3, 1, 2).is_err());
    }
}
