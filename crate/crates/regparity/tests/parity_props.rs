use proptest::prelude::*;
use regparity::linalg::{ratio, QMatrix};
use regparity::local_curve::{parse_curve_file, CurveFile, LocalCurveData, ReductionType};
use regparity::parity_engine::{
    borel_parity, false_tate_ladder, height_block_identity_check, s3_theorem_parity, Evidence, Parity, TowerDescription,
};
use regparity::selftest::{CURVE_49A1, X1_11};

#[test]
fn s3_49a1_m2_is_even_and_matches_the_ladder() {
    let curve = parse_curve_file(CURVE_49A1).unwrap();
    let tower = TowerDescription::s3_over_q(&curve, 2).unwrap();
    let (verdict, selmer) = s3_theorem_parity(&tower, true).unwrap();
    assert_eq!(verdict.parity, Parity::Even);
    assert_eq!(verdict.evidence, Evidence::Both);
    assert_eq!(selmer.unwrap().parity, Parity::Even);
    // rk(E/Q) + rk(E/Q(mu_3)) + rk(E/Q(2^{1/3})) from the ladder root numbers.
    let layers = false_tate_ladder(&curve, 3, 2, 1).unwrap();
    let odd = [layers[0].w_l, layers[0].w_f, layers[1].w_l].iter().filter(|w| w.is_minus()).count() % 2 == 1;
    assert_eq!(verdict.parity == Parity::Odd, odd);
}

#[test]
fn x1_11_odd_exactly_when_11_divides_m() {
    let curve = parse_curve_file(X1_11).unwrap();
    for m in [2u64, 5, 11, 22, 33, 44, 45] {
        let v = borel_parity(&TowerDescription::borel_over_q(&curve, 3, m).unwrap()).unwrap();
        assert_eq!(v.parity == Parity::Odd, m % 11 == 0, "m = {m}");
    }
}

fn semistable_curve() -> impl Strategy<Value = CurveFile> {
    let primes = vec![5u64, 7, 11, 13, 17, 19, 23, 29, 31];
    prop::collection::btree_map(prop::sample::select(primes), (any::<bool>(), 1u32..9), 0..4).prop_map(|ps| {
        let mut places = vec![LocalCurveData::real("inf")];
        places.extend(ps.into_iter().map(|(l, (split, n))| {
            let ty = if split { ReductionType::SplitMult } else { ReductionType::NonsplitMult };
            LocalCurveData::finite(&l.to_string(), l, ty, n)
        }));
        CurveFile { name: None, places }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tamagawa_and_root_number_sides_agree(curve in semistable_curve(), m in 2u64..80, p in prop::sample::select(vec![3u64, 5, 7])) {
        prop_assume!(regparity::arith::factor(&m.into()).iter().all(|(_, e)| u64::from(*e) % p != 0));
        let tower = TowerDescription::borel_over_q(&curve, p, m).unwrap();
        let v = borel_parity(&tower).unwrap();
        prop_assert_eq!(v.evidence, Evidence::Both);
    }

    #[test]
    fn height_identity_holds(n in 1usize..6, entries in prop::collection::vec((-9i64..=9, 1i64..=4), 36)) {
        let h = QMatrix::from_fn(n, n, |i, j| {
            let (a, b) = entries[i * 6 + j];
            ratio(a, b)
        });
        prop_assert!(height_block_identity_check(&h));
    }
}
