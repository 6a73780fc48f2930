use std::sync::OnceLock;

use proptest::prelude::*;
use regparity::group_core::presets;
use regparity::linalg::{rat, QMatrix};
use regparity::regconst::{regulator_constant, regulator_constant_with, GroupData};
use regparity::repq::{character_matrix, fixed_subspace, random_inner_product, rng, RelationVector, DEFAULT_SEED};

fn groups() -> &'static [GroupData] {
    static GROUPS: OnceLock<Vec<GroupData>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        [
            ("S3", presets::symmetric(3).unwrap()),
            ("D10", presets::dihedral(5).unwrap()),
            ("A4", presets::alternating(4).unwrap()),
            ("Borel:3", presets::borel(3).unwrap()),
            ("Borel:5", presets::borel(5).unwrap()),
            ("C2xC2", presets::dihedral(2).unwrap()),
        ]
        .into_iter()
        .map(|(n, g)| GroupData::new(n, g, DEFAULT_SEED).unwrap())
        .collect()
    })
}

fn lattices() -> &'static [Vec<RelationVector>] {
    static LATTICES: OnceLock<Vec<Vec<RelationVector>>> = OnceLock::new();
    LATTICES.get_or_init(|| groups().iter().map(|d| d.relation_lattice().unwrap()).collect())
}

/// A group index, an integer combination of its lattice basis and an
/// irreducible index.
fn relation_case() -> impl Strategy<Value = (usize, RelationVector, usize)> {
    (0..groups().len()).prop_flat_map(|gi| {
        let basis = &lattices()[gi];
        (Just(gi), prop::collection::vec(-3i64..=3, basis.len()), 0..groups()[gi].irreducibles.len()).prop_map(move |(gi, coeffs, ri)| {
            let n = groups()[gi].classes.len();
            let theta = lattices()[gi].iter().zip(&coeffs).fold(RelationVector::zero(n), |acc, (b, &k)| acc.add(&b.scale(k)));
            (gi, theta, ri)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn regulator_constant_independent_of_inner_product((gi, theta, ri) in relation_case(), seed in any::<u64>()) {
        let data = &groups()[gi];
        let rho = &data.irreducibles.irreducibles[ri].module;
        let base = regulator_constant(data, &theta, rho).unwrap();
        let b = random_inner_product(&data.group, rho, &mut rng(seed)).unwrap();
        prop_assert_eq!(regulator_constant_with(data, &theta, rho, &b).unwrap(), base);
    }

    #[test]
    fn fixed_dimensions_cancel((gi, theta, ri) in relation_case()) {
        let data = &groups()[gi];
        let rho = &data.irreducibles.irreducibles[ri].module;
        let total: i64 = theta
            .coeffs()
            .iter()
            .zip(&data.classes)
            .map(|(n, c)| n * fixed_subspace(&data.group, rho, &c.rep).unwrap().cols() as i64)
            .sum();
        prop_assert_eq!(total, 0);
    }

    #[test]
    fn lattice_combinations_have_zero_character((gi, theta, _) in relation_case()) {
        let data = &groups()[gi];
        let chars = character_matrix(&data.group, &data.classes).unwrap();
        prop_assert!(theta.virtual_character(&chars).iter().all(|&c| c == 0));
        prop_assert!(data.is_relation(&theta).unwrap());
    }

    #[test]
    fn regulator_constant_is_multiplicative((gi, a, ri) in relation_case(), coeffs in prop::collection::vec(-2i64..=2, 8)) {
        let data = &groups()[gi];
        let rho = &data.irreducibles.irreducibles[ri].module;
        let n = data.classes.len();
        let b = lattices()[gi].iter().zip(&coeffs).fold(RelationVector::zero(n), |acc, (v, &k)| acc.add(&v.scale(k)));
        let c = |t: &RelationVector| regulator_constant(data, t, rho).unwrap();
        prop_assert_eq!(c(&a.add(&b)), &c(&a) * &c(&b));
    }

    #[test]
    fn random_inner_products_are_invariant_and_positive(gi in 0..6usize, ri in 0..8usize, seed in any::<u64>()) {
        let data = &groups()[gi];
        let irr = &data.irreducibles.irreducibles;
        let rho = &irr[ri % irr.len()].module;
        let b = random_inner_product(&data.group, rho, &mut rng(seed)).unwrap();
        let m: &QMatrix = b.matrix();
        prop_assert!(m.is_symmetric());
        prop_assert!(m.is_positive_definite());
        for g in rho.gens() {
            prop_assert_eq!(&(&g.transpose() * m) * g, m.clone());
        }
    }
}

#[test]
fn permutation_characters_match_irreducible_multiplicities() {
    for data in groups() {
        let chars = character_matrix(&data.group, &data.classes).unwrap();
        for (k, class) in data.classes.iter().enumerate() {
            let perm: Vec<i64> = (0..chars.cols()).map(|i| i64::try_from(&chars[(k, i)]).unwrap()).collect();
            let mults = data.irreducibles.multiplicities(&perm);
            let mut rebuilt = vec![0i64; perm.len()];
            for (m, irr) in mults.iter().zip(&data.irreducibles.irreducibles) {
                assert!(m.is_integer() && *m >= rat(0), "{} {}", data.name, class.label);
                let m = i64::try_from(m.to_integer()).unwrap();
                for (r, c) in rebuilt.iter_mut().zip(&irr.character) {
                    *r += m * c;
                }
            }
            assert_eq!(rebuilt, perm, "{} {}", data.name, class.label);
        }
    }
}
