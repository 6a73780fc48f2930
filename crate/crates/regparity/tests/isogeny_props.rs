use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use proptest::prelude::*;
use regparity::group_core::{presets, subgroup_classes, PermGroup, Subgroup};
use regparity::isogeny_modules::*;
use regparity::linalg::ZMatrix;
use regparity::repq::{rational_irreducibles, IrreducibleSet};

struct Fixture {
    lattice: PermLattice,
    basis: Vec<ZMatrix>,
    irreducibles: IrreducibleSet,
}

/// `Z[D10/C2] + Z[D10/C5] + Z`.
fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let g: Arc<PermGroup> = Arc::new(presets::dihedral(5).unwrap());
        let e = g.elements().unwrap();
        let (r, s) = (e.index[&g.gens()[0]], e.index[&g.gens()[1]]);
        let lattice = PermLattice::new(
            Arc::clone(&g),
            vec![
                ("a".into(), Subgroup::generated(e, &[s])),
                ("b".into(), Subgroup::generated(e, &[r])),
                ("c".into(), Subgroup::generated(e, &[r, s])),
            ],
        )
        .unwrap();
        let basis = lattice.endomorphism_basis().unwrap();
        let irreducibles = rational_irreducibles(&g, &subgroup_classes(&g).unwrap(), 7).unwrap();
        Fixture { lattice, basis, irreducibles }
    })
}

fn endo(coeffs: &[i64]) -> IntegerGModuleMap {
    let f = fixture();
    let n = f.lattice.rank();
    let m = f.basis.iter().zip(coeffs.iter().cycle()).fold(ZMatrix::zeros(n, n), |acc, (b, &c)| &acc + &b.scale(&BigInt::from(c)));
    IntegerGModuleMap::new(f.lattice.clone(), f.lattice.clone(), m).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbital_combinations_are_equivariant(c in coeffs()) {
        let f = endo(&c);
        prop_assert!(IntegerGModuleMap::new(f.source().clone(), f.target().clone(), f.matrix().clone()).is_ok());
        prop_assert!(IntegerGModuleMap::new(f.source().clone(), f.target().clone(), f.matrix().transpose()).is_ok());
    }

    #[test]
    fn transpose_square_determinant(c in coeffs()) {
        let f = endo(&c);
        let ftf = compose_transpose(&f).unwrap();
        prop_assert!(ftf.matrix().is_symmetric());
        let d = f.det().unwrap();
        prop_assert_eq!(ftf.det().unwrap(), &d * &d);
    }

    #[test]
    fn q_parity_is_multiplicative(a in coeffs(), b in coeffs(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let (f, g) = (endo(&a), endo(&b));
        prop_assume!(f.is_isogeny() && g.is_isogeny());
        let irr = &fixture().irreducibles;
        let (qf, qg) = (q_parity_endo(&f, p, irr), q_parity_endo(&g, p, irr));
        prop_assume!(qf.is_ok() && qg.is_ok());
        let gf = g.compose(&f).unwrap();
        let sum = qf.unwrap() + qg.unwrap();
        match q_parity_endo(&gf, p, irr) {
            Ok(q) => prop_assert!(q.congruent(&sum), "{} vs {}", q, sum),
            Err(IsogenyError::Refused { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn q_parity_is_additive(a in coeffs(), b in coeffs(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let (f, g) = (endo(&a), endo(&b));
        prop_assume!(f.is_isogeny() && g.is_isogeny());
        let irr = &fixture().irreducibles;
        let (qf, qg) = (q_parity_endo(&f, p, irr), q_parity_endo(&g, p, irr));
        prop_assume!(qf.is_ok() && qg.is_ok());
        let q = q_parity_endo(&f.direct_sum(&g), p, irr).unwrap();
        prop_assert_eq!(q, qf.unwrap() + qg.unwrap());
    }

    #[test]
    fn borel_map_is_equivariant_after_endomorphism(c in coeffs()) {
        // f composed with a random endomorphism of V_1 stays equivariant and
        // its determinant factors.
        let f = build_borel_f(3).unwrap();
        let basis = f.source().endomorphism_basis().unwrap();
        let n = f.source().rank();
        let m = basis.iter().zip(c.iter().cycle()).fold(ZMatrix::zeros(n, n), |acc, (b, &x)| &acc + &b.scale(&BigInt::from(x)));
        let e = IntegerGModuleMap::new(f.source().clone(), f.source().clone(), m).unwrap();
        let fe = f.compose(&e).unwrap();
        prop_assert_eq!(fe.det().unwrap(), f.det().unwrap() * e.det().unwrap());
    }
}

#[test]
fn identity_transpose_is_identity() {
    let f = fixture();
    let id = IntegerGModuleMap::scalar(f.lattice.clone(), 1).unwrap();
    assert_eq!(compose_transpose(&id).unwrap(), id);
}

#[test]
fn unit_determinant_gives_zero_expression() {
    let f = fixture();
    let q = q_parity(&IntegerGModuleMap::scalar(f.lattice.clone(), 2).unwrap(), 5, &f.irreducibles).unwrap();
    assert!(q.is_zero_mod_2());
    assert!(q.terms.iter().all(|t| t.coefficient == regparity::linalg::rat(0)));
}

#[test]
fn non_equivariant_matrix_is_rejected() {
    let f = fixture();
    let n = f.lattice.rank();
    let mut m = ZMatrix::identity(n);
    m[(0, 1)] = BigInt::from(1);
    assert!(matches!(
        IntegerGModuleMap::new(f.lattice.clone(), f.lattice.clone(), m),
        Err(IsogenyError::NotEquivariant(_))
    ));
}

#[test]
fn bad_parameters_are_rejected() {
    assert!(build_borel_f(4).is_err());
    assert!(build_borel_f(2).is_err());
    assert!(build_dihedral_maps(1).is_err());
}
