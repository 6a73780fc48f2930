use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{compose_transpose, newton_polygon_single_slope, IntegerGModuleMap, IsogenyError};
use crate::arith::rat_valuation;
use crate::linalg::{QMatrix, Rat};
use crate::poly::QPoly;
use crate::regconst::{regulator_constant, GroupData};
use crate::repq::{IrreducibleSet, RelationVector};

/// Which hypothesis certified a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    /// The irreducible is absolutely irreducible (commutant `Q`).
    QpIrreducible,
    /// Every irreducible factor of the characteristic polynomial has a
    /// single-slope Newton polygon.
    SingleSlope,
}

impl Gate {
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::QpIrreducible => "qp_irreducible",
            Self::SingleSlope => "single_slope",
        }
    }
}

/// The coefficient of `rk_rho` for one irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QParityTerm {
    pub irreducible: String,
    pub dim: usize,
    pub end_dim: usize,
    /// Multiplicity of the irreducible in the source.
    pub multiplicity: usize,
    /// `ord_p det / dim rho` on the isotypic component.
    pub coefficient: Rat,
    pub gate: Gate,
}

/// `sum_rho c_rho rk_rho + constant` modulo 2, with one term per
/// irreducible constituent of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QParityExpression {
    pub p: u64,
    pub terms: Vec<QParityTerm>,
    pub constant: i64,
}

impl QParityExpression {
    #[must_use]
    pub fn coefficient(&self, irreducible: &str) -> Rat {
        self.terms.iter().find(|t| t.irreducible == irreducible).map_or_else(Rat::zero, |t| t.coefficient.clone())
    }

    /// Whether every coefficient and the constant are even.
    #[must_use]
    pub fn is_zero_mod_2(&self) -> bool {
        self.constant.is_even() && self.terms.iter().all(|t| is_even(&t.coefficient))
    }

    /// Whether the two expressions agree modulo 2, coefficient by
    /// coefficient (rational coefficients must agree up to an even integer).
    #[must_use]
    pub fn congruent(&self, other: &Self) -> bool {
        let names = self.terms.iter().chain(&other.terms).map(|t| t.irreducible.as_str());
        (self.constant - other.constant).is_even() && names.into_iter().all(|n| is_even(&(self.coefficient(n) - other.coefficient(n))))
    }

    /// Value modulo 2 for given `rk_rho`; `None` if the weighted sum is not
    /// an integer.
    #[must_use]
    pub fn evaluate(&self, ranks: &[(&str, u64)]) -> Option<u8> {
        let total = ranks.iter().fold(Rat::from_integer(self.constant.into()), |acc, (n, r)| acc + self.coefficient(n) * Rat::from_integer((*r).into()));
        total.is_integer().then(|| (total.to_integer().mod_floor(&BigInt::from(2))).to_u8().expect("0 or 1"))
    }
}

fn is_even(q: &Rat) -> bool {
    q.is_integer() && q.to_integer().is_even()
}

impl Add for QParityExpression {
    type Output = Self;

    fn add(mut self, other: Self) -> Self {
        for t in other.terms {
            match self.terms.iter_mut().find(|s| s.irreducible == t.irreducible) {
                Some(s) => {
                    s.coefficient += t.coefficient;
                    s.multiplicity += t.multiplicity;
                }
                None => self.terms.push(t),
            }
        }
        self.constant += other.constant;
        self
    }
}

impl fmt::Display for QParityExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .filter(|t| !t.coefficient.is_zero())
            .map(|t| format!("{}*rk_{}", t.coefficient, t.irreducible))
            .chain((self.constant != 0).then(|| self.constant.to_string()))
            .collect();
        if parts.is_empty() {
            write!(f, "0 (mod 2)")
        } else {
            write!(f, "{} (mod 2)", parts.join(" + "))
        }
    }
}

/// The Q-parity of an isogeny: for an endomorphism the map itself, for a
/// map between different lattices its `f^t f`.
pub fn q_parity(f: &IntegerGModuleMap, p: u64, irreducibles: &IrreducibleSet) -> Result<QParityExpression, IsogenyError> {
    if f.source() == f.target() {
        q_parity_endo(f, p, irreducibles)
    } else {
        q_parity_endo(&compose_transpose(f)?, p, irreducibles)
    }
}

/// The Q-parity of a self-isogeny, component by component over the
/// isotypic decomposition of the source.
pub fn q_parity_endo(e: &IntegerGModuleMap, p: u64, irreducibles: &IrreducibleSet) -> Result<QParityExpression, IsogenyError> {
    if e.source() != e.target() {
        return Err(IsogenyError::Shape("q_parity_endo needs an endomorphism".into()));
    }
    if !e.is_isogeny() {
        return Err(IsogenyError::Shape("map has zero determinant".into()));
    }
    let lattice = e.source();
    let character = lattice.character()?;
    let matrix = e.matrix().to_rational();
    let mut terms = Vec::new();
    for (rho, n) in irreducibles.irreducibles.iter().zip(irreducibles.multiplicities(&character)) {
        if n.is_zero() {
            continue;
        }
        let basis = isotypic_basis(lattice, &rho.character)?;
        let r = basis.solve_in_span(&(&matrix * &basis)).ok_or_else(|| IsogenyError::Shape(format!("{} component not preserved", rho.name)))?;
        let gate = certify(&r, p, rho.end_dim).map_err(|reason| IsogenyError::Refused { component: rho.name.clone(), reason })?;
        let ord = rat_valuation(&r.det(), p);
        terms.push(QParityTerm {
            irreducible: rho.name.clone(),
            dim: rho.dim(),
            end_dim: rho.end_dim,
            multiplicity: n.to_integer().to_usize().expect("small multiplicity"),
            coefficient: Rat::new(ord.into(), BigInt::from(rho.dim())),
            gate,
        });
    }
    Ok(QParityExpression { p, terms, constant: 0 })
}

/// `Theta = source - target` as a relation between permutation modules.
pub fn lattice_relation(f: &IntegerGModuleMap, data: &GroupData) -> Result<RelationVector, IsogenyError> {
    let src = f.source().class_counts(&data.classes)?;
    let tgt = f.target().class_counts(&data.classes)?;
    Ok(RelationVector(src.iter().zip(&tgt).map(|(a, b)| a - b).collect()))
}

/// One irreducible's Q-parity coefficient next to `ord_p C(Theta, rho)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agreement {
    pub irreducible: String,
    pub coefficient: Rat,
    /// `coefficient * dim End(rho)` modulo 2, when it is an integer.
    pub q_parity_bit: Option<u8>,
    pub regconst_bit: u8,
}

impl Agreement {
    #[must_use]
    pub fn agrees(&self) -> bool {
        self.q_parity_bit == Some(self.regconst_bit)
    }
}

/// Compares `q_parity(f)` with the regulator constants of `theta`
/// (by default the relation `source - target` of `f`). The coefficient of
/// `rk_rho` is weighted by `dim End(rho)`, the normalization in which
/// `rk_rho` counts copies of `rho`.
pub fn regconst_agreement(f: &IntegerGModuleMap, p: u64, data: &GroupData, theta: Option<&RelationVector>) -> Result<Vec<Agreement>, IsogenyError> {
    let theta = match theta {
        Some(t) => t.clone(),
        None => lattice_relation(f, data)?,
    };
    if !data.is_relation(&theta)? {
        return Err(IsogenyError::Shape("source and target are not isomorphic over Q".into()));
    }
    let q = q_parity(f, p, &data.irreducibles)?;
    data.irreducibles
        .irreducibles
        .iter()
        .map(|rho| {
            let coefficient = q.coefficient(&rho.name);
            let weighted = &coefficient * Rat::from_integer(rho.end_dim.into());
            let q_parity_bit = weighted.is_integer().then(|| u8::from(weighted.to_integer().is_odd()));
            let regconst_bit = regulator_constant(data, &theta, &rho.module)?.ord_parity(p);
            Ok(Agreement { irreducible: rho.name.clone(), coefficient, q_parity_bit, regconst_bit })
        })
        .collect()
}

fn certify(r: &QMatrix, p: u64, end_dim: usize) -> Result<Gate, String> {
    if end_dim == 1 {
        return Ok(Gate::QpIrreducible);
    }
    for m in QPoly::new(r.charpoly()).irreducible_factors() {
        let z = m.primitive_integer();
        if !newton_polygon_single_slope(&z, p).map_err(|e| e.to_string())? {
            let shown: Vec<String> = z.iter().map(|c| if c.is_negative() { format!("({c})") } else { c.to_string() }).collect();
            return Err(format!(
                "commutant has dimension {end_dim} and the factor with coefficients [{}] has roots of different {p}-adic valuations",
                shown.join(", ")
            ));
        }
    }
    Ok(Gate::SingleSlope)
}

/// Column basis of the isotypic component of a character: the image of
/// `sum_g chi(g) g`.
fn isotypic_basis(lattice: &super::PermLattice, character: &[i64]) -> Result<QMatrix, IsogenyError> {
    let e = lattice.group().elements()?;
    let n = lattice.rank();
    let mut proj = vec![vec![BigInt::zero(); n]; n];
    for g in 0..e.len() {
        let c = character[e.class_of[g]];
        if c == 0 {
            continue;
        }
        for (i, s) in lattice.summands().iter().enumerate() {
            for (k, &r) in s.reps().iter().enumerate() {
                proj[lattice.index_of(i, e.mul(g, r))][lattice.offset(i) + k] += c;
            }
        }
    }
    Ok(QMatrix::from_fn(n, n, |r, c| Rat::from_integer(proj[r][c].clone())).column_echelon())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::subgroup_classes;
    use crate::isogeny_modules::{build_borel_f, build_dihedral_maps, PermLattice};
    use crate::linalg::ratio;
    use crate::repq::rational_irreducibles;
    use std::sync::Arc;

    fn irreducibles(f: &IntegerGModuleMap) -> IrreducibleSet {
        let g = f.source().group();
        rational_irreducibles(g, &subgroup_classes(g).unwrap(), 1).unwrap()
    }

    #[test]
    fn multiplication_by_p() {
        let f = build_borel_f(3).unwrap();
        let irr = irreducibles(&f);
        let lattice: PermLattice = f.source().clone();
        let q = q_parity(&IntegerGModuleMap::scalar(lattice.clone(), 3).unwrap(), 3, &irr).unwrap();
        let mult = irr.multiplicities(&lattice.character().unwrap());
        for (rho, n) in irr.irreducibles.iter().zip(mult) {
            assert_eq!(q.coefficient(&rho.name), n);
        }
        let unit = q_parity(&IntegerGModuleMap::scalar(lattice, 2).unwrap(), 3, &irr).unwrap();
        assert!(unit.terms.iter().all(|t| t.coefficient.is_zero()));
    }

    #[test]
    fn dihedral_alpha2() {
        for p in [3u64, 5, 7] {
            let maps = build_dihedral_maps(p).unwrap();
            let irr = irreducibles(&maps.f);
            let q = q_parity(&maps.alpha2, p, &irr).unwrap();
            assert_eq!(q.coefficient("1"), ratio(1, 1));
            let rho = q.terms.iter().find(|t| t.dim == p as usize - 1).unwrap();
            assert_eq!(rho.coefficient, ratio(2, p as i64 - 1));
            assert_eq!(q.terms.len(), 2);
        }
    }

    #[test]
    fn borel_expression_is_rank_sum() {
        // rk(K) + rk(M) + rk(L) with Q[G/G] = 1, Q[G/C_p] = sum of the
        // irreducibles trivial on C_p, Q[G/C_{p-1}] = 1 + rho.
        for p in [3u64, 5, 7] {
            let f = build_borel_f(p).unwrap();
            let irr = irreducibles(&f);
            let q = q_parity(&f, p, &irr).unwrap();
            let big = irr.irreducibles.iter().find(|r| r.dim() == p as usize - 1 && r.end_dim == 1).unwrap();
            for seed in 0..16u64 {
                let ranks: Vec<(&str, u64)> = irr.irreducibles.iter().enumerate().map(|(i, r)| (r.name.as_str(), ((seed >> i) & 1) + i as u64 % 3)).collect();
                let rk = |n: &str| ranks.iter().find(|(m, _)| *m == n).unwrap().1;
                let rk_k = rk("1");
                let rk_m: u64 = irr.irreducibles.iter().filter(|r| r.name != big.name).map(|r| rk(&r.name)).sum();
                let rk_l = rk("1") + rk(&big.name);
                assert_eq!(q.evaluate(&ranks), Some(((rk_k + rk_m + rk_l) % 2) as u8), "p = {p}");
            }
        }
    }

    #[test]
    fn agreement_with_regulator_constants() {
        for p in [3u64, 5, 7] {
            let f = build_borel_f(p).unwrap();
            let data = GroupData::new("borel", (**f.source().group()).clone(), 1).unwrap();
            assert!(regconst_agreement(&f, p, &data, None).unwrap().iter().all(Agreement::agrees), "borel {p}");
            let maps = build_dihedral_maps(p).unwrap();
            let data = GroupData::new("dihedral", (**maps.f.source().group()).clone(), 1).unwrap();
            assert!(regconst_agreement(&maps.f, p, &data, None).unwrap().iter().all(Agreement::agrees), "dihedral {p}");
        }
    }

    #[test]
    fn refuses_mixed_valuations() {
        // On Q[C4] the 2-dimensional piece has commutant Q(i); 1 + 2g has
        // eigenvalues 1 + 2i and 1 - 2i, of different 5-adic valuations.
        let g = Arc::new(crate::group_core::presets::cyclic(4).unwrap());
        let lattice = PermLattice::new(Arc::clone(&g), vec![("x".into(), crate::group_core::Subgroup::trivial())]).unwrap();
        let e = g.elements().unwrap();
        let gen = e.index[&g.gens()[0]];
        let img = crate::isogeny_modules::GroupRingElement::element(0).plus(crate::isogeny_modules::GroupRingElement::element(gen).scaled(2));
        let f = IntegerGModuleMap::from_generator_images(lattice.clone(), lattice.clone(), &[img.on(&lattice, 0)]).unwrap();
        let irr = rational_irreducibles(&g, &subgroup_classes(&g).unwrap(), 1).unwrap();
        match q_parity(&f, 5, &irr) {
            Err(IsogenyError::Refused { component, .. }) => assert_eq!(component, "rho2"),
            other => panic!("expected refusal, got {other:?}"),
        }
        assert!(q_parity(&f, 3, &irr).is_ok());
    }
}
