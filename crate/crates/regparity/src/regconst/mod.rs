//! Regulator constants of relations between permutation modules, with
//! values in `Q*/Q*^2`.

mod square;

pub use square::SquareClass;

use num_traits::One;
use thiserror::Error;

use crate::arith::prime_divisors;
use crate::group_core::{subgroup_classes, PermGroup, SubgroupClass};
use crate::linalg::{QMatrix, Rat};
use crate::repq::{
    fixed_subspace, gram_det_on_fixed, invariant_inner_product, is_relation, rational_irreducibles, relation_lattice,
    format_terms, InnerProductGram, IrreducibleSet, RationalModule, RelationVector, RepError,
};
use num_traits::ToPrimitive;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("module is not certified irreducible over Q")]
    NotIrreducible,
    #[error("{0} is not a relation between permutation representations")]
    NotRelation(String),
    #[error("no subgroup class labelled '{0}'")]
    UnknownLabel(String),
    #[error("unknown irreducible '{0}'")]
    UnknownIrreducible(String),
}

impl From<crate::group_core::GroupError> for RegError {
    fn from(e: crate::group_core::GroupError) -> Self {
        Self::Rep(e.into())
    }
}

/// A group with its subgroup classes and Q-irreducible representations.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub name: String,
    pub group: PermGroup,
    pub classes: Vec<SubgroupClass>,
    pub irreducibles: IrreducibleSet,
}

impl GroupData {
    pub fn new(name: impl Into<String>, group: PermGroup, seed: u64) -> Result<Self, RegError> {
        let classes = subgroup_classes(&group)?;
        let irreducibles = rational_irreducibles(&group, &classes, seed)?;
        Ok(Self { name: name.into(), group, classes, irreducibles })
    }

    pub fn class_index(&self, label: &str) -> Result<usize, RegError> {
        self.classes.iter().position(|c| c.label == label).ok_or_else(|| RegError::UnknownLabel(label.into()))
    }

    /// Label of the whole group.
    #[must_use]
    pub fn top_label(&self) -> &str {
        &self.classes.last().expect("at least the whole group").label
    }

    pub fn relation_lattice(&self) -> Result<Vec<RelationVector>, RegError> {
        Ok(relation_lattice(&self.group, &self.classes)?)
    }

    pub fn is_relation(&self, v: &RelationVector) -> Result<bool, RegError> {
        Ok(is_relation(&self.group, &self.classes, v)?)
    }
}

/// A relation written as ordered terms, so it prints as given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedRelation {
    pub name: String,
    pub terms: Vec<(i64, String)>,
}

impl NamedRelation {
    #[must_use]
    pub fn new(name: &str, terms: &[(i64, &str)]) -> Self {
        Self { name: name.into(), terms: terms.iter().map(|&(n, l)| (n, l.to_string())).collect() }
    }

    #[must_use]
    pub fn display(&self) -> String {
        format_terms(self.terms.iter().map(|(n, l)| (*n, l.as_str())))
    }

    pub fn to_vector(&self, data: &GroupData) -> Result<RelationVector, RegError> {
        let mut v = RelationVector::zero(data.classes.len());
        for (n, label) in &self.terms {
            v.0[data.class_index(label)?] += n;
        }
        Ok(v)
    }
}

/// `2S3+1-2C2-C3`.
#[must_use]
pub fn s3_relation() -> NamedRelation {
    NamedRelation::new("Theta", &[(2, "S3"), (1, "1"), (-2, "C2"), (-1, "C3")])
}

/// The five relations generating the relation lattice of `A5`.
#[must_use]
pub fn a5_relations() -> Vec<NamedRelation> {
    vec![
        NamedRelation::new("Theta1", &[(1, "1"), (-3, "C2"), (2, "C2xC2")]),
        NamedRelation::new("Theta2", &[(1, "C2xC2"), (-2, "D10"), (-1, "A4"), (2, "A5")]),
        NamedRelation::new("Theta3", &[(1, "S3"), (-1, "D10"), (-1, "A4"), (1, "A5")]),
        NamedRelation::new("Theta4", &[(1, "1"), (-2, "C2"), (-1, "C5"), (2, "D10")]),
        NamedRelation::new("Theta5", &[(1, "C3"), (-1, "C5"), (-2, "A4"), (2, "A5")]),
    ]
}

/// `1 - (p-1) C_{p-1} - C_p + (p-1) G` for the Borel group; `top` is the
/// label of the whole group.
#[must_use]
pub fn borel_relation(p: u64, top: &str) -> NamedRelation {
    let k = p as i64 - 1;
    let cp1 = format!("C{}", p - 1);
    let cp = format!("C{p}");
    NamedRelation::new("Theta", &[(1, "1"), (-k, &cp1), (-1, &cp), (k, top)])
}

/// `1 - 2C2 - Cp + 2D2p` for the dihedral group of order `2p`.
#[must_use]
pub fn dihedral_relation(p: u64, top: &str) -> NamedRelation {
    let cp = format!("C{p}");
    NamedRelation::new("Theta", &[(1, "1"), (-2, "C2"), (-1, &cp), (2, top)])
}

/// `C(Theta, rho)` with the inner product obtained by averaging.
pub fn regulator_constant(data: &GroupData, theta: &RelationVector, rho: &RationalModule) -> Result<SquareClass, RegError> {
    let b = invariant_inner_product(&data.group, rho)?;
    regulator_constant_with(data, theta, rho, &b)
}

/// `C(Theta, rho)` for a given G-invariant inner product.
pub fn regulator_constant_with(
    data: &GroupData,
    theta: &RelationVector,
    rho: &RationalModule,
    b: &InnerProductGram,
) -> Result<SquareClass, RegError> {
    if !rho.is_irreducible() {
        return Err(RegError::NotIrreducible);
    }
    if !data.is_relation(theta)? {
        return Err(RegError::NotRelation(theta.display(&data.classes)));
    }
    regulator_value(data, theta, rho, b).map(|q| SquareClass::from_rat(&q))
}

/// The exact rational `prod_H det((1/|H|) <,> | rho^H)^{n_H}` before
/// reduction mod squares.
pub fn regulator_value(data: &GroupData, theta: &RelationVector, rho: &RationalModule, b: &InnerProductGram) -> Result<Rat, RegError> {
    let mut acc = Rat::one();
    for (n, class) in theta.coeffs().iter().zip(&data.classes) {
        if *n == 0 {
            continue;
        }
        let d = gram_det_on_fixed(&data.group, rho, &class.rep, b)?;
        let pow = num_traits::pow(d, n.unsigned_abs() as usize);
        acc = if *n > 0 { acc * pow } else { acc / pow };
    }
    Ok(acc)
}

/// Regulator constants of several relations against every irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegConstTable {
    pub group: String,
    pub relations: Vec<(String, String)>,
    pub irreducibles: Vec<String>,
    pub entries: Vec<Vec<SquareClass>>,
}

/// Evaluates each `(name, relation)` on each irreducible of `data`.
pub fn regconst_table(data: &GroupData, relations: &[(String, RelationVector)]) -> Result<RegConstTable, RegError> {
    let grams = data
        .irreducibles
        .irreducibles
        .iter()
        .map(|r| invariant_inner_product(&data.group, &r.module))
        .collect::<Result<Vec<_>, _>>()?;
    let entries = relations
        .iter()
        .map(|(_, theta)| {
            data.irreducibles
                .irreducibles
                .iter()
                .zip(&grams)
                .map(|(r, b)| regulator_constant_with(data, theta, &r.module, b))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RegConstTable {
        group: data.name.clone(),
        relations: relations.iter().map(|(n, v)| (n.clone(), v.display(&data.classes))).collect(),
        irreducibles: data.irreducibles.irreducibles.iter().map(|r| r.name.clone()).collect(),
        entries,
    })
}

/// Table over named relations, printed with their own term order.
pub fn named_table(data: &GroupData, relations: &[NamedRelation]) -> Result<RegConstTable, RegError> {
    let vectors = relations
        .iter()
        .map(|r| Ok((r.name.clone(), r.to_vector(data)?)))
        .collect::<Result<Vec<_>, RegError>>()?;
    let mut t = regconst_table(data, &vectors)?;
    for (row, r) in t.relations.iter_mut().zip(relations) {
        row.1 = r.display();
    }
    Ok(t)
}

/// Table over the computed lattice basis, relations named `L1`, `L2`, ...
pub fn lattice_table(data: &GroupData) -> Result<RegConstTable, RegError> {
    let basis = data.relation_lattice()?;
    let named: Vec<(String, RelationVector)> = basis.into_iter().enumerate().map(|(i, v)| (format!("L{}", i + 1), v)).collect();
    regconst_table(data, &named)
}

impl RegConstTable {
    /// Entry for the named relation and irreducible.
    #[must_use]
    pub fn get(&self, relation: &str, irreducible: &str) -> Option<&SquareClass> {
        let r = self.relations.iter().position(|(n, _)| n == relation)?;
        let c = self.irreducibles.iter().position(|n| n == irreducible)?;
        Some(&self.entries[r][c])
    }

    /// Row values as machine integers, in irreducible order.
    #[must_use]
    pub fn row_values(&self, r: usize) -> Vec<i64> {
        self.entries[r].iter().map(|c| c.value().to_i64().expect("small square class")).collect()
    }
}

/// `prod_k C(Theta, rho_k)^{n_k}` from one table row and multiplicities keyed
/// by irreducible name.
pub fn regulator_quotient_class(table: &RegConstTable, relation: &str, multiplicities: &[(&str, u64)]) -> Result<SquareClass, RegError> {
    let mut acc = SquareClass::one();
    for &(name, n) in multiplicities {
        let c = table.get(relation, name).ok_or_else(|| RegError::UnknownIrreducible(name.into()))?;
        acc = &acc * &c.pow(n as i64);
    }
    Ok(acc)
}

/// A combination `sum_rho v_rho n_rho` whose parity is determined by local
/// data at `prime`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination {
    pub prime: u64,
    pub vector: Vec<u8>,
}

impl Combination {
    #[must_use]
    pub fn display(&self, names: &[String]) -> String {
        let parts: Vec<&str> = self.vector.iter().zip(names).filter(|(&v, _)| v == 1).map(|(_, n)| n.as_str()).collect();
        parts.join("+")
    }
}

/// For each prime dividing a table entry, an F2-basis (reduced echelon
/// form) of the span of the rows `ord_l(row) mod 2`.
#[must_use]
pub fn computable_combinations(table: &RegConstTable) -> Vec<Combination> {
    let mut primes: Vec<u64> = table
        .entries
        .iter()
        .flatten()
        .flat_map(|c| prime_divisors(c.value()))
        .map(|p| p.to_u64().expect("small prime"))
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let mut out = Vec::new();
    for l in primes {
        let rows: Vec<Vec<u8>> = table.entries.iter().map(|row| row.iter().map(|c| c.ord_parity(l)).collect()).collect();
        for v in f2_echelon(rows) {
            out.push(Combination { prime: l, vector: v });
        }
    }
    out
}

fn f2_echelon(mut rows: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] == 1) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] == 1 {
                let pivot = rows[r].clone();
                rows[i].iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Determinant of the Gram matrix of `v, gv, ..., g^{p-2} v` for the
/// `(p-1)`-dimensional irreducible `rho` of the Borel group, normalized so
/// that `<v, v> = 1`, where `v` spans `rho^{C_{p-1}}`.
pub fn borel_normalized_gram_det(data: &GroupData, p: u64) -> Result<Rat, RegError> {
    let cp = data.class_index(&format!("C{p}"))?;
    let cp1 = data.class_index(&format!("C{}", p - 1))?;
    let rho = borel_rho(data, p)?;
    let m = &rho.module;
    let v = fixed_subspace(&data.group, m, &data.classes[cp1].rep)?;
    debug_assert_eq!(v.cols(), 1);
    debug_assert_eq!(fixed_subspace(&data.group, m, &data.classes[cp].rep)?.cols(), 0);
    let b = invariant_inner_product(&data.group, m)?;
    let g = &m.gens()[0];
    let mut cols = Vec::new();
    let mut w = v.column(0);
    for _ in 0..p - 1 {
        cols.push(w.clone());
        w = g.mul_vec(&w);
    }
    let basis = QMatrix::from_columns(m.dim(), &cols);
    let gram = &(&basis.transpose() * &b.0) * &basis;
    let norm = gram[(0, 0)].clone();
    Ok(gram.scale(&norm.recip()).det())
}

/// The `(p-1)`-dimensional irreducible of the Borel group with no
/// `C_p`-invariants.
pub fn borel_rho(data: &GroupData, p: u64) -> Result<&crate::repq::Irreducible, RegError> {
    let cp = data.class_index(&format!("C{p}"))?;
    for r in &data.irreducibles.irreducibles {
        if r.dim() as u64 == p - 1 && fixed_subspace(&data.group, &r.module, &data.classes[cp].rep)?.cols() == 0 {
            return Ok(r);
        }
    }
    Err(RegError::UnknownIrreducible("rho".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::presets;
    use crate::linalg::ratio;
    use crate::repq::DEFAULT_SEED;

    #[test]
    fn s3_table() {
        let data = GroupData::new("S3", presets::symmetric(3).unwrap(), DEFAULT_SEED).unwrap();
        let t = named_table(&data, &[s3_relation()]).unwrap();
        assert_eq!(t.relations[0].1, "2S3+1-2C2-C3");
        assert_eq!(t.row_values(0), vec![3, 3, 3]);
        let q = regulator_quotient_class(&t, "Theta", &[("1", 1), ("eps", 1), ("rho2", 1)]).unwrap();
        assert_eq!(q, SquareClass::from_int(3));
        let combos = computable_combinations(&t);
        assert_eq!(combos.len(), 1);
        assert_eq!(combos[0].display(&t.irreducibles), "1+eps+rho2");
    }

    #[test]
    fn zero_relation_is_trivial() {
        let data = GroupData::new("S3", presets::symmetric(3).unwrap(), DEFAULT_SEED).unwrap();
        let zero = RelationVector::zero(data.classes.len());
        for r in &data.irreducibles.irreducibles {
            assert!(regulator_constant(&data, &zero, &r.module).unwrap().is_one());
        }
    }

    #[test]
    fn rejects_non_relations() {
        let data = GroupData::new("S3", presets::symmetric(3).unwrap(), DEFAULT_SEED).unwrap();
        let bad = RelationVector(vec![1, 0, 0, -1]);
        let r = &data.irreducibles.irreducibles[0].module;
        assert!(matches!(regulator_constant(&data, &bad, r), Err(RegError::NotRelation(_))));
    }

    #[test]
    fn borel_three_gram() {
        let data = GroupData::new("Borel:3", presets::borel(3).unwrap(), DEFAULT_SEED).unwrap();
        assert_eq!(borel_normalized_gram_det(&data, 3).unwrap(), ratio(3, 4));
    }
}

#[cfg(test)]
mod table_tests {
    use super::*;
    use crate::group_core::presets;
    use crate::linalg::ratio;
    use crate::repq::DEFAULT_SEED;

    #[test]
    fn a5_rows_and_combinations() {
        let data = GroupData::new("A5", presets::alternating(5).unwrap(), DEFAULT_SEED).unwrap();
        let t = named_table(&data, &a5_relations()).unwrap();
        assert_eq!(t.irreducibles, ["1", "rho4", "rho5", "rho6"]);
        let order = ["1", "rho6", "rho4", "rho5"];
        let rows: Vec<Vec<i64>> = t
            .relations
            .iter()
            .map(|(n, _)| order.iter().map(|c| t.get(n, c).unwrap().value().to_i64().unwrap()).collect())
            .collect();
        assert_eq!(rows, [[2, 1, 1, 2], [3, 1, 3, 3], [3, 1, 3, 3], [5, 5, 5, 1], [15, 5, 15, 3]]);
        assert_eq!(data.relation_lattice().unwrap().len(), 5);
        let combos: Vec<(u64, String)> =
            computable_combinations(&t).iter().map(|c| (c.prime, c.display(&t.irreducibles))).collect();
        assert_eq!(
            combos,
            [(2, "1+rho5".to_string()), (3, "1+rho4+rho5".to_string()), (5, "1+rho4+rho6".to_string())]
        );
    }

    #[test]
    fn borel_constants() {
        for (p, gram) in [(5u64, ratio(125, 256)), (7, ratio(16807, 46656))] {
            let d = GroupData::new(format!("Borel:{p}"), presets::borel(p).unwrap(), DEFAULT_SEED).unwrap();
            let t = named_table(&d, &[borel_relation(p, d.top_label())]).unwrap();
            let rho = borel_rho(&d, p).unwrap();
            for (name, c) in t.irreducibles.iter().zip(&t.entries[0]) {
                let dim = d.irreducibles.by_name(name).unwrap().dim() as i64;
                let expect = if *name == rho.name || name == "1" {
                    SquareClass::from_int(p as i64)
                } else {
                    SquareClass::from_int(p as i64).pow(dim)
                };
                assert_eq!(c, &expect, "{name}");
            }
            assert_eq!(borel_normalized_gram_det(&d, p).unwrap(), gram);
        }
    }
}
