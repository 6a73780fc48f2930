//! Splitting permutation modules into Q-irreducible pieces.
//!
//! The commutant of a permutation module is spanned by orbital matrices.
//! A piece `W` is split by the kernels of the irreducible factors of the
//! characteristic polynomial of a random self-adjoint element of
//! `End_G(W)`. Isotypic pieces that resist this are cut by spinning a vector
//! fixed by a subgroup and taking the orthogonal complement.

use std::collections::HashMap;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::group_core::{subgroup_classes, CosetAction, Elements, Perm, PermGroup, Subgroup, SubgroupClass};
use crate::linalg::{QMatrix, Rat};
use crate::poly::QPoly;

use super::module::{rng, RationalModule};
use super::RepError;

/// Seed for randomized splitting when the caller does not choose one.
pub const DEFAULT_SEED: u64 = 0x5eed_0001;
/// Random commutant samples tried on a piece before falling back to spinning.
pub const SAMPLE_BUDGET: usize = 24;
/// Largest permutation module the engine will decompose.
pub const DIMENSION_CAP: usize = 512;

/// One irreducible summand, with its basis inside the ambient module.
#[derive(Clone, Debug)]
pub struct Piece {
    /// Columns span the summand, in reduced column echelon form.
    pub basis: QMatrix,
    /// The action in that basis.
    pub module: RationalModule,
    pub character: Vec<i64>,
    /// Dimension of `End_G` of the summand.
    pub end_dim: usize,
}

impl Piece {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

/// Decomposition of a permutation module into irreducible pieces.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub degree: usize,
    pub seed: u64,
    pub pieces: Vec<Piece>,
}

impl Decomposition {
    /// Distinct constituents: index of the first piece with each character,
    /// and the number of pieces sharing it.
    #[must_use]
    pub fn summands(&self) -> Vec<(&Piece, usize)> {
        let mut out: Vec<(&Piece, usize)> = Vec::new();
        for p in &self.pieces {
            match out.iter_mut().find(|(q, _)| q.character == p.character) {
                Some((_, m)) => *m += 1,
                None => out.push((p, 1)),
            }
        }
        out
    }

    /// Basis of the isotypic component with the given character, or a
    /// matrix with zero columns if it does not occur.
    #[must_use]
    pub fn isotypic(&self, character: &[i64]) -> QMatrix {
        self.pieces
            .iter()
            .filter(|p| p.character == character)
            .fold(QMatrix::zeros(self.degree, 0), |acc, p| acc.hcat(&p.basis))
    }
}

struct Ctx<'a> {
    g: &'a PermGroup,
    degree: usize,
    /// Permutation of the G-set for every group element.
    element_perms: Vec<Perm>,
    orbitals: Vec<Vec<(usize, usize)>>,
    classes: Option<Vec<SubgroupClass>>,
    rng: ChaCha8Rng,
}

/// Orbits of `G` on ordered pairs of points.
fn orbitals(gen_perms: &[Perm], degree: usize) -> Vec<Vec<(usize, usize)>> {
    let mut seen = vec![false; degree * degree];
    let mut out = Vec::new();
    for start in 0..degree * degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![(start / degree, start % degree)];
        let mut head = 0;
        while head < orbit.len() {
            let (i, j) = orbit[head];
            for p in gen_perms {
                let (a, b) = (p.apply(i), p.apply(j));
                if !seen[a * degree + b] {
                    seen[a * degree + b] = true;
                    orbit.push((a, b));
                }
            }
            head += 1;
        }
        out.push(orbit);
    }
    out
}

/// `P B` for the permutation matrix of `p`.
fn permute_rows(p: &Perm, b: &QMatrix) -> QMatrix {
    let mut out = QMatrix::zeros(b.rows(), b.cols());
    for i in 0..b.rows() {
        let t = p.apply(i);
        for c in 0..b.cols() {
            out[(t, c)] = b[(i, c)].clone();
        }
    }
    out
}

/// Orbital matrix `X` applied to `B`: `(X B)_i = sum_{(i,j) in O} B_j`.
fn orbital_times(o: &[(usize, usize)], b: &QMatrix) -> QMatrix {
    let mut out = QMatrix::zeros(b.rows(), b.cols());
    for &(i, j) in o {
        for c in 0..b.cols() {
            if !b[(j, c)].is_zero() {
                let v = &out[(i, c)] + &b[(j, c)];
                out[(i, c)] = v;
            }
        }
    }
    out
}

/// Linearly independent subset spanning the same space of matrices.
fn reduce_span(ms: Vec<QMatrix>) -> Vec<QMatrix> {
    let Some(first) = ms.first() else { return ms };
    let (r, c) = (first.rows(), first.cols());
    let stacked = QMatrix::from_fn(ms.len(), r * c, |k, idx| ms[k][(idx / c, idx % c)].clone());
    let (red, piv) = stacked.rref();
    (0..piv.len()).map(|k| QMatrix::from_fn(r, c, |i, j| red[(k, i * c + j)].clone())).collect()
}

fn random_combination(basis: &[QMatrix], rng: &mut ChaCha8Rng) -> QMatrix {
    let (r, c) = (basis[0].rows(), basis[0].cols());
    basis.iter().fold(QMatrix::zeros(r, c), |acc, m| {
        let k: i64 = rng.random_range(-4..=4);
        &acc + &m.scale(&Rat::from_integer(k.into()))
    })
}

fn commutes(basis: &[QMatrix]) -> bool {
    basis.iter().enumerate().all(|(i, a)| basis[i + 1..].iter().all(|b| (a * b) == (b * a)))
}

/// Kernels of `m(T)` for the irreducible factors `m` of the minimal
/// polynomial of a semisimple `T`; `None` if there is only one factor.
fn split_by(t: &QMatrix) -> Option<Vec<QMatrix>> {
    let f = QPoly::new(t.charpoly()).irreducible_factors();
    if f.len() < 2 {
        return None;
    }
    Some(f.iter().map(|m| t.eval_poly(m.coeffs()).nullspace()).collect())
}

/// Irreducibility verdict from a commutant basis alone: `Some(true)` if
/// certified irreducible, `Some(false)` if a sampled element splits the
/// module, `None` if undecided within the budget.
pub(crate) fn certify(end: &[QMatrix], budget: usize) -> Option<bool> {
    let end = reduce_span(end.to_vec());
    if end.len() == 1 {
        return Some(true);
    }
    let commutative = commutes(&end);
    let mut r = rng(DEFAULT_SEED);
    for _ in 0..budget {
        let s = random_combination(&end, &mut r);
        let f = QPoly::new(s.charpoly()).irreducible_factors();
        if f.len() >= 2 {
            return Some(false);
        }
        if commutative && f.len() == 1 && f[0].degree() == Some(end.len()) {
            return Some(true);
        }
    }
    None
}

enum Outcome {
    Irreducible(usize),
    Split(Vec<QMatrix>),
}

impl Ctx<'_> {
    fn restrict_end(&self, b: &QMatrix, gwi_bt: &QMatrix) -> Vec<QMatrix> {
        reduce_span(self.orbitals.iter().map(|o| gwi_bt * &orbital_times(o, b)).collect())
    }

    fn process(&mut self, b: &QMatrix) -> Result<Outcome, RepError> {
        let k = b.cols();
        let bt = b.transpose();
        let gw = &bt * b;
        let gwi = gw.inverse().expect("basis has full rank");
        let gwi_bt = &gwi * &bt;
        let end = self.restrict_end(b, &gwi_bt);
        if end.len() == 1 {
            return Ok(Outcome::Irreducible(1));
        }
        let commutative = commutes(&end);
        for _ in 0..SAMPLE_BUDGET {
            let s = random_combination(&end, &mut self.rng);
            let t = &s + &(&(&gwi * &s.transpose()) * &gw);
            if let Some(parts) = split_by(&t) {
                return Ok(Outcome::Split(parts.iter().map(|n| b * n).collect()));
            }
            if commutative {
                let f = QPoly::new(s.charpoly()).irreducible_factors();
                if f.len() == 1 && f[0].degree() == Some(end.len()) {
                    return Ok(Outcome::Irreducible(end.len()));
                }
                if f.len() >= 2 {
                    let parts: Vec<QMatrix> = f.iter().map(|m| s.eval_poly(m.coeffs()).nullspace()).collect();
                    return Ok(Outcome::Split(parts.iter().map(|n| b * n).collect()));
                }
            }
        }
        if let Some(parts) = self.spin_split(b, &gw, &gwi_bt)? {
            return Ok(Outcome::Split(parts));
        }
        Err(RepError::Undecided { dim: k, end_dim: end.len() })
    }

    /// Spins a vector fixed by some subgroup; a proper spin and its
    /// orthogonal complement split the piece.
    fn spin_split(&mut self, b: &QMatrix, gw: &QMatrix, gwi_bt: &QMatrix) -> Result<Option<Vec<QMatrix>>, RepError> {
        if self.classes.is_none() {
            self.classes = Some(subgroup_classes(self.g)?);
        }
        let e = self.g.elements()?;
        let k = b.cols();
        let gen_idx: Vec<usize> = self.g.gens().iter().map(|p| e.index[p]).collect();
        let action: Vec<QMatrix> = gen_idx.iter().map(|&x| gwi_bt * &permute_rows(&self.element_perms[x], b)).collect();
        let classes = self.classes.as_ref().expect("computed");
        for class in classes.iter().rev() {
            let mut stack = QMatrix::zeros(0, k);
            for &x in class.rep.gens() {
                let a = gwi_bt * &permute_rows(&self.element_perms[x], b);
                stack = stack.vcat(&(&a - &QMatrix::identity(k)));
            }
            let fixed = stack.nullspace();
            for c in 0..fixed.cols() {
                let u = spin(&fixed.column(c), &action);
                if u.cols() < k {
                    let perp = (&u.transpose() * gw).nullspace();
                    return Ok(Some(vec![b * &u, b * &perp]));
                }
            }
        }
        Ok(None)
    }
}

/// Smallest subspace containing `v` and stable under `gens`.
fn spin(v: &[Rat], gens: &[QMatrix]) -> QMatrix {
    let k = v.len();
    let mut basis = QMatrix::from_columns(k, &[v.to_vec()]);
    let mut queue = vec![v.to_vec()];
    while let Some(w) = queue.pop() {
        for a in gens {
            let img = a.mul_vec(&w);
            let cand = basis.hcat(&QMatrix::from_columns(k, std::slice::from_ref(&img)));
            if cand.rank() > basis.cols() {
                basis = cand;
                queue.push(img);
            }
        }
    }
    basis
}

/// Decomposes the permutation module of a G-set given by generator images.
pub fn decompose_gset(g: &PermGroup, gen_perms: &[Perm], degree: usize, seed: u64) -> Result<Decomposition, RepError> {
    if degree > DIMENSION_CAP {
        return Err(RepError::DimensionCap { dim: degree, cap: DIMENSION_CAP });
    }
    let element_perms = g.word_images(Perm::identity(degree), gen_perms, |a, b| a.compose(b))?;
    let mut ctx = Ctx { g, degree, element_perms, orbitals: orbitals(gen_perms, degree), classes: None, rng: rng(seed) };
    let e = g.elements()?;
    let mut pending = vec![QMatrix::identity(degree)];
    let mut done: Vec<(QMatrix, usize)> = Vec::new();
    while let Some(b) = pending.pop() {
        match ctx.process(&b)? {
            Outcome::Irreducible(end_dim) => done.push((b, end_dim)),
            Outcome::Split(parts) => pending.extend(parts.into_iter().rev()),
        }
    }
    let mut pieces = Vec::with_capacity(done.len());
    for (b, end_dim) in done {
        let basis = b.column_echelon();
        let bt = basis.transpose();
        let gwi_bt = &(&bt * &basis).inverse().expect("full rank") * &bt;
        let gens: Vec<QMatrix> = gen_perms.iter().map(|p| &gwi_bt * &permute_rows(p, &basis)).collect();
        let module = RationalModule::new(basis.cols(), gens)?.certify();
        let character = e
            .classes
            .iter()
            .map(|c| {
                let t = (&gwi_bt * &permute_rows(&ctx.element_perms[c.rep], &basis)).trace();
                i64::try_from(t.to_integer()).map_err(|_| RepError::Shape("character overflow".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        pieces.push(Piece { basis, module, character, end_dim });
    }
    debug_assert_eq!(pieces.iter().map(Piece::dim).sum::<usize>(), ctx.degree);
    Ok(Decomposition { degree, seed, pieces })
}

/// Decomposes `Q[G/H]`, with cosets in Schreier-tree order.
pub fn decompose_perm_module(g: &PermGroup, h: &Subgroup, seed: u64) -> Result<Decomposition, RepError> {
    let action = CosetAction::new(g, h)?;
    decompose_gset(g, &action.gen_perms, action.degree(), seed)
}

/// Inner product of rational class functions, `(1/|G|) sum_c |c| a(c) b(c)`.
#[must_use]
pub fn class_inner(class_sizes: &[usize], a: &[i64], b: &[i64]) -> Rat {
    let total: usize = class_sizes.iter().sum();
    let s: i64 = class_sizes.iter().zip(a.iter().zip(b)).map(|(&n, (&x, &y))| n as i64 * x * y).sum();
    Rat::new(s.into(), total.into())
}

/// A Q-irreducible representation of `G` with a display name.
#[derive(Clone, Debug)]
pub struct Irreducible {
    pub name: String,
    pub module: RationalModule,
    pub character: Vec<i64>,
    pub end_dim: usize,
}

impl Irreducible {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

/// All Q-irreducible representations of a group.
#[derive(Clone, Debug)]
pub struct IrreducibleSet {
    pub irreducibles: Vec<Irreducible>,
    pub class_sizes: Vec<usize>,
    pub seed: u64,
}

impl IrreducibleSet {
    #[must_use]
    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    #[must_use]
    pub fn by_name(&self, name: &str) -> Option<&Irreducible> {
        self.irreducibles.iter().find(|r| r.name == name)
    }

    #[must_use]
    pub fn index_of_character(&self, character: &[i64]) -> Option<usize> {
        self.irreducibles.iter().position(|r| r.character == character)
    }

    /// Multiplicity of each irreducible in a representation with the given
    /// character.
    #[must_use]
    pub fn multiplicities(&self, character: &[i64]) -> Vec<Rat> {
        self.irreducibles
            .iter()
            .map(|r| class_inner(&self.class_sizes, character, &r.character) / class_inner(&self.class_sizes, &r.character, &r.character))
            .collect()
    }
}

/// Number of conjugacy classes of cyclic subgroups, which equals the
/// number of Q-irreducible representations.
#[must_use]
pub fn cyclic_class_count(e: &Elements, classes: &[SubgroupClass]) -> usize {
    classes
        .iter()
        .filter(|c| c.rep.elements().iter().any(|&x| e.orders[x] as usize == c.order()))
        .count()
}

/// Collects the irreducible constituents of `Q[G/H]` for `H` running from
/// the largest subgroup class down, until every irreducible has appeared.
pub fn rational_irreducibles(g: &PermGroup, classes: &[SubgroupClass], seed: u64) -> Result<IrreducibleSet, RepError> {
    let e = g.elements()?;
    let class_sizes: Vec<usize> = e.classes.iter().map(|c| c.size).collect();
    let target = cyclic_class_count(e, classes);
    let mut found: Vec<(Piece, usize)> = Vec::new();
    for (order_idx, class) in classes.iter().enumerate().rev() {
        if found.len() == target {
            break;
        }
        if g.order() as usize / class.order() > DIMENSION_CAP {
            continue;
        }
        let d = decompose_perm_module(g, &class.rep, seed)?;
        for (piece, _) in d.summands() {
            if !found.iter().any(|(p, _)| p.character == piece.character) {
                found.push((piece.clone(), order_idx));
            }
        }
    }
    if found.len() != target {
        return Err(RepError::Incomplete { found: found.len(), expected: target });
    }
    found.sort_by(|a, b| a.0.dim().cmp(&b.0.dim()).then(b.1.cmp(&a.1)));
    let names = name_irreducibles(&found.iter().map(|(p, _)| p).collect::<Vec<_>>());
    let irreducibles = found
        .into_iter()
        .zip(names)
        .map(|((p, _), name)| Irreducible { name, module: p.module.with_tag("irreducible"), character: p.character, end_dim: p.end_dim })
        .collect();
    Ok(IrreducibleSet { irreducibles, class_sizes, seed })
}

/// `1` for the trivial representation, `eps` for a unique nontrivial
/// one-dimensional one, otherwise `rho<dim>`, with `#k` on repeats.
fn name_irreducibles(pieces: &[&Piece]) -> Vec<String> {
    let base: Vec<String> = pieces
        .iter()
        .map(|p| {
            if p.character.iter().all(|&c| c == 1) {
                "1".to_string()
            } else if p.dim() == 1 {
                "eps".to_string()
            } else {
                format!("rho{}", p.dim())
            }
        })
        .collect();
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for b in &base {
        *counts.entry(b).or_default() += 1;
    }
    let mut used: HashMap<String, usize> = HashMap::new();
    base.iter()
        .map(|b| {
            if counts[b.as_str()] > 1 {
                let k = used.entry(b.clone()).or_default();
                *k += 1;
                format!("{b}#{k}")
            } else {
                b.clone()
            }
        })
        .collect()
}

/// The module of `Q[G/H]` itself, with permutation matrices.
pub fn perm_module(g: &PermGroup, h: &Subgroup) -> Result<RationalModule, RepError> {
    let action = CosetAction::new(g, h)?;
    Ok(RationalModule::permutation(&action.gen_perms, action.degree()))
}
