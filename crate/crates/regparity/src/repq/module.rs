use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group_core::{Elements, PermGroup, Subgroup};
use crate::linalg::{Rat, QMatrix};

use super::RepError;

/// A representation of `G` over Q, given by one matrix per generator of `G`
/// (in the group's generator order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalModule {
    dim: usize,
    gens: Vec<QMatrix>,
    irreducible: bool,
    tag: Option<String>,
}

/// Symmetric positive definite G-invariant form on a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProductGram(pub QMatrix);

/// Sequence of generator indices with `x = g[w0] * g[w1] * ...`.
#[must_use]
pub fn word_of(e: &Elements, mut x: usize) -> Vec<usize> {
    let mut w = Vec::new();
    while x != 0 {
        let (parent, g) = e.word[x];
        w.push(g);
        x = parent;
    }
    w
}

impl RationalModule {
    pub fn new(dim: usize, gens: Vec<QMatrix>) -> Result<Self, RepError> {
        if gens.iter().any(|a| a.rows() != dim || a.cols() != dim) {
            return Err(RepError::Shape(format!("generator matrices must be {dim}x{dim}")));
        }
        Ok(Self { dim, gens, irreducible: false, tag: None })
    }

    /// The trivial one-dimensional module.
    #[must_use]
    pub fn trivial(g: &PermGroup) -> Self {
        Self { dim: 1, gens: vec![QMatrix::identity(1); g.gens().len()], irreducible: true, tag: None }
    }

    /// Permutation module on a G-set given by generator permutations. The
    /// generator `s` sends basis vector `e_i` to `e_{s(i)}`.
    #[must_use]
    pub fn permutation(gen_perms: &[crate::group_core::Perm], degree: usize) -> Self {
        let gens = gen_perms.iter().map(perm_matrix).collect();
        Self { dim: degree, gens, irreducible: false, tag: None }
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[must_use]
    pub fn gens(&self) -> &[QMatrix] {
        &self.gens
    }

    #[must_use]
    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    #[must_use]
    pub fn tag(&self) -> Option<&str> {
        self.tag.as_deref()
    }

    pub(crate) fn certify(mut self) -> Self {
        self.irreducible = true;
        self
    }

    #[must_use]
    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = Some(tag.into());
        self
    }

    /// Image of the element with index `x`.
    #[must_use]
    pub fn image(&self, e: &Elements, x: usize) -> QMatrix {
        word_of(e, x).iter().fold(QMatrix::identity(self.dim), |acc, &g| &acc * &self.gens[g])
    }

    /// Images of all elements, indexed like `Elements::list`.
    pub fn all_images(&self, g: &PermGroup) -> Result<Vec<QMatrix>, RepError> {
        Ok(g.word_images(QMatrix::identity(self.dim), &self.gens, |a, b| a * b)?)
    }

    /// Checks that the generator matrices define a homomorphism: along
    /// every edge of the Cayley graph, image(s x) = image(s) image(x).
    pub fn verify_action(&self, g: &PermGroup) -> Result<bool, RepError> {
        if self.gens.len() != g.gens().len() {
            return Ok(false);
        }
        let e = g.elements()?;
        let images = self.all_images(g)?;
        let gen_idx: Vec<usize> = g.gens().iter().map(|p| e.index[p]).collect();
        for (x, img) in images.iter().enumerate() {
            for (s, &si) in gen_idx.iter().enumerate() {
                if images[e.mul(si, x)] != &self.gens[s] * img {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Character values on the conjugacy classes of `g`.
    pub fn character(&self, g: &PermGroup) -> Result<Vec<i64>, RepError> {
        let e = g.elements()?;
        e.classes.iter().map(|c| integral_trace(&self.image(e, c.rep))).collect()
    }

    /// `P^-1 A P` for every generator.
    pub fn conjugated(&self, p: &QMatrix) -> Result<Self, RepError> {
        let inv = p.inverse().ok_or_else(|| RepError::Shape("conjugating matrix is singular".into()))?;
        let gens = self.gens.iter().map(|a| &(&inv * a) * p).collect();
        Ok(Self { dim: self.dim, gens, irreducible: self.irreducible, tag: self.tag.clone() })
    }

    /// Basis of the commutant `{X : A X = X A}` by solving the linear system.
    #[must_use]
    pub fn commutant_basis(&self) -> Vec<QMatrix> {
        let d = self.dim;
        let mut rows = Vec::new();
        for a in &self.gens {
            // (A X - X A)_{ij} = sum_k A_ik X_kj - X_ik A_kj
            for i in 0..d {
                for j in 0..d {
                    let mut row = vec![Rat::zero(); d * d];
                    for k in 0..d {
                        row[k * d + j] += &a[(i, k)];
                        row[i * d + k] -= &a[(k, j)];
                    }
                    rows.push(row);
                }
            }
        }
        let sys = if rows.is_empty() {
            QMatrix::zeros(0, d * d)
        } else {
            QMatrix::from_fn(rows.len(), d * d, |r, c| rows[r][c].clone())
        };
        let ns = sys.nullspace();
        (0..ns.cols()).map(|k| QMatrix::from_fn(d, d, |i, j| ns[(i * d + j, k)].clone())).collect()
    }

    /// Irreducibility certificate from the commutant: dimension one, or a
    /// commutative commutant containing an element whose minimal polynomial
    /// is irreducible of full degree.
    #[must_use]
    pub fn certify_by_commutant(&self) -> Option<bool> {
        super::decompose::certify(&self.commutant_basis(), 16)
    }
}

pub(crate) fn perm_matrix(p: &crate::group_core::Perm) -> QMatrix {
    let n = p.degree();
    let mut m = QMatrix::zeros(n, n);
    for i in 0..n {
        m[(p.apply(i), i)] = Rat::one();
    }
    m
}

fn integral_trace(m: &QMatrix) -> Result<i64, RepError> {
    let t = m.trace();
    if !t.is_integer() {
        return Err(RepError::Shape(format!("non-integral character value {t}")));
    }
    i64::try_from(t.to_integer()).map_err(|_| RepError::Shape("character value overflow".into()))
}

impl InnerProductGram {
    #[must_use]
    pub fn matrix(&self) -> &QMatrix {
        &self.0
    }

    /// Symmetric, positive definite and invariant under every generator.
    #[must_use]
    pub fn is_valid_for(&self, m: &RationalModule) -> bool {
        self.0.is_positive_definite()
            && m.gens().iter().all(|a| &(&a.transpose() * &self.0) * a == self.0)
    }
}

/// `sum_g rho(g)^T rho(g)` over all elements of `g`.
pub fn invariant_inner_product(g: &PermGroup, m: &RationalModule) -> Result<InnerProductGram, RepError> {
    averaged_form(g, m, &QMatrix::identity(m.dim()))
}

/// `sum_g rho(g)^T S rho(g)` for a symmetric positive definite seed `S`.
pub fn averaged_form(g: &PermGroup, m: &RationalModule, seed: &QMatrix) -> Result<InnerProductGram, RepError> {
    let mut acc = QMatrix::zeros(m.dim(), m.dim());
    for a in m.all_images(g)? {
        acc = &acc + &(&(&a.transpose() * seed) * &a);
    }
    Ok(InnerProductGram(acc))
}

/// Invariant form averaged from a random positive definite seed `L L^T + I`
/// with `L` lower triangular with small integer entries.
pub fn random_inner_product(g: &PermGroup, m: &RationalModule, rng: &mut ChaCha8Rng) -> Result<InnerProductGram, RepError> {
    let d = m.dim();
    let l = QMatrix::from_fn(d, d, |i, j| if j <= i { Rat::from_integer(rng.random_range(-3i64..=3).into()) } else { Rat::zero() });
    let seed = &(&l * &l.transpose()) + &QMatrix::identity(d);
    averaged_form(g, m, &seed)
}

/// Seeded generator used for every randomized choice in the library.
#[must_use]
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Basis of `M^H` in reduced column echelon form.
pub fn fixed_subspace(g: &PermGroup, m: &RationalModule, h: &Subgroup) -> Result<QMatrix, RepError> {
    let e = g.elements()?;
    let d = m.dim();
    let mut stack = QMatrix::zeros(0, d);
    for &x in h.gens() {
        stack = stack.vcat(&(&m.image(e, x) - &QMatrix::identity(d)));
    }
    Ok(stack.nullspace().column_echelon())
}

/// `det(P^T (B / |H|) P)` for the echelon basis `P` of `M^H`; 1 when the
/// fixed space is zero.
pub fn gram_det_on_fixed(g: &PermGroup, m: &RationalModule, h: &Subgroup, b: &InnerProductGram) -> Result<Rat, RepError> {
    let p = fixed_subspace(g, m, h)?;
    if p.cols() == 0 {
        return Ok(Rat::one());
    }
    let scaled = b.0.scale(&Rat::new(1.into(), h.order().into()));
    Ok((&(&p.transpose() * &scaled) * &p).det())
}
