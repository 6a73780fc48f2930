use std::collections::BTreeSet;
use std::fmt;

use super::LocalError;

/// The affine map `x -> a x + b` over `F_p`. The group of these is the
/// Borel group of order `p(p-1)`: translations form the normal `C_p` and
/// the maps fixing 0 form the torus `C_{p-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub a: u64,
    pub b: u64,
}

impl Affine {
    #[must_use]
    pub fn identity() -> Self {
        Self { a: 1, b: 0 }
    }

    #[must_use]
    pub fn translation(b: u64) -> Self {
        Self { a: 1, b }
    }

    #[must_use]
    pub fn scaling(a: u64) -> Self {
        Self { a, b: 0 }
    }

    /// `self` after `other`.
    #[must_use]
    pub fn compose(self, other: Self, p: u64) -> Self {
        Self { a: self.a * other.a % p, b: (self.a * other.b + self.b) % p }
    }

    #[must_use]
    pub fn apply(self, x: u64, p: u64) -> u64 {
        (self.a * x + self.b) % p
    }

    #[must_use]
    pub fn is_translation(self) -> bool {
        self.a == 1
    }

    /// Parses `a x + b` with integer `a`, `b` reduced mod `p`, as in `x+1`,
    /// `-x`, `2x+3` or `x->2x+3`.
    pub fn parse(text: &str, p: u64) -> Result<Self, LocalError> {
        let invalid = || LocalError::InvalidGalois(format!("cannot read '{text}' as an affine map ax+b"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.strip_prefix("x->").unwrap_or(&s);
        let (coef, rest) = s.split_once('x').ok_or_else(invalid)?;
        let a: i64 = match coef {
            "" | "+" => 1,
            "-" => -1,
            c => c.parse().map_err(|_| invalid())?,
        };
        let b: i64 = match rest {
            "" => 0,
            r if r.starts_with('+') || r.starts_with('-') => r.trim_start_matches('+').parse().map_err(|_| invalid())?,
            _ => return Err(invalid()),
        };
        let m = p as i64;
        let a = a.rem_euclid(m) as u64;
        if a == 0 {
            return Err(LocalError::InvalidGalois(format!("'{text}' is not invertible mod {p}")));
        }
        Ok(Self { a, b: b.rem_euclid(m) as u64 })
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x+{}", self.a, self.b)
    }
}

fn closure(gens: &[Affine], p: u64) -> BTreeSet<Affine> {
    let mut out = BTreeSet::from([Affine::identity()]);
    let mut frontier = vec![Affine::identity()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose(x, p);
            if out.insert(y) {
                frontier.push(y);
            }
        }
    }
    out
}

/// The four fields of a Borel extension `F/K`: `M` is fixed by the
/// translations, `L` by the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    K,
    M,
    L,
    F,
}

impl Field {
    pub const ALL: [Self; 4] = [Self::K, Self::M, Self::L, Self::F];

    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::K => "K",
            Self::M => "M",
            Self::L => "L",
            Self::F => "F",
        }
    }

}

/// Primes above a place: `(e, f, count)` triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceDecomposition {
    pub profiles: Vec<(u32, u32, u32)>,
}

impl PlaceDecomposition {
    #[must_use]
    pub fn degree(&self) -> u64 {
        self.profiles.iter().map(|&(e, f, n)| u64::from(e) * u64::from(f) * u64::from(n)).sum()
    }

    #[must_use]
    pub fn prime_count(&self) -> u32 {
        self.profiles.iter().map(|p| p.2).sum()
    }

    #[must_use]
    pub fn is_ramified(&self) -> bool {
        self.profiles.iter().any(|p| p.0 > 1)
    }

    fn from_pairs(mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable();
        let mut profiles: Vec<(u32, u32, u32)> = Vec::new();
        for (e, f) in pairs {
            match profiles.last_mut() {
                Some(last) if last.0 == e && last.1 == f => last.2 += 1,
                _ => profiles.push((e, f, 1)),
            }
        }
        Self { profiles }
    }
}

impl fmt::Display for PlaceDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.profiles.iter().map(|(e, fd, n)| format!("{n}x(e={e},f={fd})")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Decomposition and inertia groups at a place of `K`, as subgroups of
/// `C_p : U` for a subgroup `U` of `F_p^*` (all of it for the Borel group,
/// `{1, -1}` for the dihedral group of order `2p`).
#[derive(Clone, Debug)]
pub struct LocalGalois {
    p: u64,
    units: Vec<u64>,
    decomposition: BTreeSet<Affine>,
    inertia: BTreeSet<Affine>,
    inertia_gens: Vec<Affine>,
    frobenius: Affine,
}

/// Equality of the groups, not of the chosen generators.
impl PartialEq for LocalGalois {
    fn eq(&self, other: &Self) -> bool {
        (self.p, &self.units, &self.decomposition, &self.inertia) == (other.p, &other.units, &other.decomposition, &other.inertia)
    }
}

impl Eq for LocalGalois {}

impl LocalGalois {
    /// Inside the Borel group. Builds `D = <inertia, frobenius>` and checks
    /// that `I` is normal in `D` with cyclic quotient.
    pub fn new(p: u64, inertia_gens: &[Affine], frobenius: Affine) -> Result<Self, LocalError> {
        Self::with_units(p, (1..p).collect(), inertia_gens, frobenius)
    }

    /// Inside the dihedral group `x -> +-x + b` of order `2p`.
    pub fn dihedral(p: u64, inertia_gens: &[Affine], frobenius: Affine) -> Result<Self, LocalError> {
        Self::with_units(p, vec![1, p - 1], inertia_gens, frobenius)
    }

    fn with_units(p: u64, units: Vec<u64>, inertia_gens: &[Affine], frobenius: Affine) -> Result<Self, LocalError> {
        let inertia = closure(inertia_gens, p);
        let mut all = inertia_gens.to_vec();
        all.push(frobenius);
        let decomposition = closure(&all, p);
        let invalid = |m: &str| LocalError::InvalidGalois(m.into());
        if decomposition.iter().any(|g| !units.contains(&g.a)) {
            return Err(invalid("decomposition group is not inside the ambient group"));
        }
        for d in &decomposition {
            let d_inv = decomposition.iter().find(|x| x.compose(*d, p) == Affine::identity()).expect("finite group");
            if inertia.iter().any(|i| !inertia.contains(&d.compose(i.compose(*d_inv, p), p))) {
                return Err(invalid("inertia is not normal in the decomposition group"));
            }
        }
        // D/I is generated by the image of frobenius.
        let mut coset_count = 0;
        let mut x = Affine::identity();
        let mut seen = BTreeSet::new();
        loop {
            let coset: BTreeSet<Affine> = inertia.iter().map(|i| x.compose(*i, p)).collect();
            if !seen.insert(coset.iter().next().copied().expect("nonempty")) {
                break;
            }
            coset_count += 1;
            x = frobenius.compose(x, p);
        }
        if coset_count * inertia.len() != decomposition.len() {
            return Err(invalid("decomposition group modulo inertia is not cyclic on frobenius"));
        }
        Ok(Self { p, units, decomposition, inertia, inertia_gens: inertia_gens.to_vec(), frobenius })
    }

    /// Degree of `field` over `K`.
    #[must_use]
    pub fn field_degree(&self, field: Field) -> u64 {
        let u = self.units.len() as u64;
        match field {
            Field::K => 1,
            Field::M => u,
            Field::L => self.p,
            Field::F => self.p * u,
        }
    }

    #[must_use]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The image of the torus: all of `F_p^*`, or `{1, -1}` when dihedral.
    #[must_use]
    pub fn units(&self) -> &[u64] {
        &self.units
    }

    #[must_use]
    pub fn inertia_generators(&self) -> &[Affine] {
        &self.inertia_gens
    }

    #[must_use]
    pub fn frobenius(&self) -> Affine {
        self.frobenius
    }

    #[must_use]
    pub fn decomposition_order(&self) -> usize {
        self.decomposition.len()
    }

    #[must_use]
    pub fn inertia_order(&self) -> usize {
        self.inertia.len()
    }

    /// `D` meets the translations nontrivially.
    #[must_use]
    pub fn meets_translations(&self) -> bool {
        self.decomposition.iter().any(|g| g.is_translation() && g.b != 0)
    }

    #[must_use]
    pub fn inertia_meets_translations(&self) -> bool {
        self.inertia.iter().any(|g| g.is_translation() && g.b != 0)
    }

    /// Primes above the place in the given field, from the orbits of `D`
    /// and `I` on the corresponding coset space.
    #[must_use]
    pub fn decompose(&self, field: Field) -> PlaceDecomposition {
        let p = self.p;
        let act = |g: Affine, x: u64| -> u64 {
            match field {
                Field::K => 0,
                Field::M => g.a * x % p,
                Field::L => g.apply(x, p),
                Field::F => {
                    let h = Affine { a: x / p, b: x % p };
                    let y = g.compose(h, p);
                    y.a * p + y.b
                }
            }
        };
        let points: Vec<u64> = match field {
            Field::K => vec![0],
            Field::M => self.units.clone(),
            Field::L => (0..p).collect(),
            Field::F => self.units.iter().flat_map(|&a| (0..p).map(move |b| a * p + b)).collect(),
        };
        let orbit = |group: &BTreeSet<Affine>, x: u64| -> BTreeSet<u64> { group.iter().map(|g| act(*g, x)).collect() };
        let mut done = BTreeSet::new();
        let mut pairs = Vec::new();
        for &x in &points {
            if done.contains(&x) {
                continue;
            }
            let o = orbit(&self.decomposition, x);
            let e = orbit(&self.inertia, x).len() as u32;
            pairs.push((e, o.len() as u32 / e));
            done.extend(o);
        }
        PlaceDecomposition::from_pairs(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_add_up() {
        for p in [3u64, 5, 7] {
            let cases = [
                LocalGalois::new(p, &[], Affine::identity()).unwrap(),
                LocalGalois::new(p, &[], Affine::translation(1)).unwrap(),
                LocalGalois::new(p, &[Affine::translation(1)], Affine::scaling(p - 1)).unwrap(),
                LocalGalois::new(p, &[Affine::translation(1), Affine::scaling(p - 1)], Affine::identity()).unwrap(),
            ];
            for g in &cases {
                for field in Field::ALL {
                    assert_eq!(g.decompose(field).degree(), g.field_degree(field));
                }
            }
        }
    }

    #[test]
    fn totally_ramified_cubic() {
        let g = LocalGalois::new(3, &[Affine::translation(1)], Affine::scaling(2)).unwrap();
        assert_eq!(g.decompose(Field::L).profiles, vec![(3, 1, 1)]);
        assert_eq!(g.decompose(Field::M).profiles, vec![(1, 2, 1)]);
        assert_eq!(g.decompose(Field::F).profiles, vec![(3, 2, 1)]);
    }

    #[test]
    fn dihedral_ambient() {
        let g = LocalGalois::dihedral(5, &[Affine::translation(1)], Affine::scaling(4)).unwrap();
        assert_eq!(g.decompose(Field::M).profiles, vec![(1, 2, 1)]);
        assert_eq!(g.decompose(Field::F).profiles, vec![(5, 2, 1)]);
        assert_eq!(g.decompose(Field::L).profiles, vec![(5, 1, 1)]);
        assert!(LocalGalois::dihedral(5, &[], Affine::scaling(2)).is_err());
    }

    #[test]
    fn rejects_non_normal_inertia() {
        assert!(LocalGalois::new(5, &[Affine::scaling(4)], Affine::translation(1)).is_err());
    }
}
