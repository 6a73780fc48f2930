use std::collections::{BTreeMap, HashSet};

use super::{Elements, GroupError, Perm, PermGroup};

/// Default cap on the group order for subgroup enumeration.
pub const SUBGROUP_CAP: u128 = 2000;

/// A subgroup, as sorted element indices of the ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    gens: Vec<usize>,
}

impl Subgroup {
    #[must_use]
    pub fn trivial() -> Self {
        Self { elements: vec![0], gens: Vec::new() }
    }

    /// Subgroup generated by the given element indices.
    #[must_use]
    pub fn generated(e: &Elements, gens: &[usize]) -> Self {
        Self::extend(&Self::trivial(), e, gens)
    }

    /// Subgroup generated by permutations, which must lie in `g`.
    pub fn from_perms(g: &PermGroup, perms: &[Perm]) -> Result<Self, GroupError> {
        let e = g.elements()?;
        let idx = perms
            .iter()
            .map(|p| e.index.get(p).copied().ok_or_else(|| GroupError::NotContained(p.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::generated(e, &idx))
    }

    /// `<self, extra>`, closing under right multiplication by generators.
    #[must_use]
    pub fn extend(&self, e: &Elements, extra: &[usize]) -> Self {
        let mut gens = self.gens.clone();
        for &x in extra {
            if !gens.contains(&x) && x != 0 {
                gens.push(x);
            }
        }
        let mut inside = vec![false; e.len()];
        let mut list = self.elements.clone();
        for &x in &list {
            inside[x] = true;
        }
        let mut head = 0;
        while head < list.len() {
            let y = list[head];
            for &s in &gens {
                let z = e.mul(y, s);
                if !inside[z] {
                    inside[z] = true;
                    list.push(z);
                }
            }
            head += 1;
        }
        list.sort_unstable();
        Self { elements: list, gens }
    }

    #[must_use]
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    #[must_use]
    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    #[must_use]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[must_use]
    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    #[must_use]
    pub fn conjugate(&self, e: &Elements, g: usize) -> Self {
        let mut elements: Vec<usize> = self.elements.iter().map(|&x| e.conj(g, x)).collect();
        elements.sort_unstable();
        Self { elements, gens: self.gens.iter().map(|&x| e.conj(g, x)).collect() }
    }

    /// Generator permutations of the subgroup.
    #[must_use]
    pub fn gen_perms(&self, e: &Elements) -> Vec<Perm> {
        self.gens.iter().map(|&x| e.list[x].clone()).collect()
    }

    #[must_use]
    pub fn is_normal(&self, e: &Elements) -> bool {
        (0..e.len()).all(|g| self.elements.iter().all(|&x| self.contains(e.conj(g, x))))
    }
}

/// A conjugacy class of subgroups with its canonical representative.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub rep: Subgroup,
    pub class_size: usize,
    pub label: String,
}

impl SubgroupClass {
    #[must_use]
    pub fn order(&self) -> usize {
        self.rep.order()
    }
}

fn all_conjugates(e: &Elements, h: &Subgroup) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in 0..e.len() {
        let c = h.conjugate(e, g);
        if seen.insert(c.elements.clone()) {
            out.push(c);
        }
    }
    out
}

/// Every conjugacy class of subgroups, sorted by (order, canonical
/// element list). The canonical representative is the conjugate with the
/// lexicographically least sorted element list.
pub fn subgroup_classes(g: &PermGroup) -> Result<Vec<SubgroupClass>, GroupError> {
    subgroup_classes_with_cap(g, SUBGROUP_CAP)
}

pub fn subgroup_classes_with_cap(g: &PermGroup, cap: u128) -> Result<Vec<SubgroupClass>, GroupError> {
    if g.order() > cap {
        return Err(GroupError::Capacity { order: g.order(), cap });
    }
    let e = g.elements()?;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut reps: Vec<(Subgroup, usize)> = Vec::new();
    let add = |h: Subgroup, seen: &mut HashSet<Vec<usize>>, reps: &mut Vec<(Subgroup, usize)>| {
        let conjugates = all_conjugates(e, &h);
        let size = conjugates.len();
        let canon = conjugates.into_iter().min_by(|a, b| a.elements.cmp(&b.elements)).expect("nonempty");
        for c in all_conjugates(e, &canon) {
            seen.insert(c.elements);
        }
        reps.push((canon, size));
    };
    add(Subgroup::trivial(), &mut seen, &mut reps);
    let mut i = 0;
    while i < reps.len() {
        let h = reps[i].0.clone();
        for x in 0..e.len() {
            if h.contains(x) {
                continue;
            }
            let u = h.extend(e, &[x]);
            if !seen.contains(&u.elements) {
                add(u, &mut seen, &mut reps);
            }
        }
        i += 1;
    }
    reps.sort_by(|a, b| a.0.order().cmp(&b.0.order()).then_with(|| a.0.elements.cmp(&b.0.elements)));
    let labels: Vec<String> = reps.iter().map(|(h, _)| structure_label(e, h)).collect();
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for l in &labels {
        *counts.entry(l).or_default() += 1;
    }
    let mut used: BTreeMap<String, usize> = BTreeMap::new();
    let out = reps
        .iter()
        .zip(&labels)
        .map(|((h, size), l)| {
            let label = if counts[l.as_str()] > 1 {
                let k = used.entry(l.clone()).or_default();
                *k += 1;
                format!("{l}#{k}")
            } else {
                l.clone()
            };
            SubgroupClass { rep: h.clone(), class_size: *size, label }
        })
        .collect();
    Ok(out)
}

fn order_counts(e: &Elements, h: &Subgroup) -> BTreeMap<u64, usize> {
    let mut m = BTreeMap::new();
    for &x in h.elements() {
        *m.entry(e.orders[x]).or_default() += 1;
    }
    m
}

/// Display name from the isomorphism type, as far as order statistics and
/// a few structural checks can tell.
#[must_use]
pub fn structure_label(e: &Elements, h: &Subgroup) -> String {
    let n = h.order();
    if n == 1 {
        return "1".into();
    }
    let counts = order_counts(e, h);
    if counts.contains_key(&(n as u64)) {
        return format!("C{n}");
    }
    let abelian = h.gens.iter().all(|&a| h.gens.iter().all(|&b| e.mul(a, b) == e.mul(b, a)));
    if abelian {
        return abelian_label(e, h);
    }
    let c = |k: u64| counts.get(&k).copied().unwrap_or(0);
    // (order, element counts by order, label)
    type Signature<'a> = (usize, &'a [(u64, usize)], &'a str);
    let known: &[Signature] = &[
        (6, &[(2, 3), (3, 2)], "S3"),
        (8, &[(2, 1), (4, 6)], "Q8"),
        (12, &[(2, 3), (3, 8)], "A4"),
        (24, &[(2, 9), (3, 8), (4, 6)], "S4"),
        (60, &[(2, 15), (3, 20), (5, 24)], "A5"),
        (120, &[(2, 25), (3, 20), (4, 30), (5, 24), (6, 20)], "S5"),
        (360, &[(2, 45), (3, 80), (4, 90), (5, 144)], "A6"),
    ];
    for (order, profile, name) in known {
        if n == *order && profile.iter().all(|&(k, v)| c(k) == v) && profile.iter().map(|p| p.1).sum::<usize>() + 1 == n {
            return (*name).into();
        }
    }
    let half = (n / 2) as u64;
    if n.is_multiple_of(2) && c(2) == n / 2 + if half.is_multiple_of(2) { 1 } else { 0 } {
        let cyclic_half = h.elements().iter().find(|&&x| e.orders[x] == half);
        if let Some(&r) = cyclic_half {
            let rot = Subgroup::generated(e, &[r]);
            if h.elements().iter().all(|&x| rot.contains(x) || e.orders[x] == 2) {
                return format!("D{n}");
            }
        }
    }
    if let Some(l) = metacyclic_label(e, h) {
        return l;
    }
    format!("G{n}")
}

fn abelian_label(e: &Elements, h: &Subgroup) -> String {
    let n = h.order() as u64;
    let mut factors: Vec<u64> = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            let mut a = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                a += 1;
            }
            // N(k) = #{x : x^(p^k) = 1} = p^(sum min(k, e_i)); recover the e_i.
            let count = |k: u32| -> u32 {
                let pk = p.pow(k);
                let c = h.elements().iter().filter(|&&x| pk % e.orders[x] == 0).count() as u64;
                c.ilog(p)
            };
            let mut prev = 0;
            let mut ge = Vec::new();
            for k in 1..=a {
                let nk = count(k);
                ge.push(nk - prev);
                prev = nk;
            }
            // ge[k-1] = #{i : e_i >= k}
            for k in (1..=a as usize).rev() {
                let here = ge[k - 1] - ge.get(k).copied().unwrap_or(0);
                for _ in 0..here {
                    factors.push(p.pow(k as u32));
                }
            }
        }
        p += 1;
    }
    factors.sort_unstable();
    factors.iter().map(|f| format!("C{f}")).collect::<Vec<_>>().join("x")
}

fn metacyclic_label(e: &Elements, h: &Subgroup) -> Option<String> {
    let n = h.order() as u64;
    for &c in h.elements() {
        let p = e.orders[c];
        if p < 2 || !crate::arith::is_prime(p) || (n / p).is_multiple_of(p) {
            continue;
        }
        let kernel = Subgroup::generated(e, &[c]);
        if !h.gens.iter().all(|&g| kernel.elements().iter().all(|&x| kernel.contains(e.conj(g, x)))) {
            continue;
        }
        let q = n / p;
        let quotient_cyclic = h.elements().iter().any(|&y| {
            let mut k = 1;
            let mut z = y;
            while !kernel.contains(z) {
                z = e.mul(z, y);
                k += 1;
            }
            k == q
        });
        if quotient_cyclic {
            return Some(format!("C{p}:C{q}"));
        }
    }
    None
}

/// Transitive action of `g` on the left cosets of `h`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    /// Coset representatives as element indices; coset 0 is `h` itself.
    pub reps: Vec<usize>,
    /// Images of the group's generators as permutations of the cosets.
    pub gen_perms: Vec<Perm>,
    coset_of: Vec<usize>,
}

impl CosetAction {
    /// Cosets in Schreier-tree order: breadth first from `h`, applying the
    /// group's generators in order.
    pub fn new(g: &PermGroup, h: &Subgroup) -> Result<Self, GroupError> {
        let e = g.elements()?;
        let gen_idx: Vec<usize> = g.gens().iter().map(|p| e.index[p]).collect();
        let mut coset_of = vec![usize::MAX; e.len()];
        let mut reps = Vec::new();
        let mark = |r: usize, idx: usize, coset_of: &mut Vec<usize>| {
            for &x in h.elements() {
                coset_of[e.mul(r, x)] = idx;
            }
        };
        mark(0, 0, &mut coset_of);
        reps.push(0);
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head];
            for &s in &gen_idx {
                let y = e.mul(s, r);
                if coset_of[y] == usize::MAX {
                    let idx = reps.len();
                    mark(y, idx, &mut coset_of);
                    reps.push(y);
                }
            }
            head += 1;
        }
        let gen_perms = gen_idx
            .iter()
            .map(|&s| Perm::from_images(reps.iter().map(|&r| coset_of[e.mul(s, r)]).collect()).expect("coset action is a bijection"))
            .collect();
        Ok(Self { reps, gen_perms, coset_of })
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    /// Index of the coset containing the element `x`.
    #[must_use]
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// Permutation of the cosets induced by element `x`.
    #[must_use]
    pub fn element_perm(&self, e: &Elements, x: usize) -> Perm {
        Perm::from_images(self.reps.iter().map(|&r| self.coset_of[e.mul(x, r)]).collect()).expect("bijection")
    }

    /// The action as a permutation group.
    pub fn to_group(&self) -> Result<PermGroup, GroupError> {
        PermGroup::new(self.degree(), self.gen_perms.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::presets;

    fn labels(g: &PermGroup) -> Vec<String> {
        subgroup_classes(g).unwrap().into_iter().map(|c| c.label).collect()
    }

    #[test]
    fn s3_classes() {
        assert_eq!(labels(&presets::symmetric(3).unwrap()), ["1", "C2", "C3", "S3"]);
    }

    #[test]
    fn a5_classes() {
        let l = labels(&presets::alternating(5).unwrap());
        assert_eq!(l, ["1", "C2", "C3", "C2xC2", "C5", "S3", "D10", "A4", "A5"]);
    }

    #[test]
    fn trivial_group_has_one_class() {
        let g = PermGroup::new(1, vec![]).unwrap();
        assert_eq!(labels(&g), ["1"]);
    }

    #[test]
    fn coset_actions() {
        let g = presets::symmetric(3).unwrap();
        let classes = subgroup_classes(&g).unwrap();
        let a = CosetAction::new(&g, &classes[1].rep).unwrap();
        assert_eq!(a.degree(), 3);
        assert_eq!(CosetAction::new(&g, &classes[3].rep).unwrap().degree(), 1);
        let reg = CosetAction::new(&g, &classes[0].rep).unwrap();
        assert_eq!(reg.degree(), 6);
        assert_eq!(reg.to_group().unwrap().order(), 6);
    }

    #[test]
    fn class_counts_of_larger_groups() {
        let count = |g: PermGroup| subgroup_classes(&g).unwrap().len();
        assert_eq!(count(presets::symmetric(4).unwrap()), 11);
        assert_eq!(count(presets::symmetric(5).unwrap()), 19);
        assert_eq!(count(presets::symmetric(6).unwrap()), 56);
        let borel = subgroup_classes(&presets::borel(7).unwrap()).unwrap();
        let l: Vec<&str> = borel.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(l, ["1", "C2", "C3", "C6", "C7", "D14", "C7:C3", "C7:C6"]);
    }

    #[test]
    fn capacity_error() {
        let g = presets::symmetric(7).unwrap();
        assert!(matches!(subgroup_classes(&g), Err(GroupError::Capacity { .. })));
    }
}
