//! Deterministic Schreier-Sims, used for group orders independently of
//! element enumeration.

use std::collections::HashMap;

use super::Perm;

struct Level {
    base: usize,
    // orbit point -> element mapping the base point to it
    transversal: HashMap<usize, Perm>,
}

fn orbit(base: usize, gens: &[&Perm], degree: usize) -> HashMap<usize, Perm> {
    let mut t = HashMap::new();
    t.insert(base, Perm::identity(degree));
    let mut queue = vec![base];
    while let Some(u) = queue.pop() {
        let tu = t[&u].clone();
        for g in gens {
            let v = g.apply(u);
            if let std::collections::hash_map::Entry::Vacant(e) = t.entry(v) {
                e.insert(g.compose(&tu));
                queue.push(v);
            }
        }
    }
    t
}

/// Sifts `h` through levels `from..`; returns the residue and the level at
/// which sifting stopped (`levels.len()` if it passed every level).
fn sift(levels: &[Level], from: usize, mut h: Perm) -> (Perm, usize) {
    for (k, level) in levels.iter().enumerate().skip(from) {
        let pt = h.apply(level.base);
        match level.transversal.get(&pt) {
            Some(t) => h = t.inverse().compose(&h),
            None => return (h, k),
        }
    }
    (h, levels.len())
}

/// Order of the group generated by `gens` on `degree` points.
#[must_use]
pub fn order(degree: usize, gens: &[Perm]) -> u128 {
    let mut strong: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let mut bases: Vec<usize> = Vec::new();
    for g in &strong {
        if bases.iter().all(|&b| g.apply(b) == b) {
            bases.push((0..degree).find(|&i| g.apply(i) != i).expect("nontrivial"));
        }
    }
    let fixes_prefix = |g: &Perm, bases: &[usize], i: usize| bases[..i].iter().all(|&b| g.apply(b) == b);
    let rebuild = |strong: &[Perm], bases: &[usize]| -> Vec<Level> {
        (0..bases.len())
            .map(|i| {
                let s: Vec<&Perm> = strong.iter().filter(|g| fixes_prefix(g, bases, i)).collect();
                Level { base: bases[i], transversal: orbit(bases[i], &s, degree) }
            })
            .collect()
    };
    let mut levels = rebuild(&strong, &bases);
    let mut i = bases.len();
    'outer: while i > 0 {
        i -= 1;
        let s: Vec<Perm> = strong.iter().filter(|g| fixes_prefix(g, &bases, i)).cloned().collect();
        let reps: Vec<(usize, Perm)> = levels[i].transversal.iter().map(|(k, v)| (*k, v.clone())).collect();
        for (u, tu) in &reps {
            for g in &s {
                let v = g.apply(*u);
                let tv = &levels[i].transversal[&v];
                let schreier = tv.inverse().compose(&g.compose(tu));
                let (h, j) = sift(&levels, i + 1, schreier);
                if !h.is_identity() {
                    if j == bases.len() {
                        bases.push((0..degree).find(|&x| h.apply(x) != x).expect("nontrivial"));
                    }
                    strong.push(h);
                    levels = rebuild(&strong, &bases);
                    i = j + 1;
                    continue 'outer;
                }
            }
        }
    }
    levels.iter().map(|l| l.transversal.len() as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_small_groups() {
        let s = |c: &[Vec<usize>], n| Perm::from_cycles(n, c).unwrap();
        assert_eq!(order(3, &[s(&[vec![0, 1]], 3), s(&[vec![0, 1, 2]], 3)]), 6);
        assert_eq!(order(5, &[s(&[vec![0, 1, 2, 3, 4]], 5), s(&[vec![0, 1, 2]], 5)]), 60);
        assert_eq!(order(1, &[]), 1);
        let n = 8;
        assert_eq!(order(n, &[s(&[(0..n).collect()], n), s(&[vec![0, 1]], n)]), 40320);
    }
}
