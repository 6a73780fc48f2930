use std::collections::HashMap;
use std::sync::OnceLock;

use super::{schreier, GroupError, Perm};

/// Groups larger than this are never enumerated element by element.
pub const ELEMENT_CAP: u128 = 2_520;

/// A finite permutation group given by generators.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    order: u128,
    data: OnceLock<Elements>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        Self { degree: self.degree, gens: self.gens.clone(), order: self.order, data: self.data.clone() }
    }
}

/// Conjugacy class of elements. Classes are sorted by element order, then
/// by representative; the representative is the class member found first.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: usize,
    pub size: usize,
    pub members: Vec<usize>,
    pub element_order: u64,
}

/// Exhaustive element data: index 0 is the identity.
#[derive(Clone, Debug)]
pub struct Elements {
    pub list: Vec<Perm>,
    pub index: HashMap<Perm, usize>,
    /// `list[i] = gens[word[i].1] * list[word[i].0]` for `i > 0`.
    pub word: Vec<(usize, usize)>,
    pub mul: Vec<u32>,
    pub inv: Vec<usize>,
    pub classes: Vec<ConjClass>,
    pub class_of: Vec<usize>,
    pub orders: Vec<u64>,
}

impl Elements {
    #[must_use]
    pub fn len(&self) -> usize {
        self.list.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    #[must_use]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.list.len() + b] as usize
    }

    /// `g x g^{-1}`.
    #[must_use]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv[g])
    }
}

impl PermGroup {
    /// Builds the group generated by `gens` on `degree` points.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::MalformedGenerator("degree must be positive".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::MalformedGenerator(format!("{g} has degree {} not {degree}", g.degree())));
        }
        let order = schreier::order(degree, &gens);
        let group = Self { degree, gens, order, data: OnceLock::new() };
        if cfg!(debug_assertions) && order <= 2000 {
            debug_assert_eq!(group.elements()?.len() as u128, order, "closure and stabilizer chain disagree");
        }
        Ok(group)
    }

    /// Builds a group from image arrays.
    pub fn from_images(degree: usize, images: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let gens = images
            .into_iter()
            .map(|img| {
                if img.len() != degree {
                    return Err(GroupError::MalformedGenerator(format!(
                        "image array of length {} for degree {degree}",
                        img.len()
                    )));
                }
                Perm::from_images(img)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(degree, gens)
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[must_use]
    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    /// Order from the stabilizer chain.
    #[must_use]
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Element data, enumerated on first use.
    pub fn elements(&self) -> Result<&Elements, GroupError> {
        if self.order > ELEMENT_CAP {
            return Err(GroupError::Capacity { order: self.order, cap: ELEMENT_CAP });
        }
        Ok(self.data.get_or_init(|| enumerate(self.degree, &self.gens)))
    }

    /// Order computed by exhaustive closure.
    pub fn closure_order(&self) -> Result<usize, GroupError> {
        Ok(self.elements()?.len())
    }

    pub fn conjugacy_classes(&self) -> Result<&[ConjClass], GroupError> {
        Ok(&self.elements()?.classes)
    }

    /// Maps each element to an image by evaluating along the BFS words.
    /// `f` receives the generator images; the identity maps to `one`.
    pub fn word_images<T: Clone>(&self, one: T, gen_images: &[T], mul: impl Fn(&T, &T) -> T) -> Result<Vec<T>, GroupError> {
        let e = self.elements()?;
        let mut out: Vec<T> = Vec::with_capacity(e.len());
        out.push(one);
        for i in 1..e.len() {
            let (parent, g) = e.word[i];
            let v = mul(&gen_images[g], &out[parent]);
            out.push(v);
        }
        Ok(out)
    }
}

fn enumerate(degree: usize, gens: &[Perm]) -> Elements {
    let id = Perm::identity(degree);
    let mut list = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut word = vec![(usize::MAX, usize::MAX)];
    let mut head = 0;
    while head < list.len() {
        for (gi, g) in gens.iter().enumerate() {
            let x = g.compose(&list[head]);
            if !index.contains_key(&x) {
                index.insert(x.clone(), list.len());
                list.push(x);
                word.push((head, gi));
            }
        }
        head += 1;
    }
    let n = list.len();
    let mut mul = vec![0u32; n * n];
    for (a, pa) in list.iter().enumerate() {
        for (b, pb) in list.iter().enumerate() {
            mul[a * n + b] = index[&pa.compose(pb)] as u32;
        }
    }
    let inv: Vec<usize> = list.iter().map(|p| index[&p.inverse()]).collect();
    let orders: Vec<u64> = list.iter().map(Perm::order).collect();
    let gen_idx: Vec<usize> = gens.iter().map(|g| index[g]).collect();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = classes.len();
        class_of[x] = c;
        let mut members = vec![x];
        let mut head = 0;
        while head < members.len() {
            let y = members[head];
            for &g in &gen_idx {
                let z = mul[mul[g * n + y] as usize * n + inv[g]] as usize;
                if class_of[z] == usize::MAX {
                    class_of[z] = c;
                    members.push(z);
                }
            }
            head += 1;
        }
        members.sort_unstable();
        classes.push(ConjClass { rep: x, size: members.len(), members, element_order: orders[x] });
    }
    classes.sort_by_key(|c| (c.element_order, c.rep));
    for (i, c) in classes.iter().enumerate() {
        for &m in &c.members {
            class_of[m] = i;
        }
    }
    Elements { list, index, word, mul, inv, classes, class_of, orders }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        PermGroup::from_images(3, vec![vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    #[test]
    fn orders_agree() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.closure_order().unwrap(), 6);
        let trivial = PermGroup::new(1, vec![]).unwrap();
        assert_eq!(trivial.order(), 1);
    }

    #[test]
    fn classes_partition_group() {
        let g = s3();
        let classes = g.conjugacy_classes().unwrap();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), 6);
        assert_eq!(classes[0].size, 1);
    }

    #[test]
    fn words_reproduce_elements() {
        let g = s3();
        let imgs = g.word_images(Perm::identity(3), g.gens(), |a, b| a.compose(b)).unwrap();
        assert_eq!(imgs, g.elements().unwrap().list);
    }

    #[test]
    fn malformed_input() {
        assert!(PermGroup::from_images(3, vec![vec![0, 1]]).is_err());
        assert!(PermGroup::from_images(3, vec![vec![0, 1, 1]]).is_err());
    }
}
