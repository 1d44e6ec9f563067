//! Finite permutation groups by full element enumeration.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default cap on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 100_000;

/// A finite group of permutations with every element enumerated.
///
/// Elements are stored sorted, so the identity always has index 0.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    classes: OnceLock<ConjClassData>,
}

/// Conjugacy classes of a [`PermGroup`].
#[derive(Debug, Clone)]
pub struct ConjClassData {
    /// Minimal element of each class.
    pub representatives: Vec<Perm>,
    pub class_sizes: Vec<usize>,
    /// Class index for each element index of the group.
    pub class_of: Vec<usize>,
    /// Element indices of each class.
    pub members: Vec<Vec<usize>>,
}

impl ConjClassData {
    pub fn len(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_sizes.is_empty()
    }
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            elements: self.elements.clone(),
            index: self.index.clone(),
            classes: self.classes.clone(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

/// Closes `generators` under composition, failing past `cap` elements.
pub fn enumerate_group(generators: &[Perm], degree: usize) -> Result<PermGroup> {
    enumerate_group_capped(generators, degree, DEFAULT_CAP)
}

pub fn enumerate_group_capped(generators: &[Perm], degree: usize, cap: usize) -> Result<PermGroup> {
    if degree == 0 {
        return Err(Error::MalformedPermutation("degree must be positive".into()));
    }
    for g in generators {
        if g.degree() != degree {
            return Err(Error::MalformedPermutation(format!(
                "generator {g} has degree {} but group degree is {degree}",
                g.degree()
            )));
        }
    }
    let id = Perm::identity(degree);
    let mut seen: HashMap<Perm, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone(), ());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if !seen.contains_key(&y) {
                if seen.len() >= cap {
                    return Err(Error::EnumerationCap { cap });
                }
                seen.insert(y.clone(), ());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Perm> = seen.into_keys().collect();
    elements.sort();
    Ok(PermGroup::from_sorted(degree, generators.to_vec(), elements))
}

impl PermGroup {
    fn from_sorted(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> Self {
        let index = elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        PermGroup {
            degree,
            generators,
            elements,
            index,
            classes: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::from_sorted(degree, Vec::new(), vec![Perm::identity(degree)])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn identity(&self) -> &Perm {
        &self.elements[0]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// Index of the product `elements[i] * elements[j]`.
    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].compose(&self.elements[j])]
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// True when every element of `self` lies in `other` (same degree).
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    /// Subgroup generated by `gens`, which must already lie in `self`.
    pub fn subgroup(&self, gens: &[Perm]) -> Result<PermGroup> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::NotSubgroup(format!("{g} is not an element of the group")));
            }
        }
        enumerate_group(gens, self.degree)
    }

    /// Conjugacy classes, computed on first use.
    pub fn classes(&self) -> &ConjClassData {
        self.classes.get_or_init(|| conjugacy_classes(self))
    }

    /// Centralizer order of the class containing element `i`.
    pub fn centralizer_order(&self, i: usize) -> usize {
        let c = self.classes();
        self.order() / c.class_sizes[c.class_of[i]]
    }

    /// The subgroup `x H x^-1`.
    pub fn conjugate_subgroup(&self, h: &PermGroup, x: &Perm) -> PermGroup {
        let mut els: Vec<Perm> = h.elements.iter().map(|e| x.conjugate(e)).collect();
        els.sort();
        let gens = h.generators.iter().map(|e| x.conjugate(e)).collect();
        PermGroup::from_sorted(self.degree, gens, els)
    }

    /// All subgroups, each listed once.
    pub fn all_subgroups(&self) -> Vec<PermGroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<(Vec<Perm>, Vec<usize>)> = Vec::new();
        let key = |g: &PermGroup| -> Vec<usize> { g.elements.iter().map(|p| self.index[p]).collect() };
        let trivial = PermGroup::trivial(self.degree);
        found.insert(key(&trivial));
        frontier.push((Vec::new(), key(&trivial)));
        let mut out = vec![trivial];
        while let Some((gens, members)) = frontier.pop() {
            for x in 0..self.order() {
                if members.binary_search(&x).is_ok() {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(self.elements[x].clone());
                let sub = enumerate_group(&g2, self.degree).expect("subgroup within cap");
                let k = key(&sub);
                if found.insert(k.clone()) {
                    frontier.push((g2, k));
                    out.push(sub);
                }
            }
        }
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        out
    }

    /// One representative per conjugacy class of subgroups.
    pub fn subgroup_class_representatives(&self) -> Vec<PermGroup> {
        let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
        let mut reps = Vec::new();
        for h in self.all_subgroups() {
            if seen.contains(&h.elements) {
                continue;
            }
            for x in &self.elements {
                seen.insert(self.conjugate_subgroup(&h, x).elements);
            }
            reps.push(h);
        }
        reps
    }
}

/// Partitions the elements into conjugacy classes.
///
/// Classes are ordered by their minimal element, so the identity class is first.
pub fn conjugacy_classes(g: &PermGroup) -> ConjClassData {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut members = Vec::new();
    let mut representatives = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = members.len();
        let mut orbit = vec![start];
        class_of[start] = cid;
        let mut k = 0;
        while k < orbit.len() {
            let x = &g.elements[orbit[k]];
            for s in &g.generators {
                let y = g.index[&s.conjugate(x)];
                if class_of[y] == usize::MAX {
                    class_of[y] = cid;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        representatives.push(g.elements[start].clone());
        members.push(orbit);
    }
    let class_sizes = members.iter().map(|m| m.len()).collect();
    ConjClassData {
        representatives,
        class_sizes,
        class_of,
        members,
    }
}

/// Small named groups used throughout the test corpus.
pub mod named {
    use super::*;

    pub fn symmetric(n: usize) -> PermGroup {
        if n == 1 {
            return PermGroup::trivial(1);
        }
        let t = Perm::from_cycles(n, &[&[1, 2]]).unwrap();
        let c: Vec<u32> = (1..=n as u32).collect();
        let c = Perm::from_cycles(n, &[&c]).unwrap();
        enumerate_group(&[t, c], n).unwrap()
    }

    pub fn alternating(n: usize) -> PermGroup {
        if n < 3 {
            return PermGroup::trivial(n.max(1));
        }
        let gens: Vec<Perm> = (3..=n as u32)
            .map(|k| Perm::from_cycles(n, &[&[1, 2, k]]).unwrap())
            .collect();
        enumerate_group(&gens, n).unwrap()
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let c: Vec<u32> = (1..=n as u32).collect();
        enumerate_group(&[Perm::from_cycles(n, &[&c]).unwrap()], n).unwrap()
    }

    /// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> PermGroup {
        let c: Vec<u32> = (1..=n as u32).collect();
        let r = Perm::from_cycles(n, &[&c]).unwrap();
        let s = Perm::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect()).unwrap();
        enumerate_group(&[r, s], n).unwrap()
    }

    /// Quaternion group of order 8 in its regular representation.
    ///
    /// Points `0..8` encode `±1, ±i, ±j, ±k` as `2*unit + sign`.
    pub fn quaternion() -> PermGroup {
        // unit multiplication table: (unit, sign) for 1,i,j,k
        const MUL: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let left = |unit: usize| {
            let img: Vec<u32> = (0..8)
                .map(|pt| {
                    let (u, s) = (pt / 2, pt % 2 == 1);
                    let (w, t) = MUL[unit][u];
                    (2 * w + usize::from(s ^ t)) as u32
                })
                .collect();
            Perm::from_images(img).unwrap()
        };
        enumerate_group(&[left(1), left(2)], 8).unwrap()
    }

    /// Parses names like `S3`, `A4`, `C6`, `D8` (order 8), `Q8`, or explicit
    /// generators `gens:4:(1 2 3 4),(1 3)`.
    pub fn parse(spec: &str) -> Result<PermGroup> {
        let s = spec.trim();
        if let Some(rest) = s.strip_prefix("gens:") {
            let (deg, gens) = rest
                .split_once(':')
                .ok_or_else(|| Error::InvalidArgument(format!("bad group spec {spec}")))?;
            let deg: usize = deg
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad degree in {spec}")))?;
            let mut perms = Vec::new();
            let mut cur = String::new();
            for ch in gens.chars() {
                if ch == ',' && cur.trim_end().ends_with(')') {
                    perms.push(Perm::parse_cycles(deg, &cur)?);
                    cur.clear();
                } else {
                    cur.push(ch);
                }
            }
            if !cur.trim().is_empty() {
                perms.push(Perm::parse_cycles(deg, &cur)?);
            }
            return enumerate_group(&perms, deg);
        }
        let bad = || Error::InvalidArgument(format!("unknown group {spec}"));
        if s == "Q8" {
            return Ok(quaternion());
        }
        let (head, num) = s.split_at(1);
        let n: usize = num.parse().map_err(|_| bad())?;
        if n == 0 || n > 12 {
            return Err(bad());
        }
        match head {
            "S" if n <= 8 => Ok(symmetric(n)),
            "A" if n <= 8 => Ok(alternating(n)),
            "C" => Ok(cyclic(n)),
            "D" if n.is_multiple_of(2) && n >= 4 => Ok(dihedral(n / 2)),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn small_orders() {
        let s3 = enumerate_group(
            &[
                Perm::parse_cycles(3, "(1 2)").unwrap(),
                Perm::parse_cycles(3, "(1 2 3)").unwrap(),
            ],
            3,
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(enumerate_group(&[], 1).unwrap().order(), 1);
        let d8 = enumerate_group(
            &[
                Perm::parse_cycles(4, "(1 2 3 4)").unwrap(),
                Perm::parse_cycles(4, "(1 3)").unwrap(),
            ],
            4,
        )
        .unwrap();
        assert_eq!(d8.order(), 8);
        assert!(d8.identity().is_identity());
    }

    #[test]
    fn class_counts() {
        let mut sizes = symmetric(3).classes().class_sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(cyclic(4).classes().class_sizes, vec![1; 4]);
        assert_eq!(dihedral(4).classes().len(), 5);
        assert_eq!(quaternion().classes().len(), 5);
        assert_eq!(quaternion().order(), 8);
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_group_capped(
            &[
                Perm::parse_cycles(5, "(1 2)").unwrap(),
                Perm::parse_cycles(5, "(1 2 3 4 5)").unwrap(),
            ],
            5,
            50,
        );
        assert!(matches!(err, Err(Error::EnumerationCap { cap: 50 })));
    }

    #[test]
    fn degree_mismatch_rejected() {
        let p = Perm::parse_cycles(3, "(1 2)").unwrap();
        assert!(enumerate_group(&[p], 4).is_err());
    }

    #[test]
    fn subgroup_lattice_counts() {
        // S4 has 30 subgroups in 11 conjugacy classes.
        let s4 = symmetric(4);
        assert_eq!(s4.all_subgroups().len(), 30);
        assert_eq!(s4.subgroup_class_representatives().len(), 11);
        assert_eq!(quaternion().all_subgroups().len(), 6);
        for h in s4.all_subgroups() {
            assert_eq!(s4.order() % h.order(), 0);
            assert!(h.is_subgroup_of(&s4));
        }
    }

    #[test]
    fn named_parse() {
        assert_eq!(named::parse("S4").unwrap().order(), 24);
        assert_eq!(named::parse("A4").unwrap().order(), 12);
        assert_eq!(named::parse("D8").unwrap().order(), 8);
        assert_eq!(named::parse("gens:4:(1 2 3 4),(1 3)").unwrap().order(), 8);
        assert!(named::parse("X9").is_err());
    }
}
