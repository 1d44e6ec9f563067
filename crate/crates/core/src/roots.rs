//! Root systems, Weyl groups and Levi subsystems up to conjugacy.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{enumerate_group, PermGroup};
use crate::perm::Perm;

/// Highest rank for which Levi classes are computed.
pub const LEVI_RANK_CAP: usize = 8;
/// Highest rank for which the Weyl group may be materialized.
pub const MATERIALIZE_RANK_CAP: usize = 6;
/// Rank up to which `weyl_group` enumerates and cross-checks.
pub const CROSS_CHECK_RANK: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn parse(c: char) -> Result<Self> {
        Ok(match c.to_ascii_uppercase() {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'E' => CartanType::E,
            'F' => CartanType::F,
            'G' => CartanType::G,
            _ => return Err(Error::InvalidRootSystem(format!("unknown Cartan type {c}"))),
        })
    }

    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, CartanType::A | CartanType::B | CartanType::C | CartanType::D)
    }
}

/// An irreducible factor `X_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub kind: CartanType,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        let ok = match kind {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 4,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { kind, rank })
        } else {
            Err(Error::InvalidRootSystem(format!("no type {}{rank}", kind.letter())))
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = CartanType::parse(
            chars
                .next()
                .ok_or_else(|| Error::InvalidRootSystem("empty type label".into()))?,
        )?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidRootSystem(format!("bad rank in {s}")))?;
        SimpleType::new(kind, rank)
    }

    /// `|Φ|` for this type.
    pub fn num_roots(self) -> usize {
        let n = self.rank;
        match self.kind {
            CartanType::A => n * (n + 1),
            CartanType::B | CartanType::C => 2 * n * n,
            CartanType::D => 2 * n * (n - 1),
            CartanType::G => 12,
            CartanType::F => 48,
            CartanType::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
        }
    }

    /// `dim G = |Φ| + rank`.
    pub fn dimension(self) -> usize {
        self.num_roots() + self.rank
    }

    /// `|W|` as the product of the degrees.
    pub fn weyl_order(self) -> Result<u64> {
        Ok(degrees_of(self)?.iter().product())
    }

    /// Cartan matrix with `A[i][j] = ⟨α_i, α_j^∨⟩`, Bourbaki labelling.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.kind {
            CartanType::A | CartanType::B | CartanType::C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            CartanType::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            CartanType::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            CartanType::F => {
                for i in 0..3 {
                    link(i, i + 1);
                }
            }
            CartanType::G => link(0, 1),
        }
        match self.kind {
            CartanType::B => a[n - 2][n - 1] = -2,
            CartanType::C => a[n - 1][n - 2] = -2,
            CartanType::F => a[1][2] = -2,
            CartanType::G => a[1][0] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.rank)
    }
}

/// Parses `A2`, `B3`, `A1xA1`, `G2` (factors separated by `x`, `×` or `+`).
pub fn parse_type_label(s: &str) -> Result<Vec<SimpleType>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidRootSystem("empty type label".into()));
    }
    s.split(['x', '×', '+', '*']).map(SimpleType::parse).collect()
}

pub fn format_type_label(types: &[SimpleType]) -> String {
    if types.is_empty() {
        return "T".into();
    }
    types.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("x")
}

#[derive(Debug, Deserialize)]
struct WeylDataFile {
    version: u32,
    entries: Vec<WeylDataEntry>,
}

/// One row of the bundled degree and diagram-automorphism table.
#[derive(Debug, Clone, Deserialize)]
pub struct WeylDataEntry {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    pub degrees: Vec<u64>,
    pub automorphisms: Vec<Vec<usize>>,
}

const WEYL_DATA: &str = include_str!("../data/weyl_data.json");

/// Bundled Weyl data, keyed by simple type.
pub fn weyl_data() -> &'static HashMap<SimpleType, WeylDataEntry> {
    static DATA: OnceLock<HashMap<SimpleType, WeylDataEntry>> = OnceLock::new();
    DATA.get_or_init(|| {
        let file: WeylDataFile = serde_json::from_str(WEYL_DATA).expect("bundled Weyl data parses");
        assert_eq!(file.version, 1, "unsupported Weyl data version");
        file.entries
            .into_iter()
            .map(|e| {
                let c = e.kind.chars().next().expect("type letter");
                let t =
                    SimpleType::new(CartanType::parse(c).expect("type letter"), e.rank).expect("valid bundled type");
                (t, e)
            })
            .collect()
    })
}

fn degrees_of(t: SimpleType) -> Result<&'static [u64]> {
    weyl_data()
        .get(&t)
        .map(|e| e.degrees.as_slice())
        .ok_or_else(|| Error::Data(format!("no degree data for {t}")))
}

/// Root system of a semisimple type, with roots in simple-root coordinates.
#[derive(Debug, Clone)]
pub struct RootSystem {
    components: Vec<SimpleType>,
    offsets: Vec<usize>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    n_positive: usize,
    twist: Option<Vec<usize>>,
}

/// Builds the root system by reflection closure of the simple roots.
pub fn build_root_system(components: &[SimpleType], twist: Option<Vec<usize>>) -> Result<RootSystem> {
    let rank: usize = components.iter().map(|c| c.rank).sum();
    let mut cartan = vec![vec![0i64; rank]; rank];
    let mut offsets = Vec::with_capacity(components.len());
    let mut off = 0;
    for c in components {
        offsets.push(off);
        let block = c.cartan_matrix();
        for i in 0..c.rank {
            for j in 0..c.rank {
                cartan[off + i][off + j] = block[i][j];
            }
        }
        off += c.rank;
    }
    if let Some(t) = &twist {
        validate_twist(&cartan, t)?;
    }
    let simple: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|k| i64::from(k == i)).collect())
        .collect();
    let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.iter().cloned().collect();
    while let Some(b) = queue.pop_front() {
        for j in 0..rank {
            let r = reflect_vec(&cartan, j, &b);
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut positive: Vec<Vec<i64>> = seen.into_iter().filter(|v| v.iter().all(|&x| x >= 0)).collect();
    positive.sort_by(|a, b| {
        let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let expected: usize = components.iter().map(|c| c.num_roots()).sum();
    if 2 * positive.len() != expected {
        return Err(Error::InvalidRootSystem(format!(
            "generated {} roots, expected {expected}",
            2 * positive.len()
        )));
    }
    let n_positive = positive.len();
    let mut roots = positive.clone();
    roots.extend(positive.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
    let index = roots.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    Ok(RootSystem {
        components: components.to_vec(),
        offsets,
        cartan,
        roots,
        index,
        n_positive,
        twist,
    })
}

fn validate_twist(cartan: &[Vec<i64>], t: &[usize]) -> Result<()> {
    let n = cartan.len();
    let mut seen = vec![false; n];
    if t.len() != n || t.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err(Error::InvalidTwist(
            "twist is not a permutation of the simple roots".into(),
        ));
    }
    for i in 0..n {
        for j in 0..n {
            if cartan[t[i]][t[j]] != cartan[i][j] {
                return Err(Error::InvalidTwist("twist does not preserve the Cartan matrix".into()));
            }
        }
    }
    Ok(())
}

fn reflect_vec(cartan: &[Vec<i64>], j: usize, b: &[i64]) -> Vec<i64> {
    let c: i64 = b.iter().enumerate().map(|(i, &bi)| bi * cartan[i][j]).sum();
    let mut r = b.to_vec();
    r[j] -= c;
    r
}

impl RootSystem {
    /// Parses a type label such as `B3` or `A1xA2`.
    pub fn parse(label: &str, twist: Option<Vec<usize>>) -> Result<Self> {
        build_root_system(&parse_type_label(label)?, twist)
    }

    pub fn components(&self) -> &[SimpleType] {
        &self.components
    }

    pub fn type_label(&self) -> String {
        format_type_label(&self.components)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots: positive roots by increasing height, then their negatives.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.n_positive]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// `dim G = |Φ| + rank`.
    pub fn dimension(&self) -> usize {
        self.num_roots() + self.rank()
    }

    pub fn twist(&self) -> Option<&[usize]> {
        self.twist.as_deref()
    }

    /// Component index and local index of simple root `i`.
    pub fn locate(&self, i: usize) -> (usize, usize) {
        let c = self.offsets.iter().rposition(|&o| o <= i).expect("offset 0 present");
        (c, i - self.offsets[c])
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn reflect(&self, j: usize, b: &[i64]) -> Vec<i64> {
        reflect_vec(&self.cartan, j, b)
    }

    /// Simple reflection `s_j` as a permutation of root indices.
    pub fn simple_reflection(&self, j: usize) -> Perm {
        let img = self
            .roots
            .iter()
            .map(|b| self.index[&self.reflect(j, b)] as u32)
            .collect();
        Perm::from_images(img).expect("reflections permute roots")
    }

    /// Opposition involution `-w₀` of the parabolic subsystem on `subset`,
    /// as a map on the simple roots in `subset`.
    pub fn opposition(&self, subset: &[usize]) -> HashMap<usize, usize> {
        let r = self.rank();
        let mut img: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|k| i64::from(k == i)).collect()).collect();
        // right-multiply by simple reflections while length grows
        while let Some(&i) = subset.iter().find(|&&i| img[i].iter().all(|&x| x >= 0)) {
            let wi = img[i].clone();
            for k in 0..r {
                let c = self.cartan[k][i];
                if c != 0 {
                    for (x, y) in img[k].iter_mut().zip(&wi) {
                        *x -= c * y;
                    }
                }
            }
        }
        subset
            .iter()
            .map(|&j| {
                let neg: Vec<i64> = img[j].iter().map(|x| -x).collect();
                let k = neg
                    .iter()
                    .position(|&x| x == 1)
                    .expect("w₀ sends simple roots to negative simple roots");
                debug_assert!(subset.contains(&k));
                (j, k)
            })
            .collect()
    }

    /// Type of the subsystem spanned by `subset`.
    pub fn subsystem_type(&self, subset: &[usize]) -> Vec<SimpleType> {
        let mut comps = Vec::new();
        let mut seen = vec![false; self.rank()];
        let inside: HashSet<usize> = subset.iter().copied().collect();
        let mut sorted: Vec<usize> = subset.to_vec();
        sorted.sort_unstable();
        for &s in &sorted {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for &j in &sorted {
                    if !seen[j] && self.cartan[i][j] != 0 && inside.contains(&j) {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comps.push(self.identify(&comp));
        }
        comps.sort();
        comps
    }

    fn identify(&self, comp: &[usize]) -> SimpleType {
        let n = comp.len();
        let mut bonds = Vec::new();
        for (a, &i) in comp.iter().enumerate() {
            for &j in &comp[a + 1..] {
                let p = self.cartan[i][j] * self.cartan[j][i];
                if p > 0 {
                    bonds.push(p);
                }
            }
        }
        let ambient = self.components[self.locate(comp[0]).0].kind;
        let kind = if bonds.contains(&3) {
            CartanType::G
        } else if bonds.contains(&2) {
            match (ambient, n) {
                (CartanType::F, 4) => CartanType::F,
                (CartanType::C, 2) => CartanType::C,
                (_, 2) => CartanType::B,
                _ if self.count_short(comp) == 1 => CartanType::B,
                _ => CartanType::C,
            }
        } else if !comp
            .iter()
            .any(|&i| comp.iter().filter(|&&j| j != i && self.cartan[i][j] != 0).count() == 3)
        {
            CartanType::A
        } else {
            let positive = self
                .positive_roots()
                .iter()
                .filter(|v| v.iter().enumerate().all(|(k, &x)| x == 0 || comp.contains(&k)))
                .count();
            if positive == n * (n - 1) {
                CartanType::D
            } else {
                CartanType::E
            }
        };
        SimpleType { kind, rank: n }
    }

    /// Number of simple roots in `comp` that are short within it.
    fn count_short(&self, comp: &[usize]) -> usize {
        // d_i A_ij = d_j A_ji makes d_i inversely proportional to |α_i|²
        let mut d: HashMap<usize, f64> = HashMap::new();
        d.insert(comp[0], 1.0);
        let mut changed = true;
        while changed {
            changed = false;
            for &i in comp {
                let Some(&di) = d.get(&i) else { continue };
                for &j in comp {
                    if i != j && self.cartan[i][j] != 0 && !d.contains_key(&j) {
                        d.insert(j, di * self.cartan[i][j] as f64 / self.cartan[j][i] as f64);
                        changed = true;
                    }
                }
            }
        }
        let min = d.values().cloned().fold(f64::MAX, f64::min);
        d.values().filter(|&&v| v > min + 1e-9).count()
    }
}

/// Weyl group data; elements are materialized for small ranks.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub type_label: String,
    pub order: u64,
    pub degrees: Vec<u64>,
    pub elements: Option<Arc<PermGroup>>,
}

/// Order from the degree table; enumerated and cross-checked for rank ≤ 4.
pub fn weyl_group(r: &RootSystem) -> Result<WeylGroup> {
    let mut degrees = Vec::new();
    for c in &r.components {
        degrees.extend_from_slice(degrees_of(*c)?);
    }
    let order: u64 = degrees.iter().product();
    let elements = if r.rank() <= CROSS_CHECK_RANK {
        let w = materialize_weyl(r)?;
        if w.order() as u64 != order {
            return Err(Error::Data(format!(
                "enumerated |W| = {} differs from degree product {order}",
                w.order()
            )));
        }
        Some(w)
    } else {
        None
    };
    Ok(WeylGroup {
        type_label: r.type_label(),
        order,
        degrees,
        elements,
    })
}

/// The Weyl group as permutations of the roots.
pub fn materialize_weyl(r: &RootSystem) -> Result<Arc<PermGroup>> {
    if r.rank() > MATERIALIZE_RANK_CAP {
        return Err(Error::RankCap {
            rank: r.rank(),
            cap: MATERIALIZE_RANK_CAP,
        });
    }
    let gens: Vec<Perm> = (0..r.rank()).map(|j| r.simple_reflection(j)).collect();
    Ok(Arc::new(enumerate_group(&gens, r.num_roots().max(1))?))
}

/// A subset of simple roots together with its conjugacy data.
#[derive(Debug, Clone, Serialize)]
pub struct LeviSubsystem {
    pub simple_subset: Vec<usize>,
    pub conjugacy_id: usize,
    pub label: String,
    /// Number of subsets of simple roots in this class.
    pub class_size: usize,
    pub twist_stable: bool,
}

/// Classification of all `2^rank` subsets into `W`-conjugacy classes.
#[derive(Debug, Clone)]
pub struct LeviClassification {
    pub classes: Vec<LeviSubsystem>,
    /// Class id of each subset, indexed by bitmask.
    pub class_of: Vec<usize>,
}

fn mask_to_vec(m: u32) -> Vec<usize> {
    (0..32).filter(|&i| m >> i & 1 == 1).collect()
}

fn vec_to_mask(v: &[usize]) -> u32 {
    v.iter().fold(0, |m, &i| m | 1 << i)
}

fn find(parent: &mut [u32], x: u32) -> u32 {
    let mut r = x;
    while parent[r as usize] != r {
        r = parent[r as usize];
    }
    let mut y = x;
    while parent[y as usize] != r {
        let next = parent[y as usize];
        parent[y as usize] = r;
        y = next;
    }
    r
}

fn canonical_key(m: u32) -> (u32, Vec<usize>) {
    (m.count_ones(), mask_to_vec(m))
}

fn finish_classification(r: &RootSystem, parent: &mut [u32]) -> LeviClassification {
    let n = parent.len() as u32;
    let mut groups: HashMap<u32, Vec<u32>> = HashMap::new();
    for m in 0..n {
        let root = find(parent, m);
        groups.entry(root).or_default().push(m);
    }
    let mut reps: Vec<(u32, usize)> = groups
        .values()
        .map(|ms| (*ms.iter().min_by_key(|&&m| canonical_key(m)).unwrap(), ms.len()))
        .collect();
    reps.sort_by_key(|&(m, _)| canonical_key(m));
    let mut class_of = vec![0; n as usize];
    let mut rep_id: HashMap<u32, usize> = HashMap::new();
    for (id, &(m, _)) in reps.iter().enumerate() {
        rep_id.insert(find(parent, m), id);
    }
    for m in 0..n {
        class_of[m as usize] = rep_id[&find(parent, m)];
    }
    let classes = reps
        .iter()
        .enumerate()
        .map(|(id, &(m, size))| {
            let subset = mask_to_vec(m);
            let twist_stable = match r.twist() {
                None => true,
                Some(t) => {
                    let image: Vec<usize> = subset.iter().map(|&i| t[i]).collect();
                    class_of[vec_to_mask(&image) as usize] == id
                }
            };
            LeviSubsystem {
                label: format_type_label(&r.subsystem_type(&subset)),
                simple_subset: subset,
                conjugacy_id: id,
                class_size: size,
                twist_stable,
            }
        })
        .collect();
    LeviClassification { classes, class_of }
}

/// Classifies subsets of simple roots up to `W`-conjugacy by elementary
/// moves `J ↦ σ_{J∪{α}}(J)`, `σ` the opposition involution.
pub fn classify_levis(r: &RootSystem) -> Result<LeviClassification> {
    if r.rank() > LEVI_RANK_CAP {
        return Err(Error::RankCap {
            rank: r.rank(),
            cap: LEVI_RANK_CAP,
        });
    }
    let n = 1u32 << r.rank();
    let mut parent: Vec<u32> = (0..n).collect();
    for m in 0..n {
        let j = mask_to_vec(m);
        for a in 0..r.rank() {
            if m >> a & 1 == 1 {
                continue;
            }
            let l = mask_to_vec(m | 1 << a);
            let sigma = r.opposition(&l);
            let k: Vec<usize> = j.iter().map(|i| sigma[i]).collect();
            let (x, y) = (find(&mut parent, m), find(&mut parent, vec_to_mask(&k)));
            if x != y {
                parent[x as usize] = y;
            }
        }
    }
    Ok(finish_classification(r, &mut parent))
}

/// Same classification from the orbits of a materialized Weyl group.
pub fn classify_levis_by_orbits(r: &RootSystem) -> Result<LeviClassification> {
    let w = materialize_weyl(r)?;
    let n = 1u32 << r.rank();
    let mut parent: Vec<u32> = (0..n).collect();
    for x in w.elements() {
        let simple_image: Vec<Option<usize>> = (0..r.rank())
            .map(|i| {
                let img = &r.roots()[x.apply(i_to_root(r, i))];
                let mut nz = img.iter().enumerate().filter(|(_, &v)| v != 0);
                match (nz.next(), nz.next()) {
                    (Some((k, 1)), None) => Some(k),
                    _ => None,
                }
            })
            .collect();
        for m in 0..n {
            let mut k = 0u32;
            let ok = mask_to_vec(m).iter().all(|&i| match simple_image[i] {
                Some(t) => {
                    k |= 1 << t;
                    true
                }
                None => false,
            });
            if ok {
                let (a, b) = (find(&mut parent, m), find(&mut parent, k));
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
    }
    Ok(finish_classification(r, &mut parent))
}

fn i_to_root(r: &RootSystem, i: usize) -> usize {
    let v: Vec<i64> = (0..r.rank()).map(|k| i64::from(k == i)).collect();
    r.root_index(&v).expect("simple root present")
}

/// Levi subsystems up to conjugacy, one representative each.
pub fn levi_classes(r: &RootSystem) -> Result<Vec<LeviSubsystem>> {
    Ok(classify_levis(r)?.classes)
}

/// `|W(s)|` for type `A_{n-1}`: the Young subgroup order `Π mᵢ!` of the
/// multiplicity profile of the eigenvalue labels.
pub fn torus_stabilizer_order<T: Ord>(labels: &[T]) -> Result<u128> {
    if labels.is_empty() {
        return Err(Error::InvalidArgument("empty eigenvalue profile".into()));
    }
    let mut counts: std::collections::BTreeMap<&T, u32> = std::collections::BTreeMap::new();
    for l in labels {
        *counts.entry(l).or_default() += 1;
    }
    let profile: Vec<u32> = counts.into_values().collect();
    young_subgroup_order(&profile)
}

/// `Π mᵢ!` for a multiplicity profile.
pub fn young_subgroup_order(profile: &[u32]) -> Result<u128> {
    if profile.is_empty() || profile.contains(&0) {
        return Err(Error::InvalidArgument(
            "profile must be a nonempty list of positive multiplicities".into(),
        ));
    }
    Ok(profile.iter().map(|&m| (1..=m as u128).product::<u128>()).product())
}
