//! Unipotent classes: partitions for classical types, a checksummed data
//! table for exceptional types, and fusion of Levi classes.

use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::roots::{CartanType, RootSystem, SimpleType};

/// Rank cap for classical enumeration.
pub const CLASSICAL_RANK_CAP: usize = 8;

/// Environment variable overriding the exceptional table path.
pub const DATA_ENV: &str = "CHARBOUND_DATA";

const BUNDLED_TABLE: &str = include_str!("../data/exceptional_classes.json");
const BUNDLED_MANIFEST: &str = include_str!("../data/exceptional_classes.json.sha256");

/// Convention for component groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Isogeny {
    #[default]
    SimplyConnected,
    /// Connected-center convention (`GL_n` in type A): every `A(u)` is trivial.
    General,
}

/// One of the two classes attached to a very even partition in type D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Twin {
    I,
    II,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    Partition { parts: Vec<u32>, twin: Option<Twin> },
    Named(String),
}

impl ClassLabel {
    pub fn partition(parts: Vec<u32>) -> Self {
        ClassLabel::Partition { parts, twin: None }
    }

    pub fn parts(&self) -> Option<&[u32]> {
        match self {
            ClassLabel::Partition { parts, .. } => Some(parts),
            ClassLabel::Named(_) => None,
        }
    }
}

pub fn format_partition(parts: &[u32]) -> String {
    let inner: Vec<String> = parts.iter().map(u32::to_string).collect();
    format!("({})", inner.join(","))
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Partition { parts, twin } => {
                write!(f, "{}", format_partition(parts))?;
                match twin {
                    Some(Twin::I) => write!(f, "I"),
                    Some(Twin::II) => write!(f, "II"),
                    None => Ok(()),
                }
            }
            ClassLabel::Named(s) => write!(f, "{s}"),
        }
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A unipotent class of a simple group, or of a small classical factor
/// (`B1`, `D2`, `GL1`, ...) when produced by Levi enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnipClass {
    pub kind: CartanType,
    pub rank: usize,
    pub label: ClassLabel,
    pub dim: u64,
    pub comp_order: u64,
    pub frob_stable: bool,
}

/// Partitions of `n`, parts descending, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn conjugate_partition(parts: &[u32]) -> Vec<u32> {
    let first = parts.first().copied().unwrap_or(0);
    (1..=first)
        .map(|i| parts.iter().filter(|&&p| p >= i).count() as u32)
        .collect()
}

fn multiplicity(parts: &[u32], p: u32) -> usize {
    parts.iter().filter(|&&x| x == p).count()
}

fn distinct(parts: &[u32], pred: impl Fn(u32) -> bool) -> Vec<u32> {
    let mut v: Vec<u32> = parts.iter().copied().filter(|&p| pred(p)).collect();
    v.dedup();
    v
}

fn sum_sq_conjugate(parts: &[u32]) -> u64 {
    conjugate_partition(parts)
        .iter()
        .map(|&c| u64::from(c) * u64::from(c))
        .sum()
}

fn odd_part_count(parts: &[u32]) -> u64 {
    parts.iter().filter(|&&p| p % 2 == 1).count() as u64
}

/// Dimension of the natural module of the classical group of this kind.
pub fn natural_dimension(kind: CartanType, rank: usize) -> Result<u32> {
    let r = rank as u32;
    Ok(match kind {
        CartanType::A => r + 1,
        CartanType::B => 2 * r + 1,
        CartanType::C | CartanType::D => 2 * r,
        _ => return Err(Error::Unsupported(format!("type {} is not classical", kind.letter()))),
    })
}

/// `dim G` for a classical factor of any rank, including degenerate ones.
pub fn classical_group_dimension(kind: CartanType, rank: usize) -> Result<u64> {
    let n = u64::from(natural_dimension(kind, rank)?);
    Ok(match kind {
        CartanType::A => n * n - 1,
        CartanType::C => n * (n + 1) / 2,
        _ => n * n.saturating_sub(1) / 2,
    })
}

/// `n² − Σλ'ᵢ²`, the class dimension in `GL_n` (equal in `SL_n`).
pub fn gl_class_dim(parts: &[u32]) -> u64 {
    let n: u64 = parts.iter().map(|&p| u64::from(p)).sum();
    n * n - sum_sq_conjugate(parts)
}

/// Centralizer dimension of a unipotent element with this Jordan type.
pub fn centralizer_dim(kind: CartanType, parts: &[u32]) -> Result<u64> {
    let s = sum_sq_conjugate(parts);
    let odd = odd_part_count(parts);
    Ok(match kind {
        CartanType::A => s - 1,
        CartanType::C => (s + odd) / 2,
        CartanType::B | CartanType::D => (s - odd) / 2,
        _ => return Err(Error::Unsupported(format!("type {} is not classical", kind.letter()))),
    })
}

fn admissible(kind: CartanType, parts: &[u32]) -> bool {
    match kind {
        CartanType::A => true,
        CartanType::C => distinct(parts, |p| p % 2 == 1)
            .iter()
            .all(|&p| multiplicity(parts, p).is_multiple_of(2)),
        _ => distinct(parts, |p| p % 2 == 0)
            .iter()
            .all(|&p| multiplicity(parts, p).is_multiple_of(2)),
    }
}

fn is_very_even(parts: &[u32]) -> bool {
    !parts.is_empty() && parts.iter().all(|&p| p % 2 == 0)
}

/// `|A(u)|` in the simply connected group, good characteristic.
pub fn component_order(kind: CartanType, parts: &[u32], iso: Isogeny) -> u64 {
    if iso == Isogeny::General || parts.iter().all(|&p| p == 1) {
        return 1;
    }
    match kind {
        CartanType::A => u64::from(parts.iter().fold(0u32, |g, &p| g.gcd(&p)).max(1)),
        CartanType::C => 1 << distinct(parts, |p| p % 2 == 0).len(),
        _ => {
            let odd = distinct(parts, |p| p % 2 == 1);
            let base: u64 = 1 << odd.len().saturating_sub(1);
            let lifted = odd.iter().all(|&p| multiplicity(parts, p) == 1);
            if lifted {
                base * 2
            } else {
                base
            }
        }
    }
}

/// All unipotent classes of a classical factor, every class marked stable.
///
/// Degenerate ranks are accepted (`A0`, `B0`, `B1`, `C1`, `D2`, `D3`, ...).
pub fn classical_classes(kind: CartanType, rank: usize, iso: Isogeny) -> Result<Vec<UnipClass>> {
    if rank > CLASSICAL_RANK_CAP + 1 {
        return Err(Error::RankCap {
            rank,
            cap: CLASSICAL_RANK_CAP,
        });
    }
    let n = natural_dimension(kind, rank)?;
    let dim_g = classical_group_dimension(kind, rank)?;
    let mut out = Vec::new();
    for parts in partitions(n) {
        if !admissible(kind, &parts) {
            continue;
        }
        let dim = dim_g - centralizer_dim(kind, &parts)?;
        let comp_order = component_order(kind, &parts, iso);
        let twins: &[Option<Twin>] = if kind == CartanType::D && is_very_even(&parts) {
            &[Some(Twin::I), Some(Twin::II)]
        } else {
            &[None]
        };
        for &twin in twins {
            out.push(UnipClass {
                kind,
                rank,
                label: ClassLabel::Partition {
                    parts: parts.clone(),
                    twin,
                },
                dim,
                comp_order,
                frob_stable: true,
            });
        }
    }
    Ok(out)
}

/// The leaf of the `D_n` diagram a class is attached to, if any.
///
/// Very even twins sit on the two short legs; for `D4` the triality partners
/// `(5,1,1,1)` and `(3,1,1,1,1,1)` sit on the first leg.
fn d_leaf(rank: usize, label: &ClassLabel) -> Option<usize> {
    let ClassLabel::Partition { parts, twin } = label else {
        return None;
    };
    match twin {
        Some(Twin::I) => Some(rank - 2),
        Some(Twin::II) => Some(rank - 1),
        None if rank == 4 && (parts == &[5, 1, 1, 1] || parts == &[3, 1, 1, 1, 1, 1]) => Some(0),
        None => None,
    }
}

fn validate_twist(t: SimpleType, twist: &[usize]) -> Result<()> {
    let data = crate::roots::weyl_data();
    let allowed = data.get(&t).map(|e| e.automorphisms.as_slice()).unwrap_or(&[]);
    let identity: Vec<usize> = (0..t.rank).collect();
    if twist == identity.as_slice() || allowed.iter().any(|a| a == twist) {
        Ok(())
    } else {
        Err(Error::InvalidTwist(format!(
            "{twist:?} is not a diagram automorphism of {t}"
        )))
    }
}

/// Marks classes moved by the diagram automorphism `twist`.
fn apply_twist(t: SimpleType, twist: Option<&[usize]>, classes: &mut [UnipClass]) -> Result<()> {
    let Some(tw) = twist else { return Ok(()) };
    validate_twist(t, tw)?;
    if t.kind != CartanType::D {
        return Ok(());
    }
    for c in classes.iter_mut() {
        c.frob_stable = d_leaf(t.rank, &c.label).is_none_or(|leaf| tw[leaf] == leaf);
    }
    Ok(())
}

/// Unipotent classes of a simple simply connected group under a twist.
pub fn unipotent_classes(t: SimpleType, twist: Option<&[usize]>) -> Result<Vec<UnipClass>> {
    if t.kind.is_classical() {
        unipotent_classes_with(t, twist, None)
    } else {
        unipotent_classes_with(t, twist, Some(&*exceptional_table()?))
    }
}

/// As [`unipotent_classes`], reading exceptional types from `table`.
pub fn unipotent_classes_with(
    t: SimpleType,
    twist: Option<&[usize]>,
    table: Option<&ExceptionalClassTable>,
) -> Result<Vec<UnipClass>> {
    let mut classes = if t.kind.is_classical() {
        if t.rank > CLASSICAL_RANK_CAP {
            return Err(Error::RankCap {
                rank: t.rank,
                cap: CLASSICAL_RANK_CAP,
            });
        }
        classical_classes(t.kind, t.rank, Isogeny::SimplyConnected)?
    } else {
        let table = table.ok_or_else(|| Error::Data("no exceptional table supplied".into()))?;
        table.classes(t)?
    };
    apply_twist(t, twist, &mut classes)?;
    Ok(classes)
}

/// One row of the exceptional table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExceptionalRow {
    #[serde(rename = "type")]
    pub kind: String,
    pub label: String,
    pub dim: u64,
    pub comp_order: u64,
}

/// Checksummed unipotent-class data for `G2`, `F4`, `E6`, `E7`, `E8`.
#[derive(Debug, Clone)]
pub struct ExceptionalClassTable {
    pub entries: Vec<ExceptionalRow>,
    pub checksum: String,
}

impl ExceptionalClassTable {
    /// Parses and validates table bytes against an expected SHA-256 digest.
    pub fn from_bytes(bytes: &[u8], expected_sha256: &str) -> Result<Self> {
        let found = hex_digest(bytes);
        let expected = expected_sha256.trim().to_ascii_lowercase();
        if found != expected {
            return Err(Error::Checksum { expected, found });
        }
        let entries: Vec<ExceptionalRow> =
            serde_json::from_slice(bytes).map_err(|e| Error::Data(format!("schema violation: {e}")))?;
        let table = ExceptionalClassTable {
            entries,
            checksum: found,
        };
        table.validate()?;
        Ok(table)
    }

    fn validate(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::Data("schema violation: no rows".into()));
        }
        let mut types: Vec<SimpleType> = Vec::new();
        for row in &self.entries {
            let t = parse_exceptional(&row.kind)?;
            if row.comp_order == 0 {
                return Err(Error::Data(format!(
                    "{} {}: comp_order must be positive",
                    row.kind, row.label
                )));
            }
            if !types.contains(&t) {
                types.push(t);
            }
        }
        for t in types {
            let rows: Vec<&ExceptionalRow> = self.rows_of(t).collect();
            let regular_dim = t.num_roots() as u64;
            let trivial = rows.iter().filter(|r| r.dim == 0).count();
            if trivial != 1 || rows.iter().any(|r| r.dim == 0 && r.comp_order != 1) {
                return Err(Error::Data(format!(
                    "{t}: expected exactly one trivial row with comp_order 1"
                )));
            }
            if rows.iter().filter(|r| r.dim == regular_dim).count() != 1 {
                return Err(Error::Data(format!(
                    "{t}: expected a unique regular row of dim {regular_dim}"
                )));
            }
            if let Some(r) = rows.iter().find(|r| r.dim > regular_dim) {
                return Err(Error::Data(format!(
                    "{t} {}: dim {} exceeds the regular class",
                    r.label, r.dim
                )));
            }
            let mut labels: Vec<&str> = rows.iter().map(|r| r.label.as_str()).collect();
            labels.sort_unstable();
            if labels.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Data(format!("{t}: duplicate labels")));
            }
        }
        Ok(())
    }

    fn rows_of(&self, t: SimpleType) -> impl Iterator<Item = &ExceptionalRow> {
        let name = t.to_string();
        self.entries.iter().filter(move |r| r.kind == name)
    }

    pub fn contains(&self, t: SimpleType) -> bool {
        self.rows_of(t).next().is_some()
    }

    /// Classes of `t` in table order.
    pub fn classes(&self, t: SimpleType) -> Result<Vec<UnipClass>> {
        let out: Vec<UnipClass> = self
            .rows_of(t)
            .map(|r| UnipClass {
                kind: t.kind,
                rank: t.rank,
                label: ClassLabel::Named(r.label.clone()),
                dim: r.dim,
                comp_order: r.comp_order,
                frob_stable: true,
            })
            .collect();
        if out.is_empty() {
            return Err(Error::Data(format!("no exceptional data for {t}")));
        }
        Ok(out)
    }
}

fn parse_exceptional(s: &str) -> Result<SimpleType> {
    let t = SimpleType::parse(s).map_err(|_| Error::Data(format!("schema violation: bad type {s:?}")))?;
    if t.kind.is_classical() {
        return Err(Error::Data(format!("schema violation: {s} is not exceptional")));
    }
    Ok(t)
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn manifest_digest(manifest: &str) -> Result<String> {
    manifest
        .split_whitespace()
        .next()
        .map(str::to_owned)
        .ok_or_else(|| Error::Data("empty checksum manifest".into()))
}

/// Path of the sidecar manifest for a table file.
pub fn manifest_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".sha256");
    s.into()
}

/// Loads a table file, checking it against `<path>.sha256`.
pub fn load_exceptional_tables(path: impl AsRef<Path>) -> Result<ExceptionalClassTable> {
    let path = path.as_ref();
    let bytes = std::fs::read(path)?;
    let manifest = std::fs::read_to_string(manifest_path(path))?;
    ExceptionalClassTable::from_bytes(&bytes, &manifest_digest(&manifest)?)
}

/// The table shipped with the crate.
pub fn bundled_exceptional_table() -> &'static ExceptionalClassTable {
    static TABLE: OnceLock<ExceptionalClassTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let digest = manifest_digest(BUNDLED_MANIFEST).expect("bundled manifest");
        ExceptionalClassTable::from_bytes(BUNDLED_TABLE.as_bytes(), &digest).expect("bundled table is valid")
    })
}

/// The bundled table, or the file named by `CHARBOUND_DATA` when set.
pub fn exceptional_table() -> Result<std::borrow::Cow<'static, ExceptionalClassTable>> {
    match std::env::var_os(DATA_ENV) {
        Some(p) if !p.is_empty() => Ok(std::borrow::Cow::Owned(load_exceptional_tables(p)?)),
        _ => Ok(std::borrow::Cow::Borrowed(bundled_exceptional_table())),
    }
}

/// Block structure of a Levi subgroup on the natural module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviShape {
    pub ambient: SimpleType,
    pub subset: Vec<usize>,
    /// Sizes of the `GL` blocks in order along the natural basis.
    pub blocks: Vec<usize>,
    /// Rank of the classical tail factor of the ambient kind (B, C, D only).
    pub tail: Option<usize>,
    /// For `D_n`, which short leg an all-`GL` Levi uses.
    pub leg: Option<Twin>,
    twist: Option<Vec<usize>>,
}

fn runs(len: usize, edge: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = 1;
    for i in 0..len.saturating_sub(1) {
        if edge(i) {
            cur += 1;
        } else {
            out.push(cur);
            cur = 1;
        }
    }
    if len > 0 {
        out.push(cur);
    }
    out
}

/// Block structure of the Levi generated by `subset` in a simple classical
/// root system.
pub fn levi_shape(ambient: &RootSystem, subset: &[usize]) -> Result<LeviShape> {
    let [t] = ambient.components() else {
        return Err(Error::Unsupported("fusion needs a simple ambient".into()));
    };
    let t = *t;
    if !t.kind.is_classical() {
        return Err(Error::Unsupported(format!("fusion into {t} is out of scope")));
    }
    let n = t.rank;
    let mut mask = vec![false; n];
    for &i in subset {
        if i >= n {
            return Err(Error::InvalidArgument(format!("simple root {i} out of range for {t}")));
        }
        mask[i] = true;
    }
    let mut subset: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
    subset.dedup();
    let (mut blocks, tail, leg) = match t.kind {
        CartanType::A => (runs(n + 1, |i| mask[i]), None, None),
        CartanType::B | CartanType::C => {
            let b = runs(n, |i| mask[i]);
            if mask[n - 1] {
                let mut b = b;
                let k = b.pop().expect("nonempty");
                (b, Some(k), None)
            } else {
                (b, Some(0), None)
            }
        }
        _ => {
            let (x, y) = (mask[n - 2], mask[n - 1]);
            let b = runs(n, |i| if i == n - 2 { x || y } else { mask[i] });
            if x && y {
                let mut b = b;
                let k = b.pop().expect("nonempty");
                (b, Some(k), None)
            } else {
                let leg = match (x, y) {
                    (true, false) => Some(Twin::I),
                    (false, true) => Some(Twin::II),
                    _ => None,
                };
                (b, Some(0), leg)
            }
        }
    };
    blocks.shrink_to_fit();
    Ok(LeviShape {
        ambient: t,
        subset,
        blocks,
        tail,
        leg,
        twist: ambient.twist().map(<[usize]>::to_vec),
    })
}

impl LeviShape {
    pub fn is_torus(&self) -> bool {
        self.subset.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.subset.len() == self.ambient.rank
    }

    /// Unipotent classes of each factor: `GL` blocks first, then the tail.
    pub fn factor_classes(&self) -> Result<Vec<Vec<UnipClass>>> {
        let mut out = Vec::new();
        for &a in &self.blocks {
            out.push(classical_classes(CartanType::A, a - 1, Isogeny::General)?);
        }
        if let Some(k) = self.tail {
            let mut tail = classical_classes(self.ambient.kind, k, Isogeny::SimplyConnected)?;
            if self.ambient.kind == CartanType::D && k >= 2 {
                if let Some(tw) = &self.twist {
                    let n = self.ambient.rank;
                    let swaps = tw[n - 2] == n - 1;
                    for c in &mut tail {
                        if matches!(c.label, ClassLabel::Partition { twin: Some(_), .. }) {
                            c.frob_stable = !swaps;
                        }
                    }
                }
            }
            out.push(tail);
        }
        Ok(out)
    }

    /// Whether the twist stabilizes this factor tuple.
    ///
    /// Supports the reversal of type A and the leg swap of type D; other
    /// twists stabilizing a proper nontrivial Levi are rejected.
    pub fn tuple_stable(&self, tuple: &[&UnipClass]) -> Result<bool> {
        let Some(tw) = &self.twist else { return Ok(true) };
        let n = self.ambient.rank;
        if tw.iter().enumerate().all(|(i, &j)| i == j) {
            return Ok(true);
        }
        let image: Vec<usize> = {
            let mut v: Vec<usize> = self.subset.iter().map(|&i| tw[i]).collect();
            v.sort_unstable();
            v
        };
        if image != self.subset {
            return Err(Error::Unsupported("twist does not stabilize the Levi".into()));
        }
        match self.ambient.kind {
            CartanType::A => {
                let m = self.blocks.len();
                Ok((0..m).all(|i| tuple[i].label == tuple[m - 1 - i].label))
            }
            CartanType::D if tw[n - 2] == n - 1 && tw[n - 1] == n - 2 && (0..n - 2).all(|i| tw[i] == i) => {
                Ok(tuple.iter().all(|c| c.frob_stable))
            }
            _ => Err(Error::Unsupported(format!(
                "twist {tw:?} on a proper Levi of {} is not supported",
                self.ambient
            ))),
        }
    }
}

/// Label of a factor tuple, e.g. `((2),(1,1))`.
pub fn format_tuple(tuple: &[&UnipClass]) -> String {
    let inner: Vec<String> = tuple.iter().map(|c| c.label.to_string()).collect();
    format!("({})", inner.join(","))
}

/// Ambient class of a Levi class given by one partition per factor
/// (`GL` blocks in order, then the tail if the shape has one).
pub fn fuse_to_ambient(factors: &[Vec<u32>], shape: &LeviShape) -> Result<UnipClass> {
    let expected = shape.blocks.len() + usize::from(shape.tail.is_some());
    if factors.len() != expected {
        return Err(Error::InvalidArgument(format!(
            "expected {expected} factor partitions, got {}",
            factors.len()
        )));
    }
    for (f, &a) in factors.iter().zip(&shape.blocks) {
        if f.iter().sum::<u32>() as usize != a || f.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "{} is not a partition of {a}",
                format_partition(f)
            )));
        }
    }
    let kind = shape.ambient.kind;
    let mut fused: Vec<u32> = Vec::new();
    let gl = &factors[..shape.blocks.len()];
    let doubled = kind != CartanType::A;
    for f in gl {
        fused.extend(f);
        if doubled {
            fused.extend(f);
        }
    }
    let mut tail_twin = None;
    if let Some(k) = shape.tail {
        let tail = &factors[shape.blocks.len()];
        let m = natural_dimension(kind, k)?;
        if tail.iter().sum::<u32>() != m || !admissible(kind, tail) {
            return Err(Error::InvalidArgument(format!(
                "{} is not a {}{k} class",
                format_partition(tail),
                kind.letter()
            )));
        }
        fused.extend(tail);
        if kind == CartanType::D && k >= 2 && is_very_even(tail) {
            tail_twin = Some(Twin::I);
        }
    }
    fused.sort_unstable_by(|a, b| b.cmp(a));
    fuse_lookup(shape, fused, tail_twin)
}

fn fuse_lookup(shape: &LeviShape, parts: Vec<u32>, tail_twin: Option<Twin>) -> Result<UnipClass> {
    let t = shape.ambient;
    let twin = if t.kind == CartanType::D && is_very_even(&parts) {
        Some(tail_twin.or(shape.leg).unwrap_or(Twin::I))
    } else {
        None
    };
    let label = ClassLabel::Partition { parts, twin };
    let classes = unipotent_classes_with(t, shape.twist.as_deref(), None)?;
    classes
        .into_iter()
        .find(|c| c.label == label)
        .ok_or_else(|| Error::InvalidArgument(format!("{label} is not a class of {t}")))
}

/// As [`fuse_to_ambient`], carrying the tail's very even twin through.
pub fn fuse_classes(tuple: &[&UnipClass], shape: &LeviShape) -> Result<UnipClass> {
    let parts: Vec<Vec<u32>> = tuple
        .iter()
        .map(|c| {
            c.label
                .parts()
                .map(<[u32]>::to_vec)
                .ok_or_else(|| Error::InvalidArgument("named labels cannot be fused".into()))
        })
        .collect::<Result<_>>()?;
    let mut fused = fuse_to_ambient(&parts, shape)?;
    if let (Some(_), Some(tail)) = (shape.tail, tuple.last()) {
        if let ClassLabel::Partition { twin: Some(tw), .. } = tail.label {
            if let ClassLabel::Partition { parts, .. } = fused.label {
                fused = fuse_lookup(shape, parts, Some(tw))?;
            }
        }
    }
    Ok(fused)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> SimpleType {
        SimpleType::parse(s).unwrap()
    }

    fn dims_and_comps(kind: CartanType, rank: usize) -> Vec<(u64, u64)> {
        let mut v: Vec<(u64, u64)> = classical_classes(kind, rank, Isogeny::SimplyConnected)
            .unwrap()
            .iter()
            .map(|c| (c.dim, c.comp_order))
            .collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(conjugate_partition(&[3, 1, 1]), [3, 1, 1]);
        assert_eq!(conjugate_partition(&[4, 2]), [2, 2, 1, 1]);
    }

    #[test]
    fn type_a_examples() {
        let a3 = unipotent_classes(st("A3"), None).unwrap();
        assert_eq!(a3.len(), 5);
        let c = a3
            .iter()
            .find(|c| c.label == ClassLabel::partition(vec![2, 1, 1]))
            .unwrap();
        assert_eq!(c.dim, 6);
        let a1 = unipotent_classes(st("A1"), None).unwrap();
        assert_eq!((a1[0].dim, a1[0].comp_order), (2, 2));
        for c in &a3 {
            assert_eq!(4 % c.comp_order, 0);
        }
    }

    #[test]
    fn regular_and_trivial_rows() {
        for kind in [CartanType::A, CartanType::B, CartanType::C, CartanType::D] {
            for rank in 1..=8 {
                let Ok(t) = SimpleType::new(kind, rank) else { continue };
                let classes = unipotent_classes(t, None).unwrap();
                let regular = t.num_roots() as u64;
                let mut dims: Vec<u64> = classes.iter().map(|c| c.dim).collect();
                dims.sort_unstable();
                dims.dedup();
                assert_eq!(dims[0], 0);
                assert_eq!(*dims.last().unwrap(), regular, "{t}");
                assert!(dims[dims.len() - 2] < regular);
                let triv = classes.iter().find(|c| c.dim == 0).unwrap();
                assert_eq!(triv.comp_order, 1);
            }
        }
    }

    #[test]
    fn isogenies_agree() {
        assert_eq!(dims_and_comps(CartanType::B, 2), dims_and_comps(CartanType::C, 2));
        assert_eq!(dims_and_comps(CartanType::D, 3), dims_and_comps(CartanType::A, 3));
        assert_eq!(dims_and_comps(CartanType::B, 1), dims_and_comps(CartanType::A, 1));
        let mut a1a1: Vec<(u64, u64)> = Vec::new();
        for x in dims_and_comps(CartanType::A, 1) {
            for y in dims_and_comps(CartanType::A, 1) {
                a1a1.push((x.0 + y.0, x.1 * y.1));
            }
        }
        a1a1.sort_unstable();
        assert_eq!(dims_and_comps(CartanType::D, 2), a1a1);
    }

    #[test]
    fn triality_orbits_are_consistent() {
        let cs = unipotent_classes(st("D4"), None).unwrap();
        assert_eq!(cs.len(), 12);
        let by_leaf = |leaf: usize, size: u32| {
            cs.iter()
                .find(|c| d_leaf(4, &c.label) == Some(leaf) && c.label.parts().unwrap()[0] <= size)
                .map(|c| (c.dim, c.comp_order))
        };
        assert_eq!(by_leaf(0, 5), by_leaf(2, 4));
        assert_eq!(by_leaf(0, 5), by_leaf(3, 4));
        assert_eq!(by_leaf(0, 3), by_leaf(2, 2));
        let tri = unipotent_classes(st("D4"), Some(&[2, 1, 3, 0])).unwrap();
        assert_eq!(tri.iter().filter(|c| !c.frob_stable).count(), 6);
    }

    #[test]
    fn d_swap_moves_exactly_the_twins() {
        for n in 4..=8 {
            let mut tw: Vec<usize> = (0..n).collect();
            tw.swap(n - 2, n - 1);
            let cs = unipotent_classes(st(&format!("D{n}")), Some(&tw)).unwrap();
            for c in &cs {
                let twin = matches!(c.label, ClassLabel::Partition { twin: Some(_), .. });
                assert_eq!(c.frob_stable, !twin);
            }
            let id: Vec<usize> = (0..n).collect();
            assert!(unipotent_classes(st(&format!("D{n}")), Some(&id))
                .unwrap()
                .iter()
                .all(|c| c.frob_stable));
        }
        assert!(unipotent_classes(st("D5"), Some(&[1, 0, 2, 3, 4])).is_err());
    }

    #[test]
    fn bundled_table_loads() {
        let t = bundled_exceptional_table();
        let counts: Vec<usize> = ["G2", "F4", "E6", "E7", "E8"]
            .iter()
            .map(|s| t.classes(st(s)).unwrap().len())
            .collect();
        assert_eq!(counts, [5, 16, 21, 45, 70]);
        assert!(t.classes(st("G2")).unwrap().iter().any(|c| c.dim == 12));
    }

    #[test]
    fn table_rejections() {
        assert!(matches!(
            ExceptionalClassTable::from_bytes(b"", &hex_digest(b"")),
            Err(Error::Data(_))
        ));
        assert!(matches!(
            ExceptionalClassTable::from_bytes(BUNDLED_TABLE.as_bytes(), &hex_digest(b"x")),
            Err(Error::Checksum { .. })
        ));
        let tampered = BUNDLED_TABLE.replace(r#""label": "G2", "dim": 12"#, r#""label": "G2", "dim": 14"#);
        assert_ne!(tampered, BUNDLED_TABLE);
        let err = ExceptionalClassTable::from_bytes(tampered.as_bytes(), &hex_digest(tampered.as_bytes()));
        assert!(matches!(err, Err(Error::Data(_))));
    }

    #[test]
    fn fusion_examples() {
        let a3 = RootSystem::parse("A3", None).unwrap();
        let shape = levi_shape(&a3, &[0, 2]).unwrap();
        assert_eq!(shape.blocks, [2, 2]);
        let u = fuse_to_ambient(&[vec![2], vec![2]], &shape).unwrap();
        assert_eq!(u.label, ClassLabel::partition(vec![2, 2]));
        let a2 = RootSystem::parse("A2", None).unwrap();
        let shape = levi_shape(&a2, &[0]).unwrap();
        let u = fuse_to_ambient(&[vec![2], vec![1]], &shape).unwrap();
        assert_eq!(u.label, ClassLabel::partition(vec![2, 1]));
        let c2 = RootSystem::parse("C2", None).unwrap();
        let shape = levi_shape(&c2, &[1]).unwrap();
        assert_eq!((shape.blocks.as_slice(), shape.tail), (&[1][..], Some(1)));
        let u = fuse_to_ambient(&[vec![1], vec![2]], &shape).unwrap();
        assert_eq!(u.label, ClassLabel::partition(vec![2, 1, 1]));
        let shape = levi_shape(&c2, &[0]).unwrap();
        let u = fuse_to_ambient(&[vec![1, 1], vec![]], &shape).unwrap();
        assert_eq!(u.label, ClassLabel::partition(vec![1, 1, 1, 1]));
    }

    #[test]
    fn d_shapes() {
        let d4 = RootSystem::parse("D4", None).unwrap();
        let s = levi_shape(&d4, &[2, 3]).unwrap();
        assert_eq!((s.blocks.as_slice(), s.tail), (&[1, 1][..], Some(2)));
        let s = levi_shape(&d4, &[0, 1, 3]).unwrap();
        assert_eq!((s.blocks.as_slice(), s.leg), (&[4][..], Some(Twin::II)));
        let u = fuse_to_ambient(&[vec![4], vec![]], &s).unwrap();
        assert_eq!(u.label.to_string(), "(4,4)II");
    }
}
