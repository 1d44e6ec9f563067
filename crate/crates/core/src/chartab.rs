//! Class functions and character tables of enumerated permutation groups.
//!
//! Tables are built with the Burnside–Dixon class-sum method: the central
//! characters `ω_χ(K_j) = |C_j| χ(g_j) / χ(1)` are the common eigenvectors of
//! the class multiplication matrices, separated by a random real combination.

use std::cmp::Ordering;
use std::sync::Arc;

use nalgebra::{Complex, DMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Rounding tolerance for quantities that must be integers.
pub const ROUND_TOL: f64 = 1e-6;

const DIXON_SEED: u64 = 0x5eed_c1a5_5f00_d001;
const DIXON_ATTEMPTS: usize = 16;

pub fn same_group(a: &Arc<PermGroup>, b: &Arc<PermGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Rounds `z` to the nearest Gaussian integer, failing if it is further than `tol`.
pub fn round_gaussian(z: Complex64, tol: f64) -> Option<(i64, i64)> {
    let (re, im) = (z.re.round(), z.im.round());
    ((z.re - re).abs() <= tol && (z.im - im).abs() <= tol).then_some((re as i64, im as i64))
}

/// Rounds a value that must be a (real) integer.
pub fn round_int(z: Complex64) -> Option<i64> {
    match round_gaussian(z, ROUND_TOL) {
        Some((r, 0)) => Some(r),
        _ => None,
    }
}

/// A function on a group that is constant on conjugacy classes, stored as one
/// value per class of [`PermGroup::classes`].
#[derive(Debug, Clone)]
pub struct ClassFunction {
    group: Arc<PermGroup>,
    values: Vec<Complex64>,
}

impl ClassFunction {
    pub fn new(group: Arc<PermGroup>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.classes().len() {
            return Err(Error::GroupMismatch(format!(
                "{} values for {} classes",
                values.len(),
                group.classes().len()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    /// Evaluates `f` on class representatives.
    pub fn from_fn(group: Arc<PermGroup>, f: impl Fn(&Perm) -> Complex64) -> Self {
        let values = group.classes().representatives.iter().map(f).collect();
        ClassFunction { group, values }
    }

    pub fn trivial(group: Arc<PermGroup>) -> Self {
        ClassFunction::from_fn(group, |_| Complex64::new(1.0, 0.0))
    }

    pub fn regular(group: Arc<PermGroup>) -> Self {
        let n = group.order() as f64;
        ClassFunction::from_fn(group, |p| Complex64::new(if p.is_identity() { n } else { 0.0 }, 0.0))
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn degree(&self) -> Complex64 {
        self.values[0]
    }

    /// Value at an element of the group.
    pub fn value_at(&self, p: &Perm) -> Option<Complex64> {
        let i = self.group.index_of(p)?;
        Some(self.values[self.group.classes().class_of[i]])
    }

    pub fn value_at_idx(&self, i: usize) -> Complex64 {
        self.values[self.group.classes().class_of[i]]
    }

    pub fn conj(&self) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<Self> {
        self.check_same(other)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|z| z * c).collect(),
        }
    }

    fn check_same(&self, other: &ClassFunction) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch("class functions live on different groups".into()))
        }
    }

    /// `(1/|G|) Σ_x f(x) conj(f'(x))`.
    pub fn inner(&self, other: &ClassFunction) -> Result<Complex64> {
        inner_product(self, other)
    }

    pub fn max_abs_diff(&self, other: &ClassFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Complex64> {
    f.check_same(g)?;
    let classes = f.group.classes();
    let s: Complex64 = f
        .values
        .iter()
        .zip(&g.values)
        .zip(&classes.class_sizes)
        .map(|((a, b), &n)| a * b.conj() * n as f64)
        .sum();
    Ok(s / f.group.order() as f64)
}

/// Ordinary induction from `H ≤ G`.
pub fn induce_class_function(h: &Arc<PermGroup>, f: &ClassFunction, g: &Arc<PermGroup>) -> Result<ClassFunction> {
    if !same_group(f.group(), h) {
        return Err(Error::GroupMismatch("function is not defined on H".into()));
    }
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup("H is not a subgroup of G".into()));
    }
    let hn = h.order() as f64;
    Ok(ClassFunction::from_fn(g.clone(), |z| {
        let s: Complex64 = g.elements().iter().filter_map(|x| f.value_at(&x.conjugate(z))).sum();
        s / hn
    }))
}

/// Restriction to `H ≤ G`.
pub fn restrict_class_function(f: &ClassFunction, h: &Arc<PermGroup>) -> Result<ClassFunction> {
    if !h.is_subgroup_of(f.group()) {
        return Err(Error::NotSubgroup("H is not a subgroup of G".into()));
    }
    Ok(ClassFunction::from_fn(h.clone(), |p| {
        f.value_at(p).expect("subgroup element lies in G")
    }))
}

/// The irreducible characters of a group.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<PermGroup>,
    rows: Vec<ClassFunction>,
    degrees: Vec<u64>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Multiplicities `⟨f, χ⟩` for every irreducible `χ`.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<Complex64>> {
        self.rows.iter().map(|chi| inner_product(f, chi)).collect()
    }

    /// Largest deviation from row orthonormality, column orthogonality and
    /// the degree-square identity.
    pub fn orthogonality_defect(&self) -> f64 {
        let cls = self.group.classes();
        let n = self.group.order() as f64;
        let mut worst: f64 = 0.0;
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate() {
                let ip = inner_product(a, b).unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - want).norm());
            }
        }
        for k in 0..cls.len() {
            for l in 0..cls.len() {
                let s: Complex64 = self.rows.iter().map(|r| r.values[k] * r.values[l].conj()).sum();
                let want = if k == l { n / cls.class_sizes[k] as f64 } else { 0.0 };
                worst = worst.max((s - want).norm());
            }
        }
        let dsq: u64 = self.degrees.iter().map(|d| d * d).sum();
        worst.max((dsq as f64 - n).abs())
    }

    pub fn to_dump(&self) -> TableDump {
        TableDump {
            group_order: self.group.order(),
            class_sizes: self.group.classes().class_sizes.clone(),
            class_representatives: self
                .group
                .classes()
                .representatives
                .iter()
                .map(|p| p.to_string())
                .collect(),
            degrees: self.degrees.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| r.values.iter().map(|z| [clean(z.re), clean(z.im)]).collect())
                .collect(),
        }
    }
}

fn clean(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// JSON form of a character table.
#[derive(Debug, Clone, Serialize)]
pub struct TableDump {
    pub group_order: usize,
    pub class_sizes: Vec<usize>,
    pub class_representatives: Vec<String>,
    pub degrees: Vec<u64>,
    pub rows: Vec<Vec<[f64; 2]>>,
}

/// Class multiplication coefficients `a[j][l][k] = #{x ∈ C_j : x⁻¹ z_k ∈ C_l}`.
fn class_coefficients(g: &PermGroup) -> Vec<Vec<Vec<f64>>> {
    let cls = g.classes();
    let r = cls.len();
    let mut a = vec![vec![vec![0.0; r]; r]; r];
    for (k, z) in cls.representatives.iter().enumerate() {
        let zi = g.index_of(z).unwrap();
        for j in 0..r {
            for &x in &cls.members[j] {
                let y = g.mul_idx(g.inv_idx(x), zi);
                a[j][cls.class_of[y]][k] += 1.0;
            }
        }
    }
    a
}

fn null_vector(m: &DMatrix<Complex<f64>>) -> Vec<Complex64> {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (imin, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    v_t.row(imin).iter().map(|z| z.conj()).collect()
}

/// Computes the full character table.
pub fn character_table(g: &Arc<PermGroup>) -> Result<CharacterTable> {
    let cls = g.classes();
    let r = cls.len();
    let order = g.order() as f64;
    let coeffs = class_coefficients(g);
    let mut rng = ChaCha8Rng::seed_from_u64(DIXON_SEED);
    let mut last_err = String::new();
    for _ in 0..DIXON_ATTEMPTS {
        let c: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut m = DMatrix::<f64>::zeros(r, r);
        for (j, cj) in c.iter().enumerate() {
            for l in 0..r {
                for k in 0..r {
                    m[(l, k)] += cj * coeffs[j][l][k];
                }
            }
        }
        let eig = m.complex_eigenvalues();
        let scale = eig.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let mut min_gap = f64::INFINITY;
        for i in 0..r {
            for j in 0..i {
                min_gap = min_gap.min((eig[i] - eig[j]).norm());
            }
        }
        if min_gap < 1e-7 * scale {
            last_err = format!("eigenvalues not separated (gap {min_gap:.3e})");
            continue;
        }
        let mc = m.map(|x| Complex::new(x, 0.0));
        let mut rows = Vec::with_capacity(r);
        let mut degrees = Vec::with_capacity(r);
        let mut ok = true;
        for lam in eig.iter() {
            let mut shifted = mc.clone();
            for i in 0..r {
                shifted[(i, i)] -= lam;
            }
            let v = null_vector(&shifted);
            if v[0].norm() < 1e-12 {
                ok = false;
                last_err = "eigenvector vanishes at the identity class".into();
                break;
            }
            let w: Vec<Complex64> = v.iter().map(|z| z / v[0]).collect();
            let norm: f64 = w
                .iter()
                .zip(&cls.class_sizes)
                .map(|(z, &n)| z.norm_sqr() / n as f64)
                .sum();
            let deg = (order / norm).sqrt();
            let d = deg.round();
            if (deg - d).abs() > 1e-4 || d < 1.0 {
                ok = false;
                last_err = format!("non-integral degree {deg}");
                break;
            }
            let values: Vec<Complex64> = w.iter().zip(&cls.class_sizes).map(|(z, &n)| z * d / n as f64).collect();
            rows.push(ClassFunction {
                group: g.clone(),
                values,
            });
            degrees.push(d as u64);
        }
        if !ok {
            continue;
        }
        let mut order_idx: Vec<usize> = (0..r).collect();
        order_idx.sort_by(|&a, &b| canonical_cmp(&rows[a], degrees[a], &rows[b], degrees[b]));
        let table = CharacterTable {
            group: g.clone(),
            rows: order_idx.iter().map(|&i| rows[i].clone()).collect(),
            degrees: order_idx.iter().map(|&i| degrees[i]).collect(),
        };
        let defect = table.orthogonality_defect();
        if defect > ROUND_TOL {
            last_err = format!("orthogonality defect {defect:.3e}");
            continue;
        }
        return Ok(table);
    }
    Err(Error::CharacterTable(last_err))
}

fn quantize(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

/// Degree ascending, then values lexicographically descending (so the
/// trivial character comes first).
fn canonical_cmp(a: &ClassFunction, da: u64, b: &ClassFunction, db: u64) -> Ordering {
    da.cmp(&db).then_with(|| {
        for (x, y) in a.values.iter().zip(&b.values) {
            let o = (quantize(y.re), quantize(y.im)).cmp(&(quantize(x.re), quantize(x.im)));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}
