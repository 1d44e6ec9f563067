#![allow(dead_code, clippy::needless_range_loop)]

pub mod gset_instances;
pub mod reference;

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Matrix = Vec<Vec<u64>>;

/// Reduced row echelon form mod `p`; returns the pivot columns.
pub fn rref_mod(m: &mut Matrix, p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(s) = (r..rows).find(|&i| !m[i][c].is_multiple_of(p)) else {
            continue;
        };
        m.swap(r, s);
        let inv = pow_mod(m[r][c], p - 2, p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn rank_mod(m: &Matrix, p: u64) -> usize {
    let mut m = m.clone();
    rref_mod(&mut m, p).len()
}

/// Basis of the solution space of `m·x = 0` mod `p`.
pub fn nullspace_mod(m: &Matrix, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = m.clone();
    if m.is_empty() {
        m.push(vec![0; cols]);
    }
    let pivots = rref_mod(&mut m, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, p: u64) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum::<u64>() % p)
                .collect()
        })
        .collect()
}

pub fn det_mod(m: &[u64], n: usize, p: u64) -> u64 {
    let mut a = m.to_vec();
    let mut det = 1u64;
    for c in 0..n {
        let Some(s) = (c..n).find(|&r| a[r * n + c] != 0) else {
            return 0;
        };
        if s != c {
            for j in 0..n {
                a.swap(c * n + j, s * n + j);
            }
            det = (p - det) % p;
        }
        let piv = a[c * n + c];
        det = det * piv % p;
        let inv = pow_mod(piv, p - 2, p);
        for r in c + 1..n {
            let f = a[r * n + c] * inv % p;
            if f != 0 {
                for j in c..n {
                    a[r * n + j] = (a[r * n + j] + (p - f) * a[c * n + j]) % p;
                }
            }
        }
    }
    det
}

/// Nilpotent matrix in Jordan form with the given block sizes.
pub fn jordan_nilpotent(parts: &[u32]) -> Matrix {
    let n: usize = parts.iter().map(|&p| p as usize).sum();
    let mut m = vec![vec![0; n]; n];
    let mut start = 0;
    for &b in parts {
        for i in 0..b as usize - 1 {
            m[start + i][start + i + 1] = 1;
        }
        start += b as usize;
    }
    m
}

/// Linear equations for `XN = NX` in the `n²` entries of `X`.
fn commutant_equations(nil: &Matrix, p: u64) -> Matrix {
    let n = nil.len();
    let mut eqs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![0; n * n];
            for k in 0..n {
                row[i * n + k] = (row[i * n + k] + nil[k][j]) % p;
                row[k * n + j] = (row[k * n + j] + p - nil[i][k] % p) % p;
            }
            eqs.push(row);
        }
    }
    eqs
}

/// Point counts of the commutant of `1 + N_λ` over `F_p`.
#[derive(Debug, Clone, Copy)]
pub struct CommutantCensus {
    pub dim: u32,
    pub total: u64,
    pub units: u64,
    pub det_one: u64,
}

/// Enumerates every matrix in the commutant of a unipotent Jordan element
/// and counts invertible and determinant-one members.
pub fn commutant_census(parts: &[u32], p: u64) -> CommutantCensus {
    let nil = jordan_nilpotent(parts);
    let n = nil.len();
    let basis = nullspace_mod(&commutant_equations(&nil, p), n * n, p);
    let d = basis.len();
    let total = p.pow(d as u32);
    let mut coeffs = vec![0u64; d];
    let mut x = vec![0u64; n * n];
    let (mut units, mut det_one) = (0, 0);
    for _ in 0..total {
        let det = det_mod(&x, n, p);
        if det != 0 {
            units += 1;
        }
        if det == 1 {
            det_one += 1;
        }
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c += 1;
            for (xe, be) in x.iter_mut().zip(&basis[i]) {
                *xe = (*xe + be) % p;
            }
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
    debug_assert!(x.iter().all(|&v| v == 0));
    CommutantCensus {
        dim: d as u32,
        total,
        units,
        det_one,
    }
}

/// The degree `d` with `q^(d-1) < count ≤ q^d`.
pub fn q_degree(count: u64, q: u64) -> u32 {
    let mut d = 0;
    let mut pw = 1u64;
    while pw < count {
        pw *= q;
        d += 1;
    }
    d
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
pub fn jordan_type(nil: &Matrix, p: u64) -> Vec<u32> {
    let n = nil.len();
    let mut ranks = vec![n];
    let mut pw = nil.clone();
    loop {
        let r = rank_mod(&pw, p);
        ranks.push(r);
        if r == 0 {
            break;
        }
        pw = mat_mul(&pw, nil, p);
    }
    // Number of blocks of size ≥ k is rank(N^(k-1)) − rank(N^k).
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in 0..at_least.len() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        for _ in 0..at_least[k] - next {
            parts.push((k + 1) as u32);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Dimension of `{X ∈ span(mask) : XN = NX}` for a 0/1 mask on entries.
pub fn masked_commutant_dim(nil: &Matrix, mask: &[Vec<bool>], p: u64) -> usize {
    let n = nil.len();
    let mut eqs = commutant_equations(nil, p);
    for i in 0..n {
        for j in 0..n {
            if !mask[i][j] {
                let mut row = vec![0; n * n];
                row[i * n + j] = 1;
                eqs.push(row);
            }
        }
    }
    n * n - rank_mod(&eqs, p)
}

fn all_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `α` for the block-diagonal Levi `GL_{b1} × ... × GL_{bk}` of `GL_n`,
/// computed from explicit nilpotent matrices: every tuple of Jordan types
/// is realised block-diagonally and both orbit dimensions come from
/// commutant ranks.
pub fn gl_alpha_oracle(blocks: &[u32]) -> Ratio<u64> {
    const P: u64 = 10_007;
    let n: usize = blocks.iter().map(|&b| b as usize).sum();
    let mut owner = Vec::new();
    for (i, &b) in blocks.iter().enumerate() {
        owner.extend(std::iter::repeat_n(i, b as usize));
    }
    let mask: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| owner[i] == owner[j]).collect()).collect();
    let full = vec![vec![true; n]; n];
    let levi_dim: usize = blocks.iter().map(|&b| (b * b) as usize).sum();
    let choices: Vec<Vec<Vec<u32>>> = blocks.iter().map(|&b| all_partitions(b)).collect();
    let mut best = Ratio::from_integer(0u64);
    let mut idx = vec![0usize; blocks.len()];
    loop {
        let parts: Vec<u32> = idx
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| choices[i][c].clone())
            .collect();
        if parts.iter().any(|&p| p > 1) {
            let nil = jordan_nilpotent(&parts);
            let in_levi = levi_dim - masked_commutant_dim(&nil, &mask, P);
            let in_ambient = n * n - masked_commutant_dim(&nil, &full, P);
            let r = Ratio::new(in_levi as u64, in_ambient as u64);
            if r > best {
                best = r;
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return best;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Compositions of `n`.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Simple roots of `A_{n-1}` inside the blocks of a composition.
pub fn composition_subset(blocks: &[u32]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut start = 0usize;
    for &b in blocks {
        out.extend(start..start + b as usize - 1);
        start += b as usize;
    }
    out
}

/// Classical Lie algebra kinds realised as `{X : XᵀJ + JX = 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Symplectic,
    Orthogonal,
}

/// Antidiagonal Gram matrix; the symplectic one has `+1` then `−1`.
pub fn gram(form: Form, m: usize, p: u64) -> Matrix {
    let mut j = vec![vec![0; m]; m];
    for i in 0..m {
        j[i][m - 1 - i] = match form {
            Form::Orthogonal => 1,
            Form::Symplectic => {
                if i < m / 2 {
                    1
                } else {
                    p - 1
                }
            }
        };
    }
    j
}

/// Linear conditions `XᵀJ + JX = 0` on the entries of `X`.
fn form_equations(jm: &Matrix, p: u64) -> Matrix {
    let m = jm.len();
    let mut eqs = Vec::new();
    for a in 0..m {
        for b in 0..m {
            let mut row = vec![0; m * m];
            for k in 0..m {
                // (XᵀJ)_{ab} = Σ_k X_{ka} J_{kb}; (JX)_{ab} = Σ_k J_{ak} X_{kb}.
                row[k * m + a] = (row[k * m + a] + jm[k][b]) % p;
                row[k * m + b] = (row[k * m + b] + jm[a][k]) % p;
            }
            eqs.push(row);
        }
    }
    eqs
}

/// Samples nilpotent elements of the Borel nilradical of a classical Lie
/// algebra over `F_p` and records Jordan type ↦ `dim C_g(e)`.
pub fn sample_classical_centralizers(
    form: Form,
    m: usize,
    p: u64,
    samples: usize,
    seed: u64,
) -> BTreeMap<Vec<u32>, usize> {
    let jm = gram(form, m, p);
    let mut eqs = form_equations(&jm, p);
    for i in 0..m {
        for j in 0..=i {
            let mut row = vec![0; m * m];
            row[i * m + j] = 1;
            eqs.push(row);
        }
    }
    let nilradical = nullspace_mod(&eqs, m * m, p);
    let algebra_eqs = form_equations(&jm, p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for _ in 0..samples {
        let density: f64 = rng.gen_range(0.05..0.8);
        let mut v = vec![0u64; m * m];
        for b in &nilradical {
            if rng.gen_bool(density) {
                let c = rng.gen_range(1..p);
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + c * y) % p;
                }
            }
        }
        let e: Matrix = v.chunks(m).map(|r| r.to_vec()).collect();
        let jt = jordan_type(&e, p);
        if out.contains_key(&jt) {
            continue;
        }
        let mut cent = algebra_eqs.clone();
        cent.extend(commutant_equations(&e, p));
        let dim = m * m - rank_mod(&cent, p);
        out.insert(jt, dim);
    }
    out
}

/// Distinct Jordan types in a class list, ignoring twin labels.
pub fn distinct_types(labels: impl IntoIterator<Item = Vec<u32>>) -> BTreeSet<Vec<u32>> {
    labels.into_iter().collect()
}
