//! Textbook character tables, matched against computed ones up to the order
//! of rows and of classes with the same element order and size.

use std::sync::Arc;

use charbound::chartab::character_table;
use charbound::group::{named, PermGroup};
use num_complex::Complex64;

pub struct Reference {
    pub name: &'static str,
    pub group: PermGroup,
    /// `(element order, class size)` per column.
    pub classes: Vec<(usize, usize)>,
    pub rows: Vec<Vec<Complex64>>,
}

fn re(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

pub fn references() -> Vec<Reference> {
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let one = Complex64::new(1.0, 0.0);
    vec![
        Reference {
            name: "S3",
            group: named::symmetric(3),
            classes: vec![(1, 1), (2, 3), (3, 2)],
            rows: vec![re(&[1., 1., 1.]), re(&[1., -1., 1.]), re(&[2., 0., -1.])],
        },
        Reference {
            name: "D8",
            group: named::dihedral(4),
            classes: vec![(1, 1), (2, 1), (4, 2), (2, 2), (2, 2)],
            rows: vec![
                re(&[1., 1., 1., 1., 1.]),
                re(&[1., 1., 1., -1., -1.]),
                re(&[1., 1., -1., 1., -1.]),
                re(&[1., 1., -1., -1., 1.]),
                re(&[2., -2., 0., 0., 0.]),
            ],
        },
        Reference {
            name: "Q8",
            group: named::quaternion(),
            classes: vec![(1, 1), (2, 1), (4, 2), (4, 2), (4, 2)],
            rows: vec![
                re(&[1., 1., 1., 1., 1.]),
                re(&[1., 1., 1., -1., -1.]),
                re(&[1., 1., -1., 1., -1.]),
                re(&[1., 1., -1., -1., 1.]),
                re(&[2., -2., 0., 0., 0.]),
            ],
        },
        Reference {
            name: "A4",
            group: named::alternating(4),
            classes: vec![(1, 1), (2, 3), (3, 4), (3, 4)],
            rows: vec![
                re(&[1., 1., 1., 1.]),
                vec![one, one, w, w * w],
                vec![one, one, w * w, w],
                re(&[3., -1., 0., 0.]),
            ],
        },
        Reference {
            name: "S4",
            group: named::symmetric(4),
            classes: vec![(1, 1), (2, 6), (2, 3), (3, 8), (4, 6)],
            rows: vec![
                re(&[1., 1., 1., 1., 1.]),
                re(&[1., -1., 1., 1., -1.]),
                re(&[2., 0., 2., -1., 0.]),
                re(&[3., 1., -1., 0., -1.]),
                re(&[3., -1., -1., 0., 1.]),
            ],
        },
    ]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Searches for a class bijection under which the computed rows equal the
/// reference rows as a set, within `tol`.
pub fn matches(reference: &Reference, tol: f64) -> Result<(), String> {
    let g = Arc::new(reference.group.clone());
    let table = character_table(&g).map_err(|e| e.to_string())?;
    let cls = g.classes();
    let sig: Vec<(usize, usize)> = cls
        .representatives
        .iter()
        .zip(&cls.class_sizes)
        .map(|(r, &s)| (r.order(), s))
        .collect();
    let n = sig.len();
    if n != reference.classes.len() || table.len() != reference.rows.len() {
        return Err(format!("{}: class or row count differs", reference.name));
    }
    let close = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol);
    for perm in permutations(n) {
        // perm[j]: library class for reference column j.
        if (0..n).any(|j| sig[perm[j]] != reference.classes[j]) {
            continue;
        }
        let mut used = vec![false; n];
        let all = reference.rows.iter().all(|row| {
            let found =
                table.rows().iter().enumerate().find(|(i, chi)| {
                    !used[*i] && close(row, &perm.iter().map(|&c| chi.values()[c]).collect::<Vec<_>>())
                });
            match found {
                Some((i, _)) => {
                    used[i] = true;
                    true
                }
                None => false,
            }
        });
        if all {
            return Ok(());
        }
    }
    Err(format!(
        "{}: no class bijection matches the reference table",
        reference.name
    ))
}
