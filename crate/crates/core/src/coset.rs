//! Irreducible functions on a coset `G.φ`, induction from subcosets `H.gφ`,
//! and the two multiplicity bounds relating coset induction to ordinary
//! induction.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::chartab::{character_table, induce_class_function, inner_product, round_int, CharacterTable, ClassFunction};
use crate::error::{Error, Result};
use crate::group::{named, PermGroup};
use crate::gset::{gset_inner_product, induce_along, GFunction, GMap, GSet};
use crate::perm::Perm;
use crate::semidirect::{twist_bijection, Automorphism, SemidirectGroup, TwistMap};

/// Slack allowed when comparing the two sides of a bound.
pub const BOUND_TOL: f64 = 1e-6;

/// The slice `G.φ` as a `G`-set under conjugation; point `x` is `xφ`.
pub fn slice_gset(s: &SemidirectGroup) -> GSet<usize> {
    let slice = s.slice();
    let n = s.base().order();
    let table = (0..n)
        .map(|h| (0..n).map(|x| slice.conjugate_by(h, x) as u32).collect())
        .collect();
    GSet::from_table(s.base().clone(), (0..n).collect(), table).expect("conjugation on the slice is an action")
}

/// Restriction of an irreducible of `G ⋊ ⟨φ⟩` to the slice `G.φ`.
#[derive(Debug, Clone)]
pub struct CosetCharacter {
    gset: Arc<GSet<usize>>,
    values: Vec<Complex64>,
    parent: ClassFunction,
    parent_index: usize,
    base_restriction: ClassFunction,
}

impl CosetCharacter {
    pub fn gset(&self) -> &Arc<GSet<usize>> {
        &self.gset
    }

    /// Values at `xφ`, indexed by the base index of `x`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// The irreducible of the realized semidirect product being restricted.
    pub fn parent(&self) -> &ClassFunction {
        &self.parent
    }

    /// Row of the parent in the character table of the realized group.
    pub fn parent_index(&self) -> usize {
        self.parent_index
    }

    /// The irreducible restriction of the parent to the base group.
    pub fn base_restriction(&self) -> &ClassFunction {
        &self.base_restriction
    }

    pub fn as_gfunction(&self) -> GFunction<usize> {
        GFunction::invariant(self.gset.clone(), self.values.clone()).expect("coset characters are invariant")
    }
}

/// Irreducible coset characters of `G.φ` together with the data that produced them.
#[derive(Debug, Clone)]
pub struct CosetIrr {
    semidirect: SemidirectGroup,
    gset: Arc<GSet<usize>>,
    table: CharacterTable,
    characters: Vec<CosetCharacter>,
    canonical: Vec<usize>,
}

fn key(z: Complex64) -> (i64, i64) {
    ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)
}

impl CosetIrr {
    pub fn new(s: SemidirectGroup) -> Result<Self> {
        let table = character_table(s.realized())?;
        let gset = Arc::new(slice_gset(&s));
        let base = s.base().clone();
        let slice = s.slice();
        let mut characters = Vec::new();
        for (i, eta) in table.rows().iter().enumerate() {
            let res = ClassFunction::from_fn(base.clone(), |p| {
                eta.value_at_idx(s.embed_idx(base.index_of(p).expect("element of G")))
            });
            if round_int(inner_product(&res, &res)?) != Some(1) {
                continue;
            }
            characters.push(CosetCharacter {
                gset: gset.clone(),
                values: slice.elements.iter().map(|&e| eta.value_at_idx(e)).collect(),
                parent: eta.clone(),
                parent_index: i,
                base_restriction: res,
            });
        }
        // one extension per φ-invariant irreducible: minimal value at φ
        let mut best: HashMap<Vec<(i64, i64)>, usize> = HashMap::new();
        let mut order = Vec::new();
        for (k, c) in characters.iter().enumerate() {
            let rk: Vec<(i64, i64)> = c.base_restriction.values().iter().map(|&z| key(z)).collect();
            let at_phi = key(c.parent.value_at_idx(s.phi_image_idx()));
            match best.get(&rk) {
                None => {
                    order.push(rk.clone());
                    best.insert(rk, k);
                }
                Some(&j) => {
                    if at_phi < key(characters[j].parent.value_at_idx(s.phi_image_idx())) {
                        best.insert(rk, k);
                    }
                }
            }
        }
        let canonical = order.iter().map(|rk| best[rk]).collect();
        Ok(CosetIrr {
            semidirect: s,
            gset,
            table,
            characters,
            canonical,
        })
    }

    pub fn semidirect(&self) -> &SemidirectGroup {
        &self.semidirect
    }

    pub fn gset(&self) -> &Arc<GSet<usize>> {
        &self.gset
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    /// Every restriction to the slice of an irreducible with irreducible
    /// restriction to `G`.
    pub fn characters(&self) -> &[CosetCharacter] {
        &self.characters
    }

    /// Indices into [`Self::characters`] of one canonical extension per
    /// `φ`-invariant irreducible of `G`; these are orthonormal on the slice.
    pub fn canonical_indices(&self) -> &[usize] {
        &self.canonical
    }

    pub fn canonical_basis(&self) -> Vec<&CosetCharacter> {
        self.canonical.iter().map(|&i| &self.characters[i]).collect()
    }
}

/// `Irr(G.φ)`: restrictions to the slice of the irreducibles of `G ⋊ ⟨φ⟩`
/// whose restriction to `G` is irreducible.
pub fn irr_coset(s: &SemidirectGroup) -> Result<Vec<CosetCharacter>> {
    Ok(CosetIrr::new(s.clone())?.characters)
}

/// A subcoset `H.gφ` with its twisting map into `G.φ` and its irreducibles.
#[derive(Debug, Clone)]
pub struct Subcoset {
    pub twist: TwistMap,
    pub gamma: GMap<usize, usize>,
    pub irr: CosetIrr,
}

impl Subcoset {
    /// Requires `g φ(H) g⁻¹ = H`.
    pub fn new(parent: &CosetIrr, h: Arc<PermGroup>, g: &Perm) -> Result<Self> {
        let twist = twist_bijection(&parent.semidirect, h, g)?;
        let irr = CosetIrr::new(twist.sub_semidirect.clone())?;
        let gamma = GMap::new(irr.gset.clone(), parent.gset.clone(), twist.image.clone())?;
        Ok(Subcoset { twist, gamma, irr })
    }

    pub fn subgroup(&self) -> &Arc<PermGroup> {
        &self.twist.subgroup
    }
}

/// `Ind_{H.gφ}^{G.φ}` of a coset character, computed along `γ_g`.
pub fn coset_induce(gamma: &GMap<usize, usize>, chi: &CosetCharacter) -> Result<GFunction<usize>> {
    if !Arc::ptr_eq(gamma.source(), &chi.gset) {
        return Err(Error::GroupMismatch(
            "character does not live on the source subcoset".into(),
        ));
    }
    induce_along(gamma, &chi.as_gfunction())
}

/// Both sides of the coset multiplicity inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultiplicityReport {
    pub lhs: f64,
    pub rhs: u64,
    pub holds: bool,
}

/// Compares `|⟨ρ̃, Ind_{H.gφ}^{G.φ}(χ̃)⟩|` (computed on slices) with
/// `⟨ρ, Ind_H^G(χ)⟩` (computed from class functions).
pub fn verify_multiplicity_lemma(
    parent: &CosetIrr,
    sub: &Subcoset,
    chi: &CosetCharacter,
    rho: &CosetCharacter,
) -> Result<MultiplicityReport> {
    if !Arc::ptr_eq(&rho.gset, &parent.gset) {
        return Err(Error::GroupMismatch("ρ̃ is not a coset character of G.φ".into()));
    }
    let induced = coset_induce(&sub.gamma, chi)?;
    let ind_h = induce_class_function(sub.subgroup(), &chi.base_restriction, parent.semidirect.base())?;
    multiplicity_from_parts(rho, &induced, &ind_h)
}

fn multiplicity_from_parts(
    rho: &CosetCharacter,
    induced: &GFunction<usize>,
    ind_h: &ClassFunction,
) -> Result<MultiplicityReport> {
    let lhs = gset_inner_product(&rho.as_gfunction(), induced)?.norm();
    let r = inner_product(&rho.base_restriction, ind_h)?;
    let rhs = round_int(r)
        .filter(|&v| v >= 0)
        .ok_or_else(|| Error::InvalidArgument(format!("⟨ρ, Ind χ⟩ = {r} is not a nonnegative integer")))?
        as u64;
    Ok(MultiplicityReport {
        lhs,
        rhs,
        holds: lhs <= rhs as f64 + BOUND_TOL,
    })
}

/// Norm of the pairing of two coset-induced functions against `|G|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormBound {
    pub value: f64,
    pub bound: u64,
    pub holds: bool,
}

pub fn coset_norm_bound_check(
    parent: &CosetIrr,
    first: (&Subcoset, &CosetCharacter),
    second: (&Subcoset, &CosetCharacter),
) -> Result<NormBound> {
    for (sub, _) in [&first, &second] {
        if !Arc::ptr_eq(sub.gamma.target(), &parent.gset) {
            return Err(Error::GroupMismatch("subcoset does not map into this slice".into()));
        }
    }
    let a = coset_induce(&first.0.gamma, first.1)?;
    let b = coset_induce(&second.0.gamma, second.1)?;
    norm_bound(&a, &b, parent.semidirect.base().order())
}

fn norm_bound(a: &GFunction<usize>, b: &GFunction<usize>, order: usize) -> Result<NormBound> {
    let value = gset_inner_product(a, b)?.norm();
    Ok(NormBound {
        value,
        bound: order as u64,
        holds: value <= order as f64 + BOUND_TOL,
    })
}

/// A group with a distinguished automorphism.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub group_name: &'static str,
    pub automorphism_name: &'static str,
    pub group: Arc<PermGroup>,
    pub phi: Automorphism,
}

impl CorpusEntry {
    fn new(
        group_name: &'static str,
        automorphism_name: &'static str,
        group: &Arc<PermGroup>,
        phi: Automorphism,
    ) -> Self {
        CorpusEntry {
            group_name,
            automorphism_name,
            group: group.clone(),
            phi,
        }
    }

    pub fn semidirect(&self) -> Result<SemidirectGroup> {
        SemidirectGroup::new(self.group.clone(), self.phi.clone(), self.phi.order())
    }
}

/// `C₆, S₃, A₄, S₄, D₈, Q₈`, each with the identity and one automorphism of order 2.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let c6 = Arc::new(named::cyclic(6));
    let inv = Automorphism::from_map(&c6, (0..6).map(|i| c6.inv_idx(i)).collect()).unwrap();
    out.push(CorpusEntry::new("C6", "id", &c6, Automorphism::identity(&c6)));
    out.push(CorpusEntry::new("C6", "inversion", &c6, inv));
    for (name, g) in [
        ("S3", named::symmetric(3)),
        ("A4", named::alternating(4)),
        ("S4", named::symmetric(4)),
    ] {
        let g = Arc::new(g);
        let t = Perm::from_cycles(g.degree(), &[&[1, 2]]).unwrap();
        out.push(CorpusEntry::new(name, "id", &g, Automorphism::identity(&g)));
        out.push(CorpusEntry::new(
            name,
            "conj(1 2)",
            &g,
            Automorphism::conjugation(&g, &t).unwrap(),
        ));
    }
    let d8 = Arc::new(named::dihedral(4));
    let (r, s) = (d8.generators()[0].clone(), d8.generators()[1].clone());
    let outer = Automorphism::from_generator_images(&d8, &[r.inverse(), r.compose(&s)]).unwrap();
    out.push(CorpusEntry::new("D8", "id", &d8, Automorphism::identity(&d8)));
    out.push(CorpusEntry::new("D8", "r->r^-1,s->rs", &d8, outer));
    let q8 = Arc::new(named::quaternion());
    let (i, j) = (q8.generators()[0].clone(), q8.generators()[1].clone());
    let swap = Automorphism::from_generator_images(&q8, &[j, i]).unwrap();
    out.push(CorpusEntry::new("Q8", "id", &q8, Automorphism::identity(&q8)));
    out.push(CorpusEntry::new("Q8", "i<->j", &q8, swap));
    out
}

/// One multiplicity comparison, as emitted in JSON lines.
#[derive(Debug, Clone, Serialize)]
pub struct MultiplicityRecord {
    pub group: &'static str,
    pub automorphism: &'static str,
    pub subgroup_order: usize,
    pub g: String,
    pub chi: usize,
    pub rho: usize,
    #[serde(flatten)]
    pub report: MultiplicityReport,
}

/// Aggregate outcome of the exhaustive check on one corpus entry.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CorpusSummary {
    pub group: String,
    pub automorphism: String,
    pub subcosets: usize,
    pub lemma_pairs: usize,
    pub lemma_failures: usize,
    /// Pairs with `φ = id` and `g = 1` (ordinary induction) where the two sides differ.
    pub identity_mismatches: usize,
    /// Pairs with `φ = id` and `g ≠ 1` where the two sides differ; informational.
    pub twisted_identity_differences: usize,
    pub norm_pairs: usize,
    pub norm_failures: usize,
    pub max_norm_value: f64,
    pub bound: u64,
    pub max_orthonormality_defect: f64,
}

/// Runs both bounds over every subgroup-class representative `H`, every
/// `g ∈ G` satisfying the stability condition, and all coset irreducibles.
pub fn run_corpus_entry(entry: &CorpusEntry, mut sink: impl FnMut(&MultiplicityRecord)) -> Result<CorpusSummary> {
    let parent = CosetIrr::new(entry.semidirect()?)?;
    let g = entry.group.clone();
    let is_identity = entry.phi.is_identity();
    let mut summary = CorpusSummary {
        group: entry.group_name.into(),
        automorphism: entry.automorphism_name.into(),
        bound: g.order() as u64,
        ..Default::default()
    };
    let basis = parent.canonical_basis();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let ip = gset_inner_product(&a.as_gfunction(), &b.as_gfunction())?;
            let want = if i == j { 1.0 } else { 0.0 };
            summary.max_orthonormality_defect = summary.max_orthonormality_defect.max((ip - want).norm());
        }
    }
    let mut induced_all: Vec<GFunction<usize>> = Vec::new();
    for h in g.subgroup_class_representatives() {
        let h = Arc::new(h);
        for x in g.elements() {
            let sub = match Subcoset::new(&parent, h.clone(), x) {
                Ok(s) => s,
                Err(Error::Unstable(_)) => continue,
                Err(e) => return Err(e),
            };
            summary.subcosets += 1;
            for (ci, chi) in sub.irr.characters().iter().enumerate() {
                let induced = coset_induce(&sub.gamma, chi)?;
                let ind_h = induce_class_function(sub.subgroup(), chi.base_restriction(), &g)?;
                for (ri, rho) in parent.characters().iter().enumerate() {
                    let report = multiplicity_from_parts(rho, &induced, &ind_h)?;
                    summary.lemma_pairs += 1;
                    if !report.holds {
                        summary.lemma_failures += 1;
                    }
                    if is_identity && (report.lhs - report.rhs as f64).abs() > BOUND_TOL {
                        if x.is_identity() {
                            summary.identity_mismatches += 1;
                        } else {
                            summary.twisted_identity_differences += 1;
                        }
                    }
                    sink(&MultiplicityRecord {
                        group: entry.group_name,
                        automorphism: entry.automorphism_name,
                        subgroup_order: h.order(),
                        g: x.to_string(),
                        chi: ci,
                        rho: ri,
                        report,
                    });
                }
                induced_all.push(induced);
            }
        }
    }
    for (i, a) in induced_all.iter().enumerate() {
        for b in &induced_all[i..] {
            let nb = norm_bound(a, b, g.order())?;
            summary.norm_pairs += 1;
            summary.max_norm_value = summary.max_norm_value.max(nb.value);
            if !nb.holds {
                summary.norm_failures += 1;
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::round_gaussian;

    fn c3_inversion() -> SemidirectGroup {
        let c3 = Arc::new(named::cyclic(3));
        let inv = Automorphism::from_map(&c3, (0..3).map(|i| c3.inv_idx(i)).collect()).unwrap();
        SemidirectGroup::new(c3, inv, 2).unwrap()
    }

    #[test]
    fn s3_as_c3_semidirect_has_two_coset_characters() {
        let irr = irr_coset(&c3_inversion()).unwrap();
        assert_eq!(irr.len(), 2);
        let ci = CosetIrr::new(c3_inversion()).unwrap();
        // only the trivial character of C3 is inversion-invariant
        assert_eq!(ci.canonical_indices().len(), 1);
    }

    #[test]
    fn identity_automorphism_recovers_irr() {
        let g = Arc::new(named::alternating(4));
        let s = SemidirectGroup::new(g.clone(), Automorphism::identity(&g), 1).unwrap();
        let irr = CosetIrr::new(s).unwrap();
        assert_eq!(irr.characters().len(), 4);
        assert_eq!(irr.canonical_indices().len(), 4);
    }

    #[test]
    fn canonical_basis_is_orthonormal_and_counts_invariant_irreducibles() {
        for entry in corpus() {
            let s = entry.semidirect().unwrap();
            let irr = CosetIrr::new(s).unwrap();
            let g = entry.group.clone();
            let t = character_table(&g).unwrap();
            let invariant =
                t.rows()
                    .iter()
                    .filter(|chi| {
                        g.elements().iter().enumerate().all(|(i, _)| {
                            (chi.value_at_idx(entry.phi.apply_idx(i)) - chi.value_at_idx(i)).norm() < 1e-6
                        })
                    })
                    .count();
            assert_eq!(irr.canonical_indices().len(), invariant, "{}", entry.group_name);
            let basis = irr.canonical_basis();
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let ip = gset_inner_product(&a.as_gfunction(), &b.as_gfunction()).unwrap();
                    assert_eq!(round_gaussian(ip, 1e-6), Some((i64::from(i == j), 0)));
                }
            }
        }
    }

    #[test]
    fn full_subcoset_with_identity_twist_is_identity() {
        let s = c3_inversion();
        let parent = CosetIrr::new(s.clone()).unwrap();
        let sub = Subcoset::new(&parent, s.base().clone(), s.base().identity()).unwrap();
        for (chi, rho) in sub.irr.characters().iter().zip(parent.characters()) {
            let ind = coset_induce(&sub.gamma, chi).unwrap();
            assert!(ind.max_abs_diff(&rho.as_gfunction()) < 1e-9);
        }
        let chi = &sub.irr.characters()[0];
        for rho in parent.characters() {
            let rep = verify_multiplicity_lemma(&parent, &sub, chi, rho).unwrap();
            assert!(rep.holds);
            assert!(rep.rhs <= 1);
        }
    }

    #[test]
    fn trivial_subgroup_induces_pi() {
        let s = c3_inversion();
        let parent = CosetIrr::new(s.clone()).unwrap();
        let e = Arc::new(s.base().subgroup(&[]).unwrap());
        let sub = Subcoset::new(&parent, e, s.base().identity()).unwrap();
        let one = &sub.irr.characters()[0];
        let ind = coset_induce(&sub.gamma, one).unwrap();
        let pi = crate::gset::indicator_pi_idx(parent.gset(), 0);
        assert!(ind.max_abs_diff(&pi) < 1e-9);
        let nb = coset_norm_bound_check(&parent, (&sub, one), (&sub, one)).unwrap();
        assert!(nb.holds);
        // ⟨π_φ, π_φ⟩ is the order of the centralizer of φ in G
        assert!((nb.value - parent.gset().stabilizer_order(0) as f64).abs() < 1e-9);
    }

    #[test]
    fn s4_klein_subgroup_bounds() {
        let entry = corpus()
            .into_iter()
            .find(|e| e.group_name == "S4" && e.automorphism_name != "id")
            .unwrap();
        let parent = CosetIrr::new(entry.semidirect().unwrap()).unwrap();
        let g = entry.group.clone();
        let v4 = Arc::new(
            g.subgroup(&[
                Perm::parse_cycles(4, "(1 2)(3 4)").unwrap(),
                Perm::parse_cycles(4, "(1 3)(2 4)").unwrap(),
            ])
            .unwrap(),
        );
        let mut checked = 0;
        for x in g.elements() {
            let Ok(sub) = Subcoset::new(&parent, v4.clone(), x) else {
                continue;
            };
            for chi in sub.irr.characters() {
                for rho in parent.characters() {
                    assert!(verify_multiplicity_lemma(&parent, &sub, chi, rho).unwrap().holds);
                    checked += 1;
                }
                let nb = coset_norm_bound_check(&parent, (&sub, chi), (&sub, chi)).unwrap();
                assert!(nb.holds && nb.bound == 24);
            }
        }
        // V4 is normal, so every g qualifies
        assert!(checked > 0);
    }

    #[test]
    fn unstable_subgroup_rejected() {
        let entry = &corpus()[3]; // S3 with conjugation by (1 2)
        let parent = CosetIrr::new(entry.semidirect().unwrap()).unwrap();
        let h = Arc::new(
            entry
                .group
                .subgroup(&[Perm::parse_cycles(3, "(1 3)").unwrap()])
                .unwrap(),
        );
        let g = Perm::identity(3);
        assert!(matches!(Subcoset::new(&parent, h, &g), Err(Error::Unstable(_))));
    }
}
