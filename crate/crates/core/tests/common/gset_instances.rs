//! Random `(G, H, ψ)` instances for the G-set calculus identities.

use std::sync::{Arc, OnceLock};

use charbound::chartab::{induce_class_function, inner_product, restrict_class_function, ClassFunction};
use charbound::group::{enumerate_group, named, PermGroup};
use charbound::gset::{
    build_gset, decompose_in_pi_basis, gset_inner_product, indicator_pi_idx, induce_along, induce_along_injective,
    reconstruct_from_pi, restrict_along, GFunction, GMap, GSet,
};
use charbound::perm::Perm;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A point of a disjoint union: component tag and a sorted set of element indices.
pub type Pt = (u8, Vec<u32>);

struct PoolGroup {
    group: Arc<PermGroup>,
    subgroups: Vec<Arc<PermGroup>>,
}

fn pool() -> &'static [PoolGroup] {
    static POOL: OnceLock<Vec<PoolGroup>> = OnceLock::new();
    POOL.get_or_init(|| {
        let s4c2 = enumerate_group(
            &[
                Perm::parse_cycles(6, "(1 2 3 4)").unwrap(),
                Perm::parse_cycles(6, "(1 2)").unwrap(),
                Perm::parse_cycles(6, "(5 6)").unwrap(),
            ],
            6,
        )
        .unwrap();
        [
            named::symmetric(3),
            named::cyclic(6),
            named::dihedral(4),
            named::quaternion(),
            named::alternating(4),
            named::dihedral(6),
            named::symmetric(4),
            s4c2,
        ]
        .into_iter()
        .map(|g| {
            let subgroups = g.all_subgroups().into_iter().map(Arc::new).collect();
            PoolGroup {
                group: Arc::new(g),
                subgroups,
            }
        })
        .collect()
    })
}

/// Left action of a `G`-index on a point of a component.
#[derive(Clone)]
enum Component {
    Conjugation,
    Cosets,
}

fn act(g: &PermGroup, kinds: &[Component], x: usize, pt: &Pt) -> Pt {
    let mut v: Vec<u32> = match kinds[pt.0 as usize] {
        Component::Conjugation => {
            pt.1.iter()
                .map(|&e| g.mul_idx(g.mul_idx(x, e as usize), g.inv_idx(x)) as u32)
                .collect()
        }
        Component::Cosets => pt.1.iter().map(|&e| g.mul_idx(x, e as usize) as u32).collect(),
    };
    v.sort_unstable();
    (pt.0, v)
}

fn coset_points(g: &PermGroup, acting: &PermGroup, l: &PermGroup, tag: u8) -> Vec<Pt> {
    let l_idx: Vec<usize> = l.elements().iter().map(|p| g.index_of(p).unwrap()).collect();
    let mut pts: Vec<Pt> = acting
        .elements()
        .iter()
        .map(|h| {
            let hi = g.index_of(h).unwrap();
            let mut c: Vec<u32> = l_idx.iter().map(|&li| g.mul_idx(hi, li) as u32).collect();
            c.sort_unstable();
            (tag, c)
        })
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

fn random_invariant<P: charbound::gset::Point>(gs: &Arc<GSet<P>>, rng: &mut ChaCha8Rng) -> GFunction<P> {
    let per_orbit: Vec<Complex64> = (0..gs.num_orbits())
        .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
        .collect();
    let reps = gs.orbit_representatives();
    let values = (0..gs.len())
        .map(|x| {
            let o = gs.orbit_of(x);
            per_orbit[reps.iter().position(|&r| gs.orbit_of(r) == o).unwrap()]
        })
        .collect();
    GFunction::invariant(gs.clone(), values).unwrap()
}

fn stabilizer(g: &PermGroup, within: &PermGroup, kinds: &[Component], pt: &Pt) -> PermGroup {
    let gens: Vec<Perm> = within
        .elements()
        .iter()
        .filter(|h| act(g, kinds, g.index_of(h).unwrap(), pt) == *pt)
        .cloned()
        .collect();
    enumerate_group(&gens, g.degree()).unwrap()
}

/// Builds an `H`-set over orbits `H/L_i` with `L_i ≤ Stab_H(target_i)` and
/// the map `hL_i ↦ h·target_i`.
fn fibred_set(
    g: &PermGroup,
    h: &Arc<PermGroup>,
    subgroups: &[Arc<PermGroup>],
    targets: &[Pt],
    target_kinds: &[Component],
    rng: &mut ChaCha8Rng,
) -> (Vec<Pt>, Vec<Pt>) {
    let mut pts = Vec::new();
    let mut images = Vec::new();
    for (i, t) in targets.iter().enumerate() {
        let stab = stabilizer(g, h, target_kinds, t);
        let candidates: Vec<&Arc<PermGroup>> = subgroups.iter().filter(|l| l.is_subgroup_of(&stab)).collect();
        let l = candidates.choose(rng).unwrap();
        for pt in coset_points(g, h, l, i as u8) {
            let rep = pt.1[0] as usize;
            images.push(act(g, target_kinds, rep, t));
            pts.push(pt);
        }
    }
    (pts, images)
}

/// Worst deviations of one random instance, per identity.
#[derive(Debug, Default, Clone, Copy)]
pub struct Deviations {
    pub adjunction: f64,
    pub pi_image: f64,
    pub transitivity: f64,
    pub reconstruction: f64,
    pub orthogonality: f64,
    pub injective_agreement: f64,
    pub class_function_agreement: f64,
    pub frobenius: f64,
    pub group_order: usize,
}

impl Deviations {
    pub fn max(&self) -> f64 {
        [
            self.adjunction,
            self.pi_image,
            self.transitivity,
            self.reconstruction,
            self.orthogonality,
            self.injective_agreement,
            self.class_function_agreement,
            self.frobenius,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn pi_checks<P: charbound::gset::Point>(gs: &Arc<GSet<P>>, rng: &mut ChaCha8Rng, d: &mut Deviations) {
    let f = random_invariant(gs, rng);
    for x in 0..gs.len() {
        let ip = gset_inner_product(&f, &indicator_pi_idx(gs, x)).unwrap();
        d.reconstruction = d.reconstruction.max((ip - f.value(x)).norm());
    }
    let back = reconstruct_from_pi(gs, &decompose_in_pi_basis(&f).unwrap()).unwrap();
    d.reconstruction = d.reconstruction.max(back.max_abs_diff(&f));
    let reps = gs.orbit_representatives();
    for &a in reps {
        for &b in reps {
            let ip = gset_inner_product(&indicator_pi_idx(gs, a), &indicator_pi_idx(gs, b)).unwrap();
            let want = if a == b { gs.stabilizer_order(a) as f64 } else { 0.0 };
            d.orthogonality = d.orthogonality.max((ip - want).norm());
        }
    }
}

/// Runs every identity on the instance drawn from `seed`.
pub fn run_instance(seed: u64) -> Deviations {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entry = pool().choose(&mut rng).unwrap();
    let g = entry.group.clone();
    let mut d = Deviations {
        group_order: g.order(),
        ..Default::default()
    };
    let h = entry.subgroups.choose(&mut rng).unwrap().clone();
    let k_candidates: Vec<&Arc<PermGroup>> = entry.subgroups.iter().filter(|k| k.is_subgroup_of(&h)).collect();
    let k = (*k_candidates.choose(&mut rng).unwrap()).clone();

    // X: a union of the conjugation set and one coset space G/L.
    let l = entry.subgroups.choose(&mut rng).unwrap();
    let x_kinds = vec![Component::Conjugation, Component::Cosets];
    let mut x_pts: Vec<Pt> = (0..g.order() as u32).map(|e| (0, vec![e])).collect();
    x_pts.extend(coset_points(&g, &g, l, 1));
    let gg = g.clone();
    let xk = x_kinds.clone();
    let x_set = Arc::new(
        build_gset(g.clone(), x_pts.clone(), move |p, pt| {
            act(&gg, &xk, gg.index_of(p).unwrap(), pt)
        })
        .unwrap(),
    );

    // Y → X and Z → Y, each fibred over a few random targets.
    let y_targets: Vec<Pt> = (0..rng.gen_range(1..=3))
        .map(|_| x_pts.choose(&mut rng).unwrap().clone())
        .collect();
    let (y_pts, y_images) = fibred_set(&g, &h, &entry.subgroups, &y_targets, &x_kinds, &mut rng);
    let y_kinds = vec![Component::Cosets; y_targets.len()];
    let gg = g.clone();
    let yk = y_kinds.clone();
    let y_set = Arc::new(
        build_gset(h.clone(), y_pts.clone(), move |p, pt| {
            act(&gg, &yk, gg.index_of(p).unwrap(), pt)
        })
        .unwrap(),
    );
    let psi_map: Vec<usize> = y_set
        .points()
        .iter()
        .map(|pt| {
            x_set
                .index_of(&y_images[y_pts.iter().position(|q| q == pt).unwrap()])
                .unwrap()
        })
        .collect();
    let psi = GMap::new(y_set.clone(), x_set.clone(), psi_map).unwrap();

    let z_targets: Vec<Pt> = (0..rng.gen_range(1..=2))
        .map(|_| y_pts.choose(&mut rng).unwrap().clone())
        .collect();
    let (z_pts, z_images) = fibred_set(&g, &k, &entry.subgroups, &z_targets, &y_kinds, &mut rng);
    let gg = g.clone();
    let zk = vec![Component::Cosets; z_targets.len()];
    let z_set = Arc::new(
        build_gset(k.clone(), z_pts.clone(), move |p, pt| {
            act(&gg, &zk, gg.index_of(p).unwrap(), pt)
        })
        .unwrap(),
    );
    let chi_map: Vec<usize> = z_set
        .points()
        .iter()
        .map(|pt| {
            y_set
                .index_of(&z_images[z_pts.iter().position(|q| q == pt).unwrap()])
                .unwrap()
        })
        .collect();
    let chi = GMap::new(z_set.clone(), y_set.clone(), chi_map).unwrap();

    // Adjunction.
    let fy = random_invariant(&y_set, &mut rng);
    let fx = random_invariant(&x_set, &mut rng);
    let lhs = gset_inner_product(&induce_along(&psi, &fy).unwrap(), &fx).unwrap();
    let rhs = gset_inner_product(&fy, &restrict_along(&psi, &fx).unwrap()).unwrap();
    d.adjunction = (lhs - rhs).norm();

    // π-image.
    for &y in y_set.orbit_representatives() {
        let img = induce_along(&psi, &indicator_pi_idx(&y_set, y)).unwrap();
        d.pi_image = d
            .pi_image
            .max(img.max_abs_diff(&indicator_pi_idx(&x_set, psi.image(y))));
    }

    // Transitivity.
    let fz = random_invariant(&z_set, &mut rng);
    let direct = induce_along(&psi.compose(&chi).unwrap(), &fz).unwrap();
    let staged = induce_along(&psi, &induce_along(&chi, &fz).unwrap()).unwrap();
    d.transitivity = direct.max_abs_diff(&staged);

    // Reconstruction and orthogonality on all three sets.
    pi_checks(&x_set, &mut rng, &mut d);
    pi_checks(&y_set, &mut rng, &mut d);
    pi_checks(&z_set, &mut rng, &mut d);

    if psi.is_injective() {
        d.injective_agreement = induce_along_injective(&psi, &fy)
            .unwrap()
            .max_abs_diff(&induce_along(&psi, &fy).unwrap());
    }

    // Inclusion of conjugation sets against class-function induction.
    let cy = Arc::new(charbound::gset::conjugation_gset(&h));
    let cx = Arc::new(charbound::gset::conjugation_gset(&g));
    let inc = GMap::from_fn(cy.clone(), cx.clone(), |p| p.clone()).unwrap();
    let ncls = h.classes().len();
    let vals: Vec<Complex64> = (0..ncls)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let cf = ClassFunction::new(h.clone(), vals).unwrap();
    let induced_cf = induce_class_function(&h, &cf, &g).unwrap();
    let via_gset = induce_along(&inc, &GFunction::from_class_function(cy, &cf).unwrap()).unwrap();
    let reference = GFunction::from_class_function(cx, &induced_cf).unwrap();
    d.class_function_agreement = via_gset.max_abs_diff(&reference);

    let gvals: Vec<Complex64> = (0..g.classes().len())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let gf = ClassFunction::new(g.clone(), gvals).unwrap();
    let lhs = inner_product(&induced_cf, &gf).unwrap();
    let rhs = inner_product(&cf, &restrict_class_function(&gf, &h).unwrap()).unwrap();
    d.frobenius = (lhs - rhs).norm();
    d
}
