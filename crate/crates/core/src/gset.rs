//! Finite G-sets, invariant functions, the `π_x` basis, and induction and
//! restriction along equivariant maps.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use num_complex::Complex64;

use crate::chartab::ClassFunction;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Bound on pointwise deviation when testing invariance.
pub const INVARIANCE_TOL: f64 = 1e-9;

/// Requirements on point labels. The total order fixes orbit representatives.
pub trait Point: Clone + Ord + Hash + Debug {}
impl<T: Clone + Ord + Hash + Debug> Point for T {}

/// A finite set with an action of an enumerated permutation group.
#[derive(Debug, Clone)]
pub struct GSet<P: Point> {
    group: Arc<PermGroup>,
    points: Vec<P>,
    index: HashMap<P, usize>,
    /// `action[g][x]`: image of point `x` under group element `g`.
    action: Vec<Vec<u32>>,
    orbit_of: Vec<usize>,
    orbit_reps: Vec<usize>,
    stabilizer_orders: Vec<usize>,
}

/// Builds a G-set from a point list and an action, validating closure, the
/// action axioms and orbit-stabilizer.
pub fn build_gset<P: Point>(group: Arc<PermGroup>, points: Vec<P>, action: impl Fn(&Perm, &P) -> P) -> Result<GSet<P>> {
    let mut points = points;
    points.sort();
    points.dedup();
    let index: HashMap<P, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut table = Vec::with_capacity(group.order());
    for g in group.elements() {
        let row = points
            .iter()
            .map(|x| {
                let y = action(g, x);
                index
                    .get(&y)
                    .map(|&i| i as u32)
                    .ok_or_else(|| Error::InvalidGSet(format!("{g} sends {x:?} outside the point set")))
            })
            .collect::<Result<Vec<u32>>>()?;
        table.push(row);
    }
    GSet::from_table(group, points, table)
}

impl<P: Point> GSet<P> {
    /// Builds from an explicit action table over sorted, distinct points.
    pub fn from_table(group: Arc<PermGroup>, points: Vec<P>, action: Vec<Vec<u32>>) -> Result<Self> {
        let n = points.len();
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGSet("points must be sorted and distinct".into()));
        }
        if action.len() != group.order() || action.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGSet("action table has the wrong shape".into()));
        }
        if action.iter().flatten().any(|&y| y as usize >= n) {
            return Err(Error::InvalidGSet("action leaves the point set".into()));
        }
        if action[0].iter().enumerate().any(|(x, &y)| x != y as usize) {
            return Err(Error::InvalidGSet("identity does not act trivially".into()));
        }
        let gens: Vec<usize> = group
            .generators()
            .iter()
            .map(|s| group.index_of(s).expect("generator lies in the group"))
            .collect();
        for g in 0..group.order() {
            for &s in &gens {
                let gs = group.mul_idx(g, s);
                if (0..n).any(|x| action[gs][x] != action[g][action[s][x] as usize]) {
                    return Err(Error::InvalidGSet(format!(
                        "action is not compatible with multiplication at {}",
                        group.element(g)
                    )));
                }
            }
        }
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbit_reps = Vec::new();
        let mut stabilizer_orders = vec![0; n];
        for x in 0..n {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let id = orbit_reps.len();
            orbit_reps.push(x);
            for row in &action {
                let y = row[x] as usize;
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = id;
                }
            }
        }
        let mut orbit_sizes = vec![0usize; orbit_reps.len()];
        for &o in &orbit_of {
            orbit_sizes[o] += 1;
        }
        for x in 0..n {
            stabilizer_orders[x] = action.iter().filter(|r| r[x] as usize == x).count();
            if stabilizer_orders[x] * orbit_sizes[orbit_of[x]] != group.order() {
                return Err(Error::InvalidGSet("orbit-stabilizer identity fails".into()));
            }
        }
        let index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(GSet {
            group,
            points,
            index,
            action,
            orbit_of,
            orbit_reps,
            stabilizer_orders,
        })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn point(&self, x: usize) -> &P {
        &self.points[x]
    }

    pub fn index_of(&self, p: &P) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Image of point `x` under the group element with index `g`.
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x] as usize
    }

    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbit_of[x]
    }

    /// Minimal point of each orbit, in increasing order.
    pub fn orbit_representatives(&self) -> &[usize] {
        &self.orbit_reps
    }

    pub fn num_orbits(&self) -> usize {
        self.orbit_reps.len()
    }

    pub fn stabilizer_order(&self, x: usize) -> usize {
        self.stabilizer_orders[x]
    }

    pub fn orbit_size(&self, x: usize) -> usize {
        self.group.order() / self.stabilizer_orders[x]
    }

    fn same_as(&self, other: &GSet<P>) -> bool {
        std::ptr::eq(self, other)
            || (*self.group == *other.group && self.points == other.points && self.action == other.action)
    }
}

/// G-set of a group acting on itself by conjugation.
pub fn conjugation_gset(g: &Arc<PermGroup>) -> GSet<Perm> {
    build_gset(g.clone(), g.elements().to_vec(), |x, y| x.conjugate(y)).expect("conjugation is an action")
}

/// A complex-valued function on a G-set, optionally tagged invariant.
#[derive(Debug, Clone)]
pub struct GFunction<P: Point> {
    gset: Arc<GSet<P>>,
    values: Vec<Complex64>,
    invariant: bool,
}

impl<P: Point> GFunction<P> {
    /// An arbitrary function, not tagged invariant.
    pub fn new(gset: Arc<GSet<P>>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != gset.len() {
            return Err(Error::InvalidArgument(format!(
                "{} values for {} points",
                values.len(),
                gset.len()
            )));
        }
        Ok(GFunction {
            gset,
            values,
            invariant: false,
        })
    }

    /// A function tagged invariant; invariance is checked.
    pub fn invariant(gset: Arc<GSet<P>>, values: Vec<Complex64>) -> Result<Self> {
        let mut f = GFunction::new(gset, values)?;
        f.check_invariant()?;
        f.invariant = true;
        Ok(f)
    }

    pub fn from_fn(gset: Arc<GSet<P>>, f: impl Fn(&P) -> Complex64) -> Self {
        let values = gset.points.iter().map(f).collect();
        GFunction {
            gset,
            values,
            invariant: false,
        }
    }

    pub fn constant(gset: Arc<GSet<P>>, c: Complex64) -> Self {
        let values = vec![c; gset.len()];
        GFunction {
            gset,
            values,
            invariant: true,
        }
    }

    pub fn gset(&self) -> &Arc<GSet<P>> {
        &self.gset
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    pub fn value_at(&self, p: &P) -> Option<Complex64> {
        self.gset.index_of(p).map(|x| self.values[x])
    }

    pub fn is_tagged_invariant(&self) -> bool {
        self.invariant
    }

    /// Checks `f(α_g(x)) = f(x)` for all `g` and `x`.
    pub fn check_invariant(&self) -> Result<()> {
        for row in &self.gset.action {
            for (x, &y) in row.iter().enumerate() {
                if (self.values[y as usize] - self.values[x]).norm() > INVARIANCE_TOL {
                    return Err(Error::NotInvariant(format!(
                        "value differs between {:?} and {:?}",
                        self.gset.points[x], self.gset.points[y as usize]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks invariance and tags the function.
    pub fn into_invariant(mut self) -> Result<Self> {
        if !self.invariant {
            self.check_invariant()?;
            self.invariant = true;
        }
        Ok(self)
    }

    fn require_invariant(&self) -> Result<()> {
        if self.invariant {
            Ok(())
        } else {
            self.check_invariant()
        }
    }

    pub fn max_abs_diff(&self, other: &GFunction<P>) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        GFunction {
            gset: self.gset.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
            invariant: self.invariant,
        }
    }
}

impl GFunction<Perm> {
    /// A class function viewed on the conjugation G-set of its group.
    pub fn from_class_function(gset: Arc<GSet<Perm>>, f: &ClassFunction) -> Result<Self> {
        if **gset.group() != **f.group() {
            return Err(Error::GroupMismatch("G-set and class function groups differ".into()));
        }
        let values = gset
            .points()
            .iter()
            .map(|p| f.value_at(p).ok_or(Error::PointNotFound))
            .collect::<Result<Vec<_>>>()?;
        GFunction::invariant(gset, values)
    }
}

fn check_same_gset<P: Point>(a: &GSet<P>, b: &GSet<P>) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(Error::GroupMismatch("functions live on different G-sets".into()))
    }
}

/// `π_x`: the stabilizer order on the orbit of `x`, zero elsewhere.
pub fn indicator_pi<P: Point>(gset: &Arc<GSet<P>>, x: &P) -> Result<GFunction<P>> {
    let i = gset.index_of(x).ok_or(Error::PointNotFound)?;
    Ok(indicator_pi_idx(gset, i))
}

pub fn indicator_pi_idx<P: Point>(gset: &Arc<GSet<P>>, x: usize) -> GFunction<P> {
    let orbit = gset.orbit_of(x);
    let s = gset.stabilizer_order(x) as f64;
    let values = (0..gset.len())
        .map(|y| Complex64::new(if gset.orbit_of(y) == orbit { s } else { 0.0 }, 0.0))
        .collect();
    GFunction {
        gset: gset.clone(),
        values,
        invariant: true,
    }
}

/// `(1/|G|) Σ_x f(x) conj(f'(x))`.
pub fn gset_inner_product<P: Point>(f: &GFunction<P>, g: &GFunction<P>) -> Result<Complex64> {
    check_same_gset(&f.gset, &g.gset)?;
    let s: Complex64 = f.values.iter().zip(&g.values).map(|(a, b)| a * b.conj()).sum();
    Ok(s / f.gset.group.order() as f64)
}

/// An `H`-map `Y → X` from an `H`-set to a `G`-set, `H ≤ G`.
#[derive(Debug, Clone)]
pub struct GMap<Q: Point, P: Point> {
    source: Arc<GSet<Q>>,
    target: Arc<GSet<P>>,
    map: Vec<usize>,
    /// Index in the target group of each source-group element.
    embed: Vec<usize>,
}

impl<Q: Point, P: Point> GMap<Q, P> {
    /// Validates `H ≤ G` and checks `α_h ∘ ψ = ψ ∘ β_h` exhaustively.
    pub fn new(source: Arc<GSet<Q>>, target: Arc<GSet<P>>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&x| x >= target.len()) {
            return Err(Error::InvalidArgument("map does not send Y into X".into()));
        }
        if !source.group.is_subgroup_of(&target.group) {
            return Err(Error::NotSubgroup(
                "source group is not a subgroup of the target group".into(),
            ));
        }
        let embed: Vec<usize> = source
            .group
            .elements()
            .iter()
            .map(|h| target.group.index_of(h).expect("checked subgroup"))
            .collect();
        for (hs, &hg) in embed.iter().enumerate() {
            for y in 0..source.len() {
                if target.act(hg, map[y]) != map[source.act(hs, y)] {
                    return Err(Error::NotEquivariant(format!(
                        "at h = {} and y = {:?}",
                        source.group.element(hs),
                        source.point(y)
                    )));
                }
            }
        }
        Ok(GMap {
            source,
            target,
            map,
            embed,
        })
    }

    pub fn from_fn(source: Arc<GSet<Q>>, target: Arc<GSet<P>>, f: impl Fn(&Q) -> P) -> Result<Self> {
        let map = source
            .points()
            .iter()
            .map(|y| target.index_of(&f(y)).ok_or(Error::PointNotFound))
            .collect::<Result<Vec<_>>>()?;
        GMap::new(source, target, map)
    }

    pub fn source(&self) -> &Arc<GSet<Q>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GSet<P>> {
        &self.target
    }

    pub fn image(&self, y: usize) -> usize {
        self.map[y]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    /// `self ∘ inner` for a `K`-map `inner: Z → Y`.
    pub fn compose<R: Point>(&self, inner: &GMap<R, Q>) -> Result<GMap<R, P>> {
        check_same_gset(&inner.target, &self.source)?;
        let map = inner.map.iter().map(|&y| self.map[y]).collect();
        GMap::new(inner.source.clone(), self.target.clone(), map)
    }

    #[doc(hidden)]
    pub fn embedded_source_element(&self, h: usize) -> usize {
        self.embed[h]
    }
}

/// Induction `ψ_*` by the defining double sum over pairs `(g, y)` with
/// `α_g(x) = ψ(y)`.
pub fn induce_along<Q: Point, P: Point>(psi: &GMap<Q, P>, f: &GFunction<Q>) -> Result<GFunction<P>> {
    check_same_gset(&f.gset, &psi.source)?;
    f.require_invariant()?;
    let x_set = &psi.target;
    let mut fibres: Vec<Vec<usize>> = vec![Vec::new(); x_set.len()];
    for (y, &x) in psi.map.iter().enumerate() {
        fibres[x].push(y);
    }
    let hn = psi.source.group.order() as f64;
    let values = (0..x_set.len())
        .map(|x| {
            let mut s = Complex64::new(0.0, 0.0);
            for g in 0..x_set.group.order() {
                for &y in &fibres[x_set.act(g, x)] {
                    s += f.values[y];
                }
            }
            s / hn
        })
        .collect();
    Ok(GFunction {
        gset: x_set.clone(),
        values,
        invariant: true,
    })
}

/// Induction along an injective map: `(1/|H|) Σ_{g: α_g(x) ∈ ψ(Y)} f(ψ⁻¹(α_g(x)))`.
pub fn induce_along_injective<Q: Point, P: Point>(psi: &GMap<Q, P>, f: &GFunction<Q>) -> Result<GFunction<P>> {
    check_same_gset(&f.gset, &psi.source)?;
    f.require_invariant()?;
    let x_set = &psi.target;
    let mut inverse = vec![None; x_set.len()];
    for (y, &x) in psi.map.iter().enumerate() {
        if inverse[x].replace(y).is_some() {
            return Err(Error::InvalidArgument("map is not injective".into()));
        }
    }
    let hn = psi.source.group.order() as f64;
    let values = (0..x_set.len())
        .map(|x| {
            (0..x_set.group.order())
                .filter_map(|g| inverse[x_set.act(g, x)].map(|y| f.values[y]))
                .sum::<Complex64>()
                / hn
        })
        .collect();
    Ok(GFunction {
        gset: x_set.clone(),
        values,
        invariant: true,
    })
}

/// Restriction `ψ^*(f) = f ∘ ψ`.
pub fn restrict_along<Q: Point, P: Point>(psi: &GMap<Q, P>, f: &GFunction<P>) -> Result<GFunction<Q>> {
    check_same_gset(&f.gset, &psi.target)?;
    f.require_invariant()?;
    Ok(GFunction {
        gset: psi.source.clone(),
        values: psi.map.iter().map(|&x| f.values[x]).collect(),
        invariant: true,
    })
}

/// Coefficients `c_x = f(x)/|Stab(x)|` with `f = Σ c_x π_x` over orbit
/// representatives.
pub fn decompose_in_pi_basis<P: Point>(f: &GFunction<P>) -> Result<BTreeMap<P, Complex64>> {
    f.require_invariant()?;
    let gs = &f.gset;
    Ok(gs
        .orbit_representatives()
        .iter()
        .map(|&x| (gs.point(x).clone(), f.values[x] / gs.stabilizer_order(x) as f64))
        .collect())
}

/// `Σ c_x π_x`.
pub fn reconstruct_from_pi<P: Point>(
    gset: &Arc<GSet<P>>,
    coefficients: &BTreeMap<P, Complex64>,
) -> Result<GFunction<P>> {
    let mut values = vec![Complex64::new(0.0, 0.0); gset.len()];
    for (p, c) in coefficients {
        let pi = indicator_pi(gset, p)?;
        for (v, w) in values.iter_mut().zip(&pi.values) {
            *v += c * w;
        }
    }
    Ok(GFunction {
        gset: gset.clone(),
        values,
        invariant: true,
    })
}
