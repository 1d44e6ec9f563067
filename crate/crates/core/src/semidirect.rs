//! Semidirect products `G ⋊ ⟨φ⟩`, the coset slice `G.φ` and the twisting maps
//! `H.gφ → G.φ`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{enumerate_group, PermGroup};
use crate::perm::Perm;

/// An automorphism of an enumerated group, stored as a map on element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    map: Vec<usize>,
}

impl Automorphism {
    pub fn identity(g: &PermGroup) -> Self {
        Automorphism {
            map: (0..g.order()).collect(),
        }
    }

    /// Conjugation `x ↦ p x p⁻¹` by a permutation normalizing `g`.
    pub fn conjugation(g: &PermGroup, p: &Perm) -> Result<Self> {
        if p.degree() != g.degree() {
            return Err(Error::InvalidAutomorphism("degree mismatch".into()));
        }
        let map = g
            .elements()
            .iter()
            .map(|x| {
                g.index_of(&p.conjugate(x))
                    .ok_or_else(|| Error::InvalidAutomorphism(format!("{p} does not normalize the group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Automorphism::from_map(g, map)
    }

    /// Extends prescribed images of `g.generators()` to a homomorphism.
    pub fn from_generator_images(g: &PermGroup, images: &[Perm]) -> Result<Self> {
        let gens = g.generators();
        if images.len() != gens.len() {
            return Err(Error::InvalidAutomorphism(format!(
                "{} images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let img_idx = images
            .iter()
            .map(|p| {
                g.index_of(p)
                    .ok_or_else(|| Error::InvalidAutomorphism(format!("image {p} outside the group")))
            })
            .collect::<Result<Vec<_>>>()?;
        let gen_idx: Vec<usize> = gens.iter().map(|s| g.index_of(s).unwrap()).collect();
        let mut map = vec![usize::MAX; g.order()];
        map[0] = 0;
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for (k, &s) in gen_idx.iter().enumerate() {
                let y = g.mul_idx(s, x);
                let fy = g.mul_idx(img_idx[k], map[x]);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return Err(Error::InvalidAutomorphism(
                        "generator images do not define a homomorphism".into(),
                    ));
                }
            }
        }
        Automorphism::from_map(g, map)
    }

    /// Validates an explicit map on element indices.
    pub fn from_map(g: &PermGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != g.order() {
            return Err(Error::InvalidAutomorphism("map has the wrong length".into()));
        }
        let mut seen = vec![false; map.len()];
        for &y in &map {
            if y >= map.len() || seen[y] {
                return Err(Error::InvalidAutomorphism("map is not a bijection".into()));
            }
            seen[y] = true;
        }
        for s in g.generators() {
            let si = g.index_of(s).unwrap();
            for x in 0..g.order() {
                if map[g.mul_idx(x, si)] != g.mul_idx(map[x], map[si]) {
                    return Err(Error::InvalidAutomorphism("map is not a homomorphism".into()));
                }
            }
        }
        Ok(Automorphism { map })
    }

    #[inline]
    pub fn apply_idx(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn apply(&self, g: &PermGroup, x: &Perm) -> Perm {
        g.element(self.map[g.index_of(x).expect("element of the group")])
            .clone()
    }

    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut acc = self.clone();
        while !acc.is_identity() {
            acc = self.compose(&acc);
            k += 1;
        }
        k
    }

    pub fn pow(&self, k: usize) -> Automorphism {
        let mut acc = Automorphism {
            map: (0..self.map.len()).collect(),
        };
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }
}

/// `G ⋊ ⟨φ⟩` realized faithfully on `G × {0..m-1}`: the pair `(g, φ^j)` sends
/// `(x, i)` to `(g·φ^j(x), i + j mod m)`.
#[derive(Debug, Clone)]
pub struct SemidirectGroup {
    base: Arc<PermGroup>,
    phi: Automorphism,
    auto_order: usize,
    realized: Arc<PermGroup>,
    embed: Vec<usize>,
    phi_image: usize,
}

impl SemidirectGroup {
    pub fn new(base: Arc<PermGroup>, phi: Automorphism, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidAutomorphism("order must be at least 1".into()));
        }
        if phi.map.len() != base.order() {
            return Err(Error::InvalidAutomorphism("automorphism of a different group".into()));
        }
        if !phi.pow(m).is_identity() {
            return Err(Error::InvalidAutomorphism(format!("φ^{m} is not the identity")));
        }
        let n = base.order();
        let degree = n * m;
        let pair_perm = |g: usize, j: usize| -> Perm {
            let pj = phi.pow(j);
            let mut img = vec![0u32; degree];
            for i in 0..m {
                for x in 0..n {
                    let y = base.mul_idx(g, pj.apply_idx(x));
                    img[i * n + x] = (((i + j) % m) * n + y) as u32;
                }
            }
            Perm::from_images(img).expect("pair action is a permutation")
        };
        let mut gens: Vec<Perm> = base
            .generators()
            .iter()
            .map(|s| pair_perm(base.index_of(s).unwrap(), 0))
            .collect();
        let phi_perm = pair_perm(0, 1);
        gens.push(phi_perm.clone());
        let realized = enumerate_group(&gens, degree)?;
        if realized.order() != n * m {
            return Err(Error::InvalidAutomorphism(format!(
                "realized order {} differs from |G|·m = {}",
                realized.order(),
                n * m
            )));
        }
        let embed = (0..n).map(|g| realized.index_of(&pair_perm(g, 0)).unwrap()).collect();
        let phi_image = realized.index_of(&phi_perm).unwrap();
        Ok(SemidirectGroup {
            base,
            phi,
            auto_order: m,
            realized: Arc::new(realized),
            embed,
            phi_image,
        })
    }

    pub fn base(&self) -> &Arc<PermGroup> {
        &self.base
    }

    pub fn phi(&self) -> &Automorphism {
        &self.phi
    }

    pub fn auto_order(&self) -> usize {
        self.auto_order
    }

    pub fn realized(&self) -> &Arc<PermGroup> {
        &self.realized
    }

    /// Realized index of `embed(g)` for base index `g`.
    pub fn embed_idx(&self, g: usize) -> usize {
        self.embed[g]
    }

    pub fn phi_image_idx(&self) -> usize {
        self.phi_image
    }

    /// Realized index of `g·φ`.
    pub fn coset_element(&self, g: usize) -> usize {
        self.realized.mul_idx(self.embed[g], self.phi_image)
    }

    /// The embedded copy of the base group, as a subgroup of the realization.
    pub fn embedded_base(&self) -> PermGroup {
        let gens: Vec<Perm> = self
            .base
            .generators()
            .iter()
            .map(|s| {
                self.realized
                    .element(self.embed[self.base.index_of(s).unwrap()])
                    .clone()
            })
            .collect();
        enumerate_group(&gens, self.realized.degree()).expect("embedded base within cap")
    }

    pub fn slice(&self) -> CosetSlice {
        CosetSlice::new(self)
    }
}

/// The coset `G.φ = {gφ}` inside the realized semidirect product.
#[derive(Debug, Clone)]
pub struct CosetSlice {
    /// Realized indices of `gφ`, indexed by base index `g`.
    pub elements: Vec<usize>,
    positions: Vec<Option<usize>>,
    realized: Arc<PermGroup>,
    embed: Vec<usize>,
}

impl CosetSlice {
    fn new(s: &SemidirectGroup) -> Self {
        let elements: Vec<usize> = (0..s.base.order()).map(|g| s.coset_element(g)).collect();
        let mut positions = vec![None; s.realized.order()];
        for (k, &e) in elements.iter().enumerate() {
            positions[e] = Some(k);
        }
        CosetSlice {
            elements,
            positions,
            realized: s.realized.clone(),
            embed: s.embed.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Position in the slice of a realized element, if it lies there.
    pub fn position(&self, realized_idx: usize) -> Option<usize> {
        self.positions[realized_idx]
    }

    /// Conjugation of slice point `k` by base element `h`, as a slice position.
    pub fn conjugate_by(&self, h: usize, k: usize) -> usize {
        let e = self.embed[h];
        let x = self
            .realized
            .mul_idx(self.realized.mul_idx(e, self.elements[k]), self.realized.inv_idx(e));
        self.position(x).expect("slice is stable under conjugation")
    }

    pub fn realized(&self) -> &Arc<PermGroup> {
        &self.realized
    }
}

/// The injective `H`-map `γ_g : H.gφ → G.φ`, `xψ ↦ xgφ` with `ψ = ι_g∘φ` on `H`.
#[derive(Debug, Clone)]
pub struct TwistMap {
    pub subgroup: Arc<PermGroup>,
    pub g: Perm,
    /// `H ⋊ ⟨ι_g φ⟩`, with `ι_g φ` taken at its order as an automorphism of `H`.
    pub sub_semidirect: SemidirectGroup,
    /// For each `x ∈ H` (by `H` index), the slice position of `xgφ` in `G.φ`.
    pub image: Vec<usize>,
}

/// Builds `γ_g` for `H ≤ G` and `g ∈ G` with `g φ(H) g⁻¹ = H`.
pub fn twist_bijection(parent: &SemidirectGroup, h: Arc<PermGroup>, g: &Perm) -> Result<TwistMap> {
    let base = parent.base();
    if !h.is_subgroup_of(base) {
        return Err(Error::NotSubgroup("H is not a subgroup of G".into()));
    }
    let gi = base
        .index_of(g)
        .ok_or_else(|| Error::NotSubgroup(format!("{g} is not an element of G")))?;
    let ginv = base.inv_idx(gi);
    let mut psi_map = Vec::with_capacity(h.order());
    for x in h.elements() {
        let xi = base.index_of(x).unwrap();
        let y = base.mul_idx(base.mul_idx(gi, parent.phi().apply_idx(xi)), ginv);
        let yi = h
            .index_of(base.element(y))
            .ok_or_else(|| Error::Unstable(format!("ι_g∘φ sends {x} outside H (g = {g})")))?;
        psi_map.push(yi);
    }
    let psi = Automorphism::from_map(&h, psi_map)?;
    let d = psi.order();
    let sub = SemidirectGroup::new(h.clone(), psi, d)?;
    let slice = parent.slice();
    let image = h
        .elements()
        .iter()
        .map(|x| base.mul_idx(base.index_of(x).unwrap(), gi))
        .collect::<Vec<_>>();
    // slice position of xgφ is the base index of xg
    debug_assert!(image.iter().all(|&p| p < slice.len()));
    let t = TwistMap {
        subgroup: h,
        g: g.clone(),
        sub_semidirect: sub,
        image,
    };
    t.check_equivariance(parent)?;
    Ok(t)
}

impl TwistMap {
    /// Verifies `γ(h·x·h⁻¹) = h·γ(x)·h⁻¹` for all `h ∈ H` and slice points `x`.
    pub fn check_equivariance(&self, parent: &SemidirectGroup) -> Result<()> {
        let src = self.sub_semidirect.slice();
        let dst = parent.slice();
        let base = parent.base();
        for (hi, hp) in self.subgroup.elements().iter().enumerate() {
            let h_in_g = base.index_of(hp).unwrap();
            for x in 0..src.len() {
                let lhs = self.image[src.conjugate_by(hi, x)];
                let rhs = dst.conjugate_by(h_in_g, self.image[x]);
                if lhs != rhs {
                    return Err(Error::NotEquivariant(format!("γ fails equivariance at h = {hp}")));
                }
            }
        }
        Ok(())
    }
}
