//! The constant ledger: `α`, `D`, `B`, `f₁`, `f₂′`, `f₃`, `f(G)` and `f(r)`.

use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::radical::Radical;
use crate::roots::{format_type_label, parse_type_label, CartanType, RootSystem, SimpleType};
use crate::unipotent::{self, format_tuple, fuse_classes, levi_shape, UnipClass};

/// Highest rank handled by the constant ledger.
pub const BOUND_RANK_CAP: usize = 8;

fn ser_big<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(n) {
        Ok(v) => s.serialize_u64(v),
        Err(_) => serde_json::Number::from_str(&n.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s),
    }
}

fn ser_radical<S: Serializer>(r: &Radical, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

fn ser_ratio<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    Fraction {
        num: *r.numer(),
        den: *r.denom(),
    }
    .serialize(s)
}

#[derive(Serialize)]
struct Fraction {
    num: u64,
    den: u64,
}

/// The class pair realizing `α`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaWitness {
    pub levi_class: String,
    pub ambient_class: String,
    pub levi_dim: u64,
    pub ambient_dim: u64,
}

/// A Levi subsystem by its simple roots (1-based in JSON) and type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviRef {
    #[serde(serialize_with = "ser_one_based")]
    pub simple_roots: Vec<usize>,
    pub label: String,
}

fn ser_one_based<S: Serializer>(v: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|i| i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaResult {
    #[serde(serialize_with = "ser_ratio")]
    pub value: Ratio<u64>,
    pub witness: Option<AlphaWitness>,
    pub levi: LeviRef,
    pub ambient: String,
}

fn regular_class(t: SimpleType, twist: Option<&[usize]>) -> Result<UnipClass> {
    unipotent::unipotent_classes(t, twist)?
        .into_iter()
        .max_by_key(|c| c.dim)
        .ok_or_else(|| Error::Data(format!("no classes for {t}")))
}

/// `α_G(M)`: the largest `dim u^M / dim u^G` over non-identity twist-stable
/// classes of the Levi `M` generated by `subset`.
pub fn alpha(ambient: &RootSystem, subset: &[usize]) -> Result<AlphaResult> {
    if ambient.rank() > BOUND_RANK_CAP {
        return Err(Error::RankCap {
            rank: ambient.rank(),
            cap: BOUND_RANK_CAP,
        });
    }
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    if let Some(&i) = subset.iter().find(|&&i| i >= ambient.rank()) {
        return Err(Error::InvalidArgument(format!("simple root {} out of range", i + 1)));
    }
    let levi = LeviRef {
        label: format_type_label(&ambient.subsystem_type(&subset)),
        simple_roots: subset.clone(),
    };
    let mut result = AlphaResult {
        value: Ratio::from_integer(0),
        witness: None,
        levi,
        ambient: ambient.type_label(),
    };
    if subset.is_empty() {
        return Ok(result);
    }
    if subset.len() == ambient.rank() {
        let mut labels = Vec::new();
        let mut dim = 0;
        for (k, &t) in ambient.components().iter().enumerate() {
            let off = ambient.offsets()[k];
            let tw: Option<Vec<usize>> = ambient
                .twist()
                .map(|tw| tw[off..off + t.rank].iter().map(|&j| j.wrapping_sub(off)).collect());
            let tw = tw.filter(|v| v.iter().all(|&j| j < t.rank));
            let reg = regular_class(t, tw.as_deref())?;
            labels.push(reg.label.to_string());
            dim += reg.dim;
        }
        let label = if labels.len() == 1 {
            labels.remove(0)
        } else {
            format!("({})", labels.join(","))
        };
        result.value = Ratio::from_integer(1);
        result.witness = Some(AlphaWitness {
            levi_class: label.clone(),
            ambient_class: label,
            levi_dim: dim,
            ambient_dim: dim,
        });
        return Ok(result);
    }
    let shape = levi_shape(ambient, &subset)?;
    let factors = shape.factor_classes()?;
    let mut best: Option<(Ratio<u64>, AlphaWitness)> = None;
    let mut idx = vec![0usize; factors.len()];
    loop {
        let tuple: Vec<&UnipClass> = idx.iter().zip(&factors).map(|(&i, f)| &f[i]).collect();
        let levi_dim: u64 = tuple.iter().map(|c| c.dim).sum();
        if levi_dim > 0 && shape.tuple_stable(&tuple)? {
            let fused = fuse_classes(&tuple, &shape)?;
            if fused.dim <= levi_dim {
                return Err(Error::Data(format!(
                    "{} in a proper Levi has dim {levi_dim} ≥ ambient dim {}",
                    format_tuple(&tuple),
                    fused.dim
                )));
            }
            let ratio = Ratio::new(levi_dim, fused.dim);
            if best.as_ref().is_none_or(|(b, _)| ratio > *b) {
                best = Some((
                    ratio,
                    AlphaWitness {
                        levi_class: format_tuple(&tuple),
                        ambient_class: fused.label.to_string(),
                        levi_dim,
                        ambient_dim: fused.dim,
                    },
                ));
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                let (value, witness) = best.ok_or_else(|| Error::Data("no non-identity stable Levi class".into()))?;
                result.value = value;
                result.witness = Some(witness);
                return Ok(result);
            }
            idx[k] += 1;
            if idx[k] < factors[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Resolves a Levi description: `torus`, `full`, 1-based simple roots such
/// as `1,3`, or blocks such as `GL2xGL2` (type A) and `GL1xC2` (B, C, D).
pub fn parse_levi(ambient: &RootSystem, spec: &str) -> Result<Vec<usize>> {
    let spec = spec.trim();
    let n = ambient.rank();
    match spec.to_ascii_lowercase().as_str() {
        "torus" | "t" | "" => return Ok(Vec::new()),
        "full" | "g" => return Ok((0..n).collect()),
        _ => {}
    }
    if spec.chars().all(|c| c.is_ascii_digit() || c == ',' || c == ' ') {
        let mut v = Vec::new();
        for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = tok
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad simple root index {tok}")))?;
            if i == 0 || i > n {
                return Err(Error::InvalidArgument(format!("simple root {i} out of range 1..={n}")));
            }
            v.push(i - 1);
        }
        v.sort_unstable();
        v.dedup();
        return Ok(v);
    }
    let [t] = ambient.components() else {
        return Err(Error::InvalidArgument(
            "block Levi descriptions need a simple ambient".into(),
        ));
    };
    if !t.kind.is_classical() {
        return Err(Error::InvalidArgument(format!(
            "block Levi descriptions need a classical ambient, got {t}"
        )));
    }
    let mut blocks = Vec::new();
    let mut tail = None;
    for tok in spec.split(['x', 'X', '×', '*']).map(str::trim) {
        let upper = tok.to_ascii_uppercase();
        if let Some(a) = upper.strip_prefix("GL") {
            if tail.is_some() {
                return Err(Error::InvalidArgument("the classical factor must come last".into()));
            }
            let a: usize = a
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad block {tok}")))?;
            if a == 0 {
                return Err(Error::InvalidArgument("empty GL block".into()));
            }
            blocks.push(a);
        } else {
            let mut cs = upper.chars();
            let kind = cs.next().map(CartanType::parse).transpose()?;
            let k: usize = cs
                .as_str()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad factor {tok}")))?;
            if kind != Some(t.kind) || t.kind == CartanType::A || tail.is_some() {
                return Err(Error::InvalidArgument(format!("factor {tok} does not fit {t}")));
            }
            if t.kind == CartanType::D && k < 2 {
                return Err(Error::InvalidArgument("a D tail needs rank at least 2".into()));
            }
            tail = Some(k);
        }
    }
    let width: usize = if t.kind == CartanType::A { n + 1 } else { n };
    let used: usize = blocks.iter().sum::<usize>() + tail.unwrap_or(0);
    if used != width {
        return Err(Error::InvalidArgument(format!(
            "blocks cover {used} basis vectors, {t} needs {width}"
        )));
    }
    let mut j = Vec::new();
    let mut start = 0;
    for &a in &blocks {
        j.extend(start..start + a - 1);
        start += a;
    }
    if tail.is_some_and(|k| k > 0) {
        j.extend(start..n);
    }
    Ok(j)
}

/// `D(r)` and `B(r)` with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankConstants {
    pub rank: usize,
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "B")]
    pub b: u64,
    pub d_witness: String,
    pub b_witness: String,
}

struct TypeExtremes {
    t: SimpleType,
    max_dim: u64,
    max_comp: u64,
    comp_label: String,
}

fn simple_types_up_to(r: usize) -> Vec<SimpleType> {
    let mut out = Vec::new();
    for kind in [
        CartanType::A,
        CartanType::B,
        CartanType::C,
        CartanType::D,
        CartanType::E,
        CartanType::F,
        CartanType::G,
    ] {
        for rank in 1..=r {
            if let Ok(t) = SimpleType::new(kind, rank) {
                out.push(t);
            }
        }
    }
    out
}

/// Calls `f` on every multiset of simple types with total rank in `lo..=hi`.
fn for_each_multiset(types: &[SimpleType], lo: usize, hi: usize, f: &mut impl FnMut(&[SimpleType])) {
    fn go(
        types: &[SimpleType],
        start: usize,
        left: usize,
        used: usize,
        lo: usize,
        cur: &mut Vec<SimpleType>,
        f: &mut impl FnMut(&[SimpleType]),
    ) {
        if used >= lo && !cur.is_empty() {
            f(cur);
        }
        for i in start..types.len() {
            if types[i].rank <= left {
                cur.push(types[i]);
                go(types, i, left - types[i].rank, used + types[i].rank, lo, cur, f);
                cur.pop();
            }
        }
    }
    go(types, 0, hi, 0, lo, &mut Vec::new(), f);
}

fn check_rank(r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument("rank must be at least 1".into()));
    }
    if r > BOUND_RANK_CAP {
        return Err(Error::RankCap {
            rank: r,
            cap: BOUND_RANK_CAP,
        });
    }
    Ok(())
}

/// `D(r)` and `B(r)`: maxima over products of simple simply connected groups
/// of total rank at most `r`; dimensions add and component orders multiply.
pub fn rank_constants(r: usize) -> Result<RankConstants> {
    check_rank(r)?;
    let table = unipotent::exceptional_table()?;
    let mut ext = Vec::new();
    for t in simple_types_up_to(r) {
        let classes = unipotent::unipotent_classes_with(t, None, Some(&table))?;
        let max_dim = classes.iter().map(|c| c.dim).max().unwrap_or(0);
        let top = classes
            .iter()
            .max_by(|a, b| a.comp_order.cmp(&b.comp_order).then(b.dim.cmp(&a.dim)))
            .expect("nonempty");
        ext.push(TypeExtremes {
            t,
            max_dim,
            max_comp: top.comp_order,
            comp_label: format!("{t}:{}", top.label),
        });
    }
    let types: Vec<SimpleType> = ext.iter().map(|e| e.t).collect();
    let lookup = |t: &SimpleType| ext.iter().find(|e| e.t == *t).expect("known type");
    let mut best_d = (0u64, String::new());
    let mut best_b = (0u64, String::new());
    for_each_multiset(&types, 1, r, &mut |m| {
        let d: u64 = m.iter().map(|t| lookup(t).max_dim).sum();
        let b: u64 = m.iter().map(|t| lookup(t).max_comp).product();
        if d > best_d.0 {
            best_d = (d, format_type_label(m));
        }
        if b > best_b.0 {
            let w: Vec<String> = m.iter().map(|t| lookup(t).comp_label.clone()).collect();
            best_b = (b, w.join(" x "));
        }
    });
    Ok(RankConstants {
        rank: r,
        d: best_d.0,
        b: best_b.0,
        d_witness: best_d.1,
        b_witness: best_b.1,
    })
}

/// The full ledger for one semisimple type.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundConstants {
    pub rank: usize,
    #[serde(rename = "type")]
    pub type_label: String,
    #[serde(rename = "W")]
    pub weyl_order: u64,
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "B")]
    pub b: u64,
    #[serde(serialize_with = "ser_big")]
    pub f1: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub f2_prime: BigUint,
    #[serde(serialize_with = "ser_radical")]
    pub f2: Radical,
    #[serde(serialize_with = "ser_radical")]
    pub f3: Radical,
    #[serde(rename = "f_exact", serialize_with = "ser_radical")]
    pub f: Radical,
    pub f_float: f64,
    #[serde(serialize_with = "ser_big")]
    pub f_ceil: BigUint,
}

/// Product of Weyl group orders.
pub fn weyl_order_of(types: &[SimpleType]) -> Result<u64> {
    types.iter().try_fold(1u64, |acc, t| {
        acc.checked_mul(t.weyl_order()?)
            .ok_or_else(|| Error::InvalidArgument("Weyl group order overflows".into()))
    })
}

/// `f(G) = 3^{D/2}·B³·|W|^{5/2}` with `D`, `B` taken at the rank of `G`.
pub fn f_of_group(type_label: &str) -> Result<BoundConstants> {
    let types = parse_type_label(type_label)?;
    constants_for(&types)
}

fn constants_for(types: &[SimpleType]) -> Result<BoundConstants> {
    let rank: usize = types.iter().map(|t| t.rank).sum();
    check_rank(rank)?;
    let rc = rank_constants(rank)?;
    let w = weyl_order_of(types)?;
    let (d, b) = (rc.d, rc.b);
    let d32 = u32::try_from(d).map_err(|_| Error::InvalidArgument("D too large".into()))?;
    let big_b = BigUint::from(b);
    let big_w = BigUint::from(w);
    let f1 = &big_w * &big_w;
    let f2_prime = big_b.pow(4) * &big_w;
    let f2 = Radical::integer(big_b.pow(2)).mul(&Radical::sqrt_of(w));
    let f3 = Radical::pow_half(3, d32).mul(&Radical::integer(b));
    let f = Radical::pow_half(3, d32)
        .mul(&Radical::integer(big_b.pow(3)))
        .mul(&Radical::pow_half(w, 5));
    if f2.square() != f2_prime {
        return Err(Error::Data("f2 squared differs from f2'".into()));
    }
    if Radical::integer(f1.clone()).mul(&f2).mul(&f3) != f {
        return Err(Error::Data("f1·f2·f3 differs from f".into()));
    }
    let f_ceil = f.ceil();
    let f_float = f.to_f64();
    Ok(BoundConstants {
        rank,
        type_label: format_type_label(types),
        weyl_order: w,
        d,
        b,
        f1,
        f2_prime,
        f2,
        f3,
        f_float,
        f_ceil,
        f,
    })
}

/// `f(r)` with the type attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankBound {
    pub rank: usize,
    #[serde(serialize_with = "ser_radical")]
    pub value: Radical,
    #[serde(serialize_with = "ser_big")]
    pub ceil: BigUint,
    pub witness: String,
    pub constants: BoundConstants,
}

/// `f(r)`: the maximum of `f(G)` over semisimple types of total rank `r`.
pub fn f_of_rank(r: usize) -> Result<RankBound> {
    check_rank(r)?;
    let types = simple_types_up_to(r);
    let mut best: Option<(u64, Vec<SimpleType>)> = None;
    let mut err = None;
    for_each_multiset(&types, r, r, &mut |m| match weyl_order_of(m) {
        Ok(w) => {
            if best.as_ref().is_none_or(|(bw, _)| w > *bw) {
                best = Some((w, m.to_vec()));
            }
        }
        Err(e) => err = Some(e),
    });
    if let Some(e) = err {
        return Err(e);
    }
    let (_, witness) = best.expect("rank r has at least A1^r");
    let constants = constants_for(&witness)?;
    Ok(RankBound {
        rank: r,
        value: constants.f.clone(),
        ceil: constants.f_ceil.clone(),
        witness: constants.type_label.clone(),
        constants,
    })
}

/// `|W(s)|²`, the Lusztig-series size bound.
pub fn series_size_bound(stabilizer_order: u128) -> Result<u128> {
    if stabilizer_order == 0 {
        return Err(Error::InvalidArgument("stabilizer order must be positive".into()));
    }
    stabilizer_order
        .checked_mul(stabilizer_order)
        .ok_or_else(|| Error::InvalidArgument("series bound overflows".into()))
}

/// `B(M)⁴·|W_G|`, with `B(M) = 1` when `M` is a torus.
pub fn levi_constant(levi_semisimple_rank: usize, ambient_weyl_order: u64) -> Result<BigUint> {
    let b = if levi_semisimple_rank == 0 {
        1
    } else {
        rank_constants(levi_semisimple_rank)?.b
    };
    Ok(BigUint::from(b).pow(4) * ambient_weyl_order)
}

/// CLI-facing report for one `(M ≤ G)` pair.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaReport {
    pub rank: usize,
    #[serde(rename = "type")]
    pub type_label: String,
    pub twist: Option<Vec<usize>>,
    pub levi: LeviRef,
    #[serde(serialize_with = "ser_ratio")]
    pub alpha: Ratio<u64>,
    pub witness: Option<AlphaWitness>,
    pub constants: BoundConstants,
    #[serde(serialize_with = "ser_big")]
    pub levi_constant: BigUint,
}

pub fn alpha_report(ambient: &RootSystem, subset: &[usize]) -> Result<AlphaReport> {
    let a = alpha(ambient, subset)?;
    let constants = constants_for(ambient.components())?;
    let levi_constant = levi_constant(a.levi.simple_roots.len(), constants.weyl_order)?;
    Ok(AlphaReport {
        rank: ambient.rank(),
        type_label: ambient.type_label(),
        twist: ambient.twist().map(<[usize]>::to_vec),
        levi: a.levi,
        alpha: a.value,
        witness: a.witness,
        constants,
        levi_constant,
    })
}
