//! Very weak cokernel pairs and very weak split pullbacks.

use serde_json::{json, Value};

use super::search::morphisms_in_scope;
use super::{Certificate, Limits, Outcome, ToJson};
use crate::category::Category;
use crate::error::{CatError, Result};

/// For `f: A -> B` and `c1, c2: B -> C` with `c1 f = c2 f`: `k1, k2: B -> K` with
/// `k1 f = k2 f`, `l: K -> C` with `l k_i = c_i`, and `s: K -> B` with `s k1 = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VwckResult<O, M> {
    pub apex: O,
    pub k1: M,
    pub k2: M,
    pub l: M,
    pub s: M,
}

/// Cospan `f: B -> A`, `g: C -> A` with `h: C -> B`, `f h = g`, and a cone
/// `q_b: Q -> B`, `q_c: Q -> C` with `f q_b = g q_c`.
#[derive(Clone, Debug)]
pub struct VwspInput<M> {
    pub f: M,
    pub g: M,
    pub h: M,
    pub q_b: M,
    pub q_c: M,
}

/// `p_b: P -> B`, `p_c: P -> C` with `f p_b = g p_c`, `r: Q -> P` with `p_b r = q_b`,
/// `p_c r = q_c`, and `s: C -> P` with `p_c s = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VwspResult<O, M> {
    pub apex: O,
    pub p_b: M,
    pub p_c: M,
    pub r: M,
    pub s: M,
}

fn vwck_precondition<C: Category>(cat: &C, f: &C::Mor, c1: &C::Mor, c2: &C::Mor) -> Result<()> {
    if cat.cod(f) != cat.dom(c1) || cat.dom(c1) != cat.dom(c2) || cat.cod(c1) != cat.cod(c2) {
        return Err(CatError::Precondition("need f: A -> B and a parallel pair c1, c2: B -> C".into()));
    }
    if cat.compose(c1, f) != cat.compose(c2, f) {
        return Err(CatError::Precondition("c1 ∘ f != c2 ∘ f".into()));
    }
    Ok(())
}

pub fn verify_vwck<C: Category>(cat: &C, f: &C::Mor, c1: &C::Mor, c2: &C::Mor, w: &VwckResult<C::Obj, C::Mor>) -> bool {
    let b = cat.cod(f);
    cat.compose(&w.k1, f) == cat.compose(&w.k2, f)
        && cat.compose(&w.l, &w.k1) == *c1
        && cat.compose(&w.l, &w.k2) == *c2
        && cat.compose(&w.s, &w.k1) == cat.id(&b)
}

pub fn vwck_construct_via_product<C: Limits>(
    cat: &C,
    f: &C::Mor,
    c1: &C::Mor,
    c2: &C::Mor,
    bound: u64,
) -> Result<VwckResult<C::Obj, C::Mor>> {
    vwck_precondition(cat, f, c1, c2)?;
    let (b, c) = (cat.cod(f), cat.cod(c1));
    let prod = cat
        .product(&b, &c, bound)?
        .witness
        .ok_or_else(|| CatError::Missing("product B × C does not exist".into()))?;
    let idb = cat.id(&b);
    let w = VwckResult {
        k1: cat.pair(&prod, &idb, c1)?,
        k2: cat.pair(&prod, &idb, c2)?,
        l: prod.legs[1].clone(),
        s: prod.legs[0].clone(),
        apex: prod.apex,
    };
    if !verify_vwck(cat, f, c1, c2, &w) {
        return Err(CatError::Internal("product construction failed its defining equations".into()));
    }
    Ok(w)
}

pub fn vwck_search<C: Category>(
    cat: &C,
    f: &C::Mor,
    c1: &C::Mor,
    c2: &C::Mor,
    bound: u64,
) -> Result<Outcome<VwckResult<C::Obj, C::Mor>>> {
    vwck_precondition(cat, f, c1, c2)?;
    let (b, c) = (cat.cod(f), cat.cod(c1));
    let objs = cat.objects(bound)?;
    let mut candidates = 0u64;
    let mut competitors = 0u64;
    let mut searched = 0usize;
    let certificate = |searched, candidates, competitors| Certificate::Exhaustive {
        bound,
        objects_searched: searched,
        morphisms_in_scope: morphisms_in_scope(cat, &objs),
        candidates_examined: candidates,
        competitors_checked: competitors,
    };
    for k in &objs {
        searched += 1;
        let hbk = cat.hom(&b, k)?;
        let hkc = cat.hom(k, &c)?;
        for k1 in hbk.iter() {
            candidates += 1;
            let Some(s) = cat.find_retraction(k1)? else { continue };
            let k1f = cat.compose(k1, f);
            for k2 in hbk.iter() {
                if cat.compose(k2, f) != k1f {
                    continue;
                }
                for l in hkc.iter() {
                    competitors += 1;
                    if cat.compose(l, k1) == *c1 && cat.compose(l, k2) == *c2 {
                        let w = VwckResult { apex: k.clone(), k1: k1.clone(), k2: k2.clone(), l: l.clone(), s };
                        debug_assert!(verify_vwck(cat, f, c1, c2, &w));
                        return Ok(Outcome::found(w, certificate(searched, candidates, competitors)));
                    }
                }
            }
        }
    }
    Ok(Outcome::none(certificate(searched, candidates, competitors)))
}

fn vwsp_precondition<C: Category>(cat: &C, i: &VwspInput<C::Mor>) -> Result<()> {
    let typed = cat.cod(&i.f) == cat.cod(&i.g)
        && cat.dom(&i.h) == cat.dom(&i.g)
        && cat.cod(&i.h) == cat.dom(&i.f)
        && cat.dom(&i.q_b) == cat.dom(&i.q_c)
        && cat.cod(&i.q_b) == cat.dom(&i.f)
        && cat.cod(&i.q_c) == cat.dom(&i.g);
    if !typed {
        return Err(CatError::Precondition("ill-typed very weak split pullback input".into()));
    }
    if cat.compose(&i.f, &i.h) != i.g {
        return Err(CatError::Precondition("f ∘ h != g".into()));
    }
    if cat.compose(&i.f, &i.q_b) != cat.compose(&i.g, &i.q_c) {
        return Err(CatError::Precondition("f ∘ q_b != g ∘ q_c".into()));
    }
    Ok(())
}

pub fn verify_vwsp<C: Category>(cat: &C, i: &VwspInput<C::Mor>, w: &VwspResult<C::Obj, C::Mor>) -> bool {
    let c = cat.dom(&i.g);
    cat.compose(&i.f, &w.p_b) == cat.compose(&i.g, &w.p_c)
        && cat.compose(&w.p_b, &w.r) == i.q_b
        && cat.compose(&w.p_c, &w.r) == i.q_c
        && cat.compose(&w.p_c, &w.s) == cat.id(&c)
}

pub fn vwsp_construct_via_coproduct<C: Limits>(
    cat: &C,
    input: &VwspInput<C::Mor>,
    bound: u64,
) -> Result<VwspResult<C::Obj, C::Mor>> {
    vwsp_precondition(cat, input)?;
    let (q, c) = (cat.dom(&input.q_b), cat.dom(&input.g));
    let cop = cat
        .coproduct(&q, &c, bound)?
        .witness
        .ok_or_else(|| CatError::Missing("coproduct Q ⊔ C does not exist".into()))?;
    let w = VwspResult {
        p_b: cat.copair(&cop, &input.q_b, &input.h)?,
        p_c: cat.copair(&cop, &input.q_c, &cat.id(&c))?,
        r: cop.legs[0].clone(),
        s: cop.legs[1].clone(),
        apex: cop.apex,
    };
    if !verify_vwsp(cat, input, &w) {
        return Err(CatError::Internal("coproduct construction failed its defining equations".into()));
    }
    Ok(w)
}

pub fn vwsp_search<C: Category>(
    cat: &C,
    input: &VwspInput<C::Mor>,
    bound: u64,
) -> Result<Outcome<VwspResult<C::Obj, C::Mor>>> {
    vwsp_precondition(cat, input)?;
    let (b, c, q) = (cat.dom(&input.f), cat.dom(&input.g), cat.dom(&input.q_b));
    let objs = cat.objects(bound)?;
    let (mut searched, mut candidates, mut competitors) = (0usize, 0u64, 0u64);
    let certificate = |searched, candidates, competitors| Certificate::Exhaustive {
        bound,
        objects_searched: searched,
        morphisms_in_scope: morphisms_in_scope(cat, &objs),
        candidates_examined: candidates,
        competitors_checked: competitors,
    };
    for p in &objs {
        searched += 1;
        let hpb = cat.hom(p, &b)?;
        let hqp = cat.hom(&q, p)?;
        for p_c in cat.hom(p, &c)?.iter() {
            candidates += 1;
            let Some(s) = cat.find_section(p_c)? else { continue };
            let gpc = cat.compose(&input.g, p_c);
            for p_b in hpb.iter() {
                if cat.compose(&input.f, p_b) != gpc {
                    continue;
                }
                for r in hqp.iter() {
                    competitors += 1;
                    if cat.compose(p_b, r) == input.q_b && cat.compose(p_c, r) == input.q_c {
                        let w = VwspResult { apex: p.clone(), p_b: p_b.clone(), p_c: p_c.clone(), r: r.clone(), s };
                        debug_assert!(verify_vwsp(cat, input, &w));
                        return Ok(Outcome::found(w, certificate(searched, candidates, competitors)));
                    }
                }
            }
        }
    }
    Ok(Outcome::none(certificate(searched, candidates, competitors)))
}

impl<C: Category> ToJson<C> for VwckResult<C::Obj, C::Mor> {
    fn to_json(&self, cat: &C) -> Value {
        json!({
            "apex": cat.obj_json(&self.apex),
            "k1": cat.mor_json(&self.k1),
            "k2": cat.mor_json(&self.k2),
            "l": cat.mor_json(&self.l),
            "s": cat.mor_json(&self.s),
        })
    }
}

impl<C: Category> ToJson<C> for VwspResult<C::Obj, C::Mor> {
    fn to_json(&self, cat: &C) -> Value {
        json!({
            "apex": cat.obj_json(&self.apex),
            "p_b": cat.mor_json(&self.p_b),
            "p_c": cat.mor_json(&self.p_c),
            "r": cat.mor_json(&self.r),
            "s": cat.mor_json(&self.s),
        })
    }
}
