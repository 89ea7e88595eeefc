//! Finite (co)limits with universality certificates, and very weak cokernel pairs /
//! very weak split pullbacks.

pub mod oracle;
pub mod search;
pub mod vw;

use serde::Serialize;
use serde_json::{json, Value};

use crate::category::{Category, FiniteCategory};
use crate::concrete::{ops, ModCategory};
use crate::error::{CatError, Result};

pub use vw::{
    vwck_construct_via_product, vwck_search, vwsp_construct_via_coproduct, vwsp_search, VwckResult, VwspInput,
    VwspResult,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// Universality (or absence) established by scanning every object of size at most `bound`.
    #[serde(rename = "exhaustive")]
    Exhaustive {
        bound: u64,
        objects_searched: usize,
        morphisms_in_scope: u128,
        candidates_examined: u64,
        competitors_checked: u64,
    },
    #[serde(rename = "by-construction")]
    ByConstruction,
}

#[derive(Clone, Debug)]
pub struct Outcome<T> {
    pub witness: Option<T>,
    pub certificate: Certificate,
}

impl<T> Outcome<T> {
    pub fn found(witness: T, certificate: Certificate) -> Self {
        Outcome { witness: Some(witness), certificate }
    }

    pub fn none(certificate: Certificate) -> Self {
        Outcome { witness: None, certificate }
    }

    pub fn by_construction(witness: T) -> Self {
        Self::found(witness, Certificate::ByConstruction)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        Outcome { witness: self.witness.map(f), certificate: self.certificate }
    }
}

/// Pushout of `C' <-f- C -m-> D`: `m': C' -> D'`, `f': D -> D'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout<O, M> {
    pub apex: O,
    pub m_prime: M,
    pub f_prime: M,
}

/// Pullback of `D -p-> E <-f- E'`: `p': D' -> E'`, `f': D' -> D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback<O, M> {
    pub apex: O,
    pub p_prime: M,
    pub f_prime: M,
}

/// (Co)equalizer: a single universal map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone<O, M> {
    pub apex: O,
    pub map: M,
}

/// (Co)product: two legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span<O, M> {
    pub apex: O,
    pub legs: [M; 2],
}

/// Parallel pair with apex: cokernel pair `k1, k2: D -> K`, or kernel pair `k1, k2: K -> D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair<O, M> {
    pub apex: O,
    pub k1: M,
    pub k2: M,
}

pub trait Limits: Category + Sized {
    fn pushout_raw(&self, f: &Self::Mor, m: &Self::Mor, bound: u64) -> Result<Outcome<Pushout<Self::Obj, Self::Mor>>>;
    fn pullback_raw(&self, p: &Self::Mor, f: &Self::Mor, bound: u64) -> Result<Outcome<Pullback<Self::Obj, Self::Mor>>>;
    fn equalizer_raw(&self, k1: &Self::Mor, k2: &Self::Mor, bound: u64) -> Result<Outcome<Cone<Self::Obj, Self::Mor>>>;
    fn coequalizer_raw(&self, k1: &Self::Mor, k2: &Self::Mor, bound: u64) -> Result<Outcome<Cone<Self::Obj, Self::Mor>>>;
    fn product(&self, a: &Self::Obj, b: &Self::Obj, bound: u64) -> Result<Outcome<Span<Self::Obj, Self::Mor>>>;
    fn coproduct(&self, a: &Self::Obj, b: &Self::Obj, bound: u64) -> Result<Outcome<Span<Self::Obj, Self::Mor>>>;

    /// Pushout of the span `cod f <- C -> cod m`. Pushouts along identities are returned literally.
    fn pushout(&self, f: &Self::Mor, m: &Self::Mor, bound: u64) -> Result<Outcome<Pushout<Self::Obj, Self::Mor>>> {
        if self.dom(f) != self.dom(m) {
            return Err(CatError::Precondition("pushout needs a span with a common domain".into()));
        }
        if self.is_identity(m) {
            let c1 = self.cod(f);
            return Ok(Outcome::by_construction(Pushout { m_prime: self.id(&c1), apex: c1, f_prime: f.clone() }));
        }
        if self.is_identity(f) {
            let d = self.cod(m);
            return Ok(Outcome::by_construction(Pushout { m_prime: m.clone(), f_prime: self.id(&d), apex: d }));
        }
        let out = self.pushout_raw(f, m, bound)?;
        if let Some(w) = &out.witness {
            debug_assert_eq!(self.compose(&w.m_prime, f), self.compose(&w.f_prime, m));
        }
        Ok(out)
    }

    fn pullback(&self, p: &Self::Mor, f: &Self::Mor, bound: u64) -> Result<Outcome<Pullback<Self::Obj, Self::Mor>>> {
        if self.cod(p) != self.cod(f) {
            return Err(CatError::Precondition("pullback needs a cospan with a common codomain".into()));
        }
        if self.is_identity(p) {
            let e1 = self.dom(f);
            return Ok(Outcome::by_construction(Pullback { p_prime: self.id(&e1), apex: e1, f_prime: f.clone() }));
        }
        if self.is_identity(f) {
            let d = self.dom(p);
            return Ok(Outcome::by_construction(Pullback { p_prime: p.clone(), f_prime: self.id(&d), apex: d }));
        }
        self.pullback_raw(p, f, bound)
    }

    fn equalizer(&self, k1: &Self::Mor, k2: &Self::Mor, bound: u64) -> Result<Outcome<Cone<Self::Obj, Self::Mor>>> {
        parallel(self, k1, k2)?;
        if k1 == k2 {
            let b = self.dom(k1);
            return Ok(Outcome::by_construction(Cone { map: self.id(&b), apex: b }));
        }
        self.equalizer_raw(k1, k2, bound)
    }

    fn coequalizer(&self, k1: &Self::Mor, k2: &Self::Mor, bound: u64) -> Result<Outcome<Cone<Self::Obj, Self::Mor>>> {
        parallel(self, k1, k2)?;
        if k1 == k2 {
            let b = self.cod(k1);
            return Ok(Outcome::by_construction(Cone { map: self.id(&b), apex: b }));
        }
        self.coequalizer_raw(k1, k2, bound)
    }

    /// `⟨a, b⟩` into the apex of a product span.
    fn pair(&self, span: &Span<Self::Obj, Self::Mor>, a: &Self::Mor, b: &Self::Mor) -> Result<Self::Mor> {
        search_pair(self, span, a, b)
    }

    /// `[a, b]` out of the apex of a coproduct span.
    fn copair(&self, span: &Span<Self::Obj, Self::Mor>, a: &Self::Mor, b: &Self::Mor) -> Result<Self::Mor> {
        search_copair(self, span, a, b)
    }

    fn cokernel_pair(&self, m: &Self::Mor, bound: u64) -> Result<Outcome<Pair<Self::Obj, Self::Mor>>> {
        Ok(self.pushout(m, m, bound)?.map(|w| Pair { apex: w.apex, k1: w.m_prime, k2: w.f_prime }))
    }

    fn kernel_pair(&self, p: &Self::Mor, bound: u64) -> Result<Outcome<Pair<Self::Obj, Self::Mor>>> {
        Ok(self.pullback(p, p, bound)?.map(|w| Pair { apex: w.apex, k1: w.f_prime, k2: w.p_prime }))
    }
}

pub fn search_pair<C: Category>(cat: &C, span: &Span<C::Obj, C::Mor>, a: &C::Mor, b: &C::Mor) -> Result<C::Mor> {
    cat.hom(&cat.dom(a), &span.apex)?
        .iter()
        .find(|u| cat.compose(&span.legs[0], u) == *a && cat.compose(&span.legs[1], u) == *b)
        .cloned()
        .ok_or_else(|| CatError::Internal("no mediating map into the product".into()))
}

pub fn search_copair<C: Category>(cat: &C, span: &Span<C::Obj, C::Mor>, a: &C::Mor, b: &C::Mor) -> Result<C::Mor> {
    cat.hom(&span.apex, &cat.cod(a))?
        .iter()
        .find(|u| cat.compose(u, &span.legs[0]) == *a && cat.compose(u, &span.legs[1]) == *b)
        .cloned()
        .ok_or_else(|| CatError::Internal("no mediating map out of the coproduct".into()))
}

fn parallel<C: Category>(cat: &C, k1: &C::Mor, k2: &C::Mor) -> Result<()> {
    if cat.dom(k1) != cat.dom(k2) || cat.cod(k1) != cat.cod(k2) {
        return Err(CatError::Precondition("(co)equalizer needs a parallel pair".into()));
    }
    Ok(())
}

impl Limits for FiniteCategory {
    fn pushout_raw(&self, f: &Self::Mor, m: &Self::Mor, bound: u64) -> Result<Outcome<Pushout<Self::Obj, Self::Mor>>> {
        search::pushout(self, f, m, bound)
    }
    fn pullback_raw(&self, p: &Self::Mor, f: &Self::Mor, bound: u64) -> Result<Outcome<Pullback<Self::Obj, Self::Mor>>> {
        search::pullback(self, p, f, bound)
    }
    fn equalizer_raw(&self, k1: &Self::Mor, k2: &Self::Mor, bound: u64) -> Result<Outcome<Cone<Self::Obj, Self::Mor>>> {
        search::equalizer(self, k1, k2, bound)
    }
    fn coequalizer_raw(&self, k1: &Self::Mor, k2: &Self::Mor, bound: u64) -> Result<Outcome<Cone<Self::Obj, Self::Mor>>> {
        search::coequalizer(self, k1, k2, bound)
    }
    fn product(&self, a: &Self::Obj, b: &Self::Obj, bound: u64) -> Result<Outcome<Span<Self::Obj, Self::Mor>>> {
        search::product(self, a, b, bound)
    }
    fn coproduct(&self, a: &Self::Obj, b: &Self::Obj, bound: u64) -> Result<Outcome<Span<Self::Obj, Self::Mor>>> {
        search::coproduct(self, a, b, bound)
    }
}

/// Module categories compute by formula; the capped subcategories search inside themselves.
impl Limits for ModCategory {
    fn pushout_raw(&self, f: &Self::Mor, m: &Self::Mor, bound: u64) -> Result<Outcome<Pushout<Self::Obj, Self::Mor>>> {
        if self.is_capped() {
            return search::pushout(self, f, m, bound);
        }
        let (apex, m_prime, f_prime) = ops::pushout(f, m)?;
        Ok(Outcome::by_construction(Pushout { apex, m_prime, f_prime }))
    }
    fn pullback_raw(&self, p: &Self::Mor, f: &Self::Mor, bound: u64) -> Result<Outcome<Pullback<Self::Obj, Self::Mor>>> {
        if self.is_capped() {
            return search::pullback(self, p, f, bound);
        }
        let (apex, p_prime, f_prime) = ops::pullback(p, f)?;
        Ok(Outcome::by_construction(Pullback { apex, p_prime, f_prime }))
    }
    fn equalizer_raw(&self, k1: &Self::Mor, k2: &Self::Mor, bound: u64) -> Result<Outcome<Cone<Self::Obj, Self::Mor>>> {
        if self.is_capped() {
            return search::equalizer(self, k1, k2, bound);
        }
        let e = ops::kernel(&k1.sub(k2)?)?;
        Ok(Outcome::by_construction(Cone { apex: e.dom().clone(), map: e }))
    }
    fn coequalizer_raw(&self, k1: &Self::Mor, k2: &Self::Mor, bound: u64) -> Result<Outcome<Cone<Self::Obj, Self::Mor>>> {
        if self.is_capped() {
            return search::coequalizer(self, k1, k2, bound);
        }
        let q = ops::cokernel(&k1.sub(k2)?)?;
        Ok(Outcome::by_construction(Cone { apex: q.cod().clone(), map: q }))
    }
    fn product(&self, a: &Self::Obj, b: &Self::Obj, bound: u64) -> Result<Outcome<Span<Self::Obj, Self::Mor>>> {
        if self.is_capped() {
            return search::product(self, a, b, bound);
        }
        let bp = ops::biproduct(&[a.clone(), b.clone()])?;
        Ok(Outcome::by_construction(Span { apex: bp.apex, legs: [bp.proj[0].clone(), bp.proj[1].clone()] }))
    }
    fn coproduct(&self, a: &Self::Obj, b: &Self::Obj, bound: u64) -> Result<Outcome<Span<Self::Obj, Self::Mor>>> {
        if self.is_capped() {
            return search::coproduct(self, a, b, bound);
        }
        let bp = ops::biproduct(&[a.clone(), b.clone()])?;
        Ok(Outcome::by_construction(Span { apex: bp.apex, legs: [bp.inj[0].clone(), bp.inj[1].clone()] }))
    }
    fn pair(&self, span: &Span<Self::Obj, Self::Mor>, a: &Self::Mor, b: &Self::Mor) -> Result<Self::Mor> {
        let bp = ops::biproduct(&[span.legs[0].cod().clone(), span.legs[1].cod().clone()])?;
        if bp.apex == span.apex && bp.proj[..] == span.legs[..] {
            return bp.pair(&[a.clone(), b.clone()]);
        }
        search_pair(self, span, a, b)
    }
    fn copair(&self, span: &Span<Self::Obj, Self::Mor>, a: &Self::Mor, b: &Self::Mor) -> Result<Self::Mor> {
        let bp = ops::biproduct(&[span.legs[0].dom().clone(), span.legs[1].dom().clone()])?;
        if bp.apex == span.apex && bp.inj[..] == span.legs[..] {
            return bp.copair(&[a.clone(), b.clone()]);
        }
        search_copair(self, span, a, b)
    }
}

/// JSON rendering of witnesses, which needs the category to name objects and morphisms.
pub trait ToJson<C: Category> {
    fn to_json(&self, cat: &C) -> Value;
}

impl<C: Category> ToJson<C> for Pushout<C::Obj, C::Mor> {
    fn to_json(&self, cat: &C) -> Value {
        json!({"apex": cat.obj_json(&self.apex), "m_prime": cat.mor_json(&self.m_prime), "f_prime": cat.mor_json(&self.f_prime)})
    }
}

impl<C: Category> ToJson<C> for Pullback<C::Obj, C::Mor> {
    fn to_json(&self, cat: &C) -> Value {
        json!({"apex": cat.obj_json(&self.apex), "p_prime": cat.mor_json(&self.p_prime), "f_prime": cat.mor_json(&self.f_prime)})
    }
}

impl<C: Category> ToJson<C> for Cone<C::Obj, C::Mor> {
    fn to_json(&self, cat: &C) -> Value {
        json!({"apex": cat.obj_json(&self.apex), "map": cat.mor_json(&self.map)})
    }
}

impl<C: Category> ToJson<C> for Span<C::Obj, C::Mor> {
    fn to_json(&self, cat: &C) -> Value {
        json!({"apex": cat.obj_json(&self.apex), "legs": [cat.mor_json(&self.legs[0]), cat.mor_json(&self.legs[1])]})
    }
}

impl<C: Category> ToJson<C> for Pair<C::Obj, C::Mor> {
    fn to_json(&self, cat: &C) -> Value {
        json!({"apex": cat.obj_json(&self.apex), "k1": cat.mor_json(&self.k1), "k2": cat.mor_json(&self.k2)})
    }
}

impl<T> Outcome<T> {
    pub fn to_json<C: Category>(&self, cat: &C) -> Value
    where
        T: ToJson<C>,
    {
        json!({
            "exists": self.witness.is_some(),
            "witness": self.witness.as_ref().map(|w| w.to_json(cat)),
            "certificate": self.certificate,
        })
    }
}

#[cfg(test)]
mod tests;
