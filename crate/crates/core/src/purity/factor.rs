//! Factorization of squares through split monos and split epis.

use std::collections::HashMap;

use serde_json::{json, Value};

use super::{require, SquareInto, SquareOnto, TestSuite};
use crate::category::{Biprod, Category};
use crate::error::{CatError, Result};
use crate::limits::{vwck_construct_via_product, vwsp_construct_via_coproduct, Limits, ToJson, VwspInput};

/// A square `t -> u -> m` (or `t -> u -> p`) through the split morphism `u: U -> V`.
///
/// Mono case: `first = (α: S -> U, β: T -> V)` with `u α = β t`, `second = (x: U -> C,
/// y: V -> D)` with `m x = y u`, and `split` is a retraction of `u`. Epi case: `first =
/// (α: T -> U, β: S -> V)`, `second = (x: U -> D, y: V -> E)` and `split` is a section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationWitness<M> {
    pub u: M,
    pub split: M,
    pub first: [M; 2],
    pub second: [M; 2],
}

impl<M: Clone + Eq> FactorizationWitness<M> {
    /// The five equations, in order: `u α = β t`, `m x = y u`, `x α = c`, `y β = d`, `s u = id`.
    pub fn mono_equations<C: Category<Mor = M>>(&self, cat: &C, m: &M, sq: &SquareInto<M>) -> [bool; 5] {
        let [a, b] = &self.first;
        let [x, y] = &self.second;
        let typed = cat.dom(a) == cat.dom(&sq.t)
            && cat.cod(a) == cat.dom(&self.u)
            && cat.dom(b) == cat.cod(&sq.t)
            && cat.cod(b) == cat.cod(&self.u)
            && cat.dom(x) == cat.dom(&self.u)
            && cat.cod(x) == cat.dom(m)
            && cat.dom(y) == cat.cod(&self.u)
            && cat.cod(y) == cat.cod(m)
            && cat.dom(&self.split) == cat.cod(&self.u)
            && cat.cod(&self.split) == cat.dom(&self.u);
        if !typed {
            return [false; 5];
        }
        [
            cat.compose(&self.u, a) == cat.compose(b, &sq.t),
            cat.compose(m, x) == cat.compose(y, &self.u),
            cat.compose(x, a) == sq.c,
            cat.compose(y, b) == sq.d,
            cat.compose(&self.split, &self.u) == cat.id(&cat.dom(&self.u)),
        ]
    }

    pub fn verify_mono<C: Category<Mor = M>>(&self, cat: &C, m: &M, sq: &SquareInto<M>) -> bool {
        self.mono_equations(cat, m, sq).iter().all(|&b| b)
    }

    /// `u α = β t`, `p x = y u`, `x α = d`, `y β = e`, `u s = id`.
    pub fn epi_equations<C: Category<Mor = M>>(&self, cat: &C, p: &M, sq: &SquareOnto<M>) -> [bool; 5] {
        let [a, b] = &self.first;
        let [x, y] = &self.second;
        let typed = cat.dom(a) == cat.dom(&sq.t)
            && cat.cod(a) == cat.dom(&self.u)
            && cat.dom(b) == cat.cod(&sq.t)
            && cat.cod(b) == cat.cod(&self.u)
            && cat.dom(x) == cat.dom(&self.u)
            && cat.cod(x) == cat.dom(p)
            && cat.dom(y) == cat.cod(&self.u)
            && cat.cod(y) == cat.cod(p)
            && cat.dom(&self.split) == cat.cod(&self.u)
            && cat.cod(&self.split) == cat.dom(&self.u);
        if !typed {
            return [false; 5];
        }
        [
            cat.compose(&self.u, a) == cat.compose(b, &sq.t),
            cat.compose(p, x) == cat.compose(y, &self.u),
            cat.compose(x, a) == sq.d,
            cat.compose(y, b) == sq.e,
            cat.compose(&self.u, &self.split) == cat.id(&cat.cod(&self.u)),
        ]
    }

    pub fn verify_epi<C: Category<Mor = M>>(&self, cat: &C, p: &M, sq: &SquareOnto<M>) -> bool {
        self.epi_equations(cat, p, sq).iter().all(|&b| b)
    }
}

impl<C: Category> ToJson<C> for FactorizationWitness<C::Mor> {
    fn to_json(&self, cat: &C) -> Value {
        json!({
            "u": cat.mor_json(&self.u),
            "split": cat.mor_json(&self.split),
            "first": [cat.mor_json(&self.first[0]), cat.mor_json(&self.first[1])],
            "second": [cat.mor_json(&self.second[0]), cat.mor_json(&self.second[1])],
        })
    }
}

/// The proof procedure for a pure mono: lift `e` with `e t = c`, then take the very weak
/// cokernel pair of `t` with respect to `(m e, d)` from the product `T × D`.
pub fn factor_square_through_split_mono<C: Limits>(
    cat: &C,
    m: &C::Mor,
    sq: &SquareInto<C::Mor>,
) -> Result<FactorizationWitness<C::Mor>> {
    require(cat, sq.commutes(cat, m), "square does not commute with", m)?;
    let e = cat
        .solve_right_factor(&sq.t, &sq.c)?
        .ok_or_else(|| CatError::Precondition(format!("no lift of c along t; {} is not pure", cat.mor_json(m))))?;
    let b1 = cat.compose(m, &e);
    let vw = vwck_construct_via_product(cat, &sq.t, &b1, &sq.d, u64::MAX)?;
    let w = FactorizationWitness { u: vw.k1, split: vw.s, first: [sq.t.clone(), vw.k2], second: [e, vw.l] };
    if !w.verify_mono(cat, m, sq) {
        return Err(CatError::Internal("mono factorization failed verification".into()));
    }
    Ok(w)
}

/// The dual procedure: lift `l` with `p l = e`, then the very weak split pullback of
/// `(p, e)` with respect to `(d, t)` from the coproduct `T ⊔ S`.
pub fn factor_square_through_split_epi<C: Limits>(
    cat: &C,
    p: &C::Mor,
    sq: &SquareOnto<C::Mor>,
) -> Result<FactorizationWitness<C::Mor>> {
    require(cat, sq.commutes(cat, p), "square does not commute with", p)?;
    let l = cat
        .solve_left_factor(p, &sq.e)?
        .ok_or_else(|| CatError::Precondition(format!("no lift of e along p; {} is not pure", cat.mor_json(p))))?;
    let input = VwspInput { f: p.clone(), g: sq.e.clone(), h: l, q_b: sq.d.clone(), q_c: sq.t.clone() };
    let vw = vwsp_construct_via_coproduct(cat, &input, u64::MAX)?;
    let ids = cat.id(&cat.cod(&sq.t));
    let w = FactorizationWitness { u: vw.p_c, split: vw.s, first: [vw.r, ids], second: [vw.p_b, sq.e.clone()] };
    if !w.verify_epi(cat, p, sq) {
        return Err(CatError::Internal("epi factorization failed verification".into()));
    }
    Ok(w)
}

fn sum<C: Category>(cat: &C, f: &C::Mor, g: &C::Mor) -> Result<C::Mor> {
    cat.add(f, g).ok_or_else(|| CatError::Internal("additive structure vanished".into()))
}

/// Split monos `u` between factor objects, each with its first retraction.
fn split_monos<C: Category>(tests: &TestSuite<C>) -> Result<Vec<(C::Mor, C::Mor)>> {
    let cat = tests.category();
    let objs = tests.factor_objects()?;
    let mut out = Vec::new();
    for a in objs {
        for b in objs {
            for u in cat.hom(a, b)?.iter() {
                if let Some(r) = cat.find_retraction(u)? {
                    out.push((u.clone(), r));
                }
            }
        }
    }
    Ok(out)
}

fn split_epis<C: Category>(tests: &TestSuite<C>) -> Result<Vec<(C::Mor, C::Mor)>> {
    let cat = tests.category();
    let objs = tests.factor_objects()?;
    let mut out = Vec::new();
    for a in objs {
        for b in objs {
            for u in cat.hom(a, b)?.iter() {
                if let Some(s) = cat.find_section(u)? {
                    out.push((u.clone(), s));
                }
            }
        }
    }
    Ok(out)
}

/// Data shared by every square over one test morphism `t: S -> T` into `m: C -> D`.
///
/// In additive categories the factorization goes through `u = inj: T -> T ⊕ coker t`,
/// which stays within the factor bound; otherwise split monos among factor objects are
/// searched.
pub(crate) struct MonoFactorizer<'s, 'a, C: Category> {
    tests: &'s TestSuite<'a, C>,
    m: C::Mor,
    additive: Option<MonoAdditive<C>>,
    splits: Option<Vec<(C::Mor, C::Mor)>>,
}

struct MonoAdditive<C: Category> {
    q: C::Mor,
    bp: Biprod<C::Obj, C::Mor>,
    /// `y` restricted to `T`: `inj_T + inj_Q q`
    beta: C::Mor,
    /// `w ∘ q` to the first such `w: Q -> D`
    through_q: HashMap<C::Mor, C::Mor>,
}

impl<'s, 'a, C: Category> MonoFactorizer<'s, 'a, C> {
    pub(crate) fn new(tests: &'s TestSuite<'a, C>, m: &C::Mor, t: &C::Mor) -> Result<Self> {
        let additive = Self::additive(tests, m, t)?;
        Ok(MonoFactorizer { tests, m: m.clone(), additive, splits: None })
    }

    fn additive(tests: &TestSuite<C>, m: &C::Mor, t: &C::Mor) -> Result<Option<MonoAdditive<C>>> {
        let cat = tests.category();
        let Some(q) = cat.cokernel(t) else { return Ok(None) };
        let q = q?;
        let (tt, qq) = (cat.cod(t), cat.cod(&q));
        if cat.size(&tt).saturating_mul(cat.size(&qq)) > tests.factor_bound() {
            return Ok(None);
        }
        let Some(bp) = cat.biproduct(&tt, &qq) else { return Ok(None) };
        let bp = bp?;
        let beta = sum(cat, &bp.inj[0], &cat.compose(&bp.inj[1], &q))?;
        let mut through_q = HashMap::new();
        for w in cat.hom(&qq, &cat.cod(m))?.iter() {
            through_q.entry(cat.compose(w, &q)).or_insert_with(|| w.clone());
        }
        Ok(Some(MonoAdditive { q, bp, beta, through_q }))
    }

    /// Factors a square whose lift `e` (with `e t = c`) is already known.
    pub(crate) fn factor(&mut self, sq: &SquareInto<C::Mor>, e: &C::Mor) -> Result<Option<FactorizationWitness<C::Mor>>> {
        let cat = self.tests.category();
        let m = &self.m;
        if let Some(a) = &self.additive {
            let me = cat.compose(m, e);
            let neg = cat.neg(&me).ok_or_else(|| CatError::Internal("additive structure vanished".into()))?;
            let diff = sum(cat, &sq.d, &neg)?;
            let w = a
                .through_q
                .get(&diff)
                .ok_or_else(|| CatError::Internal("d - m e does not factor through coker t".into()))?;
            let y = sum(cat, &cat.compose(&me, &a.bp.proj[0]), &cat.compose(w, &a.bp.proj[1]))?;
            let out = FactorizationWitness {
                u: a.bp.inj[0].clone(),
                split: a.bp.proj[0].clone(),
                first: [sq.t.clone(), a.beta.clone()],
                second: [e.clone(), y],
            };
            debug_assert_eq!(cat.compose(w, &a.q), diff);
            if !out.verify_mono(cat, m, sq) {
                return Err(CatError::Internal("additive mono factorization failed verification".into()));
            }
            return Ok(Some(out));
        }
        if self.splits.is_none() {
            self.splits = Some(split_monos(self.tests)?);
        }
        let (s_obj, t_obj) = (cat.dom(&sq.t), cat.cod(&sq.t));
        let (c_obj, d_obj) = (cat.dom(m), cat.cod(m));
        for (u, r) in self.splits.as_ref().expect("filled above") {
            let (uu, vv) = (cat.dom(u), cat.cod(u));
            let ys = cat.hom(&t_obj, &vv)?;
            let xs = cat.hom(&uu, &c_obj)?;
            let zs = cat.hom(&vv, &d_obj)?;
            for a in cat.hom(&s_obj, &uu)?.iter() {
                let ua = cat.compose(u, a);
                for b in ys.iter().filter(|b| cat.compose(b, &sq.t) == ua) {
                    for x in xs.iter().filter(|x| cat.compose(x, a) == sq.c) {
                        let mx = cat.compose(m, x);
                        if let Some(y) = zs.iter().find(|y| cat.compose(y, b) == sq.d && cat.compose(y, u) == mx) {
                            return Ok(Some(FactorizationWitness {
                                u: u.clone(),
                                split: r.clone(),
                                first: [a.clone(), b.clone()],
                                second: [x.clone(), y.clone()],
                            }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Data shared by every square onto `p: D -> E` from one test morphism `t: T -> S`.
/// Additive categories use `u = [t, id]: T ⊕ S -> S`.
pub(crate) struct EpiFactorizer<'s, 'a, C: Category> {
    tests: &'s TestSuite<'a, C>,
    p: C::Mor,
    additive: Option<(Biprod<C::Obj, C::Mor>, C::Mor)>,
    splits: Option<Vec<(C::Mor, C::Mor)>>,
}

impl<'s, 'a, C: Category> EpiFactorizer<'s, 'a, C> {
    pub(crate) fn new(tests: &'s TestSuite<'a, C>, p: &C::Mor, t: &C::Mor) -> Result<Self> {
        let cat = tests.category();
        let (tt, ss) = (cat.dom(t), cat.cod(t));
        let mut additive = None;
        if cat.size(&tt).saturating_mul(cat.size(&ss)) <= tests.factor_bound() {
            if let Some(bp) = cat.biproduct(&tt, &ss) {
                let bp = bp?;
                let u = sum(cat, &cat.compose(t, &bp.proj[0]), &bp.proj[1])?;
                additive = Some((bp, u));
            }
        }
        Ok(EpiFactorizer { tests, p: p.clone(), additive, splits: None })
    }

    /// Factors a square whose lift `l` (with `p l = e`) is already known.
    pub(crate) fn factor(&mut self, sq: &SquareOnto<C::Mor>, l: &C::Mor) -> Result<Option<FactorizationWitness<C::Mor>>> {
        let cat = self.tests.category();
        let p = &self.p;
        if let Some((bp, u)) = &self.additive {
            let x = sum(cat, &cat.compose(&sq.d, &bp.proj[0]), &cat.compose(l, &bp.proj[1]))?;
            let out = FactorizationWitness {
                u: u.clone(),
                split: bp.inj[1].clone(),
                first: [bp.inj[0].clone(), cat.id(&cat.cod(&sq.t))],
                second: [x, sq.e.clone()],
            };
            if !out.verify_epi(cat, p, sq) {
                return Err(CatError::Internal("additive epi factorization failed verification".into()));
            }
            return Ok(Some(out));
        }
        if self.splits.is_none() {
            self.splits = Some(split_epis(self.tests)?);
        }
        let (t_obj, s_obj) = (cat.dom(&sq.t), cat.cod(&sq.t));
        let (d_obj, e_obj) = (cat.dom(p), cat.cod(p));
        for (u, s) in self.splits.as_ref().expect("filled above") {
            let (uu, vv) = (cat.dom(u), cat.cod(u));
            let bs = cat.hom(&s_obj, &vv)?;
            let xs = cat.hom(&uu, &d_obj)?;
            let ys = cat.hom(&vv, &e_obj)?;
            for a in cat.hom(&t_obj, &uu)?.iter() {
                let ua = cat.compose(u, a);
                for b in bs.iter().filter(|b| cat.compose(b, &sq.t) == ua) {
                    for y in ys.iter().filter(|y| cat.compose(y, b) == sq.e) {
                        let yu = cat.compose(y, u);
                        if let Some(x) = xs.iter().find(|x| cat.compose(x, a) == sq.d && cat.compose(p, x) == yu) {
                            return Ok(Some(FactorizationWitness {
                                u: u.clone(),
                                split: s.clone(),
                                first: [a.clone(), b.clone()],
                                second: [x.clone(), y.clone()],
                            }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}
