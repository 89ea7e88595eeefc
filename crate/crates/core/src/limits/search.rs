//! Exhaustive (co)limit search: a candidate is universal when, for every object `Y`
//! within the bound, composing with the legs is a bijection between mediating maps and
//! competing (co)cones on `Y`.

use std::collections::{HashMap, HashSet};

use super::{Certificate, Cone, Outcome, Pullback, Pushout, Span};
use crate::category::Category;
use crate::error::Result;

/// Which side the mediating maps live on.
#[derive(Clone, Copy)]
enum Side {
    /// mediators `X -> Y` (colimits)
    Out,
    /// mediators `Y -> X` (limits)
    In,
}

struct Universal<'a, C: Category> {
    cat: &'a C,
    bound: u64,
    side: Side,
    ys: Vec<C::Obj>,
    counts: Vec<u128>,
    objects_searched: usize,
    candidates: u64,
    competitors: u64,
}

impl<'a, C: Category> Universal<'a, C> {
    fn new(cat: &'a C, bound: u64, side: Side, count: impl Fn(&C::Obj) -> Result<u128>) -> Result<Self> {
        let ys = cat.objects(bound)?;
        let counts = ys.iter().map(count).collect::<Result<Vec<_>>>()?;
        Ok(Universal { cat, bound, side, ys, counts, objects_searched: 0, candidates: 0, competitors: 0 })
    }

    fn mediator_count(&self, x: &C::Obj, y: &C::Obj) -> u128 {
        match self.side {
            Side::Out => self.cat.hom_size(x, y),
            Side::In => self.cat.hom_size(y, x),
        }
    }

    /// Only apexes whose mediator counts match every cone count can carry a universal cone.
    fn admissible(&self, x: &C::Obj) -> bool {
        self.ys.iter().zip(&self.counts).all(|(y, &n)| self.mediator_count(x, y) == n)
    }

    /// `legs` are the candidate's legs; `apply(u, leg)` composes a mediator with a leg.
    fn is_universal(&mut self, x: &C::Obj, legs: &[C::Mor]) -> Result<bool> {
        self.candidates += 1;
        for y in self.ys.clone() {
            let maps = match self.side {
                Side::Out => self.cat.hom(x, &y)?,
                Side::In => self.cat.hom(&y, x)?,
            };
            let mut seen = HashSet::with_capacity(maps.len());
            for u in maps.iter() {
                self.competitors += 1;
                let image: Vec<C::Mor> = legs
                    .iter()
                    .map(|leg| match self.side {
                        Side::Out => self.cat.compose(u, leg),
                        Side::In => self.cat.compose(leg, u),
                    })
                    .collect();
                if !seen.insert(image) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn certificate(&self) -> Certificate {
        Certificate::Exhaustive {
            bound: self.bound,
            objects_searched: self.objects_searched,
            morphisms_in_scope: morphisms_in_scope(self.cat, &self.ys),
            candidates_examined: self.candidates,
            competitors_checked: self.competitors,
        }
    }
}

pub fn morphisms_in_scope<C: Category>(cat: &C, objs: &[C::Obj]) -> u128 {
    objs.iter().flat_map(|a| objs.iter().map(move |b| cat.hom_size(a, b))).sum()
}

/// Number of pairs `(a, b)` with `key(a) == key(b)`.
fn matched_pairs<M: Eq + std::hash::Hash>(left: impl Iterator<Item = M>, right: impl Iterator<Item = M>) -> u128 {
    let mut tally: HashMap<M, u128> = HashMap::new();
    for k in left {
        *tally.entry(k).or_default() += 1;
    }
    right.map(|k| tally.get(&k).copied().unwrap_or(0)).sum()
}

pub fn pushout<C: Category>(
    cat: &C,
    f: &C::Mor,
    m: &C::Mor,
    bound: u64,
) -> Result<Outcome<Pushout<C::Obj, C::Mor>>> {
    let (c1, d) = (cat.cod(f), cat.cod(m));
    let mut u = Universal::new(cat, bound, Side::Out, |y| {
        let a = cat.hom(&c1, y)?;
        let b = cat.hom(&d, y)?;
        Ok(matched_pairs(a.iter().map(|a| cat.compose(a, f)), b.iter().map(|b| cat.compose(b, m))))
    })?;
    for x in cat.objects(bound)? {
        u.objects_searched += 1;
        if !u.admissible(&x) {
            continue;
        }
        let hb = cat.hom(&d, &x)?;
        for a in cat.hom(&c1, &x)?.iter() {
            let af = cat.compose(a, f);
            for b in hb.iter() {
                if cat.compose(b, m) == af && u.is_universal(&x, &[a.clone(), b.clone()])? {
                    let certificate = u.certificate();
                    return Ok(Outcome::found(
                        Pushout { apex: x, m_prime: a.clone(), f_prime: b.clone() },
                        certificate,
                    ));
                }
            }
        }
    }
    Ok(Outcome::none(u.certificate()))
}

pub fn pullback<C: Category>(
    cat: &C,
    p: &C::Mor,
    f: &C::Mor,
    bound: u64,
) -> Result<Outcome<Pullback<C::Obj, C::Mor>>> {
    let (d, e1) = (cat.dom(p), cat.dom(f));
    let mut u = Universal::new(cat, bound, Side::In, |y| {
        let a = cat.hom(y, &d)?;
        let b = cat.hom(y, &e1)?;
        Ok(matched_pairs(a.iter().map(|a| cat.compose(p, a)), b.iter().map(|b| cat.compose(f, b))))
    })?;
    for x in cat.objects(bound)? {
        u.objects_searched += 1;
        if !u.admissible(&x) {
            continue;
        }
        let hb = cat.hom(&x, &e1)?;
        for a in cat.hom(&x, &d)?.iter() {
            let pa = cat.compose(p, a);
            for b in hb.iter() {
                if cat.compose(f, b) == pa && u.is_universal(&x, &[a.clone(), b.clone()])? {
                    let certificate = u.certificate();
                    return Ok(Outcome::found(
                        Pullback { apex: x, p_prime: b.clone(), f_prime: a.clone() },
                        certificate,
                    ));
                }
            }
        }
    }
    Ok(Outcome::none(u.certificate()))
}

pub fn equalizer<C: Category>(cat: &C, k1: &C::Mor, k2: &C::Mor, bound: u64) -> Result<Outcome<Cone<C::Obj, C::Mor>>> {
    let b = cat.dom(k1);
    let mut u = Universal::new(cat, bound, Side::In, |y| {
        Ok(cat.hom(y, &b)?.iter().filter(|e| cat.compose(k1, e) == cat.compose(k2, e)).count() as u128)
    })?;
    for x in cat.objects(bound)? {
        u.objects_searched += 1;
        if !u.admissible(&x) {
            continue;
        }
        for e in cat.hom(&x, &b)?.iter() {
            if cat.compose(k1, e) == cat.compose(k2, e) && u.is_universal(&x, std::slice::from_ref(e))? {
                let certificate = u.certificate();
                return Ok(Outcome::found(Cone { apex: x, map: e.clone() }, certificate));
            }
        }
    }
    Ok(Outcome::none(u.certificate()))
}

pub fn coequalizer<C: Category>(cat: &C, k1: &C::Mor, k2: &C::Mor, bound: u64) -> Result<Outcome<Cone<C::Obj, C::Mor>>> {
    let b = cat.cod(k1);
    let mut u = Universal::new(cat, bound, Side::Out, |y| {
        Ok(cat.hom(&b, y)?.iter().filter(|q| cat.compose(q, k1) == cat.compose(q, k2)).count() as u128)
    })?;
    for x in cat.objects(bound)? {
        u.objects_searched += 1;
        if !u.admissible(&x) {
            continue;
        }
        for q in cat.hom(&b, &x)?.iter() {
            if cat.compose(q, k1) == cat.compose(q, k2) && u.is_universal(&x, std::slice::from_ref(q))? {
                let certificate = u.certificate();
                return Ok(Outcome::found(Cone { apex: x, map: q.clone() }, certificate));
            }
        }
    }
    Ok(Outcome::none(u.certificate()))
}

pub fn product<C: Category>(cat: &C, a: &C::Obj, b: &C::Obj, bound: u64) -> Result<Outcome<Span<C::Obj, C::Mor>>> {
    let mut u = Universal::new(cat, bound, Side::In, |y| Ok(cat.hom_size(y, a) * cat.hom_size(y, b)))?;
    for x in cat.objects(bound)? {
        u.objects_searched += 1;
        if !u.admissible(&x) {
            continue;
        }
        let hb = cat.hom(&x, b)?;
        for p1 in cat.hom(&x, a)?.iter() {
            for p2 in hb.iter() {
                if u.is_universal(&x, &[p1.clone(), p2.clone()])? {
                    let certificate = u.certificate();
                    return Ok(Outcome::found(Span { apex: x, legs: [p1.clone(), p2.clone()] }, certificate));
                }
            }
        }
    }
    Ok(Outcome::none(u.certificate()))
}

pub fn coproduct<C: Category>(cat: &C, a: &C::Obj, b: &C::Obj, bound: u64) -> Result<Outcome<Span<C::Obj, C::Mor>>> {
    let mut u = Universal::new(cat, bound, Side::Out, |y| Ok(cat.hom_size(a, y) * cat.hom_size(b, y)))?;
    for x in cat.objects(bound)? {
        u.objects_searched += 1;
        if !u.admissible(&x) {
            continue;
        }
        let hb = cat.hom(b, &x)?;
        for i1 in cat.hom(a, &x)?.iter() {
            for i2 in hb.iter() {
                if u.is_universal(&x, &[i1.clone(), i2.clone()])? {
                    let certificate = u.certificate();
                    return Ok(Outcome::found(Span { apex: x, legs: [i1.clone(), i2.clone()] }, certificate));
                }
            }
        }
    }
    Ok(Outcome::none(u.certificate()))
}
