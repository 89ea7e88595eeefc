//! Axiom sweeps for QE-mono, QE-epi and strong QE-epi classes, retract closure, and the
//! coproduct characterization of strong QE-epi classes.

use serde::Serialize;
use serde_json::{json, Value};

use super::{AxiomVerdict, MorphismClass, QeReport, Sweep};
use crate::category::Category;
use crate::error::{CatError, Result};
use crate::limits::{Limits, ToJson};
use crate::orbits::Action;
use crate::purity::{check_regular_epi, check_regular_mono};

fn report<C: Limits>(cls: &MorphismClass<C>, orientation: &str, bound: u64, axioms: Vec<AxiomVerdict>) -> QeReport {
    QeReport {
        category: cls.category().label(),
        class: cls.descriptor().to_string(),
        orientation: orientation.to_string(),
        bound,
        axioms,
    }
}

/// Class members among `hom(a, b)` for objects within `bound`, one per orbit when allowed.
fn members<C: Limits>(cls: &MorphismClass<C>, sweep: &Sweep<C>, objs: &[C::Obj]) -> Result<Vec<C::Mor>> {
    let mut out = Vec::new();
    for a in objs {
        for b in objs {
            for f in sweep.list(a, b, Action::Both)? {
                if cls.contains(&f)? {
                    out.push(f);
                }
            }
        }
    }
    Ok(out)
}

/// Axiom (iii): identities, and composites of composable members.
fn identities_and_composition<C: Limits>(
    cls: &MorphismClass<C>,
    sweep: &Sweep<C>,
    objs: &[C::Obj],
    name: &str,
) -> Result<AxiomVerdict> {
    let cat = cls.category();
    let mut ax = AxiomVerdict::new(name);
    for a in objs {
        ax.checked += 1;
        let id = cat.id(a);
        if !cls.contains(&id)? {
            ax.fail(json!({"object": cat.obj_json(a), "identity": cat.mor_json(&id), "in_class": false}));
            return Ok(ax);
        }
    }
    for a in objs {
        for b in objs {
            for m1 in sweep.list(a, b, Action::Both)? {
                if !cls.contains(&m1)? {
                    continue;
                }
                for c in objs {
                    for m2 in sweep.list(b, c, Action::Left)? {
                        if !cls.contains(&m2)? {
                            continue;
                        }
                        ax.checked += 1;
                        let k = cat.compose(&m2, &m1);
                        if !cls.contains(&k)? {
                            ax.fail(json!({
                                "first": cat.mor_json(&m1),
                                "second": cat.mor_json(&m2),
                                "composite": cat.mor_json(&k),
                                "in_class": false,
                            }));
                            return Ok(ax);
                        }
                    }
                }
            }
        }
    }
    Ok(ax)
}

/// Axioms (i) to (iii) for a class of monomorphisms, each swept within `bound` and
/// stopped at its first counterexample.
pub fn validate_qe_mono<C: Limits>(cls: &MorphismClass<C>, bound: u64) -> Result<QeReport> {
    let cat = cls.category();
    let objs = cat.objects(bound)?;
    let sweep = Sweep::new(cat, cls.descriptor().iso_invariant());
    let ms = members(cls, &sweep, &objs)?;

    let mut i = AxiomVerdict::new("i");
    'i: for m in &ms {
        let c = cat.dom(m);
        for c2 in &objs {
            for f in sweep.list(&c, c2, Action::Left)? {
                i.checked += 1;
                let out = cat.pushout(&f, m, bound)?;
                match &out.witness {
                    None => {
                        i.fail(json!({
                            "m": cat.mor_json(m),
                            "f": cat.mor_json(&f),
                            "pushout": Value::Null,
                            "certificate": out.certificate,
                        }));
                        break 'i;
                    }
                    Some(po) if !cls.contains(&po.m_prime)? => {
                        i.fail(json!({
                            "m": cat.mor_json(m),
                            "f": cat.mor_json(&f),
                            "pushout": po.to_json(cat),
                            "in_class": false,
                        }));
                        break 'i;
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let mut ii = AxiomVerdict::new("ii");
    for m in &ms {
        ii.checked += 1;
        match check_regular_mono(cat, m, bound) {
            Ok(v) if v.regular => {}
            Ok(v) => {
                ii.fail(json!({"m": cat.mor_json(m), "regular": v.to_json(cat)}));
                break;
            }
            Err(CatError::Missing(what)) => {
                ii.fail(json!({"m": cat.mor_json(m), "missing": what}));
                break;
            }
            Err(e) => return Err(e),
        }
    }

    let iii = identities_and_composition(cls, &sweep, &objs, "iii")?;
    Ok(report(cls, "mono", bound, vec![i, ii, iii]))
}

/// Axioms (i*) to (iii*): pullbacks, coequalizers of kernel pairs, identities and composites.
pub fn validate_qe_epi<C: Limits>(cls: &MorphismClass<C>, bound: u64) -> Result<QeReport> {
    let cat = cls.category();
    let objs = cat.objects(bound)?;
    let sweep = Sweep::new(cat, cls.descriptor().iso_invariant());
    let ps = members(cls, &sweep, &objs)?;

    let mut i = AxiomVerdict::new("i*");
    'i: for p in &ps {
        let e = cat.cod(p);
        for e2 in &objs {
            for f in sweep.list(e2, &e, Action::Right)? {
                i.checked += 1;
                let out = cat.pullback(p, &f, bound)?;
                match &out.witness {
                    None => {
                        i.fail(json!({
                            "p": cat.mor_json(p),
                            "f": cat.mor_json(&f),
                            "pullback": Value::Null,
                            "certificate": out.certificate,
                        }));
                        break 'i;
                    }
                    Some(pb) if !cls.contains(&pb.p_prime)? => {
                        i.fail(json!({
                            "p": cat.mor_json(p),
                            "f": cat.mor_json(&f),
                            "pullback": pb.to_json(cat),
                            "in_class": false,
                        }));
                        break 'i;
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let mut ii = AxiomVerdict::new("ii*");
    for p in &ps {
        ii.checked += 1;
        match check_regular_epi(cat, p, bound) {
            Ok(v) if v.regular => {}
            Ok(v) => {
                ii.fail(json!({"p": cat.mor_json(p), "regular": v.to_json(cat)}));
                break;
            }
            Err(CatError::Missing(what)) => {
                ii.fail(json!({"p": cat.mor_json(p), "missing": what}));
                break;
            }
            Err(e) => return Err(e),
        }
    }

    let iii = identities_and_composition(cls, &sweep, &objs, "iii*")?;
    Ok(report(cls, "epi", bound, vec![i, ii, iii]))
}

/// Axiom (iv*): whenever `p ∘ q` is in the class, so is `p`. Only `p` outside the class
/// can fail, so those are the ones swept.
fn right_factor<C: Limits>(cls: &MorphismClass<C>, sweep: &Sweep<C>, objs: &[C::Obj]) -> Result<AxiomVerdict> {
    let cat = cls.category();
    let mut ax = AxiomVerdict::new("iv*");
    for b in objs {
        for c in objs {
            for p in sweep.list(b, c, Action::Both)? {
                if cls.contains(&p)? {
                    continue;
                }
                for a in objs {
                    for q in sweep.list(a, b, Action::Right)? {
                        ax.checked += 1;
                        let pq = cat.compose(&p, &q);
                        if cls.contains(&pq)? {
                            ax.fail(json!({
                                "p": cat.mor_json(&p),
                                "q": cat.mor_json(&q),
                                "composite": cat.mor_json(&pq),
                                "composite_in_class": true,
                                "p_in_class": false,
                            }));
                            return Ok(ax);
                        }
                    }
                }
            }
        }
    }
    Ok(ax)
}

/// The QE-epi axioms followed by (iv*). (iv*) is swept even when an earlier axiom fails,
/// so the report always carries all four verdicts.
pub fn validate_strong_qe_epi<C: Limits>(cls: &MorphismClass<C>, bound: u64) -> Result<QeReport> {
    let cat = cls.category();
    let mut rep = validate_qe_epi(cls, bound)?;
    let objs = cat.objects(bound)?;
    let sweep = Sweep::new(cat, cls.descriptor().iso_invariant());
    rep.axioms.push(right_factor(cls, &sweep, &objs)?);
    rep.orientation = "strong-epi".into();
    Ok(rep)
}

/// `q: D -> E` as a retract of `p: B -> C` in the arrow category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractDiagram<M> {
    pub q: M,
    pub p: M,
    pub i_dom: M,
    pub s_dom: M,
    pub i_cod: M,
    pub s_cod: M,
}

impl<M: Clone + PartialEq> RetractDiagram<M> {
    /// `s ∘ i = id` at both ends and both squares commute.
    pub fn commutes<C: Category<Mor = M>>(&self, cat: &C) -> bool {
        let (d, e) = (cat.dom(&self.q), cat.cod(&self.q));
        cat.compose(&self.s_dom, &self.i_dom) == cat.id(&d)
            && cat.compose(&self.s_cod, &self.i_cod) == cat.id(&e)
            && cat.compose(&self.p, &self.i_dom) == cat.compose(&self.i_cod, &self.q)
            && cat.compose(&self.q, &self.s_dom) == cat.compose(&self.s_cod, &self.p)
    }
}

impl<C: Category> ToJson<C> for RetractDiagram<C::Mor> {
    fn to_json(&self, cat: &C) -> Value {
        json!({
            "q": cat.mor_json(&self.q),
            "p": cat.mor_json(&self.p),
            "i_dom": cat.mor_json(&self.i_dom),
            "s_dom": cat.mor_json(&self.s_dom),
            "i_cod": cat.mor_json(&self.i_cod),
            "s_cod": cat.mor_json(&self.s_cod),
        })
    }
}

#[derive(Clone, Debug)]
pub struct RetractVerdict<M> {
    pub closed: bool,
    pub bound: u64,
    pub checked: u64,
    /// `q` outside the class, retract of `p` inside it.
    pub witness: Option<RetractDiagram<M>>,
}

impl<M: Clone + PartialEq> RetractVerdict<M> {
    pub fn to_axiom<C: Category<Mor = M>>(&self, cat: &C) -> AxiomVerdict {
        AxiomVerdict {
            name: "retract-closed".into(),
            passed: self.closed,
            checked: self.checked,
            witness: self.witness.as_ref().map(|w| {
                let mut v = w.to_json(cat);
                v["commutes"] = json!(w.commutes(cat));
                v
            }),
        }
    }

    pub fn to_json<C: Category<Mor = M>>(&self, cat: &C) -> Value {
        let mut v = serde_json::to_value(self.to_axiom(cat)).expect("verdict serializes");
        v["bound"] = json!(self.bound);
        v
    }
}

/// Sweeps retract diagrams whose objects have size at most `bound`.
///
/// In an additive category with an iso-invariant class every retract diagram is, up to
/// isomorphism, `q` sitting inside `p = q ⊕ z` via the biproduct injections and
/// projections, so it suffices to range over `q ∉ cls` and complements `z`. Otherwise the
/// sweep runs over `p ∈ cls` and every pair of split monos into its ends.
pub fn check_retract_closed<C: Limits>(cls: &MorphismClass<C>, bound: u64) -> Result<RetractVerdict<C::Mor>> {
    let cat = cls.category();
    let objs = cat.objects(bound)?;
    let additive = objs.first().is_some_and(|a| cat.add(&cat.id(a), &cat.id(a)).is_some());
    let mut v = RetractVerdict { closed: true, bound, checked: 0, witness: None };
    let found = if additive && cls.descriptor().iso_invariant() {
        retracts_additive(cls, &objs, bound, &mut v.checked)?
    } else {
        retracts_generic(cls, &objs, &mut v.checked)?
    };
    if let Some(w) = found {
        if !w.commutes(cat) {
            return Err(CatError::Internal("retract witness does not commute".into()));
        }
        v.closed = false;
        v.witness = Some(w);
    }
    Ok(v)
}

pub(crate) fn retracts_additive<C: Limits>(
    cls: &MorphismClass<C>,
    objs: &[C::Obj],
    bound: u64,
    checked: &mut u64,
) -> Result<Option<RetractDiagram<C::Mor>>> {
    let cat = cls.category();
    let sweep = Sweep::new(cat, true);
    let add = |f: &C::Mor, g: &C::Mor| cat.add(f, g).ok_or_else(|| CatError::Internal("addition failed".into()));
    for d in objs {
        for e in objs {
            for q in sweep.list(d, e, Action::Both)? {
                if cls.contains(&q)? {
                    continue;
                }
                for d2 in objs {
                    if cat.size(d).saturating_mul(cat.size(d2)) > bound {
                        continue;
                    }
                    let Some(bd) = cat.biproduct(d, d2) else { continue };
                    let bd = bd?;
                    for e2 in objs {
                        if cat.size(e).saturating_mul(cat.size(e2)) > bound {
                            continue;
                        }
                        let Some(be) = cat.biproduct(e, e2) else { continue };
                        let be = be?;
                        let head = cat.compose(&be.inj[0], &cat.compose(&q, &bd.proj[0]));
                        for z in sweep.list(d2, e2, Action::Both)? {
                            *checked += 1;
                            let p = add(&head, &cat.compose(&be.inj[1], &cat.compose(&z, &bd.proj[1])))?;
                            if cls.contains(&p)? {
                                return Ok(Some(RetractDiagram {
                                    q,
                                    p,
                                    i_dom: bd.inj[0].clone(),
                                    s_dom: bd.proj[0].clone(),
                                    i_cod: be.inj[0].clone(),
                                    s_cod: be.proj[0].clone(),
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// All `(i, s)` with `s ∘ i = id_x`, `i: x -> y`.
fn split_pairs<C: Category>(cat: &C, x: &C::Obj, y: &C::Obj) -> Result<Vec<(C::Mor, C::Mor)>> {
    let idx = cat.id(x);
    let back = cat.hom(y, x)?;
    let mut out = Vec::new();
    for i in cat.hom(x, y)?.iter() {
        for s in back.iter() {
            if cat.compose(s, i) == idx {
                out.push((i.clone(), s.clone()));
            }
        }
    }
    Ok(out)
}

pub(crate) fn retracts_generic<C: Limits>(
    cls: &MorphismClass<C>,
    objs: &[C::Obj],
    checked: &mut u64,
) -> Result<Option<RetractDiagram<C::Mor>>> {
    let cat = cls.category();
    for b in objs {
        for c in objs {
            for p in cat.hom(b, c)?.iter() {
                if !cls.contains(p)? {
                    continue;
                }
                for d in objs {
                    let doms = split_pairs(cat, d, b)?;
                    if doms.is_empty() {
                        continue;
                    }
                    for e in objs {
                        let cods = split_pairs(cat, e, c)?;
                        for (i_dom, s_dom) in &doms {
                            for (i_cod, s_cod) in &cods {
                                *checked += 1;
                                // q is forced: q = q ∘ s_dom ∘ i_dom = s_cod ∘ p ∘ i_dom.
                                let q = cat.compose(s_cod, &cat.compose(p, i_dom));
                                let w = RetractDiagram {
                                    q,
                                    p: p.clone(),
                                    i_dom: i_dom.clone(),
                                    s_dom: s_dom.clone(),
                                    i_cod: i_cod.clone(),
                                    s_cod: s_cod.clone(),
                                };
                                if w.commutes(cat) && !cls.contains(&w.q)? {
                                    return Ok(Some(w));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Condition (2) of the characterization: for `p: A -> C` in the class and any
/// `f: B -> C`, the copairing `(p, f): A ⊔ B -> C` is in the class.
fn coproduct_condition<C: Limits>(
    cls: &MorphismClass<C>,
    sweep: &Sweep<C>,
    objs: &[C::Obj],
    bound: u64,
) -> Result<AxiomVerdict> {
    let cat = cls.category();
    let mut ax = AxiomVerdict::new("coproduct");
    for a in objs {
        for c in objs {
            for p in sweep.list(a, c, Action::Both)? {
                if !cls.contains(&p)? {
                    continue;
                }
                for b in objs {
                    let cop = cat.coproduct(a, b, bound)?.witness.ok_or_else(|| {
                        CatError::Missing(format!("coproduct of {} and {}", cat.obj_json(a), cat.obj_json(b)))
                    })?;
                    for f in sweep.list(b, c, Action::Right)? {
                        ax.checked += 1;
                        let pf = cat.copair(&cop, &p, &f)?;
                        if !cls.contains(&pf)? {
                            ax.fail(json!({
                                "p": cat.mor_json(&p),
                                "f": cat.mor_json(&f),
                                "coproduct": cop.to_json(cat),
                                "copairing": cat.mor_json(&pf),
                                "in_class": false,
                            }));
                            return Ok(ax);
                        }
                    }
                }
            }
        }
    }
    Ok(ax)
}

/// Both sides of the coproduct characterization of strong QE-epi classes.
///
/// The characterization presupposes a QE-epi class, so its left side is axiom (iv*) and
/// the QE-epi verdict is reported next to it as the hypothesis.
#[derive(Clone, Debug, Serialize)]
pub struct Characterization {
    pub category: String,
    pub class: String,
    pub bound: u64,
    pub qe_epi: QeReport,
    pub right_factor: AxiomVerdict,
    pub retract_closed: AxiomVerdict,
    pub coproduct: AxiomVerdict,
}

impl Characterization {
    pub fn left(&self) -> bool {
        self.right_factor.passed
    }

    pub fn right(&self) -> bool {
        self.retract_closed.passed && self.coproduct.passed
    }

    pub fn consistent(&self) -> bool {
        self.left() == self.right()
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("characterization serializes");
        v["qe_epi"] = self.qe_epi.to_json();
        v["strong"] = json!(self.qe_epi.passed() && self.left());
        v["left"] = json!(self.left());
        v["right"] = json!(self.right());
        v["consistent"] = json!(self.consistent());
        v["passed"] = json!(self.consistent());
        v
    }
}

pub fn check_strong_characterization<C: Limits>(cls: &MorphismClass<C>, bound: u64) -> Result<Characterization> {
    let cat = cls.category();
    let objs = cat.objects(bound)?;
    let sweep = Sweep::new(cat, cls.descriptor().iso_invariant());
    Ok(Characterization {
        category: cat.label(),
        class: cls.descriptor().to_string(),
        bound,
        qe_epi: validate_qe_epi(cls, bound)?,
        right_factor: right_factor(cls, &sweep, &objs)?,
        retract_closed: check_retract_closed(cls, bound)?.to_axiom(cat),
        coproduct: coproduct_condition(cls, &sweep, &objs, bound)?,
    })
}
