//! Purity of monos and epis relative to a finite suite of test objects, strong purity
//! as factorization through split morphisms, and the constructive factorizations.

pub mod factor;
pub mod regular;
pub mod stability;

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use serde_json::{json, Value};

use crate::category::Category;
use crate::error::{CatError, Result};
use crate::limits::ToJson;
use crate::orbits::{Action, Orbits, Rep};

pub use factor::{factor_square_through_split_epi, factor_square_through_split_mono, FactorizationWitness};
pub use regular::{check_regular_epi, check_regular_mono, RegularVerdict};
pub use stability::{stability_suite_pullback_pure_epis, stability_suite_pushout_pure_monos, StabilityReport};

/// All objects up to `bound` and all morphisms among them. Factorizations may pass
/// through objects up to `factor_bound`, which defaults to `bound²` so that biproducts
/// of two test objects are available.
pub struct TestSuite<'a, C: Category> {
    cat: &'a C,
    bound: u64,
    factor_bound: u64,
    objects: Vec<C::Obj>,
    pairs: Vec<(C::Obj, C::Obj)>,
    factor_objects: OnceLock<Vec<C::Obj>>,
    orbits: Orbits<'a, C>,
    reduce: bool,
}

impl<'a, C: Category> TestSuite<'a, C> {
    pub fn new(cat: &'a C, bound: u64) -> Result<Self> {
        let objects = cat.objects(bound)?;
        let mut pairs: Vec<(C::Obj, C::Obj)> =
            objects.iter().flat_map(|s| objects.iter().map(move |t| (s.clone(), t.clone()))).collect();
        // smallest counterexamples first
        let pos: HashMap<&C::Obj, usize> = objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
        pairs.sort_by_key(|(s, t)| {
            let (a, b) = (cat.size(s), cat.size(t));
            (a.max(b), a + b, pos[s], pos[t])
        });
        Ok(TestSuite {
            cat,
            bound,
            factor_bound: bound.saturating_mul(bound),
            objects,
            pairs,
            factor_objects: OnceLock::new(),
            orbits: Orbits::new(cat),
            reduce: true,
        })
    }

    pub fn with_factor_bound(mut self, factor_bound: u64) -> Self {
        self.factor_bound = factor_bound;
        self.factor_objects = OnceLock::new();
        self
    }

    /// Enumerate every test morphism instead of one per isomorphism orbit.
    pub fn without_orbit_reduction(mut self) -> Self {
        self.reduce = false;
        self
    }

    pub fn category(&self) -> &'a C {
        self.cat
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn factor_bound(&self) -> u64 {
        self.factor_bound
    }

    pub fn objects(&self) -> &[C::Obj] {
        &self.objects
    }

    pub fn orbits(&self) -> &Orbits<'a, C> {
        &self.orbits
    }

    pub fn reduced(&self) -> bool {
        self.reduce
    }

    /// Ordered pairs `(S, T)` of test objects, smallest first.
    pub fn pairs(&self) -> &[(C::Obj, C::Obj)] {
        &self.pairs
    }

    pub fn factor_objects(&self) -> Result<&[C::Obj]> {
        if self.factor_objects.get().is_none() {
            let objs = self.cat.objects(self.factor_bound)?;
            let _ = self.factor_objects.set(objs);
        }
        Ok(self.factor_objects.get().expect("initialised above"))
    }

    /// Test morphisms `s -> t`, one per orbit under `Aut(t) × Aut(s)` unless reduction is off.
    pub fn test_morphisms(&self, s: &C::Obj, t: &C::Obj) -> Result<Arc<Vec<Rep<C::Mor>>>> {
        self.orbits.reps_or_all(s, t, self.reduce.then_some(Action::Both))
    }

    pub fn test_morphism_count(&self) -> u128 {
        self.pairs.iter().map(|(s, t)| self.cat.hom_size(s, t)).sum()
    }
}

/// A commutative square from a test morphism `t: S -> T` into `m: C -> D`:
/// `m ∘ c = d ∘ t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareInto<M> {
    pub t: M,
    pub c: M,
    pub d: M,
}

/// A commutative square from a test morphism `t: T -> S` onto `p: D -> E`:
/// `p ∘ d = e ∘ t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareOnto<M> {
    pub t: M,
    pub d: M,
    pub e: M,
}

impl<M: PartialEq> SquareInto<M> {
    pub fn commutes<C: Category<Mor = M>>(&self, cat: &C, m: &M) -> bool {
        cat.cod(&self.c) == cat.dom(m)
            && cat.dom(&self.c) == cat.dom(&self.t)
            && cat.cod(&self.t) == cat.dom(&self.d)
            && cat.cod(&self.d) == cat.cod(m)
            && cat.compose(m, &self.c) == cat.compose(&self.d, &self.t)
    }
}

impl<M: PartialEq> SquareOnto<M> {
    pub fn commutes<C: Category<Mor = M>>(&self, cat: &C, p: &M) -> bool {
        cat.dom(&self.d) == cat.dom(&self.t)
            && cat.cod(&self.d) == cat.dom(p)
            && cat.cod(&self.t) == cat.dom(&self.e)
            && cat.cod(&self.e) == cat.cod(p)
            && cat.compose(p, &self.d) == cat.compose(&self.e, &self.t)
    }
}

impl<C: Category> ToJson<C> for SquareInto<C::Mor> {
    fn to_json(&self, cat: &C) -> Value {
        json!({"t": cat.mor_json(&self.t), "c": cat.mor_json(&self.c), "d": cat.mor_json(&self.d)})
    }
}

impl<C: Category> ToJson<C> for SquareOnto<C::Mor> {
    fn to_json(&self, cat: &C) -> Value {
        json!({"t": cat.mor_json(&self.t), "d": cat.mor_json(&self.d), "e": cat.mor_json(&self.e)})
    }
}

/// A morphism from a test object into `cod p` with no lift along `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unlifted<M> {
    pub e: M,
}

impl<C: Category> ToJson<C> for Unlifted<C::Mor> {
    fn to_json(&self, cat: &C) -> Value {
        json!({"e": cat.mor_json(&self.e)})
    }
}

/// Outcome of a purity check; `witness` is the first failing square.
#[derive(Clone, Debug)]
pub struct Verdict<W> {
    pub pure: bool,
    pub witness: Option<W>,
    pub squares_checked: u64,
}

impl<W> Verdict<W> {
    fn pass(squares_checked: u64) -> Self {
        Verdict { pure: true, witness: None, squares_checked }
    }

    fn fail(w: W, squares_checked: u64) -> Self {
        Verdict { pure: false, witness: Some(w), squares_checked }
    }

    pub fn report<C: Category>(&self, cat: &C, morphism: &C::Mor, suite_bound: u64) -> Value
    where
        W: ToJson<C>,
    {
        json!({
            "morphism": cat.mor_json(morphism),
            "pure": self.pure,
            "witness": self.witness.as_ref().map(|w| w.to_json(cat)),
            "suite_bound": suite_bound,
            "squares_checked": self.squares_checked,
        })
    }
}

/// Squares into `m` over one test morphism `t: S -> T`, grouped by the value `m ∘ c = d ∘ t`.
struct MonoSquares<C: Category> {
    /// `e ∘ t` for `e: T -> C`, to the first such `e`
    lifts: HashMap<C::Mor, C::Mor>,
    /// `d ∘ t` for `d: T -> D`, to every such `d` in order
    fibers: HashMap<C::Mor, Vec<C::Mor>>,
    cs: Arc<Vec<C::Mor>>,
}

impl<C: Category> MonoSquares<C> {
    fn new(cat: &C, m: &C::Mor, t: &C::Mor) -> Result<Self> {
        let (s, tt, c, d) = (cat.dom(t), cat.cod(t), cat.dom(m), cat.cod(m));
        let mut lifts = HashMap::new();
        for e in cat.hom(&tt, &c)?.iter() {
            lifts.entry(cat.compose(e, t)).or_insert_with(|| e.clone());
        }
        let mut fibers: HashMap<C::Mor, Vec<C::Mor>> = HashMap::new();
        for dd in cat.hom(&tt, &d)?.iter() {
            fibers.entry(cat.compose(dd, t)).or_default().push(dd.clone());
        }
        Ok(MonoSquares { lifts, fibers, cs: cat.hom(&s, &c)? })
    }
}

/// Lifting test: for every square `m ∘ c = d ∘ t` over the suite there is `e` with `e ∘ t = c`.
pub fn is_pure_mono<C: Category>(m: &C::Mor, tests: &TestSuite<C>) -> Result<Verdict<SquareInto<C::Mor>>> {
    let cat = tests.cat;
    let mut checked = 0u64;
    for (s, t_obj) in tests.pairs() {
        for rep in tests.test_morphisms(s, t_obj)?.iter() {
            let t = &rep.mor;
            let sq = MonoSquares::<C>::new(cat, m, t)?;
            for c in sq.cs.iter() {
                let Some(ds) = sq.fibers.get(&cat.compose(m, c)) else { continue };
                checked += ds.len() as u64;
                if !sq.lifts.contains_key(c) {
                    let w = SquareInto { t: t.clone(), c: c.clone(), d: ds[0].clone() };
                    return Ok(Verdict::fail(w, checked));
                }
            }
        }
    }
    Ok(Verdict::pass(checked))
}

/// Lifting test: every `e: S -> E` from a test object factors as `p ∘ l`.
pub fn is_pure_epi<C: Category>(p: &C::Mor, tests: &TestSuite<C>) -> Result<Verdict<Unlifted<C::Mor>>> {
    let cat = tests.cat;
    let (d, e_obj) = (cat.dom(p), cat.cod(p));
    let mut checked = 0u64;
    for s in tests.objects() {
        let img: HashSet<C::Mor> = cat.hom(s, &d)?.iter().map(|l| cat.compose(p, l)).collect();
        for e in cat.hom(s, &e_obj)?.iter() {
            checked += 1;
            if !img.contains(e) {
                return Ok(Verdict::fail(Unlifted { e: e.clone() }, checked));
            }
        }
    }
    Ok(Verdict::pass(checked))
}

/// Strong purity: every square over the suite factors through a split mono between
/// objects of size at most the factor bound.
pub fn is_strongly_pure_mono<C: Category>(
    m: &C::Mor,
    tests: &TestSuite<C>,
) -> Result<Verdict<SquareInto<C::Mor>>> {
    let cat = tests.cat;
    let mut checked = 0u64;
    for (s, t_obj) in tests.pairs() {
        for rep in tests.test_morphisms(s, t_obj)?.iter() {
            let t = &rep.mor;
            let sq = MonoSquares::<C>::new(cat, m, t)?;
            let mut builder = factor::MonoFactorizer::new(tests, m, t)?;
            for c in sq.cs.iter() {
                let Some(ds) = sq.fibers.get(&cat.compose(m, c)) else { continue };
                for d in ds {
                    checked += 1;
                    let square = SquareInto { t: t.clone(), c: c.clone(), d: d.clone() };
                    let found = match sq.lifts.get(c) {
                        None => None,
                        Some(e) => builder.factor(&square, e)?,
                    };
                    match found {
                        Some(w) => debug_assert!(w.verify_mono(cat, m, &square)),
                        None => return Ok(Verdict::fail(square, checked)),
                    }
                }
            }
        }
    }
    Ok(Verdict::pass(checked))
}

/// Strong purity for epis: every square onto `p` from a test morphism `t: T -> S`
/// factors through a split epi between objects of size at most the factor bound.
pub fn is_strongly_pure_epi<C: Category>(
    p: &C::Mor,
    tests: &TestSuite<C>,
) -> Result<Verdict<SquareOnto<C::Mor>>> {
    let cat = tests.cat;
    let (d_obj, e_obj) = (cat.dom(p), cat.cod(p));
    let mut checked = 0u64;
    for (t_obj, s) in tests.pairs() {
        let mut lifts: HashMap<C::Mor, C::Mor> = HashMap::new();
        for l in cat.hom(s, &d_obj)?.iter() {
            lifts.entry(cat.compose(p, l)).or_insert_with(|| l.clone());
        }
        let mut fibers: HashMap<C::Mor, Vec<C::Mor>> = HashMap::new();
        for d in cat.hom(t_obj, &d_obj)?.iter() {
            fibers.entry(cat.compose(p, d)).or_default().push(d.clone());
        }
        let es = cat.hom(s, &e_obj)?;
        for rep in tests.test_morphisms(t_obj, s)?.iter() {
            let t = &rep.mor;
            let mut builder = factor::EpiFactorizer::new(tests, p, t)?;
            for e in es.iter() {
                let Some(ds) = fibers.get(&cat.compose(e, t)) else { continue };
                for d in ds {
                    checked += 1;
                    let square = SquareOnto { t: t.clone(), d: d.clone(), e: e.clone() };
                    let found = match lifts.get(e) {
                        None => None,
                        Some(l) => builder.factor(&square, l)?,
                    };
                    match found {
                        Some(w) => debug_assert!(w.verify_epi(cat, p, &square)),
                        None => return Ok(Verdict::fail(square, checked)),
                    }
                }
            }
        }
    }
    Ok(Verdict::pass(checked))
}

pub(crate) fn require<C: Category>(cat: &C, ok: bool, what: &str, f: &C::Mor) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(CatError::Precondition(format!("{what}: {}", cat.mor_json(f))))
    }
}
