//! The `verify-paper` replay suite: a fixed registry of checks, each tied to a
//! descriptive anchor listed in `docs/anchors.md`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use catpure::category::Category;
use catpure::dirsys::{generate_split_corpus, verify_colimit_purity, verify_colimit_purity_epi};
use catpure::limits::oracle::compare_formula_with_search;
use catpure::limits::{
    vw, vwck_construct_via_product, vwck_search, vwsp_construct_via_coproduct, vwsp_search, Certificate, Limits,
    ToJson, VwspInput,
};
use catpure::orbits::Action;
use catpure::purity::{
    check_regular_epi, check_regular_mono, factor_square_through_split_epi, factor_square_through_split_mono,
    is_pure_epi, is_pure_mono, stability_suite_pullback_pure_epis, stability_suite_pushout_pure_monos, SquareInto,
    SquareOnto, TestSuite,
};
use catpure::qe::{
    check_retract_closed, check_strong_characterization, extract_m_sequence, extract_p_sequence, limclass_membership,
    validate_qe_epi, validate_qe_mono, validate_strong_qe_epi, ClassDescriptor, MorphismClass, Orientation,
};
use catpure::{CatError, ModCategory, ModMorphism, ModObject, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::SuiteConfig;
use crate::input::Failure;

pub struct Ctx {
    pub cfg: SuiteConfig,
    pub capped: ModCategory,
    pub finvect: ModCategory,
    pub finmod: ModCategory,
}

impl Ctx {
    pub fn new(cfg: SuiteConfig) -> Result<Self> {
        let c = &cfg.categories;
        Ok(Ctx {
            capped: ModCategory::from_descriptor(c.capped)?,
            finvect: ModCategory::from_descriptor(c.finvect)?,
            finmod: ModCategory::from_descriptor(c.finmod)?,
            cfg,
        })
    }
}

pub struct Outcome {
    pub passed: bool,
    pub detail: Value,
}

pub struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    pub run: fn(&Ctx) -> Result<Outcome>,
}

pub const CHECKS: &[Check] = &[
    Check { id: "vwck-counterexample", anchor: "capped line category lacks a very weak cokernel pair", run: vwck_counterexample },
    Check { id: "vwsp-counterexample", anchor: "capped line category lacks a very weak split pullback", run: vwsp_counterexample },
    Check { id: "pushout-failure-capped", anchor: "capped line category lacks a pushout of zero injections", run: pushout_failure_capped },
    Check { id: "vwck-product", anchor: "very weak cokernel pairs built from products", run: vwck_product },
    Check { id: "vwsp-coproduct", anchor: "very weak split pullbacks built from coproducts", run: vwsp_coproduct },
    Check { id: "purity-examples", anchor: "pure and impure maps of Z/4-modules", run: purity_examples },
    Check { id: "pure-iff-split", anchor: "pure maps between finite modules split", run: pure_iff_split },
    Check { id: "factorization-mono", anchor: "squares into a pure mono factor through a split mono", run: factorization_mono },
    Check { id: "factorization-epi", anchor: "squares onto a pure epi factor through a split epi", run: factorization_epi },
    Check { id: "regular-split", anchor: "split monos and split epis are regular", run: regular_split },
    Check { id: "stability-pushout", anchor: "pushouts preserve strongly pure monos", run: stability_pushout },
    Check { id: "stability-pullback", anchor: "pullbacks preserve strongly pure epis", run: stability_pullback },
    Check { id: "coker-div-qe-mono", anchor: "cokernel-length divisibility is QE-mono but not retract closed", run: coker_div_qe_mono },
    Check { id: "ker-div-qe-epi", anchor: "kernel-length divisibility is QE-epi but not retract closed", run: ker_div_qe_epi },
    Check { id: "split-mono-capped-pushout", anchor: "split monos of the capped line category lack pushouts", run: split_mono_capped_pushout },
    Check { id: "strong-characterization", anchor: "strong QE-epi classes are retract closed with the coproduct condition", run: strong_characterization },
    Check { id: "chain-colimit-purity", anchor: "chain colimits of levelwise split maps are pure", run: chain_colimit_purity },
    Check { id: "colimit-oracle", anchor: "formula limits agree with exhaustive search", run: colimit_oracle },
    Check { id: "m-sequence", anchor: "cokernel and kernel pairs of class members", run: m_sequence },
    Check { id: "membership", anchor: "square-filling closures of split classes versus purity", run: membership },
];

#[derive(Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub anchor: &'static str,
    pub passed: bool,
    pub detail: Value,
    pub wall_ms: u64,
    #[serde(skip)]
    pub cap_exceeded: bool,
}

#[derive(Serialize)]
pub struct SuiteResult {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: Value,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteResult {
    /// 0 pass, 3 when a check hit the enumeration cap, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else if self.checks.iter().any(|c| c.cap_exceeded) {
            3
        } else {
            1
        }
    }
}

fn run_one(ctx: &Ctx, check: &Check) -> CheckResult {
    let start = Instant::now();
    let (passed, detail, cap_exceeded) = match (check.run)(ctx) {
        Ok(o) => (o.passed, o.detail, false),
        Err(e) => (false, json!({"error": e.to_string()}), e.is_cap()),
    };
    CheckResult { id: check.id, anchor: check.anchor, passed, detail, wall_ms: start.elapsed().as_millis() as u64, cap_exceeded }
}

/// Runs the selected checks on `jobs` threads; results keep registry order.
pub fn run(cfg: SuiteConfig, only: &[String], jobs: usize) -> std::result::Result<SuiteResult, Failure> {
    for id in only {
        if !CHECKS.iter().any(|c| c.id == id) {
            return Err(Failure::usage(format!("unknown check id `{id}`")));
        }
    }
    let selected: Vec<&Check> = CHECKS.iter().filter(|c| only.is_empty() || only.iter().any(|o| o == c.id)).collect();
    let config = json!({"suite": cfg, "only": only});
    let ctx = Ctx::new(cfg)?;
    let slots: Vec<Mutex<Option<CheckResult>>> = selected.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, selected.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(check) = selected.get(i) else { break };
                *slots[i].lock().expect("result slot") = Some(run_one(&ctx, check));
            });
        }
    });
    let checks: Vec<CheckResult> =
        slots.into_iter().map(|m| m.into_inner().expect("result slot").expect("every check ran")).collect();
    let passed = checks.iter().all(|c| c.passed);
    Ok(SuiteResult { tool: "catpure", version: env!("CARGO_PKG_VERSION"), config, checks, passed })
}

fn obj(cat: &ModCategory, factors: &[u32]) -> Result<ModObject> {
    cat.object(factors)
}

fn exhaustive_within(cert: &Certificate, max_morphisms: u128) -> bool {
    matches!(cert, Certificate::Exhaustive { morphisms_in_scope, .. } if *morphisms_in_scope <= max_morphisms)
}

/// `f: 0 -> F`, `c1 = 0`, `c2 = id` on the line `F`.
fn vwck_example(cat: &ModCategory) -> Result<[ModMorphism; 3]> {
    let line = obj(cat, &[cat.modulus()])?;
    Ok([
        ModMorphism::zero(&obj(cat, &[])?, &line),
        ModMorphism::zero(&line, &line),
        ModMorphism::identity(&line),
    ])
}

fn vwsp_example(cat: &ModCategory) -> Result<VwspInput<ModMorphism>> {
    let (zero, line) = (obj(cat, &[])?, obj(cat, &[cat.modulus()])?);
    Ok(VwspInput {
        f: ModMorphism::zero(&line, &zero),
        g: ModMorphism::zero(&line, &zero),
        h: ModMorphism::zero(&line, &line),
        q_b: ModMorphism::identity(&line),
        q_c: ModMorphism::zero(&line, &line),
    })
}

fn vwck_counterexample(ctx: &Ctx) -> Result<Outcome> {
    let c = &ctx.capped;
    let [f, c1, c2] = vwck_example(c)?;
    let out = vwck_search(c, &f, &c1, &c2, u64::MAX)?;
    Ok(Outcome { passed: out.witness.is_none() && exhaustive_within(&out.certificate, 6), detail: out.to_json(c) })
}

fn vwsp_counterexample(ctx: &Ctx) -> Result<Outcome> {
    let c = &ctx.capped;
    let out = vwsp_search(c, &vwsp_example(c)?, u64::MAX)?;
    Ok(Outcome { passed: out.witness.is_none() && exhaustive_within(&out.certificate, 6), detail: out.to_json(c) })
}

fn pushout_failure_capped(ctx: &Ctx) -> Result<Outcome> {
    let c = &ctx.capped;
    let [f, _, _] = vwck_example(c)?;
    let out = c.pushout(&f, &f, u64::MAX)?;
    Ok(Outcome { passed: out.witness.is_none() && exhaustive_within(&out.certificate, 6), detail: out.to_json(c) })
}

/// Every `f: A -> B`, `c1, c2: B -> C` with `c1 f = c2 f` on objects up to `oracle_diagram`.
fn vwck_product(ctx: &Ctx) -> Result<Outcome> {
    let cat = &ctx.finvect;
    let objs = cat.objects(ctx.cfg.bounds.oracle_diagram)?;
    let mut instances = 0u64;
    for a in &objs {
        for b in &objs {
            for c in &objs {
                let cs = cat.hom(b, c)?;
                for f in cat.hom(a, b)?.iter() {
                    for c1 in cs.iter() {
                        let c1f = cat.compose(c1, f);
                        for c2 in cs.iter().filter(|c2| cat.compose(c2, f) == c1f) {
                            let w = vwck_construct_via_product(cat, f, c1, c2, u64::MAX)?;
                            if !vw::verify_vwck(cat, f, c1, c2, &w) {
                                return Ok(Outcome { passed: false, detail: json!({"instances": instances, "failure": w.to_json(cat)}) });
                            }
                            instances += 1;
                        }
                    }
                }
            }
        }
    }
    let [f, c1, c2] = vwck_example(cat)?;
    let example = vwck_construct_via_product(cat, &f, &c1, &c2, u64::MAX)?;
    Ok(Outcome { passed: true, detail: json!({"instances": instances, "example": example.to_json(cat)}) })
}

/// Every cospan `f: B -> A`, `g = f h` with a cone `(q_b, q_c)` on objects up to `oracle_diagram`.
fn vwsp_coproduct(ctx: &Ctx) -> Result<Outcome> {
    let cat = &ctx.finmod;
    let objs = cat.objects(ctx.cfg.bounds.oracle_diagram)?;
    let mut instances = 0u64;
    for a in &objs {
        for b in &objs {
            for c in &objs {
                for f in cat.hom(b, a)?.iter() {
                    for h in cat.hom(c, b)?.iter() {
                        let g = cat.compose(f, h);
                        for q in &objs {
                            let qcs = cat.hom(q, c)?;
                            for q_b in cat.hom(q, b)?.iter() {
                                let fq = cat.compose(f, q_b);
                                for q_c in qcs.iter().filter(|q_c| cat.compose(&g, q_c) == fq) {
                                    let input =
                                        VwspInput { f: f.clone(), g: g.clone(), h: h.clone(), q_b: q_b.clone(), q_c: q_c.clone() };
                                    let w = vwsp_construct_via_coproduct(cat, &input, u64::MAX)?;
                                    if !vw::verify_vwsp(cat, &input, &w) {
                                        return Ok(Outcome {
                                            passed: false,
                                            detail: json!({"instances": instances, "failure": w.to_json(cat)}),
                                        });
                                    }
                                    instances += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let example = vwsp_construct_via_coproduct(cat, &vwsp_example(cat)?, u64::MAX)?;
    Ok(Outcome { passed: true, detail: json!({"instances": instances, "example": example.to_json(cat)}) })
}

fn require_z4(cat: &ModCategory) -> Result<()> {
    if cat.modulus() != 4 {
        return Err(CatError::Precondition("the purity examples live over Z/4".into()));
    }
    Ok(())
}

fn purity_examples(ctx: &Ctx) -> Result<Outcome> {
    let cat = &ctx.finmod;
    require_z4(cat)?;
    let tests = TestSuite::new(cat, ctx.cfg.bounds.suite)?;
    let doubling = cat.morphism(&[2], &[4], &[vec![2]])?;
    let inclusion = cat.morphism(&[2], &[2, 4], &[vec![1], vec![0]])?;
    let reduction = cat.morphism(&[4], &[2], &[vec![1]])?;
    let projection = cat.morphism(&[2, 4], &[4], &[vec![0, 1]])?;
    let mut rows = Vec::new();
    let mut passed = true;
    for (name, m, want) in [("doubling", &doubling, false), ("summand inclusion", &inclusion, true)] {
        let v = is_pure_mono(m, &tests)?;
        passed &= v.pure == want && (v.pure || v.witness.as_ref().is_some_and(|w| w.commutes(cat, m)));
        rows.push(json!({"name": name, "expected": want, "report": v.report(cat, m, tests.bound())}));
    }
    for (name, p, want) in [("reduction", &reduction, false), ("summand projection", &projection, true)] {
        let v = is_pure_epi(p, &tests)?;
        passed &= v.pure == want;
        rows.push(json!({"name": name, "expected": want, "report": v.report(cat, p, tests.bound())}));
    }
    Ok(Outcome { passed, detail: json!({"examples": rows}) })
}

fn pure_iff_split(ctx: &Ctx) -> Result<Outcome> {
    let cat = &ctx.finmod;
    let bound = ctx.cfg.bounds.suite;
    let tests = TestSuite::new(cat, bound)?;
    let objs = cat.objects(bound)?;
    let (mut monos, mut epis) = (0u64, 0u64);
    let mut discrepancies = Vec::new();
    for a in &objs {
        for b in &objs {
            for f in tests.orbits().reps(a, b, Action::Both)?.iter().map(|r| &r.mor) {
                if f.is_injective() {
                    monos += 1;
                    let pure = is_pure_mono(f, &tests)?.pure;
                    if pure != cat.find_retraction(f)?.is_some() {
                        discrepancies.push(json!({"mono": cat.mor_json(f), "pure": pure}));
                    }
                }
                if f.is_surjective() {
                    epis += 1;
                    let pure = is_pure_epi(f, &tests)?.pure;
                    if pure != cat.find_section(f)?.is_some() {
                        discrepancies.push(json!({"epi": cat.mor_json(f), "pure": pure}));
                    }
                }
            }
        }
    }
    Ok(Outcome {
        passed: discrepancies.is_empty(),
        detail: json!({"bound": bound, "mono_orbits": monos, "epi_orbits": epis, "discrepancies": discrepancies}),
    })
}

/// Per-morphism share of the square budget, so that the sample covers many maps.
const SQUARES_PER_MAP: usize = 12;

/// Up to `max` commutative squares `m c = d t` over the suite.
fn squares_into(cat: &ModCategory, tests: &TestSuite<ModCategory>, m: &ModMorphism, max: usize) -> Result<Vec<SquareInto<ModMorphism>>> {
    let (a, b) = (m.dom().clone(), m.cod().clone());
    let mut out = Vec::new();
    for (s, t_obj) in tests.pairs() {
        for t in tests.test_morphisms(s, t_obj)?.iter().map(|r| &r.mor) {
            for c in cat.hom(s, &a)?.iter() {
                let mc = cat.compose(m, c);
                for d in cat.hom(t_obj, &b)?.iter().filter(|d| cat.compose(d, t) == mc) {
                    out.push(SquareInto { t: t.clone(), c: c.clone(), d: d.clone() });
                    if out.len() >= max {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Up to `max` commutative squares `p d = e t` over the suite.
fn squares_onto(cat: &ModCategory, tests: &TestSuite<ModCategory>, p: &ModMorphism, max: usize) -> Result<Vec<SquareOnto<ModMorphism>>> {
    let (d_obj, e_obj) = (p.dom().clone(), p.cod().clone());
    let mut out = Vec::new();
    for (t_obj, s) in tests.pairs() {
        for t in tests.test_morphisms(t_obj, s)?.iter().map(|r| &r.mor) {
            for e in cat.hom(s, &e_obj)?.iter() {
                let et = cat.compose(e, t);
                for d in cat.hom(t_obj, &d_obj)?.iter().filter(|d| cat.compose(p, d) == et) {
                    out.push(SquareOnto { t: t.clone(), d: d.clone(), e: e.clone() });
                    if out.len() >= max {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn factorization_mono(ctx: &Ctx) -> Result<Outcome> {
    let cat = &ctx.finmod;
    let limit = ctx.cfg.bounds.factorization_squares;
    let tests = TestSuite::new(cat, ctx.cfg.bounds.suite)?;
    let objs = tests.objects().to_vec();
    let (mut squares, mut maps) = (0u64, 0u64);
    for a in &objs {
        for b in &objs {
            for m in tests.orbits().reps(a, b, Action::Both)?.iter().map(|r| &r.mor) {
                if squares >= limit || !m.is_injective() || !is_pure_mono(m, &tests)?.pure {
                    continue;
                }
                maps += 1;
                for sq in squares_into(cat, &tests, m, SQUARES_PER_MAP)? {
                    let w = factor_square_through_split_mono(cat, m, &sq)?;
                    if !w.verify_mono(cat, m, &sq) {
                        let detail = json!({"m": cat.mor_json(m), "square": sq.to_json(cat), "witness": w.to_json(cat)});
                        return Ok(Outcome { passed: false, detail });
                    }
                    squares += 1;
                }
            }
        }
    }
    Ok(Outcome { passed: squares >= 100, detail: json!({"maps": maps, "squares": squares, "failures": 0}) })
}

fn factorization_epi(ctx: &Ctx) -> Result<Outcome> {
    let cat = &ctx.finmod;
    let limit = ctx.cfg.bounds.factorization_squares;
    let tests = TestSuite::new(cat, ctx.cfg.bounds.suite)?;
    let objs = tests.objects().to_vec();
    let (mut squares, mut maps) = (0u64, 0u64);
    for d in &objs {
        for e in &objs {
            for p in tests.orbits().reps(d, e, Action::Both)?.iter().map(|r| &r.mor) {
                if squares >= limit || !p.is_surjective() || !is_pure_epi(p, &tests)?.pure {
                    continue;
                }
                maps += 1;
                for sq in squares_onto(cat, &tests, p, SQUARES_PER_MAP)? {
                    let w = factor_square_through_split_epi(cat, p, &sq)?;
                    if !w.verify_epi(cat, p, &sq) {
                        let detail = json!({"p": cat.mor_json(p), "square": sq.to_json(cat), "witness": w.to_json(cat)});
                        return Ok(Outcome { passed: false, detail });
                    }
                    squares += 1;
                }
            }
        }
    }
    Ok(Outcome { passed: squares >= 100, detail: json!({"maps": maps, "squares": squares, "failures": 0}) })
}

fn regular_split_in(cat: &ModCategory, bound: u64) -> Result<Value> {
    let objs = cat.objects(bound)?;
    let tests = TestSuite::new(cat, bound)?;
    let (mut monos, mut epis) = (0u64, 0u64);
    let mut failures = Vec::new();
    for a in &objs {
        for b in &objs {
            for f in tests.orbits().reps(a, b, Action::Both)?.iter().map(|r| &r.mor) {
                if cat.find_retraction(f)?.is_some() {
                    monos += 1;
                    let v = check_regular_mono(cat, f, bound)?;
                    if !v.regular {
                        failures.push(json!({"split_mono": cat.mor_json(f), "verdict": v.to_json(cat)}));
                    }
                }
                if cat.find_section(f)?.is_some() {
                    epis += 1;
                    let v = check_regular_epi(cat, f, bound)?;
                    if !v.regular {
                        failures.push(json!({"split_epi": cat.mor_json(f), "verdict": v.to_json(cat)}));
                    }
                }
            }
        }
    }
    Ok(json!({"category": cat.label(), "bound": bound, "split_monos": monos, "split_epis": epis, "failures": failures}))
}

fn regular_split(ctx: &Ctx) -> Result<Outcome> {
    let rows = [
        regular_split_in(&ctx.finmod, ctx.finmod.horizon())?,
        regular_split_in(&ctx.finvect, ctx.finvect.horizon())?,
    ];
    let passed = rows.iter().all(|r| r["failures"].as_array().is_some_and(|f| f.is_empty()));
    Ok(Outcome { passed, detail: json!(rows) })
}

fn stability_pushout(ctx: &Ctx) -> Result<Outcome> {
    let b = &ctx.cfg.bounds;
    let tests = TestSuite::new(&ctx.finmod, b.stability_suite)?;
    let r = stability_suite_pushout_pure_monos(&ctx.finmod, &tests, b.stability_span)?;
    Ok(Outcome { passed: r.passed() && r.sources > 0, detail: json!(r) })
}

fn stability_pullback(ctx: &Ctx) -> Result<Outcome> {
    let b = &ctx.cfg.bounds;
    let tests = TestSuite::new(&ctx.finmod, b.stability_suite)?;
    let r = stability_suite_pullback_pure_epis(&ctx.finmod, &tests, b.stability_span)?;
    Ok(Outcome { passed: r.passed() && r.sources > 0, detail: json!(r) })
}

fn coker_div_qe_mono(ctx: &Ctx) -> Result<Outcome> {
    let cat = &ctx.finvect;
    let bound = cat.horizon();
    let cls = MorphismClass::new(cat, ClassDescriptor::CokerDiv { q: 2 }, bound);
    let qe = validate_qe_mono(&cls, bound)?;
    let retract = check_retract_closed(&cls, bound)?;
    let witnessed = retract.witness.as_ref().is_some_and(|w| w.commutes(cat));
    Ok(Outcome {
        passed: qe.passed() && !retract.closed && witnessed,
        detail: json!({"qe_mono": qe.to_json(), "retract": retract.to_json(cat)}),
    })
}

fn ker_div_qe_epi(ctx: &Ctx) -> Result<Outcome> {
    let cat = &ctx.finvect;
    let bound = cat.horizon();
    let cls = MorphismClass::new(cat, ClassDescriptor::KerDiv { n: 2 }, bound);
    let qe = validate_qe_epi(&cls, bound)?;
    let strong = validate_strong_qe_epi(&cls, bound)?;
    let retract = check_retract_closed(&cls, bound)?;
    let witnessed = retract.witness.as_ref().is_some_and(|w| w.commutes(cat));
    Ok(Outcome {
        passed: qe.passed() && !retract.closed && witnessed,
        detail: json!({"qe_epi": qe.to_json(), "strong": strong.to_json(), "retract": retract.to_json(cat)}),
    })
}

fn split_mono_capped_pushout(ctx: &Ctx) -> Result<Outcome> {
    let cat = &ctx.capped;
    let bound = cat.horizon();
    let cls = MorphismClass::new(cat, ClassDescriptor::SplitMono, bound);
    let qe = validate_qe_mono(&cls, bound)?;
    let no_pushout = qe.axiom("i").is_some_and(|a| !a.passed && a.witness.as_ref().is_some_and(|w| w["pushout"].is_null()));
    Ok(Outcome { passed: no_pushout, detail: qe.to_json() })
}

pub const BUILT_IN_CLASSES: &[&str] = &[
    "all",
    "identities",
    "mono",
    "epi",
    "split-mono",
    "split-epi",
    "regular-mono",
    "regular-epi",
    "coker-div:2",
    "ker-div:2",
];

fn characterize(cat: &ModCategory, bound: u64) -> Result<Vec<Value>> {
    let mut rows = Vec::new();
    for s in BUILT_IN_CLASSES {
        let cls = MorphismClass::new(cat, ClassDescriptor::parse(s)?, bound);
        let r = check_strong_characterization(&cls, bound)?;
        rows.push(json!({
            "category": cat.label(),
            "class": s,
            "bound": bound,
            "left": r.left(),
            "right": r.right(),
            "qe_epi": r.qe_epi.passed(),
            "consistent": r.consistent(),
        }));
    }
    Ok(rows)
}

fn strong_characterization(ctx: &Ctx) -> Result<Outcome> {
    let mut rows = characterize(&ctx.finvect, ctx.finvect.horizon())?;
    rows.extend(characterize(&ctx.finmod, ctx.cfg.bounds.characterization_finmod)?);
    let passed = rows.iter().all(|r| r["consistent"] == true);
    Ok(Outcome { passed, detail: json!(rows) })
}

fn chain_colimit_purity(ctx: &Ctx) -> Result<Outcome> {
    let cat = &ctx.finmod;
    let c = &ctx.cfg.corpus;
    let tests = TestSuite::new(cat, ctx.cfg.bounds.suite)?;
    let monos = generate_split_corpus(cat, c.summand_bound, c.count, c.seed, false)?;
    let epis = generate_split_corpus(cat, c.summand_bound, c.count, c.seed, true)?;
    let mut failures = Vec::new();
    for cm in &monos {
        if !verify_colimit_purity(cm, &tests)? {
            failures.push(cm.to_json());
        }
    }
    for cm in &epis {
        if !verify_colimit_purity_epi(cm, &tests)? {
            failures.push(cm.to_json());
        }
    }
    Ok(Outcome {
        passed: failures.is_empty() && monos.len() >= 50,
        detail: json!({"mono_corpus": monos.len(), "epi_corpus": epis.len(), "seed": c.seed, "failures": failures}),
    })
}

fn colimit_oracle(ctx: &Ctx) -> Result<Outcome> {
    let b = &ctx.cfg.bounds;
    let p = ctx.finvect.modulus();
    // dimension large enough for every apex the search has to find
    let mut dim = 0;
    while (p as u64).pow(dim) < b.oracle_search {
        dim += 1;
    }
    let cat = ModCategory::finvect(p, dim);
    let r = compare_formula_with_search(&cat, b.oracle_diagram, b.oracle_search)?;
    Ok(Outcome { passed: r.passed(), detail: json!(r) })
}

fn m_sequence(ctx: &Ctx) -> Result<Outcome> {
    let cat = &ctx.finvect;
    let bound = cat.horizon();
    let p = cat.modulus();
    let m = cat.morphism(&[p], &[p, p], &[vec![1], vec![0]])?;
    let monos = MorphismClass::new(cat, ClassDescriptor::SplitMono, bound);
    let ms = extract_m_sequence(&monos, &m, u64::MAX)?;
    let q = cat.morphism(&[p, p], &[p], &[vec![1, 0]])?;
    let epis = MorphismClass::new(cat, ClassDescriptor::SplitEpi, bound);
    let ps = extract_p_sequence(&epis, &q, u64::MAX)?;
    let cube = (p as u64).pow(3);
    let eq = cat.equalizer(&ms.k1, &ms.k2, u64::MAX)?.witness;
    let coeq = cat.coequalizer(&ps.k1, &ps.k2, u64::MAX)?.witness;
    let recovers = eq.is_some_and(|e| cat.solve_left_factor(&e.map, &m).ok().flatten().is_some_and(|phi| phi.is_iso()))
        && coeq.is_some_and(|c| cat.solve_right_factor(&c.map, &q).ok().flatten().is_some_and(|psi| psi.is_iso()));
    Ok(Outcome {
        passed: cat.size(&ms.apex) == cube && cat.size(&ps.apex) == cube && recovers,
        detail: json!({"m_sequence": ms.to_json(cat), "p_sequence": ps.to_json(cat)}),
    })
}

fn membership(ctx: &Ctx) -> Result<Outcome> {
    let cat = &ctx.finmod;
    let bound = ctx.cfg.bounds.membership;
    let tests = TestSuite::new(cat, bound)?;
    let monos = MorphismClass::new(cat, ClassDescriptor::SplitMono, bound);
    let epis = MorphismClass::new(cat, ClassDescriptor::SplitEpi, bound);
    let objs = tests.objects().to_vec();
    let (mut checked, mut members) = (0u64, 0u64);
    let mut violations = Vec::new();
    for a in &objs {
        for b in &objs {
            for f in tests.orbits().reps(a, b, Action::Both)?.iter().map(|r| &r.mor) {
                if f.is_injective() {
                    checked += 1;
                    let got = limclass_membership(&monos, f, &tests, Orientation::Mono)?;
                    members += got.member as u64;
                    // the closure of split monos consists of pure monos
                    if got.member && !is_pure_mono(f, &tests)?.pure {
                        violations.push(json!({"mono": cat.mor_json(f)}));
                    }
                }
                if f.is_surjective() {
                    checked += 1;
                    let got = limclass_membership(&epis, f, &tests, Orientation::Epi)?;
                    members += got.member as u64;
                    if got.member != is_pure_epi(f, &tests)?.pure {
                        violations.push(json!({"epi": cat.mor_json(f), "member": got.member}));
                    }
                }
            }
        }
    }
    Ok(Outcome {
        passed: violations.is_empty(),
        detail: json!({"bound": bound, "checked": checked, "members": members, "violations": violations}),
    })
}
