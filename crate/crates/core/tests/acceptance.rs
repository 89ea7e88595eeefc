//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Oracles are written here against element-level arithmetic or explicit composition
//! tables, never through the search or formula being judged.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use catpure::category::{Category, FiniteCategory, MorId};
use catpure::dirsys::{colimit_of_chain_morphism, generate_split_corpus, verify_colimit_purity, verify_colimit_purity_epi};
use catpure::limits::oracle::compare_formula_with_search;
use catpure::limits::{vwck_search, vwsp_search, Certificate, Limits, VwspInput};
use catpure::orbits::{Action, Orbits};
use catpure::purity::{
    check_regular_epi, check_regular_mono, factor_square_through_split_epi, factor_square_through_split_mono,
    is_pure_epi, is_pure_mono, stability_suite_pullback_pure_epis, stability_suite_pushout_pure_monos, SquareInto,
    SquareOnto, TestSuite,
};
use catpure::qe::{check_retract_closed, check_strong_characterization, validate_qe_epi, validate_qe_mono, ClassDescriptor, MorphismClass};
use catpure::{ModCategory, ModMorphism, ModObject};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: catpure::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---- element-level arithmetic ----

fn elements(a: &ModObject) -> Vec<Vec<u32>> {
    a.elements().into_iter().map(|x| x.to_vec()).collect()
}

fn apply(f: &ModMorphism, x: &[u32]) -> Vec<u32> {
    f.apply(x).to_vec()
}

/// `g ∘ f = h` checked on every element.
fn agree(g: &ModMorphism, f: &ModMorphism, h: &ModMorphism) -> bool {
    elements(f.dom()).iter().all(|x| apply(g, &apply(f, x)) == apply(h, x))
}

fn is_identity_on_elements(f: &ModMorphism) -> bool {
    f.dom() == f.cod() && elements(f.dom()).iter().all(|x| apply(f, x) == *x)
}

fn scale(a: &ModObject, k: u32, x: &[u32]) -> Vec<u32> {
    x.iter().zip(a.factors()).map(|(v, &n)| (v * k) % n).collect()
}

/// Purity of a submodule `s ⊆ a` over `Z/m`: `s ∩ k·a = k·s` for every `k | m`.
fn pure_subset(a: &ModObject, s: &HashSet<Vec<u32>>) -> bool {
    let m = a.modulus();
    let all = elements(a);
    (2..m).filter(|k| m % k == 0).all(|k| {
        let ka: HashSet<Vec<u32>> = all.iter().map(|x| scale(a, k, x)).collect();
        let ks: HashSet<Vec<u32>> = s.iter().map(|x| scale(a, k, x)).collect();
        s.iter().filter(|y| ka.contains(*y)).all(|y| ks.contains(y))
    })
}

fn image(f: &ModMorphism) -> HashSet<Vec<u32>> {
    elements(f.dom()).iter().map(|x| apply(f, x)).collect()
}

fn kernel(f: &ModMorphism) -> HashSet<Vec<u32>> {
    let zero = vec![0; f.cod().rank()];
    elements(f.dom()).into_iter().filter(|x| apply(f, x) == zero).collect()
}

fn injective(f: &ModMorphism) -> bool {
    image(f).len() as u64 == f.dom().size()
}

fn surjective(f: &ModMorphism) -> bool {
    image(f).len() as u64 == f.cod().size()
}

fn algebraically_pure_mono(m: &ModMorphism) -> bool {
    injective(m) && pure_subset(m.cod(), &image(m))
}

fn algebraically_pure_epi(p: &ModMorphism) -> bool {
    surjective(p) && pure_subset(p.dom(), &kernel(p))
}

fn has_retraction(cat: &ModCategory, m: &ModMorphism) -> Result<bool, String> {
    Ok(lib(cat.hom(m.cod(), m.dom()))?.iter().any(|r| elements(m.dom()).iter().all(|x| apply(r, &apply(m, x)) == *x)))
}

fn has_section(cat: &ModCategory, p: &ModMorphism) -> Result<bool, String> {
    Ok(lib(cat.hom(p.cod(), p.dom()))?.iter().any(|s| elements(p.cod()).iter().all(|y| apply(p, &apply(s, y)) == *y)))
}

/// Rank over `F_p` by elimination on a copy of the matrix.
fn rank_fp(f: &ModMorphism) -> usize {
    let p = f.dom().modulus() as i64;
    let mut rows: Vec<Vec<i64>> = f.rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect();
    let cols = f.dom().rank();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] % p != 0) else { continue };
        rows.swap(rank, piv);
        let inv = (1..p).find(|v| v * rows[rank][c] % p == 1).unwrap();
        for r in 0..rows.len() {
            if r != rank && rows[r][c] % p != 0 {
                let k = rows[r][c] * inv % p;
                for j in 0..cols {
                    rows[r][j] = (rows[r][j] - k * rows[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

// ---- composition-table oracles for the capped line category ----

struct Table {
    t: FiniteCategory,
    mors: Vec<ModMorphism>,
}

impl Table {
    fn of(cat: &ModCategory) -> Result<Self, String> {
        let (t, _, mors) = lib(FiniteCategory::from_category(cat, u64::MAX))?;
        Ok(Table { t, mors })
    }

    fn id_of(&self, m: &ModMorphism) -> MorId {
        let i = self.mors.iter().position(|x| x == m).expect("morphism in table");
        self.t.mor(&format!("m{i}")).expect("named morphism")
    }

    fn all(&self) -> Vec<MorId> {
        self.t.all_morphisms()
    }

    fn c(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.t.lookup(g, f)
    }

    fn dom(&self, f: MorId) -> catpure::category::ObjId {
        self.t.dom(&f)
    }

    fn cod(&self, f: MorId) -> catpure::category::ObjId {
        self.t.cod(&f)
    }

    fn id(&self, a: catpure::category::ObjId) -> MorId {
        self.t.id(&a)
    }

    fn from(&self, a: catpure::category::ObjId) -> Vec<MorId> {
        self.all().into_iter().filter(|&f| self.dom(f) == a).collect()
    }

    fn vwck_exists(&self, f: MorId, c1: MorId, c2: MorId) -> bool {
        let b = self.cod(f);
        for k1 in self.from(b) {
            for k2 in self.from(b).into_iter().filter(|&k| self.cod(k) == self.cod(k1)) {
                if self.c(k1, f) != self.c(k2, f) {
                    continue;
                }
                for l in self.from(self.cod(k1)) {
                    if self.c(l, k1) != Some(c1) || self.c(l, k2) != Some(c2) {
                        continue;
                    }
                    if self.from(self.cod(k1)).into_iter().any(|s| self.c(s, k1) == Some(self.id(b))) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn into(&self, a: catpure::category::ObjId) -> Vec<MorId> {
        self.all().into_iter().filter(|&f| self.cod(f) == a).collect()
    }

    fn vwsp_exists(&self, f: MorId, g: MorId, q_b: MorId, q_c: MorId) -> bool {
        let (b, c) = (self.dom(f), self.dom(g));
        for p_b in self.into(b) {
            for p_c in self.into(c).into_iter().filter(|&x| self.dom(x) == self.dom(p_b)) {
                if self.c(f, p_b) != self.c(g, p_c) {
                    continue;
                }
                let r_ok = self.into(self.dom(p_b)).into_iter().any(|r| self.c(p_b, r) == Some(q_b) && self.c(p_c, r) == Some(q_c));
                let s_ok = self.from(c).into_iter().any(|s| self.c(p_c, s) == Some(self.id(c)));
                if r_ok && s_ok {
                    return true;
                }
            }
        }
        false
    }

    /// A cocone `(a, b)` under `(f, g)` through which every cocone factors uniquely.
    fn pushout_exists(&self, f: MorId, g: MorId) -> bool {
        let cocones: Vec<(MorId, MorId)> = self
            .from(self.cod(f))
            .into_iter()
            .flat_map(|a| self.from(self.cod(g)).into_iter().map(move |b| (a, b)))
            .filter(|&(a, b)| self.cod(a) == self.cod(b) && self.c(a, f) == self.c(b, g))
            .collect();
        cocones.iter().any(|&(a, b)| {
            cocones.iter().all(|&(a2, b2)| {
                self.from(self.cod(a)).into_iter().filter(|&h| self.c(h, a) == Some(a2) && self.c(h, b) == Some(b2)).count() == 1
            })
        })
    }
}

fn exhaustive_scope(c: &Certificate) -> Option<u128> {
    match c {
        Certificate::Exhaustive { morphisms_in_scope, .. } => Some(*morphisms_in_scope),
        Certificate::ByConstruction => None,
    }
}

fn capped_line() -> (ModCategory, ModObject, ModObject) {
    let cat = ModCategory::capped(2, 1);
    let zero = cat.object(&[]).unwrap();
    let line = cat.object(&[2]).unwrap();
    (cat, zero, line)
}

fn c1_vwck() -> Verdict {
    let (cat, zero, line) = capped_line();
    let f = ModMorphism::zero(&zero, &line);
    let (c1, c2) = (ModMorphism::zero(&line, &line), ModMorphism::identity(&line));
    let out = lib(vwck_search(&cat, &f, &c1, &c2, u64::MAX))?;
    let scope = exhaustive_scope(&out.certificate).ok_or("certificate is not exhaustive")?;
    let table = Table::of(&cat)?;
    ensure(out.witness.is_none(), || "search found a very weak cokernel pair".into())?;
    ensure(scope <= 6 && scope == table.all().len() as u128, || format!("certificate covers {scope} morphisms"))?;
    ensure(!table.vwck_exists(table.id_of(&f), table.id_of(&c1), table.id_of(&c2)), || "table oracle finds one".into())?;
    Ok(format!("none; exhaustive over {scope} morphisms"))
}

fn c2_vwsp() -> Verdict {
    let (cat, zero, line) = capped_line();
    let input = VwspInput {
        f: ModMorphism::zero(&line, &zero),
        g: ModMorphism::zero(&line, &zero),
        h: ModMorphism::zero(&line, &line),
        q_b: ModMorphism::identity(&line),
        q_c: ModMorphism::zero(&line, &line),
    };
    let out = lib(vwsp_search(&cat, &input, u64::MAX))?;
    let scope = exhaustive_scope(&out.certificate).ok_or("certificate is not exhaustive")?;
    let table = Table::of(&cat)?;
    let id = |m: &ModMorphism| table.id_of(m);
    ensure(out.witness.is_none(), || "search found a very weak split pullback".into())?;
    ensure(!table.vwsp_exists(id(&input.f), id(&input.g), id(&input.q_b), id(&input.q_c)), || "table oracle finds one".into())?;
    Ok(format!("none; exhaustive over {scope} morphisms"))
}

fn c3_pushout() -> Verdict {
    let (cat, zero, line) = capped_line();
    let inj = ModMorphism::zero(&zero, &line);
    let out = lib(cat.pushout(&inj, &inj, u64::MAX))?;
    let table = Table::of(&cat)?;
    ensure(out.witness.is_none(), || "search found a pushout".into())?;
    ensure(exhaustive_scope(&out.certificate).is_some(), || "certificate is not exhaustive".into())?;
    ensure(!table.pushout_exists(table.id_of(&inj), table.id_of(&inj)), || "table oracle finds one".into())?;
    // sanity of the oracle: the span of identities does have a pushout
    let id = table.id_of(&ModMorphism::identity(&line));
    ensure(table.pushout_exists(id, id), || "oracle misses the trivial pushout".into())?;
    Ok("none".into())
}

fn coker_dim(f: &ModMorphism) -> usize {
    f.cod().rank() - rank_fp(f)
}

fn ker_dim(f: &ModMorphism) -> usize {
    f.dom().rank() - rank_fp(f)
}

fn c4_coker_div() -> Verdict {
    let cat = ModCategory::finvect(2, 3);
    let cls = MorphismClass::new(&cat, ClassDescriptor::CokerDiv { q: 2 }, 8);
    let qe = lib(validate_qe_mono(&cls, 8))?;
    for a in ["i", "ii", "iii"] {
        ensure(qe.axiom(a).is_some_and(|v| v.passed), || format!("axiom ({a}) fails"))?;
    }
    let r = lib(check_retract_closed(&cls, 8))?;
    let w = r.witness.ok_or("retract closure holds")?;
    let member = |f: &ModMorphism| ker_dim(f) == 0 && coker_dim(f) % 2 == 0;
    ensure(!r.closed && member(&w.p) && !member(&w.q), || "witness membership is wrong".into())?;
    ensure(
        is_identity_on_elements(&w.s_dom.compose_unchecked(&w.i_dom))
            && is_identity_on_elements(&w.s_cod.compose_unchecked(&w.i_cod))
            && agree(&w.p, &w.i_dom, &w.i_cod.compose_unchecked(&w.q))
            && agree(&w.q, &w.s_dom, &w.s_cod.compose_unchecked(&w.p)),
        || "retract diagram does not commute".into(),
    )?;
    Ok(format!("(i)-(iii) pass; retract witness q with cokernel dim {}", coker_dim(&w.q)))
}

fn c5_ker_div() -> Verdict {
    let cat = ModCategory::finvect(2, 3);
    let cls = MorphismClass::new(&cat, ClassDescriptor::KerDiv { n: 2 }, 8);
    let qe = lib(validate_qe_epi(&cls, 8))?;
    for a in ["i*", "ii*", "iii*"] {
        ensure(qe.axiom(a).is_some_and(|v| v.passed), || format!("axiom ({a}) fails"))?;
    }
    let r = lib(check_retract_closed(&cls, 8))?;
    let w = r.witness.ok_or("retract closure holds")?;
    let member = |f: &ModMorphism| coker_dim(f) == 0 && ker_dim(f) % 2 == 0;
    ensure(!r.closed && member(&w.p) && !member(&w.q), || "witness membership is wrong".into())?;
    ensure(
        is_identity_on_elements(&w.s_dom.compose_unchecked(&w.i_dom))
            && is_identity_on_elements(&w.s_cod.compose_unchecked(&w.i_cod))
            && agree(&w.p, &w.i_dom, &w.i_cod.compose_unchecked(&w.q))
            && agree(&w.q, &w.s_dom, &w.s_cod.compose_unchecked(&w.p)),
        || "retract diagram does not commute".into(),
    )?;
    Ok(format!("(i*)-(iii*) pass; retract witness q with kernel dim {}", ker_dim(&w.q)))
}

fn c6_pure_iff_split() -> Verdict {
    let cat = ModCategory::finmod(4, 16);
    let tests = lib(TestSuite::new(&cat, 16))?;
    let objs = lib(cat.objects(16))?;
    let orbits = Orbits::new(&cat);
    let (mut monos, mut epis) = (0, 0);
    for a in &objs {
        for b in &objs {
            for f in lib(orbits.reps(a, b, Action::Both))?.iter().map(|r| &r.mor) {
                if injective(f) {
                    monos += 1;
                    let (pure, split, alg) = (lib(is_pure_mono(f, &tests))?.pure, has_retraction(&cat, f)?, algebraically_pure_mono(f));
                    ensure(pure == split && split == alg, || format!("mono {f}: pure {pure}, split {split}, algebraic {alg}"))?;
                }
                if surjective(f) {
                    epis += 1;
                    let (pure, split, alg) = (lib(is_pure_epi(f, &tests))?.pure, has_section(&cat, f)?, algebraically_pure_epi(f));
                    ensure(pure == split && split == alg, || format!("epi {f}: pure {pure}, split {split}, algebraic {alg}"))?;
                }
            }
        }
    }
    Ok(format!("{monos} mono and {epis} epi orbits, zero discrepancies"))
}

const SQUARES_PER_MAP: usize = 8;

fn c7_factorization() -> Verdict {
    let cat = ModCategory::finmod(4, 16);
    let suite = lib(cat.objects(8))?;
    let objs = lib(cat.objects(16))?;
    let orbits = Orbits::new(&cat);
    let (mut mono_squares, mut epi_squares) = (0, 0);
    for a in &objs {
        for b in &objs {
            for f in lib(orbits.reps(a, b, Action::Both))?.iter().map(|r| &r.mor) {
                if algebraically_pure_mono(f) {
                    let mut here = 0;
                    'm: for s in &suite {
                        for t_obj in &suite {
                            for t in lib(cat.hom(s, t_obj))?.iter() {
                                for c in lib(cat.hom(s, a))?.iter() {
                                    for d in lib(cat.hom(t_obj, b))?.iter() {
                                        if !agree(f, c, &d.compose_unchecked(t)) {
                                            continue;
                                        }
                                        let sq = SquareInto { t: t.clone(), c: c.clone(), d: d.clone() };
                                        let w = lib(factor_square_through_split_mono(&cat, f, &sq))?;
                                        let [al, be] = &w.first;
                                        let [x, y] = &w.second;
                                        let ok = agree(&w.u, al, &be.compose_unchecked(t))
                                            && agree(f, x, &y.compose_unchecked(&w.u))
                                            && agree(x, al, c)
                                            && agree(y, be, d)
                                            && is_identity_on_elements(&w.split.compose_unchecked(&w.u))
                                            && agree(&f.compose_unchecked(x), al, &d.compose_unchecked(t));
                                        ensure(ok, || format!("mono factorization of {f} fails"))?;
                                        mono_squares += 1;
                                        here += 1;
                                        if here >= SQUARES_PER_MAP {
                                            break 'm;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                if algebraically_pure_epi(f) {
                    let mut here = 0;
                    'e: for t_obj in &suite {
                        for s in &suite {
                            for t in lib(cat.hom(t_obj, s))?.iter() {
                                for e in lib(cat.hom(s, b))?.iter() {
                                    for d in lib(cat.hom(t_obj, a))?.iter() {
                                        if !agree(f, d, &e.compose_unchecked(t)) {
                                            continue;
                                        }
                                        let sq = SquareOnto { t: t.clone(), d: d.clone(), e: e.clone() };
                                        let w = lib(factor_square_through_split_epi(&cat, f, &sq))?;
                                        let [al, be] = &w.first;
                                        let [x, y] = &w.second;
                                        let ok = agree(&w.u, al, &be.compose_unchecked(t))
                                            && agree(f, x, &y.compose_unchecked(&w.u))
                                            && agree(x, al, d)
                                            && agree(y, be, e)
                                            && is_identity_on_elements(&w.u.compose_unchecked(&w.split));
                                        ensure(ok, || format!("epi factorization of {f} fails"))?;
                                        epi_squares += 1;
                                        here += 1;
                                        if here >= SQUARES_PER_MAP {
                                            break 'e;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    ensure(mono_squares >= 100 && epi_squares >= 100, || format!("only {mono_squares}/{epi_squares} squares"))?;
    Ok(format!("{mono_squares} mono and {epi_squares} epi squares, zero failures"))
}

fn regular_in(cat: &ModCategory, bound: u64, all_maps: bool) -> Result<(u64, u64), String> {
    let objs = lib(cat.objects(bound))?;
    let orbits = Orbits::new(cat);
    let (mut monos, mut epis) = (0, 0);
    for a in &objs {
        for b in &objs {
            let maps: Vec<ModMorphism> = if all_maps {
                lib(cat.hom(a, b))?.to_vec()
            } else {
                lib(orbits.reps(a, b, Action::Both))?.iter().map(|r| r.mor.clone()).collect()
            };
            for f in &maps {
                if has_retraction(cat, f)? {
                    monos += 1;
                    ensure(lib(check_regular_mono(cat, f, bound))?.regular, || format!("split mono {f} not regular"))?;
                }
                if has_section(cat, f)? {
                    epis += 1;
                    ensure(lib(check_regular_epi(cat, f, bound))?.regular, || format!("split epi {f} not regular"))?;
                }
            }
        }
    }
    Ok((monos, epis))
}

fn c8_regularity() -> Verdict {
    let (vm, ve) = regular_in(&ModCategory::finvect(2, 3), 8, true)?;
    let (mm, me) = regular_in(&ModCategory::finmod(4, 16), 16, false)?;
    Ok(format!("FinVect: {vm}/{ve} split maps; FinMod(Z/4): {mm}/{me} split orbits"))
}

fn c9_stability() -> Verdict {
    let cat = ModCategory::finmod(4, 16);
    let tests = lib(TestSuite::new(&cat, 4))?;
    let po = lib(stability_suite_pushout_pure_monos(&cat, &tests, 16))?;
    let pb = lib(stability_suite_pullback_pure_epis(&cat, &tests, 16))?;
    ensure(po.violations.is_empty(), || format!("pushout violations: {:?}", po.violations.first()))?;
    ensure(pb.violations.is_empty(), || format!("pullback violations: {:?}", pb.violations.first()))?;
    ensure(po.sources > 0 && pb.sources > 0, || "no sources".into())?;
    Ok(format!("{} pushout spans, {} pullback cospans, zero violations", po.spans_checked, pb.spans_checked))
}

fn c10_oracle() -> Verdict {
    let cat = ModCategory::finvect(2, 4);
    let r = lib(compare_formula_with_search(&cat, 4, 16))?;
    // independent instance counts: |hom(F^a, F^b)| = 2^(ab)
    let h = |a: u32, b: u32| 1u64 << (a * b);
    let (mut spans, mut pairs) = (0, 0);
    for a in 0..=2 {
        for b in 0..=2 {
            pairs += h(a, b) * h(a, b);
            for c in 0..=2 {
                spans += h(a, b) * h(a, c);
            }
        }
    }
    ensure(r.instances["pushout"] == spans && r.instances["pullback"] == spans, || format!("span count {:?}", r.instances))?;
    ensure(r.instances["equalizer"] == pairs && r.instances["coequalizer"] == pairs, || format!("pair count {:?}", r.instances))?;
    ensure(r.passed(), || format!("discrepancy: {}", r.discrepancies[0]))?;
    Ok(format!("{} instances, zero discrepancies", r.total()))
}

fn c11_chain_colimits() -> Verdict {
    let cat = ModCategory::finmod(4, 16);
    let tests = lib(TestSuite::new(&cat, 8))?;
    let monos = lib(generate_split_corpus(&cat, 4, 60, 11, false))?;
    let epis = lib(generate_split_corpus(&cat, 4, 60, 12, true))?;
    for (i, cm) in monos.iter().enumerate() {
        ensure(lib(verify_colimit_purity(cm, &tests))?, || format!("mono corpus item {i} not pure"))?;
        let mu = lib(colimit_of_chain_morphism(cm))?;
        ensure(algebraically_pure_mono(&mu), || format!("oracle rejects mono corpus item {i}"))?;
    }
    for (i, cm) in epis.iter().enumerate() {
        ensure(lib(verify_colimit_purity_epi(cm, &tests))?, || format!("epi corpus item {i} not pure"))?;
        let mu = lib(colimit_of_chain_morphism(cm))?;
        ensure(algebraically_pure_epi(&mu), || format!("oracle rejects epi corpus item {i}"))?;
    }
    Ok(format!("{} mono and {} epi chain morphisms", monos.len(), epis.len()))
}

const BUILT_IN: &[&str] =
    &["all", "identities", "mono", "epi", "split-mono", "split-epi", "regular-mono", "regular-epi", "coker-div:2", "ker-div:2"];

fn c12_characterization() -> Verdict {
    let mut n = 0;
    for (cat, bound) in [(ModCategory::finvect(2, 3), 8), (ModCategory::finmod(4, 16), 16)] {
        for s in BUILT_IN {
            let cls = MorphismClass::new(&cat, lib(ClassDescriptor::parse(s))?, bound);
            let r = lib(check_strong_characterization(&cls, bound))?;
            ensure(r.consistent(), || format!("{s} in {}: left {} right {}", cat.label(), r.left(), r.right()))?;
            n += 1;
        }
    }
    Ok(format!("{n} class/category pairs consistent"))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("vwck counterexample replay", c1_vwck),
        ("vwsp counterexample replay", c2_vwsp),
        ("pushout failure replay", c3_pushout),
        ("coker-div QE-mono example", c4_coker_div),
        ("ker-div QE-epi example", c5_ker_div),
        ("pure iff split", c6_pure_iff_split),
        ("factorization soundness", c7_factorization),
        ("regularity suites", c8_regularity),
        ("stability suites", c9_stability),
        ("colimit-engine oracle", c10_oracle),
        ("chain-colimit purity", c11_chain_colimits),
        ("strong QE-epi characterization", c12_characterization),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
