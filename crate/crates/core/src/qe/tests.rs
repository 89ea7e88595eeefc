use super::*;
use crate::category::{Category, FiniteCategory};
use crate::concrete::ModCategory;
use crate::limits::Limits;
use crate::purity::{check_regular_mono, is_pure_epi, is_pure_mono, TestSuite};

fn vect(max_dim: u32) -> ModCategory {
    ModCategory::finvect(2, max_dim)
}

fn f2(n: usize) -> Vec<u32> {
    vec![2; n]
}

fn class<'a, C: Limits>(cat: &'a C, s: &str, bound: u64) -> MorphismClass<'a, C> {
    MorphismClass::new(cat, ClassDescriptor::parse(s).unwrap(), bound)
}

const ARROW: &str = r#"{"objects":["A","B"],
    "morphisms":[{"id":"1A","dom":"A","cod":"A"},{"id":"1B","dom":"B","cod":"B"},{"id":"f","dom":"A","cod":"B"}],
    "identities":{"A":"1A","B":"1B"},
    "compose":[]}"#;

// One object with an involution: every morphism is an isomorphism.
const INVOLUTION: &str = r#"{"objects":["X"],
    "morphisms":[{"id":"1","dom":"X","cod":"X"},{"id":"s","dom":"X","cod":"X"}],
    "identities":{"X":"1"},
    "compose":[["s","s","1"]]}"#;

// A span B <- A -> C with no further arrows.
const SPAN: &str = r#"{"objects":["A","B","C"],
    "morphisms":[{"id":"1A","dom":"A","cod":"A"},{"id":"1B","dom":"B","cod":"B"},{"id":"1C","dom":"C","cod":"C"},
                 {"id":"g","dom":"A","cod":"B"},{"id":"h","dom":"A","cod":"C"}],
    "identities":{"A":"1A","B":"1B","C":"1C"},
    "compose":[]}"#;

#[test]
fn descriptors_parse_both_ways() {
    assert_eq!(ClassDescriptor::parse("coker-div:2").unwrap(), ClassDescriptor::CokerDiv { q: 2 });
    assert_eq!(ClassDescriptor::parse("split-epi").unwrap(), ClassDescriptor::SplitEpi);
    let j = serde_json::json!({"kind": "coker-div", "q": 2});
    assert_eq!(ClassDescriptor::from_json(&j).unwrap(), ClassDescriptor::CokerDiv { q: 2 });
    let t = ClassDescriptor::parse("table:f, 1A").unwrap();
    assert_eq!(t.to_json(), serde_json::json!({"kind": "table", "members": ["f", "1A"]}));
    assert_eq!(ClassDescriptor::from_json(&t.to_json()).unwrap(), t);
    for d in ["all", "ker-div:3", "regular-mono", "table:f"] {
        let d = ClassDescriptor::parse(d).unwrap();
        assert_eq!(ClassDescriptor::parse(&d.to_string()).unwrap(), d);
        assert_eq!(d.dual().dual(), d);
    }
}

#[test]
fn bad_descriptors_are_rejected() {
    assert!(ClassDescriptor::parse("coker-div").is_err());
    assert!(ClassDescriptor::parse("coker-div:1").is_err());
    assert!(ClassDescriptor::parse("split-mono:2").is_err());
    assert!(ClassDescriptor::parse("frobenius").is_err());
    let e = ClassDescriptor::from_json(&serde_json::json!({"kind": "ker-div", "m": 2})).unwrap_err();
    assert!(matches!(e, CatError::Descriptor(_)), "{e}");
    assert!(ClassDescriptor::from_json(&serde_json::json!({"kind": "nope"})).is_err());
}

#[test]
fn coker_div_membership() {
    let cat = vect(3);
    let cls = class(&cat, "coker-div:2", 8);
    let n = cat.morphism(&f2(1), &f2(2), &[vec![1], vec![0]]).unwrap();
    let m = cat.morphism(&f2(1), &f2(3), &[vec![1], vec![0], vec![0]]).unwrap();
    let not_mono = cat.morphism(&f2(2), &f2(2), &[vec![1, 1], vec![0, 0]]).unwrap();
    assert!(!cls.contains(&n).unwrap());
    assert!(cls.contains(&m).unwrap());
    assert!(cls.contains(&cat.id(&cat.object(&f2(2)).unwrap())).unwrap());
    assert!(!cls.contains(&not_mono).unwrap());
}

#[test]
fn coker_div_is_qe_mono_but_not_retract_closed() {
    let cat = vect(3);
    let cls = class(&cat, "coker-div:2", 8);
    let rep = validate_qe_mono(&cls, 8).unwrap();
    assert!(rep.passed(), "{:#}", rep.to_json());
    assert!(rep.axioms.iter().all(|a| a.checked > 0));

    let r = check_retract_closed(&cls, 8).unwrap();
    assert!(!r.closed);
    let w = r.witness.unwrap();
    assert!(w.commutes(&cat));
    assert!(cls.contains(&w.p).unwrap() && !cls.contains(&w.q).unwrap());
}

#[test]
fn named_retract_of_coker_div_member() {
    // n: F2 -> F2² sits inside m: F2 -> F2³ through the first two coordinates.
    let cat = vect(3);
    let cls = class(&cat, "coker-div:2", 8);
    let n = cat.morphism(&f2(1), &f2(2), &[vec![1], vec![0]]).unwrap();
    let m = cat.morphism(&f2(1), &f2(3), &[vec![1], vec![0], vec![0]]).unwrap();
    let one = cat.id(&cat.object(&f2(1)).unwrap());
    let i = cat.morphism(&f2(2), &f2(3), &[vec![1, 0], vec![0, 1], vec![0, 0]]).unwrap();
    let s = cat.morphism(&f2(3), &f2(2), &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
    let w = RetractDiagram { q: n, p: m, i_dom: one.clone(), s_dom: one, i_cod: i, s_cod: s };
    assert!(w.commutes(&cat));
    assert_eq!(cat.cokernel_length(&w.q), Some(1));
    assert_eq!(cat.cokernel_length(&w.p), Some(2));
    assert!(cls.contains(&w.p).unwrap() && !cls.contains(&w.q).unwrap());
}

#[test]
fn split_monos_fail_pushouts_in_capped() {
    let cat = ModCategory::capped(2, 1);
    let cls = class(&cat, "split-mono", 2);
    let rep = validate_qe_mono(&cls, 2).unwrap();
    let i = rep.axiom("i").unwrap();
    assert!(!i.passed);
    let w = i.witness.as_ref().unwrap();
    let zero_to_line = cat.morphism(&[], &f2(1), &[vec![]]).unwrap();
    assert_eq!(w["m"], cat.mor_json(&zero_to_line));
    assert_eq!(w["f"], cat.mor_json(&zero_to_line));
    assert!(w["pushout"].is_null());
}

#[test]
fn identities_are_qe_mono_and_qe_epi() {
    let cat = ModCategory::finmod(4, 8);
    let cls = class(&cat, "identities", 8);
    assert!(validate_qe_mono(&cls, 8).unwrap().passed());
    assert!(validate_qe_epi(&cls, 8).unwrap().passed());
}

#[test]
fn ker_div_dual_verdicts() {
    let cat = vect(3);
    let cls = class(&cat, "ker-div:2", 8);
    let rep = validate_strong_qe_epi(&cls, 8).unwrap();
    for ax in ["i*", "ii*", "iii*"] {
        assert!(rep.axiom(ax).unwrap().passed, "{ax}: {:#}", rep.to_json());
    }
    let iv = rep.axiom("iv*").unwrap();
    assert!(!iv.passed);
    let w = iv.witness.as_ref().unwrap();
    let p = cat.parse_morphism(&w["p"]).unwrap();
    let q = cat.parse_morphism(&w["q"]).unwrap();
    assert!(!cls.contains(&p).unwrap());
    assert!(cls.contains(&cat.compose(&p, &q)).unwrap());

    let r = check_retract_closed(&cls, 8).unwrap();
    assert!(!r.closed && r.witness.as_ref().unwrap().commutes(&cat));
}

#[test]
fn named_right_factor_witness_for_ker_div() {
    let cat = vect(3);
    let cls = class(&cat, "ker-div:2", 8);
    let p = cat.morphism(&f2(2), &f2(1), &[vec![1, 0]]).unwrap();
    let q = cat.morphism(&f2(3), &f2(2), &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
    assert_eq!(cat.kernel_length(&q), Some(1));
    assert_eq!(cat.kernel_length(&p), Some(1));
    assert_eq!(cat.kernel_length(&cat.compose(&p, &q)), Some(2));
    assert!(cls.contains(&cat.compose(&p, &q)).unwrap() && !cls.contains(&p).unwrap());
}

#[test]
fn split_epis_are_qe_epi_in_finmod() {
    let cat = ModCategory::finmod(4, 16);
    let cls = class(&cat, "split-epi", 16);
    let rep = validate_qe_epi(&cls, 16).unwrap();
    assert!(rep.passed(), "{:#}", rep.to_json());
}

#[test]
fn split_epis_are_strong_in_finvect() {
    let cat = vect(3);
    let cls = class(&cat, "split-epi", 8);
    let rep = validate_strong_qe_epi(&cls, 8).unwrap();
    assert!(rep.passed(), "{:#}", rep.to_json());
}

#[test]
fn all_morphisms_satisfy_right_factor_but_not_regularity() {
    let cat = vect(2);
    let cls = class(&cat, "all", 4);
    let rep = validate_strong_qe_epi(&cls, 4).unwrap();
    assert!(rep.axiom("i*").unwrap().passed);
    assert!(rep.axiom("iii*").unwrap().passed);
    assert!(rep.axiom("iv*").unwrap().passed);
    // a zero map onto a nonzero space is no regular epi
    assert!(!rep.axiom("ii*").unwrap().passed);
}

#[test]
fn all_morphisms_of_a_groupoid_are_strong_qe_epi() {
    let cat = FiniteCategory::load_validated(INVOLUTION).unwrap();
    let cls = class(&cat, "all", 1);
    let rep = validate_strong_qe_epi(&cls, 1).unwrap();
    assert!(rep.passed(), "{:#}", rep.to_json());
}

#[test]
fn epis_of_the_walking_arrow_are_not_regular() {
    let cat = FiniteCategory::load_validated(ARROW).unwrap();
    let cls = class(&cat, "epi", 1);
    let rep = validate_qe_epi(&cls, 1).unwrap();
    let ii = rep.axiom("ii*").unwrap();
    assert!(!ii.passed);
    assert_eq!(ii.witness.as_ref().unwrap()["p"], "f");
}

#[test]
fn retract_closure_of_simple_classes() {
    let cat = vect(3);
    for s in ["split-mono", "split-epi", "all", "mono", "epi"] {
        let r = check_retract_closed(&class(&cat, s, 8), 8).unwrap();
        assert!(r.closed, "{s}");
        assert_eq!(r.checked == 0, s == "all", "{s}");
    }
    // a swap is a retract of an identity
    let r = check_retract_closed(&class(&cat, "identities", 4), 4).unwrap();
    assert!(!r.closed);
    let w = r.witness.unwrap();
    assert!(w.commutes(&cat) && cat.is_identity(&w.p) && !cat.is_identity(&w.q));
}

#[test]
fn additive_and_generic_retract_sweeps_agree() {
    let cat = vect(2);
    for s in ["split-mono", "split-epi", "coker-div:2", "ker-div:2", "mono", "epi", "all", "regular-epi"] {
        let cls = class(&cat, s, 4);
        let objs = cat.objects(4).unwrap();
        let additive = axioms::retracts_additive(&cls, &objs, 4, &mut 0).unwrap();
        let generic = axioms::retracts_generic(&cls, &objs, &mut 0).unwrap();
        assert_eq!(additive.is_some(), generic.is_some(), "{s}");
        for w in additive.iter().chain(generic.iter()) {
            assert!(w.commutes(&cat) && cls.contains(&w.p).unwrap() && !cls.contains(&w.q).unwrap());
        }
    }
}

#[test]
fn sequences_of_basic_maps() {
    let cat = vect(3);
    let all = class(&cat, "all", 8);
    let x = cat.object(&f2(2)).unwrap();
    let id = cat.id(&x);
    let ms = extract_m_sequence(&all, &id, 8).unwrap();
    assert_eq!(ms.apex, x);
    assert_eq!((ms.k1.clone(), ms.k2.clone()), (id.clone(), id.clone()));

    let m = cat.morphism(&f2(1), &f2(2), &[vec![1], vec![0]]).unwrap();
    let ms = extract_m_sequence(&all, &m, 8).unwrap();
    assert_eq!(ms.apex, cat.object(&f2(3)).unwrap());
    assert_ne!(ms.k1, ms.k2);

    let p = cat.morphism(&f2(2), &f2(1), &[vec![1, 0]]).unwrap();
    let ps = extract_p_sequence(&all, &p, 8).unwrap();
    assert_eq!(ps.apex, cat.object(&f2(3)).unwrap());
    assert_eq!(cat.compose(&p, &ps.k1), cat.compose(&p, &ps.k2));

    let split = class(&cat, "split-epi", 8);
    let zero = cat.morphism(&f2(1), &f2(1), &[vec![0]]).unwrap();
    assert!(matches!(extract_p_sequence(&split, &zero, 8), Err(CatError::Precondition(_))));
}

#[test]
fn missing_cokernel_pair_is_an_error() {
    let cat = ModCategory::capped(2, 1);
    let all = class(&cat, "all", 2);
    let m = cat.morphism(&[], &f2(1), &[vec![]]).unwrap();
    assert!(matches!(extract_m_sequence(&all, &m, 2), Err(CatError::Missing(_))));
}

#[test]
fn membership_examples() {
    let cat = vect(3);
    let tests = TestSuite::new(&cat, 4).unwrap();
    let split = class(&cat, "split-mono", 4);
    let inj = cat.morphism(&f2(1), &f2(2), &[vec![1], vec![0]]).unwrap();
    assert!(limclass_membership(&split, &inj, &tests, Orientation::Mono).unwrap().member);

    let coker = class(&cat, "coker-div:2", 8);
    let m = cat.morphism(&f2(1), &f2(3), &[vec![1], vec![0], vec![0]]).unwrap();
    let tests8 = TestSuite::new(&cat, 8).unwrap();
    assert!(limclass_membership(&coker, &m, &tests8, Orientation::Mono).unwrap().member);

    let z4 = ModCategory::finmod(4, 8);
    let tests = TestSuite::new(&z4, 8).unwrap();
    let red = z4.morphism(&[4], &[2], &[vec![1]]).unwrap();
    let v = limclass_membership(&class(&z4, "split-epi", 8), &red, &tests, Orientation::Epi).unwrap();
    assert!(!v.member);
    assert_eq!(v.witness.unwrap()["e"], z4.mor_json(&z4.id(&z4.object(&[2]).unwrap())));
}

#[test]
fn membership_search_beyond_the_shortcut() {
    // the candidate's codomain lies outside the suite, so every square is searched
    let cat = vect(3);
    let tests = TestSuite::new(&cat, 2).unwrap();
    let split = class(&cat, "split-mono", 2);
    let inj = cat.morphism(&f2(1), &f2(3), &[vec![1], vec![0], vec![0]]).unwrap();
    let v = limclass_membership(&split, &inj, &tests, Orientation::Mono).unwrap();
    assert!(v.member && v.checked > 0);

    let z4 = ModCategory::finmod(4, 4);
    let tests = TestSuite::new(&z4, 4).unwrap();
    let doubling = z4.morphism(&[2], &[4], &[vec![2]]).unwrap();
    let v = limclass_membership(&class(&z4, "split-mono", 4), &doubling, &tests, Orientation::Mono).unwrap();
    assert!(!v.member);
}

#[test]
fn split_mono_membership_implies_purity() {
    let z4 = ModCategory::finmod(4, 8);
    let tests = TestSuite::new(&z4, 4).unwrap();
    let split = class(&z4, "split-mono", 4);
    for a in z4.objects(8).unwrap() {
        for b in z4.objects(8).unwrap() {
            for m in z4.hom(&a, &b).unwrap().iter().filter(|m| m.is_injective()) {
                if limclass_membership(&split, m, &tests, Orientation::Mono).unwrap().member {
                    assert!(is_pure_mono(m, &tests).unwrap().pure, "{m:?}");
                }
            }
        }
    }
}

#[test]
fn split_epi_membership_is_purity() {
    let z4 = ModCategory::finmod(4, 16);
    let tests = TestSuite::new(&z4, 8).unwrap();
    let split = class(&z4, "split-epi", 8);
    for a in z4.objects(16).unwrap() {
        for b in z4.objects(8).unwrap() {
            for rep in tests.orbits().reps(&a, &b, crate::orbits::Action::Both).unwrap().iter() {
                let p = &rep.mor;
                let member = limclass_membership(&split, p, &tests, Orientation::Epi).unwrap().member;
                assert_eq!(member, is_pure_epi(p, &tests).unwrap().pure, "{p:?}");
            }
        }
    }
}

#[test]
fn characterization_examples() {
    let z4 = ModCategory::finmod(4, 16);
    let c = check_strong_characterization(&class(&z4, "split-epi", 16), 16).unwrap();
    assert!(c.left() && c.right() && c.consistent() && c.qe_epi.passed());

    let cat = vect(3);
    let c = check_strong_characterization(&class(&cat, "ker-div:2", 8), 8).unwrap();
    assert!(!c.left() && !c.right() && c.consistent());
    assert!(!c.retract_closed.passed);

    let c = check_strong_characterization(&class(&cat, "all", 8), 8).unwrap();
    assert!(c.left() && c.right() && c.consistent());
}

#[test]
fn strong_classes_are_retract_closed() {
    let cat = vect(2);
    for s in ["all", "identities", "mono", "epi", "split-mono", "split-epi", "regular-epi", "coker-div:2", "ker-div:2"] {
        let cls = class(&cat, s, 4);
        if validate_strong_qe_epi(&cls, 4).unwrap().passed() {
            assert!(check_retract_closed(&cls, 4).unwrap().closed, "{s}");
        }
    }
}

#[test]
fn axiom_ii_is_regularity_of_every_member() {
    let cat = vect(2);
    for s in ["split-mono", "mono", "coker-div:2", "all", "identities"] {
        let cls = class(&cat, s, 4);
        let rep = validate_qe_mono(&cls, 4).unwrap();
        if !rep.axiom("i").unwrap().passed {
            continue;
        }
        let mut all_regular = true;
        for a in cat.objects(4).unwrap() {
            for b in cat.objects(4).unwrap() {
                for m in cat.hom(&a, &b).unwrap().iter() {
                    if cls.contains(m).unwrap() {
                        all_regular &= matches!(check_regular_mono(&cat, m, 4), Ok(v) if v.regular);
                    }
                }
            }
        }
        assert_eq!(rep.axiom("ii").unwrap().passed, all_regular, "{s}");
    }
}

#[test]
fn duality_on_tables() {
    for src in [ARROW, INVOLUTION, SPAN] {
        let cat = FiniteCategory::load_validated(src).unwrap();
        let op = cat.dual();
        for s in ["all", "identities", "mono", "epi", "split-mono", "split-epi", "regular-mono", "table:f,g,1A"] {
            let d = ClassDescriptor::parse(s).unwrap();
            let here = validate_qe_mono(&MorphismClass::new(&cat, d.clone(), 1), 1).unwrap();
            let there = validate_qe_epi(&MorphismClass::new(&op, d.dual(), 1), 1).unwrap();
            let verdicts = |r: &QeReport| r.axioms.iter().map(|a| a.passed).collect::<Vec<_>>();
            assert_eq!(verdicts(&here), verdicts(&there), "{s} on {}", cat.label());
        }
    }
}

#[test]
fn reports_serialize_with_counts() {
    let cat = vect(2);
    let rep = validate_qe_mono(&class(&cat, "split-mono", 4), 4).unwrap();
    let j = rep.to_json();
    assert_eq!(j["class"], "split-mono");
    assert_eq!(j["bound"], 4);
    assert_eq!(j["passed"], true);
    assert_eq!(j["axioms"].as_array().unwrap().len(), 3);
}
