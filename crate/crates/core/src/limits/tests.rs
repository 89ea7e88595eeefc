use super::*;
use crate::concrete::{ModMorphism, ModObject};
use proptest::prelude::*;

fn fv(max_dim: u32) -> ModCategory {
    ModCategory::finvect(2, max_dim)
}

fn capped() -> ModCategory {
    ModCategory::capped(2, 1)
}

fn m(cat: &ModCategory, dom: &[u32], cod: &[u32], rows: &[&[i64]]) -> ModMorphism {
    cat.morphism(dom, cod, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn walking_arrow() -> FiniteCategory {
    FiniteCategory::from_json_str(
        r#"{"objects":["A","B"],
            "morphisms":[{"id":"1A","dom":"A","cod":"A"},{"id":"1B","dom":"B","cod":"B"},{"id":"f","dom":"A","cod":"B"}],
            "identities":{"A":"1A","B":"1B"}}"#,
    )
    .unwrap()
}

#[test]
fn pushout_of_identities_is_literal() {
    let c = fv(2);
    let x = c.object(&[2, 2]).unwrap();
    let id = ModMorphism::identity(&x);
    let p = c.pushout(&id, &id, 4).unwrap().witness.unwrap();
    assert_eq!(p.apex, x);
    assert!(p.m_prime.is_identity() && p.f_prime.is_identity());
}

#[test]
fn pushout_of_two_zero_maps_into_f2() {
    let c = fv(2);
    let z = m(&c, &[], &[2], &[&[]]);
    let formula = c.pushout(&z, &z, 4).unwrap();
    assert_eq!(formula.certificate, Certificate::ByConstruction);
    let w = formula.witness.unwrap();
    assert_eq!(w.apex, ModObject::vector_space(2, 2));
    // the same span searched exhaustively lands on the same apex
    let searched = search::pushout(&c, &z, &z, 4).unwrap();
    assert_eq!(searched.witness.unwrap().apex, w.apex);
    assert!(matches!(searched.certificate, Certificate::Exhaustive { bound: 4, .. }));
}

#[test]
fn capped_category_has_no_pushout_of_zero_injections() {
    let c = capped();
    let z = m(&c, &[], &[2], &[&[]]);
    let out = c.pushout(&z, &z, u64::MAX).unwrap();
    assert!(out.witness.is_none());
    match out.certificate {
        Certificate::Exhaustive { morphisms_in_scope, objects_searched, .. } => {
            assert_eq!(morphisms_in_scope, 5);
            assert_eq!(objects_searched, 2);
        }
        other => panic!("unexpected certificate {other:?}"),
    }
}

#[test]
fn pullback_examples() {
    let c = ModCategory::finmod(4, 64);
    let red = m(&c, &[4], &[2], &[&[1]]);
    let id2 = ModMorphism::identity(red.cod());
    let pb = c.pullback(&red, &id2, 64).unwrap().witness.unwrap();
    assert_eq!(pb.apex, c.object(&[4]).unwrap());
    let pb = c.pullback(&id2, &red, 64).unwrap().witness.unwrap();
    assert_eq!(pb.apex, c.object(&[4]).unwrap());
    let kp = c.kernel_pair(&red, 64).unwrap().witness.unwrap();
    assert_eq!(kp.apex, c.object(&[2, 4]).unwrap());
    assert_eq!(red.after(&kp.k1).unwrap(), red.after(&kp.k2).unwrap());
}

#[test]
fn cokernel_and_kernel_pairs_in_finvect() {
    let c = fv(3);
    let i = m(&c, &[2], &[2, 2], &[&[1], &[0]]);
    let cp = c.cokernel_pair(&i, 8).unwrap().witness.unwrap();
    assert_eq!(cp.apex, ModObject::vector_space(2, 3));
    let p = m(&c, &[2, 2], &[2], &[&[1, 0]]);
    let kp = c.kernel_pair(&p, 8).unwrap().witness.unwrap();
    assert_eq!(kp.apex, ModObject::vector_space(2, 3));
    let x = c.object(&[2, 2]).unwrap();
    let id = ModMorphism::identity(&x);
    let cp = c.cokernel_pair(&id, 8).unwrap().witness.unwrap();
    assert!(cp.k1.is_identity() && cp.k2.is_identity());
}

#[test]
fn equalizer_of_cokernel_pair_recovers_the_mono() {
    let c = fv(3);
    let i = m(&c, &[2], &[2, 2], &[&[1], &[0]]);
    let cp = c.cokernel_pair(&i, 8).unwrap().witness.unwrap();
    let eq = c.equalizer(&cp.k1, &cp.k2, 8).unwrap().witness.unwrap();
    assert_eq!(eq.apex, *i.dom());
    let phi = c.solve_left_factor(&eq.map, &i).unwrap().unwrap();
    assert!(phi.is_iso());
    let same = c.equalizer(&i, &i, 8).unwrap().witness.unwrap();
    assert!(same.map.is_identity());
}

#[test]
fn coequalizer_of_kernel_pair_recovers_reduction() {
    let c = ModCategory::finmod(4, 64);
    let red = m(&c, &[4], &[2], &[&[1]]);
    let kp = c.kernel_pair(&red, 64).unwrap().witness.unwrap();
    let q = c.coequalizer(&kp.k1, &kp.k2, 64).unwrap().witness.unwrap();
    assert_eq!(q.apex, *red.cod());
    let phi = c.solve_right_factor(&q.map, &red).unwrap().unwrap();
    assert!(phi.is_iso());
}

#[test]
fn products_and_coproducts() {
    let c = ModCategory::finmod(4, 64);
    let x = c.object(&[2, 4]).unwrap();
    let zero = c.object(&[]).unwrap();
    assert_eq!(c.product(&x, &zero, 64).unwrap().witness.unwrap().apex, x);
    let s = c.coproduct(&c.object(&[2]).unwrap(), &c.object(&[4]).unwrap(), 64).unwrap().witness.unwrap();
    assert_eq!(s.apex, x);
    let cap = capped();
    let f2 = cap.object(&[2]).unwrap();
    let out = cap.product(&f2, &f2, u64::MAX).unwrap();
    assert!(out.witness.is_none());
}

#[test]
fn vwck_product_construction_example() {
    let c = fv(2);
    let f = m(&c, &[], &[2], &[&[]]);
    let c1 = m(&c, &[2], &[2], &[&[0]]);
    let c2 = m(&c, &[2], &[2], &[&[1]]);
    let w = vwck_construct_via_product(&c, &f, &c1, &c2, 4).unwrap();
    assert_eq!(w.k1.rows(), vec![vec![1], vec![0]]);
    assert_eq!(w.k2.rows(), vec![vec![1], vec![1]]);
    assert_eq!(w.l.rows(), vec![vec![0, 1]]);
    assert_eq!(w.s.rows(), vec![vec![1, 0]]);
    let w = vwck_construct_via_product(&c, &f, &c1, &c1, 4).unwrap();
    assert_eq!(w.k1, w.k2);
    assert_eq!(w.k1.rows(), vec![vec![1], vec![0]]);
}

#[test]
fn vwck_precondition_is_an_error() {
    let c = fv(2);
    let f = m(&c, &[2], &[2], &[&[1]]);
    let c1 = m(&c, &[2], &[2], &[&[0]]);
    let c2 = m(&c, &[2], &[2], &[&[1]]);
    assert!(matches!(vwck_search(&c, &f, &c1, &c2, 4), Err(CatError::Precondition(_))));
    assert!(matches!(vwck_construct_via_product(&c, &f, &c1, &c2, 4), Err(CatError::Precondition(_))));
}

#[test]
fn vwck_counterexample_in_capped_category() {
    let c = capped();
    let f = m(&c, &[], &[2], &[&[]]);
    let c1 = m(&c, &[2], &[2], &[&[0]]);
    let c2 = m(&c, &[2], &[2], &[&[1]]);
    let out = vwck_search(&c, &f, &c1, &c2, u64::MAX).unwrap();
    assert!(out.witness.is_none());
    assert!(matches!(out.certificate, Certificate::Exhaustive { morphisms_in_scope: 5, objects_searched: 2, .. }));
    // the unbounded category has one
    let big = fv(2);
    let w = vwck_search(&big, &f, &c1, &c2, 4).unwrap().witness.unwrap();
    assert!(vw::verify_vwck(&big, &f, &c1, &c2, &w));
}

#[test]
fn vwck_search_along_identity() {
    let c = ModCategory::finmod(4, 16);
    let id = ModMorphism::identity(&c.object(&[4]).unwrap());
    let c1 = m(&c, &[4], &[2], &[&[1]]);
    let w = vwck_search(&c, &id, &c1, &c1, 16).unwrap().witness.unwrap();
    assert!(w.k1.is_identity() && w.k2.is_identity() && w.s.is_identity());
    assert_eq!(w.l, c1);
}

fn vwsp_counterexample_input(c: &ModCategory) -> VwspInput<ModMorphism> {
    let zero = |d: &[u32], e: &[u32]| {
        ModMorphism::zero(&c.object(d).unwrap(), &c.object(e).unwrap())
    };
    VwspInput {
        f: zero(&[2], &[]),
        g: zero(&[2], &[]),
        h: zero(&[2], &[2]),
        q_b: ModMorphism::identity(&c.object(&[2]).unwrap()),
        q_c: zero(&[2], &[2]),
    }
}

#[test]
fn vwsp_counterexample_in_capped_category() {
    let c = capped();
    let input = vwsp_counterexample_input(&c);
    let out = vwsp_search(&c, &input, u64::MAX).unwrap();
    assert!(out.witness.is_none());
    let big = fv(2);
    let input = vwsp_counterexample_input(&big);
    let w = vwsp_search(&big, &input, 4).unwrap().witness.unwrap();
    assert!(vw::verify_vwsp(&big, &input, &w));
}

#[test]
fn vwsp_coproduct_construction_examples() {
    let c = ModCategory::finmod(4, 64);
    let z = c.object(&[]).unwrap();
    let z2 = c.object(&[2]).unwrap();
    let input = VwspInput {
        f: ModMorphism::zero(&z2, &z),
        g: ModMorphism::zero(&z2, &z),
        h: ModMorphism::zero(&z2, &z2),
        q_b: ModMorphism::identity(&z2),
        q_c: ModMorphism::zero(&z2, &z2),
    };
    let w = vwsp_construct_via_coproduct(&c, &input, 64).unwrap();
    assert_eq!(w.apex, c.object(&[2, 2]).unwrap());
    assert_eq!(w.p_b.rows(), vec![vec![1, 0]]);
    assert_eq!(w.p_c.rows(), vec![vec![0, 1]]);
    // Q = 0 collapses the apex to C
    let input = VwspInput {
        f: ModMorphism::zero(&z2, &z),
        g: ModMorphism::zero(&z2, &z),
        h: ModMorphism::zero(&z2, &z2),
        q_b: ModMorphism::zero(&z, &z2),
        q_c: ModMorphism::zero(&z, &z2),
    };
    let w = vwsp_construct_via_coproduct(&c, &input, 64).unwrap();
    assert_eq!(w.apex, z2);
    assert!(w.p_c.is_identity());
}

#[test]
fn vwsp_search_when_q_factors_through_c() {
    let c = fv(2);
    let v = c.object(&[2]).unwrap();
    let z = c.object(&[]).unwrap();
    let h = ModMorphism::identity(&v);
    let q_c = m(&c, &[2], &[2], &[&[1]]);
    let input = VwspInput {
        f: ModMorphism::zero(&v, &z),
        g: ModMorphism::zero(&v, &z),
        h: h.clone(),
        q_b: h.after(&q_c).unwrap(),
        q_c: q_c.clone(),
    };
    let w = vwsp_search(&c, &input, 4).unwrap().witness.unwrap();
    assert_eq!(w.apex, v);
    assert!(w.p_c.is_identity());
    assert_eq!(w.r, q_c);
}

#[test]
fn table_category_limits() {
    let i = walking_arrow();
    let f = i.mor("f").unwrap();
    // the cokernel pair of the arrow is (id_B, id_B) on B
    let cp = i.cokernel_pair(&f, 1).unwrap();
    let w = cp.witness.unwrap();
    assert_eq!(w.apex, i.obj("B").unwrap());
    assert_eq!(i.mor_name(w.k1), "1B");
    let a = i.obj("A").unwrap();
    let b = i.obj("B").unwrap();
    let p = i.product(&a, &b, 1).unwrap().witness.unwrap();
    assert_eq!(p.apex, a);
    let cop = i.coproduct(&a, &b, 1).unwrap().witness.unwrap();
    assert_eq!(cop.apex, b);
}

#[test]
fn witness_json_shape() {
    let c = capped();
    let z = m(&c, &[], &[2], &[&[]]);
    let out = c.pushout(&z, &z, u64::MAX).unwrap();
    let j = out.to_json(&c);
    assert_eq!(j["exists"], false);
    assert_eq!(j["certificate"]["kind"], "exhaustive");
    assert_eq!(j["certificate"]["bound"], u64::MAX);
    let f = fv(2);
    let z = m(&f, &[], &[2], &[&[]]);
    let j = f.pushout(&z, &z, 4).unwrap().to_json(&f);
    assert_eq!(j["certificate"]["kind"], "by-construction");
    assert_eq!(j["witness"]["apex"], serde_json::json!([2, 2]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    /// Whenever the product construction applies, the search also finds a very weak cokernel pair.
    #[test]
    fn product_construction_implies_search_succeeds(a in 0usize..3, b in 1usize..3, fi in 0usize..64, ci in 0usize..64, di in 0usize..64) {
        let c = fv(4);
        let objs = c.objects(8).unwrap();
        let (x, y) = (&objs[a], &objs[b]);
        let fs = c.hom(x, y).unwrap();
        let f = &fs[fi % fs.len()];
        let cs = c.hom(y, &objs[1]).unwrap();
        let c1 = &cs[ci % cs.len()];
        let c2 = cs.iter().cycle().skip(di % cs.len()).take(cs.len()).find(|c2| c2.after(f).unwrap() == c1.after(f).unwrap()).unwrap();
        let w = vwck_construct_via_product(&c, f, c1, c2, 64).unwrap();
        let bound = c.size(&w.apex);
        prop_assert!(vwck_search(&c, f, c1, c2, bound).unwrap().witness.is_some());
    }
}
