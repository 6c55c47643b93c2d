use std::sync::Arc;

use domkit::certify::{
    build_first_nontrivial, certify_half_nontrivial, certify_metabelian, cross_check, verify_lemma31_scan,
    InstanceFamily,
};
use domkit::dominion::{
    dominion_overapprox, dominion_report, find_witness, FamilyHoms, Provenance, Status, TestFamily, DEFAULT_MAX_ORDER,
};
use domkit::fingroup::{all_homs, read_cayley, HomStrategy};
use domkit::nil2::{element_at, element_index, realize_finite};
use domkit::{ElementSet, Error, FiniteGroup, Homomorphism, Nil2Element, Nil2Params};

fn fixture(name: &str) -> Arc<FiniteGroup> {
    Arc::new(read_cayley(format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap())
}

fn k444() -> (Arc<FiniteGroup>, Nil2Params) {
    let p = Nil2Params::k(4, 4, 4).unwrap();
    (Arc::new(realize_finite(&p).unwrap()), p)
}

fn closed(g: &Arc<FiniteGroup>) -> TestFamily {
    TestFamily::quotient_closed(Arc::clone(g), "G", DEFAULT_MAX_ORDER).unwrap()
}

#[test]
fn alternating_subgroup_of_s3_is_closed() {
    let s3 = fixture("s3.cay");
    let a3 = s3.derived_series().terms[1].clone();
    let (q, _) = s3.quotient(&a3).unwrap();
    let fam = TestFamily::new(vec![
        (Arc::clone(&s3), Provenance::Explicit("S3".into())),
        (Arc::new(q), Provenance::QuotientOf { member: 0, kernel_order: 3 }),
    ])
    .unwrap();
    assert_eq!(dominion_overapprox(&s3, &a3, &fam).unwrap(), a3);
}

#[test]
fn normal_subgroups_are_closed_when_quotients_are_targets() {
    for name in ["s3.cay", "d4.cay", "g21.cay", "s4.cay"] {
        let g = fixture(name);
        let fam = closed(&g);
        for n in g.normal_subgroups() {
            assert_eq!(dominion_overapprox(&g, &n, &fam).unwrap(), n, "{name}");
        }
    }
}

#[test]
fn larger_family_gives_smaller_dominion() {
    for name in ["s3.cay", "d4.cay"] {
        let g = fixture(name);
        let small = TestFamily::single(Arc::clone(&g), "G");
        let big = closed(&g);
        for h in g.all_subgroups() {
            let ds = dominion_overapprox(&g, &h, &small).unwrap();
            let db = dominion_overapprox(&g, &h, &big).unwrap();
            assert!(db.is_subset(&ds), "{name}");
            assert!(h.is_subset(&db));
        }
    }
}

#[test]
fn dominion_lies_in_every_equalizer_containing_h() {
    let g = fixture("d4.cay");
    let fam = closed(&g);
    for h in g.all_subgroups() {
        let dom = dominion_overapprox(&g, &h, &fam).unwrap();
        for t in fam.targets() {
            let homs = all_homs(&g, t).unwrap();
            for f in &homs {
                for k in &homs {
                    let eq = f.equalizer(k).unwrap();
                    if h.is_subset(&eq) {
                        assert!(dom.is_subset(&eq));
                    }
                }
            }
        }
    }
}

#[test]
fn witness_for_x_in_k444() {
    let (g, p) = k444();
    let fam = closed(&g);
    let x = g.generators().unwrap()[0];
    let y = g.generators().unwrap()[1];
    let h = g.generated_subgroup(&[g.pow(x, 2), g.pow(y, 2)]);
    let w = find_witness(&g, &h, &fam, x).unwrap().expect("x is separated");
    for a in h.iter() {
        assert_eq!(w.f[a], w.g[a]);
    }
    assert_ne!(w.f[x], w.g[x]);
    let (f, k) = w.homomorphisms(&g, &fam).unwrap();
    assert_eq!(f.apply(x), w.f[x]);
    assert_eq!(k.apply(x), w.g[x]);

    // the identity against x -> x[x,y]^2, y -> y
    let xp = Nil2Element::generator(&p, 0)
        .mul(&Nil2Element::basic_commutator(&p, 0, 1).pow(2))
        .unwrap();
    let yp = Nil2Element::generator(&p, 1);
    let cp = xp.commutator(&yp).unwrap();
    let images: Vec<usize> = (0..64)
        .map(|i| {
            let e = element_at(&p, i).unwrap();
            let t = |k: usize| i64::try_from(&e.gen_exps()[k]).unwrap();
            let c = i64::try_from(&e.comm_exps()[0]).unwrap();
            let img = xp.pow(t(0)).mul(&yp.pow(t(1))).unwrap().mul(&cp.pow(c)).unwrap();
            element_index(&img).unwrap()
        })
        .collect();
    let psi = Homomorphism::new(Arc::clone(&g), Arc::clone(&g), images).unwrap();
    let id = Homomorphism::new(Arc::clone(&g), Arc::clone(&g), (0..64).collect()).unwrap();
    let eq = id.equalizer(&psi).unwrap();
    assert!(h.is_subset(&eq));
    assert!(!eq.contains(x));

    let c2 = element_index(&Nil2Element::triple(&p, 0, 0, 2).unwrap()).unwrap();
    assert!(find_witness(&g, &h, &fam, c2).unwrap().is_none());
    assert!(find_witness(&g, &h, &fam, 0).unwrap().is_none());
}

#[test]
fn report_statuses_partition_the_group() {
    let (g, _) = k444();
    let fam = closed(&g);
    let x = g.generators().unwrap()[0];
    let y = g.generators().unwrap()[1];
    let h = g.generated_subgroup(&[g.pow(x, 2), g.pow(y, 2)]);
    let cert = certify_half_nontrivial(&g, &h, x, y, 2, &fam).unwrap();
    let rep = dominion_report(&g, &h, &fam, std::slice::from_ref(&cert)).unwrap();
    assert_eq!(rep.statuses[cert.element], Status::Certified);
    let dom = dominion_overapprox(&g, &h, &fam).unwrap();
    assert_eq!(rep.overapprox(), dom);
    for a in 0..g.order() {
        let excluded = rep.statuses[a] == Status::Excluded;
        assert_eq!(excluded, !dom.contains(a));
        assert_eq!(excluded, rep.witnesses.contains_key(&a));
        assert_eq!(rep.statuses[a] == Status::InSubgroup, h.contains(a));
    }
    assert!(rep.render_text().contains("relative to family"));
    assert!(cross_check(&cert, &h).is_err());
    assert!(matches!(cross_check(&cert, &h), Err(Error::Disagreement(_))));
}

#[test]
fn half_nontrivial_sign_symmetry_and_preconditions() {
    let (g, _) = k444();
    let fam = closed(&g);
    let x = g.generators().unwrap()[0];
    let y = g.generators().unwrap()[1];
    let h = g.generated_subgroup(&[g.pow(x, 2), g.pow(y, 2)]);
    let pos = certify_half_nontrivial(&g, &h, x, y, 2, &fam).unwrap();
    let neg = certify_half_nontrivial(&g, &h, x, y, -2, &fam).unwrap();
    assert!(pos.is_valid() && neg.is_valid());
    assert_eq!(g.mul(pos.element, neg.element), 0);
    let whole = certify_half_nontrivial(&g, &g.elements(), x, y, 1, &fam).unwrap();
    assert!(whole.is_valid());
    assert_eq!(whole.element, g.commutator(x, y));
    let e = certify_half_nontrivial(&g, &h, x, y, 1, &fam).unwrap_err();
    assert!(matches!(e, Error::Precondition(m) if m.contains("v^1")));

    let s4 = fixture("s4.cay");
    let four_cycles: Vec<usize> = (0..24).filter(|&a| s4.element_order(a) == 4).collect();
    let (v, w) = four_cycles
        .iter()
        .flat_map(|&v| four_cycles.iter().map(move |&w| (v, w)))
        .find(|&(v, w)| s4.commutator(s4.commutator(v, w), v) != 0)
        .unwrap();
    let fam4 = TestFamily::single(Arc::clone(&s4), "S4");
    let e = certify_half_nontrivial(&s4, &s4.elements(), v, w, 1, &fam4).unwrap_err();
    assert!(matches!(e, Error::Precondition(m) if m.contains("[[v,w],v]")));
}

#[test]
fn first_nontrivial_subgroup_orders() {
    for (a, b, c, p) in [(4, 4, 4, 2), (8, 8, 4, 2), (8, 8, 8, 2)] {
        let params = Nil2Params::k(a, b, c).unwrap();
        let rep = build_first_nontrivial(&params, p, InstanceFamily::QuotientClosed(DEFAULT_MAX_ORDER)).unwrap();
        let expected = ((a / p) * (b / p) * (c / (p * p))) as usize;
        assert_eq!(rep.subgroup.len(), expected);
        assert_eq!(rep.expected_subgroup_order, expected);
        assert!(rep.nontrivial(), "{}", rep.render_text());
    }
    let e = build_first_nontrivial(&Nil2Params::k(4, 4, 2).unwrap(), 2, InstanceFamily::QuotientClosed(512));
    assert!(matches!(e, Err(Error::Precondition(_))));
}

#[test]
fn metabelian_certificates() {
    let g = fixture("g21.cay");
    let fam = closed(&g);
    let a = g.find_element("a").unwrap();
    let b = g.find_element("b").unwrap();
    let ab = g.find_element("ab").unwrap();
    let h = g.generated_subgroup(&[a, g.commutator(a, b), g.commutator(a, ab)]);
    let cert = certify_metabelian(&g, &h, a, b, ab, &fam, 2).unwrap();
    assert!(cert.is_valid(), "{}", cert.render_text());
    assert_eq!(cert.steps.len(), 8);
    let text = cert.render_text();
    assert!(text.contains("step 6: [f([x,z]), g(y)] = [g([x,z]), g(y)]  [[x,z] lies in H]"));

    let trivial = certify_metabelian(&g, &g.trivial_subgroup(), 0, b, ab, &fam, 2).unwrap();
    assert!(trivial.is_valid());
    assert_eq!(trivial.element, 0);

    let e = certify_metabelian(&g, &h, b, a, ab, &fam, 2).unwrap_err();
    assert!(matches!(e, Error::Precondition(m) if m.contains("derived term 1")));
    let e = certify_metabelian(&g, &g.trivial_subgroup(), a, b, ab, &fam, 2).unwrap_err();
    assert!(matches!(e, Error::Precondition(m) if m.contains("not in H")));

    let s4 = fixture("s4.cay");
    let fam4 = TestFamily::single(Arc::clone(&s4), "S4");
    let e = certify_metabelian(&s4, &s4.elements(), 0, 0, 0, &fam4, 2).unwrap_err();
    assert!(matches!(e, Error::Precondition(m) if m.contains("solvability length 3")));
}

#[test]
fn exchange_scans() {
    for name in ["s3.cay", "s4.cay", "d4.cay", "g21.cay"] {
        let rep = verify_lemma31_scan(&fixture(name));
        assert_eq!(rep.violations, 0, "{name}");
    }
    assert_eq!(verify_lemma31_scan(&fixture("s4.cay")).triples, 13824);
}

#[test]
fn streamed_and_stored_homs_agree() {
    let (g, _) = k444();
    let fam = closed(&g);
    let homs = FamilyHoms::new(&g, &fam, HomStrategy::Auto).unwrap();
    let table = FamilyHoms::new(&g, &fam, HomStrategy::Table).unwrap();
    for t in 0..fam.len() {
        assert_eq!(homs.count(t), table.count(t));
    }
    let first = homs.hom(0, 1);
    let src = Arc::clone(&g);
    Homomorphism::new(src, Arc::clone(&fam.targets()[0]), first).unwrap();
}

#[test]
fn non_subgroup_inputs_are_rejected() {
    let (g, _) = k444();
    let fam = TestFamily::single(Arc::clone(&g), "K");
    let x = g.generators().unwrap()[0];
    let bad = ElementSet::new(vec![0, x]);
    assert!(matches!(dominion_overapprox(&g, &bad, &fam), Err(Error::NotSubgroup(_))));
    assert!(find_witness(&g, &g.trivial_subgroup(), &fam, 10_000).is_err());
}
