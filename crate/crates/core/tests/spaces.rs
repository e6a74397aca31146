use ulat_core::convergence::{Bound, Side};
use ulat_core::lattice::{
    check_distributive, check_group_axioms_sampled, check_lattice_axioms, check_lattice_axioms_sampled, FiniteLattice,
    Lattice, LatticeGroup,
};
use ulat_core::rational::{int, ratio};
use ulat_core::spaces::{
    fincof_bound_oracle, lookup, standard_carriers, Carrier, EvLin, EvLinSeq, FinCof, FinCofChain, FinCofFamily,
    FinCofSet, QVec, C00,
};
use ulat_core::uniformity::ExtValue;
use ulat_core::Error;

#[test]
fn load_powerset_document() {
    let doc = r#"{
        "name": "p3",
        "elements": ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"],
        "covers": [["{}", "{1}"], ["{}", "{2}"], ["{}", "{3}"],
                   ["{1}", "{1,2}"], ["{1}", "{1,3}"], ["{2}", "{1,2}"],
                   ["{2}", "{2,3}"], ["{3}", "{1,3}"], ["{3}", "{2,3}"],
                   ["{1,2}", "{1,2,3}"], ["{1,3}", "{1,2,3}"], ["{2,3}", "{1,2,3}"]]
    }"#;
    let l = ulat_core::spaces::TableLattice::from_json(doc).unwrap();
    assert_eq!(l.size(), 8);
    assert!(l.is_distributive());
    assert!(check_distributive(&l).holds());
    assert_eq!(l.bottom(), Some(l.element("{}").unwrap()));
}

#[test]
fn load_pentagon_document() {
    let doc = r#"{"elements": ["0", "a", "b", "c", "1"],
                  "covers": [["0", "a"], ["a", "b"], ["b", "1"], ["0", "c"], ["c", "1"]]}"#;
    let l = ulat_core::spaces::TableLattice::from_json(doc).unwrap();
    assert!(!l.is_distributive());
    assert!(!check_distributive(&l).holds());
}

#[test]
fn load_rejects_missing_join() {
    let doc = r#"{"elements": ["0", "a", "b"], "covers": [["0", "a"], ["0", "b"]]}"#;
    let err = ulat_core::spaces::TableLattice::from_json(doc).unwrap_err();
    assert_eq!(err, Error::NotALattice { x: "a".into(), y: "b".into(), missing: "supremum" });
}

#[test]
fn fincof_bound_examples() {
    let chain = FinCofChain::Desc(FinCof::coprefix_chain());
    assert_eq!(fincof_bound_oracle(&chain, Side::Upper), Bound::NoBound);
    let cofinite = FinCofChain::Family(FinCofFamily::AllCofinite);
    assert_eq!(fincof_bound_oracle(&cofinite, Side::Upper), Bound::Exact(FinCofSet::empty()));

    for j in 1..=6u64 {
        let prefixes: Vec<FinCofSet> = (1..=j).map(|i| FinCofSet::finite(1..=i)).collect();
        let sup = fincof_bound_oracle(&FinCofChain::Finite(prefixes), Side::Lower);
        assert_eq!(sup, Bound::Exact(FinCofSet::finite(1..=j)));
    }

    let constant = FinCofChain::Finite(vec![FinCofSet::empty(); 3]);
    assert_eq!(fincof_bound_oracle(&constant, Side::Lower), Bound::Exact(FinCofSet::empty()));
}

#[test]
fn evlin_meet_with_crossing() {
    let x = EvLinSeq::identity();
    let three_e = EvLinSeq::ones().scale(&int(3));
    let m = EvLin.meet(&x, &three_e);
    assert_eq!(m.prefix(), &[int(1), int(2)]);
    assert_eq!(m.eventual(), (&int(3), &int(0)));
    for i in 1..=20 {
        assert_eq!(m.at(i), int(i as i64).min(int(3)));
    }
}

#[test]
fn evlin_norms() {
    for n in [1, 7, 200] {
        assert_eq!(EvLinSeq::ones().scale(&ratio(1, n)).norm(), ExtValue::Infinite);
    }
    assert_eq!(EvLinSeq::finite(vec![int(1), int(-2)]).norm(), ExtValue::Finite(int(3)));
    assert_eq!(EvLinSeq::zero().norm(), ExtValue::zero());
}

#[test]
fn evlin_group_operations() {
    let x = EvLinSeq::identity();
    let y = EvLinSeq::new(vec![int(4)], ratio(1, 2), int(-1));
    let (sum, diff) = (EvLin.add(&x, &y), EvLin.sub(&x, &y));
    let (join, meet) = (EvLin.join(&x, &y), EvLin.meet(&x, &y));
    for i in 1..=30 {
        let (a, b) = (x.at(i), y.at(i));
        assert_eq!(sum.at(i), &a + &b);
        assert_eq!(diff.at(i), &a - &b);
        assert_eq!(join.at(i), a.clone().max(b.clone()));
        assert_eq!(meet.at(i), a.min(b));
    }
}

#[test]
fn catalog_lookups() {
    let q = lookup("qline").unwrap();
    assert!(matches!(q.carrier, Carrier::QLine(_)));
    assert_eq!(q.semimetrics, ["abs"]);

    let f = lookup("fincof").unwrap();
    assert!(matches!(f.carrier, Carrier::FinCof(_)));
    assert!(f.bound_oracle);

    match lookup("m3").unwrap().carrier {
        Carrier::Table(l) => {
            assert!(!l.is_distributive());
            assert!(!check_distributive(&l).holds());
        }
        _ => panic!("m3 is a finite table"),
    }

    assert!(matches!(lookup("qvec5").unwrap().carrier, Carrier::QVec(v) if v.dim() == 5));
    assert!(lookup("qvec0").is_err());
    assert!(lookup("nonesuch").is_err());
}

#[test]
fn catalog_carriers_pass_the_axiom_suites() {
    const SAMPLES: usize = 300;
    const SEED: u64 = 17;
    for entry in standard_carriers() {
        let lattice_fail =
            match &entry.carrier {
                Carrier::Table(l) => {
                    assert_eq!(l.is_distributive(), check_distributive(l).holds(), "{}", entry.id);
                    check_lattice_axioms(l)
                }
                Carrier::QLine(l) => check_lattice_axioms_sampled(l, SAMPLES, SEED)
                    .or_else(|| check_group_axioms_sampled(l, SAMPLES, SEED)),
                Carrier::QVec(l) => check_lattice_axioms_sampled(l, SAMPLES, SEED)
                    .or_else(|| check_group_axioms_sampled(l, SAMPLES, SEED)),
                Carrier::C00(l) => check_lattice_axioms_sampled(l, SAMPLES, SEED)
                    .or_else(|| check_group_axioms_sampled(l, SAMPLES, SEED)),
                Carrier::FinCof(l) => check_lattice_axioms_sampled(l, SAMPLES, SEED),
                Carrier::EvLin(l) => check_lattice_axioms_sampled(l, SAMPLES, SEED)
                    .or_else(|| check_group_axioms_sampled(l, SAMPLES, SEED)),
            };
        assert_eq!(lattice_fail, None, "{}", entry.id);
    }
}

#[test]
fn c00_and_qvec_are_lattice_groups() {
    let q3 = QVec::new(3);
    let x = q3.sub(&ulat_core::spaces::RatVec::from_ints(&[1, -2, 3]), &q3.zero());
    assert!(q3.is_positive(&q3.abs(&x)));
    let u = ulat_core::spaces::C00Vec::unit(4, int(-2));
    assert_eq!(C00.abs(&u), ulat_core::spaces::C00Vec::unit(4, int(2)));
}
