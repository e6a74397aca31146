use ulat_core::convergence::{
    build_subnet, decide_o1_eventual_constancy, default_eps_grid, metric_cauchy, metric_converges,
    unbounded_separation_example, ustar_nonconvergence_on_line, verify_o1, verify_o2, verify_uo, verify_uo_positives,
    Basis, Eventual, FamilySpec, MetricCertificate, Mode, O1Witness, O2Witness, Sequence, Status, WitnessSide,
};
use ulat_core::lattice::{Lattice, TruncationPair};
use ulat_core::rational::{int, ratio};
use ulat_core::spaces::{C00Desc, C00Vec, FinCof, FinCofFamily, FinCofSet, Periodic, QLine, TableLattice, C00};
use ulat_core::symbolic::Term;
use ulat_core::uniformity::{real_entourage_contains, ExtValue, LatticeSemimetric, SemimetricFamily};
use ulat_core::Error;

fn q(s: &str) -> Sequence<QLine> {
    Sequence::described(Term::parse(s).unwrap())
}

fn abs() -> SemimetricFamily<ulat_core::Rational> {
    SemimetricFamily::single("qline", LatticeSemimetric::abs())
}

#[test]
fn o1_examples() {
    let w = O1Witness { lower: q("-1/k"), upper: q("1/k"), start: 1 };
    let v = verify_o1(&QLine, &q("(-1)^k/k"), &int(0), &w, 2000).unwrap();
    assert!(v.accepts());
    assert!(v.status >= Status::VerifiedAtHorizon);

    let c = int(-3);
    let v = verify_o1(&QLine, &Sequence::constant(&QLine, &c), &c, &O1Witness::constant(&QLine, &c, 1), 50).unwrap();
    assert!(v.is_exact());

    let c3 = TableLattice::chain(3);
    let alt = Sequence::described(Periodic::new(vec![], vec![0, 2]).unwrap());
    let w = O1Witness { lower: Sequence::constant(&c3, &0), upper: Sequence::constant(&c3, &2), start: 1 };
    assert!(verify_o1(&c3, &alt, &1, &w, 30).unwrap().is_falsified());
}

#[test]
fn o2_examples() {
    let a = Sequence::<FinCof>::described(FinCof::singletons());
    let empty = FinCofSet::empty();
    let w = O2Witness {
        lower: WitnessSide::Chain(Sequence::constant(&FinCof, &empty)),
        upper: WitnessSide::Family(FinCofFamily::AllCofinite),
        eventual: Eventual::Affine { offset: 0 },
    };
    let v = verify_o2(&FinCof, &a, &empty, &w, 500).unwrap();
    assert!(v.is_exact());

    let w = O1Witness { lower: q("-1/k"), upper: q("1/k"), start: 1 };
    let s = q("(-1)^k/k");
    assert!(verify_o2(&QLine, &s, &int(0), &O2Witness::from_o1(&QLine, &w), 500).unwrap().accepts());

    let w = O2Witness::chains(q("-1/j"), q("1/j"), Eventual::Affine { offset: 1 });
    assert!(verify_o2(&QLine, &s, &int(0), &w, 2000).unwrap().is_exact());
}

#[test]
fn eventual_constancy_examples() {
    let a = Sequence::<FinCof>::described(FinCof::singletons());
    let v = decide_o1_eventual_constancy(&FinCof, &a, &FinCofSet::empty(), 100).unwrap();
    assert!(v.is_falsified());
    assert_eq!(v.basis, Basis::Symbolic);

    let p2 = TableLattice::powerset(2);
    let settled = Sequence::described(Periodic::new(vec![0, 1, 2], vec![3]).unwrap());
    assert!(decide_o1_eventual_constancy(&p2, &settled, &3, 20).unwrap().is_exact());
    let cycling = Sequence::described(Periodic::new(vec![], vec![1, 2]).unwrap());
    assert!(decide_o1_eventual_constancy(&p2, &cycling, &1, 20).unwrap().is_falsified());

    assert!(decide_o1_eventual_constancy(&QLine, &q("1/k"), &int(0), 20).is_err());
}

#[test]
fn unbounded_order_examples() {
    let units = Sequence::<C00>::described(C00Desc::Unit { scale: int(1) });
    let positives = [C00Vec::from_entries([(2, int(3)), (9, ratio(1, 2))]), C00Vec::unit(30, int(7))];
    let v = verify_uo_positives(&C00, &units, &C00Vec::zero(), &positives, Mode::O2, &[], 200).unwrap();
    assert!(v.accepts());

    let c = Sequence::constant(&QLine, &int(5));
    let pairs = [TruncationPair::new(&QLine, int(0), int(1)), TruncationPair::new(&QLine, int(4), int(9))];
    for mode in [Mode::O1, Mode::O2] {
        assert!(verify_uo(&QLine, &c, &int(5), &pairs, mode, &[], 100).unwrap().is_exact());
    }

    let v = verify_uo_positives(&QLine, &q("k"), &int(0), &[int(1)], Mode::O1, &[], 100).unwrap();
    assert!(v.is_falsified());

    assert!(matches!(verify_uo(&QLine, &c, &int(5), &[], Mode::O1, &[], 10), Err(Error::Empty(_))));
    assert!(verify_uo_positives(&QLine, &c, &int(5), &[int(-1)], Mode::O1, &[], 10).is_err());
}

#[test]
fn metric_examples() {
    let grid = default_eps_grid();
    let cert = MetricCertificate::reciprocal();
    let v = metric_converges(&QLine, &q("1/k"), &int(0), &abs(), &cert, &grid, 1000).unwrap();
    assert_eq!(v.status, Status::VerifiedAtHorizon);
    assert!(metric_converges(&QLine, &q("k"), &int(0), &abs(), &cert, &grid, 100).unwrap().is_falsified());

    let pairs = (1..=10).map(|n| TruncationPair::new(&QLine, int(-n), int(n))).collect();
    let ustar = FamilySpec::Derived { base: abs(), pairs };
    assert!(metric_cauchy(&QLine, &q("k"), &ustar, &cert, &grid, 300).unwrap().is_exact());
    let v = metric_cauchy(&QLine, &q("k"), &FamilySpec::Plain(abs()), &cert, &grid, 300).unwrap();
    assert!(v.is_falsified());
    let v = metric_cauchy(&QLine, &q("2 - 1/k"), &FamilySpec::Plain(abs()), &cert, &grid, 1000).unwrap();
    assert_eq!(v.status, Status::VerifiedAtHorizon);
}

#[test]
fn line_nonconvergence_examples() {
    for (r, n) in [(int(0), Some(2)), (int(100), Some(102)), (ratio(-7, 2), None)] {
        let proof = ustar_nonconvergence_on_line(&r);
        assert!(proof.verdict.is_exact(), "{r}");
        if let Some(n) = n {
            assert_eq!(proof.n, n);
        }
        for k in proof.from..proof.from + 500 {
            assert!(!real_entourage_contains(proof.n, &int(k as i64), &r));
        }
    }
}

#[test]
fn separation_examples() {
    for (k, n) in [(3u64, 200u64), (1, 1), (50, 10_000)] {
        let rep = unbounded_separation_example(k, n).unwrap();
        let bound = ratio(k as i64, n as i64);
        assert!(rep.truncated_difference.at_most(&bound), "k = {k}, n = {n}");
        assert_eq!(rep.bound, bound);
        assert_eq!(rep.unclamped, ExtValue::Infinite);
        assert!(rep.sigma.accepts());
        assert!(rep.unbounded.is_falsified());
    }
}

#[test]
fn fincof_subnet_tracks_the_truncation() {
    let p = TruncationPair::new(&FinCof, FinCofSet::empty(), FinCofSet::full());
    let w = O2Witness::chains(
        Sequence::constant(&FinCof, &FinCofSet::empty()),
        Sequence::described(FinCof::coprefix_chain()),
        Eventual::Affine { offset: 1 },
    );
    let e = build_subnet(&FinCof, &Sequence::described(FinCof::singletons()), &[p], &[w], 50).unwrap();
    assert!(e.check_invariants(&FinCof).is_exact());
    for (i, step) in e.steps.iter().enumerate() {
        assert!(FinCof.leq(&step.lower[0], &step.values[0]) && FinCof.leq(&step.values[0], &step.upper[0]), "{i}");
    }
}
