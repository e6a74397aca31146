use num_traits::{Signed, Zero};
use ulat_core::convergence::Status;
use ulat_core::lattice::{FiniteLattice, Lattice, TruncationPair};
use ulat_core::rational::{int, ratio};
use ulat_core::spaces::{QLine, QVec, RatVec, TableLattice};
use ulat_core::uniformity::{
    canonical_pairs, composition_counterexample, derived_semimetric, interval_agreement, kernel_partition,
    ph_criterion, quotient, real_entourage_compose_check, real_entourage_contains, ustar_family, validate_semimetric,
    validate_semimetric_sampled, ExtValue, LatticeSemimetric, SemimetricFamily,
};
use ulat_core::{Error, Rational};

fn fin(q: Rational) -> ExtValue {
    ExtValue::Finite(q)
}

/// The 4-chain `0 < a < b < 1` with `a` and `b` collapsed.
fn collapsing_chain() -> (TableLattice, SemimetricFamily<usize>) {
    let l = TableLattice::from_covers("c4", ["0", "a", "b", "1"].map(String::from).to_vec(), &[(0, 1), (1, 2), (2, 3)])
        .unwrap();
    let d = LatticeSemimetric::pullback("collapse", LatticeSemimetric::<usize>::discrete(), |x: &usize| {
        *x - usize::from(*x == 2)
    });
    (l, SemimetricFamily::single("collapse", d))
}

#[test]
fn validate_semimetric_examples() {
    let q3 = QVec::new(3);
    let v = validate_semimetric_sampled(&q3, &LatticeSemimetric::l1(), 500, 7);
    assert_eq!(v.status, Status::VerifiedAtHorizon);

    for l in [TableLattice::powerset(2), TableLattice::n5()] {
        assert!(validate_semimetric(&l, &LatticeSemimetric::zero()).is_exact());
    }
    assert!(validate_semimetric_sampled(&QLine, &LatticeSemimetric::zero(), 200, 1).accepts());

    let broken = LatticeSemimetric::new("forward", |x: &RatVec, y: &RatVec| {
        let gap = &x.0[0] - &y.0[0];
        fin(if gap.is_positive() { gap } else { Rational::zero() })
    });
    let v = validate_semimetric_sampled(&q3, &broken, 500, 7);
    assert!(v.is_falsified());
    assert!(v.witness.unwrap().detail.starts_with("symmetry"));
}

#[test]
fn derived_semimetric_examples() {
    let p = TruncationPair::canonical(&QLine, int(-1), int(1)).unwrap();
    let d = derived_semimetric(&QLine, &LatticeSemimetric::abs(), &p).unwrap();
    assert_eq!(d.eval(&int(5), &int(7)), ExtValue::zero());
    assert_eq!(d.eval(&int(0), &ratio(1, 2)), fin(ratio(1, 2)));

    let p2 = TableLattice::powerset(2);
    let p = TruncationPair::canonical(&p2, p2.element("{1}").unwrap(), p2.element("{1,2}").unwrap()).unwrap();
    let d = derived_semimetric(&p2, &LatticeSemimetric::discrete(), &p).unwrap();
    assert_eq!(d.eval(&p2.element("{}").unwrap(), &p2.element("{2}").unwrap()), fin(int(1)));
}

#[test]
fn derived_semimetrics_stay_in_the_class() {
    let l = TableLattice::divisors(12);
    let rank = LatticeSemimetric::rank(&l);
    for p in canonical_pairs(&l, &l.elements()) {
        let d = derived_semimetric(&l, &rank, &p).unwrap();
        assert!(validate_semimetric(&l, &d).is_exact(), "{}", d.name());
        for x in l.elements() {
            for y in l.elements() {
                assert!(d.eval(&x, &y) <= rank.eval(&x, &y));
            }
        }
    }
}

#[test]
fn derived_semimetric_rejects_non_canonical_pairs() {
    let p = TruncationPair::new(&QLine, int(1), int(-1));
    assert!(matches!(derived_semimetric(&QLine, &LatticeSemimetric::abs(), &p), Err(Error::NonCanonicalPair { .. })));
}

#[test]
fn ustar_family_examples() {
    let abs = SemimetricFamily::single("qline", LatticeSemimetric::abs());
    let pairs: Vec<_> = (1..=8).map(|n| TruncationPair::new(&QLine, int(-n), int(n))).collect();
    let fam = ustar_family(&QLine, &abs, &pairs).unwrap();
    assert_eq!(fam.len(), 8);
    assert_eq!(fam.members()[2].eval(&int(10), &int(-10)), fin(int(6)));

    let l = TableLattice::powerset(2);
    let disc = SemimetricFamily::single("p2", LatticeSemimetric::discrete());
    let full = [TruncationPair::new(&l, l.bottom().unwrap(), l.top().unwrap())];
    let fam = ustar_family(&l, &disc, &full).unwrap();
    for x in l.elements() {
        for y in l.elements() {
            assert_eq!(fam.members()[0].eval(&x, &y), disc.members()[0].eval(&x, &y));
        }
    }

    let q2 = QVec::new(2);
    let l1 = SemimetricFamily::single("q2", LatticeSemimetric::l1());
    let unit = [TruncationPair::new(&q2, RatVec::from_ints(&[0, 0]), RatVec::from_ints(&[1, 1]))];
    let fam = ustar_family(&q2, &l1, &unit).unwrap();
    assert_eq!(fam.len(), 1);
    assert_eq!(fam.members()[0].eval(&RatVec::from_ints(&[2, 2]), &RatVec::from_ints(&[0, 0])), fin(int(2)));

    assert!(matches!(ustar_family(&QLine, &abs, &[]), Err(Error::Empty(_))));
}

#[test]
fn interval_agreement_examples() {
    let l = TableLattice::powerset(3);
    let rank = SemimetricFamily::single("rank", LatticeSemimetric::rank(&l));
    for p in canonical_pairs(&l, &l.elements()) {
        let derived = SemimetricFamily::single("derived", derived_semimetric(&l, &rank.members()[0], &p).unwrap());
        assert!(interval_agreement(&l, &rank, &derived, &p).unwrap().is_exact());
        assert!(interval_agreement(&l, &rank, &rank, &p).unwrap().is_exact());
    }

    let c2 = TableLattice::chain(2);
    let disc = SemimetricFamily::single("discrete", LatticeSemimetric::discrete());
    let zero = SemimetricFamily::single("zero", LatticeSemimetric::zero());
    let whole = TruncationPair::new(&c2, 0, 1);
    let v = interval_agreement(&c2, &disc, &zero, &whole).unwrap();
    assert!(v.is_falsified());
    assert_eq!(v.witness.unwrap().indices.len(), 2);
}

#[test]
fn kernel_partition_examples() {
    let l = TableLattice::powerset(2);
    let disc = SemimetricFamily::single("discrete", LatticeSemimetric::discrete());
    let zero = SemimetricFamily::single("zero", LatticeSemimetric::zero());
    assert!(kernel_partition(&l, &disc).unwrap().is_discrete());
    assert_eq!(kernel_partition(&l, &zero).unwrap().classes().len(), 1);

    let (c4, collapse) = collapsing_chain();
    let k = kernel_partition(&c4, &collapse).unwrap();
    assert_eq!(k.classes(), &[vec![0], vec![1, 2], vec![3]]);
}

#[test]
fn kernel_partition_rejects_non_congruences() {
    let l = TableLattice::powerset(2);
    let single = l.element("{1}").unwrap();
    let d = LatticeSemimetric::pullback("lump", LatticeSemimetric::<usize>::discrete(), move |x: &usize| {
        usize::from(*x == single)
    });
    let fam = SemimetricFamily::single("lump", d);
    assert!(matches!(kernel_partition(&l, &fam), Err(Error::CongruenceViolation(_))));
}

#[test]
fn quotient_examples() {
    let l = TableLattice::powerset(2);
    let zero = SemimetricFamily::single("zero", LatticeSemimetric::zero());
    let q = quotient(&l, &kernel_partition(&l, &zero).unwrap(), &zero).unwrap();
    assert_eq!(q.lattice.size(), 1);

    let disc = SemimetricFamily::single("discrete", LatticeSemimetric::discrete());
    let q = quotient(&l, &kernel_partition(&l, &disc).unwrap(), &disc).unwrap();
    assert_eq!(q.lattice.size(), 4);
    assert!(q.is_hausdorff());

    let (c4, collapse) = collapsing_chain();
    let q = quotient(&c4, &kernel_partition(&c4, &collapse).unwrap(), &collapse).unwrap();
    assert_eq!(q.lattice.size(), 3);
    assert!(q.is_hausdorff());
    assert!(q.lattice.is_distributive());
    let els = q.lattice.elements();
    for x in &els {
        for y in &els {
            assert!(q.lattice.leq(x, y) || q.lattice.leq(y, x));
        }
    }
}

#[test]
fn ph_criterion_examples() {
    let l = TableLattice::powerset(2);
    let disc = SemimetricFamily::single("discrete", LatticeSemimetric::discrete());
    let all: Vec<usize> = l.elements();
    let out = ph_criterion(&l, &all, &disc).unwrap();
    assert!(out.criterion && out.agrees());

    let c3 = TableLattice::chain(3);
    let out = ph_criterion(&c3, &[0, 2], &disc).unwrap();
    assert!(out.criterion && out.agrees());

    let zero = SemimetricFamily::single("zero", LatticeSemimetric::zero());
    for l in [TableLattice::powerset(2), TableLattice::chain(3)] {
        let all = l.elements();
        let out = ph_criterion(&l, &all, &zero).unwrap();
        assert!(!out.criterion && out.agrees());
    }

    let out = ph_criterion(&c3, &[1], &disc).unwrap();
    assert!(!out.criterion && out.agrees());
}

#[test]
fn ph_criterion_rejects_non_sublattices() {
    let l = TableLattice::powerset(2);
    let disc = SemimetricFamily::single("discrete", LatticeSemimetric::discrete());
    let atoms = [l.element("{1}").unwrap(), l.element("{2}").unwrap()];
    assert!(matches!(ph_criterion(&l, &atoms, &disc), Err(Error::NotSublattice(_))));
}

#[test]
fn real_entourage_examples() {
    assert!(real_entourage_contains(5, &int(5), &ratio(53, 10)));
    assert!(real_entourage_contains(5, &int(0), &ratio(1, 5)));
    assert!(!real_entourage_contains(5, &int(0), &int(3)));
    assert!(real_entourage_contains(5, &int(-5), &int(-900)));
}

#[test]
fn real_entourage_composition() {
    for n in [1, 64] {
        assert!(real_entourage_compose_check(n, 2000, 11).is_exact(), "n = {n}");
    }
    assert!(composition_counterexample(2, 2, &int(0), &ratio(1, 2), &int(1)));
}
