use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ulat_core::convergence::{
    build_subnet, decide_o1_eventual_constancy, exhaustivity_probe, line_abs_cauchy_refutation, metric_cauchy,
    unbounded_separation_example, ustar_nonconvergence_on_line, verify_o2, Eventual, FamilySpec, MetricCertificate,
    O2Witness, Sequence, WitnessSide,
};
use ulat_core::lattice::{
    check_distributive, find_non_homomorphic_truncation, l5_decompose, l5_left_bound, verify_composition_law,
    verify_interval_nesting, FiniteLattice, Lattice, Sample, TruncationPair,
};
use ulat_core::par::{self, Exec};
use ulat_core::rational::{int, ratio, Rational};
use ulat_core::spaces::{finite_carriers, FinCof, FinCofDesc, FinCofFamily, FinCofSet, QLine, QVec, TableLattice};
use ulat_core::symbolic::Term;
use ulat_core::uniformity::{
    interval_agreement, kernel_partition, operator_bound, ph_criterion, quotient, real_entourage_compose_check,
    sublattice_closures, truncation_bound, ustar_family, LatticeSemimetric, OpTree, SemimetricFamily,
};
use ulat_core::Error;

use crate::config::SuiteConfig;
use crate::report::{describe, Report, SuiteRecord, SuiteRun};
use crate::LabError;

pub type SuiteFn = fn(&SuiteConfig, &mut SuiteRun) -> Result<(), Error>;

pub struct SuiteDef {
    pub name: &'static str,
    pub anchor: &'static str,
    pub run: SuiteFn,
}

pub const SUITES: &[SuiteDef] = &[
    SuiteDef { name: "closure-t4-finite", anchor: "Theorem t4 / Cor. c2", run: closure_t4_finite },
    SuiteDef { name: "ex", anchor: "Example ex", run: ex },
    SuiteDef { name: "ex-r", anchor: "Example ex-r", run: ex_r },
    SuiteDef { name: "exhaustive-t2", anchor: "Prop. l4 / Theorem t2", run: exhaustive_t2 },
    SuiteDef { name: "lemma-l2", anchor: "Lemma l2", run: lemma_l2 },
    SuiteDef { name: "lemma-l5", anchor: "Lemma l5", run: lemma_l5 },
    SuiteDef { name: "o1o2", anchor: "Example exo1o2", run: o1o2 },
    SuiteDef { name: "prop-d", anchor: "Prop. d", run: prop_d },
    SuiteDef { name: "prop-p1", anchor: "Prop. p1", run: prop_p1 },
    SuiteDef { name: "prop-ph", anchor: "Prop. pH", run: prop_ph },
    SuiteDef { name: "prop-q", anchor: "Prop. q", run: prop_q },
    SuiteDef { name: "subnet-t3", anchor: "Theorem t3", run: subnet_t3 },
];

pub const L5_CASES: u64 = 10_000;
pub const L2_TREES: u64 = 1_000;
pub const PH_MAX_SIZE: usize = 8;

pub fn lookup(name: &str) -> Option<&'static SuiteDef> {
    SUITES.iter().find(|s| s.name == name)
}

pub fn names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Expands `all`, rejects unknown names and removes duplicates.
pub fn resolve(requested: &[String]) -> Result<Vec<&'static SuiteDef>, LabError> {
    let mut out: Vec<&'static SuiteDef> = Vec::new();
    for name in requested {
        let defs: Vec<&'static SuiteDef> = if name == "all" {
            SUITES.iter().collect()
        } else {
            vec![lookup(name).ok_or_else(|| LabError::UnknownSuite(name.clone()))?]
        };
        for d in defs {
            if !out.iter().any(|o| o.name == d.name) {
                out.push(d);
            }
        }
    }
    if out.is_empty() {
        return Err(LabError::Config("no suites requested".into()));
    }
    Ok(out)
}

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteRecord, LabError> {
    let def = lookup(name).ok_or_else(|| LabError::UnknownSuite(name.to_string()))?;
    Ok(run_def(def, config))
}

fn run_def(def: &SuiteDef, config: &SuiteConfig) -> SuiteRecord {
    let start = Instant::now();
    let mut run = SuiteRun::new();
    if let Err(e) = (def.run)(config, &mut run) {
        run.fail("error", e.to_string());
    }
    let mut rec = run.finish(def.name, def.anchor);
    if config.timings {
        rec.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    rec
}

/// Runs the configured suites concurrently; the report is sorted by name.
pub fn run_suites(config: &SuiteConfig) -> Result<Report, LabError> {
    let defs = resolve(&config.suites)?;
    let records = par::map_slice(Exec::default(), &defs, |d| run_def(d, config));
    Ok(Report::new(records))
}

/// Independent stream per suite so that adding a suite does not shift others.
fn rng_for(config: &SuiteConfig, suite: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in suite.bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(config.seed ^ h)
}

fn lemma_l5(config: &SuiteConfig, run: &mut SuiteRun) -> Result<(), Error> {
    let g = QVec::new(5);
    let mut rng = rng_for(config, "lemma-l5");
    for i in 0..L5_CASES {
        let (x, y, a) = (g.sample(&mut rng), g.sample(&mut rng), g.sample_positive(&mut rng));
        let d = l5_decompose(&g, &x, &y, &a)?;
        run.check(d.holds(&g), &format!("identity case {i}"), || {
            format!("x = {}, y = {}, a = {}: {:?}", g.show(&x), g.show(&y), g.show(&a), d)
        });
    }
    for i in 0..L5_CASES {
        let (s, x, y, a) = (g.sample(&mut rng), g.sample(&mut rng), g.sample(&mut rng), g.sample_positive(&mut rng));
        let ok = l5_left_bound(&g, &s, &x, &y, &a)?;
        run.check(ok, &format!("left bound case {i}"), || {
            format!("s = {}, x = {}, y = {}, a = {}", g.show(&s), g.show(&x), g.show(&y), g.show(&a))
        });
    }
    Ok(())
}

fn distributive_carriers() -> Vec<TableLattice> {
    let mut out = vec![TableLattice::powerset(3), TableLattice::divisors(60)];
    out.extend((2..=5).map(TableLattice::chain));
    out
}

fn prop_p1(_: &SuiteConfig, run: &mut SuiteRun) -> Result<(), Error> {
    for l in distributive_carriers() {
        let name = l.name();
        let c = verify_composition_law(&l);
        run.check(c.is_none(), &format!("composition law on {name}"), || format!("{c:?}"));
        let c = verify_interval_nesting(&l);
        run.check(c.is_none(), &format!("interval nesting on {name}"), || format!("{c:?}"));
    }
    run.note(format!("composition law checked on all {} tuples of powerset(3)", 8u64.pow(5)));
    Ok(())
}

fn prop_d(_: &SuiteConfig, run: &mut SuiteRun) -> Result<(), Error> {
    for l in distributive_carriers() {
        let name = l.name();
        let d = check_distributive(&l);
        run.check(d.holds(), &format!("{name} distributive"), || format!("{d:?}"));
        let h = find_non_homomorphic_truncation(&l);
        run.check(h.is_none(), &format!("{name} truncations are homomorphisms"), || format!("{h:?}"));
    }
    for l in [TableLattice::n5(), TableLattice::m3()] {
        let name = l.name();
        match find_non_homomorphic_truncation(&l) {
            Some((p, v)) => run.expected_failure(
                format!("{name} truncation {}", p.show(&l)),
                format!("{:?} fails at x = {}, y = {}", v.op, l.show(&v.x), l.show(&v.y)),
            ),
            None => run.fail(&name, "no non-homomorphic truncation found on a non-distributive carrier"),
        }
        let d = check_distributive(&l);
        run.check(!d.holds(), &format!("{name} not distributive"), || "distributivity reported".into());
    }
    Ok(())
}

fn lemma_l2(config: &SuiteConfig, run: &mut SuiteRun) -> Result<(), Error> {
    let q3 = QVec::new(3);
    let d = LatticeSemimetric::l1();
    let mut rng = rng_for(config, "lemma-l2");
    for i in 0..L2_TREES {
        let tree = OpTree::random(&mut rng, 5, 4);
        let xs: Vec<_> = (0..4).map(|_| q3.sample(&mut rng)).collect();
        let ys: Vec<_> = (0..4).map(|_| q3.sample(&mut rng)).collect();
        let (lhs, rhs) = operator_bound(&q3, &d, &tree, &xs, &ys);
        run.check(lhs <= rhs, &format!("operator bound, tree {i}"), || format!("{lhs} > {rhs} for {tree:?}"));
        let e: Vec<_> = (0..6).map(|_| q3.sample(&mut rng)).collect();
        let p = TruncationPair::new(&q3, e[0].clone(), e[1].clone());
        let q = TruncationPair::new(&q3, e[2].clone(), e[3].clone());
        let (lhs, rhs) = truncation_bound(&q3, &d, &p, &q, &e[4], &e[5]);
        run.check(lhs <= rhs, &format!("truncation bound, case {i}"), || format!("{lhs} > {rhs}"));
    }
    Ok(())
}

fn prop_q(_: &SuiteConfig, run: &mut SuiteRun) -> Result<(), Error> {
    for l in finite_carriers() {
        for fam in ulat_core::spaces::finite_families(&l) {
            let subject = format!("{} / {}", l.name(), fam.carrier());
            match kernel_partition(&l, &fam) {
                Ok(k) => {
                    run.pass();
                    let q = quotient(&l, &k, &fam)?;
                    run.check(q.is_hausdorff(), &format!("{subject} quotient"), || "quotient is not Hausdorff".into());
                }
                Err(e) => run.fail(&subject, e.to_string()),
            }
        }
    }
    Ok(())
}

fn small_carriers() -> Vec<TableLattice> {
    finite_carriers().into_iter().filter(|l| l.size() <= PH_MAX_SIZE).collect()
}

fn prop_ph(_: &SuiteConfig, run: &mut SuiteRun) -> Result<(), Error> {
    for l in small_carriers() {
        let subs = l.sublattices();
        for fam in ulat_core::spaces::finite_families(&l) {
            for s in &subs {
                let o = ph_criterion(&l, s, &fam)?;
                run.check(o.agrees(), &format!("{} / {} / S = {s:?}", l.name(), fam.carrier()), || format!("{o:?}"));
            }
        }
    }
    Ok(())
}

fn closure_t4_finite(_: &SuiteConfig, run: &mut SuiteRun) -> Result<(), Error> {
    for l in small_carriers() {
        let subs = l.sublattices();
        for fam in ulat_core::spaces::finite_families(&l) {
            for s in &subs {
                let c = sublattice_closures(&l, s, &fam)?;
                run.check(c.agrees(), &format!("{} / {} / S = {s:?}", l.name(), fam.carrier()), || {
                    format!("u-closure {:?}, u*-closure {:?}", c.u, c.ustar)
                });
            }
        }
    }
    for l in finite_carriers() {
        let (Some(bot), Some(top)) = (l.bottom(), l.top()) else { continue };
        let p = TruncationPair::canonical(&l, bot, top)?;
        for fam in ulat_core::spaces::finite_families(&l) {
            let star = ustar_family(&l, &fam, std::slice::from_ref(&p))?;
            let v = interval_agreement(&l, &fam, &star, &p)?;
            run.exact(&format!("{} / {} bounded collapse", l.name(), fam.carrier()), &v);
        }
    }
    Ok(())
}

/// Truncation pairs `(−i, i)` together with seeded random pairs `a ≤ b`.
pub fn line_ustar_pairs(config: &SuiteConfig, suite: &str) -> Vec<TruncationPair<Rational>> {
    let mut rng = rng_for(config, suite);
    let mut pairs: Vec<_> = (1..=8).map(|i| TruncationPair::new(&QLine, int(-i), int(i))).collect();
    for _ in 0..24 {
        let (a, b) = (QLine.sample(&mut rng), QLine.sample(&mut rng));
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        pairs.push(TruncationPair::new(&QLine, a, b));
    }
    pairs
}

pub fn abs_family() -> SemimetricFamily<Rational> {
    SemimetricFamily::single("qline", LatticeSemimetric::abs())
}

fn ex_r(config: &SuiteConfig, run: &mut SuiteRun) -> Result<(), Error> {
    let per_n = 10_000u64.div_ceil(64);
    for n in 1..=64u64 {
        let v = real_entourage_compose_check(n, per_n, config.seed.wrapping_add(n));
        run.exact(&format!("U_{} ∘ U_{} ⊆ U_{n}", 2 * n, 2 * n), &v);
    }
    let k = Sequence::<QLine>::described(Term::index());
    let ustar = FamilySpec::Derived { base: abs_family(), pairs: line_ustar_pairs(config, "ex-r") };
    let cert = MetricCertificate::reciprocal();
    let v = metric_cauchy(&QLine, &k, &ustar, &cert, &config.eps_grid, config.horizon)?;
    run.exact("x_k = k is u*-Cauchy", &v);
    run.refuted("x_k = k is |·|-Cauchy", &line_abs_cauchy_refutation(&Term::index(), &config.eps_grid));
    let mut rs = vec![int(0), int(100), ratio(-7, 2)];
    let mut rng = rng_for(config, "ex-r/targets");
    rs.extend((0..100).map(|_| QLine.sample(&mut rng)));
    for r in rs {
        let z = ustar_nonconvergence_on_line(&r);
        run.exact(&format!("x_k = k does not converge to {r}"), &z.verdict);
    }
    Ok(())
}

fn ex(_: &SuiteConfig, run: &mut SuiteRun) -> Result<(), Error> {
    for k in 1..=50u64 {
        for n in 1..=200u64 {
            let r = unbounded_separation_example(k, n)?;
            let bound = ratio(k as i64, n as i64);
            let ok = r.truncated_difference.at_most(&bound) && !r.unclamped.is_finite();
            run.check(ok && r.sigma.is_exact() && r.unbounded.is_falsified(), &format!("k = {k}, n = {n}"), || {
                format!("truncated {} vs k/n = {bound}, unclamped {}", r.truncated_difference, r.unclamped)
            });
        }
    }
    Ok(())
}

pub fn fincof_singletons() -> Sequence<FinCof> {
    Sequence::described(FinCof::singletons())
}

/// `M = {∅}` and `N` the cofinite sets.
pub fn fincof_canonical_witness() -> O2Witness<FinCof> {
    O2Witness {
        lower: WitnessSide::Chain(Sequence::constant(&FinCof, &FinCofSet::empty())),
        upper: WitnessSide::Family(FinCofFamily::AllCofinite),
        eventual: Eventual::Affine { offset: 0 },
    }
}

fn o1o2(config: &SuiteConfig, run: &mut SuiteRun) -> Result<(), Error> {
    let a = fincof_singletons();
    let empty = FinCofSet::empty();
    let v = verify_o2(&FinCof, &a, &empty, &fincof_canonical_witness(), config.horizon)?;
    run.exact("A_k = {x_k} O₂-converges to ∅", &v);
    let v = decide_o1_eventual_constancy(&FinCof, &a, &empty, config.horizon)?;
    run.refuted("A_k = {x_k} O₁-converges to ∅", &v);
    if v.is_falsified() && v.basis != ulat_core::convergence::Basis::Symbolic {
        run.fail("O₁ refutation", format!("not exact: {}", describe(&v)));
    }
    let chain = O2Witness::chains(
        Sequence::constant(&FinCof, &empty),
        Sequence::described(FinCof::coprefix_chain()),
        Eventual::Affine { offset: 1 },
    );
    let v = verify_o2(&FinCof, &a, &empty, &chain, config.horizon.min(500))?;
    run.refuted("chain witness X ∖ {x_1..x_j}", &v);
    Ok(())
}

fn subnet_t3(_: &SuiteConfig, run: &mut SuiteRun) -> Result<(), Error> {
    let q = |s: &str| Sequence::<QLine>::described(Term::parse(s).expect("valid term"));
    let p = TruncationPair::new(&QLine, int(-1), int(1));
    let w = O2Witness::chains(q("-1/k"), q("1/k"), Eventual::Affine { offset: 1 });
    let e = build_subnet(&QLine, &q("(-1)^k/k"), &[p], &[w], 100)?;
    run.check(e.steps.len() == 100, "ℚ-line step count", || format!("{} steps", e.steps.len()));
    run.exact("ℚ-line enumeration invariants", &e.check_invariants(&QLine));

    let b = FinCofSet::cofinite([2]);
    let p = TruncationPair::new(&FinCof, FinCofSet::empty(), b.clone());
    let upper = FinCofDesc::Truncated { inner: Box::new(FinCof::coprefix_chain()), a: FinCofSet::empty(), b };
    let w = O2Witness::chains(
        Sequence::constant(&FinCof, &FinCofSet::empty()),
        Sequence::described(upper),
        Eventual::Affine { offset: 1 },
    );
    let e = build_subnet(&FinCof, &fincof_singletons(), &[p], &[w], 100)?;
    run.check(e.steps.len() == 100, "FinCof step count", || format!("{} steps", e.steps.len()));
    run.exact("FinCof enumeration invariants", &e.check_invariants(&FinCof));
    Ok(())
}

fn exhaustive_t2(config: &SuiteConfig, run: &mut SuiteRun) -> Result<(), Error> {
    let k = Sequence::<QLine>::described(Term::index());
    let plain = FamilySpec::Plain(abs_family());
    let ustar = FamilySpec::Derived { base: abs_family(), pairs: line_ustar_pairs(config, "exhaustive-t2") };
    let cert = MetricCertificate::reciprocal();
    let (grid, h) = (&config.eps_grid, config.horizon);
    run.refuted("x_k = k Cauchy under {|·|}", &metric_cauchy(&QLine, &k, &plain, &cert, grid, h)?);
    run.exact("x_k = k Cauchy under u*", &metric_cauchy(&QLine, &k, &ustar, &cert, grid, h)?);
    run.refuted("{|·|} exhaustive on x_k = k", &exhaustivity_probe(&QLine, &k, &plain, None, grid, h)?);
    run.exact("u* exhaustive on x_k = k", &exhaustivity_probe(&QLine, &k, &ustar, None, grid, h)?);
    let bounded = Sequence::<QLine>::described(Term::parse("1 - 1/k").expect("valid term"));
    let v = exhaustivity_probe(&QLine, &bounded, &plain, Some(&cert), grid, h)?;
    run.holds("{|·|} exhaustive on the bounded x_k = 1 − 1/k", &v);
    Ok(())
}
