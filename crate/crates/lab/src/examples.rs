use serde_json::{json, Value};
use ulat_core::convergence::{
    decide_o1_eventual_constancy, line_abs_cauchy_refutation, metric_cauchy, unbounded_separation_example,
    ustar_nonconvergence_on_line, verify_o2, Eventual, FamilySpec, MetricCertificate, O2Witness, Sequence,
};
use ulat_core::rational::{int, ratio};
use ulat_core::spaces::{FinCof, FinCofSet, QLine};
use ulat_core::symbolic::Term;
use ulat_core::uniformity::real_entourage_compose_check;

use crate::suites::{abs_family, fincof_canonical_witness, fincof_singletons, line_ustar_pairs};
use crate::{LabError, SuiteConfig};

pub const EXAMPLES: &[&str] = &["ex-r", "ex", "o1o2"];

/// A counterexample document and whether it reproduced as expected.
pub struct ExampleOutput {
    pub document: Value,
    pub reproduced: bool,
}

pub fn run_example(name: &str, config: &SuiteConfig) -> Result<ExampleOutput, LabError> {
    match name {
        "ex-r" => ex_r(config),
        "ex" => ex(),
        "o1o2" => o1o2(config),
        other => Err(LabError::UnknownExample(other.to_string())),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn ex_r(config: &SuiteConfig) -> Result<ExampleOutput, LabError> {
    let composition: Vec<_> =
        (1..=8u64).map(|n| (n, real_entourage_compose_check(n, 1_000, config.seed.wrapping_add(n)))).collect();
    let k = Sequence::<QLine>::described(Term::index());
    let ustar = FamilySpec::Derived { base: abs_family(), pairs: line_ustar_pairs(config, "ex-r") };
    let cauchy = metric_cauchy(&QLine, &k, &ustar, &MetricCertificate::reciprocal(), &config.eps_grid, config.horizon)?;
    let abs = line_abs_cauchy_refutation(&Term::index(), &config.eps_grid);
    let targets: Vec<_> = [int(0), int(100), ratio(-7, 2)].iter().map(ustar_nonconvergence_on_line).collect();
    let reproduced = composition.iter().all(|(_, v)| v.is_exact())
        && cauchy.is_exact()
        && abs.is_falsified()
        && targets.iter().all(|t| t.verdict.is_exact());
    let document = json!({
        "example": "ex-r",
        "entourage_composition": composition.iter().map(|(n, v)| json!({"n": n, "verdict": to_value(v)})).collect::<Vec<_>>(),
        "ustar_cauchy": to_value(&cauchy),
        "abs_cauchy": to_value(&abs),
        "nonconvergence": to_value(&targets),
    });
    Ok(ExampleOutput { document, reproduced })
}

fn ex() -> Result<ExampleOutput, LabError> {
    let cases = [(1, 1), (3, 200), (50, 10_000)]
        .iter()
        .map(|&(k, n)| unbounded_separation_example(k, n))
        .collect::<Result<Vec<_>, _>>()?;
    let reproduced = cases.iter().all(|r| r.sigma.is_exact() && r.unbounded.is_falsified());
    Ok(ExampleOutput { document: json!({"example": "ex", "cases": to_value(&cases)}), reproduced })
}

fn o1o2(config: &SuiteConfig) -> Result<ExampleOutput, LabError> {
    let a = fincof_singletons();
    let empty = FinCofSet::empty();
    let o2 = verify_o2(&FinCof, &a, &empty, &fincof_canonical_witness(), config.horizon)?;
    let o1 = decide_o1_eventual_constancy(&FinCof, &a, &empty, config.horizon)?;
    let chain = O2Witness::chains(
        Sequence::constant(&FinCof, &empty),
        Sequence::described(FinCof::coprefix_chain()),
        Eventual::Affine { offset: 1 },
    );
    let chain = verify_o2(&FinCof, &a, &empty, &chain, config.horizon.min(500))?;
    let reproduced = o2.is_exact() && o1.is_falsified();
    let document = json!({
        "example": "o1o2",
        "sequence": "A_k = {x_k}",
        "limit": "∅",
        "o2_canonical_witness": to_value(&o2),
        "o1_eventual_constancy": to_value(&o1),
        "o2_chain_witness": to_value(&chain),
    });
    Ok(ExampleOutput { document, reproduced })
}
