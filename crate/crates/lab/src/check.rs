//! Convergence checks described by a JSON document.
//!
//! ```json
//! {
//!   "carrier": "qline",
//!   "check": "o1",
//!   "sequence": "(-1)^k/k",
//!   "limit": "0",
//!   "lower": "-1/k",
//!   "upper": "1/k"
//! }
//! ```
//!
//! Sequences are closed-form descriptors in the carrier's own syntax:
//!
//! * `qline`: a term in `k` built from rationals, `+`, `-`, `*`, `/`, `^`
//!   and `(-1)^k`; elements are rationals such as `"-7/2"`.
//! * `qvecN`: an array of `N` terms; elements are arrays of rationals.
//! * `fincof`: `{x_k}`, `{x_1..x_k}` or `X-{x_1..x_k}`, with `k` optionally
//!   shifted (`k+2`), or a constant set literal (`{1,3}`, `X`, `X-{2}`).
//!   O₂ witness sides may also name a family: `all-cofinite` or `all-finite`.
//! * finite catalog carriers (`powerset3`, `n5`, ...): an element label, or
//!   `{"prefix": [labels], "cycle": [labels]}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use ulat_core::convergence::{
    decide_o1_eventual_constancy, metric_cauchy, metric_converges, verify_o1, verify_o2, Eventual, FamilySpec,
    MetricCertificate, O1Witness, O2Witness, OrderOracle, Sequence, Status, Verdict, WitnessSide,
};
use ulat_core::lattice::TruncationPair;
use ulat_core::rational::{self, int};
use ulat_core::spaces::{
    lookup, Atom, Carrier, FinCof, FinCofDesc, FinCofFamily, FinCofSet, Periodic, QLine, QVec, RatVec, TableLattice,
};
use ulat_core::symbolic::Term;
use ulat_core::uniformity::{LatticeSemimetric, SemimetricFamily};
use ulat_core::Rational;

use crate::{LabError, SuiteConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    O1,
    O2,
    EventualConstancy,
    Metric,
    Cauchy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expect {
    #[default]
    Accept,
    Reject,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct CheckDoc {
    pub carrier: String,
    pub check: CheckKind,
    pub sequence: Value,
    #[serde(default)]
    pub limit: Option<Value>,
    #[serde(default)]
    pub lower: Option<Value>,
    #[serde(default)]
    pub upper: Option<Value>,
    /// First index of an O₁ witness.
    #[serde(default = "one")]
    pub start: u64,
    /// `K(j) = j + offset` for an O₂ witness.
    #[serde(default)]
    pub offset: u64,
    /// `"abs"` or `{"ustar": n}`; ℚ-line only.
    #[serde(default)]
    pub family: Option<Value>,
    /// `"reciprocal"` or `{"constant": n}`.
    #[serde(default)]
    pub certificate: Option<Value>,
    #[serde(default)]
    pub horizon: Option<u64>,
    #[serde(default)]
    pub expect: Expect,
}

fn one() -> u64 {
    1
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub carrier: String,
    pub check: CheckKind,
    pub expect: Expect,
    pub verdict: Verdict,
    /// Whether the verdict matches the expectation. Inconclusive never does.
    pub matched: bool,
}

fn bad(msg: impl Into<String>) -> LabError {
    LabError::Document(msg.into())
}

fn text(v: &Value, what: &str) -> Result<String, LabError> {
    v.as_str().map(str::to_string).ok_or_else(|| bad(format!("{what}: expected a string, got {v}")))
}

fn required<'a>(v: &'a Option<Value>, what: &str) -> Result<&'a Value, LabError> {
    v.as_ref().ok_or_else(|| bad(format!("missing `{what}`")))
}

pub fn parse_doc(text: &str) -> Result<CheckDoc, LabError> {
    serde_json::from_str(text).map_err(|e| bad(e.to_string()))
}

/// Runs the check described by `doc`; `config` supplies the default horizon
/// and the ε-grid.
pub fn run_check(doc: &CheckDoc, config: &SuiteConfig) -> Result<CheckOutcome, LabError> {
    let horizon = crate::config::check_horizon(doc.horizon.unwrap_or(config.horizon))?;
    let verdict = match lookup(&doc.carrier)?.carrier {
        Carrier::QLine(l) => {
            if matches!(doc.check, CheckKind::Metric | CheckKind::Cauchy) {
                line_metric(doc, config, horizon)?
            } else {
                order_check(&l, doc, horizon, &line_seq, &line_elem, &|v| Ok(WitnessSide::Chain(line_seq(v)?)))?
            }
        }
        Carrier::QVec(l) => {
            let dim = l.dim();
            let seq = move |v: &Value| vec_seq(v, dim);
            let elem = move |v: &Value| vec_elem(v, dim);
            order_check(&l, doc, horizon, &seq, &elem, &|v| Ok(WitnessSide::Chain(seq(v)?)))?
        }
        Carrier::FinCof(l) => order_check(&l, doc, horizon, &fincof_seq, &fincof_elem, &fincof_side)?,
        Carrier::Table(l) => {
            let seq = |v: &Value| table_seq(&l, v);
            let elem = |v: &Value| table_elem(&l, v);
            order_check(&l, doc, horizon, &seq, &elem, &|v| Ok(WitnessSide::Chain(seq(v)?)))?
        }
        Carrier::C00(_) | Carrier::EvLin(_) => {
            return Err(bad(format!("carrier `{}` has no descriptor syntax", doc.carrier)))
        }
    };
    let matched = match doc.expect {
        Expect::Accept => verdict.accepts(),
        Expect::Reject => verdict.status == Status::Falsified,
    };
    Ok(CheckOutcome { carrier: doc.carrier.clone(), check: doc.check, expect: doc.expect, verdict, matched })
}

type Parse<'a, T> = &'a dyn Fn(&Value) -> Result<T, LabError>;

fn order_check<L: OrderOracle + 'static>(
    l: &L,
    doc: &CheckDoc,
    horizon: u64,
    seq: Parse<Sequence<L>>,
    elem: Parse<L::Elem>,
    side: Parse<WitnessSide<L>>,
) -> Result<Verdict, LabError> {
    let s = seq(&doc.sequence)?;
    let x = elem(required(&doc.limit, "limit")?)?;
    let v = match doc.check {
        CheckKind::O1 => {
            let lower = seq(required(&doc.lower, "lower")?)?;
            let upper = seq(required(&doc.upper, "upper")?)?;
            verify_o1(l, &s, &x, &O1Witness { lower, upper, start: doc.start }, horizon)?
        }
        CheckKind::O2 => {
            let w = O2Witness {
                lower: side(required(&doc.lower, "lower")?)?,
                upper: side(required(&doc.upper, "upper")?)?,
                eventual: Eventual::Affine { offset: doc.offset },
            };
            verify_o2(l, &s, &x, &w, horizon)?
        }
        CheckKind::EventualConstancy => decide_o1_eventual_constancy(l, &s, &x, horizon)?,
        CheckKind::Metric | CheckKind::Cauchy => {
            return Err(bad(format!("metric checks are available on `qline` only, not `{}`", doc.carrier)))
        }
    };
    Ok(v)
}

fn line_seq(v: &Value) -> Result<Sequence<QLine>, LabError> {
    Ok(Sequence::described(Term::parse(&text(v, "sequence")?)?))
}

fn line_elem(v: &Value) -> Result<Rational, LabError> {
    match v {
        Value::Number(n) => Ok(rational::parse(&n.to_string())?),
        _ => Ok(rational::parse(&text(v, "element")?)?),
    }
}

fn line_metric(doc: &CheckDoc, config: &SuiteConfig, horizon: u64) -> Result<Verdict, LabError> {
    let s = line_seq(&doc.sequence)?;
    let base = SemimetricFamily::single("qline", LatticeSemimetric::abs());
    let family = match &doc.family {
        None => FamilySpec::Plain(base),
        Some(Value::String(s)) if s == "abs" => FamilySpec::Plain(base),
        Some(Value::Object(o)) if o.len() == 1 && o.contains_key("ustar") => {
            let n = o["ustar"].as_i64().filter(|n| *n >= 1).ok_or_else(|| bad("`ustar` must be a positive integer"))?;
            let pairs = (1..=n).map(|i| TruncationPair::new(&QLine, int(-i), int(i))).collect();
            FamilySpec::Derived { base, pairs }
        }
        Some(other) => return Err(bad(format!("unknown family {other}"))),
    };
    let cert = match &doc.certificate {
        None => MetricCertificate::reciprocal(),
        Some(Value::String(s)) if s == "reciprocal" => MetricCertificate::reciprocal(),
        Some(Value::Object(o)) if o.len() == 1 && o.contains_key("constant") => {
            let n = o["constant"].as_u64().ok_or_else(|| bad("`constant` must be a nonnegative integer"))?;
            MetricCertificate::constant(n)
        }
        Some(other) => return Err(bad(format!("unknown certificate {other}"))),
    };
    let v = match doc.check {
        CheckKind::Metric => {
            let x = line_elem(required(&doc.limit, "limit")?)?;
            let FamilySpec::Plain(f) = &family else {
                let members = family.members(&QLine)?;
                let f = SemimetricFamily::new("qline", members)?;
                return Ok(metric_converges(&QLine, &s, &x, &f, &cert, &config.eps_grid, horizon)?);
            };
            metric_converges(&QLine, &s, &x, f, &cert, &config.eps_grid, horizon)?
        }
        _ => metric_cauchy(&QLine, &s, &family, &cert, &config.eps_grid, horizon)?,
    };
    Ok(v)
}

fn vec_seq(v: &Value, dim: usize) -> Result<Sequence<QVec>, LabError> {
    let items = v.as_array().ok_or_else(|| bad("qvec sequence: expected an array of terms"))?;
    if items.len() != dim {
        return Err(bad(format!("qvec sequence has {} coordinates, expected {dim}", items.len())));
    }
    let terms =
        items.iter().map(|t| Ok(Term::parse(&text(t, "coordinate")?)?)).collect::<Result<Vec<_>, LabError>>()?;
    Ok(Sequence::described(terms))
}

fn vec_elem(v: &Value, dim: usize) -> Result<RatVec, LabError> {
    let items = v.as_array().ok_or_else(|| bad("qvec element: expected an array of rationals"))?;
    if items.len() != dim {
        return Err(bad(format!("qvec element has {} coordinates, expected {dim}", items.len())));
    }
    Ok(RatVec(items.iter().map(line_elem).collect::<Result<_, _>>()?))
}

fn atoms(list: &str) -> Result<Vec<Atom>, LabError> {
    let inner = list
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| bad(format!("expected a set literal, got `{list}`")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|a| a.trim_start_matches("x_").parse::<Atom>().map_err(|_| bad(format!("bad atom `{a}`"))))
        .collect()
}

/// Splits `X-{…}` (also `X\{…}` and `X∖{…}`) into its complemented part.
fn cofinite_part(s: &str) -> Option<&str> {
    let rest = s.strip_prefix('X')?.trim_start();
    ["-", "\\", "∖"].iter().find_map(|sep| rest.strip_prefix(sep)).map(str::trim)
}

/// `k`, `k+3` or `k-1` as an offset.
fn index_offset(s: &str) -> Result<i64, LabError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let rest = s.strip_prefix('k').ok_or_else(|| bad(format!("expected an index `k±n`, got `{s}`")))?;
    if rest.is_empty() {
        return Ok(0);
    }
    rest.strip_prefix('+').unwrap_or(rest).parse().map_err(|_| bad(format!("bad index offset `{s}`")))
}

fn fincof_elem(v: &Value) -> Result<FinCofSet, LabError> {
    let s = text(v, "fincof element")?;
    let s = s.trim();
    if s == "X" {
        return Ok(FinCofSet::full());
    }
    match cofinite_part(s) {
        Some(rest) => Ok(FinCofSet::cofinite(atoms(rest)?)),
        None => Ok(FinCofSet::finite(atoms(s)?)),
    }
}

fn fincof_desc(s: &str) -> Result<FinCofDesc, LabError> {
    let s = s.trim();
    let (co, body) = match cofinite_part(s) {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let inner = body.strip_prefix('{').and_then(|b| b.strip_suffix('}'));
    if let Some(inner) = inner.map(str::trim) {
        if let Some(idx) = inner.strip_prefix("x_1..x_") {
            let offset = index_offset(idx)?;
            return Ok(if co { FinCofDesc::CoPrefix { offset } } else { FinCofDesc::Prefix { offset } });
        }
        if let Some(idx) = inner.strip_prefix("x_").filter(|i| i.trim_start().starts_with('k')) {
            if co {
                return Err(bad("complements of singleton sequences are not supported"));
            }
            return Ok(FinCofDesc::Singleton { offset: index_offset(idx)? });
        }
    }
    Ok(FinCofDesc::Const(fincof_elem(&Value::String(s.to_string()))?))
}

fn fincof_seq(v: &Value) -> Result<Sequence<FinCof>, LabError> {
    Ok(Sequence::described(fincof_desc(&text(v, "fincof sequence")?)?))
}

fn fincof_side(v: &Value) -> Result<WitnessSide<FinCof>, LabError> {
    match v.as_str() {
        Some("all-cofinite") => Ok(WitnessSide::Family(FinCofFamily::AllCofinite)),
        Some("all-finite") => Ok(WitnessSide::Family(FinCofFamily::AllFinite)),
        _ => Ok(WitnessSide::Chain(fincof_seq(v)?)),
    }
}

fn table_elem(l: &TableLattice, v: &Value) -> Result<usize, LabError> {
    Ok(l.element(&text(v, "element label")?)?)
}

fn table_seq(l: &TableLattice, v: &Value) -> Result<Sequence<TableLattice>, LabError> {
    if v.is_string() {
        return Ok(Sequence::described(Periodic::constant(table_elem(l, v)?)));
    }
    let labels = |key: &str| -> Result<Vec<usize>, LabError> {
        match v.get(key) {
            None => Ok(Vec::new()),
            Some(Value::Array(items)) => items.iter().map(|x| table_elem(l, x)).collect(),
            Some(other) => Err(bad(format!("`{key}` must be an array of labels, got {other}"))),
        }
    };
    Ok(Sequence::described(Periodic::new(labels("prefix")?, labels("cycle")?)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(doc: &str) -> CheckOutcome {
        run_check(&parse_doc(doc).unwrap(), &SuiteConfig::default()).unwrap()
    }

    #[test]
    fn fincof_syntax() {
        assert_eq!(fincof_desc("{x_k}").unwrap(), FinCofDesc::Singleton { offset: 0 });
        assert_eq!(fincof_desc("{x_k+2}").unwrap(), FinCofDesc::Singleton { offset: 2 });
        assert_eq!(fincof_desc("{x_1..x_k-1}").unwrap(), FinCofDesc::Prefix { offset: -1 });
        assert_eq!(fincof_desc("X-{x_1..x_k}").unwrap(), FinCofDesc::CoPrefix { offset: 0 });
        assert_eq!(fincof_desc("X∖{1, 3}").unwrap(), FinCofDesc::Const(FinCofSet::cofinite([1, 3])));
        assert_eq!(fincof_desc("{}").unwrap(), FinCofDesc::Const(FinCofSet::empty()));
        assert_eq!(fincof_elem(&Value::from("X")).unwrap(), FinCofSet::full());
        assert!(fincof_desc("{x_j}").is_err());
    }

    #[test]
    fn line_o1() {
        let out = run(r#"{"carrier": "qline", "check": "o1", "sequence": "(-1)^k/k", "limit": "0",
                          "lower": "-1/k", "upper": "1/k", "horizon": 500}"#);
        assert!(out.matched);
        assert_eq!(out.verdict.status, Status::Exact);
    }

    #[test]
    fn fincof_separation() {
        let o2 = run(r#"{"carrier": "fincof", "check": "o2", "sequence": "{x_k}", "limit": "{}",
                         "lower": "{}", "upper": "all-cofinite", "horizon": 200}"#);
        assert!(o2.verdict.is_exact());
        let o1 = run(r#"{"carrier": "fincof", "check": "eventual-constancy", "sequence": "{x_k}",
                         "limit": "{}", "expect": "reject", "horizon": 200}"#);
        assert!(o1.matched && o1.verdict.is_falsified());
    }

    #[test]
    fn line_metric_checks() {
        let c = run(r#"{"carrier": "qline", "check": "cauchy", "sequence": "k", "family": {"ustar": 6},
                        "horizon": 200}"#);
        assert!(c.verdict.is_exact());
        let c = run(r#"{"carrier": "qline", "check": "cauchy", "sequence": "k", "expect": "reject",
                        "horizon": 200}"#);
        assert!(c.matched);
        let m = run(r#"{"carrier": "qline", "check": "metric", "sequence": "1/k", "limit": 0, "horizon": 500}"#);
        assert_eq!(m.verdict.status, Status::VerifiedAtHorizon);
        let m = run(r#"{"carrier": "qline", "check": "metric", "sequence": "1/k", "limit": 0,
                        "family": {"ustar": 3}, "horizon": 500}"#);
        assert!(m.verdict.accepts());
    }

    #[test]
    fn finite_and_vector_carriers() {
        let p = run(r#"{"carrier": "powerset2", "check": "eventual-constancy",
                        "sequence": {"prefix": ["{1,2}"], "cycle": ["{1}", "{2}"]}, "limit": "{1}",
                        "expect": "reject"}"#);
        assert!(p.matched);
        let v = run(r#"{"carrier": "qvec2", "check": "o2", "sequence": ["1/k", "2 - 1/k"], "limit": ["0", "2"],
                        "lower": ["0", "2 - 1/k"], "upper": ["1/k", "2"], "offset": 0, "horizon": 300}"#);
        assert!(v.verdict.accepts(), "{:?}", v.verdict);
    }

    #[test]
    fn document_errors() {
        assert!(parse_doc(r#"{"carrier": "qline", "check": "o3", "sequence": "k"}"#).is_err());
        assert!(parse_doc(r#"{"carrier": "qline", "check": "o1", "sequence": "k", "extra": 1}"#).is_err());
        let doc = parse_doc(r#"{"carrier": "qline", "check": "o1", "sequence": "k", "limit": "0"}"#).unwrap();
        assert!(matches!(run_check(&doc, &SuiteConfig::default()), Err(LabError::Document(_))));
        let doc = parse_doc(r#"{"carrier": "evlin", "check": "o1", "sequence": "k"}"#).unwrap();
        assert!(run_check(&doc, &SuiteConfig::default()).is_err());
        let doc = parse_doc(r#"{"carrier": "qvec2", "check": "o1", "sequence": ["k"], "limit": ["0", "0"]}"#).unwrap();
        assert!(run_check(&doc, &SuiteConfig::default()).is_err());
    }
}
