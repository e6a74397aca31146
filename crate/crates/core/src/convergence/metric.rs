use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, TruncationPair};
use crate::par::{self, Exec};
use crate::rational::{self, Rational};
use crate::symbolic::{self, Limit, Proof, Term};
use crate::uniformity::{derived_semimetric, ExtValue, LatticeSemimetric, SemimetricFamily};

use super::{Basis, Constancy, OrderOracle, Sequence, Verdict, Witness};

/// The default ε-grid `{1, 1/2, …, 2⁻¹⁰}`.
pub fn default_eps_grid() -> Vec<Rational> {
    rational::dyadic_grid(10)
}

/// A modulus `(ε, semimetric index) ↦ N`.
#[derive(Clone)]
pub struct MetricCertificate {
    name: String,
    modulus: Arc<dyn Fn(&Rational, usize) -> u64 + Send + Sync>,
}

impl fmt::Debug for MetricCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MetricCertificate({})", self.name)
    }
}

impl MetricCertificate {
    pub fn new(name: impl Into<String>, modulus: impl Fn(&Rational, usize) -> u64 + Send + Sync + 'static) -> Self {
        MetricCertificate { name: name.into(), modulus: Arc::new(modulus) }
    }

    /// `N(ε) = ⌈1/ε⌉`
    pub fn reciprocal() -> Self {
        Self::new("ceil(1/eps)", |eps, _| rational::ceil_u64(&eps.recip()).unwrap_or(u64::MAX).max(1))
    }

    pub fn constant(n: u64) -> Self {
        Self::new(format!("{n}"), move |_, _| n.max(1))
    }

    pub fn at(&self, eps: &Rational, member: usize) -> u64 {
        (self.modulus)(eps, member).max(1)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

/// A generating family, optionally remembered as derived semimetrics
/// `{d_{a,b} : d ∈ base, (a, b) ∈ pairs}` so that tails can be reasoned about
/// exactly.
pub enum FamilySpec<L: Lattice> {
    Plain(SemimetricFamily<L::Elem>),
    Derived { base: SemimetricFamily<L::Elem>, pairs: Vec<TruncationPair<L::Elem>> },
}

impl<L: Lattice + Clone + Send + 'static> FamilySpec<L> {
    /// The members in evaluation order; derived members run over the base
    /// family first, then over the pairs.
    pub fn members(&self, l: &L) -> Result<Vec<LatticeSemimetric<L::Elem>>> {
        match self {
            FamilySpec::Plain(f) => Ok(f.members().to_vec()),
            FamilySpec::Derived { base, pairs } => {
                base.members().iter().flat_map(|d| pairs.iter().map(move |p| derived_semimetric(l, d, p))).collect()
            }
        }
    }
}

fn values<L: OrderOracle + 'static>(l: &L, seq: &Sequence<L>, horizon: u64) -> Result<Vec<L::Elem>> {
    let xs = par::map_range(Exec::default(), 1..horizon + 1, |k| seq.at(l, k));
    xs.into_iter().collect()
}

/// Checks `d(x_k, x) ≤ ε` for `cert(ε) ≤ k ≤ horizon`, every member `d` and
/// every `ε` in the grid.
pub fn metric_converges<L: OrderOracle + 'static>(
    l: &L,
    seq: &Sequence<L>,
    x: &L::Elem,
    family: &SemimetricFamily<L::Elem>,
    cert: &MetricCertificate,
    eps_grid: &[Rational],
    horizon: u64,
) -> Result<Verdict> {
    l.check_member(x)?;
    let xs = values(l, seq, horizon)?;
    for (s, d) in family.members().iter().enumerate() {
        let dist: Vec<ExtValue> = par::map_slice(Exec::default(), &xs, |xk| d.eval(xk, x));
        for eps in eps_grid {
            let n = cert.at(eps, s);
            if let Some(k) = (n..=horizon).find(|&k| !dist[(k - 1) as usize].at_most(eps)) {
                let detail =
                    format!("{}(x_{k}, x) = {} > {eps} although k ≥ N({eps}) = {n}", d.name(), dist[(k - 1) as usize]);
                return Ok(Verdict::falsified(Basis::Horizon, Witness::at(k, detail)));
            }
        }
    }
    Ok(Verdict::at_horizon(horizon).with_note(format!("certificate {}", cert.name())))
}

/// Pairs `(j, k)` inspected by the horizon Cauchy check from index `n`.
fn cauchy_pairs(n: u64, horizon: u64) -> Vec<(u64, u64)> {
    const WINDOW: u64 = 32;
    let mut out = Vec::new();
    if n > horizon {
        return out;
    }
    for k in n..=horizon {
        out.push((n, k));
        if k < horizon {
            out.push((k, k + 1));
        }
        out.push((k, horizon));
    }
    let top = horizon.min(n + WINDOW);
    for j in n..=top {
        for k in j + 1..=top {
            out.push((j, k));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

const TAIL_WINDOW: u64 = 64;

fn horizon_cauchy<E: Sync + 'static>(
    d: &LatticeSemimetric<E>,
    member: usize,
    xs: &[E],
    cert: &MetricCertificate,
    eps_grid: &[Rational],
    horizon: u64,
) -> Option<Verdict> {
    for eps in eps_grid {
        let n = cert.at(eps, member);
        let pairs = cauchy_pairs(n, horizon);
        let hit = par::find_first_in(Exec::default(), &pairs, |&(j, k)| {
            let v = d.eval(&xs[(j - 1) as usize], &xs[(k - 1) as usize]);
            (!v.at_most(eps)).then_some((j, k, v))
        });
        if let Some((j, k, v)) = hit {
            let detail = format!("{}(x_{j}, x_{k}) = {v} > {eps} although j, k ≥ N({eps}) = {n}", d.name());
            return Some(Verdict::falsified(Basis::Horizon, Witness::pair(j, k, detail)));
        }
    }
    None
}

/// Checks `d(x_j, x_k) ≤ ε` for `j, k ≥ cert(ε)`.
///
/// For derived families the image `f_{a,b}(x_k)` is tested for eventual
/// constancy first; when every image is eventually constant the sequence is
/// Cauchy for every `ε`, exactly. Otherwise the pairs inspected up to the
/// horizon are all pairs with the certificate index, all consecutive pairs,
/// all pairs with the horizon and all pairs in a window past the certificate.
pub fn metric_cauchy<L: OrderOracle + Clone + Send + 'static>(
    l: &L,
    seq: &Sequence<L>,
    family: &FamilySpec<L>,
    cert: &MetricCertificate,
    eps_grid: &[Rational],
    horizon: u64,
) -> Result<Verdict> {
    let members = family.members(l)?;
    let mut exact = vec![None; members.len()];
    if let FamilySpec::Derived { base, pairs } = family {
        for (bi, _) in base.members().iter().enumerate() {
            for (pi, p) in pairs.iter().enumerate() {
                let image = seq.image(l, p);
                if let Some(Constancy::Constant { from, .. }) = image.desc().map(|d| l.eventual_constancy(d)) {
                    exact[bi * pairs.len() + pi] = Some(from.max(image.desc_from()));
                }
            }
        }
    }
    let xs = values(l, seq, horizon)?;
    for (s, d) in members.iter().enumerate() {
        // members with a constant tail are checked against their own modulus,
        // on a short window past the entry
        let own;
        let (c, h) = match exact[s] {
            Some(from) => {
                own = MetricCertificate::constant(from);
                (&own, horizon.min(from + TAIL_WINDOW))
            }
            None => (cert, horizon),
        };
        if let Some(v) = horizon_cauchy(d, s, &xs, c, eps_grid, h) {
            return Ok(v);
        }
    }
    if exact.iter().all(Option::is_some) {
        let moduli: Vec<String> =
            members.iter().zip(&exact).map(|(d, f)| format!("{}: {}", d.name(), f.unwrap_or(1))).collect();
        return Ok(
            Verdict::exact(Basis::Symbolic).with_note(format!("truncated images constant from {}", moduli.join(", ")))
        );
    }
    Ok(Verdict::at_horizon(horizon).with_note(format!("certificate {}", cert.name())))
}

/// Whether the sequence is increasing (`Some(true)`) or decreasing
/// (`Some(false)`), and the basis of that decision.
fn monotone_direction<L: OrderOracle + 'static>(
    l: &L,
    seq: &Sequence<L>,
    horizon: u64,
) -> Result<Option<(bool, Basis)>> {
    let next = seq.shifted(l, 1);
    if let (Some(a), Some(b)) = (seq.desc(), next.desc()) {
        let from = seq.desc_from();
        let head_up = (1..from).all(|k| matches!((seq.at(l, k), seq.at(l, k + 1)), (Ok(x), Ok(y)) if l.leq(&x, &y)));
        let head_down = (1..from).all(|k| matches!((seq.at(l, k), seq.at(l, k + 1)), (Ok(x), Ok(y)) if l.leq(&y, &x)));
        if head_up && l.prove_leq_from(a, b, from).is_proved() {
            return Ok(Some((true, Basis::Symbolic)));
        }
        if head_down && l.prove_leq_from(b, a, from).is_proved() {
            return Ok(Some((false, Basis::Symbolic)));
        }
    }
    let xs = values(l, seq, horizon + 1)?;
    let up = xs.windows(2).all(|w| l.leq(&w[0], &w[1]));
    let down = xs.windows(2).all(|w| l.leq(&w[1], &w[0]));
    Ok(match (up, down) {
        (true, _) => Some((true, Basis::Horizon)),
        (_, true) => Some((false, Basis::Horizon)),
        _ => None,
    })
}

/// Cauchy probe of a monotone sequence; a falsified verdict exhibits a
/// monotone sequence that is not Cauchy, i.e. non-exhaustivity.
///
/// Without a certificate the modulus is `horizon / 2`.
pub fn exhaustivity_probe<L: OrderOracle + Clone + Send + 'static>(
    l: &L,
    seq: &Sequence<L>,
    family: &FamilySpec<L>,
    cert: Option<&MetricCertificate>,
    eps_grid: &[Rational],
    horizon: u64,
) -> Result<Verdict> {
    let Some((_, basis)) = monotone_direction(l, seq, horizon)? else {
        return Err(Error::NotMonotone(seq.name().to_string()));
    };
    let fallback = MetricCertificate::constant((horizon / 2).max(1));
    let v = metric_cauchy(l, seq, family, cert.unwrap_or(&fallback), eps_grid, horizon)?;
    // exactness of the Cauchy claim needs monotonicity to be exact too
    Ok(if v.is_exact() && basis == Basis::Horizon { Verdict::at_horizon(horizon).with_note(v.note) } else { v })
}

/// A lower bound `g > 0` on `|x_{k+1} − x_k|` valid for every `k ≥ from`,
/// for a closed-form rational sequence.
pub fn line_gap_bound(t: &Term) -> Option<(u64, Rational)> {
    let gap = Term::sub(t.shift(1), t.clone());
    let (g, oriented) = match symbolic::limit(&gap)? {
        Limit::Finite(c) if !c.is_zero() => {
            let g = c.abs() / rational::int(2);
            (g, if c.is_positive() { gap } else { Term::neg(gap) })
        }
        Limit::PosInf => (rational::int(1), gap),
        Limit::NegInf => (rational::int(1), Term::neg(gap)),
        _ => return None,
    };
    let from = symbolic::nonneg_entry(&Term::sub(oriented.clone(), Term::constant(g.clone())))?;
    match symbolic::nonneg_from(&Term::sub(oriented, Term::constant(g.clone())), from) {
        Proof::Proved => Some((from, g)),
        _ => None,
    }
}

/// Exact refutation of the Cauchy property of `t` under `|·|`: for an `ε`
/// below the gap bound, every tail contains a pair at distance `> ε`.
pub fn line_abs_cauchy_refutation(t: &Term, eps_grid: &[Rational]) -> Verdict {
    let Some((from, g)) = line_gap_bound(t) else {
        return Verdict::inconclusive("no uniform gap between consecutive terms");
    };
    match eps_grid.iter().find(|e| **e < g) {
        Some(eps) => {
            let detail = format!("|x_(k+1) − x_k| ≥ {g} > {eps} for every k ≥ {from}");
            Verdict::falsified(Basis::Symbolic, Witness::pair(from, from + 1, detail))
        }
        None => Verdict::inconclusive(format!("gap bound {g} is not above any grid value")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergence::Status;
    use crate::rational::{int, ratio};
    use crate::spaces::QLine;

    fn q(s: &str) -> Sequence<QLine> {
        Sequence::described(Term::parse(s).unwrap())
    }

    fn abs() -> SemimetricFamily<Rational> {
        SemimetricFamily::single("qline", LatticeSemimetric::abs())
    }

    fn ustar(n: i64) -> FamilySpec<QLine> {
        let pairs = (1..=n).map(|i| TruncationPair::new(&QLine, int(-i), int(i))).collect();
        FamilySpec::Derived { base: abs(), pairs }
    }

    #[test]
    fn convergence_with_certificates() {
        let grid = default_eps_grid();
        assert_eq!(grid.len(), 11);
        let v = metric_converges(&QLine, &q("1/k"), &int(0), &abs(), &MetricCertificate::reciprocal(), &grid, 3000)
            .unwrap();
        assert_eq!(v.status, Status::VerifiedAtHorizon);
        let v =
            metric_converges(&QLine, &q("k"), &int(0), &abs(), &MetricCertificate::reciprocal(), &grid, 100).unwrap();
        assert!(v.is_falsified());
        let k = v.witness.unwrap().indices[0];
        assert!(int(k as i64) > int(1));
    }

    #[test]
    fn cauchy_checks() {
        let grid = default_eps_grid();
        let cert = MetricCertificate::reciprocal();
        let v = metric_cauchy(&QLine, &q("k"), &ustar(8), &cert, &grid, 400).unwrap();
        assert!(v.is_exact(), "{v:?}");
        let v = metric_cauchy(&QLine, &q("k"), &FamilySpec::Plain(abs()), &cert, &grid, 400).unwrap();
        assert!(v.is_falsified());
        let w = v.witness.unwrap();
        assert_eq!(w.indices.len(), 2);
        let v = metric_cauchy(&QLine, &q("1 - 1/k"), &FamilySpec::Plain(abs()), &cert, &grid, 2000).unwrap();
        assert_eq!(v.status, Status::VerifiedAtHorizon);
        // a certificate that is too small for a convergent sequence
        let v = metric_cauchy(&QLine, &q("1/k"), &FamilySpec::Plain(abs()), &MetricCertificate::constant(1), &grid, 50)
            .unwrap();
        assert!(v.is_falsified());
    }

    #[test]
    fn exhaustivity() {
        let grid = default_eps_grid();
        let plain = FamilySpec::Plain(abs());
        assert!(exhaustivity_probe(&QLine, &q("k"), &plain, None, &grid, 300).unwrap().is_falsified());
        assert!(exhaustivity_probe(&QLine, &q("k"), &ustar(6), None, &grid, 300).unwrap().is_exact());
        let bounded =
            exhaustivity_probe(&QLine, &q("1 - 1/k"), &plain, Some(&MetricCertificate::reciprocal()), &grid, 2000)
                .unwrap();
        assert_eq!(bounded.status, Status::VerifiedAtHorizon);
        assert!(matches!(
            exhaustivity_probe(&QLine, &q("(-1)^k/k"), &plain, None, &grid, 50),
            Err(Error::NotMonotone(_))
        ));
    }

    #[test]
    fn gap_refutation() {
        let grid = default_eps_grid();
        assert_eq!(line_gap_bound(&Term::parse("k").unwrap()), Some((1, ratio(1, 2))));
        let v = line_abs_cauchy_refutation(&Term::parse("k").unwrap(), &grid);
        assert!(v.is_falsified());
        assert_eq!(v.basis, Basis::Symbolic);
        assert_eq!(line_abs_cauchy_refutation(&Term::parse("1/k").unwrap(), &grid).status, Status::Inconclusive);
        assert!(line_gap_bound(&Term::parse("k*k").unwrap()).is_some());
    }
}
