use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::TruncationPair;

use super::OrderOracle;

type TermFn<L> = dyn Fn(&L, u64) -> Result<<L as crate::lattice::Lattice>::Elem> + Send + Sync;

/// A sequence `k ↦ x_k` (`k ≥ 1`) on carrier `L`.
///
/// A sequence has a closed-form descriptor, an evaluation closure, or both.
/// The descriptor only has to be valid from index `desc_from` on; smaller
/// indices are evaluated through the closure.
pub struct Sequence<L: OrderOracle> {
    name: String,
    desc: Option<L::Desc>,
    desc_from: u64,
    term: Option<Arc<TermFn<L>>>,
}

impl<L: OrderOracle> Clone for Sequence<L> {
    fn clone(&self) -> Self {
        Sequence {
            name: self.name.clone(),
            desc: self.desc.clone(),
            desc_from: self.desc_from,
            term: self.term.clone(),
        }
    }
}

impl<L: OrderOracle> fmt::Debug for Sequence<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sequence").field("name", &self.name).field("desc", &self.desc).finish()
    }
}

impl<L: OrderOracle + 'static> Sequence<L> {
    pub fn described(desc: L::Desc) -> Self {
        Sequence { name: format!("{desc:?}"), desc: Some(desc), desc_from: 1, term: None }
    }

    pub fn from_fn(name: impl Into<String>, f: impl Fn(u64) -> L::Elem + Send + Sync + 'static) -> Self {
        Sequence { name: name.into(), desc: None, desc_from: 1, term: Some(Arc::new(move |_, k| Ok(f(k)))) }
    }

    /// A descriptor together with an independent closure for the same terms.
    pub fn with_fn(desc: L::Desc, f: impl Fn(u64) -> L::Elem + Send + Sync + 'static) -> Self {
        Sequence { term: Some(Arc::new(move |_, k| Ok(f(k)))), ..Self::described(desc) }
    }

    pub fn constant(l: &L, x: &L::Elem) -> Self {
        let v = x.clone();
        let term: Arc<TermFn<L>> = Arc::new(move |_, _| Ok(v.clone()));
        Sequence { name: format!("const {}", l.show(x)), desc: l.const_desc(x), desc_from: 1, term: Some(term) }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn desc(&self) -> Option<&L::Desc> {
        self.desc.as_ref()
    }

    /// First index from which the descriptor describes the sequence.
    pub fn desc_from(&self) -> u64 {
        self.desc_from
    }

    pub fn at(&self, l: &L, k: u64) -> Result<L::Elem> {
        let k = k.max(1);
        match (&self.desc, &self.term) {
            (Some(d), _) if k >= self.desc_from => l.eval_desc(d, k),
            (_, Some(f)) => f(l, k),
            _ => Err(Error::Unsupported {
                carrier: l.name(),
                what: format!("sequence `{}` has no term at {k}", self.name),
            }),
        }
    }

    /// `k ↦ x_{k + by}`; indices that would fall below 1 read `x_1`.
    pub fn shifted(&self, l: &L, by: i64) -> Self {
        let desc = self.desc.as_ref().and_then(|d| l.shift_desc(d, by));
        let desc_from = (self.desc_from as i64 - by).max(1) as u64;
        let inner = self.clone();
        let term: Arc<TermFn<L>> = Arc::new(move |l, k| inner.at(l, (k as i64 + by).max(1) as u64));
        Sequence { name: format!("{}[k{by:+}]", self.name), desc, desc_from, term: Some(term) }
    }

    /// The image `k ↦ f_p(x_k)`.
    pub fn image(&self, l: &L, p: &TruncationPair<L::Elem>) -> Self {
        let (desc, desc_from) = match self.desc.as_ref().and_then(|d| l.truncated_tail(d, p)) {
            Some((from, d)) => (Some(d), from.max(self.desc_from)),
            None => (None, 1),
        };
        let (inner, p2) = (self.clone(), p.clone());
        let term: Arc<TermFn<L>> = Arc::new(move |l, k| Ok(p2.f(l, &inner.at(l, k)?)));
        Sequence { name: format!("f{}({})", p.show(l), self.name), desc, desc_from, term: Some(term) }
    }

    /// First index `k ≤ horizon` where descriptor and closure disagree.
    pub fn check_consistency(&self, l: &L, horizon: u64) -> Result<Option<u64>> {
        let (Some(d), Some(f)) = (&self.desc, &self.term) else { return Ok(None) };
        for k in self.desc_from..=horizon {
            if l.eval_desc(d, k)? != f(l, k)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}
