use std::fmt;

use serde::Serialize;

/// Outcome of a check, ordered from weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Falsified,
    Inconclusive,
    VerifiedAtHorizon,
    Exact,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Falsified => "falsified",
            Status::Inconclusive => "inconclusive",
            Status::VerifiedAtHorizon => "verified-at-horizon",
            Status::Exact => "exact",
        })
    }
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Decided by closed-form reasoning.
    Symbolic,
    /// Decided by enumerating a finite search space.
    Exhaustive,
    /// Checked on an index range only.
    Horizon,
}

/// Concrete evidence for a falsified verdict.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    /// Sequence or enumeration indices involved, if any.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub indices: Vec<u64>,
    pub detail: String,
}

impl Witness {
    pub fn at(index: u64, detail: impl Into<String>) -> Self {
        Witness { indices: vec![index], detail: detail.into() }
    }

    pub fn pair(j: u64, k: u64, detail: impl Into<String>) -> Self {
        Witness { indices: vec![j, k], detail: detail.into() }
    }

    pub fn note(detail: impl Into<String>) -> Self {
        Witness { indices: Vec::new(), detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub basis: Basis,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Verdict {
    pub fn exact(basis: Basis) -> Self {
        Verdict { status: Status::Exact, basis, witness: None, horizon: None, note: String::new() }
    }

    pub fn at_horizon(horizon: u64) -> Self {
        Verdict {
            status: Status::VerifiedAtHorizon,
            basis: Basis::Horizon,
            witness: None,
            horizon: Some(horizon),
            note: String::new(),
        }
    }

    pub fn falsified(basis: Basis, witness: Witness) -> Self {
        Verdict { status: Status::Falsified, basis, witness: Some(witness), horizon: None, note: String::new() }
    }

    pub fn inconclusive(note: impl Into<String>) -> Self {
        Verdict { status: Status::Inconclusive, basis: Basis::Horizon, witness: None, horizon: None, note: note.into() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn with_horizon(mut self, horizon: u64) -> Self {
        self.horizon = Some(horizon);
        self
    }

    pub fn is_falsified(&self) -> bool {
        self.status == Status::Falsified
    }

    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }

    /// Exact or verified at the horizon.
    pub fn accepts(&self) -> bool {
        self.status >= Status::VerifiedAtHorizon
    }

    /// The weaker of two verdicts; ties keep `self`.
    pub fn weakest(self, other: Verdict) -> Verdict {
        if other.status < self.status {
            other
        } else {
            self
        }
    }

    pub fn weakest_of(verdicts: impl IntoIterator<Item = Verdict>) -> Option<Verdict> {
        verdicts.into_iter().reduce(Verdict::weakest)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.status)?;
        if let Some(w) = &self.witness {
            write!(f, " [{}]", w.detail)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weakest_wins() {
        let v = Verdict::weakest_of([
            Verdict::exact(Basis::Symbolic),
            Verdict::at_horizon(10),
            Verdict::exact(Basis::Exhaustive),
        ])
        .unwrap();
        assert_eq!(v.status, Status::VerifiedAtHorizon);
        let f = Verdict::at_horizon(5).weakest(Verdict::falsified(Basis::Horizon, Witness::at(3, "x")));
        assert!(f.is_falsified());
        assert!(!f.accepts());
        assert_eq!(serde_json::to_value(Status::VerifiedAtHorizon).unwrap(), "verified-at-horizon");
    }
}
