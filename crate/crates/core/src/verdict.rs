//! Three-valued check results.

use serde::Serialize;

/// Outcome of a bounded check.
///
/// `Unknown` means the window cut off a quantifier: neither a witness nor a
/// genuine violation could be established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Unknown,
    Fail,
}

impl Status {
    fn rank(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Unknown => 1,
            Status::Fail => 2,
        }
    }

    /// The more severe of two statuses (fail > unknown > pass).
    pub fn worst(self, other: Status) -> Status {
        if other.rank() > self.rank() {
            other
        } else {
            self
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Unknown => "unknown",
            Status::Fail => "fail",
        }
    }
}

/// A tuple supporting a verdict.
///
/// `indices` holds numeric targets (for example a bicyclic pair `(i,j)`);
/// `elements` holds element ids of the window, in the order documented by the
/// check that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Witness {
    pub indices: Vec<u32>,
    pub elements: Vec<usize>,
}

impl Witness {
    pub fn elements(elements: Vec<usize>) -> Self {
        Witness {
            indices: Vec::new(),
            elements,
        }
    }

    pub fn new(indices: Vec<u32>, elements: Vec<usize>) -> Self {
        Witness { indices, elements }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub counterexample: Option<Witness>,
    /// Every failing instance found, when the check enumerates targets.
    /// The first entry equals `counterexample`.
    pub counterexamples: Vec<Witness>,
    pub limitation: Option<String>,
    /// Number of instances examined.
    pub checked: u64,
    /// Instances left undecided because a product fell outside the window.
    pub skipped: u64,
}

impl Verdict {
    pub fn pass(witnesses: Vec<Witness>, checked: u64) -> Self {
        Verdict {
            status: Status::Pass,
            witnesses,
            counterexample: None,
            counterexamples: Vec::new(),
            limitation: None,
            checked,
            skipped: 0,
        }
    }

    pub fn fail(counterexample: Witness, checked: u64) -> Self {
        Verdict {
            status: Status::Fail,
            witnesses: Vec::new(),
            counterexample: Some(counterexample.clone()),
            counterexamples: vec![counterexample],
            limitation: None,
            checked,
            skipped: 0,
        }
    }

    pub fn unknown(limitation: impl Into<String>, checked: u64) -> Self {
        Verdict {
            status: Status::Unknown,
            witnesses: Vec::new(),
            counterexample: None,
            counterexamples: Vec::new(),
            limitation: Some(limitation.into()),
            checked,
            skipped: 0,
        }
    }

    pub fn with_limitation(mut self, note: impl Into<String>) -> Self {
        self.limitation = Some(note.into());
        self
    }

    pub fn with_skipped(mut self, skipped: u64) -> Self {
        self.skipped = skipped;
        self
    }

    pub fn with_witnesses(mut self, witnesses: Vec<Witness>) -> Self {
        self.witnesses = witnesses;
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_is_fail_then_unknown() {
        use Status::*;
        assert_eq!(Pass.worst(Unknown), Unknown);
        assert_eq!(Unknown.worst(Fail), Fail);
        assert_eq!(Fail.worst(Pass), Fail);
        assert_eq!(Pass.worst(Pass), Pass);
    }
}
