use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        })
    }
}

/// A vector certifying a verdict, tagged with the space it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub vector: Vec<u32>,
}

impl Witness {
    pub fn new(label: impl Into<String>, vector: Vec<u32>) -> Self {
        Witness {
            label: label.into(),
            vector,
        }
    }
}

/// One sub-check of a report, e.g. a single axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub a: usize,
    pub b: usize,
}

/// Machine-readable verdict of a checker.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub checker: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub clauses: Vec<Clause>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub dims: Dims,
    pub profile: Vec<usize>,
    pub fingerprint: String,
}

impl TheoremReport {
    pub fn new(checker: impl Into<String>, verdict: Verdict) -> Self {
        TheoremReport {
            checker: checker.into(),
            degree: None,
            verdict,
            witnesses: Vec::new(),
            clauses: Vec::new(),
            notes: Vec::new(),
            dims: Dims::default(),
            profile: Vec::new(),
            fingerprint: String::new(),
        }
    }

    pub fn with_witness(mut self, label: impl Into<String>, vector: Vec<u32>) -> Self {
        self.witnesses.push(Witness::new(label, vector));
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn at_degree(mut self, n: usize) -> Self {
        self.degree = Some(n);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    /// The first failing clause, if any.
    pub fn first_failure(&self) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.verdict.is_fail())
    }
}

fn fmt_vector(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<24} ", self.checker)?;
        if let Some(n) = self.degree {
            write!(f, "n={} ", n)?;
        }
        write!(
            f,
            "{:<7} dimA={} dimB={} profile={:?}",
            self.verdict.to_string(),
            self.dims.a,
            self.dims.b,
            self.profile
        )?;
        for c in &self.clauses {
            write!(f, "\n    {:<10} {:<7} {}", c.name, c.verdict.to_string(), c.detail)?;
            if let Some(w) = &c.witness {
                write!(f, " witness {}={}", w.label, fmt_vector(&w.vector))?;
            }
        }
        for w in &self.witnesses {
            write!(f, "\n    witness {} = {}", w.label, fmt_vector(&w.vector))?;
        }
        for n in &self.notes {
            write!(f, "\n    note: {}", n)?;
        }
        Ok(())
    }
}
