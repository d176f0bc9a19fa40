use std::fmt;

use h90_core::{Clause, ExtensionModel, TheoremReport, Verdict};
use serde::Serialize;

/// One line of output: a checker verdict or an aggregated property count.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub checker: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
    pub dims: Dims,
    pub profile: Vec<usize>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Counts>,
    /// Informational records (e.g. the raw Hilbert 90 verdict of a tower
    /// degree) are reported but never decide the exit code.
    #[serde(skip)]
    pub informational: bool,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Dims {
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Counts {
    pub fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Skipped => self.skipped += 1,
        }
    }
}

impl Record {
    pub fn new(checker: impl Into<String>, verdict: Verdict) -> Self {
        Record {
            checker: checker.into(),
            degree: None,
            verdict,
            witness: None,
            dims: Dims::default(),
            profile: Vec::new(),
            detail: String::new(),
            counts: None,
            informational: false,
        }
    }

    pub fn skipped(checker: impl Into<String>, reason: impl fmt::Display) -> Self {
        Record::new(checker, Verdict::Skipped).with_detail(reason.to_string())
    }

    pub fn from_report(r: &TheoremReport) -> Self {
        let mut detail: Vec<String> = r.notes.clone();
        for w in &r.witnesses {
            detail.push(format!("{} = {:?}", w.label, w.vector));
        }
        Record {
            checker: r.checker.clone(),
            degree: r.degree,
            verdict: r.verdict,
            witness: r.witnesses.first().map(|w| w.vector.clone()),
            dims: Dims {
                a: r.dims.a,
                b: r.dims.b,
            },
            profile: r.profile.clone(),
            detail: detail.join("; "),
            counts: None,
            informational: false,
        }
    }

    pub fn from_clause(c: &Clause, parent: &TheoremReport) -> Self {
        let mut rec = Record::from_report(parent);
        rec.checker = c.name.clone();
        rec.verdict = c.verdict;
        rec.witness = c.witness.as_ref().map(|w| w.vector.clone());
        rec.detail = match &c.witness {
            Some(w) => format!("{}; {} = {:?}", c.detail, w.label, w.vector),
            None => c.detail.clone(),
        };
        rec
    }

    pub fn for_model(mut self, m: &ExtensionModel) -> Self {
        self.dims = Dims {
            a: m.a_dim(),
            b: m.b_dim(),
        };
        self.profile = m.module().profile().multiplicities().to_vec();
        self
    }

    pub fn at_degree(mut self, n: usize) -> Self {
        self.degree = Some(n);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn is_failure(&self) -> bool {
        !self.informational && self.verdict.is_fail()
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degree = self.degree.map_or(String::new(), |n| format!("n={}", n));
        write!(
            f,
            "{:<34} {:<4} {:<8}",
            self.checker,
            degree,
            self.verdict.to_string()
        )?;
        if let Some(c) = self.counts {
            write!(f, " pass={} fail={} skipped={}", c.pass, c.fail, c.skipped)?;
        } else {
            write!(
                f,
                " dimA={} dimB={} profile={:?}",
                self.dims.a, self.dims.b, self.profile
            )?;
        }
        if !self.detail.is_empty() {
            write!(f, "  {}", self.detail)?;
        }
        Ok(())
    }
}
