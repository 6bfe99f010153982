use std::fmt;

/// Result of one sampled check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Inconclusive,
}

impl Verdict {
    pub fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Pass => other(),
            v => v,
        }
    }
}

/// Tally of a property check over a finite sample.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub property: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub inconclusive: usize,
    /// Cases excluded by a precondition (counted, not checked).
    pub skipped: usize,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(property: impl Into<String>) -> Self {
        CheckReport {
            property: property.into(),
            ..Default::default()
        }
    }

    pub fn record(&mut self, v: Verdict) {
        self.cases += 1;
        match v {
            Verdict::Pass => {}
            Verdict::Fail(msg) => self.failures.push(msg),
            Verdict::Inconclusive => self.inconclusive += 1,
        }
    }

    pub fn record_all<I: IntoIterator<Item = Verdict>>(&mut self, vs: I) {
        for v in vs {
            self.record(v);
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
        self.inconclusive += other.inconclusive;
        self.skipped += other.skipped;
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.inconclusive == 0
    }

    /// 0 on pass, 1 on any failure, 2 when only inconclusive cases remain.
    pub fn status(&self) -> i32 {
        if !self.failures.is_empty() {
            1
        } else if self.inconclusive > 0 {
            2
        } else {
            0
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "property      {}", self.property)?;
        writeln!(f, "cases         {}", self.cases)?;
        writeln!(f, "failures      {}", self.failures.len())?;
        writeln!(f, "inconclusive  {}", self.inconclusive)?;
        writeln!(f, "skipped       {}", self.skipped)?;
        for n in &self.notes {
            writeln!(f, "note          {n}")?;
        }
        for (i, msg) in self.failures.iter().take(5).enumerate() {
            writeln!(f, "failure {i}     {msg}")?;
        }
        write!(f, "verdict       {}", if self.passed() { "pass" } else { "FAIL" })
    }
}
