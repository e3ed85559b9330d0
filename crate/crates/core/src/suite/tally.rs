use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::CheckResult;
use crate::error::Result;
use crate::interp::lemmas::Conditional;

/// Outcome of one case of a check.
#[derive(Clone, Debug, PartialEq)]
pub enum Case {
    Inapplicable,
    Holds,
    Fails(Value),
}

impl Case {
    pub fn check(pass: bool, witness: impl FnOnce() -> Value) -> Case {
        if pass {
            Case::Holds
        } else {
            Case::Fails(witness())
        }
    }

    pub fn from_conditional<W: Serialize>(c: Conditional<W>) -> Case {
        match c {
            Conditional::Holds => Case::Holds,
            Conditional::Inapplicable(_) => Case::Inapplicable,
            Conditional::Fails(w) => Case::Fails(serde_json::to_value(w).unwrap_or(Value::Null)),
        }
    }
}

/// Counts over the cases of one check. The kept witness is the one from
/// the lowest-numbered failing case.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tally {
    pub cases: usize,
    pub applicable: usize,
    pub violations: usize,
    pub witness: Option<Value>,
}

impl Tally {
    pub fn add(&mut self, case: Case) {
        self.cases += 1;
        match case {
            Case::Inapplicable => {}
            Case::Holds => self.applicable += 1,
            Case::Fails(w) => {
                self.applicable += 1;
                self.violations += 1;
                self.witness.get_or_insert(w);
            }
        }
    }

    /// Runs case `i` for every `i < count` in parallel; each case may
    /// report several outcomes.
    pub fn run<F>(count: usize, f: F) -> Result<Tally>
    where
        F: Fn(u64) -> Result<Vec<Case>> + Sync + Send,
    {
        let per_case: Vec<Result<Vec<Case>>> = (0..count as u64).into_par_iter().map(f).collect();
        let mut t = Tally::default();
        for outcomes in per_case {
            for c in outcomes? {
                t.add(c);
            }
        }
        Ok(t)
    }

    /// Like [`Tally::run`] over a list of inputs.
    pub fn run_over<T, F>(inputs: &[T], f: F) -> Result<Tally>
    where
        T: Sync,
        F: Fn(&T) -> Result<Vec<Case>> + Sync + Send,
    {
        let per_case: Vec<Result<Vec<Case>>> = inputs.par_iter().map(f).collect();
        let mut t = Tally::default();
        for outcomes in per_case {
            for c in outcomes? {
                t.add(c);
            }
        }
        Ok(t)
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.applicable += other.applicable;
        self.violations += other.violations;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }

    pub fn into_check(self, name: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.into(),
            pass: self.violations == 0,
            cases: self.cases,
            applicable: self.applicable,
            violations: self.violations,
            witness: self.witness,
            duration_ms: None,
        }
    }
}
