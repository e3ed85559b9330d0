//! Randomized and exhaustive verification suites.
//!
//! Each suite runs its cases in parallel with one generator per case index,
//! so a report depends only on the configuration and not on scheduling.

mod approx;
mod colimits;
mod gadget;
pub mod gen;
mod lemmas;
mod tally;

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::construct::DEFAULT_ATOM_CAP;
use crate::error::Result;
use crate::gadget::GadgetParams;

pub use approx::run_approx;
pub use colimits::{factor_cases, run_colimits};
pub use gadget::{run_gadget, GadgetDetails};
pub use lemmas::{lemma_names, run_lemma, run_lemmas};
pub use tally::{Case, Tally};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Lemmas,
    Colimits,
    Approx,
    Gadget,
    All,
}

impl SuiteKind {
    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Lemmas => "lemmas",
            SuiteKind::Colimits => "colimits",
            SuiteKind::Approx => "approx",
            SuiteKind::Gadget => "gadget",
            SuiteKind::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random cases for each lemma.
    pub lemma_cases: usize,
    /// Atom bound for random lemma cases and random systems.
    pub max_atoms: usize,
    /// Atom bound for exhaustive lemma cases.
    pub exhaustive_atoms: usize,
    /// Random families for the family constructions.
    pub family_cases: usize,
    /// Atom bound for both factors of the pushout comparison.
    pub factor_atoms: usize,
    pub systems: usize,
    pub max_stages: usize,
    pub gadget: GadgetParams,
    pub target_cases: usize,
    /// Random comparable pairs for the interpolation spot check.
    pub fn_pairs: usize,
    pub atom_cap: usize,
    #[serde(skip)]
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            lemma_cases: 1000,
            max_atoms: 6,
            exhaustive_atoms: 4,
            family_cases: 100,
            factor_atoms: 8,
            systems: 200,
            max_stages: 5,
            gadget: GadgetParams::default(),
            target_cases: 50,
            fn_pairs: 200,
            atom_cap: DEFAULT_ATOM_CAP,
            timings: false,
        }
    }
}

/// One named check with its counts and the first failing case.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    /// Cases whose hypotheses held.
    pub applicable: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl CheckResult {
    /// A single deterministic check.
    pub fn single(name: impl Into<String>, pass: bool, witness: Option<Value>) -> Self {
        CheckResult {
            name: name.into(),
            pass,
            cases: 1,
            applicable: 1,
            violations: usize::from(!pass),
            witness: if pass { None } else { witness },
            duration_ms: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: SuiteKind,
    pub config: SuiteConfig,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gadget: Option<GadgetDetails>,
    pub summary: Summary,
}

impl Report {
    fn new(suite: SuiteKind, config: &SuiteConfig, checks: Vec<CheckResult>, gadget: Option<GadgetDetails>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        Report {
            suite,
            config: config.clone(),
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
            gadget,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (seed {})", self.suite.name(), self.config.seed);
        if let Some(g) = &self.gadget {
            out.push_str(&g.to_text());
        }
        for c in &self.checks {
            let _ = write!(
                out,
                "{} {}: {} cases, {} applicable, {} violations",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.cases,
                c.applicable,
                c.violations
            );
            if let Some(ms) = c.duration_ms {
                let _ = write!(out, " ({ms} ms)");
            }
            out.push('\n');
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "  witness: {w}");
            }
        }
        let s = self.summary;
        let _ = writeln!(out, "{} of {} checks passed", s.passed, s.total);
        out
    }
}

/// Runs `f`, recording its duration on every result when timings are on.
fn timed(config: &SuiteConfig, f: impl FnOnce() -> Result<CheckResult>) -> Result<CheckResult> {
    let start = Instant::now();
    let mut r = f()?;
    if config.timings {
        r.duration_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(r)
}

pub fn run_suite(kind: SuiteKind, config: &SuiteConfig) -> Result<Report> {
    let mut checks = Vec::new();
    let mut details = None;
    if matches!(kind, SuiteKind::Lemmas | SuiteKind::All) {
        checks.extend(run_lemmas(config)?);
    }
    if matches!(kind, SuiteKind::Colimits | SuiteKind::All) {
        checks.extend(run_colimits(config)?);
    }
    if matches!(kind, SuiteKind::Approx | SuiteKind::All) {
        checks.extend(run_approx(config)?);
    }
    if matches!(kind, SuiteKind::Gadget | SuiteKind::All) {
        let (c, d) = run_gadget(config)?;
        checks.extend(c);
        details = Some(d);
    }
    Ok(Report::new(kind, config, checks, details))
}
