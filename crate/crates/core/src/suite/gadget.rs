use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use super::gen::{case_rng, random_target_case};
use super::tally::{Case, Tally};
use super::{timed, CheckResult, SuiteConfig};
use crate::ba::DEFAULT_ENUMERATION_CAP;
use crate::error::Result;
use crate::gadget::{
    build_gadget_capped, check_essproj, check_gadget_fn, check_gadget_rcnested,
    check_ideal_triviality, check_independence, check_pre_independence,
    check_pre_pushout_characterization, check_pushout_characterization, check_system_projections,
    check_targets, free_extension_ranks, gadget_as_system, orbit_budget, orbit_growth, proj_b_h0_chain,
    sample_comparable_pairs, GadgetAlgebra, GadgetParams,
};
use crate::approx::NestedOutcome;

/// One cell of the projection table, by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssprojRow {
    pub element: String,
    pub target: String,
    pub expected: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    /// Atoms of the subalgebra the orbit generates.
    pub size: usize,
    pub generators_reached: Vec<String>,
    pub rounds: usize,
    pub budget: usize,
    pub fixpoint: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainSummary {
    pub m: usize,
    /// Atoms below `proj_up(Bpush, h0)`.
    pub atoms_below: usize,
    pub strictly_below_previous: Option<bool>,
    pub below_explicit_meet: bool,
    pub equals_explicit_meet: bool,
}

/// What the gadget suite found beyond pass or fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetDetails {
    pub params: GadgetParams,
    pub atoms: usize,
    pub pre_atoms: usize,
    pub orbit: OrbitSummary,
    pub chain: Vec<ChainSummary>,
    pub essproj: Vec<EssprojRow>,
}

impl GadgetDetails {
    /// The projection table as rows of elements against A0 and A1.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = self.params;
        let _ = writeln!(out, "gadget m={} g={}: {} atoms ({} before the quotient)", p.m, p.g, self.atoms, self.pre_atoms);
        let _ = writeln!(out, "{:<14}| {:<16}| {:<16}", "x", "proj_up A0", "proj_up A1");
        for pair in self.essproj.chunks(2) {
            let cell = |r: &EssprojRow| format!("{} {}", r.expected, if r.pass { "ok" } else { "FAIL" });
            let _ = writeln!(out, "{:<14}| {:<16}| {:<16}", pair[0].element, cell(&pair[0]), pair.get(1).map(cell).unwrap_or_default());
        }
        let o = &self.orbit;
        let _ = writeln!(
            out,
            "orbit: {} atoms after {} of {} rounds, reaches {}",
            o.size,
            o.rounds,
            o.budget,
            o.generators_reached.join(" ")
        );
        for link in &self.chain {
            let _ = writeln!(
                out,
                "chain m={}: {} atoms below, strictly below previous: {}, equals explicit meet: {}",
                link.m,
                link.atoms_below,
                link.strictly_below_previous.map_or("-".to_string(), |b| b.to_string()),
                link.equals_explicit_meet
            );
        }
        out
    }
}

fn structure_checks(g: &GadgetAlgebra) -> Result<Vec<CheckResult>> {
    let ideal = check_ideal_triviality(g)?;
    let pushout = check_pushout_characterization(g);
    let pre_pushout = check_pre_pushout_characterization(g)?;
    let ranks = free_extension_ranks(g)?;
    Ok(vec![
        CheckResult::single("ideal meets Bpush and H trivially", ideal.holds(), Some(json!(ideal))),
        CheckResult::single("A0 and A1 independent over A2", check_independence(g)?, None),
        CheckResult::single("independent before the quotient", check_pre_independence(g)?, None),
        CheckResult::single("Bpush is the pushout of A0 and A1", pushout.holds(), Some(json!(pushout))),
        CheckResult::single("pushout before the quotient", pre_pushout.holds(), Some(json!(pre_pushout))),
        CheckResult::single(
            "A0 and A1 are finite free extensions",
            ranks.0.is_some() && ranks.1.is_some(),
            Some(json!(ranks)),
        ),
    ])
}

fn system_checks(config: &SuiteConfig, g: &GadgetAlgebra) -> Result<Vec<CheckResult>> {
    let sys = gadget_as_system(g)?;
    let violations = sys.validate(DEFAULT_ENUMERATION_CAP);
    let projections = check_system_projections(g, &sys)?;
    let nested = check_gadget_rcnested(g, &sys)?;
    let mut rng = case_rng(config.seed, 0);
    let pairs = sample_comparable_pairs(&mut rng, g, &sys, config.fn_pairs)?;
    let sample = check_gadget_fn(&sys, &pairs)?;
    let nested_failures: Vec<_> = nested.iter().filter(|n| n.outcome != NestedOutcome::Holds).collect();
    let mut fn_check = CheckResult::single(
        "sampled interpolation on the gadget system",
        sample.failures.is_empty(),
        sample.failures.first().map(|f| json!(f)),
    );
    fn_check.cases = sample.checked;
    fn_check.applicable = sample.checked;
    fn_check.violations = sample.failures.len();
    Ok(vec![
        CheckResult::single("gadget system is valid", violations.is_empty(), violations.first().map(|v| json!(v))),
        CheckResult::single(
            "system projections match the table",
            projections.iter().all(|p| p.pass),
            projections.iter().find(|p| !p.pass).map(|p| json!(p)),
        ),
        CheckResult::single(
            "rcnested with the first segment",
            nested_failures.is_empty(),
            nested_failures.first().map(|n| json!(n)),
        ),
        fn_check,
    ])
}

pub fn run_gadget(config: &SuiteConfig) -> Result<(Vec<CheckResult>, GadgetDetails)> {
    let p = config.gadget;
    let g = build_gadget_capped(p, config.atom_cap)?;
    let mut checks = Vec::new();

    let cells = check_essproj(&g)?;
    let essproj: Vec<EssprojRow> = cells
        .iter()
        .map(|c| EssprojRow {
            element: c.row_label(),
            target: c.target_label().to_string(),
            expected: c.expected_name.clone(),
            pass: c.pass,
        })
        .collect();
    let failed = essproj.iter().find(|r| !r.pass).map(|r| json!(r));
    checks.push(CheckResult::single("projection table", failed.is_none(), failed));

    checks.push(timed(config, || {
        let t = Tally::run(config.target_cases, |i| {
            let mut rng = case_rng(config.seed, i);
            let case = random_target_case(&mut rng, p);
            let outcome = check_targets(&g, &case)?;
            Ok(vec![Case::check(outcome.pass, || json!({ "case": case, "targets": outcome.targets }))])
        })?;
        Ok(t.into_check("target sets"))
    })?);
    checks.extend(structure_checks(&g)?);
    checks.extend(system_checks(config, &g)?);

    let chain = proj_b_h0_chain(p.m, p.g, config.atom_cap)?;
    let decreasing = chain
        .iter()
        .all(|l| l.below_explicit_meet && l.strictly_below_previous != Some(false));
    checks.push(CheckResult::single("proj_up(Bpush, h0) strictly decreases", decreasing, None));

    let orbit = orbit_growth(&g)?;
    let all_b = g.b_names(0).len() + g.b_names(1).len();
    checks.push(CheckResult::single(
        "orbit reaches every b generator",
        orbit.generators_reached.len() == all_b,
        Some(json!(orbit.generators_reached)),
    ));

    let details = GadgetDetails {
        params: p,
        atoms: g.algebra.atom_count(),
        pre_atoms: g.pre.atom_count(),
        orbit: OrbitSummary {
            size: orbit.atoms,
            generators_reached: orbit.generators_reached,
            rounds: orbit.rounds,
            budget: orbit_budget(p),
            fixpoint: orbit.fixpoint,
        },
        chain: chain
            .iter()
            .map(|l| ChainSummary {
                m: l.m,
                atoms_below: l.value.count(),
                strictly_below_previous: l.strictly_below_previous,
                below_explicit_meet: l.below_explicit_meet,
                equals_explicit_meet: l.equals_explicit_meet,
            })
            .collect(),
        essproj,
    };
    Ok((checks, details))
}
