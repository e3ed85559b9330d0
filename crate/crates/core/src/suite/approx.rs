use std::collections::BTreeSet;

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::gen::{case_rng, random_system};
use super::tally::{Case, Tally};
use super::{timed, CheckResult, SuiteConfig};
use crate::approx::{
    check_rclimit, check_rcnested, sigma_tree, synth_fn_map, synth_transitive_fn_map, ApproxSystem,
    LazyFn, NestedOutcome,
};
use crate::ba::DEFAULT_ENUMERATION_CAP;
use crate::error::Result;
use crate::interp::{transitivity_violation, verify_fn_map, Direction};

const CAP: u128 = DEFAULT_ENUMERATION_CAP;

fn doc(sys: &ApproxSystem) -> Value {
    serde_json::to_value(sys.to_doc()).unwrap_or(Value::Null)
}

/// Stage unions worth testing: each stage with what it sees, each initial
/// run, the whole system and one random set.
fn index_sets(sys: &ApproxSystem, extra: BTreeSet<usize>) -> BTreeSet<Vec<usize>> {
    let mut sets = BTreeSet::new();
    for b in 0..sys.len() {
        let mut s: Vec<usize> = sys.visibility()[b].iter().copied().collect();
        s.push(b);
        s.sort_unstable();
        sets.insert(s);
        sets.insert((0..=b).collect());
    }
    if !extra.is_empty() {
        sets.insert(extra.into_iter().collect());
    }
    sets
}

fn fn_synthesis(sys: &ApproxSystem) -> Result<Vec<Case>> {
    let plain = synth_fn_map(sys, CAP)?;
    let transitive = synth_transitive_fn_map(sys, CAP)?;
    let plain_violation = verify_fn_map(sys.ambient(), &plain, CAP)?;
    let transitive_violation = verify_fn_map(sys.ambient(), &transitive, CAP)?;
    let not_transitive = transitivity_violation(&transitive);
    Ok(vec![
        Case::check(plain_violation.is_none(), || json!({ "system": doc(sys), "violation": plain_violation })),
        Case::check(transitive_violation.is_none() && not_transitive.is_none(), || {
            json!({
                "system": doc(sys),
                "violation": transitive_violation,
                "not_transitive": not_transitive,
            })
        }),
    ])
}

/// The lazy interpolant passes every comparable pair, checked by its own
/// membership test rather than the synthesized table.
fn lazy_pairs(sys: &ApproxSystem) -> Result<Vec<Case>> {
    let lazy = LazyFn::new(sys, CAP);
    let all = sys.ambient().elements(CAP)?;
    for x in &all {
        for y in all.iter().filter(|y| x.is_below(y)) {
            let check = lazy.check_pair(x, y)?;
            if !check.is_ok() {
                return Ok(vec![Case::Fails(json!({
                    "system": doc(sys),
                    "lower": x,
                    "upper": y,
                    "check": check,
                }))]);
            }
        }
    }
    Ok(vec![Case::Holds])
}

/// Every projection tree is finite, strictly decreasing in rank and has
/// all its projections.
fn sigma_trees(sys: &ApproxSystem) -> Result<Vec<Case>> {
    for x in sys.ambient().elements(CAP)? {
        for dir in [Direction::Up, Direction::Down] {
            let tree = match sigma_tree(sys, &x, dir, CAP) {
                Ok(t) => t,
                Err(e) => {
                    return Ok(vec![Case::Fails(json!({ "system": doc(sys), "x": x, "error": e.to_string() }))])
                }
            };
            let bounded = tree.depth() <= sys.len() && tree.nodes.iter().all(|n| n.path.len() < sys.len());
            if !tree.missing.is_empty() || !bounded {
                return Ok(vec![Case::Fails(json!({ "system": doc(sys), "x": x, "tree": tree }))]);
            }
        }
    }
    Ok(vec![Case::Holds])
}

fn rclimit(sys: &ApproxSystem, sets: &BTreeSet<Vec<usize>>) -> Result<Vec<Case>> {
    sets.iter()
        .map(|s| {
            Ok(match check_rclimit(sys, s, CAP)? {
                crate::interp::lemmas::Conditional::Fails(w) => {
                    Case::Fails(json!({ "system": doc(sys), "indices": s, "witness": w }))
                }
                c => Case::from_conditional(c),
            })
        })
        .collect()
}

fn rcnested(sys: &ApproxSystem, sets: &BTreeSet<Vec<usize>>) -> Result<Vec<Case>> {
    let all = sys.ambient().elements(CAP)?;
    let mut out = Vec::new();
    for s in sets {
        for x in &all {
            out.push(match check_rcnested(sys, s, x, CAP)? {
                NestedOutcome::Holds => Case::Holds,
                NestedOutcome::Inconclusive(_) => Case::Inapplicable,
                fails => Case::Fails(json!({ "system": doc(sys), "indices": s, "x": x, "outcome": fails })),
            });
        }
    }
    Ok(out)
}

pub fn run_approx(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let systems: Vec<(ApproxSystem, BTreeSet<Vec<usize>>)> = (0..config.systems as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(config.seed, i);
            let sys = random_system(&mut rng, config.max_stages, config.max_atoms);
            let extra = (0..sys.len()).filter(|_| rng.random_bool(0.5)).collect();
            let sets = index_sets(&sys, extra);
            (sys, sets)
        })
        .collect();
    let validity = Tally::run_over(&systems, |(sys, _)| {
        let v = sys.validate(CAP);
        Ok(vec![Case::check(v.is_empty(), || json!({ "system": doc(sys), "violations": v }))])
    })?;
    let mut checks = vec![validity.into_check("system validity")];
    // The two synthesis variants share one pass over each system.
    let start = std::time::Instant::now();
    let per: Vec<Result<Vec<Case>>> = systems.par_iter().map(|(s, _)| fn_synthesis(s)).collect();
    let (mut plain, mut transitive) = (Tally::default(), Tally::default());
    for cases in per {
        let mut it = cases?.into_iter();
        plain.add(it.next().expect("two outcomes"));
        transitive.add(it.next().expect("two outcomes"));
    }
    let elapsed = config.timings.then(|| start.elapsed().as_millis() as u64);
    for (t, name) in [(plain, "fn synthesis"), (transitive, "transitive fn synthesis")] {
        let mut c = t.into_check(name);
        c.duration_ms = elapsed;
        checks.push(c);
    }
    checks.push(timed(config, || {
        Ok(Tally::run_over(&systems, |(s, _)| lazy_pairs(s))?.into_check("lazy interpolant"))
    })?);
    checks.push(timed(config, || {
        Ok(Tally::run_over(&systems, |(s, _)| sigma_trees(s))?.into_check("projection trees"))
    })?);
    checks.push(timed(config, || {
        Ok(Tally::run_over(&systems, |(s, sets)| rclimit(s, sets))?.into_check("rclimit"))
    })?);
    checks.push(timed(config, || {
        Ok(Tally::run_over(&systems, |(s, sets)| rcnested(s, sets))?.into_check("rcnested"))
    })?);
    Ok(checks)
}
