use rand::Rng;
use serde_json::json;

use super::gen::{
    all_partitions, case_rng, lift_through, random_commuting_family, random_commuting_pair,
    random_element, random_member, random_partition, random_suborder,
};
use super::tally::{Case, Tally};
use super::{timed, CheckResult, SuiteConfig};
use crate::ba::{Element, FinAlg, SubOrder, Subalgebra, DEFAULT_ENUMERATION_CAP};
use crate::error::Result;
use crate::interp::lemmas::{
    check_commproj, check_communion, check_projrestrict, check_rcdown, check_rcmeet,
};
use crate::interp::{
    close_under_intersection, commutes, extend_sfn_family, fn_map_from_expansion,
    strongly_commuting_expansion, subalgebras_commute, verify_fn_map, verify_sfn_family,
    CommFamily,
};

const CAP: u128 = DEFAULT_ENUMERATION_CAP;

fn elements(n: usize) -> Vec<Element> {
    (0..1u64 << n).map(|m| Element::from_mask(n, m)).collect()
}

fn suborder(b: &Subalgebra) -> Result<SubOrder> {
    SubOrder::from_subalgebra(b, CAP)
}

/// Every partition of up to `max` atoms.
fn small_partitions(max: usize) -> Vec<(usize, Subalgebra)> {
    (1..=max)
        .flat_map(|n| all_partitions(n).into_iter().map(move |b| (n, b)))
        .collect()
}

fn pairs_of_partitions(max: usize) -> Vec<(Subalgebra, Subalgebra)> {
    let mut out = Vec::new();
    for n in 1..=max {
        let all = all_partitions(n);
        for s in &all {
            for t in &all {
                out.push((s.clone(), t.clone()));
            }
        }
    }
    out
}

fn rcmeet_case(b: &Subalgebra, x: &Element, y: &Element) -> Result<Case> {
    let a = FinAlg::new(b.atom_count())?;
    let holds = check_rcmeet(&a, b, x, y)?;
    Ok(Case::check(holds, || json!({ "b": b, "x": x, "y": y })))
}

fn rcmeet(config: &SuiteConfig) -> Result<CheckResult> {
    let random = Tally::run(config.lemma_cases, |i| {
        let mut rng = case_rng(config.seed, i);
        let n = rng.random_range(1..=config.max_atoms);
        let b = random_partition(&mut rng, n);
        let x = random_member(&mut rng, &b);
        let y = random_element(&mut rng, n);
        Ok(vec![rcmeet_case(&b, &x, &y)?])
    })?;
    let exhaustive = Tally::run_over(&small_partitions(config.exhaustive_atoms), |(n, b)| {
        let mut out = Vec::new();
        for x in b.elements(CAP)? {
            for y in elements(*n) {
                out.push(rcmeet_case(b, &x, &y)?);
            }
        }
        Ok(out)
    })?;
    Ok(random.merge(exhaustive).into_check("rcmeet"))
}

fn commproj_case(b: &Subalgebra, s: &Subalgebra) -> Result<Case> {
    let a = FinAlg::new(b.atom_count())?;
    let sides = check_commproj(&a, b, s, CAP)?;
    Ok(Case::check(sides.agree(), || json!({ "b": b, "s": s, "sides": sides })))
}

/// A random pair of subalgebras, commuting half of the time.
fn random_pair<R: Rng>(rng: &mut R, max_atoms: usize) -> (Subalgebra, Subalgebra) {
    let n = rng.random_range(1..=max_atoms);
    if rng.random_bool(0.5) {
        random_commuting_pair(rng, n)
    } else {
        (random_partition(rng, n), random_partition(rng, n))
    }
}

fn commproj(config: &SuiteConfig) -> Result<CheckResult> {
    let random = Tally::run(config.lemma_cases, |i| {
        let mut rng = case_rng(config.seed, i);
        let (b, s) = random_pair(&mut rng, config.max_atoms);
        Ok(vec![commproj_case(&b, &s)?])
    })?;
    let exhaustive = Tally::run_over(&pairs_of_partitions(config.exhaustive_atoms), |(b, s)| {
        Ok(vec![commproj_case(b, s)?])
    })?;
    Ok(random.merge(exhaustive).into_check("commproj"))
}

fn projrestrict(config: &SuiteConfig) -> Result<CheckResult> {
    let random = Tally::run(config.lemma_cases, |i| {
        let mut rng = case_rng(config.seed, i);
        let n = rng.random_range(1..=config.max_atoms);
        let (s, t) = if rng.random_bool(0.85) {
            let (s, t) = random_commuting_pair(&mut rng, n);
            (suborder(&s)?, suborder(&t)?)
        } else {
            (random_suborder(&mut rng, n), random_suborder(&mut rng, n))
        };
        Ok(vec![Case::from_conditional(check_projrestrict(&s, &t))])
    })?;
    let exhaustive = Tally::run_over(&pairs_of_partitions(config.exhaustive_atoms), |(s, t)| {
        Ok(vec![Case::from_conditional(check_projrestrict(&suborder(s)?, &suborder(t)?))])
    })?;
    Ok(random.merge(exhaustive).into_check("projrestrict"))
}

fn communion(config: &SuiteConfig) -> Result<CheckResult> {
    let random = Tally::run(config.lemma_cases, |i| {
        let mut rng = case_rng(config.seed, i);
        let n = rng.random_range(1..=config.max_atoms);
        let (left, right): (Vec<SubOrder>, Vec<SubOrder>) = if rng.random_bool(0.7) {
            let family = random_commuting_family(&mut rng, n, 4)
                .iter()
                .map(suborder)
                .collect::<Result<Vec<_>>>()?;
            let split = rng.random_range(1..4);
            (family[..split].to_vec(), family[split..].to_vec())
        } else {
            (
                vec![random_suborder(&mut rng, n), random_suborder(&mut rng, n)],
                vec![random_suborder(&mut rng, n)],
            )
        };
        Ok(vec![Case::from_conditional(check_communion(n, &left, &right))])
    })?;
    let inputs: Vec<(usize, Vec<SubOrder>)> = (1..=config.exhaustive_atoms)
        .map(|n| {
            let subs = all_partitions(n).iter().map(suborder).collect::<Result<Vec<_>>>()?;
            Ok((n, subs))
        })
        .collect::<Result<_>>()?;
    let mut exhaustive = Tally::default();
    for (n, subs) in &inputs {
        let t = Tally::run_over(subs, |s| {
            let mut out = Vec::new();
            for (j, t1) in subs.iter().enumerate() {
                for t2 in &subs[j..] {
                    let right = [t1.clone(), t2.clone()];
                    out.push(Case::from_conditional(check_communion(*n, std::slice::from_ref(s), &right)));
                }
            }
            Ok(out)
        })?;
        exhaustive = exhaustive.merge(t);
    }
    Ok(random.merge(exhaustive).into_check("communion"))
}

/// If a family commutes pairwise, so does its closure under intersection.
fn commint_case(n: usize, members: Vec<Subalgebra>) -> Result<Case> {
    let family = CommFamily::from_members(n, members)?;
    if family.noncommuting_pair().is_some() {
        return Ok(Case::Inapplicable);
    }
    let closed = close_under_intersection(&family);
    Ok(match closed.noncommuting_pair() {
        None => Case::Holds,
        Some((i, j, w)) => Case::Fails(json!({
            "family": family.to_blocks(),
            "left": closed.members()[i],
            "right": closed.members()[j],
            "witness": w,
        })),
    })
}

fn commint(config: &SuiteConfig) -> Result<CheckResult> {
    let random = Tally::run(config.lemma_cases, |i| {
        let mut rng = case_rng(config.seed, i);
        let n = rng.random_range(1..=config.max_atoms);
        let size = rng.random_range(2..=5);
        let mut members = random_commuting_family(&mut rng, n, size);
        if rng.random_bool(0.2) {
            members.push(random_partition(&mut rng, n));
        }
        Ok(vec![commint_case(n, members)?])
    })?;
    let mut exhaustive = Tally::default();
    for n in 1..=config.exhaustive_atoms {
        let all = all_partitions(n);
        let t = Tally::run_over(&all, |first| {
            let mut out = Vec::new();
            for (j, second) in all.iter().enumerate() {
                for third in &all[j..] {
                    out.push(commint_case(n, vec![first.clone(), second.clone(), third.clone()])?);
                }
            }
            Ok(out)
        })?;
        exhaustive = exhaustive.merge(t);
    }
    Ok(random.merge(exhaustive).into_check("commint"))
}

fn rcdown_case(n: usize, s: &SubOrder, t: &SubOrder) -> Case {
    Case::from_conditional(check_rcdown(s, t, &elements(n)))
}

fn rcdown(config: &SuiteConfig) -> Result<CheckResult> {
    let random = Tally::run(config.lemma_cases, |i| {
        let mut rng = case_rng(config.seed, i);
        let n = rng.random_range(1..=config.max_atoms);
        let s = if rng.random_bool(0.8) {
            suborder(&random_partition(&mut rng, n))?
        } else {
            random_suborder(&mut rng, n)
        };
        let mut t = s.clone();
        for _ in 0..rng.random_range(0..=4) {
            t.insert(random_element(&mut rng, n))?;
        }
        Ok(vec![rcdown_case(n, &s, &t)])
    })?;
    let exhaustive = Tally::run_over(&small_partitions(config.exhaustive_atoms), |(n, b)| {
        let s = suborder(b)?;
        let mut out = Vec::new();
        for extra in elements(*n) {
            let mut t = s.clone();
            t.insert(extra)?;
            out.push(rcdown_case(*n, &s, &t));
        }
        Ok(out)
    })?;
    Ok(random.merge(exhaustive).into_check("rcdown"))
}

/// The partition test for commutation agrees with the definition on
/// element sets.
fn commute_fast_path(config: &SuiteConfig) -> Result<CheckResult> {
    let case = |s: &Subalgebra, t: &Subalgebra| -> Result<Case> {
        let fast = subalgebras_commute(s, t);
        let literal = commutes(&suborder(s)?, &suborder(t)?);
        Ok(Case::check(fast == literal, || json!({ "s": s, "t": t, "fast": fast })))
    };
    let random = Tally::run(config.lemma_cases, |i| {
        let mut rng = case_rng(config.seed, i);
        let (s, t) = random_pair(&mut rng, config.max_atoms);
        Ok(vec![case(&s, &t)?])
    })?;
    let exhaustive = Tally::run_over(&pairs_of_partitions(config.exhaustive_atoms), |(s, t)| {
        Ok(vec![case(s, t)?])
    })?;
    Ok(random.merge(exhaustive).into_check("commute fast path"))
}

/// A commuting family with the whole algebra among its members, closed
/// under intersection, yields an interpolating map through its expansion.
fn family_expansion(config: &SuiteConfig) -> Result<CheckResult> {
    let t = Tally::run(config.family_cases, |i| {
        let mut rng = case_rng(config.seed, i);
        let n = rng.random_range(1..=config.max_atoms);
        let a = FinAlg::new(n)?;
        let size = rng.random_range(1..=4);
        let mut members = random_commuting_family(&mut rng, n, size);
        members.push(a.discrete());
        let family = close_under_intersection(&CommFamily::from_members(n, members)?);
        let verdict = verify_sfn_family(&a, &family)?;
        if !verdict.holds() {
            return Ok(vec![Case::Fails(json!({ "family": family.to_blocks(), "verdict": verdict }))]);
        }
        let expansion = strongly_commuting_expansion(&a, &family, CAP)?;
        let map = fn_map_from_expansion(&a, &expansion, CAP)?;
        let violation = verify_fn_map(&a, &map, CAP)?;
        Ok(vec![Case::check(violation.is_none(), || {
            json!({ "family": family.to_blocks(), "violation": violation })
        })])
    })?;
    Ok(t.into_check("family expansion"))
}

/// Extending a commuting family of a subalgebra gives a commuting family
/// of the whole algebra that reaches the top.
fn family_extension(config: &SuiteConfig) -> Result<CheckResult> {
    let t = Tally::run(config.family_cases, |i| {
        let mut rng = case_rng(config.seed, i);
        let n = rng.random_range(1..=config.max_atoms);
        let a = FinAlg::new(n)?;
        let base = random_partition(&mut rng, n);
        let size = rng.random_range(1..=3);
        let mut members: Vec<Subalgebra> = random_commuting_family(&mut rng, base.block_count(), size)
            .iter()
            .map(|over| lift_through(&base, over))
            .collect();
        members.push(base.clone());
        let base_family = close_under_intersection(&CommFamily::from_members(n, members)?);
        let extended = extend_sfn_family(&a, &base, &base_family, None)?;
        let verdict = verify_sfn_family(&a, &extended.family)?;
        Ok(vec![Case::check(verdict.holds(), || {
            json!({ "base": base, "family": base_family.to_blocks(), "verdict": verdict })
        })])
    })?;
    Ok(t.into_check("family extension"))
}

type Check = fn(&SuiteConfig) -> Result<CheckResult>;

const CHECKS: [(&str, Check); 9] = [
    ("rcmeet", rcmeet),
    ("commproj", commproj),
    ("projrestrict", projrestrict),
    ("communion", communion),
    ("commint", commint),
    ("rcdown", rcdown),
    ("commute fast path", commute_fast_path),
    ("family expansion", family_expansion),
    ("family extension", family_extension),
];

pub fn lemma_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(name, _)| *name).collect()
}

/// Runs one check of the lemma suite by name.
pub fn run_lemma(name: &str, config: &SuiteConfig) -> Option<Result<CheckResult>> {
    CHECKS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, check)| timed(config, || check(config)))
}

pub fn run_lemmas(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    CHECKS.iter().map(|(_, check)| timed(config, || check(config))).collect()
}
