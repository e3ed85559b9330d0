use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use super::build::{b_name, GadgetAlgebra};
use super::checks::row_element;
use crate::approx::{check_rcnested, ApproxSystem, LazyFn, NestedOutcome, PairCheck};
use crate::ba::{Element, Subalgebra, DEFAULT_ENUMERATION_CAP};
use crate::error::Result;
use crate::interp::Direction;
use crate::ordinals::Ordinal;

/// The gadget as a two-segment system. Segment 0 sits at positions
/// `0..=m+1` and adds `b0⁰, b0¹, …` to A2 one at a time, ending at A0.
/// Segment 1 sits at `ω1 + j` for `j < m` and adds `b1⁰, …, b1ʲ`, ending at
/// A1; it sees stage 0 and its own earlier stages. The whole quotient is
/// the top stage at `ω1 + m` and sees everything.
pub fn gadget_as_system(g: &GadgetAlgebra) -> Result<ApproxSystem> {
    let m = g.params.m;
    let mut positions = Vec::new();
    let mut stages = Vec::new();
    let mut visibility: Vec<BTreeSet<usize>> = Vec::new();
    let mut stage = g.a2.clone();
    for k in 0..=m + 1 {
        if k > 0 {
            stage = stage.refined_by(g.b(0, k - 1)?);
        }
        positions.push(Ordinal::finite(k as u64));
        stages.push(stage.clone());
        visibility.push((0..k).collect());
    }
    let first_segment_one = stages.len();
    let mut stage = g.a2.clone();
    for j in 0..m {
        stage = stage.refined_by(g.b(1, j)?);
        positions.push(Ordinal::omega(1) + Ordinal::finite(j as u64));
        stages.push(stage.clone());
        let mut v: BTreeSet<usize> = BTreeSet::from([0]);
        v.extend(first_segment_one..first_segment_one + j);
        visibility.push(v);
    }
    let top = stages.len();
    positions.push(Ordinal::omega(1) + Ordinal::finite(m as u64));
    stages.push(Subalgebra::discrete(g.algebra.atom_count()));
    visibility.push((0..top).collect());
    ApproxSystem::new(
        g.algebra.clone(),
        Ordinal::omega(1) + Ordinal::finite(m as u64 + 1),
        positions,
        stages,
        visibility,
    )
}

/// Stage indices of segment 0 in [`gadget_as_system`].
pub fn segment_zero_indices(g: &GadgetAlgebra) -> Vec<usize> {
    (0..=g.params.m + 1).collect()
}

/// One comparison of a system projection at the top rank with a direct
/// projection onto A0 or A1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemProjection {
    pub row: usize,
    pub n: usize,
    pub segment: usize,
    pub pass: bool,
}

/// `proj_i` of each `b_rowⁿ ∧ h_row` in the system agrees with projecting
/// onto A_i directly.
pub fn check_system_projections(g: &GadgetAlgebra, sys: &ApproxSystem) -> Result<Vec<SystemProjection>> {
    let mut out = Vec::new();
    for n in 0..g.params.m {
        for row in 0..2 {
            let x = row_element(g, row, n)?;
            for segment in 0..2 {
                let via_system = sys.proj_i(&x, segment, Direction::Up, DEFAULT_ENUMERATION_CAP)?;
                let direct = g.side(segment).proj_up(&x);
                out.push(SystemProjection {
                    row,
                    n,
                    segment,
                    pass: via_system == Some(direct),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NestedAt {
    pub element: String,
    pub outcome: NestedOutcome,
}

/// The nested-projection identity with `P = A0` at every `b0ⁿ∧h0` and
/// `b1ⁿ∧h1`.
pub fn check_gadget_rcnested(g: &GadgetAlgebra, sys: &ApproxSystem) -> Result<Vec<NestedAt>> {
    let p = segment_zero_indices(g);
    let mut out = Vec::new();
    for n in 0..g.params.m {
        for row in 0..2 {
            let x = row_element(g, row, n)?;
            out.push(NestedAt {
                element: format!("{}∧h{row}", b_name(row, n)),
                outcome: check_rcnested(sys, &p, &x, DEFAULT_ENUMERATION_CAP)?,
            });
        }
    }
    Ok(out)
}

/// Random element of a random stage.
fn random_stage_element<R: Rng>(rng: &mut R, sys: &ApproxSystem) -> Element {
    let stage = &sys.stages()[rng.random_range(0..sys.len())];
    let n = stage.atom_count();
    let pick: Vec<bool> = (0..stage.block_count()).map(|_| rng.random_bool(0.5)).collect();
    let mut x = Element::empty(n);
    for a in 0..n {
        if pick[stage.block_of(a)] {
            x.insert(a);
        }
    }
    x
}

/// Comparable pairs for spot-checking interpolation: the named table
/// elements under their projections, plus meets and joins of random stage
/// elements.
pub fn sample_comparable_pairs<R: Rng>(
    rng: &mut R,
    g: &GadgetAlgebra,
    sys: &ApproxSystem,
    random: usize,
) -> Result<Vec<(Element, Element)>> {
    let mut pairs = Vec::new();
    for n in 0..g.params.m {
        for row in 0..2 {
            let x = row_element(g, row, n)?;
            for side in 0..2 {
                pairs.push((x.clone(), g.side(side).proj_up(&x)));
                pairs.push((g.side(side).proj_down(&x), x.clone()));
            }
            pairs.push((x.clone(), g.b(row, n)?.clone()));
        }
    }
    for _ in 0..random {
        let x = random_stage_element(rng, sys);
        let y = random_stage_element(rng, sys);
        if rng.random_bool(0.5) {
            pairs.push((x.meet(&y), y));
        } else {
            pairs.push((x.clone(), x.join(&y)));
        }
    }
    Ok(pairs)
}

/// Interpolation spot check of the synthesized map on the gadget system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FnSample {
    pub checked: usize,
    pub failures: Vec<(Element, Element, PairCheck)>,
}

pub fn check_gadget_fn(sys: &ApproxSystem, pairs: &[(Element, Element)]) -> Result<FnSample> {
    let lazy = LazyFn::new(sys, DEFAULT_ENUMERATION_CAP);
    let mut failures = Vec::new();
    for (x, y) in pairs {
        let check = lazy.check_pair(x, y)?;
        if !check.is_ok() {
            failures.push((x.clone(), y.clone(), check));
        }
    }
    Ok(FnSample {
        checked: pairs.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::{build_gadget, GadgetParams};
    use crate::suite::gen::case_rng;

    #[test]
    fn system_is_valid_and_reproduces_table() {
        for (m, base) in [(1, 0), (2, 1)] {
            let g = build_gadget(GadgetParams::new(m, base)).unwrap();
            let sys = gadget_as_system(&g).unwrap();
            assert_eq!(sys.validate(DEFAULT_ENUMERATION_CAP), vec![]);
            assert!(check_system_projections(&g, &sys).unwrap().iter().all(|p| p.pass));
            let nested = check_gadget_rcnested(&g, &sys).unwrap();
            assert!(nested.iter().all(|n| n.outcome == NestedOutcome::Holds), "{nested:?}");
            let x = row_element(&g, 0, 0).unwrap();
            assert_eq!(
                sys.proj_i(&x, 1, Direction::Up, DEFAULT_ENUMERATION_CAP).unwrap(),
                Some(g.b(1, 0).unwrap().complement())
            );
        }
    }

    #[test]
    fn sampled_interpolation() {
        let g = build_gadget(GadgetParams::new(1, 0)).unwrap();
        let sys = gadget_as_system(&g).unwrap();
        let mut rng = case_rng(7, 0);
        let pairs = sample_comparable_pairs(&mut rng, &g, &sys, 200).unwrap();
        let sample = check_gadget_fn(&sys, &pairs).unwrap();
        assert_eq!(sample.failures, vec![]);
    }
}
