use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::build::{b_name, build_gadget_capped, GadgetAlgebra, GadgetParams};
use crate::approx::projection_orbit;
use crate::ba::{Element, FinAlg, Subalgebra};
use crate::construct::{free_extension_within, is_independent};
use crate::error::{Error, Result};
use crate::interp::subalgebras_commute;

/// One cell of the projection table: the upward projection of `row` onto
/// side `target` compared with the expected named element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssprojCell {
    pub n: usize,
    /// `0` for `b0ⁿ∧h0`, `1` for `b1ⁿ∧h1`.
    pub row: usize,
    /// `0` for A0, `1` for A1.
    pub target: usize,
    pub expected_name: String,
    pub pass: bool,
    pub computed: Element,
    pub expected: Element,
}

impl EssprojCell {
    pub fn row_label(&self) -> String {
        format!("b{}[{}]∧h{}", self.row, self.n, self.row)
    }

    pub fn target_label(&self) -> &'static str {
        if self.target == 0 {
            "A0"
        } else {
            "A1"
        }
    }
}

/// `b_row^n ∧ h_row` in the quotient.
pub fn row_element(g: &GadgetAlgebra, row: usize, n: usize) -> Result<Element> {
    Ok(g.b(row, n)?.meet(g.h(row)?))
}

/// The four projections per `n < m`:
/// `b0ⁿ∧h0 ↦ b0ⁿ` on A0 and `−b1ⁿ` on A1;
/// `b1ⁿ∧h1 ↦ −b0ⁿ⁺¹` on A0 and `b1ⁿ` on A1.
pub fn check_essproj(g: &GadgetAlgebra) -> Result<Vec<EssprojCell>> {
    let mut cells = Vec::with_capacity(4 * g.params.m);
    for n in 0..g.params.m {
        let expectations = [
            (0, 0, b_name(0, n), g.b(0, n)?.clone()),
            (0, 1, format!("-{}", b_name(1, n)), g.b(1, n)?.complement()),
            (1, 0, format!("-{}", b_name(0, n + 1)), g.b(0, n + 1)?.complement()),
            (1, 1, b_name(1, n), g.b(1, n)?.clone()),
        ];
        for (row, target, expected_name, expected) in expectations {
            let computed = g.side(target).proj_up(&row_element(g, row, n)?);
            cells.push(EssprojCell {
                n,
                row,
                target,
                expected_name,
                pass: computed == expected,
                computed,
                expected,
            });
        }
    }
    Ok(cells)
}

/// Sign pattern of the two `h` generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HPattern {
    /// `−h0 ∧ −h1`
    Neither,
    /// `h0 ∧ −h1`
    First,
    /// `−h0 ∧ h1`
    Second,
    /// `h0 ∧ h1`
    Both,
}

impl HPattern {
    pub const ALL: [HPattern; 4] = [HPattern::Neither, HPattern::First, HPattern::Second, HPattern::Both];

    pub fn signs(self) -> (bool, bool) {
        match self {
            HPattern::Neither => (false, false),
            HPattern::First => (true, false),
            HPattern::Second => (false, true),
            HPattern::Both => (true, true),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            HPattern::Neither => "-h0∧-h1",
            HPattern::First => "h0∧-h1",
            HPattern::Second => "-h0∧h1",
            HPattern::Both => "h0∧h1",
        }
    }
}

/// Input to the target-set check. Only the sets of the side opposite to
/// `side` enter the element; the others are carried for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetCase {
    pub side: usize,
    pub p0: BTreeSet<usize>,
    pub q0: BTreeSet<usize>,
    pub p1: BTreeSet<usize>,
    pub q1: BTreeSet<usize>,
    pub pattern: HPattern,
}

impl TargetCase {
    fn opposite(&self) -> (&BTreeSet<usize>, &BTreeSet<usize>) {
        if self.side == 0 {
            (&self.p1, &self.q1)
        } else {
            (&self.p0, &self.q0)
        }
    }
}

fn shift_right(s: &BTreeSet<usize>) -> BTreeSet<usize> {
    s.iter().map(|n| n + 1).collect()
}

fn shift_left(s: &BTreeSet<usize>) -> BTreeSet<usize> {
    s.iter().filter(|&&n| n > 0).map(|n| n - 1).collect()
}

/// Number of `b` generators on a side.
fn side_len(p: GadgetParams, side: usize) -> usize {
    if side == 0 {
        p.m + 1
    } else {
        p.m
    }
}

/// Indices `T` with `τ(x) = ⋀_{n∈T} −b_side^n`. Side 0 shifts the `b1` set
/// up, side 1 shifts the `b0` set down.
pub fn target_indices(p: GadgetParams, case: &TargetCase) -> Result<BTreeSet<usize>> {
    if case.side > 1 {
        return Err(Error::Range(format!("side {} is not 0 or 1", case.side)));
    }
    for (side, sets) in [(0, [&case.p0, &case.q0]), (1, [&case.p1, &case.q1])] {
        let len = side_len(p, side);
        if let Some(n) = sets.iter().flat_map(|s| s.iter()).find(|&&n| n >= len) {
            return Err(Error::Range(format!("index {n} of b{side} is beyond {}", len - 1)));
        }
    }
    let (pos, _) = case.opposite();
    let shifted = if case.side == 0 { shift_right(pos) } else { shift_left(pos) };
    let targets: BTreeSet<usize> = match case.pattern {
        HPattern::Neither => BTreeSet::new(),
        HPattern::First => pos.clone(),
        HPattern::Second => shifted,
        HPattern::Both => pos.union(&shifted).copied().collect(),
    };
    let len = side_len(p, case.side);
    if let Some(&n) = targets.iter().find(|&&n| n >= len) {
        return Err(Error::Range(format!(
            "target index {n} needs b{}[{n}], which the truncation lacks",
            case.side
        )));
    }
    Ok(targets)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetOutcome {
    pub targets: BTreeSet<usize>,
    pub element: Element,
    pub computed: Element,
    pub expected: Element,
    pub pass: bool,
}

/// Builds `x = ⋀_P b ∧ ⋀_Q −b ∧ (±h0 ∧ ±h1)` over the opposite side in the
/// free algebra, passes to the quotient, projects onto the chosen side and
/// compares with `τ`.
pub fn check_targets(g: &GadgetAlgebra, case: &TargetCase) -> Result<TargetOutcome> {
    let targets = target_indices(g.params, case)?;
    let other = 1 - case.side;
    let (pos, neg) = case.opposite();
    let mut x = g.pre.one();
    for &n in pos {
        x.meet_assign(g.pre.named(&b_name(other, n))?);
    }
    for &n in neg {
        x.meet_assign(&g.pre.named(&b_name(other, n))?.complement());
    }
    let (s0, s1) = case.pattern.signs();
    for (side, sign) in [(0, s0), (1, s1)] {
        let h = g.pre.named(&super::build::h_name(side))?;
        x.meet_assign(&if sign { h.clone() } else { h.complement() });
    }
    let element = g.quotient.apply(&x);
    let computed = g.side(case.side).proj_up(&element);
    let mut expected = g.algebra.one();
    for &n in &targets {
        expected.meet_assign(&g.b(case.side, n)?.complement());
    }
    Ok(TargetOutcome {
        pass: computed == expected,
        targets,
        element,
        computed,
        expected,
    })
}

/// Blocks of a free-algebra subalgebra that the quotient would kill.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealTriviality {
    pub bpush_blocks: usize,
    pub h_blocks: usize,
    pub killed: Vec<Element>,
}

impl IdealTriviality {
    pub fn holds(&self) -> bool {
        self.killed.is_empty()
    }
}

/// Scans the atoms of Bpush and of H, taken in the free algebra, for any
/// lying below the ideal's top.
pub fn check_ideal_triviality(g: &GadgetAlgebra) -> Result<IdealTriviality> {
    let mut bnames = g.base_names();
    bnames.extend(g.b_names(0));
    bnames.extend(g.b_names(1));
    let bpush = GadgetAlgebra::generated_by(&g.pre, &bnames)?;
    let h = GadgetAlgebra::generated_by(&g.pre, &[super::build::h_name(0), super::build::h_name(1)])?;
    let top = g.ideal_top();
    let killed = bpush
        .block_elements()
        .into_iter()
        .chain(h.block_elements())
        .filter(|b| b.is_below(&top))
        .collect();
    Ok(IdealTriviality {
        bpush_blocks: bpush.block_count(),
        h_blocks: h.block_count(),
        killed,
    })
}

/// `(A2, ⟨b0⟩, ⟨b1⟩)` independent in the quotient.
pub fn check_independence(g: &GadgetAlgebra) -> Result<bool> {
    let b0 = g.b_subalgebra(&g.algebra, 0)?;
    let b1 = g.b_subalgebra(&g.algebra, 1)?;
    Ok(is_independent(&[&g.a2, &b0, &b1]))
}

/// `(A2, ⟨b0⟩, ⟨b1⟩, H)` independent in the free algebra.
pub fn check_pre_independence(g: &GadgetAlgebra) -> Result<bool> {
    let a2 = GadgetAlgebra::generated_by(&g.pre, &g.base_names())?;
    let b0 = g.b_subalgebra(&g.pre, 0)?;
    let b1 = g.b_subalgebra(&g.pre, 1)?;
    let h = GadgetAlgebra::generated_by(&g.pre, &[super::build::h_name(0), super::build::h_name(1)])?;
    Ok(is_independent(&[&a2, &b0, &b1, &h]))
}

/// The three conditions making `push` the pushout of `left` and `right`
/// over `base` inside one algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PushoutCharacterization {
    pub commute: bool,
    pub meet_is_base: bool,
    pub generate: bool,
}

impl PushoutCharacterization {
    pub fn holds(&self) -> bool {
        self.commute && self.meet_is_base && self.generate
    }
}

pub fn pushout_characterization(
    left: &Subalgebra,
    right: &Subalgebra,
    base: &Subalgebra,
    push: &Subalgebra,
) -> PushoutCharacterization {
    PushoutCharacterization {
        commute: subalgebras_commute(left, right),
        meet_is_base: left.intersection(right) == *base,
        generate: left.generated_with(right) == *push,
    }
}

/// In the quotient: A0 and A1 commute, meet in A2 and generate Bpush.
pub fn check_pushout_characterization(g: &GadgetAlgebra) -> PushoutCharacterization {
    pushout_characterization(&g.a0, &g.a1, &g.a2, &g.bpush)
}

/// The same conditions in the free algebra, before the quotient.
pub fn check_pre_pushout_characterization(g: &GadgetAlgebra) -> Result<PushoutCharacterization> {
    let base = g.base_names();
    let mut left = base.clone();
    left.extend(g.b_names(0));
    let mut right = base.clone();
    right.extend(g.b_names(1));
    let mut both = left.clone();
    both.extend(g.b_names(1));
    let sub = |names: &[String]| GadgetAlgebra::generated_by(&g.pre, names);
    Ok(pushout_characterization(&sub(&left)?, &sub(&right)?, &sub(&base)?, &sub(&both)?))
}

/// Free-extension ranks of A0 and A1 over A2.
pub fn free_extension_ranks(g: &GadgetAlgebra) -> Result<(Option<u32>, Option<u32>)> {
    let r0 = free_extension_within(&g.a2, &g.a0)?.map(|w| w.rank);
    let r1 = free_extension_within(&g.a2, &g.a1)?.map(|w| w.rank);
    Ok((r0, r1))
}

/// Re-expresses an element of Bpush in one gadget as the element of
/// another gadget with the same truth table over the first gadget's Bpush
/// generators.
pub fn transfer_bpush(from: &GadgetAlgebra, x: &Element, to: &GadgetAlgebra) -> Result<Element> {
    if !from.bpush.contains(x) {
        return Err(Error::Structure("only elements of Bpush transfer between gadgets".into()));
    }
    let mut names = from.base_names();
    names.extend(from.b_names(0));
    names.extend(from.b_names(1));
    if names.len() > 64 {
        return Err(Error::CapExceeded {
            what: "Bpush generators",
            needed: names.len() as u128,
            cap: 64,
        });
    }
    let signature = |alg: &FinAlg, atom: usize| -> Result<u64> {
        let mut sig = 0u64;
        for (k, name) in names.iter().enumerate() {
            if alg.named(name)?.contains(atom) {
                sig |= 1 << k;
            }
        }
        Ok(sig)
    };
    let mut wanted = HashSet::new();
    for a in x.atoms() {
        wanted.insert(signature(&from.algebra, a)?);
    }
    let mut out = to.algebra.zero();
    for a in 0..to.algebra.atom_count() {
        if wanted.contains(&signature(&to.algebra, a)?) {
            out.insert(a);
        }
    }
    Ok(out)
}

/// `proj_up(Bpush, h0)` at one truncation depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub m: usize,
    pub value: Element,
    /// Whether the value equals `⋀_{n<m} −(b0ⁿ ∧ b1ⁿ)`.
    pub equals_explicit_meet: bool,
    /// Whether the value is at most that meet.
    pub below_explicit_meet: bool,
    /// For all but the first link: whether the previous value, transferred
    /// here, lies strictly above this one.
    pub strictly_below_previous: Option<bool>,
}

pub fn proj_b_h0_value(g: &GadgetAlgebra) -> Result<Element> {
    Ok(g.bpush.proj_up(g.h(0)?))
}

/// The chain for `m = 1..=max_m`.
pub fn proj_b_h0_chain(max_m: usize, base: usize, atom_cap: usize) -> Result<Vec<ChainLink>> {
    let mut out: Vec<ChainLink> = Vec::new();
    let mut previous: Option<(GadgetAlgebra, Element)> = None;
    for m in 1..=max_m {
        let g = build_gadget_capped(GadgetParams::new(m, base), atom_cap)?;
        let value = proj_b_h0_value(&g)?;
        let mut meet = g.algebra.one();
        for n in 0..m {
            meet.meet_assign(&g.b(0, n)?.meet(g.b(1, n)?).complement());
        }
        let strictly_below_previous = match &previous {
            Some((pg, pv)) => Some(value.is_strictly_below(&transfer_bpush(pg, pv, &g)?)),
            None => None,
        };
        out.push(ChainLink {
            m,
            equals_explicit_meet: value == meet,
            below_explicit_meet: value.is_below(&meet),
            strictly_below_previous,
            value: value.clone(),
        });
        previous = Some((g, value));
    }
    Ok(out)
}

/// The orbit of `{h0, h1, b0⁰}` under boolean operations and both
/// projections onto A0 and A1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitGrowth {
    /// Atoms of the subalgebra the orbit forms; its size is `2^atoms`.
    pub atoms: usize,
    /// `b` generators in the orbit.
    pub generators_reached: Vec<String>,
    pub rounds: usize,
    pub fixpoint: bool,
}

/// Round budget: two per step of the chain `b0⁰ → b1⁰ → b0¹ → …`.
pub fn orbit_budget(p: GadgetParams) -> usize {
    2 * (2 * p.m + 1)
}

pub fn orbit_growth(g: &GadgetAlgebra) -> Result<OrbitGrowth> {
    let seed = [g.h(0)?.clone(), g.h(1)?.clone(), g.b(0, 0)?.clone()];
    let orbit = projection_orbit(
        g.algebra.atom_count(),
        &seed,
        &[&g.a0, &g.a1],
        orbit_budget(g.params),
    )?;
    let mut generators_reached = Vec::new();
    for side in 0..2 {
        for name in g.b_names(side) {
            if orbit.contains(g.named(&name)?) {
                generators_reached.push(name);
            }
        }
    }
    Ok(OrbitGrowth {
        atoms: orbit.partition.block_count(),
        generators_reached,
        rounds: orbit.rounds,
        fixpoint: orbit.fixpoint,
    })
}
