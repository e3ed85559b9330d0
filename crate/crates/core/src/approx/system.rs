use std::collections::BTreeSet;

use serde::Serialize;

use crate::ba::{Element, FinAlg, SubOrder, Subalgebra};
use crate::error::{Error, Result};
use crate::interp::{proj_subalgebra, proj_suborder, Direction};
use crate::ordinals::{daleth, segment, Ordinal};

/// A finite family of subalgebras indexed by increasing ordinal positions
/// below `eta`, each with the set of earlier stages it can see.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxSystem {
    ambient: FinAlg,
    eta: Ordinal,
    positions: Vec<Ordinal>,
    stages: Vec<Subalgebra>,
    /// `visibility[b]` lists earlier stage indices visible from stage `b`.
    visibility: Vec<BTreeSet<usize>>,
    /// `included[b][c]`: stage `b` lies inside stage `c`.
    included: Vec<Vec<bool>>,
}

/// The union of a family of stages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StageUnion {
    Empty,
    /// The family has a greatest member, which is the union.
    Directed(Subalgebra),
    /// No greatest member; the union as an explicit set.
    Scattered(SubOrder),
}

impl StageUnion {
    pub fn contains(&self, x: &Element) -> bool {
        match self {
            StageUnion::Empty => false,
            StageUnion::Directed(b) => b.contains(x),
            StageUnion::Scattered(s) => s.contains(x),
        }
    }

    pub fn proj(&self, x: &Element, dir: Direction) -> Option<Element> {
        match self {
            StageUnion::Empty => None,
            StageUnion::Directed(b) => Some(proj_subalgebra(b, x, dir)),
            StageUnion::Scattered(s) => proj_suborder(s, x, dir),
        }
    }

    pub fn to_suborder(&self, atom_count: usize, cap: u128) -> Result<SubOrder> {
        match self {
            StageUnion::Empty => Ok(SubOrder::new(atom_count)),
            StageUnion::Directed(b) => SubOrder::from_subalgebra(b, cap),
            StageUnion::Scattered(s) => Ok(s.clone()),
        }
    }
}

/// One failed validity axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// `seen ∈ V_at` but `seen` does not come before `at`.
    NotEarlier { seen: usize, at: usize },
    /// `seen ∈ V_at` but stage `seen` is not inside stage `at`.
    StageNotIncluded { seen: usize, at: usize },
    /// `seen ∈ V_at` but `V_seen` has an index missing from `V_at`.
    VisibilityNotInherited { seen: usize, at: usize, missing: usize },
    /// Two stages of one segment of `alpha` with no common upper bound in it.
    NotDirected {
        alpha: Ordinal,
        segment: usize,
        left: usize,
        right: usize,
    },
    /// Segment `segment` of `alpha` holds no stage, so projections into it
    /// are undefined.
    EmptySegment { alpha: Ordinal, segment: usize },
    /// An element in no stage.
    Uncovered { element: Element },
    /// Coverage could not be decided under the enumeration cap.
    CoverageUndecided { atoms: usize },
}

impl ApproxSystem {
    pub fn new(
        ambient: FinAlg,
        eta: Ordinal,
        positions: Vec<Ordinal>,
        stages: Vec<Subalgebra>,
        visibility: Vec<BTreeSet<usize>>,
    ) -> Result<Self> {
        let n = stages.len();
        if positions.len() != n || visibility.len() != n {
            return Err(Error::Structure(format!(
                "{n} stages, {} positions, {} visibility sets",
                positions.len(),
                visibility.len()
            )));
        }
        if n == 0 {
            return Err(Error::Structure("a system needs at least one stage".into()));
        }
        for w in positions.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Structure(format!(
                    "positions {} and {} are not increasing",
                    w[0], w[1]
                )));
            }
        }
        if positions[n - 1] >= eta {
            return Err(Error::Structure(format!(
                "position {} is not below {eta}",
                positions[n - 1]
            )));
        }
        for s in &stages {
            ambient.check_subalgebra(s)?;
        }
        for (b, v) in visibility.iter().enumerate() {
            if let Some(&g) = v.iter().find(|&&g| g >= n) {
                return Err(Error::Structure(format!("stage {b} sees unknown stage {g}")));
            }
        }
        let included = stages
            .iter()
            .map(|b| stages.iter().map(|c| b.is_subalgebra_of(c)).collect())
            .collect();
        Ok(ApproxSystem {
            ambient,
            eta,
            positions,
            stages,
            visibility,
            included,
        })
    }

    /// A chain of stages at positions `0, 1, …` where each stage sees all
    /// earlier ones.
    pub fn chain(ambient: FinAlg, stages: Vec<Subalgebra>) -> Result<Self> {
        let n = stages.len();
        let positions = (0..n as u64).map(Ordinal::finite).collect();
        let visibility = (0..n).map(|b| (0..b).collect()).collect();
        ApproxSystem::new(ambient, Ordinal::finite(n as u64), positions, stages, visibility)
    }

    pub fn ambient(&self) -> &FinAlg {
        &self.ambient
    }

    pub fn eta(&self) -> &Ordinal {
        &self.eta
    }

    pub fn positions(&self) -> &[Ordinal] {
        &self.positions
    }

    pub fn stages(&self) -> &[Subalgebra] {
        &self.stages
    }

    pub fn stage(&self, b: usize) -> &Subalgebra {
        &self.stages[b]
    }

    pub fn visibility(&self) -> &[BTreeSet<usize>] {
        &self.visibility
    }

    /// Whether stage `b` lies inside stage `c`.
    pub fn stage_included(&self, b: usize, c: usize) -> bool {
        self.included[b][c]
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    fn stage_index_ok(&self, stage: usize) -> Result<()> {
        if stage >= self.len() {
            return Err(Error::Range(format!("stage {stage} of {}", self.len())));
        }
        Ok(())
    }

    /// Stage indices whose positions lie in segment `i` of `alpha`.
    pub fn segment_indices(&self, alpha: &Ordinal, i: usize) -> Result<Vec<usize>> {
        let seg = segment(alpha, i)?;
        Ok((0..self.len()).filter(|&b| seg.contains(&self.positions[b])).collect())
    }

    /// Segment indices at a stage's position that the stage can see.
    pub fn primed_segment_indices(&self, stage: usize, i: usize) -> Result<Vec<usize>> {
        self.stage_index_ok(stage)?;
        let v = &self.visibility[stage];
        Ok(self
            .segment_indices(&self.positions[stage], i)?
            .into_iter()
            .filter(|b| v.contains(b))
            .collect())
    }

    /// Everything visible from segment `i` of `alpha`, the segment included.
    pub fn j_indices(&self, alpha: &Ordinal, i: usize) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for b in self.segment_indices(alpha, i)? {
            out.insert(b);
            out.extend(self.visibility[b].iter().copied());
        }
        Ok(out)
    }

    pub fn j_primed_indices(&self, stage: usize, i: usize) -> Result<BTreeSet<usize>> {
        self.stage_index_ok(stage)?;
        let v = &self.visibility[stage];
        Ok(self
            .j_indices(&self.positions[stage], i)?
            .into_iter()
            .filter(|b| v.contains(b))
            .collect())
    }

    fn check_nonempty_subset(&self, alpha: &Ordinal, s: &[usize]) -> Result<()> {
        let d = daleth(alpha);
        if s.is_empty() || s.iter().any(|&i| i >= d) {
            return Err(Error::Range(format!(
                "segment set {s:?} must be a nonempty subset of 0..{d}"
            )));
        }
        Ok(())
    }

    pub fn k_indices(&self, alpha: &Ordinal, s: &[usize]) -> Result<BTreeSet<usize>> {
        self.check_nonempty_subset(alpha, s)?;
        let mut sets = s.iter().map(|&i| self.j_indices(alpha, i));
        let mut acc = sets.next().expect("nonempty")?;
        for next in sets {
            let next = next?;
            acc.retain(|b| next.contains(b));
        }
        Ok(acc)
    }

    pub fn k_primed_indices(&self, stage: usize, s: &[usize]) -> Result<BTreeSet<usize>> {
        self.stage_index_ok(stage)?;
        let v = &self.visibility[stage];
        Ok(self
            .k_indices(&self.positions[stage], s)?
            .into_iter()
            .filter(|b| v.contains(b))
            .collect())
    }

    /// A stage of the family containing every other, if there is one.
    pub fn greatest_of(&self, indices: &[usize]) -> Option<usize> {
        indices
            .iter()
            .copied()
            .find(|&m| indices.iter().all(|&b| self.included[b][m]))
    }

    /// The union of the given stages' element sets.
    pub fn union_of(&self, indices: &[usize], cap: u128) -> Result<StageUnion> {
        if indices.is_empty() {
            return Ok(StageUnion::Empty);
        }
        if let Some(m) = self.greatest_of(indices) {
            return Ok(StageUnion::Directed(self.stages[m].clone()));
        }
        let mut s = SubOrder::new(self.ambient.atom_count());
        for &b in indices {
            for x in self.stages[b].elements(cap)? {
                s.insert(x)?;
            }
        }
        Ok(StageUnion::Scattered(s))
    }

    /// Union of the stages in segment `i` of `alpha`.
    pub fn segment_union(&self, alpha: &Ordinal, i: usize, cap: u128) -> Result<StageUnion> {
        self.union_of(&self.segment_indices(alpha, i)?, cap)
    }

    /// Union over the visible part of segment `i` at a stage.
    pub fn primed_segment_union(&self, stage: usize, i: usize, cap: u128) -> Result<StageUnion> {
        self.union_of(&self.primed_segment_indices(stage, i)?, cap)
    }

    /// First stage containing `x`.
    pub fn rank(&self, x: &Element) -> Result<usize> {
        self.ambient.check(x)?;
        self.stages
            .iter()
            .position(|s| s.contains(x))
            .ok_or(Error::Uncovered)
    }

    /// Number of segments below the position of `x`'s rank.
    pub fn segment_count(&self, x: &Element) -> Result<usize> {
        Ok(daleth(&self.positions[self.rank(x)?]))
    }

    /// Projection of `x` into the union of segment `i` below its rank.
    pub fn proj_i(&self, x: &Element, i: usize, dir: Direction, cap: u128) -> Result<Option<Element>> {
        let r = self.rank(x)?;
        let alpha = self.positions[r];
        let d = daleth(&alpha);
        if i >= d {
            return Err(Error::Range(format!(
                "segment {i} at rank {r} (position {alpha}) which has {d}"
            )));
        }
        let members = self.segment_indices(&alpha, i)?;
        self.project_into(&members, x, dir, cap)
    }

    /// Projection of `x` into the union of the given stages.
    pub fn project_into(&self, indices: &[usize], x: &Element, dir: Direction, cap: u128) -> Result<Option<Element>> {
        if indices.is_empty() {
            return Ok(None);
        }
        if let Some(m) = self.greatest_of(indices) {
            return Ok(Some(proj_subalgebra(&self.stages[m], x, dir)));
        }
        Ok(self.union_of(indices, cap)?.proj(x, dir))
    }

    fn directedness_violations(&self, alpha: &Ordinal, out: &mut Vec<Violation>) {
        for i in 0..daleth(alpha) {
            let members = match self.segment_indices(alpha, i) {
                Ok(m) => m,
                Err(_) => continue,
            };
            if members.is_empty() {
                out.push(Violation::EmptySegment { alpha: *alpha, segment: i });
            }
            for (p, &l) in members.iter().enumerate() {
                for &r in &members[p + 1..] {
                    let bounded = members
                        .iter()
                        .any(|&u| self.included[l][u] && self.included[r][u]);
                    if !bounded {
                        out.push(Violation::NotDirected {
                            alpha: *alpha,
                            segment: i,
                            left: l,
                            right: r,
                        });
                    }
                }
            }
        }
    }

    /// Every violated axiom, each with a witness.
    ///
    /// The axioms: visibility only looks back, into included stages, and is
    /// inherited; the stages of each segment of `eta` and of every stage
    /// position form a nonempty directed family; every element lies in
    /// some stage.
    pub fn validate(&self, cap: u128) -> Vec<Violation> {
        let mut out = Vec::new();
        for (at, v) in self.visibility.iter().enumerate() {
            for &seen in v {
                if seen >= at {
                    out.push(Violation::NotEarlier { seen, at });
                }
                if !self.included[seen][at] {
                    out.push(Violation::StageNotIncluded { seen, at });
                }
                if let Some(&missing) = self.visibility[seen].iter().find(|g| !v.contains(g)) {
                    out.push(Violation::VisibilityNotInherited { seen, at, missing });
                }
            }
        }
        self.directedness_violations(&self.eta, &mut out);
        for b in 0..self.len() {
            let alpha = self.positions[b];
            self.directedness_violations(&alpha, &mut out);
        }
        if !self.stages.iter().any(|s| s.is_discrete()) {
            match self.ambient.elements(cap) {
                Ok(all) => {
                    if let Some(x) = all.into_iter().find(|x| !self.stages.iter().any(|s| s.contains(x))) {
                        out.push(Violation::Uncovered { element: x });
                    }
                }
                Err(_) => out.push(Violation::CoverageUndecided {
                    atoms: self.ambient.atom_count(),
                }),
            }
        }
        out
    }

    pub fn is_valid(&self, cap: u128) -> bool {
        self.validate(cap).is_empty()
    }

    /// Visible segments that are not swallowed by what the other segments
    /// see. Reported only; finite data need not satisfy it.
    pub fn independence_gaps(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.len() {
            let alpha = self.positions[b];
            let d = daleth(&alpha);
            for i in 0..d {
                let own = match self.primed_segment_indices(b, i) {
                    Ok(o) => o,
                    Err(_) => continue,
                };
                let mut others = BTreeSet::new();
                for j in (0..d).filter(|&j| j != i) {
                    if let Ok(js) = self.j_indices(&alpha, j) {
                        others.extend(js);
                    }
                }
                if own.iter().all(|x| others.contains(x)) {
                    out.push((b, i));
                }
            }
        }
        out
    }

    /// Pairs `(x, stage)` with `x` in the stage, its rank earlier, and that
    /// rank not visible from the stage. Reported only; `None` when the
    /// stages are too large to enumerate.
    pub fn rank_reflection_gaps(&self, cap: u128) -> Option<Vec<(Element, usize)>> {
        let mut out = Vec::new();
        for b in 0..self.len() {
            let elements = self.stages[b].elements(cap).ok()?;
            for x in elements {
                let r = self.rank(&x).ok()?;
                if r < b && !self.visibility[b].contains(&r) {
                    out.push((x, b));
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ba::DEFAULT_ENUMERATION_CAP;

    const CAP: u128 = DEFAULT_ENUMERATION_CAP;

    fn sub(n: usize, blocks: &[&[usize]]) -> Subalgebra {
        let b: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        Subalgebra::from_blocks(n, &b).unwrap()
    }

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn chain4() -> ApproxSystem {
        let a = FinAlg::new(4).unwrap();
        ApproxSystem::chain(
            a.clone(),
            vec![a.trivial(), sub(4, &[&[0, 1], &[2, 3]]), a.discrete()],
        )
        .unwrap()
    }

    #[test]
    fn single_stage_and_chain_are_valid() {
        let a = FinAlg::new(3).unwrap();
        let single = ApproxSystem::chain(a.clone(), vec![a.discrete()]).unwrap();
        assert!(single.is_valid(CAP));
        assert!(chain4().is_valid(CAP));
    }

    #[test]
    fn retrospective_violation_has_witness() {
        let a = FinAlg::new(4).unwrap();
        let sys = ApproxSystem::new(
            a.clone(),
            o("3"),
            vec![o("0"), o("1"), o("2")],
            vec![sub(4, &[&[0, 1], &[2, 3]]), sub(4, &[&[0, 2], &[1, 3]]), a.discrete()],
            vec![BTreeSet::new(), [0].into_iter().collect(), [0, 1].into_iter().collect()],
        )
        .unwrap();
        let v = sys.validate(CAP);
        assert!(v.contains(&Violation::StageNotIncluded { seen: 0, at: 1 }));
        assert!(v.contains(&Violation::NotDirected {
            alpha: o("2"),
            segment: 0,
            left: 0,
            right: 1
        }));
    }

    #[test]
    fn coverage_violation() {
        let a = FinAlg::new(3).unwrap();
        let sys = ApproxSystem::chain(a.clone(), vec![a.trivial(), sub(3, &[&[0], &[1, 2]])]).unwrap();
        assert!(matches!(
            sys.validate(CAP).as_slice(),
            [Violation::Uncovered { .. }]
        ));
    }

    #[test]
    fn stage_without_earlier_segment_is_flagged() {
        let a = FinAlg::new(2).unwrap();
        let sys = ApproxSystem::new(a.clone(), o("w1+1"), vec![o("w1")], vec![a.discrete()], vec![BTreeSet::new()])
            .unwrap();
        assert!(sys
            .validate(CAP)
            .contains(&Violation::EmptySegment { alpha: o("w1"), segment: 0 }));
        let x = a.element([0]).unwrap();
        assert_eq!(sys.proj_i(&x, 0, Direction::Up, CAP).unwrap(), None);
    }

    #[test]
    fn ranks() {
        let sys = chain4();
        assert_eq!(sys.rank(&sys.ambient.one()).unwrap(), 0);
        assert_eq!(sys.rank(&sys.ambient.element([0, 1]).unwrap()).unwrap(), 1);
        assert_eq!(sys.rank(&sys.ambient.element([0]).unwrap()).unwrap(), 2);
        let a = FinAlg::new(3).unwrap();
        let partial = ApproxSystem::chain(a.clone(), vec![a.trivial()]).unwrap();
        assert_eq!(partial.rank(&a.element([0]).unwrap()), Err(Error::Uncovered));
    }

    #[test]
    fn chain_projection_goes_to_previous_stage() {
        let sys = chain4();
        let x = sys.ambient.element([0]).unwrap();
        assert_eq!(
            sys.proj_i(&x, 0, Direction::Up, CAP).unwrap(),
            Some(sys.ambient.element([0, 1]).unwrap())
        );
        assert_eq!(
            sys.proj_i(&x, 0, Direction::Down, CAP).unwrap(),
            Some(sys.ambient.zero())
        );
        assert!(sys.proj_i(&x, 1, Direction::Up, CAP).is_err());
    }

    #[test]
    fn two_segment_index_sets() {
        let a = FinAlg::new(4).unwrap();
        let h = sub(4, &[&[0, 1], &[2, 3]]);
        let sys = ApproxSystem::new(
            a.clone(),
            o("w1+2"),
            vec![o("0"), o("1"), o("w1"), o("w1+1")],
            vec![a.trivial(), h.clone(), h, a.discrete()],
            vec![
                BTreeSet::new(),
                [0].into_iter().collect(),
                [0].into_iter().collect(),
                [0, 1, 2].into_iter().collect(),
            ],
        )
        .unwrap();
        assert!(sys.is_valid(CAP));
        let top = *sys.eta();
        assert_eq!(sys.segment_indices(&top, 0).unwrap(), vec![0, 1]);
        assert_eq!(sys.segment_indices(&top, 1).unwrap(), vec![2, 3]);
        let j0 = sys.j_indices(&top, 0).unwrap();
        let j1 = sys.j_indices(&top, 1).unwrap();
        let k = sys.k_indices(&top, &[0, 1]).unwrap();
        assert!(k.is_subset(&j0) && k.is_subset(&j1));
        assert_eq!(k, [0, 1].into_iter().collect());
        assert_eq!(sys.primed_segment_indices(3, 0).unwrap(), vec![0, 1]);
        assert_eq!(sys.primed_segment_indices(3, 1).unwrap(), vec![2]);
        // Stage 3 sits at w1+1, where the second segment holds only stage 2.
        assert_eq!(sys.k_primed_indices(3, &[0, 1]).unwrap(), [0].into_iter().collect());
        assert!(sys.k_indices(&top, &[]).is_err());
        assert!(sys.segment_indices(&top, 2).is_err());
    }
}
