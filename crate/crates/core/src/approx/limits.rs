use serde::Serialize;

use super::{sigma_tree, ApproxSystem};
use crate::ba::Element;
use crate::error::Result;
use crate::interp::lemmas::Conditional;
use crate::interp::{proj_subalgebra, Direction};
use crate::ordinals::daleth;

/// An element whose projection into a stage union differs from the limit
/// of its projection tree inside that union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitWitness {
    pub element: Element,
    pub direction: Direction,
    pub projected: Element,
    pub limit: Element,
}

/// Checks the hypotheses on a stage union `B`: it has a greatest stage, and
/// every `y ∈ B` has its rank's stage and all its segment projections in
/// `B`. Returns the greatest stage or the reason the hypotheses fail.
///
/// An initial run of stages always qualifies: ranks of members are inside
/// the run and projections only reach earlier stages. Other index sets are
/// checked by enumerating `B`.
pub fn union_hypotheses(sys: &ApproxSystem, indices: &[usize], cap: u128) -> Result<Result<usize, String>> {
    if indices.is_empty() {
        return Ok(Err("empty index set".into()));
    }
    let Some(top) = sys.greatest_of(indices) else {
        return Ok(Err("the union has no greatest stage".into()));
    };
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.iter().enumerate().all(|(k, &b)| k == b) {
        return Ok(Ok(top));
    }
    let union = sys.stage(top);
    let Ok(members) = union.elements(cap) else {
        return Ok(Err("the union is too large to check closure".into()));
    };
    for y in members {
        let r = sys.rank(&y)?;
        if !sys.stage_included(r, top) {
            return Ok(Err(format!("the rank stage {r} of {y} is not inside the union")));
        }
        for i in 0..daleth(&sys.positions()[r]) {
            for dir in [Direction::Up, Direction::Down] {
                match sys.proj_i(&y, i, dir, cap)? {
                    Some(p) if union.contains(&p) => {}
                    _ => return Ok(Err(format!("the union is not closed under projections at {y}"))),
                }
            }
        }
    }
    Ok(Ok(top))
}

/// Limit of the projection tree of `x` inside the stage `within`: the meet
/// of its members there for `Up`, the join for `Down`.
fn tree_limit(
    sys: &ApproxSystem,
    within: usize,
    x: &Element,
    dir: Direction,
    cap: u128,
) -> Result<Option<Element>> {
    let tree = sigma_tree(sys, x, dir, cap)?;
    if !tree.missing.is_empty() {
        return Ok(None);
    }
    let union = sys.stage(within);
    let n = sys.ambient().atom_count();
    let mut acc = match dir {
        Direction::Up => Element::full(n),
        Direction::Down => Element::empty(n),
    };
    for node in tree.nodes.iter().filter(|node| union.contains(&node.value)) {
        match dir {
            Direction::Up => acc.meet_assign(&node.value),
            Direction::Down => acc.join_assign(&node.value),
        }
    }
    Ok(Some(acc))
}

/// Projection into a stage union equals the limit of the projection tree
/// inside it, in both directions, for every element.
pub fn check_rclimit(sys: &ApproxSystem, indices: &[usize], cap: u128) -> Result<Conditional<LimitWitness>> {
    let top = match union_hypotheses(sys, indices, cap)? {
        Ok(t) => t,
        Err(why) => return Ok(Conditional::Inapplicable(why)),
    };
    for x in sys.ambient().elements(cap)? {
        for dir in [Direction::Up, Direction::Down] {
            let Some(limit) = tree_limit(sys, top, &x, dir, cap)? else {
                return Ok(Conditional::Inapplicable(format!("a projection of {x} is missing")));
            };
            let projected = proj_subalgebra(sys.stage(top), &x, dir);
            if projected != limit {
                return Ok(Conditional::Fails(LimitWitness {
                    element: x,
                    direction: dir,
                    projected,
                    limit,
                }));
            }
        }
    }
    Ok(Conditional::Holds)
}

/// Outcome of comparing a projection with its nested form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NestedOutcome {
    Holds,
    Fails {
        direction: Direction,
        projected: Element,
        nested: Element,
    },
    /// Hypotheses failed or a needed projection is missing.
    Inconclusive(String),
}

/// For `x` outside the stage union `P`, projecting `x` into `P` equals
/// combining the projections into `P` of each segment projection of `x`:
/// meet for `Up`, join for `Down`.
pub fn check_rcnested(sys: &ApproxSystem, indices: &[usize], x: &Element, cap: u128) -> Result<NestedOutcome> {
    let top = match union_hypotheses(sys, indices, cap)? {
        Ok(t) => t,
        Err(why) => return Ok(NestedOutcome::Inconclusive(why)),
    };
    let union = sys.stage(top);
    if union.contains(x) {
        return Ok(NestedOutcome::Inconclusive(format!("{x} lies in the union")));
    }
    let rank = sys.rank(x)?;
    let n = sys.ambient().atom_count();
    for dir in [Direction::Up, Direction::Down] {
        let mut nested = match dir {
            Direction::Up => Element::full(n),
            Direction::Down => Element::empty(n),
        };
        for i in 0..daleth(&sys.positions()[rank]) {
            let Some(step) = sys.proj_i(x, i, dir, cap)? else {
                return Ok(NestedOutcome::Inconclusive(format!("segment {i} projection is missing")));
            };
            let inner = proj_subalgebra(union, &step, dir);
            match dir {
                Direction::Up => nested.meet_assign(&inner),
                Direction::Down => nested.join_assign(&inner),
            }
        }
        let projected = proj_subalgebra(union, x, dir);
        if projected != nested {
            return Ok(NestedOutcome::Fails {
                direction: dir,
                projected,
                nested,
            });
        }
    }
    Ok(NestedOutcome::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ba::{FinAlg, Subalgebra, DEFAULT_ENUMERATION_CAP};

    const CAP: u128 = DEFAULT_ENUMERATION_CAP;

    fn chain() -> ApproxSystem {
        let a = FinAlg::new(4).unwrap();
        let halves = Subalgebra::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        ApproxSystem::chain(a.clone(), vec![a.trivial(), halves, a.discrete()]).unwrap()
    }

    #[test]
    fn chain_limits() {
        let sys = chain();
        for indices in [vec![0], vec![0, 1], vec![0, 1, 2]] {
            assert_eq!(check_rclimit(&sys, &indices, CAP).unwrap(), Conditional::Holds);
        }
        assert!(!check_rclimit(&sys, &[], CAP).unwrap().is_applicable());
    }

    #[test]
    fn chain_nested() {
        let sys = chain();
        let x = sys.ambient().element([0]).unwrap();
        assert_eq!(check_rcnested(&sys, &[0, 1], &x, CAP).unwrap(), NestedOutcome::Holds);
        assert!(matches!(
            check_rcnested(&sys, &[0, 1], &sys.ambient().one(), CAP).unwrap(),
            NestedOutcome::Inconclusive(_)
        ));
    }
}
