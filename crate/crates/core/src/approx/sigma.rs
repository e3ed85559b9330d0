use std::collections::BTreeSet;

use serde::Serialize;

use super::ApproxSystem;
use crate::ba::Element;
use crate::error::{Error, Result};
use crate::interp::Direction;
use crate::ordinals::daleth;

/// One node of the tree of iterated segment projections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaNode {
    /// Segment indices chosen on the way down from the root.
    pub path: Vec<usize>,
    pub value: Element,
    pub rank: usize,
}

/// All iterated projections of an element in one direction. Nodes are in
/// depth-first order with the root first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaTree {
    pub direction: Direction,
    pub nodes: Vec<SigmaNode>,
    /// Paths where the projection does not exist.
    pub missing: Vec<Vec<usize>>,
}

impl SigmaTree {
    pub fn values(&self) -> BTreeSet<Element> {
        self.nodes.iter().map(|n| n.value.clone()).collect()
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.path.len()).max().unwrap_or(0)
    }
}

pub fn sigma_tree(sys: &ApproxSystem, x: &Element, dir: Direction, cap: u128) -> Result<SigmaTree> {
    let mut tree = SigmaTree {
        direction: dir,
        nodes: Vec::new(),
        missing: Vec::new(),
    };
    let mut stack = vec![(Vec::new(), x.clone(), sys.rank(x)?)];
    while let Some((path, value, rank)) = stack.pop() {
        let d = daleth(&sys.positions()[rank]);
        // Pushed in reverse so children come out in segment order.
        for i in (0..d).rev() {
            let mut child_path = path.clone();
            child_path.push(i);
            match sys.proj_i(&value, i, dir, cap)? {
                Some(v) => {
                    let r = sys.rank(&v)?;
                    if r >= rank {
                        return Err(Error::Structure(format!(
                            "projection along {child_path:?} did not lower the rank"
                        )));
                    }
                    stack.push((child_path, v, r));
                }
                None => tree.missing.push(child_path),
            }
        }
        tree.nodes.push(SigmaNode { path, value, rank });
    }
    tree.missing.sort();
    Ok(tree)
}

/// The set of values of the projection tree.
pub fn varsigma(sys: &ApproxSystem, x: &Element, dir: Direction, cap: u128) -> Result<BTreeSet<Element>> {
    Ok(sigma_tree(sys, x, dir, cap)?.values())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ba::{FinAlg, Subalgebra, DEFAULT_ENUMERATION_CAP};

    #[test]
    fn chain_tree_is_a_path() {
        let a = FinAlg::new(4).unwrap();
        let halves = Subalgebra::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let sys = ApproxSystem::chain(a.clone(), vec![a.trivial(), halves, a.discrete()]).unwrap();
        let x = a.element([0]).unwrap();
        let up = sigma_tree(&sys, &x, Direction::Up, DEFAULT_ENUMERATION_CAP).unwrap();
        let paths: Vec<Vec<usize>> = up.nodes.iter().map(|n| n.path.clone()).collect();
        assert_eq!(paths, vec![vec![], vec![0], vec![0, 0]]);
        assert_eq!(
            up.values(),
            [x.clone(), a.element([0, 1]).unwrap(), a.one()].into_iter().collect()
        );
        let down = varsigma(&sys, &x, Direction::Down, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(down, [x, a.zero()].into_iter().collect());
    }
}
