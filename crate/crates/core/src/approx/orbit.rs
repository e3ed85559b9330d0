use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::ApproxSystem;
use crate::ba::{Element, Subalgebra};
use crate::error::{Error, Result};
use crate::interp::Direction;
use crate::ordinals::daleth;

/// Closure of a seed under boolean operations and projections onto fixed
/// subalgebras, held as the subalgebra it generates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionOrbit {
    pub partition: Subalgebra,
    pub rounds: usize,
    pub fixpoint: bool,
}

impl ProjectionOrbit {
    pub fn contains(&self, x: &Element) -> bool {
        self.partition.contains(x)
    }
}

/// Refines `current` so that it contains the upward projection onto
/// `target` of each of its blocks. Downward projections follow by
/// complement.
fn close_once(current: &Subalgebra, target: &Subalgebra) -> Subalgebra {
    let n = current.atom_count();
    // For each target block, the set of current blocks meeting it.
    let mut meets: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); target.block_count()];
    for a in 0..n {
        meets[target.block_of(a)].insert(current.block_of(a) as u32);
    }
    let mut ids: HashMap<&BTreeSet<u32>, u32> = HashMap::new();
    let class: Vec<u32> = meets
        .iter()
        .map(|m| {
            let next = ids.len() as u32;
            *ids.entry(m).or_insert(next)
        })
        .collect();
    let labels: Vec<(u32, u32)> = (0..n)
        .map(|a| (current.block_of(a) as u32, class[target.block_of(a)]))
        .collect();
    Subalgebra::from_labels(&labels)
}

/// Closes `seed` under boolean operations and both projections onto each
/// target, for at most `max_rounds` rounds. A round applies every target
/// to the whole current subalgebra.
pub fn projection_orbit(
    atom_count: usize,
    seed: &[Element],
    targets: &[&Subalgebra],
    max_rounds: usize,
) -> Result<ProjectionOrbit> {
    for t in targets {
        if t.atom_count() != atom_count {
            return Err(Error::InvalidPartition("projection target of the wrong size".into()));
        }
    }
    if let Some(x) = seed.iter().find(|x| x.len() != atom_count) {
        return Err(Error::InvalidElement(format!("{x} has the wrong size")));
    }
    let mut current = Subalgebra::generated(atom_count, seed);
    for round in 0..max_rounds {
        let mut next = current.clone();
        for t in targets {
            next = next.generated_with(&close_once(&current, t));
        }
        if next == current {
            return Ok(ProjectionOrbit {
                partition: current,
                rounds: round,
                fixpoint: true,
            });
        }
        current = next;
    }
    let fixpoint = targets
        .iter()
        .all(|t| current.generated_with(&close_once(&current, t)) == current);
    Ok(ProjectionOrbit {
        partition: current,
        rounds: max_rounds,
        fixpoint,
    })
}

/// Closure of a seed under boolean operations and the system's own segment
/// projections, as an explicit element set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementOrbit {
    pub elements: BTreeSet<Element>,
    pub rounds: usize,
    pub fixpoint: bool,
}

pub fn expansion_orbit(sys: &ApproxSystem, seed: &[Element], max_rounds: usize, cap: u128) -> Result<ElementOrbit> {
    let n = sys.ambient().atom_count();
    let mut generators: BTreeSet<Element> = seed.iter().cloned().collect();
    for x in &generators {
        sys.ambient().check(x)?;
    }
    let mut rounds = 0;
    loop {
        let closed: BTreeSet<Element> = Subalgebra::generated(n, &generators)
            .elements(cap)?
            .into_iter()
            .collect();
        let mut grown = false;
        if rounds < max_rounds {
            for x in &closed {
                let rank = sys.rank(x)?;
                for i in 0..daleth(&sys.positions()[rank]) {
                    for dir in [Direction::Up, Direction::Down] {
                        if let Some(p) = sys.proj_i(x, i, dir, cap)? {
                            if !closed.contains(&p) {
                                grown |= generators.insert(p);
                            }
                        }
                    }
                }
            }
        }
        if !grown {
            let fixpoint = rounds < max_rounds || {
                // Out of budget: report whether the last set happens to be closed.
                closed.iter().all(|x| {
                    let rank = sys.rank(x).unwrap_or(0);
                    (0..daleth(&sys.positions()[rank])).all(|i| {
                        [Direction::Up, Direction::Down].iter().all(|&dir| {
                            match sys.proj_i(x, i, dir, cap) {
                                Ok(Some(p)) => closed.contains(&p),
                                _ => true,
                            }
                        })
                    })
                })
            };
            return Ok(ElementOrbit {
                elements: closed,
                rounds,
                fixpoint,
            });
        }
        rounds += 1;
    }
}
