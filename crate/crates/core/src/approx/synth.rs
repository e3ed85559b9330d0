use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::ApproxSystem;
use crate::ba::Element;
use crate::error::{Error, Result};
use crate::interp::{Direction, FnMap};
use crate::ordinals::{daleth, segment_of};

const BOTH: [Direction; 2] = [Direction::Up, Direction::Down];

/// Elements in the order used by the synthesis: by rank, then numerically.
fn ranked_elements(sys: &ApproxSystem, cap: u128) -> Result<Vec<(usize, Element)>> {
    let mut out = Vec::new();
    for x in sys.ambient().elements(cap)? {
        out.push((sys.rank(&x)?, x));
    }
    out.sort();
    Ok(out)
}

fn projections(sys: &ApproxSystem, x: &Element, rank: usize, cap: u128) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for i in 0..daleth(&sys.positions()[rank]) {
        for dir in BOTH {
            match sys.proj_i(x, i, dir, cap)? {
                Some(p) => out.push(p),
                None => {
                    return Err(Error::Synthesis(format!(
                        "segment {i} projection {} of {x} does not exist",
                        dir.symbol()
                    )))
                }
            }
        }
    }
    Ok(out)
}

/// Interpolating map built from the system: `f(x)` holds every element of
/// the same rank that comes no later than `x`, together with `f` of each
/// segment projection of `x`.
pub fn synth_fn_map(sys: &ApproxSystem, cap: u128) -> Result<FnMap> {
    synthesize(sys, cap, false)
}

/// Variant closed under its own values: `f(x)` holds `x`, `f` of every
/// earlier element of the same rank, and `f` of each projection.
pub fn synth_transitive_fn_map(sys: &ApproxSystem, cap: u128) -> Result<FnMap> {
    synthesize(sys, cap, true)
}

fn synthesize(sys: &ApproxSystem, cap: u128, transitive: bool) -> Result<FnMap> {
    let ranked = ranked_elements(sys, cap)?;
    let mut images: BTreeMap<Element, BTreeSet<Element>> = BTreeMap::new();
    let mut class: BTreeSet<Element> = BTreeSet::new();
    let mut previous: Option<(usize, Element)> = None;
    for (rank, x) in &ranked {
        if previous.as_ref().map(|p| p.0) != Some(*rank) {
            class.clear();
            previous = None;
        }
        class.insert(x.clone());
        let mut image = if transitive {
            let mut own = BTreeSet::from([x.clone()]);
            if let Some((_, p)) = &previous {
                own.extend(images[p].iter().cloned());
            }
            own
        } else {
            class.clone()
        };
        for p in projections(sys, x, *rank, cap)? {
            let sub = images
                .get(&p)
                .ok_or_else(|| Error::Synthesis(format!("projection {p} was not reached first")))?;
            image.extend(sub.iter().cloned());
        }
        images.insert(x.clone(), image);
        previous = Some((*rank, x.clone()));
    }
    let mut f = FnMap::new();
    for (x, image) in images {
        f.insert(x, image);
    }
    Ok(f)
}

/// The non-transitive synthesized map, evaluated on demand. Usable on
/// algebras far too large to tabulate.
pub struct LazyFn<'a> {
    sys: &'a ApproxSystem,
    cap: u128,
}

/// Result of checking one comparable pair with [`LazyFn`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PairCheck {
    /// The interpolant found, confirmed to lie in both images.
    Interpolated(Element),
    /// The candidate interpolant failed the independent membership test.
    Rejected { candidate: Element },
}

impl PairCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, PairCheck::Interpolated(_))
    }
}

impl<'a> LazyFn<'a> {
    pub fn new(sys: &'a ApproxSystem, cap: u128) -> Self {
        LazyFn { sys, cap }
    }

    /// Whether `z ∈ f(x)`.
    pub fn contains(&self, x: &Element, z: &Element) -> Result<bool> {
        let rz = self.sys.rank(z)?;
        let mut stack = vec![x.clone()];
        let mut seen = BTreeSet::new();
        while let Some(y) = stack.pop() {
            if !seen.insert(y.clone()) {
                continue;
            }
            let ry = self.sys.rank(&y)?;
            if ry == rz && z <= &y {
                return Ok(true);
            }
            if ry < rz {
                continue;
            }
            stack.extend(projections(self.sys, &y, ry, self.cap)?);
        }
        Ok(false)
    }

    /// An element between `x ≤ y` expected in both images, found by walking
    /// projections toward the lower rank.
    pub fn candidate(&self, x: &Element, y: &Element) -> Result<Element> {
        if !x.is_below(y) {
            return Err(Error::Structure(format!("{x} is not below {y}")));
        }
        let (mut lo, mut hi) = (x.clone(), y.clone());
        loop {
            let (rl, rh) = (self.sys.rank(&lo)?, self.sys.rank(&hi)?);
            if rl == rh {
                return Ok(lo.min(hi));
            }
            let (from, to_rank, dir) = if rl < rh {
                (&hi, rl, Direction::Down)
            } else {
                (&lo, rh, Direction::Up)
            };
            let from_rank = rl.max(rh);
            let alpha = self.sys.positions()[from_rank];
            let i = segment_of(&alpha, &self.sys.positions()[to_rank]).ok_or_else(|| {
                Error::Structure(format!("rank {to_rank} is in no segment of rank {from_rank}"))
            })?;
            let step = self
                .sys
                .proj_i(from, i, dir, self.cap)?
                .ok_or_else(|| Error::Synthesis(format!("segment {i} projection of {from} missing")))?;
            match dir {
                Direction::Down => hi = step,
                Direction::Up => lo = step,
            }
        }
    }

    /// Finds an interpolant for `x ≤ y` and confirms membership in both
    /// images with [`LazyFn::contains`].
    pub fn check_pair(&self, x: &Element, y: &Element) -> Result<PairCheck> {
        let z = self.candidate(x, y)?;
        let between = x.is_below(&z) && z.is_below(y);
        if between && self.contains(x, &z)? && self.contains(y, &z)? {
            Ok(PairCheck::Interpolated(z))
        } else {
            Ok(PairCheck::Rejected { candidate: z })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ba::{FinAlg, Subalgebra, DEFAULT_ENUMERATION_CAP};
    use crate::interp::{transitivity_violation, verify_fn_map};

    const CAP: u128 = DEFAULT_ENUMERATION_CAP;

    fn chain() -> ApproxSystem {
        let a = FinAlg::new(4).unwrap();
        let halves = Subalgebra::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        ApproxSystem::chain(a.clone(), vec![a.trivial(), halves, a.discrete()]).unwrap()
    }

    #[test]
    fn chain_maps_interpolate() {
        let sys = chain();
        let f = synth_fn_map(&sys, CAP).unwrap();
        assert_eq!(verify_fn_map(sys.ambient(), &f, CAP).unwrap(), None);
        let t = synth_transitive_fn_map(&sys, CAP).unwrap();
        assert_eq!(verify_fn_map(sys.ambient(), &t, CAP).unwrap(), None);
        assert_eq!(transitivity_violation(&t), None);
    }

    #[test]
    fn lazy_membership_matches_table() {
        let sys = chain();
        let f = synth_fn_map(&sys, CAP).unwrap();
        let lazy = LazyFn::new(&sys, CAP);
        let all = sys.ambient().elements(CAP).unwrap();
        for x in &all {
            for z in &all {
                assert_eq!(lazy.contains(x, z).unwrap(), f.get(x).unwrap().contains(z));
            }
            for y in all.iter().filter(|y| x.is_below(y)) {
                assert!(lazy.check_pair(x, y).unwrap().is_ok());
            }
        }
    }
}
