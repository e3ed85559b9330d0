use std::collections::HashSet;

use serde::Serialize;

use crate::ba::{Element, Subalgebra};
use crate::error::{Error, Result};

/// Whether the subalgebras are independent: every choice of one block from
/// each has a nonzero meet.
///
/// Each atom lies in exactly one such meet, so the family is independent
/// iff the atoms realize every combination of blocks.
pub fn is_independent(parts: &[&Subalgebra]) -> bool {
    let Some(first) = parts.first() else {
        return true;
    };
    let n = first.atom_count();
    let mut needed: u128 = 1;
    for p in parts {
        needed = needed.saturating_mul(p.block_count() as u128);
    }
    if needed > n as u128 {
        return false;
    }
    let seen: HashSet<Vec<u32>> = (0..n)
        .map(|a| parts.iter().map(|p| p.block_of(a) as u32).collect())
        .collect();
    seen.len() as u128 == needed
}

/// Every block holds at least two atoms.
pub fn splits(a: &Subalgebra) -> bool {
    a.block_sizes().iter().all(|&s| s >= 2)
}

/// Whether the subalgebra generated by `a` and `extra` still splits.
pub fn splits_with(a: &Subalgebra, extra: &[Element]) -> bool {
    let mut p = a.clone();
    for x in extra {
        p = p.refined_by(x);
    }
    splits(&p)
}

/// A certificate that `outer` is `inner` with `rank` free generators
/// added: the generators are independent of `inner` and generate `outer`
/// together with it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeExtension {
    pub rank: u32,
    pub generators: Vec<Element>,
}

impl FreeExtension {
    pub fn verify(&self, inner: &Subalgebra, outer: &Subalgebra) -> bool {
        let gens: Vec<Subalgebra> = self
            .generators
            .iter()
            .map(|g| Subalgebra::generated(inner.atom_count(), [g]))
            .collect();
        let mut parts: Vec<&Subalgebra> = vec![inner];
        parts.extend(gens.iter());
        let together = gens.iter().fold(inner.clone(), |acc, g| acc.generated_with(g));
        self.generators.len() == self.rank as usize
            && self.generators.iter().all(|g| outer.contains(g))
            && is_independent(&parts)
            && together == *outer
    }
}

/// Rank of `outer` as a free extension of `inner`: each block of `inner`
/// must contain exactly `2^k` blocks of `outer`. Returns `None` when the
/// counts are not one uniform power of two.
pub fn free_extension_within(inner: &Subalgebra, outer: &Subalgebra) -> Result<Option<FreeExtension>> {
    if !inner.is_subalgebra_of(outer) {
        return Err(Error::Structure("the inner subalgebra is not contained in the outer one".into()));
    }
    let n = inner.atom_count();
    // Outer blocks grouped by inner block, in order of first atom.
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); inner.block_count()];
    let mut placed = vec![false; outer.block_count()];
    for a in 0..n {
        let ob = outer.block_of(a);
        if !std::mem::replace(&mut placed[ob], true) {
            members[inner.block_of(a)].push(ob);
        }
    }
    let fiber = members[0].len();
    if !fiber.is_power_of_two() || members.iter().any(|m| m.len() != fiber) {
        return Ok(None);
    }
    let rank = fiber.trailing_zeros();
    let mut label = vec![0usize; outer.block_count()];
    for m in &members {
        for (pos, &ob) in m.iter().enumerate() {
            label[ob] = pos;
        }
    }
    let generators = (0..rank as usize)
        .map(|j| {
            let mut g = Element::empty(n);
            for a in 0..n {
                if label[outer.block_of(a)] >> j & 1 == 1 {
                    g.insert(a);
                }
            }
            g
        })
        .collect();
    Ok(Some(FreeExtension { rank, generators }))
}

/// Rank of the whole algebra over `a`.
pub fn free_extension_rank(a: &Subalgebra) -> Option<u32> {
    let whole = Subalgebra::discrete(a.atom_count());
    free_extension_within(a, &whole)
        .expect("every subalgebra sits inside the whole algebra")
        .map(|w| w.rank)
}

/// Independence of the base and the two sides inside a pushout.
pub fn check_freepushout(base: &Subalgebra, left: &Subalgebra, right: &Subalgebra) -> bool {
    is_independent(&[base, left, right])
}
