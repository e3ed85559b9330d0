//! Case generators shared by the suites and tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::collections::BTreeSet;

use crate::approx::ApproxSystem;
use crate::ba::{Element, FinAlg, SubOrder, Subalgebra, DEFAULT_ENUMERATION_CAP};
use crate::gadget::{GadgetParams, HPattern, TargetCase};
use crate::ordinals::Ordinal;

/// The generator for case `index` of a run seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index)
}

/// Every partition of `n` atoms, in restricted-growth-string order.
pub fn all_partitions(n: usize) -> Vec<Subalgebra> {
    let mut out = Vec::new();
    let mut labels = vec![0u32; n];
    fn go(i: usize, max: u32, labels: &mut Vec<u32>, out: &mut Vec<Subalgebra>) {
        if i == labels.len() {
            out.push(Subalgebra::from_labels(labels));
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            go(i + 1, max.max(l), labels, out);
        }
    }
    if n == 0 {
        return out;
    }
    go(1, 0, &mut labels, &mut out);
    out
}

pub fn random_element<R: Rng>(rng: &mut R, n: usize) -> Element {
    let mut e = Element::empty(n);
    for a in 0..n {
        if rng.random_bool(0.5) {
            e.insert(a);
        }
    }
    e
}

/// A random partition with a uniformly chosen bound on its block count.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Subalgebra {
    let k = rng.random_range(1..=n.max(1));
    let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    Subalgebra::from_labels(&labels)
}

/// A random element of the subalgebra `b`.
pub fn random_member<R: Rng>(rng: &mut R, b: &Subalgebra) -> Element {
    let chosen: Vec<bool> = (0..b.block_count()).map(|_| rng.random_bool(0.5)).collect();
    let mut e = Element::empty(b.atom_count());
    for a in 0..b.atom_count() {
        if chosen[b.block_of(a)] {
            e.insert(a);
        }
    }
    e
}

/// A random coarsening of `b`: its blocks merged at random.
pub fn random_coarsening<R: Rng>(rng: &mut R, b: &Subalgebra) -> Subalgebra {
    let k = b.block_count();
    let target = rng.random_range(1..=k.max(1));
    let merge: Vec<usize> = (0..k).map(|_| rng.random_range(0..target)).collect();
    let labels: Vec<usize> = (0..b.atom_count()).map(|a| merge[b.block_of(a)]).collect();
    Subalgebra::from_labels(&labels)
}

/// A random refinement of `b`: each block split at random.
pub fn random_refinement<R: Rng>(rng: &mut R, b: &Subalgebra) -> Subalgebra {
    let n = b.atom_count();
    let labels: Vec<(usize, usize)> = (0..n)
        .map(|a| (b.block_of(a), rng.random_range(0..2)))
        .collect();
    Subalgebra::from_labels(&labels)
}

/// A random pair of commuting subalgebras.
///
/// Inside each block of a random common part, the atoms are laid out on a
/// grid whose rows and columns become the blocks of the two sides, so every
/// block of one meets every block of the other.
pub fn random_commuting_pair<R: Rng>(rng: &mut R, n: usize) -> (Subalgebra, Subalgebra) {
    let common = random_partition(rng, n);
    let mut left = vec![0usize; n];
    let mut right = vec![0usize; n];
    for (id, block) in common.blocks().into_iter().enumerate() {
        let mut atoms = block;
        atoms.shuffle(rng);
        let size = atoms.len();
        let divisors: Vec<usize> = (1..=size).filter(|d| size % d == 0).collect();
        let rows = divisors[rng.random_range(0..divisors.len())];
        let cols = size / rows;
        for (pos, &a) in atoms.iter().enumerate() {
            left[a] = id * n + pos / cols;
            right[a] = id * n + pos % cols;
        }
    }
    let s = Subalgebra::from_labels(&left);
    let t = Subalgebra::from_labels(&right);
    if rng.random_bool(0.5) {
        (s, t)
    } else {
        (t, s)
    }
}

/// A random set of elements over `n` atoms, always holding 0 and 1.
pub fn random_suborder<R: Rng>(rng: &mut R, n: usize) -> SubOrder {
    let mut s = SubOrder::new(n);
    s.insert(Element::empty(n)).expect("same atom count");
    s.insert(Element::full(n)).expect("same atom count");
    let extra = rng.random_range(0..=4);
    for _ in 0..extra {
        s.insert(random_element(rng, n)).expect("same atom count");
    }
    s
}

/// A random factorization of `size` into factors of at least 2.
fn random_factors<R: Rng>(rng: &mut R, mut size: usize) -> Vec<usize> {
    let mut out = Vec::new();
    while size > 1 {
        let divisors: Vec<usize> = (2..=size).filter(|d| size % d == 0).collect();
        let d = divisors[rng.random_range(0..divisors.len())];
        out.push(d);
        size /= d;
    }
    out
}

/// A random family of pairwise commuting subalgebras.
///
/// The atoms of each block of a random common part are laid out on a grid
/// with a random shape; a member keeps, inside each block, a random subset
/// of the grid coordinates. Two such members meet every pair of their
/// blocks inside a block of their join, so they commute.
pub fn random_commuting_family<R: Rng>(rng: &mut R, n: usize, count: usize) -> Vec<Subalgebra> {
    let common = random_partition(rng, n);
    let blocks = common.blocks();
    let mut coords: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut dims = Vec::with_capacity(blocks.len());
    for block in &blocks {
        let mut atoms = block.clone();
        atoms.shuffle(rng);
        let factors = random_factors(rng, atoms.len());
        for (pos, &a) in atoms.iter().enumerate() {
            let mut rest = pos;
            for &f in &factors {
                coords[a].push(rest % f);
                rest /= f;
            }
        }
        dims.push(factors.len());
    }
    (0..count)
        .map(|_| {
            let keep: Vec<Vec<bool>> = dims
                .iter()
                .map(|&d| (0..d).map(|_| rng.random_bool(0.5)).collect())
                .collect();
            let labels: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|a| {
                    let b = common.block_of(a);
                    let kept = coords[a]
                        .iter()
                        .zip(&keep[b])
                        .filter(|(_, &k)| k)
                        .map(|(&c, _)| c)
                        .collect();
                    (b, kept)
                })
                .collect();
            let ids: Vec<usize> = {
                let mut seen: Vec<&(usize, Vec<usize>)> = Vec::new();
                labels
                    .iter()
                    .map(|l| match seen.iter().position(|s| *s == l) {
                        Some(i) => i,
                        None => {
                            seen.push(l);
                            seen.len() - 1
                        }
                    })
                    .collect()
            };
            Subalgebra::from_labels(&ids)
        })
        .collect()
}

/// Reads a partition of the blocks of `b` as a coarsening of `b`.
pub fn lift_through(b: &Subalgebra, over_blocks: &Subalgebra) -> Subalgebra {
    let labels: Vec<usize> = (0..b.atom_count())
        .map(|a| over_blocks.block_of(b.block_of(a)))
        .collect();
    Subalgebra::from_labels(&labels)
}

fn position_pool() -> Vec<Ordinal> {
    let w1 = Ordinal::omega(1);
    let w2 = Ordinal::omega(2);
    let f = Ordinal::finite;
    vec![
        f(0),
        f(1),
        f(2),
        f(3),
        w1,
        w1 + f(1),
        w1 + f(2),
        Ordinal::term(1, 2),
        Ordinal::term(1, 2) + f(1),
        w2,
        w2 + f(1),
        w2 + w1,
        w2 + w1 + f(1),
        w2 + w1 + f(2),
    ]
}

fn random_visibility<R: Rng>(rng: &mut R, stages: &[Subalgebra], earlier: &[BTreeSet<usize>]) -> BTreeSet<usize> {
    let b = earlier.len();
    let mut v = BTreeSet::new();
    for g in 0..b {
        if stages[g].is_subalgebra_of(&stages[b]) && rng.random_bool(0.7) {
            v.insert(g);
            v.extend(earlier[g].iter().copied());
        }
    }
    v
}

fn random_system_attempt<R: Rng>(rng: &mut R, n: usize, k: usize) -> ApproxSystem {
    let pool = position_pool();
    let mut picks: Vec<usize> = rand::seq::index::sample(rng, pool.len(), k).into_vec();
    picks.sort_unstable();
    let positions: Vec<Ordinal> = picks.iter().map(|&i| pool[i]).collect();
    let last = *positions.last().expect("k >= 1");
    let eta = match pool.iter().find(|p| **p > last) {
        Some(&later) if rng.random_bool(0.3) => later,
        _ => last + Ordinal::finite(1),
    };
    let mut stages: Vec<Subalgebra> = Vec::with_capacity(k);
    for b in 0..k {
        let stage = if b == k - 1 && rng.random_bool(0.7) {
            Subalgebra::discrete(n)
        } else if b > 0 && rng.random_bool(0.6) {
            let from = rng.random_range(0..b);
            random_refinement(rng, &stages[from])
        } else {
            random_partition(rng, n)
        };
        stages.push(stage);
    }
    let mut visibility: Vec<BTreeSet<usize>> = Vec::with_capacity(k);
    for _ in 0..k {
        let v = random_visibility(rng, &stages, &visibility);
        visibility.push(v);
    }
    ApproxSystem::new(FinAlg::new(n).expect("n >= 1"), eta, positions, stages, visibility)
        .expect("well formed by construction")
}

/// A random valid system with at most `max_stages` stages over at most
/// `max_atoms` atoms. Random attempts are filtered by validation; after
/// too many rejections a chain of refinements is returned.
pub fn random_system<R: Rng>(rng: &mut R, max_stages: usize, max_atoms: usize) -> ApproxSystem {
    let n = rng.random_range(1..=max_atoms.max(1));
    let k = rng.random_range(1..=max_stages.max(1));
    for _ in 0..64 {
        let sys = random_system_attempt(rng, n, k);
        if sys.is_valid(DEFAULT_ENUMERATION_CAP) {
            return sys;
        }
    }
    let mut stages = vec![random_partition(rng, n)];
    while stages.len() + 1 < k {
        let next = random_refinement(rng, stages.last().expect("nonempty"));
        stages.push(next);
    }
    if k > 1 {
        stages.push(Subalgebra::discrete(n));
    } else {
        stages[0] = Subalgebra::discrete(n);
    }
    ApproxSystem::chain(FinAlg::new(n).expect("n >= 1"), stages).expect("chains are well formed")
}

fn random_index_set<R: Rng>(rng: &mut R, len: usize) -> BTreeSet<usize> {
    (0..len).filter(|_| rng.random_bool(0.4)).collect()
}

/// A random case for the target-set table with disjoint positive and
/// negative sets inside the truncation.
pub fn random_target_case<R: Rng>(rng: &mut R, p: GadgetParams) -> TargetCase {
    let side = rng.random_range(0..2);
    // The b0 sets stay below m so that every target index exists.
    let mut draw = |len: usize| {
        let pos = random_index_set(rng, len);
        let neg: BTreeSet<usize> = random_index_set(rng, len).difference(&pos).copied().collect();
        (pos, neg)
    };
    let (p0, q0) = draw(p.m);
    let (p1, q1) = draw(p.m);
    TargetCase {
        side,
        p0,
        q0,
        p1,
        q1,
        pattern: HPattern::ALL[rng.random_range(0..4)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::subalgebras_commute;

    #[test]
    fn commuting_families_commute() {
        for i in 0..300 {
            let mut rng = case_rng(11, i);
            let n = rng.random_range(1..=8);
            let family = random_commuting_family(&mut rng, n, 4);
            for s in &family {
                for t in &family {
                    assert!(subalgebras_commute(s, t));
                }
            }
        }
    }

    #[test]
    fn random_systems_are_valid() {
        let mut non_chain = 0;
        for i in 0..200 {
            let mut rng = case_rng(3, i);
            let sys = random_system(&mut rng, 5, 6);
            assert!(sys.is_valid(DEFAULT_ENUMERATION_CAP));
            assert!(sys.len() <= 5 && sys.ambient().atom_count() <= 6);
            if sys.positions().iter().any(|p| *p >= Ordinal::omega(1)) {
                non_chain += 1;
            }
        }
        assert!(non_chain > 50, "{non_chain}");
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=6).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn commuting_pairs_commute() {
        for i in 0..200 {
            let mut rng = case_rng(7, i);
            let n = rng.random_range(1..=6);
            let (s, t) = random_commuting_pair(&mut rng, n);
            assert!(subalgebras_commute(&s, &t));
        }
    }
}
