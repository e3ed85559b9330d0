use serde_json::json;

use super::tally::{Case, Tally};
use super::{timed, CheckResult, SuiteConfig};
use crate::ba::{FinAlg, Subalgebra, DEFAULT_ENUMERATION_CAP};
use crate::construct::{compare_pushouts, coproduct, free_algebra, SharedSubalgebra};
use crate::error::Result;

/// Partitions of `n` into exactly `k` positive parts, largest first.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, k: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            if rest - part < k - 1 {
                continue;
            }
            prefix.push(part);
            go(rest - part, k - 1, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, n, &mut Vec::new(), &mut out);
    out
}

/// The subalgebra whose blocks are consecutive runs of the given sizes.
fn contiguous(sizes: &[usize]) -> Subalgebra {
    let labels: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect();
    Subalgebra::from_labels(&labels)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Every pushout input with both factors of at most `max_atoms` atoms, up
/// to isomorphism: a shared part given by block sizes on each side, laid
/// out contiguously, and any matching of the blocks.
pub fn factor_cases(max_atoms: usize) -> Vec<SharedSubalgebra> {
    let mut out = Vec::new();
    for na in 1..=max_atoms {
        for nb in 1..=max_atoms {
            for k in 1..=na.min(nb) {
                let perms = permutations(k);
                for left in compositions(na, k) {
                    for right in compositions(nb, k) {
                        let (in_left, in_right) = (contiguous(&left), contiguous(&right));
                        for matching in &perms {
                            out.push(SharedSubalgebra {
                                in_left: in_left.clone(),
                                in_right: in_right.clone(),
                                matching: matching.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

fn pushout_routes(config: &SuiteConfig) -> Result<CheckResult> {
    let cases = factor_cases(config.factor_atoms);
    let t = Tally::run_over(&cases, |shared| {
        let a = FinAlg::new(shared.in_left.atom_count())?;
        let b = FinAlg::new(shared.in_right.atom_count())?;
        let c = compare_pushouts(&a, &b, shared, config.atom_cap, DEFAULT_ENUMERATION_CAP)?;
        Ok(vec![Case::check(c.holds(), || {
            json!({
                "left": shared.in_left,
                "right": shared.in_right,
                "matching": shared.matching,
                "comparison": c,
            })
        })])
    })?;
    Ok(t.into_check("pushout routes agree"))
}

/// The coproduct of free algebras on `i` and `j` generators is free on
/// `i + j`: the cofactor images of the generators are independent.
fn free_coproducts(config: &SuiteConfig) -> Result<CheckResult> {
    let pairs: Vec<(usize, usize)> = (0..=4).flat_map(|i| (0..=4).map(move |j| (i, j))).collect();
    let t = Tally::run_over(&pairs, |&(i, j)| {
        let (fa, fb) = (free_algebra(i, config.atom_cap)?, free_algebra(j, config.atom_cap)?);
        let (c, maps) = coproduct(&fa, &fb, config.atom_cap)?;
        let gens: Vec<_> = fa
            .labels()
            .values()
            .map(|x| maps.left.apply(x))
            .chain(fb.labels().values().map(|y| maps.right.apply(y)))
            .collect();
        let generated = Subalgebra::generated(c.atom_count(), &gens);
        let free = c.atom_count() == 1 << (i + j) && generated.is_discrete();
        Ok(vec![Case::check(free, || json!({ "left": i, "right": j, "atoms": c.atom_count() }))])
    })?;
    Ok(t.into_check("free coproducts"))
}

pub fn run_colimits(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    Ok(vec![
        timed(config, || pushout_routes(config))?,
        timed(config, || free_coproducts(config))?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(compositions(4, 2), vec![vec![3, 1], vec![2, 2]]);
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(contiguous(&[2, 1]).blocks(), vec![vec![0, 1], vec![2]]);
        // One shared block on each side gives a single case per factor pair.
        let small = factor_cases(2);
        assert_eq!(small.len(), 4 + 1 + 1);
    }
}
