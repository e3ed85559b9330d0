use std::collections::HashSet;

use serde::Serialize;

use super::commute::{subalgebra_commute_witness, CommuteWitness};
use crate::ba::{Element, FinAlg, Subalgebra};
use crate::error::{Error, Result};

/// A finite family of subalgebras of one ambient algebra, without repeats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommFamily {
    atom_count: usize,
    members: Vec<Subalgebra>,
}

impl CommFamily {
    pub fn new(atom_count: usize) -> Self {
        CommFamily {
            atom_count,
            members: Vec::new(),
        }
    }

    pub fn from_members<I: IntoIterator<Item = Subalgebra>>(atom_count: usize, it: I) -> Result<Self> {
        let mut f = CommFamily::new(atom_count);
        for b in it {
            f.insert(b)?;
        }
        Ok(f)
    }

    /// Adds a member; returns whether it was new.
    pub fn insert(&mut self, b: Subalgebra) -> Result<bool> {
        if b.atom_count() != self.atom_count {
            return Err(Error::InvalidPartition(format!(
                "partition of {} atoms added to a family over {}",
                b.atom_count(),
                self.atom_count
            )));
        }
        if self.members.contains(&b) {
            return Ok(false);
        }
        self.members.push(b);
        Ok(true)
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn members(&self) -> &[Subalgebra] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, b: &Subalgebra) -> bool {
        self.members.contains(b)
    }

    /// First non-commuting pair of members, by index.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize, CommuteWitness)> {
        for i in 0..self.members.len() {
            for j in i + 1..self.members.len() {
                if let Some(w) = subalgebra_commute_witness(&self.members[i], &self.members[j]) {
                    return Some((i, j, w));
                }
            }
        }
        None
    }

    pub fn to_blocks(&self) -> Vec<Vec<Vec<usize>>> {
        self.members.iter().map(|b| b.blocks()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SfnVerdict {
    pub cofinal: bool,
    pub noncommuting: Option<(usize, usize, CommuteWitness)>,
}

impl SfnVerdict {
    pub fn holds(&self) -> bool {
        self.cofinal && self.noncommuting.is_none()
    }
}

/// Pairwise commutation plus cofinality, which for a finite algebra means
/// that some member is the whole algebra.
pub fn verify_sfn_family(a: &FinAlg, f: &CommFamily) -> Result<SfnVerdict> {
    if f.atom_count() != a.atom_count() {
        return Err(Error::InvalidPartition("family over a different algebra".into()));
    }
    Ok(SfnVerdict {
        cofinal: f.members().iter().any(|b| b.is_discrete()),
        noncommuting: f.noncommuting_pair(),
    })
}

/// Adds pairwise intersections until nothing new appears.
pub fn close_under_intersection(f: &CommFamily) -> CommFamily {
    let mut out = f.clone();
    let mut seen: HashSet<Subalgebra> = out.members.iter().cloned().collect();
    let mut frontier = 0;
    while frontier < out.members.len() {
        let end = out.members.len();
        let mut fresh = Vec::new();
        for i in 0..end {
            for j in frontier.max(i + 1)..end {
                let m = out.members[i].intersection(&out.members[j]);
                if seen.insert(m.clone()) {
                    fresh.push(m);
                }
            }
        }
        frontier = end;
        out.members.extend(fresh);
    }
    out
}

/// One step of the family extension: which base member was chosen and the
/// resulting new member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionStep {
    pub added: Element,
    pub base_member: usize,
    pub member: Subalgebra,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedFamily {
    pub family: CommFamily,
    pub steps: Vec<ExtensionStep>,
}

/// Least member of `f` (by inclusion, then block order) containing all of
/// `needed`.
fn least_containing(f: &CommFamily, needed: &[Element]) -> Option<usize> {
    let candidates: Vec<usize> = (0..f.len())
        .filter(|&i| needed.iter().all(|x| f.members[i].contains(x)))
        .collect();
    let minimal = candidates.iter().copied().filter(|&i| {
        !candidates.iter().any(|&j| {
            j != i && f.members[j].is_subalgebra_of(&f.members[i]) && f.members[j] != f.members[i]
        })
    });
    minimal.min_by(|&i, &j| f.members[i].cmp_blocks(&f.members[j]))
}

/// Extends a commuting family of a relatively complete subalgebra `base`
/// to one of the whole algebra.
///
/// Starting from `C = {0, 1}`, each listed element `a` is added: the
/// subalgebra `⟨C ∪ {a}⟩` is projected into `base`, the least family member
/// holding that image is chosen, and the next `C` is generated by both.
/// With no `order` the atoms are added one at a time.
pub fn extend_sfn_family(
    a: &FinAlg,
    base: &Subalgebra,
    base_family: &CommFamily,
    order: Option<&[Element]>,
) -> Result<ExtendedFamily> {
    a.check_subalgebra(base)?;
    for m in base_family.members() {
        if !m.is_subalgebra_of(base) {
            return Err(Error::Structure(format!("{m:?} is not inside the base subalgebra")));
        }
    }
    let atoms: Vec<Element>;
    let order = match order {
        Some(o) => o,
        None => {
            atoms = (0..a.atom_count())
                .map(|i| Element::singleton(a.atom_count(), i))
                .collect::<Result<_>>()?;
            &atoms
        }
    };
    let mut family = base_family.clone();
    let mut steps = Vec::new();
    let mut current = a.trivial();
    for x in order {
        a.check(x)?;
        let grown = current.refined_by(x);
        let image: Vec<Element> = grown
            .block_elements()
            .iter()
            .map(|blk| base.proj_up(blk))
            .collect();
        let chosen = least_containing(base_family, &image).ok_or_else(|| {
            Error::Cofinality(format!("the projection of the subalgebra generated with {x}"))
        })?;
        current = grown.generated_with(&base_family.members()[chosen]);
        family.insert(current.clone())?;
        steps.push(ExtensionStep {
            added: x.clone(),
            base_member: chosen,
            member: current.clone(),
        });
    }
    Ok(ExtendedFamily { family, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::gen::all_partitions;

    fn sub(n: usize, blocks: &[&[usize]]) -> Subalgebra {
        let b: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        Subalgebra::from_blocks(n, &b).unwrap()
    }

    #[test]
    fn not_cofinal_on_two_atoms() {
        let a = FinAlg::new(2).unwrap();
        let f = CommFamily::from_members(2, [a.trivial()]).unwrap();
        let v = verify_sfn_family(&a, &f).unwrap();
        assert!(!v.cofinal);
        assert!(!v.holds());
    }

    #[test]
    fn noncommuting_pair_reported() {
        let a = FinAlg::new(3).unwrap();
        let f = CommFamily::from_members(
            3,
            [a.discrete(), sub(3, &[&[0], &[1, 2]]), sub(3, &[&[0, 1], &[2]])],
        )
        .unwrap();
        let v = verify_sfn_family(&a, &f).unwrap();
        assert!(v.cofinal);
        let (i, j, _) = v.noncommuting.unwrap();
        assert_eq!((i, j), (1, 2));
    }

    #[test]
    fn all_subalgebras_of_four_atoms_do_not_commute() {
        // {0}|{1,2,3} against {0,1}|{2,3} already fails.
        let a = FinAlg::new(4).unwrap();
        let f = CommFamily::from_members(4, all_partitions(4)).unwrap();
        let v = verify_sfn_family(&a, &f).unwrap();
        assert!(v.cofinal);
        assert!(v.noncommuting.is_some());
        assert!(!subalgebras_commute_pair(&sub(4, &[&[0], &[1, 2, 3]]), &sub(4, &[&[0, 1], &[2, 3]])));
    }

    fn subalgebras_commute_pair(s: &Subalgebra, t: &Subalgebra) -> bool {
        subalgebra_commute_witness(s, t).is_none()
    }

    #[test]
    fn intersection_closure_adds_meet() {
        let s = sub(4, &[&[0], &[1], &[2, 3]]);
        let t = sub(4, &[&[0, 1], &[2], &[3]]);
        let f = CommFamily::from_members(4, [s, t]).unwrap();
        let closed = close_under_intersection(&f);
        assert_eq!(closed.len(), 3);
        assert!(closed.contains(&sub(4, &[&[0, 1], &[2, 3]])));
        assert!(closed.noncommuting_pair().is_none());
    }

    #[test]
    fn chain_is_already_closed() {
        let chain = [
            Subalgebra::trivial(4),
            sub(4, &[&[0, 1], &[2, 3]]),
            sub(4, &[&[0], &[1], &[2, 3]]),
            Subalgebra::discrete(4),
        ];
        let f = CommFamily::from_members(4, chain).unwrap();
        assert_eq!(close_under_intersection(&f), f);
    }

    #[test]
    fn extension_over_two_block_base() {
        let a = FinAlg::new(4).unwrap();
        let base = sub(4, &[&[0, 1], &[2, 3]]);
        let base_family = CommFamily::from_members(
            4,
            all_partitions(4).into_iter().filter(|p| p.is_subalgebra_of(&base)),
        )
        .unwrap();
        assert_eq!(base_family.len(), 2);
        let ext = extend_sfn_family(&a, &base, &base_family, None).unwrap();
        assert!(verify_sfn_family(&a, &ext.family).unwrap().holds());
        for step in &ext.steps {
            let chosen = &base_family.members()[step.base_member];
            let image: HashSet<Element> = step
                .member
                .elements(1 << 10)
                .unwrap()
                .iter()
                .map(|x| base.proj_up(x))
                .collect();
            let expected: HashSet<Element> = chosen.elements(1 << 10).unwrap().into_iter().collect();
            assert_eq!(image, expected);
        }
    }

    #[test]
    fn extension_needs_a_containing_member() {
        let a = FinAlg::new(4).unwrap();
        let base = sub(4, &[&[0, 1], &[2, 3]]);
        let base_family = CommFamily::from_members(4, [a.trivial()]).unwrap();
        assert!(matches!(
            extend_sfn_family(&a, &base, &base_family, None),
            Err(Error::Cofinality(_))
        ));
    }
}
