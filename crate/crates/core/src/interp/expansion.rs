use std::collections::{BTreeSet, HashMap};

use super::family::CommFamily;
use super::fnmap::FnMap;
use crate::ba::{Element, FinAlg, Subalgebra};
use crate::error::{Error, Result};

/// A partial operation given by its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOp {
    pub name: String,
    pub arity: usize,
    pub table: HashMap<Vec<Element>, Element>,
}

/// An algebra's element set with extra partial operations.
///
/// When `boolean_closed` is set, closures also close under the boolean
/// operations (an expansion of the algebra); otherwise only the partial
/// operations are applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAlgebra {
    pub atom_count: usize,
    pub ops: Vec<PartialOp>,
    pub boolean_closed: bool,
}

impl PartialAlgebra {
    pub fn bare(atom_count: usize) -> Self {
        PartialAlgebra {
            atom_count,
            ops: Vec::new(),
            boolean_closed: true,
        }
    }

    fn apply_all(&self, set: &BTreeSet<Element>) -> Vec<Element> {
        let mut out = Vec::new();
        let members: Vec<&Element> = set.iter().collect();
        for op in &self.ops {
            if op.arity == 1 {
                for x in &members {
                    if let Some(v) = op.table.get(std::slice::from_ref(*x)) {
                        out.push(v.clone());
                    }
                }
            } else {
                for (args, v) in &op.table {
                    if args.iter().all(|a| set.contains(a)) {
                        out.push(v.clone());
                    }
                }
            }
        }
        out
    }

    /// Smallest subset containing `seed` and closed under the operations.
    pub fn closure<'a, I>(&self, seed: I, cap: u128) -> Result<BTreeSet<Element>>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let mut set: BTreeSet<Element> = seed.into_iter().cloned().collect();
        loop {
            if self.boolean_closed {
                let p = Subalgebra::generated(self.atom_count, set.iter());
                set = p.elements(cap)?.into_iter().collect();
            }
            let before = set.len();
            for v in self.apply_all(&set) {
                set.insert(v);
            }
            if set.len() as u128 > cap {
                return Err(Error::CapExceeded {
                    what: "partial-algebra closure",
                    needed: set.len() as u128,
                    cap,
                });
            }
            if set.len() == before {
                return Ok(set);
            }
        }
    }
}

/// The smallest member containing `x`: the intersection of all members
/// holding it, which must itself be a member.
pub fn least_member_containing(f: &CommFamily, x: &Element) -> Result<Subalgebra> {
    let mut acc: Option<Subalgebra> = None;
    for b in f.members() {
        if b.contains(x) {
            acc = Some(match acc {
                None => b.clone(),
                Some(m) => m.intersection(b),
            });
        }
    }
    let m = acc.ok_or_else(|| Error::Cofinality(format!("{x}")))?;
    if !f.contains(&m) {
        return Err(Error::Structure(format!(
            "no smallest member contains {x}; the family is not closed under intersection"
        )));
    }
    Ok(m)
}

/// Expands the algebra by functions `f_n`, where `f_n(x)` is the `n`-th
/// element of the smallest family member containing `x` (indices wrap).
pub fn strongly_commuting_expansion(a: &FinAlg, f: &CommFamily, cap: u128) -> Result<PartialAlgebra> {
    let elements = a.elements(cap)?;
    let mut listings: Vec<(Element, Vec<Element>)> = Vec::with_capacity(elements.len());
    let mut width = 0;
    for x in elements {
        let mut members = least_member_containing(f, &x)?.elements(cap)?;
        members.sort();
        width = width.max(members.len());
        listings.push((x, members));
    }
    let ops = (0..width)
        .map(|n| PartialOp {
            name: format!("f{n}"),
            arity: 1,
            table: listings
                .iter()
                .map(|(x, ms)| (vec![x.clone()], ms[n % ms.len()].clone()))
                .collect(),
        })
        .collect();
    Ok(PartialAlgebra {
        atom_count: a.atom_count(),
        ops,
        boolean_closed: true,
    })
}

/// `f(x)` is the universe of the smallest subalgebra of `p` containing `x`.
pub fn fn_map_from_expansion(a: &FinAlg, p: &PartialAlgebra, cap: u128) -> Result<FnMap> {
    let mut f = FnMap::new();
    for x in a.elements(cap)? {
        let image = p.closure([&x], cap)?;
        f.insert(x, image);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ba::{SubOrder, DEFAULT_ENUMERATION_CAP};
    use crate::interp::{commutes, verify_fn_map};
    use crate::suite::gen::all_partitions;

    const CAP: u128 = DEFAULT_ENUMERATION_CAP;

    fn sub(n: usize, blocks: &[&[usize]]) -> Subalgebra {
        let b: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        Subalgebra::from_blocks(n, &b).unwrap()
    }

    #[test]
    fn two_atom_family_gives_cyclic_subalgebras() {
        let a = FinAlg::new(2).unwrap();
        let f = CommFamily::from_members(2, all_partitions(2)).unwrap();
        let p = strongly_commuting_expansion(&a, &f, CAP).unwrap();
        for x in a.elements(CAP).unwrap() {
            let expected = a.generated_subalgebra([&x]).unwrap();
            assert_eq!(least_member_containing(&f, &x).unwrap(), expected);
            let closure = p.closure([&x], CAP).unwrap();
            let direct: BTreeSet<Element> = expected.elements(CAP).unwrap().into_iter().collect();
            assert_eq!(closure, direct);
        }
    }

    #[test]
    fn four_atom_family_round_trip() {
        let a = FinAlg::new(4).unwrap();
        let f = CommFamily::from_members(
            4,
            [
                a.trivial(),
                sub(4, &[&[0, 1], &[2, 3]]),
                sub(4, &[&[0], &[1], &[2, 3]]),
                sub(4, &[&[0, 1], &[2], &[3]]),
                a.discrete(),
            ],
        )
        .unwrap();
        let p = strongly_commuting_expansion(&a, &f, CAP).unwrap();
        let fmap = fn_map_from_expansion(&a, &p, CAP).unwrap();
        assert_eq!(verify_fn_map(&a, &fmap, CAP).unwrap(), None);
        let cyclic: Vec<SubOrder> = fmap
            .iter()
            .map(|(_, img)| SubOrder::from_elements(4, img.iter().cloned()).unwrap())
            .collect();
        for s in &cyclic {
            for t in &cyclic {
                assert!(commutes(s, t));
            }
        }
        for (_, img) in fmap.iter() {
            assert!(f.members().iter().any(|m| img.iter().all(|y| m.contains(y))));
        }
    }

    #[test]
    fn bare_algebra_closure_is_generated_subalgebra() {
        let a = FinAlg::new(3).unwrap();
        let p = PartialAlgebra::bare(3);
        let x = a.element([0, 2]).unwrap();
        assert_eq!(p.closure([&x], CAP).unwrap().len(), 4);
        assert_eq!(p.closure([&a.zero()], CAP).unwrap().len(), 2);
    }

    #[test]
    fn missing_least_member_is_an_error() {
        let a = FinAlg::new(3).unwrap();
        let f = CommFamily::from_members(
            3,
            [a.discrete(), sub(3, &[&[0], &[1, 2]]), sub(3, &[&[0, 1, 2]])],
        )
        .unwrap();
        assert!(strongly_commuting_expansion(&a, &f, CAP).is_ok());
        let f = CommFamily::from_members(3, [sub(3, &[&[0], &[1, 2]]), sub(3, &[&[0, 2], &[1]])]).unwrap();
        assert!(matches!(
            least_member_containing(&f, &a.zero()),
            Err(Error::Structure(_))
        ));
    }
}
