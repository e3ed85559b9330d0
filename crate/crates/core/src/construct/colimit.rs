use serde::Serialize;

use super::hom::{CofactorMaps, Hom, QuotientMap};
use crate::ba::{Element, FinAlg, Subalgebra};
use crate::error::{Error, Result};

/// Default cap on the number of atoms a construction may create.
pub const DEFAULT_ATOM_CAP: usize = 1 << 20;

fn check_atoms(what: &'static str, needed: u128, cap: usize) -> Result<()> {
    if needed > cap as u128 {
        return Err(Error::CapExceeded {
            what,
            needed,
            cap: cap as u128,
        });
    }
    Ok(())
}

/// Label of the `i`-th free generator.
pub fn free_label(i: usize) -> String {
    format!("fr_{i}")
}

/// The free algebra on `n` generators: its atoms are the `2^n` minterms,
/// and generator `i` holds the minterms whose bit `n − 1 − i` is set.
pub fn free_algebra(n: usize, atom_cap: usize) -> Result<FinAlg> {
    let names: Vec<String> = (0..n).map(free_label).collect();
    free_algebra_named(&names, atom_cap)
}

/// The free algebra on the given generator names, in the same encoding.
pub fn free_algebra_named(names: &[String], atom_cap: usize) -> Result<FinAlg> {
    let n = names.len();
    if n >= 127 {
        return Err(Error::CapExceeded {
            what: "free algebra atoms",
            needed: u128::MAX,
            cap: atom_cap as u128,
        });
    }
    check_atoms("free algebra atoms", 1u128 << n, atom_cap)?;
    let atoms = 1usize << n;
    let mut alg = FinAlg::new(atoms)?;
    for (i, name) in names.iter().enumerate() {
        let bit = n - 1 - i;
        let mut g = Element::empty(atoms);
        for m in 0..atoms {
            if m >> bit & 1 == 1 {
                g.insert(m);
            }
        }
        alg.set_label(name.clone(), g)?;
    }
    Ok(alg)
}

/// The coproduct: atoms are pairs `(p, q)`, stored at `p * |B| + q`.
pub fn coproduct(a: &FinAlg, b: &FinAlg, atom_cap: usize) -> Result<(FinAlg, CofactorMaps)> {
    let (na, nb) = (a.atom_count(), b.atom_count());
    check_atoms("coproduct atoms", na as u128 * nb as u128, atom_cap)?;
    let n = na * nb;
    let left = (0..na)
        .map(|p| Element::from_atoms(n, (0..nb).map(|q| p * nb + q)))
        .collect::<Result<Vec<_>>>()?;
    let right = (0..nb)
        .map(|q| Element::from_atoms(n, (0..na).map(|p| p * nb + q)))
        .collect::<Result<Vec<_>>>()?;
    let maps = CofactorMaps {
        left: Hom::from_atom_images(n, left)?,
        right: Hom::from_atom_images(n, right)?,
    };
    let mut alg = FinAlg::new(n)?;
    for (name, x) in a.labels() {
        alg.set_label(format!("left.{name}"), maps.left.apply(x))?;
    }
    for (name, y) in b.labels() {
        alg.set_label(format!("right.{name}"), maps.right.apply(y))?;
    }
    Ok((alg, maps))
}

/// Quotient by the ideal generated by `gens`, which is principal: its top
/// is the join of the generators. Surviving atoms keep their order.
pub fn quotient_by_ideal(a: &FinAlg, gens: &[Element]) -> Result<(FinAlg, QuotientMap)> {
    let mut top = a.zero();
    for g in gens {
        a.check(g)?;
        top.join_assign(g);
    }
    if top.is_one() {
        return Err(Error::DegenerateQuotient);
    }
    let surviving: Vec<usize> = top.complement().atoms().collect();
    let n = surviving.len();
    let mut index = vec![usize::MAX; a.atom_count()];
    for (i, &s) in surviving.iter().enumerate() {
        index[s] = i;
    }
    let images = index
        .iter()
        .map(|&i| if i == usize::MAX { Vec::new() } else { vec![i as u32] })
        .collect();
    let map = Hom::from_atom_lists(n, images)?;
    let mut alg = FinAlg::new(n)?;
    for (name, x) in a.labels() {
        alg.set_label(name.clone(), map.apply(x))?;
    }
    Ok((
        alg,
        QuotientMap {
            map,
            kernel_generators: gens.to_vec(),
            surviving,
        },
    ))
}

/// Identifies a subalgebra `C` inside two algebras: block `i` of `in_left`
/// corresponds to block `matching[i]` of `in_right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedSubalgebra {
    pub in_left: Subalgebra,
    pub in_right: Subalgebra,
    pub matching: Vec<usize>,
}

impl SharedSubalgebra {
    pub fn identity(in_left: Subalgebra, in_right: Subalgebra) -> Self {
        let k = in_left.block_count();
        SharedSubalgebra {
            in_left,
            in_right,
            matching: (0..k).collect(),
        }
    }

    fn validate(&self, a: &FinAlg, b: &FinAlg) -> Result<()> {
        a.check_subalgebra(&self.in_left)?;
        b.check_subalgebra(&self.in_right)?;
        let k = self.in_left.block_count();
        if self.in_right.block_count() != k || self.matching.len() != k {
            return Err(Error::Structure(
                "the shared subalgebra has different sizes on the two sides".into(),
            ));
        }
        let mut hit = vec![false; k];
        for &j in &self.matching {
            if j >= k || std::mem::replace(&mut hit[j], true) {
                return Err(Error::Structure("block matching is not a bijection".into()));
            }
        }
        Ok(())
    }

    /// The right-hand image of a left-hand element of `C`.
    pub fn transport(&self, x: &Element) -> Element {
        let mut chosen = vec![false; self.in_right.block_count()];
        for p in x.atoms() {
            chosen[self.matching[self.in_left.block_of(p)]] = true;
        }
        let mut out = Element::empty(self.in_right.atom_count());
        for q in 0..self.in_right.atom_count() {
            if chosen[self.in_right.block_of(q)] {
                out.insert(q);
            }
        }
        out
    }
}

/// A pushout built as a quotient of the coproduct.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub algebra: FinAlg,
    pub coproduct: FinAlg,
    pub coproduct_maps: CofactorMaps,
    pub quotient: QuotientMap,
    /// Coproduct embedding followed by the quotient.
    pub cofactors: CofactorMaps,
}

/// Pushout over a shared subalgebra: the coproduct modulo the ideal
/// generated by `left(c) ∧ right(−c)` for every `c` in the shared part.
pub fn pushout(
    a: &FinAlg,
    b: &FinAlg,
    shared: &SharedSubalgebra,
    atom_cap: usize,
    element_cap: u128,
) -> Result<Pushout> {
    shared.validate(a, b)?;
    let (coproduct, maps) = coproduct(a, b, atom_cap)?;
    let gens: Vec<Element> = shared
        .in_left
        .elements(element_cap)?
        .iter()
        .map(|c| {
            let c_right = shared.transport(c);
            maps.left.apply(c).meet(&maps.right.apply(&c_right.complement()))
        })
        .collect();
    let (algebra, quotient) = quotient_by_ideal(&coproduct, &gens)?;
    let cofactors = CofactorMaps {
        left: maps.left.then(&quotient.map)?,
        right: maps.right.then(&quotient.map)?,
    };
    Ok(Pushout {
        algebra,
        coproduct,
        coproduct_maps: maps,
        quotient,
        cofactors,
    })
}

/// Pushout built directly: atoms are the pairs `(p, q)` whose shared blocks
/// correspond, in lexicographic order.
#[derive(Clone, Debug)]
pub struct DirectPushout {
    pub algebra: FinAlg,
    pub pairs: Vec<(usize, usize)>,
    pub cofactors: CofactorMaps,
}

pub fn pushout_direct(a: &FinAlg, b: &FinAlg, shared: &SharedSubalgebra) -> Result<DirectPushout> {
    shared.validate(a, b)?;
    let mut pairs = Vec::new();
    for p in 0..a.atom_count() {
        let want = shared.matching[shared.in_left.block_of(p)];
        for q in 0..b.atom_count() {
            if shared.in_right.block_of(q) == want {
                pairs.push((p, q));
            }
        }
    }
    let n = pairs.len();
    let mut left = vec![Element::empty(n); a.atom_count()];
    let mut right = vec![Element::empty(n); b.atom_count()];
    for (i, &(p, q)) in pairs.iter().enumerate() {
        left[p].insert(i);
        right[q].insert(i);
    }
    Ok(DirectPushout {
        algebra: FinAlg::new(n)?,
        pairs,
        cofactors: CofactorMaps {
            left: Hom::from_atom_images(n, left)?,
            right: Hom::from_atom_images(n, right)?,
        },
    })
}

/// How the quotient and direct pushout constructions compare on one input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushoutComparison {
    pub quotient_atoms: usize,
    pub direct_atoms: usize,
    /// The atom bijection through surviving coproduct atoms intertwines
    /// both cofactor pairs.
    pub isomorphic: bool,
    /// Both routes agree on the shared subalgebra.
    pub square_commutes: bool,
    pub cofactors_injective: bool,
}

impl PushoutComparison {
    pub fn holds(&self) -> bool {
        self.isomorphic && self.square_commutes && self.cofactors_injective
    }
}

fn square_commutes(maps: &CofactorMaps, shared: &SharedSubalgebra) -> bool {
    shared
        .in_left
        .block_elements()
        .iter()
        .all(|c| maps.left.apply(c) == maps.right.apply(&shared.transport(c)))
}

/// Builds the pushout both ways and compares them.
pub fn compare_pushouts(
    a: &FinAlg,
    b: &FinAlg,
    shared: &SharedSubalgebra,
    atom_cap: usize,
    element_cap: u128,
) -> Result<PushoutComparison> {
    let quotient = pushout(a, b, shared, atom_cap, element_cap)?;
    let direct = pushout_direct(a, b, shared)?;
    let nb = b.atom_count();
    let to_direct: Option<Vec<usize>> = quotient
        .quotient
        .surviving
        .iter()
        .map(|&s| direct.pairs.binary_search(&(s / nb, s % nb)).ok())
        .collect();
    let isomorphic = quotient.algebra.atom_count() == direct.algebra.atom_count()
        && to_direct.is_some_and(|to| {
            let carry = |x: &Element| {
                let mut out = Element::empty(direct.algebra.atom_count());
                for t in x.atoms() {
                    out.insert(to[t]);
                }
                out
            };
            let intertwines = |via_quotient: &Hom, via_direct: &Hom, atoms: usize| {
                (0..atoms).all(|p| carry(&via_quotient.atom_image(p)) == via_direct.atom_image(p))
            };
            intertwines(&quotient.cofactors.left, &direct.cofactors.left, a.atom_count())
                && intertwines(&quotient.cofactors.right, &direct.cofactors.right, nb)
        });
    let injective = |m: &CofactorMaps| m.left.is_injective() && m.right.is_injective();
    Ok(PushoutComparison {
        quotient_atoms: quotient.algebra.atom_count(),
        direct_atoms: direct.algebra.atom_count(),
        isomorphic,
        square_commutes: square_commutes(&quotient.cofactors, shared)
            && square_commutes(&direct.cofactors, shared),
        cofactors_injective: injective(&quotient.cofactors) && injective(&direct.cofactors),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ba::DEFAULT_ENUMERATION_CAP;

    const CAP: u128 = DEFAULT_ENUMERATION_CAP;

    #[test]
    fn free_algebra_examples() {
        let f0 = free_algebra(0, DEFAULT_ATOM_CAP).unwrap();
        assert_eq!(f0.atom_count(), 1);
        assert_eq!(f0.elements(CAP).unwrap().len(), 2);
        let f2 = free_algebra(2, DEFAULT_ATOM_CAP).unwrap();
        assert_eq!(f2.atom_count(), 4);
        assert_eq!(f2.named("fr_0").unwrap().to_vec(), vec![2, 3]);
        assert_eq!(f2.named("fr_1").unwrap().to_vec(), vec![1, 3]);
        assert!(matches!(free_algebra(21, DEFAULT_ATOM_CAP), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn coproduct_maps_are_homomorphisms() {
        let a = FinAlg::new(2).unwrap();
        let b = FinAlg::new(2).unwrap();
        let (c, maps) = coproduct(&a, &b, DEFAULT_ATOM_CAP).unwrap();
        assert_eq!(c.atom_count(), 4);
        assert!(maps.left.preserves_operations(&a, CAP).unwrap());
        assert!(maps.right.preserves_operations(&b, CAP).unwrap());
        assert!(maps.left.is_injective() && maps.right.is_injective());
        let images: Vec<Element> = a
            .elements(CAP)
            .unwrap()
            .iter()
            .map(|x| maps.left.apply(x))
            .chain(b.elements(CAP).unwrap().iter().map(|y| maps.right.apply(y)))
            .collect();
        assert!(c.generated_subalgebra(&images).unwrap().is_discrete());
    }

    #[test]
    fn quotient_examples() {
        let a = FinAlg::new(4).unwrap();
        let (q, map) = quotient_by_ideal(&a, &[]).unwrap();
        assert_eq!(q.atom_count(), 4);
        assert!(map.map.is_injective());
        let (q, map) = quotient_by_ideal(&a, &[a.element([0]).unwrap()]).unwrap();
        assert_eq!(q.atom_count(), 3);
        assert!(map.map.is_surjective());
        assert!(map.map.preserves_operations(&a, CAP).unwrap());
        assert_eq!(quotient_by_ideal(&a, &[a.one()]).unwrap_err(), Error::DegenerateQuotient);
    }

    #[test]
    fn quotient_kernel_is_the_principal_ideal() {
        let a = FinAlg::new(4).unwrap();
        let all = a.elements(CAP).unwrap();
        for g in &all {
            if g.is_one() {
                continue;
            }
            let (_, map) = quotient_by_ideal(&a, std::slice::from_ref(g)).unwrap();
            for x in &all {
                for y in &all {
                    assert_eq!(map.apply(x) == map.apply(y), x.sym_diff(y).is_below(g));
                }
            }
        }
    }

    #[test]
    fn pushout_examples() {
        let a = FinAlg::new(4).unwrap();
        let trivial = SharedSubalgebra::identity(a.trivial(), a.trivial());
        let p = pushout(&a, &a, &trivial, DEFAULT_ATOM_CAP, CAP).unwrap();
        assert_eq!(p.algebra.atom_count(), 16);

        let full = SharedSubalgebra::identity(a.discrete(), a.discrete());
        let p = pushout(&a, &a, &full, DEFAULT_ATOM_CAP, CAP).unwrap();
        assert_eq!(p.algebra.atom_count(), 4);

        let halves = Subalgebra::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let shared = SharedSubalgebra::identity(halves.clone(), halves);
        let p = pushout(&a, &a, &shared, DEFAULT_ATOM_CAP, CAP).unwrap();
        let d = pushout_direct(&a, &a, &shared).unwrap();
        assert_eq!(p.algebra.atom_count(), 8);
        assert_eq!(d.pairs.len(), 8);
        assert!(p.cofactors.left.is_injective() && p.cofactors.right.is_injective());
        let swapped = Subalgebra::from_blocks(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let shared = SharedSubalgebra {
            in_left: Subalgebra::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
            in_right: swapped,
            matching: vec![1, 0],
        };
        let c = compare_pushouts(&a, &a, &shared, DEFAULT_ATOM_CAP, CAP).unwrap();
        assert!(c.holds(), "{c:?}");
        assert_eq!(c.direct_atoms, 8);
    }

    #[test]
    fn bad_matching_rejected() {
        let a = FinAlg::new(4).unwrap();
        let halves = Subalgebra::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let shared = SharedSubalgebra {
            in_left: halves.clone(),
            in_right: halves.clone(),
            matching: vec![0, 0],
        };
        assert!(matches!(pushout_direct(&a, &a, &shared), Err(Error::Structure(_))));
        let shared = SharedSubalgebra::identity(halves, a.discrete());
        assert!(matches!(
            pushout(&a, &a, &shared, DEFAULT_ATOM_CAP, CAP),
            Err(Error::Structure(_))
        ));
    }
}
