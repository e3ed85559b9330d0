use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::element::Element;
use crate::error::{Error, Result};

/// Default cap on the number of elements any enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 20;

/// A subalgebra of a finite boolean algebra, stored as the partition of the
/// ambient atoms into its blocks. Its elements are exactly the unions of
/// blocks.
///
/// Block ids are canonical: blocks are numbered in order of their least
/// atom, so two equal partitions are equal values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subalgebra {
    block_of: Vec<u32>,
    block_count: u32,
}

/// Serialized as its list of blocks.
impl Serialize for Subalgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

impl Subalgebra {
    /// The full algebra: every atom is its own block.
    pub fn discrete(atoms: usize) -> Self {
        Subalgebra {
            block_of: (0..atoms as u32).collect(),
            block_count: atoms as u32,
        }
    }

    /// The two-element subalgebra {0, 1}.
    pub fn trivial(atoms: usize) -> Self {
        Subalgebra {
            block_of: vec![0; atoms],
            block_count: (atoms > 0) as u32,
        }
    }

    /// Canonicalizes an arbitrary labelling of atoms by block.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut ids: HashMap<T, u32> = HashMap::new();
        let mut block_of = Vec::with_capacity(labels.len());
        for &l in labels {
            let next = ids.len() as u32;
            block_of.push(*ids.entry(l).or_insert(next));
        }
        Subalgebra {
            block_count: ids.len() as u32,
            block_of,
        }
    }

    fn from_dense_labels(labels: &[u32], label_count: usize) -> Self {
        let mut remap = vec![u32::MAX; label_count];
        let mut next = 0u32;
        let block_of = labels
            .iter()
            .map(|&l| {
                let r = &mut remap[l as usize];
                if *r == u32::MAX {
                    *r = next;
                    next += 1;
                }
                *r
            })
            .collect();
        Subalgebra {
            block_of,
            block_count: next,
        }
    }

    pub fn from_blocks(atoms: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![u32::MAX; atoms];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &a in block {
                if a >= atoms {
                    return Err(Error::InvalidPartition(format!(
                        "atom {a} outside 0..{atoms}"
                    )));
                }
                if label[a] != u32::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "atom {a} appears in two blocks"
                    )));
                }
                label[a] = b as u32;
            }
        }
        if let Some(a) = label.iter().position(|&l| l == u32::MAX) {
            return Err(Error::InvalidPartition(format!("atom {a} is in no block")));
        }
        Ok(Subalgebra::from_dense_labels(&label, blocks.len()))
    }

    /// The coarsest partition in which every generator is a union of blocks.
    pub fn generated<'a, I>(atoms: usize, generators: I) -> Self
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let mut p = Subalgebra::trivial(atoms);
        for g in generators {
            p = p.refined_by(g);
        }
        p
    }

    /// Adds one generator: splits every block by membership in `x`.
    pub fn refined_by(&self, x: &Element) -> Subalgebra {
        debug_assert_eq!(x.len(), self.atom_count());
        let labels: Vec<u32> = self
            .block_of
            .iter()
            .enumerate()
            .map(|(a, &b)| 2 * b + x.contains(a) as u32)
            .collect();
        Subalgebra::from_dense_labels(&labels, 2 * self.block_count as usize)
    }

    /// The subalgebra generated by the union of `self` and `other`
    /// (common refinement of the partitions).
    pub fn generated_with(&self, other: &Subalgebra) -> Subalgebra {
        let k = other.block_count as usize;
        let labels: Vec<u64> = self
            .block_of
            .iter()
            .zip(&other.block_of)
            .map(|(&a, &b)| a as u64 * k as u64 + b as u64)
            .collect();
        Subalgebra::from_labels(&labels)
    }

    /// The intersection of two subalgebras (finest common coarsening).
    pub fn intersection(&self, other: &Subalgebra) -> Subalgebra {
        let n = self.atom_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for part in [self, other] {
            let mut first = vec![usize::MAX; part.block_count as usize];
            for a in 0..n {
                let b = part.block_of[a] as usize;
                if first[b] == usize::MAX {
                    first[b] = a;
                } else {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, first[b]));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|a| find(&mut parent, a)).collect();
        Subalgebra::from_labels(&roots)
    }

    pub fn atom_count(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.block_count as usize
    }

    pub fn block_of(&self, atom: usize) -> usize {
        self.block_of[atom] as usize
    }

    pub fn block_labels(&self) -> &[u32] {
        &self.block_of
    }

    pub fn is_discrete(&self) -> bool {
        self.block_count as usize == self.atom_count()
    }

    pub fn is_trivial(&self) -> bool {
        self.block_count <= 1
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (a, &b) in self.block_of.iter().enumerate() {
            out[b as usize].push(a);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.block_count()];
        for &b in &self.block_of {
            out[b as usize] += 1;
        }
        out
    }

    pub fn block_elements(&self) -> Vec<Element> {
        let n = self.atom_count();
        let mut out = vec![Element::empty(n); self.block_count()];
        for (a, &b) in self.block_of.iter().enumerate() {
            out[b as usize].insert(a);
        }
        out
    }

    /// Number of elements, `2^blocks`, saturating.
    pub fn element_count(&self) -> u128 {
        if self.block_count >= 127 {
            u128::MAX
        } else {
            1u128 << self.block_count
        }
    }

    /// Marks, per block, whether `x` meets it.
    fn touched(&self, x: &Element) -> Vec<bool> {
        let mut t = vec![false; self.block_count()];
        for a in x.atoms() {
            t[self.block_of[a] as usize] = true;
        }
        t
    }

    fn union_of(&self, chosen: &[bool]) -> Element {
        let mut e = Element::empty(self.atom_count());
        for (a, &b) in self.block_of.iter().enumerate() {
            if chosen[b as usize] {
                e.insert(a);
            }
        }
        e
    }

    /// The element whose blocks are selected by the bits of `mask`.
    pub fn element_from_mask(&self, mask: u128) -> Element {
        let chosen: Vec<bool> = (0..self.block_count())
            .map(|b| b < 128 && mask >> b & 1 == 1)
            .collect();
        self.union_of(&chosen)
    }

    /// Whether `x` is a union of blocks.
    pub fn contains(&self, x: &Element) -> bool {
        let mut state = vec![0u8; self.block_count()];
        for (a, &b) in self.block_of.iter().enumerate() {
            let bit = 1 + x.contains(a) as u8;
            let s = &mut state[b as usize];
            if *s == 0 {
                *s = bit;
            } else if *s != bit {
                return false;
            }
        }
        true
    }

    /// Least element of this subalgebra above `x`: the union of the blocks
    /// meeting `x`.
    pub fn proj_up(&self, x: &Element) -> Element {
        self.union_of(&self.touched(x))
    }

    /// Greatest element of this subalgebra below `x`: the union of the
    /// blocks contained in `x`.
    pub fn proj_down(&self, x: &Element) -> Element {
        let outside = self.touched(&x.complement());
        let inside: Vec<bool> = outside.iter().map(|&t| !t).collect();
        self.union_of(&inside)
    }

    /// `self ⊆ other` as element sets, i.e. `other` refines `self`.
    pub fn is_subalgebra_of(&self, other: &Subalgebra) -> bool {
        let mut image = vec![u32::MAX; other.block_count()];
        for (a, &ob) in other.block_of.iter().enumerate() {
            let sb = self.block_of[a];
            let slot = &mut image[ob as usize];
            if *slot == u32::MAX {
                *slot = sb;
            } else if *slot != sb {
                return false;
            }
        }
        true
    }

    /// All `2^blocks` elements, in block-mask order.
    pub fn elements(&self, cap: u128) -> Result<Vec<Element>> {
        let needed = self.element_count();
        if needed > cap {
            return Err(Error::CapExceeded {
                what: "subalgebra elements",
                needed,
                cap,
            });
        }
        let blocks = self.block_elements();
        let mut out = Vec::with_capacity(needed as usize);
        out.push(Element::empty(self.atom_count()));
        for b in &blocks {
            let prev = out.len();
            for i in 0..prev {
                let e = out[i].join(b);
                out.push(e);
            }
        }
        Ok(out)
    }

    /// Lexicographic order on the sorted block lists; used for tie-breaking.
    pub fn cmp_blocks(&self, other: &Subalgebra) -> Ordering {
        self.blocks().cmp(&other.blocks())
    }
}

impl fmt::Debug for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subalgebra{:?}", self.blocks())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: usize, atoms: &[usize]) -> Element {
        Element::from_atoms(n, atoms.iter().copied()).unwrap()
    }

    fn sub(n: usize, blocks: &[&[usize]]) -> Subalgebra {
        let b: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        Subalgebra::from_blocks(n, &b).unwrap()
    }

    #[test]
    fn generation_examples() {
        assert_eq!(Subalgebra::generated(4, []), sub(4, &[&[0, 1, 2, 3]]));
        assert_eq!(
            Subalgebra::generated(4, [&el(4, &[0, 1])]),
            sub(4, &[&[0, 1], &[2, 3]])
        );
        assert_eq!(
            Subalgebra::generated(4, [&el(4, &[0, 1]), &el(4, &[1, 2])]),
            Subalgebra::discrete(4)
        );
    }

    #[test]
    fn partition_validation() {
        assert!(Subalgebra::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Subalgebra::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Subalgebra::from_blocks(3, &[vec![0, 1, 2], vec![]]).is_err());
        assert!(Subalgebra::from_blocks(3, &[vec![0, 3], vec![1, 2]]).is_err());
    }

    #[test]
    fn projections() {
        let b = sub(4, &[&[0, 1], &[2, 3]]);
        assert_eq!(b.proj_up(&el(4, &[0])), el(4, &[0, 1]));
        assert_eq!(b.proj_down(&el(4, &[0])), el(4, &[]));
        assert_eq!(b.proj_up(&el(4, &[0, 2])), el(4, &[0, 1, 2, 3]));
        assert_eq!(b.proj_down(&el(4, &[0, 1, 2])), el(4, &[0, 1]));
    }

    #[test]
    fn intersection_and_join() {
        let s = sub(4, &[&[0], &[1], &[2, 3]]);
        let t = sub(4, &[&[0, 1], &[2], &[3]]);
        assert_eq!(s.intersection(&t), sub(4, &[&[0, 1], &[2, 3]]));
        assert_eq!(s.generated_with(&t), Subalgebra::discrete(4));
        assert!(s.intersection(&t).is_subalgebra_of(&s));
        assert!(!s.is_subalgebra_of(&t));
    }

    #[test]
    fn elements_of_two_block_subalgebra() {
        let b = sub(4, &[&[0, 1], &[2, 3]]);
        let mut els = b.elements(DEFAULT_ENUMERATION_CAP).unwrap();
        els.sort();
        assert_eq!(
            els,
            vec![el(4, &[]), el(4, &[0, 1]), el(4, &[2, 3]), el(4, &[0, 1, 2, 3])]
        );
        assert_eq!(Subalgebra::discrete(4).elements(1 << 20).unwrap().len(), 16);
        assert!(matches!(
            Subalgebra::discrete(21).elements(DEFAULT_ENUMERATION_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }
}
