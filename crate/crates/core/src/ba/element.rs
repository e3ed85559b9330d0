use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// An element of a finite boolean algebra, stored as the dense bit-vector of
/// the atoms below it.
///
/// Bits past `len` are always zero, so derived equality and hashing agree
/// with set equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    len: u32,
    words: SmallVec<[u64; 2]>,
}

impl Element {
    pub fn empty(len: usize) -> Self {
        Element {
            len: len as u32,
            words: SmallVec::from_elem(0, words_for(len)),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut e = Element {
            len: len as u32,
            words: SmallVec::from_elem(!0, words_for(len)),
        };
        e.trim();
        e
    }

    pub fn singleton(len: usize, atom: usize) -> Result<Self> {
        let mut e = Element::empty(len);
        e.try_insert(atom)?;
        Ok(e)
    }

    pub fn from_atoms<I: IntoIterator<Item = usize>>(len: usize, atoms: I) -> Result<Self> {
        let mut e = Element::empty(len);
        for a in atoms {
            e.try_insert(a)?;
        }
        Ok(e)
    }

    /// Builds an element of an algebra with at most 64 atoms from a bitmask.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "from_mask needs at most 64 atoms");
        let mut e = Element::empty(len);
        if len > 0 {
            e.words[0] = mask;
        }
        e.trim();
        e
    }

    /// The bitmask of an element of an algebra with at most 64 atoms.
    pub fn mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        let rem = self.len as usize % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Number of atoms of the ambient algebra.
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn try_insert(&mut self, atom: usize) -> Result<()> {
        if atom >= self.len() {
            return Err(Error::InvalidElement(format!(
                "atom {atom} outside 0..{}",
                self.len
            )));
        }
        self.words[atom / WORD] |= 1 << (atom % WORD);
        Ok(())
    }

    pub fn insert(&mut self, atom: usize) {
        debug_assert!(atom < self.len());
        self.words[atom / WORD] |= 1 << (atom % WORD);
    }

    pub fn contains(&self, atom: usize) -> bool {
        atom < self.len() && self.words[atom / WORD] >> (atom % WORD) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        *self == Element::full(self.len())
    }

    pub fn atoms(&self) -> Atoms<'_> {
        Atoms {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    fn zip_with(&self, other: &Element, f: impl Fn(u64, u64) -> u64) -> Element {
        debug_assert_eq!(self.len, other.len, "elements of different algebras");
        Element {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn meet(&self, other: &Element) -> Element {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn join(&self, other: &Element) -> Element {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn minus(&self, other: &Element) -> Element {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn sym_diff(&self, other: &Element) -> Element {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn complement(&self) -> Element {
        let mut e = Element {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        e.trim();
        e
    }

    pub fn meet_assign(&mut self, other: &Element) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn join_assign(&mut self, other: &Element) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `self ≤ other` in the subset order.
    pub fn is_below(&self, other: &Element) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_strictly_below(&self, other: &Element) -> bool {
        self.is_below(other) && self != other
    }

    pub fn intersects(&self, other: &Element) -> bool {
        self.words.iter().zip(&other.words).any(|(&a, &b)| a & b != 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.atoms().collect()
    }
}

/// Numeric order: elements compare as the binary numbers spelled by their
/// atom bits. This is the enumeration order used wherever a deterministic
/// well-order is needed.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms()).finish()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub struct Atoms<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Atoms<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Serialized as its sorted atom list; the atom count comes from context.
impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.atoms())
    }
}

/// Deserialization helper: an atom list that still needs an atom count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AtomList(pub Vec<usize>);

impl AtomList {
    pub fn into_element(self, len: usize) -> Result<Element> {
        Element::from_atoms(len, self.0)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(_: D) -> std::result::Result<Self, D::Error> {
        Err(serde::de::Error::custom(
            "elements deserialize through AtomList with a known atom count",
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: usize, atoms: &[usize]) -> Element {
        Element::from_atoms(n, atoms.iter().copied()).unwrap()
    }

    #[test]
    fn basic_ops_four_atoms() {
        assert_eq!(el(4, &[0, 1]).meet(&el(4, &[1, 2])), el(4, &[1]));
        assert_eq!(Element::empty(4).complement(), el(4, &[0, 1, 2, 3]));
        assert!(el(4, &[0]).is_below(&el(4, &[0, 1])));
        assert!(!el(4, &[2]).is_below(&el(4, &[0, 1])));
    }

    #[test]
    fn out_of_range_atom_rejected() {
        assert!(matches!(
            Element::from_atoms(4, [4]),
            Err(Error::InvalidElement(_))
        ));
    }

    #[test]
    fn multiword_complement_is_trimmed() {
        let e = Element::full(130);
        assert_eq!(e.count(), 130);
        assert!(e.complement().is_zero());
        let x = el(130, &[0, 64, 129]);
        assert_eq!(x.complement().count(), 127);
        assert_eq!(x.to_vec(), vec![0, 64, 129]);
    }

    #[test]
    fn numeric_order_matches_masks() {
        for a in 0u64..16 {
            for b in 0u64..16 {
                assert_eq!(
                    Element::from_mask(4, a).cmp(&Element::from_mask(4, b)),
                    a.cmp(&b)
                );
            }
        }
    }
}
