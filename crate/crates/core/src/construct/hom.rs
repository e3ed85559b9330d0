use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::ba::{Element, FinAlg};
use crate::error::{Error, Result};

/// A boolean homomorphism between finite algebras, given by the images of
/// the source atoms as atom lists. The images are pairwise disjoint and
/// join to 1, so storage is linear in the target size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    target_atoms: usize,
    images: Vec<Vec<u32>>,
}

impl Hom {
    pub fn from_atom_images(target_atoms: usize, images: Vec<Element>) -> Result<Self> {
        for (a, img) in images.iter().enumerate() {
            if img.len() != target_atoms {
                return Err(Error::InvalidElement(format!("image of atom {a} has the wrong size")));
            }
        }
        let lists = images
            .iter()
            .map(|img| img.atoms().map(|t| t as u32).collect())
            .collect();
        Hom::from_atom_lists(target_atoms, lists)
    }

    pub fn from_atom_lists(target_atoms: usize, images: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = vec![false; target_atoms];
        for (a, img) in images.iter().enumerate() {
            for &t in img {
                match seen.get_mut(t as usize) {
                    None => {
                        return Err(Error::InvalidElement(format!("image of atom {a} names atom {t}")));
                    }
                    Some(true) => {
                        return Err(Error::Structure(format!("image of atom {a} overlaps another image")));
                    }
                    Some(s) => *s = true,
                }
            }
        }
        if seen.contains(&false) {
            return Err(Error::Structure("atom images do not cover the target".into()));
        }
        Ok(Hom {
            target_atoms,
            images,
        })
    }

    pub fn source_atoms(&self) -> usize {
        self.images.len()
    }

    pub fn target_atoms(&self) -> usize {
        self.target_atoms
    }

    pub fn atom_image(&self, atom: usize) -> Element {
        let mut out = Element::empty(self.target_atoms);
        for &t in &self.images[atom] {
            out.insert(t as usize);
        }
        out
    }

    pub fn apply(&self, x: &Element) -> Element {
        debug_assert_eq!(x.len(), self.images.len());
        let mut out = Element::empty(self.target_atoms);
        for a in x.atoms() {
            for &t in &self.images[a] {
                out.insert(t as usize);
            }
        }
        out
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().all(|i| !i.is_empty())
    }

    pub fn is_surjective(&self) -> bool {
        self.images.iter().all(|i| i.len() <= 1)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Hom) -> Result<Hom> {
        if next.source_atoms() != self.target_atoms {
            return Err(Error::Structure("composing maps with mismatched algebras".into()));
        }
        let lists = self
            .images
            .iter()
            .map(|img| img.iter().flat_map(|&t| next.images[t as usize].iter().copied()).collect())
            .collect();
        Hom::from_atom_lists(next.target_atoms, lists)
    }

    /// Checks preservation of meet, join, complement, 0 and 1 on every pair
    /// of source elements. Used as an independent check of the atom-image
    /// representation.
    pub fn preserves_operations(&self, source: &FinAlg, cap: u128) -> Result<bool> {
        let elements = source.elements(cap)?;
        let zero_ok = self.apply(&source.zero()).is_zero();
        let one_ok = self.apply(&source.one()).is_one();
        if !zero_ok || !one_ok {
            return Ok(false);
        }
        for x in &elements {
            let fx = self.apply(x);
            if self.apply(&x.complement()) != fx.complement() {
                return Ok(false);
            }
            for y in &elements {
                let fy = self.apply(y);
                if self.apply(&x.meet(y)) != fx.meet(&fy) || self.apply(&x.join(y)) != fx.join(&fy) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Serialized as an array of `[source atom set, target set]` pairs, one per
/// source atom.
impl Serialize for Hom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.images.len()))?;
        for (a, img) in self.images.iter().enumerate() {
            seq.serialize_element(&([a], img))?;
        }
        seq.end()
    }
}

/// The two cofactor embeddings into a coproduct or pushout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofactorMaps {
    pub left: Hom,
    pub right: Hom,
}

/// A surjection onto a quotient, with the generators of its kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientMap {
    pub map: Hom,
    pub kernel_generators: Vec<Element>,
    /// Source atom behind each target atom.
    pub surviving: Vec<usize>,
}

impl QuotientMap {
    pub fn apply(&self, x: &Element) -> Element {
        self.map.apply(x)
    }

    /// The largest source element mapping onto `y`.
    pub fn lift(&self, y: &Element) -> Element {
        let mut out = Element::empty(self.map.source_atoms());
        for t in y.atoms() {
            out.insert(self.surviving[t]);
        }
        let kernel_top = self.kernel_top();
        out.join(&kernel_top)
    }

    /// The largest element of the kernel.
    pub fn kernel_top(&self) -> Element {
        let mut out = Element::empty(self.map.source_atoms());
        for a in 0..self.map.source_atoms() {
            if self.map.images[a].is_empty() {
                out.insert(a);
            }
        }
        out
    }
}
