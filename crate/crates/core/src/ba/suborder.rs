use std::collections::BTreeSet;

use super::element::Element;
use super::partition::Subalgebra;
use crate::error::{Error, Result};

/// An arbitrary finite set of elements of one ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubOrder {
    atom_count: usize,
    elements: BTreeSet<Element>,
}

impl SubOrder {
    pub fn new(atom_count: usize) -> Self {
        SubOrder {
            atom_count,
            elements: BTreeSet::new(),
        }
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(atom_count: usize, it: I) -> Result<Self> {
        let mut s = SubOrder::new(atom_count);
        for x in it {
            s.insert(x)?;
        }
        Ok(s)
    }

    pub fn from_subalgebra(b: &Subalgebra, cap: u128) -> Result<Self> {
        Ok(SubOrder {
            atom_count: b.atom_count(),
            elements: b.elements(cap)?.into_iter().collect(),
        })
    }

    pub fn insert(&mut self, x: Element) -> Result<bool> {
        if x.len() != self.atom_count {
            return Err(Error::InvalidElement(format!(
                "element over {} atoms inserted into a suborder over {}",
                x.len(),
                self.atom_count
            )));
        }
        Ok(self.elements.insert(x))
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.elements.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> + '_ {
        self.elements.iter()
    }

    pub fn intersection(&self, other: &SubOrder) -> SubOrder {
        SubOrder {
            atom_count: self.atom_count,
            elements: self.elements.intersection(&other.elements).cloned().collect(),
        }
    }

    pub fn union(&self, other: &SubOrder) -> SubOrder {
        SubOrder {
            atom_count: self.atom_count,
            elements: self.elements.union(&other.elements).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &SubOrder) -> bool {
        self.elements.is_subset(&other.elements)
    }
}

impl<'a> IntoIterator for &'a SubOrder {
    type Item = &'a Element;
    type IntoIter = std::collections::btree_set::Iter<'a, Element>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}
