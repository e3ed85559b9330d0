use std::collections::{BTreeMap, HashSet};

use super::element::Element;
use super::partition::Subalgebra;
use crate::error::{Error, Result};

/// A finite boolean algebra, presented as the power set of its atoms, with
/// optional named elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlg {
    atom_count: usize,
    labels: BTreeMap<String, Element>,
}

impl FinAlg {
    pub fn new(atom_count: usize) -> Result<Self> {
        if atom_count == 0 {
            return Err(Error::DegenerateAlgebra);
        }
        Ok(FinAlg {
            atom_count,
            labels: BTreeMap::new(),
        })
    }

    pub fn with_label(mut self, name: impl Into<String>, x: Element) -> Result<Self> {
        self.set_label(name, x)?;
        Ok(self)
    }

    pub fn set_label(&mut self, name: impl Into<String>, x: Element) -> Result<()> {
        self.check(&x)?;
        self.labels.insert(name.into(), x);
        Ok(())
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn labels(&self) -> &BTreeMap<String, Element> {
        &self.labels
    }

    pub fn label(&self, name: &str) -> Option<&Element> {
        self.labels.get(name)
    }

    /// Looks a label up, failing with a structure error when it is missing.
    pub fn named(&self, name: &str) -> Result<&Element> {
        self.labels
            .get(name)
            .ok_or_else(|| Error::Structure(format!("no element named {name}")))
    }

    pub fn zero(&self) -> Element {
        Element::empty(self.atom_count)
    }

    pub fn one(&self) -> Element {
        Element::full(self.atom_count)
    }

    pub fn element<I: IntoIterator<Item = usize>>(&self, atoms: I) -> Result<Element> {
        Element::from_atoms(self.atom_count, atoms)
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if x.len() != self.atom_count {
            return Err(Error::InvalidElement(format!(
                "element over {} atoms used in an algebra with {}",
                x.len(),
                self.atom_count
            )));
        }
        Ok(())
    }

    pub fn check_subalgebra(&self, b: &Subalgebra) -> Result<()> {
        if b.atom_count() != self.atom_count {
            return Err(Error::InvalidPartition(format!(
                "partition of {} atoms used in an algebra with {}",
                b.atom_count(),
                self.atom_count
            )));
        }
        Ok(())
    }

    pub fn meet(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.meet(y))
    }

    pub fn join(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.join(y))
    }

    pub fn complement(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(x.complement())
    }

    pub fn is_below(&self, x: &Element, y: &Element) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.is_below(y))
    }

    pub fn discrete(&self) -> Subalgebra {
        Subalgebra::discrete(self.atom_count)
    }

    pub fn trivial(&self) -> Subalgebra {
        Subalgebra::trivial(self.atom_count)
    }

    /// Every element of the algebra, in numeric order.
    pub fn elements(&self, cap: u128) -> Result<Vec<Element>> {
        let needed = if self.atom_count >= 127 {
            u128::MAX
        } else {
            1u128 << self.atom_count
        };
        if needed > cap {
            return Err(Error::CapExceeded {
                what: "algebra elements",
                needed,
                cap,
            });
        }
        if self.atom_count <= 64 {
            return Ok((0..needed as u64)
                .map(|m| Element::from_mask(self.atom_count, m))
                .collect());
        }
        let mut v = self.discrete().elements(cap)?;
        v.sort();
        Ok(v)
    }

    pub fn generated_subalgebra<'a, I>(&self, generators: I) -> Result<Subalgebra>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let mut p = self.trivial();
        for g in generators {
            self.check(g)?;
            p = p.refined_by(g);
        }
        Ok(p)
    }

    pub fn subalgebra_elements(&self, b: &Subalgebra, cap: u128) -> Result<Vec<Element>> {
        self.check_subalgebra(b)?;
        b.elements(cap)
    }

    /// Whether a set of elements contains 0 and 1 and is closed under the
    /// boolean operations.
    pub fn is_subalgebra_set<'a, I>(&self, set: I) -> Result<bool>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let members: HashSet<&Element> = set.into_iter().collect();
        for x in &members {
            self.check(x)?;
        }
        if !members.contains(&self.zero()) || !members.contains(&self.one()) {
            return Ok(false);
        }
        for x in &members {
            if !members.contains(&x.complement()) {
                return Ok(false);
            }
            for y in &members {
                if !members.contains(&x.meet(y)) {
                    return Ok(false);
                }
            }
        }
        // Closure under meet and complement gives closure under join.
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ba::DEFAULT_ENUMERATION_CAP;

    #[test]
    fn zero_atoms_rejected() {
        assert_eq!(FinAlg::new(0), Err(Error::DegenerateAlgebra));
    }

    #[test]
    fn element_ops_check_range() {
        let a = FinAlg::new(4).unwrap();
        let x = a.element([0, 1]).unwrap();
        let y = a.element([1, 2]).unwrap();
        assert_eq!(a.meet(&x, &y).unwrap(), a.element([1]).unwrap());
        assert_eq!(a.join(&x, &y).unwrap(), a.element([0, 1, 2]).unwrap());
        assert_eq!(a.complement(&a.zero()).unwrap(), a.one());
        assert!(a.is_below(&a.element([0]).unwrap(), &x).unwrap());
        let foreign = Element::empty(5);
        assert!(matches!(a.meet(&x, &foreign), Err(Error::InvalidElement(_))));
        assert!(a.element([4]).is_err());
    }

    #[test]
    fn subalgebra_set_examples() {
        let a = FinAlg::new(4).unwrap();
        assert!(a.is_subalgebra_set([&a.zero(), &a.one()]).unwrap());
        let x = a.element([0]).unwrap();
        assert!(!a.is_subalgebra_set([&a.zero(), &x, &a.one()]).unwrap());
        let all = a.elements(DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(a.is_subalgebra_set(&all).unwrap());
    }

    #[test]
    fn generated_matches_closure_oracle() {
        let a = FinAlg::new(4).unwrap();
        let gens = [a.element([0, 1]).unwrap(), a.element([1, 2]).unwrap()];
        // Closure under the operations until fixpoint, then read atoms off.
        let mut set: HashSet<Element> = gens.iter().cloned().collect();
        set.insert(a.zero());
        set.insert(a.one());
        loop {
            let cur: Vec<Element> = set.iter().cloned().collect();
            let before = set.len();
            for x in &cur {
                set.insert(x.complement());
                for y in &cur {
                    set.insert(x.meet(y));
                    set.insert(x.join(y));
                }
            }
            if set.len() == before {
                break;
            }
        }
        let atoms = set
            .iter()
            .filter(|x| !x.is_zero() && set.iter().all(|y| y.is_zero() || !y.is_strictly_below(x)))
            .count();
        let b = a.generated_subalgebra(&gens).unwrap();
        assert_eq!(b.block_count(), atoms);
        assert!(b.is_discrete());
    }
}
