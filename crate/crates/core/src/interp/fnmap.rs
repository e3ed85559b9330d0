use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::ba::{AtomList, Element, FinAlg};
use crate::error::{Error, Result};

/// A map from elements to finite sets of elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FnMap {
    map: BTreeMap<Element, BTreeSet<Element>>,
}

/// Why a map fails to interpolate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FnViolation {
    /// The map has no value at this element.
    Missing(Element),
    /// `lower ≤ upper` but `f(lower) ∩ f(upper)` has nothing in between.
    NoInterpolant { lower: Element, upper: Element },
}

/// Anything that can hand out the finite set attached to an element.
pub trait Interpolator {
    fn image(&self, x: &Element) -> Result<BTreeSet<Element>>;
}

impl FnMap {
    pub fn new() -> Self {
        FnMap::default()
    }

    pub fn insert(&mut self, x: Element, image: BTreeSet<Element>) {
        self.map.insert(x, image);
    }

    pub fn get(&self, x: &Element) -> Option<&BTreeSet<Element>> {
        self.map.get(x)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, &BTreeSet<Element>)> + '_ {
        self.map.iter()
    }

    /// Array of `[element, [elements…]]` pairs.
    pub fn to_json(&self) -> Result<String> {
        let rows: Vec<(&Element, Vec<&Element>)> =
            self.map.iter().map(|(k, v)| (k, v.iter().collect())).collect();
        Ok(serde_json::to_string(&rows)?)
    }

    pub fn from_json(text: &str, atom_count: usize) -> Result<Self> {
        let rows: Vec<(AtomList, Vec<AtomList>)> = serde_json::from_str(text)?;
        let mut f = FnMap::new();
        for (k, vs) in rows {
            let image = vs
                .into_iter()
                .map(|v| v.into_element(atom_count))
                .collect::<Result<_>>()?;
            f.insert(k.into_element(atom_count)?, image);
        }
        Ok(f)
    }
}

impl Interpolator for FnMap {
    fn image(&self, x: &Element) -> Result<BTreeSet<Element>> {
        self.map
            .get(x)
            .cloned()
            .ok_or_else(|| Error::Structure(format!("map has no value at {x}")))
    }
}

fn interpolates(fx: &BTreeSet<Element>, fy: &BTreeSet<Element>, x: &Element, y: &Element) -> bool {
    let (small, large) = if fx.len() <= fy.len() { (fx, fy) } else { (fy, fx) };
    small
        .iter()
        .any(|z| x.is_below(z) && z.is_below(y) && large.contains(z))
}

/// Checks the interpolation property over the map's own domain.
pub fn interpolation_violation(f: &FnMap) -> Option<FnViolation> {
    for (x, fx) in f.iter() {
        for (y, fy) in f.iter() {
            if x.is_below(y) && !interpolates(fx, fy, x, y) {
                return Some(FnViolation::NoInterpolant {
                    lower: x.clone(),
                    upper: y.clone(),
                });
            }
        }
    }
    None
}

/// Checks that `f` is total on the algebra and interpolating.
pub fn verify_fn_map(a: &FinAlg, f: &FnMap, cap: u128) -> Result<Option<FnViolation>> {
    for x in a.elements(cap)? {
        if f.get(&x).is_none() {
            return Ok(Some(FnViolation::Missing(x)));
        }
    }
    for x in f.map.keys() {
        a.check(x)?;
    }
    Ok(interpolation_violation(f))
}

/// Checks interpolation on the given comparable pairs only.
pub fn verify_pairs<F: Interpolator>(
    f: &F,
    pairs: &[(Element, Element)],
) -> Result<Option<FnViolation>> {
    for (x, y) in pairs {
        if !x.is_below(y) {
            return Err(Error::Structure(format!("{x} is not below {y}")));
        }
        if !interpolates(&f.image(x)?, &f.image(y)?, x, y) {
            return Ok(Some(FnViolation::NoInterpolant {
                lower: x.clone(),
                upper: y.clone(),
            }));
        }
    }
    Ok(None)
}

/// A pair `(x, y)` with `y ∈ f(x)` but `f(y) ⊄ f(x)`.
pub fn transitivity_violation(f: &FnMap) -> Option<(Element, Element)> {
    for (x, fx) in f.iter() {
        for y in fx {
            match f.get(y) {
                Some(fy) if fy.is_subset(fx) => {}
                _ => return Some((x.clone(), y.clone())),
            }
        }
    }
    None
}
