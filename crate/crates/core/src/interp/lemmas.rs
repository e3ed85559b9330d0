//! Checkers that evaluate both sides of the calculus identities on concrete
//! inputs. Each returns the evaluated sides or a witness instead of a bare
//! boolean so failing cases can be reported.

use serde::Serialize;

use super::commute::{commute_witness, CommuteWitness};
use super::proj::{proj_up_suborder, relative_completeness_gap, Direction};
use crate::ba::{Element, FinAlg, SubOrder, Subalgebra};
use crate::error::{Error, Result};

/// The three conditions that must agree for a subalgebra `s` against a
/// subalgebra `b`: commutation, and closure of `s` under both projections
/// into `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommprojSides {
    pub commute: bool,
    pub up_closed: bool,
    pub down_closed: bool,
}

impl CommprojSides {
    pub fn agree(&self) -> bool {
        self.commute == self.up_closed && self.up_closed == self.down_closed
    }
}

pub fn check_commproj(a: &FinAlg, b: &Subalgebra, s: &Subalgebra, cap: u128) -> Result<CommprojSides> {
    a.check_subalgebra(b)?;
    a.check_subalgebra(s)?;
    let s_elems = SubOrder::from_subalgebra(s, cap)?;
    let b_elems = SubOrder::from_subalgebra(b, cap)?;
    let commute = commute_witness(&s_elems, &b_elems).is_none();
    let up_closed = s_elems.iter().all(|x| s_elems.contains(&b.proj_up(x)));
    let down_closed = s_elems.iter().all(|x| s_elems.contains(&b.proj_down(x)));
    Ok(CommprojSides {
        commute,
        up_closed,
        down_closed,
    })
}

/// `proj_up(b, x ∧ y) = x ∧ proj_up(b, y)` for `x` in `b`.
pub fn check_rcmeet(a: &FinAlg, b: &Subalgebra, x: &Element, y: &Element) -> Result<bool> {
    a.check_subalgebra(b)?;
    a.check(x)?;
    a.check(y)?;
    if !b.contains(x) {
        return Err(Error::Structure(format!("{x} is not in the subalgebra")));
    }
    Ok(b.proj_up(&x.meet(y)) == x.meet(&b.proj_up(y)))
}

/// Outcome of a check whose hypotheses are themselves data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Conditional<W> {
    Holds,
    /// The hypotheses failed; nothing was claimed.
    Inapplicable(String),
    Fails(W),
}

impl<W> Conditional<W> {
    pub fn is_violation(&self) -> bool {
        matches!(self, Conditional::Fails(_))
    }

    pub fn is_applicable(&self) -> bool {
        !matches!(self, Conditional::Inapplicable(_))
    }
}

fn union_all(atom_count: usize, family: &[SubOrder]) -> SubOrder {
    family
        .iter()
        .fold(SubOrder::new(atom_count), |acc, s| acc.union(s))
}

/// If every member of `left` commutes with every member of `right`, the two
/// unions commute.
pub fn check_communion(
    atom_count: usize,
    left: &[SubOrder],
    right: &[SubOrder],
) -> Conditional<CommuteWitness> {
    for (i, s) in left.iter().enumerate() {
        for (j, t) in right.iter().enumerate() {
            if commute_witness(s, t).is_some() {
                return Conditional::Inapplicable(format!("members {i} and {j} do not commute"));
            }
        }
    }
    match commute_witness(&union_all(atom_count, left), &union_all(atom_count, right)) {
        None => Conditional::Holds,
        Some(w) => Conditional::Fails(w),
    }
}

/// A point where the projection into `t` differs from the projection into
/// `s ∩ t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictWitness {
    pub x: Element,
    pub into_other: Option<Element>,
    pub into_common: Element,
}

/// For commuting `s`, `t` with `s ∩ t` relatively complete in `s`: on
/// elements of `s`, projecting into `t` agrees with projecting into `s ∩ t`.
pub fn check_projrestrict(s: &SubOrder, t: &SubOrder) -> Conditional<RestrictWitness> {
    if commute_witness(s, t).is_some() {
        return Conditional::Inapplicable("the suborders do not commute".into());
    }
    let common = s.intersection(t);
    if relative_completeness_gap(&common, s).is_some() {
        return Conditional::Inapplicable("the intersection is not relatively complete".into());
    }
    for x in s {
        if let Some(into_common) = proj_up_suborder(&common, x) {
            let into_other = proj_up_suborder(t, x);
            if into_other.as_ref() != Some(&into_common) {
                return Conditional::Fails(RestrictWitness {
                    x: x.clone(),
                    into_other,
                    into_common,
                });
            }
        }
    }
    Conditional::Holds
}

/// If `s` is relatively complete in `ambient` and `s ⊆ t ⊆ ambient`, then
/// `s` is relatively complete in `t`.
pub fn check_rcdown(
    s: &SubOrder,
    t: &SubOrder,
    ambient: &[Element],
) -> Conditional<(Element, Direction)> {
    if !s.is_subset(t) || !t.iter().all(|x| ambient.contains(x)) {
        return Conditional::Inapplicable("the suborders are not nested".into());
    }
    if relative_completeness_gap(s, ambient).is_some() {
        return Conditional::Inapplicable("not relatively complete in the ambient order".into());
    }
    match relative_completeness_gap(s, t) {
        None => Conditional::Holds,
        Some(w) => Conditional::Fails(w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ba::DEFAULT_ENUMERATION_CAP;

    const CAP: u128 = DEFAULT_ENUMERATION_CAP;

    fn sub(n: usize, blocks: &[&[usize]]) -> Subalgebra {
        let b: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        Subalgebra::from_blocks(n, &b).unwrap()
    }

    #[test]
    fn commproj_sides() {
        let a = FinAlg::new(3).unwrap();
        let s = sub(3, &[&[0], &[1, 2]]);
        let t = sub(3, &[&[0, 1], &[2]]);
        let sides = check_commproj(&a, &t, &s, CAP).unwrap();
        assert_eq!(
            sides,
            CommprojSides {
                commute: false,
                up_closed: false,
                down_closed: false
            }
        );
        let inside = check_commproj(&a, &a.discrete(), &s, CAP).unwrap();
        assert!(inside.commute && inside.up_closed && inside.down_closed);
    }

    #[test]
    fn rcmeet_examples() {
        let a = FinAlg::new(4).unwrap();
        let b = sub(4, &[&[0, 1], &[2, 3]]);
        let x = a.element([0, 1]).unwrap();
        let y = a.element([0, 2]).unwrap();
        assert_eq!(b.proj_up(&y), a.one());
        assert_eq!(b.proj_up(&x.meet(&y)), x);
        assert!(check_rcmeet(&a, &b, &x, &y).unwrap());
        assert!(check_rcmeet(&a, &b, &a.one(), &y).unwrap());
        assert!(check_rcmeet(&a, &b, &a.element([0]).unwrap(), &y).is_err());
    }

    #[test]
    fn communion_of_singletons_is_commutation() {
        let s = SubOrder::from_subalgebra(&sub(4, &[&[0], &[1], &[2, 3]]), CAP).unwrap();
        let t = SubOrder::from_subalgebra(&sub(4, &[&[0, 1], &[2], &[3]]), CAP).unwrap();
        assert_eq!(check_communion(4, &[s.clone()], &[t.clone()]), Conditional::Holds);
        let u = SubOrder::from_subalgebra(&sub(4, &[&[0, 2], &[1, 3]]), CAP).unwrap();
        assert!(!check_communion(4, &[s, u], &[t]).is_applicable());
    }
}
