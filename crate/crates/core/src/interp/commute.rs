use serde::Serialize;

use crate::ba::{Element, SubOrder, Subalgebra};

/// A comparable pair `lower ≤ upper`, one element from each suborder, with
/// no common element in between.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommuteWitness {
    pub lower: Element,
    pub upper: Element,
    /// Whether `lower` was drawn from the first of the two suborders.
    pub lower_from_first: bool,
}

fn has_interpolant(common: &[&Element], lower: &Element, upper: &Element) -> bool {
    common.iter().any(|z| lower.is_below(z) && z.is_below(upper))
}

/// Literal commutation check: every comparable cross pair, in both
/// directions, has an interpolant in the intersection.
pub fn commute_witness(s: &SubOrder, t: &SubOrder) -> Option<CommuteWitness> {
    let common: Vec<&Element> = s.iter().filter(|z| t.contains(z)).collect();
    for x in s {
        for y in t {
            if x.is_below(y) && !has_interpolant(&common, x, y) {
                return Some(CommuteWitness {
                    lower: x.clone(),
                    upper: y.clone(),
                    lower_from_first: true,
                });
            }
            if y.is_below(x) && !has_interpolant(&common, y, x) {
                return Some(CommuteWitness {
                    lower: y.clone(),
                    upper: x.clone(),
                    lower_from_first: false,
                });
            }
        }
    }
    None
}

pub fn commutes(s: &SubOrder, t: &SubOrder) -> bool {
    commute_witness(s, t).is_none()
}

/// Commutation of two subalgebras read off their partitions.
///
/// Within each block of the intersection, every block of `s` must meet every
/// block of `t`. A disjoint pair `(p, q)` inside one such block gives the
/// witness `p ≤ −q`.
pub fn subalgebra_commute_witness(s: &Subalgebra, t: &Subalgebra) -> Option<CommuteWitness> {
    let common = s.intersection(t);
    let n = s.atom_count();
    let (ks, kt) = (s.block_count(), t.block_count());
    let mut meets = vec![false; ks * kt];
    for a in 0..n {
        meets[s.block_of(a) * kt + t.block_of(a)] = true;
    }
    let s_home: Vec<usize> = {
        let mut h = vec![0; ks];
        for a in 0..n {
            h[s.block_of(a)] = common.block_of(a);
        }
        h
    };
    let t_home: Vec<usize> = {
        let mut h = vec![0; kt];
        for a in 0..n {
            h[t.block_of(a)] = common.block_of(a);
        }
        h
    };
    for p in 0..ks {
        for q in 0..kt {
            if s_home[p] == t_home[q] && !meets[p * kt + q] {
                return Some(CommuteWitness {
                    lower: block(s, p),
                    upper: block(t, q).complement(),
                    lower_from_first: true,
                });
            }
        }
    }
    None
}

fn block(b: &Subalgebra, id: usize) -> Element {
    let mut e = Element::empty(b.atom_count());
    for a in 0..b.atom_count() {
        if b.block_of(a) == id {
            e.insert(a);
        }
    }
    e
}

pub fn subalgebras_commute(s: &Subalgebra, t: &Subalgebra) -> bool {
    subalgebra_commute_witness(s, t).is_none()
}
