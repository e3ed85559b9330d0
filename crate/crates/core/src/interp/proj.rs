use serde::Serialize;

use crate::ba::{Element, FinAlg, SubOrder, Subalgebra};
use crate::error::Result;

/// Which of the two projections is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Direction::Up => '+',
            Direction::Down => '-',
        }
    }
}

pub fn proj_up(a: &FinAlg, b: &Subalgebra, x: &Element) -> Result<Element> {
    a.check_subalgebra(b)?;
    a.check(x)?;
    Ok(b.proj_up(x))
}

pub fn proj_down(a: &FinAlg, b: &Subalgebra, x: &Element) -> Result<Element> {
    a.check_subalgebra(b)?;
    a.check(x)?;
    Ok(b.proj_down(x))
}

pub fn proj_subalgebra(b: &Subalgebra, x: &Element, dir: Direction) -> Element {
    match dir {
        Direction::Up => b.proj_up(x),
        Direction::Down => b.proj_down(x),
    }
}

/// Least member of `s` above `x`, if the members above `x` have a minimum.
pub fn proj_up_suborder<'a, I>(s: I, x: &Element) -> Option<Element>
where
    I: IntoIterator<Item = &'a Element>,
{
    // A minimum of the upper bounds exists iff their meet is one of them.
    let mut meet: Option<Element> = None;
    let mut bounds = Vec::new();
    for y in s {
        if x.is_below(y) {
            match &mut meet {
                None => meet = Some(y.clone()),
                Some(m) => m.meet_assign(y),
            }
            bounds.push(y);
        }
    }
    let m = meet?;
    bounds.into_iter().any(|y| *y == m).then_some(m)
}

/// Greatest member of `s` below `x`, if the members below `x` have a maximum.
pub fn proj_down_suborder<'a, I>(s: I, x: &Element) -> Option<Element>
where
    I: IntoIterator<Item = &'a Element>,
{
    let mut join: Option<Element> = None;
    let mut bounds = Vec::new();
    for y in s {
        if y.is_below(x) {
            match &mut join {
                None => join = Some(y.clone()),
                Some(m) => m.join_assign(y),
            }
            bounds.push(y);
        }
    }
    let m = join?;
    bounds.into_iter().any(|y| *y == m).then_some(m)
}

pub fn proj_suborder(s: &SubOrder, x: &Element, dir: Direction) -> Option<Element> {
    match dir {
        Direction::Up => proj_up_suborder(s, x),
        Direction::Down => proj_down_suborder(s, x),
    }
}

/// Searches `ambient` for an element at which one of the projections into
/// `s` is missing. `None` means `s` is relatively complete there.
pub fn relative_completeness_gap<'a, I>(s: &SubOrder, ambient: I) -> Option<(Element, Direction)>
where
    I: IntoIterator<Item = &'a Element>,
{
    for x in ambient {
        for dir in [Direction::Up, Direction::Down] {
            if proj_suborder(s, x, dir).is_none() {
                return Some((x.clone(), dir));
            }
        }
    }
    None
}

/// Whether both projections into `s` exist at every element of `a`.
pub fn is_relatively_complete(a: &FinAlg, s: &SubOrder, cap: u128) -> Result<bool> {
    Ok(relative_completeness_gap(s, &a.elements(cap)?).is_none())
}
