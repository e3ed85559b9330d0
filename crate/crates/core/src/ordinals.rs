//! Ordinals below `ω_5` in truncated cardinal normal form: a natural
//! coefficient for each of `ω_4, …, ω_1` and a finite part.
//!
//! A normal form is split into its cardinal terms (those at or above the
//! truncation level) and a remainder. `daleth` counts the nonzero pieces,
//! `head_i` sums the first `i` of them, and `segment(α, i)` is the interval
//! between consecutive heads.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Highest cardinal level represented.
pub const MAX_LEVEL: usize = 4;

/// `coeffs[0]` is the coefficient of `ω_4`, …, `coeffs[3]` of `ω_1`, and
/// `coeffs[4]` the finite part. Derived ordering is ordinal ordering.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal {
    coeffs: [u64; MAX_LEVEL + 1],
}

fn slot(level: usize) -> usize {
    MAX_LEVEL - level
}

impl Ordinal {
    pub const ZERO: Ordinal = Ordinal { coeffs: [0; MAX_LEVEL + 1] };

    pub fn finite(n: u64) -> Self {
        Ordinal::term(0, n)
    }

    /// `ω_level · c`; level 0 is the finite part.
    pub fn term(level: usize, c: u64) -> Self {
        assert!(level <= MAX_LEVEL, "level {level} above ω_{MAX_LEVEL}");
        let mut o = Ordinal::ZERO;
        o.coeffs[slot(level)] = c;
        o
    }

    pub fn omega(level: usize) -> Self {
        Ordinal::term(level, 1)
    }

    /// Builds from `[c4, c3, c2, c1, c0]`.
    pub fn from_coeffs(coeffs: [u64; MAX_LEVEL + 1]) -> Self {
        Ordinal { coeffs }
    }

    pub fn coeffs(&self) -> [u64; MAX_LEVEL + 1] {
        self.coeffs
    }

    pub fn coeff(&self, level: usize) -> u64 {
        self.coeffs[slot(level)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The part strictly below `ω_level`.
    fn below(&self, level: usize) -> Ordinal {
        let mut o = Ordinal::ZERO;
        for l in 0..level {
            o.coeffs[slot(l)] = self.coeffs[slot(l)];
        }
        o
    }

    /// Cardinal terms at or above `ω_lambda` (nonzero only) and the
    /// remainder below it.
    fn split(&self, lambda: usize) -> (Vec<Ordinal>, Ordinal) {
        assert!((1..=MAX_LEVEL).contains(&lambda), "truncation level must be 1..=4");
        let terms = (lambda..=MAX_LEVEL)
            .rev()
            .filter(|&l| self.coeff(l) > 0)
            .map(|l| Ordinal::term(l, self.coeff(l)))
            .collect();
        (terms, self.below(lambda))
    }

    /// Nonzero pieces of the normal form, remainder last.
    fn pieces(&self, lambda: usize) -> Vec<Ordinal> {
        let (mut terms, rest) = self.split(lambda);
        if !rest.is_zero() {
            terms.push(rest);
        }
        terms
    }

    fn sum(parts: &[Ordinal]) -> Ordinal {
        parts.iter().fold(Ordinal::ZERO, |acc, &p| acc + p)
    }
}

/// Ordinal addition: the terms of `self` below the leading term of `rhs`
/// are absorbed.
impl Add for Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: Ordinal) -> Ordinal {
        let Some(lead) = rhs.coeffs.iter().position(|&c| c != 0) else {
            return self;
        };
        let mut out = self;
        out.coeffs[lead] += rhs.coeffs[lead];
        out.coeffs[lead + 1..].copy_from_slice(&rhs.coeffs[lead + 1..]);
        out
    }
}

/// Number of nonzero cardinal terms, plus one if the remainder is nonzero.
pub fn daleth_at(alpha: &Ordinal, lambda: usize) -> usize {
    alpha.pieces(lambda).len()
}

pub fn daleth(alpha: &Ordinal) -> usize {
    daleth_at(alpha, 1)
}

/// `(head_i, term_i)`: the sum of the first `i` pieces and the `i`-th piece
/// (zero when `i = daleth`).
pub fn head_term_at(alpha: &Ordinal, i: usize, lambda: usize) -> Result<(Ordinal, Ordinal)> {
    let pieces = alpha.pieces(lambda);
    if i > pieces.len() {
        return Err(Error::Range(format!(
            "piece {i} of {alpha}, which has only {}",
            pieces.len()
        )));
    }
    let term = pieces.get(i).copied().unwrap_or(Ordinal::ZERO);
    Ok((Ordinal::sum(&pieces[..i]), term))
}

pub fn head_term(alpha: &Ordinal, i: usize) -> Result<(Ordinal, Ordinal)> {
    head_term_at(alpha, i, 1)
}

pub fn head(alpha: &Ordinal, i: usize) -> Result<Ordinal> {
    Ok(head_term(alpha, i)?.0)
}

/// Half-open interval `[lower, upper)` of ordinals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Segment {
    pub lower: Ordinal,
    pub upper: Ordinal,
}

impl Segment {
    pub fn contains(&self, beta: &Ordinal) -> bool {
        self.lower <= *beta && *beta < self.upper
    }
}

pub fn segment_at(alpha: &Ordinal, i: usize, lambda: usize) -> Result<Segment> {
    let d = daleth_at(alpha, lambda);
    if i >= d {
        return Err(Error::Range(format!("segment {i} of {alpha}, which has {d}")));
    }
    let (lower, term) = head_term_at(alpha, i, lambda)?;
    Ok(Segment {
        lower,
        upper: lower + term,
    })
}

pub fn segment(alpha: &Ordinal, i: usize) -> Result<Segment> {
    segment_at(alpha, i, 1)
}

/// Index of the segment of `alpha` containing `beta < alpha`.
pub fn segment_of(alpha: &Ordinal, beta: &Ordinal) -> Option<usize> {
    (0..daleth(alpha)).find(|&i| segment(alpha, i).map(|s| s.contains(beta)).unwrap_or(false))
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for level in (1..=MAX_LEVEL).rev() {
            let c = self.coeff(level);
            if c > 0 {
                if !first {
                    write!(f, "+")?;
                }
                write!(f, "w{level}*{c}")?;
                first = false;
            }
        }
        if self.coeff(0) > 0 {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "{}", self.coeff(0))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn parse_number(s: &str, start: usize) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(start, format!("expected a number, found {s:?}")));
    }
    s.parse()
        .map_err(|_| parse_err(start, format!("number {s} is too large")))
}

impl FromStr for Ordinal {
    type Err = Error;

    /// Accepts `0`, `5`, `w1`, `w2*3`, and sums such as `w2*1+w1*3+2` with
    /// strictly decreasing levels.
    fn from_str(text: &str) -> Result<Self> {
        let mut out = Ordinal::ZERO;
        let mut last_level: Option<usize> = None;
        let mut offset = 0;
        for raw in text.split('+') {
            let lead = raw.len() - raw.trim_start().len();
            let piece = raw.trim();
            let start = offset + lead;
            offset += raw.len() + 1;
            if piece.is_empty() {
                return Err(parse_err(start, "empty term"));
            }
            let (level, coeff) = if let Some(rest) = piece.strip_prefix('w') {
                let (lv, c) = match rest.split_once('*') {
                    Some((lv, c)) => (lv, Some((c, start + 2 + lv.len() + (c.len() - c.trim_start().len())))),
                    None => (rest, None),
                };
                let level = parse_number(lv.trim_end(), start + 1)? as usize;
                if !(1..=MAX_LEVEL).contains(&level) {
                    return Err(parse_err(start + 1, format!("level {level} outside 1..={MAX_LEVEL}")));
                }
                let coeff = match c {
                    Some((c, at)) => parse_number(c.trim(), at)?,
                    None => 1,
                };
                (level, coeff)
            } else {
                (0, parse_number(piece, start)?)
            };
            if let Some(prev) = last_level {
                if level >= prev {
                    return Err(parse_err(start, "levels must strictly decrease"));
                }
            }
            if coeff == 0 && !(level == 0 && last_level.is_none()) {
                return Err(parse_err(start, "zero coefficient in a sum"));
            }
            last_level = Some(level);
            out.coeffs[slot(level)] = coeff;
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffForm {
    levels: usize,
    coeffs: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyForm {
    Text(String),
    Coeffs(CoeffForm),
}

/// `{"levels": 4, "coeffs": [c4, c3, c2, c1, c0]}`.
impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoeffForm {
            levels: MAX_LEVEL,
            coeffs: self.coeffs.to_vec(),
        }
        .serialize(s)
    }
}

/// Accepts the coefficient object or the text form.
impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match AnyForm::deserialize(d)? {
            AnyForm::Text(t) => t.parse().map_err(D::Error::custom),
            AnyForm::Coeffs(c) => {
                if c.coeffs.len() != c.levels + 1 || c.levels > MAX_LEVEL {
                    return Err(D::Error::custom("coefficient list does not match levels"));
                }
                let mut out = [0; MAX_LEVEL + 1];
                out[MAX_LEVEL - c.levels..].copy_from_slice(&c.coeffs);
                Ok(Ordinal::from_coeffs(out))
            }
        }
    }
}
