//! Normal forms, heads and segments, checked against plain coefficient
//! arithmetic.

use interlab::ordinals::{daleth, head, head_term, segment, segment_of, Ordinal, MAX_LEVEL};
use proptest::prelude::*;

fn parse(text: &str) -> Ordinal {
    text.parse().unwrap()
}

/// Prefixes of the coefficient array `[c4, …, c1, c0]` that end after each
/// nonzero entry. These are the heads, built without ordinal addition.
fn heads_oracle(c: [u64; MAX_LEVEL + 1]) -> Vec<[u64; MAX_LEVEL + 1]> {
    let mut heads = vec![[0; MAX_LEVEL + 1]];
    let mut acc = [0; MAX_LEVEL + 1];
    for (slot, &v) in c.iter().enumerate() {
        if v > 0 {
            acc[slot] = v;
            heads.push(acc);
        }
    }
    heads
}

fn coeffs() -> impl Strategy<Value = [u64; MAX_LEVEL + 1]> {
    prop::array::uniform5(prop_oneof![Just(0u64), 0u64..4])
}

#[test]
fn daleth_examples() {
    assert_eq!(daleth(&Ordinal::ZERO), 0);
    assert_eq!(daleth(&parse("w1*2+5")), 2);
    assert_eq!(daleth(&parse("w2+w1*3+2")), 3);
}

#[test]
fn head_and_segment_examples() {
    let alpha = parse("w1*2+5");
    let (h0, t0) = head_term(&alpha, 0).unwrap();
    assert_eq!(h0, Ordinal::ZERO);
    assert_eq!(t0, parse("w1*2"));
    assert_eq!(head(&alpha, 1).unwrap(), parse("w1*2"));

    let s0 = segment(&alpha, 0).unwrap();
    assert_eq!((s0.lower, s0.upper), (Ordinal::ZERO, parse("w1*2")));
    let s1 = segment(&alpha, 1).unwrap();
    assert_eq!((s1.lower, s1.upper), (parse("w1*2"), alpha));
    assert!(segment(&alpha, 2).is_err());
}

#[test]
fn rendering() {
    assert_eq!(parse("w2*1+w1*3+2").to_string(), "w2*1+w1*3+2");
    assert_eq!(parse("w2+w1*3+2"), Ordinal::from_coeffs([0, 0, 1, 3, 2]));
    assert!("w1+w2".parse::<Ordinal>().is_err());
    assert!("w5".parse::<Ordinal>().is_err());
}

proptest! {
    #[test]
    fn render_parse_round_trip(c in coeffs()) {
        let alpha = Ordinal::from_coeffs(c);
        prop_assert_eq!(parse(&alpha.to_string()), alpha);
        let json = serde_json::to_string(&alpha).unwrap();
        prop_assert_eq!(serde_json::from_str::<Ordinal>(&json).unwrap(), alpha);
    }

    #[test]
    fn order_is_lexicographic(a in coeffs(), b in coeffs()) {
        prop_assert_eq!(Ordinal::from_coeffs(a).cmp(&Ordinal::from_coeffs(b)), a.cmp(&b));
    }

    #[test]
    fn heads_match_prefixes(c in coeffs()) {
        let alpha = Ordinal::from_coeffs(c);
        let heads = heads_oracle(c);
        prop_assert_eq!(daleth(&alpha), heads.len() - 1);
        for (i, h) in heads.iter().enumerate() {
            prop_assert_eq!(head(&alpha, i).unwrap(), Ordinal::from_coeffs(*h));
            prop_assert_eq!(daleth(&Ordinal::from_coeffs(*h)), i);
        }
        prop_assert_eq!(Ordinal::from_coeffs(*heads.last().unwrap()), alpha);
    }

    #[test]
    fn segments_partition_below(c in coeffs(), b in coeffs()) {
        let alpha = Ordinal::from_coeffs(c);
        let beta = Ordinal::from_coeffs(b);
        let heads = heads_oracle(c);
        let expected = (0..heads.len() - 1).find(|&i| heads[i] <= b && b < heads[i + 1]);
        prop_assert_eq!(segment_of(&alpha, &beta), expected);
        prop_assert_eq!(expected.is_some(), beta < alpha);
        let hits = (0..daleth(&alpha)).filter(|&i| segment(&alpha, i).unwrap().contains(&beta)).count();
        prop_assert_eq!(hits, usize::from(beta < alpha));
    }
}
