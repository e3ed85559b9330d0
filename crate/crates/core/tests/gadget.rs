//! The truncated gadget against its projection and target tables, recomputed
//! here from the named generators rather than through the library's checkers.

use std::collections::BTreeSet;

use interlab::ba::{Element, DEFAULT_ENUMERATION_CAP as CAP};
use interlab::gadget::{
    build_gadget, check_essproj, check_pushout_characterization, check_pre_pushout_characterization,
    check_system_projections, free_extension_ranks, gadget_as_system, orbit_growth, proj_b_h0_value,
    GadgetAlgebra, GadgetParams,
};

fn meet_all(n: usize, xs: impl IntoIterator<Item = Element>) -> Element {
    xs.into_iter().fold(Element::full(n), |acc, x| acc.meet(&x))
}

fn b(g: &GadgetAlgebra, side: usize, n: usize) -> Element {
    g.b(side, n).unwrap().clone()
}

fn h(g: &GadgetAlgebra, side: usize) -> Element {
    g.h(side).unwrap().clone()
}

#[test]
fn projection_table() {
    for m in 1..=3 {
        for base in 0..=1 {
            let g = build_gadget(GadgetParams::new(m, base)).unwrap();
            let (a0, a1) = (g.side(0), g.side(1));
            for n in 0..m {
                let first = b(&g, 0, n).meet(&h(&g, 0));
                assert_eq!(a0.proj_up(&first), b(&g, 0, n), "m={m} n={n}");
                assert_eq!(a1.proj_up(&first), b(&g, 1, n).complement(), "m={m} n={n}");
                let second = b(&g, 1, n).meet(&h(&g, 1));
                assert_eq!(a0.proj_up(&second), b(&g, 0, n + 1).complement(), "m={m} n={n}");
                assert_eq!(a1.proj_up(&second), b(&g, 1, n), "m={m} n={n}");
            }
            let cells = check_essproj(&g).unwrap();
            assert_eq!(cells.len(), 4 * m);
            assert!(cells.iter().all(|c| c.pass));
        }
    }
}

/// The target set of the table, by row: `side` is the subalgebra projected
/// into and `opposite` the positive set on the other side.
fn targets(side: usize, h0: bool, h1: bool, opposite: &BTreeSet<usize>) -> BTreeSet<usize> {
    let right: BTreeSet<usize> = opposite.iter().map(|n| n + 1).collect();
    let left: BTreeSet<usize> = opposite.iter().filter(|&&n| n > 0).map(|n| n - 1).collect();
    let shifted = if side == 0 { right } else { left };
    match (h0, h1) {
        (false, false) => BTreeSet::new(),
        (true, false) => opposite.clone(),
        (false, true) => shifted,
        (true, true) => opposite.union(&shifted).copied().collect(),
    }
}

fn subsets(range: usize) -> Vec<BTreeSet<usize>> {
    (0..1u32 << range)
        .map(|mask| (0..range).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

#[test]
fn target_table_exhaustively() {
    for m in 1..=3 {
        let g = build_gadget(GadgetParams::new(m, 1)).unwrap();
        let atoms = g.algebra.atom_count();
        for side in 0..2 {
            let other = 1 - side;
            for p in subsets(m) {
                for q in subsets(m).into_iter().filter(|q| q.is_disjoint(&p)) {
                    for (h0, h1) in [(false, false), (true, false), (false, true), (true, true)] {
                        let sign = |x: Element, positive: bool| if positive { x } else { x.complement() };
                        let x = meet_all(
                            atoms,
                            p.iter()
                                .map(|&n| b(&g, other, n))
                                .chain(q.iter().map(|&n| b(&g, other, n).complement()))
                                .chain([sign(h(&g, 0), h0), sign(h(&g, 1), h1)]),
                        );
                        let tau = meet_all(atoms, targets(side, h0, h1, &p).iter().map(|&n| b(&g, side, n).complement()));
                        assert_eq!(
                            g.side(side).proj_up(&x),
                            tau,
                            "m={m} side={side} P={p:?} Q={q:?} h=({h0},{h1})"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn target_table_examples() {
    let g = build_gadget(GadgetParams::new(2, 1)).unwrap();
    let neither = h(&g, 0).complement().meet(&h(&g, 1).complement());
    assert!(g.side(0).proj_up(&neither).is_one());
    let x = b(&g, 1, 0).meet(&h(&g, 0).complement()).meet(&h(&g, 1));
    assert_eq!(g.side(0).proj_up(&x), b(&g, 0, 1).complement());
}

#[test]
fn h0_lies_below_the_explicit_meet() {
    for m in 1..=4 {
        let g = build_gadget(GadgetParams::new(m, 1)).unwrap();
        let atoms = g.algebra.atom_count();
        let explicit = meet_all(atoms, (0..m).map(|n| b(&g, 0, n).meet(&b(&g, 1, n)).complement()));
        let value = proj_b_h0_value(&g).unwrap();
        assert!(h(&g, 0).is_below(&value));
        assert!(value.is_below(&explicit), "m={m}");
    }
}

#[test]
fn free_extension_ranks_follow_the_generator_counts() {
    for m in 1..=3 {
        for base in 0..=1 {
            let g = build_gadget(GadgetParams::new(m, base)).unwrap();
            assert_eq!(free_extension_ranks(&g).unwrap(), (Some(m as u32 + 1), Some(m as u32)));
        }
    }
}

#[test]
fn pushout_characterization() {
    for (m, base) in [(1, 0), (2, 1)] {
        let g = build_gadget(GadgetParams::new(m, base)).unwrap();
        assert!(check_pushout_characterization(&g).holds());
        assert!(check_pre_pushout_characterization(&g).unwrap().holds());
    }
}

#[test]
fn orbit_reaches_every_generator() {
    for m in 1..=3 {
        let g = build_gadget(GadgetParams::new(m, 1)).unwrap();
        let orbit = orbit_growth(&g).unwrap();
        let expected: BTreeSet<String> = g.b_names(0).into_iter().chain(g.b_names(1)).collect();
        let reached: BTreeSet<String> = orbit.generators_reached.into_iter().collect();
        assert_eq!(reached, expected);
    }
}

#[test]
fn gadget_systems_are_valid() {
    for m in 1..=4 {
        let g = build_gadget(GadgetParams::new(m, 0)).unwrap();
        let sys = gadget_as_system(&g).unwrap();
        assert!(sys.validate(CAP).is_empty(), "m={m}");
        assert!(check_system_projections(&g, &sys).unwrap().iter().all(|p| p.pass));
    }
}
