//! Approximation systems: validity, ranks, projection trees and the
//! synthesized interpolating maps, each compared with a direct computation.

use std::collections::BTreeSet;

use interlab::approx::{
    check_rclimit, expansion_orbit, sigma_tree, synth_fn_map, synth_transitive_fn_map, varsigma,
    ApproxSystem, LazyFn, Violation,
};
use interlab::ba::{Element, FinAlg, Subalgebra, DEFAULT_ENUMERATION_CAP as CAP};
use interlab::interp::{lemmas::Conditional, verify_fn_map, Direction, FnMap};
use interlab::ordinals::Ordinal;
use interlab::suite::gen::{case_rng, random_system};
use proptest::prelude::*;

fn system(seed: u64) -> ApproxSystem {
    random_system(&mut case_rng(seed, 0), 5, 5)
}

fn el(n: usize, atoms: &[usize]) -> Element {
    Element::from_atoms(n, atoms.iter().copied()).unwrap()
}

/// Every comparable pair has an interpolant in both images.
fn interpolates(sys: &ApproxSystem, f: &FnMap) -> bool {
    let all = sys.ambient().elements(CAP).unwrap();
    all.iter().all(|x| {
        all.iter().filter(|y| x.is_below(y)).all(|y| {
            let (fx, fy) = (f.get(x).unwrap(), f.get(y).unwrap());
            fx.intersection(fy).any(|z| x.is_below(z) && z.is_below(y))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_systems_validate(seed in any::<u64>()) {
        let sys = system(seed);
        prop_assert_eq!(sys.validate(CAP), Vec::<Violation>::new());
    }

    #[test]
    fn rank_is_first_stage_holding_the_element(seed in any::<u64>()) {
        let sys = system(seed);
        for x in sys.ambient().elements(CAP).unwrap() {
            let first = sys.stages().iter().position(|s| s.contains(&x)).unwrap();
            prop_assert_eq!(sys.rank(&x).unwrap(), first);
        }
    }

    #[test]
    fn projection_trees_lower_the_rank(seed in any::<u64>()) {
        let sys = system(seed);
        for x in sys.ambient().elements(CAP).unwrap() {
            for dir in [Direction::Up, Direction::Down] {
                let tree = sigma_tree(&sys, &x, dir, CAP).unwrap();
                prop_assert!(tree.missing.is_empty());
                for node in &tree.nodes[1..] {
                    let parent = tree.nodes.iter().find(|p| p.path[..] == node.path[..node.path.len() - 1]).unwrap();
                    prop_assert!(node.rank < parent.rank);
                    let step = sys.proj_i(&parent.value, *node.path.last().unwrap(), dir, CAP).unwrap();
                    prop_assert_eq!(step.as_ref(), Some(&node.value));
                }
                if sys.rank(&x).unwrap() == 0 {
                    prop_assert_eq!(varsigma(&sys, &x, dir, CAP).unwrap(), BTreeSet::from([x.clone()]));
                }
            }
        }
    }

    #[test]
    fn synthesized_maps_interpolate(seed in any::<u64>()) {
        let sys = system(seed);
        let f = synth_fn_map(&sys, CAP).unwrap();
        prop_assert!(interpolates(&sys, &f));
        prop_assert_eq!(verify_fn_map(sys.ambient(), &f, CAP).unwrap(), None);
        prop_assert_eq!(synth_fn_map(&sys, CAP).unwrap(), f);

        let t = synth_transitive_fn_map(&sys, CAP).unwrap();
        prop_assert!(interpolates(&sys, &t));
        for (_, image) in t.iter() {
            for z in image {
                prop_assert!(t.get(z).unwrap().is_subset(image));
            }
        }
    }

    #[test]
    fn lazy_map_agrees_with_table(seed in any::<u64>()) {
        let sys = system(seed);
        let f = synth_fn_map(&sys, CAP).unwrap();
        let lazy = LazyFn::new(&sys, CAP);
        let all = sys.ambient().elements(CAP).unwrap();
        for x in &all {
            for z in &all {
                prop_assert_eq!(lazy.contains(x, z).unwrap(), f.get(x).unwrap().contains(z));
            }
        }
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let sys = system(seed);
        let json = sys.to_json().unwrap();
        prop_assert_eq!(ApproxSystem::from_json(&json).unwrap(), sys);
    }

    #[test]
    fn limit_over_every_stage(seed in any::<u64>()) {
        let sys = system(seed);
        let all: Vec<usize> = (0..sys.len()).collect();
        prop_assert!(!check_rclimit(&sys, &all, CAP).unwrap().is_violation());
    }
}

#[test]
fn single_stage_map_is_the_enumeration_prefix() {
    let sys = ApproxSystem::chain(FinAlg::new(3).unwrap(), vec![Subalgebra::discrete(3)]).unwrap();
    let f = synth_fn_map(&sys, CAP).unwrap();
    for (x, image) in f.iter() {
        let prefix: BTreeSet<Element> = f.iter().map(|(y, _)| y.clone()).filter(|y| y <= x).collect();
        assert_eq!(image, &prefix);
    }
}

#[test]
fn two_stage_map_unfolds_once() {
    let coarse = Subalgebra::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
    let sys = ApproxSystem::chain(FinAlg::new(4).unwrap(), vec![coarse.clone(), Subalgebra::discrete(4)]).unwrap();
    let f = synth_fn_map(&sys, CAP).unwrap();
    for (x, image) in f.iter() {
        if sys.rank(x).unwrap() == 1 {
            for below in [coarse.proj_up(x), coarse.proj_down(x)] {
                assert!(f.get(&below).unwrap().is_subset(image));
            }
        }
    }
}

#[test]
fn undirected_segment_is_reported() {
    let n = 3;
    let stages = vec![
        Subalgebra::from_blocks(n, &[vec![0, 1], vec![2]]).unwrap(),
        Subalgebra::from_blocks(n, &[vec![0], vec![1, 2]]).unwrap(),
        Subalgebra::discrete(n),
    ];
    let positions = (0..3).map(Ordinal::finite).collect();
    let visibility = vec![BTreeSet::new(), BTreeSet::new(), BTreeSet::from([0, 1])];
    let sys = ApproxSystem::new(FinAlg::new(n).unwrap(), Ordinal::finite(3), positions, stages, visibility).unwrap();
    assert!(sys
        .validate(CAP)
        .iter()
        .any(|v| matches!(v, Violation::NotDirected { .. })));
    assert_eq!(sys.proj_i(&el(n, &[1]), 0, Direction::Up, CAP).unwrap(), None);
}

#[test]
fn orbit_of_the_bounds_is_trivial() {
    let sys = system(7);
    let n = sys.ambient().atom_count();
    let seed = [Element::empty(n), Element::full(n)];
    let orbit = expansion_orbit(&sys, &seed, 4, CAP).unwrap();
    assert_eq!(orbit.elements, seed.iter().cloned().collect());
    assert!(orbit.fixpoint);
}

#[test]
fn limit_over_the_first_stage() {
    let coarse = Subalgebra::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
    let sys = ApproxSystem::chain(FinAlg::new(4).unwrap(), vec![coarse, Subalgebra::discrete(4)]).unwrap();
    assert!(matches!(check_rclimit(&sys, &[0], CAP).unwrap(), Conditional::Holds));
}
