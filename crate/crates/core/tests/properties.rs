mod common;

use std::collections::HashSet;

use common::lattice_axioms_hold;
use corelabel::constructions::{double_lattice, is_interval};
use corelabel::*;
use proptest::prelude::*;

/// A poset on up to `max` elements from random pairs `i < j`.
fn poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let m = pairs.len();
        proptest::collection::vec(proptest::bool::weighted(0.3), m).prop_map(move |bits| {
            let chosen: Vec<(usize, usize)> =
                pairs.iter().zip(&bits).filter(|(_, &b)| b).map(|(&p, _)| p).collect();
            Poset::from_covers(n, &chosen).unwrap()
        })
    })
}

fn poset_and_permutation(max: usize) -> impl Strategy<Value = (Poset, Vec<usize>)> {
    poset(max).prop_flat_map(|p| {
        let perm: Vec<usize> = (0..p.len()).collect();
        (Just(p), Just(perm).prop_shuffle())
    })
}

/// Lattices built by random interval doublings.
fn uniform_lattice() -> impl Strategy<Value = Lattice> {
    proptest::collection::vec((any::<u16>(), any::<u16>()), 0..6).prop_map(|choices| {
        let mut l = boolean(0);
        for (a, b) in choices {
            let a = a as usize % l.len();
            let above: Vec<usize> = l.poset().up_set(a).to_vec();
            let b = above[b as usize % above.len()];
            let x = l.interval_members(a, b).unwrap();
            l = double_lattice(&l, &x).unwrap();
        }
        l
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn covers_regenerate_the_order(p in poset(10)) {
        let q = Poset::from_covers(p.len(), &p.covers()).unwrap();
        prop_assert_eq!(&q, &p);
        for (a, b) in p.covers() {
            prop_assert!(p.lt(a, b));
            prop_assert!((0..p.len()).all(|z| !(p.lt(a, z) && p.lt(z, b))));
        }
    }

    #[test]
    fn text_round_trip(p in poset(10)) {
        prop_assert_eq!(Poset::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn order_ideals_are_exactly_the_down_closed_sets(p in poset(9)) {
        let n = p.len();
        let ideals: HashSet<Vec<usize>> = p.all_order_ideals().iter().map(ElementSet::to_vec).collect();
        let mut brute = HashSet::new();
        for mask in 0u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if s.iter().all(|&x| (0..n).all(|y| !p.leq(y, x) || s.contains(&y))) {
                brute.insert(s);
            }
        }
        prop_assert_eq!(ideals.len(), p.all_order_ideals().len());
        prop_assert_eq!(ideals, brute);
    }

    #[test]
    fn duality_exchanges_order_and_covers(p in poset(10)) {
        let d = p.dual();
        let n = p.len();
        prop_assert_eq!(&d.dual(), &p);
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(p.leq(a, b), d.leq(n - 1 - b, n - 1 - a));
            }
        }
        prop_assert_eq!(p.cover_count(), d.cover_count());
        prop_assert_eq!(p.minimal_elements().len(), d.maximal_elements().len());
    }

    #[test]
    fn isomorphism_survives_relabeling((p, perm) in poset_and_permutation(9)) {
        let pairs: Vec<(usize, usize)> = p.covers().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        let q = Poset::from_covers(p.len(), &pairs).unwrap();
        let map = p.is_isomorphic(&q);
        prop_assert!(map.is_some());
        let map = map.unwrap();
        for a in 0..p.len() {
            for b in 0..p.len() {
                prop_assert_eq!(p.leq(a, b), q.leq(map[a], map[b]));
            }
        }
        prop_assert_eq!(p.canonical_form(), q.canonical_form());
    }

    #[test]
    fn ideal_lattices_are_distributive_lattices(p in poset(7)) {
        let l = birkhoff(&p);
        prop_assert!(lattice_axioms_hold(&l));
        prop_assert!(l.is_distributive_law());
        let (jp, _) = l.join_irreducible_poset();
        prop_assert!(jp.is_isomorphic(&p).is_some());
        prop_assert!(birkhoff(&jp).is_isomorphic(&l).is_some());
    }

    #[test]
    fn interval_doublings_stay_uniform(l in uniform_lattice()) {
        prop_assert!(lattice_axioms_hold(&l));
        prop_assert!(is_congruence_uniform(&l));
        prop_assert!(l.is_semidistributive());
        let data = CoreLabelData::compute(&l, Exec::Sequential).unwrap();
        for x in 0..l.len() {
            prop_assert!(data.gamma[x].is_subset(&data.psi[x]));
            prop_assert_eq!(l.join_set(data.gamma[x].iter()), x);
        }
        prop_assert!(data.order().is_ok());
        prop_assert!(canonical_join_complex(&l).unwrap().is_flag());
    }

    #[test]
    fn principal_congruences_are_compatible_with_interval_blocks(l in uniform_lattice(), a in any::<u16>(), b in any::<u16>()) {
        let (a, b) = (a as usize % l.len(), b as usize % l.len());
        let c = principal_congruence(&l, a, b);
        prop_assert!(c.same_block(a, b));
        prop_assert!(c.is_compatible_with(&l));
        prop_assert!(c.blocks_are_intervals(&l));
    }

    #[test]
    fn intervals_are_recognized(l in uniform_lattice(), a in any::<u16>(), b in any::<u16>()) {
        let a = a as usize % l.len();
        let above = l.poset().up_set(a).to_vec();
        let b = above[b as usize % above.len()];
        prop_assert!(is_interval(&l, &l.interval_members(a, b).unwrap()));
    }
}
