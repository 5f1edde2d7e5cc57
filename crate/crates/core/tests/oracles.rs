mod common;

use std::collections::BTreeSet;

use common::*;
use corelabel::verify::{is_distributive_birkhoff, is_distributive_forbidden};
use corelabel::*;

fn levels(nmax: usize) -> Vec<Vec<Lattice>> {
    LatticeEnumerator::default().levels(nmax).unwrap()
}

#[test]
fn enumerator_matches_brute_force_class_by_class() {
    for (m, level) in levels(7).iter().enumerate() {
        let n = m + 1;
        let brute = brute_force_lattices(n);
        assert_eq!(level.len(), brute.len(), "n = {n}");
        for b in &brute {
            let hits = level.iter().filter(|l| l.is_isomorphic(b).is_some()).count();
            assert_eq!(hits, 1, "n = {n}, class {:?}", b.covers());
        }
    }
}

#[test]
fn lattice_counts() {
    let counts: Vec<usize> = levels(8).iter().map(Vec::len).collect();
    assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53, 222]);
}

#[test]
fn enumeration_modes_agree() {
    let seq = LatticeEnumerator::default().with_exec(Exec::Sequential).levels(7).unwrap();
    let par = LatticeEnumerator::default().with_exec(Exec::Parallel).levels(7).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn congruences_match_partition_filter() {
    for level in levels(6) {
        for l in &level {
            let fast: BTreeSet<Vec<Vec<usize>>> = all_congruences(l, usize::MAX)
                .unwrap()
                .congruences
                .iter()
                .map(Congruence::blocks)
                .collect();
            let brute: BTreeSet<Vec<Vec<usize>>> =
                brute_force_congruences(l).iter().map(|b| blocks_of(b)).collect();
            assert_eq!(fast, brute, "{l:?}");
        }
    }
}

#[test]
fn principal_congruences_are_least() {
    for level in levels(6) {
        for l in &level {
            let all = brute_force_congruences(l);
            for a in 0..l.len() {
                for b in a + 1..l.len() {
                    // the finest congruence merging a and b
                    let want = all
                        .iter()
                        .filter(|p| p[a] == p[b])
                        .max_by_key(|p| p.iter().collect::<BTreeSet<_>>().len())
                        .unwrap();
                    let c = principal_congruence(l, a, b);
                    assert!(all.iter().filter(|p| p[a] == p[b]).all(|p| {
                        (0..l.len()).all(|x| (0..l.len()).all(|y| !c.same_block(x, y) || p[x] == p[y]))
                    }));
                    assert_eq!(c.blocks(), blocks_of(want), "{l:?} ({a}, {b})");
                }
            }
        }
    }
}

#[test]
fn uniformity_routes_agree() {
    for level in levels(7) {
        for l in &level {
            let fast = congruence_uniformity(l).is_uniform();
            let full = congruence::congruence_uniformity_full(l, usize::MAX).unwrap().is_uniform();
            assert_eq!(fast, full, "{l:?}");
        }
    }
}

#[test]
fn canonical_oracle_modes_agree() {
    for level in levels(6) {
        for l in &level {
            for x in 0..l.len() {
                assert_eq!(
                    canonical_join_rep_oracle(l, x, OracleMode::AllSubsets),
                    canonical_join_rep_oracle(l, x, OracleMode::JoinIrreducibles),
                    "{l:?} x = {x}"
                );
            }
        }
    }
}

#[test]
fn canonical_rep_matches_oracle_on_uniform_lattices() {
    for level in levels(7) {
        for l in level.iter().filter(|l| is_congruence_uniform(l)) {
            for x in 0..l.len() {
                let fast = canonical_join_rep(l, x).unwrap();
                assert_eq!(
                    canonical_join_rep_oracle(l, x, OracleMode::JoinIrreducibles),
                    Some(fast),
                    "{l:?} x = {x}"
                );
            }
        }
    }
}

#[test]
fn distributivity_tests_agree() {
    for level in levels(7) {
        for l in &level {
            let law = l.is_distributive_law();
            assert_eq!(law, is_distributive_birkhoff(l), "{l:?}");
            assert_eq!(law, is_distributive_forbidden(l), "{l:?}");
            assert_eq!(law, !has_forbidden_five_subset(l), "{l:?}");
            assert_eq!(law, corelabel::constructions::iota_is_bijective(l), "{l:?}");
        }
    }
}

#[test]
fn sublattice_witnesses_are_closed_copies() {
    for level in levels(7) {
        for l in &level {
            for (pattern, model) in [(Pattern::N5, corelabel::n5()), (Pattern::M3, corelabel::m3())] {
                if let Some(w) = l.has_sublattice(pattern) {
                    assert!(l.is_sublattice(&w));
                    let pairs: Vec<(usize, usize)> = (0..5)
                        .flat_map(|i| (0..5).map(move |j| (i, j)))
                        .filter(|&(i, j)| i != j && l.leq(w[i], w[j]))
                        .collect();
                    let p = Poset::from_covers(5, &pairs).unwrap();
                    assert!(p.is_isomorphic(model.poset()).is_some(), "{pattern:?} {w:?}");
                }
            }
        }
    }
}

#[test]
fn every_census_lattice_satisfies_the_axioms() {
    for level in levels(8) {
        for l in &level {
            assert!(lattice_axioms_hold(l), "{l:?}");
        }
    }
}
