//! Independent brute-force oracles shared by the integration tests and the
//! acceptance suite. None of these go through the library's fast paths.

#![allow(dead_code)]

use corelabel::{Congruence, Lattice, Poset};

pub const DISTRIBUTIVE14: &str = include_str!("../../../../fixtures/distributive14.poset");
pub const PENTAGON: &str = include_str!("../../../../fixtures/n5.poset");
pub const DIAMOND: &str = include_str!("../../../../fixtures/m3.poset");

/// Cover labels printed next to each cover of the 14-element fixture, in
/// the order of its cover list.
pub const FIXTURE_COVERS: [(usize, usize); 21] = [
    (0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 6), (3, 7), (4, 6), (4, 8), (5, 7),
    (5, 8), (6, 9), (7, 9), (8, 9), (8, 10), (9, 11), (9, 12), (10, 12), (11, 13), (12, 13),
];
pub const FIXTURE_LABELS: [usize; 21] = [1, 2, 2, 1, 3, 4, 3, 4, 1, 4, 1, 3, 4, 3, 1, 5, 6, 5, 1, 5, 6];

/// The 14 core label sets of the fixture, in ordinal labels.
pub fn fixture_psi_sets() -> Vec<Vec<usize>> {
    vec![
        vec![],
        vec![1],
        vec![2],
        vec![3],
        vec![4],
        vec![5],
        vec![6],
        vec![1, 2],
        vec![1, 3],
        vec![1, 4],
        vec![3, 4],
        vec![1, 5],
        vec![5, 6],
        vec![1, 3, 4],
    ]
}

pub fn distributive14() -> Lattice {
    Lattice::parse(DISTRIBUTIVE14).expect("fixture parses")
}

/// All lattices on `n` elements up to isomorphism: every order relation on
/// the `n - 2` interior elements compatible with index order, closed under
/// an adjoined bottom and top, filtered to lattices and deduplicated by the
/// isomorphism test.
pub fn brute_force_lattices(n: usize) -> Vec<Lattice> {
    if n <= 2 {
        return vec![Lattice::try_from_poset(Poset::chain(n)).unwrap()];
    }
    let k = n - 2;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut classes: Vec<Lattice> = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut rel = vec![vec![false; k]; k];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            rel[i][j] = mask >> b & 1 == 1;
        }
        let transitive = (0..k).all(|i| {
            (0..k).all(|j| (0..k).all(|m| !(rel[i][j] && rel[j][m]) || rel[i][m]))
        });
        if !transitive {
            continue;
        }
        let leq = |a: usize, b: usize| {
            a == b || a == 0 || b == n - 1 || (a > 0 && b > 0 && a < n - 1 && b < n - 1 && rel[a - 1][b - 1])
        };
        let (p, _) = Poset::from_relation(n, leq).expect("partial order");
        let Ok(l) = Lattice::try_from_poset(p) else { continue };
        if !lattice_axioms_hold(&l) {
            panic!("try_from_poset produced tables violating the lattice axioms");
        }
        if classes.iter().all(|c| c.is_isomorphic(&l).is_none()) {
            classes.push(l);
        }
    }
    classes
}

/// Idempotence, commutativity, associativity, absorption and agreement of
/// the tables with the order.
pub fn lattice_axioms_hold(l: &Lattice) -> bool {
    let n = l.len();
    for x in 0..n {
        if l.meet(x, x) != x || l.join(x, x) != x {
            return false;
        }
        for y in 0..n {
            let (m, j) = (l.meet(x, y), l.join(x, y));
            if m != l.meet(y, x) || j != l.join(y, x) {
                return false;
            }
            if l.meet(x, j) != x || l.join(x, m) != x {
                return false;
            }
            if l.leq(x, y) != (m == x) || l.leq(x, y) != (j == y) {
                return false;
            }
            for z in 0..n {
                if l.meet(m, z) != l.meet(x, l.meet(y, z)) || l.join(j, z) != l.join(x, l.join(y, z)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every set partition of `0..n` as a restricted growth string.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            rec(i + 1, n, max.max(b), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![vec![]];
    }
    let mut cur = vec![0];
    rec(1, n, 0, &mut cur, &mut out);
    out
}

/// All congruences of `l` by filtering every set partition for
/// compatibility with meet and join.
pub fn brute_force_congruences(l: &Lattice) -> Vec<Vec<usize>> {
    let n = l.len();
    set_partitions(n)
        .into_iter()
        .filter(|block| {
            (0..n).all(|a| {
                (a + 1..n).filter(|&b| block[a] == block[b]).all(|b| {
                    (0..n).all(|c| {
                        block[l.meet(a, c)] == block[l.meet(b, c)] && block[l.join(a, c)] == block[l.join(b, c)]
                    })
                })
            })
        })
        .collect()
}

/// A partition in the same normal form as [`Congruence::blocks`].
pub fn blocks_of(labels: &[usize]) -> Vec<Vec<usize>> {
    Congruence::from_labels(labels).blocks()
}

/// Distributivity by scanning every five-element subset for a closed copy
/// of the pentagon or the diamond.
pub fn has_forbidden_five_subset(l: &Lattice) -> bool {
    let n = l.len();
    let n5 = corelabel::n5();
    let m3 = corelabel::m3();
    let mut sub = [0usize; 5];
    fn rec(l: &Lattice, start: usize, depth: usize, sub: &mut [usize; 5], n5: &Lattice, m3: &Lattice) -> bool {
        if depth == 5 {
            let closed = sub
                .iter()
                .all(|&x| sub.iter().all(|&y| sub.contains(&l.meet(x, y)) && sub.contains(&l.join(x, y))));
            if !closed {
                return false;
            }
            let s: Vec<usize> = sub.to_vec();
            let covers: Vec<(usize, usize)> = (0..5)
                .flat_map(|i| (0..5).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && l.leq(s[i], s[j]))
                .collect();
            let p = Poset::from_covers(5, &covers).expect("suborder");
            return p.is_isomorphic(n5.poset()).is_some() || p.is_isomorphic(m3.poset()).is_some();
        }
        for x in start..l.len() {
            sub[depth] = x;
            if rec(l, x + 1, depth + 1, sub, n5, m3) {
                return true;
            }
        }
        false
    }
    n >= 5 && rec(l, 0, 0, &mut sub, &n5, &m3)
}
