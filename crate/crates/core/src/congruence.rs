//! Lattice congruences and the congruence-uniformity test.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::bitset::ElementSet;
use crate::error::CongruenceError;
use crate::lattice::Lattice;
use crate::poset::Poset;

/// Default cap on the number of congruences `all_congruences` will build.
pub const DEFAULT_CONGRUENCE_CAP: usize = 1 << 16;

#[derive(Debug, Clone)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root so block representatives are block minima.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// A partition of a lattice's elements; `block[x]` is the least element of
/// the block containing `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    block: Vec<usize>,
}

impl Congruence {
    pub fn discrete(n: usize) -> Self {
        Congruence {
            block: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Congruence { block: vec![0; n] }
    }

    /// Normalizes an arbitrary block labeling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut first: HashMap<usize, usize> = HashMap::new();
        let block = labels
            .iter()
            .enumerate()
            .map(|(i, l)| *first.entry(*l).or_insert(i))
            .collect();
        Congruence { block }
    }

    fn from_union_find(mut uf: UnionFind) -> Self {
        let n = uf.parent.len();
        Congruence {
            block: (0..n).map(|x| uf.find(x)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.block.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block.is_empty()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block[x]
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block[a] == self.block[b]
    }

    pub fn block_count(&self) -> usize {
        self.block.iter().enumerate().filter(|&(i, &b)| i == b).count()
    }

    pub fn is_discrete(&self) -> bool {
        self.block_count() == self.len()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut index = HashMap::new();
        for (x, &b) in self.block.iter().enumerate() {
            let i = *index.entry(b).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[i].push(x);
        }
        out
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.len()).all(|x| other.same_block(x, self.block[x]))
    }

    /// Brute-force compatibility with meet and join.
    pub fn is_compatible_with(&self, l: &Lattice) -> bool {
        let n = l.len();
        (0..n).all(|x| {
            (0..n).filter(|&y| self.same_block(x, y)).all(|y| {
                (0..n).all(|z| {
                    self.same_block(l.meet(x, z), l.meet(y, z))
                        && self.same_block(l.join(x, z), l.join(y, z))
                })
            })
        })
    }

    /// Every block is an interval of `l`.
    pub fn blocks_are_intervals(&self, l: &Lattice) -> bool {
        self.blocks().iter().all(|b| {
            let lo = l.meet_set(b.iter().copied());
            let hi = l.join_set(b.iter().copied());
            l.interval_members(lo, hi)
                .is_ok_and(|m| m == ElementSet::from_indices(l.len(), b.iter().copied()))
        })
    }
}

/// Merges translates of every pending edge until stable. Each union records
/// the pair that caused it, and translating those edges covers the
/// transitive closure.
fn close(l: &Lattice, uf: &mut UnionFind, mut pending: VecDeque<(usize, usize)>) {
    let n = l.len();
    while let Some((x, y)) = pending.pop_front() {
        for z in 0..n {
            for (u, v) in [(l.meet(x, z), l.meet(y, z)), (l.join(x, z), l.join(y, z))] {
                if uf.union(u, v) {
                    pending.push_back((u, v));
                }
            }
        }
    }
}

/// The least congruence identifying `a` and `b`.
pub fn principal_congruence(l: &Lattice, a: usize, b: usize) -> Congruence {
    let mut uf = UnionFind::new(l.len());
    let mut pending = VecDeque::new();
    if uf.union(a, b) {
        pending.push_back((a, b));
    }
    close(l, &mut uf, pending);
    Congruence::from_union_find(uf)
}

/// Join in Con(L): union of the two partitions, transitive closure, then the
/// congruence fixpoint.
pub fn join_congruences(l: &Lattice, a: &Congruence, b: &Congruence) -> Congruence {
    let n = l.len();
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        uf.union(x, a.block[x]);
    }
    let mut pending = VecDeque::new();
    for x in 0..n {
        if uf.union(x, b.block[x]) {
            pending.push_back((x, b.block[x]));
        }
    }
    close(l, &mut uf, pending);
    Congruence::from_union_find(uf)
}

/// The distinct principal congruences `con(a, b)` of cover pairs, in the
/// order first met along the sorted cover list, plus the generator index of
/// every cover.
pub fn cover_congruences(l: &Lattice) -> (Vec<Congruence>, HashMap<(usize, usize), usize>) {
    let mut gens: Vec<Congruence> = Vec::new();
    let mut index: HashMap<Congruence, usize> = HashMap::new();
    let mut of_cover = HashMap::new();
    for (a, b) in l.covers() {
        let c = principal_congruence(l, a, b);
        let i = *index.entry(c.clone()).or_insert_with(|| {
            gens.push(c);
            gens.len() - 1
        });
        of_cover.insert((a, b), i);
    }
    (gens, of_cover)
}

/// All congruences, ordered by refinement.
#[derive(Debug, Clone)]
pub struct CongruenceLattice {
    /// Sorted finest first (by block count, descending), a linear extension
    /// of refinement.
    pub congruences: Vec<Congruence>,
    /// Refinement order on `congruences`, same indexing.
    pub order: Poset,
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    /// Congruences with exactly one lower cover in the refinement order.
    pub fn join_irreducibles(&self) -> Vec<&Congruence> {
        (0..self.len())
            .filter(|&i| self.order.lower_covers(i).len() == 1)
            .map(|i| &self.congruences[i])
            .collect()
    }
}

/// Every congruence of `l`, generated as joins of cover principals starting
/// from the discrete partition.
pub fn all_congruences(l: &Lattice, cap: usize) -> Result<CongruenceLattice, CongruenceError> {
    let (gens, _) = cover_congruences(l);
    let start = Congruence::discrete(l.len());
    let mut seen: HashSet<Congruence> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(theta) = queue.pop_front() {
        for g in &gens {
            if g.refines(&theta) {
                continue;
            }
            let next = join_congruences(l, &theta, g);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(CongruenceError::SizeLimit { cap });
                }
                queue.push_back(next);
            }
        }
    }
    let mut congruences: Vec<Congruence> = seen.into_iter().collect();
    congruences.sort_by(|a, b| b.block_count().cmp(&a.block_count()).then_with(|| a.cmp(b)));
    let m = congruences.len();
    let down = (0..m)
        .map(|b| {
            ElementSet::from_indices(m, (0..=b).filter(|&a| congruences[a].refines(&congruences[b])))
        })
        .collect();
    Ok(CongruenceLattice {
        congruences,
        order: Poset::from_down_sets(down),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lattice,
    Dual,
}

/// Why `j ↦ con(j_*, j)` fails to be a bijection onto the join-irreducible
/// congruences. Elements are indices of the side named.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniformityFailure {
    /// Two join-irreducibles generate the same congruence.
    Collision { side: Side, first: usize, second: usize },
    /// `con(j_*, j)` is not join-irreducible in Con(L).
    NotJoinIrreducible { side: Side, element: usize },
    /// A join-irreducible congruence is not hit.
    Missed { side: Side, blocks: Vec<Vec<usize>> },
}

impl std::fmt::Display for UniformityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UniformityFailure::Collision { side, first, second } => write!(
                f,
                "{side:?}: join-irreducibles {first} and {second} generate the same congruence"
            ),
            UniformityFailure::NotJoinIrreducible { side, element } => write!(
                f,
                "{side:?}: congruence generated at {element} is not join-irreducible"
            ),
            UniformityFailure::Missed { side, blocks } => write!(
                f,
                "{side:?}: join-irreducible congruence {blocks:?} is not generated by any join-irreducible"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Uniformity {
    Uniform,
    NotUniform(UniformityFailure),
}

impl Uniformity {
    pub fn is_uniform(&self) -> bool {
        matches!(self, Uniformity::Uniform)
    }
}

fn check_side<'a>(
    l: &Lattice,
    side: Side,
    is_ji: impl Fn(&Congruence) -> bool,
    ji_congruences: impl Iterator<Item = &'a Congruence>,
) -> Option<UniformityFailure> {
    let mut by_congruence: HashMap<Congruence, usize> = HashMap::new();
    for j in l.join_irreducibles() {
        let lower = l.lower_star(j).expect("join-irreducible");
        let c = principal_congruence(l, lower, j);
        if !is_ji(&c) {
            return Some(UniformityFailure::NotJoinIrreducible { side, element: j });
        }
        if let Some(&first) = by_congruence.get(&c) {
            return Some(UniformityFailure::Collision {
                side,
                first,
                second: j,
            });
        }
        by_congruence.insert(c, j);
    }
    for c in ji_congruences {
        if !by_congruence.contains_key(c) {
            return Some(UniformityFailure::Missed {
                side,
                blocks: c.blocks(),
            });
        }
    }
    None
}

/// Join-irreducible congruences found among the cover principals: a
/// generator is join-irreducible iff the join of the generators strictly
/// below it is smaller. Every congruence is a join of cover principals, so
/// no other congruence can be join-irreducible.
pub fn join_irreducible_congruences(l: &Lattice) -> Vec<Congruence> {
    let (gens, _) = cover_congruences(l);
    gens.iter()
        .filter(|g| {
            let below = gens
                .iter()
                .filter(|h| h != g && h.refines(g))
                .fold(Congruence::discrete(l.len()), |acc, h| join_congruences(l, &acc, h));
            below != **g
        })
        .cloned()
        .collect()
}

fn uniformity_one_side(l: &Lattice, side: Side) -> Option<UniformityFailure> {
    let ji = join_irreducible_congruences(l);
    let set: HashSet<&Congruence> = ji.iter().collect();
    check_side(l, side, |c| set.contains(c), ji.iter())
}

/// Tests that `j ↦ con(j_*, j)` bijects J(L) onto the join-irreducibles of
/// Con(L), for `l` and for its dual.
pub fn congruence_uniformity(l: &Lattice) -> Uniformity {
    if let Some(f) = uniformity_one_side(l, Side::Lattice) {
        return Uniformity::NotUniform(f);
    }
    match uniformity_one_side(&l.dual(), Side::Dual) {
        Some(f) => Uniformity::NotUniform(f),
        None => Uniformity::Uniform,
    }
}

pub fn is_congruence_uniform(l: &Lattice) -> bool {
    congruence_uniformity(l).is_uniform()
}

/// Same test, reading the join-irreducible congruences off the full
/// refinement poset of [`all_congruences`].
pub fn congruence_uniformity_full(l: &Lattice, cap: usize) -> Result<Uniformity, CongruenceError> {
    for (lat, side) in [(l.clone(), Side::Lattice), (l.dual(), Side::Dual)] {
        let con = all_congruences(&lat, cap)?;
        let ji = con.join_irreducibles();
        let set: HashSet<&Congruence> = ji.iter().copied().collect();
        if let Some(f) = check_side(&lat, side, |c| set.contains(c), ji.iter().copied()) {
            return Ok(Uniformity::NotUniform(f));
        }
    }
    Ok(Uniformity::Uniform)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boolean, chain, m3, n5};

    #[test]
    fn principal_basics() {
        let c2 = chain(2);
        assert!(principal_congruence(&c2, 0, 0).is_discrete());
        assert_eq!(principal_congruence(&c2, 0, 1).block_count(), 1);
    }

    #[test]
    fn pentagon_principal_by_hand() {
        // 0 < 1 < 3 < 4, 0 < 2 < 4. Collapsing 1 ≡ 3: meets with 2 give 0 ≡ 0,
        // joins with 2 give 4 ≡ 4, so the partition stays {1,3} plus singletons.
        let l = n5();
        let c = principal_congruence(&l, 1, 3);
        assert_eq!(c.blocks(), vec![vec![0], vec![1, 3], vec![2], vec![4]]);
        // Collapsing 0 ≡ 1: joining with 2 gives 2 ≡ 4, then meeting that
        // pair with 3 gives 0 ≡ 3.
        let c = principal_congruence(&l, 0, 1);
        assert_eq!(c.blocks(), vec![vec![0, 1, 3], vec![2, 4]]);
        assert!(c.is_compatible_with(&l));
    }

    #[test]
    fn congruence_counts() {
        assert_eq!(all_congruences(&chain(2), DEFAULT_CONGRUENCE_CAP).unwrap().len(), 2);
        assert_eq!(all_congruences(&chain(3), DEFAULT_CONGRUENCE_CAP).unwrap().len(), 4);
        let b2 = all_congruences(&boolean(2), DEFAULT_CONGRUENCE_CAP).unwrap();
        assert_eq!(b2.len(), 4);
        assert!(b2.order.is_isomorphic(boolean(2).poset()).is_some());
        assert_eq!(all_congruences(&m3(), DEFAULT_CONGRUENCE_CAP).unwrap().len(), 2);
    }

    #[test]
    fn size_limit() {
        assert_eq!(
            all_congruences(&boolean(3), 4).unwrap_err(),
            CongruenceError::SizeLimit { cap: 4 }
        );
    }

    #[test]
    fn uniformity_small_cases() {
        assert!(is_congruence_uniform(&chain(4)));
        assert!(is_congruence_uniform(&boolean(3)));
        assert!(is_congruence_uniform(&n5()));
        match congruence_uniformity(&m3()) {
            Uniformity::NotUniform(UniformityFailure::Collision { side: Side::Lattice, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        for l in [chain(3), n5(), m3(), boolean(2)] {
            assert_eq!(
                congruence_uniformity_full(&l, DEFAULT_CONGRUENCE_CAP).unwrap().is_uniform(),
                is_congruence_uniform(&l)
            );
        }
    }

    #[test]
    fn blocks_are_intervals_in_examples() {
        for l in [n5(), boolean(3), chain(4)] {
            for c in all_congruences(&l, DEFAULT_CONGRUENCE_CAP).unwrap().congruences {
                assert!(c.is_compatible_with(&l));
                assert!(c.blocks_are_intervals(&l));
            }
        }
    }
}
