//! Finite lattices with materialized meet and join tables.

use crate::bitset::ElementSet;
use crate::error::{BoundKind, LatticeError};
use crate::poset::Poset;

#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    poset: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    join_irreducibles: ElementSet,
    meet_irreducibles: ElementSet,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lattice")
            .field("n", &self.len())
            .field("covers", &self.poset.covers())
            .finish()
    }
}

/// The two five-element lattices whose absence characterizes distributivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// The pentagon.
    N5,
    /// The diamond.
    M3,
}

/// Greatest element of `common` if it is below-or-equal to nothing outside it,
/// using that the index order is a linear extension.
fn bound(common: &ElementSet, principal: impl Fn(usize) -> ElementSet, greatest: bool) -> Option<usize> {
    let cand = if greatest {
        common.iter().last()?
    } else {
        common.first()?
    };
    (principal(cand) == *common).then_some(cand)
}

impl Lattice {
    /// Builds the lattice on `p`, or names a pair with no unique meet or join.
    pub fn try_from_poset(p: Poset) -> Result<Lattice, LatticeError> {
        let n = p.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let lower = p.down_set(x).intersection(p.down_set(y));
                let m = bound(&lower, |g| p.down_set(g).clone(), true).ok_or_else(|| {
                    LatticeError::NotALattice {
                        x,
                        y,
                        kind: BoundKind::Meet,
                        witnesses: lower
                            .iter()
                            .filter(|&g| p.up_set(g).intersection(&lower).len() == 1)
                            .collect(),
                    }
                })?;
                let upper = p.up_set(x).intersection(p.up_set(y));
                let j = bound(&upper, |g| p.up_set(g).clone(), false).ok_or_else(|| {
                    LatticeError::NotALattice {
                        x,
                        y,
                        kind: BoundKind::Join,
                        witnesses: upper
                            .iter()
                            .filter(|&g| p.down_set(g).intersection(&upper).len() == 1)
                            .collect(),
                    }
                })?;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
                join[x * n + y] = j;
                join[y * n + x] = j;
            }
        }
        let bottom = 0;
        let top = n - 1;
        debug_assert_eq!(p.down_set(top).len(), n);

        let join_irreducibles =
            ElementSet::from_indices(n, (0..n).filter(|&x| p.lower_covers(x).len() == 1));
        let meet_irreducibles =
            ElementSet::from_indices(n, (0..n).filter(|&x| p.upper_covers(x).len() == 1));
        let l = Lattice {
            poset: p,
            meet,
            join,
            bottom,
            top,
            join_irreducibles,
            meet_irreducibles,
        };
        assert_eq!(
            l.join_irreducibles,
            l.join_irreducibles_algebraic(),
            "cover-based and algebraic join-irreducibility disagree"
        );
        Ok(l)
    }

    /// Elements `j != 0̂` such that `j = x ∨ y` forces `j ∈ {x, y}`.
    pub fn join_irreducibles_algebraic(&self) -> ElementSet {
        let n = self.len();
        let mut reducible = ElementSet::empty(n);
        reducible.insert(self.bottom);
        for x in 0..n {
            for y in 0..n {
                let j = self.join(x, y);
                if j != x && j != y {
                    reducible.insert(j);
                }
            }
        }
        reducible.complement()
    }

    pub fn parse(text: &str) -> Result<Lattice, LatticeError> {
        Lattice::try_from_poset(Poset::parse(text)?)
    }

    pub fn to_text(&self) -> String {
        self.poset.to_text()
    }

    pub fn from_covers(n: usize, pairs: &[(usize, usize)]) -> Result<Lattice, LatticeError> {
        Lattice::try_from_poset(Poset::from_covers(n, pairs)?)
    }

    #[inline]
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    /// Join of a set; the empty join is `0̂`.
    pub fn join_set<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a set; the empty meet is `1̂`.
    pub fn meet_set<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        self.poset.lower_covers(x)
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        self.poset.upper_covers(x)
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.poset.covers()
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.poset.is_cover(a, b)
    }

    pub fn join_irreducibles(&self) -> &ElementSet {
        &self.join_irreducibles
    }

    pub fn meet_irreducibles(&self) -> &ElementSet {
        &self.meet_irreducibles
    }

    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.join_irreducibles.contains(x)
    }

    /// The unique lower cover `j_*` of a join-irreducible `j`.
    pub fn lower_star(&self, j: usize) -> Option<usize> {
        match self.lower_covers(j) {
            [c] => Some(*c),
            _ => None,
        }
    }

    /// The unique upper cover of a meet-irreducible `m`.
    pub fn upper_star(&self, m: usize) -> Option<usize> {
        match self.upper_covers(m) {
            [c] => Some(*c),
            _ => None,
        }
    }

    /// The join-irreducibles as an induced poset, with `elements[i]` the
    /// lattice element at poset index `i`.
    pub fn join_irreducible_poset(&self) -> (Poset, Vec<usize>) {
        (
            self.poset.induced(&self.join_irreducibles),
            self.join_irreducibles.to_vec(),
        )
    }

    pub fn interval_members(&self, a: usize, b: usize) -> Result<ElementSet, LatticeError> {
        if !self.leq(a, b) {
            return Err(LatticeError::NotComparable { a, b });
        }
        Ok(self.poset.up_set(a).intersection(self.poset.down_set(b)))
    }

    /// The interval `[a, b]` as a lattice in its own right, elements in
    /// increasing ambient index order.
    pub fn interval(&self, a: usize, b: usize) -> Result<Lattice, LatticeError> {
        let members = self.interval_members(a, b)?;
        let sub = Lattice::try_from_poset(self.poset.induced(&members))?;
        debug_assert!({
            let elems = members.to_vec();
            (0..elems.len()).all(|i| {
                (0..elems.len()).all(|j| {
                    elems[sub.meet(i, j)] == self.meet(elems[i], elems[j])
                        && elems[sub.join(i, j)] == self.join(elems[i], elems[j])
                })
            })
        });
        Ok(sub)
    }

    /// The dual lattice; element `i` of the dual is element `n - 1 - i` here.
    pub fn dual(&self) -> Lattice {
        Lattice::try_from_poset(self.poset.dual()).expect("dual of a lattice is a lattice")
    }

    pub fn is_isomorphic(&self, other: &Lattice) -> Option<Vec<usize>> {
        self.poset.is_isomorphic(&other.poset)
    }

    /// Shortest and longest maximal chain lengths agree.
    pub fn is_graded(&self) -> bool {
        let n = self.len();
        let mut shortest = vec![usize::MAX; n];
        shortest[self.bottom] = 0;
        for x in 0..n {
            for &c in self.lower_covers(x) {
                shortest[x] = shortest[x].min(shortest[c] + 1);
            }
        }
        shortest[self.top] == self.poset.heights()[self.top]
    }

    /// Both distributive identities on every triple.
    pub fn is_distributive_law(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                        && self.join(x, self.meet(y, z))
                            == self.meet(self.join(x, y), self.join(x, z))
                })
            })
        })
    }

    /// A sublattice isomorphic to `pattern`, if any.
    ///
    /// N5 witnesses are `[bottom, b, c, d, top]` with `b < c` and `d` the
    /// isolated side; M3 witnesses are `[bottom, a, b, c, top]`. The search
    /// anchors on the middle elements: `b < c` with `d` incomparable to both
    /// and `b ∧ d = c ∧ d`, `b ∨ d = c ∨ d` (resp. three pairwise incomparable
    /// elements with one common pairwise meet and join), which is exactly
    /// closure of the five-element set.
    pub fn has_sublattice(&self, pattern: Pattern) -> Option<[usize; 5]> {
        let n = self.len();
        if n < 5 {
            return None;
        }
        match pattern {
            Pattern::N5 => {
                for b in 0..n {
                    for c in self.poset.up_set(b).iter().filter(|&c| c != b) {
                        for d in 0..n {
                            if self.poset.comparable(b, d) || self.poset.comparable(c, d) {
                                continue;
                            }
                            let lo = self.meet(b, d);
                            let hi = self.join(b, d);
                            if self.meet(c, d) == lo && self.join(c, d) == hi {
                                return Some([lo, b, c, d, hi]);
                            }
                        }
                    }
                }
                None
            }
            Pattern::M3 => {
                for a in 0..n {
                    for b in a + 1..n {
                        if self.poset.comparable(a, b) {
                            continue;
                        }
                        let lo = self.meet(a, b);
                        let hi = self.join(a, b);
                        for c in b + 1..n {
                            if self.poset.comparable(a, c) || self.poset.comparable(b, c) {
                                continue;
                            }
                            if self.meet(a, c) == lo
                                && self.meet(b, c) == lo
                                && self.join(a, c) == hi
                                && self.join(b, c) == hi
                            {
                                return Some([lo, a, b, c, hi]);
                            }
                        }
                    }
                }
                None
            }
        }
    }

    /// `x ∨ y = x ∨ z` implies `x ∨ y = x ∨ (y ∧ z)`.
    pub fn is_join_semidistributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let xy = self.join(x, y);
                    xy != self.join(x, z) || xy == self.join(x, self.meet(y, z))
                })
            })
        })
    }

    pub fn is_meet_semidistributive(&self) -> bool {
        self.dual().is_join_semidistributive()
    }

    pub fn is_semidistributive(&self) -> bool {
        self.is_join_semidistributive() && self.is_meet_semidistributive()
    }

    /// Whether `elems` is closed under the ambient meet and join.
    pub fn is_sublattice(&self, elems: &[usize]) -> bool {
        elems.iter().all(|&x| {
            elems
                .iter()
                .all(|&y| elems.contains(&self.meet(x, y)) && elems.contains(&self.join(x, y)))
        })
    }
}
