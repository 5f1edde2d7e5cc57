//! Finite posets on dense indices `0..n`.
//!
//! Every [`Poset`] is indexed along a linear extension: `a < b` in the order
//! implies `a < b` as integers. Constructors that receive relations in some
//! other indexing relabel the elements with a stable topological sort
//! (smallest available index first), so inputs that already respect the
//! index order keep their labels.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use crate::bitset::ElementSet;
use crate::error::PosetError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    down: Vec<ElementSet>,
    up: Vec<ElementSet>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.covers())
            .finish()
    }
}

/// Stable Kahn sort. `preds[x]` lists elements that must precede `x`.
fn linearize(n: usize, preds: &[Vec<usize>]) -> Result<Vec<usize>, PosetError> {
    let mut indegree: Vec<usize> = preds.iter().map(Vec::len).collect();
    let mut succs = vec![Vec::new(); n];
    for (x, ps) in preds.iter().enumerate() {
        for &p in ps {
            succs[p].push(x);
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&x| indegree[x] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(x)) = heap.pop() {
        order.push(x);
        for &s in &succs[x] {
            indegree[s] -= 1;
            if indegree[s] == 0 {
                heap.push(Reverse(s));
            }
        }
    }
    if order.len() < n {
        let elements = (0..n).filter(|&x| indegree[x] > 0).collect();
        return Err(PosetError::Cycle { elements });
    }
    Ok(order)
}

impl Poset {
    /// Builds a poset from principal down-sets that already respect the index
    /// order.
    pub(crate) fn from_down_sets(down: Vec<ElementSet>) -> Poset {
        let n = down.len();
        let mut up = vec![ElementSet::empty(n); n];
        for (x, d) in down.iter().enumerate() {
            debug_assert!(d.contains(x));
            for y in d {
                debug_assert!(y <= x, "down-sets must follow the index order");
                up[y].insert(x);
            }
        }
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for x in 0..n {
            let mut strict = down[x].clone();
            strict.remove(x);
            for y in &strict {
                // y is maximal in strict iff nothing strictly between y and x.
                if up[y].intersection(&strict).len() == 1 {
                    lower_covers[x].push(y);
                    upper_covers[y].push(x);
                }
            }
        }
        for uc in &mut upper_covers {
            uc.sort_unstable();
        }
        Poset {
            n,
            down,
            up,
            lower_covers,
            upper_covers,
        }
    }

    /// Reflexive-transitive closure of `pairs`, relabeled if needed.
    ///
    /// Pairs implied by others are dropped from the cover list. If the pairs
    /// do not respect the index order the result is relabeled; use
    /// [`Poset::from_covers_relabeled`] to recover the relabeling.
    pub fn from_covers(n: usize, pairs: &[(usize, usize)]) -> Result<Poset, PosetError> {
        Self::from_covers_relabeled(n, pairs).map(|(p, _)| p)
    }

    /// Like [`Poset::from_covers`], also returning `order` with
    /// `order[new_index] = old_index`.
    pub fn from_covers_relabeled(
        n: usize,
        pairs: &[(usize, usize)],
    ) -> Result<(Poset, Vec<usize>), PosetError> {
        let mut preds = vec![Vec::new(); n];
        for &(a, b) in pairs {
            for index in [a, b] {
                if index >= n {
                    return Err(PosetError::Range { index, n });
                }
            }
            if a == b {
                return Err(PosetError::Cycle { elements: vec![a] });
            }
            preds[b].push(a);
        }
        let order = linearize(n, &preds)?;
        let mut position = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let mut down: Vec<ElementSet> = Vec::with_capacity(n);
        for &old in &order {
            let mut d = ElementSet::singleton(n, position[old]);
            for &p in &preds[old] {
                let pd = down[position[p]].clone();
                d.union_with(&pd);
            }
            down.push(d);
        }
        Ok((Self::from_down_sets(down), order))
    }

    /// Builds a poset from an arbitrary order relation `leq(a, b)`, which is
    /// validated as a partial order. Returns `order[new_index] = old_index`.
    pub fn from_relation<F>(n: usize, leq: F) -> Result<(Poset, Vec<usize>), PosetError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let rel: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| leq(a, b)).collect()).collect();
        for a in 0..n {
            if !rel[a][a] {
                return Err(PosetError::NotAPartialOrder {
                    reason: format!("{a} is not related to itself"),
                });
            }
            for b in 0..n {
                if a != b && rel[a][b] && rel[b][a] {
                    return Err(PosetError::NotAPartialOrder {
                        reason: format!("{a} and {b} violate antisymmetry"),
                    });
                }
                if rel[a][b] {
                    if let Some(c) = (0..n).find(|&c| rel[b][c] && !rel[a][c]) {
                        return Err(PosetError::NotAPartialOrder {
                            reason: format!("{a} <= {b} <= {c} but not {a} <= {c}"),
                        });
                    }
                }
            }
        }
        let preds: Vec<Vec<usize>> = (0..n)
            .map(|b| (0..n).filter(|&a| a != b && rel[a][b]).collect())
            .collect();
        let order = linearize(n, &preds)?;
        let mut position = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let down = order
            .iter()
            .map(|&old| {
                ElementSet::from_indices(n, (0..n).filter(|&a| rel[a][old]).map(|a| position[a]))
            })
            .collect();
        Ok((Self::from_down_sets(down), order))
    }

    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(n, &pairs).expect("chain is acyclic")
    }

    pub fn antichain(n: usize) -> Poset {
        Self::from_covers(n, &[]).expect("antichain is acyclic")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Principal ideal `{y : y <= x}`.
    #[inline]
    pub fn down_set(&self, x: usize) -> &ElementSet {
        &self.down[x]
    }

    /// Principal filter `{y : y >= x}`.
    #[inline]
    pub fn up_set(&self, x: usize) -> &ElementSet {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.lower_covers[b].contains(&a)
    }

    /// All cover pairs `(a, b)` with `a ⋖ b`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.n)
            .flat_map(|b| self.lower_covers[b].iter().map(move |&a| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn cover_count(&self) -> usize {
        self.lower_covers.iter().map(Vec::len).sum()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.lower_covers[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.upper_covers[x].is_empty()).collect()
    }

    /// The dual order, indexed by `n - 1 - i` so the index order stays a
    /// linear extension. `dual(dual(p)) == p`.
    pub fn dual(&self) -> Poset {
        let n = self.n;
        let down = (0..n)
            .map(|i| ElementSet::from_indices(n, self.up[n - 1 - i].iter().map(|y| n - 1 - y)))
            .collect();
        Self::from_down_sets(down)
    }

    /// The order ideal generated by `x`.
    pub fn ideal_generated(&self, x: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.n);
        for i in x {
            out.union_with(&self.down[i]);
        }
        out
    }

    /// The order filter generated by `x`.
    pub fn filter_generated(&self, x: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.n);
        for i in x {
            out.union_with(&self.up[i]);
        }
        out
    }

    pub fn is_order_ideal(&self, x: &ElementSet) -> bool {
        x.iter().all(|i| self.down[i].is_subset(x))
    }

    pub fn is_order_filter(&self, x: &ElementSet) -> bool {
        x.iter().all(|i| self.up[i].is_subset(x))
    }

    /// Calls `visit` once for every order ideal. Elements are decided in the
    /// index order; an element may join only if all its lower covers did, so
    /// no branch dead-ends. The empty ideal comes first.
    pub fn for_each_order_ideal<F: FnMut(&ElementSet)>(&self, mut visit: F) {
        fn rec<F: FnMut(&ElementSet)>(p: &Poset, i: usize, current: &mut ElementSet, visit: &mut F) {
            if i == p.n {
                visit(current);
                return;
            }
            rec(p, i + 1, current, visit);
            if p.lower_covers[i].iter().all(|&c| current.contains(c)) {
                current.insert(i);
                rec(p, i + 1, current, visit);
                current.remove(i);
            }
        }
        let mut current = ElementSet::empty(self.n);
        rec(self, 0, &mut current, &mut visit);
    }

    pub fn all_order_ideals(&self) -> Vec<ElementSet> {
        let mut out = Vec::new();
        self.for_each_order_ideal(|s| out.push(s.clone()));
        out
    }

    /// Length (number of covers) of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.n];
        for x in 0..self.n {
            h[x] = self.lower_covers[x].iter().map(|&c| h[c] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Length of the longest chain starting at each element.
    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for x in (0..self.n).rev() {
            d[x] = self.upper_covers[x].iter().map(|&c| d[c] + 1).max().unwrap_or(0);
        }
        d
    }

    fn vertex_invariants(&self) -> Vec<[usize; 6]> {
        let h = self.heights();
        let d = self.depths();
        (0..self.n)
            .map(|x| {
                [
                    h[x],
                    d[x],
                    self.down[x].len(),
                    self.up[x].len(),
                    self.lower_covers[x].len(),
                    self.upper_covers[x].len(),
                ]
            })
            .collect()
    }

    /// Subposet induced on `members`, reindexed in increasing index order.
    pub fn induced(&self, members: &ElementSet) -> Poset {
        let elems = members.to_vec();
        let m = elems.len();
        let down = elems
            .iter()
            .map(|&x| {
                ElementSet::from_indices(
                    m,
                    elems.iter().enumerate().filter(|&(_, &y)| self.leq(y, x)).map(|(i, _)| i),
                )
            })
            .collect();
        Self::from_down_sets(down)
    }

    /// An order isomorphism `self -> other` as `map[i]`, if one exists.
    ///
    /// Backtracks over the elements of `self` in index order with candidates
    /// tried lowest index first, pruning by height, depth, ideal/filter sizes
    /// and cover degrees.
    pub fn is_isomorphic(&self, other: &Poset) -> Option<Vec<usize>> {
        if self.n != other.n || self.cover_count() != other.cover_count() {
            return None;
        }
        let inv_p = self.vertex_invariants();
        let inv_q = other.vertex_invariants();
        let mut sp = inv_p.clone();
        let mut sq = inv_q.clone();
        sp.sort_unstable();
        sq.sort_unstable();
        if sp != sq {
            return None;
        }
        let n = self.n;
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];

        fn rec(
            p: &Poset,
            q: &Poset,
            inv_p: &[[usize; 6]],
            inv_q: &[[usize; 6]],
            i: usize,
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if i == p.n {
                return true;
            }
            for j in 0..q.n {
                if used[j] || inv_p[i] != inv_q[j] {
                    continue;
                }
                let consistent = (0..i).all(|a| {
                    let fa = map[a];
                    p.leq(a, i) == q.leq(fa, j) && p.leq(i, a) == q.leq(j, fa)
                });
                if !consistent {
                    continue;
                }
                map[i] = j;
                used[j] = true;
                if rec(p, q, inv_p, inv_q, i + 1, map, used) {
                    return true;
                }
                used[j] = false;
            }
            false
        }

        rec(self, other, &inv_p, &inv_q, 0, &mut map, &mut used).then_some(map)
    }

    /// Color refinement: start from vertex invariants, refine by the sorted
    /// color lists of lower and upper covers until stable. Colors are ranks
    /// of sorted signatures and therefore isomorphism-invariant.
    fn refined_colors(&self) -> Vec<usize> {
        let inv = self.vertex_invariants();
        let mut colors = rank(&inv);
        loop {
            let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..self.n)
                .map(|x| {
                    let mut lo: Vec<usize> = self.lower_covers[x].iter().map(|&c| colors[c]).collect();
                    let mut hi: Vec<usize> = self.upper_covers[x].iter().map(|&c| colors[c]).collect();
                    lo.sort_unstable();
                    hi.sort_unstable();
                    (colors[x], lo, hi)
                })
                .collect();
            let next = rank(&sigs);
            let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
            if classes(&next) == classes(&colors) {
                return next;
            }
            colors = next;
        }
    }

    /// A complete isomorphism invariant: two posets are isomorphic iff their
    /// canonical forms are equal.
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.n;
        let colors = self.refined_colors();
        // position k must be filled from class slot[k]
        let mut slot: Vec<usize> = colors.clone();
        slot.sort_unstable();

        struct Search<'a> {
            p: &'a Poset,
            colors: &'a [usize],
            slot: &'a [usize],
            perm: Vec<usize>,
            used: Vec<bool>,
            code: Vec<u8>,
            best: Option<Vec<u8>>,
        }

        impl Search<'_> {
            fn code(&self, a: usize, b: usize) -> u8 {
                if self.p.leq(a, b) {
                    1
                } else if self.p.leq(b, a) {
                    2
                } else {
                    0
                }
            }

            fn rec(&mut self, k: usize) {
                let n = self.p.n;
                if k == n {
                    if self.best.as_ref().is_none_or(|b| self.code < *b) {
                        self.best = Some(self.code.clone());
                    }
                    return;
                }
                for x in 0..n {
                    if self.used[x] || self.colors[x] != self.slot[k] {
                        continue;
                    }
                    let start = self.code.len();
                    for i in 0..k {
                        let c = self.code(self.perm[i], x);
                        self.code.push(c);
                    }
                    let pruned = self
                        .best
                        .as_ref()
                        .is_some_and(|b| self.code[..] > b[..self.code.len()]);
                    if !pruned {
                        self.used[x] = true;
                        self.perm.push(x);
                        self.rec(k + 1);
                        self.perm.pop();
                        self.used[x] = false;
                    }
                    self.code.truncate(start);
                }
            }
        }

        let mut search = Search {
            p: self,
            colors: &colors,
            slot: &slot,
            perm: Vec::with_capacity(n),
            used: vec![false; n],
            code: Vec::with_capacity(n * n / 2),
            best: None,
        };
        search.rec(0);
        CanonicalForm {
            n,
            code: search.best.unwrap_or_default(),
        }
    }

    /// Parses the "poset v1" text format.
    ///
    /// ```text
    /// poset 3
    /// 0 < 1   # comments run to end of line
    /// 1 < 2
    /// ```
    ///
    /// Pairs that are not covers are accepted and reduced away.
    pub fn parse(text: &str) -> Result<Poset, PosetError> {
        let (n, pairs, _) = parse_poset_lines(text)?;
        Poset::from_covers(n, &pairs)
    }

    /// Writes the "poset v1" text format with covers in sorted order.
    pub fn to_text(&self) -> String {
        let mut s = format!("poset {}\n", self.n);
        for (a, b) in self.covers() {
            let _ = writeln!(s, "{a} < {b}");
        }
        s
    }
}

fn rank<T: Ord + Clone>(items: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = items.to_vec();
    sorted.sort();
    sorted.dedup();
    items
        .iter()
        .map(|x| sorted.binary_search(x).expect("present"))
        .collect()
}

/// Result of [`Poset::canonical_form`]: the number of elements plus the
/// lexicographically least relation code over all color-respecting labelings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    code: Vec<u8>,
}

impl CanonicalForm {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// Element count, relation pairs and numbered leftover lines.
pub(crate) type PosetLines = (usize, Vec<(usize, usize)>, Vec<(usize, String)>);

/// Splits a "poset v1" document into its element count, relation pairs and
/// the remaining non-relation lines (with line numbers) for callers that
/// extend the format.
pub(crate) fn parse_poset_lines(
    text: &str,
) -> Result<PosetLines, PosetError> {
    let mut n = None;
    let mut pairs = Vec::new();
    let mut extra = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| PosetError::Parse {
            line: line_no,
            message,
        };
        let Some(count) = n else {
            let mut parts = line.split_whitespace();
            if parts.next() != Some("poset") {
                return Err(err("expected header `poset <n>`".into()));
            }
            let count: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err("expected element count after `poset`".into()))?;
            if parts.next().is_some() {
                return Err(err("trailing tokens after header".into()));
            }
            n = Some(count);
            continue;
        };
        if let Some((a, b)) = line.split_once('<') {
            let parse = |t: &str| -> Result<usize, PosetError> {
                let v: usize = t
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad element index `{}`", t.trim())))?;
                if v >= count {
                    return Err(err(format!("index {v} out of range for {count} elements")));
                }
                Ok(v)
            };
            pairs.push((parse(a)?, parse(b)?));
        } else {
            extra.push((line_no, line.to_string()));
        }
    }
    let n = n.ok_or(PosetError::Parse {
        line: 0,
        message: "missing `poset <n>` header".into(),
    })?;
    Ok((n, pairs, extra))
}
