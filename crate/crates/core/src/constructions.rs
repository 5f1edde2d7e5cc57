//! Lattice builders: chains, Boolean lattices, ideal lattices, doubling and
//! exhaustive enumeration up to isomorphism.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::ElementSet;
use crate::error::{ConstructionError, LatticeError};
use crate::exec::Exec;
use crate::lattice::Lattice;
use crate::poset::{CanonicalForm, Poset};

pub fn singleton() -> Lattice {
    chain(1)
}

/// The chain `0 < 1 < ... < n-1`. Panics if `n == 0`.
pub fn chain(n: usize) -> Lattice {
    assert!(n >= 1, "a lattice needs at least one element");
    Lattice::try_from_poset(Poset::chain(n)).expect("chains are lattices")
}

/// Subsets of `{0..k}` with element `i` the subset whose bitmask is `i`.
pub fn boolean(k: usize) -> Lattice {
    let n = 1usize << k;
    let down = (0..n)
        .map(|x| ElementSet::from_indices(n, (0..n).filter(|&y| y & !x == 0)))
        .collect();
    Lattice::try_from_poset(Poset::from_down_sets(down)).expect("Boolean lattices are lattices")
}

/// `0 < 1 < 3 < 4` and `0 < 2 < 4`.
pub fn n5() -> Lattice {
    Lattice::from_covers(5, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)]).expect("N5")
}

/// Bottom, three atoms, top.
pub fn m3() -> Lattice {
    Lattice::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).expect("M3")
}

/// Elements of `P[X]`: `(y, false)` for `y` in the ideal generated by `X`,
/// then `(y, true)` for `y` outside that ideal or in `X`, each in the old
/// index order.
pub fn doubling_ground_set(p: &Poset, x: &ElementSet) -> Vec<(usize, bool)> {
    let ideal = p.ideal_generated(x);
    let lower = ideal.iter().map(|y| (y, false));
    let upper = (0..p.len())
        .filter(|&y| !ideal.contains(y) || x.contains(y))
        .map(|y| (y, true));
    lower.chain(upper).collect()
}

/// The doubling `P[X]` as a subposet of `P × 2`.
///
/// The element order from [`doubling_ground_set`] is already a linear
/// extension of the product order.
pub fn double(p: &Poset, x: &ElementSet) -> Poset {
    let ground = doubling_ground_set(p, x);
    let m = ground.len();
    let down = ground
        .iter()
        .map(|&(z, zb)| {
            ElementSet::from_indices(
                m,
                ground
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(y, yb))| p.leq(y, z) && (!yb || zb))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    Poset::from_down_sets(down)
}

pub fn double_lattice(l: &Lattice, x: &ElementSet) -> Result<Lattice, LatticeError> {
    Lattice::try_from_poset(double(l.poset(), x))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DoublingStep {
    Interval(usize, usize),
    PrincipalFilter(usize),
    Set(Vec<usize>),
}

impl DoublingStep {
    /// The doubled subset in `l`, validated.
    pub fn subset(&self, l: &Lattice) -> Result<ElementSet, String> {
        let n = l.len();
        let check = |i: usize| {
            if i < n {
                Ok(i)
            } else {
                Err(format!("index {i} out of range for {n} elements"))
            }
        };
        match self {
            DoublingStep::Interval(a, b) => {
                check(*a)?;
                check(*b)?;
                l.interval_members(*a, *b).map_err(|e| e.to_string())
            }
            DoublingStep::PrincipalFilter(a) => Ok(l.poset().up_set(check(*a)?).clone()),
            DoublingStep::Set(items) => {
                let mut s = ElementSet::empty(n);
                for &i in items {
                    s.insert(check(i)?);
                }
                Ok(s)
            }
        }
    }
}

/// A sequence of doublings applied to the singleton lattice. Each step's
/// indices refer to the lattice produced by the previous steps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DoublingScript {
    pub steps: Vec<DoublingStep>,
}

#[derive(Debug, Clone)]
pub struct ScriptOutcome {
    pub lattice: Lattice,
    /// Every doubled subset was an interval of the lattice at that step.
    pub all_steps_intervals: bool,
    /// Every doubled subset was a principal order filter at that step.
    pub all_steps_principal_filters: bool,
}

pub fn is_principal_filter(l: &Lattice, x: &ElementSet) -> bool {
    x.first().is_some_and(|a| l.poset().up_set(a) == x)
}

/// Nonempty and equal to `[min, max]` of itself.
pub fn is_interval(l: &Lattice, x: &ElementSet) -> bool {
    if x.is_empty() {
        return false;
    }
    let lo = l.meet_set(x.iter());
    let hi = l.join_set(x.iter());
    x.contains(lo) && x.contains(hi) && l.interval_members(lo, hi).is_ok_and(|m| m == *x)
}

impl DoublingScript {
    pub fn new(steps: Vec<DoublingStep>) -> Self {
        DoublingScript { steps }
    }

    /// Parses one step per line: `interval a b`, `filter a` or `set i j ...`.
    pub fn parse(text: &str) -> Result<DoublingScript, ConstructionError> {
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ConstructionError::Parse {
                line: i + 1,
                message,
            };
            let mut parts = line.split_whitespace();
            let kind = parts.next().unwrap_or_default();
            let args: Vec<usize> = parts
                .map(|t| t.parse().map_err(|_| err(format!("bad index `{t}`"))))
                .collect::<Result<_, _>>()?;
            let step = match (kind, args.as_slice()) {
                ("interval", [a, b]) => DoublingStep::Interval(*a, *b),
                ("filter", [a]) => DoublingStep::PrincipalFilter(*a),
                ("set", _) => DoublingStep::Set(args),
                ("interval" | "filter", _) => {
                    return Err(err(format!("wrong number of arguments for `{kind}`")))
                }
                _ => return Err(err(format!("unknown step `{kind}`"))),
            };
            steps.push(step);
        }
        Ok(DoublingScript { steps })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for step in &self.steps {
            let _ = match step {
                DoublingStep::Interval(a, b) => writeln!(s, "interval {a} {b}"),
                DoublingStep::PrincipalFilter(a) => writeln!(s, "filter {a}"),
                DoublingStep::Set(items) => {
                    let body: Vec<String> = items.iter().map(usize::to_string).collect();
                    writeln!(s, "set {}", body.join(" ")).map(|_| ())
                }
            };
        }
        s
    }

    /// Folds the doublings from the singleton lattice.
    pub fn build(&self) -> Result<ScriptOutcome, ConstructionError> {
        let mut l = singleton();
        let mut all_steps_intervals = true;
        let mut all_steps_principal_filters = true;
        for (i, step) in self.steps.iter().enumerate() {
            let x = step
                .subset(&l)
                .map_err(|reason| ConstructionError::InvalidStep { step: i, reason })?;
            all_steps_intervals &= is_interval(&l, &x);
            all_steps_principal_filters &= is_principal_filter(&l, &x);
            l = double_lattice(&l, &x).map_err(|e| ConstructionError::InvalidStep {
                step: i,
                reason: format!("doubling does not yield a lattice: {e}"),
            })?;
        }
        Ok(ScriptOutcome {
            lattice: l,
            all_steps_intervals,
            all_steps_principal_filters,
        })
    }
}

pub fn build_from_script(s: &DoublingScript) -> Result<ScriptOutcome, ConstructionError> {
    s.build()
}

pub(crate) fn script_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A script of 1..=`max_len` doublings by uniformly chosen intervals `[a, b]`.
pub fn random_interval_script(rng: &mut impl Rng, max_len: usize) -> DoublingScript {
    let len = rng.gen_range(1..=max_len.max(1));
    let mut l = singleton();
    let mut steps = Vec::with_capacity(len);
    for _ in 0..len {
        let pairs: Vec<(usize, usize)> = (0..l.len())
            .flat_map(|a| l.poset().up_set(a).iter().map(move |b| (a, b)).collect::<Vec<_>>())
            .collect();
        let (a, b) = pairs[rng.gen_range(0..pairs.len())];
        let step = DoublingStep::Interval(a, b);
        let x = step.subset(&l).expect("comparable");
        l = double_lattice(&l, &x).expect("interval doubling of a lattice is a lattice");
        steps.push(step);
    }
    DoublingScript { steps }
}

/// A script of 1..=`max_len` doublings by uniformly chosen principal filters.
pub fn random_filter_script(rng: &mut impl Rng, max_len: usize) -> DoublingScript {
    let len = rng.gen_range(1..=max_len.max(1));
    let mut l = singleton();
    let mut steps = Vec::with_capacity(len);
    for _ in 0..len {
        let a = rng.gen_range(0..l.len());
        let x = l.poset().up_set(a).clone();
        l = double_lattice(&l, &x).expect("filter doubling of a lattice is a lattice");
        steps.push(DoublingStep::PrincipalFilter(a));
    }
    DoublingScript { steps }
}

/// The lattice of order ideals of `p` together with the ideal behind each
/// element. Ideals are sorted by size, then lexicographically.
pub fn birkhoff_with_ideals(p: &Poset) -> (Lattice, Vec<ElementSet>) {
    let mut ideals = p.all_order_ideals();
    ideals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let m = ideals.len();
    let down = (0..m)
        .map(|b| ElementSet::from_indices(m, (0..=b).filter(|&a| ideals[a].is_subset(&ideals[b]))))
        .collect();
    let l = Lattice::try_from_poset(Poset::from_down_sets(down)).expect("ideal lattices are lattices");
    debug_assert!((0..m).all(|a| (0..m).all(|b| {
        ideals[l.meet(a, b)] == ideals[a].intersection(&ideals[b])
            && ideals[l.join(a, b)] == ideals[a].union(&ideals[b])
    })));
    (l, ideals)
}

pub fn birkhoff(p: &Poset) -> Lattice {
    birkhoff_with_ideals(p).0
}

/// Join-irreducibles below or equal to `x`.
pub fn iota(l: &Lattice, x: usize) -> ElementSet {
    l.poset().down_set(x).intersection(l.join_irreducibles())
}

/// Whether `x ↦ ι(x)` is a bijection onto the order ideals of J(L).
pub fn iota_is_bijective(l: &Lattice) -> bool {
    let (jp, elems) = l.join_irreducible_poset();
    let ideals: std::collections::HashSet<ElementSet> = jp
        .all_order_ideals()
        .into_iter()
        .map(|s| ElementSet::from_indices(l.len(), s.iter().map(|i| elems[i])))
        .collect();
    let images: std::collections::HashSet<ElementSet> = (0..l.len()).map(|x| iota(l, x)).collect();
    images.len() == l.len() && images == ideals
}

/// Exhaustive generation of lattices up to isomorphism.
///
/// Removing a coatom from a lattice leaves a lattice, so every lattice on
/// `m + 1` elements arises from one on `m` elements by adding a new coatom
/// `c` whose strict down-set is an order ideal of `L ∖ {1̂}`. Each level
/// tries every such ideal of every parent, keeps the candidates that are
/// lattices and deduplicates by canonical form.
#[derive(Debug, Clone, Copy)]
pub struct LatticeEnumerator {
    pub max_elements: usize,
    pub exec: Exec,
}

impl Default for LatticeEnumerator {
    fn default() -> Self {
        LatticeEnumerator {
            max_elements: 8,
            exec: Exec::default(),
        }
    }
}

/// Hard ceiling on enumeration size.
pub const ENUMERATION_CEILING: usize = 9;

fn add_coatom(l: &Lattice, lower: &ElementSet) -> Option<Lattice> {
    let m = l.len();
    let n = m + 1;
    let top = l.top();
    let c = m - 1;
    let mut down: Vec<ElementSet> = (0..m - 1)
        .map(|x| ElementSet::from_indices(n, l.poset().down_set(x).iter()))
        .collect();
    let mut dc = ElementSet::from_indices(n, lower.iter());
    dc.insert(c);
    down.push(dc);
    debug_assert_eq!(top, c);
    down.push(ElementSet::full(n));
    Lattice::try_from_poset(Poset::from_down_sets(down)).ok()
}

impl LatticeEnumerator {
    pub fn new(max_elements: usize) -> Self {
        LatticeEnumerator {
            max_elements,
            ..Default::default()
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    fn next_level(&self, parents: &[Lattice]) -> Vec<Lattice> {
        let candidates: Vec<Vec<(CanonicalForm, Lattice)>> = self.exec.map(parents, |l| {
            let top = l.top();
            let mut out = Vec::new();
            l.poset().for_each_order_ideal(|ideal| {
                if ideal.contains(top) {
                    return;
                }
                if let Some(child) = add_coatom(l, ideal) {
                    out.push((child.poset().canonical_form(), child));
                }
            });
            out
        });
        let mut classes = BTreeMap::new();
        for (form, l) in candidates.into_iter().flatten() {
            classes.entry(form).or_insert(l);
        }
        classes.into_values().collect()
    }

    /// `levels[m - 1]` holds the lattices on `m` elements for `m = 1..=nmax`,
    /// each level sorted by canonical form.
    pub fn levels(&self, nmax: usize) -> Result<Vec<Vec<Lattice>>, ConstructionError> {
        let cap = self.max_elements.min(ENUMERATION_CEILING);
        if nmax > cap {
            return Err(ConstructionError::InvalidStep {
                step: 0,
                reason: format!("enumeration limited to {cap} elements, asked for {nmax}"),
            });
        }
        let mut levels: Vec<Vec<Lattice>> = Vec::new();
        if nmax == 0 {
            return Ok(levels);
        }
        levels.push(vec![singleton()]);
        for _ in 2..=nmax {
            let next = self.next_level(levels.last().expect("nonempty"));
            levels.push(next);
        }
        Ok(levels)
    }

    /// The lattices on exactly `n` elements.
    pub fn enumerate(&self, n: usize) -> Result<Vec<Lattice>, ConstructionError> {
        Ok(self.levels(n)?.pop().unwrap_or_default())
    }
}

pub fn enumerate_lattices(n: usize) -> Result<Vec<Lattice>, ConstructionError> {
    LatticeEnumerator::default().enumerate(n)
}

/// Breadth-first search over isomorphism classes reachable from the
/// singleton by principal-filter doublings, up to `nmax` elements. Each
/// class maps to one script that builds it.
pub fn principal_filter_reachable(nmax: usize) -> BTreeMap<CanonicalForm, DoublingScript> {
    let mut seen = BTreeMap::new();
    let start = singleton();
    seen.insert(start.poset().canonical_form(), DoublingScript::default());
    let mut queue = VecDeque::from([(start, DoublingScript::default())]);
    while let Some((l, script)) = queue.pop_front() {
        for a in 0..l.len() {
            let x = l.poset().up_set(a);
            if l.len() + x.len() > nmax {
                continue;
            }
            let child = double_lattice(&l, x).expect("filter doubling yields a lattice");
            let form = child.poset().canonical_form();
            if seen.contains_key(&form) {
                continue;
            }
            let mut s = script.clone();
            s.steps.push(DoublingStep::PrincipalFilter(a));
            seen.insert(form, s.clone());
            queue.push_back((child, s));
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_and_booleans() {
        assert_eq!(boolean(0).len(), 1);
        let b2 = boolean(2);
        assert_eq!(b2.len(), 4);
        assert_eq!(b2.upper_covers(b2.bottom()).len(), 2);
        assert_eq!(chain(7).poset().heights()[6], 6);
    }

    #[test]
    fn doubling_small_cases() {
        let s = singleton();
        let d = double(s.poset(), &ElementSet::full(1));
        assert!(d.is_isomorphic(&Poset::chain(2)).is_some());

        let c2 = chain(2);
        let d = double(c2.poset(), &ElementSet::singleton(2, 1));
        assert_eq!(d.len(), 3);
        assert!(d.is_isomorphic(&Poset::chain(3)).is_some());

        let c3 = chain(3);
        let d = double(c3.poset(), &ElementSet::singleton(3, 1));
        assert!(d.is_isomorphic(&Poset::chain(4)).is_some());

        let b2 = boolean(2);
        let d = double(b2.poset(), &ElementSet::singleton(4, 1));
        assert!(d.is_isomorphic(n5().poset()).is_some());
    }

    #[test]
    fn doubling_size_formula() {
        let l = n5();
        for bits in 0u32..32 {
            let x = ElementSet::from_indices(5, (0..5).filter(|i| bits >> i & 1 == 1));
            let ideal = l.poset().ideal_generated(&x);
            let expected = ideal.len() + (5 - ideal.len()) + x.len();
            assert_eq!(double(l.poset(), &x).len(), expected);
        }
    }

    #[test]
    fn script_round_trip_and_errors() {
        let text = "filter 0\ninterval 1 2 # comment\nset 0 3\n";
        let s = DoublingScript::parse(text).unwrap();
        assert_eq!(
            s.steps,
            vec![
                DoublingStep::PrincipalFilter(0),
                DoublingStep::Interval(1, 2),
                DoublingStep::Set(vec![0, 3])
            ]
        );
        assert_eq!(DoublingScript::parse(&s.to_text()).unwrap(), s);
        assert!(matches!(
            DoublingScript::parse("filter\n"),
            Err(ConstructionError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            DoublingScript::parse("wiggle 1\n"),
            Err(ConstructionError::Parse { .. })
        ));
        let bad = DoublingScript::new(vec![DoublingStep::PrincipalFilter(4)]);
        assert!(matches!(bad.build(), Err(ConstructionError::InvalidStep { step: 0, .. })));
    }

    #[test]
    fn bottom_filter_doublings_give_boolean_lattices() {
        for k in 0..5 {
            let s = DoublingScript::new(vec![DoublingStep::PrincipalFilter(0); k]);
            let out = s.build().unwrap();
            assert!(out.all_steps_principal_filters && out.all_steps_intervals);
            assert!(out.lattice.is_isomorphic(&boolean(k)).is_some());
        }
    }

    #[test]
    fn non_lattice_set_step_is_reported() {
        let base = vec![DoublingStep::PrincipalFilter(0); 3];
        let mut failures = 0;
        for bits in 0u32..256 {
            let items: Vec<usize> = (0..8).filter(|i| bits >> i & 1 == 1).collect();
            let mut steps = base.clone();
            steps.push(DoublingStep::Set(items));
            match DoublingScript::new(steps).build() {
                Ok(out) => assert!(out.lattice.len() >= 8),
                Err(ConstructionError::InvalidStep { step: 3, .. }) => failures += 1,
                Err(e) => panic!("unexpected {e}"),
            }
        }
        assert!(failures > 0);
    }

    #[test]
    fn birkhoff_small() {
        for k in 0..4 {
            assert!(birkhoff(&Poset::antichain(k)).is_isomorphic(&boolean(k)).is_some());
        }
        for n in 1..5 {
            assert!(birkhoff(&Poset::chain(n)).is_isomorphic(&chain(n + 1)).is_some());
        }
    }

    #[test]
    fn iota_edges() {
        let l = n5();
        assert!(iota(&l, l.bottom()).is_empty());
        assert_eq!(iota(&l, l.top()), *l.join_irreducibles());
        assert!(iota_is_bijective(&boolean(3)));
        assert!(!iota_is_bijective(&l));
    }

    #[test]
    fn small_enumeration_counts() {
        let levels = LatticeEnumerator::new(6).levels(6).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
        assert!(LatticeEnumerator::new(6).levels(7).is_err());
    }

    #[test]
    fn reachable_filter_doublings_are_distributive() {
        let reach = principal_filter_reachable(6);
        for script in reach.values() {
            let out = script.build().unwrap();
            assert!(out.all_steps_principal_filters);
            assert!(out.lattice.is_distributive_law());
        }
    }

    #[test]
    fn random_scripts_are_reproducible() {
        let a = random_interval_script(&mut script_rng(7, 3), 6);
        let b = random_interval_script(&mut script_rng(7, 3), 6);
        assert_eq!(a, b);
        assert!(a.build().unwrap().all_steps_intervals);
        let f = random_filter_script(&mut script_rng(7, 3), 6);
        assert!(f.build().unwrap().all_steps_principal_filters);
    }
}
