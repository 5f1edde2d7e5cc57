//! Nuclei, core labels and the core label order.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::bitset::ElementSet;
use crate::canonical::{canonical_join_rep, gamma, CoverLabels};
use crate::constructions::boolean;
use crate::error::{CanonicalError, CoreLabelError, PosetError};
use crate::exec::Exec;
use crate::lattice::Lattice;
use crate::poset::{parse_poset_lines, Poset};

/// `x↓`, the meet of the lower covers of `x`. The bottom is its own nucleus.
pub fn nucleus(l: &Lattice, x: usize) -> usize {
    let lower = l.lower_covers(x);
    if lower.is_empty() {
        x
    } else {
        l.meet_set(lower.iter().copied())
    }
}

fn core_labels_with(l: &Lattice, x: usize, labels: &CoverLabels) -> ElementSet {
    let nx = nucleus(l, x);
    let core = l.interval_members(nx, x).expect("nucleus lies below x");
    let mut psi = ElementSet::empty(l.len());
    for v in core.iter() {
        for &u in l.lower_covers(v) {
            if core.contains(u) {
                psi.insert(labels.label(u, v).expect("every cover is labeled"));
            }
        }
    }
    psi
}

/// Ψ(x): the γ labels of all covers inside `[x↓, x]`.
pub fn core_labels(l: &Lattice, x: usize) -> Result<ElementSet, CanonicalError> {
    let nx = nucleus(l, x);
    let core = l.interval_members(nx, x).expect("nucleus lies below x");
    let mut psi = ElementSet::empty(l.len());
    for v in core.iter() {
        for &u in l.lower_covers(v) {
            if core.contains(u) {
                psi.insert(gamma(l, (u, v))?);
            }
        }
    }
    Ok(psi)
}

/// Per-element nucleus, Ψ and Γ.
#[derive(Debug, Clone)]
pub struct CoreLabelData {
    pub nucleus: Vec<usize>,
    pub psi: Vec<ElementSet>,
    pub gamma: Vec<ElementSet>,
}

impl CoreLabelData {
    pub fn compute(l: &Lattice, exec: Exec) -> Result<Self, CanonicalError> {
        let labels = CoverLabels::gamma(l)?;
        Ok(Self::with_labels(l, &labels, exec))
    }

    pub fn with_labels(l: &Lattice, labels: &CoverLabels, exec: Exec) -> Self {
        let rows = exec.map_range(l.len(), |x| {
            (
                nucleus(l, x),
                core_labels_with(l, x, labels),
                labels.canonical_join_rep(l, x),
            )
        });
        let mut data = CoreLabelData {
            nucleus: Vec::with_capacity(l.len()),
            psi: Vec::with_capacity(l.len()),
            gamma: Vec::with_capacity(l.len()),
        };
        for (n, p, g) in rows {
            data.nucleus.push(n);
            data.psi.push(p);
            data.gamma.push(g);
        }
        data
    }

    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    /// Σ |Ψ(x) ∖ Γ(x)|.
    pub fn boolean_defect(&self) -> usize {
        self.psi.iter().zip(&self.gamma).map(|(p, g)| p.difference(g).len()).sum()
    }

    /// A pair whose Ψ-intersection is no Ψ-set, or `None`.
    pub fn intersection_failure(&self) -> Option<(usize, usize)> {
        let sets: std::collections::HashSet<&ElementSet> = self.psi.iter().collect();
        for x in 0..self.len() {
            for y in x + 1..self.len() {
                if !sets.contains(&self.psi[x].intersection(&self.psi[y])) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// The Ψ-containment order, or the first pair with equal Ψ-sets.
    pub fn order(&self) -> Result<CoreLabelOrder, CoreLabelError> {
        let mut seen: HashMap<&ElementSet, usize> = HashMap::new();
        for (x, p) in self.psi.iter().enumerate() {
            if let Some(&y) = seen.get(p) {
                return Err(CoreLabelError::PsiNotInjective { x: y, y: x });
            }
            seen.insert(p, x);
        }
        let mut elements: Vec<usize> = (0..self.len()).collect();
        elements.sort_by(|&a, &b| {
            let (pa, pb) = (&self.psi[a], &self.psi[b]);
            pa.len().cmp(&pb.len()).then_with(|| pa.cmp(pb))
        });
        let n = elements.len();
        let down = (0..n)
            .map(|b| {
                ElementSet::from_indices(
                    n,
                    (0..=b).filter(|&a| self.psi[elements[a]].is_subset(&self.psi[elements[b]])),
                )
            })
            .collect();
        let psi = elements.iter().map(|&e| self.psi[e].clone()).collect();
        Ok(CoreLabelOrder {
            poset: Poset::from_down_sets(down),
            elements,
            psi,
        })
    }
}

/// CLO(L). Poset index `i` stands for lattice element `elements[i]`;
/// indices run by Ψ-size, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreLabelOrder {
    pub poset: Poset,
    pub elements: Vec<usize>,
    pub psi: Vec<ElementSet>,
}

impl CoreLabelOrder {
    pub fn index_of(&self, element: usize) -> Option<usize> {
        self.elements.iter().position(|&e| e == element)
    }

    /// "poset v1" followed by one `elem <i> psi <labels> lattice <e>` line
    /// per node, with labels passed through `label`.
    pub fn to_text(&self, label: impl Fn(usize) -> usize) -> String {
        let mut s = self.poset.to_text();
        for (i, p) in self.psi.iter().enumerate() {
            let mut labels: Vec<usize> = p.iter().map(&label).collect();
            labels.sort_unstable();
            let _ = write!(s, "elem {i} psi");
            for v in labels {
                let _ = write!(s, " {v}");
            }
            let _ = writeln!(s, " lattice {}", self.elements[i]);
        }
        s
    }

    /// Reads [`to_text`](Self::to_text) output. Ψ-sets come back as label
    /// sets over `0..=max label`.
    pub fn parse(text: &str) -> Result<CoreLabelOrder, PosetError> {
        let (n, pairs, extra) = parse_poset_lines(text)?;
        let (poset, order) = Poset::from_covers_relabeled(n, &pairs)?;
        if order.iter().enumerate().any(|(i, &o)| i != o) {
            return Err(PosetError::NotAPartialOrder {
                reason: "core label order must be listed along a linear extension".into(),
            });
        }
        let mut rows: Vec<Option<(Vec<usize>, usize)>> = vec![None; n];
        for (line, text) in extra {
            let err = |message: &str| PosetError::Parse {
                line,
                message: message.into(),
            };
            let mut tok = text.split_whitespace();
            if tok.next() != Some("elem") {
                return Err(err("expected `elem <i> psi <labels>`"));
            }
            let i: usize = tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| err("bad node index"))?;
            if i >= n {
                return Err(PosetError::Range { index: i, n });
            }
            if tok.next() != Some("psi") {
                return Err(err("expected `psi`"));
            }
            let mut labels = Vec::new();
            let mut element = i;
            while let Some(t) = tok.next() {
                if t == "lattice" {
                    element = tok.next().and_then(|e| e.parse().ok()).ok_or_else(|| err("bad lattice element"))?;
                    if tok.next().is_some() {
                        return Err(err("trailing tokens"));
                    }
                    break;
                }
                labels.push(t.parse::<usize>().map_err(|_| err("bad label"))?);
            }
            if rows[i].replace((labels, element)).is_some() {
                return Err(err("duplicate node"));
            }
        }
        let rows: Vec<(Vec<usize>, usize)> = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                r.ok_or(PosetError::Parse {
                    line: 0,
                    message: format!("node {i} has no psi line"),
                })
            })
            .collect::<Result<_, _>>()?;
        let universe = rows.iter().flat_map(|(l, _)| l.iter().map(|&v| v + 1)).max().unwrap_or(0);
        Ok(CoreLabelOrder {
            poset,
            elements: rows.iter().map(|r| r.1).collect(),
            psi: rows
                .iter()
                .map(|(l, _)| ElementSet::from_indices(universe, l.iter().copied()))
                .collect(),
        })
    }
}

/// CLO(L) on a congruence-uniform lattice.
pub fn clo(l: &Lattice) -> Result<CoreLabelOrder, CoreLabelError> {
    CoreLabelData::compute(l, Exec::Sequential)?.order()
}

pub fn boolean_defect(l: &Lattice) -> Result<usize, CanonicalError> {
    Ok(CoreLabelData::compute(l, Exec::Sequential)?.boolean_defect())
}

/// Whether every Ψ(x) ∩ Ψ(y) is some Ψ(z); on failure, the offending pair.
pub fn intersection_property(l: &Lattice) -> Result<Option<(usize, usize)>, CanonicalError> {
    Ok(CoreLabelData::compute(l, Exec::Sequential)?.intersection_failure())
}

pub fn has_intersection_property(l: &Lattice) -> Result<bool, CanonicalError> {
    Ok(intersection_property(l)?.is_none())
}

fn greatest(p: &Poset, set: &ElementSet) -> bool {
    set.iter().any(|z| set.is_subset(p.down_set(z)))
}

/// Every pair has a greatest lower bound.
pub fn clo_is_meet_semilattice(p: &Poset) -> bool {
    (0..p.len()).all(|x| {
        (x + 1..p.len()).all(|y| greatest(p, &p.down_set(x).intersection(p.down_set(y))))
    })
}

/// Every pair has a greatest lower bound and a least upper bound.
pub fn clo_is_lattice(p: &Poset) -> bool {
    clo_is_meet_semilattice(p) && clo_is_meet_semilattice(&p.dual())
}

/// Whether `[x↓, x] ≅ Bool(|Γ(x)|)`.
pub fn core_is_boolean(l: &Lattice, x: usize) -> Result<bool, CanonicalError> {
    let k = canonical_join_rep(l, x)?.len();
    let core = l.interval(nucleus(l, x), x).expect("nucleus lies below x");
    Ok(core.len() == 1 << k && core.is_isomorphic(&boolean(k)).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{chain, m3, n5};

    #[test]
    fn nucleus_basics() {
        let l = n5();
        assert_eq!(nucleus(&l, 0), 0);
        for j in l.join_irreducibles() {
            assert_eq!(nucleus(&l, j), l.lower_star(j).unwrap());
        }
        assert_eq!(nucleus(&l, 4), 0);
        assert!(core_labels(&l, 0).unwrap().is_empty());
    }

    #[test]
    fn boolean_is_its_own_clo() {
        for k in 0..4 {
            let b = boolean(k);
            let c = clo(&b).unwrap();
            assert!(c.poset.is_isomorphic(b.poset()).is_some());
            assert!(clo_is_lattice(&c.poset));
            assert_eq!(boolean_defect(&b).unwrap(), 0);
            assert!(has_intersection_property(&b).unwrap());
        }
    }

    #[test]
    fn chain_clo_is_a_fan() {
        let c = clo(&chain(3)).unwrap();
        assert_eq!(c.poset.minimal_elements(), vec![0]);
        assert_eq!(c.poset.maximal_elements(), vec![1, 2]);
        assert!(clo_is_meet_semilattice(&c.poset));
        assert!(!clo_is_lattice(&c.poset));
    }

    #[test]
    fn pentagon_defect() {
        let l = n5();
        let data = CoreLabelData::compute(&l, Exec::Sequential).unwrap();
        assert!(data.boolean_defect() > 0);
        assert_eq!(data.psi[4].len(), 3);
        assert!(!core_is_boolean(&l, 4).unwrap());
        for x in 0..4 {
            assert!(core_is_boolean(&l, x).unwrap());
        }
        for x in 0..l.len() {
            assert!(data.gamma[x].is_subset(&data.psi[x]));
        }
    }

    #[test]
    fn diamond_is_refused() {
        assert!(matches!(clo(&m3()), Err(CoreLabelError::Canonical(_))));
    }

    #[test]
    fn clo_text_round_trip() {
        let l = n5();
        let c = clo(&l).unwrap();
        let text = c.to_text(|j| j);
        let back = CoreLabelOrder::parse(&text).unwrap();
        assert_eq!(back.poset, c.poset);
        assert_eq!(back.elements, c.elements);
        for (a, b) in back.psi.iter().zip(&c.psi) {
            assert_eq!(a.to_vec(), b.to_vec());
        }
    }
}
