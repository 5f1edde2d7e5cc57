//! Perspectivity labels, canonical join representations and the canonical
//! join complex.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::bitset::ElementSet;
use crate::constructions::iota;
use crate::error::CanonicalError;
use crate::lattice::Lattice;
use crate::poset::Poset;

pub type Cover = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabeledCover {
    pub lower: usize,
    pub upper: usize,
    pub label: usize,
}

fn require_cover(l: &Lattice, (a, b): Cover) -> Result<(), CanonicalError> {
    if a < l.len() && b < l.len() && l.is_cover(a, b) {
        Ok(())
    } else {
        Err(CanonicalError::NotACover { lower: a, upper: b })
    }
}

/// `(x, y)` and `(u, v)` are perspective if `v ∨ x = y` and `v ∧ x = u`, or
/// `u ∨ y = v` and `u ∧ y = x`.
pub fn are_perspective(l: &Lattice, c1: Cover, c2: Cover) -> Result<bool, CanonicalError> {
    require_cover(l, c1)?;
    require_cover(l, c2)?;
    let ((x, y), (u, v)) = (c1, c2);
    Ok((l.join(v, x) == y && l.meet(v, x) == u) || (l.join(u, y) == v && l.meet(u, y) == x))
}

/// The unique join-irreducible `j` with `(j_*, j)` perspective to `c`.
///
/// Every join-irreducible is tested; zero or several hits are errors, which
/// on valid input means the lattice is not congruence uniform.
pub fn gamma(l: &Lattice, c: Cover) -> Result<usize, CanonicalError> {
    require_cover(l, c)?;
    let candidates: Vec<usize> = l
        .join_irreducibles()
        .iter()
        .filter(|&j| {
            let js = l.lower_star(j).expect("join-irreducible");
            are_perspective(l, c, (js, j)).expect("both are covers")
        })
        .collect();
    match candidates.as_slice() {
        [j] => Ok(*j),
        [] => Err(CanonicalError::GammaNotFound {
            lower: c.0,
            upper: c.1,
        }),
        _ => Err(CanonicalError::GammaNotUnique {
            lower: c.0,
            upper: c.1,
            candidates,
        }),
    }
}

/// The single join-irreducible in `ι(upper) ∖ ι(lower)`.
pub fn lambda_label(l: &Lattice, c: Cover) -> Result<usize, CanonicalError> {
    require_cover(l, c)?;
    let diff = iota(l, c.1).difference(&iota(l, c.0));
    match diff.to_vec().as_slice() {
        [j] => Ok(*j),
        _ => Err(CanonicalError::NotDistributive {
            lower: c.0,
            upper: c.1,
        }),
    }
}

/// γ on every cover, computed once.
#[derive(Debug, Clone)]
pub struct CoverLabels {
    labels: HashMap<Cover, usize>,
}

impl CoverLabels {
    pub fn gamma(l: &Lattice) -> Result<CoverLabels, CanonicalError> {
        let labels = l
            .covers()
            .into_iter()
            .map(|c| gamma(l, c).map(|j| (c, j)))
            .collect::<Result<_, _>>()?;
        Ok(CoverLabels { labels })
    }

    pub fn label(&self, lower: usize, upper: usize) -> Option<usize> {
        self.labels.get(&(lower, upper)).copied()
    }

    /// Covers with their labels, sorted by cover.
    pub fn labeled_covers(&self) -> Vec<LabeledCover> {
        let mut out: Vec<LabeledCover> = self
            .labels
            .iter()
            .map(|(&(lower, upper), &label)| LabeledCover { lower, upper, label })
            .collect();
        out.sort_by_key(|c| (c.lower, c.upper));
        out
    }

    /// Labels of the lower covers of `x`.
    pub fn canonical_join_rep(&self, l: &Lattice, x: usize) -> ElementSet {
        ElementSet::from_indices(
            l.len(),
            l.lower_covers(x).iter().map(|&y| self.labels[&(y, x)]),
        )
    }
}

/// Γ(x) as the γ labels of the lower covers of `x`.
pub fn canonical_join_rep(l: &Lattice, x: usize) -> Result<ElementSet, CanonicalError> {
    let mut out = ElementSet::empty(l.len());
    for &y in l.lower_covers(x) {
        out.insert(gamma(l, (y, x))?);
    }
    Ok(out)
}

/// Which subsets the brute-force oracle ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Every subset of the lattice.
    AllSubsets,
    /// Subsets of join-irreducibles only. Any join representation `Y` can be
    /// replaced by the join-irreducibles below it, which still joins to `x`
    /// and generates a smaller ideal.
    JoinIrreducibles,
}

/// Canonical join representation by definition: the join representation `X`
/// of `x` whose generated ideal lies inside that of every other one, taken
/// irredundant. `None` when no representation has the least ideal.
///
/// Exponential in the candidate count; meant for small lattices.
pub fn canonical_join_rep_oracle(l: &Lattice, x: usize, mode: OracleMode) -> Option<ElementSet> {
    let n = l.len();
    let pool: Vec<usize> = match mode {
        OracleMode::AllSubsets => (0..n).collect(),
        OracleMode::JoinIrreducibles => l.join_irreducibles().to_vec(),
    };
    assert!(pool.len() <= 24, "oracle candidate pool too large");
    let mut ideals: Vec<ElementSet> = Vec::new();
    let mut least = ElementSet::full(n);
    for mask in 0u32..(1 << pool.len()) {
        let members = pool.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        let set = ElementSet::from_indices(n, members);
        if l.join_set(set.iter()) != x {
            continue;
        }
        let ideal = l.poset().ideal_generated(&set);
        least.intersect_with(&ideal);
        ideals.push(ideal);
    }
    if !ideals.contains(&least) {
        return None;
    }
    // maximal elements of the least ideal
    let rep = ElementSet::from_indices(
        n,
        least.iter().filter(|&e| l.poset().up_set(e).intersection(&least).len() == 1),
    );
    assert_eq!(l.join_set(rep.iter()), x);
    assert!(
        rep.iter().all(|e| {
            let mut rest = rep.clone();
            rest.remove(e);
            l.join_set(rest.iter()) != x
        }),
        "canonical representation must be irredundant"
    );
    Some(rep)
}

/// A family of vertex sets closed under taking subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<usize>,
    faces: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Uses `faces` as given (each sorted) and rejects the family if some
    /// subset of a face is missing.
    pub fn from_faces<I>(vertices: Vec<usize>, faces: I) -> Result<Self, CanonicalError>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let faces: BTreeSet<Vec<usize>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        for f in &faces {
            for i in 0..f.len() {
                let mut sub = f.clone();
                sub.remove(i);
                if !faces.contains(&sub) {
                    return Err(CanonicalError::ClosureViolation {
                        face: f.clone(),
                        missing: sub,
                    });
                }
            }
        }
        if faces.is_empty() {
            return Err(CanonicalError::ClosureViolation {
                face: Vec::new(),
                missing: Vec::new(),
            });
        }
        Ok(SimplicialComplex { vertices, faces })
    }

    /// The complex generated by `facets`.
    pub fn generated_by(vertices: Vec<usize>, facets: &[Vec<usize>]) -> Self {
        let mut faces = BTreeSet::from([Vec::new()]);
        for f in facets {
            for mask in 0u32..(1 << f.len()) {
                let mut sub: Vec<usize> =
                    f.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                sub.sort_unstable();
                faces.insert(sub);
            }
        }
        SimplicialComplex { vertices, faces }
    }

    pub fn simplex(vertices: Vec<usize>) -> Self {
        let facet = vertices.clone();
        Self::generated_by(vertices, &[facet])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Faces in lexicographic order, starting with the empty face.
    pub fn faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.faces.contains(face)
    }

    /// `f[i]` counts faces with `i` vertices, so `f[0] = 1` for the empty face.
    pub fn f_vector(&self) -> Vec<usize> {
        let max = self.faces.iter().map(Vec::len).max().unwrap_or(0);
        let mut f = vec![0; max + 1];
        for face in &self.faces {
            f[face.len()] += 1;
        }
        f
    }

    /// Faces contained in no other face.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.faces
            .iter()
            .filter(|f| {
                !self
                    .faces
                    .iter()
                    .any(|g| g.len() > f.len() && f.iter().all(|v| g.contains(v)))
            })
            .cloned()
            .collect()
    }

    /// Containment order on faces. Faces are indexed by size, then
    /// lexicographically; the returned list gives the face at each index.
    pub fn face_poset(&self) -> (Poset, Vec<Vec<usize>>) {
        let mut faces: Vec<Vec<usize>> = self.faces.iter().cloned().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let m = faces.len();
        let down = (0..m)
            .map(|b| {
                ElementSet::from_indices(
                    m,
                    (0..=b).filter(|&a| faces[a].iter().all(|v| faces[b].contains(v))),
                )
            })
            .collect();
        (Poset::from_down_sets(down), faces)
    }

    /// Every set of pairwise adjacent vertices is a face.
    pub fn is_flag(&self) -> bool {
        let verts: Vec<usize> = {
            let mut v: BTreeSet<usize> = self.vertices.iter().copied().collect();
            for f in &self.faces {
                v.extend(f.iter().copied());
            }
            v.into_iter().collect()
        };
        let adjacent = |a: usize, b: usize| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            self.faces.contains(&vec![a, b])
        };
        // grow cliques in increasing vertex order
        fn rec(
            verts: &[usize],
            start: usize,
            clique: &mut Vec<usize>,
            adjacent: &dyn Fn(usize, usize) -> bool,
            faces: &BTreeSet<Vec<usize>>,
        ) -> bool {
            if !faces.contains(clique) {
                return false;
            }
            for i in start..verts.len() {
                let v = verts[i];
                if clique.iter().all(|&u| adjacent(u, v)) {
                    clique.push(v);
                    let ok = rec(verts, i + 1, clique, adjacent, faces);
                    clique.pop();
                    if !ok {
                        return false;
                    }
                }
            }
            true
        }
        let singletons_ok = verts.iter().all(|&v| self.faces.contains(&vec![v]));
        singletons_ok && rec(&verts, 0, &mut Vec::new(), &adjacent, &self.faces)
    }

    /// One face per line, vertices space-separated through `label`, faces in
    /// lexicographic order of their label lists. The empty face is the empty
    /// first line.
    pub fn to_text(&self, label: impl Fn(usize) -> String) -> String {
        let mut lines: Vec<Vec<String>> = self
            .faces
            .iter()
            .map(|f| {
                let mut labels: Vec<String> = f.iter().map(|&v| label(v)).collect();
                labels.sort_by(|a, b| natural_cmp(a, b));
                labels
            })
            .collect();
        lines.sort_by(|a, b| cmp_lists(a, b));
        let mut s = String::new();
        for line in lines {
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }
}

/// Numbers compare numerically, everything else as strings.
fn natural_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.cmp(b),
    }
}

fn cmp_lists(a: &[String], b: &[String]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = natural_cmp(x, y);
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

/// Can(L): the faces `{Γ(x) : x ∈ L}` on the join-irreducibles. Subset
/// closure and injectivity of Γ are checked, never enforced.
pub fn canonical_join_complex(l: &Lattice) -> Result<SimplicialComplex, CanonicalError> {
    let labels = CoverLabels::gamma(l)?;
    canonical_join_complex_with(l, &labels)
}

pub fn canonical_join_complex_with(
    l: &Lattice,
    labels: &CoverLabels,
) -> Result<SimplicialComplex, CanonicalError> {
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for x in 0..l.len() {
        let face = labels.canonical_join_rep(l, x).to_vec();
        if let Some(&y) = seen.get(&face) {
            return Err(CanonicalError::NotInjective { x: y, y: x, face });
        }
        seen.insert(face, x);
    }
    SimplicialComplex::from_faces(l.join_irreducibles().to_vec(), seen.into_keys())
}

/// 1-based position of each join-irreducible in increasing index order, the
/// labeling used by exports and the command line.
#[derive(Debug, Clone)]
pub struct OrdinalLabels {
    ordinal: HashMap<usize, usize>,
}

impl OrdinalLabels {
    pub fn new(l: &Lattice) -> Self {
        OrdinalLabels {
            ordinal: l.join_irreducibles().iter().enumerate().map(|(i, j)| (j, i + 1)).collect(),
        }
    }

    pub fn of(&self, j: usize) -> usize {
        self.ordinal[&j]
    }

    pub fn set(&self, s: &ElementSet) -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().map(|j| self.of(j)).collect();
        v.sort_unstable();
        v
    }
}
