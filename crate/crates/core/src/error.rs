use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("index {index} out of range for a poset on {n} elements")]
    Range { index: usize, n: usize },
    #[error("relation is cyclic; elements {elements:?} cannot be linearly ordered")]
    Cycle { elements: Vec<usize> },
    #[error("relation is not a partial order: {reason}")]
    NotAPartialOrder { reason: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Which bound is missing or ambiguous when a poset fails to be a lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("not a lattice: {x} and {y} have no unique {kind:?}; maximal candidates {witnesses:?}")]
    NotALattice {
        x: usize,
        y: usize,
        kind: BoundKind,
        witnesses: Vec<usize>,
    },
    #[error("empty poset is not a lattice")]
    Empty,
    #[error("{a} is not below {b}")]
    NotComparable { a: usize, b: usize },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("congruence lattice exceeds the cap of {cap} congruences")]
    SizeLimit { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("({lower}, {upper}) is not a cover relation")]
    NotACover { lower: usize, upper: usize },
    #[error("cover ({lower}, {upper}) is perspective to several join-irreducibles {candidates:?}")]
    GammaNotUnique {
        lower: usize,
        upper: usize,
        candidates: Vec<usize>,
    },
    #[error("cover ({lower}, {upper}) is perspective to no join-irreducible")]
    GammaNotFound { lower: usize, upper: usize },
    #[error("cover ({lower}, {upper}) does not add exactly one join-irreducible")]
    NotDistributive { lower: usize, upper: usize },
    #[error("face {face:?} has a missing subface {missing:?}")]
    ClosureViolation { face: Vec<usize>, missing: Vec<usize> },
    #[error("elements {x} and {y} share the canonical join representation {face:?}")]
    NotInjective { x: usize, y: usize, face: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreLabelError {
    #[error("elements {x} and {y} have the same core label set")]
    PsiNotInjective { x: usize, y: usize },
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("step {step}: {reason}")]
    InvalidStep { step: usize, reason: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
