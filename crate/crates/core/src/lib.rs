//! Finite posets and lattices, congruence-uniform labelings, canonical join
//! complexes and core label orders.
//!
//! Elements are dense indices `0..n` listed along a linear extension, so the
//! bottom of a lattice is `0` and the top is `n - 1`.

pub mod bitset;
pub mod canonical;
pub mod congruence;
pub mod constructions;
pub mod core_label;
pub mod error;
pub mod exec;
pub mod export;
pub mod lattice;
pub mod poset;
pub mod verify;

pub use bitset::ElementSet;
pub use canonical::{
    are_perspective, canonical_join_complex, canonical_join_rep, canonical_join_rep_oracle, gamma,
    lambda_label, CoverLabels, OracleMode, OrdinalLabels, SimplicialComplex,
};
pub use congruence::{
    all_congruences, congruence_uniformity, is_congruence_uniform, principal_congruence,
    Congruence, CongruenceLattice, Uniformity,
};
pub use constructions::{
    birkhoff, boolean, build_from_script, chain, double, enumerate_lattices, iota, m3, n5,
    DoublingScript, DoublingStep, LatticeEnumerator,
};
pub use core_label::{
    boolean_defect, clo, clo_is_lattice, clo_is_meet_semilattice, core_is_boolean, core_labels,
    has_intersection_property, nucleus, CoreLabelData, CoreLabelOrder,
};
pub use error::{
    CanonicalError, ConstructionError, CongruenceError, CoreLabelError, LatticeError, PosetError,
};
pub use exec::Exec;
pub use lattice::{Lattice, Pattern};
pub use poset::{CanonicalForm, Poset};
