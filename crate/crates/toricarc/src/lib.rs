//! Exact-arithmetic toolkit for smooth complete toric fans.
//!
//! Given a fan, the crate computes the Cox quotient data (the lattices A
//! and B, the map beta, primitive collections, divisor classes), builds
//! the classical and Batyrev quantum ring presentations over exact
//! rationals, models the arc-space cohomology as Sym(H^2) with its
//! q^a-multiplication structure, and generates truncated jet relations
//! with their shift endomorphisms. Everything is deterministic; there is
//! no floating point anywhere.

pub mod arc;
pub mod cox;
pub mod error;
pub mod fan;
pub mod jet;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod semigroup;

pub use arc::{
    build_arc_model, cousin_series_check, floer_series, q_action, self_embedding_codim,
    stratum_descriptor, verify_theorem_main, ArcCohomologyModel, CousinReport, StratumDescriptor,
    TheoremReport,
};
pub use cox::{
    betti_numbers, build_cox_data, classical_presentation, eliminate_linear, quantum_presentation,
    quantum_product, quantum_rank_check, CoxData, Presentation, PresentationKind, QuantumRing,
    RankCheckReport, DEFAULT_BUDGET,
};
pub use error::{Error, Result};
pub use fan::{h_vector, parse_fan, primitive_collections, validate_fan, Fan, ValidationReport};
pub use jet::{epsilon_shift, exceptional_jet_locus, jet_relations, JetPresentation, ShiftMap};
pub use matrix::{divisor_classes, hermite_normal_form, kernel_basis, IntMatrix, LatticeMap};
pub use poly::{buchberger, normal_form, standard_monomials, GroebnerBasis, MonomialOrder, Poly};
pub use semigroup::{a_plus_contains, hilbert_basis, semigroup_series, SemigroupAPlus};
