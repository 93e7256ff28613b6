//! Exact classification toolkit for first-class complex filiform Leibniz
//! algebras of dimensions 5 to 8.
//!
//! An algebra L(α_3, …, α_n, θ) of dimension n+1 is given by its parameter
//! vector. The crate builds its structure tensor, applies adapted basis
//! changes, evaluates orbit invariants and sorts points into the strata of
//! the bundled registry.

pub mod action;
pub mod algebra;
pub mod audit;
pub mod error;
pub mod expr;
pub mod invariants;
pub mod linalg;
pub mod polynomial;
pub mod registry;
pub mod sampling;
pub mod scalar;
pub mod strata;
pub mod tables;

pub use action::{
    compose_pairs, find_isomorphism, generated_map, is_homomorphism, is_isomorphism, phi, phi_theta, rho_apply,
    rho_apply_raw, rho_apply_transport, rho_apply_with, AdaptedPair, LinearMap, ThetaForm,
};
pub use algebra::{build_table_first_class, ParamVector, StructureTensor, Vector};
pub use audit::{audit_partition, AuditConfig, AuditReport};
pub use error::{Error, Result};
pub use invariants::{deltas, is_invariant_under_action, stratum_invariants, u1_signature, DeltaTheta};
pub use registry::{Registry, StratumDef};
pub use scalar::Scalar;
pub use strata::{canonical_representative, classify, enumerate_strata, is_isomorphic};
pub use tables::{classification_list, class_count_formula, count_classes, cross_check_printed_tables};
