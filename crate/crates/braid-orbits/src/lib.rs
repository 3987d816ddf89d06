//! Exact-arithmetic engine for braid-group (Hurwitz) actions on tuples of
//! unimodular 2×2 matrices.
//!
//! The crate represents a tuple of matrices in SL(2,C) with product equal to
//! the identity by its *signature*: the collection of trace angles of all
//! contiguous sub-products and products of disjoint runs. Signatures are
//! conjugation invariants and, for non-triangular tuples, determine the tuple
//! up to simultaneous conjugation. On top of this the crate provides:
//!
//! * exact cyclotomic arithmetic ([`cyclo`]) and angle types ([`angle`],
//!   [`affine`]);
//! * braid actions, symmetries, reduction and induction at the matrix level
//!   ([`tuple`]);
//! * cell indexing, signature extraction, braid action at the signature
//!   level, merging with sign branching and the iterative mod-2 linear
//!   solver ([`cells`], [`signature`], [`merge`], [`solver`]);
//! * reconstruction of a tuple from its signature ([`reconstruct`]);
//! * orbit enumeration by breadth-first closure under the 2n braid
//!   generators, finite-SU(2)-subgroup recognition and the dihedral length
//!   formula ([`orbit`], [`subgroup`]);
//! * the catalog of known finite orbits with explicit matrix families
//!   ([`catalog`], [`families`]) and the candidate-construction /
//!   closure-filter / type-recognition pipeline ([`pipeline`]).

pub mod affine;
pub mod angle;
pub mod catalog;
pub mod cells;
pub mod cyclo;
pub mod families;
pub mod mat2;
pub mod merge;
pub mod orbit;
pub mod pipeline;
pub mod reconstruct;
pub mod sample;
pub mod signature;
pub mod solver;
pub mod subgroup;
pub mod tuple;

pub use affine::AffineAngle;
pub use angle::{normalize_angle, Angle, Rational};
pub use cells::{canonical_cell, cell_count, enumerate_cells, CellId};
pub use cyclo::{cyclo_embed, trace_to_angle, CycloField, CycloNumber};
pub use mat2::UnimodularMatrix;
pub use catalog::{verify_catalog_row, Catalog, CatalogRow, RowKind, RowReport};
pub use pipeline::{
    braid_seed_closure, build_candidates, closure_filter, is_unit_addition, load_checkpoint,
    recognize_types, run_pipeline, save_checkpoint, symmetry_expansion, Candidate, CandidateList,
    ClassificationReport, OrbitType, PipelineOptions, TypedCandidate,
};
pub use merge::{canonicalize_parameters, max_abs_coeff, merge_particular, merge_signatures};
pub use orbit::{enumerate_orbit, orbit_of_signature, OrbitReport, DEFAULT_BUDGET};
pub use reconstruct::{reconstruct_tuple, reconstruct_tuple_bounded, Reconstruction};
pub use solver::{
    solve_modular_system, Equation, ModularLinearSystem, SolutionFamily, SolverError,
};
pub use subgroup::{classify_subgroup, dihedral_length, SubgroupClass};
pub use signature::{
    braid_signature, incomplete_pattern, induct_signature, signature_of_tuple, ParamSignature,
    Signature, SignatureMap,
};
pub use tuple::{braid_tuple, BraidDir, MonodromyTuple, SymmetryOp};
