//! Homotopy invariants of finite spaces and the stratified space of gradient
//! flows on the annulus.
//!
//! * [`poset`]: finite posets, stratified posets, isomorphism, text and DOT formats.
//! * [`reduction`]: beat and weak points, cores, weak reductions.
//! * [`complex`]: order complexes and integral homology.
//! * [`flows`]: combinatorial flow diagrams, their enumeration and stratification.

pub mod complex;
pub mod error;
pub mod flows;
pub mod gen;
pub mod models;
pub mod poset;
pub mod reduction;

pub use complex::{
    euler_characteristic, homology, order_complex, smith_normal_form, HomologyProfile, IntMatrix,
    SimplicialComplex, SmithForm,
};
pub use error::{FlowError, OverflowError, PosetError};
pub use poset::{
    build_poset, check_cell_complex, isomorphic, CellComplexReport, Direction, Element, ElementId,
    FinitePoset, StratifiedPoset,
};
pub use reduction::{
    beat_points, core, homotopy_equivalent, remove_point, weak_points, weak_reduce, ReductionTrace,
    RemovalKind,
};
