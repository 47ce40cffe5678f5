//! Bounded move complexes over a finite group, their fundamental groups,
//! and the fiber checks over the trivial-group base.

pub mod complex;
pub mod fibration;
pub mod presentation;
pub mod snf;
pub mod todd_coxeter;
pub mod valid;
pub mod verdict;

use gcover_calculus::CalcError;

#[derive(Debug, thiserror::Error)]
pub enum ComplexError {
    #[error(transparent)]
    Calc(#[from] CalcError),
    #[error("vertex budget of {0} exceeded")]
    Budget(usize),
    #[error("complex is not connected")]
    Disconnected,
    #[error("{0}")]
    Other(String),
}

pub use complex::{build_bounded, build_from, BuildOptions, Cell, Edge, SchemaTally, TwoComplex};
pub use fibration::{
    check_fiber, check_lifting_squares, compute_fiber, lift_base_relation, project, project_move, project_path,
    EdgeImage, Fiber, FiberReport, SquareReport,
};
pub use presentation::{pi1_presentation, tietze, Pi1, Presentation, TietzeStats};
pub use valid::{check_connected, enumerate_shapes, enumerate_valid_vertices, labelings, raw_labelings};
pub use verdict::{prove_trivial, Analysis, Verdict, DEFAULT_COSET_BUDGET};
