//! Label calculus for parameterizations of principal G-covers of genus-zero
//! surfaces: standard blocks, gluing forests, moves and relation loops.

mod block;
mod error;
pub mod moves;
mod param;
pub mod relations;
mod target;

pub use block::{f_applicable, find_iso, glue_admissible, Block};
pub use error::CalcError;
pub use moves::{Bounds, Move, SlotRange, Step};
pub use param::{
    invariants_equivalent, seed_parameterization, Attachment, BlockId, CanonicalKey, ComponentInvariant, Cut, CutId,
    Parameterization, Relabel, Slot, ValidityReport,
};
pub use relations::{enumerate_instances, verify_closure, Closure, InstanceContext, RelationInstance, Schema};
pub use target::{first_realization, forced_cut_label, TargetCover};
