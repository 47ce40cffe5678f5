//! Moves: the edge generators of the complex.
//!
//! A [`Move`] names a rewrite on one block or cut. A [`Step`] is a move
//! together with a direction flag. Composite moves (`GF`, `GB`) expand into
//! primitive steps before they are replayed, so only `Z`, `B`, `F`, `P` and
//! `T` ever appear as stored edges.

mod apply;
mod composite;
mod grammar;
mod replay;

use gcover_group::{Elem, GroupTable};

use crate::param::{BlockId, CutId};

pub use apply::{apply_b, apply_b_inv, apply_f, apply_finv, apply_p, apply_t, apply_z, apply_z_inv, f_position};
pub use composite::{apply_gb_closed, expand_gb, expand_gf, gb_closed_block};
pub use grammar::{parse_path, parse_step};
pub use replay::{apply_step, enumerate_moves, replay, Bounds, Replay, Traversal};

/// Inclusive 1-based slot range `lo..=hi`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotRange {
    pub lo: usize,
    pub hi: usize,
}

impl SlotRange {
    pub fn new(lo: usize, hi: usize) -> Self {
        SlotRange { lo, hi }
    }

    pub fn len(&self) -> usize {
        self.hi + 1 - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Z { block: BlockId },
    B { block: BlockId, i: usize },
    F { cut: CutId },
    Finv { block: BlockId, k: usize, y: Elem },
    P { block: BlockId, x: Elem },
    T { cut: CutId, z: Elem },
    GF { cut: CutId },
    GB { block: BlockId, i2: SlotRange, i3: SlotRange },
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::Z { .. } => "Z",
            Move::B { .. } => "B",
            Move::F { .. } => "F",
            Move::Finv { .. } => "Finv",
            Move::P { .. } => "P",
            Move::T { .. } => "T",
            Move::GF { .. } => "GF",
            Move::GB { .. } => "GB",
        }
    }

    pub fn is_composite(&self) -> bool {
        matches!(self, Move::GF { .. } | Move::GB { .. })
    }

    pub fn to_text(&self, group: &GroupTable) -> String {
        let e = |x: &Elem| group.format_elem(*x);
        match self {
            Move::Z { block } => format!("Z@b{block}"),
            Move::B { block, i } => format!("B@b{block}#{i}"),
            Move::F { cut } => format!("F@c{cut}"),
            Move::Finv { block, k, y } => format!("Finv@b{block}#k={k},y={}", e(y)),
            Move::P { block, x } => format!("P@b{block},x={}", e(x)),
            Move::T { cut, z } => format!("T@c{cut},z={}", e(z)),
            Move::GF { cut } => format!("GF@c{cut}"),
            Move::GB { block, i2, i3 } => {
                format!("GB@b{block},I2={}..{},I3={}..{}", i2.lo, i2.hi, i3.lo, i3.hi)
            }
        }
    }
}

/// A move and the direction it is taken in.
///
/// Inverse steps: `Z!` rotates the other way, `B!` undoes a braid, `P!` with
/// parameter `x` applies `P` with `x⁻¹`, and `T!` with parameter `z` walks the
/// `T` edge that leads back from label `z`. `Finv` is itself the backward
/// direction of an `F` edge, so `F!` and `Finv!` are not accepted; neither
/// are inverses of the composite moves.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub mv: Move,
    pub inverse: bool,
}

impl Step {
    pub fn fwd(mv: Move) -> Self {
        Step { mv, inverse: false }
    }

    pub fn inv(mv: Move) -> Self {
        Step { mv, inverse: true }
    }

    pub fn to_text(&self, group: &GroupTable) -> String {
        let mut s = self.mv.to_text(group);
        if self.inverse {
            s.push('!');
        }
        s
    }
}

/// Render a path in the `;`-separated grammar.
pub fn path_to_text(group: &GroupTable, steps: &[Step]) -> String {
    steps.iter().map(|s| s.to_text(group)).collect::<Vec<_>>().join(";")
}
