use gcover_group::{Elem, GroupTable};

use super::apply::{apply_b, apply_b_inv, apply_f, apply_finv, apply_p, apply_t, apply_z, apply_z_inv, f_position};
use super::composite::{expand_gb, expand_gf};
use super::{Move, Step};
use crate::block::f_applicable;
use crate::error::CalcError;
use crate::param::{CanonicalKey, CutId, Parameterization, Relabel};

/// Limits on edge enumeration. Application of a move is never bounded.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_cuts: usize,
    pub max_block_size: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_cuts: 1, max_block_size: 6 }
    }
}

/// One walk along a stored edge. Stored edges are forward `Z`, `B`, `F`,
/// `P` and `T` moves, with ids taken from the canonical form of their tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Traversal {
    pub edge_from: CanonicalKey,
    pub edge_to: CanonicalKey,
    pub edge_move: Move,
    /// Whether the walk goes from `edge_from` to `edge_to`.
    pub forward: bool,
}

/// Result of replaying a path.
#[derive(Clone, Debug)]
pub struct Replay {
    /// Primitive steps actually taken (composites expanded).
    pub steps: Vec<Step>,
    /// Canonical forms of the visited vertices, starting with the base.
    pub vertices: Vec<Parameterization>,
    pub keys: Vec<CanonicalKey>,
    pub traversals: Vec<Traversal>,
    /// The final state with the ids it was reached with.
    pub end: Parameterization,
}

impl Replay {
    pub fn start_key(&self) -> &CanonicalKey {
        &self.keys[0]
    }

    pub fn end_key(&self) -> &CanonicalKey {
        self.keys.last().expect("replay has a base vertex")
    }

    pub fn closes(&self) -> bool {
        self.start_key() == self.end_key()
    }
}

fn relabel_move(mv: Move, r: &Relabel) -> Move {
    let b = |id: &u32| r.blocks[id];
    let c = |id: &u32| r.cuts[id];
    match mv {
        Move::Z { block } => Move::Z { block: b(&block) },
        Move::B { block, i } => Move::B { block: b(&block), i },
        Move::F { cut } => Move::F { cut: c(&cut) },
        Move::Finv { block, k, y } => Move::Finv { block: b(&block), k, y },
        Move::P { block, x } => Move::P { block: b(&block), x },
        Move::T { cut, z } => Move::T { cut: c(&cut), z },
        Move::GF { cut } => Move::GF { cut: c(&cut) },
        Move::GB { block, i2, i3 } => Move::GB { block: b(&block), i2, i3 },
    }
}

/// Apply one primitive step. For `Finv` the id of the created cut is returned.
fn apply_primitive(
    group: &GroupTable,
    p: &Parameterization,
    step: Step,
) -> Result<(Parameterization, Option<CutId>), CalcError> {
    let out = match (step.mv, step.inverse) {
        (Move::Z { block }, false) => apply_z(p, block)?,
        (Move::Z { block }, true) => apply_z_inv(p, block)?,
        (Move::B { block, i }, false) => apply_b(group, p, block, i)?,
        (Move::B { block, i }, true) => apply_b_inv(group, p, block, i)?,
        (Move::F { cut }, false) => apply_f(group, p, cut)?,
        (Move::Finv { block, k, y }, false) => {
            let (q, _, cut) = apply_finv(group, p, block, k, y)?;
            return Ok((q, Some(cut)));
        }
        (Move::P { block, x }, false) => apply_p(group, p, block, x)?,
        (Move::P { block, x }, true) => apply_p(group, p, block, group.inv(x))?,
        (Move::T { cut, z }, _) => apply_t(group, p, cut, z)?,
        (mv, _) => return Err(CalcError::NoInverse(format!("{} cannot be applied in this direction", mv.kind()))),
    };
    Ok((out, None))
}

/// Expand composite steps into primitive ones, simulating as needed.
fn expand(group: &GroupTable, p: &Parameterization, step: Step) -> Result<Vec<Step>, CalcError> {
    match step.mv {
        Move::GF { cut } if !step.inverse => expand_gf(p, cut),
        Move::GB { block, i2, i3 } if !step.inverse => Ok(expand_gb(group, p, block, i2, i3)?.0),
        Move::GF { .. } | Move::GB { .. } => {
            Err(CalcError::NoInverse(format!("{} has no inverse form", step.mv.kind())))
        }
        _ => Ok(vec![step]),
    }
}

/// Apply any step, composite or primitive, discarding edge bookkeeping.
pub fn apply_step(group: &GroupTable, p: &Parameterization, step: Step) -> Result<Parameterization, CalcError> {
    let mut cur = p.clone();
    for s in expand(group, p, step)? {
        cur = apply_primitive(group, &cur, s)?.0;
    }
    Ok(cur)
}

/// Replay a path from `p`, recording each stored edge it walks along.
pub fn replay(group: &GroupTable, p: &Parameterization, steps: &[Step]) -> Result<Replay, CalcError> {
    let (c0, r0, k0) = p.canonicalize()?;
    let mut out =
        Replay { steps: Vec::new(), vertices: vec![c0], keys: vec![k0], traversals: Vec::new(), end: p.clone() };
    let mut relabel = r0;
    for &step in steps {
        let prims = expand(group, &out.end, step)?;
        for s in prims {
            let pre = &out.end;
            let (post, new_cut) = apply_primitive(group, pre, s)?;
            let (canon, post_relabel, key) = post.canonicalize()?;
            let pre_key = out.keys.last().expect("nonempty").clone();
            let t = match (s.mv, s.inverse) {
                (Move::Finv { .. }, _) => Traversal {
                    edge_from: key.clone(),
                    edge_to: pre_key,
                    edge_move: Move::F { cut: post_relabel.cuts[&new_cut.expect("Finv creates a cut")] },
                    forward: false,
                },
                (Move::T { cut, .. }, true) => {
                    let c = pre.cut(cut)?;
                    let y = pre.labels_at(c.a)?.1;
                    Traversal {
                        edge_from: key.clone(),
                        edge_to: pre_key,
                        edge_move: Move::T { cut: post_relabel.cuts[&cut], z: y },
                        forward: false,
                    }
                }
                (mv, true) => Traversal {
                    edge_from: key.clone(),
                    edge_to: pre_key,
                    edge_move: relabel_move(mv, &post_relabel),
                    forward: false,
                },
                (mv, false) => Traversal {
                    edge_from: pre_key,
                    edge_to: key.clone(),
                    edge_move: relabel_move(mv, &relabel),
                    forward: true,
                },
            };
            out.traversals.push(t);
            out.steps.push(s);
            out.vertices.push(canon);
            out.keys.push(key);
            out.end = post;
            relabel = post_relabel;
        }
    }
    Ok(out)
}

/// All forward edges at `p` plus the splits allowed by `bounds`, in a fixed
/// order: per block `Z`, `B_i`, `P_x`; per cut `F`, `T_z`; then `Finv`.
pub fn enumerate_moves(group: &GroupTable, p: &Parameterization, bounds: &Bounds) -> Vec<Step> {
    let mut out = Vec::new();
    let elems: Vec<Elem> = group.elements().collect();
    for (&block, b) in p.blocks() {
        let n = b.arity();
        if n >= 1 {
            out.push(Step::fwd(Move::Z { block }));
        }
        for i in 1..n {
            out.push(Step::fwd(Move::B { block, i }));
        }
        for &x in &elems {
            out.push(Step::fwd(Move::P { block, x }));
        }
    }
    for (&cut, c) in p.cuts() {
        if let Ok(Some((sa, sb))) = f_position(p, cut) {
            let (a, b) = (&p.blocks()[&sa.block], &p.blocks()[&sb.block]);
            let merged = a.arity() + b.arity() - 2;
            if merged <= bounds.max_block_size && f_applicable(group, a, sa.index, b, sb.index).unwrap_or(false) {
                out.push(Step::fwd(Move::F { cut }));
            }
        }
        let ya = p.labels_at(c.a).map(|l| l.1);
        let yb = p.labels_at(c.b).map(|l| l.1);
        if matches!((ya, yb), (Ok(u), Ok(v)) if u == v) {
            for &z in &elems {
                out.push(Step::fwd(Move::T { cut, z }));
            }
        }
    }
    if p.cut_count() < bounds.max_cuts {
        for (&block, b) in p.blocks() {
            for k in 1..b.arity().max(1) {
                for &y in &elems {
                    out.push(Step::fwd(Move::Finv { block, k, y }));
                }
            }
        }
    }
    out
}
