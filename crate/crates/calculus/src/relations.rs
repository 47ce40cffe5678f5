//! Relation schemas: pairs of paths with a common start that must end at the
//! same vertex. Each instance is a 2-cell of the complex whose boundary is
//! the left path followed by the reversed right path.

use std::fmt;

use gcover_group::{Elem, GroupTable};

use crate::block::f_applicable;
use crate::error::CalcError;
use crate::moves::{
    apply_finv, apply_step, enumerate_moves, expand_gf, f_position, replay, Bounds, Move, Replay, SlotRange, Step,
    Traversal,
};
use crate::param::{Attachment, BlockId, CutId, Parameterization, Slot};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Schema {
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
    R14,
    R15,
    R16,
    R17,
}

impl Schema {
    pub const ALL: [Schema; 16] = [
        Schema::R2,
        Schema::R3,
        Schema::R4,
        Schema::R5,
        Schema::R6,
        Schema::R7,
        Schema::R8,
        Schema::R9,
        Schema::R10,
        Schema::R11,
        Schema::R12,
        Schema::R13,
        Schema::R14,
        Schema::R15,
        Schema::R16,
        Schema::R17,
    ];

    pub fn description(self) -> &'static str {
        match self {
            Schema::R2 => "P commutes with Z",
            Schema::R3 => "P commutes with B",
            Schema::R4 => "P across F",
            Schema::R5 => "P composition",
            Schema::R6 => "P on either side of F",
            Schema::R7 => "Z shifts the braid index",
            Schema::R8 => "Z commutes with T",
            Schema::R9 => "B commutes with T",
            Schema::R10 => "T is a split after a merge",
            Schema::R11 => "full rotation",
            Schema::R12 => "disjoint support",
            Schema::R13 => "symmetry of F",
            Schema::R14 => "associativity of cuts",
            Schema::R15 => "cylinder",
            Schema::R16 => "braiding",
            Schema::R17 => "Dehn twist",
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for Schema {
    type Err = CalcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Schema::ALL
            .into_iter()
            .find(|x| x.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| CalcError::Parse(format!("unknown schema {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub schema: Schema,
    pub base: Parameterization,
    /// Steps in application order.
    pub lhs: Vec<Step>,
    pub rhs: Vec<Step>,
}

/// Outcome of replaying both sides of an instance.
#[derive(Clone, Debug)]
pub struct Closure {
    pub lhs: Replay,
    pub rhs: Replay,
}

impl Closure {
    pub fn closes(&self) -> bool {
        self.lhs.end_key() == self.rhs.end_key()
    }

    /// Boundary of the cell: the left path, then the right path walked back.
    pub fn boundary(&self) -> Vec<Traversal> {
        let mut out = self.lhs.traversals.clone();
        out.extend(self.rhs.traversals.iter().rev().map(|t| Traversal { forward: !t.forward, ..t.clone() }));
        out
    }
}

pub fn verify_closure(group: &GroupTable, inst: &RelationInstance) -> Result<Closure, CalcError> {
    Ok(Closure { lhs: replay(group, &inst.base, &inst.lhs)?, rhs: replay(group, &inst.base, &inst.rhs)? })
}

/// Everything the generators need besides the vertex.
#[derive(Clone, Debug)]
pub struct InstanceContext {
    pub bounds: Bounds,
    /// Values used for free group-element parameters.
    pub elements: Vec<Elem>,
}

/// Cap on free group-element parameters before sampling kicks in.
pub const EXHAUSTIVE_PARAMETER_ORDER: usize = 6;

impl InstanceContext {
    /// All elements when `|G| ≤ 6`; otherwise the identity plus five others
    /// drawn by a seeded shuffle.
    pub fn new(group: &GroupTable, bounds: Bounds, sampling_seed: u64) -> Self {
        let mut elements: Vec<Elem> = group.elements().collect();
        if elements.len() > EXHAUSTIVE_PARAMETER_ORDER {
            let id = group.id();
            let mut rest: Vec<Elem> = elements.into_iter().filter(|&e| e != id).collect();
            // SplitMix64 driving a partial Fisher-Yates shuffle
            let mut state = sampling_seed;
            let mut next = || {
                state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
                z ^ (z >> 31)
            };
            for i in 0..EXHAUSTIVE_PARAMETER_ORDER - 1 {
                let j = i + (next() % (rest.len() - i) as u64) as usize;
                rest.swap(i, j);
            }
            rest.truncate(EXHAUSTIVE_PARAMETER_ORDER - 1);
            rest.sort();
            elements = std::iter::once(id).chain(rest).collect();
        }
        InstanceContext { bounds, elements }
    }
}

fn inst(schema: Schema, base: &Parameterization, lhs: Vec<Step>, rhs: Vec<Step>) -> RelationInstance {
    RelationInstance { schema, base: base.clone(), lhs, rhs }
}

fn z(block: BlockId) -> Step {
    Step::fwd(Move::Z { block })
}

fn zinv(block: BlockId) -> Step {
    Step::inv(Move::Z { block })
}

fn b(block: BlockId, i: usize) -> Step {
    Step::fwd(Move::B { block, i })
}

fn p(block: BlockId, x: Elem) -> Step {
    Step::fwd(Move::P { block, x })
}

fn t(cut: CutId, z: Elem) -> Step {
    Step::fwd(Move::T { cut, z })
}

fn f(cut: CutId) -> Step {
    Step::fwd(Move::F { cut })
}

/// Cuts in position for `F` whose labels allow erasing, as `(cut, left, right)`.
fn erasable(group: &GroupTable, q: &Parameterization) -> Vec<(CutId, Slot, Slot)> {
    q.cuts()
        .keys()
        .filter_map(|&c| {
            let (sa, sb) = f_position(q, c).ok()??;
            let ok = f_applicable(group, &q.blocks()[&sa.block], sa.index, &q.blocks()[&sb.block], sb.index).ok()?;
            ok.then_some((c, sa, sb))
        })
        .collect()
}

fn matched_cuts(q: &Parameterization) -> Vec<CutId> {
    q.cuts().keys().copied().filter(|&c| q.is_matched(c).unwrap_or(false)).collect()
}

fn open_blocks(q: &Parameterization) -> impl Iterator<Item = (BlockId, usize)> + '_ {
    q.blocks().iter().filter(|(_, b)| b.arity() > 0).map(|(&id, b)| (id, b.arity()))
}

/// All instances of `schema` at `q`.
pub fn enumerate_instances(
    group: &GroupTable,
    q: &Parameterization,
    schema: Schema,
    ctx: &InstanceContext,
) -> Vec<RelationInstance> {
    let xs = &ctx.elements;
    let mut out = Vec::new();
    match schema {
        Schema::R2 => {
            for (id, _) in open_blocks(q) {
                for &x in xs {
                    out.push(inst(schema, q, vec![z(id), p(id, x)], vec![p(id, x), z(id)]));
                }
            }
        }
        Schema::R3 => {
            for (id, n) in open_blocks(q) {
                for i in 1..n {
                    for &x in xs {
                        out.push(inst(schema, q, vec![b(id, i), p(id, x)], vec![p(id, x), b(id, i)]));
                    }
                }
            }
        }
        Schema::R4 => {
            for (c, sa, sb) in erasable(group, q) {
                for &x in xs {
                    out.push(inst(schema, q, vec![f(c), p(sa.block, x)], vec![p(sa.block, x), p(sb.block, x), f(c)]));
                }
            }
        }
        Schema::R5 => {
            for &id in q.blocks().keys() {
                for &x in xs {
                    for &y in xs {
                        out.push(inst(schema, q, vec![p(id, y), p(id, x)], vec![p(id, group.mul(x, y))]));
                    }
                }
            }
        }
        Schema::R6 => {
            for &c in q.cuts().keys() {
                let Ok(Some((sa, sb))) = f_position(q, c) else {
                    continue;
                };
                let y = q.blocks()[&sa.block].slot(sa.index).1;
                let w = q.blocks()[&sb.block].slot(sb.index).1;
                let tt = group.mul(group.inv(w), y);
                out.push(inst(
                    schema,
                    q,
                    vec![p(sa.block, tt), f(c)],
                    vec![p(sb.block, group.inv(tt)), f(c), p(sa.block, tt)],
                ));
            }
        }
        Schema::R7 => {
            for (id, n) in open_blocks(q) {
                for i in 1..n.saturating_sub(1) {
                    out.push(inst(schema, q, vec![b(id, i), z(id)], vec![z(id), b(id, i + 1)]));
                }
            }
        }
        Schema::R8 | Schema::R9 => {
            for c in matched_cuts(q) {
                let cut = q.cuts()[&c];
                for side in [cut.a, cut.b] {
                    let n = q.blocks()[&side.block].arity();
                    for &zz in xs {
                        if schema == Schema::R8 {
                            out.push(inst(schema, q, vec![t(c, zz), z(side.block)], vec![z(side.block), t(c, zz)]));
                            continue;
                        }
                        for i in 1..n {
                            if side.index == i + 1 {
                                continue;
                            }
                            out.push(inst(
                                schema,
                                q,
                                vec![t(c, zz), b(side.block, i)],
                                vec![b(side.block, i), t(c, zz)],
                            ));
                        }
                    }
                }
            }
        }
        Schema::R10 => {
            for c in matched_cuts(q) {
                for &zz in xs {
                    if let Some(rhs) = split_after_merge(group, q, c, zz) {
                        out.push(inst(schema, q, vec![t(c, zz)], rhs));
                    }
                }
            }
        }
        Schema::R11 => {
            for (id, n) in open_blocks(q) {
                out.push(inst(schema, q, vec![z(id); n], Vec::new()));
            }
        }
        Schema::R12 => {
            let moves = enumerate_moves(group, q, &ctx.bounds);
            let supports: Vec<Support> = moves.iter().map(|s| support(q, s)).collect();
            for i in 0..moves.len() {
                for j in i + 1..moves.len() {
                    if supports[i].disjoint(&supports[j]) {
                        out.push(inst(schema, q, vec![moves[i], moves[j]], vec![moves[j], moves[i]]));
                    }
                }
            }
        }
        Schema::R13 => {
            for (c, sa, sb) in erasable(group, q) {
                let l = q.blocks()[&sb.block].arity() - 1;
                let mut lhs = vec![f(c)];
                lhs.extend(std::iter::repeat(z(sa.block)).take(l));
                out.push(inst(schema, q, lhs, vec![z(sa.block), zinv(sb.block), f(c)]));
            }
        }
        Schema::R14 => {
            let er = erasable(group, q);
            for &(c1, _, s1b) in &er {
                for &(c2, s2a, _) in &er {
                    if c1 != c2 && s1b.block == s2a.block {
                        out.push(inst(schema, q, vec![f(c1), f(c2)], vec![f(c2), f(c1)]));
                    }
                }
            }
        }
        Schema::R15 => out.extend(cylinder_instances(group, q, xs)),
        Schema::R16 => {
            for (id, n) in open_blocks(q) {
                for i in 1..n.saturating_sub(1) {
                    let gb = |i2: SlotRange, i3: SlotRange| Step::fwd(Move::GB { block: id, i2, i3 });
                    out.push(inst(
                        schema,
                        q,
                        vec![b(id, i), b(id, i + 1)],
                        vec![gb(SlotRange::new(i, i), SlotRange::new(i + 1, i + 2))],
                    ));
                    out.push(inst(
                        schema,
                        q,
                        vec![b(id, i + 1), b(id, i)],
                        vec![gb(SlotRange::new(i, i + 1), SlotRange::new(i + 2, i + 2))],
                    ));
                }
            }
        }
        Schema::R17 => {
            for (id, n) in open_blocks(q) {
                if n == 2 {
                    let g = q.blocks()[&id].g()[0];
                    out.push(inst(schema, q, vec![b(id, 1), z(id)], vec![z(id), b(id, 1), p(id, g)]));
                }
            }
        }
    }
    out
}

/// The right side of the `T` relation at a matched cut with inverse cut
/// labels: bring the cut into position, erase it, split again with label
/// `z`, and undo the rotations.
fn split_after_merge(group: &GroupTable, q: &Parameterization, c: CutId, zz: Elem) -> Option<Vec<Step>> {
    let gf = expand_gf(q, c).ok()?;
    let left = match f_position(q, c).ok()? {
        Some((sa, _)) if gf.len() == 1 => sa.block,
        _ => q.cuts()[&c].a.block,
    };
    let mut cur = q.clone();
    for s in &gf {
        cur = apply_step(group, &cur, *s).ok()?;
    }
    let k = q.block(left).ok()?.arity() - 1;
    let (_, right, _) = apply_finv(group, &cur, left, k, zz).ok()?;
    let mut steps = gf.clone();
    steps.push(Step::fwd(Move::Finv { block: left, k, y: zz }));
    for s in &gf[..gf.len() - 1] {
        let Move::Z { block } = s.mv else { unreachable!("rotations only") };
        steps.push(zinv(if block == left { left } else { right }));
    }
    Some(steps)
}

#[derive(Clone, Debug, Default)]
struct Support {
    blocks: Vec<BlockId>,
    cuts: Vec<CutId>,
}

impl Support {
    fn disjoint(&self, other: &Support) -> bool {
        self.blocks.iter().all(|b| !other.blocks.contains(b)) && self.cuts.iter().all(|c| !other.cuts.contains(c))
    }
}

/// Blocks and cuts a move reads or writes. A `T` move reaches into the
/// labels of both neighbouring blocks only at its own cut, so it clashes
/// with whole-block moves on either neighbour and with moves of the same cut.
fn support(q: &Parameterization, s: &Step) -> Support {
    let cuts_of = |b: BlockId| -> Vec<CutId> {
        q.attachments(b)
            .into_iter()
            .filter_map(|a| match a {
                Some(Attachment::Cut(c, _)) => Some(c),
                _ => None,
            })
            .collect()
    };
    match s.mv {
        Move::Z { block } | Move::B { block, .. } | Move::P { block, .. } | Move::Finv { block, .. } => {
            Support { blocks: vec![block], cuts: cuts_of(block) }
        }
        Move::GB { block, .. } => Support { blocks: vec![block], cuts: cuts_of(block) },
        Move::F { cut } | Move::GF { cut } => {
            let c = q.cuts()[&cut];
            let mut cuts = cuts_of(c.a.block);
            cuts.extend(cuts_of(c.b.block));
            Support { blocks: vec![c.a.block, c.b.block], cuts }
        }
        Move::T { cut, .. } => Support { blocks: Vec::new(), cuts: vec![cut] },
    }
}

/// Merge the two-holed block `cyl` into its neighbour across `cut` and
/// rotate back so the neighbour's slot order is unchanged. With `cyl_left`
/// the cylinder is the left block of the merge and its id survives.
fn absorb(q: &Parameterization, cut: CutId, cyl: BlockId, cyl_left: bool) -> Option<(Vec<Step>, BlockId)> {
    let (near, far) = q.cuts()[&cut].oriented_from(cyl)?;
    let host = far.block;
    let n = q.blocks()[&host].arity();
    let mut steps = Vec::new();
    let host_turns = if cyl_left { (n - far.index + 1) % n } else { n - far.index };
    let cyl_turns = if cyl_left { 2 - near.index } else { (2 - near.index + 1) % 2 };
    steps.extend(std::iter::repeat(z(host)).take(host_turns));
    steps.extend(std::iter::repeat(z(cyl)).take(cyl_turns));
    steps.push(f(cut));
    let merged = if cyl_left { cyl } else { host };
    steps.extend(std::iter::repeat(zinv(merged)).take(host_turns));
    Some((steps, merged))
}

fn with_block(s: Step, block: BlockId) -> Step {
    let mv = match s.mv {
        Move::Z { .. } => Move::Z { block },
        Move::B { i, .. } => Move::B { block, i },
        Move::P { x, .. } => Move::P { block, x },
        other => other,
    };
    Step { mv, ..s }
}

fn cylinder_instances(group: &GroupTable, q: &Parameterization, xs: &[Elem]) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for (&c, cut) in q.cuts() {
        for cyl in [cut.a.block, cut.b.block] {
            if q.blocks()[&cyl].arity() != 2 {
                continue;
            }
            let host = cut.oriented_from(cyl).expect("cut touches cyl").1.block;
            let n = q.blocks()[&host].arity();
            let mut es: Vec<Step> = vec![z(host)];
            es.extend((1..n).map(|i| b(host, i)));
            es.extend(xs.iter().map(|&x| p(host, x)));
            for cyl_left in [false, true] {
                let Some((absorb_now, merged)) = absorb(q, c, cyl, cyl_left) else {
                    continue;
                };
                for &e in &es {
                    let mut lhs = absorb_now.clone();
                    lhs.push(with_block(e, merged));
                    let Ok(after_e) = apply_step(group, q, e) else {
                        continue;
                    };
                    let Some((absorb_later, _)) = absorb(&after_e, c, cyl, cyl_left) else {
                        continue;
                    };
                    let mut rhs = vec![e];
                    rhs.extend(absorb_later);
                    let candidate = inst(Schema::R15, q, lhs, rhs);
                    let applies = |steps: &[Step]| {
                        let mut cur = q.clone();
                        steps.iter().all(|s| match apply_step(group, &cur, *s) {
                            Ok(next) => {
                                cur = next;
                                true
                            }
                            Err(_) => false,
                        })
                    };
                    if applies(&candidate.lhs) && applies(&candidate.rhs) {
                        out.push(candidate);
                    }
                }
            }
        }
    }
    out
}
