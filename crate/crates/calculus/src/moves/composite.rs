use gcover_group::{Elem, GroupTable};

use super::apply::{apply_b, apply_f, apply_finv, apply_p, apply_z, apply_z_inv, f_position};
use super::{Move, SlotRange, Step};
use crate::block::Block;
use crate::error::CalcError;
use crate::param::{BlockId, CutId, Parameterization, Slot};

/// Primitive steps of the generalized `F`: rotate the two blocks so the cut
/// joins a last slot to a first slot, then erase it. Side `a` of the cut
/// becomes the left block unless the cut is already in position.
pub fn expand_gf(p: &Parameterization, cut: CutId) -> Result<Vec<Step>, CalcError> {
    if f_position(p, cut)?.is_some() {
        return Ok(vec![Step::fwd(Move::F { cut })]);
    }
    let c = *p.cut(cut)?;
    let na = p.block(c.a.block)?.arity();
    let nb = p.block(c.b.block)?.arity();
    let mut steps = Vec::new();
    for _ in 0..(na - c.a.index) {
        steps.push(Step::fwd(Move::Z { block: c.a.block }));
    }
    for _ in 0..((nb - c.b.index + 1) % nb) {
        steps.push(Step::fwd(Move::Z { block: c.b.block }));
    }
    steps.push(Step::fwd(Move::F { cut }));
    Ok(steps)
}

fn gb_check(p: &Parameterization, block: BlockId, i2: SlotRange, i3: SlotRange) -> Result<usize, CalcError> {
    let n = p.block(block)?.arity();
    if i2.lo == 0 || i2.is_empty() || i3.is_empty() || i3.lo != i2.hi + 1 || i3.hi > n {
        return Err(CalcError::BadRange(format!(
            "I2={}..{}, I3={}..{} on a block of arity {n}",
            i2.lo, i2.hi, i3.lo, i3.hi
        )));
    }
    Ok(n)
}

/// Labels after generalized braiding: slots ordered `I1, I3, I2, I4`, with
/// the `I3` slots acted on by `z`, the product of the cut labels over `I2`.
pub fn gb_closed_block(group: &GroupTable, b: &Block, i2: SlotRange, i3: SlotRange) -> Block {
    let z = group.product(b.g()[i2.lo - 1..i2.hi].iter().copied());
    let zi = group.inv(z);
    let mut g = Vec::with_capacity(b.arity());
    let mut h = Vec::with_capacity(b.arity());
    for j in 1..i2.lo {
        g.push(b.g()[j - 1]);
        h.push(b.h()[j - 1]);
    }
    for j in i3.lo..=i3.hi {
        g.push(group.conj(z, b.g()[j - 1]));
        h.push(group.mul(b.h()[j - 1], zi));
    }
    for j in i2.lo..=i2.hi {
        g.push(b.g()[j - 1]);
        h.push(b.h()[j - 1]);
    }
    for j in i3.hi + 1..=b.arity() {
        g.push(b.g()[j - 1]);
        h.push(b.h()[j - 1]);
    }
    Block::from_parts(g, h)
}

/// Closed form of the generalized braiding on a parameterization.
pub fn apply_gb_closed(
    group: &GroupTable,
    p: &Parameterization,
    block: BlockId,
    i2: SlotRange,
    i3: SlotRange,
) -> Result<Parameterization, CalcError> {
    gb_check(p, block, i2, i3)?;
    let b = p.block(block)?;
    let mut out = p.clone();
    out.blocks.insert(block, gb_closed_block(group, b, i2, i3));
    let (l2, l3) = (i2.len(), i3.len());
    out.remap_block_slots(block, |j| {
        let k = if (i3.lo..=i3.hi).contains(&j) {
            j - l2
        } else if (i2.lo..=i2.hi).contains(&j) {
            j + l3
        } else {
            j
        };
        Slot::new(block, k)
    });
    Ok(out)
}

struct Recorder<'g> {
    group: &'g GroupTable,
    p: Parameterization,
    steps: Vec<Step>,
}

impl Recorder<'_> {
    fn z(&mut self, block: BlockId, times: usize) -> Result<(), CalcError> {
        for _ in 0..times {
            self.p = apply_z(&self.p, block)?;
            self.steps.push(Step::fwd(Move::Z { block }));
        }
        Ok(())
    }

    fn z_inv(&mut self, block: BlockId) -> Result<(), CalcError> {
        self.p = apply_z_inv(&self.p, block)?;
        self.steps.push(Step::inv(Move::Z { block }));
        Ok(())
    }

    fn finv(&mut self, block: BlockId, k: usize, y: Elem) -> Result<(BlockId, CutId), CalcError> {
        let (p, right, cut) = apply_finv(self.group, &self.p, block, k, y)?;
        self.p = p;
        self.steps.push(Step::fwd(Move::Finv { block, k, y }));
        Ok((right, cut))
    }

    fn gf(&mut self, cut: CutId) -> Result<(), CalcError> {
        for s in expand_gf(&self.p, cut)? {
            self.p = match s.mv {
                Move::Z { block } => apply_z(&self.p, block)?,
                Move::F { cut } => apply_f(self.group, &self.p, cut)?,
                _ => unreachable!("generalized F expands to Z and F only"),
            };
            self.steps.push(s);
        }
        Ok(())
    }

    fn h_at(&self, block: BlockId, slot: usize) -> Result<Elem, CalcError> {
        Ok(self.p.labels_at(Slot::new(block, slot))?.1)
    }
}

/// Expand the generalized braiding into primitive steps: three splits, a
/// braid on the middle three-holed block, `P_z` on the `I3` piece and three
/// merges, then a rotation restoring the slot order `I1, I3, I2, I4`.
///
/// The lift labels of the auxiliary cuts are the current lift labels at the
/// first slot of `I2` (outer and inner split) and of `I3`.
///
/// Returns the steps, the resulting parameterization and the id of the block
/// that carries the result.
pub fn expand_gb(
    group: &GroupTable,
    p: &Parameterization,
    block: BlockId,
    i2: SlotRange,
    i3: SlotRange,
) -> Result<(Vec<Step>, Parameterization, BlockId), CalcError> {
    let n = gb_check(p, block, i2, i3)?;
    let (a1, a2) = (i2.lo - 1, i2.len());
    let a4 = n - i3.hi;
    let outer = a1 + a4 > 0;
    let p0 = usize::from(outer);
    let anchor_slot = if a1 > 0 { 1 } else { i3.lo };
    let anchor = p.attachments(block)[anchor_slot - 1];
    let y_outer = p.labels_at(Slot::new(block, i2.lo))?.1;
    let v = p.labels_at(Slot::new(block, i3.lo))?.1;

    let mut r = Recorder { group, p: p.clone(), steps: Vec::new() };
    // cut off I1 and I4: O = (I4, I1, x), R = (x⁻¹, I2, I3)
    let (mid, c1) = if outer {
        r.z(block, a4)?;
        let (right, cut) = r.finv(block, a1 + a4, y_outer)?;
        (right, Some(cut))
    } else {
        (block, None)
    };
    // L = (x⁻¹?, I2, u), C3 = (u⁻¹, I3)
    let (c3_block, c3) = r.finv(mid, p0 + a2, v)?;
    // M0 = (u, x⁻¹?, z), C2 = (z⁻¹, I2)
    r.z(mid, 1)?;
    let w = r.h_at(mid, 2 + p0)?;
    let (_, c2) = r.finv(mid, 1 + p0, w)?;
    // M = (x⁻¹?, z, u)
    r.z_inv(mid)?;
    r.p = apply_b(group, &r.p, mid, p0 + 1)?;
    r.steps.push(Step::fwd(Move::B { block: mid, i: p0 + 1 }));
    let z = group.product(p.block(block)?.g()[i2.lo - 1..i2.hi].iter().copied());
    r.p = apply_p(group, &r.p, c3_block, z)?;
    r.steps.push(Step::fwd(Move::P { block: c3_block, x: z }));
    r.gf(c3)?;
    r.gf(c2)?;
    if let Some(c1) = c1 {
        r.gf(c1)?;
    }
    let result = if r.p.blocks.contains_key(&block) { block } else { mid };
    let atts = r.p.attachments(result);
    let pos = atts
        .iter()
        .position(|a| *a == anchor)
        .ok_or_else(|| CalcError::Structure("generalized braiding lost a boundary".into()))?
        + 1;
    r.z(result, (n - pos + 1) % n)?;
    Ok((r.steps, r.p, result))
}
