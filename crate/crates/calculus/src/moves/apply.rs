use gcover_group::{Elem, GroupTable};

use crate::block::{f_applicable, Block};
use crate::error::CalcError;
use crate::param::{BlockId, Cut, CutId, Parameterization, Slot};

fn open_block<'a>(p: &'a Parameterization, block: BlockId, name: &str) -> Result<&'a Block, CalcError> {
    let b = p.block(block)?;
    if b.arity() == 0 {
        return Err(CalcError::ClosedSphere(name.to_string()));
    }
    Ok(b)
}

/// Rotate a block: the labels of slot `n` move to slot 1.
pub fn apply_z(p: &Parameterization, block: BlockId) -> Result<Parameterization, CalcError> {
    let b = open_block(p, block, "Z")?;
    let n = b.arity();
    let mut g = b.g().to_vec();
    let mut h = b.h().to_vec();
    g.rotate_right(1);
    h.rotate_right(1);
    let mut out = p.clone();
    out.blocks.insert(block, Block::from_parts(g, h));
    out.remap_block_slots(block, |i| Slot::new(block, i % n + 1));
    Ok(out)
}

pub fn apply_z_inv(p: &Parameterization, block: BlockId) -> Result<Parameterization, CalcError> {
    let b = open_block(p, block, "Z")?;
    let n = b.arity();
    let mut g = b.g().to_vec();
    let mut h = b.h().to_vec();
    g.rotate_left(1);
    h.rotate_left(1);
    let mut out = p.clone();
    out.blocks.insert(block, Block::from_parts(g, h));
    out.remap_block_slots(block, |i| Slot::new(block, if i == 1 { n } else { i - 1 }));
    Ok(out)
}

fn braid_check(p: &Parameterization, block: BlockId, i: usize) -> Result<&Block, CalcError> {
    let b = open_block(p, block, "B")?;
    if i == 0 || i >= b.arity() {
        return Err(CalcError::BadBraid { i, arity: b.arity() });
    }
    Ok(b)
}

fn swap_slots(p: &mut Parameterization, block: BlockId, i: usize) {
    p.remap_block_slots(block, |j| {
        Slot::new(
            block,
            if j == i {
                i + 1
            } else if j == i + 1 {
                i
            } else {
                j
            },
        )
    });
}

/// Braid slots `i` and `i + 1`:
/// `(g_i, h_i), (g_{i+1}, h_{i+1}) ↦ (g_i g_{i+1} g_i⁻¹, h_{i+1} g_i⁻¹), (g_i, h_i)`.
pub fn apply_b(
    group: &GroupTable,
    p: &Parameterization,
    block: BlockId,
    i: usize,
) -> Result<Parameterization, CalcError> {
    let b = braid_check(p, block, i)?;
    let (gi, hi) = b.slot(i);
    let (gj, hj) = b.slot(i + 1);
    let mut g = b.g().to_vec();
    let mut h = b.h().to_vec();
    g[i - 1] = group.conj(gi, gj);
    h[i - 1] = group.mul(hj, group.inv(gi));
    g[i] = gi;
    h[i] = hi;
    let mut out = p.clone();
    out.blocks.insert(block, Block::from_parts(g, h));
    swap_slots(&mut out, block, i);
    Ok(out)
}

pub fn apply_b_inv(
    group: &GroupTable,
    p: &Parameterization,
    block: BlockId,
    i: usize,
) -> Result<Parameterization, CalcError> {
    let b = braid_check(p, block, i)?;
    let (ai_g, ai_h) = b.slot(i);
    let (gi, hi) = b.slot(i + 1);
    let mut g = b.g().to_vec();
    let mut h = b.h().to_vec();
    g[i - 1] = gi;
    h[i - 1] = hi;
    g[i] = group.conj(group.inv(gi), ai_g);
    h[i] = group.mul(ai_h, gi);
    let mut out = p.clone();
    out.blocks.insert(block, Block::from_parts(g, h));
    swap_slots(&mut out, block, i);
    Ok(out)
}

/// The sides of `cut` as `(last slot of A, first slot of B)`, preferring the
/// stored orientation, or `None` if neither orientation fits.
pub fn f_position(p: &Parameterization, cut: CutId) -> Result<Option<(Slot, Slot)>, CalcError> {
    let c = *p.cut(cut)?;
    for (x, y) in [(c.a, c.b), (c.b, c.a)] {
        let nx = p.block(x.block)?.arity();
        if x.index == nx && y.index == 1 {
            return Ok(Some((x, y)));
        }
    }
    Ok(None)
}

/// Erase a cut joining the last slot of `A` to the first slot of `B`. The
/// merged block keeps `A`'s id.
pub fn apply_f(group: &GroupTable, p: &Parameterization, cut: CutId) -> Result<Parameterization, CalcError> {
    let (sa, sb) = f_position(p, cut)?.ok_or(CalcError::NotInPosition(cut))?;
    let a = p.block(sa.block)?;
    let b = p.block(sb.block)?;
    if !f_applicable(group, a, sa.index, b, sb.index)? {
        let (ga, ha) = a.slot(sa.index);
        let (gb, hb) = b.slot(sb.index);
        let reason = if ha != hb {
            format!("lift labels {} and {} differ", group.format_elem(ha), group.format_elem(hb))
        } else {
            format!("cut labels {} and {} are not inverse", group.format_elem(ga), group.format_elem(gb))
        };
        return Err(CalcError::NotErasable { cut, reason });
    }
    let k = a.arity() - 1;
    if k + b.arity() - 1 == 0 {
        return Err(CalcError::Structure("erasing this cut would leave a closed sphere".into()));
    }
    let mut g = a.g()[..k].to_vec();
    let mut h = a.h()[..k].to_vec();
    g.extend_from_slice(&b.g()[1..]);
    h.extend_from_slice(&b.h()[1..]);
    let (ida, idb) = (sa.block, sb.block);
    let mut out = p.clone();
    out.cuts.remove(&cut);
    out.blocks.remove(&idb);
    out.blocks.insert(ida, Block::from_parts(g, h));
    out.remap_block_slots(idb, |j| Slot::new(ida, k + j - 1));
    Ok(out)
}

/// Split a block after slot `k` with a new cut carrying lift label `y` on
/// both sides. The left part keeps the id; the right part and the cut get
/// fresh ids, returned alongside the result.
pub fn apply_finv(
    group: &GroupTable,
    p: &Parameterization,
    block: BlockId,
    k: usize,
    y: Elem,
) -> Result<(Parameterization, BlockId, CutId), CalcError> {
    let b = open_block(p, block, "Finv")?;
    let n = b.arity();
    if n < 2 || k == 0 || k >= n {
        return Err(CalcError::BadSplit { k, arity: n });
    }
    let x = group.inv(group.product(b.g()[..k].iter().copied()));
    let mut lg = b.g()[..k].to_vec();
    let mut lh = b.h()[..k].to_vec();
    lg.push(x);
    lh.push(y);
    let mut rg = vec![group.inv(x)];
    let mut rh = vec![y];
    rg.extend_from_slice(&b.g()[k..]);
    rh.extend_from_slice(&b.h()[k..]);
    let right = p.fresh_block_id();
    let cut = p.fresh_cut_id();
    let mut out = p.clone();
    out.remap_block_slots(block, |j| if j > k { Slot::new(right, j - k + 1) } else { Slot::new(block, j) });
    out.blocks.insert(block, Block::from_parts(lg, lh));
    out.blocks.insert(right, Block::from_parts(rg, rh));
    out.cuts.insert(cut, Cut { a: Slot::new(block, k + 1), b: Slot::new(right, 1) });
    Ok((out, right, cut))
}

/// `φ_x` on one block; on a closed sphere the global lift is multiplied by `x` on the left.
pub fn apply_p(
    group: &GroupTable,
    p: &Parameterization,
    block: BlockId,
    x: Elem,
) -> Result<Parameterization, CalcError> {
    let b = p.block(block)?;
    let mut out = p.clone();
    if b.arity() == 0 {
        let lift = out
            .lifts
            .get_mut(&block)
            .ok_or_else(|| CalcError::Structure(format!("closed block b{block} has no lift")))?;
        *lift = group.mul(x, *lift);
    } else {
        out.blocks.insert(block, b.translate(group, x));
    }
    Ok(out)
}

/// Replace the common lift label of a matched cut by `z`.
pub fn apply_t(group: &GroupTable, p: &Parameterization, cut: CutId, z: Elem) -> Result<Parameterization, CalcError> {
    let c = *p.cut(cut)?;
    let (_, ya) = p.labels_at(c.a)?;
    let (_, yb) = p.labels_at(c.b)?;
    if ya != yb {
        return Err(CalcError::Unmatched { cut, left: group.format_elem(ya), right: group.format_elem(yb) });
    }
    let mut out = p.clone();
    for s in [c.a, c.b] {
        out.blocks.get_mut(&s.block).expect("checked").set_h(s.index, z);
    }
    Ok(out)
}
