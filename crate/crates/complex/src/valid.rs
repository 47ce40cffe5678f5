//! Direct enumeration of valid parameterizations, independent of moves.
//!
//! Shapes (forests of blocks with slot assignments) are generated
//! combinatorially per target component; labelings are then generated by
//! choosing every marked lift and every free cut label, the remaining cut
//! labels being forced by the boundary monodromies and the gluing condition.

use std::collections::{BTreeMap, BTreeSet};

use gcover_calculus::{Block, Bounds, CanonicalKey, Cut, Parameterization, Slot, TargetCover};
use gcover_group::{Elem, GroupTable};

use crate::ComplexError;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Item {
    External(usize),
    CutEnd(usize, bool),
}

/// One component's blocks, each a list of what its slots attach to.
type RawShape = Vec<Vec<Item>>;

fn compositions(total: usize, parts: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in lo..=hi.min(total) {
        for mut rest in compositions(total - first, parts - 1, lo, hi) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

struct Filler<'a> {
    externals: &'a [usize],
    cuts: usize,
    arities: &'a [usize],
    seq: Vec<Item>,
    used: Vec<bool>,
    opened: usize,
    /// Block holding side `false` of each opened cut, `usize::MAX` once closed.
    open_block: Vec<usize>,
    out: Vec<RawShape>,
}

impl Filler<'_> {
    fn block_of(&self, pos: usize) -> usize {
        let mut acc = 0;
        for (b, &a) in self.arities.iter().enumerate() {
            acc += a;
            if pos < acc {
                return b;
            }
        }
        unreachable!("position inside the arity total")
    }

    fn fill(&mut self) {
        let pos = self.seq.len();
        let total: usize = self.arities.iter().sum();
        if pos == total {
            self.finish();
            return;
        }
        let here = self.block_of(pos);
        for i in 0..self.externals.len() {
            if !self.used[i] {
                self.used[i] = true;
                self.seq.push(Item::External(self.externals[i]));
                self.fill();
                self.seq.pop();
                self.used[i] = false;
            }
        }
        if self.opened < self.cuts {
            let j = self.opened;
            self.opened += 1;
            self.open_block.push(here);
            self.seq.push(Item::CutEnd(j, false));
            self.fill();
            self.seq.pop();
            self.open_block.pop();
            self.opened -= 1;
        }
        for j in 0..self.opened {
            let b = self.open_block[j];
            if b != usize::MAX && b != here {
                self.open_block[j] = usize::MAX;
                self.seq.push(Item::CutEnd(j, true));
                self.fill();
                self.seq.pop();
                self.open_block[j] = b;
            }
        }
    }

    fn finish(&mut self) {
        if self.opened != self.cuts || self.open_block.iter().any(|&b| b != usize::MAX) {
            return;
        }
        let mut blocks = Vec::with_capacity(self.arities.len());
        let mut at = 0;
        for &a in self.arities {
            blocks.push(self.seq[at..at + a].to_vec());
            at += a;
        }
        if is_tree(&blocks, self.cuts) {
            self.out.push(blocks);
        }
    }
}

fn is_tree(blocks: &RawShape, cuts: usize) -> bool {
    let mut ends = vec![[usize::MAX; 2]; cuts];
    for (b, items) in blocks.iter().enumerate() {
        for it in items {
            if let Item::CutEnd(j, side) = *it {
                ends[j][usize::from(side)] = b;
            }
        }
    }
    let mut parent: Vec<usize> = (0..blocks.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for [a, b] in ends {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

fn component_shapes(externals: &[usize], cuts: usize, max_arity: usize) -> Vec<RawShape> {
    let n = externals.len();
    if n <= 1 {
        return if cuts == 0 { vec![vec![externals.iter().map(|&a| Item::External(a)).collect()]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for arities in compositions(n + 2 * cuts, cuts + 1, 2, max_arity) {
        let mut f = Filler {
            externals,
            cuts,
            arities: &arities,
            seq: Vec::new(),
            used: vec![false; n],
            opened: 0,
            open_block: Vec::new(),
            out: Vec::new(),
        };
        f.fill();
        out.append(&mut f.out);
    }
    out
}

/// Assemble component shapes into a parameterization over the trivial group.
fn assemble(trivial: &GroupTable, parts: &[&RawShape], boundary_count: usize) -> Parameterization {
    let e = trivial.id();
    let mut blocks = BTreeMap::new();
    let mut cuts: BTreeMap<u32, Cut> = BTreeMap::new();
    let mut external = vec![Slot::new(0, 0); boundary_count];
    let mut lifts = BTreeMap::new();
    let mut cut_sides: BTreeMap<(usize, usize), [Option<Slot>; 2]> = BTreeMap::new();
    let mut next_block = 0u32;
    for (ci, shape) in parts.iter().enumerate() {
        for items in shape.iter() {
            let id = next_block;
            next_block += 1;
            blocks.insert(id, Block::new(trivial, vec![e; items.len()], vec![e; items.len()]).expect("trivial labels"));
            if items.is_empty() {
                lifts.insert(id, e);
            }
            for (i, it) in items.iter().enumerate() {
                let slot = Slot::new(id, i + 1);
                match *it {
                    Item::External(a) => external[a - 1] = slot,
                    Item::CutEnd(j, side) => cut_sides.entry((ci, j)).or_default()[usize::from(side)] = Some(slot),
                }
            }
        }
    }
    for (k, [a, b]) in cut_sides.into_values().enumerate() {
        cuts.insert(k as u32, Cut { a: a.expect("both sides placed"), b: b.expect("both sides placed") });
    }
    Parameterization::from_parts(blocks, cuts, external, lifts)
}

/// All shapes of the target within the bounds, as canonical parameterizations
/// over the trivial group.
pub fn enumerate_shapes(
    target: &TargetCover,
    bounds: &Bounds,
) -> Result<BTreeMap<CanonicalKey, Parameterization>, ComplexError> {
    let trivial = GroupTable::trivial();
    let comps = target.component_boundaries();
    // per component, shapes indexed by their cut count
    let per_comp: Vec<Vec<Vec<RawShape>>> = comps
        .iter()
        .map(|bds| (0..=bounds.max_cuts).map(|c| component_shapes(bds, c, bounds.max_block_size)).collect())
        .collect();
    let mut out = BTreeMap::new();
    let mut allocation = vec![0usize; comps.len()];
    loop {
        if allocation.iter().sum::<usize>() <= bounds.max_cuts {
            let lists: Vec<&Vec<RawShape>> = allocation.iter().zip(&per_comp).map(|(&c, v)| &v[c]).collect();
            if lists.iter().all(|l| !l.is_empty()) {
                let mut idx = vec![0usize; lists.len()];
                loop {
                    let parts: Vec<&RawShape> = idx.iter().zip(&lists).map(|(&i, l)| &l[i]).collect();
                    let p = assemble(&trivial, &parts, target.boundary_count());
                    let (canon, _, key) = p.canonicalize()?;
                    out.entry(key).or_insert(canon);
                    if !advance(&mut idx, &lists.iter().map(|l| l.len()).collect::<Vec<_>>()) {
                        break;
                    }
                }
            }
        }
        if !advance(&mut allocation, &vec![bounds.max_cuts + 1; comps.len()]) {
            break;
        }
    }
    Ok(out)
}

/// Odometer increment; `false` once every digit has wrapped.
fn advance(digits: &mut [usize], radix: &[usize]) -> bool {
    for (d, &r) in digits.iter_mut().zip(radix) {
        *d += 1;
        if *d < r {
            return true;
        }
        *d = 0;
    }
    false
}

/// Every valid labeling over `group` of a trivial-group shape, canonicalized.
pub fn labelings(
    group: &GroupTable,
    target: &TargetCover,
    shape: &Parameterization,
    budget: usize,
) -> Result<BTreeMap<CanonicalKey, Parameterization>, ComplexError> {
    let mut out = BTreeMap::new();
    for p in raw_labelings(group, target, shape, budget)? {
        let (canon, _, key) = p.canonicalize()?;
        out.entry(key).or_insert(canon);
    }
    Ok(out)
}

/// Every valid labeling of `shape` with its block, slot and cut numbering
/// kept. Lifts and the `a`-side cut labels are free; everything else is
/// forced.
pub fn raw_labelings(
    group: &GroupTable,
    target: &TargetCover,
    shape: &Parameterization,
    budget: usize,
) -> Result<Vec<Parameterization>, ComplexError> {
    let slots: Vec<Slot> =
        shape.blocks().iter().flat_map(|(&id, b)| (1..=b.arity()).map(move |i| Slot::new(id, i))).collect();
    let cuts: Vec<Cut> = shape.cuts().values().copied().collect();
    let closed: Vec<u32> = shape.lifts().keys().copied().collect();
    let free = slots.len() + cuts.len() + closed.len();
    let order = group.order();
    let total = (order as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(ComplexError::Budget(budget));
    }
    let mut external_of: BTreeMap<Slot, usize> = BTreeMap::new();
    for (i, s) in shape.external().iter().enumerate() {
        external_of.insert(*s, i + 1);
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; free];
    loop {
        let h: BTreeMap<Slot, Elem> = slots.iter().zip(&digits).map(|(s, &d)| (*s, Elem::new(d))).collect();
        let mut g: BTreeMap<Slot, Elem> = BTreeMap::new();
        for (s, &a) in &external_of {
            // boundary monodromy h g⁻¹ h⁻¹ = m fixes g
            let m = target.monodromy(a);
            let hs = h[s];
            g.insert(*s, group.conj(group.inv(hs), group.inv(m)));
        }
        for (c, &d) in cuts.iter().zip(&digits[slots.len()..]) {
            let gu = Elem::new(d);
            let hu = h[&c.a];
            let mu = group.conj(hu, group.inv(gu));
            let hv = h[&c.b];
            g.insert(c.a, gu);
            g.insert(c.b, group.conj(group.inv(hv), mu));
        }
        let mut blocks = BTreeMap::new();
        let mut ok = true;
        for (&id, b) in shape.blocks() {
            let gs: Vec<Elem> = (1..=b.arity()).map(|i| g[&Slot::new(id, i)]).collect();
            let hs: Vec<Elem> = (1..=b.arity()).map(|i| h[&Slot::new(id, i)]).collect();
            match Block::new(group, gs, hs) {
                Ok(blk) => {
                    blocks.insert(id, blk);
                }
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let lifts =
                closed.iter().zip(&digits[slots.len() + cuts.len()..]).map(|(&id, &d)| (id, Elem::new(d))).collect();
            let p = Parameterization::from_parts(blocks, shape.cuts().clone(), shape.external().to_vec(), lifts);
            if p.validate(group, target).is_ok() {
                out.push(p);
            }
        }
        if !advance(&mut digits, &vec![order; free]) {
            break;
        }
    }
    Ok(out)
}

/// All valid parameterizations of the target within the bounds that are
/// cover-equivalent to the seed, found without applying any move. `budget`
/// caps the number of candidate labelings per shape.
pub fn enumerate_valid_vertices(
    group: &GroupTable,
    target: &TargetCover,
    bounds: &Bounds,
    budget: usize,
) -> Result<BTreeMap<CanonicalKey, Parameterization>, ComplexError> {
    let mut out = BTreeMap::new();
    for shape in enumerate_shapes(target, bounds)?.values() {
        out.extend(labelings(group, target, shape, budget)?);
    }
    Ok(out)
}

/// Keys of `valid` missing from `reached`; empty exactly when connected.
pub fn check_connected(
    reached: &BTreeSet<CanonicalKey>,
    valid: &BTreeMap<CanonicalKey, Parameterization>,
) -> Vec<CanonicalKey> {
    valid.keys().filter(|k| !reached.contains(*k)).cloned().collect()
}
