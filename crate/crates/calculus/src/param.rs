//! Parameterizations: forests of standard blocks joined by cuts, with an
//! assignment of target boundaries to free slots.
//!
//! Block and cut ids are stable handles while moves are applied. Vertex
//! identity is the [`CanonicalKey`], which forgets the ids.

use std::collections::{BTreeMap, BTreeSet};

use gcover_group::{Elem, GroupTable};

use crate::block::{glue_admissible, Block};
use crate::error::CalcError;
use crate::target::{first_realization, forced_cut_label, TargetCover};

pub type BlockId = u32;
pub type CutId = u32;

/// A boundary slot of a block, 1-based.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub block: BlockId,
    pub index: usize,
}

impl Slot {
    pub fn new(block: BlockId, index: usize) -> Self {
        Slot { block, index }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    pub a: Slot,
    pub b: Slot,
}

impl Cut {
    /// The side of the cut lying on `block`, then the opposite side.
    pub fn oriented_from(&self, block: BlockId) -> Option<(Slot, Slot)> {
        if self.a.block == block {
            Some((self.a, self.b))
        } else if self.b.block == block {
            Some((self.b, self.a))
        } else {
            None
        }
    }
}

/// What a slot is attached to.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Attachment {
    /// Global 1-based target boundary.
    External(usize),
    /// A cut, and the slot on its other side.
    Cut(CutId, Slot),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameterization {
    pub(crate) blocks: BTreeMap<BlockId, Block>,
    pub(crate) cuts: BTreeMap<CutId, Cut>,
    /// `external[a - 1]` is the slot carrying target boundary `a`.
    pub(crate) external: Vec<Slot>,
    /// Global lift of each closed-sphere block.
    pub(crate) lifts: BTreeMap<BlockId, Elem>,
}

/// Byte serialization of a canonically relabelled parameterization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Short stable digest for reports (FNV-1a, 64 bit).
    pub fn short(&self) -> String {
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for &b in &self.0 {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{hash:016x}")
    }
}

/// Old-to-new id maps produced by canonical relabelling.
#[derive(Clone, Debug, Default)]
pub struct Relabel {
    pub blocks: BTreeMap<BlockId, BlockId>,
    pub cuts: BTreeMap<CutId, CutId>,
}

/// Per-component transport data of the lifts at the target boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentInvariant {
    /// `(monodromy, lift expressed in the reference trivialization)` per boundary.
    pub entries: Vec<(Elem, Elem)>,
}

/// Violations found by [`Parameterization::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidityReport {
    pub violations: Vec<String>,
}

impl ValidityReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Parameterization {
    /// Assemble from parts; call [`Parameterization::check_structure`] to validate.
    pub fn from_parts(
        blocks: BTreeMap<BlockId, Block>,
        cuts: BTreeMap<CutId, Cut>,
        external: Vec<Slot>,
        lifts: BTreeMap<BlockId, Elem>,
    ) -> Self {
        Parameterization { blocks, cuts, external, lifts }
    }

    pub fn blocks(&self) -> &BTreeMap<BlockId, Block> {
        &self.blocks
    }

    pub fn cuts(&self) -> &BTreeMap<CutId, Cut> {
        &self.cuts
    }

    pub fn external(&self) -> &[Slot] {
        &self.external
    }

    pub fn lifts(&self) -> &BTreeMap<BlockId, Elem> {
        &self.lifts
    }

    pub fn block(&self, id: BlockId) -> Result<&Block, CalcError> {
        self.blocks.get(&id).ok_or(CalcError::MissingBlock(id))
    }

    pub fn cut(&self, id: CutId) -> Result<&Cut, CalcError> {
        self.cuts.get(&id).ok_or(CalcError::MissingCut(id))
    }

    pub fn cut_count(&self) -> usize {
        self.cuts.len()
    }

    pub fn max_arity(&self) -> usize {
        self.blocks.values().map(Block::arity).max().unwrap_or(0)
    }

    pub(crate) fn fresh_block_id(&self) -> BlockId {
        self.blocks.keys().next_back().map_or(0, |k| k + 1)
    }

    pub(crate) fn fresh_cut_id(&self) -> CutId {
        self.cuts.keys().next_back().map_or(0, |k| k + 1)
    }

    /// Attachment of every slot of `block`, indexed by slot - 1.
    pub fn attachments(&self, block: BlockId) -> Vec<Option<Attachment>> {
        let n = self.blocks.get(&block).map_or(0, Block::arity);
        let mut out = vec![None; n];
        for (&cid, cut) in &self.cuts {
            for (near, far) in [(cut.a, cut.b), (cut.b, cut.a)] {
                if near.block == block && near.index >= 1 && near.index <= n {
                    out[near.index - 1] = Some(Attachment::Cut(cid, far));
                }
            }
        }
        for (i, s) in self.external.iter().enumerate() {
            if s.block == block && s.index >= 1 && s.index <= n {
                out[s.index - 1] = Some(Attachment::External(i + 1));
            }
        }
        out
    }

    /// Rewrite every slot reference to `block` through `f` (old index → new slot).
    pub(crate) fn remap_block_slots(&mut self, block: BlockId, f: impl Fn(usize) -> Slot) {
        for cut in self.cuts.values_mut() {
            for side in [&mut cut.a, &mut cut.b] {
                if side.block == block {
                    *side = f(side.index);
                }
            }
        }
        for s in self.external.iter_mut() {
            if s.block == block {
                *s = f(s.index);
            }
        }
    }

    /// Labels seen at a slot.
    pub fn labels_at(&self, slot: Slot) -> Result<(Elem, Elem), CalcError> {
        let b = self.block(slot.block)?;
        if slot.index == 0 || slot.index > b.arity() {
            return Err(CalcError::SlotOutOfRange { slot: slot.index, arity: b.arity() });
        }
        Ok(b.slot(slot.index))
    }

    /// Whether the lift labels on the two sides of a cut agree.
    pub fn is_matched(&self, cut: CutId) -> Result<bool, CalcError> {
        let c = self.cut(cut)?;
        Ok(self.labels_at(c.a)?.1 == self.labels_at(c.b)?.1)
    }

    /// Structural checks that do not involve a target.
    pub fn check_structure(&self, group: &GroupTable) -> Vec<String> {
        let mut v = Vec::new();
        let mut seen: BTreeSet<Slot> = BTreeSet::new();
        let mut claim = |s: Slot, what: String, v: &mut Vec<String>| {
            match self.blocks.get(&s.block) {
                None => v.push(format!("{what} references missing block b{}", s.block)),
                Some(b) if s.index == 0 || s.index > b.arity() => {
                    v.push(format!("{what} references b{}.{} outside arity {}", s.block, s.index, b.arity()))
                }
                _ => {}
            }
            if !seen.insert(s) {
                v.push(format!("slot b{}.{} is used twice", s.block, s.index));
            }
        };
        for (cid, cut) in &self.cuts {
            claim(cut.a, format!("cut c{cid}"), &mut v);
            claim(cut.b, format!("cut c{cid}"), &mut v);
            if cut.a.block == cut.b.block {
                v.push(format!("cut c{cid} joins block b{} to itself", cut.a.block));
            }
        }
        for (i, s) in self.external.iter().enumerate() {
            claim(*s, format!("boundary {}", i + 1), &mut v);
        }
        for (id, b) in &self.blocks {
            if group.product(b.g().iter().copied()) != group.id() {
                v.push(format!("block b{id} has cut-label product different from 1"));
            }
            for i in 1..=b.arity() {
                if !seen.contains(&Slot::new(*id, i)) {
                    v.push(format!("slot b{id}.{i} is not attached"));
                }
            }
            if b.arity() == 0 && !self.lifts.contains_key(id) {
                v.push(format!("closed block b{id} has no global lift"));
            }
        }
        for id in self.lifts.keys() {
            if self.blocks.get(id).is_none_or(|b| b.arity() != 0) {
                v.push(format!("global lift recorded for b{id}, which is not a closed block"));
            }
        }
        if !v.is_empty() {
            return v;
        }
        for (cid, cut) in &self.cuts {
            let a = &self.blocks[&cut.a.block];
            let b = &self.blocks[&cut.b.block];
            if !glue_admissible(group, a, cut.a.index, b, cut.b.index).unwrap_or(false) {
                v.push(format!("cut c{cid} joins slots whose monodromies are not inverse"));
            }
        }
        // forest check
        let ids: Vec<BlockId> = self.blocks.keys().copied().collect();
        let pos = |id: BlockId| ids.binary_search(&id).expect("present");
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (cid, cut) in &self.cuts {
            let (ra, rb) = (find(&mut parent, pos(cut.a.block)), find(&mut parent, pos(cut.b.block)));
            if ra == rb {
                v.push(format!("cut c{cid} closes a cycle of blocks"));
            } else {
                parent[ra] = rb;
            }
        }
        v
    }

    /// Full validity against a target: structure, boundary monodromies,
    /// component layout, and cover class.
    pub fn validate(&self, group: &GroupTable, target: &TargetCover) -> ValidityReport {
        let mut violations = self.check_structure(group);
        if !violations.is_empty() {
            return ValidityReport { violations };
        }
        if self.external.len() != target.boundary_count() {
            violations.push(format!(
                "{} boundaries assigned, target has {}",
                self.external.len(),
                target.boundary_count()
            ));
            return ValidityReport { violations };
        }
        for (i, s) in self.external.iter().enumerate() {
            let m = self.blocks[&s.block].monodromy_unchecked(group, s.index);
            if m != target.monodromy(i + 1) {
                violations.push(format!(
                    "boundary {} has monodromy {}, target wants {}",
                    i + 1,
                    group.format_elem(m),
                    group.format_elem(target.monodromy(i + 1))
                ));
            }
        }
        match self.component_trees() {
            Err(e) => violations.push(e.to_string()),
            Ok(trees) => {
                let wanted = target.component_boundaries();
                let closed_wanted = wanted.iter().filter(|c| c.is_empty()).count();
                let mut closed_found = 0;
                for tree in &trees {
                    let mut bds: Vec<usize> = tree
                        .iter()
                        .flat_map(|b| self.attachments(*b))
                        .filter_map(|a| match a {
                            Some(Attachment::External(x)) => Some(x),
                            _ => None,
                        })
                        .collect();
                    bds.sort_unstable();
                    if bds.is_empty() {
                        closed_found += 1;
                    } else if !wanted.contains(&bds) {
                        violations.push(format!("a block tree carries boundaries {bds:?}, not a target component"));
                    }
                }
                if closed_found != closed_wanted {
                    violations.push(format!("{closed_found} closed components, target has {closed_wanted}"));
                }
            }
        }
        if violations.is_empty() {
            match (self.cover_invariant(group, target), seed_parameterization(group, target)) {
                (Ok(mine), Ok(seed)) => {
                    let reference = seed.cover_invariant(group, target).expect("seed is valid");
                    if !invariants_equivalent(group, &mine, &reference) {
                        violations.push("cover class differs from the target's reference class".into());
                    }
                }
                (Err(e), _) | (_, Err(e)) => violations.push(e.to_string()),
            }
        }
        ValidityReport { violations }
    }

    /// Blocks grouped into connected trees (ordered by smallest block id).
    fn component_trees(&self) -> Result<Vec<Vec<BlockId>>, CalcError> {
        let mut adj: BTreeMap<BlockId, Vec<BlockId>> = self.blocks.keys().map(|&k| (k, Vec::new())).collect();
        for cut in self.cuts.values() {
            adj.get_mut(&cut.a.block).ok_or(CalcError::MissingBlock(cut.a.block))?.push(cut.b.block);
            adj.get_mut(&cut.b.block).ok_or(CalcError::MissingBlock(cut.b.block))?.push(cut.a.block);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.blocks.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut tree = vec![start];
            let mut stack = vec![start];
            while let Some(b) = stack.pop() {
                for &n in &adj[&b] {
                    if seen.insert(n) {
                        tree.push(n);
                        stack.push(n);
                    }
                }
            }
            out.push(tree);
        }
        Ok(out)
    }

    /// Lifts of every target boundary expressed in the trivialization of the
    /// block carrying the component's first boundary.
    ///
    /// Crossing a cut from a block `X` (label `w` on its side) towards the
    /// reference through a neighbour `Y` (label `y` on its side) maps a sheet
    /// `s` of `X` to the sheet `s·w⁻¹·y` of `Y`.
    pub fn cover_invariant(
        &self,
        group: &GroupTable,
        target: &TargetCover,
    ) -> Result<Vec<ComponentInvariant>, CalcError> {
        let mut out = Vec::new();
        for bds in target.component_boundaries() {
            if bds.is_empty() {
                out.push(ComponentInvariant { entries: Vec::new() });
                continue;
            }
            let start = self
                .external
                .get(bds[0] - 1)
                .ok_or_else(|| CalcError::Structure(format!("boundary {} unassigned", bds[0])))?
                .block;
            let mut transport: BTreeMap<BlockId, Elem> = BTreeMap::new();
            transport.insert(start, group.id());
            let mut stack = vec![start];
            while let Some(y_block) = stack.pop() {
                let t_y = transport[&y_block];
                for att in self.attachments(y_block).into_iter().flatten() {
                    if let Attachment::Cut(cid, far) = att {
                        if transport.contains_key(&far.block) {
                            continue;
                        }
                        let cut = self.cuts[&cid];
                        let (near, _) = cut.oriented_from(y_block).expect("cut touches block");
                        let y = self.labels_at(near)?.1;
                        let w = self.labels_at(far)?.1;
                        let t_x = group.mul(group.mul(group.inv(w), y), t_y);
                        transport.insert(far.block, t_x);
                        stack.push(far.block);
                    }
                }
            }
            let mut entries = Vec::with_capacity(bds.len());
            for a in bds {
                let s = self.external[a - 1];
                let t = *transport
                    .get(&s.block)
                    .ok_or_else(|| CalcError::Structure(format!("boundary {a} not in the tree of its component")))?;
                let blk = &self.blocks[&s.block];
                let (_, h) = blk.slot(s.index);
                entries.push((blk.monodromy_unchecked(group, s.index), group.mul(h, t)));
            }
            out.push(ComponentInvariant { entries });
        }
        Ok(out)
    }

    /// Relabel blocks and cuts canonically and serialize.
    ///
    /// Blocks are numbered by depth-first search from the block holding each
    /// component's first boundary, visiting slots in index order; components
    /// follow target order. Closed blocks come last, sorted by their lift.
    pub fn canonicalize(&self) -> Result<(Parameterization, Relabel, CanonicalKey), CalcError> {
        let mut relabel = Relabel::default();
        let mut order: Vec<BlockId> = Vec::new();
        let mut cut_order: Vec<(CutId, Slot, Slot)> = Vec::new();
        let atts: BTreeMap<BlockId, Vec<Option<Attachment>>> =
            self.blocks.keys().map(|&b| (b, self.attachments(b))).collect();
        for s in &self.external {
            if relabel.blocks.contains_key(&s.block) {
                continue;
            }
            if !self.blocks.contains_key(&s.block) {
                return Err(CalcError::MissingBlock(s.block));
            }
            // iterative DFS that mirrors the recursive visiting order
            relabel.blocks.insert(s.block, order.len() as BlockId);
            order.push(s.block);
            let mut stack: Vec<(BlockId, usize)> = vec![(s.block, 0)];
            while let Some(top) = stack.last_mut() {
                let (b, next) = *top;
                let list = &atts[&b];
                if next >= list.len() {
                    stack.pop();
                    continue;
                }
                top.1 += 1;
                if let Some(Attachment::Cut(cid, far)) = list[next] {
                    if relabel.cuts.contains_key(&cid) {
                        continue;
                    }
                    relabel.cuts.insert(cid, cut_order.len() as CutId);
                    cut_order.push((cid, Slot::new(b, next + 1), far));
                    if relabel.blocks.contains_key(&far.block) {
                        return Err(CalcError::Structure("cuts form a cycle".into()));
                    }
                    relabel.blocks.insert(far.block, order.len() as BlockId);
                    order.push(far.block);
                    stack.push((far.block, 0));
                }
            }
        }
        let mut closed: Vec<(Elem, BlockId)> = Vec::new();
        for (&b, blk) in &self.blocks {
            if relabel.blocks.contains_key(&b) {
                continue;
            }
            if blk.arity() != 0 {
                return Err(CalcError::Structure(format!("block b{b} is not connected to any boundary")));
            }
            let lift =
                *self.lifts.get(&b).ok_or_else(|| CalcError::Structure(format!("closed block b{b} has no lift")))?;
            closed.push((lift, b));
        }
        closed.sort();
        for &(_, b) in &closed {
            relabel.blocks.insert(b, order.len() as BlockId);
            order.push(b);
        }
        if relabel.cuts.len() != self.cuts.len() {
            return Err(CalcError::Structure("some cut is not reachable from a boundary".into()));
        }

        let map_slot = |s: Slot| Slot::new(relabel.blocks[&s.block], s.index);
        let blocks: BTreeMap<BlockId, Block> =
            order.iter().map(|b| (relabel.blocks[b], self.blocks[b].clone())).collect();
        let cuts: BTreeMap<CutId, Cut> = cut_order
            .iter()
            .map(|(cid, near, far)| (relabel.cuts[cid], Cut { a: map_slot(*near), b: map_slot(*far) }))
            .collect();
        let external: Vec<Slot> = self.external.iter().map(|&s| map_slot(s)).collect();
        let lifts: BTreeMap<BlockId, Elem> = self.lifts.iter().map(|(b, &l)| (relabel.blocks[b], l)).collect();
        let canon = Parameterization { blocks, cuts, external, lifts };
        let key = canon.serialize();
        Ok((canon, relabel, key))
    }

    pub fn canonical_key(&self) -> Result<CanonicalKey, CalcError> {
        Ok(self.canonicalize()?.2)
    }

    fn serialize(&self) -> CanonicalKey {
        let mut out = Vec::with_capacity(8 + 4 * self.blocks.len() * 4);
        let mut push = |v: usize| {
            debug_assert!(v < 1 << 16);
            out.extend_from_slice(&(v as u16).to_le_bytes());
        };
        push(self.blocks.len());
        for blk in self.blocks.values() {
            push(blk.arity());
            for (&g, &h) in blk.g().iter().zip(blk.h()) {
                push(g.index());
                push(h.index());
            }
        }
        push(self.cuts.len());
        for cut in self.cuts.values() {
            for s in [cut.a, cut.b] {
                push(s.block as usize);
                push(s.index);
            }
        }
        push(self.external.len());
        for s in &self.external {
            push(s.block as usize);
            push(s.index);
        }
        push(self.lifts.len());
        for (&b, &l) in &self.lifts {
            push(b as usize);
            push(l.index());
        }
        CanonicalKey(out)
    }

    /// Line-oriented dump: blocks, then cuts, then boundary assignments.
    pub fn to_text(&self, group: &GroupTable) -> String {
        let mut s = String::new();
        for (id, blk) in &self.blocks {
            s.push_str(&format!("b{id}: {}", blk.to_text(group)));
            if let Some(l) = self.lifts.get(id) {
                s.push_str(&format!(" lift={}", group.format_elem(*l)));
            }
            s.push('\n');
        }
        for (id, c) in &self.cuts {
            s.push_str(&format!("cut c{id}: b{}.{} -- b{}.{}\n", c.a.block, c.a.index, c.b.block, c.b.index));
        }
        for (i, e) in self.external.iter().enumerate() {
            s.push_str(&format!("ext {}: b{}.{}\n", i + 1, e.block, e.index));
        }
        s
    }

    /// Inverse of [`Parameterization::to_text`]; the result is structurally checked.
    pub fn parse_text(group: &GroupTable, text: &str) -> Result<Parameterization, CalcError> {
        let mut blocks = BTreeMap::new();
        let mut cuts = BTreeMap::new();
        let mut ext: BTreeMap<usize, Slot> = BTreeMap::new();
        let mut lifts = BTreeMap::new();
        let slot = |t: &str| -> Result<Slot, CalcError> {
            let t = t.trim();
            let (b, i) = t
                .strip_prefix('b')
                .and_then(|r| r.split_once('.'))
                .ok_or_else(|| CalcError::Parse(format!("bad slot {t:?}")))?;
            Ok(Slot::new(
                b.parse().map_err(|_| CalcError::Parse(format!("bad block id in {t:?}")))?,
                i.parse().map_err(|_| CalcError::Parse(format!("bad slot index in {t:?}")))?,
            ))
        };
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let ctx = |e: CalcError| CalcError::Parse(format!("line {}: {e}", ln + 1));
            if let Some(rest) = line.strip_prefix("cut c") {
                let (id, body) = rest.split_once(':').ok_or_else(|| ctx(CalcError::Parse("missing ':'".into())))?;
                let (a, b) = body.split_once("--").ok_or_else(|| ctx(CalcError::Parse("missing '--'".into())))?;
                let id: CutId = id.trim().parse().map_err(|_| ctx(CalcError::Parse("bad cut id".into())))?;
                cuts.insert(id, Cut { a: slot(a).map_err(ctx)?, b: slot(b).map_err(ctx)? });
            } else if let Some(rest) = line.strip_prefix("ext ") {
                let (a, s) = rest.split_once(':').ok_or_else(|| ctx(CalcError::Parse("missing ':'".into())))?;
                let a: usize = a.trim().parse().map_err(|_| ctx(CalcError::Parse("bad boundary number".into())))?;
                ext.insert(a, slot(s).map_err(ctx)?);
            } else if let Some(rest) = line.strip_prefix('b') {
                let (id, body) = rest.split_once(':').ok_or_else(|| ctx(CalcError::Parse("missing ':'".into())))?;
                let id: BlockId = id.trim().parse().map_err(|_| ctx(CalcError::Parse("bad block id".into())))?;
                let (blk_text, lift) = match body.split_once(" lift=") {
                    Some((b, l)) => (b, Some(l)),
                    None => (body, None),
                };
                blocks.insert(id, Block::parse(group, blk_text).map_err(ctx)?);
                if let Some(l) = lift {
                    lifts.insert(id, group.parse_elem(l).map_err(|e| ctx(e.into()))?);
                }
            } else {
                return Err(CalcError::Parse(format!("line {}: unrecognized {line:?}", ln + 1)));
            }
        }
        let n = ext.len();
        let external: Vec<Slot> = (1..=n)
            .map(|a| ext.get(&a).copied().ok_or_else(|| CalcError::Parse(format!("boundary {a} missing"))))
            .collect::<Result<_, _>>()?;
        let p = Parameterization { blocks, cuts, external, lifts };
        let problems = p.check_structure(group);
        if !problems.is_empty() {
            return Err(CalcError::Structure(problems.join("; ")));
        }
        Ok(p)
    }

    /// Graphviz export: one node per block, one labelled edge per cut and a
    /// stub per target boundary. Ids follow the canonical numbering.
    pub fn to_dot(&self, group: &GroupTable) -> Result<String, CalcError> {
        let (p, _, _) = self.canonicalize()?;
        let pair = |s: Slot| -> String {
            let (g, h) = p.blocks[&s.block].slot(s.index);
            format!("({},{})", group.format_elem(g), group.format_elem(h))
        };
        let mut s = String::from("digraph parameterization {\n");
        for (id, blk) in &p.blocks {
            match p.lifts.get(id) {
                Some(l) => {
                    s.push_str(&format!("  b{id} [shape=circle,label=\"S0 lift={}\"];\n", group.format_elem(*l)))
                }
                None => s.push_str(&format!("  b{id} [shape=circle,label=\"S{}\"];\n", blk.arity())),
            }
        }
        for (id, c) in &p.cuts {
            s.push_str(&format!(
                "  b{} -> b{} [arrowhead=none,label=\"c{id}: {}.{} {} | {}.{} {}\"];\n",
                c.a.block,
                c.b.block,
                c.a.block,
                c.a.index,
                pair(c.a),
                c.b.block,
                c.b.index,
                pair(c.b)
            ));
        }
        for (i, e) in p.external.iter().enumerate() {
            s.push_str(&format!("  x{} [shape=plaintext,label=\"{}\"];\n", i + 1, i + 1));
            s.push_str(&format!("  b{} -> x{} [arrowhead=none,label=\"{} {}\"];\n", e.block, i + 1, e.index, pair(*e)));
        }
        s.push_str("}\n");
        Ok(s)
    }

    /// Replace every label by the identity of the trivial group.
    pub fn erase_labels(&self, trivial: &GroupTable) -> Parameterization {
        let id = trivial.id();
        Parameterization {
            blocks: self
                .blocks
                .iter()
                .map(|(&k, b)| (k, Block::from_parts(vec![id; b.arity()], vec![id; b.arity()])))
                .collect(),
            cuts: self.cuts.clone(),
            external: self.external.clone(),
            lifts: self.lifts.keys().map(|&k| (k, id)).collect(),
        }
    }
}

/// Whether two invariants describe the same cover: per component a single
/// `x` with `ι'(a) = ι(a)·x`, and equal monodromies.
pub fn invariants_equivalent(group: &GroupTable, a: &[ComponentInvariant], b: &[ComponentInvariant]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    a.iter().zip(b).all(|(ca, cb)| {
        if ca.entries.len() != cb.entries.len() {
            return false;
        }
        let Some((&(_, i0), &(_, j0))) = ca.entries.first().zip(cb.entries.first()) else {
            return true;
        };
        let x = group.mul(group.inv(i0), j0);
        ca.entries.iter().zip(&cb.entries).all(|(&(ma, ia), &(mb, ib))| ma == mb && group.mul(ia, x) == ib)
    })
}

/// One block per component, lifts chosen as the lexicographically first
/// realization; closed components get lift equal to the identity.
pub fn seed_parameterization(group: &GroupTable, target: &TargetCover) -> Result<Parameterization, CalcError> {
    let mut blocks = BTreeMap::new();
    let mut external = Vec::new();
    let mut lifts = BTreeMap::new();
    for (ci, comp) in target.components().iter().enumerate() {
        let id = ci as BlockId;
        let h =
            first_realization(group, comp).ok_or_else(|| CalcError::Unrealizable(format!("component {}", ci + 1)))?;
        let g: Vec<Elem> = comp.iter().zip(&h).map(|(&m, &hh)| forced_cut_label(group, m, hh)).collect();
        blocks.insert(id, Block::new(group, g, h)?);
        for i in 0..comp.len() {
            external.push(Slot::new(id, i + 1));
        }
        if comp.is_empty() {
            lifts.insert(id, group.id());
        }
    }
    Ok(Parameterization { blocks, cuts: BTreeMap::new(), external, lifts })
}
