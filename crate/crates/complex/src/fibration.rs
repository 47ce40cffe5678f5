//! The projection onto the trivial-group complex and the checks on its
//! fibers: each fiber is the set of labelings of one base marking, joined by
//! `P` and `T` edges.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap, VecDeque};

use gcover_calculus::moves::{apply_step, enumerate_moves, replay};
use gcover_calculus::relations::{enumerate_instances, verify_closure, InstanceContext, RelationInstance, Schema};
use gcover_calculus::{Bounds, CanonicalKey, Move, Parameterization, Step, TargetCover};
use gcover_group::GroupTable;

use crate::complex::TwoComplex;
use crate::presentation::pi1_presentation;
use crate::valid::{labelings, raw_labelings};
use crate::verdict::{prove_trivial, Verdict};
use crate::ComplexError;

/// Image of an upstairs edge in the base complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeImage {
    Edge(Move),
    /// `P` and `T` collapse to their common endpoint.
    Degenerate,
}

/// Forget every label.
pub fn project(p: &Parameterization) -> Parameterization {
    p.erase_labels(&GroupTable::trivial())
}

pub fn project_move(mv: &Move) -> EdgeImage {
    match mv {
        Move::P { .. } | Move::T { .. } => EdgeImage::Degenerate,
        other => EdgeImage::Edge(*other),
    }
}

#[derive(Clone, Debug)]
pub struct Fiber {
    pub base_key: CanonicalKey,
    pub base: Parameterization,
    /// Members as vertices, `P` and `T` edges, fiber cells.
    pub complex: TwoComplex,
    pub with_t: bool,
}

impl Fiber {
    pub fn size(&self) -> usize {
        self.complex.vertex_count()
    }
}

fn fiber_move(mv: &Move, with_t: bool) -> bool {
    matches!(mv, Move::P { .. }) || (with_t && matches!(mv, Move::T { .. }))
}

/// Cells among fiber moves: `P` composition, commutation of moves on
/// different blocks or cuts, composition of `T` at one cut, and the
/// interchange of `T` with a common `P` on both sides of its cut. The last
/// two are tagged with the schema they are derived from.
fn fiber_instances(
    group: &GroupTable,
    q: &Parameterization,
    ctx: &InstanceContext,
    with_t: bool,
) -> Vec<RelationInstance> {
    let xs = &ctx.elements;
    let pure = |i: &RelationInstance| i.lhs.iter().chain(&i.rhs).all(|s| fiber_move(&s.mv, with_t));
    let mut out: Vec<RelationInstance> = enumerate_instances(group, q, Schema::R5, ctx);
    out.extend(enumerate_instances(group, q, Schema::R12, ctx).into_iter().filter(pure));
    let pmove = |block, x| Step::fwd(Move::P { block, x });
    let ids: Vec<u32> = q.blocks().keys().copied().collect();
    for (ai, &a) in ids.iter().enumerate() {
        for &b in &ids[ai + 1..] {
            for &x in xs {
                for &y in xs {
                    out.push(RelationInstance {
                        schema: Schema::R12,
                        base: q.clone(),
                        lhs: vec![pmove(a, x), pmove(b, y)],
                        rhs: vec![pmove(b, y), pmove(a, x)],
                    });
                }
            }
        }
    }
    if with_t {
        for (&c, cut) in q.cuts() {
            if !q.is_matched(c).unwrap_or(false) {
                continue;
            }
            for &z1 in xs {
                for &z2 in xs {
                    out.push(RelationInstance {
                        schema: Schema::R10,
                        base: q.clone(),
                        lhs: vec![Step::fwd(Move::T { cut: c, z: z1 }), Step::fwd(Move::T { cut: c, z: z2 })],
                        rhs: vec![Step::fwd(Move::T { cut: c, z: z2 })],
                    });
                }
                for &x in xs {
                    let zx = group.mul(z1, group.inv(x));
                    out.push(RelationInstance {
                        schema: Schema::R4,
                        base: q.clone(),
                        lhs: vec![Step::fwd(Move::T { cut: c, z: z1 }), pmove(cut.a.block, x), pmove(cut.b.block, x)],
                        rhs: vec![pmove(cut.a.block, x), pmove(cut.b.block, x), Step::fwd(Move::T { cut: c, z: zx })],
                    });
                }
            }
        }
    }
    out
}

/// The fiber over a base marking: all valid labelings of its shape, with
/// `P` edges, `T` edges when `with_t`, and the fiber cells.
pub fn compute_fiber(
    group: &GroupTable,
    target: &TargetCover,
    base: &Parameterization,
    with_t: bool,
    budget: usize,
) -> Result<Fiber, ComplexError> {
    let (base, _, base_key) = base.canonicalize()?;
    let members = labelings(group, target, &base, budget)?;
    let mut cx = TwoComplex::new();
    for (k, p) in &members {
        cx.add_vertex(k.clone(), p.clone());
    }
    cx.core_vertices = cx.vertex_count();
    let bounds = Bounds { max_cuts: base.cut_count(), max_block_size: base.max_arity().max(2) };
    for v in 0..cx.core_vertices {
        let p = cx.vertices[v].clone();
        for s in enumerate_moves(group, &p, &bounds).into_iter().filter(|s| fiber_move(&s.mv, with_t)) {
            let r = replay(group, &p, &[s])?;
            if cx.vertex_index(&r.keys[1]).is_none() {
                return Err(ComplexError::Other(format!("{} leaves the fiber", s.to_text(group))));
            }
            cx.add_traversal(&r.traversals[0]);
        }
    }
    let ctx = InstanceContext::new(group, bounds, 0);
    for v in 0..cx.core_vertices {
        let p = cx.vertices[v].clone();
        for inst in fiber_instances(group, &p, &ctx, with_t) {
            let Ok(closure) = verify_closure(group, &inst) else {
                continue;
            };
            let inside = closure.lhs.keys.iter().chain(&closure.rhs.keys).all(|k| cx.vertex_index(k).is_some());
            if closure.closes() && inside {
                cx.add_cell(inst.schema, v, &[], &closure.boundary());
            }
        }
    }
    Ok(Fiber { base_key, base, complex: cx, with_t })
}

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub base_key: CanonicalKey,
    pub size: usize,
    pub edges: usize,
    pub cells: usize,
    pub components: usize,
    /// `None` when the fiber is disconnected.
    pub verdict: Option<Verdict>,
}

impl FiberReport {
    pub fn connected(&self) -> bool {
        self.components == 1
    }

    pub fn line(&self) -> String {
        let pi1 = self.verdict.as_ref().map_or("n/a", Verdict::label);
        format!("fiber {}: size={} connected={} pi1={}", self.base_key.short(), self.size, self.connected(), pi1)
    }
}

pub fn components(cx: &TwoComplex) -> usize {
    let n = cx.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in &cx.edges {
        let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
        parent[a] = b;
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}

pub fn check_fiber(f: &Fiber, coset_budget: usize) -> Result<FiberReport, ComplexError> {
    let cx = &f.complex;
    let comps = components(cx);
    let verdict = if comps == 1 {
        let pi = pi1_presentation(cx)?;
        Some(prove_trivial(&pi.presentation, coset_budget).verdict)
    } else {
        None
    };
    Ok(FiberReport {
        base_key: f.base_key.clone(),
        size: cx.vertex_count(),
        edges: cx.edges.len(),
        cells: cx.cells.len(),
        components: comps,
        verdict,
    })
}

/// Result of checking the squares over one base edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SquareReport {
    pub edge: String,
    /// Ordered pairs of distinct lifts examined.
    pub pairs: usize,
    /// Squares closed by transporting a path of `P`s followed by `T`s.
    pub recipe: usize,
    /// Squares closed by transporting some other fiber path.
    pub transported: usize,
    /// Squares closed only by some other fiber path downstairs.
    pub fallback: usize,
    pub failures: usize,
    /// Fiber members over the edge's start where the edge does not lift.
    pub unliftable: usize,
}

impl SquareReport {
    pub fn ok(&self) -> usize {
        self.recipe + self.transported + self.fallback
    }

    pub fn line(&self) -> String {
        format!("square {}: pairs={} ok={} fail={}", self.edge, self.pairs, self.ok(), self.failures)
    }
}

/// A fiber path from `from` to `to`, equal on the nose: first one `P` per
/// block, then one `T` per cut whose label still differs. Every choice of
/// `P` labels is tried.
fn recipe_path(group: &GroupTable, from: &Parameterization, to: &Parameterization) -> Option<Vec<Step>> {
    let ids: Vec<u32> = from.blocks().keys().copied().collect();
    let els: Vec<_> = group.elements().collect();
    let mut digits = vec![0usize; ids.len()];
    loop {
        let mut steps: Vec<Step> = ids
            .iter()
            .zip(&digits)
            .filter(|(_, &d)| els[d] != group.id())
            .map(|(&block, &d)| Step::fwd(Move::P { block, x: els[d] }))
            .collect();
        if let Ok(mut cur) = steps.iter().try_fold(from.clone(), |p, s| apply_step(group, &p, *s)) {
            for (&c, cut) in to.cuts() {
                let want = to.labels_at(cut.a).ok()?.1;
                if cur.labels_at(cut.a).ok()?.1 == want && cur.labels_at(cut.b).ok()?.1 == want {
                    continue;
                }
                let s = Step::fwd(Move::T { cut: c, z: want });
                let Ok(next) = apply_step(group, &cur, s) else {
                    break;
                };
                cur = next;
                steps.push(s);
            }
            if cur == *to {
                return Some(steps);
            }
        }
        if !odometer(&mut digits, els.len()) {
            return None;
        }
    }
}

/// Shortest path of `P` and `T` steps from `from` to `to`, equal on the nose.
fn fiber_path(group: &GroupTable, from: &Parameterization, to: &Parameterization) -> Option<Vec<Step>> {
    let bounds = Bounds { max_cuts: from.cut_count(), max_block_size: from.max_arity().max(2) };
    let mut seen: HashMap<String, (usize, Option<Step>)> = HashMap::new();
    let mut states = vec![from.clone()];
    seen.insert(from.to_text(group), (0, None));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if states[i] == *to {
            let mut steps = Vec::new();
            let mut at = i;
            while let (prev, Some(s)) = seen[&states[at].to_text(group)] {
                steps.push(s);
                at = prev;
            }
            steps.reverse();
            return Some(steps);
        }
        for s in enumerate_moves(group, &states[i], &bounds).into_iter().filter(|s| fiber_move(&s.mv, true)) {
            let Ok(q) = apply_step(group, &states[i], s) else {
                continue;
            };
            if let Entry::Vacant(e) = seen.entry(q.to_text(group)) {
                e.insert((i, Some(s)));
                states.push(q);
                queue.push_back(states.len() - 1);
            }
        }
    }
    None
}

fn odometer(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// Carry a fiber path across a base move: unchanged for `Z` and `B`; for
/// `F` the `T` at the erased cut is dropped and the `P` on the absorbed
/// block is dropped when it repeats the `P` on the surviving one.
fn transport(
    path: &[Step],
    base_move: &Move,
    before: &Parameterization,
    after: &Parameterization,
) -> Option<Vec<Step>> {
    let Move::F { cut } = *base_move else {
        return Some(path.to_vec());
    };
    let c = before.cuts()[&cut];
    let (survivor, absorbed) =
        if after.blocks().contains_key(&c.a.block) { (c.a.block, c.b.block) } else { (c.b.block, c.a.block) };
    let x_of = |b: u32| {
        path.iter().find_map(|s| match s.mv {
            Move::P { block, x } if block == b => Some(x),
            _ => None,
        })
    };
    if x_of(survivor) != x_of(absorbed) {
        return None;
    }
    Some(
        path.iter()
            .filter(|s| match s.mv {
                Move::T { cut: t, .. } => t != cut,
                Move::P { block, .. } => block != absorbed,
                _ => true,
            })
            .copied()
            .collect(),
    )
}

/// Canonical keys reachable from `from` by `P` and `T` steps.
fn fiber_reach(group: &GroupTable, from: &Parameterization) -> Result<BTreeSet<CanonicalKey>, ComplexError> {
    let bounds = Bounds { max_cuts: from.cut_count(), max_block_size: from.max_arity().max(2) };
    let (start, _, key) = from.canonicalize()?;
    let mut seen = BTreeSet::from([key]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for s in enumerate_moves(group, &p, &bounds).into_iter().filter(|s| fiber_move(&s.mv, true)) {
            let (q, _, k) = apply_step(group, &p, s)?.canonicalize()?;
            if seen.insert(k) {
                queue.push_back(q);
            }
        }
    }
    Ok(seen)
}

/// For a `Z`, `B` or `F` move of the base vertex `base`, check every square
/// formed by two lifts and fiber paths between their endpoints. Lifts keep
/// the numbering of `base`, so the same move applies to each of them.
pub fn check_lifting_squares(
    group: &GroupTable,
    target: &TargetCover,
    base: &Parameterization,
    base_move: Move,
    budget: usize,
) -> Result<SquareReport, ComplexError> {
    if !matches!(base_move, Move::Z { .. } | Move::B { .. } | Move::F { .. }) {
        return Err(ComplexError::Other("lifting squares are checked for Z, B and F edges".into()));
    }
    let trivial = GroupTable::trivial();
    let base = project(base);
    let step = Step::fwd(base_move);
    apply_step(&trivial, &base, step)?;
    let mut report = SquareReport { edge: step.to_text(&trivial), ..Default::default() };
    let mut lifts: Vec<(Parameterization, Parameterization)> = Vec::new();
    for u in &raw_labelings(group, target, &base, budget)? {
        match apply_step(group, u, step) {
            Ok(v) => lifts.push((u.clone(), v)),
            Err(_) => report.unliftable += 1,
        }
    }
    for (i, (u1, v1)) in lifts.iter().enumerate() {
        for (j, (u2, v2)) in lifts.iter().enumerate() {
            if i == j {
                continue;
            }
            report.pairs += 1;
            let target_key = v2.canonical_key()?;
            let closes = |e1: Option<Vec<Step>>| {
                e1.and_then(|e1| transport(&e1, &base_move, u1, v1))
                    .and_then(|e2| replay(group, v1, &e2).ok())
                    .is_some_and(|r| r.end == *v2)
            };
            if closes(recipe_path(group, u1, u2)) {
                report.recipe += 1;
            } else if closes(fiber_path(group, u1, u2)) {
                report.transported += 1;
            } else if fiber_reach(group, v1)?.contains(&target_key) {
                report.fallback += 1;
            } else {
                report.failures += 1;
            }
        }
    }
    Ok(report)
}

/// The base image of a path: labels erased, `P` and `T` steps dropped.
pub fn project_path(steps: &[Step]) -> Vec<Step> {
    let id = GroupTable::trivial().id();
    steps
        .iter()
        .filter_map(|s| match project_move(&s.mv) {
            EdgeImage::Degenerate => None,
            EdgeImage::Edge(Move::Finv { block, k, .. }) => Some(Step { mv: Move::Finv { block, k, y: id }, ..*s }),
            EdgeImage::Edge(mv) => Some(Step { mv, ..*s }),
        })
        .collect()
}

/// Lift a cell of the base complex to the vertex `upstairs`, which must
/// project onto the cell's base with the same numbering. The lift is an
/// instance of the same schema at `upstairs` whose two paths project onto
/// the cell's paths and which closes.
pub fn lift_base_relation(
    group: &GroupTable,
    base_cell: &RelationInstance,
    upstairs: &Parameterization,
) -> Result<RelationInstance, ComplexError> {
    if project(upstairs) != project(&base_cell.base) {
        return Err(ComplexError::Other("the vertex does not project onto the cell's base".into()));
    }
    let (lhs, rhs) = (project_path(&base_cell.lhs), project_path(&base_cell.rhs));
    let bounds = Bounds { max_cuts: upstairs.cut_count() + 3, max_block_size: upstairs.max_arity() + 3 };
    let ctx = InstanceContext::new(group, bounds, 0);
    enumerate_instances(group, upstairs, base_cell.schema, &ctx)
        .into_iter()
        .filter(|i| project_path(&i.lhs) == lhs && project_path(&i.rhs) == rhs)
        .find(|i| verify_closure(group, i).is_ok_and(|c| c.closes()))
        .ok_or_else(|| ComplexError::Other(format!("no closing lift of the {:?} cell", base_cell.schema)))
}
