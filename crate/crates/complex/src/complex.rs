//! Bounded portions of the move complex: vertices, stored edges, 2-cells.

use std::collections::HashMap;

use gcover_calculus::moves::{enumerate_moves, replay, Traversal};
use gcover_calculus::relations::{enumerate_instances, verify_closure, InstanceContext, Schema};
use gcover_calculus::{
    seed_parameterization, Bounds, CalcError, CanonicalKey, Move, Parameterization, Step, TargetCover,
};
use gcover_group::GroupTable;
use rayon::prelude::*;

use crate::ComplexError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// Forward move at `from`, ids from the canonical form of `from`.
    pub mv: Move,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub schema: Schema,
    pub base: usize,
    /// Boundary walk as `(edge index, forward)`.
    pub boundary: Vec<(usize, bool)>,
}

/// Parameters for [`build_bounded`].
#[derive(Copy, Clone, Debug)]
pub struct BuildOptions {
    pub bounds: Bounds,
    /// Extra cuts cell boundaries may use beyond `bounds.max_cuts`.
    pub slack: usize,
    pub vertex_budget: usize,
    pub sampling_seed: u64,
    /// Whether to attach relation cells at all.
    pub cells: bool,
}

impl BuildOptions {
    pub fn new(bounds: Bounds) -> Self {
        BuildOptions { bounds, slack: 3, vertex_budget: 1_000_000, sampling_seed: 0, cells: true }
    }
}

/// Cell attachment statistics per schema.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchemaTally {
    pub instances: usize,
    pub closed: usize,
    pub failed: usize,
    pub beyond_slack: usize,
}

#[derive(Clone, Debug, Default)]
pub struct TwoComplex {
    pub vertices: Vec<Parameterization>,
    pub keys: Vec<CanonicalKey>,
    index: HashMap<CanonicalKey, usize>,
    pub edges: Vec<Edge>,
    edge_index: HashMap<(usize, Move), usize>,
    pub cells: Vec<Cell>,
    /// Number of vertices found by the breadth-first search; later vertices
    /// were only reached by cell boundaries.
    pub core_vertices: usize,
    pub tallies: Vec<(Schema, SchemaTally)>,
}

impl TwoComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn basepoint(&self) -> Option<&CanonicalKey> {
        self.keys.first()
    }

    pub fn vertex_index(&self, key: &CanonicalKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Insert a canonical vertex, returning its index.
    pub fn add_vertex(&mut self, key: CanonicalKey, p: Parameterization) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.vertices.len();
        self.index.insert(key.clone(), i);
        self.keys.push(key);
        self.vertices.push(p);
        i
    }

    /// Record the stored edge walked by a traversal; both endpoints must exist.
    pub fn add_traversal(&mut self, t: &Traversal) -> (usize, bool) {
        let from = self.index[&t.edge_from];
        let to = self.index[&t.edge_to];
        let next = self.edges.len();
        let e = *self.edge_index.entry((from, t.edge_move)).or_insert(next);
        if e == next {
            self.edges.push(Edge { from, to, mv: t.edge_move });
        }
        debug_assert_eq!(self.edges[e].to, to);
        (e, t.forward)
    }

    /// Add a cell from the two replays of a closed relation instance.
    pub fn add_cell(
        &mut self,
        schema: Schema,
        base: usize,
        vertices: &[(CanonicalKey, Parameterization)],
        boundary: &[Traversal],
    ) {
        for (k, p) in vertices {
            self.add_vertex(k.clone(), p.clone());
        }
        let walk: Vec<(usize, bool)> = boundary.iter().map(|t| self.add_traversal(t)).collect();
        self.cells.push(Cell { schema, base, boundary: walk });
    }

    pub fn edge_from(&self, from: usize, mv: &Move) -> Option<usize> {
        self.edge_index.get(&(from, *mv)).copied()
    }

    /// Line-oriented dump: `V <key> <vertex>` per vertex (text lines joined
    /// by ` | `), `E <kind> <params> <from> <to>` per edge, and
    /// `C <schema> <base> <edges>` per cell with signed edge indices.
    pub fn dump(&self, group: &GroupTable) -> String {
        let mut out = String::new();
        for (k, p) in self.keys.iter().zip(&self.vertices) {
            let text = p.to_text(group);
            out.push_str(&format!("V {} {}\n", k.to_hex(), text.trim_end().replace('\n', " | ")));
        }
        for e in &self.edges {
            let text = Step::fwd(e.mv).to_text(group);
            let params = text.split_once('@').map_or("", |(_, rest)| rest);
            out.push_str(&format!("E {} {} {} {}\n", e.mv.kind(), params, e.from, e.to));
        }
        for c in &self.cells {
            let walk: Vec<String> =
                c.boundary.iter().map(|&(e, fwd)| format!("{}{e}", if fwd { '+' } else { '-' })).collect();
            out.push_str(&format!("C {} {} {}\n", c.schema, c.base, walk.join(",")));
        }
        out
    }
}

struct Expansion {
    key: CanonicalKey,
    vertex: Parameterization,
    traversal: Traversal,
}

fn expand_vertex(group: &GroupTable, p: &Parameterization, bounds: &Bounds) -> Result<Vec<Expansion>, CalcError> {
    enumerate_moves(group, p, bounds)
        .into_iter()
        .map(|s| {
            let r = replay(group, p, &[s])?;
            Ok(Expansion { key: r.keys[1].clone(), vertex: r.vertices[1].clone(), traversal: r.traversals[0].clone() })
        })
        .collect()
}

/// Breadth-first closure of the seed under enumerated moves, then relation
/// cells at every vertex of the closure.
pub fn build_bounded(
    group: &GroupTable,
    target: &TargetCover,
    opts: &BuildOptions,
) -> Result<TwoComplex, ComplexError> {
    let seed = seed_parameterization(group, target)?;
    let (canon, _, key) = seed.canonicalize()?;
    build_from(group, vec![(key, canon)], opts)
}

/// As [`build_bounded`], from explicit starting vertices.
pub fn build_from(
    group: &GroupTable,
    starts: Vec<(CanonicalKey, Parameterization)>,
    opts: &BuildOptions,
) -> Result<TwoComplex, ComplexError> {
    let mut cx = TwoComplex::new();
    let mut frontier: Vec<usize> = starts.into_iter().map(|(k, p)| cx.add_vertex(k, p)).collect();
    frontier.dedup();
    while !frontier.is_empty() {
        let expansions: Vec<Vec<Expansion>> = frontier
            .par_iter()
            .map(|&v| expand_vertex(group, &cx.vertices[v], &opts.bounds))
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for exps in expansions {
            for x in exps {
                if cx.vertex_index(&x.key).is_none() {
                    if cx.vertex_count() >= opts.vertex_budget {
                        return Err(ComplexError::Budget(opts.vertex_budget));
                    }
                    next.push(cx.add_vertex(x.key, x.vertex));
                }
                cx.add_traversal(&x.traversal);
            }
        }
        frontier = next;
    }
    cx.core_vertices = cx.vertex_count();
    if opts.cells {
        attach_cells(group, &mut cx, opts)?;
    }
    Ok(cx)
}

struct CellResult {
    schema: Schema,
    base: usize,
    closed: bool,
    beyond_slack: bool,
    vertices: Vec<(CanonicalKey, Parameterization)>,
    boundary: Vec<Traversal>,
}

fn attach_cells(group: &GroupTable, cx: &mut TwoComplex, opts: &BuildOptions) -> Result<(), ComplexError> {
    let mut tallies: Vec<(Schema, SchemaTally)> = Schema::ALL.iter().map(|&s| (s, SchemaTally::default())).collect();
    attach_range(group, cx, opts, 0..cx.core_vertices, &mut tallies)?;
    cx.tallies = tallies;
    Ok(())
}

fn attach_range(
    group: &GroupTable,
    cx: &mut TwoComplex,
    opts: &BuildOptions,
    bases: std::ops::Range<usize>,
    tallies: &mut [(Schema, SchemaTally)],
) -> Result<(), ComplexError> {
    let ctx = InstanceContext::new(group, opts.bounds, opts.sampling_seed);
    let cut_cap = opts.bounds.max_cuts + opts.slack;
    const CHUNK: usize = 256;
    for start in bases.clone().step_by(CHUNK) {
        let end = (start + CHUNK).min(bases.end);
        let results: Vec<Vec<CellResult>> = (start..end)
            .into_par_iter()
            .map(|v| {
                let p = &cx.vertices[v];
                let mut out = Vec::new();
                for schema in Schema::ALL {
                    for inst in enumerate_instances(group, p, schema, &ctx) {
                        let closure = verify_closure(group, &inst)?;
                        let visited = closure
                            .lhs
                            .keys
                            .iter()
                            .zip(&closure.lhs.vertices)
                            .chain(closure.rhs.keys.iter().zip(&closure.rhs.vertices));
                        let beyond_slack = visited.clone().any(|(_, q)| q.cut_count() > cut_cap);
                        let closed = closure.closes();
                        let (vertices, boundary) = if closed && !beyond_slack {
                            let vs = visited
                                .filter(|(k, _)| !cx.index.contains_key(*k))
                                .map(|(k, q)| (k.clone(), q.clone()))
                                .collect();
                            (vs, closure.boundary())
                        } else {
                            (Vec::new(), Vec::new())
                        };
                        out.push(CellResult { schema, base: v, closed, beyond_slack, vertices, boundary });
                    }
                }
                Ok(out)
            })
            .collect::<Result<_, CalcError>>()?;
        for r in results.into_iter().flatten() {
            let tally = &mut tallies.iter_mut().find(|(s, _)| *s == r.schema).expect("all schemas").1;
            tally.instances += 1;
            if !r.closed {
                tally.failed += 1;
            } else if r.beyond_slack {
                tally.beyond_slack += 1;
            } else {
                tally.closed += 1;
                cx.add_cell(r.schema, r.base, &r.vertices, &r.boundary);
            }
        }
    }
    Ok(())
}
