use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use gcover_calculus::moves::{apply_step, enumerate_moves, parse_path, path_to_text};
use gcover_calculus::relations::{enumerate_instances, verify_closure, InstanceContext, Schema};
use gcover_calculus::{CanonicalKey, Move, Parameterization};
use gcover_complex::{
    build_from, check_connected, check_fiber, check_lifting_squares, compute_fiber, enumerate_shapes,
    enumerate_valid_vertices, pi1_presentation, project, prove_trivial, TwoComplex, Verdict,
};
use gcover_group::GroupTable;
use rayon::prelude::*;

use crate::config::RunConfig;

/// Report text plus whether every check in it passed.
pub struct Report {
    pub text: String,
    pub pass: bool,
}

impl Report {
    fn new() -> Self {
        Report { text: String::new(), pass: true }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

fn bounds_line(cfg: &RunConfig) -> String {
    format!(
        "bounds: max_cuts={} max_block_size={} slack={} vertex_budget={} coset_budget={}",
        cfg.bounds.max_cuts, cfg.bounds.max_block_size, cfg.slack, cfg.vertex_budget, cfg.coset_budget
    )
}

pub fn validate(cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new();
    let v = cfg.start.validate(&cfg.group, &cfg.target);
    r.line(format!("key {}", cfg.start.canonical_key()?.short()));
    for problem in &v.violations {
        r.line(format!("violation: {problem}"));
    }
    r.pass = v.is_ok();
    r.line(if r.pass { "valid" } else { "invalid" });
    Ok(r)
}

/// Apply a path one step at a time, printing each vertex.
pub fn apply(cfg: &RunConfig, path: &str) -> Result<Report> {
    let g = &cfg.group;
    let steps = parse_path(g, path).context("path")?;
    let mut r = Report::new();
    let mut cur = cfg.start.clone();
    r.line(format!("start key={}", cur.canonical_key()?.short()));
    r.text.push_str(&cur.to_text(g));
    for (i, s) in steps.iter().enumerate() {
        match apply_step(g, &cur, *s) {
            Ok(next) => {
                cur = next;
                r.line(format!("step {} {} key={}", i + 1, s.to_text(g), cur.canonical_key()?.short()));
                r.text.push_str(&cur.to_text(g));
            }
            Err(e) => {
                r.line(format!("step {} {} failed: {e}", i + 1, s.to_text(g)));
                r.pass = false;
                return Ok(r);
            }
        }
    }
    let back = cur.canonical_key()? == cfg.start.canonical_key()?;
    r.line(format!("end key={} closed={back}", cur.canonical_key()?.short()));
    Ok(r)
}

/// The orbit of the start vertex under `P` and `T` moves.
pub fn orbit(cfg: &RunConfig) -> Result<Report> {
    let g = &cfg.group;
    let (start, _, key) = cfg.start.canonicalize()?;
    let mut seen = BTreeMap::from([(key, start.clone())]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for s in enumerate_moves(g, &p, &cfg.bounds) {
            if !matches!(s.mv, Move::P { .. } | Move::T { .. }) {
                continue;
            }
            let (q, _, k) = apply_step(g, &p, s)?.canonicalize()?;
            if !seen.contains_key(&k) {
                seen.insert(k, q.clone());
                queue.push_back(q);
            }
        }
    }
    let mut r = Report::new();
    r.line(format!("orbit size={}", seen.len()));
    for (k, p) in &seen {
        r.line(format!("{} {}", k.short(), p.to_text(g).trim_end().replace('\n', " | ")));
    }
    Ok(r)
}

/// Breadth-first search from the start within the bounds, capped by the budget.
fn explore(cfg: &RunConfig) -> Result<(Vec<Parameterization>, bool)> {
    let g = &cfg.group;
    let (start, _, key) = cfg.start.canonicalize()?;
    let mut seen = BTreeSet::from([key]);
    let mut order = vec![start];
    let mut i = 0;
    let mut capped = false;
    while i < order.len() {
        let p = order[i].clone();
        i += 1;
        for s in enumerate_moves(g, &p, &cfg.bounds) {
            let (q, _, k) = apply_step(g, &p, s)?.canonicalize()?;
            if seen.contains(&k) {
                continue;
            }
            if seen.len() >= cfg.vertex_budget {
                capped = true;
                continue;
            }
            seen.insert(k);
            order.push(q);
        }
    }
    Ok((order, capped))
}

pub fn verify_relations(cfg: &RunConfig, only: &[Schema]) -> Result<Report> {
    let g = &cfg.group;
    let (vertices, capped) = explore(cfg)?;
    let schemas: Vec<Schema> = if only.is_empty() { Schema::ALL.to_vec() } else { only.to_vec() };
    let mut ctx_bounds = cfg.bounds;
    ctx_bounds.max_cuts += cfg.slack;
    ctx_bounds.max_block_size += cfg.slack;
    let ctx = InstanceContext::new(g, ctx_bounds, cfg.sampling_seed);
    // per vertex: (instances, closed) per schema, plus the first failure seen
    let per_vertex: Vec<(Vec<(usize, usize)>, Option<String>)> = vertices
        .par_iter()
        .map(|p| {
            let mut counts = vec![(0, 0); schemas.len()];
            let mut first_failure = None;
            for (si, &schema) in schemas.iter().enumerate() {
                for inst in enumerate_instances(g, p, schema, &ctx) {
                    counts[si].0 += 1;
                    let closes = verify_closure(g, &inst).map(|c| c.closes()).unwrap_or(false);
                    if closes {
                        counts[si].1 += 1;
                    } else if first_failure.is_none() {
                        first_failure = Some(format!(
                            "{schema} fails at {}: lhs {} rhs {}",
                            p.canonical_key().map(|k| k.short()).unwrap_or_default(),
                            path_to_text(g, &inst.lhs),
                            path_to_text(g, &inst.rhs)
                        ));
                    }
                }
            }
            (counts, first_failure)
        })
        .collect();
    let mut r = Report::new();
    r.line(bounds_line(cfg));
    r.line(format!("vertices={}{}", vertices.len(), if capped { " (vertex budget reached)" } else { "" }));
    let mut total = (0, 0);
    for (si, schema) in schemas.iter().enumerate() {
        let (n, ok) = per_vertex.iter().fold((0, 0), |acc, (c, _)| (acc.0 + c[si].0, acc.1 + c[si].1));
        total = (total.0 + n, total.1 + ok);
        r.line(format!("{schema} instances={n} closed={ok} failed={} ({})", n - ok, schema.description()));
    }
    for failure in per_vertex.iter().filter_map(|(_, f)| f.as_ref()).take(10) {
        r.line(failure);
    }
    r.pass = total.0 == total.1;
    r.line(format!("total instances={} failed={}", total.0, total.0 - total.1));
    Ok(r)
}

fn build(cfg: &RunConfig) -> Result<TwoComplex> {
    let (p, _, k) = cfg.start.canonicalize()?;
    Ok(build_from(&cfg.group, vec![(k, p)], &cfg.build_options())?)
}

fn tally_lines(r: &mut Report, cx: &TwoComplex) {
    for (schema, t) in &cx.tallies {
        r.line(format!(
            "{schema} instances={} closed={} failed={} beyond_slack={}",
            t.instances, t.closed, t.failed, t.beyond_slack
        ));
    }
}

pub fn complex_build(cfg: &RunConfig, dump: Option<&Path>) -> Result<Report> {
    let cx = build(cfg)?;
    let mut r = Report::new();
    r.line(bounds_line(cfg));
    r.line(format!(
        "vertices={} core={} edges={} cells={}",
        cx.vertex_count(),
        cx.core_vertices,
        cx.edges.len(),
        cx.cells.len()
    ));
    tally_lines(&mut r, &cx);
    r.pass = cx.tallies.iter().all(|(_, t)| t.failed == 0);
    if let Some(path) = dump {
        std::fs::write(path, cx.dump(&cfg.group)).with_context(|| format!("writing {}", path.display()))?;
        r.line(format!("dump written to {}", path.display()));
    }
    Ok(r)
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::ProvenTrivial => "ProvenTrivial".into(),
        Verdict::Nontrivial { h1, order: Some(n) } if h1.is_empty() => format!("Nontrivial (finite, order {n})"),
        Verdict::Nontrivial { h1, .. } => {
            let free = h1.iter().filter(|d| **d == 0.into()).count();
            let torsion: Vec<String> = h1.iter().filter(|d| **d != 0.into()).map(|d| d.to_string()).collect();
            format!("Nontrivial (H1 free rank {free}, torsion [{}])", torsion.join(","))
        }
        Verdict::Unknown { cosets_defined } => format!("Unknown (coset budget hit after {cosets_defined} cosets)"),
    }
}

pub fn complex_verify(cfg: &RunConfig) -> Result<Report> {
    let g = &cfg.group;
    let cx = build(cfg)?;
    let reached: BTreeSet<CanonicalKey> = cx.keys[..cx.core_vertices].iter().cloned().collect();
    let valid = enumerate_valid_vertices(g, &cfg.target, &cfg.bounds, cfg.vertex_budget)?;
    let missing = check_connected(&reached, &valid);
    let pi = pi1_presentation(&cx)?;
    let analysis = prove_trivial(&pi.presentation, cfg.coset_budget);
    let mut r = Report::new();
    let connected = missing.is_empty();
    r.line(format!("vertices={} connected={connected} pi1={}", cx.vertex_count(), analysis.verdict.label()));
    r.line(bounds_line(cfg));
    r.line(format!(
        "core={} edges={} cells={} valid={} unreached={}",
        cx.core_vertices,
        cx.edges.len(),
        cx.cells.len(),
        valid.len(),
        missing.len()
    ));
    for k in missing.iter().take(10) {
        r.line(format!("unreached {}", k.short()));
    }
    r.line(format!(
        "presentation generators={} relators={} reduced to generators={} relators={}",
        analysis.stats.generators_before,
        analysis.stats.relators_before,
        analysis.stats.generators_after,
        analysis.stats.relators_after
    ));
    r.line(format!("verdict {}", verdict_text(&analysis.verdict)));
    let failed: usize = cx.tallies.iter().map(|(_, t)| t.failed).sum();
    if failed > 0 {
        r.line(format!("failed cells={failed}"));
    }
    r.pass = connected && failed == 0 && analysis.verdict == Verdict::ProvenTrivial;
    Ok(r)
}

fn base_shapes(cfg: &RunConfig) -> Result<Vec<Parameterization>> {
    Ok(enumerate_shapes(&cfg.target, &cfg.bounds)?.into_values().collect())
}

pub fn fiber(cfg: &RunConfig, with_t: bool) -> Result<Report> {
    let mut r = Report::new();
    r.line(bounds_line(cfg));
    let shapes = base_shapes(cfg)?;
    for base in &shapes {
        let f = compute_fiber(&cfg.group, &cfg.target, base, with_t, cfg.vertex_budget)?;
        let fr = check_fiber(&f, cfg.coset_budget)?;
        r.pass &= fr.connected() && fr.verdict == Some(Verdict::ProvenTrivial);
        r.line(format!("{} edges={} cells={}", fr.line(), fr.edges, fr.cells));
    }
    r.line(format!("fibers={} all_ok={}", shapes.len(), r.pass));
    Ok(r)
}

pub fn lifting(cfg: &RunConfig) -> Result<Report> {
    let trivial = GroupTable::trivial();
    let mut r = Report::new();
    r.line(bounds_line(cfg));
    let (mut squares, mut failures) = (0, 0);
    for base in base_shapes(cfg)? {
        let downstairs = project(&base);
        for s in enumerate_moves(&trivial, &downstairs, &cfg.bounds) {
            if !matches!(s.mv, Move::Z { .. } | Move::B { .. } | Move::F { .. }) {
                continue;
            }
            let sq = check_lifting_squares(&cfg.group, &cfg.target, &base, s.mv, cfg.vertex_budget)?;
            squares += 1;
            failures += sq.failures;
            r.line(format!(
                "{} base={} recipe={} transported={} fallback={}",
                sq.line(),
                base.canonical_key()?.short(),
                sq.recipe,
                sq.transported,
                sq.fallback
            ));
        }
    }
    r.pass = failures == 0;
    r.line(format!("squares={squares} failures={failures}"));
    Ok(r)
}

pub fn export(cfg: &RunConfig, dot: bool, path: Option<&str>) -> Result<Report> {
    let g = &cfg.group;
    let mut p = cfg.start.clone();
    if let Some(path) = path {
        for s in parse_path(g, path).context("path")? {
            p = apply_step(g, &p, s).with_context(|| format!("applying {}", s.to_text(g)))?;
        }
    }
    let mut r = Report::new();
    if dot {
        r.text = p.to_dot(g)?;
    } else {
        r.text = p.to_text(g);
        let _ = writeln!(r.text, "# key {}", p.canonical_key()?.to_hex());
    }
    Ok(r)
}
