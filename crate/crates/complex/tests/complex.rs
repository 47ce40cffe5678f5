use std::collections::BTreeSet;

use gcover_calculus::{Bounds, TargetCover};
use gcover_complex::{
    build_bounded, check_connected, enumerate_valid_vertices, pi1_presentation, prove_trivial, BuildOptions, Verdict,
    DEFAULT_COSET_BUDGET,
};
use gcover_group::{Elem, GroupTable};

fn target(g: &GroupTable, m: &[usize]) -> TargetCover {
    TargetCover::single(g, m.iter().map(|&i| Elem::new(i)).collect()).unwrap()
}

fn opts(max_cuts: usize, max_block_size: usize) -> BuildOptions {
    BuildOptions::new(Bounds { max_cuts, max_block_size })
}

#[test]
fn closed_sphere_complex_is_the_group() {
    for g in [GroupTable::cyclic(2).unwrap(), GroupTable::cyclic(3).unwrap(), GroupTable::symmetric(3).unwrap()] {
        let t = target(&g, &[]);
        let cx = build_bounded(&g, &t, &opts(0, 4)).unwrap();
        assert_eq!(cx.vertex_count(), g.order());
        assert!(cx.edges.iter().all(|e| e.mv.kind() == "P"));
        let pi = pi1_presentation(&cx).unwrap();
        assert_eq!(prove_trivial(&pi.presentation, DEFAULT_COSET_BUDGET).verdict, Verdict::ProvenTrivial);
    }
}

#[test]
fn uncut_trivial_group_complex() {
    // one 3-holed block: the three rotations of each of the two boundary
    // orders reachable by braiding
    let g = GroupTable::trivial();
    let cx = build_bounded(&g, &target(&g, &[0, 0, 0]), &opts(0, 3)).unwrap();
    assert_eq!(cx.core_vertices, 6);
    let core = cx.edges.iter().filter(|e| e.from < cx.core_vertices && e.to < cx.core_vertices);
    assert!(core.clone().count() > 0);
    assert!(core.clone().all(|e| matches!(e.mv.kind(), "Z" | "B" | "P")), "{:?}", core.map(|e| e.mv).collect::<Vec<_>>());
    assert!(cx.cells.iter().any(|c| c.schema.to_string() == "R11"));
}

#[test]
fn every_attached_cell_closes() {
    let g = GroupTable::cyclic(2).unwrap();
    let cx = build_bounded(&g, &target(&g, &[1, 1, 0]), &opts(1, 4)).unwrap();
    for (_, t) in &cx.tallies {
        assert_eq!(t.failed, 0);
        assert_eq!(t.instances, t.closed + t.beyond_slack);
    }
    for c in &cx.cells {
        // the boundary walk is a closed loop at the base
        let mut at = c.base;
        for &(e, fwd) in &c.boundary {
            let edge = &cx.edges[e];
            let (from, to) = if fwd { (edge.from, edge.to) } else { (edge.to, edge.from) };
            assert_eq!(from, at);
            at = to;
        }
        assert_eq!(at, c.base);
    }
}

#[test]
fn build_is_deterministic() {
    let g = GroupTable::cyclic(2).unwrap();
    let t = target(&g, &[1, 1, 0]);
    let a = build_bounded(&g, &t, &opts(1, 4)).unwrap().dump(&g);
    let b = build_bounded(&g, &t, &opts(1, 4)).unwrap().dump(&g);
    assert_eq!(a, b);
    assert!(a.lines().any(|l| l.starts_with("V ")));
    assert!(a.lines().any(|l| l.starts_with("E ")));
    assert!(a.lines().any(|l| l.starts_with("C ")));
}

#[test]
fn single_block_valid_vertices() {
    let g = GroupTable::cyclic(2).unwrap();
    let t = target(&g, &[1, 1, 0]);
    let bounds = Bounds { max_cuts: 0, max_block_size: 3 };
    let valid = enumerate_valid_vertices(&g, &t, &bounds, 1 << 20).unwrap();
    // two boundary orders times three rotations, each with a P-orbit of two
    assert_eq!(valid.len(), 12);
    let trivial = GroupTable::trivial();
    let base = enumerate_valid_vertices(&trivial, &target(&trivial, &[0, 0, 0]), &bounds, 1 << 20).unwrap();
    assert_eq!(base.len(), 6);
}

#[test]
fn valid_vertices_are_reached() {
    let cases: Vec<(GroupTable, Vec<usize>, usize)> = vec![
        (GroupTable::cyclic(2).unwrap(), vec![1, 1, 0], 1),
        (GroupTable::cyclic(2).unwrap(), vec![1, 1, 1, 1], 1),
        (GroupTable::cyclic(3).unwrap(), vec![1, 2, 0], 1),
        (GroupTable::symmetric(3).unwrap(), vec![1, 1, 0], 1),
        (GroupTable::trivial(), vec![0, 0, 0], 1),
        (GroupTable::trivial(), vec![0, 0, 0, 0], 2),
    ];
    for (g, m, max_cuts) in cases {
        let t = target(&g, &m);
        let mut o = opts(max_cuts, 4);
        o.cells = false;
        let cx = build_bounded(&g, &t, &o).unwrap();
        let reached: BTreeSet<_> = cx.keys.iter().cloned().collect();
        let valid = enumerate_valid_vertices(&g, &t, &o.bounds, 1 << 22).unwrap();
        let missing = check_connected(&reached, &valid);
        assert!(missing.is_empty(), "{g} {m:?}: {} of {} unreached", missing.len(), valid.len());
    }
}
