mod common;

use common::*;
use gcover_calculus::moves::{
    apply_b, apply_f, apply_finv, apply_gb_closed, apply_p, apply_step, apply_t, apply_z, enumerate_moves, expand_gb,
    expand_gf, f_position, parse_path, replay,
};
use gcover_calculus::{
    invariants_equivalent, seed_parameterization, Block, Bounds, Move, Parameterization, SlotRange, Step, TargetCover,
};
use gcover_group::{Elem, GroupTable};

fn single(g: &GroupTable, text: &str) -> Parameterization {
    let b = Block::parse(g, text).unwrap();
    let mut s = format!("b0: {text}\n");
    for i in 1..=b.arity() {
        s.push_str(&format!("ext {i}: b0.{i}\n"));
    }
    Parameterization::parse_text(g, &s).unwrap()
}

fn block_text(g: &GroupTable, p: &Parameterization, id: u32) -> String {
    p.blocks()[&id].to_text(g)
}

#[test]
fn rotation() {
    let z4 = GroupTable::cyclic(4).unwrap();
    let p = single(&z4, "S3(1,2,1; 0,3,2)");
    let q = apply_z(&p, 0).unwrap();
    assert_eq!(block_text(&z4, &q, 0), "S3(1,1,2; 2,0,3)");
    // boundary 1 followed its labels to slot 2
    assert_eq!(q.external()[0].index, 2);
    let one = Parameterization::parse_text(&GroupTable::trivial(), "b0: S1(0; 0)\next 1: b0.1\n");
    if let Ok(one) = one {
        assert_eq!(apply_z(&one, 0).unwrap(), one);
    }
}

#[test]
fn braiding() {
    let z4 = GroupTable::cyclic(4).unwrap();
    let p = single(&z4, "S3(1,2,1; 0,3,2)");
    let q = apply_b(&z4, &p, 0, 1).unwrap();
    assert_eq!(block_text(&z4, &q, 0), "S3(2,1,1; 2,0,2)");
    let before = p.blocks()[&0].monodromies(&z4);
    let after = q.blocks()[&0].monodromies(&z4);
    assert_eq!((after[0], after[1], after[2]), (before[1], before[0], before[2]));

    // two-holed case over a nonabelian group: S2(g, g⁻¹; h1, h2) -> S2(g⁻¹, g; h2 g⁻¹, h1)
    let s3 = GroupTable::symmetric(3).unwrap();
    for gg in s3.elements() {
        for h1 in s3.elements() {
            for h2 in s3.elements() {
                let b = Block::new(&s3, vec![gg, s3.inv(gg)], vec![h1, h2]).unwrap();
                let p = single(&s3, &b.to_text(&s3));
                let q = apply_b(&s3, &p, 0, 1).unwrap();
                let want = Block::new(&s3, vec![s3.inv(gg), gg], vec![s3.mul(h2, s3.inv(gg)), h1]).unwrap();
                assert_eq!(q.blocks()[&0], want);
            }
        }
    }
}

#[test]
fn erasing_and_creating_cuts() {
    let z4 = GroupTable::cyclic(4).unwrap();
    let p = Parameterization::parse_text(
        &z4,
        "b0: S2(1,3; 0,0)\nb1: S3(1,1,2; 0,0,0)\ncut c0: b0.2 -- b1.1\next 1: b0.1\next 2: b1.2\next 3: b1.3\n",
    )
    .unwrap();
    let q = apply_f(&z4, &p, 0).unwrap();
    assert_eq!(q.blocks().len(), 1);
    assert_eq!(block_text(&z4, &q, 0), "S3(1,1,2; 0,0,0)");

    let z2 = GroupTable::cyclic(2).unwrap();
    let p = single(&z2, "S3(1,1,0; 0,0,0)");
    let (q, right, cut) = apply_finv(&z2, &p, 0, 1, e(1)).unwrap();
    assert_eq!(block_text(&z2, &q, 0), "S2(1,1; 0,1)");
    assert_eq!(block_text(&z2, &q, right), "S3(1,1,0; 1,0,0)");
    assert_eq!(apply_f(&z2, &q, cut).unwrap(), p);

    // an unmatched cut cannot be erased
    let r = apply_p(&z2, &q, right, e(1)).unwrap();
    let err = apply_f(&z2, &r, cut).unwrap_err().to_string();
    assert!(err.contains("lift labels"), "{err}");
    assert!(apply_t(&z2, &r, cut, e(0)).is_err());
}

#[test]
fn translation_and_relabelling() {
    let z4 = GroupTable::cyclic(4).unwrap();
    let p = single(&z4, "S3(1,2,1; 0,3,2)");
    assert_eq!(block_text(&z4, &apply_p(&z4, &p, 0, e(1)).unwrap(), 0), "S3(1,2,1; 3,2,1)");
    assert_eq!(apply_p(&z4, &p, 0, z4.id()).unwrap(), p);

    let z2 = GroupTable::cyclic(2).unwrap();
    let (q, right, cut) = apply_finv(&z2, &single(&z2, "S3(1,1,0; 0,0,0)"), 0, 1, e(0)).unwrap();
    let t = apply_t(&z2, &q, cut, e(1)).unwrap();
    assert_eq!(t.labels_at(t.cuts()[&cut].a).unwrap().1, e(1));
    assert_eq!(t.labels_at(t.cuts()[&cut].b).unwrap().1, e(1));
    assert_eq!(apply_t(&z2, &q, cut, e(0)).unwrap(), q);
    assert_eq!(t.blocks()[&right].g(), q.blocks()[&right].g());
}

#[test]
fn generalized_erasure() {
    let z2 = GroupTable::cyclic(2).unwrap();
    // the cut sits on slot 1 of the left block, which has arity 2
    let p = Parameterization::parse_text(
        &z2,
        "b0: S2(0,0; 0,0)\nb1: S3(0,1,1; 0,0,0)\ncut c0: b0.1 -- b1.1\next 1: b0.2\next 2: b1.2\next 3: b1.3\n",
    )
    .unwrap();
    let steps = expand_gf(&p, 0).unwrap();
    assert_eq!(steps.len(), 2);
    assert_eq!(steps[0].mv.kind(), "Z");
    let q = apply_step(&z2, &p, Step::fwd(Move::GF { cut: 0 })).unwrap();
    assert_eq!(q.cut_count(), 0);
    // already in position: the plain erasure
    let (r, _, cut) = apply_finv(&z2, &single(&z2, "S3(1,1,0; 0,0,0)"), 0, 1, e(1)).unwrap();
    assert_eq!(expand_gf(&r, cut).unwrap(), vec![Step::fwd(Move::F { cut })]);
}

#[test]
fn closed_sphere_moves() {
    let z2 = GroupTable::cyclic(2).unwrap();
    let t = TargetCover::single(&z2, vec![]).unwrap();
    let s = seed_parameterization(&z2, &t).unwrap();
    let moves: Vec<Move> =
        enumerate_moves(&z2, &s, &Bounds { max_cuts: 2, max_block_size: 4 }).into_iter().map(|s| s.mv).collect();
    assert_eq!(moves, vec![Move::P { block: 0, x: e(0) }, Move::P { block: 0, x: e(1) }]);
}

#[test]
fn no_cut_creation_without_room() {
    let z2 = GroupTable::cyclic(2).unwrap();
    let p = single(&z2, "S3(1,1,0; 0,0,0)");
    let moves = enumerate_moves(&z2, &p, &Bounds { max_cuts: 0, max_block_size: 4 });
    assert!(moves.iter().all(|s| s.mv.kind() != "Finv"));
    let counts = |b: Bounds| {
        let ms = enumerate_moves(&z2, &p, &b);
        ["Z", "B", "F", "Finv", "P", "T"].map(|k| ms.iter().filter(|s| s.mv.kind() == k).count())
    };
    // Z once, B at two positions, Finv at two splits times two labels, P twice
    assert_eq!(counts(Bounds { max_cuts: 1, max_block_size: 6 }), [1, 2, 0, 4, 2, 0]);
}

#[test]
fn path_grammar_round_trip() {
    let z4 = GroupTable::cyclic(4).unwrap();
    let p = single(&z4, "S3(1,2,1; 0,3,2)");
    let path = parse_path(&z4, "Z@b0;Z@b0;Z@b0").unwrap();
    let r = replay(&z4, &p, &path).unwrap();
    assert_eq!(r.end_key(), r.start_key());
    let undo = parse_path(&z4, "B@b0#2;B@b0#2!;P@b0,x=3;P@b0,x=3!").unwrap();
    assert_eq!(replay(&z4, &p, &undo).unwrap().end, p);
}

/// Every block of arity `n` over `g`.
fn all_blocks(g: &GroupTable, n: usize) -> Vec<Block> {
    let els: Vec<Elem> = g.elements().collect();
    let mut tuples: Vec<Vec<Elem>> = vec![vec![]];
    for _ in 0..n {
        tuples = tuples.into_iter().flat_map(|t| els.iter().map(move |&e| [t.clone(), vec![e]].concat())).collect();
    }
    let mut out = Vec::new();
    for gs in tuples.iter().filter(|gs| g.product(gs.iter().copied()) == g.id()) {
        for hs in &tuples {
            out.push(Block::new(g, gs.clone(), hs.clone()).unwrap());
        }
    }
    out
}

#[test]
fn composites_agree_with_primitives() {
    for g in [GroupTable::cyclic(2).unwrap(), GroupTable::cyclic(4).unwrap()] {
        let mut checked = (0, 0);
        for n in 2..=4 {
            for b in all_blocks(&g, n) {
                let p = single(&g, &b.to_text(&g));
                let key = |q: &Parameterization| q.canonical_key().unwrap();
                for i in 1..n {
                    let (_, via_gb, _) =
                        expand_gb(&g, &p, 0, SlotRange::new(i, i), SlotRange::new(i + 1, i + 1)).unwrap();
                    assert_eq!(key(&via_gb), key(&apply_b(&g, &p, 0, i).unwrap()), "{} at {i}", b.to_text(&g));
                    checked.0 += 1;
                }
                for k in 1..n {
                    for y in g.elements() {
                        let (q, _, cut) = apply_finv(&g, &p, 0, k, y).unwrap();
                        let merged = apply_f(&g, &q, cut).unwrap();
                        for z in g.elements() {
                            let (via_f, _, _) = apply_finv(&g, &merged, 0, k, z).unwrap();
                            assert_eq!(key(&via_f), key(&apply_t(&g, &q, cut, z).unwrap()));
                            checked.1 += 1;
                        }
                    }
                }
            }
        }
        assert!(checked.0 > 0 && checked.1 > 0);
    }
}

#[test]
fn generalized_braiding_matches_closed_form() {
    for (g, top) in [(GroupTable::cyclic(4).unwrap(), 5), (GroupTable::symmetric(3).unwrap(), 4)] {
        for n in 2..=top {
            let blocks = all_blocks(&g, n);
            for b in blocks.iter().step_by(if n > 3 { 97 } else { 1 }) {
                let p = single(&g, &b.to_text(&g));
                for lo in 1..n {
                    for mid in lo..n {
                        for hi in mid + 1..=n {
                            let (i2, i3) = (SlotRange::new(lo, mid), SlotRange::new(mid + 1, hi));
                            let (_, composite, _) = expand_gb(&g, &p, 0, i2, i3).unwrap();
                            let closed = apply_gb_closed(&g, &p, 0, i2, i3).unwrap();
                            assert_eq!(composite.canonical_key().unwrap(), closed.canonical_key().unwrap());
                        }
                    }
                }
            }
        }
    }
    let trivial = GroupTable::trivial();
    let p = single(&trivial, "S4(0,0,0,0; 0,0,0,0)");
    let q = apply_gb_closed(&trivial, &p, 0, SlotRange::new(1, 1), SlotRange::new(2, 3)).unwrap();
    let slots: Vec<usize> = q.external().iter().map(|s| s.index).collect();
    assert_eq!(slots, vec![3, 1, 2, 4]);
}

/// Check every move at every vertex reachable from the seed.
fn check_invariants(g: &GroupTable, m: &[usize], max_cuts: usize) -> usize {
    let t = TargetCover::single(g, elems(m)).unwrap();
    let bounds = Bounds { max_cuts, max_block_size: 4 };
    let vertices = reachable(g, &t, bounds, 200_000);
    let mut checked = 0;
    for p in vertices.values() {
        let here = p.cover_invariant(g, &t).unwrap();
        let valid = p.validate(g, &t).is_ok();
        for s in enumerate_moves(g, p, &bounds) {
            let q = apply_step(g, p, s).unwrap();
            assert!(q.check_structure(g).is_empty());
            for b in q.blocks().values() {
                assert_eq!(g.product(b.g().iter().copied()), g.id());
            }
            let report = q.validate(g, &t);
            assert!(report.violations.iter().all(|v| v.contains("cover class")), "{report:?}");
            if !matches!(s.mv, Move::B { .. }) {
                assert!(invariants_equivalent(g, &q.cover_invariant(g, &t).unwrap(), &here), "{}", s.to_text(g));
                assert_eq!(report.is_ok(), valid);
            }
            match s.mv {
                Move::Z { block } => {
                    let mut before = p.blocks()[&block].monodromies(g);
                    before.rotate_right(1);
                    assert_eq!(q.blocks()[&block].monodromies(g), before);
                    let back = apply_step(g, &q, Step::inv(s.mv)).unwrap();
                    assert_eq!(back, *p);
                }
                Move::B { block, i } => {
                    let before = p.blocks()[&block].monodromies(g);
                    let after = q.blocks()[&block].monodromies(g);
                    assert_eq!((after[i - 1], after[i]), (before[i], before[i - 1]));
                    assert_eq!(apply_step(g, &q, Step::inv(s.mv)).unwrap(), *p);
                }
                Move::P { block, x } => {
                    assert_eq!(q.blocks()[&block].monodromies(g), p.blocks()[&block].monodromies(g));
                    assert_eq!(apply_p(g, &q, block, g.inv(x)).unwrap(), *p);
                }
                Move::T { cut, .. } => {
                    let y = p.labels_at(p.cuts()[&cut].a).unwrap().1;
                    assert_eq!(apply_t(g, &q, cut, y).unwrap(), *p);
                }
                Move::F { .. } | Move::Finv { .. } => {}
                other => panic!("composite {other:?} enumerated"),
            }
            checked += 1;
        }
        for (&c, _) in p.cuts() {
            if f_position(p, c).unwrap().is_some() && p.is_matched(c).unwrap() {
                let q = apply_f(g, p, c).unwrap();
                assert_eq!(q.validate(g, &t).is_ok(), valid);
            }
        }
    }
    checked
}

#[test]
fn moves_preserve_validity() {
    let mut total = 0;
    total += check_invariants(&GroupTable::cyclic(2).unwrap(), &[1, 1, 0], 2);
    total += check_invariants(&GroupTable::cyclic(2).unwrap(), &[1, 1, 1, 1], 1);
    total += check_invariants(&GroupTable::cyclic(3).unwrap(), &[1, 2, 0], 2);
    total += check_invariants(&GroupTable::symmetric(3).unwrap(), &[1, 1, 0], 1);
    assert!(total > 10_000, "{total}");
}
