mod common;

use std::collections::BTreeMap;

use common::*;
use gcover_calculus::moves::replay;
use gcover_calculus::{
    enumerate_instances, seed_parameterization, verify_closure, Block, Bounds, InstanceContext, Move, Parameterization,
    Schema, Step, TargetCover,
};
use gcover_group::GroupTable;

fn tally(g: &GroupTable, targets: &[(&[usize], usize)]) -> BTreeMap<Schema, (usize, usize)> {
    let mut out: BTreeMap<Schema, (usize, usize)> = Schema::ALL.iter().map(|&s| (s, (0, 0))).collect();
    for &(m, max_cuts) in targets {
        let t = TargetCover::single(g, elems(m)).unwrap();
        let bounds = Bounds { max_cuts, max_block_size: 4 };
        let ctx = InstanceContext::new(g, Bounds { max_cuts: max_cuts + 2, max_block_size: 6 }, 0);
        for p in reachable(g, &t, bounds, 1_200).values() {
            for schema in Schema::ALL {
                for inst in enumerate_instances(g, p, schema, &ctx) {
                    let c = verify_closure(g, &inst).unwrap();
                    let e = out.get_mut(&schema).unwrap();
                    e.0 += 1;
                    if c.closes() {
                        e.1 += 1;
                    } else {
                        eprintln!("{schema} fails at\n{}", p.to_text(g));
                    }
                }
            }
        }
    }
    out
}

fn assert_all_close(g: &GroupTable, targets: &[(&[usize], usize)]) {
    let t = tally(g, targets);
    let mut total = 0;
    for (schema, (n, closed)) in &t {
        assert!(*n > 0, "{schema} has no instances");
        assert_eq!(n, closed, "{schema}");
        total += n;
    }
    assert!(total >= 500, "{total}");
}

#[test]
fn every_schema_closes_over_z2() {
    let z2 = GroupTable::cyclic(2).unwrap();
    assert_all_close(&z2, &[(&[1, 1, 0], 2), (&[1, 1, 1, 1], 2), (&[0, 0, 0, 0], 2)]);
}

#[test]
fn every_schema_closes_over_s3() {
    let s3 = GroupTable::symmetric(3).unwrap();
    let tr = s3.elements().find(|&x| x != s3.id() && s3.mul(x, x) == s3.id()).unwrap().index();
    assert_all_close(&s3, &[(&[tr, tr, 0], 1), (&[tr, tr, 0, 0], 2)]);
}

#[test]
fn twist_needs_its_translation() {
    let z2 = GroupTable::cyclic(2).unwrap();
    let s3 = GroupTable::symmetric(3).unwrap();
    let mut broken = 0;
    for g in [&z2, &s3] {
        let ctx = InstanceContext::new(g, Bounds { max_cuts: 1, max_block_size: 4 }, 0);
        for x in g.elements() {
            for h1 in g.elements() {
                for h2 in g.elements() {
                    let b = Block::new(g, vec![x, g.inv(x)], vec![h1, h2]).unwrap();
                    let text = format!("b0: {}\next 1: b0.1\next 2: b0.2\n", b.to_text(g));
                    let p = Parameterization::parse_text(g, &text).unwrap();
                    let insts = enumerate_instances(g, &p, Schema::R17, &ctx);
                    assert_eq!(insts.len(), 1);
                    let inst = &insts[0];
                    assert!(verify_closure(g, inst).unwrap().closes());
                    let without: Vec<Step> =
                        inst.rhs.iter().copied().filter(|s| !matches!(s.mv, Move::P { .. })).collect();
                    let lhs = replay(g, &p, &inst.lhs).unwrap();
                    let rhs = replay(g, &p, &without).unwrap();
                    // the twist is invisible exactly when the monodromy is trivial
                    assert_eq!(lhs.end_key() == rhs.end_key(), x == g.id(), "{text}");
                    broken += usize::from(x != g.id());
                }
            }
        }
    }
    assert!(broken > 0);
}

#[test]
fn instance_counts() {
    let s3 = GroupTable::symmetric(3).unwrap();
    let ctx = InstanceContext::new(&s3, Bounds { max_cuts: 2, max_block_size: 4 }, 0);
    let tr = s3.elements().find(|&x| x != s3.id() && s3.mul(x, x) == s3.id()).unwrap();
    let (tr, id) = (s3.format_elem(tr), s3.format_elem(s3.id()));
    let text = format!(
        "b0: S2({tr},{tr}; {id},{id})\nb1: S3({tr},{tr},{id}; {id},{id},{id})\ncut c0: b0.2 -- b1.1\next 1: b0.1\next 2: b1.2\next 3: b1.3\n"
    );
    let two = Parameterization::parse_text(&s3, &text).unwrap();
    let count = |s| enumerate_instances(&s3, &two, s, &ctx).len();
    assert_eq!(count(Schema::R5), 2 * 6 * 6);
    assert_eq!(count(Schema::R11), 2);
    assert_eq!(count(Schema::R2), 2 * 6);
    let closed = seed_parameterization(&s3, &TargetCover::single(&s3, vec![]).unwrap()).unwrap();
    assert_eq!(enumerate_instances(&s3, &closed, Schema::R11, &ctx).len(), 0);
    assert_eq!(enumerate_instances(&s3, &closed, Schema::R5, &ctx).len(), 36);
}

#[test]
fn sampling_is_seeded() {
    let s4 = GroupTable::symmetric(4).unwrap();
    let b = Bounds { max_cuts: 1, max_block_size: 4 };
    let a = InstanceContext::new(&s4, b, 7);
    assert_eq!(a.elements.len(), 6);
    assert_eq!(a.elements[0], s4.id());
    assert_eq!(a.elements, InstanceContext::new(&s4, b, 7).elements);
    let z3 = GroupTable::cyclic(3).unwrap();
    assert_eq!(InstanceContext::new(&z3, b, 7).elements, z3.elements().collect::<Vec<_>>());
}

#[test]
fn schema_names_parse() {
    for s in Schema::ALL {
        assert_eq!(s.to_string().parse::<Schema>().unwrap(), s);
        assert_eq!(s.to_string().to_lowercase().parse::<Schema>().unwrap(), s);
    }
    assert!("R1".parse::<Schema>().is_err());
}
