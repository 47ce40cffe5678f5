#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use gcover_calculus::moves::{apply_step, enumerate_moves};
use gcover_calculus::{seed_parameterization, Bounds, CanonicalKey, Parameterization, TargetCover};
use gcover_group::{Elem, GroupTable};

pub fn e(i: usize) -> Elem {
    Elem::new(i)
}

pub fn elems(v: &[usize]) -> Vec<Elem> {
    v.iter().map(|&i| e(i)).collect()
}

/// Vertices reachable from the seed by enumerated moves, by canonical key.
pub fn reachable(
    group: &GroupTable,
    target: &TargetCover,
    bounds: Bounds,
    cap: usize,
) -> BTreeMap<CanonicalKey, Parameterization> {
    let seed = seed_parameterization(group, target).unwrap();
    let (c, _, k) = seed.canonicalize().unwrap();
    let mut seen = BTreeMap::new();
    seen.insert(k, c.clone());
    let mut queue = VecDeque::from([c]);
    while let Some(p) = queue.pop_front() {
        for s in enumerate_moves(group, &p, &bounds) {
            let q = apply_step(group, &p, s).unwrap();
            let (cq, _, kq) = q.canonicalize().unwrap();
            if !seen.contains_key(&kq) && seen.len() < cap {
                seen.insert(kq, cq.clone());
                queue.push_back(cq);
            }
        }
    }
    seen
}
