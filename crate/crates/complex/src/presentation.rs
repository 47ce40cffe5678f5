//! Finite presentations read off a 2-complex, and Tietze simplification.
//!
//! A letter is a nonzero `i32`: `g + 1` for generator `g`, `-(g + 1)` for
//! its inverse.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use crate::complex::TwoComplex;
use crate::ComplexError;

pub type Letter = i32;

pub fn letter(generator: usize, forward: bool) -> Letter {
    let l = generator as Letter + 1;
    if forward {
        l
    } else {
        -l
    }
}

pub fn generator_of(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<Letter>>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Vec<Letter>>) -> Self {
        let mut p = Presentation { generators, relators };
        p.normalize();
        p
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    /// Freely and cyclically reduce every relator, drop empty ones, and
    /// deduplicate up to cyclic rotation and inversion.
    pub fn normalize(&mut self) {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(self.relators.len());
        for r in self.relators.drain(..) {
            let r = cyclic_reduce(free_reduce(r));
            if r.is_empty() {
                continue;
            }
            if seen.insert(cyclic_normal_form(&r)) {
                out.push(r);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        self.relators = out;
    }

    pub fn to_text(&self) -> String {
        let name = |l: Letter| {
            let g = generator_of(l);
            if l > 0 {
                format!("x{g}")
            } else {
                format!("x{g}^-1")
            }
        };
        let rels: Vec<String> =
            self.relators.iter().map(|r| r.iter().map(|&l| name(l)).collect::<Vec<_>>().join("*")).collect();
        format!("<{} generators | {}>", self.generators, rels.join(", "))
    }
}

pub fn free_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn cyclic_reduce(mut word: Vec<Letter>) -> Vec<Letter> {
    let mut start = 0;
    let mut end = word.len();
    while end - start >= 2 && word[start] == -word[end - 1] {
        start += 1;
        end -= 1;
    }
    word.truncate(end);
    word.drain(..start);
    word
}

fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|&l| -l).collect()
}

/// Least rotation of the word or of its inverse.
fn cyclic_normal_form(word: &[Letter]) -> Vec<Letter> {
    let mut best: Option<Vec<Letter>> = None;
    for w in [word.to_vec(), invert(word)] {
        for i in 0..w.len() {
            let rot: Vec<Letter> = w[i..].iter().chain(&w[..i]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// A presentation of the fundamental group together with the spanning tree
/// data it was read from.
#[derive(Clone, Debug)]
pub struct Pi1 {
    pub presentation: Presentation,
    /// Generator of each edge, `None` for tree edges.
    pub edge_generator: Vec<Option<usize>>,
    pub tree_edges: usize,
}

/// Spanning tree by breadth-first search from vertex 0; one generator per
/// non-tree edge, one relator per cell.
pub fn pi1_presentation(cx: &TwoComplex) -> Result<Pi1, ComplexError> {
    let n = cx.vertex_count();
    if n == 0 {
        return Err(ComplexError::Other("empty complex".into()));
    }
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in cx.edges.iter().enumerate() {
        adjacency[e.from].push((i, e.to));
        adjacency[e.to].push((i, e.from));
    }
    let mut seen = vec![false; n];
    let mut is_tree = vec![false; cx.edges.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &(e, w) in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                is_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(ComplexError::Disconnected);
    }
    let mut edge_generator = vec![None; cx.edges.len()];
    let mut generators = 0;
    for (e, tree) in is_tree.iter().enumerate() {
        if !tree {
            edge_generator[e] = Some(generators);
            generators += 1;
        }
    }
    let relators = cx
        .cells
        .iter()
        .map(|c| {
            c.boundary.iter().filter_map(|&(e, fwd)| edge_generator[e].map(|g| letter(g, fwd))).collect::<Vec<_>>()
        })
        .collect();
    Ok(Pi1 {
        presentation: Presentation::new(generators, relators),
        edge_generator,
        tree_edges: is_tree.iter().filter(|t| **t).count(),
    })
}

/// Statistics of a Tietze run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TietzeStats {
    pub generators_before: usize,
    pub relators_before: usize,
    pub generators_after: usize,
    pub relators_after: usize,
}

/// Total relator length tolerated while eliminating, at least this much and
/// at least twice the starting length.
const ELIMINATION_LENGTH_CAP: usize = 2_000_000;

/// Simplify by Tietze transformations. Relators are visited shortest first;
/// a generator occurring exactly once in the relator is solved for and
/// substituted everywhere, as long as the total length stays under the cap.
/// Relators of length one and two are the cheap special cases of this.
pub fn tietze(p: &Presentation) -> (Presentation, TietzeStats) {
    let n = p.generators;
    let mut rels: Vec<Vec<Letter>> = p.relators.iter().map(|r| cyclic_reduce(free_reduce(r.clone()))).collect();
    let mut occ: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, r) in rels.iter().enumerate() {
        for &l in r {
            let o = &mut occ[generator_of(l)];
            if o.last() != Some(&(i as u32)) {
                o.push(i as u32);
            }
        }
    }
    let mut total: usize = rels.iter().map(Vec::len).sum();
    let cap = ELIMINATION_LENGTH_CAP.max(2 * total);
    let mut alive = vec![true; n];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        rels.iter().enumerate().filter(|(_, r)| !r.is_empty()).map(|(i, r)| Reverse((r.len(), i))).collect();
    while let Some(Reverse((len, i))) = heap.pop() {
        if rels[i].len() != len || len == 0 {
            continue;
        }
        let r = &rels[i];
        let mut best: Option<(usize, usize)> = None;
        for (pos, &l) in r.iter().enumerate() {
            let g = generator_of(l);
            if r.iter().filter(|&&m| generator_of(m) == g).count() == 1 && best.is_none_or(|(_, c)| occ[g].len() < c) {
                best = Some((pos, occ[g].len()));
            }
        }
        let Some((pos, count)) = best else { continue };
        if total + count.saturating_sub(1) * len.saturating_sub(2) > cap {
            continue;
        }
        let r = std::mem::take(&mut rels[i]);
        total -= len;
        let l = r[pos];
        let g = generator_of(l);
        // r = u l v = 1  ⇒  l = u⁻¹ v⁻¹
        let mut value = invert(&r[..pos]);
        value.extend(invert(&r[pos + 1..]));
        let value = if l > 0 { value } else { invert(&value) };
        let inv_value = invert(&value);
        alive[g] = false;
        let mut targets = std::mem::take(&mut occ[g]);
        targets.sort_unstable();
        targets.dedup();
        for j in targets.into_iter().map(|j| j as usize) {
            if j == i || !rels[j].iter().any(|&m| generator_of(m) == g) {
                continue;
            }
            let mut out = Vec::with_capacity(rels[j].len() + value.len());
            for &m in &rels[j] {
                if generator_of(m) == g {
                    out.extend_from_slice(if m > 0 { &value } else { &inv_value });
                } else {
                    out.push(m);
                }
            }
            let out = cyclic_reduce(free_reduce(out));
            total = total + out.len() - rels[j].len();
            for &m in &value {
                let o = &mut occ[generator_of(m)];
                if o.last() != Some(&(j as u32)) {
                    o.push(j as u32);
                }
            }
            if !out.is_empty() {
                heap.push(Reverse((out.len(), j)));
            }
            rels[j] = out;
        }
    }
    let mut new_index = vec![usize::MAX; n];
    let mut count = 0;
    for g in 0..n {
        if alive[g] {
            new_index[g] = count;
            count += 1;
        }
    }
    let relators = rels
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.iter().map(|&l| letter(new_index[generator_of(l)], l > 0)).collect())
        .collect();
    let out = Presentation::new(count, relators);
    let stats = TietzeStats {
        generators_before: p.generators,
        relators_before: p.relators.len(),
        generators_after: out.generators,
        relators_after: out.relators.len(),
    };
    (out, stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(vec![1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(vec![-1, 2, 3, 1]), vec![2, 3]);
    }

    #[test]
    fn tietze_collapses_a_chain() {
        // a = b = c and c^3 = 1, while a c^-1 b = 1 forces c = 1
        let p = Presentation::new(3, vec![vec![1, -2], vec![2, -3], vec![3, 3, 3], vec![1, -3, 2]]);
        let (q, stats) = tietze(&p);
        assert_eq!(stats.generators_before, 3);
        assert_eq!(q.generators, 0);
        assert!(q.relators.is_empty());
    }

    #[test]
    fn tietze_keeps_torsion() {
        let p = Presentation::new(2, vec![vec![1, 1], vec![1, -2]]);
        let (q, _) = tietze(&p);
        assert_eq!(q.generators, 1);
        assert_eq!(q.relators, vec![vec![1, 1]]);
    }
}
