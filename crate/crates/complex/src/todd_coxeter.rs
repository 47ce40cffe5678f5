//! Coset enumeration over the trivial subgroup, HLT strategy.

use crate::presentation::{generator_of, Presentation};

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    /// The table closed with this many cosets, the order of the group.
    Complete { index: usize, defined: usize },
    /// More than the budget of cosets were defined.
    BudgetExhausted { defined: usize },
}

struct Table {
    cols: usize,
    rows: Vec<u32>,
    /// Union-find representative of each coset; live cosets point at themselves.
    rep: Vec<u32>,
    queue: Vec<u32>,
    defined: usize,
    budget: usize,
}

impl Table {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.rows[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.rows[c as usize * self.cols + x] = d;
    }

    fn live(&self, c: u32) -> bool {
        self.rep[c as usize] == c
    }

    fn find(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.rep[r as usize] != r {
            r = self.rep[r as usize];
        }
        let mut x = c;
        while self.rep[x as usize] != r {
            let next = self.rep[x as usize];
            self.rep[x as usize] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: u32, x: usize) -> Option<u32> {
        if self.defined >= self.budget {
            return None;
        }
        let d = self.rep.len() as u32;
        self.rep.push(d);
        self.rows.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.defined += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Some(d)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.rep[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let e = self.queue[qi];
            qi += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                if self.get(f, x ^ 1) == e {
                    self.set(f, x ^ 1, UNDEF);
                }
                let e1 = self.find(e);
                let f1 = self.find(f);
                let ex = self.get(e1, x);
                if ex != UNDEF {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, x ^ 1);
                    if fx != UNDEF {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Trace `w` from `c` forwards and backwards, defining cosets to close
    /// the gap. Returns `false` when the budget runs out.
    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> bool {
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len();
        loop {
            while i < j && self.get(f, w[i]) != UNDEF {
                f = self.get(f, w[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j > i && self.get(b, w[j - 1] ^ 1) != UNDEF {
                b = self.get(b, w[j - 1] ^ 1);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return true;
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return true;
            }
            match self.define(f, w[i]) {
                Some(_) => {}
                None => return false,
            }
        }
    }
}

/// Enumerate cosets of the trivial subgroup, defining at most `budget` cosets.
pub fn enumerate_cosets(p: &Presentation, budget: usize) -> Enumeration {
    let cols = 2 * p.generators;
    // column 2g is generator g, column 2g + 1 its inverse
    let rels: Vec<Vec<usize>> =
        p.relators.iter().map(|r| r.iter().map(|&l| 2 * generator_of(l) + usize::from(l < 0)).collect()).collect();
    let mut t =
        Table { cols, rows: vec![UNDEF; cols], rep: vec![0], queue: Vec::new(), defined: 1, budget: budget.max(1) };
    let mut c = 0u32;
    while (c as usize) < t.rep.len() {
        if t.live(c) {
            for r in &rels {
                if !t.live(c) {
                    break;
                }
                if !t.scan_and_fill(c, r) {
                    return Enumeration::BudgetExhausted { defined: t.defined };
                }
            }
            for x in 0..cols {
                if !t.live(c) {
                    break;
                }
                if t.get(c, x) == UNDEF && t.define(c, x).is_none() {
                    return Enumeration::BudgetExhausted { defined: t.defined };
                }
            }
        }
        c += 1;
    }
    let index = (0..t.rep.len() as u32).filter(|&c| t.live(c)).count();
    Enumeration::Complete { index, defined: t.defined }
}
