//! Standard blocks `S_n(g; h)`.
//!
//! A block is the label data of one trivialized piece of a cover: `g[i]` is
//! the cut label and `h[i]` the sheet of the marked lift at boundary slot
//! `i + 1`. The cut labels always multiply to the identity.

use gcover_group::{Elem, GroupTable};

use crate::error::CalcError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    g: Vec<Elem>,
    h: Vec<Elem>,
}

impl Block {
    /// Checked constructor; rejects label lists of different length and
    /// cut labels whose product is not the identity.
    pub fn new(group: &GroupTable, g: Vec<Elem>, h: Vec<Elem>) -> Result<Self, CalcError> {
        if g.len() != h.len() {
            return Err(CalcError::Arity { expected: g.len(), found: h.len() });
        }
        if group.product(g.iter().copied()) != group.id() {
            return Err(CalcError::ProductNotIdentity(g.len()));
        }
        Ok(Block { g, h })
    }

    /// The closed sphere `S_0`.
    pub fn closed() -> Self {
        Block { g: Vec::new(), h: Vec::new() }
    }

    /// Constructor for callers that maintain the product condition themselves.
    pub(crate) fn from_parts(g: Vec<Elem>, h: Vec<Elem>) -> Self {
        debug_assert_eq!(g.len(), h.len());
        Block { g, h }
    }

    pub fn arity(&self) -> usize {
        self.g.len()
    }

    pub fn g(&self) -> &[Elem] {
        &self.g
    }

    pub fn h(&self) -> &[Elem] {
        &self.h
    }

    /// Labels at 1-based slot `i`.
    pub fn slot(&self, i: usize) -> (Elem, Elem) {
        (self.g[i - 1], self.h[i - 1])
    }

    pub(crate) fn set_h(&mut self, i: usize, value: Elem) {
        self.h[i - 1] = value;
    }

    fn check_slot(&self, i: usize) -> Result<(), CalcError> {
        if i == 0 || i > self.arity() {
            Err(CalcError::SlotOutOfRange { slot: i, arity: self.arity() })
        } else {
            Ok(())
        }
    }

    /// Monodromy `h_i g_i⁻¹ h_i⁻¹` at 1-based slot `i`.
    pub fn monodromy(&self, group: &GroupTable, i: usize) -> Result<Elem, CalcError> {
        self.check_slot(i)?;
        Ok(self.monodromy_unchecked(group, i))
    }

    pub(crate) fn monodromy_unchecked(&self, group: &GroupTable, i: usize) -> Elem {
        let (g, h) = self.slot(i);
        group.conj(h, group.inv(g))
    }

    pub fn monodromies(&self, group: &GroupTable) -> Vec<Elem> {
        (1..=self.arity()).map(|i| self.monodromy_unchecked(group, i)).collect()
    }

    /// The block obtained by the isomorphism `φ_x`: `g ↦ x g x⁻¹`, `h ↦ h x⁻¹`.
    pub fn translate(&self, group: &GroupTable, x: Elem) -> Block {
        let xi = group.inv(x);
        Block {
            g: self.g.iter().map(|&g| group.conj(x, g)).collect(),
            h: self.h.iter().map(|&h| group.mul(h, xi)).collect(),
        }
    }

    /// Display form `S{n}(g1,...,gn; h1,...,hn)`.
    pub fn to_text(&self, group: &GroupTable) -> String {
        let fmt = |v: &[Elem]| v.iter().map(|&e| group.format_elem(e)).collect::<Vec<_>>().join(",");
        format!("S{}({}; {})", self.arity(), fmt(&self.g), fmt(&self.h))
    }

    /// Parse the display form back into a checked block.
    pub fn parse(group: &GroupTable, text: &str) -> Result<Block, CalcError> {
        let bad = |msg: &str| CalcError::Parse(format!("{msg} in block {text:?}"));
        let t = text.trim();
        let rest = t.strip_prefix('S').ok_or_else(|| bad("missing leading S"))?;
        let open = rest.find('(').ok_or_else(|| bad("missing '('"))?;
        let n: usize = rest[..open].trim().parse().map_err(|_| bad("bad arity"))?;
        let body = rest[open + 1..].strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
        let (gs, hs) = body.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let list = |s: &str| -> Result<Vec<Elem>, CalcError> {
            split_top_level(s)
                .into_iter()
                .filter(|p| !p.trim().is_empty())
                .map(|p| group.parse_elem(p).map_err(CalcError::from))
                .collect()
        };
        let g = list(gs)?;
        let h = list(hs)?;
        if g.len() != n || h.len() != n {
            return Err(bad("label count differs from arity"));
        }
        Block::new(group, g, h)
    }
}

/// Split on commas that are not inside brackets, so permutation names such
/// as `[2,1,3]` survive as single tokens.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// The unique `x` with `x g_i x⁻¹ = g'_i` and `h_i x⁻¹ = h'_i` for all `i`, if any.
///
/// When it exists it is forced by the first slot, `x = h'_1⁻¹ h_1`. Blocks of
/// arity zero carry no labels, so they are related by the identity.
pub fn find_iso(group: &GroupTable, a: &Block, b: &Block) -> Option<Elem> {
    if a.arity() != b.arity() {
        return None;
    }
    if a.arity() == 0 {
        return Some(group.id());
    }
    let x = group.mul(group.inv(b.h[0]), a.h[0]);
    if a.translate(group, x) == *b {
        Some(x)
    } else {
        None
    }
}

/// Whether slot `i` of `a` can be glued to slot `j` of `b`: the two
/// monodromies must be mutually inverse.
pub fn glue_admissible(group: &GroupTable, a: &Block, i: usize, b: &Block, j: usize) -> Result<bool, CalcError> {
    let ma = a.monodromy(group, i)?;
    let mb = b.monodromy(group, j)?;
    Ok(group.mul(ma, mb) == group.id())
}

/// Whether the cut between slot `i` of `a` and slot `j` of `b` can be erased:
/// inverse cut labels and equal marked lifts.
pub fn f_applicable(group: &GroupTable, a: &Block, i: usize, b: &Block, j: usize) -> Result<bool, CalcError> {
    a.check_slot(i)?;
    b.check_slot(j)?;
    let (ga, ha) = a.slot(i);
    let (gb, hb) = b.slot(j);
    Ok(group.mul(ga, gb) == group.id() && ha == hb)
}
