//! Finite groups stored as full Cayley tables.
//!
//! Elements are plain indices into the table, so labels are `Copy` and cheap
//! to hash. The product `mul(a, b)` reads "a then b": for permutations in
//! one-line notation, `mul(a, b)[i] = a[b[i]]`, which is what you get by
//! rearranging a list first by `a` and then by `b`.

mod spec;
mod table_file;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use spec::GroupSpec;
pub use table_file::parse_table_text;

/// Largest order for which associativity is checked on every triple.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 48;

/// Number of random triples used when the table is too large for the exhaustive check.
pub const SPOT_CHECK_TRIPLES: usize = 20_000;

/// Index of an element inside its [`GroupTable`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u16);

impl Elem {
    pub fn new(index: usize) -> Self {
        Elem(u16::try_from(index).expect("group order exceeds u16 range"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group parameter out of range: {0}")]
    BadParameter(String),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("table is not closed: entry ({a},{b}) = {value} exceeds order {order}")]
    NotClosed { a: usize, b: usize, value: usize, order: usize },
    #[error("table is not associative at ({a},{b},{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("cannot parse element {token:?}: {reason}")]
    BadElement { token: String, reason: String },
    #[error("element index {0} out of range")]
    OutOfRange(usize),
    #[error("cannot read group file: {0}")]
    Io(String),
}

/// How element names are written and read back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Notation {
    Cyclic,
    /// One-line permutation notation on `k` letters.
    Symmetric(usize),
    /// `r^a*s^b` with rotation count `k`.
    Dihedral(usize),
    /// Bare names taken from a table file.
    Named,
}

/// A validated finite group.
#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    id: Elem,
    names: Vec<String>,
    notation: Notation,
}

impl GroupTable {
    /// Build from a raw table (row `a`, column `b` holds the index of `a·b`).
    /// Group axioms are checked; see [`EXHAUSTIVE_AXIOM_LIMIT`].
    pub fn from_table(names: Vec<String>, rows: Vec<Vec<usize>>, notation: Notation) -> Result<Self, GroupError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupError::BadParameter("empty group".into()));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::BadParameter(format!("table must be {n}x{n}")));
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(GroupError::DuplicateName(name.clone()));
            }
        }
        let mut mul = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::NotClosed { a, b, value: v, order: n });
                }
                mul.push(Elem::new(v));
            }
        }
        let at = |a: usize, b: usize| mul[a * n + b].index();
        let id = (0..n).find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a)).ok_or(GroupError::NoIdentity)?;
        let mut inv = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n).find(|&b| at(a, b) == id && at(b, a) == id).ok_or(GroupError::NoInverse(a))?;
            inv.push(Elem::new(b));
        }
        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if n <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SPOT_CHECK_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }
        Ok(GroupTable { order: n, mul, inv, id: Elem::new(id), names, notation })
    }

    pub fn cyclic(k: usize) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::BadParameter("cyclic order must be at least 1".into()));
        }
        let names = (0..k).map(|i| i.to_string()).collect();
        let rows = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        Self::from_table(names, rows, Notation::Cyclic)
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self::cyclic(1).expect("order one is valid")
    }

    pub fn symmetric(k: usize) -> Result<Self, GroupError> {
        if !(1..=5).contains(&k) {
            return Err(GroupError::BadParameter(format!("symmetric degree {k} not in 1..=5")));
        }
        let perms = permutations(k);
        let index = |p: &[usize]| perms.iter().position(|q| q.as_slice() == p).expect("closed");
        let names = perms.iter().map(|p| format_perm(p)).collect();
        let rows = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c: Vec<usize> = (0..k).map(|i| a[b[i] - 1]).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(names, rows, Notation::Symmetric(k))
    }

    pub fn dihedral(k: usize) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::BadParameter("dihedral rotation count must be at least 1".into()));
        }
        // index = a + k*b  for  r^a s^b
        let n = 2 * k;
        let split = |i: usize| (i % k, i / k);
        let names = (0..n)
            .map(|i| {
                let (a, b) = split(i);
                format!("r^{a}*s^{b}")
            })
            .collect();
        let rows = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let (a, b) = split(x);
                        let (c, d) = split(y);
                        let rot = if b == 0 { (a + c) % k } else { (a + k - c) % k };
                        rot + k * ((b + d) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(names, rows, Notation::Dihedral(k))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn id(&self) -> Elem {
        self.id
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn notation(&self) -> &Notation {
        &self.notation
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a.index() * self.order + b.index()]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a.index()]
    }

    /// `x·a·x⁻¹`
    #[inline]
    pub fn conj(&self, x: Elem, a: Elem) -> Elem {
        self.mul(self.mul(x, a), self.inv(x))
    }

    /// Product of a sequence, left to right. Empty product is the identity.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.id, |acc, e| self.mul(acc, e))
    }

    /// Checked constructor from a raw index.
    pub fn elem(&self, index: usize) -> Result<Elem, GroupError> {
        if index < self.order {
            Ok(Elem::new(index))
        } else {
            Err(GroupError::OutOfRange(index))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order).map(Elem::new)
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a.index()]
    }

    pub fn format_elem(&self, a: Elem) -> String {
        self.names[a.index()].clone()
    }

    /// Read an element written in this group's notation.
    pub fn parse_elem(&self, text: &str) -> Result<Elem, GroupError> {
        let token = text.trim();
        let bad = |reason: &str| GroupError::BadElement { token: token.to_string(), reason: reason.to_string() };
        match &self.notation {
            Notation::Cyclic => {
                let v: usize = token.parse().map_err(|_| bad("expected a decimal integer"))?;
                if v >= self.order {
                    return Err(bad("integer not below the group order"));
                }
                Ok(Elem::new(v))
            }
            Notation::Symmetric(k) => {
                let inner = token
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| bad("expected [s1,...,sk]"))?;
                let mut perm = Vec::with_capacity(*k);
                for part in inner.split(',') {
                    let v: usize = part.trim().parse().map_err(|_| bad("non-integer entry"))?;
                    perm.push(v);
                }
                if perm.len() != *k {
                    return Err(bad("wrong number of entries"));
                }
                let name = format_perm(&perm);
                self.names.iter().position(|n| *n == name).map(Elem::new).ok_or_else(|| bad("not a permutation"))
            }
            Notation::Dihedral(k) => {
                let (r, s) = token.split_once('*').ok_or_else(|| bad("expected r^a*s^b"))?;
                let a: usize = r
                    .trim()
                    .strip_prefix("r^")
                    .ok_or_else(|| bad("expected r^a"))?
                    .parse()
                    .map_err(|_| bad("bad rotation exponent"))?;
                let b: usize = s
                    .trim()
                    .strip_prefix("s^")
                    .ok_or_else(|| bad("expected s^b"))?
                    .parse()
                    .map_err(|_| bad("bad reflection exponent"))?;
                if a >= *k || b > 1 {
                    return Err(bad("exponent out of range"));
                }
                Ok(Elem::new(a + k * b))
            }
            Notation::Named => {
                self.names.iter().position(|n| n == token).map(Elem::new).ok_or_else(|| bad("unknown element name"))
            }
        }
    }
}

impl fmt::Display for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.notation {
            Notation::Cyclic => write!(f, "cyclic:{}", self.order),
            Notation::Symmetric(k) => write!(f, "symmetric:{k}"),
            Notation::Dihedral(k) => write!(f, "dihedral:{k}"),
            Notation::Named => write!(f, "table(order {})", self.order),
        }
    }
}

fn format_perm(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// All permutations of `1..=k` in lexicographic order (identity first).
fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}
