//! Deciding triviality of a finitely presented group, as far as possible.

use num_bigint::BigInt;

use crate::presentation::{tietze, Presentation, TietzeStats};
use crate::snf::homology_invariants;
use crate::todd_coxeter::{enumerate_cosets, Enumeration};

pub const DEFAULT_COSET_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    ProvenTrivial,
    /// A nontrivial invariant was found: nonzero first homology, or a
    /// completed coset table with more than one coset.
    Nontrivial {
        h1: Vec<BigInt>,
        order: Option<usize>,
    },
    /// Abelianization vanishes but enumeration ran out of budget.
    Unknown {
        cosets_defined: usize,
    },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::ProvenTrivial => "ProvenTrivial",
            Verdict::Nontrivial { .. } => "Nontrivial",
            Verdict::Unknown { .. } => "Unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub verdict: Verdict,
    pub reduced: Presentation,
    pub stats: TietzeStats,
}

pub fn prove_trivial(p: &Presentation, coset_budget: usize) -> Analysis {
    let (reduced, stats) = tietze(p);
    let verdict = decide(&reduced, coset_budget);
    Analysis { verdict, reduced, stats }
}

fn decide(p: &Presentation, coset_budget: usize) -> Verdict {
    if p.generators == 0 {
        return Verdict::ProvenTrivial;
    }
    let h1 = homology_invariants(p);
    if !h1.is_empty() {
        return Verdict::Nontrivial { h1, order: None };
    }
    match enumerate_cosets(p, coset_budget) {
        Enumeration::Complete { index: 1, .. } => Verdict::ProvenTrivial,
        Enumeration::Complete { index, .. } => Verdict::Nontrivial { h1, order: Some(index) },
        Enumeration::BudgetExhausted { defined } => Verdict::Unknown { cosets_defined: defined },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_group_needs_enumeration() {
        // binary icosahedral group <s, t | (st)^2 = s^3 = t^5>, perfect of order 120
        let p = Presentation::new(2, vec![vec![1, 2, 1, 2, -1, -1, -1], vec![1, 1, 1, -2, -2, -2, -2, -2]]);
        let a = prove_trivial(&p, DEFAULT_COSET_BUDGET);
        assert_eq!(a.verdict, Verdict::Nontrivial { h1: vec![], order: Some(120) });
    }

    #[test]
    fn trivial_and_cyclic() {
        let triv = Presentation::new(2, vec![vec![1, 2, -1, -2, -2], vec![2, 1, -2, -1, -1]]);
        assert_eq!(prove_trivial(&triv, 1000).verdict, Verdict::ProvenTrivial);
        let z3 = Presentation::new(1, vec![vec![1, 1, 1]]);
        assert!(matches!(prove_trivial(&z3, 1000).verdict, Verdict::Nontrivial { .. }));
    }
}
