//! Target covers: the boundary monodromies a parameterization must reproduce.

use gcover_group::{Elem, GroupTable};

use crate::error::CalcError;

/// Boundary monodromies, grouped by connected component.
///
/// Boundaries are numbered globally from 1 in component order. Boundary 1
/// of each component is that component's reference boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetCover {
    components: Vec<Vec<Elem>>,
}

impl TargetCover {
    /// Checked constructor: every component must be realizable.
    pub fn new(group: &GroupTable, components: Vec<Vec<Elem>>) -> Result<Self, CalcError> {
        if components.is_empty() {
            return Err(CalcError::Unrealizable("target has no components".into()));
        }
        for (ci, comp) in components.iter().enumerate() {
            if first_realization(group, comp).is_none() {
                return Err(CalcError::Unrealizable(format!(
                    "component {} admits no lift labels with cut-label product 1",
                    ci + 1
                )));
            }
        }
        Ok(TargetCover { components })
    }

    /// Single-component target.
    pub fn single(group: &GroupTable, monodromies: Vec<Elem>) -> Result<Self, CalcError> {
        Self::new(group, vec![monodromies])
    }

    pub fn components(&self) -> &[Vec<Elem>] {
        &self.components
    }

    pub fn boundary_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    /// Monodromy at global 1-based boundary `a`.
    pub fn monodromy(&self, a: usize) -> Elem {
        let mut rest = a - 1;
        for comp in &self.components {
            if rest < comp.len() {
                return comp[rest];
            }
            rest -= comp.len();
        }
        panic!("boundary {a} out of range")
    }

    /// Global boundary numbers of each component, 1-based.
    pub fn component_boundaries(&self) -> Vec<Vec<usize>> {
        let mut next = 1;
        self.components
            .iter()
            .map(|c| {
                let v: Vec<usize> = (next..next + c.len()).collect();
                next += c.len();
                v
            })
            .collect()
    }

    /// Component index of global boundary `a`.
    pub fn component_of(&self, a: usize) -> usize {
        let mut rest = a - 1;
        for (ci, comp) in self.components.iter().enumerate() {
            if rest < comp.len() {
                return ci;
            }
            rest -= comp.len();
        }
        panic!("boundary {a} out of range")
    }

    pub fn to_text(&self, group: &GroupTable) -> String {
        self.components
            .iter()
            .map(|c| c.iter().map(|&m| group.format_elem(m)).collect::<Vec<_>>().join(","))
            .map(|s| format!("({s})"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Cut label forced at a boundary with monodromy `m` and lift `h`: `h⁻¹ m⁻¹ h`.
pub fn forced_cut_label(group: &GroupTable, m: Elem, h: Elem) -> Elem {
    group.conj(group.inv(h), group.inv(m))
}

/// The lexicographically first lift assignment (slot 1 most significant)
/// whose forced cut labels multiply to the identity.
pub fn first_realization(group: &GroupTable, monodromies: &[Elem]) -> Option<Vec<Elem>> {
    let n = monodromies.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let order = group.order();
    // odometer over G^n, last slot fastest
    let mut h = vec![0usize; n];
    loop {
        let prod = group.product((0..n).map(|i| forced_cut_label(group, monodromies[i], Elem::new(h[i]))));
        if prod == group.id() {
            return Some(h.into_iter().map(Elem::new).collect());
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            h[pos] += 1;
            if h[pos] < order {
                break;
            }
            h[pos] = 0;
        }
    }
}
