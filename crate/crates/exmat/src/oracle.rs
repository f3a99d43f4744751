//! Brute-force reference checks, deliberately naive.
//!
//! Everything in this module enumerates exhaustively and shares no logic
//! with the exchange algorithms, so it can sit on the other side of a
//! cross-check. Intended for small ground sets; sizes above 20 elements get
//! a warning in the report rather than an error.

use crate::element::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::MatroidView;

/// A witness that one of the independence axioms fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    EmptySetDependent,
    /// `set` is independent but `subset` (one element smaller) is not.
    DownwardClosureFails {
        set: ElementSet,
        subset: ElementSet,
    },
    /// `smaller` and `larger` are independent, |smaller| < |larger|, yet no
    /// element of `larger` extends `smaller`.
    ExchangeFails {
        smaller: ElementSet,
        larger: ElementSet,
    },
}

#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    /// Number of subsets examined.
    pub checked: usize,
    pub witnesses: Vec<AxiomViolation>,
    pub warnings: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Check the independence axioms by full enumeration: the empty set is
/// independent, independence is closed downward, and any smaller independent
/// set can be extended from any larger one.
pub fn check_axioms(m: &MatroidView) -> OracleReport {
    let mut report = OracleReport::default();
    if m.ground().len() > 20 {
        report.warnings.push(format!(
            "ground set has {} elements; exhaustive check will be slow",
            m.ground().len()
        ));
    }
    let subsets = m.ground().powerset();
    let independents: Vec<&ElementSet> = subsets
        .iter()
        .filter(|s| m.is_independent(s).unwrap())
        .collect();
    report.checked = subsets.len();

    if !m.is_independent(&ElementSet::new()).unwrap() {
        report.witnesses.push(AxiomViolation::EmptySetDependent);
    }
    for s in &independents {
        for x in s.iter() {
            let sub = s.without(x);
            if !m.is_independent(&sub).unwrap() {
                report.witnesses.push(AxiomViolation::DownwardClosureFails {
                    set: (*s).clone(),
                    subset: sub,
                });
            }
        }
    }
    for small in &independents {
        for large in &independents {
            if small.len() >= large.len() {
                continue;
            }
            let extends = large
                .difference(small)
                .iter()
                .any(|e| m.is_independent(&small.with(e.clone())).unwrap());
            if !extends {
                report.witnesses.push(AxiomViolation::ExchangeFails {
                    smaller: (*small).clone(),
                    larger: (*large).clone(),
                });
            }
        }
    }
    report
}

/// Every basis, by filtering the full powerset. Canonical order.
pub fn all_bases(m: &MatroidView) -> Vec<ElementSet> {
    m.ground()
        .powerset()
        .into_iter()
        .filter(|s| m.is_basis(s).unwrap())
        .collect()
}

/// Every Y ⊆ b1 for which both exchange sets are bases: (b0 ∖ x) ∪ Y and
/// (b1 ∖ Y) ∪ x. Canonical order.
pub fn exchange_search(
    m: &MatroidView,
    b0: &ElementSet,
    b1: &ElementSet,
    x: &ElementSet,
) -> Result<Vec<ElementSet>> {
    if !x.is_subset(b0) {
        return Err(Error::Precondition(format!("{x} is not a subset of {b0}")));
    }
    let b0_less_x = b0.difference(x);
    let mut out = Vec::new();
    for y in b1.powerset() {
        if m.is_basis(&b0_less_x.union(&y))? && m.is_basis(&b1.difference(&y).union(x))? {
            out.push(y);
        }
    }
    Ok(out)
}

/// Does a size-preserving bijection F between k-subsets of b0 and k-subsets
/// of b1 exist with (b0 ∖ I) ∪ F(I) a basis for every I? Decided by
/// bipartite matching over the full compatibility table.
pub fn bijection_search(
    m: &MatroidView,
    b0: &ElementSet,
    b1: &ElementSet,
    k: usize,
) -> Result<bool> {
    if !m.is_basis(b0)? {
        return Err(Error::NotABasis(b0.clone()));
    }
    if !m.is_basis(b1)? {
        return Err(Error::NotABasis(b1.clone()));
    }
    let lefts = b0.subsets_of_size(k);
    let rights = b1.subsets_of_size(k);
    if lefts.len() != rights.len() {
        return Ok(false);
    }
    let mut compatible = vec![Vec::new(); lefts.len()];
    for (i, l) in lefts.iter().enumerate() {
        let rest = b0.difference(l);
        for (j, r) in rights.iter().enumerate() {
            if m.is_basis(&rest.union(r))? {
                compatible[i].push(j);
            }
        }
    }
    // Classic augmenting-path matching.
    fn assign(
        i: usize,
        compatible: &[Vec<usize>],
        matched: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &j in &compatible[i] {
            if visited[j] {
                continue;
            }
            visited[j] = true;
            if matched[j].is_none()
                || assign(matched[j].unwrap(), compatible, matched, visited)
            {
                matched[j] = Some(i);
                return true;
            }
        }
        false
    }
    let mut matched = vec![None; rights.len()];
    for i in 0..lefts.len() {
        let mut visited = vec![false; rights.len()];
        if !assign(i, &compatible, &mut matched, &mut visited) {
            return Ok(false);
        }
    }
    Ok(true)
}
