//! Augmenting paths for matroid union covers.
//!
//! A cover state is a family of matroids over one common ground set together
//! with pairwise disjoint parts, part i independent in matroid i. One
//! augmentation step moves a chain of elements between parts so that exactly
//! one uncovered element becomes covered; when no chain exists, the set of
//! elements reachable in the exchange digraph certifies that the cover is
//! maximum.

use std::collections::{HashMap, VecDeque};

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::MatroidView;

/// Matroids M_0..M_{k-1} over a common ground set with disjoint parts
/// I_0..I_{k-1}, part i independent in matroid i.
#[derive(Clone)]
pub struct CoverState {
    matroids: Vec<MatroidView>,
    parts: Vec<ElementSet>,
}

impl CoverState {
    pub fn new(matroids: Vec<MatroidView>, parts: Vec<ElementSet>) -> Result<Self> {
        if matroids.is_empty() || matroids.len() != parts.len() {
            return Err(Error::InvalidCover(format!(
                "{} matroids vs {} parts",
                matroids.len(),
                parts.len()
            )));
        }
        let ground = matroids[0].ground();
        for m in &matroids[1..] {
            if m.ground() != ground {
                return Err(Error::InvalidCover(
                    "matroids disagree on the ground set".into(),
                ));
            }
        }
        for (i, part) in parts.iter().enumerate() {
            if !part.is_subset(ground) {
                return Err(Error::InvalidCover(format!(
                    "part {i} leaves the ground set"
                )));
            }
            if !matroids[i].is_independent(part)? {
                return Err(Error::InvalidCover(format!(
                    "part {i} = {part} is dependent in its matroid"
                )));
            }
            for other in &parts[..i] {
                if !part.is_disjoint(other) {
                    return Err(Error::InvalidCover(format!("part {i} overlaps {other}")));
                }
            }
        }
        Ok(CoverState { matroids, parts })
    }

    pub fn ground(&self) -> &ElementSet {
        self.matroids[0].ground()
    }

    pub fn matroids(&self) -> &[MatroidView] {
        &self.matroids
    }

    pub fn parts(&self) -> &[ElementSet] {
        &self.parts
    }

    pub fn covered(&self) -> ElementSet {
        self.parts
            .iter()
            .fold(ElementSet::new(), |acc, p| acc.union(p))
    }

    pub fn uncovered(&self) -> ElementSet {
        self.ground().difference(&self.covered())
    }
}

/// Outcome of one augmentation attempt.
#[derive(Clone, Debug)]
pub enum AugmentOutcome {
    /// Parts after the exchange chain; `element` is the newly covered one.
    Augmented {
        new_parts: Vec<ElementSet>,
        element: ElementId,
    },
    /// Everything reachable from the uncovered set. For every i, part i
    /// restricted to the blocker spans the blocker in matroid i.
    Blocked { blocker: ElementSet },
}

/// One breadth-first augmentation attempt from the uncovered set.
///
/// Nodes are ground elements. From a node y, for each part i with y outside
/// it: if part i + y is independent, y can enter directly and the search
/// stops; otherwise y could enter by ejecting any element of the fundamental
/// circuit of y in part i. Shortest chains only, ties broken by canonical
/// order, so replaying the chain keeps every part independent.
pub fn try_augment(state: &CoverState) -> Result<AugmentOutcome> {
    let uncovered = state.uncovered();
    if uncovered.is_empty() {
        return Err(Error::Precondition(
            "cover is already complete; nothing to augment".into(),
        ));
    }

    // parent[e] = (previous element, part it enters by ejecting e)
    let mut parent: HashMap<ElementId, (ElementId, usize)> = HashMap::new();
    let mut seen = uncovered.clone();
    let mut queue: VecDeque<ElementId> = uncovered.iter().cloned().collect();

    let addable_part = |y: &ElementId| -> Result<Option<usize>> {
        for (i, part) in state.parts.iter().enumerate() {
            if !part.contains(y) && state.matroids[i].is_independent(&part.with(y.clone()))? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    };

    while let Some(y) = queue.pop_front() {
        if let Some(part) = addable_part(&y)? {
            return apply_chain(state, &uncovered, &parent, y, part);
        }
        for (i, part_set) in state.parts.iter().enumerate() {
            if part_set.contains(&y) {
                continue;
            }
            // Dependent with y (the independent case was handled above), so
            // the fundamental circuit exists.
            let circuit = state.matroids[i].fundamental_circuit(&y, part_set)?;
            for x in circuit.without(&y).iter() {
                if seen.insert(x.clone()) {
                    parent.insert(x.clone(), (y.clone(), i));
                    queue.push_back(x.clone());
                }
            }
        }
    }

    // No augmenting chain: `seen` is the blocker. Verify its certificate
    // literally before handing it out.
    for (i, part) in state.parts.iter().enumerate() {
        let inside = part.intersection(&seen);
        for s in &seen {
            if !state.matroids[i].spans(&inside, s)? {
                return Err(Error::InvariantViolation(format!(
                    "blocker {seen} not spanned by part {i} ∩ blocker = {inside} at {s} \
                     (matroid {:?})",
                    state.matroids[i]
                )));
            }
        }
    }
    Ok(AugmentOutcome::Blocked { blocker: seen })
}

fn apply_chain(
    state: &CoverState,
    uncovered: &ElementSet,
    parent: &HashMap<ElementId, (ElementId, usize)>,
    terminal: ElementId,
    terminal_part: usize,
) -> Result<AugmentOutcome> {
    let mut new_parts = state.parts.to_vec();
    // Walk back from the terminal: each hop (prev -> cur via part i) means
    // prev enters part i and cur leaves it.
    new_parts[terminal_part].insert(terminal.clone());
    let mut cur = terminal;
    while let Some((prev, part)) = parent.get(&cur) {
        new_parts[*part].remove(&cur);
        new_parts[*part].insert(prev.clone());
        cur = prev.clone();
    }
    let entered = cur;

    // The chain started at an uncovered element and the whole move must keep
    // the state legal; check everything before returning.
    if !uncovered.contains(&entered) {
        return Err(Error::InvariantViolation(format!(
            "augmenting chain starts at covered element {entered}"
        )));
    }
    for (i, part) in new_parts.iter().enumerate() {
        if !state.matroids[i].is_independent(part)? {
            return Err(Error::InvariantViolation(format!(
                "augmentation made part {i} = {part} dependent"
            )));
        }
        for other in &new_parts[..i] {
            if !part.is_disjoint(other) {
                return Err(Error::InvariantViolation(format!(
                    "augmentation broke disjointness: {part} meets {other}"
                )));
            }
        }
    }
    let old_count: usize = state.parts.iter().map(ElementSet::len).sum();
    let new_count: usize = new_parts.iter().map(ElementSet::len).sum();
    if new_count != old_count + 1 {
        return Err(Error::InvariantViolation(format!(
            "augmentation changed covered count by {}",
            new_count as isize - old_count as isize
        )));
    }
    Ok(AugmentOutcome::Augmented {
        new_parts,
        element: entered,
    })
}

/// Augment until the cover is complete or blocked. Returns the final state
/// and, when blocked, the blocker certificate.
pub fn cover_or_block(mut state: CoverState) -> Result<(CoverState, Option<ElementSet>)> {
    loop {
        if state.uncovered().is_empty() {
            return Ok((state, None));
        }
        match try_augment(&state)? {
            AugmentOutcome::Augmented { new_parts, .. } => {
                state = CoverState {
                    matroids: state.matroids,
                    parts: new_parts,
                };
            }
            AugmentOutcome::Blocked { blocker } => {
                return Ok((state, Some(blocker)));
            }
        }
    }
}
