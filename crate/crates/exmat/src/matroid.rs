//! Matroids presented by an independence oracle, plus minors.
//!
//! Everything here works on finite ground sets presented through
//! [`IndependenceOracle`]. On finite instances the finitary and general
//! matroid axiom systems coincide, so there is a single code path.
//!
//! A [`MatroidView`] is an immutable window onto a base oracle together with
//! a stack of contractions and deletions. Independence in the minor M/C - D
//! is tested as independence of `s` together with a stored maximal
//! independent transversal of the contracted set C, so every query costs one
//! oracle call on the base matroid.

use std::fmt;
use std::sync::Arc;

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};

/// Independence oracle over a fixed finite ground set.
///
/// Callers only query subsets of `ground()`. Implementations are expected to
/// be pure: same set, same answer.
pub trait IndependenceOracle: Send + Sync {
    fn ground(&self) -> &ElementSet;
    fn is_independent(&self, set: &ElementSet) -> bool;
}

/// One step of minor formation, kept for diagnostics.
#[derive(Clone, Debug)]
pub struct MinorStep {
    pub contracted: ElementSet,
    pub deleted: ElementSet,
}

/// An immutable view of a matroid, possibly a minor of the base oracle.
///
/// Cloning is cheap; the oracle is shared. All operations are pure: minors
/// return fresh views and never mutate the parent.
#[derive(Clone)]
pub struct MatroidView {
    oracle: Arc<dyn IndependenceOracle>,
    ground: ElementSet,
    /// Maximal independent transversal of everything contracted so far,
    /// independent in the base matroid by construction.
    transversal: ElementSet,
    minor_stack: Vec<MinorStep>,
}

impl MatroidView {
    pub fn from_oracle(oracle: Arc<dyn IndependenceOracle>) -> Self {
        let ground = oracle.ground().clone();
        MatroidView {
            oracle,
            ground,
            transversal: ElementSet::new(),
            minor_stack: Vec::new(),
        }
    }

    pub fn ground(&self) -> &ElementSet {
        &self.ground
    }

    pub fn minor_stack(&self) -> &[MinorStep] {
        &self.minor_stack
    }

    fn check_in_ground(&self, s: &ElementSet) -> Result<()> {
        if s.is_subset(&self.ground) {
            Ok(())
        } else {
            Err(Error::NotInGroundSet(s.difference(&self.ground)))
        }
    }

    /// Is `s` independent in this view?
    pub fn is_independent(&self, s: &ElementSet) -> Result<bool> {
        self.check_in_ground(s)?;
        Ok(self.query(s))
    }

    /// Raw query; `s` must already be inside the view's ground set.
    fn query(&self, s: &ElementSet) -> bool {
        if self.transversal.is_empty() {
            self.oracle.is_independent(s)
        } else {
            self.oracle.is_independent(&s.union(&self.transversal))
        }
    }

    /// Is `s` a maximal independent set? Checked definitionally: independent
    /// and not extendable by any single element of the ground set.
    pub fn is_basis(&self, s: &ElementSet) -> Result<bool> {
        self.check_in_ground(s)?;
        if !self.query(s) {
            return Ok(false);
        }
        for e in &self.ground {
            if !s.contains(e) && self.query(&s.with(e.clone())) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Greedily extend the independent set `i` inside `i ∪ pool`, scanning
    /// `pool` in canonical order. Returns a maximal independent subset of
    /// `i ∪ pool` containing `i`.
    pub fn extend_to_basis(&self, i: &ElementSet, pool: &ElementSet) -> Result<ElementSet> {
        self.check_in_ground(i)?;
        self.check_in_ground(pool)?;
        if !self.query(i) {
            return Err(Error::DependentInput(i.clone()));
        }
        let mut result = i.clone();
        for e in pool {
            if !result.contains(e) && self.query(&result.with(e.clone())) {
                result.insert(e.clone());
            }
        }
        Ok(result)
    }

    /// Rank of the view, computed fresh by a greedy pass over the ground set.
    pub fn rank(&self) -> usize {
        let mut acc = ElementSet::new();
        for e in &self.ground {
            if self.query(&acc.with(e.clone())) {
                acc.insert(e.clone());
            }
        }
        acc.len()
    }

    /// The unique circuit inside `i + e`, where `i` is independent and
    /// `i + e` is dependent. Found by deleting elements of `i` one at a time
    /// and keeping each deletion that preserves dependence.
    pub fn fundamental_circuit(&self, e: &ElementId, i: &ElementSet) -> Result<ElementSet> {
        if !self.ground.contains(e) {
            return Err(Error::NotInGround(e.clone()));
        }
        self.check_in_ground(i)?;
        if i.contains(e) {
            return Err(Error::Precondition(format!("element {e} already in {i}")));
        }
        if !self.query(i) {
            return Err(Error::DependentInput(i.clone()));
        }
        let with_e = i.with(e.clone());
        if self.query(&with_e) {
            return Err(Error::NoCircuit {
                set: i.clone(),
                element: e.clone(),
            });
        }
        let mut circuit = with_e;
        for x in i {
            let smaller = circuit.without(x);
            if !self.query(&smaller) {
                circuit = smaller;
            }
        }
        Ok(circuit)
    }

    /// Does `x` span `e` in this view, i.e. is `e ∈ x` or `{e}` dependent in
    /// the contraction by `x`?
    pub fn spans(&self, x: &ElementSet, e: &ElementId) -> Result<bool> {
        self.check_in_ground(x)?;
        if !self.ground.contains(e) {
            return Err(Error::NotInGround(e.clone()));
        }
        if x.contains(e) {
            return Ok(true);
        }
        let t = self.max_independent_subset(x);
        Ok(!self.query(&t.with(e.clone())))
    }

    /// Maximal independent subset of `x`, greedy in canonical order.
    fn max_independent_subset(&self, x: &ElementSet) -> ElementSet {
        let mut t = ElementSet::new();
        for e in x {
            if self.query(&t.with(e.clone())) {
                t.insert(e.clone());
            }
        }
        t
    }

    /// Contract `x`: remove it from the ground set and make independence
    /// relative to it. `x` may be dependent; a maximal independent
    /// transversal of `x` is chosen greedily in canonical order and stored.
    pub fn contract(&self, x: &ElementSet) -> Result<MatroidView> {
        if !x.is_subset(&self.ground) {
            // Elements outside the current ground set were already removed
            // by an earlier minor step (or never existed).
            return Err(Error::NotInGroundSet(x.difference(&self.ground)));
        }
        let t = self.max_independent_subset(x);
        let mut next = self.clone();
        next.ground = self.ground.difference(x);
        next.transversal = self.transversal.union(&t);
        next.minor_stack.push(MinorStep {
            contracted: x.clone(),
            deleted: ElementSet::new(),
        });
        Ok(next)
    }

    /// Restrict the view to `x`.
    pub fn restrict(&self, x: &ElementSet) -> Result<MatroidView> {
        if !x.is_subset(&self.ground) {
            return Err(Error::NotInGroundSet(x.difference(&self.ground)));
        }
        let mut next = self.clone();
        next.ground = x.clone();
        next.minor_stack.push(MinorStep {
            contracted: ElementSet::new(),
            deleted: self.ground.difference(x),
        });
        Ok(next)
    }

    /// Delete `x`, i.e. restrict to the complement of `x`.
    pub fn delete(&self, x: &ElementSet) -> Result<MatroidView> {
        if !x.is_subset(&self.ground) {
            return Err(Error::NotInGroundSet(x.difference(&self.ground)));
        }
        self.restrict(&self.ground.difference(x))
    }
}

impl fmt::Debug for MatroidView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatroidView {{ ground: {}", self.ground)?;
        if !self.minor_stack.is_empty() {
            write!(f, ", minors: [")?;
            for (i, step) in self.minor_stack.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "/{} - {}", step.contracted, step.deleted)?;
            }
            write!(f, "]")?;
        }
        write!(f, " }}")
    }
}

/// A certified basis of a specific view: construction checks maximality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    elements: ElementSet,
}

impl Basis {
    pub fn certify(m: &MatroidView, elements: ElementSet) -> Result<Basis> {
        if !m.is_basis(&elements)? {
            return Err(Error::NotABasis(elements));
        }
        Ok(Basis { elements })
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn into_elements(self) -> ElementSet {
        self.elements
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.elements, f)
    }
}
