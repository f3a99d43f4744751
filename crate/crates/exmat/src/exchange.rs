//! Symmetric subset exchange between bases, partition exchange, and serial
//! exchange orders.
//!
//! Given bases B0, B1 and X ⊆ B0, symmetric exchange produces Y ⊆ B1 such
//! that both (B0 ∖ X) ∪ Y and (B1 ∖ Y) ∪ X are bases. The subset version is
//! lifted to partitions of B0 by working in contractions: after exchanging a
//! class, the class is contracted away and the remainders of both bases stay
//! bases of the minor, so the step can repeat. Running the partition driver
//! on singleton classes in canonical order yields a serial exchange order.
//!
//! Every certificate is validated eagerly against the original matroid; a
//! failed validation is an internal error, never silent.

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{Basis, MatroidView};
use crate::union::{cover_or_block, CoverState};

/// Outcome of a symmetric subset exchange: both exchanged sets, re-checkable
/// against the matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricExchangeCertificate {
    pub x: ElementSet,
    pub y: ElementSet,
    /// (B0 ∖ X) ∪ Y
    pub base_a: ElementSet,
    /// (B1 ∖ Y) ∪ X
    pub base_b: ElementSet,
}

impl SymmetricExchangeCertificate {
    /// Re-check the certificate from scratch.
    pub fn validate(&self, m: &MatroidView, b0: &ElementSet, b1: &ElementSet) -> Result<()> {
        if !self.x.is_subset(b0) {
            return Err(Error::InvariantViolation(format!(
                "X = {} leaves B0 = {b0}",
                self.x
            )));
        }
        if !self.y.is_subset(b1) {
            return Err(Error::InvariantViolation(format!(
                "Y = {} leaves B1 = {b1}",
                self.y
            )));
        }
        if self.base_a != b0.difference(&self.x).union(&self.y) {
            return Err(Error::InvariantViolation(format!(
                "base_a = {} is not (B0 ∖ X) ∪ Y",
                self.base_a
            )));
        }
        if self.base_b != b1.difference(&self.y).union(&self.x) {
            return Err(Error::InvariantViolation(format!(
                "base_b = {} is not (B1 ∖ Y) ∪ X",
                self.base_b
            )));
        }
        if self.y.difference(b0).len() != self.x.difference(b1).len() {
            return Err(Error::InvariantViolation(format!(
                "|Y ∖ B0| = {} but |X ∖ B1| = {}",
                self.y.difference(b0).len(),
                self.x.difference(b1).len()
            )));
        }
        for (name, set) in [("(B0 ∖ X) ∪ Y", &self.base_a), ("(B1 ∖ Y) ∪ X", &self.base_b)] {
            if !m.is_basis(set)? {
                return Err(Error::InvariantViolation(format!(
                    "{name} = {set} is not a basis of {m:?}"
                )));
            }
        }
        Ok(())
    }
}

/// Exchange X ⊆ B0 against a subset of B1.
///
/// Works in the contraction by B0 ∩ B1, where the bases are disjoint: a
/// two-matroid cover over B1 there splits it into Y (independent over the
/// kept part of B0) and Z (independent over X), the cover always completes,
/// and Y comes back out with the common elements of X added in.
pub fn symmetric_exchange(
    m: &MatroidView,
    b0: &Basis,
    b1: &Basis,
    x: &ElementSet,
) -> Result<SymmetricExchangeCertificate> {
    let b0s = b0.elements();
    let b1s = b1.elements();
    if !x.is_subset(b0s) {
        return Err(Error::Precondition(format!(
            "X = {x} is not a subset of B0 = {b0s}"
        )));
    }

    let common = b0s.intersection(b1s);
    let reduced = if common.is_empty() {
        m.clone()
    } else {
        m.contract(&common)?
    };
    let b0r = b0s.difference(&common);
    let b1r = b1s.difference(&common);
    let xr = x.difference(&common);

    // Split B1' into Y ∪ Z with (B0' ∖ X') ∪ Y and X' ∪ Z independent. The
    // Y-side matroid comes first so augmentation fills Y in canonical order.
    let m_y = reduced.contract(&b0r.difference(&xr))?.restrict(&b1r)?;
    let m_z = reduced.contract(&xr)?.restrict(&b1r)?;
    let state = CoverState::new(
        vec![m_y, m_z],
        vec![ElementSet::new(), ElementSet::new()],
    )?;
    let (state, blocked) = cover_or_block(state)?;
    if let Some(blocker) = blocked {
        return Err(Error::InvariantViolation(format!(
            "cover of B1' = {b1r} blocked at {blocker} for X' = {xr}; \
             two bases must always admit a full split"
        )));
    }

    let mut y = state.parts()[0].clone();
    let z = state.parts()[1].clone();
    if y.len() > xr.len() {
        return Err(Error::InvariantViolation(format!(
            "|Y| = {} exceeds |X'| = {}",
            y.len(),
            xr.len()
        )));
    }
    // Top Y up from Z until |Y| = |X'|; on finite instances the counting
    // already forces it, so this loop is a checked no-op in practice.
    if y.len() < xr.len() {
        let anchor = b0r.difference(&xr);
        let mut pool = z;
        while y.len() < xr.len() {
            let candidate = pool
                .iter()
                .find(|e| {
                    reduced
                        .is_independent(&anchor.union(&y).with((*e).clone()))
                        .unwrap_or(false)
                })
                .cloned();
            match candidate {
                Some(e) => {
                    pool.remove(&e);
                    y.insert(e);
                }
                None => {
                    return Err(Error::InvariantViolation(format!(
                        "cannot rebalance Y = {y} up to |X'| = {}",
                        xr.len()
                    )))
                }
            }
        }
    }

    let y_full = y.union(&common.intersection(x));
    let cert = SymmetricExchangeCertificate {
        x: x.clone(),
        base_a: b0s.difference(x).union(&y_full),
        base_b: b1s.difference(&y_full).union(x),
        y: y_full,
    };
    cert.validate(m, b0s, b1s)?;
    Ok(cert)
}

/// Exchange everything outside `x`: run the direct exchange on B0 ∖ X and
/// complement the answer. The two bases in the certificate swap roles.
pub fn symmetric_exchange_cofinite(
    m: &MatroidView,
    b0: &Basis,
    b1: &Basis,
    x: &ElementSet,
) -> Result<SymmetricExchangeCertificate> {
    let b0s = b0.elements();
    let b1s = b1.elements();
    if !x.is_subset(b0s) {
        return Err(Error::Precondition(format!(
            "X = {x} is not a subset of B0 = {b0s}"
        )));
    }
    let inner = symmetric_exchange(m, b0, b1, &b0s.difference(x))?;
    let cert = SymmetricExchangeCertificate {
        x: x.clone(),
        y: b1s.difference(&inner.y),
        base_a: inner.base_b,
        base_b: inner.base_a,
    };
    cert.validate(m, b0s, b1s)?;
    Ok(cert)
}

/// One class of a partition handed to the exchange driver. `Unbounded` marks
/// the single class allowed to be arbitrarily large; it must come last and
/// receives whatever remains of B1 instead of running the exchange
/// subroutine.
#[derive(Clone, Debug)]
pub enum ExchangeClass {
    Finite(ElementSet),
    Unbounded(ElementSet),
}

impl ExchangeClass {
    pub fn elements(&self) -> &ElementSet {
        match self {
            ExchangeClass::Finite(s) | ExchangeClass::Unbounded(s) => s,
        }
    }
}

/// Result of a partition exchange: per-class pairs (X_i, Y_i) with the
/// identity index assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionExchangePlan {
    pub pairs: Vec<(ElementSet, ElementSet)>,
    /// Index assignment between X-classes and Y-classes. The sequential
    /// driver always produces the identity.
    pub sigma: Vec<usize>,
}

impl PartitionExchangePlan {
    /// Re-check the whole plan: the X_i partition B0, the Y_i partition B1,
    /// every per-index set (B0 ∖ X_i) ∪ Y_i is a basis, and every tail set
    /// (X_0 ∪ … ∪ X_{i-1}) ∪ (Y_i ∪ Y_{i+1} ∪ …) is a basis.
    pub fn validate(&self, m: &MatroidView, b0: &ElementSet, b1: &ElementSet) -> Result<()> {
        if self.sigma.len() != self.pairs.len()
            || self.sigma.iter().enumerate().any(|(i, &s)| i != s)
        {
            return Err(Error::InvariantViolation(
                "plan sigma is not the identity".into(),
            ));
        }
        check_partition(self.pairs.iter().map(|(x, _)| x), b0, "X")?;
        check_partition(self.pairs.iter().map(|(_, y)| y), b1, "Y")?;
        for (i, (x, y)) in self.pairs.iter().enumerate() {
            let per_index = b0.difference(x).union(y);
            if !m.is_basis(&per_index)? {
                return Err(Error::InvariantViolation(format!(
                    "(B0 ∖ X_{i}) ∪ Y_{i} = {per_index} is not a basis"
                )));
            }
            if y.difference(b0).len() != x.difference(b1).len() {
                return Err(Error::InvariantViolation(format!(
                    "|Y_{i} ∖ B0| ≠ |X_{i} ∖ B1|"
                )));
            }
        }
        for i in 0..=self.pairs.len() {
            let mut tail = ElementSet::new();
            for (x, _) in &self.pairs[..i] {
                tail = tail.union(x);
            }
            for (_, y) in &self.pairs[i..] {
                tail = tail.union(y);
            }
            if !m.is_basis(&tail)? {
                return Err(Error::InvariantViolation(format!(
                    "tail set at index {i} = {tail} is not a basis"
                )));
            }
        }
        Ok(())
    }
}

fn check_partition<'a>(
    classes: impl Iterator<Item = &'a ElementSet>,
    whole: &ElementSet,
    name: &str,
) -> Result<()> {
    let mut seen = ElementSet::new();
    for class in classes {
        if !seen.is_disjoint(class) {
            return Err(Error::NotAPartition(format!(
                "{name}-classes overlap at {}",
                seen.intersection(class)
            )));
        }
        seen = seen.union(class);
    }
    if &seen != whole {
        return Err(Error::NotAPartition(format!(
            "{name}-classes cover {seen}, expected {whole}"
        )));
    }
    Ok(())
}

/// Incremental partition exchange: consumes classes one at a time and yields
/// the matching (X_i, Y_i) pairs. After each step the consumed prefix
/// satisfies the exchange invariant, which [`Self::check_prefix_invariant`]
/// re-verifies on demand.
pub struct StreamingPartitionExchange<I: Iterator<Item = ElementSet>> {
    classes: I,
    original: MatroidView,
    b1: ElementSet,
    view: MatroidView,
    rem_b0: ElementSet,
    rem_b1: ElementSet,
    consumed_x: ElementSet,
    consumed_y: ElementSet,
    failed: bool,
}

impl<I: Iterator<Item = ElementSet>> StreamingPartitionExchange<I> {
    /// Consumed prefix so far, as (X-union, Y-union).
    pub fn consumed(&self) -> (&ElementSet, &ElementSet) {
        (&self.consumed_x, &self.consumed_y)
    }

    /// The prefix invariant: consumed X plus the rest of B1 is a basis of
    /// the original matroid.
    pub fn check_prefix_invariant(&self) -> Result<()> {
        let set = self.consumed_x.union(&self.b1.difference(&self.consumed_y));
        if !self.original.is_basis(&set)? {
            return Err(Error::InvariantViolation(format!(
                "prefix invariant fails: {set} is not a basis"
            )));
        }
        Ok(())
    }

    fn step(&mut self, class: ElementSet) -> Result<(ElementSet, ElementSet)> {
        if !class.is_subset(&self.rem_b0) {
            return Err(Error::NotAPartition(format!(
                "class {class} is not inside the remaining B0 = {}",
                self.rem_b0
            )));
        }
        let cur_b0 = Basis::certify(&self.view, self.rem_b0.clone())?;
        let cur_b1 = Basis::certify(&self.view, self.rem_b1.clone())?;
        let cert = symmetric_exchange(&self.view, &cur_b0, &cur_b1, &class)?;
        let y = cert.y;
        self.view = self.view.contract(&class)?;
        self.rem_b0 = self.rem_b0.difference(&class);
        self.rem_b1 = self.rem_b1.difference(&y);
        self.consumed_x = self.consumed_x.union(&class);
        self.consumed_y = self.consumed_y.union(&y);
        self.check_prefix_invariant()?;
        Ok((class, y))
    }
}

impl<I: Iterator<Item = ElementSet>> Iterator for StreamingPartitionExchange<I> {
    type Item = Result<(ElementSet, ElementSet)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let class = self.classes.next()?;
        match self.step(class) {
            Ok(pair) => Some(Ok(pair)),
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

/// Lazily exchange a stream of classes. The stream is trusted to partition
/// B0 eventually; each class is checked against the remaining part of B0
/// when it arrives.
pub fn streaming_partition_exchange<I>(
    m: &MatroidView,
    b0: &Basis,
    b1: &Basis,
    classes: I,
) -> StreamingPartitionExchange<I::IntoIter>
where
    I: IntoIterator<Item = ElementSet>,
{
    StreamingPartitionExchange {
        classes: classes.into_iter(),
        original: m.clone(),
        b1: b1.elements().clone(),
        view: m.clone(),
        rem_b0: b0.elements().clone(),
        rem_b1: b1.elements().clone(),
        consumed_x: ElementSet::new(),
        consumed_y: ElementSet::new(),
        failed: false,
    }
}

/// Exchange a whole partition of B0 at once. Drives the streaming core and
/// validates the finished plan.
pub fn partition_exchange(
    m: &MatroidView,
    b0: &Basis,
    b1: &Basis,
    classes: &[ElementSet],
) -> Result<PartitionExchangePlan> {
    check_partition(classes.iter(), b0.elements(), "X")?;
    let pairs: Vec<(ElementSet, ElementSet)> =
        streaming_partition_exchange(m, b0, b1, classes.iter().cloned())
            .collect::<Result<_>>()?;
    let plan = PartitionExchangePlan {
        sigma: (0..pairs.len()).collect(),
        pairs,
    };
    plan.validate(m, b0.elements(), b1.elements())?;
    Ok(plan)
}

/// Partition exchange where at most one class, placed last, is unbounded:
/// the bounded prefix runs through the driver and the last class absorbs the
/// remainder of B1.
pub fn partition_exchange_one_infinite(
    m: &MatroidView,
    b0: &Basis,
    b1: &Basis,
    classes: &[ExchangeClass],
) -> Result<PartitionExchangePlan> {
    let unbounded = classes
        .iter()
        .filter(|c| matches!(c, ExchangeClass::Unbounded(_)))
        .count();
    if unbounded > 1 {
        return Err(Error::Precondition(format!(
            "{unbounded} unbounded classes; at most one is allowed"
        )));
    }
    if unbounded == 1 && !matches!(classes.last(), Some(ExchangeClass::Unbounded(_))) {
        return Err(Error::Precondition(
            "the unbounded class must come last".into(),
        ));
    }
    check_partition(
        classes.iter().map(ExchangeClass::elements),
        b0.elements(),
        "X",
    )?;
    if unbounded == 0 {
        let sets: Vec<ElementSet> = classes.iter().map(|c| c.elements().clone()).collect();
        return partition_exchange(m, b0, b1, &sets);
    }

    let bounded: Vec<ElementSet> = classes[..classes.len() - 1]
        .iter()
        .map(|c| c.elements().clone())
        .collect();
    let mut stream = streaming_partition_exchange(m, b0, b1, bounded);
    let mut pairs: Vec<(ElementSet, ElementSet)> =
        stream.by_ref().collect::<Result<_>>()?;
    let (_, consumed_y) = stream.consumed();
    let last_x = classes.last().unwrap().elements().clone();
    let last_y = b1.elements().difference(consumed_y);
    pairs.push((last_x, last_y));
    let plan = PartitionExchangePlan {
        sigma: (0..pairs.len()).collect(),
        pairs,
    };
    plan.validate(m, b0.elements(), b1.elements())?;
    Ok(plan)
}

/// Enumerations of B0 and B1 exchanging one element at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerialOrder {
    e_seq: Vec<ElementId>,
    f_seq: Vec<ElementId>,
}

impl SerialOrder {
    pub fn len(&self) -> usize {
        self.e_seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e_seq.is_empty()
    }

    pub fn e_seq(&self) -> &[ElementId] {
        &self.e_seq
    }

    pub fn f_seq(&self) -> &[ElementId] {
        &self.f_seq
    }

    /// Check both certificate families: every single swap B0 - e_a + f_a is
    /// a basis, and every tail (B0 ∖ {e_b : b >= a}) ∪ {f_b : b >= a} is a
    /// basis.
    pub fn validate(&self, m: &MatroidView, b0: &ElementSet, b1: &ElementSet) -> Result<()> {
        if self.e_seq.len() != self.f_seq.len() {
            return Err(Error::InvariantViolation(
                "serial order sequences differ in length".into(),
            ));
        }
        let e_set: ElementSet = self.e_seq.iter().cloned().collect();
        let f_set: ElementSet = self.f_seq.iter().cloned().collect();
        if e_set != *b0 || e_set.len() != self.e_seq.len() {
            return Err(Error::InvariantViolation(format!(
                "e-sequence does not enumerate B0 = {b0}"
            )));
        }
        if f_set != *b1 || f_set.len() != self.f_seq.len() {
            return Err(Error::InvariantViolation(format!(
                "f-sequence does not enumerate B1 = {b1}"
            )));
        }
        for (a, (e, f)) in self.e_seq.iter().zip(&self.f_seq).enumerate() {
            let swap = b0.without(e).with(f.clone());
            if !m.is_basis(&swap)? {
                return Err(Error::InvariantViolation(format!(
                    "B0 - e_{a} + f_{a} = {swap} is not a basis"
                )));
            }
        }
        for a in 0..=self.e_seq.len() {
            let mut tail = b0.clone();
            for e in &self.e_seq[a..] {
                tail.remove(e);
            }
            for f in &self.f_seq[a..] {
                tail.insert(f.clone());
            }
            if !m.is_basis(&tail)? {
                return Err(Error::InvariantViolation(format!(
                    "serial tail at {a} = {tail} is not a basis"
                )));
            }
        }
        Ok(())
    }
}

/// Serial exchange order for a pair of bases: the partition driver on
/// singleton classes of B0 in canonical order.
pub fn serial_exchange_order(m: &MatroidView, b0: &Basis, b1: &Basis) -> Result<SerialOrder> {
    let classes: Vec<ElementSet> = b0
        .elements()
        .iter()
        .map(|e| ElementSet::singleton(e.clone()))
        .collect();
    let plan = partition_exchange(m, b0, b1, &classes)?;
    let mut e_seq = Vec::with_capacity(plan.pairs.len());
    let mut f_seq = Vec::with_capacity(plan.pairs.len());
    for (x, y) in &plan.pairs {
        let (Some(e), Some(f), 1, 1) = (x.first(), y.first(), x.len(), y.len()) else {
            return Err(Error::InvariantViolation(format!(
                "singleton classes produced a non-singleton pair ({x}, {y})"
            )));
        };
        e_seq.push(e.clone());
        f_seq.push(f.clone());
    }
    let order = SerialOrder { e_seq, f_seq };
    order.validate(m, b0.elements(), b1.elements())?;
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{graphic_matroid, uniform, MultiGraph};
    use crate::oracle::exchange_search;

    fn k4() -> MatroidView {
        graphic_matroid(&MultiGraph::complete(4).unwrap())
    }

    fn k4_bases(m: &MatroidView) -> (Basis, Basis) {
        let b0 = Basis::certify(m, ElementSet::of(["12", "23", "34"])).unwrap();
        let b1 = Basis::certify(m, ElementSet::of(["13", "24", "14"])).unwrap();
        (b0, b1)
    }

    fn u24() -> (MatroidView, Basis, Basis) {
        let m = uniform(2, ElementSet::of(["a", "b", "c", "d"])).unwrap();
        let b0 = Basis::certify(&m, ElementSet::of(["a", "b"])).unwrap();
        let b1 = Basis::certify(&m, ElementSet::of(["c", "d"])).unwrap();
        (m, b0, b1)
    }

    #[test]
    fn k4_pinned_exchange() {
        let m = k4();
        let (b0, b1) = k4_bases(&m);
        let cert = symmetric_exchange(&m, &b0, &b1, &ElementSet::of(["12", "23"])).unwrap();
        assert_eq!(cert.y, ElementSet::of(["13", "24"]));
        assert_eq!(cert.base_a, ElementSet::of(["34", "13", "24"]));
        assert_eq!(cert.base_b, ElementSet::of(["14", "12", "23"]));
        let found = exchange_search(&m, b0.elements(), b1.elements(), &cert.x).unwrap();
        assert!(found.contains(&cert.y));
    }

    #[test]
    fn uniform_takes_first_in_canonical_order() {
        let (m, b0, b1) = u24();
        let cert = symmetric_exchange(&m, &b0, &b1, &ElementSet::of(["a"])).unwrap();
        assert_eq!(cert.y, ElementSet::of(["c"]));
    }

    #[test]
    fn empty_x_empty_y() {
        let (m, b0, b1) = u24();
        let cert = symmetric_exchange(&m, &b0, &b1, &ElementSet::new()).unwrap();
        assert!(cert.y.is_empty());
        assert_eq!(cert.base_a, *b0.elements());
        assert_eq!(cert.base_b, *b1.elements());
    }

    #[test]
    fn full_x_swaps_everything() {
        let (m, b0, b1) = u24();
        let cert = symmetric_exchange(&m, &b0, &b1, &ElementSet::of(["a", "b"])).unwrap();
        assert_eq!(cert.y, ElementSet::of(["c", "d"]));
    }

    #[test]
    fn identical_bases_exchange_identically() {
        let m = k4();
        let b = Basis::certify(&m, ElementSet::of(["12", "23", "34"])).unwrap();
        let x = ElementSet::of(["23"]);
        let cert = symmetric_exchange(&m, &b, &b, &x).unwrap();
        assert_eq!(cert.y, x);
    }

    #[test]
    fn overlapping_bases_reuse_common_elements() {
        let m = uniform(2, ElementSet::of(["a", "b", "c"])).unwrap();
        let b0 = Basis::certify(&m, ElementSet::of(["a", "b"])).unwrap();
        let b1 = Basis::certify(&m, ElementSet::of(["b", "c"])).unwrap();
        let cert = symmetric_exchange(&m, &b0, &b1, &ElementSet::of(["a"])).unwrap();
        assert_eq!(cert.y, ElementSet::of(["c"]));
        let cert = symmetric_exchange(&m, &b0, &b1, &ElementSet::of(["b"])).unwrap();
        assert_eq!(cert.y, ElementSet::of(["b"]));
    }

    #[test]
    fn x_outside_b0_is_rejected() {
        let (m, b0, b1) = u24();
        assert!(matches!(
            symmetric_exchange(&m, &b0, &b1, &ElementSet::of(["c"])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cofinite_complements_the_direct_call() {
        let (m, b0, b1) = u24();
        let cert = symmetric_exchange_cofinite(&m, &b0, &b1, &ElementSet::of(["a", "b"])).unwrap();
        assert_eq!(cert.y, ElementSet::of(["c", "d"]));

        let m = k4();
        let (b0, b1) = k4_bases(&m);
        let x = ElementSet::of(["34"]);
        let via_cofinite = symmetric_exchange_cofinite(&m, &b0, &b1, &x).unwrap();
        let direct = symmetric_exchange(&m, &b0, &b1, &x).unwrap();
        via_cofinite.validate(&m, b0.elements(), b1.elements()).unwrap();
        direct.validate(&m, b0.elements(), b1.elements()).unwrap();
        let valid = exchange_search(&m, b0.elements(), b1.elements(), &x).unwrap();
        assert!(valid.contains(&via_cofinite.y));
        assert!(valid.contains(&direct.y));
    }

    #[test]
    fn partition_uniform_singletons() {
        let (m, b0, b1) = u24();
        let plan = partition_exchange(
            &m,
            &b0,
            &b1,
            &[ElementSet::of(["a"]), ElementSet::of(["b"])],
        )
        .unwrap();
        assert_eq!(
            plan.pairs,
            vec![
                (ElementSet::of(["a"]), ElementSet::of(["c"])),
                (ElementSet::of(["b"]), ElementSet::of(["d"])),
            ]
        );
    }

    #[test]
    fn partition_k4_singletons_matches_exhaustive_search() {
        let m = k4();
        let (b0, b1) = k4_bases(&m);
        let classes: Vec<ElementSet> = ["12", "23", "34"]
            .iter()
            .map(|e| ElementSet::of([*e]))
            .collect();
        let plan = partition_exchange(&m, &b0, &b1, &classes).unwrap();

        // Independent check: try all 6 singleton assignments of B1.
        let b1v: Vec<ElementId> = b1.elements().iter().cloned().collect();
        let mut valid_assignments = Vec::new();
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for perm in perms {
            let pairs: Vec<(ElementSet, ElementSet)> = classes
                .iter()
                .zip(perm.iter().map(|&j| ElementSet::singleton(b1v[j].clone())))
                .map(|(x, y)| (x.clone(), y))
                .collect();
            let candidate = PartitionExchangePlan {
                sigma: vec![0, 1, 2],
                pairs,
            };
            if candidate
                .validate(&m, b0.elements(), b1.elements())
                .is_ok()
            {
                valid_assignments.push(candidate.pairs);
            }
        }
        assert!(!valid_assignments.is_empty());
        assert!(valid_assignments.contains(&plan.pairs));
    }

    #[test]
    fn partition_single_class_is_the_whole_exchange() {
        let m = k4();
        let (b0, b1) = k4_bases(&m);
        let plan = partition_exchange(&m, &b0, &b1, &[b0.elements().clone()]).unwrap();
        assert_eq!(plan.pairs.len(), 1);
        assert_eq!(plan.pairs[0].1, *b1.elements());
    }

    #[test]
    fn partition_rejects_non_partitions() {
        let (m, b0, b1) = u24();
        let overlap = [ElementSet::of(["a", "b"]), ElementSet::of(["b"])];
        assert!(matches!(
            partition_exchange(&m, &b0, &b1, &overlap),
            Err(Error::NotAPartition(_))
        ));
        let incomplete = [ElementSet::of(["a"])];
        assert!(matches!(
            partition_exchange(&m, &b0, &b1, &incomplete),
            Err(Error::NotAPartition(_))
        ));
        let foreign = [ElementSet::of(["a", "b", "c"])];
        assert!(matches!(
            partition_exchange(&m, &b0, &b1, &foreign),
            Err(Error::NotAPartition(_))
        ));
    }

    #[test]
    fn streaming_prefix_invariant_mid_stream() {
        let m = k4();
        let (b0, b1) = k4_bases(&m);
        let classes = vec![
            ElementSet::of(["12"]),
            ElementSet::of(["23"]),
            ElementSet::of(["34"]),
        ];
        let mut stream = streaming_partition_exchange(&m, &b0, &b1, classes);
        let (x0, y0) = stream.next().unwrap().unwrap();
        assert_eq!(x0, ElementSet::of(["12"]));
        assert_eq!(y0.len(), 1);
        stream.check_prefix_invariant().unwrap();
        let (consumed_x, consumed_y) = stream.consumed();
        assert_eq!(*consumed_x, x0);
        assert_eq!(*consumed_y, y0);
    }

    #[test]
    fn streaming_flags_overlap_at_the_offending_step() {
        let (m, b0, b1) = u24();
        let classes = vec![ElementSet::of(["a"]), ElementSet::of(["a"])];
        let results: Vec<_> = streaming_partition_exchange(&m, &b0, &b1, classes).collect();
        assert_eq!(results.len(), 2);
        assert!(results[0].is_ok());
        assert!(matches!(results[1], Err(Error::NotAPartition(_))));
    }

    #[test]
    fn streaming_equals_batch() {
        let m = k4();
        let (b0, b1) = k4_bases(&m);
        let classes = vec![ElementSet::of(["12", "34"]), ElementSet::of(["23"])];
        let plan = partition_exchange(&m, &b0, &b1, &classes).unwrap();
        let streamed: Vec<_> = streaming_partition_exchange(&m, &b0, &b1, classes)
            .map(|r| r.unwrap())
            .collect();
        assert_eq!(plan.pairs, streamed);
    }

    #[test]
    fn one_unbounded_class_takes_the_remainder() {
        let m = k4();
        let (b0, b1) = k4_bases(&m);
        let plan = partition_exchange_one_infinite(
            &m,
            &b0,
            &b1,
            &[
                ExchangeClass::Finite(ElementSet::of(["12"])),
                ExchangeClass::Unbounded(ElementSet::of(["23", "34"])),
            ],
        )
        .unwrap();
        assert_eq!(plan.pairs.len(), 2);
        assert_eq!(plan.pairs[0].0, ElementSet::of(["12"]));
        assert_eq!(
            plan.pairs[0].1.union(&plan.pairs[1].1),
            *b1.elements()
        );
    }

    #[test]
    fn unbounded_class_restrictions() {
        let (m, b0, b1) = u24();
        assert!(matches!(
            partition_exchange_one_infinite(
                &m,
                &b0,
                &b1,
                &[
                    ExchangeClass::Unbounded(ElementSet::of(["a"])),
                    ExchangeClass::Unbounded(ElementSet::of(["b"])),
                ],
            ),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            partition_exchange_one_infinite(
                &m,
                &b0,
                &b1,
                &[
                    ExchangeClass::Unbounded(ElementSet::of(["a"])),
                    ExchangeClass::Finite(ElementSet::of(["b"])),
                ],
            ),
            Err(Error::Precondition(_))
        ));
        // All-finite input is fine and delegates to the plain driver.
        let plan = partition_exchange_one_infinite(
            &m,
            &b0,
            &b1,
            &[
                ExchangeClass::Finite(ElementSet::of(["a"])),
                ExchangeClass::Finite(ElementSet::of(["b"])),
            ],
        )
        .unwrap();
        assert_eq!(plan.pairs.len(), 2);
    }

    #[test]
    fn serial_order_uniform_overlapping() {
        let m = uniform(2, ElementSet::of(["a", "b", "c"])).unwrap();
        let b0 = Basis::certify(&m, ElementSet::of(["a", "b"])).unwrap();
        let b1 = Basis::certify(&m, ElementSet::of(["b", "c"])).unwrap();
        let order = serial_exchange_order(&m, &b0, &b1).unwrap();
        let e: Vec<&str> = order.e_seq().iter().map(|e| e.as_str()).collect();
        let f: Vec<&str> = order.f_seq().iter().map(|f| f.as_str()).collect();
        assert_eq!(e, ["a", "b"]);
        assert_eq!(f, ["c", "b"]);
    }

    #[test]
    fn serial_order_k4_validates() {
        let m = k4();
        let (b0, b1) = k4_bases(&m);
        let order = serial_exchange_order(&m, &b0, &b1).unwrap();
        assert_eq!(order.len(), 3);
        order.validate(&m, b0.elements(), b1.elements()).unwrap();
    }

    #[test]
    fn rank_zero_is_degenerate_but_legal() {
        let m = uniform(0, ElementSet::of(["a"])).unwrap();
        let b = Basis::certify(&m, ElementSet::new()).unwrap();
        let plan = partition_exchange(&m, &b, &b, &[]).unwrap();
        assert!(plan.pairs.is_empty());
        let order = serial_exchange_order(&m, &b, &b).unwrap();
        assert!(order.is_empty());
    }
}
