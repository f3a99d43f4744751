//! A bijection between the finite subsets of two bases under which
//! exchanging a subset for its image always lands on a basis.
//!
//! The map is determined by serial exchange orders, taken level by level:
//! the smallest element of the input names a position a in the top-level
//! order, f_a joins the image, and the rest of the input is handled by the
//! same construction one minor down, where everything before position a and
//! f_a itself have been contracted away. Minors are built on demand and
//! memoized, so the object stays cheap until it is actually walked.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};

use crate::element::ElementSet;
use crate::error::{Error, Result};
use crate::exchange::{serial_exchange_order, SerialOrder};
use crate::matroid::{Basis, MatroidView};

/// The bijection for one pair of bases. Interior mutability is only used
/// for memoization; the type is meant for single-threaded use.
pub struct SubsetBijection {
    view: MatroidView,
    b0: ElementSet,
    b1: ElementSet,
    order: SerialOrder,
    children: RefCell<BTreeMap<usize, SubsetBijection>>,
}

/// Set up the bijection between the finite subsets of `b0` and `b1`.
pub fn build_bijection(m: &MatroidView, b0: &Basis, b1: &Basis) -> Result<SubsetBijection> {
    let order = serial_exchange_order(m, b0, b1)?;
    Ok(SubsetBijection {
        view: m.clone(),
        b0: b0.elements().clone(),
        b1: b1.elements().clone(),
        order,
        children: RefCell::new(BTreeMap::new()),
    })
}

impl SubsetBijection {
    pub fn b0(&self) -> &ElementSet {
        &self.b0
    }

    pub fn b1(&self) -> &ElementSet {
        &self.b1
    }

    pub fn order(&self) -> &SerialOrder {
        &self.order
    }

    /// Image of a finite subset of B0. The defining exchange property, that
    /// (B0 ∖ I) ∪ image is a basis, is re-checked on every call.
    pub fn apply(&self, i: &ElementSet) -> Result<ElementSet> {
        if !i.is_subset(&self.b0) {
            return Err(Error::Precondition(format!(
                "{i} is not a subset of B0 = {}",
                self.b0
            )));
        }
        let image = self.apply_inner(i)?;
        let exchanged = self.b0.difference(i).union(&image);
        if image.len() != i.len()
            || !image.is_subset(&self.b1)
            || !self.view.is_basis(&exchanged)?
        {
            return Err(Error::InvariantViolation(format!(
                "image {image} of {i} breaks the exchange property"
            )));
        }
        Ok(image)
    }

    fn apply_inner(&self, i: &ElementSet) -> Result<ElementSet> {
        let Some(min) = i.first() else {
            return Ok(ElementSet::new());
        };
        let alpha = self
            .order
            .e_seq()
            .iter()
            .position(|e| e == min)
            .ok_or_else(|| {
                Error::InvariantViolation(format!("{min} missing from the exchange order"))
            })?;
        let f_alpha = self.order.f_seq()[alpha].clone();
        let rest = i.without(min);
        self.ensure_child(alpha)?;
        let children = self.children.borrow();
        let image_rest = children
            .get(&alpha)
            .expect("child was just built")
            .apply(&rest)?;
        Ok(image_rest.with(f_alpha))
    }

    /// Build the minor one level down from position `alpha`: contract the
    /// elements already exchanged before it plus f_alpha itself. What is
    /// left of either basis must again be a basis there.
    fn ensure_child(&self, alpha: usize) -> Result<()> {
        if self.children.borrow().contains_key(&alpha) {
            return Ok(());
        }
        let e_seq = self.order.e_seq();
        let f_seq = self.order.f_seq();
        let mut contracted: ElementSet = e_seq[..alpha].iter().cloned().collect();
        contracted.insert(f_seq[alpha].clone());
        let minor = self.view.contract(&contracted)?;
        let b0_rest: ElementSet = e_seq[alpha + 1..].iter().cloned().collect();
        let b1_rest: ElementSet = f_seq[alpha + 1..].iter().cloned().collect();
        let b0_rest = Basis::certify(&minor, b0_rest).map_err(|e| {
            Error::InvariantViolation(format!(
                "B0 remainder below position {alpha} is not a basis: {e}"
            ))
        })?;
        let b1_rest = Basis::certify(&minor, b1_rest).map_err(|e| {
            Error::InvariantViolation(format!(
                "B1 remainder below position {alpha} is not a basis: {e}"
            ))
        })?;
        let child = build_bijection(&minor, &b0_rest, &b1_rest)?;
        self.children.borrow_mut().insert(alpha, child);
        Ok(())
    }

    /// All pairs (I, image) for |I| <= max_size, checked to form a bijection
    /// onto the subsets of B1 of size at most max_size.
    pub fn enumerate_graph(&self, max_size: usize) -> Result<Vec<(ElementSet, ElementSet)>> {
        if max_size > self.b0.len() {
            return Err(Error::Precondition(format!(
                "max size {max_size} exceeds |B0| = {}",
                self.b0.len()
            )));
        }
        let mut pairs = Vec::new();
        for i in self.b0.subsets_up_to(max_size) {
            let image = self.apply(&i)?;
            pairs.push((i, image));
        }
        let images: BTreeSet<ElementSet> = pairs.iter().map(|(_, j)| j.clone()).collect();
        if images.len() != pairs.len() {
            return Err(Error::InvariantViolation(
                "two inputs share an image".into(),
            ));
        }
        let expected: BTreeSet<ElementSet> =
            self.b1.subsets_up_to(max_size).into_iter().collect();
        if images != expected {
            return Err(Error::InvariantViolation(
                "images do not cover the small subsets of B1".into(),
            ));
        }
        Ok(pairs)
    }

    /// Preimage of a finite subset of B1, found by forward evaluation over
    /// the matching size class.
    pub fn invert(&self, j: &ElementSet) -> Result<ElementSet> {
        if !j.is_subset(&self.b1) {
            return Err(Error::Precondition(format!(
                "{j} is not a subset of B1 = {}",
                self.b1
            )));
        }
        for i in self.b0.subsets_of_size(j.len()) {
            if self.apply(&i)? == *j {
                return Ok(i);
            }
        }
        Err(Error::InvariantViolation(format!("{j} has no preimage")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{graphic_matroid, uniform, MultiGraph};

    fn u23_bijection() -> SubsetBijection {
        let m = uniform(2, ElementSet::of(["a", "b", "c"])).unwrap();
        let b0 = Basis::certify(&m, ElementSet::of(["a", "b"])).unwrap();
        let b1 = Basis::certify(&m, ElementSet::of(["b", "c"])).unwrap();
        build_bijection(&m, &b0, &b1).unwrap()
    }

    #[test]
    fn overlapping_uniform_images() {
        let f = u23_bijection();
        assert_eq!(f.apply(&ElementSet::new()).unwrap(), ElementSet::new());
        assert_eq!(f.apply(&ElementSet::of(["a"])).unwrap(), ElementSet::of(["c"]));
        assert_eq!(f.apply(&ElementSet::of(["b"])).unwrap(), ElementSet::of(["b"]));
        assert_eq!(
            f.apply(&ElementSet::of(["a", "b"])).unwrap(),
            ElementSet::of(["b", "c"])
        );
    }

    #[test]
    fn disjoint_uniform_images() {
        let m = uniform(2, ElementSet::of(["a", "b", "c", "d"])).unwrap();
        let b0 = Basis::certify(&m, ElementSet::of(["a", "b"])).unwrap();
        let b1 = Basis::certify(&m, ElementSet::of(["c", "d"])).unwrap();
        let f = build_bijection(&m, &b0, &b1).unwrap();
        assert_eq!(f.apply(&ElementSet::of(["a"])).unwrap(), ElementSet::of(["c"]));
        assert_eq!(f.apply(&ElementSet::of(["b"])).unwrap(), ElementSet::of(["d"]));
        assert_eq!(
            f.apply(&ElementSet::of(["a", "b"])).unwrap(),
            ElementSet::of(["c", "d"])
        );
    }

    #[test]
    fn graph_enumeration_is_bijective() {
        let f = u23_bijection();
        assert_eq!(f.enumerate_graph(1).unwrap().len(), 3);
        let pairs = f.enumerate_graph(2).unwrap();
        assert_eq!(pairs.len(), 4);

        let m = graphic_matroid(&MultiGraph::complete(4).unwrap());
        let b0 = Basis::certify(&m, ElementSet::of(["12", "23", "34"])).unwrap();
        let b1 = Basis::certify(&m, ElementSet::of(["13", "24", "14"])).unwrap();
        let f = build_bijection(&m, &b0, &b1).unwrap();
        let pairs = f.enumerate_graph(3).unwrap();
        assert_eq!(pairs.len(), 8);
        assert_eq!(f.apply(f.b0()).unwrap(), *f.b1());
    }

    #[test]
    fn invert_round_trips() {
        let m = graphic_matroid(&MultiGraph::complete(4).unwrap());
        let b0 = Basis::certify(&m, ElementSet::of(["12", "23", "34"])).unwrap();
        let b1 = Basis::certify(&m, ElementSet::of(["13", "24", "14"])).unwrap();
        let f = build_bijection(&m, &b0, &b1).unwrap();
        for i in f.b0().powerset() {
            let image = f.apply(&i).unwrap();
            assert_eq!(f.invert(&image).unwrap(), i);
        }
    }

    #[test]
    fn rank_zero_graph_is_the_empty_pair() {
        let m = uniform(0, ElementSet::of(["a", "b"])).unwrap();
        let b = Basis::certify(&m, ElementSet::new()).unwrap();
        let f = build_bijection(&m, &b, &b).unwrap();
        assert_eq!(
            f.enumerate_graph(0).unwrap(),
            vec![(ElementSet::new(), ElementSet::new())]
        );
    }

    #[test]
    fn domain_errors() {
        let f = u23_bijection();
        assert!(matches!(
            f.apply(&ElementSet::of(["c"])),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            f.enumerate_graph(3),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            f.invert(&ElementSet::of(["a"])),
            Err(Error::Precondition(_))
        ));
    }
}
