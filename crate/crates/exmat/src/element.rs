//! Ground-set elements and finite element sets.
//!
//! Elements are opaque string labels with a total (lexicographic) order.
//! That order is the canonical order used everywhere a deterministic choice
//! is needed: greedy extensions, tie-breaks, enumeration.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Label of a single matroid element. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(Arc<str>);

impl ElementId {
    pub fn new(label: impl AsRef<str>) -> Self {
        ElementId(Arc::from(label.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for ElementId {
    fn from(label: &str) -> Self {
        ElementId::new(label)
    }
}

impl From<String> for ElementId {
    fn from(label: String) -> Self {
        ElementId::new(label)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for ElementId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for ElementId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer).map(ElementId::from)
    }
}

/// A finite set of elements, iterated in canonical order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet(BTreeSet<ElementId>);

impl ElementSet {
    pub fn new() -> Self {
        ElementSet(BTreeSet::new())
    }

    pub fn singleton(e: ElementId) -> Self {
        ElementSet(BTreeSet::from([e]))
    }

    /// Convenience constructor from anything label-like.
    pub fn of<I>(labels: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<ElementId>,
    {
        ElementSet(labels.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: &ElementId) -> bool {
        self.0.contains(e)
    }

    pub fn insert(&mut self, e: ElementId) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: &ElementId) -> bool {
        self.0.remove(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ElementId> + '_ {
        self.0.iter()
    }

    /// Smallest element in canonical order.
    pub fn first(&self) -> Option<&ElementId> {
        self.0.iter().next()
    }

    pub fn with(&self, e: ElementId) -> Self {
        let mut s = self.clone();
        s.insert(e);
        s
    }

    pub fn without(&self, e: &ElementId) -> Self {
        let mut s = self.clone();
        s.remove(e);
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        ElementSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &Self) -> Self {
        ElementSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        ElementSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// All subsets of the given size, lexicographic in canonical element order.
    pub fn subsets_of_size(&self, k: usize) -> Vec<ElementSet> {
        let items: Vec<&ElementId> = self.0.iter().collect();
        if k > items.len() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(k);
        fn go(
            items: &[&ElementId],
            k: usize,
            start: usize,
            pick: &mut Vec<ElementId>,
            out: &mut Vec<ElementSet>,
        ) {
            if pick.len() == k {
                out.push(ElementSet(pick.iter().cloned().collect()));
                return;
            }
            let need = k - pick.len();
            for i in start..=items.len().saturating_sub(need) {
                pick.push(items[i].clone());
                go(items, k, i + 1, pick, out);
                pick.pop();
            }
        }
        go(&items, k, 0, &mut pick, &mut out);
        out
    }

    /// All subsets of size <= k, ascending by size then lexicographic.
    pub fn subsets_up_to(&self, k: usize) -> Vec<ElementSet> {
        (0..=k.min(self.len()))
            .flat_map(|s| self.subsets_of_size(s))
            .collect()
    }

    /// The full powerset in canonical (size, then lexicographic) order.
    pub fn powerset(&self) -> Vec<ElementSet> {
        self.subsets_up_to(self.len())
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        ElementSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = &'a ElementId;
    type IntoIter = std::collections::btree_set::Iter<'a, ElementId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl IntoIterator for ElementSet {
    type Item = ElementId;
    type IntoIter = std::collections::btree_set::IntoIter<ElementId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for e in &self.0 {
            seq.serialize_element(e)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct SetVisitor;
        impl<'de> Visitor<'de> for SetVisitor {
            type Value = ElementSet;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a sequence of element labels")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut set = ElementSet::new();
                while let Some(label) = seq.next_element::<String>()? {
                    set.insert(ElementId::from(label));
                }
                Ok(set)
            }
        }
        deserializer.deserialize_seq(SetVisitor)
    }
}
