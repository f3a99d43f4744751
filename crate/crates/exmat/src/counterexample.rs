//! Verification machinery for the two-tree splitting obstruction.
//!
//! The truncated figure graph carries two edge-disjoint trees: the path T0
//! and the chord tree T1. Splitting T0 into its even part X0 and odd part X1
//! and asking for a matching split of the rest runs into a forced pattern:
//! every admissible assignment of the chords must route each h-chord with
//! the odd part and each e-chord with the even part, as far out as the
//! truncation allows a clean look. Pushing the pattern to infinity is
//! impossible, because the odd path edges plus all h-chords always fall into
//! two interleaved components and can never join a single forest part.
//!
//! Everything here is finite and checked by enumeration: candidates are the
//! 2^(#e + #h) ways to distribute the chords over the two parts, filtered by
//! forest-ness and, optionally, by connectivity over the interior vertices.

use std::collections::BTreeSet;

use crate::dsu::UnionFind;
use crate::element::ElementSet;
use crate::error::{Error, Result};
use crate::models::{figure_graph, FigureGraph, MultiGraph};

/// One admissible way of splitting the truncation's edges in two: `s0`
/// extends X0, `s1` extends X1, and every chord lands in exactly one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentCandidate {
    pub s0: ElementSet,
    pub s1: ElementSet,
}

fn connected_on_interior(fig: &FigureGraph, subset: &ElementSet) -> bool {
    let mut uf = UnionFind::new(fig.n_vertices());
    for (label, u, v) in fig.graph().edges() {
        if subset.contains(label) {
            uf.union(*u, *v);
        }
    }
    let mut roots = BTreeSet::new();
    for v in fig.interior_vertices() {
        roots.insert(uf.find(v));
    }
    roots.len() <= 1
}

/// Connected components of the edge subset, restricted to the vertices it
/// covers, sorted by smallest vertex.
fn components_on_covered(graph: &MultiGraph, subset: &ElementSet) -> Vec<BTreeSet<usize>> {
    let mut uf = UnionFind::new(graph.n_vertices());
    let mut covered = BTreeSet::new();
    for (label, u, v) in graph.edges() {
        if subset.contains(label) {
            covered.insert(*u);
            covered.insert(*v);
            uf.union(*u, *v);
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, BTreeSet<usize>> = Default::default();
    for v in covered {
        by_root.entry(uf.find(v)).or_default().insert(v);
    }
    let mut components: Vec<BTreeSet<usize>> = by_root.into_values().collect();
    components.sort_by_key(|c| c.first().copied());
    components
}

/// Enumerate the chord assignments under which both sides stay forests.
/// With `require_connected`, each side must additionally tie all interior
/// vertices into one component, the truncated stand-in for being a tree of
/// the whole graph.
pub fn enumerate_candidates(n: usize, require_connected: bool) -> Result<Vec<AssignmentCandidate>> {
    let fig = figure_graph(n)?;
    let assignable: Vec<_> = fig
        .e_labels()
        .iter()
        .chain(fig.h_labels())
        .cloned()
        .collect();
    if assignable.len() > 24 {
        return Err(Error::Precondition(format!(
            "{} assignable chords would need 2^{} candidate checks",
            assignable.len(),
            assignable.len()
        )));
    }
    let x0 = fig.x0();
    let x1 = fig.x1();
    let mut out = Vec::new();
    for mask in 0u32..1 << assignable.len() {
        let mut s0 = x0.clone();
        let mut s1 = x1.clone();
        for (i, label) in assignable.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s1.insert(label.clone());
            } else {
                s0.insert(label.clone());
            }
        }
        if !fig.graph().is_forest(&s0) || !fig.graph().is_forest(&s1) {
            continue;
        }
        if require_connected
            && !(connected_on_interior(&fig, &s0) && connected_on_interior(&fig, &s1))
        {
            continue;
        }
        out.push(AssignmentCandidate { s0, s1 });
    }
    Ok(out)
}

/// Largest prefix length whose forcing cuts still consist of interior
/// vertices. The cut for step j peaks at vertex 2j + 2, which stays interior
/// while 2j + 2 <= n - 4.
pub fn max_admissible_k(n: usize) -> usize {
    if n >= 6 {
        (n - 6) / 2
    } else {
        0
    }
}

/// Vertex cut certifying step `j` of the forced pattern: two descending
/// runs, 2j+2, 2j-2, 2j-6, ... and 2j+1, 2j-3, 2j-7, ..., stopped at zero.
/// Exposed for reporting; the verification itself is the candidate sweep.
pub fn forcing_cut(j: usize) -> Vec<usize> {
    let mut cut = BTreeSet::new();
    for t in 0..=j.div_ceil(2) {
        cut.insert(2 * j + 2 - 4 * t);
    }
    for t in 0..=j / 2 {
        cut.insert(2 * j + 1 - 4 * t);
    }
    cut.into_iter().collect()
}

/// Outcome of [`verify_forced_prefix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcedPrefixReport {
    pub n: usize,
    pub k: usize,
    pub candidate_count: usize,
    /// Every connected candidate routes h_j to s1 and e_j to s0 for j < k.
    pub holds: bool,
    /// No candidate survived the filters, so `holds` says nothing.
    pub vacuous: bool,
    /// The forcing cuts for steps 0..k.
    pub cuts: Vec<Vec<usize>>,
}

/// Sweep all connected candidates of the n-vertex truncation and check that
/// the first `k` chord pairs are forced: h_j into s1, e_j into s0.
pub fn verify_forced_prefix(n: usize, k: usize) -> Result<ForcedPrefixReport> {
    let admissible = max_admissible_k(n);
    if k > admissible {
        return Err(Error::Precondition(format!(
            "prefix length {k} exceeds {admissible}, the most the {n}-vertex \
             truncation can certify with interior cuts"
        )));
    }
    let candidates = enumerate_candidates(n, true)?;
    let holds = candidates.iter().all(|c| {
        (0..k).all(|j| {
            c.s1.contains(&format!("h{j}").into()) && c.s0.contains(&format!("e{j}").into())
        })
    });
    Ok(ForcedPrefixReport {
        n,
        k,
        candidate_count: candidates.len(),
        holds,
        vacuous: candidates.is_empty(),
        cuts: (0..k).map(forcing_cut).collect(),
    })
}

/// The shape of the obstruction at infinity, witnessed inside one
/// truncation: components of the subgraph formed by the odd path edges
/// together with every h-chord, on the vertices that subgraph covers. Two
/// interleaved components show up at every size, so no single forest part
/// can ever hold all of X1 and all of the h-chords at once.
pub fn limit_witness(n: usize) -> Result<Vec<BTreeSet<usize>>> {
    if n < 5 {
        return Err(Error::Precondition(format!(
            "limit witness needs at least 5 vertices, got {n}"
        )));
    }
    let fig = figure_graph(n)?;
    let subset = fig.x1().union(&fig.h_labels().iter().cloned().collect());
    Ok(components_on_covered(fig.graph(), &subset))
}

/// Does the chord tree of the n-vertex truncation behave like a tree there:
/// acyclic, one component on the vertices it covers, and covering every
/// interior vertex?
pub fn t1_truncation_is_tree(n: usize) -> Result<bool> {
    let fig = figure_graph(n)?;
    let t1 = fig.t1();
    if !fig.graph().is_forest(&t1) {
        return Ok(false);
    }
    let components = components_on_covered(fig.graph(), &t1);
    if components.len() > 1 {
        return Ok(false);
    }
    let covered: BTreeSet<usize> = components.into_iter().flatten().collect();
    Ok(fig.interior_vertices().iter().all(|v| covered.contains(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_vertex_truncation_has_one_connected_candidate() {
        let candidates = enumerate_candidates(4, true).unwrap();
        assert_eq!(candidates.len(), 1);
        assert_eq!(candidates[0].s0, ElementSet::of(["f0", "f2"]));
        assert_eq!(candidates[0].s1, ElementSet::of(["f1", "e0", "h0"]));
    }

    #[test]
    fn five_vertex_truncation_candidate_counts() {
        assert_eq!(enumerate_candidates(5, false).unwrap().len(), 3);
        let connected = enumerate_candidates(5, true).unwrap();
        assert_eq!(connected.len(), 1);
        assert_eq!(
            connected[0].s1,
            ElementSet::of(["f1", "f3", "e0", "h0"])
        );
    }

    #[test]
    fn h0_joins_s1_in_every_connected_candidate() {
        for n in 5..10 {
            let candidates = enumerate_candidates(n, true).unwrap();
            assert!(!candidates.is_empty());
            assert!(candidates.iter().all(|c| c.s1.contains(&"h0".into())));
        }
    }

    #[test]
    fn candidate_sweep_size_is_two_to_the_chords() {
        // Forest-ness only rejects; the sweep itself covers every mask.
        let fig = figure_graph(12).unwrap();
        let chords = fig.e_labels().len() + fig.h_labels().len();
        assert_eq!(chords, 10);
        let all = enumerate_candidates(12, false).unwrap();
        assert!(all.len() <= 1 << chords);
        assert!(!all.is_empty());
    }

    #[test]
    fn admissible_prefix_grows_with_the_truncation() {
        assert_eq!(max_admissible_k(4), 0);
        assert_eq!(max_admissible_k(6), 0);
        assert_eq!(max_admissible_k(8), 1);
        assert_eq!(max_admissible_k(12), 3);
        assert_eq!(max_admissible_k(20), 7);
    }

    #[test]
    fn forcing_cuts_follow_the_descending_runs() {
        assert_eq!(forcing_cut(0), vec![1, 2]);
        assert_eq!(forcing_cut(1), vec![0, 3, 4]);
        assert_eq!(forcing_cut(2), vec![1, 2, 5, 6]);
        assert_eq!(forcing_cut(3), vec![0, 3, 4, 7, 8]);
    }

    #[test]
    fn forced_prefix_holds_at_the_admissible_bound() {
        for n in [8usize, 10, 12] {
            let k = max_admissible_k(n);
            let report = verify_forced_prefix(n, k).unwrap();
            assert!(report.holds, "n = {n}");
            assert!(!report.vacuous);
            assert_eq!(report.candidate_count, 1);
            assert_eq!(report.cuts.len(), k);
        }
    }

    #[test]
    fn forced_prefix_rejects_overlong_prefixes() {
        assert!(matches!(
            verify_forced_prefix(8, 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cuts_stay_interior_up_to_the_bound() {
        for n in 6..16 {
            let fig = figure_graph(n).unwrap();
            let k = max_admissible_k(n);
            for j in 0..k {
                for v in forcing_cut(j) {
                    assert!(fig.is_interior(v), "n = {n}, cut {j}, vertex {v}");
                }
            }
        }
    }

    #[test]
    fn limit_witness_always_splits_in_two() {
        for n in 5..16 {
            assert_eq!(limit_witness(n).unwrap().len(), 2, "n = {n}");
        }
        assert!(limit_witness(4).is_err());
    }

    #[test]
    fn limit_witness_components_interleave() {
        let components = limit_witness(8).unwrap();
        assert_eq!(components[0], BTreeSet::from([0, 3, 4, 7]));
        assert_eq!(components[1], BTreeSet::from([1, 2, 5, 6]));
    }

    #[test]
    fn chord_tree_is_a_tree_at_every_truncation() {
        for n in [4usize, 6, 8, 10, 12] {
            assert!(t1_truncation_is_tree(n).unwrap(), "n = {n}");
        }
    }
}
