//! Concrete matroid families: uniform, graphic, GF(2)-linear, free, and
//! explicit set families, plus a deterministic instance generator.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dsu::UnionFind;
use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{IndependenceOracle, MatroidView};

struct UniformOracle {
    rank: usize,
    ground: ElementSet,
}

impl IndependenceOracle for UniformOracle {
    fn ground(&self) -> &ElementSet {
        &self.ground
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        set.len() <= self.rank
    }
}

/// The uniform matroid U(rank, |ground|).
pub fn uniform(rank: usize, ground: ElementSet) -> Result<MatroidView> {
    if rank > ground.len() {
        return Err(Error::Precondition(format!(
            "uniform rank {rank} exceeds ground size {}",
            ground.len()
        )));
    }
    Ok(MatroidView::from_oracle(Arc::new(UniformOracle {
        rank,
        ground,
    })))
}

/// The free matroid: every subset independent.
pub fn free(ground: ElementSet) -> MatroidView {
    let rank = ground.len();
    uniform(rank, ground).expect("full rank always fits")
}

/// A finite multigraph with labelled edges. Vertices are `0..n_vertices`.
/// Loops and parallel edges are allowed; labels must be unique.
#[derive(Clone, Debug)]
pub struct MultiGraph {
    n_vertices: usize,
    edges: Vec<(ElementId, usize, usize)>,
}

impl MultiGraph {
    pub fn new(n_vertices: usize, edges: Vec<(ElementId, usize, usize)>) -> Result<Self> {
        let mut seen = ElementSet::new();
        for (label, u, v) in &edges {
            if *u >= n_vertices || *v >= n_vertices {
                return Err(Error::Precondition(format!(
                    "edge {label} endpoint out of range 0..{n_vertices}"
                )));
            }
            if !seen.insert(label.clone()) {
                return Err(Error::Precondition(format!("duplicate edge label {label}")));
            }
        }
        Ok(MultiGraph { n_vertices, edges })
    }

    /// Complete graph on `n <= 9` vertices, edges labelled "12", "13", ...
    /// with 1-based endpoints.
    pub fn complete(n: usize) -> Result<Self> {
        if n > 9 {
            return Err(Error::Precondition(
                "complete graph labels need single-digit vertices".into(),
            ));
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((ElementId::new(format!("{}{}", i + 1, j + 1)), i, j));
            }
        }
        MultiGraph::new(n, edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(ElementId, usize, usize)] {
        &self.edges
    }

    pub fn edge_labels(&self) -> ElementSet {
        self.edges.iter().map(|(l, _, _)| l.clone()).collect()
    }

    pub fn endpoints(&self, label: &ElementId) -> Option<(usize, usize)> {
        self.edges
            .iter()
            .find(|(l, _, _)| l == label)
            .map(|&(_, u, v)| (u, v))
    }

    /// Is the edge subset acyclic (a forest)? Loops and doubled edges count
    /// as cycles.
    pub fn is_forest(&self, subset: &ElementSet) -> bool {
        let mut uf = UnionFind::new(self.n_vertices);
        for (label, u, v) in &self.edges {
            if subset.contains(label) && (*u == *v || !uf.union(*u, *v)) {
                return false;
            }
        }
        true
    }
}

struct GraphicOracle {
    ground: ElementSet,
    n_vertices: usize,
    endpoints: HashMap<ElementId, (usize, usize)>,
}

impl IndependenceOracle for GraphicOracle {
    fn ground(&self) -> &ElementSet {
        &self.ground
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        let mut uf = UnionFind::new(self.n_vertices);
        for label in set {
            let (u, v) = self.endpoints[label];
            if u == v || !uf.union(u, v) {
                return false;
            }
        }
        true
    }
}

/// The cycle matroid of a multigraph: independent sets are forests.
pub fn graphic_matroid(graph: &MultiGraph) -> MatroidView {
    let oracle = GraphicOracle {
        ground: graph.edge_labels(),
        n_vertices: graph.n_vertices,
        endpoints: graph
            .edges
            .iter()
            .map(|(l, u, v)| (l.clone(), (*u, *v)))
            .collect(),
    };
    MatroidView::from_oracle(Arc::new(oracle))
}

/// Truncation of a one-sided infinite graph carrying two edge-disjoint
/// trees, cut down to vertices `0..n`.
///
/// The first tree is the path `f_i = {v_i, v_{i+1}}`. The second is built
/// from chords `e_i = {v_{2i+1}, v_{2i+3}}` and `h_i = {v_{2i}, v_{2i+3}}`,
/// kept for as long as the far endpoint survives the truncation.
#[derive(Clone, Debug)]
pub struct FigureGraph {
    graph: MultiGraph,
    f: Vec<ElementId>,
    e: Vec<ElementId>,
    h: Vec<ElementId>,
}

/// Build the truncation with `n >= 4` vertices.
pub fn figure_graph(n: usize) -> Result<FigureGraph> {
    if n < 4 {
        return Err(Error::Precondition(format!(
            "figure graph needs at least 4 vertices, got {n}"
        )));
    }
    let mut edges = Vec::new();
    let mut f = Vec::new();
    let mut e = Vec::new();
    let mut h = Vec::new();
    for i in 0..n - 1 {
        let label = ElementId::new(format!("f{i}"));
        edges.push((label.clone(), i, i + 1));
        f.push(label);
    }
    let mut i = 0;
    while 2 * i + 3 < n {
        let le = ElementId::new(format!("e{i}"));
        edges.push((le.clone(), 2 * i + 1, 2 * i + 3));
        e.push(le);
        let lh = ElementId::new(format!("h{i}"));
        edges.push((lh.clone(), 2 * i, 2 * i + 3));
        h.push(lh);
        i += 1;
    }
    Ok(FigureGraph {
        graph: MultiGraph::new(n, edges)?,
        f,
        e,
        h,
    })
}

impl FigureGraph {
    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn n_vertices(&self) -> usize {
        self.graph.n_vertices()
    }

    pub fn f_labels(&self) -> &[ElementId] {
        &self.f
    }

    pub fn e_labels(&self) -> &[ElementId] {
        &self.e
    }

    pub fn h_labels(&self) -> &[ElementId] {
        &self.h
    }

    /// The path tree: all f-edges.
    pub fn t0(&self) -> ElementSet {
        self.f.iter().cloned().collect()
    }

    /// The chord tree: all e- and h-edges.
    pub fn t1(&self) -> ElementSet {
        self.e.iter().chain(&self.h).cloned().collect()
    }

    /// Even-indexed path edges f_0, f_2, ...
    pub fn x0(&self) -> ElementSet {
        self.f.iter().step_by(2).cloned().collect()
    }

    /// Odd-indexed path edges f_1, f_3, ...
    pub fn x1(&self) -> ElementSet {
        self.f.iter().skip(1).step_by(2).cloned().collect()
    }

    /// A vertex is interior when every edge incident to it in the untruncated
    /// graph survived the cut. Edges reaching back toward vertex 0 always
    /// survive, so only the forward edges matter: f_v, plus e_{(v-1)/2} from
    /// an odd v (far endpoint v+2) or h_{v/2} from an even v (far endpoint
    /// v+3).
    pub fn is_interior(&self, v: usize) -> bool {
        let n = self.n_vertices();
        if v >= n {
            return false;
        }
        let farthest = if v % 2 == 1 { v + 2 } else { v + 3 };
        farthest < n
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.n_vertices())
            .filter(|&v| self.is_interior(v))
            .collect()
    }
}

/// Columns over GF(2), at most 64 rows.
#[derive(Clone, Debug)]
pub struct Gf2Matrix {
    n_rows: usize,
    columns: BTreeMap<ElementId, Vec<bool>>,
}

impl Gf2Matrix {
    pub fn new(columns: Vec<(ElementId, Vec<bool>)>) -> Result<Self> {
        let n_rows = columns.first().map_or(0, |(_, bits)| bits.len());
        if n_rows > 64 {
            return Err(Error::Precondition("more than 64 rows".into()));
        }
        let mut map = BTreeMap::new();
        for (label, bits) in columns {
            if bits.len() != n_rows {
                return Err(Error::Precondition(format!(
                    "column {label} has {} rows, expected {n_rows}",
                    bits.len()
                )));
            }
            if map.insert(label.clone(), bits).is_some() {
                return Err(Error::Precondition(format!("duplicate column {label}")));
            }
        }
        Ok(Gf2Matrix {
            n_rows,
            columns: map,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn columns(&self) -> impl Iterator<Item = (&ElementId, &[bool])> + '_ {
        self.columns.iter().map(|(l, bits)| (l, bits.as_slice()))
    }

    fn as_mask(bits: &[bool]) -> u64 {
        bits.iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| if b { acc | (1 << i) } else { acc })
    }
}

struct Gf2Oracle {
    ground: ElementSet,
    masks: HashMap<ElementId, u64>,
}

impl IndependenceOracle for Gf2Oracle {
    fn ground(&self) -> &ElementSet {
        &self.ground
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        // Gaussian elimination over the selected columns.
        let mut pivots: Vec<u64> = Vec::with_capacity(set.len());
        for label in set {
            let mut v = self.masks[label];
            for &p in &pivots {
                let low = p & p.wrapping_neg();
                if v & low != 0 {
                    v ^= p;
                }
            }
            if v == 0 {
                return false;
            }
            pivots.push(v);
        }
        true
    }
}

/// The linear matroid of the columns over GF(2).
pub fn gf2_matroid(matrix: &Gf2Matrix) -> MatroidView {
    let oracle = Gf2Oracle {
        ground: matrix.columns.keys().cloned().collect(),
        masks: matrix
            .columns
            .iter()
            .map(|(l, bits)| (l.clone(), Gf2Matrix::as_mask(bits)))
            .collect(),
    };
    MatroidView::from_oracle(Arc::new(oracle))
}

struct SetFamilyOracle {
    ground: ElementSet,
    family: std::collections::HashSet<ElementSet>,
}

impl IndependenceOracle for SetFamilyOracle {
    fn ground(&self) -> &ElementSet {
        &self.ground
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        self.family.contains(set)
    }
}

/// Present an explicit family of sets as the independent sets. Nothing is
/// validated; feed the result to the axiom checker to find out whether the
/// family is a matroid at all.
pub fn from_family(ground: ElementSet, independents: Vec<ElementSet>) -> MatroidView {
    MatroidView::from_oracle(Arc::new(SetFamilyOracle {
        ground,
        family: independents.into_iter().collect(),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Uniform,
    Graphic,
    Gf2,
}

/// A generated instance, keeping the concrete presentation so it can be
/// serialized as well as queried.
#[derive(Clone, Debug)]
pub enum Instance {
    Uniform { rank: usize, ground: ElementSet },
    Graphic(MultiGraph),
    Gf2(Gf2Matrix),
}

impl Instance {
    pub fn view(&self) -> MatroidView {
        match self {
            Instance::Uniform { rank, ground } => {
                uniform(*rank, ground.clone()).expect("generated rank fits")
            }
            Instance::Graphic(g) => graphic_matroid(g),
            Instance::Gf2(m) => gf2_matroid(m),
        }
    }
}

fn letter_labels(n: usize) -> Result<Vec<ElementId>> {
    if n > 26 {
        return Err(Error::Precondition(
            "generator supports at most 26 elements".into(),
        ));
    }
    Ok((0..n)
        .map(|i| ElementId::new(((b'a' + i as u8) as char).to_string()))
        .collect())
}

/// Deterministic instance generator. Same (kind, size, seed), same instance,
/// on every platform.
///
/// Distributions: uniform draws a rank uniformly from 0..=size on `size`
/// elements; graphic samples the edges of the smallest complete graph with
/// at least `size` edges independently with probability 1/2, keeping at most
/// `size` of them in label order; gf2 fills `size` columns of
/// `max(1, 2*size/3)` rows with fair coin bits.
pub fn random_instance_spec(kind: InstanceKind, size: usize, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        InstanceKind::Uniform => {
            let labels = letter_labels(size)?;
            let rank = rng.gen_range(0..=size);
            Ok(Instance::Uniform {
                rank,
                ground: labels.into_iter().collect(),
            })
        }
        InstanceKind::Graphic => {
            let mut v = 2usize;
            while v * (v - 1) / 2 < size {
                v += 1;
            }
            if v > 9 {
                return Err(Error::Precondition(
                    "generator supports at most 36 edges".into(),
                ));
            }
            let mut edges = Vec::new();
            'outer: for i in 0..v {
                for j in (i + 1)..v {
                    if rng.gen::<bool>() {
                        edges.push((ElementId::new(format!("{}{}", i + 1, j + 1)), i, j));
                        if edges.len() == size {
                            break 'outer;
                        }
                    }
                }
            }
            Ok(Instance::Graphic(MultiGraph::new(v, edges)?))
        }
        InstanceKind::Gf2 => {
            let labels = letter_labels(size)?;
            let rows = (2 * size / 3).max(1);
            let columns = labels
                .into_iter()
                .map(|l| (l, (0..rows).map(|_| rng.gen::<bool>()).collect()))
                .collect();
            Ok(Instance::Gf2(Gf2Matrix::new(columns)?))
        }
    }
}

/// Deterministic random matroid; see [`random_instance_spec`].
pub fn random_instance(kind: InstanceKind, size: usize, seed: u64) -> Result<MatroidView> {
    Ok(random_instance_spec(kind, size, seed)?.view())
}
