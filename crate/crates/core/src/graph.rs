//! Finite simplicial graphs and the exhaustive graph searches that the
//! group layer reduces to.
//!
//! Vertices are the dense indices `0..n`. Every search walks candidates in
//! ascending vertex order, so results are deterministic for a given input.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

/// Default vertex bound for homomorphism, embedding and isomorphism search.
pub const DEFAULT_MAP_SEARCH_BOUND: usize = 12;
/// Default vertex bound for exhaustive Hamiltonian cycle search.
pub const DEFAULT_HAMILTONIAN_BOUND: usize = 10;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph has {n} vertices, exceeding the brute-force bound {bound}")]
    SizeLimit { n: usize, bound: usize },
    #[error("map has {got} images but source graph has {expected} vertices")]
    ImageLength { expected: usize, got: usize },
    #[error("edge ({u}, {v}) is not mapped onto an edge")]
    EdgeNotPreserved { u: usize, v: usize },
    #[error("graph file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Brute-force bounds for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub map_search: usize,
    pub hamiltonian: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            map_search: DEFAULT_MAP_SEARCH_BOUND,
            hamiltonian: DEFAULT_HAMILTONIAN_BOUND,
        }
    }
}

/// A finite loop-free undirected graph on the vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct SimplicialGraph {
    n: usize,
    adj: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for SimplicialGraph {
    type Error = GraphError;

    fn try_from(r: GraphRepr) -> Result<Self, GraphError> {
        SimplicialGraph::from_edges(r.n, r.edges)
    }
}

impl From<SimplicialGraph> for GraphRepr {
    fn from(g: SimplicialGraph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges().collect(),
        }
    }
}

impl fmt::Debug for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialGraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl SimplicialGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 1..n {
            g.set_edge(v - 1, v, true);
        }
        g
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`; needs `n >= 3` to be simple.
    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.set_edge(n - 1, 0, true);
        }
        g
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Erdős–Rényi style sample: each pair is an edge with probability `density`.
    pub fn random<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(density) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        self.set_edge(u, v, true);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n && u != v {
            self.set_edge(u, v, false);
        }
    }

    fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        self.adj[u * self.n + v] = present;
        self.adj[v * self.n + u] = present;
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Same vertex set; `u != v` adjacent in the result iff not adjacent here.
    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                g.set_edge(u, v, !self.has_edge(u, v));
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced on `vertices`, relabelled so `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Self {
        let mut g = Self::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    /// Graph with vertex `v` renamed to `perm[v]`. `perm` must be a permutation.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "relabelling must cover every vertex");
        let mut g = Self::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v], true);
        }
        g
    }

    /// Disjoint union of the parts plus every edge between distinct parts.
    pub fn join(parts: &[SimplicialGraph]) -> Self {
        let n = parts.iter().map(|p| p.n).sum();
        let mut g = Self::empty(n);
        let mut offsets = Vec::with_capacity(parts.len());
        let mut off = 0;
        for p in parts {
            offsets.push(off);
            for (u, v) in p.edges() {
                g.set_edge(off + u, off + v, true);
            }
            off += p.n;
        }
        for (a, pa) in parts.iter().enumerate() {
            for (b, pb) in parts.iter().enumerate().skip(a + 1) {
                for u in 0..pa.n {
                    for v in 0..pb.n {
                        g.set_edge(offsets[a] + u, offsets[b] + v, true);
                    }
                }
            }
        }
        g
    }

    /// Text form: vertex count, then one sorted `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Display for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for SimplicialGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        let mut graph: Option<SimplicialGraph> = None;
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|_| GraphError::Parse {
                    line: line_no,
                    msg: format!("expected a vertex index, found {tok:?}"),
                })
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match (&mut graph, toks.as_slice()) {
                (None, [n]) => graph = Some(SimplicialGraph::empty(parse(n)?)),
                (None, _) => {
                    return Err(GraphError::Parse {
                        line: line_no,
                        msg: "first line must hold the vertex count".into(),
                    })
                }
                (Some(g), [u, v]) => {
                    let (u, v) = (parse(u)?, parse(v)?);
                    g.add_edge(u, v).map_err(|e| GraphError::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?;
                }
                (Some(_), _) => {
                    return Err(GraphError::Parse {
                        line: line_no,
                        msg: "edge lines must be `u v`".into(),
                    })
                }
            }
        }
        graph.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing vertex count".into(),
        })
    }
}

/// A vertex map that sends every edge of `source` to an edge of `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMap {
    pub source: SimplicialGraph,
    pub target: SimplicialGraph,
    pub image: Vec<usize>,
}

impl GraphMap {
    /// Builds the map after checking that it is a graph homomorphism.
    pub fn new(
        source: SimplicialGraph,
        target: SimplicialGraph,
        image: Vec<usize>,
    ) -> Result<Self, GraphError> {
        check_homomorphism(&source, &target, &image)?;
        Ok(Self {
            source,
            target,
            image,
        })
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<_> = self.image.iter().collect();
        set.len() == self.image.len()
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &GraphMap) -> Result<GraphMap, GraphError> {
        let image = self
            .image
            .iter()
            .map(|&v| other.image.get(v).copied().ok_or(GraphError::VertexOutOfRange { vertex: v, n: other.image.len() }))
            .collect::<Result<Vec<_>, _>>()?;
        GraphMap::new(self.source.clone(), other.target.clone(), image)
    }
}

/// Checks that `image` is a homomorphism `source -> target`: adjacent
/// vertices go to adjacent (hence distinct) vertices.
pub fn check_homomorphism(
    source: &SimplicialGraph,
    target: &SimplicialGraph,
    image: &[usize],
) -> Result<(), GraphError> {
    if image.len() != source.n() {
        return Err(GraphError::ImageLength {
            expected: source.n(),
            got: image.len(),
        });
    }
    for &v in image {
        target.check_vertex(v)?;
    }
    for (u, v) in source.edges() {
        if !target.has_edge(image[u], image[v]) {
            return Err(GraphError::EdgeNotPreserved { u, v });
        }
    }
    Ok(())
}

/// Factors of the finest join decomposition of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinDecomposition {
    pub factors: Vec<Vec<usize>>,
}

impl JoinDecomposition {
    pub fn is_nontrivial(&self) -> bool {
        self.factors.len() > 1
    }
}

/// The factors are the connected components of the complement; a single
/// factor means the graph is not a nontrivial join.
pub fn join_decompose(g: &SimplicialGraph) -> JoinDecomposition {
    JoinDecomposition {
        factors: g.complement().components(),
    }
}

fn check_bound(n: usize, bound: usize) -> Result<(), GraphError> {
    if n > bound {
        Err(GraphError::SizeLimit { n, bound })
    } else {
        Ok(())
    }
}

pub fn find_graph_homomorphism(
    src: &SimplicialGraph,
    dst: &SimplicialGraph,
) -> Result<Option<GraphMap>, GraphError> {
    find_graph_homomorphism_bounded(src, dst, DEFAULT_MAP_SEARCH_BOUND)
}

pub fn find_graph_homomorphism_bounded(
    src: &SimplicialGraph,
    dst: &SimplicialGraph,
    bound: usize,
) -> Result<Option<GraphMap>, GraphError> {
    check_bound(src.n(), bound)?;
    let found = MapSearch::new(src, dst, false).run();
    Ok(found.map(|image| GraphMap {
        source: src.clone(),
        target: dst.clone(),
        image,
    }))
}

/// Injective map preserving both edges and non-edges.
pub fn find_induced_embedding(
    sub: &SimplicialGraph,
    host: &SimplicialGraph,
) -> Result<Option<GraphMap>, GraphError> {
    find_induced_embedding_bounded(sub, host, DEFAULT_MAP_SEARCH_BOUND)
}

pub fn find_induced_embedding_bounded(
    sub: &SimplicialGraph,
    host: &SimplicialGraph,
    bound: usize,
) -> Result<Option<GraphMap>, GraphError> {
    check_bound(sub.n(), bound)?;
    if sub.n() > host.n() {
        return Ok(None);
    }
    let found = MapSearch::new(sub, host, true).run();
    Ok(found.map(|image| GraphMap {
        source: sub.clone(),
        target: host.clone(),
        image,
    }))
}

/// Vertex bijection `a -> b` preserving adjacency, if any.
pub fn find_isomorphism(
    a: &SimplicialGraph,
    b: &SimplicialGraph,
    bound: usize,
) -> Result<Option<Vec<usize>>, GraphError> {
    check_bound(a.n().max(b.n()), bound)?;
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(None);
    }
    Ok(MapSearch::new(a, b, true).run())
}

struct MapSearch<'a> {
    src: &'a SimplicialGraph,
    dst: &'a SimplicialGraph,
    induced: bool,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> MapSearch<'a> {
    fn new(src: &'a SimplicialGraph, dst: &'a SimplicialGraph, induced: bool) -> Self {
        Self {
            src,
            dst,
            induced,
            image: Vec::with_capacity(src.n()),
            used: vec![false; dst.n()],
        }
    }

    fn run(mut self) -> Option<Vec<usize>> {
        if self.extend() {
            Some(self.image)
        } else {
            None
        }
    }

    fn compatible(&self, v: usize, target: usize) -> bool {
        if self.induced && self.used[target] {
            return false;
        }
        self.image.iter().enumerate().all(|(u, &tu)| {
            let edge = self.src.has_edge(u, v);
            if edge && !self.dst.has_edge(tu, target) {
                return false;
            }
            !(self.induced && !edge && self.dst.has_edge(tu, target))
        })
    }

    fn extend(&mut self) -> bool {
        let v = self.image.len();
        if v == self.src.n() {
            return true;
        }
        for target in 0..self.dst.n() {
            if !self.compatible(v, target) {
                continue;
            }
            self.image.push(target);
            self.used[target] = true;
            if self.extend() {
                return true;
            }
            self.used[target] = false;
            self.image.pop();
        }
        false
    }
}

/// A Hamiltonian cycle as a vertex sequence starting at 0, if one exists.
pub fn hamiltonian_cycle(g: &SimplicialGraph) -> Result<Option<Vec<usize>>, GraphError> {
    hamiltonian_cycle_bounded(g, DEFAULT_HAMILTONIAN_BOUND)
}

pub fn hamiltonian_cycle_bounded(
    g: &SimplicialGraph,
    bound: usize,
) -> Result<Option<Vec<usize>>, GraphError> {
    check_bound(g.n(), bound)?;
    let mut found = None;
    ham_search(g, &mut |cycle| {
        found = Some(cycle.to_vec());
        false
    });
    Ok(found)
}

/// Number of distinct undirected Hamiltonian cycles.
pub fn count_hamiltonian_cycles(g: &SimplicialGraph, bound: usize) -> Result<usize, GraphError> {
    check_bound(g.n(), bound)?;
    let mut directed = 0usize;
    ham_search(g, &mut |_| {
        directed += 1;
        true
    });
    // each undirected cycle is found once per direction
    Ok(directed / 2)
}

/// Depth-first enumeration of Hamiltonian cycles rooted at vertex 0. The
/// visitor returns `false` to stop.
fn ham_search(g: &SimplicialGraph, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let n = g.n();
    if n < 3 {
        return;
    }
    fn go(
        g: &SimplicialGraph,
        path: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let last = *path.last().unwrap();
        if path.len() == g.n() {
            if g.has_edge(last, path[0]) {
                return visit(path);
            }
            return true;
        }
        for v in 1..g.n() {
            if !used[v] && g.has_edge(last, v) {
                used[v] = true;
                path.push(v);
                let go_on = go(g, path, used, visit);
                path.pop();
                used[v] = false;
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
    let mut used = vec![false; n];
    used[0] = true;
    let mut path = vec![0];
    go(g, &mut path, &mut used, visit);
}

/// Checks that `cycle` visits every vertex once with all consecutive pairs
/// (including the wrap-around) adjacent.
pub fn is_hamiltonian_cycle(g: &SimplicialGraph, cycle: &[usize]) -> bool {
    let n = g.n();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}
