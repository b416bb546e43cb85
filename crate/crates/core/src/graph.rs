//! Finite simple graphs specialized to sum graphs and weight graphs.
//!
//! Vertices are `0..p`. Edges are stored as sorted `(min, max)` pairs so that
//! iteration, serialization and witnesses are deterministic.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::torus::{Weight, WeightSystem};

/// Largest vertex count accepted by [`SimpleGraph::max_clique`].
pub const MAX_CLIQUE_VERTICES: usize = 32;
/// Largest vertex count accepted by [`are_isomorphic`].
pub const MAX_ISOMORPHISM_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {found} vertices, limit is {limit}")]
    TooLarge { found: usize, limit: usize },
    #[error("vertex {0} is not in the graph")]
    BadVertex(usize),
    #[error("bound requires p >= {min}, got {found}")]
    DomainError { found: usize, min: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
    labels: Option<Vec<Weight>>,
}

impl SimpleGraph {
    /// Builds a graph, normalizing each edge to `(min, max)`.
    ///
    /// Panics on loops or out-of-range endpoints.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = edges
            .into_iter()
            .map(|(a, b)| {
                assert!(a != b, "loops are not allowed");
                assert!(
                    a < vertex_count && b < vertex_count,
                    "edge endpoint out of range"
                );
                (a.min(b), a.max(b))
            })
            .collect();
        Self {
            vertex_count,
            edges,
            labels: None,
        }
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self::new(vertex_count, [])
    }

    pub fn complete(vertex_count: usize) -> Self {
        Self::new(vertex_count, all_pairs(vertex_count))
    }

    pub fn path(vertex_count: usize) -> Self {
        Self::new(vertex_count, (1..vertex_count).map(|v| (v - 1, v)))
    }

    pub fn with_labels(mut self, labels: Vec<Weight>) -> Self {
        assert_eq!(labels.len(), self.vertex_count, "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn labels(&self) -> Option<&[Weight]> {
        self.labels.as_deref()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.vertex_count)
            .filter(|&u| u != v && self.has_edge(u, v))
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.vertex_count]; self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    pub fn complement(&self) -> SimpleGraph {
        let edges = all_pairs(self.vertex_count).filter(|&(a, b)| !self.has_edge(a, b));
        let mut g = SimpleGraph::new(self.vertex_count, edges);
        g.labels = self.labels.clone();
        g
    }

    pub fn isolated_vertices(&self) -> BTreeSet<usize> {
        let mut touched = vec![false; self.vertex_count];
        for &(a, b) in &self.edges {
            touched[a] = true;
            touched[b] = true;
        }
        (0..self.vertex_count).filter(|&v| !touched[v]).collect()
    }

    /// Breadth-first connectivity; the graph with no vertices is connected.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for u in 0..self.vertex_count {
                if adj[v][u] && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Two-colouring by breadth-first search. When that fails, the result
    /// carries an odd cycle as a vertex sequence (closing edge implied).
    pub fn bipartition(&self) -> Bipartition {
        let adj = self.adjacency();
        let p = self.vertex_count;
        let mut colour: Vec<Option<bool>> = vec![None; p];
        let mut parent: Vec<Option<usize>> = vec![None; p];
        let mut depth = vec![0usize; p];
        for start in 0..p {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for u in 0..p {
                    if !adj[v][u] {
                        continue;
                    }
                    match colour[u] {
                        None => {
                            colour[u] = Some(!colour[v].unwrap());
                            parent[u] = Some(v);
                            depth[u] = depth[v] + 1;
                            queue.push_back(u);
                        }
                        Some(c) if c == colour[v].unwrap() => {
                            return Bipartition::OddCycle(tree_cycle(v, u, &parent, &depth));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartition::Bipartite(colour.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartition::Bipartite(_))
    }

    /// Lexicographically first triangle.
    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        let adj = self.adjacency();
        let p = self.vertex_count;
        for a in 0..p {
            for b in a + 1..p {
                if !adj[a][b] {
                    continue;
                }
                if let Some(c) = (b + 1..p).find(|&c| adj[a][c] && adj[b][c]) {
                    return Some([a, b, c]);
                }
            }
        }
        None
    }

    pub fn has_triangle(&self) -> bool {
        self.find_triangle().is_some()
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count >= 1 && self.is_connected() && self.edge_count() + 1 == self.vertex_count
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == binomial2(self.vertex_count)
    }

    /// Lexicographically first missing edge, if any.
    pub fn first_missing_edge(&self) -> Option<(usize, usize)> {
        all_pairs(self.vertex_count).find(|&(a, b)| !self.has_edge(a, b))
    }

    /// Exact maximum clique by branch and bound. The witness is the first
    /// maximum clique met when extending candidates in increasing order.
    pub fn max_clique(&self) -> Result<Clique, GraphError> {
        let p = self.vertex_count;
        if p > MAX_CLIQUE_VERTICES {
            return Err(GraphError::TooLarge {
                found: p,
                limit: MAX_CLIQUE_VERTICES,
            });
        }
        let adj = self.adjacency();
        let mut best = Vec::new();
        let mut current = Vec::new();
        let candidates: Vec<usize> = (0..p).collect();
        extend_clique(&adj, &mut current, &candidates, &mut best);
        Ok(Clique { members: best })
    }

    /// Induced subgraph on `vertices`, renumbered in increasing order.
    pub fn induced(&self, vertices: &BTreeSet<usize>) -> Result<SimpleGraph, GraphError> {
        if let Some(&bad) = vertices.iter().find(|&&v| v >= self.vertex_count) {
            return Err(GraphError::BadVertex(bad));
        }
        let order: Vec<usize> = vertices.iter().copied().collect();
        let position = |v: usize| order.binary_search(&v).expect("vertex in subset");
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| vertices.contains(a) && vertices.contains(b))
            .map(|&(a, b)| (position(a), position(b)));
        let mut g = SimpleGraph::new(order.len(), edges);
        g.labels = self
            .labels
            .as_ref()
            .map(|l| order.iter().map(|&v| l[v].clone()).collect());
        Ok(g)
    }

    /// Graphviz rendering with deterministic vertex and edge order.
    pub fn to_dot(&self, name: &str, kind: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph \"{name}\" {{").unwrap();
        writeln!(out, "  graph [kind=\"{kind}\"];").unwrap();
        for v in 0..self.vertex_count {
            let label = match &self.labels {
                Some(l) => l[v].to_string(),
                None => format!("v{}", v + 1),
            };
            writeln!(out, "  v{} [label=\"{label}\"];", v + 1).unwrap();
        }
        for &(a, b) in &self.edges {
            writeln!(out, "  v{} -- v{};", a + 1, b + 1).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn all_pairs(p: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..p).flat_map(move |a| (a + 1..p).map(move |b| (a, b)))
}

pub(crate) fn binomial2(p: usize) -> usize {
    p * p.saturating_sub(1) / 2
}

/// Cycle through the BFS tree closed by the non-tree edge `v–u`, where both
/// endpoints received the same colour.
fn tree_cycle(v: usize, u: usize, parent: &[Option<usize>], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (v, u);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a].unwrap();
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b].unwrap();
        right.push(b);
    }
    while a != b {
        a = parent[a].unwrap();
        b = parent[b].unwrap();
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

fn extend_clique(
    adj: &[Vec<bool>],
    current: &mut Vec<usize>,
    candidates: &[usize],
    best: &mut Vec<usize>,
) {
    if candidates.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    for (idx, &v) in candidates.iter().enumerate() {
        if current.len() + candidates.len() - idx <= best.len() {
            return;
        }
        let next: Vec<usize> = candidates[idx + 1..]
            .iter()
            .copied()
            .filter(|&u| adj[v][u])
            .collect();
        current.push(v);
        extend_clique(adj, current, &next, best);
        current.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// Colour class of every vertex.
    Bipartite(Vec<bool>),
    OddCycle(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clique {
    pub members: Vec<usize>,
}

impl Clique {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Graph on the weights with an edge `{i, j}` whenever `α_i + α_j` is a weight.
pub fn sum_graph(ws: &WeightSystem) -> SimpleGraph {
    let p = ws.len();
    let edges =
        all_pairs(p).filter(|&(i, j)| ws.index_of(&ws.weight(i).sum(ws.weight(j))).is_some());
    SimpleGraph::new(p, edges).with_labels(ws.weights().to_vec())
}

/// The weight graph: complement of the sum graph.
pub fn weight_graph(ws: &WeightSystem) -> SimpleGraph {
    sum_graph(ws).complement()
}

/// `Σ_{j=1}^{⌊p/2⌋} (p − 2j)`, the largest possible number of sum-graph edges.
pub fn max_sum_edges(p: usize) -> usize {
    (1..=p / 2).map(|j| p - 2 * j).sum()
}

/// `C(p, 2) − max_sum_edges(p)`, the fewest edges a weight graph can have.
pub fn min_weight_graph_edges(p: usize) -> usize {
    binomial2(p) - max_sum_edges(p)
}

/// Whether `C(p−1, 2) − Σ_{j=1}^{⌊p/2⌋}(p − 2j) > 0`, stated for `p ≥ 4`.
pub fn lemma_inequality_holds(p: usize) -> Result<bool, GraphError> {
    if p < 4 {
        return Err(GraphError::DomainError { found: p, min: 4 });
    }
    Ok(binomial2(p - 1) > max_sum_edges(p))
}

/// Disjoint union of `g1` and `g2` plus every edge between them. Vertices of
/// `g2` are shifted by `g1.vertex_count()`.
pub fn join(g1: &SimpleGraph, g2: &SimpleGraph) -> SimpleGraph {
    let shift = g1.vertex_count;
    let edges = g1
        .edges()
        .chain(g2.edges().map(|(a, b)| (a + shift, b + shift)))
        .chain((0..shift).flat_map(|a| (0..g2.vertex_count).map(move |b| (a, b + shift))));
    let mut g = SimpleGraph::new(shift + g2.vertex_count, edges);
    if let (Some(l1), Some(l2)) = (&g1.labels, &g2.labels) {
        g.labels = Some(l1.iter().chain(l2).cloned().collect());
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsomorphismMode {
    Structural,
    /// Only vertices with equal labels may correspond.
    RespectLabels,
}

/// Backtracking isomorphism search with degree pruning. Returns a bijection
/// `map` with `g1` edge `{a,b}` ⇔ `g2` edge `{map[a], map[b]}`.
pub fn are_isomorphic(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    mode: IsomorphismMode,
) -> Result<Option<Vec<usize>>, GraphError> {
    for g in [g1, g2] {
        if g.vertex_count > MAX_ISOMORPHISM_VERTICES {
            return Err(GraphError::TooLarge {
                found: g.vertex_count,
                limit: MAX_ISOMORPHISM_VERTICES,
            });
        }
    }
    let mut found = None;
    isomorphisms(g1, g2, mode, &mut |map| {
        found = Some(map.to_vec());
        true
    });
    Ok(found)
}

/// Enumerates isomorphisms `g1 → g2` in lexicographic order of the image
/// sequence, calling `visit` for each; stops when `visit` returns true.
pub(crate) fn isomorphisms(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    mode: IsomorphismMode,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let p = g1.vertex_count;
    if p != g2.vertex_count || g1.edge_count() != g2.edge_count() {
        return;
    }
    let mut d1: Vec<usize> = (0..p).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..p).map(|v| g2.degree(v)).collect();
    let (deg1, deg2) = (d1.clone(), d2.clone());
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return;
    }
    let labels_ok = |a: usize, b: usize| match (mode, &g1.labels, &g2.labels) {
        (IsomorphismMode::RespectLabels, Some(l1), Some(l2)) => l1[a] == l2[b],
        (IsomorphismMode::RespectLabels, _, _) => false,
        (IsomorphismMode::Structural, _, _) => true,
    };
    let (a1, a2) = (g1.adjacency(), g2.adjacency());
    let mut map = vec![usize::MAX; p];
    let mut used = vec![false; p];
    search(
        0, p, &a1, &a2, &deg1, &deg2, &labels_ok, &mut map, &mut used, visit,
    );
}

#[allow(clippy::too_many_arguments)]
fn search(
    v: usize,
    p: usize,
    a1: &[Vec<bool>],
    a2: &[Vec<bool>],
    deg1: &[usize],
    deg2: &[usize],
    labels_ok: &dyn Fn(usize, usize) -> bool,
    map: &mut [usize],
    used: &mut [bool],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if v == p {
        return visit(map);
    }
    for u in 0..p {
        if used[u] || deg1[v] != deg2[u] || !labels_ok(v, u) {
            continue;
        }
        if (0..v).any(|w| a1[v][w] != a2[u][map[w]]) {
            continue;
        }
        map[v] = u;
        used[u] = true;
        let stop = search(v + 1, p, a1, a2, deg1, deg2, labels_ok, map, used, visit);
        used[u] = false;
        map[v] = usize::MAX;
        if stop {
            return true;
        }
    }
    false
}
