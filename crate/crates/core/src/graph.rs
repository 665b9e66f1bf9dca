//! Simple undirected graphs, edge labelings, and their text formats.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub type Vertex = usize;

/// An undirected edge stored canonically as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    #[inline]
    pub fn u(&self) -> Vertex {
        self.0
    }

    #[inline]
    pub fn v(&self) -> Vertex {
        self.1
    }

    /// The endpoint opposite to `x`, or `None` if `x` is not an endpoint.
    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if x == self.0 {
            Some(self.1)
        } else if x == self.1 {
            Some(self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: duplicate edge {edge}")]
    DuplicateEdge { line: usize, edge: Edge },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("unknown edge {0}")]
    UnknownEdge(Edge),
    #[error("edge {0} has no label")]
    MissingLabel(Edge),
    #[error("label given for edge {0}, which is not in the graph")]
    ExtraLabel(Edge),
}

/// A simple undirected graph on arbitrary (not necessarily contiguous)
/// nonnegative vertex ids.
///
/// Adjacency is kept in ordered sets so that every traversal is deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
    num_edges: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless graph on the given vertices.
    pub fn with_vertices(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        g
    }

    /// Builds a graph from an edge sequence, rejecting loops and repeated edges.
    pub fn from_edges(
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        for (i, (a, b)) in edges.into_iter().enumerate() {
            g.add_edge_at_line(a, b, i + 1)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<(), GraphError> {
        self.add_edge_at_line(a, b, 0)
    }

    fn add_edge_at_line(&mut self, a: Vertex, b: Vertex, line: usize) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop { line, vertex: a });
        }
        if self.contains_edge(a, b) {
            return Err(GraphError::DuplicateEdge {
                line,
                edge: Edge::new(a, b),
            });
        }
        self.adj.entry(a).or_default().insert(b);
        self.adj.entry(b).or_default().insert(a);
        self.num_edges += 1;
        Ok(())
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn contains_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Vertices in increasing id order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    /// Edges in lexicographic order of their canonical pairs.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| Edge(u, v)))
    }

    pub fn neighbors(&self, v: Vertex) -> Result<&BTreeSet<Vertex>, GraphError> {
        self.adj.get(&v).ok_or(GraphError::UnknownVertex(v))
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.neighbors(v).map(BTreeSet::len)
    }

    /// Vertex ids paired with their degrees, in id order.
    pub fn degrees(&self) -> impl Iterator<Item = (Vertex, usize)> + '_ {
        self.adj.iter().map(|(&v, ns)| (v, ns.len()))
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Minimum degree, or `None` for the empty graph.
    pub fn min_degree(&self) -> Option<usize> {
        self.adj.values().map(BTreeSet::len).min()
    }

    /// Deletes `v` and all its incident edges.
    pub fn remove_vertex(&mut self, v: Vertex) -> Result<(), GraphError> {
        let ns = self.adj.remove(&v).ok_or(GraphError::UnknownVertex(v))?;
        for n in &ns {
            if let Some(set) = self.adj.get_mut(n) {
                set.remove(&v);
            }
        }
        self.num_edges -= ns.len();
        Ok(())
    }

    /// Deletes an edge; its endpoints stay in the vertex set.
    pub fn remove_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        if !self.contains_edge(e.u(), e.v()) {
            return Err(GraphError::UnknownEdge(e));
        }
        self.adj.get_mut(&e.u()).expect("endpoint").remove(&e.v());
        self.adj.get_mut(&e.v()).expect("endpoint").remove(&e.u());
        self.num_edges -= 1;
        Ok(())
    }

    /// Returns a copy of the graph with the given vertices (and their incident
    /// edges) and the given edges deleted.
    ///
    /// Every named element must exist in `self`. Edges are removed first, so an
    /// edge may be listed alongside one of its endpoints.
    pub fn remove_elements(
        &self,
        vertices: &[Vertex],
        edges: &[Edge],
    ) -> Result<Graph, GraphError> {
        if let Some(&v) = vertices.iter().find(|&&v| !self.contains_vertex(v)) {
            return Err(GraphError::UnknownVertex(v));
        }
        let mut g = self.clone();
        for &e in edges {
            g.remove_edge(e)?;
        }
        for &v in vertices {
            // A repeated vertex in the list is already gone.
            if g.contains_vertex(v) {
                g.remove_vertex(v)?;
            }
        }
        Ok(g)
    }

    /// Subgraph induced on `keep`; ids not present in the graph are ignored.
    pub fn induced_subgraph(&self, keep: &BTreeSet<Vertex>) -> Graph {
        let mut g = Graph::new();
        for &v in keep {
            if let Some(ns) = self.adj.get(&v) {
                let kept: BTreeSet<Vertex> =
                    ns.iter().copied().filter(|n| keep.contains(n)).collect();
                g.num_edges += kept.len();
                g.adj.insert(v, kept);
            }
        }
        g.num_edges /= 2;
        g
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<BTreeSet<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut components = Vec::new();
        for &start in self.adj.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(x) = stack.pop() {
                comp.insert(x);
                for &y in &self.adj[&x] {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            components.push(comp);
        }
        components
    }

    /// Serializes to the edge-list format accepted by [`parse_edge_list`].
    ///
    /// Isolated vertices come first as `v <id>` lines, then one `u v` line per
    /// edge in canonical order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (v, d) in self.degrees() {
            if d == 0 {
                out.push_str(&format!("v {v}\n"));
            }
        }
        for e in self.edges() {
            out.push_str(&format!("{e}\n"));
        }
        out
    }
}

/// Parses a whitespace-separated edge list.
///
/// Blank lines and lines starting with `#` are skipped. A line `v <id>`
/// declares a (possibly isolated) vertex; every other line must hold exactly
/// two nonnegative integers.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut g = Graph::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens[0] == "v" {
            if tokens.len() != 2 {
                return Err(GraphError::Malformed {
                    line,
                    reason: "expected `v <id>`".into(),
                });
            }
            g.add_vertex(parse_vertex(tokens[1], line)?);
            continue;
        }
        if tokens.len() != 2 {
            return Err(GraphError::Malformed {
                line,
                reason: format!("expected two vertex ids, found {} tokens", tokens.len()),
            });
        }
        let a = parse_vertex(tokens[0], line)?;
        let b = parse_vertex(tokens[1], line)?;
        g.add_edge_at_line(a, b, line)?;
    }
    Ok(g)
}

fn parse_vertex(token: &str, line: usize) -> Result<Vertex, GraphError> {
    token.parse().map_err(|_| GraphError::Malformed {
        line,
        reason: format!("`{token}` is not a nonnegative integer"),
    })
}

/// The three parts of the partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeLabel {
    F1,
    F2,
    H,
}

impl EdgeLabel {
    pub const ALL: [EdgeLabel; 3] = [EdgeLabel::F1, EdgeLabel::F2, EdgeLabel::H];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Forest label by index 0 or 1.
    pub fn forest(i: usize) -> EdgeLabel {
        match i {
            0 => EdgeLabel::F1,
            1 => EdgeLabel::F2,
            _ => panic!("forest index {i} out of range"),
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeLabel::F1 => "F1",
            EdgeLabel::F2 => "F2",
            EdgeLabel::H => "H",
        })
    }
}

impl FromStr for EdgeLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "F1" => Ok(EdgeLabel::F1),
            "F2" => Ok(EdgeLabel::F2),
            "H" => Ok(EdgeLabel::H),
            other => Err(format!("unknown label `{other}`")),
        }
    }
}

/// A labeling of edges by [`EdgeLabel`], keyed by canonical edge.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgePartition {
    labels: BTreeMap<Edge, EdgeLabel>,
}

impl EdgePartition {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the label of `e`, returning the previous one.
    pub fn insert(&mut self, e: Edge, label: EdgeLabel) -> Option<EdgeLabel> {
        self.labels.insert(e, label)
    }

    pub fn get(&self, e: Edge) -> Option<EdgeLabel> {
        self.labels.get(&e).copied()
    }

    pub fn remove(&mut self, e: Edge) -> Option<EdgeLabel> {
        self.labels.remove(&e)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, EdgeLabel)> + '_ {
        self.labels.iter().map(|(&e, &l)| (e, l))
    }

    /// Edges carrying `label`, in canonical order.
    pub fn edges_with(&self, label: EdgeLabel) -> impl Iterator<Item = Edge> + '_ {
        self.iter()
            .filter(move |&(_, l)| l == label)
            .map(|(e, _)| e)
    }

    /// Degree of `v` within the part `label`.
    pub fn degree_in(&self, v: Vertex, label: EdgeLabel) -> usize {
        self.edges_with(label)
            .filter(|e| e.other(v).is_some())
            .count()
    }
}

impl FromIterator<(Edge, EdgeLabel)> for EdgePartition {
    fn from_iter<I: IntoIterator<Item = (Edge, EdgeLabel)>>(iter: I) -> Self {
        EdgePartition {
            labels: iter.into_iter().collect(),
        }
    }
}

/// Writes one `u v LABEL` line per edge of `g`, sorted by canonical pair and
/// joined with `\n` (no trailing newline).
pub fn serialize_partition(g: &Graph, p: &EdgePartition) -> Result<String, GraphError> {
    if let Some(e) = g.edges().find(|&e| p.get(e).is_none()) {
        return Err(GraphError::MissingLabel(e));
    }
    if let Some((e, _)) = p.iter().find(|(e, _)| !g.contains_edge(e.u(), e.v())) {
        return Err(GraphError::ExtraLabel(e));
    }
    let lines: Vec<String> = p.iter().map(|(e, l)| format!("{e} {l}")).collect();
    Ok(lines.join("\n"))
}

/// Parses the `u v LABEL` format produced by [`serialize_partition`].
pub fn parse_partition(text: &str) -> Result<EdgePartition, GraphError> {
    let mut p = EdgePartition::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(GraphError::Malformed {
                line,
                reason: format!("expected `u v LABEL`, found {} tokens", tokens.len()),
            });
        }
        let a = parse_vertex(tokens[0], line)?;
        let b = parse_vertex(tokens[1], line)?;
        if a == b {
            return Err(GraphError::SelfLoop { line, vertex: a });
        }
        let label = tokens[2]
            .parse()
            .map_err(|reason| GraphError::Malformed { line, reason })?;
        if p.insert(Edge::new(a, b), label).is_some() {
            return Err(GraphError::DuplicateEdge {
                line,
                edge: Edge::new(a, b),
            });
        }
    }
    Ok(p)
}
