//! Finders for the reducible configurations: a vertex of degree at most one,
//! a light edge, and a 2-alternating cycle.
//!
//! All searches break ties by smallest vertex id or lexicographically smallest
//! canonical edge, so results are reproducible.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("alpha must be at least 5, got {0}")]
    AlphaTooSmall(i64),
}

/// The class parameter `alpha`, together with the thresholds derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassParams {
    alpha: u32,
}

impl ClassParams {
    pub fn new(alpha: i64) -> Result<Self, ParamsError> {
        if alpha < 5 || alpha > u32::MAX as i64 {
            return Err(ParamsError::AlphaTooSmall(alpha));
        }
        Ok(ClassParams {
            alpha: alpha as u32,
        })
    }

    pub fn alpha(&self) -> i64 {
        self.alpha as i64
    }

    /// Largest degree allowed in `H`: `alpha - 5`.
    pub fn h_cap(&self) -> i64 {
        self.alpha() - 5
    }

    /// Largest `H`-degree at which one more `H` edge still fits: `alpha - 6`.
    /// Equals -1 when `alpha = 5`.
    pub fn h_room(&self) -> i64 {
        self.alpha() - 6
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AltCycleError {
    #[error("cycle length {0} is not an even number >= 4")]
    BadLength(usize),
    #[error("vertex {0} appears twice")]
    RepeatedVertex(Vertex),
    #[error("{0} is not an edge of the graph")]
    MissingEdge(Edge),
    #[error("vertex {vertex} at even position {position} has degree {degree}, expected 2")]
    EvenDegree {
        position: usize,
        vertex: Vertex,
        degree: usize,
    },
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
}

/// A cycle `v0 v1 … v_{2n-1}` with `n >= 2` in which every even-position
/// vertex has degree exactly 2 in the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AltCycle(Vec<Vertex>);

impl AltCycle {
    /// Wraps `seq` after checking it against `g`.
    pub fn new(seq: Vec<Vertex>, g: &Graph) -> Result<Self, AltCycleError> {
        let c = AltCycle(seq);
        c.check(g)?;
        Ok(c)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cycle edges `{v_i, v_{i+1 mod 2n}}` paired with their index `i`.
    pub fn indexed_edges(&self) -> impl Iterator<Item = (usize, Edge)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (i, Edge::new(self.0[i], self.0[(i + 1) % n])))
    }

    /// Re-checks every invariant against `g`.
    pub fn check(&self, g: &Graph) -> Result<(), AltCycleError> {
        let len = self.0.len();
        if len < 4 || !len.is_multiple_of(2) {
            return Err(AltCycleError::BadLength(len));
        }
        let mut seen = HashSet::new();
        for &v in &self.0 {
            if !g.contains_vertex(v) {
                return Err(AltCycleError::UnknownVertex(v));
            }
            if !seen.insert(v) {
                return Err(AltCycleError::RepeatedVertex(v));
            }
        }
        for (_, e) in self.indexed_edges() {
            if !g.contains_edge(e.u(), e.v()) {
                return Err(AltCycleError::MissingEdge(e));
            }
        }
        for (position, &vertex) in self.0.iter().enumerate().step_by(2) {
            let degree = g.degree(vertex).expect("checked above");
            if degree != 2 {
                return Err(AltCycleError::EvenDegree {
                    position,
                    vertex,
                    degree,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for AltCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Vertex::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A reducible configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Configuration {
    SmallVertex(Vertex),
    LightEdge(Edge),
    AltCycle(AltCycle),
}

impl Configuration {
    /// Checks the configuration's defining property on `g`.
    pub fn is_valid(&self, g: &Graph, params: ClassParams) -> bool {
        match self {
            Configuration::SmallVertex(v) => g.degree(*v).is_ok_and(|d| d <= 1),
            Configuration::LightEdge(e) => {
                g.contains_edge(e.u(), e.v())
                    && (g.degree(e.u()).unwrap() + g.degree(e.v()).unwrap()) as i64
                        <= params.alpha()
            }
            Configuration::AltCycle(c) => c.check(g).is_ok(),
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Configuration::SmallVertex(v) => write!(f, "SmallVertex {v}"),
            Configuration::LightEdge(e) => write!(f, "LightEdge {e}"),
            Configuration::AltCycle(c) => write!(f, "AltCycle {c}"),
        }
    }
}

/// A graph with minimum degree at least 2, no light edge and no 2-alternating
/// cycle. Its presence after deletions shows the input is outside the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotInClassWitness(pub Graph);

/// Smallest-id vertex of degree at most 1.
pub fn find_small_vertex(g: &Graph) -> Option<Vertex> {
    g.degrees().find(|&(_, d)| d <= 1).map(|(v, _)| v)
}

/// Lexicographically smallest edge `uv` with `d(u) + d(v) <= alpha`.
pub fn find_light_edge(g: &Graph, params: ClassParams) -> Option<Edge> {
    let alpha = params.alpha();
    g.edges().find(|e| {
        let sum = g.degree(e.u()).unwrap() + g.degree(e.v()).unwrap();
        sum as i64 <= alpha
    })
}

/// One degree-2 vertex `mid` with neighbors `x < y`, viewed as an edge `x–y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AuxTriple {
    pub x: Vertex,
    pub y: Vertex,
    pub mid: Vertex,
}

/// Multigraph on the host vertices with one edge per degree-2 vertex. A cycle
/// through `n` of its edges spells out a candidate 2-alternating cycle of
/// length `2n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuxMultigraph {
    /// Ordered by `mid`.
    pub triples: Vec<AuxTriple>,
}

impl AuxMultigraph {
    /// Incident `(other endpoint, triple index)` pairs per vertex, sorted by
    /// other endpoint and then by midpoint.
    fn incidence(&self) -> BTreeMap<Vertex, Vec<(Vertex, usize)>> {
        let mut inc: BTreeMap<Vertex, Vec<(Vertex, usize)>> = BTreeMap::new();
        for (i, t) in self.triples.iter().enumerate() {
            inc.entry(t.x).or_default().push((t.y, i));
            inc.entry(t.y).or_default().push((t.x, i));
        }
        for list in inc.values_mut() {
            list.sort_by_key(|&(w, i)| (w, self.triples[i].mid));
        }
        inc
    }
}

pub fn build_auxiliary_multigraph(g: &Graph) -> AuxMultigraph {
    let triples = g
        .degrees()
        .filter(|&(_, d)| d == 2)
        .map(|(mid, _)| {
            let mut ns = g.neighbors(mid).unwrap().iter().copied();
            let (x, y) = (ns.next().unwrap(), ns.next().unwrap());
            AuxTriple { x, y, mid }
        })
        .collect();
    AuxMultigraph { triples }
}

/// Finds a 2-alternating cycle if one exists.
///
/// Simple cycles of the auxiliary multigraph are enumerated by backtracking,
/// rooted at their smallest vertex. Each is expanded into a host cycle by
/// interleaving midpoints; the first one whose host vertices are pairwise
/// distinct is normalized and returned. A midpoint can only collide with a
/// cycle vertex when two degree-2 vertices are adjacent, so in graphs without
/// light edges the first aux cycle found is accepted.
pub fn find_two_alternating_cycle(g: &Graph) -> Option<AltCycle> {
    let aux = build_auxiliary_multigraph(g);
    if aux.triples.len() < 2 {
        return None;
    }
    let inc = aux.incidence();

    for (&start, start_list) in &inc {
        if start_list.len() < 2 {
            continue;
        }
        let mut path: Vec<Vertex> = vec![start];
        let mut via: Vec<usize> = Vec::new();
        let mut cursor: Vec<usize> = vec![0];
        let mut on_path: HashSet<Vertex> = HashSet::from([start]);

        while let Some(&top) = path.last() {
            let list = &inc[&top];
            let i = *cursor.last().unwrap();
            if i >= list.len() {
                path.pop();
                cursor.pop();
                on_path.remove(&top);
                via.pop();
                continue;
            }
            *cursor.last_mut().unwrap() += 1;
            let (w, t) = list[i];
            if via.last() == Some(&t) {
                continue;
            }
            if w == start {
                if via.is_empty() {
                    continue;
                }
                let mut triples = via.clone();
                triples.push(t);
                if let Some(seq) = expand_aux_cycle(&aux, &path, &triples) {
                    return Some(normalize_alt_cycle(g, seq));
                }
            } else if w > start && !on_path.contains(&w) && inc[&w].len() >= 2 {
                path.push(w);
                via.push(t);
                cursor.push(0);
                on_path.insert(w);
            }
        }
    }
    None
}

/// Host sequence `a0 m0 a1 m1 …` for an aux cycle, or `None` if some midpoint
/// coincides with an aux vertex.
fn expand_aux_cycle(
    aux: &AuxMultigraph,
    path: &[Vertex],
    triples: &[usize],
) -> Option<Vec<Vertex>> {
    let on_cycle: HashSet<Vertex> = path.iter().copied().collect();
    let mut seq = Vec::with_capacity(2 * path.len());
    for (&a, &t) in path.iter().zip(triples) {
        let mid = aux.triples[t].mid;
        if on_cycle.contains(&mid) {
            return None;
        }
        seq.push(a);
        seq.push(mid);
    }
    Some(seq)
}

/// Rotates and orients a valid alternating sequence: `v0` is the smallest
/// vertex that can sit at an even position, and `v1` is the smaller of its two
/// cycle neighbors.
fn normalize_alt_cycle(g: &Graph, seq: Vec<Vertex>) -> AltCycle {
    let len = seq.len();
    let class_ok = |parity: usize| {
        seq.iter()
            .skip(parity)
            .step_by(2)
            .all(|&v| g.degree(v).unwrap() == 2)
    };
    let start = (0..len)
        .filter(|&i| class_ok(i % 2))
        .min_by_key(|&i| seq[i])
        .expect("at least one parity class has degree 2");
    let mut rotated: Vec<Vertex> = (0..len).map(|k| seq[(start + k) % len]).collect();
    if rotated[len - 1] < rotated[1] {
        rotated[1..].reverse();
    }
    AltCycle(rotated)
}

/// Looks for a configuration in fixed order: small vertex, then light edge,
/// then 2-alternating cycle. The order matters to the decomposer, which relies
/// on the absence of light edges whenever a cycle is reported.
pub fn find_configuration(
    g: &Graph,
    params: ClassParams,
) -> Result<Configuration, NotInClassWitness> {
    if let Some(v) = find_small_vertex(g) {
        return Ok(Configuration::SmallVertex(v));
    }
    if let Some(e) = find_light_edge(g, params) {
        return Ok(Configuration::LightEdge(e));
    }
    if let Some(c) = find_two_alternating_cycle(g) {
        return Ok(Configuration::AltCycle(c));
    }
    Err(NotInClassWitness(g.clone()))
}
