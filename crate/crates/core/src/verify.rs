//! Independent checks of a partition against the forest/degree caps, plus
//! exhaustive oracles for small graphs.
//!
//! Nothing here calls into the decomposer or the configuration finders; the
//! oracles enumerate from scratch so they can be used to cross-check them.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::dsu::DisjointSets;
use crate::graph::{Edge, EdgeLabel, EdgePartition, Graph, GraphError, Vertex};
use crate::structure::ClassParams;

/// One broken condition found by [`verify_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `edge` is in the graph but unlabeled (`missing`), or labeled but not
    /// in the graph.
    NotAPartition { edge: Edge, missing: bool },
    /// Closing a cycle in `forest`; `cycle` lists its vertices in order.
    CycleInForest {
        forest: EdgeLabel,
        cycle: Vec<Vertex>,
    },
    ForestCapExceeded {
        vertex: Vertex,
        forest: EdgeLabel,
        actual: usize,
        cap: usize,
    },
    HDegreeExceeded {
        vertex: Vertex,
        actual: usize,
        cap: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotAPartition {
                edge,
                missing: true,
            } => write!(f, "edge {edge} is unlabeled"),
            Violation::NotAPartition {
                edge,
                missing: false,
            } => write!(f, "edge {edge} is not in the graph"),
            Violation::CycleInForest { forest, cycle } => {
                let vs: Vec<String> = cycle.iter().map(Vertex::to_string).collect();
                write!(f, "{forest} contains cycle {}", vs.join(" "))
            }
            Violation::ForestCapExceeded {
                vertex,
                forest,
                actual,
                cap,
            } => {
                write!(f, "vertex {vertex} has {forest}-degree {actual} > {cap}")
            }
            Violation::HDegreeExceeded {
                vertex,
                actual,
                cap,
            } => {
                write!(f, "vertex {vertex} has H-degree {actual} > {cap}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("no violations");
        }
        let parts: Vec<String> = self.violations.iter().map(Violation::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Forest cap computed without going through the decomposer: for `x <= 0`
/// the ceiling is at most 0 and the cap is 2.
fn cap_for(degree: usize, params: ClassParams) -> usize {
    let x = degree as i64 - params.alpha() + 6;
    if x <= 0 {
        2
    } else {
        (((x + 1) / 2) as usize).max(2)
    }
}

fn vertex_index(g: &Graph) -> HashMap<Vertex, usize> {
    g.vertices().enumerate().map(|(i, v)| (v, i)).collect()
}

/// Whether `(V(g), subset)` is acyclic.
pub fn is_forest(g: &Graph, subset: &[Edge]) -> Result<bool, GraphError> {
    let index = vertex_index(g);
    let mut dsu = DisjointSets::new(index.len());
    for &e in subset {
        if !g.contains_edge(e.u(), e.v()) {
            return Err(GraphError::UnknownEdge(e));
        }
        if !dsu.union(index[&e.u()], index[&e.v()]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Path from `from` to `to` in the forest given by `adj`, if any.
fn forest_path(
    adj: &BTreeMap<Vertex, Vec<Vertex>>,
    from: Vertex,
    to: Vertex,
) -> Option<Vec<Vertex>> {
    let mut prev: HashMap<Vertex, Vertex> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    prev.insert(from, from);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in adj.get(&x).into_iter().flatten() {
            if let std::collections::hash_map::Entry::Vacant(slot) = prev.entry(y) {
                slot.insert(x);
                queue.push_back(y);
            }
        }
    }
    None
}

/// Checks `p` against every condition on the partition and returns all
/// violations found:
///
/// 1. `p` labels exactly the edges of `g`;
/// 2. the `F1` and `F2` classes are forests;
/// 3. `d_Fi(v) <= max(2, ceil((d_g(v) - alpha + 6) / 2))`;
/// 4. `d_H(v) <= alpha - 5`.
///
/// Labels on edges outside `g` are reported and otherwise ignored.
pub fn verify_partition(g: &Graph, p: &EdgePartition, params: ClassParams) -> VerificationReport {
    let mut violations = Vec::new();
    for e in g.edges() {
        if p.get(e).is_none() {
            violations.push(Violation::NotAPartition {
                edge: e,
                missing: true,
            });
        }
    }
    for (e, _) in p.iter() {
        if !g.contains_edge(e.u(), e.v()) {
            violations.push(Violation::NotAPartition {
                edge: e,
                missing: false,
            });
        }
    }

    let index = vertex_index(g);
    let mut counts: HashMap<Vertex, [usize; 3]> = HashMap::new();
    for forest in [EdgeLabel::F1, EdgeLabel::F2] {
        let mut dsu = DisjointSets::new(index.len());
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for e in p
            .edges_with(forest)
            .filter(|e| g.contains_edge(e.u(), e.v()))
        {
            if dsu.union(index[&e.u()], index[&e.v()]) {
                adj.entry(e.u()).or_default().push(e.v());
                adj.entry(e.v()).or_default().push(e.u());
            } else {
                let cycle = forest_path(&adj, e.u(), e.v()).expect("endpoints already connected");
                violations.push(Violation::CycleInForest { forest, cycle });
            }
        }
    }
    for (e, l) in p.iter().filter(|(e, _)| g.contains_edge(e.u(), e.v())) {
        counts.entry(e.u()).or_insert([0; 3])[l.index()] += 1;
        counts.entry(e.v()).or_insert([0; 3])[l.index()] += 1;
    }
    for (v, d) in g.degrees() {
        let c = counts.get(&v).copied().unwrap_or([0; 3]);
        let cap = cap_for(d, params);
        for forest in [EdgeLabel::F1, EdgeLabel::F2] {
            let actual = c[forest.index()];
            if actual > cap {
                violations.push(Violation::ForestCapExceeded {
                    vertex: v,
                    forest,
                    actual,
                    cap,
                });
            }
        }
        let actual = c[EdgeLabel::H.index()];
        if actual as i64 > params.h_cap() {
            violations.push(Violation::HDegreeExceeded {
                vertex: v,
                actual,
                cap: params.h_cap(),
            });
        }
    }
    VerificationReport { violations }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph has {edges} edges, above the search limit of {limit}")]
pub struct TooLarge {
    pub edges: usize,
    pub limit: usize,
}

pub const DEFAULT_EDGE_LIMIT: usize = 14;

struct Search {
    edges: Vec<(usize, usize)>,
    forest_caps: Vec<usize>,
    h_cap: i64,
    counts: Vec<[usize; 3]>,
    forests: [DisjointSets; 2],
    labels: Vec<EdgeLabel>,
}

impl Search {
    fn run(&mut self, k: usize) -> bool {
        if k == self.edges.len() {
            return true;
        }
        let (a, b) = self.edges[k];
        for label in EdgeLabel::ALL {
            let i = label.index();
            let fits = match label {
                EdgeLabel::H => {
                    (self.counts[a][i] as i64) < self.h_cap
                        && (self.counts[b][i] as i64) < self.h_cap
                }
                _ => {
                    self.counts[a][i] < self.forest_caps[a]
                        && self.counts[b][i] < self.forest_caps[b]
                }
            };
            if !fits {
                continue;
            }
            let checkpoint = if label == EdgeLabel::H {
                None
            } else {
                let cp = self.forests[i].checkpoint();
                if !self.forests[i].union(a, b) {
                    continue;
                }
                Some(cp)
            };
            self.counts[a][i] += 1;
            self.counts[b][i] += 1;
            self.labels.push(label);
            if self.run(k + 1) {
                return true;
            }
            self.labels.pop();
            self.counts[a][i] -= 1;
            self.counts[b][i] -= 1;
            if let Some(cp) = checkpoint {
                self.forests[i].rollback(cp);
            }
        }
        false
    }
}

/// Exhaustive search for a valid partition.
///
/// Edges are labeled in canonical order, trying `F1`, `F2`, `H` in turn, so
/// the first hit is the lexicographically smallest valid labeling. Branches
/// are cut as soon as a degree cap is exceeded or a forest edge closes a
/// cycle.
pub fn brute_force_partition(
    g: &Graph,
    params: ClassParams,
    edge_limit: usize,
) -> Result<Option<EdgePartition>, TooLarge> {
    if g.num_edges() > edge_limit {
        return Err(TooLarge {
            edges: g.num_edges(),
            limit: edge_limit,
        });
    }
    let index = vertex_index(g);
    let canon: Vec<Edge> = g.edges().collect();
    let mut search = Search {
        edges: canon
            .iter()
            .map(|e| (index[&e.u()], index[&e.v()]))
            .collect(),
        forest_caps: g.degrees().map(|(_, d)| cap_for(d, params)).collect(),
        h_cap: params.h_cap(),
        counts: vec![[0; 3]; index.len()],
        forests: [
            DisjointSets::new(index.len()),
            DisjointSets::new(index.len()),
        ],
        labels: Vec::with_capacity(canon.len()),
    };
    if !search.run(0) {
        return Ok(None);
    }
    Ok(Some(canon.into_iter().zip(search.labels).collect()))
}

/// All simple cycles of length `3..=max_len`, each once: smallest vertex
/// first, and its smaller cycle neighbor second.
pub fn enumerate_simple_cycles(g: &Graph, max_len: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for start in g.vertices() {
        let mut path = vec![start];
        let mut on_path = BTreeSet::from([start]);
        extend_cycles(g, start, max_len, &mut path, &mut on_path, &mut out);
    }
    out
}

fn extend_cycles(
    g: &Graph,
    start: Vertex,
    max_len: usize,
    path: &mut Vec<Vertex>,
    on_path: &mut BTreeSet<Vertex>,
    out: &mut Vec<Vec<Vertex>>,
) {
    let last = *path.last().unwrap();
    for &next in g.neighbors(last).unwrap() {
        if next == start && path.len() >= 3 && path[1] < last {
            out.push(path.clone());
        } else if next > start && !on_path.contains(&next) && path.len() < max_len {
            path.push(next);
            on_path.insert(next);
            extend_cycles(g, start, max_len, path, on_path, out);
            on_path.remove(&next);
            path.pop();
        }
    }
}

/// Brute-force 2-alternating-cycle test: some even simple cycle of length at
/// least 4 has all vertices of one position parity at degree 2. Returns such a
/// cycle rotated so that parity sits at even positions.
pub fn alt_cycle_oracle(g: &Graph) -> Option<Vec<Vertex>> {
    let len_bound = g.num_vertices();
    for c in enumerate_simple_cycles(g, len_bound) {
        if c.len() < 4 || c.len() % 2 != 0 {
            continue;
        }
        for parity in 0..2 {
            if c.iter()
                .skip(parity)
                .step_by(2)
                .all(|&v| g.degree(v).unwrap() == 2)
            {
                let mut rotated = c.clone();
                rotated.rotate_left(parity);
                return Some(rotated);
            }
        }
    }
    None
}

/// Brute-force light-edge test.
pub fn light_edge_oracle(g: &Graph, params: ClassParams) -> Option<Edge> {
    let mut light: Vec<Edge> = Vec::new();
    for u in g.vertices() {
        for &v in g.neighbors(u).unwrap() {
            if (g.degree(u).unwrap() + g.degree(v).unwrap()) as i64 <= params.alpha() {
                light.push(Edge::new(u, v));
            }
        }
    }
    light.into_iter().min()
}

/// Whether `g` has no `K4` minor, decided by series-parallel reduction:
/// repeatedly delete vertices of degree at most 1 and suppress vertices of
/// degree 2 (dropping the new edge if it is already present). The graph is
/// `K4`-minor-free iff nothing remains.
pub fn is_k4_minor_free(g: &Graph) -> bool {
    let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = g
        .vertices()
        .map(|v| (v, g.neighbors(v).unwrap().clone()))
        .collect();
    let mut work: Vec<Vertex> = adj.keys().copied().collect();
    while let Some(x) = work.pop() {
        let Some(ns) = adj.get(&x) else { continue };
        if ns.len() > 2 {
            continue;
        }
        let ns: Vec<Vertex> = adj.remove(&x).unwrap().into_iter().collect();
        for n in &ns {
            adj.get_mut(n).unwrap().remove(&x);
            work.push(*n);
        }
        if let [a, b] = ns[..] {
            adj.get_mut(&a).unwrap().insert(b);
            adj.get_mut(&b).unwrap().insert(a);
        }
    }
    adj.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn params(a: i64) -> ClassParams {
        ClassParams::new(a).unwrap()
    }

    fn cycle(k: usize) -> Graph {
        Graph::from_edges((0..k).map(|i| (i, (i + 1) % k))).unwrap()
    }

    fn complete(k: usize) -> Graph {
        Graph::from_edges((0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn forest_checks() {
        let c4 = cycle(4);
        assert_eq!(
            is_forest(&c4, &[Edge::new(0, 1), Edge::new(1, 2)]),
            Ok(true)
        );
        assert_eq!(is_forest(&c4, &[]), Ok(true));
        let tri = cycle(3);
        let all: Vec<Edge> = tri.edges().collect();
        assert_eq!(is_forest(&tri, &all), Ok(false));
        assert_eq!(
            is_forest(&c4, &[Edge::new(0, 2)]),
            Err(GraphError::UnknownEdge(Edge::new(0, 2)))
        );
    }

    #[test]
    fn verify_examples() {
        let c4 = cycle(4);
        let p: EdgePartition = c4
            .edges()
            .zip([EdgeLabel::F2, EdgeLabel::F1, EdgeLabel::F1, EdgeLabel::F2])
            .collect();
        assert!(verify_partition(&c4, &p, params(7)).is_valid());

        let tri = cycle(3);
        let p: EdgePartition = tri.edges().map(|e| (e, EdgeLabel::F1)).collect();
        let report = verify_partition(&tri, &p, params(7));
        assert_eq!(
            report.violations,
            vec![Violation::CycleInForest {
                forest: EdgeLabel::F1,
                cycle: vec![1, 0, 2]
            }]
        );

        let k2 = parse_edge_list("0 1").unwrap();
        let p: EdgePartition = k2.edges().map(|e| (e, EdgeLabel::H)).collect();
        let report = verify_partition(&k2, &p, params(5));
        assert_eq!(
            report.violations,
            vec![
                Violation::HDegreeExceeded {
                    vertex: 0,
                    actual: 1,
                    cap: 0
                },
                Violation::HDegreeExceeded {
                    vertex: 1,
                    actual: 1,
                    cap: 0
                },
            ]
        );
    }

    #[test]
    fn verify_reports_everything() {
        let star = Graph::from_edges((1..=4).map(|i| (0, i))).unwrap();
        let mut p: EdgePartition = star.edges().map(|e| (e, EdgeLabel::F1)).collect();
        p.remove(Edge::new(0, 4));
        p.insert(Edge::new(1, 2), EdgeLabel::H);
        let report = verify_partition(&star, &p, params(9));
        assert!(report.violations.contains(&Violation::NotAPartition {
            edge: Edge::new(0, 4),
            missing: true
        }));
        assert!(report.violations.contains(&Violation::NotAPartition {
            edge: Edge::new(1, 2),
            missing: false
        }));
        assert!(report.violations.contains(&Violation::ForestCapExceeded {
            vertex: 0,
            forest: EdgeLabel::F1,
            actual: 3,
            cap: 2
        }));
    }

    #[test]
    fn brute_force_examples() {
        let c4 = cycle(4);
        let p = brute_force_partition(&c4, params(5), DEFAULT_EDGE_LIMIT)
            .unwrap()
            .unwrap();
        assert!(verify_partition(&c4, &p, params(5)).is_valid());
        assert!(p.iter().all(|(_, l)| l != EdgeLabel::H));

        let k4 = complete(4);
        let p = brute_force_partition(&k4, params(5), DEFAULT_EDGE_LIMIT)
            .unwrap()
            .unwrap();
        assert!(verify_partition(&k4, &p, params(5)).is_valid());

        let single = Graph::with_vertices([0]);
        assert_eq!(
            brute_force_partition(&single, params(9), DEFAULT_EDGE_LIMIT),
            Ok(Some(EdgePartition::new()))
        );

        assert_eq!(
            brute_force_partition(&complete(6), params(5), DEFAULT_EDGE_LIMIT),
            Err(TooLarge {
                edges: 15,
                limit: 14
            })
        );
    }

    #[test]
    fn brute_force_is_lexicographically_first() {
        // alpha = 5 forbids H; on a path every edge can be F1.
        let path = parse_edge_list("0 1\n1 2").unwrap();
        let p = brute_force_partition(&path, params(5), DEFAULT_EDGE_LIMIT)
            .unwrap()
            .unwrap();
        assert!(p.iter().all(|(_, l)| l == EdgeLabel::F1));
        // Triangle: the third edge cannot close F1, so it takes F2.
        let tri = cycle(3);
        let p = brute_force_partition(&tri, params(5), DEFAULT_EDGE_LIMIT)
            .unwrap()
            .unwrap();
        let labels: Vec<EdgeLabel> = p.iter().map(|(_, l)| l).collect();
        assert_eq!(labels, vec![EdgeLabel::F1, EdgeLabel::F1, EdgeLabel::F2]);
    }

    #[test]
    fn cycle_enumeration() {
        assert_eq!(
            enumerate_simple_cycles(&cycle(4), 10),
            vec![vec![0, 1, 2, 3]]
        );
        let k4 = enumerate_simple_cycles(&complete(4), 10);
        assert_eq!(k4.len(), 7);
        assert_eq!(k4.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(enumerate_simple_cycles(&complete(4), 3).len(), 4);
        let tree = parse_edge_list("0 1\n0 2\n2 3\n2 4").unwrap();
        assert!(enumerate_simple_cycles(&tree, 10).is_empty());
    }

    #[test]
    fn cycle_counts_on_complete_graphs() {
        // sum_{k=3}^{n} C(n, k) (k - 1)! / 2
        fn closed_form(n: u64) -> u64 {
            let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
            let fact = |k: u64| (1..=k).product::<u64>();
            (3..=n).map(|k| binom(n, k) * fact(k - 1) / 2).sum()
        }
        for n in 3..=5 {
            let got = enumerate_simple_cycles(&complete(n), n).len() as u64;
            assert_eq!(got, closed_form(n as u64), "K{n}");
        }
        assert_eq!(closed_form(5), 37);
    }

    #[test]
    fn k4_minor_test() {
        assert!(!is_k4_minor_free(&complete(4)));
        assert!(is_k4_minor_free(&cycle(4)));
        assert!(is_k4_minor_free(&Graph::new()));
        // Subdivided K4 still has a K4 minor.
        let sub = parse_edge_list("0 1\n0 2\n0 4\n4 3\n1 2\n1 3\n2 5\n5 3").unwrap();
        assert!(!is_k4_minor_free(&sub));
        // Banana graphs are series-parallel.
        let b = Graph::from_edges((2..8).flat_map(|m| [(0, m), (1, m)])).unwrap();
        assert!(is_k4_minor_free(&b));
    }

    #[test]
    fn oracles() {
        assert_eq!(
            light_edge_oracle(&cycle(4), params(5)),
            Some(Edge::new(0, 1))
        );
        assert_eq!(light_edge_oracle(&complete(4), params(5)), None);
        assert!(alt_cycle_oracle(&cycle(4)).is_some());
        assert!(alt_cycle_oracle(&cycle(5)).is_none());
        assert!(alt_cycle_oracle(&complete(4)).is_none());
    }
}
