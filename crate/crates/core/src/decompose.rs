//! Constructive edge partition into two forests and a bounded-degree remainder.
//!
//! The algorithm runs in two phases. The reduce phase repeatedly finds a
//! configuration in the current graph and deletes it (a small vertex, a light
//! edge, or the edges of a 2-alternating cycle) until the maximum degree drops
//! to `alpha - 5`. The extend phase starts from "every remaining edge is in
//! `H`" and puts the deleted elements back one step at a time, choosing a part
//! for each re-inserted edge so that the caps keep holding for the graph of
//! that step:
//!
//! * `d_H(v) <= alpha - 5`,
//! * `d_Fi(v) <= forest_cap(d(v))` for `i = 1, 2`,
//! * `F1` and `F2` are forests.
//!
//! Every forest insertion is pendant (one endpoint has no edge of that forest
//! yet), which keeps both forests acyclic without a global check. The
//! inequalities the extension rules rely on are asserted at runtime; a failure
//! is reported as [`DecomposeError::InternalInvariantViolation`].

use std::cmp::max;
use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Edge, EdgeLabel, EdgePartition, Graph, Vertex};
use crate::structure::{
    find_configuration, AltCycle, ClassParams, Configuration, NotInClassWitness,
};
use crate::verify::verify_partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("no reducible configuration in a subgraph with {} vertices and {} edges", .0 .0.num_vertices(), .0 .0.num_edges())]
    NotInClass(NotInClassWitness),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl From<NotInClassWitness> for DecomposeError {
    fn from(w: NotInClassWitness) -> Self {
        DecomposeError::NotInClass(w)
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(DecomposeError::InternalInvariantViolation(format!($($fmt)+)));
        }
    };
}

#[inline]
fn ceil_half(x: i64) -> i64 {
    (x + 1).div_euclid(2)
}

#[inline]
fn floor_half(x: i64) -> i64 {
    x.div_euclid(2)
}

/// Per-vertex forest cap `max(2, ceil((d - alpha + 6) / 2))`.
pub fn forest_cap(d: usize, params: ClassParams) -> usize {
    max(2, ceil_half(d as i64 - params.alpha() + 6)) as usize
}

/// One deletion performed by the reduce phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStep {
    /// Vertex `u` of degree at most one was deleted, along with the edge to
    /// its neighbor `v` if it had one.
    Case1 { u: Vertex, v: Option<Vertex> },
    /// A light edge was deleted.
    Case2 { edge: Edge },
    /// The edges of a 2-alternating cycle were deleted.
    Case3 { cycle: AltCycle },
    /// Maximum degree reached `alpha - 5`; the rest goes to `H`.
    Base,
}

impl ReductionStep {
    pub fn removed_edges(&self) -> Vec<Edge> {
        match self {
            ReductionStep::Case1 { u, v: Some(v) } => vec![Edge::new(*u, *v)],
            ReductionStep::Case1 { v: None, .. } | ReductionStep::Base => Vec::new(),
            ReductionStep::Case2 { edge } => vec![*edge],
            ReductionStep::Case3 { cycle } => cycle.indexed_edges().map(|(_, e)| e).collect(),
        }
    }

    pub fn removed_vertex(&self) -> Option<Vertex> {
        match self {
            ReductionStep::Case1 { u, .. } => Some(*u),
            _ => None,
        }
    }
}

/// A labeling under construction, with per-vertex degree counters for each
/// part.
#[derive(Debug, Clone, Default)]
pub struct PartialPartition {
    labels: EdgePartition,
    counts: HashMap<Vertex, [usize; 3]>,
}

impl PartialPartition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_partition(p: &EdgePartition) -> Self {
        let mut s = Self::new();
        for (e, l) in p.iter() {
            s.assign(e, l);
        }
        s
    }

    pub fn degree(&self, v: Vertex, label: EdgeLabel) -> usize {
        self.counts.get(&v).map_or(0, |c| c[label.index()])
    }

    fn forest_degrees(&self, v: Vertex) -> [usize; 2] {
        [self.degree(v, EdgeLabel::F1), self.degree(v, EdgeLabel::F2)]
    }

    /// Labels a new edge. Relabeling an existing edge is a logic error.
    pub fn assign(&mut self, e: Edge, label: EdgeLabel) {
        let prev = self.labels.insert(e, label);
        assert!(prev.is_none(), "edge {e} labeled twice");
        for x in [e.u(), e.v()] {
            self.counts.entry(x).or_insert([0; 3])[label.index()] += 1;
        }
    }

    pub fn label(&self, e: Edge) -> Option<EdgeLabel> {
        self.labels.get(e)
    }

    pub fn partition(&self) -> &EdgePartition {
        &self.labels
    }

    pub fn into_partition(self) -> EdgePartition {
        self.labels
    }
}

fn degree_in(g: &Graph, v: Vertex) -> Result<usize, DecomposeError> {
    g.degree(v)
        .map_err(|e| DecomposeError::InternalInvariantViolation(format!("extension graph: {e}")))
}

/// Checks the three caps at `v` against the degrees of `g`.
fn check_caps(
    state: &PartialPartition,
    g: &Graph,
    params: ClassParams,
    v: Vertex,
) -> Result<(), DecomposeError> {
    let cap = forest_cap(degree_in(g, v)?, params);
    for label in [EdgeLabel::F1, EdgeLabel::F2] {
        let d = state.degree(v, label);
        ensure!(
            d <= cap,
            "vertex {v} has {label}-degree {d} above cap {cap}"
        );
    }
    let h = state.degree(v, EdgeLabel::H) as i64;
    ensure!(
        h <= params.h_cap(),
        "vertex {v} has H-degree {h} above {}",
        params.h_cap()
    );
    Ok(())
}

/// Puts `e` into forest `label`, which must already miss one endpoint.
fn attach_pendant(
    state: &mut PartialPartition,
    e: Edge,
    label: EdgeLabel,
) -> Result<(), DecomposeError> {
    let (du, dv) = (state.degree(e.u(), label), state.degree(e.v(), label));
    ensure!(
        du == 0 || dv == 0,
        "edge {e} would join two vertices already in {label} (degrees {du}, {dv})"
    );
    state.assign(e, label);
    Ok(())
}

/// Re-inserts the edge `uv` of a degree-1 vertex `u`.
///
/// `g` is the graph containing `uv`; `state` labels `g - u`. Returns the label
/// given to `uv`.
pub fn extend_case1(
    u: Vertex,
    v: Vertex,
    state: &mut PartialPartition,
    g: &Graph,
    params: ClassParams,
) -> Result<EdgeLabel, DecomposeError> {
    let e = Edge::new(u, v);
    ensure!(
        degree_in(g, u)? == 1 && g.contains_edge(u, v),
        "{u} is not a leaf attached to {v}"
    );
    ensure!(state.label(e).is_none(), "edge {e} already labeled");

    let h_v = state.degree(v, EdgeLabel::H) as i64;
    let label = if h_v <= params.h_room() {
        state.assign(e, EdgeLabel::H);
        EdgeLabel::H
    } else {
        ensure!(
            h_v == params.h_cap(),
            "H-degree {h_v} of {v} exceeds {}",
            params.h_cap()
        );
        let f = state.forest_degrees(v);
        let j = if f[1] < f[0] { 1 } else { 0 };
        let bound = floor_half(degree_in(g, v)? as i64 - params.alpha() + 4);
        ensure!(
            f[j] as i64 <= bound,
            "smaller forest degree {} at {v} exceeds floor((d - alpha + 4) / 2) = {bound}",
            f[j]
        );
        let label = EdgeLabel::forest(j);
        attach_pendant(state, e, label)?;
        label
    };
    check_caps(state, g, params, u)?;
    check_caps(state, g, params, v)?;
    Ok(label)
}

/// Re-inserts a light edge `e`.
///
/// `g` contains `e` and has minimum degree at least 2; `state` labels `g - e`.
/// Returns the label given to `e`.
pub fn extend_case2(
    e: Edge,
    state: &mut PartialPartition,
    g: &Graph,
    params: ClassParams,
) -> Result<EdgeLabel, DecomposeError> {
    ensure!(g.contains_edge(e.u(), e.v()), "{e} is not an edge");
    ensure!(state.label(e).is_none(), "edge {e} already labeled");
    let (mut u, mut v) = (e.u(), e.v());
    if state.degree(u, EdgeLabel::H) > state.degree(v, EdgeLabel::H) {
        std::mem::swap(&mut u, &mut v);
    }
    let (d_u, d_v) = (degree_in(g, u)?, degree_in(g, v)?);
    ensure!(
        (d_u + d_v) as i64 <= params.alpha(),
        "{e} is not light: {d_u} + {d_v} > {}",
        params.alpha()
    );
    let h_v = state.degree(v, EdgeLabel::H) as i64;

    if h_v <= params.h_room() {
        state.assign(e, EdgeLabel::H);
    } else {
        ensure!(
            h_v == params.h_cap(),
            "H-degree {h_v} of {v} exceeds {}",
            params.h_cap()
        );
        ensure!(
            d_v as i64 >= params.alpha() - 4,
            "d({v}) = {d_v} below alpha - 4"
        );
        let fu = state.forest_degrees(u);
        let fv = state.forest_degrees(v);
        // `order[0]` plays the role of F1 after the without-loss-of-generality swap.
        let target = match d_u {
            2 => {
                let order = if fu[0] == 0 { [0, 1] } else { [1, 0] };
                ensure!(fu[order[0]] == 0, "{u} has an edge in both forests");
                ensure!(
                    fv[0] + fv[1] <= 2,
                    "forest degrees of {v} sum to {}",
                    fv[0] + fv[1]
                );
                if fv[order[0]] <= 1 {
                    order[0]
                } else {
                    ensure!(
                        fv[order[0]] == 2 && fv[order[1]] == 0,
                        "unexpected forest degrees {fv:?} at {v}"
                    );
                    order[1]
                }
            }
            3 => {
                ensure!(
                    fv[0] + fv[1] <= 1,
                    "forest degrees of {v} sum to {}",
                    fv[0] + fv[1]
                );
                let order = if fv[0] == 0 { [0, 1] } else { [1, 0] };
                if fu[order[0]] <= 1 {
                    order[0]
                } else {
                    ensure!(
                        fu[order[0]] == 2 && fu[order[1]] == 0,
                        "unexpected forest degrees {fu:?} at {u}"
                    );
                    order[1]
                }
            }
            4 => {
                ensure!(fv == [0, 0], "{v} has forest degrees {fv:?}, expected none");
                match fu.iter().position(|&d| d <= 1) {
                    Some(j) => j,
                    None => {
                        return Err(DecomposeError::InternalInvariantViolation(format!(
                            "{u} has forest degrees {fu:?}, both above 1"
                        )))
                    }
                }
            }
            other => {
                return Err(DecomposeError::InternalInvariantViolation(format!(
                    "light edge {e} with d({u}) = {other} outside 2..=4 while H is full at {v}"
                )))
            }
        };
        attach_pendant(state, e, EdgeLabel::forest(target))?;
    }
    check_caps(state, g, params, u)?;
    check_caps(state, g, params, v)?;
    Ok(state.label(e).expect("just labeled"))
}

/// Re-inserts the edges of a 2-alternating cycle: edge `{v_i, v_{i+1}}` goes
/// to `F1` for odd `i` and to `F2` for even `i`.
///
/// `state` labels `g - E(C)`. Each even-position vertex must be bare in
/// `state`, so every added edge hangs off a fresh forest vertex. Forest caps
/// are re-checked on the cycle afterwards.
pub fn extend_case3(
    cycle: &AltCycle,
    state: &mut PartialPartition,
    g: &Graph,
    params: ClassParams,
) -> Result<(), DecomposeError> {
    cycle.check(g).map_err(|err| {
        DecomposeError::InternalInvariantViolation(format!("cycle {cycle}: {err}"))
    })?;
    for &x in cycle.vertices().iter().step_by(2) {
        for label in EdgeLabel::ALL {
            ensure!(
                state.degree(x, label) == 0,
                "even cycle vertex {x} still has a {label} edge"
            );
        }
    }
    for (i, e) in cycle.indexed_edges() {
        ensure!(state.label(e).is_none(), "cycle edge {e} already labeled");
        let label = if i % 2 == 1 {
            EdgeLabel::F1
        } else {
            EdgeLabel::F2
        };
        attach_pendant(state, e, label)?;
    }
    for &x in cycle.vertices() {
        check_caps(state, g, params, x)?;
    }
    Ok(())
}

/// Runs the reduce phase on `g`, returning the steps taken (ending with
/// [`ReductionStep::Base`]) and the graph left at the base.
pub fn reduce(
    g: &Graph,
    params: ClassParams,
) -> Result<(Vec<ReductionStep>, Graph), DecomposeError> {
    let mut cur = g.clone();
    let mut steps = Vec::new();
    let internal =
        |e: crate::graph::GraphError| DecomposeError::InternalInvariantViolation(e.to_string());
    loop {
        if cur.max_degree() as i64 <= params.h_cap() {
            steps.push(ReductionStep::Base);
            return Ok((steps, cur));
        }
        let step = match find_configuration(&cur, params)? {
            Configuration::SmallVertex(u) => {
                let v = cur.neighbors(u).map_err(internal)?.iter().next().copied();
                cur.remove_vertex(u).map_err(internal)?;
                ReductionStep::Case1 { u, v }
            }
            Configuration::LightEdge(edge) => {
                cur.remove_edge(edge).map_err(internal)?;
                ReductionStep::Case2 { edge }
            }
            Configuration::AltCycle(cycle) => {
                // With no light edge left, each odd vertex has d + 2 > alpha.
                for &x in cycle.vertices().iter().skip(1).step_by(2) {
                    let d = cur.degree(x).map_err(internal)? as i64;
                    ensure!(
                        d - 2 >= params.alpha() - 3,
                        "odd cycle vertex {x} has degree {d}, below alpha - 1"
                    );
                }
                for (_, e) in cycle.indexed_edges() {
                    cur.remove_edge(e).map_err(internal)?;
                }
                ReductionStep::Case3 { cycle }
            }
        };
        steps.push(step);
    }
}

/// Runs the extend phase: labels `base` entirely `H`, then undoes `steps` in
/// reverse order.
pub fn extend(
    steps: &[ReductionStep],
    base: Graph,
    params: ClassParams,
) -> Result<EdgePartition, DecomposeError> {
    ensure!(
        steps.last() == Some(&ReductionStep::Base)
            && steps.iter().filter(|s| **s == ReductionStep::Base).count() == 1,
        "step list must end with a single Base step"
    );
    ensure!(
        base.max_degree() as i64 <= params.h_cap(),
        "base graph has maximum degree {} above {}",
        base.max_degree(),
        params.h_cap()
    );
    let internal =
        |e: crate::graph::GraphError| DecomposeError::InternalInvariantViolation(e.to_string());
    let mut state = PartialPartition::new();
    for e in base.edges() {
        state.assign(e, EdgeLabel::H);
    }
    let mut g = base;
    for step in steps.iter().rev().skip(1) {
        match step {
            ReductionStep::Case1 { u, v } => {
                g.add_vertex(*u);
                if let Some(v) = v {
                    g.add_edge(*u, *v).map_err(internal)?;
                    extend_case1(*u, *v, &mut state, &g, params)?;
                }
            }
            ReductionStep::Case2 { edge } => {
                g.add_edge(edge.u(), edge.v()).map_err(internal)?;
                extend_case2(*edge, &mut state, &g, params)?;
            }
            ReductionStep::Case3 { cycle } => {
                for (_, e) in cycle.indexed_edges() {
                    g.add_edge(e.u(), e.v()).map_err(internal)?;
                }
                extend_case3(cycle, &mut state, &g, params)?;
            }
            ReductionStep::Base => unreachable!("checked above"),
        }
    }
    Ok(state.into_partition())
}

/// Partitions the edges of `g` into `F1`, `F2` and `H`.
///
/// Connected components are handled independently and their labelings merged.
/// Returns [`DecomposeError::NotInClass`] with the stuck subgraph when some
/// component runs out of configurations before reaching the base case.
pub fn decompose(g: &Graph, params: ClassParams) -> Result<EdgePartition, DecomposeError> {
    let mut merged = EdgePartition::new();
    for component in g.connected_components() {
        let sub = g.induced_subgraph(&component);
        let (steps, base) = reduce(&sub, params)?;
        for (e, l) in extend(&steps, base, params)?.iter() {
            merged.insert(e, l);
        }
    }
    let report = verify_partition(g, &merged, params);
    if !report.is_valid() {
        return Err(DecomposeError::InternalInvariantViolation(format!(
            "final partition fails verification: {}",
            report
        )));
    }
    Ok(merged)
}
