//! Seeded graph generators.
//!
//! All randomness comes from SplitMix64 (Vigna's reference mixer; state is
//! advanced by `0x9E3779B97F4A7C15` and the output is two xor-shift-multiply
//! rounds). Integer draws below `n` take the high 64 bits of `x * n` for a
//! 64-bit output `x`; probability draws compare `(x >> 11) / 2^53` against
//! `p`. Each generator documents the order in which it consumes outputs, so a
//! corpus can be rebuilt bit-for-bit from its seed in another implementation.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

pub type Seed = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown graph family `{0}` (expected cycle, path, star, complete or banana)")]
    UnknownName(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// Seeded source of the draws described in the module docs.
#[derive(Debug, Clone)]
pub struct Draws(SplitMix64);

impl Draws {
    pub fn new(seed: Seed) -> Self {
        Draws(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `0..n` (multiply-high); `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "empty range");
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// `true` with probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        let unit = (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        unit < p
    }
}

/// The `counter`-th output of SplitMix64 seeded with `master`, computed
/// directly. Used to give every fuzz instance its own reproducible seed.
pub fn derive_seed(master: Seed, counter: u64) -> Seed {
    const PHI: u64 = 0x9E37_79B9_7F4A_7C15;
    Draws::new(master.wrapping_add(counter.wrapping_mul(PHI))).next_u64()
}

/// Small named families.
///
/// * `cycle(k)`: `C_k` on `0..k`, `k >= 3`;
/// * `path(k)`: path on `0..k`, `k >= 1`;
/// * `star(k)`: `K_{1,k}` with center 0, `k >= 1`;
/// * `complete(k)`: `K_k`, `k >= 1`;
/// * `banana(k)`: hubs 0 and 1 joined through midpoints `2..k+2`, `k >= 2`.
pub fn gen_named(name: &str, k: usize) -> Result<Graph, GenError> {
    let need = |min: usize| {
        if k < min {
            Err(GenError::BadParameter(format!(
                "{name} needs k >= {min}, got {k}"
            )))
        } else {
            Ok(())
        }
    };
    let edges: Vec<(Vertex, Vertex)> = match name {
        "cycle" => {
            need(3)?;
            (0..k).map(|i| (i, (i + 1) % k)).collect()
        }
        "path" => {
            need(1)?;
            (1..k).map(|i| (i - 1, i)).collect()
        }
        "star" => {
            need(1)?;
            (1..=k).map(|i| (0, i)).collect()
        }
        "complete" => {
            need(1)?;
            (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .collect()
        }
        "banana" => {
            need(2)?;
            (2..k + 2).flat_map(|m| [(0, m), (1, m)]).collect()
        }
        other => return Err(GenError::UnknownName(other.to_string())),
    };
    let mut g = Graph::from_edges(edges).expect("named families are simple");
    if name == "path" {
        g.add_vertex(0);
    }
    Ok(g)
}

/// Random Apollonian network on `n >= 3` vertices.
///
/// Starts from the triangle `0 1 2` with its two faces. Vertex `v = 3, 4, …`
/// takes one draw `i = below(#faces)`, is joined to the three corners of face
/// `i`, and splits it: face `i` becomes `(a, b, v)` and `(b, c, v)`, `(c, a, v)`
/// are appended. The result is maximal planar with `3n - 6` edges.
pub fn gen_random_apollonian(n: usize, seed: Seed) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::BadParameter(format!(
            "apollonian needs n >= 3, got {n}"
        )));
    }
    let mut draws = Draws::new(seed);
    let mut g = Graph::from_edges([(0, 1), (1, 2), (0, 2)]).expect("triangle");
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let i = draws.below(faces.len());
        let [a, b, c] = faces[i];
        for x in [a, b, c] {
            g.add_edge(x, v).expect("fresh vertex");
        }
        faces[i] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    Ok(g)
}

/// Keeps each edge of `g` independently with probability `p`, drawing once per
/// edge in canonical order. The vertex set is unchanged.
pub fn gen_edge_subgraph(g: &Graph, p: f64, seed: Seed) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::BadParameter(format!(
            "probability {p} outside [0, 1]"
        )));
    }
    let mut draws = Draws::new(seed);
    let mut out = Graph::with_vertices(g.vertices());
    for e in g.edges() {
        if draws.chance(p) {
            out.add_edge(e.u(), e.v())
                .expect("subset of a simple graph");
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
struct TwoTerminal {
    edges: Vec<(Vertex, Vertex)>,
    size: usize,
    s: Vertex,
    t: Vertex,
    // Whether the edge s-t itself is present.
    direct: bool,
}

impl TwoTerminal {
    fn edge() -> Self {
        TwoTerminal {
            edges: vec![(0, 1)],
            size: 2,
            s: 0,
            t: 1,
            direct: true,
        }
    }

    /// Glues `other` onto `self`, sending `other.s` to `at_s` and `other.t` to
    /// `at_t` (or to a fresh vertex when `None`). Returns the image of
    /// `other.t`.
    fn absorb(&mut self, other: &TwoTerminal, at_s: Vertex, at_t: Option<Vertex>) -> Vertex {
        let base = self.size;
        let map = |x: Vertex| {
            if x == other.s {
                at_s
            } else if x == other.t && at_t.is_some() {
                at_t.unwrap()
            } else {
                base + x
            }
        };
        self.edges
            .extend(other.edges.iter().map(|&(a, b)| (map(a), map(b))));
        self.size += other.size;
        map(other.t)
    }

    fn series(mut self, other: &TwoTerminal) -> Self {
        let t = self.absorb(other, self.t, None);
        self.t = t;
        self.direct = false;
        self
    }

    fn parallel(mut self, other: &TwoTerminal) -> Self {
        let (s, t) = (self.s, self.t);
        self.absorb(other, s, Some(t));
        self.direct |= other.direct;
        self
    }
}

/// Random two-terminal series-parallel graph built from `m >= 1` single edges.
///
/// A pool starts with `m` copies of `K2`. While more than one piece remains,
/// three draws pick the first operand `i = below(len)`, the second operand
/// `j = below(len - 1)` (shifted past `i`), and the operation (low bit of the
/// next output: 0 = series, 1 = parallel). A parallel composition of two
/// pieces that both contain their terminal edge would duplicate it, so all
/// three draws are repeated. Both operands leave the pool and the result is
/// appended. Vertex ids are compacted at the end; the graph has exactly `m`
/// edges and no `K4` minor.
pub fn gen_series_parallel(m: usize, seed: Seed) -> Result<Graph, GenError> {
    if m < 1 {
        return Err(GenError::BadParameter(
            "series-parallel needs m >= 1".into(),
        ));
    }
    let mut draws = Draws::new(seed);
    let mut pool: Vec<TwoTerminal> = vec![TwoTerminal::edge(); m];
    while pool.len() > 1 {
        let (i, j, parallel) = loop {
            let i = draws.below(pool.len());
            let mut j = draws.below(pool.len() - 1);
            if j >= i {
                j += 1;
            }
            let parallel = draws.next_u64() & 1 == 1;
            if !(parallel && pool[i].direct && pool[j].direct) {
                break (i, j, parallel);
            }
        };
        let b = pool.remove(i.max(j));
        let a = pool.remove(i.min(j));
        let (first, second) = if i < j { (a, b) } else { (b, a) };
        pool.push(if parallel {
            first.parallel(&second)
        } else {
            first.series(&second)
        });
    }
    let piece = pool.pop().expect("m >= 1");

    let mut used: Vec<Vertex> = piece.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    used.sort_unstable();
    used.dedup();
    let id = |x: Vertex| used.binary_search(&x).expect("used vertex");
    let g = Graph::from_edges(piece.edges.iter().map(|&(a, b)| (id(a), id(b)))).map_err(|e| {
        GenError::BadParameter(format!("composition produced a non-simple graph: {e}"))
    })?;
    Ok(g)
}

/// Canonical edges of `g` as plain pairs; handy for fixtures.
pub fn edge_pairs(g: &Graph) -> Vec<(Vertex, Vertex)> {
    g.edges().map(|e: Edge| (e.u(), e.v())).collect()
}
