//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use forest_partition::generate::{
    derive_seed, gen_edge_subgraph, gen_named, gen_random_apollonian, gen_series_parallel, Draws,
};
use forest_partition::structure::find_two_alternating_cycle;
use forest_partition::verify::{alt_cycle_oracle, brute_force_partition, light_edge_oracle};
use forest_partition::{
    decompose, verify_partition, ClassParams, DecomposeError, EdgeLabel, EdgePartition, Graph,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::with_vertices(0..n);
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(i, j).unwrap();
            }
            bit += 1;
        }
    }
    g
}

fn random_graph(n: usize, density: f64, draws: &mut Draws) -> Graph {
    let mut g = Graph::with_vertices(0..n);
    for i in 0..n {
        for j in i + 1..n {
            if draws.chance(density) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

/// Recomputes the degree bounds directly from the labels: Δ(H) <= h_max and
/// d_Fi(v) <= max(2, ceil((d(v) - shift) / 2)).
fn check_bounds(g: &Graph, p: &EdgePartition, h_max: usize, shift: i64) -> Result<(), String> {
    for v in g.vertices() {
        let d = g.degree(v).unwrap() as i64;
        let h = p.degree_in(v, EdgeLabel::H);
        if h > h_max {
            return Err(format!("vertex {v} has H-degree {h} > {h_max}"));
        }
        let excess = d - shift;
        let cap = if excess <= 4 { 2 } else { (excess + 1) / 2 } as usize;
        for f in [EdgeLabel::F1, EdgeLabel::F2] {
            let k = p.degree_in(v, f);
            if k > cap {
                return Err(format!(
                    "vertex {v} (degree {d}) has {f}-degree {k} > {cap}"
                ));
            }
        }
    }
    Ok(())
}

fn accept(g: &Graph, alpha: i64, h_max: usize, shift: i64) -> Result<(), String> {
    let params = ClassParams::new(alpha).unwrap();
    let p = decompose(g, params).map_err(|e| format!("decompose: {e}"))?;
    let report = verify_partition(g, &p, params);
    if !report.is_valid() {
        return Err(format!("verify: {report}"));
    }
    check_bounds(g, &p, h_max, shift)
}

fn within(budget: Duration, start: Instant) -> Result<(), String> {
    let spent = start.elapsed();
    if spent > budget {
        return Err(format!("took {spent:.2?}, budget {budget:.0?}"));
    }
    Ok(())
}

fn planar_corpus() -> Outcome {
    let start = Instant::now();
    let master = 0x5eed_0001;
    let mut graphs = 0;
    for i in 0..100u64 {
        let mut draws = Draws::new(derive_seed(master, i));
        let n = 10 + draws.below(191);
        let base = gen_random_apollonian(n, draws.next_u64()).map_err(|e| e.to_string())?;
        for p in [0.5, 0.8, 1.0] {
            let g = gen_edge_subgraph(&base, p, draws.next_u64()).map_err(|e| e.to_string())?;
            accept(&g, 15, 10, 9).map_err(|e| format!("instance {i} (n={n}, p={p}): {e}"))?;
            graphs += 1;
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("{graphs} graphs in {:.2?}", start.elapsed()))
}

fn series_parallel_corpus() -> Outcome {
    let start = Instant::now();
    let master = 0x5eed_0002;
    let mut graphs = 0;
    for i in 0..300u64 {
        let mut draws = Draws::new(derive_seed(master, i));
        let m = 5 + draws.below(296);
        let base = gen_series_parallel(m, draws.next_u64()).map_err(|e| e.to_string())?;
        let sub = gen_edge_subgraph(&base, 0.7, draws.next_u64()).map_err(|e| e.to_string())?;
        for g in [&base, &sub] {
            accept(g, 6, 1, 0).map_err(|e| format!("instance {i} (m={m}): {e}"))?;
            graphs += 1;
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("{graphs} graphs in {:.2?}", start.elapsed()))
}

fn oracle_agreement(g: &Graph, alpha: i64) -> Result<bool, String> {
    let params = ClassParams::new(alpha).unwrap();
    match decompose(g, params) {
        Ok(p) => {
            let report = verify_partition(g, &p, params);
            if !report.is_valid() {
                return Err(format!("verify: {report}"));
            }
            match brute_force_partition(g, params, 15) {
                Ok(Some(_)) => Ok(true),
                Ok(None) => Err("brute force finds no partition".into()),
                Err(e) => Err(e.to_string()),
            }
        }
        Err(DecomposeError::NotInClass(w)) => {
            let w = w.0;
            if w.min_degree().is_some_and(|d| d < 2) {
                return Err("witness has a vertex of degree <= 1".into());
            }
            if let Some(e) = light_edge_oracle(&w, params) {
                return Err(format!("witness has light edge {e}"));
            }
            if let Some(c) = alt_cycle_oracle(&w) {
                return Err(format!("witness has alternating cycle {c:?}"));
            }
            Ok(false)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn small_instances() -> Outcome {
    let start = Instant::now();
    let mut corpus = Vec::new();
    for n in 0..=5usize {
        let pairs = n * n.saturating_sub(1) / 2;
        corpus.extend((0..1u64 << pairs).map(|mask| graph_from_mask(n, mask)));
    }
    let exhaustive = corpus.len();
    let mut draws = Draws::new(0x5eed_0003);
    corpus.extend((0..5000).map(|_| random_graph(6, 0.5, &mut draws)));

    let (mut decomposed, mut witnesses) = (0, 0);
    for alpha in [5, 6, 7] {
        for (i, g) in corpus.iter().enumerate() {
            match oracle_agreement(g, alpha) {
                Ok(true) => decomposed += 1,
                Ok(false) => witnesses += 1,
                Err(e) => {
                    return Err(format!(
                        "graph {i} at alpha {alpha}: {e}\n{}",
                        g.to_edge_list()
                    ))
                }
            }
        }
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!(
        "{exhaustive} exhaustive + 5000 random graphs x 3 alphas: {decomposed} decomposed, {witnesses} witnesses, {:.2?}",
        start.elapsed()
    ))
}

fn alt_cycle_sample() -> Outcome {
    let start = Instant::now();
    let mut draws = Draws::new(0x5eed_0004);
    let mut with_cycle = 0;
    for i in 0..10_000 {
        let n = draws.below(8);
        let density = [0.2, 0.35, 0.5, 0.7][draws.below(4)];
        let g = random_graph(n, density, &mut draws);
        let found = find_two_alternating_cycle(&g);
        if found.is_some() != alt_cycle_oracle(&g).is_some() {
            return Err(format!(
                "instance {i}: finder says {found:?}\n{}",
                g.to_edge_list()
            ));
        }
        if let Some(c) = found {
            c.check(&g)
                .map_err(|e| format!("instance {i}: returned cycle {c} invalid: {e}"))?;
            with_cycle += 1;
        }
    }
    Ok(format!(
        "10000 graphs, {with_cycle} with a cycle, {:.2?}",
        start.elapsed()
    ))
}

fn fixtures() -> Outcome {
    let c4 = gen_named("cycle", 4).unwrap();
    let p = decompose(&c4, ClassParams::new(7).unwrap()).map_err(|e| e.to_string())?;
    if p.len() != 4 || p.iter().any(|(_, l)| l != EdgeLabel::H) {
        return Err(format!("C4 at alpha 7: {p:?}"));
    }
    let k2 = gen_named("complete", 2).unwrap();
    let p = decompose(&k2, ClassParams::new(5).unwrap()).map_err(|e| e.to_string())?;
    if p.edges_with(EdgeLabel::F1).collect::<Vec<_>>() != k2.edges().collect::<Vec<_>>()
        || p.len() != 1
    {
        return Err(format!("K2 at alpha 5: {p:?}"));
    }
    let k4 = gen_named("complete", 4).unwrap();
    let params = ClassParams::new(5).unwrap();
    match decompose(&k4, params) {
        Err(DecomposeError::NotInClass(w)) if w.0 == k4 => {}
        other => return Err(format!("K4 at alpha 5: expected witness, got {other:?}")),
    }
    match brute_force_partition(&k4, params, 15) {
        Ok(Some(p)) if verify_partition(&k4, &p, params).is_valid() => {}
        other => return Err(format!("K4 brute force: {other:?}")),
    }
    Ok("C4/7 all H, K2/5 in F1, K4/5 witness but partition exists".into())
}

fn fuzz_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_fpart");
    let args = [
        "fuzz", "--alpha", "15", "--count", "50", "--seed", "7", "--family", "planar",
    ];
    let first = Command::new(bin)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let second = Command::new(bin)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if first.status.code() != Some(0) || second.status.code() != Some(0) {
        return Err(format!(
            "exit codes {:?}, {:?}",
            first.status.code(),
            second.status.code()
        ));
    }
    if first.stdout != second.stdout {
        return Err("stdout differs between runs".into());
    }
    let summary = String::from_utf8_lossy(&first.stdout);
    Ok(summary.lines().last().unwrap_or_default().to_owned())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("AC1", "planar corpus at alpha 15", planar_corpus),
        (
            "AC2",
            "series-parallel corpus at alpha 6",
            series_parallel_corpus,
        ),
        ("AC3", "small-instance oracle equivalence", small_instances),
        (
            "AC4",
            "alternating-cycle finder vs oracle",
            alt_cycle_sample,
        ),
        ("AC5", "known-value fixtures", fixtures),
        ("AC6", "fuzz determinism", fuzz_determinism),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] {id} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
