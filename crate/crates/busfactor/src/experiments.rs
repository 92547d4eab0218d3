//! Desk-scale sensitivity experiments: density and redundancy sweeps over a
//! base graph, an assortativity sweep over a rewired ensemble, and a runtime
//! scaling bench. Every row carries the derived seed that produced it, so
//! whole sweeps replay bit-for-bit (timings excepted).

use crate::generators::{
    configuration_model, degree_correlation, metropolis_rewire, uniform_bipartite_covered,
    DegreeSequence, GeneratorError, MetropolisConfig,
};
use crate::graph::{BipartiteGraph, Threshold};
use crate::measures::{self, MeasureError};
use crate::strategies::Strategy;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;
use std::io::Write;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot add {batch} edges: only {absent} absent pairs remain")]
    Saturated { batch: usize, absent: usize },
    #[error("cannot remove {total} of {edges} edges")]
    TotalExceedsEdges { total: usize, edges: usize },
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

/// One measured configuration. Sweeps fill every measure column; scaling
/// rows fill only the measure they time and leave the rest at zero.
///
/// `perturbation_level` is signed: edges added are positive, edges removed
/// negative, people added positive, and the assortativity sweep stores the
/// coupling index.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ExperimentRow {
    pub experiment_id: String,
    pub perturbation_level: i64,
    pub replicate: u32,
    pub seed: u64,
    pub mrs: usize,
    pub mcs: usize,
    pub robustness_trapezoid: f64,
    pub robustness_gauss: f64,
    pub people_equivalent: f64,
    pub r: Option<f64>,
    pub runtime_ms: f64,
}

/// Stable per-work-item seed: FNV-1a over the master seed, experiment tag,
/// level, and replicate, finished with a SplitMix64 mix. Never depends on
/// platform hashing.
pub fn derive_seed(master_seed: u64, tag: &str, level: i64, replicate: u32) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let eat = |h: u64, bytes: &[u8]| {
        let mut h = h;
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
        h
    };
    h = eat(h, &master_seed.to_le_bytes());
    h = eat(h, tag.as_bytes());
    h = eat(h, &level.to_le_bytes());
    h = eat(h, &replicate.to_le_bytes());
    // SplitMix64 finalizer.
    h = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
    h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    h ^ (h >> 31)
}

fn measure_row(
    graph: &BipartiteGraph,
    threshold: Threshold,
    strategy: Strategy,
    experiment_id: &str,
    level: i64,
    replicate: u32,
    seed: u64,
    r: Option<f64>,
) -> Result<ExperimentRow, ExperimentError> {
    let start = Instant::now();
    let report = measures::analyze(graph, threshold, strategy, seed)?;
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(ExperimentRow {
        experiment_id: experiment_id.to_string(),
        perturbation_level: level,
        replicate,
        seed,
        mrs: report.mrs_size,
        mcs: report.mcs_size,
        robustness_trapezoid: report.robustness_trapezoid,
        robustness_gauss: report.robustness_gauss,
        people_equivalent: report.people_equivalent,
        r,
        runtime_ms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityDirection {
    Add,
    Remove,
}

#[derive(Debug, Clone, Copy)]
pub struct DensityConfig {
    pub direction: DensityDirection,
    /// Edges perturbed per level.
    pub batch: usize,
    /// Total edges perturbed over the sweep.
    pub total: usize,
    pub threshold: Threshold,
    pub strategy: Strategy,
    pub master_seed: u64,
}

/// Densifies or sparsifies the graph `batch` edges at a time, measuring after
/// every batch: one row per batch, or a single baseline row when `total` is
/// zero. The input graph is never mutated. Sparsification may leave tasks
/// with no contributors; they stay in the graph and count as isolated.
pub fn run_density_sweep(
    graph: &BipartiteGraph,
    config: &DensityConfig,
) -> Result<Vec<ExperimentRow>, ExperimentError> {
    if config.batch == 0 {
        return Err(ExperimentError::InvalidConfig(
            "batch must be positive".to_string(),
        ));
    }
    let id = match config.direction {
        DensityDirection::Add => "density-add",
        DensityDirection::Remove => "density-remove",
    };
    if config.direction == DensityDirection::Remove && config.total >= graph.num_edges() {
        return Err(ExperimentError::TotalExceedsEdges {
            total: config.total,
            edges: graph.num_edges(),
        });
    }
    let n = graph.num_people();
    let m = graph.num_tasks();
    let mut edges: Vec<(usize, usize)> = graph.edges().collect();
    let mut present: HashSet<(usize, usize)> = edges.iter().copied().collect();

    // Accumulate per-level snapshots first, then measure them in parallel.
    let mut snapshots: Vec<(i64, u64, Vec<(usize, usize)>)> = Vec::new();
    if config.total == 0 {
        snapshots.push((0, derive_seed(config.master_seed, id, 0, 0), edges.clone()));
    }
    let mut perturbed = 0usize;
    while perturbed < config.total {
        let step = config.batch.min(config.total - perturbed);
        perturbed += step;
        let level = match config.direction {
            DensityDirection::Add => perturbed as i64,
            DensityDirection::Remove => -(perturbed as i64),
        };
        let seed = derive_seed(config.master_seed, id, level, 0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        match config.direction {
            DensityDirection::Add => {
                let absent = n * m - edges.len();
                if absent < step {
                    return Err(ExperimentError::Saturated {
                        batch: step,
                        absent,
                    });
                }
                let mut added = 0;
                while added < step {
                    let pair = (rng.gen_range(0..n), rng.gen_range(0..m));
                    if present.insert(pair) {
                        edges.push(pair);
                        added += 1;
                    }
                }
            }
            DensityDirection::Remove => {
                for _ in 0..step {
                    let victim = rng.gen_range(0..edges.len());
                    let pair = edges.swap_remove(victim);
                    present.remove(&pair);
                }
            }
        }
        snapshots.push((level, seed, edges.clone()));
    }

    let rows: Result<Vec<ExperimentRow>, ExperimentError> = snapshots
        .into_par_iter()
        .map(|(level, seed, edge_set)| {
            let g = BipartiteGraph::from_edges(n, m, &edge_set)
                .expect("perturbed edges stay in range");
            measure_row(&g, config.threshold, config.strategy, id, level, 0, seed, None)
        })
        .collect();
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RedundancyMode {
    /// New degree-one people, assigned to tasks round-robin.
    Singletons,
    /// Clones of existing people, highest degree first, cycling.
    Duplicates,
}

#[derive(Debug, Clone, Copy)]
pub struct RedundancyConfig {
    pub mode: RedundancyMode,
    /// People added per level.
    pub batch: usize,
    /// Total people added over the sweep.
    pub total: usize,
    pub threshold: Threshold,
    pub strategy: Strategy,
    pub master_seed: u64,
}

/// Grows the workforce `batch` people at a time and measures after every
/// batch: one row per batch, or a single baseline row when `total` is zero.
pub fn run_redundancy_sweep(
    graph: &BipartiteGraph,
    config: &RedundancyConfig,
) -> Result<Vec<ExperimentRow>, ExperimentError> {
    if config.batch == 0 {
        return Err(ExperimentError::InvalidConfig(
            "batch must be positive".to_string(),
        ));
    }
    if graph.num_tasks() == 0 || graph.num_people() == 0 {
        return Err(ExperimentError::InvalidConfig(
            "redundancy sweep needs a non-empty graph".to_string(),
        ));
    }
    let id = match config.mode {
        RedundancyMode::Singletons => "redundancy-singletons",
        RedundancyMode::Duplicates => "redundancy-duplicates",
    };
    let n = graph.num_people();
    let m = graph.num_tasks();
    // Duplicates copy neighborhoods in degree order, wrapping around.
    let clone_source = crate::strategies::degree_order(graph);
    let mut edges: Vec<(usize, usize)> = graph.edges().collect();
    let mut snapshots: Vec<(i64, u64, usize, Vec<(usize, usize)>)> = Vec::new();
    if config.total == 0 {
        snapshots.push((
            0,
            derive_seed(config.master_seed, id, 0, 0),
            n,
            edges.clone(),
        ));
    }
    let mut added = 0usize;
    while added < config.total {
        let step = config.batch.min(config.total - added);
        for _ in 0..step {
            let newcomer = n + added;
            match config.mode {
                RedundancyMode::Singletons => {
                    edges.push((newcomer, added % m));
                }
                RedundancyMode::Duplicates => {
                    let original = clone_source.as_slice()[added % n];
                    for &t in graph.person_tasks(original) {
                        edges.push((newcomer, t));
                    }
                }
            }
            added += 1;
        }
        let level = added as i64;
        snapshots.push((
            level,
            derive_seed(config.master_seed, id, level, 0),
            n + added,
            edges.clone(),
        ));
    }

    snapshots
        .into_par_iter()
        .map(|(level, seed, people, edge_set)| {
            let g = BipartiteGraph::from_edges(people, m, &edge_set)
                .expect("added people are indexed within bounds");
            measure_row(&g, config.threshold, config.strategy, id, level, 0, seed, None)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct AssortativityConfig {
    /// Couplings to sweep; the row's `perturbation_level` is the index here.
    pub couplings: Vec<f64>,
    pub replicas: u32,
    /// Rewiring sweeps per replica (attempted swaps per edge).
    pub sweeps: usize,
    pub threshold: Threshold,
    pub strategy: Strategy,
    pub master_seed: u64,
}

/// For every `(coupling, replica)` pair: draw a configuration-model graph,
/// rewire it toward the coupling, then measure it and record the realized
/// degree correlation. Replicas get independent derived seeds.
pub fn run_assortativity_sweep(
    degrees: &DegreeSequence,
    config: &AssortativityConfig,
) -> Result<Vec<ExperimentRow>, ExperimentError> {
    if config.couplings.is_empty() || config.replicas == 0 {
        return Err(ExperimentError::InvalidConfig(
            "need at least one coupling and one replica".to_string(),
        ));
    }
    let work: Vec<(usize, u32)> = (0..config.couplings.len())
        .flat_map(|j| (0..config.replicas).map(move |r| (j, r)))
        .collect();
    let mut rows: Vec<ExperimentRow> = work
        .into_par_iter()
        .map(|(j_index, replicate)| {
            let coupling = config.couplings[j_index];
            let graph_seed =
                derive_seed(config.master_seed, "assortativity-graph", j_index as i64, replicate);
            let chain_seed =
                derive_seed(config.master_seed, "assortativity-chain", j_index as i64, replicate);
            let base = configuration_model(degrees, graph_seed)?;
            let rewired = metropolis_rewire(
                &base.graph,
                &MetropolisConfig {
                    coupling,
                    sweeps: config.sweeps,
                    seed: chain_seed,
                },
            )?;
            let r = degree_correlation(&rewired.graph).ok();
            measure_row(
                &rewired.graph,
                config.threshold,
                config.strategy,
                "assortativity",
                j_index as i64,
                replicate,
                graph_seed,
                r,
            )
        })
        .collect::<Result<_, _>>()?;
    rows.sort_by_key(|row| (row.perturbation_level, row.replicate));
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct ScalingConfig {
    /// Edge counts to bench. Vertex counts are held at one tenth of the
    /// smallest benchable size (capped at 10,000 per side) so the sweep
    /// varies only the edge count, the dimension the linearity claim is
    /// about.
    pub sizes: Vec<usize>,
    pub master_seed: u64,
}

/// Threshold used by the scaling bench: within a whisker of 1, so both the
/// greedy cover and the percolation walk traverse essentially everything.
pub fn scaling_threshold() -> Threshold {
    Threshold::new(9999, 10000).expect("static threshold")
}

/// Runs per measure per size: one warmup, then the best of three timings,
/// so first-touch page faults and cold caches do not pollute the scaling
/// signal.
const BENCH_TIMED_RUNS: usize = 3;

fn best_of<T>(mut run: impl FnMut() -> T) -> (T, f64) {
    let mut value = run();
    let mut best = f64::INFINITY;
    for _ in 0..BENCH_TIMED_RUNS {
        let start = Instant::now();
        value = run();
        best = best.min(start.elapsed().as_secs_f64() * 1e3);
    }
    (value, best)
}

/// Times each measure on uniform random graphs of the configured sizes.
/// Emits one row per measure per size (`scaling-mrs`, `scaling-mcs`,
/// `scaling-robustness`), sequentially so timings stay honest.
pub fn run_scaling_bench(config: &ScalingConfig) -> Result<Vec<ExperimentRow>, ExperimentError> {
    let threshold = scaling_threshold();
    let mut rows = Vec::new();
    let Some(&smallest) = config.sizes.iter().min() else {
        return Ok(rows);
    };
    if smallest < 100 {
        return Err(ExperimentError::InvalidConfig(format!(
            "bench size {smallest} is too small to shape a graph"
        )));
    }
    // One vertex shape for every size: the sweep then varies only the edge
    // count, so runtime ratios track the edge-linear term instead of the
    // shrinking per-vertex work.
    let side = (smallest / 10).min(10_000);
    for &size in &config.sizes {
        if size > side * side {
            return Err(ExperimentError::InvalidConfig(format!(
                "bench size {size} does not fit the shared {side}x{side} vertex shape"
            )));
        }
        let seed = derive_seed(config.master_seed, "scaling", size as i64, 0);
        let graph = uniform_bipartite_covered(side, side, size, seed)?;
        let level = size as i64;

        let (mrs, mrs_ms) = best_of(|| measures::mrs_greedy(&graph, threshold));
        let mrs = mrs?;

        let order = crate::strategies::degree_order(&graph);
        let (mcs, mcs_ms) = best_of(|| measures::mcs_percolation(&graph, threshold, &order));
        let mcs = mcs?;

        let (curve, robustness_ms) = best_of(|| measures::robustness_curve(&graph, &order));
        let gauss = measures::normalized_bus_factor(&curve, measures::NormVariant::Gauss)?;
        let trapezoid =
            measures::normalized_bus_factor(&curve, measures::NormVariant::Trapezoid)?;

        let blank = ExperimentRow {
            experiment_id: String::new(),
            perturbation_level: level,
            replicate: 0,
            seed,
            mrs: 0,
            mcs: 0,
            robustness_trapezoid: 0.0,
            robustness_gauss: 0.0,
            people_equivalent: 0.0,
            r: None,
            runtime_ms: 0.0,
        };
        rows.push(ExperimentRow {
            experiment_id: "scaling-mrs".to_string(),
            mrs: mrs.size,
            runtime_ms: mrs_ms,
            ..blank.clone()
        });
        rows.push(ExperimentRow {
            experiment_id: "scaling-mcs".to_string(),
            mcs,
            runtime_ms: mcs_ms,
            ..blank.clone()
        });
        rows.push(ExperimentRow {
            experiment_id: "scaling-robustness".to_string(),
            robustness_gauss: gauss,
            robustness_trapezoid: trapezoid,
            people_equivalent: gauss * side as f64,
            runtime_ms: robustness_ms,
            ..blank
        });
    }
    Ok(rows)
}

/// Writes rows as CSV with a fixed header; `r` is empty when undefined.
pub fn write_rows_csv<W: Write>(rows: &[ExperimentRow], writer: W) -> Result<(), ExperimentError> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    for row in rows {
        csv_writer.serialize(row).map_err(std::io::Error::other)?;
    }
    csv_writer.flush()?;
    Ok(())
}

/// Sidecar metadata written next to every CSV.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentManifest {
    pub schema_version: u32,
    pub experiment: String,
    pub parameters: serde_json::Value,
    pub master_seed: u64,
    pub toolkit_version: &'static str,
}

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Spearman rank correlation with average ranks on ties.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "paired samples required");
    let rx = ranks(x);
    let ry = ranks(y);
    pearson(&rx, &ry)
}

fn ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        // Tied block [i, j] shares the average rank, 1-based.
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = rank;
        }
        i = j + 1;
    }
    out
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let len = x.len() as f64;
    let mx = x.iter().sum::<f64>() / len;
    let my = y.iter().sum::<f64>() / len;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in x.iter().zip(y.iter()) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    cov / (vx.sqrt() * vy.sqrt())
}
