//! Synthetic project graphs: bounded power-law degree sequences, a bipartite
//! configuration model, degree-assortativity measurement, and a
//! degree-preserving Metropolis rewiring chain. All randomness flows through
//! seeded ChaCha streams so every artifact is reproducible.

use crate::graph::{BipartiteGraph, GraphError};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeneratorError {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("degree sequence is empty on one side")]
    EmptyDegreeSequence,
    #[error("degree {degree} at {side} vertex {index} outside [1, {max}]")]
    DegreeOutOfRange {
        side: &'static str,
        index: usize,
        degree: usize,
        max: usize,
    },
    #[error("person stubs ({person_stubs}) and task stubs ({task_stubs}) do not match")]
    UnbalancedStubs {
        person_stubs: usize,
        task_stubs: usize,
    },
    #[error("degree correlation undefined: endpoint degrees have zero variance")]
    UndefinedCorrelation,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parameters of the bounded power-law degree law on `[a, a + c]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawParams {
    pub alpha: f64,
    pub a: f64,
    pub c: f64,
}

impl PowerLawParams {
    pub fn new(alpha: f64, a: f64, c: f64) -> Result<Self, GeneratorError> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(GeneratorError::InvalidParams(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        if !(a.is_finite() && a >= 1.0) {
            return Err(GeneratorError::InvalidParams(format!(
                "lower bound a must be at least 1, got {a}"
            )));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(GeneratorError::InvalidParams(format!(
                "range c must be positive, got {c}"
            )));
        }
        Ok(PowerLawParams { alpha, a, c })
    }

    /// Mean of the continuous law before rounding: `a + c * alpha / (alpha + 1)`.
    pub fn mean(&self) -> f64 {
        self.a + self.c * self.alpha / (self.alpha + 1.0)
    }
}

/// Inverse-transform sample of the bounded power law at quantile `u` in
/// `[0, 1)`: `x = a + c * u^(1/alpha)`, rounded half-up, never below `ceil(a)`.
pub fn sample_power_law_degree(params: &PowerLawParams, u: f64) -> usize {
    debug_assert!((0.0..1.0).contains(&u));
    let x = params.a + params.c * u.powf(1.0 / params.alpha);
    let rounded = (x + 0.5).floor() as usize;
    rounded.max(params.a.ceil() as usize)
}

/// Degree targets for both sides, with matching stub totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    pub person_degrees: Vec<usize>,
    pub task_degrees: Vec<usize>,
}

impl DegreeSequence {
    /// Validates that every degree is in `[1, opposite side size]` and that
    /// the stub totals agree.
    pub fn new(
        person_degrees: Vec<usize>,
        task_degrees: Vec<usize>,
    ) -> Result<Self, GeneratorError> {
        if person_degrees.is_empty() || task_degrees.is_empty() {
            return Err(GeneratorError::EmptyDegreeSequence);
        }
        let checks = [
            ("person", &person_degrees, task_degrees.len()),
            ("task", &task_degrees, person_degrees.len()),
        ];
        for (side, degrees, max) in checks {
            for (index, &degree) in degrees.iter().enumerate() {
                if degree == 0 || degree > max {
                    return Err(GeneratorError::DegreeOutOfRange {
                        side,
                        index,
                        degree,
                        max,
                    });
                }
            }
        }
        let person_stubs: usize = person_degrees.iter().sum();
        let task_stubs: usize = task_degrees.iter().sum();
        if person_stubs != task_stubs {
            return Err(GeneratorError::UnbalancedStubs {
                person_stubs,
                task_stubs,
            });
        }
        Ok(DegreeSequence {
            person_degrees,
            task_degrees,
        })
    }

    pub fn stub_count(&self) -> usize {
        self.person_degrees.iter().sum()
    }
}

/// Draws power-law degrees for both sides, caps each at the opposite side's
/// size, then reconciles the stub totals by incrementing uniformly random
/// vertices on the deficit side (still respecting the caps).
pub fn sample_degree_sequence(
    num_people: usize,
    num_tasks: usize,
    person_params: &PowerLawParams,
    task_params: &PowerLawParams,
    seed: u64,
) -> Result<DegreeSequence, GeneratorError> {
    if num_people == 0 || num_tasks == 0 {
        return Err(GeneratorError::EmptyDegreeSequence);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut person_degrees: Vec<usize> = (0..num_people)
        .map(|_| sample_power_law_degree(person_params, rng.gen::<f64>()).min(num_tasks))
        .collect();
    let mut task_degrees: Vec<usize> = (0..num_tasks)
        .map(|_| sample_power_law_degree(task_params, rng.gen::<f64>()).min(num_people))
        .collect();
    // Whichever side is short on stubs gains them one at a time. An uncapped
    // vertex always exists while the totals differ, so the draw terminates.
    loop {
        let person_stubs: usize = person_degrees.iter().sum();
        let task_stubs: usize = task_degrees.iter().sum();
        let (side, cap, deficit) = match person_stubs.cmp(&task_stubs) {
            std::cmp::Ordering::Equal => break,
            std::cmp::Ordering::Less => {
                (&mut person_degrees, num_tasks, task_stubs - person_stubs)
            }
            std::cmp::Ordering::Greater => {
                (&mut task_degrees, num_people, person_stubs - task_stubs)
            }
        };
        let mut remaining = deficit;
        while remaining > 0 {
            let v = rng.gen_range(0..side.len());
            if side[v] < cap {
                side[v] += 1;
                remaining -= 1;
            }
        }
    }
    DegreeSequence::new(person_degrees, task_degrees)
}

/// A generated graph plus how far multi-edge collapse pushed it off the
/// requested degree sequence.
#[derive(Debug, Clone)]
pub struct GeneratedGraph {
    pub graph: BipartiteGraph,
    /// Stub pairings that duplicated an existing edge and were dropped.
    pub collapsed_edges: usize,
}

/// Bipartite configuration model: matches person stubs to a shuffled list of
/// task stubs and collapses duplicate pairings.
pub fn configuration_model(
    degrees: &DegreeSequence,
    seed: u64,
) -> Result<GeneratedGraph, GeneratorError> {
    let mut person_stubs = Vec::with_capacity(degrees.stub_count());
    for (p, &d) in degrees.person_degrees.iter().enumerate() {
        person_stubs.extend(std::iter::repeat(p).take(d));
    }
    let mut task_stubs = Vec::with_capacity(degrees.stub_count());
    for (t, &d) in degrees.task_degrees.iter().enumerate() {
        task_stubs.extend(std::iter::repeat(t).take(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    task_stubs.shuffle(&mut rng);
    let edges: Vec<(usize, usize)> = person_stubs
        .iter()
        .zip(task_stubs.iter())
        .map(|(&p, &t)| (p, t))
        .collect();
    let graph = BipartiteGraph::from_edges(
        degrees.person_degrees.len(),
        degrees.task_degrees.len(),
        &edges,
    )?;
    let collapsed_edges = edges.len() - graph.num_edges();
    Ok(GeneratedGraph {
        graph,
        collapsed_edges,
    })
}

/// Pearson correlation of endpoint degrees over all edges, symmetrized over
/// the two sides. All moments are accumulated in exact integers, so the
/// zero-variance case is detected exactly.
pub fn degree_correlation(graph: &BipartiteGraph) -> Result<f64, GeneratorError> {
    if graph.num_edges() == 0 {
        return Err(GeneratorError::UndefinedCorrelation);
    }
    let person_deg = graph.person_degrees();
    let task_deg = graph.task_degrees();
    let mut s_prod: i128 = 0;
    let mut s_sum: i128 = 0;
    let mut s_sq: i128 = 0;
    for (p, t) in graph.edges() {
        let kp = person_deg[p] as i128;
        let kt = task_deg[t] as i128;
        s_prod += kp * kt;
        s_sum += kp + kt;
        s_sq += kp * kp + kt * kt;
    }
    let e = graph.num_edges() as i128;
    // r = (<k k'> - <(k+k')/2>^2) / (<(k^2+k'^2)/2> - <(k+k')/2>^2),
    // cleared of denominators.
    let numerator = 4 * e * s_prod - s_sum * s_sum;
    let denominator = 2 * e * s_sq - s_sum * s_sum;
    if denominator == 0 {
        return Err(GeneratorError::UndefinedCorrelation);
    }
    Ok(numerator as f64 / denominator as f64)
}

/// Settings for the degree-preserving rewiring chain.
#[derive(Debug, Clone, Copy)]
pub struct MetropolisConfig {
    /// Coupling of the degree-product Hamiltonian; positive drives
    /// assortative mixing, negative disassortative.
    pub coupling: f64,
    /// Attempted swaps per edge; the chain runs `sweeps * |E|` proposals.
    pub sweeps: usize,
    pub seed: u64,
}

pub const DEFAULT_SWEEPS: usize = 20;

/// Chain state after rewiring, with proposal bookkeeping.
#[derive(Debug, Clone)]
pub struct RewireOutcome {
    pub graph: BipartiteGraph,
    pub attempts: u64,
    /// Proposals that were structurally admissible (distinct endpoints, no
    /// existing edge duplicated).
    pub valid_proposals: u64,
    pub accepted: u64,
}

/// Degree-preserving double-edge swaps driven by the Hamiltonian
/// `H = -J * sum over edges of k_person * k_task`.
///
/// A proposal picks two edges `(u, z)` and `(w, v)` and offers `(u, v)`,
/// `(w, z)`. Proposals that duplicate an edge or share an endpoint are
/// discarded; the rest accept with probability `min(1, exp(-dH))`. Degrees
/// never change, so endpoint degrees are computed once up front.
pub fn metropolis_rewire(
    graph: &BipartiteGraph,
    config: &MetropolisConfig,
) -> Result<RewireOutcome, GeneratorError> {
    if !config.coupling.is_finite() {
        return Err(GeneratorError::InvalidParams(format!(
            "coupling must be finite, got {}",
            config.coupling
        )));
    }
    let mut edges: Vec<(usize, usize)> = graph.edges().collect();
    if edges.len() < 2 {
        return Ok(RewireOutcome {
            graph: graph.clone(),
            attempts: 0,
            valid_proposals: 0,
            accepted: 0,
        });
    }
    let person_deg = graph.person_degrees();
    let task_deg = graph.task_degrees();
    let mut present: HashSet<(usize, usize)> = edges.iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let attempts = (config.sweeps * edges.len()) as u64;
    let mut valid_proposals = 0u64;
    let mut accepted = 0u64;
    for _ in 0..attempts {
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        if i == j {
            continue;
        }
        let (u, z) = edges[i];
        let (w, v) = edges[j];
        if u == w || z == v || present.contains(&(u, v)) || present.contains(&(w, z)) {
            continue;
        }
        valid_proposals += 1;
        let (ku, kw) = (person_deg[u] as f64, person_deg[w] as f64);
        let (kz, kv) = (task_deg[z] as f64, task_deg[v] as f64);
        let dh = -config.coupling * (ku * kv + kw * kz - ku * kz - kw * kv);
        let accept = dh <= 0.0 || rng.gen::<f64>() < (-dh).exp();
        if !accept {
            continue;
        }
        accepted += 1;
        present.remove(&(u, z));
        present.remove(&(w, v));
        present.insert((u, v));
        present.insert((w, z));
        edges[i] = (u, v);
        edges[j] = (w, z);
    }
    let rewired = BipartiteGraph::from_edges(graph.num_people(), graph.num_tasks(), &edges)?;
    Ok(RewireOutcome {
        graph: rewired,
        attempts,
        valid_proposals,
        accepted,
    })
}

/// Uniform random bipartite graph with exactly `num_edges` distinct edges.
pub fn uniform_bipartite(
    num_people: usize,
    num_tasks: usize,
    num_edges: usize,
    seed: u64,
) -> Result<BipartiteGraph, GeneratorError> {
    if num_edges as u128 > num_people as u128 * num_tasks as u128 {
        return Err(GeneratorError::InvalidParams(format!(
            "{num_edges} edges do not fit in a {num_people} x {num_tasks} graph"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = HashSet::with_capacity(num_edges);
    while chosen.len() < num_edges {
        chosen.insert((rng.gen_range(0..num_people), rng.gen_range(0..num_tasks)));
    }
    let edges: Vec<(usize, usize)> = chosen.into_iter().collect();
    Ok(BipartiteGraph::from_edges(num_people, num_tasks, &edges)?)
}

/// Like [`uniform_bipartite`], but first gives every task one uniformly
/// chosen contributor so no task starts isolated. Requires
/// `num_edges >= num_tasks`.
pub fn uniform_bipartite_covered(
    num_people: usize,
    num_tasks: usize,
    num_edges: usize,
    seed: u64,
) -> Result<BipartiteGraph, GeneratorError> {
    if num_edges < num_tasks {
        return Err(GeneratorError::InvalidParams(format!(
            "{num_edges} edges cannot cover {num_tasks} tasks"
        )));
    }
    if num_edges as u128 > num_people as u128 * num_tasks as u128 {
        return Err(GeneratorError::InvalidParams(format!(
            "{num_edges} edges do not fit in a {num_people} x {num_tasks} graph"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = HashSet::with_capacity(num_edges);
    for t in 0..num_tasks {
        chosen.insert((rng.gen_range(0..num_people), t));
    }
    while chosen.len() < num_edges {
        chosen.insert((rng.gen_range(0..num_people), rng.gen_range(0..num_tasks)));
    }
    let edges: Vec<(usize, usize)> = chosen.into_iter().collect();
    Ok(BipartiteGraph::from_edges(num_people, num_tasks, &edges)?)
}

/// Hand-built graphs with known measure values, used as test anchors and
/// exposed through the CLI generator.
pub mod fixtures {
    use super::GeneratorError;
    use crate::graph::{BipartiteGraph, Threshold};

    /// Nine people on four tasks: person 0 contributes to every task and each
    /// task has two further dedicated people. One integrator holds the whole
    /// project together.
    pub fn toy_project() -> BipartiteGraph {
        let mut edges = vec![(0, 0), (0, 1), (0, 2), (0, 3)];
        for t in 0..4 {
            edges.push((1 + 2 * t, t));
            edges.push((2 + 2 * t, t));
        }
        BipartiteGraph::from_edges(9, 4, &edges).expect("static fixture")
    }

    /// Complete bipartite graph: every person on every task.
    pub fn complete(num_people: usize, num_tasks: usize) -> BipartiteGraph {
        let edges: Vec<(usize, usize)> = (0..num_people)
            .flat_map(|p| (0..num_tasks).map(move |t| (p, t)))
            .collect();
        BipartiteGraph::from_edges(num_people, num_tasks, &edges).expect("static fixture")
    }

    /// `k` disconnected person-task pairs.
    pub fn dyads(k: usize) -> BipartiteGraph {
        let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, i)).collect();
        BipartiteGraph::from_edges(k, k, &edges).expect("static fixture")
    }

    /// Adversarial instance for the degree heuristic at threshold `t`.
    ///
    /// The first `t*m + 1` people each hold one dedicated task; everyone else
    /// is fully connected to the remaining tasks. Removing the dyad people
    /// crashes the project, but they have the lowest degree, so a
    /// degree-ordered walk removes the entire high-degree block first.
    /// Requires `t*m` integral, `n > t*m + 1`, and `m >= t*m + 2`.
    pub fn degree_trap(
        num_people: usize,
        num_tasks: usize,
        threshold: Threshold,
    ) -> Result<BipartiteGraph, GeneratorError> {
        if !threshold.is_proper() {
            return Err(GeneratorError::InvalidParams(
                "trap threshold must be below 1".to_string(),
            ));
        }
        let scaled = threshold.numer() as u128 * num_tasks as u128;
        if scaled % threshold.denom() as u128 != 0 {
            return Err(GeneratorError::InvalidParams(format!(
                "t*m must be integral, got {threshold} * {num_tasks}"
            )));
        }
        let tm = (scaled / threshold.denom() as u128) as usize;
        if num_people <= tm + 1 {
            return Err(GeneratorError::InvalidParams(format!(
                "need more than {} people, got {num_people}",
                tm + 1
            )));
        }
        if num_tasks < tm + 2 {
            return Err(GeneratorError::InvalidParams(format!(
                "need at least {} tasks, got {num_tasks}",
                tm + 2
            )));
        }
        let boundary = tm + 1;
        let mut edges = Vec::new();
        for i in 0..boundary {
            edges.push((i, i));
        }
        for p in boundary..num_people {
            for t in boundary..num_tasks {
                edges.push((p, t));
            }
        }
        Ok(BipartiteGraph::from_edges(num_people, num_tasks, &edges)?)
    }

    /// `k` task stars tied together by one central person.
    ///
    /// Each of the `k` star owners holds `k + 1` tasks; the central person
    /// touches the first task of every star and has degree `k`. A
    /// degree-ordered removal dismantles the owners first and pays a decay
    /// area of `(k^3 + k^2) / 2`, while removing the central person first
    /// pays only `k^2 + k`.
    pub fn task_tree(k: usize) -> Result<BipartiteGraph, GeneratorError> {
        if k == 0 {
            return Err(GeneratorError::InvalidParams(
                "task tree needs at least one star".to_string(),
            ));
        }
        let mut edges = Vec::new();
        for star in 0..k {
            for offset in 0..=k {
                edges.push((star, star * (k + 1) + offset));
            }
            edges.push((k, star * (k + 1)));
        }
        Ok(BipartiteGraph::from_edges(k + 1, k * (k + 1), &edges)?)
    }

    /// Vertex-edge incidence graph of a simple graph: vertices become people,
    /// edges become tasks, and every task has exactly two contributors.
    pub fn incidence_graph(
        num_vertices: usize,
        graph_edges: &[(usize, usize)],
    ) -> Result<BipartiteGraph, GeneratorError> {
        let mut edges = Vec::with_capacity(graph_edges.len() * 2);
        for (idx, &(u, v)) in graph_edges.iter().enumerate() {
            if u == v {
                return Err(GeneratorError::InvalidParams(format!(
                    "self-loop at vertex {u} has no incidence expansion"
                )));
            }
            edges.push((u, idx));
            edges.push((v, idx));
        }
        Ok(BipartiteGraph::from_edges(
            num_vertices,
            graph_edges.len(),
            &edges,
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Threshold;

    #[test]
    fn power_law_sample_matches_hand_values() {
        let params = PowerLawParams::new(0.2, 1.0, 100.0).unwrap();
        // u = 0.5 gives 1 + 100 * 0.5^5 = 4.125, rounded half-up to 4.
        assert_eq!(sample_power_law_degree(&params, 0.5), 4);
        // Near u = 1 the sample sits at the upper support endpoint a + c.
        assert_eq!(sample_power_law_degree(&params, 1.0 - 1e-12), 101);
        let linear = PowerLawParams::new(1.0, 1.0, 100.0).unwrap();
        assert_eq!(sample_power_law_degree(&linear, 0.5), 51);
        // u = 0 collapses to the lower bound.
        assert_eq!(sample_power_law_degree(&params, 0.0), 1);
    }

    #[test]
    fn power_law_params_are_validated() {
        assert!(PowerLawParams::new(0.0, 1.0, 100.0).is_err());
        assert!(PowerLawParams::new(0.2, 0.5, 100.0).is_err());
        assert!(PowerLawParams::new(0.2, 1.0, 0.0).is_err());
        assert!(PowerLawParams::new(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn power_law_empirical_mean_tracks_analytic_mean() {
        let params = PowerLawParams::new(0.2, 1.0, 100.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 1_000_000;
        let total: u64 = (0..draws)
            .map(|_| sample_power_law_degree(&params, rng.gen::<f64>()) as u64)
            .sum();
        let empirical = total as f64 / draws as f64;
        let analytic = params.mean();
        assert!(
            (empirical - analytic).abs() / analytic < 0.01,
            "empirical {empirical} vs analytic {analytic}"
        );
    }

    #[test]
    fn degree_sequences_respect_caps_and_balance() {
        let person = PowerLawParams::new(0.2, 1.0, 100.0).unwrap();
        let task = PowerLawParams::new(0.2, 1.0, 70.0).unwrap();
        let seq = sample_degree_sequence(40, 30, &person, &task, 5).unwrap();
        assert_eq!(seq.person_degrees.len(), 40);
        assert_eq!(seq.task_degrees.len(), 30);
        assert!(seq.person_degrees.iter().all(|&d| (1..=30).contains(&d)));
        assert!(seq.task_degrees.iter().all(|&d| (1..=40).contains(&d)));
        assert_eq!(
            seq.person_degrees.iter().sum::<usize>(),
            seq.task_degrees.iter().sum::<usize>()
        );
        let again = sample_degree_sequence(40, 30, &person, &task, 5).unwrap();
        assert_eq!(seq, again);
    }

    #[test]
    fn degree_sequence_constructor_validates() {
        assert!(matches!(
            DegreeSequence::new(vec![], vec![1]),
            Err(GeneratorError::EmptyDegreeSequence)
        ));
        assert!(matches!(
            DegreeSequence::new(vec![0], vec![1]),
            Err(GeneratorError::DegreeOutOfRange { side: "person", .. })
        ));
        // Degrees fit their caps here, so only the stub totals disagree.
        assert!(matches!(
            DegreeSequence::new(vec![2], vec![1, 1, 1]),
            Err(GeneratorError::UnbalancedStubs { .. })
        ));
        assert!(DegreeSequence::new(vec![2], vec![1, 1]).is_ok());
    }

    #[test]
    fn configuration_model_builds_forced_stars() {
        // One person with two stubs against two single-stub tasks: the only
        // simple realization is the star, whatever the shuffle does.
        let seq = DegreeSequence::new(vec![2], vec![1, 1]).unwrap();
        let out = configuration_model(&seq, 9).unwrap();
        assert_eq!(out.graph.num_edges(), 2);
        assert_eq!(out.collapsed_edges, 0);
        assert_eq!(out.graph.person_tasks(0), &[0, 1]);

        let seq = DegreeSequence::new(vec![1, 1], vec![2]).unwrap();
        let out = configuration_model(&seq, 9).unwrap();
        assert_eq!(out.graph.task_people(0), &[0, 1]);
    }

    #[test]
    fn configuration_model_reports_collapsed_stubs() {
        let person = PowerLawParams::new(0.2, 1.0, 20.0).unwrap();
        let task = PowerLawParams::new(0.2, 1.0, 15.0).unwrap();
        let seq = sample_degree_sequence(60, 50, &person, &task, 3).unwrap();
        let out = configuration_model(&seq, 31).unwrap();
        assert_eq!(
            out.collapsed_edges,
            seq.stub_count() - out.graph.num_edges()
        );
        // Realized degrees never exceed the requested ones.
        for (p, &want) in seq.person_degrees.iter().enumerate() {
            assert!(out.graph.person_degree(p) <= want);
        }
        let again = configuration_model(&seq, 31).unwrap();
        assert_eq!(out.graph, again.graph);
    }

    /// Two-sample Kolmogorov-Smirnov distance between degree multisets.
    fn ks_distance(a: &[usize], b: &[usize]) -> f64 {
        let mut xs: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
        xs.sort_unstable();
        xs.dedup();
        let cdf = |data: &[usize], x: usize| {
            data.iter().filter(|&&d| d <= x).count() as f64 / data.len() as f64
        };
        xs.iter()
            .map(|&x| (cdf(a, x) - cdf(b, x)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn configuration_model_preserves_degree_distribution_at_scale() {
        let person = PowerLawParams::new(0.2, 1.0, 100.0).unwrap();
        let task = PowerLawParams::new(0.2, 1.0, 70.0).unwrap();
        let seq = sample_degree_sequence(750, 1000, &person, &task, 17).unwrap();
        let out = configuration_model(&seq, 18).unwrap();
        let realized_people = out.graph.person_degrees();
        let realized_tasks = out.graph.task_degrees();
        assert!(ks_distance(&seq.person_degrees, &realized_people) < 0.05);
        assert!(ks_distance(&seq.task_degrees, &realized_tasks) < 0.05);
    }

    #[test]
    fn degree_correlation_of_three_edge_path() {
        // Path p0 - t0 - p1 - t1: endpoint degree pairs (1,2), (2,2), (2,1).
        let g = BipartiteGraph::from_edges(2, 2, &[(0, 0), (1, 0), (1, 1)]).unwrap();
        assert_eq!(degree_correlation(&g).unwrap(), -0.5);
    }

    #[test]
    fn degree_correlation_rejects_zero_variance() {
        // Undefined only when every endpoint degree is identical: then both
        // sides of the quotient cancel exactly.
        assert_eq!(
            degree_correlation(&fixtures::complete(3, 3)).unwrap_err(),
            GeneratorError::UndefinedCorrelation
        );
        assert_eq!(
            degree_correlation(&fixtures::dyads(3)).unwrap_err(),
            GeneratorError::UndefinedCorrelation
        );
    }

    #[test]
    fn degree_correlation_is_minus_one_for_unbalanced_regular_graphs() {
        // Every edge of K_{3,4} pairs a degree-4 person with a degree-3
        // task, and a star pairs its hub degree with leaf degree 1; both
        // are perfectly disassortative.
        assert_eq!(degree_correlation(&fixtures::complete(3, 4)).unwrap(), -1.0);
        let star = BipartiteGraph::from_edges(1, 4, &[(0, 0), (0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(degree_correlation(&star).unwrap(), -1.0);
    }

    #[test]
    fn rewiring_preserves_degrees_exactly() {
        let g = uniform_bipartite(25, 30, 120, 4).unwrap();
        let out = metropolis_rewire(
            &g,
            &MetropolisConfig {
                coupling: 0.05,
                sweeps: DEFAULT_SWEEPS,
                seed: 12,
            },
        )
        .unwrap();
        assert_eq!(out.graph.person_degrees(), g.person_degrees());
        assert_eq!(out.graph.task_degrees(), g.task_degrees());
        assert_eq!(out.graph.num_edges(), g.num_edges());
        assert!(out.accepted <= out.valid_proposals);
        assert!(out.valid_proposals <= out.attempts);
    }

    #[test]
    fn zero_coupling_accepts_every_valid_proposal() {
        let g = uniform_bipartite(20, 20, 80, 7).unwrap();
        let out = metropolis_rewire(
            &g,
            &MetropolisConfig {
                coupling: 0.0,
                sweeps: DEFAULT_SWEEPS,
                seed: 3,
            },
        )
        .unwrap();
        assert!(out.valid_proposals > 0);
        assert_eq!(out.accepted, out.valid_proposals);
    }

    #[test]
    fn rewiring_is_reproducible() {
        let g = uniform_bipartite(15, 18, 60, 2).unwrap();
        let config = MetropolisConfig {
            coupling: 0.02,
            sweeps: 10,
            seed: 5,
        };
        let a = metropolis_rewire(&g, &config).unwrap();
        let b = metropolis_rewire(&g, &config).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.accepted, b.accepted);
    }

    #[test]
    fn coupling_sign_steers_assortativity() {
        let person = PowerLawParams::new(0.2, 1.0, 30.0).unwrap();
        let task = PowerLawParams::new(0.2, 1.0, 25.0).unwrap();
        let seq = sample_degree_sequence(80, 100, &person, &task, 21).unwrap();
        let base = configuration_model(&seq, 22).unwrap().graph;
        let mut mean_r = [0.0f64; 2];
        for (slot, coupling) in [(0, -0.05), (1, 0.05)] {
            let mut total = 0.0;
            for replica in 0..5u64 {
                let out = metropolis_rewire(
                    &base,
                    &MetropolisConfig {
                        coupling,
                        sweeps: DEFAULT_SWEEPS,
                        seed: 100 + replica,
                    },
                )
                .unwrap();
                total += degree_correlation(&out.graph).unwrap();
            }
            mean_r[slot] = total / 5.0;
        }
        assert!(
            mean_r[1] > mean_r[0] + 0.05,
            "assortative {} vs disassortative {}",
            mean_r[1],
            mean_r[0]
        );
    }

    #[test]
    fn tiny_graphs_skip_rewiring() {
        let g = fixtures::complete(1, 1);
        let out = metropolis_rewire(
            &g,
            &MetropolisConfig {
                coupling: 0.1,
                sweeps: 5,
                seed: 0,
            },
        )
        .unwrap();
        assert_eq!(out.attempts, 0);
        assert_eq!(out.graph, g);
    }

    #[test]
    fn uniform_graphs_hit_exact_edge_counts() {
        let g = uniform_bipartite(10, 12, 40, 6).unwrap();
        assert_eq!(g.num_edges(), 40);
        assert_eq!(uniform_bipartite(10, 12, 40, 6).unwrap(), g);
        assert!(uniform_bipartite(2, 2, 5, 0).is_err());

        let g = uniform_bipartite_covered(10, 12, 40, 6).unwrap();
        assert_eq!(g.num_edges(), 40);
        assert!((0..12).all(|t| g.task_degree(t) >= 1));
        assert!(uniform_bipartite_covered(10, 12, 5, 0).is_err());
    }

    #[test]
    fn toy_project_shape() {
        let g = fixtures::toy_project();
        assert_eq!(
            (g.num_people(), g.num_tasks(), g.num_edges()),
            (9, 4, 12)
        );
        assert_eq!(g.person_degree(0), 4);
        assert!((1..9).all(|p| g.person_degree(p) == 1));
    }

    #[test]
    fn degree_trap_shape() {
        let t = Threshold::new(1, 4).unwrap();
        let g = fixtures::degree_trap(6, 4, t).unwrap();
        // Two dyad people, four high-degree people on the last two tasks.
        assert_eq!(g.person_degrees(), vec![1, 1, 2, 2, 2, 2]);
        assert_eq!(g.task_degrees(), vec![1, 1, 4, 4]);
        assert!(fixtures::degree_trap(2, 4, t).is_err());
        assert!(fixtures::degree_trap(6, 4, Threshold::new(1, 3).unwrap()).is_err());
    }

    #[test]
    fn task_tree_shape() {
        let g = fixtures::task_tree(2).unwrap();
        assert_eq!((g.num_people(), g.num_tasks()), (3, 6));
        assert_eq!(g.person_degrees(), vec![3, 3, 2]);
        assert!(fixtures::task_tree(0).is_err());
        let g = fixtures::task_tree(3).unwrap();
        assert_eq!((g.num_people(), g.num_tasks()), (4, 12));
        assert_eq!(g.person_degree(3), 3);
    }

    #[test]
    fn incidence_graph_of_triangle() {
        let g = fixtures::incidence_graph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!((g.num_people(), g.num_tasks()), (3, 3));
        assert!(g.task_degrees().iter().all(|&d| d == 2));
        assert!(g.person_degrees().iter().all(|&d| d == 2));
        assert!(fixtures::incidence_graph(2, &[(0, 0)]).is_err());
    }
}
