//! Person-removal orders: static degree, seeded random, betweenness, and
//! eigenvector centrality, all computed on the full bipartite graph.
//!
//! Every strategy returns a [`RemovalOrder`] holding a permutation of the
//! person indices; ties always break toward the smaller index so orders are
//! reproducible across runs.

use crate::graph::BipartiteGraph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StrategyError {
    #[error("order is not a permutation of the person indices")]
    NotAPermutation,
    #[error("eigenvector centrality needs at least one edge")]
    NoEdges,
    #[error("power iteration did not converge; last residual {residual:e}")]
    NoConvergence { residual: f64 },
    #[error("unknown strategy {0:?}; expected degree, degree-adaptive, random, betweenness, or eigenvector")]
    UnknownStrategy(String),
}

/// A removal order: a permutation of `0..n` plus the name and seed that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalOrder {
    order: Vec<usize>,
    strategy_name: String,
    seed: Option<u64>,
}

impl RemovalOrder {
    /// Wraps an explicit permutation, rejecting anything that skips or
    /// repeats a person.
    pub fn new(
        order: Vec<usize>,
        strategy_name: impl Into<String>,
        seed: Option<u64>,
    ) -> Result<Self, StrategyError> {
        let mut seen = vec![false; order.len()];
        for &p in &order {
            if p >= order.len() || seen[p] {
                return Err(StrategyError::NotAPermutation);
            }
            seen[p] = true;
        }
        Ok(RemovalOrder {
            order,
            strategy_name: strategy_name.into(),
            seed,
        })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn strategy_name(&self) -> &str {
        &self.strategy_name
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
}

/// The built-in removal strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Degree,
    DegreeAdaptive,
    Random,
    Betweenness,
    Eigenvector,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Degree => "degree",
            Strategy::DegreeAdaptive => "degree-adaptive",
            Strategy::Random => "random",
            Strategy::Betweenness => "betweenness",
            Strategy::Eigenvector => "eigenvector",
        }
    }

    pub const ALL: [Strategy; 5] = [
        Strategy::Degree,
        Strategy::DegreeAdaptive,
        Strategy::Random,
        Strategy::Betweenness,
        Strategy::Eigenvector,
    ];
}

impl FromStr for Strategy {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "degree" => Ok(Strategy::Degree),
            "degree-adaptive" => Ok(Strategy::DegreeAdaptive),
            "random" => Ok(Strategy::Random),
            "betweenness" => Ok(Strategy::Betweenness),
            "eigenvector" => Ok(Strategy::Eigenvector),
            other => Err(StrategyError::UnknownStrategy(other.to_string())),
        }
    }
}

/// Builds the order for `strategy`. Only `random` consumes the seed.
pub fn order_for(
    graph: &BipartiteGraph,
    strategy: Strategy,
    seed: u64,
) -> Result<RemovalOrder, StrategyError> {
    match strategy {
        Strategy::Degree => Ok(degree_order(graph)),
        Strategy::DegreeAdaptive => Ok(degree_adaptive_order(graph)),
        Strategy::Random => Ok(random_order(graph, seed)),
        Strategy::Betweenness => Ok(betweenness_order(graph)),
        Strategy::Eigenvector => eigenvector_order(graph),
    }
}

fn ranked_order(graph: &BipartiteGraph, score: &[f64], name: &str) -> RemovalOrder {
    let mut order: Vec<usize> = (0..graph.num_people()).collect();
    order.sort_by(|&a, &b| score[b].total_cmp(&score[a]).then(a.cmp(&b)));
    RemovalOrder {
        order,
        strategy_name: name.to_string(),
        seed: None,
    }
}

/// People sorted by descending degree, computed once on the intact graph.
pub fn degree_order(graph: &BipartiteGraph) -> RemovalOrder {
    let mut order: Vec<usize> = (0..graph.num_people()).collect();
    order.sort_by(|&a, &b| {
        graph
            .person_degree(b)
            .cmp(&graph.person_degree(a))
            .then(a.cmp(&b))
    });
    RemovalOrder {
        order,
        strategy_name: "degree".to_string(),
        seed: None,
    }
}

/// Degree order with the maximum recomputed after every removal.
///
/// Tasks are never removed, so a surviving person's degree cannot change as
/// other people leave; the result therefore coincides with [`degree_order`].
/// The recomputing form is kept for experimentation with derived strategies.
pub fn degree_adaptive_order(graph: &BipartiteGraph) -> RemovalOrder {
    let n = graph.num_people();
    let mut remaining: Vec<bool> = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&p| remaining[p])
            .max_by(|&a, &b| {
                graph
                    .person_degree(a)
                    .cmp(&graph.person_degree(b))
                    .then(b.cmp(&a))
            })
            .expect("at least one person remains");
        remaining[next] = false;
        order.push(next);
    }
    RemovalOrder {
        order,
        strategy_name: "degree-adaptive".to_string(),
        seed: None,
    }
}

/// Uniformly random permutation from a seeded ChaCha stream.
pub fn random_order(graph: &BipartiteGraph, seed: u64) -> RemovalOrder {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..graph.num_people()).collect();
    order.shuffle(&mut rng);
    RemovalOrder {
        order,
        strategy_name: "random".to_string(),
        seed: Some(seed),
    }
}

/// People sorted by descending shortest-path betweenness on the full
/// bipartite graph, accumulated over every source vertex.
pub fn betweenness_order(graph: &BipartiteGraph) -> RemovalOrder {
    let score = betweenness_scores(graph);
    ranked_order(graph, &score[..graph.num_people()], "betweenness")
}

/// Betweenness for all `n + m` vertices; people occupy `0..n`, task `t` sits
/// at `n + t`. Each ordered source-target pair contributes once.
pub fn betweenness_scores(graph: &BipartiteGraph) -> Vec<f64> {
    let n = graph.num_people();
    let nv = n + graph.num_tasks();
    let neighbors = |v: usize| -> &[usize] {
        if v < n {
            graph.person_tasks(v)
        } else {
            graph.task_people(v - n)
        }
    };
    // Person neighborhoods list task indices; shift them into vertex space.
    let shift = |v: usize, w: usize| if v < n { n + w } else { w };

    let mut bc = vec![0.0; nv];
    let mut dist = vec![-1i64; nv];
    let mut sigma = vec![0.0f64; nv];
    let mut delta = vec![0.0f64; nv];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); nv];
    let mut stack = Vec::with_capacity(nv);
    let mut queue = std::collections::VecDeque::new();

    for s in 0..nv {
        for v in 0..nv {
            dist[v] = -1;
            sigma[v] = 0.0;
            delta[v] = 0.0;
            preds[v].clear();
        }
        stack.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &raw in neighbors(v) {
                let w = shift(v, raw);
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        // Dependency accumulation in reverse BFS order.
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                bc[w] += delta[w];
            }
        }
    }
    bc
}

const POWER_TOLERANCE: f64 = 1e-10;
const POWER_MAX_ITERATIONS: usize = 10_000;

/// People sorted by their entry in the dominant eigenvector of the
/// `(n + m)`-vertex adjacency operator.
///
/// Bipartite spectra are symmetric (`-lambda` pairs every `lambda`), so the
/// iteration applies `A + I`: same eigenvectors, shifted eigenvalues, and the
/// oscillation between the paired eigenspaces cannot survive. Convergence is
/// declared when the normalized iterate moves less than `1e-10` in L2 norm.
pub fn eigenvector_order(graph: &BipartiteGraph) -> Result<RemovalOrder, StrategyError> {
    if graph.num_edges() == 0 {
        return Err(StrategyError::NoEdges);
    }
    let n = graph.num_people();
    let nv = n + graph.num_tasks();
    let mut v = vec![(nv as f64).sqrt().recip(); nv];
    let mut next = vec![0.0; nv];
    let mut residual = f64::INFINITY;
    for _ in 0..POWER_MAX_ITERATIONS {
        for p in 0..n {
            let mut acc = v[p];
            for &t in graph.person_tasks(p) {
                acc += v[n + t];
            }
            next[p] = acc;
        }
        for t in 0..graph.num_tasks() {
            let mut acc = v[n + t];
            for &p in graph.task_people(t) {
                acc += v[p];
            }
            next[n + t] = acc;
        }
        let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in next.iter_mut() {
            *x /= norm;
        }
        residual = v
            .iter()
            .zip(next.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        std::mem::swap(&mut v, &mut next);
        if residual < POWER_TOLERANCE {
            return Ok(ranked_order(graph, &v[..n], "eigenvector"));
        }
    }
    Err(StrategyError::NoConvergence { residual })
}
