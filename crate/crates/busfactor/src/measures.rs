//! The three bus-factor measures on a person-task graph: the largest
//! redundant set (MRS), the smallest crash set (MCS), and the robustness
//! decay curve with its normalized scores.
//!
//! All threshold comparisons go through [`Threshold`]'s exact integer
//! arithmetic; no measure ever rounds `t * m` through a float.

use crate::graph::{BipartiteGraph, Threshold};
use crate::strategies::{self, RemovalOrder, Strategy, StrategyError};
use crate::union_find::UnionFind;
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MeasureError {
    #[error("coverage target {target} tasks is unreachable; only {achievable} tasks have contributors")]
    CoverageUnreachable { target: usize, achievable: usize },
    #[error("threshold {0} must be strictly below 1 to isolate more than t*m tasks")]
    ImproperThreshold(Threshold),
    #[error("removal order exhausted with only {isolated} isolated task(s); the isolation target cannot be met")]
    OrderExhausted { isolated: usize },
    #[error("normalized score undefined for a graph with {num_people} people and {num_tasks} tasks")]
    DegenerateGraph {
        num_people: usize,
        num_tasks: usize,
    },
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

/// Word-packed bit array over task indices.
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn test(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Sets bit `i`; returns true when it was previously clear.
    fn set(&mut self, i: usize) -> bool {
        let word = &mut self.words[i / 64];
        let bit = 1u64 << (i % 64);
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }
}

/// Result of a redundancy computation: the people the project can lose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MrsResult {
    /// `n - |cover|`: how many people are redundant at the threshold.
    pub size: usize,
    /// The redundant people (complement of the cover), sorted.
    pub redundant: Vec<usize>,
    /// The covering people that keep at least `t * m` tasks staffed, sorted.
    pub cover: Vec<usize>,
}

fn coverage_target(
    graph: &BipartiteGraph,
    threshold: Threshold,
) -> Result<usize, MeasureError> {
    let target = threshold.target_count(graph.num_tasks());
    let achievable = (0..graph.num_tasks())
        .filter(|&t| graph.task_degree(t) > 0)
        .count();
    if target > achievable {
        return Err(MeasureError::CoverageUnreachable { target, achievable });
    }
    Ok(target)
}

fn mrs_result(graph: &BipartiteGraph, mut cover: Vec<usize>) -> MrsResult {
    cover.sort_unstable();
    let mut in_cover = vec![false; graph.num_people()];
    for &p in &cover {
        in_cover[p] = true;
    }
    let redundant: Vec<usize> = (0..graph.num_people()).filter(|&p| !in_cover[p]).collect();
    MrsResult {
        size: redundant.len(),
        redundant,
        cover,
    }
}

/// Largest redundant set via lazy greedy set cover.
///
/// A max-heap keys each person by a stale upper bound on their effective
/// coverage. A popped person whose refreshed coverage still matches the bound
/// is globally maximal (coverage only shrinks), so it joins the cover;
/// otherwise it re-enters the heap with the refreshed count. Ties pop the
/// smaller person index first.
pub fn mrs_greedy(graph: &BipartiteGraph, threshold: Threshold) -> Result<MrsResult, MeasureError> {
    let m = graph.num_tasks();
    let target = coverage_target(graph, threshold)?;
    let mut covered = BitSet::new(m);
    let mut covered_count = 0usize;
    let mut uncovered: Vec<Vec<usize>> = (0..graph.num_people())
        .map(|p| graph.person_tasks(p).to_vec())
        .collect();
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = (0..graph.num_people())
        .map(|p| (uncovered[p].len(), Reverse(p)))
        .collect();
    let mut cover = Vec::new();
    while covered_count < target {
        let (bound, Reverse(p)) = heap
            .pop()
            .expect("coverage target is reachable, so some person still adds coverage");
        uncovered[p].retain(|&t| !covered.test(t));
        if uncovered[p].len() == bound {
            cover.push(p);
            for &t in &uncovered[p] {
                if covered.set(t) {
                    covered_count += 1;
                }
            }
        } else {
            heap.push((uncovered[p].len(), Reverse(p)));
        }
    }
    Ok(mrs_result(graph, cover))
}

/// Redundancy baseline that fills the cover in a fixed processing order
/// instead of greedily, stopping once coverage reaches `t * m`.
pub fn mrs_with_order(
    graph: &BipartiteGraph,
    threshold: Threshold,
    order: &RemovalOrder,
) -> Result<MrsResult, MeasureError> {
    assert_eq!(order.len(), graph.num_people(), "order sized for a different graph");
    let target = coverage_target(graph, threshold)?;
    let mut covered = BitSet::new(graph.num_tasks());
    let mut covered_count = 0usize;
    let mut cover = Vec::new();
    for &p in order.as_slice() {
        if covered_count >= target {
            break;
        }
        cover.push(p);
        for &t in graph.person_tasks(p) {
            if covered.set(t) {
                covered_count += 1;
            }
        }
    }
    Ok(mrs_result(graph, cover))
}

/// Smallest crash set along a removal order, by degree percolation.
///
/// Task degrees tick down as each person leaves; the walk stops as soon as
/// strictly more than `t * m` tasks hit degree zero and returns how many
/// people it removed. Tasks that start at degree zero count as isolated from
/// the outset.
pub fn mcs_percolation(
    graph: &BipartiteGraph,
    threshold: Threshold,
    order: &RemovalOrder,
) -> Result<usize, MeasureError> {
    assert_eq!(order.len(), graph.num_people(), "order sized for a different graph");
    if !threshold.is_proper() {
        return Err(MeasureError::ImproperThreshold(threshold));
    }
    let m = graph.num_tasks();
    let mut task_deg = graph.task_degrees();
    let mut isolated = task_deg.iter().filter(|&&d| d == 0).count();
    let mut people = order.as_slice().iter();
    let mut removed = 0usize;
    while !threshold.exceeds(isolated, m) {
        let &p = people
            .next()
            .ok_or(MeasureError::OrderExhausted { isolated })?;
        for &t in graph.person_tasks(p) {
            task_deg[t] -= 1;
            if task_deg[t] == 0 {
                isolated += 1;
            }
        }
        removed += 1;
    }
    Ok(removed)
}

/// Decay of the largest staffed component as people leave in a fixed order.
///
/// `tau_values[i]` is `tau` after the first `i` people of the order are
/// removed; the final entry is always 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustnessCurve {
    tau_values: Vec<usize>,
    num_tasks: usize,
    order: RemovalOrder,
}

impl RobustnessCurve {
    pub fn tau_values(&self) -> &[usize] {
        &self.tau_values
    }

    pub fn num_people(&self) -> usize {
        self.order.len()
    }

    pub fn num_tasks(&self) -> usize {
        self.num_tasks
    }

    pub fn order(&self) -> &RemovalOrder {
        &self.order
    }
}

/// Computes the decay curve by replaying the order backwards with a
/// union-find over `m` task slots and `n` person slots.
///
/// Inserting a person unions them with all their tasks; the largest staffed
/// component so far is a running maximum because components only ever merge,
/// and any component that grows is the one rooted at the person just
/// inserted. Person-free singleton tasks never enter the maximum.
pub fn robustness_curve(graph: &BipartiteGraph, order: &RemovalOrder) -> RobustnessCurve {
    assert_eq!(order.len(), graph.num_people(), "order sized for a different graph");
    let n = graph.num_people();
    let m = graph.num_tasks();
    let mut uf = UnionFind::new(m + n);
    let mut task_count: Vec<usize> = (0..m + n).map(|slot| usize::from(slot < m)).collect();
    let mut running_max = 0usize;
    let mut tau_values = Vec::with_capacity(n + 1);
    for &p in order.as_slice().iter().rev() {
        let slot = m + p;
        for &t in graph.person_tasks(p) {
            if let Some((root, absorbed)) = uf.union(slot, t) {
                task_count[root] += task_count[absorbed];
            }
        }
        let here = task_count[uf.find(slot)];
        running_max = running_max.max(here);
        tau_values.push(running_max);
    }
    tau_values.reverse();
    tau_values.push(0);
    RobustnessCurve {
        tau_values,
        num_tasks: m,
        order: order.clone(),
    }
}

/// Area under the decay curve: the sum of `tau` over every removal step.
pub fn gauss_area(curve: &RobustnessCurve) -> u64 {
    curve.tau_values[1..].iter().map(|&x| x as u64).sum()
}

/// Normalizations of the decay area to `[0, 1]`, both equal to 1 on a
/// complete bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormVariant {
    /// `area / (m * (n - 1))`; defined as 0 for a single person.
    Gauss,
    /// Trapezoid sum `(2 * area + tau(G)) / (m * (2n - 1))`.
    Trapezoid,
}

/// Normalized bus-factor score for the given variant.
pub fn normalized_bus_factor(
    curve: &RobustnessCurve,
    variant: NormVariant,
) -> Result<f64, MeasureError> {
    let n = curve.num_people();
    let m = curve.num_tasks();
    if n == 0 || m == 0 {
        return Err(MeasureError::DegenerateGraph {
            num_people: n,
            num_tasks: m,
        });
    }
    let area = gauss_area(curve);
    match variant {
        NormVariant::Gauss => {
            if n == 1 {
                return Ok(0.0);
            }
            Ok(area as f64 / (m as f64 * (n as f64 - 1.0)))
        }
        NormVariant::Trapezoid => {
            let sum = 2 * area + curve.tau_values[0] as u64;
            Ok(sum as f64 / (m as f64 * (2.0 * n as f64 - 1.0)))
        }
    }
}

/// Everything `analyze` computes for one graph, threshold, and strategy.
///
/// `people_equivalent` rescales the gauss-normalized score by the head
/// count, reading the curve as "this project behaves like N interchangeable
/// people"; the nine-person toy project scores 0.25 and 2.25 people.
#[derive(Debug, Clone, Serialize)]
pub struct BusFactorReport {
    pub schema_version: u32,
    pub num_people: usize,
    pub num_tasks: usize,
    pub num_edges: usize,
    pub threshold: Threshold,
    pub strategy: String,
    pub mrs_size: usize,
    pub mrs_set: Vec<usize>,
    pub mcs_size: usize,
    pub gauss_area: u64,
    pub robustness_gauss: f64,
    pub robustness_trapezoid: f64,
    pub people_equivalent: f64,
    pub curve: Vec<usize>,
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Runs all three measures with the named strategy's removal order. The
/// redundant set always comes from the greedy cover; the crash set and decay
/// curve follow the strategy.
pub fn analyze(
    graph: &BipartiteGraph,
    threshold: Threshold,
    strategy: Strategy,
    seed: u64,
) -> Result<BusFactorReport, MeasureError> {
    let order = strategies::order_for(graph, strategy, seed)?;
    let mrs = mrs_greedy(graph, threshold)?;
    let mcs = mcs_percolation(graph, threshold, &order)?;
    let curve = robustness_curve(graph, &order);
    let robustness_gauss = normalized_bus_factor(&curve, NormVariant::Gauss)?;
    let robustness_trapezoid = normalized_bus_factor(&curve, NormVariant::Trapezoid)?;
    Ok(BusFactorReport {
        schema_version: REPORT_SCHEMA_VERSION,
        num_people: graph.num_people(),
        num_tasks: graph.num_tasks(),
        num_edges: graph.num_edges(),
        threshold,
        strategy: strategy.name().to_string(),
        mrs_size: mrs.size,
        mrs_set: mrs.redundant,
        mcs_size: mcs,
        gauss_area: gauss_area(&curve),
        robustness_gauss,
        robustness_trapezoid,
        people_equivalent: robustness_gauss * graph.num_people() as f64,
        curve: curve.tau_values().to_vec(),
    })
}
