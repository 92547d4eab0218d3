//! Exact reference implementations by exhaustive enumeration. These are the
//! ground truth the heuristics are tested against; hard caps keep the
//! exponential search spaces honest.

use crate::graph::{BipartiteGraph, Threshold};
use crate::measures::{gauss_area, robustness_curve};
use crate::strategies::RemovalOrder;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("subset enumeration over {num_people} people exceeds the cap of {cap}")]
    SubsetCapExceeded { num_people: usize, cap: usize },
    #[error("permutation enumeration over {num_people} people exceeds the cap of {cap}")]
    PermCapExceeded { num_people: usize, cap: usize },
    #[error("no person subset satisfies the threshold condition")]
    Infeasible,
    #[error("invalid caps: {0}")]
    InvalidLimits(String),
}

/// Enumeration budgets. Subsets cost `2^n`, permutations `n!`, so the
/// permutation cap can never exceed the subset cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    max_subset_people: usize,
    max_perm_people: usize,
}

impl OracleLimits {
    pub fn new(max_subset_people: usize, max_perm_people: usize) -> Result<Self, OracleError> {
        if max_subset_people > 63 {
            return Err(OracleError::InvalidLimits(format!(
                "subset cap {max_subset_people} exceeds the 63-bit mask width"
            )));
        }
        if max_perm_people > max_subset_people {
            return Err(OracleError::InvalidLimits(format!(
                "permutation cap {max_perm_people} above subset cap {max_subset_people}"
            )));
        }
        Ok(OracleLimits {
            max_subset_people,
            max_perm_people,
        })
    }

    pub fn max_subset_people(&self) -> usize {
        self.max_subset_people
    }

    pub fn max_perm_people(&self) -> usize {
        self.max_perm_people
    }
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_subset_people: 16,
            max_perm_people: 8,
        }
    }
}

/// How to aggregate coverage over all subsets of one size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverageAggregate {
    Min,
    Max,
}

/// An exact extremal subset: its size and the subset itself, sorted.
/// The witness is the least removal set in ascending-bitmask encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSet {
    pub size: usize,
    pub witness: Vec<usize>,
}

/// An exact minimal decay area and the first permutation attaining it in
/// lexicographic enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRobustness {
    pub area: u64,
    pub witness: Vec<usize>,
}

fn check_subset_cap(graph: &BipartiteGraph, limits: &OracleLimits) -> Result<(), OracleError> {
    if graph.num_people() > limits.max_subset_people {
        return Err(OracleError::SubsetCapExceeded {
            num_people: graph.num_people(),
            cap: limits.max_subset_people,
        });
    }
    Ok(())
}

/// One bit per contributor of each task, so `phi` of a removal mask is a
/// subset test per task.
fn task_masks(graph: &BipartiteGraph) -> Vec<u64> {
    (0..graph.num_tasks())
        .map(|t| {
            graph
                .task_people(t)
                .iter()
                .fold(0u64, |acc, &p| acc | 1 << p)
        })
        .collect()
}

fn isolated_under(task_masks: &[u64], removed: u64) -> usize {
    task_masks
        .iter()
        .filter(|&&tm| tm & !removed == 0)
        .count()
}

fn mask_to_people(mut mask: u64) -> Vec<usize> {
    let mut people = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        people.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    people
}

/// Extremal coverage over all removal subsets of exactly `k` people.
pub fn exact_cov(
    graph: &BipartiteGraph,
    k: usize,
    aggregate: CoverageAggregate,
    limits: &OracleLimits,
) -> Result<usize, OracleError> {
    check_subset_cap(graph, limits)?;
    let n = graph.num_people();
    assert!(k <= n, "cannot remove {k} of {n} people");
    let masks = task_masks(graph);
    let m = graph.num_tasks();
    let mut best: Option<usize> = None;
    for removed in 0..1u64 << n {
        if removed.count_ones() as usize != k {
            continue;
        }
        let cov = m - isolated_under(&masks, removed);
        best = Some(match (best, aggregate) {
            (None, _) => cov,
            (Some(b), CoverageAggregate::Min) => b.min(cov),
            (Some(b), CoverageAggregate::Max) => b.max(cov),
        });
    }
    Ok(best.expect("at least one subset of size k exists"))
}

/// Largest removal budget whose aggregated coverage still reaches `t * m`;
/// 0 when no budget qualifies.
pub fn exact_z(
    graph: &BipartiteGraph,
    threshold: Threshold,
    aggregate: CoverageAggregate,
    limits: &OracleLimits,
) -> Result<usize, OracleError> {
    check_subset_cap(graph, limits)?;
    let n = graph.num_people();
    let m = graph.num_tasks();
    let masks = task_masks(graph);
    // Aggregate coverage per subset size in a single pass over all masks.
    let mut per_size: Vec<Option<usize>> = vec![None; n + 1];
    for removed in 0..1u64 << n {
        let k = removed.count_ones() as usize;
        let cov = m - isolated_under(&masks, removed);
        per_size[k] = Some(match (per_size[k], aggregate) {
            (None, _) => cov,
            (Some(b), CoverageAggregate::Min) => b.min(cov),
            (Some(b), CoverageAggregate::Max) => b.max(cov),
        });
    }
    Ok((0..=n)
        .rev()
        .find(|&k| threshold.reaches(per_size[k].expect("every size visited"), m))
        .unwrap_or(0))
}

/// Smallest removal set isolating strictly more than `t * m` tasks.
pub fn exact_mcs(
    graph: &BipartiteGraph,
    threshold: Threshold,
    limits: &OracleLimits,
) -> Result<ExactSet, OracleError> {
    check_subset_cap(graph, limits)?;
    let n = graph.num_people();
    let m = graph.num_tasks();
    let masks = task_masks(graph);
    let mut best: Option<(usize, u64)> = None;
    for removed in 0..1u64 << n {
        let k = removed.count_ones() as usize;
        if best.is_some_and(|(size, _)| size <= k) {
            continue;
        }
        if threshold.exceeds(isolated_under(&masks, removed), m) {
            best = Some((k, removed));
        }
    }
    let (size, witness) = best.ok_or(OracleError::Infeasible)?;
    Ok(ExactSet {
        size,
        witness: mask_to_people(witness),
    })
}

/// Largest removal set isolating strictly fewer than `t * m` tasks.
pub fn exact_mrs(
    graph: &BipartiteGraph,
    threshold: Threshold,
    limits: &OracleLimits,
) -> Result<ExactSet, OracleError> {
    check_subset_cap(graph, limits)?;
    let n = graph.num_people();
    let m = graph.num_tasks();
    let masks = task_masks(graph);
    let mut best: Option<(usize, u64)> = None;
    for removed in 0..1u64 << n {
        let k = removed.count_ones() as usize;
        if best.is_some_and(|(size, _)| size >= k) {
            continue;
        }
        if !threshold.reaches(isolated_under(&masks, removed), m) {
            best = Some((k, removed));
        }
    }
    let (size, witness) = best.ok_or(OracleError::Infeasible)?;
    Ok(ExactSet {
        size,
        witness: mask_to_people(witness),
    })
}

/// Minimal decay area over every removal permutation, by lexicographic
/// enumeration; the witness is the first permutation attaining the minimum.
pub fn exact_robustness(
    graph: &BipartiteGraph,
    limits: &OracleLimits,
) -> Result<ExactRobustness, OracleError> {
    let n = graph.num_people();
    if n > limits.max_perm_people {
        return Err(OracleError::PermCapExceeded {
            num_people: n,
            cap: limits.max_perm_people,
        });
    }
    let mut used = vec![false; n];
    let mut prefix = Vec::with_capacity(n);
    let mut best: Option<ExactRobustness> = None;
    // Plain recursive enumeration; n is at most the permutation cap.
    fn walk(
        graph: &BipartiteGraph,
        used: &mut Vec<bool>,
        prefix: &mut Vec<usize>,
        best: &mut Option<ExactRobustness>,
    ) {
        if prefix.len() == used.len() {
            let order = RemovalOrder::new(prefix.clone(), "oracle", None)
                .expect("enumeration yields permutations");
            let area = gauss_area(&robustness_curve(graph, &order));
            if best.as_ref().is_none_or(|b| area < b.area) {
                *best = Some(ExactRobustness {
                    area,
                    witness: prefix.clone(),
                });
            }
            return;
        }
        for p in 0..used.len() {
            if used[p] {
                continue;
            }
            used[p] = true;
            prefix.push(p);
            walk(graph, used, prefix, best);
            prefix.pop();
            used[p] = false;
        }
    }
    walk(graph, &mut used, &mut prefix, &mut best);
    Ok(best.expect("zero-length permutation still yields an area"))
}
