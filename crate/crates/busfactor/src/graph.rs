//! Bipartite person-task graphs and the primitives every measure is built on:
//! removal masks, exact rational thresholds, isolated-task counts, and the
//! largest-staffed-component size `tau`.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({person}, {task}) out of range for {num_people} people and {num_tasks} tasks")]
    EdgeOutOfRange {
        person: usize,
        task: usize,
        num_people: usize,
        num_tasks: usize,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThresholdError {
    #[error("threshold must be positive")]
    Zero,
    #[error("threshold must not exceed 1")]
    AboveOne,
    #[error("cannot parse threshold from {input:?}: expected a fraction like 1/2 or a decimal like 0.5")]
    Parse { input: String },
}

/// Task-fraction threshold `t`, kept as an exact rational in `(0, 1]`.
///
/// Every comparison against `t * m` cross-multiplies integers, so results
/// never depend on floating-point rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threshold {
    num: u64,
    den: u64,
}

impl Threshold {
    /// Builds `num/den`, reduced to lowest terms. Requires `0 < num/den <= 1`.
    pub fn new(num: u64, den: u64) -> Result<Self, ThresholdError> {
        if num == 0 || den == 0 {
            return Err(ThresholdError::Zero);
        }
        if num > den {
            return Err(ThresholdError::AboveOne);
        }
        let g = gcd(num, den);
        Ok(Threshold {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    /// True when `t < 1`, the precondition for isolation thresholds.
    pub fn is_proper(&self) -> bool {
        self.num < self.den
    }

    /// `1 - t`. Errors when `t = 1` since thresholds must stay positive.
    pub fn complement(&self) -> Result<Self, ThresholdError> {
        Threshold::new(self.den - self.num, self.den)
    }

    /// `count > t * m`, exactly.
    pub fn exceeds(&self, count: usize, m: usize) -> bool {
        count as u128 * self.den as u128 > self.num as u128 * m as u128
    }

    /// `count >= t * m`, exactly.
    pub fn reaches(&self, count: usize, m: usize) -> bool {
        count as u128 * self.den as u128 >= self.num as u128 * m as u128
    }

    /// Smallest integer count satisfying `count >= t * m`.
    pub fn target_count(&self, m: usize) -> usize {
        let num = self.num as u128 * m as u128;
        let den = self.den as u128;
        (num.div_ceil(den)) as usize
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Threshold {
    type Err = ThresholdError;

    /// Accepts `"num/den"` fractions, plain integers, and decimals.
    /// Decimals convert to a power-of-ten denominator, so `"0.5"` is exactly `1/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_err = || ThresholdError::Parse {
            input: s.to_string(),
        };
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: u64 = num.trim().parse().map_err(|_| parse_err())?;
            let den: u64 = den.trim().parse().map_err(|_| parse_err())?;
            return Threshold::new(num, den);
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(parse_err());
            }
            let whole: u64 = if whole.is_empty() {
                0
            } else {
                whole.parse().map_err(|_| parse_err())?
            };
            let frac_val: u64 = frac.parse().map_err(|_| parse_err())?;
            let den = 10u64.pow(frac.len() as u32);
            let num = whole
                .checked_mul(den)
                .and_then(|w| w.checked_add(frac_val))
                .ok_or_else(parse_err)?;
            return Threshold::new(num, den);
        }
        let whole: u64 = s.parse().map_err(|_| parse_err())?;
        Threshold::new(whole, 1)
    }
}

impl Serialize for Threshold {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Threshold {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Set of removed people with constant-time membership tests.
#[derive(Debug, Clone)]
pub struct RemovalMask {
    removed: Vec<bool>,
    count: usize,
}

impl RemovalMask {
    pub fn new(num_people: usize) -> Self {
        RemovalMask {
            removed: vec![false; num_people],
            count: 0,
        }
    }

    pub fn from_people(num_people: usize, people: &[usize]) -> Self {
        let mut mask = RemovalMask::new(num_people);
        for &p in people {
            mask.insert(p);
        }
        mask
    }

    /// Marks `person` removed; returns false when it already was.
    pub fn insert(&mut self, person: usize) -> bool {
        if self.removed[person] {
            return false;
        }
        self.removed[person] = true;
        self.count += 1;
        true
    }

    pub fn contains(&self, person: usize) -> bool {
        self.removed[person]
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn capacity(&self) -> usize {
        self.removed.len()
    }
}

/// One connected component of the surviving graph: sorted person and task indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub people: Vec<usize>,
    pub tasks: Vec<usize>,
}

/// Components of `G[P \ X]` plus the tasks left without any surviving person.
///
/// A task is orphaned exactly when all of its contributors are removed, so
/// `orphan_tasks.len()` always equals the isolated-task count for the same mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub components: Vec<Component>,
    pub orphan_tasks: Vec<usize>,
}

/// Undirected bipartite graph between people and tasks.
///
/// Adjacency lists are sorted, deduplicated, and never change after
/// construction; removals are expressed through a [`RemovalMask`] instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    person_adj: Vec<Vec<usize>>,
    task_adj: Vec<Vec<usize>>,
    num_edges: usize,
}

impl BipartiteGraph {
    /// Builds a graph from `(person, task)` pairs. Duplicate pairs collapse to
    /// one edge; out-of-range endpoints are rejected.
    pub fn from_edges(
        num_people: usize,
        num_tasks: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let mut person_adj = vec![Vec::new(); num_people];
        for &(p, t) in edges {
            if p >= num_people || t >= num_tasks {
                return Err(GraphError::EdgeOutOfRange {
                    person: p,
                    task: t,
                    num_people,
                    num_tasks,
                });
            }
            person_adj[p].push(t);
        }
        let mut num_edges = 0;
        let mut task_adj = vec![Vec::new(); num_tasks];
        for (p, tasks) in person_adj.iter_mut().enumerate() {
            tasks.sort_unstable();
            tasks.dedup();
            num_edges += tasks.len();
            for &t in tasks.iter() {
                task_adj[t].push(p);
            }
        }
        // Task lists come out sorted because people are visited in index order.
        Ok(BipartiteGraph {
            person_adj,
            task_adj,
            num_edges,
        })
    }

    pub fn num_people(&self) -> usize {
        self.person_adj.len()
    }

    pub fn num_tasks(&self) -> usize {
        self.task_adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    /// Tasks of `person`, sorted ascending.
    pub fn person_tasks(&self, person: usize) -> &[usize] {
        &self.person_adj[person]
    }

    /// People on `task`, sorted ascending.
    pub fn task_people(&self, task: usize) -> &[usize] {
        &self.task_adj[task]
    }

    pub fn person_degree(&self, person: usize) -> usize {
        self.person_adj[person].len()
    }

    pub fn task_degree(&self, task: usize) -> usize {
        self.task_adj[task].len()
    }

    pub fn person_degrees(&self) -> Vec<usize> {
        self.person_adj.iter().map(Vec::len).collect()
    }

    pub fn task_degrees(&self) -> Vec<usize> {
        self.task_adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, person: usize, task: usize) -> bool {
        self.person_adj[person].binary_search(&task).is_ok()
    }

    /// All edges as `(person, task)`, ordered by person then task.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.person_adj
            .iter()
            .enumerate()
            .flat_map(|(p, tasks)| tasks.iter().map(move |&t| (p, t)))
    }

    /// Number of tasks with no surviving contributor under `mask`.
    ///
    /// Tasks that start with degree zero count as isolated for every mask,
    /// including the empty one.
    pub fn isolated_task_count(&self, mask: &RemovalMask) -> usize {
        assert_eq!(
            mask.capacity(),
            self.num_people(),
            "removal mask sized for a different graph"
        );
        self.task_adj
            .iter()
            .filter(|people| people.iter().all(|&p| mask.contains(p)))
            .count()
    }

    /// Size, in tasks, of the largest component that still contains at least
    /// one surviving person. Zero when every person is removed.
    pub fn tau(&self, mask: &RemovalMask) -> usize {
        assert_eq!(
            mask.capacity(),
            self.num_people(),
            "removal mask sized for a different graph"
        );
        let n = self.num_people();
        let m = self.num_tasks();
        let mut seen_person = vec![false; n];
        let mut seen_task = vec![false; m];
        let mut stack: Vec<usize> = Vec::new();
        let mut best = 0;
        for start in 0..n {
            if seen_person[start] || mask.contains(start) {
                continue;
            }
            seen_person[start] = true;
            stack.push(start);
            let mut tasks_here = 0;
            // Vertices are encoded as person indices; tasks ride along by
            // scanning each popped person's neighborhood one hop deep.
            while let Some(p) = stack.pop() {
                for &t in &self.person_adj[p] {
                    if seen_task[t] {
                        continue;
                    }
                    seen_task[t] = true;
                    tasks_here += 1;
                    for &q in &self.task_adj[t] {
                        if !seen_person[q] && !mask.contains(q) {
                            seen_person[q] = true;
                            stack.push(q);
                        }
                    }
                }
            }
            best = best.max(tasks_here);
        }
        best
    }

    /// Connected components of the surviving graph, plus orphaned tasks.
    /// Components are ordered by their smallest person index.
    pub fn connected_components(&self, mask: &RemovalMask) -> ComponentPartition {
        assert_eq!(
            mask.capacity(),
            self.num_people(),
            "removal mask sized for a different graph"
        );
        let n = self.num_people();
        let m = self.num_tasks();
        let mut seen_person = vec![false; n];
        let mut seen_task = vec![false; m];
        let mut components = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        for start in 0..n {
            if seen_person[start] || mask.contains(start) {
                continue;
            }
            seen_person[start] = true;
            stack.push(start);
            let mut people = Vec::new();
            let mut tasks = Vec::new();
            while let Some(p) = stack.pop() {
                people.push(p);
                for &t in &self.person_adj[p] {
                    if seen_task[t] {
                        continue;
                    }
                    seen_task[t] = true;
                    tasks.push(t);
                    for &q in &self.task_adj[t] {
                        if !seen_person[q] && !mask.contains(q) {
                            seen_person[q] = true;
                            stack.push(q);
                        }
                    }
                }
            }
            people.sort_unstable();
            tasks.sort_unstable();
            components.push(Component { people, tasks });
        }
        components.sort_by_key(|c| c.people[0]);
        let orphan_tasks = (0..m).filter(|&t| !seen_task[t]).collect();
        ComponentPartition {
            components,
            orphan_tasks,
        }
    }
}

/// Keeps the pairs whose weight is at least `min_weight`.
pub fn filter_by_weight(edges: &[(usize, usize, f64)], min_weight: f64) -> Vec<(usize, usize)> {
    edges
        .iter()
        .filter(|&&(_, _, w)| w >= min_weight)
        .map(|&(p, t, _)| (p, t))
        .collect()
}
