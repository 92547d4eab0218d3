//! Tab-separated edge lists: `person_id<TAB>task_id[<TAB>weight]`.
//!
//! String identifiers are interned into dense indices in first-appearance
//! order so graphs can be rebuilt and reports can map indices back to names.

use crate::graph::{BipartiteGraph, GraphError};
use std::io::{self, BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("line {line}: expected person<TAB>task[<TAB>weight], found {found} field(s)")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: cannot parse weight {value:?}")]
    BadWeight { line: usize, value: String },
    #[error("line {line}: weight {value} is not finite")]
    NonFiniteWeight { line: usize, value: f64 },
    #[error("read failed: {0}")]
    Io(#[from] io::Error),
}

/// Parsed edge list: interned identifiers plus `(person, task, weight)` rows.
///
/// `people[i]` is the identifier interned as person index `i`; likewise for
/// tasks. Rows keep input order and may repeat a pair; weights default to 1.
#[derive(Debug, Clone, Default)]
pub struct EdgeList {
    pub people: Vec<String>,
    pub tasks: Vec<String>,
    pub edges: Vec<(usize, usize, f64)>,
}

impl EdgeList {
    /// Reads TSV rows, skipping blank lines and `#` comments.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self, EdgeListError> {
        let mut list = EdgeList::default();
        let mut person_ids = std::collections::HashMap::new();
        let mut task_ids = std::collections::HashMap::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let line = line.strip_suffix('\r').unwrap_or(&line);
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() < 2 || fields.len() > 3 {
                return Err(EdgeListError::FieldCount {
                    line: line_no,
                    found: fields.len(),
                });
            }
            let weight = match fields.get(2) {
                None => 1.0,
                Some(raw) => raw.parse::<f64>().map_err(|_| EdgeListError::BadWeight {
                    line: line_no,
                    value: raw.to_string(),
                })?,
            };
            if !weight.is_finite() {
                return Err(EdgeListError::NonFiniteWeight {
                    line: line_no,
                    value: weight,
                });
            }
            let p = *person_ids.entry(fields[0].to_string()).or_insert_with(|| {
                list.people.push(fields[0].to_string());
                list.people.len() - 1
            });
            let t = *task_ids.entry(fields[1].to_string()).or_insert_with(|| {
                list.tasks.push(fields[1].to_string());
                list.tasks.len() - 1
            });
            list.edges.push((p, t, weight));
        }
        Ok(list)
    }

    pub fn num_people(&self) -> usize {
        self.people.len()
    }

    pub fn num_tasks(&self) -> usize {
        self.tasks.len()
    }

    /// Builds the graph over all interned identifiers, keeping only edges with
    /// weight at least `min_weight`. Vertices whose edges are all filtered out
    /// stay in the graph with degree zero.
    pub fn to_graph(&self, min_weight: f64) -> Result<BipartiteGraph, GraphError> {
        let kept: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(_, _, w)| w >= min_weight)
            .map(|&(p, t, _)| (p, t))
            .collect();
        BipartiteGraph::from_edges(self.num_people(), self.num_tasks(), &kept)
    }
}

/// Writes a graph as TSV with synthetic `p<i>` / `t<j>` identifiers,
/// ordered by person then task. Output is byte-stable for a given graph.
pub fn write_tsv<W: Write>(graph: &BipartiteGraph, writer: &mut W) -> io::Result<()> {
    for (p, t) in graph.edges() {
        writeln!(writer, "p{p}\tt{t}")?;
    }
    Ok(())
}
