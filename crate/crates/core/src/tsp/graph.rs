use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// Complete undirected graph with non-negative integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    weights: Vec<u32>,
}

impl Graph {
    /// Builds a graph from adjacency rows. Rows must form a symmetric N×N
    /// matrix with a zero diagonal.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::validation(format!("graph needs at least 2 nodes, got {n}")));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::validation(format!("row {i} has {} entries, expected {n}", row.len())));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if row[i] != 0 {
                return Err(Error::validation(format!("diagonal entry ({i},{i}) is {}", row[i])));
            }
            for (j, &w) in row.iter().enumerate().take(i) {
                if w != rows[j][i] {
                    return Err(Error::validation(format!(
                        "asymmetric weights: w({i},{j})={w} but w({j},{i})={}",
                        rows[j][i]
                    )));
                }
            }
        }
        Ok(Graph { n, weights: rows.into_iter().flatten().collect() })
    }

    /// Parses the plain-text format: node count on the first line, then one
    /// row of space-separated weights per node.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (first, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::Parse { line: first, message: format!("expected node count, found {header:?}") })?;
        let mut rows = Vec::with_capacity(n);
        for (line, text) in lines.by_ref().take(n) {
            let row = text
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>().map_err(|_| Error::Parse {
                        line,
                        message: format!("expected non-negative integer weight, found {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(Error::Parse { line, message: format!("expected {n} weights, found {}", row.len()) });
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Parse { line: first, message: format!("expected {n} rows, found {}", rows.len()) });
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, message: "trailing content after adjacency rows".into() });
        }
        Graph::new(rows)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Graph::parse(&text)
    }

    /// Same graph with every weight set to `w` off the diagonal.
    pub fn uniform(n: usize, w: u32) -> Result<Self> {
        Graph::new((0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { w }).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> u32 {
        self.weights[i * self.n + j]
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.weight(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
