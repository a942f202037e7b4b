//! Weighted simple graphs with rational edge weights and the matrix-tree
//! machinery: Laplacians, weighted spanning-tree counts (determinant route
//! and brute-force route), deletion, contraction, and vertex identification.
//!
//! A weight of zero means "no edge" — stored weights are always nonzero, so
//! contraction drops any parallel pair whose weights cancel.

use std::collections::BTreeMap;
use std::env;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::SymmetricMatrix;
use crate::scalar::{format_rational, parse_rational, Rational};

/// Vertex cap for the brute-force spanning-tree oracle when none is given
/// explicitly.
pub const DEFAULT_BRUTEFORCE_BOUND: usize = 10;

/// Environment variable that overrides [`DEFAULT_BRUTEFORCE_BOUND`].
pub const BRUTEFORCE_BOUND_ENV: &str = "CONCORDANCE_LAB_BRUTEFORCE_BOUND";

/// The brute-force vertex cap currently in effect: the environment override
/// when it parses as a positive integer, the default otherwise.
pub fn bruteforce_bound() -> usize {
    env::var(BRUTEFORCE_BOUND_ENV)
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_BRUTEFORCE_BOUND)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at `{0}` is not allowed in a simple graph")]
    SelfLoop(String),
    #[error("edge {0}--{1} already present")]
    DuplicateEdge(String, String),
    #[error("edge weight must be nonzero (zero means no edge)")]
    ZeroWeight,
    #[error("edge {0}--{1} is absent")]
    AbsentEdge(String, String),
    #[error("cannot identify a vertex with itself: `{0}`")]
    IdentifySame(String),
    #[error("graph has no vertices")]
    Empty,
    #[error("graph has {vertices} vertices, above the brute-force bound {bound}")]
    BruteforceBoundExceeded { vertices: usize, bound: usize },
}

/// Parse failure for the graph text format, pointing at the offending line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct GraphParseError {
    pub line: usize,
    pub message: String,
}

/// Weighted simple graph. Vertices keep their insertion order; edges are
/// kept in a deterministic index-sorted map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedGraph {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    edges: BTreeMap<(usize, usize), Rational>,
}

impl WeightedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for label in labels {
            g.add_vertex(label)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize, GraphError> {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(GraphError::DuplicateVertex(label));
        }
        let idx = self.labels.len();
        self.index.insert(label.clone(), idx);
        self.labels.push(label);
        Ok(idx)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize, GraphError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(label.to_owned()))
    }

    fn edge_key(&self, a: &str, b: &str) -> Result<(usize, usize), GraphError> {
        let i = self.vertex_index(a)?;
        let j = self.vertex_index(b)?;
        if i == j {
            return Err(GraphError::SelfLoop(a.to_owned()));
        }
        Ok((i.min(j), i.max(j)))
    }

    pub fn add_edge(&mut self, a: &str, b: &str, weight: Rational) -> Result<(), GraphError> {
        if weight.is_zero() {
            return Err(GraphError::ZeroWeight);
        }
        let key = self.edge_key(a, b)?;
        if self.edges.contains_key(&key) {
            return Err(GraphError::DuplicateEdge(a.to_owned(), b.to_owned()));
        }
        self.edges.insert(key, weight);
        Ok(())
    }

    pub fn weight(&self, a: &str, b: &str) -> Result<Option<&Rational>, GraphError> {
        let key = self.edge_key(a, b)?;
        Ok(self.edges.get(&key))
    }

    /// Edges as (label, label, weight), ordered by vertex index pair.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, &Rational)> {
        self.edges.iter().map(move |(&(i, j), w)| {
            (self.labels[i].as_str(), self.labels[j].as_str(), w)
        })
    }

    /// Weighted Laplacian: off-diagonal (i, j) is -w(i, j), diagonal (i, i)
    /// is the sum of weights at i. Row sums vanish.
    pub fn laplacian(&self) -> SymmetricMatrix {
        let n = self.vertex_count();
        let mut m = SymmetricMatrix::zeros(n);
        for (&(i, j), w) in &self.edges {
            m.set_sym(i, j, -w.clone());
            let dii = m.get(i, i) + w;
            m.set_sym(i, i, dii);
            let djj = m.get(j, j) + w;
            m.set_sym(j, j, djj);
        }
        m
    }

    /// Laplacian with the row and column of `pivot` removed.
    pub fn reduced_laplacian(&self, pivot: &str) -> Result<SymmetricMatrix, GraphError> {
        let p = self.vertex_index(pivot)?;
        Ok(self
            .laplacian()
            .removing(p)
            .expect("pivot index is in range"))
    }

    /// Weighted spanning-tree count via the matrix-tree theorem: the
    /// determinant of any reduced Laplacian. Independent of the pivot.
    pub fn spanning_tree_count(&self) -> Result<Rational, GraphError> {
        if self.vertex_count() == 0 {
            return Err(GraphError::Empty);
        }
        Ok(self
            .laplacian()
            .removing(0)
            .expect("graph is nonempty")
            .determinant())
    }

    /// Spanning-tree count by direct enumeration: sums the weight product of
    /// every spanning tree. Deliberately independent of the determinant
    /// route so the two can check each other. `bound` caps the vertex count
    /// (None: environment override or the default).
    pub fn spanning_tree_count_bruteforce(
        &self,
        bound: Option<usize>,
    ) -> Result<Rational, GraphError> {
        let n = self.vertex_count();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let bound = bound.unwrap_or_else(bruteforce_bound);
        if n > bound {
            return Err(GraphError::BruteforceBoundExceeded { vertices: n, bound });
        }
        let edges: Vec<(usize, usize, Rational)> = self
            .edges
            .iter()
            .map(|(&(i, j), w)| (i, j, w.clone()))
            .collect();
        let mut total = Rational::zero();
        let mut parent: Vec<usize> = (0..n).collect();
        enumerate_forests(
            &edges,
            0,
            n - 1,
            &Rational::one(),
            &mut parent,
            &mut total,
        );
        Ok(total)
    }

    /// Graph with one edge removed.
    pub fn delete_edge(&self, a: &str, b: &str) -> Result<Self, GraphError> {
        let key = self.edge_key(a, b)?;
        let mut out = self.clone();
        if out.edges.remove(&key).is_none() {
            return Err(GraphError::AbsentEdge(a.to_owned(), b.to_owned()));
        }
        Ok(out)
    }

    /// Contracts the edge a--b: merges b into a (the merged vertex keeps
    /// label a), summing weights of any parallel pairs that arise and
    /// dropping pairs that cancel to zero.
    pub fn contract_edge(&self, a: &str, b: &str) -> Result<Self, GraphError> {
        let key = self.edge_key(a, b)?;
        if !self.edges.contains_key(&key) {
            return Err(GraphError::AbsentEdge(a.to_owned(), b.to_owned()));
        }
        self.merge_vertices(a, b)
    }

    /// Identifies two distinct vertices (no edge required); an edge between
    /// them, if present, disappears rather than becoming a self-loop.
    pub fn identify_vertices(&self, a: &str, b: &str) -> Result<Self, GraphError> {
        let i = self.vertex_index(a)?;
        let j = self.vertex_index(b)?;
        if i == j {
            return Err(GraphError::IdentifySame(a.to_owned()));
        }
        self.merge_vertices(a, b)
    }

    fn merge_vertices(&self, keep: &str, gone: &str) -> Result<Self, GraphError> {
        let ik = self.vertex_index(keep)?;
        let ig = self.vertex_index(gone)?;
        let mut out = Self::new();
        for (idx, label) in self.labels.iter().enumerate() {
            if idx != ig {
                out.add_vertex(label.clone())?;
            }
        }
        let relabel = |idx: usize| -> &str {
            if idx == ig {
                keep
            } else {
                &self.labels[idx]
            }
        };
        let mut accumulated: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(i, j), w) in &self.edges {
            if (i, j) == (ik.min(ig), ik.max(ig)) {
                continue; // the merged pair: never a self-loop
            }
            let a = out.vertex_index(relabel(i))?;
            let b = out.vertex_index(relabel(j))?;
            let key = (a.min(b), a.max(b));
            *accumulated.entry(key).or_insert_with(Rational::zero) += w;
        }
        out.edges = accumulated
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .collect();
        Ok(out)
    }

    /// Parses the line-oriented text format produced by [`to_text`]:
    /// a `graph <count>` header, one `vertex <label>` line per vertex, then
    /// `edge <label> <label> <weight>` lines. Blank lines are allowed.
    ///
    /// [`to_text`]: WeightedGraph::to_text
    pub fn parse_text(text: &str) -> Result<Self, GraphParseError> {
        let fail = |line: usize, message: String| GraphParseError { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (header_line, header) = lines
            .next()
            .ok_or_else(|| fail(1, "empty input; expected `graph <count>` header".into()))?;
        let declared: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["graph", count] => count.parse().map_err(|_| {
                fail(header_line, format!("invalid vertex count `{count}`"))
            })?,
            _ => {
                return Err(fail(
                    header_line,
                    format!("expected `graph <count>` header, found `{header}`"),
                ))
            }
        };
        let mut g = Self::new();
        let mut edges_started = false;
        for (line_no, line) in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens[..] {
                ["vertex", label] => {
                    if edges_started {
                        return Err(fail(line_no, "vertex line after edge lines".into()));
                    }
                    g.add_vertex(label)
                        .map_err(|e| fail(line_no, e.to_string()))?;
                }
                ["edge", a, b, weight] => {
                    if !edges_started {
                        edges_started = true;
                        if g.vertex_count() != declared {
                            return Err(fail(
                                line_no,
                                format!(
                                    "header declares {declared} vertices, found {}",
                                    g.vertex_count()
                                ),
                            ));
                        }
                    }
                    let w = parse_rational(weight)
                        .map_err(|e| fail(line_no, e.to_string()))?;
                    g.add_edge(a, b, w).map_err(|e| fail(line_no, e.to_string()))?;
                }
                _ => {
                    return Err(fail(
                        line_no,
                        format!("expected `vertex <label>` or `edge <a> <b> <weight>`, found `{line}`"),
                    ))
                }
            }
        }
        if !edges_started && g.vertex_count() != declared {
            return Err(fail(
                header_line,
                format!(
                    "header declares {declared} vertices, found {}",
                    g.vertex_count()
                ),
            ));
        }
        Ok(g)
    }

    /// Canonical text form; `parse_text` round-trips it exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!("graph {}\n", self.vertex_count());
        for label in &self.labels {
            out.push_str(&format!("vertex {label}\n"));
        }
        for (a, b, w) in self.edges() {
            out.push_str(&format!("edge {a} {b} {}\n", format_rational(w)));
        }
        out
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Backtracking enumeration of spanning forests extendable to spanning
/// trees: walks the edge list in order, either skipping or taking each edge
/// (union-find prevents cycles), accumulating the product of taken weights.
fn enumerate_forests(
    edges: &[(usize, usize, Rational)],
    next: usize,
    needed: usize,
    product: &Rational,
    parent: &mut Vec<usize>,
    total: &mut Rational,
) {
    if needed == 0 {
        *total += product;
        return;
    }
    if edges.len() - next < needed {
        return; // not enough edges left
    }
    let (i, j, ref w) = edges[next];
    // take the edge, if it joins two components
    let (ri, rj) = (find(parent, i), find(parent, j));
    if ri != rj {
        let saved = parent.clone();
        parent[ri] = rj;
        enumerate_forests(edges, next + 1, needed - 1, &(product * w), parent, total);
        *parent = saved;
    }
    // skip the edge
    enumerate_forests(edges, next + 1, needed, product, parent, total);
}

fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}
