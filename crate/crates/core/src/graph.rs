//! Immutable simple graphs with deterministic labels and optional
//! automorphism generators.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Index of a vertex inside its owning [`Graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A vertex permutation; `image(v)` is where `v` is sent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds a permutation from its image table, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GraphError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GraphError::InvalidPermutation);
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    #[inline]
    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` after `first`: v ↦ self(first(v)).
    pub fn after(&self, first: &Permutation) -> Permutation {
        Permutation(first.0.iter().map(|&v| self.0[v]).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{family} size must be ≥ {min}, got {got}")]
    SizeOutOfRange {
        family: &'static str,
        min: usize,
        got: usize,
    },
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("generator is not a permutation of the vertex set")]
    InvalidPermutation,
    #[error("generator does not preserve the edge set")]
    NotAnAutomorphism,
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("graph must have at least one edge")]
    NoEdges,
    #[error("graph is not a tree")]
    NotATree,
    #[error("edge list line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Connected simple graph. Adjacency lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Vec<String>,
    family: String,
    sym_gens: Vec<Permutation>,
    pub(crate) shape: Shape,
}

/// Structural hint used by constructors that depend on how the input was
/// built (the middle graph of a cycle follows the cycle's edge order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Shape {
    Cycle,
    Other,
}

impl Graph {
    /// Validates and builds a graph. Edges may be given in any order and
    /// orientation; loops, duplicates, disconnection, and generators that do
    /// not preserve edges are rejected.
    pub fn new(
        labels: Vec<String>,
        edges: &[(usize, usize)],
        family: impl Into<String>,
        sym_gens: Vec<Permutation>,
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|p| p[0] == p[1]) {
                let (a, b) = if v < w[0] { (v, w[0]) } else { (w[0], v) };
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        let g = Graph {
            adjacency,
            labels,
            family: family.into(),
            sym_gens: Vec::new(),
            shape: Shape::Other,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        g.with_sym_gens(sym_gens)
    }

    /// Replaces the symmetry generators after checking each one.
    pub fn with_sym_gens(mut self, gens: Vec<Permutation>) -> Result<Self, GraphError> {
        for p in &gens {
            if p.len() != self.n() {
                return Err(GraphError::InvalidPermutation);
            }
            if !self.is_automorphism(p) {
                return Err(GraphError::NotAnAutomorphism);
            }
        }
        self.sym_gens = gens.into_iter().filter(|p| !p.is_identity()).collect();
        Ok(self)
    }

    /// Drops all symmetry generators.
    pub fn without_symmetry(mut self) -> Self {
        self.sym_gens.clear();
        self
    }

    pub fn with_family(mut self, family: impl Into<String>) -> Self {
        self.family = family.into();
        self
    }

    pub(crate) fn with_shape(mut self, shape: Shape) -> Self {
        self.shape = shape;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n() && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, list) in self.adjacency.iter().enumerate() {
            for &b in list {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label).map(VertexId)
    }

    /// Construction descriptor, e.g. `middle(cycle:4)`.
    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn sym_gens(&self) -> &[Permutation] {
        &self.sym_gens
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        self.adjacency
            .iter()
            .enumerate()
            .all(|(a, list)| list.iter().all(|&b| self.has_edge(p.image(a), p.image(b))))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n()
    }

    /// Breadth-first distances from `source`.
    pub fn distances_from(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distances(&self) -> Distances {
        let n = self.n();
        let mut table = Vec::with_capacity(n * n);
        for v in 0..n {
            table.extend(self.distances_from(v));
        }
        Distances { n, table }
    }

    /// Parses the edge-list text format: a header line `n m` followed by
    /// `m` lines `u w` with 0-based indices. Blank lines are skipped.
    pub fn from_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines.by_ref().take(m) {
            edges.push(parse_pair(line, l)?);
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: hline,
                msg: format!("header promises {m} edges, found {}", edges.len()),
            });
        }
        if let Some((line, _)) = lines.next() {
            return Err(GraphError::Parse {
                line,
                msg: "trailing content after edge list".into(),
            });
        }
        let labels = (0..n).map(|i| format!("v{i}")).collect();
        Graph::new(labels, &edges, format!("edges:{n}:{m}"), Vec::new())
    }

    /// Serializes in the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n(), edges.len());
        for (a, b) in edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize), GraphError> {
    let mut it = s.split_whitespace();
    let mut next = || -> Result<usize, GraphError> {
        it.next()
            .ok_or_else(|| GraphError::Parse {
                line,
                msg: "expected two integers".into(),
            })?
            .parse::<usize>()
            .map_err(|e| GraphError::Parse {
                line,
                msg: format!("{e}"),
            })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(GraphError::Parse {
            line,
            msg: "expected exactly two integers".into(),
        });
    }
    Ok((a, b))
}

/// All-pairs shortest-path table.
#[derive(Clone, Debug)]
pub struct Distances {
    n: usize,
    table: Vec<u32>,
}

impl Distances {
    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.table[a * self.n + b]
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.n..(a + 1) * self.n]
    }

    pub fn eccentricity(&self, v: usize) -> u32 {
        self.row(v).iter().copied().max().unwrap_or(0)
    }

    pub fn diameter(&self) -> u32 {
        (0..self.n).map(|v| self.eccentricity(v)).max().unwrap_or(0)
    }
}
