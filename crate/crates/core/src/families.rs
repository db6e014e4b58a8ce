//! Constructors for the graph families used throughout the crate: paths,
//! cycles, complete graphs, trees, middle graphs, Cartesian products, the
//! two spanning subgraphs of `M(C_2n)`, and the caterpillars `T_k`.
//!
//! Vertex indexing is fixed so that labels, witnesses, and cached results are
//! reproducible:
//!
//! * path `P_m`: `x_i ↦ i - 1` (labels `x1..xm`)
//! * cycle `C_n`: `v_i ↦ i`
//! * middle graph: original vertex `i ↦ 2i`, inserted vertex `u_i ↦ 2i + 1`
//!   (extra vertices, when counts differ, follow in order)
//! * product: `(a, b) ↦ a * n(h) + b`
//! * `T_k`: `x_i ↦ i - 1`, `y_i ↦ k + i - 1`

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, GraphError, Permutation, Shape};

/// Standard base families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseFamily {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `parents[i]` is the neighbor of vertex `i + 1` towards vertex 0.
    Tree(Vec<usize>),
}

pub fn build_base(family: &BaseFamily) -> Result<Graph, GraphError> {
    match family {
        BaseFamily::Path(m) => path(*m),
        BaseFamily::Cycle(n) => cycle(*n),
        BaseFamily::Complete(n) => complete(*n),
        BaseFamily::Tree(parents) => tree(parents),
    }
}

pub fn path(m: usize) -> Result<Graph, GraphError> {
    if m < 1 {
        return Err(GraphError::SizeOutOfRange {
            family: "path",
            min: 1,
            got: m,
        });
    }
    let labels = (1..=m).map(|i| format!("x{i}")).collect();
    let edges: Vec<_> = (1..m).map(|i| (i - 1, i)).collect();
    let reflection = Permutation::from_images((0..m).rev().collect())?;
    Graph::new(labels, &edges, format!("path:{m}"), vec![reflection])
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::SizeOutOfRange {
            family: "cycle",
            min: 3,
            got: n,
        });
    }
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let rotation = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
    Ok(Graph::new(
        labels,
        &edges,
        format!("cycle:{n}"),
        vec![rotation, reflection],
    )?
    .with_shape(Shape::Cycle))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::SizeOutOfRange {
            family: "complete",
            min: 1,
            got: n,
        });
    }
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    let mut gens = Vec::new();
    if n >= 2 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        gens.push(Permutation::from_images(swap)?);
        gens.push(Permutation::from_images(
            (0..n).map(|i| (i + 1) % n).collect(),
        )?);
    }
    Graph::new(labels, &edges, format!("complete:{n}"), gens)
}

pub fn tree(parents: &[usize]) -> Result<Graph, GraphError> {
    let n = parents.len() + 1;
    let mut edges = Vec::with_capacity(parents.len());
    for (i, &p) in parents.iter().enumerate() {
        let child = i + 1;
        if p >= n {
            return Err(GraphError::InvalidTree(format!(
                "parent {p} of vertex {child} out of range"
            )));
        }
        if p == child {
            return Err(GraphError::InvalidTree(format!(
                "vertex {child} is its own parent"
            )));
        }
        edges.push((p, child));
    }
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    let list = parents
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",");
    Graph::new(labels, &edges, format!("tree:[{list}]"), Vec::new()).map_err(|e| match e {
        GraphError::Disconnected | GraphError::DuplicateEdge(..) => {
            GraphError::InvalidTree("parent array contains a cycle".into())
        }
        other => other,
    })
}

/// Edges of `g` in the order used to number the inserted vertices: the
/// cyclic order `v_i v_{i+1}` for cycles, lexicographic otherwise.
fn middle_edge_order(g: &Graph) -> Vec<(usize, usize)> {
    if g.shape == Shape::Cycle {
        let n = g.n();
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    } else {
        g.edges()
    }
}

/// Index layout of a middle graph: interleaves originals and inserted
/// vertices.
struct MiddleLayout {
    original: Vec<usize>,
    inserted: Vec<usize>,
}

impl MiddleLayout {
    fn new(n: usize, m: usize) -> Self {
        let mut original = Vec::with_capacity(n);
        let mut inserted = Vec::with_capacity(m);
        let mut next = 0;
        for i in 0..n.max(m) {
            if i < n {
                original.push(next);
                next += 1;
            }
            if i < m {
                inserted.push(next);
                next += 1;
            }
        }
        MiddleLayout { original, inserted }
    }
}

pub fn middle_graph(g: &Graph) -> Result<Graph, GraphError> {
    let edges = middle_edge_order(g);
    if edges.is_empty() {
        return Err(GraphError::NoEdges);
    }
    let n = g.n();
    let m = edges.len();
    let layout = MiddleLayout::new(n, m);
    let edge_index: BTreeMap<(usize, usize), usize> = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| ((a.min(b), a.max(b)), i))
        .collect();

    let mut labels = vec![String::new(); n + m];
    for v in 0..n {
        labels[layout.original[v]] = g.label(v).into();
    }
    let plain = (0..m).all(|i| g.vertex_by_label(&format!("u{i}")).is_none());
    for (i, &(a, b)) in edges.iter().enumerate() {
        labels[layout.inserted[i]] = if plain {
            format!("u{i}")
        } else {
            format!("[{}|{}]", g.label(a), g.label(b))
        };
    }

    let mut out_edges = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        out_edges.push((layout.original[a], layout.inserted[i]));
        out_edges.push((layout.inserted[i], layout.original[b]));
    }
    // inserted vertices of edges sharing an endpoint
    let mut incident = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    let mut joined = BTreeSet::new();
    for list in &incident {
        for (x, &e) in list.iter().enumerate() {
            for &f in &list[x + 1..] {
                joined.insert((e.min(f), e.max(f)));
            }
        }
    }
    for &(e, f) in &joined {
        out_edges.push((layout.inserted[e], layout.inserted[f]));
    }

    let mut gens = Vec::new();
    for sigma in g.sym_gens() {
        let mut images = vec![0; n + m];
        for v in 0..n {
            images[layout.original[v]] = layout.original[sigma.image(v)];
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            let (x, y) = (sigma.image(a), sigma.image(b));
            let j = edge_index[&(x.min(y), x.max(y))];
            images[layout.inserted[i]] = layout.inserted[j];
        }
        gens.push(Permutation::from_images(images)?);
    }
    Graph::new(labels, &out_edges, format!("middle({})", g.family()), gens)
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let (ng, nh) = (g.n(), h.n());
    let idx = |a: usize, b: usize| a * nh + b;
    let mut labels = Vec::with_capacity(ng * nh);
    for a in 0..ng {
        for b in 0..nh {
            labels.push(format!("({},{})", g.label(a), h.label(b)));
        }
    }
    let mut edges = Vec::new();
    for a in 0..ng {
        for (x, y) in h.edges() {
            edges.push((idx(a, x), idx(a, y)));
        }
    }
    for b in 0..nh {
        for (a, c) in g.edges() {
            edges.push((idx(a, b), idx(c, b)));
        }
    }
    let mut gens = Vec::new();
    for sigma in g.sym_gens() {
        let images = (0..ng * nh)
            .map(|v| idx(sigma.image(v / nh), v % nh))
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    for tau in h.sym_gens() {
        let images = (0..ng * nh)
            .map(|v| idx(v / nh, tau.image(v % nh)))
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    Graph::new(
        labels,
        &edges,
        format!("prod({},{})", g.family(), h.family()),
        gens,
    )
}

/// Which spanning subgraph of `M(C_2n)` to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MiddleVariant {
    MStar,
    MPrime,
}

/// Candidate readings of the first edge family removed when forming `M*`.
/// The printed token names a self-loop at `v_i`; the two edges at `v_i` on
/// the cycle side are the candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MStarReading {
    /// Remove `v_i u_i` for `1 ≤ i ≤ n-1`.
    VertexToNextInserted,
    /// Remove `u_{i-1} v_i` for `1 ≤ i ≤ n-1`.
    PreviousInsertedToVertex,
}

/// The reading pinned by `f(M*(C_4), v_0) = 10` (see `tests/mstar_reading.rs`).
pub const MSTAR_READING: MStarReading = MStarReading::VertexToNextInserted;

#[inline]
fn v(i: usize) -> usize {
    2 * i
}

#[inline]
fn u(i: usize) -> usize {
    2 * i + 1
}

/// Edges removed from `M(C_2n)` to obtain `M*(C_2n)` under `reading`.
pub fn mstar_removed_edges(n: usize, reading: MStarReading) -> Vec<(usize, usize)> {
    let mut removed = Vec::new();
    for i in 1..n {
        removed.push(match reading {
            MStarReading::VertexToNextInserted => (v(i), u(i)),
            MStarReading::PreviousInsertedToVertex => (u(i - 1), v(i)),
        });
    }
    removed.push((u(n - 1), u(n)));
    for j in n..=2 * n - 2 {
        removed.push((u(j), v(j + 1)));
    }
    removed
}

/// Edges removed from `M(C_2n)` to obtain `M'(C_2n)`.
pub fn mprime_removed_edges(n: usize) -> Vec<(usize, usize)> {
    let mut removed = Vec::new();
    for i in 0..=n.saturating_sub(2) {
        removed.push((u(i), v(i + 1)));
    }
    for j in n + 2..2 * n {
        removed.push((u(j), v(j)));
    }
    removed.push((u(n), v(n)));
    removed.push((u(n), v(n + 1)));
    removed.push((u(0), v(0)));
    removed
}

fn middle_cycle_minus(
    n: usize,
    removed: &[(usize, usize)],
    family: String,
) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::SizeOutOfRange {
            family: "half-cycle",
            min: 2,
            got: n,
        });
    }
    let full = middle_graph(&cycle(2 * n)?)?;
    let drop: Vec<(usize, usize)> = removed.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let kept: Vec<_> = full
        .edges()
        .into_iter()
        .filter(|e| !drop.contains(e))
        .collect();
    Graph::new(full.labels().to_vec(), &kept, family, Vec::new())
}

pub fn build_mstar_with_reading(n: usize, reading: MStarReading) -> Result<Graph, GraphError> {
    middle_cycle_minus(n, &mstar_removed_edges(n, reading), format!("mstar:{n}"))
}

pub fn build_mstar_mprime(n: usize, variant: MiddleVariant) -> Result<Graph, GraphError> {
    match variant {
        MiddleVariant::MStar => build_mstar_with_reading(n, MSTAR_READING),
        MiddleVariant::MPrime => {
            middle_cycle_minus(n, &mprime_removed_edges(n), format!("mprime:{n}"))
        }
    }
}

/// Caterpillar `T_k`: path `x_1..x_k` with a pendant `y_i` at each `x_i`,
/// `i < k`.
pub fn build_tk(k: usize) -> Result<Graph, GraphError> {
    if k < 2 {
        return Err(GraphError::SizeOutOfRange {
            family: "tk",
            min: 2,
            got: k,
        });
    }
    let mut labels: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    labels.extend((1..k).map(|i| format!("y{i}")));
    let mut edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    edges.extend((1..k).map(|i| (i - 1, k + i - 1)));
    Graph::new(labels, &edges, format!("tk:{k}"), Vec::new())
}

/// Index of vertex `(a, b)` in `cartesian_product(g, h)`.
#[inline]
pub fn product_index(a: usize, b: usize, h_order: usize) -> usize {
    a * h_order + b
}
