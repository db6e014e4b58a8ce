//! Independent reference implementations used by the integration tests.
//! Nothing here calls the search code under test.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use pebble_core::families::tree;
use pebble_core::{solvable, DemandVector, Distribution, Graph, Property, VertexId};
use rand::rngs::StdRng;
use rand::Rng;

/// Plain breadth-first search over every reachable distribution.
pub fn bfs_solvable(g: &Graph, start: &[u32], demand: &[u32]) -> bool {
    let meets = |c: &[u32]| c.iter().zip(demand).all(|(a, b)| a >= b);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back(start.to_vec());
    while let Some(c) = queue.pop_front() {
        if meets(&c) {
            return true;
        }
        for a in 0..c.len() {
            if c[a] < 2 {
                continue;
            }
            for &b in g.neighbors(a) {
                let mut next = c.clone();
                next[a] -= 2;
                next[b] += 1;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    false
}

/// All weak compositions of `p` into `n` parts.
pub fn all_distributions(n: usize, p: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(0, p, &mut vec![0; n], &mut out);
    out
}

/// Smallest `p` such that every size-`p` distribution is solvable, by BFS.
pub fn brute_rooted(g: &Graph, v: usize, t: u32) -> u64 {
    let mut demand = vec![0; g.n()];
    demand[v] = t;
    let mut p = 0;
    loop {
        if all_distributions(g.n(), p)
            .iter()
            .all(|d| bfs_solvable(g, d, &demand))
        {
            return p as u64;
        }
        p += 1;
    }
}

/// Random connected graph on `n` vertices: a random tree plus extra edges.
pub fn random_connected(rng: &mut StdRng, n: usize) -> Graph {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.25) {
                edges.insert((a, b));
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    Graph::new(labels, &edges, format!("random:{n}"), Vec::new()).unwrap()
}

pub fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges().into_iter().collect()
}

/// Exhaustive isomorphism test (small graphs only).
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    isomorphism(g, h).is_some()
}

pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.n();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(i: usize, g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if i == g.n() {
            return true;
        }
        for cand in 0..h.n() {
            if used[cand] || g.degree(i) != h.degree(cand) {
                continue;
            }
            let ok = (0..i).all(|j| g.has_edge(i, j) == h.has_edge(cand, map[j]));
            if ok {
                map[i] = cand;
                used[cand] = true;
                if rec(i + 1, g, h, map, used) {
                    return true;
                }
                used[cand] = false;
            }
        }
        false
    }
    rec(0, g, h, &mut map, &mut used).then_some(map)
}

/// Subgraph induced on `vertices` (in the given order).
pub fn induced(g: &Graph, vertices: &[usize]) -> Graph {
    let mut edges = Vec::new();
    for (i, &a) in vertices.iter().enumerate() {
        for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
            if g.has_edge(a, b) {
                edges.push((i, j));
            }
        }
    }
    let labels = vertices.iter().map(|&v| g.label(v).to_string()).collect();
    Graph::new(labels, &edges, "induced", Vec::new()).unwrap()
}

/// AHU string of the tree rooted at `root`.
pub fn ahu(g: &Graph, root: usize) -> String {
    fn rec(g: &Graph, v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = g
            .neighbors(v)
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| rec(g, w, v))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    rec(g, root, usize::MAX)
}

/// One representative `(tree, root)` per isomorphism class of rooted trees
/// with `n` vertices.
pub fn rooted_trees(n: usize) -> Vec<(Graph, usize)> {
    // every rooted tree has a labelling with parents before children
    fn rec(parents: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if parents.len() + 1 == n {
            out.push(parents.clone());
            return;
        }
        let child = parents.len() + 1;
        for p in 0..child {
            parents.push(p);
            rec(parents, n, out);
            parents.pop();
        }
    }
    let mut arrays = Vec::new();
    rec(&mut Vec::new(), n, &mut arrays);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in arrays {
        let t = tree(&a).unwrap();
        if seen.insert(ahu(&t, 0)) {
            out.push((t, 0));
        }
    }
    out
}

pub fn random_tree(rng: &mut StdRng, n: usize) -> Graph {
    // random labelled tree via a random attachment order
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let mut parent = vec![0usize; n];
    for i in 1..n {
        parent[order[i]] = order[rng.gen_range(0..i)];
    }
    // re-express as a parent array over a BFS labelling from vertex 0
    let mut adj = vec![Vec::new(); n];
    for i in 1..n {
        adj[order[i]].push(parent[order[i]]);
        adj[parent[order[i]]].push(order[i]);
    }
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<_> = (0..n)
        .flat_map(|a| adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
        .collect();
    Graph::new(labels, &edges, "random-tree", Vec::new()).unwrap()
}

/// Every path partition of the tree rooted at `root`, as nonincreasing
/// size sequences. Each non-root vertex either continues its parent's
/// path through one child or ends it.
pub fn all_partition_sizes(g: &Graph, root: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in g.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    let children: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            order
                .iter()
                .copied()
                .filter(|&w| w != root && parent[w] == v)
                .collect()
        })
        .collect();
    // choice[v] = child continuing the path into v, or none
    let non_root: Vec<usize> = order[1..].to_vec();
    let mut out = Vec::new();
    let mut choice = vec![None; n];
    fn rec(
        k: usize,
        verts: &[usize],
        children: &[Vec<usize>],
        choice: &mut Vec<Option<usize>>,
        parent: &[usize],
        root: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == verts.len() {
            // a path starts at every edge (parent[w], w) not continued from above
            let mut sizes = Vec::new();
            for &w in verts {
                let p = parent[w];
                let continued = p != root && choice[p] == Some(w);
                if !continued {
                    let mut len = 1;
                    let mut cur = w;
                    while let Some(next) = choice[cur] {
                        len += 1;
                        cur = next;
                    }
                    sizes.push(len);
                }
            }
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            out.push(sizes);
            return;
        }
        let v = verts[k];
        choice[v] = None;
        rec(k + 1, verts, children, choice, parent, root, out);
        for &c in &children[v] {
            choice[v] = Some(c);
            rec(k + 1, verts, children, choice, parent, root, out);
        }
        choice[v] = None;
    }
    rec(
        0,
        &non_root,
        &children,
        &mut choice,
        &parent,
        root,
        &mut out,
    );
    out
}

/// One connected graph per isomorphism class, up to `max_n` vertices.
pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let mut classes: Vec<Graph> = Vec::new();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = (0..pairs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            let labels = (0..n).map(|i| format!("v{i}")).collect();
            // construction rejects disconnected graphs
            let Ok(g) = Graph::new(labels, &edges, format!("g{n}-{mask}"), Vec::new()) else {
                continue;
            };
            if !classes.iter().any(|h| isomorphic(&g, h)) {
                classes.push(g);
            }
        }
        out.extend(classes);
    }
    out
}

pub fn meets_hypothesis(counts: &[u32], f: u64, property: Property) -> bool {
    let p: u64 = counts.iter().map(|&c| c as u64).sum();
    let q = match property {
        Property::TwoPebbling => counts.iter().filter(|&&c| c > 0).count(),
        _ => counts.iter().filter(|&&c| c % 2 == 1).count(),
    } as u64;
    p + q > 2 * f
}

/// Checks every distribution up to `2f + 2` pebbles directly.
pub fn direct_holds(g: &Graph, f: u64, property: Property) -> bool {
    for p in 0..=2 * f as u32 + 2 {
        for c in all_distributions(g.n(), p) {
            if !meets_hypothesis(&c, f, property) {
                continue;
            }
            let d = Distribution::new(c);
            for v in 0..g.n() {
                let demand = DemandVector::single(g.n(), VertexId(v), 2).unwrap();
                if !solvable(g, &d, &demand).is_solvable() {
                    return false;
                }
            }
        }
    }
    true
}
