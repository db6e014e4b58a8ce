//! Closed forms: rooted tree numbers via maximum path partitions, cycles,
//! and middle graphs of even cycles.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: usize,
        got: usize,
    },
    #[error("t must be positive")]
    ZeroDemand,
    #[error("value does not fit in 64 bits")]
    Overflow,
}

/// Edge-disjoint directed paths covering a rooted tree, sizes nonincreasing.
/// Each path is listed from the end nearest the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPartition {
    pub sizes: Vec<usize>,
    pub paths: Vec<Vec<VertexId>>,
}

impl PathPartition {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }
}

/// Parent and children lists of `tree` rooted at `root` (children ascending).
fn rooted(tree: &Graph, root: usize) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = tree.n();
    let mut parent = vec![usize::MAX; n];
    let mut children = vec![Vec::new(); n];
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(a) = stack.pop() {
        for &b in tree.neighbors(a) {
            if parent[b] == usize::MAX {
                parent[b] = a;
                children[a].push(b);
                stack.push(b);
            }
        }
    }
    for c in &mut children {
        c.sort_unstable();
    }
    (parent, children)
}

/// Maximum path partition of `tree` rooted at `v`.
///
/// Greedy: peel the longest path hanging from the current root (ties to the
/// smaller vertex index), then recurse into what is left, each piece rooted
/// where it was attached.
pub fn max_path_partition(tree: &Graph, v: VertexId) -> Result<PathPartition, FormulaError> {
    if !tree.is_tree() {
        return Err(FormulaError::NotATree);
    }
    let root = v.index();
    if root >= tree.n() {
        return Err(FormulaError::VertexOutOfRange(root));
    }
    let (_, children) = rooted(tree, root);

    // height[a] = longest downward path from a
    let mut order = vec![root];
    let mut i = 0;
    while i < order.len() {
        order.extend_from_slice(&children[order[i]]);
        i += 1;
    }
    let mut height = vec![0usize; tree.n()];
    for &a in order.iter().rev() {
        height[a] = children[a]
            .iter()
            .map(|&c| height[c] + 1)
            .max()
            .unwrap_or(0);
    }
    let deepest = |a: usize| -> Option<usize> {
        // first child of maximal height
        children[a].iter().copied().rev().max_by_key(|&c| height[c])
    };

    let mut paths: Vec<Vec<VertexId>> = Vec::new();
    let mut roots: Vec<usize> = children[root].clone();
    if let Some(c) = deepest(root) {
        roots.retain(|&x| x != c);
        roots.insert(0, c);
    }
    for c in roots {
        peel(root, c, &children, &deepest, &mut paths);
    }
    paths.sort_by_key(|p| core::cmp::Reverse(p.len()));
    let sizes = paths.iter().map(|p| p.len() - 1).collect();
    Ok(PathPartition { sizes, paths })
}

fn peel(
    start: usize,
    first: usize,
    children: &[Vec<usize>],
    deepest: &dyn Fn(usize) -> Option<usize>,
    paths: &mut Vec<Vec<VertexId>>,
) {
    let mut path = vec![VertexId(start), VertexId(first)];
    let mut branches = Vec::new();
    let mut cur = first;
    while let Some(next) = deepest(cur) {
        branches.extend(
            children[cur]
                .iter()
                .filter(|&&c| c != next)
                .map(|&c| (cur, c)),
        );
        path.push(VertexId(next));
        cur = next;
    }
    paths.push(path);
    for (a, c) in branches {
        peel(a, c, children, deepest, paths);
    }
}

fn pow2(k: usize) -> Result<u64, FormulaError> {
    1u64.checked_shl(k as u32)
        .filter(|_| k < 64)
        .ok_or(FormulaError::Overflow)
}

/// `f_t(T, v) = t·2^{a_1} + 2^{a_2} + … + 2^{a_r} − r + 1` over the maximum
/// path partition; `t` for the one-vertex tree.
pub fn tree_formula(tree: &Graph, v: VertexId, t: u32) -> Result<u64, FormulaError> {
    if t == 0 {
        return Err(FormulaError::ZeroDemand);
    }
    let part = max_path_partition(tree, v)?;
    let Some((&a1, rest)) = part.sizes.split_first() else {
        return Ok(t as u64);
    };
    let mut total = (t as u64)
        .checked_mul(pow2(a1)?)
        .ok_or(FormulaError::Overflow)?;
    for &a in rest {
        total = total.checked_add(pow2(a)?).ok_or(FormulaError::Overflow)?;
    }
    Ok(total - part.sizes.len() as u64 + 1)
}

/// `f(C_n)`: `(2^{2k+2} − 1)/3` for `n = 4k+1`, `(2^{2k+3} + 1)/3` for
/// `n = 4k+3`, `2^m` for `n = 2m`.
pub fn cycle_formula(n: usize) -> Result<u64, FormulaError> {
    if n < 3 {
        return Err(FormulaError::TooSmall {
            what: "cycle length",
            min: 3,
            got: n,
        });
    }
    let k = n / 4;
    Ok(match n % 4 {
        1 => (pow2(2 * k + 2)? - 1) / 3,
        3 => (pow2(2 * k + 3)? + 1) / 3,
        _ => pow2(n / 2)?,
    })
}

/// `2^{n+1} + 2n − 2`, which is both `f(M(C_2n))` and `f(M*(C_2n), v_0)`.
pub fn middle_cycle_formula(n: usize, rooted_mstar: bool) -> Result<u64, FormulaError> {
    let _ = rooted_mstar;
    if n < 2 {
        return Err(FormulaError::TooSmall {
            what: "half-cycle length",
            min: 2,
            got: n,
        });
    }
    pow2(n + 1)?
        .checked_add(2 * n as u64 - 2)
        .ok_or(FormulaError::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, path, tree};

    fn star3() -> Graph {
        tree(&[0, 0, 0]).unwrap()
    }

    #[test]
    fn partitions() {
        let p5 = path(5).unwrap();
        let part = max_path_partition(&p5, VertexId(0)).unwrap();
        assert_eq!(part.sizes, [4]);
        assert_eq!(part.paths[0], (0..5).map(VertexId).collect::<Vec<_>>());
        assert_eq!(
            max_path_partition(&star3(), VertexId(0)).unwrap().sizes,
            [1, 1, 1]
        );
        // spider with legs 2 and 1: 0-1-2, 0-3
        let spider = tree(&[0, 1, 0]).unwrap();
        let part = max_path_partition(&spider, VertexId(0)).unwrap();
        assert_eq!(part.sizes, [2, 1]);
        assert_eq!(
            part.paths,
            [
                vec![VertexId(0), VertexId(1), VertexId(2)],
                vec![VertexId(0), VertexId(3)]
            ]
        );
        // rooted at a leaf of the star
        assert_eq!(
            max_path_partition(&star3(), VertexId(1)).unwrap().sizes,
            [2, 1]
        );
    }

    #[test]
    fn nested_branches() {
        // 0-1-2-3, 1-4-5, 2-6
        let t = tree(&[0, 1, 2, 1, 4, 2]).unwrap();
        let part = max_path_partition(&t, VertexId(0)).unwrap();
        assert_eq!(part.sizes, [3, 2, 1]);
        assert_eq!(part.sizes.iter().sum::<usize>(), t.edge_count());
    }

    #[test]
    fn tree_values() {
        assert_eq!(tree_formula(&path(4).unwrap(), VertexId(1), 1).unwrap(), 5);
        assert_eq!(tree_formula(&path(3).unwrap(), VertexId(0), 2).unwrap(), 8);
        assert_eq!(tree_formula(&star3(), VertexId(0), 1).unwrap(), 4);
        assert_eq!(tree_formula(&path(1).unwrap(), VertexId(0), 3).unwrap(), 3);
        assert_eq!(tree_formula(&path(5).unwrap(), VertexId(0), 4).unwrap(), 64);
        assert_eq!(
            tree_formula(&cycle(4).unwrap(), VertexId(0), 1),
            Err(FormulaError::NotATree)
        );
    }

    #[test]
    fn cycle_values() {
        let got: Vec<u64> = (3..=8).map(|n| cycle_formula(n).unwrap()).collect();
        assert_eq!(got, [3, 4, 5, 8, 11, 16]);
        assert!(cycle_formula(2).is_err());
        assert_eq!(cycle_formula(9).unwrap(), 21);
    }

    #[test]
    fn middle_values() {
        assert_eq!(middle_cycle_formula(2, false).unwrap(), 10);
        assert_eq!(middle_cycle_formula(3, true).unwrap(), 20);
        assert_eq!(middle_cycle_formula(4, false).unwrap(), 38);
        assert!(middle_cycle_formula(1, false).is_err());
    }
}
