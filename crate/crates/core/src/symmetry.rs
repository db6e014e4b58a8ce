//! Explicitly materialized permutation groups and lexicographic canonical
//! forms of pebble distributions.
//!
//! The groups we meet are small (dihedral groups and their products), so the
//! whole group is closed out from the generators and canonicalization simply
//! scans every element. A cap guards against accidentally large groups: past
//! it the group degrades to the identity, which is always sound.

use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::graph::{Graph, Permutation};

pub const DEFAULT_GROUP_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    n: usize,
    /// Inverse image tables, `order * n` entries; element 0 is the identity.
    inverses: Vec<u32>,
    truncated: bool,
}

impl SymmetryGroup {
    pub fn trivial(n: usize) -> Self {
        SymmetryGroup {
            n,
            inverses: (0..n as u32).collect(),
            truncated: false,
        }
    }

    /// Group generated by the graph's symmetry generators, capped at
    /// [`DEFAULT_GROUP_CAP`] elements.
    pub fn of_graph(g: &Graph) -> Self {
        Self::generate(g.n(), g.sym_gens(), DEFAULT_GROUP_CAP)
    }

    pub fn generate(n: usize, gens: &[Permutation], cap: usize) -> Self {
        let identity = Permutation::identity(n);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut elements = alloc::vec![identity.clone()];
        seen.insert(identity);
        let mut i = 0;
        while i < elements.len() {
            for g in gens {
                let next = g.after(&elements[i]);
                if !seen.contains(&next) {
                    if elements.len() >= cap {
                        let mut t = Self::trivial(n);
                        t.truncated = true;
                        return t;
                    }
                    seen.insert(next.clone());
                    elements.push(next);
                }
            }
            i += 1;
        }
        Self::from_elements(n, &elements)
    }

    fn from_elements(n: usize, elements: &[Permutation]) -> Self {
        let mut inverses = alloc::vec![0u32; elements.len() * n];
        for (k, p) in elements.iter().enumerate() {
            for v in 0..n {
                inverses[k * n + p.image(v)] = v as u32;
            }
        }
        SymmetryGroup {
            n,
            inverses,
            truncated: false,
        }
    }

    /// True when closure hit the cap and symmetry was disabled.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn order(&self) -> usize {
        self.inverses.len().checked_div(self.n).unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    #[inline]
    fn inverse(&self, k: usize) -> &[u32] {
        &self.inverses[k * self.n..(k + 1) * self.n]
    }

    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        (0..self.order()).map(move |k| {
            let inv = self.inverse(k);
            let mut images = alloc::vec![0; self.n];
            for (w, &v) in inv.iter().enumerate() {
                images[v as usize] = w;
            }
            Permutation::from_images(images).expect("group element is a bijection")
        })
    }

    /// Subgroup of elements that map `vector` to itself.
    pub fn stabilizer_of<T: Eq>(&self, vector: &[T]) -> Self {
        let keep: Vec<usize> = (0..self.order())
            .filter(|&k| {
                let inv = self.inverse(k);
                (0..self.n).all(|w| vector[inv[w] as usize] == vector[w])
            })
            .collect();
        let mut inverses = Vec::with_capacity(keep.len() * self.n);
        for k in keep {
            inverses.extend_from_slice(self.inverse(k));
        }
        SymmetryGroup {
            n: self.n,
            inverses,
            truncated: self.truncated,
        }
    }

    pub fn stabilizer_of_vertex(&self, v: usize) -> Self {
        let mut marker = alloc::vec![false; self.n];
        marker[v] = true;
        self.stabilizer_of(&marker)
    }

    /// Smallest vertex of every orbit, ascending.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        let mut rep = alloc::vec![usize::MAX; self.n];
        for k in 0..self.order() {
            for (w, &v) in self.inverse(k).iter().enumerate() {
                rep[w] = rep[w].min(v as usize);
            }
        }
        let mut out: Vec<usize> = (0..self.n).filter(|&v| rep[v] == v).collect();
        out.dedup();
        out
    }

    /// Writes the lexicographically smallest image of `counts` into `out`.
    pub fn canonicalize_into<T: Copy + Ord>(&self, counts: &[T], out: &mut [T]) {
        out.copy_from_slice(counts);
        for k in 1..self.order() {
            let inv = self.inverse(k);
            let mut better = false;
            for w in 0..self.n {
                let x = counts[inv[w] as usize];
                if x != out[w] {
                    better = x < out[w];
                    break;
                }
            }
            if better {
                for w in 0..self.n {
                    out[w] = counts[inv[w] as usize];
                }
            }
        }
    }

    pub fn canonical<T: Copy + Ord>(&self, counts: &[T]) -> Vec<T> {
        let mut out = counts.to_vec();
        self.canonicalize_into(counts, &mut out);
        out
    }

    /// True when no group element produces a lexicographically smaller image.
    pub fn is_canonical<T: Copy + Ord>(&self, counts: &[T]) -> bool {
        (1..self.order()).all(|k| {
            let inv = self.inverse(k);
            for w in 0..self.n {
                let x = counts[inv[w] as usize];
                if x != counts[w] {
                    return x > counts[w];
                }
            }
            true
        })
    }
}
