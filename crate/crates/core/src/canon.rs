//! Canonical labeling by individualization-refinement.
//!
//! The canonical form of a graph is the lexicographically smallest
//! upper-triangle adjacency bitstring over the leaves of the refinement
//! search tree. Two graphs receive the same code exactly when they are
//! isomorphic, and the code is stable across runs and platforms because
//! every choice below is made by vertex-count invariants, never by input
//! labels. Automorphisms discovered during the search prune sibling
//! branches through stabilizer orbits, which keeps highly symmetric
//! inputs (complete graphs, complete bipartite graphs) tractable.

use crate::graph::{BitIter, Graph};
use crate::graph6::{emit_graph6, parse_graph6};
use std::collections::BTreeMap;
use std::fmt;

/// Canonical graph6 code; equal for two graphs iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Decodes back to a graph (isomorphic to the original input).
    pub fn decode(&self) -> Graph {
        parse_graph6(&self.0).expect("canonical codes are valid graph6")
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.0)
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalCode {
    CanonicalCode(emit_graph6(&canonical_graph(g)))
}

pub fn canonical_graph(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

/// Returns the canonical relabeling as `perm[old] = new`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    if n <= 1 {
        return vec![0; n];
    }
    let mut s = Searcher {
        g,
        n,
        best_bits: Vec::new(),
        best_perm: Vec::new(),
        autos: Vec::new(),
        root_orbits: UnionFind::new(n),
    };
    let mut cells = initial_partition(g);
    refine(g, &mut cells);
    s.descend(cells, &mut Vec::new());
    s.best_perm
}

struct Searcher<'a> {
    g: &'a Graph,
    n: usize,
    best_bits: Vec<u64>,
    best_perm: Vec<usize>,
    autos: Vec<Vec<usize>>,
    root_orbits: UnionFind,
}

impl Searcher<'_> {
    fn descend(&mut self, cells: Vec<u64>, prefix: &mut Vec<usize>) {
        let target = cells.iter().position(|c| c.count_ones() > 1);
        let Some(ti) = target else {
            self.record_leaf(&cells);
            return;
        };
        // branch over the target cell, skipping vertices equivalent to an
        // already-explored sibling under automorphisms fixing the prefix
        let mut done: Vec<usize> = Vec::new();
        let members: Vec<usize> = BitIter(cells[ti]).collect();
        for v in members {
            if !done.is_empty() {
                let stab = self.stabilizer_orbits(prefix);
                if done.iter().any(|&u| stab.find(u) == stab.find(v)) {
                    continue;
                }
            }
            done.push(v);
            let mut child: Vec<u64> = Vec::with_capacity(cells.len() + 1);
            for (i, &c) in cells.iter().enumerate() {
                if i == ti {
                    child.push(1 << v);
                    let rest = c & !(1 << v);
                    if rest != 0 {
                        child.push(rest);
                    }
                } else {
                    child.push(c);
                }
            }
            refine(self.g, &mut child);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    fn record_leaf(&mut self, cells: &[u64]) {
        let mut perm = vec![0usize; self.n];
        for (new, cell) in cells.iter().enumerate() {
            debug_assert_eq!(cell.count_ones(), 1);
            perm[cell.trailing_zeros() as usize] = new;
        }
        let bits = packed_bits(self.g, &perm);
        if self.best_bits.is_empty() || bits < self.best_bits {
            self.best_bits = bits;
            self.best_perm = perm;
        } else if bits == self.best_bits {
            // equal leaves compose to an automorphism of the input
            let inv_best = invert(&self.best_perm);
            let phi: Vec<usize> = (0..self.n).map(|v| inv_best[perm[v]]).collect();
            let mut merges = false;
            for (v, &img) in phi.iter().enumerate() {
                if self.root_orbits.find(v) != self.root_orbits.find(img) {
                    self.root_orbits.union(v, img);
                    merges = true;
                }
            }
            if merges {
                self.autos.push(phi);
            }
        }
    }

    fn stabilizer_orbits(&self, prefix: &[usize]) -> UnionFind {
        let mut uf = UnionFind::new(self.n);
        for phi in &self.autos {
            if prefix.iter().all(|&p| phi[p] == p) {
                for (v, &img) in phi.iter().enumerate() {
                    uf.union(v, img);
                }
            }
        }
        uf
    }
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; perm.len()];
    for (v, &img) in perm.iter().enumerate() {
        inv[img] = v;
    }
    inv
}

/// Upper-triangle adjacency bits of the relabeled graph, packed MSB-first so
/// that `Vec<u64>` comparison is lexicographic bitstring comparison.
fn packed_bits(g: &Graph, perm: &[usize]) -> Vec<u64> {
    let n = g.vertex_count();
    let inv = invert(perm);
    let nbits = n * (n - 1) / 2;
    let mut out = vec![0u64; nbits.div_ceil(64)];
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(inv[u], inv[v]) {
                out[bit / 64] |= 1 << (63 - (bit % 64));
            }
            bit += 1;
        }
    }
    out
}

fn initial_partition(g: &Graph) -> Vec<u64> {
    let mut by_degree: BTreeMap<usize, u64> = BTreeMap::new();
    for v in g.vertices() {
        *by_degree.entry(g.degree(v)).or_insert(0) |= 1 << v;
    }
    by_degree.into_values().collect()
}

/// Equitable refinement: split cells by neighbor counts towards every cell
/// until stable. Subcells are ordered by ascending count, an invariant of
/// the partition rather than of the input labeling.
fn refine(g: &Graph, cells: &mut Vec<u64>) {
    loop {
        let mut changed = false;
        'outer: for si in 0..cells.len() {
            let splitter = cells[si];
            for ci in 0..cells.len() {
                let cell = cells[ci];
                if cell.count_ones() <= 1 {
                    continue;
                }
                let mut buckets: BTreeMap<u32, u64> = BTreeMap::new();
                for v in BitIter(cell) {
                    let cnt = (g.neighbors_mask(v) & splitter).count_ones();
                    *buckets.entry(cnt).or_insert(0) |= 1 << v;
                }
                if buckets.len() > 1 {
                    let mut replacement: Vec<u64> = buckets.into_values().collect();
                    cells.splice(ci..=ci, replacement.drain(..));
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    #[test]
    fn triangle_invariant_under_relabeling() {
        let k3 = Graph::complete(3);
        let relabeled = k3.permuted(&[2, 0, 1]);
        assert_eq!(canonical_form(&k3), canonical_form(&relabeled));
    }

    #[test]
    fn path_and_triangle_differ() {
        assert_ne!(
            canonical_form(&Graph::path(3)),
            canonical_form(&Graph::complete(3))
        );
    }

    #[test]
    fn hundred_relabelings_one_code() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = random_graph(10, 0.4, &mut rng);
        let code = canonical_form(&g);
        for _ in 0..100 {
            let p = random_perm(10, &mut rng);
            assert_eq!(canonical_form(&g.permuted(&p)), code);
        }
    }

    #[test]
    fn code_decodes_to_isomorphic_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = random_graph(8, 0.5, &mut rng);
            let c = canonical_form(&g);
            let h = c.decode();
            assert_eq!(h.vertex_count(), g.vertex_count());
            assert_eq!(h.edge_count(), g.edge_count());
            assert_eq!(h.degree_sequence(), g.degree_sequence());
            assert_eq!(canonical_form(&h), c);
        }
    }

    #[test]
    fn symmetric_graphs_complete_quickly() {
        // complete and complete bipartite graphs exercise the orbit pruning
        for n in 2..=10 {
            let g = Graph::complete(n);
            assert_eq!(canonical_form(&g).decode().edge_count(), n * (n - 1) / 2);
        }
        let g = Graph::complete_bipartite(4, 4);
        let p: Vec<usize> = vec![3, 5, 0, 7, 2, 6, 1, 4];
        assert_eq!(canonical_form(&g), canonical_form(&g.permuted(&p)));
    }

    #[test]
    fn distinguishes_cospectral_like_pairs() {
        // C6 vs two triangles: same degree sequence, different graphs
        let c6 = Graph::cycle(6);
        let two_k3 = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_ne!(canonical_form(&c6), canonical_form(&two_k3));
    }
}
