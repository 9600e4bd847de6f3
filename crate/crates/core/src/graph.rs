//! Compact simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` bitmask per vertex, which keeps
//! neighborhood intersections, degree counts and subset tests down to a
//! couple of machine instructions. Everything downstream (enumeration,
//! subgraph search, the embeddability solver) works on this type.

use std::fmt;

/// Hard capacity of the representation.
pub const MAX_VERTICES: usize = 64;

/// A simple undirected graph with vertices `0..n`, no loops.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

impl Graph {
    /// Edgeless graph on `n` vertices. Panics if `n > 64`.
    pub fn new(n: usize) -> Self {
        assert!(
            n <= MAX_VERTICES,
            "graph capacity is {MAX_VERTICES} vertices"
        );
        Graph {
            n,
            adj: [0; MAX_VERTICES],
        }
    }

    /// Builds a graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Complete graph.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..(a + b) {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    /// Path on `n` vertices (`n - 1` edges).
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n.saturating_sub(1) {
            g.add_edge(u, u + 1);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n]
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n);
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u] & (1 << v) != 0
    }

    /// Neighborhood of `v` as a bitmask.
    pub fn neighbors_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> BitIter {
        BitIter(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Minimum degree; 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Mask of all vertices whose degree equals the minimum degree.
    pub fn min_degree_vertices(&self) -> u64 {
        if self.n == 0 {
            return 0;
        }
        let d = self.min_degree();
        let mut mask = 0u64;
        for v in 0..self.n {
            if self.degree(v) == d {
                mask |= 1 << v;
            }
        }
        mask
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// All edges as ordered pairs `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in BitIter(self.adj[u]) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// New graph with an extra vertex adjacent to the vertices in `neighborhood`.
    pub fn with_new_vertex(&self, neighborhood: u64) -> Graph {
        assert!(self.n < MAX_VERTICES);
        assert!(
            neighborhood >> self.n == 0,
            "neighborhood outside vertex range"
        );
        let mut g = *self;
        let w = g.n;
        g.n += 1;
        g.adj[w] = neighborhood;
        let mut rest = neighborhood;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            g.adj[v] |= 1 << w;
            rest &= rest - 1;
        }
        g
    }

    /// Induced subgraph on the vertices of `mask`, relabeled in ascending order.
    pub fn induced(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = BitIter(mask).collect();
        let mut g = Graph::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Deletes vertex `v` and relabels the remainder in ascending order.
    pub fn delete_vertex(&self, v: usize) -> Graph {
        let mask = ((1u128 << self.n) - 1) as u64 & !(1 << v);
        self.induced(mask)
    }

    /// Applies a permutation: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    g.add_edge(perm[u], perm[v]);
                }
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            let mut rest = frontier;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                next |= self.adj[v];
                rest &= rest - 1;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize >= self.n
    }

    /// Degree sequence in descending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Iterator over the set bits of a `u64`.
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// A partial-map constraint for subgraph search: the listed pattern vertices
/// must map onto the listed host vertices as a set.
#[derive(Clone, Debug)]
pub struct Anchor {
    pub pattern_vertices: Vec<usize>,
    pub host_vertices: Vec<usize>,
}

impl Anchor {
    pub fn new(pattern_vertices: Vec<usize>, host_vertices: Vec<usize>) -> Self {
        assert_eq!(pattern_vertices.len(), host_vertices.len());
        Anchor {
            pattern_vertices,
            host_vertices,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_count_is_half_degree_sum() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        let degsum: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(g.edge_count() * 2, degsum);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn edges_are_lexicographic() {
        let g = Graph::from_edges(4, &[(2, 3), (0, 3), (0, 1)]);
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (2, 3)]);
    }

    #[test]
    fn with_new_vertex_updates_both_sides() {
        let g = Graph::complete(3).with_new_vertex(0b011);
        assert_eq!(g.vertex_count(), 4);
        assert!(g.has_edge(3, 0) && g.has_edge(3, 1) && !g.has_edge(3, 2));
        assert_eq!(g.degree(0), 3);
    }

    #[test]
    fn delete_vertex_relabels() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let h = g.delete_vertex(1);
        assert_eq!(h.vertex_count(), 3);
        // remaining vertices 0,2,3 -> 0,1,2; only edge 2-3 survives as 1-2
        assert_eq!(h.edges(), vec![(1, 2)]);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::cycle(5).is_connected());
        let mut g = Graph::new(4);
        g.add_edge(0, 1);
        g.add_edge(2, 3);
        assert!(!g.is_connected());
        assert!(Graph::new(1).is_connected());
        assert!(Graph::new(0).is_connected());
    }

    #[test]
    fn min_degree_vertices_mask() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.min_degree(), 1);
        assert_eq!(g.min_degree_vertices(), 0b1001);
    }

    #[test]
    fn capacity_64_roundtrip() {
        let mut g = Graph::new(64);
        g.add_edge(0, 63);
        g.add_edge(62, 63);
        assert_eq!(g.degree(63), 2);
        assert_eq!(g.edges(), vec![(0, 63), (62, 63)]);
    }
}
