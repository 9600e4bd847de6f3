//! Subgraph embedding search (not necessarily induced).
//!
//! A lazy backtracker over pattern vertices in descending-degree order with
//! bitmask candidate pruning. Patterns here are small (forbidden subgraphs
//! have at most 9 vertices, catalog witnesses at most 8), hosts stay under
//! a few dozen vertices, so a tuned backtracker beats general machinery.

use crate::graph::{Anchor, Graph};

/// Streams every injection `phi: V(pattern) -> V(host)` mapping pattern
/// edges onto host edges. Extra host edges are permitted. When an anchor is
/// given, the anchored pattern vertices must map onto the anchored host
/// vertices as a set.
pub fn subgraph_embeddings<'a>(
    host: &'a Graph,
    pattern: &'a Graph,
    anchor: Option<&Anchor>,
) -> Embeddings<'a> {
    if let Some(a) = anchor {
        let distinct_p = a
            .pattern_vertices
            .iter()
            .collect::<std::collections::HashSet<_>>();
        let distinct_h = a
            .host_vertices
            .iter()
            .collect::<std::collections::HashSet<_>>();
        assert_eq!(
            distinct_p.len(),
            a.pattern_vertices.len(),
            "anchor pattern side repeats"
        );
        assert_eq!(
            distinct_h.len(),
            a.host_vertices.len(),
            "anchor host side repeats"
        );
        // equal-length sides: mapping into the host set is onto it
        let host_mask = a.host_vertices.iter().fold(0u64, |m, &v| m | 1 << v);
        return subgraph_embeddings_into(host, pattern, &a.pattern_vertices, host_mask);
    }
    Embeddings::new(host, pattern, &[])
}

/// Embeddings where each listed pattern vertex must map into `host_mask`
/// (not necessarily onto). The equal-length anchored form reduces to this.
pub(crate) fn subgraph_embeddings_into<'a>(
    host: &'a Graph,
    pattern: &'a Graph,
    pattern_vertices: &[usize],
    host_mask: u64,
) -> Embeddings<'a> {
    let restricted: Vec<(usize, u64)> = pattern_vertices.iter().map(|&p| (p, host_mask)).collect();
    Embeddings::new(host, pattern, &restricted)
}

/// True iff some family member embeds into `host` as a subgraph.
pub fn contains_subgraph(host: &Graph, family: &[Graph]) -> bool {
    family.iter().any(|pattern| {
        pattern.vertex_count() <= host.vertex_count()
            && pattern.edge_count() <= host.edge_count()
            && subgraph_embeddings(host, pattern, None).next().is_some()
    })
}

pub struct Embeddings<'a> {
    host: &'a Graph,
    /// pattern vertices in assignment order: anchored first, then by
    /// descending degree, ties by id
    order: Vec<usize>,
    /// per order position: pattern neighbors already placed (positions)
    placed_neighbors: Vec<Vec<usize>>,
    /// per order position: host mask passing degree and anchor constraints
    static_mask: Vec<u64>,
    stack: Vec<u64>,
    assign: Vec<usize>,
    used: u64,
    exhausted: bool,
}

impl<'a> Embeddings<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph, restricted: &[(usize, u64)]) -> Self {
        let pn = pattern.vertex_count();
        let hn = host.vertex_count();
        if pn > hn {
            return Self::empty(host, pattern);
        }
        let restricted_set: u64 = restricted.iter().fold(0u64, |m, &(v, _)| m | 1 << v);

        // restricted vertices first (their candidate sets are smallest),
        // then by descending degree
        let mut order: Vec<usize> = (0..pn).collect();
        order.sort_by_key(|&v| {
            (
                restricted_set & (1 << v) == 0,
                std::cmp::Reverse(pattern.degree(v)),
                v,
            )
        });

        let host_full: u64 = if hn == 64 { u64::MAX } else { (1u64 << hn) - 1 };
        let mut static_mask = Vec::with_capacity(pn);
        for &p in &order {
            let mut m = 0u64;
            for h in 0..hn {
                if host.degree(h) >= pattern.degree(p) {
                    m |= 1 << h;
                }
            }
            for &(v, vm) in restricted {
                if v == p {
                    m &= vm;
                }
            }
            static_mask.push(m & host_full);
        }

        let mut pos_of = vec![usize::MAX; pn];
        for (i, &p) in order.iter().enumerate() {
            pos_of[p] = i;
        }
        let mut placed_neighbors = vec![Vec::new(); pn];
        for (i, &p) in order.iter().enumerate() {
            for q in pattern.neighbors(p) {
                if pos_of[q] < i {
                    placed_neighbors[i].push(pos_of[q]);
                }
            }
        }

        let mut e = Embeddings {
            host,
            order,
            placed_neighbors,
            static_mask,
            stack: Vec::with_capacity(pn),
            assign: vec![0; pn],
            used: 0,
            exhausted: false,
        };
        if pn > 0 {
            let first = e.candidates(0);
            e.stack.push(first);
        }
        e
    }

    fn empty(host: &'a Graph, _pattern: &'a Graph) -> Self {
        Embeddings {
            host,
            order: Vec::new(),
            placed_neighbors: Vec::new(),
            static_mask: Vec::new(),
            stack: Vec::new(),
            assign: Vec::new(),
            used: 0,
            exhausted: true,
        }
    }

    fn candidates(&self, depth: usize) -> u64 {
        let mut m = self.static_mask[depth] & !self.used;
        for &qpos in &self.placed_neighbors[depth] {
            m &= self.host.neighbors_mask(self.assign[qpos]);
        }
        m
    }
}

impl Iterator for Embeddings<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.exhausted {
            return None;
        }
        let pn = self.order.len();
        if pn == 0 {
            // the empty pattern embeds exactly once
            self.exhausted = true;
            return Some(Vec::new());
        }
        loop {
            let depth = self.stack.len() - 1;
            let m = self.stack[depth];
            if m == 0 {
                if depth == 0 {
                    self.exhausted = true;
                    return None;
                }
                self.stack.pop();
                self.used &= !(1 << self.assign[depth - 1]);
                continue;
            }
            let h = m.trailing_zeros() as usize;
            self.stack[depth] &= m - 1; // clear lowest bit
            self.assign[depth] = h;
            if depth + 1 == pn {
                let mut phi = vec![0usize; pn];
                for (i, &p) in self.order.iter().enumerate() {
                    phi[p] = self.assign[i];
                }
                return Some(phi);
            }
            self.used |= 1 << h;
            let next = self.candidates(depth + 1);
            self.stack.push(next);
        }
    }
}
