//! Constraint systems and the solver's logic moves.
//!
//! A node of the branch tree carries a working graph, a stack of complex
//! linear constraint rows over the vertex coordinates, and a cached
//! orthonormal kernel basis. The moves inspect edge-difference functionals
//! restricted to the kernel:
//!
//! * vertex collision — two vertices equal in every kernel member, which
//!   contradicts injectivity;
//! * non-unit ratio — two edges whose difference vectors are locked at a
//!   ratio of non-unit modulus, contradicting two unit lengths;
//! * forced edge — an edge locked at unit ratio to a non-adjacent pair,
//!   so the pair's distance is one and the edge can be added;
//! * dependent triple — three edge differences satisfying a linear
//!   relation, which branches through [`heron_branch`].

use super::linalg::{self, CVec};
use crate::graph::Graph;
use num_complex::Complex64;
use std::collections::HashSet;

pub type Edge = (usize, usize);
pub type TripleKey = [Edge; 3];

/// One node of the solver's branch tree.
#[derive(Clone)]
pub struct ConstraintSystem {
    pub graph: Graph,
    pub rows: Vec<CVec>,
    pub branch: String,
    pub kernel: Vec<CVec>,
    /// dependent triples already branched on this path, by vertex pairs
    pub used_triples: HashSet<TripleKey>,
}

impl ConstraintSystem {
    pub fn new(
        graph: Graph,
        rows: Vec<CVec>,
        branch: String,
        used_triples: HashSet<TripleKey>,
        eps_rank: f64,
    ) -> Self {
        let kernel = linalg::kernel_basis(&rows, graph.vertex_count(), eps_rank);
        ConstraintSystem {
            graph,
            rows,
            branch,
            kernel,
            used_triples,
        }
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    /// Per-vertex coordinate functional over the kernel basis: entry `j` of
    /// `vertex_profile(v)` is the value of basis vector `j` at `v`.
    pub fn vertex_profile(&self, v: usize) -> CVec {
        self.kernel.iter().map(|k| k[v]).collect()
    }

    /// Difference functional `f(u) - f(v)` restricted to the kernel.
    pub fn pair_functional(&self, u: usize, v: usize) -> CVec {
        self.kernel.iter().map(|k| k[u] - k[v]).collect()
    }

    /// All edge-difference functionals, in lexicographic edge order.
    pub fn edge_functionals(&self) -> Vec<(Edge, CVec)> {
        self.graph
            .edges()
            .into_iter()
            .map(|(u, v)| ((u, v), self.pair_functional(u, v)))
            .collect()
    }

    /// Appends a row (given in vertex coordinates) and recomputes the kernel.
    pub fn with_row(&self, row: CVec, branch_bit: char, eps_rank: f64) -> Self {
        let mut rows = self.rows.clone();
        rows.push(row);
        let mut branch = self.branch.clone();
        branch.push(branch_bit);
        ConstraintSystem::new(
            self.graph,
            rows,
            branch,
            self.used_triples.clone(),
            eps_rank,
        )
    }
}

/// Builds one row per distinct 4-cycle: `f(v1) - f(v2) + f(v3) - f(v4) = 0`
/// for neighboring vertices of a rhombus. Cycles are deduplicated over their
/// eight traversals by fixing the smallest vertex first and orienting toward
/// its smaller neighbor.
pub fn rhombus_constraints(g: &Graph) -> Vec<CVec> {
    let n = g.vertex_count();
    let mut rows = Vec::new();
    // enumerate 4-cycles via diagonal pairs: v1 < v2 < v4 (cycle neighbors of
    // v1), v3 the opposite corner with v3 > v1
    for v1 in 0..n {
        for v3 in (v1 + 1)..n {
            let common = g.neighbors_mask(v1) & g.neighbors_mask(v3);
            let above = common & !((1u128 << (v1 + 1)) - 1) as u64;
            let corners: Vec<usize> = crate::graph::BitIter(above).collect();
            for (i, &v2) in corners.iter().enumerate() {
                for &v4 in corners.iter().skip(i + 1) {
                    let mut row = vec![Complex64::ZERO; n];
                    row[v1] += Complex64::ONE;
                    row[v2] -= Complex64::ONE;
                    row[v3] += Complex64::ONE;
                    row[v4] -= Complex64::ONE;
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Rhombus rows created by inserting edge `(u, v)`: one per 4-cycle of the
/// augmented graph through that edge.
pub fn rhombus_rows_for_new_edge(g_with_edge: &Graph, u: usize, v: usize) -> Vec<CVec> {
    let n = g_with_edge.vertex_count();
    let mut rows = Vec::new();
    // 4-cycles u - v - x - y - u with x in N(v), y in N(u), x-y an edge.
    // Within one cycle the roles of x and y are forced (x closes on v, y on
    // u), so every such cycle is produced exactly once; (x, y) and (y, x)
    // are distinct cycles when both chords exist.
    for x in g_with_edge.neighbors(v) {
        if x == u {
            continue;
        }
        for y in g_with_edge.neighbors(u) {
            if y == v || y == x || !g_with_edge.has_edge(x, y) {
                continue;
            }
            // rhombus u, v, x, y in cycle order: opposite corners (u, x), (v, y)
            let mut row = vec![Complex64::ZERO; n];
            row[u] += Complex64::ONE;
            row[v] -= Complex64::ONE;
            row[x] += Complex64::ONE;
            row[y] -= Complex64::ONE;
            rows.push(row);
        }
    }
    rows
}

/// First vertex pair forced to coincide across the kernel, if any.
pub fn find_vertex_collision(sys: &ConstraintSystem, eps: f64) -> Option<(usize, usize)> {
    let n = sys.graph.vertex_count();
    let profiles: Vec<CVec> = (0..n).map(|v| sys.vertex_profile(v)).collect();
    let scale = profiles
        .iter()
        .map(|p| linalg::norm(p))
        .fold(1.0f64, f64::max);
    for u in 0..n {
        for v in (u + 1)..n {
            let d: f64 = profiles[u]
                .iter()
                .zip(&profiles[v])
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if d <= eps * scale {
                return Some((u, v));
            }
        }
    }
    None
}

/// First pair of edges whose difference functionals sit at a ratio of
/// non-unit modulus, refuting the node.
pub fn find_nonunit_ratio(
    sys: &ConstraintSystem,
    eps_res: f64,
    eps_mod: f64,
) -> Option<(Edge, Edge, Complex64)> {
    let funcs = sys.edge_functionals();
    for i in 0..funcs.len() {
        for j in (i + 1)..funcs.len() {
            if let Some(omega) = linalg::proportional(&funcs[i].1, &funcs[j].1, eps_res) {
                if (omega.norm() - 1.0).abs() > eps_mod {
                    return Some((funcs[i].0, funcs[j].0, omega));
                }
            }
        }
    }
    None
}

/// First (edge, non-adjacent pair) locked at unit ratio. Returns the pair to
/// be added as an edge together with the rhombus rows the insertion creates.
pub fn find_forced_edge(
    sys: &ConstraintSystem,
    eps_res: f64,
    eps_mod: f64,
) -> Option<(Edge, Edge, Vec<CVec>)> {
    let n = sys.graph.vertex_count();
    let funcs = sys.edge_functionals();
    for (edge, r_e) in &funcs {
        for u in 0..n {
            for v in (u + 1)..n {
                if sys.graph.has_edge(u, v) {
                    continue;
                }
                let r_uv = sys.pair_functional(u, v);
                if let Some(omega) = linalg::proportional(r_e, &r_uv, eps_res) {
                    if (omega.norm() - 1.0).abs() <= eps_mod {
                        let mut g2 = sys.graph;
                        g2.add_edge(u, v);
                        let rows = rhombus_rows_for_new_edge(&g2, u, v);
                        return Some((*edge, (u, v), rows));
                    }
                }
            }
        }
    }
    None
}

/// Case split for a dependent triple: when `a x + b y + c z = 0` holds with
/// all of `x, y, z` of unit modulus, `(x, y)` satisfies one of at most two
/// derived linear constraints (the law-of-cosines phase of the `(a, b, c)`
/// triangle, as in the proof of Heron's formula).
#[derive(Clone, Debug)]
pub struct HeronBranch {
    pub coefficients: (Complex64, Complex64, Complex64),
    /// discriminant `d^2 = (2|a||b|)^2 - (|a|^2 + |b|^2 - |c|^2)^2`
    pub discriminant: f64,
    /// derived `(x, y)` coefficient pairs: two children for positive
    /// discriminant, one in the collinear case, none when the triple is
    /// impossible (discriminant below `-eps`)
    pub children: Vec<(Complex64, Complex64)>,
}

/// Evaluates the triple case split for coefficients `(a, b, c)`; callers arrange
/// `a != 0` and `b != 0` (zero coefficients degenerate to a pair relation).
pub fn heron_branch(a: Complex64, b: Complex64, c: Complex64, eps: f64) -> HeronBranch {
    let (na, nb, nc) = (a.norm_sqr(), b.norm_sqr(), c.norm_sqr());
    let h = na + nb - nc;
    let disc = 4.0 * na * nb - h * h;
    let coef_y = 2.0 * na * b;
    let children = if disc < -eps {
        Vec::new()
    } else if disc.abs() <= eps {
        vec![(Complex64::new(h, 0.0) * a, coef_y)]
    } else {
        let d = disc.sqrt();
        vec![
            (Complex64::new(h, d) * a, coef_y),
            (Complex64::new(h, -d) * a, coef_y),
        ]
    };
    HeronBranch {
        coefficients: (a, b, c),
        discriminant: disc,
        children,
    }
}

/// First unused triple of edges whose difference functionals have rank
/// exactly two, with the dependency coefficients normalized so the largest
/// modulus is one and the first coefficient is positive real.
pub fn find_dependent_triple(
    sys: &ConstraintSystem,
    eps: f64,
) -> Option<(TripleKey, (Complex64, Complex64, Complex64))> {
    let funcs = sys.edge_functionals();
    let m = funcs.len();
    // pairwise proportionality pre-pass: triples containing a dependent pair
    // degenerate to pair relations and are skipped
    let mut pair_dep = vec![false; m * m];
    for i in 0..m {
        for j in (i + 1)..m {
            if linalg::proportional(&funcs[i].1, &funcs[j].1, eps).is_some() {
                pair_dep[i * m + j] = true;
            }
        }
    }
    for i in 0..m {
        for j in (i + 1)..m {
            if pair_dep[i * m + j] {
                continue;
            }
            for k in (j + 1)..m {
                if pair_dep[i * m + k] || pair_dep[j * m + k] {
                    continue;
                }
                let key: TripleKey = [funcs[i].0, funcs[j].0, funcs[k].0];
                if sys.used_triples.contains(&key) {
                    continue;
                }
                let Some((x, y)) =
                    linalg::in_span_of_pair(&funcs[i].1, &funcs[j].1, &funcs[k].1, eps)
                else {
                    continue;
                };
                // a r_i + b r_j + c r_k = 0 with c = -1
                let coeffs = normalize_triple(x, y, -Complex64::ONE);
                // pairwise independence already guarantees nonzero entries;
                // keep a numerical guard
                let min_mod = coeffs.0.norm().min(coeffs.1.norm()).min(coeffs.2.norm());
                if min_mod <= eps {
                    continue;
                }
                return Some((key, coeffs));
            }
        }
    }
    None
}

/// Scales so the maximum modulus is one and rotates so the first coefficient
/// is positive real.
fn normalize_triple(a: Complex64, b: Complex64, c: Complex64) -> (Complex64, Complex64, Complex64) {
    let max_mod = a.norm().max(b.norm()).max(c.norm()).max(1e-300);
    let first = if a.norm() > 1e-300 {
        a
    } else if b.norm() > 1e-300 {
        b
    } else {
        c
    };
    let phase = first / first.norm();
    let s = phase.conj() / max_mod;
    (a * s, b * s, c * s)
}

/// Builds the vertex-space row for a derived constraint
/// `cx (f(u1) - f(v1)) + cy (f(u2) - f(v2)) = 0`.
pub fn pair_constraint_row(n: usize, e1: Edge, e2: Edge, cx: Complex64, cy: Complex64) -> CVec {
    let mut row = vec![Complex64::ZERO; n];
    row[e1.0] += cx;
    row[e1.1] -= cx;
    row[e2.0] += cy;
    row[e2.1] -= cy;
    row
}
