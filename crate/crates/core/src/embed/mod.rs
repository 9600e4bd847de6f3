//! Unit-distance embeddability solver.
//!
//! Identifying the plane with the complex numbers, the solver maintains a
//! binary tree of constraint systems over vertex coordinates. The root
//! holds one linear row per 4-cycle of the input (a rhombus forces equal
//! opposite-corner sums). Each node is then attacked in a fixed order:
//! refute by vertex collision, refute by a non-unit edge ratio, grow the
//! graph by a forced edge, or split on a dependent edge triple through the
//! unit-modulus case analysis of [`heron_branch`]. Nodes where no move applies become leaves, and a
//! randomized completion pins the remaining degrees of freedom down to a
//! similarity class, which either verifies as an embedding or is retried.
//!
//! Outcomes are numerically certified at the configured tolerances rather
//! than formally proved; rank and ratio decisions compare against
//! `eps_rank`/`eps_res`-scaled pivots. All failure modes fold into
//! `Unknown` — in particular every input of girth at least five, where no
//! move ever applies and the completion has nothing to anchor.

pub mod linalg;
pub mod moves;

use crate::graph::Graph;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;

pub use moves::{
    find_dependent_triple, find_forced_edge, find_nonunit_ratio, find_vertex_collision,
    heron_branch, rhombus_constraints, ConstraintSystem, HeronBranch,
};

pub use linalg::kernel_basis;

/// Solver tolerances and budgets.
#[derive(Clone, Debug)]
pub struct EmbedConfig {
    /// relative rank tolerance for kernel computations
    pub eps_rank: f64,
    /// unit-modulus tolerance for edge ratios
    pub eps_mod: f64,
    /// residual tolerance for proportionality and verification
    pub eps_res: f64,
    /// randomized completion attempts per leaf
    pub max_retries: usize,
    /// branch-tree node cap
    pub max_nodes: usize,
    pub rng_seed: u64,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        EmbedConfig {
            eps_rank: 1e-9,
            eps_mod: 1e-9,
            eps_res: 1e-9,
            max_retries: 100,
            max_nodes: 10_000,
            rng_seed: 1,
        }
    }
}

impl EmbedConfig {
    pub fn with_seed(seed: u64) -> Self {
        EmbedConfig {
            rng_seed: seed,
            ..Default::default()
        }
    }

    /// Stricter tolerances for re-checking refutations.
    pub fn paranoid(&self) -> Self {
        EmbedConfig {
            eps_rank: 1e-12,
            eps_mod: 1e-12,
            eps_res: 1e-12,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceEvent {
    pub branch: String,
    #[serde(flatten)]
    pub step: MoveStep,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum MoveStep {
    RhombusSystem {
        rows: usize,
    },
    VertexCollision {
        v1: usize,
        v2: usize,
    },
    NonUnitRatio {
        edge1: [usize; 2],
        edge2: [usize; 2],
        modulus: f64,
    },
    ForcedEdge {
        source: [usize; 2],
        added: [usize; 2],
        new_rows: usize,
    },
    TripleSplit {
        edges: [[usize; 2]; 3],
        coeffs: [[f64; 2]; 3],
        discriminant: f64,
    },
    TripleCollinear {
        edges: [[usize; 2]; 3],
        coeffs: [[f64; 2]; 3],
    },
    TripleImpossible {
        edges: [[usize; 2]; 3],
        coeffs: [[f64; 2]; 3],
        discriminant: f64,
    },
    Leaf {
        kernel_dim: usize,
    },
    BudgetExhausted,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum UnknownReason {
    BranchBudget,
    StuckKernel,
    RetriesExhausted,
}

impl std::fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UnknownReason::BranchBudget => write!(f, "branch budget"),
            UnknownReason::StuckKernel => write!(f, "stuck kernel"),
            UnknownReason::RetriesExhausted => write!(f, "retries exhausted"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SolverOutcome {
    Embedded {
        coordinates: Vec<Complex64>,
        branch: String,
        seed: u64,
    },
    Refuted {
        trace: Vec<TraceEvent>,
    },
    Unknown {
        reason: UnknownReason,
    },
}

impl SolverOutcome {
    pub fn is_embedded(&self) -> bool {
        matches!(self, SolverOutcome::Embedded { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, SolverOutcome::Refuted { .. })
    }

    pub fn coordinates(&self) -> Option<&[Complex64]> {
        match self {
            SolverOutcome::Embedded { coordinates, .. } => Some(coordinates),
            _ => None,
        }
    }
}

/// Result of exhausting the move tree from one root.
pub struct Saturation {
    /// non-refuted leaves in discovery order
    pub leaves: Vec<ConstraintSystem>,
    /// true when every branch was refuted
    pub refuted: bool,
    pub trace: Vec<TraceEvent>,
    pub nodes: usize,
    pub budget_exhausted: bool,
}

/// Depth-first move application: collision and ratio refutations first,
/// then forced edges, then triple splits, each splitting node required to
/// make progress (cut the kernel or add an edge) before recursing.
pub fn saturate(root: ConstraintSystem, config: &EmbedConfig) -> Saturation {
    let mut state = Explorer {
        config,
        leaves: Vec::new(),
        trace: Vec::new(),
        nodes: 0,
        budget_exhausted: false,
    };
    let refuted = state.explore(root, 0);
    Saturation {
        leaves: state.leaves,
        refuted: refuted && !state.budget_exhausted,
        trace: state.trace,
        nodes: state.nodes,
        budget_exhausted: state.budget_exhausted,
    }
}

struct Explorer<'a> {
    config: &'a EmbedConfig,
    leaves: Vec<ConstraintSystem>,
    trace: Vec<TraceEvent>,
    nodes: usize,
    budget_exhausted: bool,
}

const MAX_DEPTH: usize = 4096;

fn cpair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn epair(e: (usize, usize)) -> [usize; 2] {
    [e.0, e.1]
}

impl Explorer<'_> {
    /// Returns true iff the subtree under `sys` is entirely refuted.
    fn explore(&mut self, mut sys: ConstraintSystem, depth: usize) -> bool {
        if self.nodes >= self.config.max_nodes || depth > MAX_DEPTH {
            if !self.budget_exhausted {
                self.budget_exhausted = true;
                self.trace.push(TraceEvent {
                    branch: sys.branch.clone(),
                    step: MoveStep::BudgetExhausted,
                });
            }
            return false;
        }
        self.nodes += 1;
        let eps = self.config.eps_res;

        if let Some((v1, v2)) = find_vertex_collision(&sys, eps) {
            self.trace.push(TraceEvent {
                branch: sys.branch.clone(),
                step: MoveStep::VertexCollision { v1, v2 },
            });
            return true;
        }
        if let Some((e1, e2, omega)) = find_nonunit_ratio(&sys, eps, self.config.eps_mod) {
            self.trace.push(TraceEvent {
                branch: sys.branch.clone(),
                step: MoveStep::NonUnitRatio {
                    edge1: epair(e1),
                    edge2: epair(e2),
                    modulus: omega.norm(),
                },
            });
            return true;
        }
        if let Some((source, added, new_rows)) = find_forced_edge(&sys, eps, self.config.eps_mod) {
            let mut graph = sys.graph;
            graph.add_edge(added.0, added.1);
            let mut rows = sys.rows.clone();
            let added_count = new_rows.len();
            rows.extend(new_rows);
            let mut branch = sys.branch.clone();
            branch.push('0');
            let child = ConstraintSystem::new(
                graph,
                rows,
                branch,
                sys.used_triples.clone(),
                self.config.eps_rank,
            );
            self.trace.push(TraceEvent {
                branch: sys.branch.clone(),
                step: MoveStep::ForcedEdge {
                    source: epair(source),
                    added: epair(added),
                    new_rows: added_count,
                },
            });
            return self.explore(child, depth + 1);
        }

        // triple splits; skip triples whose derived rows are both already
        // implied, so every accepted application makes progress
        while let Some((key, (a, b, c))) = find_dependent_triple(&sys, self.config.eps_rank) {
            sys.used_triples.insert(key);
            let hb = heron_branch(a, b, c, self.config.eps_rank);
            let edges = [epair(key[0]), epair(key[1]), epair(key[2])];
            let coeffs = [cpair(a), cpair(b), cpair(c)];
            if hb.children.is_empty() {
                self.trace.push(TraceEvent {
                    branch: sys.branch.clone(),
                    step: MoveStep::TripleImpossible {
                        edges,
                        coeffs,
                        discriminant: hb.discriminant,
                    },
                });
                return true;
            }
            let r1 = sys.pair_functional(key[0].0, key[0].1);
            let r2 = sys.pair_functional(key[1].0, key[1].1);
            let cuts: Vec<bool> = hb
                .children
                .iter()
                .map(|&(cx, cy)| {
                    let combo: Vec<Complex64> =
                        r1.iter().zip(&r2).map(|(x, y)| cx * x + cy * y).collect();
                    let scale = cx.norm() * linalg::norm(&r1) + cy.norm() * linalg::norm(&r2);
                    linalg::norm(&combo) > self.config.eps_rank * scale.max(1e-300)
                })
                .collect();
            if !cuts.iter().any(|&x| x) {
                continue;
            }
            let n = sys.graph.vertex_count();
            if hb.children.len() == 1 {
                let (cx, cy) = hb.children[0];
                self.trace.push(TraceEvent {
                    branch: sys.branch.clone(),
                    step: MoveStep::TripleCollinear { edges, coeffs },
                });
                let row = moves::pair_constraint_row(n, key[0], key[1], cx, cy);
                let child = sys.with_row(row, '0', self.config.eps_rank);
                return self.explore(child, depth + 1);
            }
            self.trace.push(TraceEvent {
                branch: sys.branch.clone(),
                step: MoveStep::TripleSplit {
                    edges,
                    coeffs,
                    discriminant: hb.discriminant,
                },
            });
            let (cx0, cy0) = hb.children[0];
            let (cx1, cy1) = hb.children[1];
            let row0 = moves::pair_constraint_row(n, key[0], key[1], cx0, cy0);
            let row1 = moves::pair_constraint_row(n, key[0], key[1], cx1, cy1);
            let child0 = sys.with_row(row0, '0', self.config.eps_rank);
            let child1 = sys.with_row(row1, '1', self.config.eps_rank);
            let r0 = self.explore(child0, depth + 1);
            let r1 = self.explore(child1, depth + 1);
            return r0 && r1;
        }

        self.trace.push(TraceEvent {
            branch: sys.branch.clone(),
            step: MoveStep::Leaf {
                kernel_dim: sys.kernel_dim(),
            },
        });
        self.leaves.push(sys);
        false
    }
}

/// Outcome of one leaf completion.
pub enum Completion {
    Coords(Vec<Complex64>),
    /// no linearly independent edge pair remains while the kernel is still
    /// larger than a similarity class
    Stuck,
    Exhausted,
}

/// Pins leaf degrees of freedom with random unit-circle constraints on
/// linearly independent edge pairs until the kernel is two-dimensional,
/// then scales out the similarity and verifies.
pub fn randomized_completion(
    leaf: &ConstraintSystem,
    config: &EmbedConfig,
    rng: &mut ChaCha8Rng,
) -> Completion {
    if leaf.graph.edge_count() == 0 {
        return Completion::Stuck;
    }
    debug_assert!(leaf.kernel_dim() >= 2);
    if leaf.kernel_dim() == 2 {
        // fully pinned: verification is deterministic
        return match finish_similarity_class(leaf, config) {
            Some(coords) => Completion::Coords(coords),
            None => Completion::Exhausted,
        };
    }

    let n = leaf.graph.vertex_count();
    for attempt in 0..config.max_retries {
        let mut sys = leaf.clone();
        let mut drew = false;
        let mut stuck = false;
        while sys.kernel_dim() > 2 {
            let funcs = sys.edge_functionals();
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for i in 0..funcs.len() {
                for j in (i + 1)..funcs.len() {
                    if linalg::proportional(&funcs[i].1, &funcs[j].1, config.eps_res).is_none()
                        && linalg::norm(&funcs[i].1) > config.eps_res
                        && linalg::norm(&funcs[j].1) > config.eps_res
                    {
                        pairs.push((i, j));
                    }
                }
            }
            if pairs.is_empty() {
                stuck = true;
                break;
            }
            let (i, j) = pairs[rng.gen_range(0..pairs.len())];
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let b = Complex64::from_polar(1.0, theta);
            drew = true;
            let row = moves::pair_constraint_row(n, funcs[i].0, funcs[j].0, Complex64::ONE, b);
            let mut rows = sys.rows.clone();
            rows.push(row);
            let next = ConstraintSystem::new(
                sys.graph,
                rows,
                sys.branch.clone(),
                sys.used_triples.clone(),
                config.eps_rank,
            );
            // an independent pair always cuts exactly one dimension; anything
            // else is numerical noise, so redraw
            if next.kernel_dim() + 1 != sys.kernel_dim() {
                continue;
            }
            sys = next;
        }
        if stuck {
            if !drew && attempt == 0 {
                return Completion::Stuck;
            }
            continue;
        }
        if let Some(coords) = finish_similarity_class(&sys, config) {
            return Completion::Coords(coords);
        }
    }
    Completion::Exhausted
}

/// At kernel dimension two the embedding is fixed up to translation,
/// rotation and dilation: quotient the constant direction and scale the
/// first edge to unit length.
fn finish_similarity_class(sys: &ConstraintSystem, config: &EmbedConfig) -> Option<Vec<Complex64>> {
    let n = sys.graph.vertex_count();
    debug_assert_eq!(sys.kernel_dim(), 2);
    let mut best: Option<Vec<Complex64>> = None;
    let mut best_norm = 0.0f64;
    for k in &sys.kernel {
        let mean: Complex64 = k.iter().sum::<Complex64>() / n as f64;
        let g: Vec<Complex64> = k.iter().map(|z| z - mean).collect();
        let gnorm = linalg::norm(&g);
        if gnorm > best_norm {
            best_norm = gnorm;
            best = Some(g);
        }
    }
    let g = best?;
    if best_norm < config.eps_res {
        return None;
    }
    let (u0, v0) = *sys.graph.edges().first()?;
    let denom = g[u0] - g[v0];
    if denom.norm() < config.eps_res {
        return None;
    }
    let coords: Vec<Complex64> = g.iter().map(|z| z / denom).collect();
    if verify_embedding(&sys.graph, &coords, config.eps_res) {
        Some(coords)
    } else {
        None
    }
}

/// True iff every edge length is within `tol` of one and all coordinates
/// are pairwise farther apart than `tol`.
pub fn verify_embedding(g: &Graph, coords: &[Complex64], tol: f64) -> bool {
    if coords.len() != g.vertex_count() {
        return false;
    }
    for (u, v) in g.edges() {
        if ((coords[u] - coords[v]).norm() - 1.0).abs() > tol {
            return false;
        }
    }
    for u in g.vertices() {
        for v in (u + 1)..g.vertex_count() {
            if (coords[u] - coords[v]).norm() <= tol {
                return false;
            }
        }
    }
    true
}

/// One Gauss-Newton step on the squared edge-length residuals, taking the
/// minimum-norm update. Used to polish embeddings before re-verification.
pub fn newton_refine(g: &Graph, coords: &[Complex64]) -> Vec<Complex64> {
    let edges = g.edges();
    let m = edges.len();
    let n = g.vertex_count();
    if m == 0 {
        return coords.to_vec();
    }
    // residuals r_e = |f(u) - f(v)|^2 - 1; jacobian in 2n real unknowns
    let mut jac = vec![vec![0.0f64; 2 * n]; m];
    let mut res = vec![0.0f64; m];
    for (ei, &(u, v)) in edges.iter().enumerate() {
        let d = coords[u] - coords[v];
        res[ei] = d.norm_sqr() - 1.0;
        jac[ei][2 * u] = 2.0 * d.re;
        jac[ei][2 * u + 1] = 2.0 * d.im;
        jac[ei][2 * v] = -2.0 * d.re;
        jac[ei][2 * v + 1] = -2.0 * d.im;
    }
    // minimum-norm solve: delta = J^T (J J^T + ridge I)^{-1} (-res)
    let mut gram = vec![vec![0.0f64; m]; m];
    for i in 0..m {
        for j in 0..m {
            gram[i][j] = jac[i].iter().zip(&jac[j]).map(|(a, b)| a * b).sum();
        }
        gram[i][i] += 1e-12;
    }
    let rhs: Vec<f64> = res.iter().map(|r| -r).collect();
    let Some(lambda) = solve_real(&mut gram, &rhs) else {
        return coords.to_vec();
    };
    let mut out = coords.to_vec();
    for (ei, row) in jac.iter().enumerate() {
        for v in 0..n {
            out[v] += Complex64::new(row[2 * v] * lambda[ei], row[2 * v + 1] * lambda[ei]);
        }
    }
    out
}

#[allow(clippy::needless_range_loop)]
fn solve_real(a: &mut [Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        x.swap(col, piv);
        let inv = 1.0 / a[col][col];
        for j in col..n {
            a[col][j] *= inv;
        }
        x[col] *= inv;
        for i in 0..n {
            if i != col && a[i][col] != 0.0 {
                let f = a[i][col];
                for j in col..n {
                    a[i][j] -= f * a[col][j];
                }
                x[i] -= f * x[col];
            }
        }
    }
    Some(x)
}

/// Full pipeline on one graph: rhombus system, move saturation, randomized
/// completion of surviving leaves in discovery order. Deterministic for a
/// fixed seed.
pub fn solve(g: &Graph, config: &EmbedConfig) -> SolverOutcome {
    solve_with_trace(g, config).0
}

/// Like [`solve`], also returning the full move trace (identical to the
/// trace embedded in a `Refuted` outcome).
pub fn solve_with_trace(g: &Graph, config: &EmbedConfig) -> (SolverOutcome, Vec<TraceEvent>) {
    let n = g.vertex_count();
    if g.edge_count() == 0 {
        // any spread of distinct points embeds an edgeless graph
        let coordinates = (0..n)
            .map(|v| Complex64::new(2.0 * v as f64, 0.0))
            .collect();
        let out = SolverOutcome::Embedded {
            coordinates,
            branch: "0".into(),
            seed: config.rng_seed,
        };
        return (out, Vec::new());
    }

    let rows = rhombus_constraints(g);
    let mut trace = vec![TraceEvent {
        branch: "0".into(),
        step: MoveStep::RhombusSystem { rows: rows.len() },
    }];
    let root = ConstraintSystem::new(*g, rows, "0".into(), HashSet::new(), config.eps_rank);
    let sat = saturate(root, config);
    trace.extend(sat.trace.iter().cloned());

    if sat.refuted {
        return (
            SolverOutcome::Refuted {
                trace: trace.clone(),
            },
            trace,
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut saw_stuck = false;
    for leaf in &sat.leaves {
        match randomized_completion(leaf, config, &mut rng) {
            Completion::Coords(coordinates) => {
                let out = SolverOutcome::Embedded {
                    coordinates,
                    branch: leaf.branch.clone(),
                    seed: config.rng_seed,
                };
                return (out, trace);
            }
            Completion::Stuck => saw_stuck = true,
            Completion::Exhausted => {}
        }
    }
    let reason = if sat.budget_exhausted {
        UnknownReason::BranchBudget
    } else if saw_stuck {
        UnknownReason::StuckKernel
    } else {
        UnknownReason::RetriesExhausted
    };
    (SolverOutcome::Unknown { reason }, trace)
}
