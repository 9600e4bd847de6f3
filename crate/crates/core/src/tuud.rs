//! Filtering by totally unfaithful unit-distance subgraphs.
//!
//! A unit-distance graph is totally unfaithful when some non-adjacent
//! vertex pair sits at distance exactly one in *every* unit-distance
//! embedding. If a candidate graph of maximum density contains such a
//! witness with the distinguished pair still non-adjacent, the candidate
//! cannot itself be a densest unit-distance graph: embedding it would
//! admit one more unit edge, beating the maximum. The catalog of witnesses
//! is small, and scanning candidates against it is pure subgraph search.

use crate::embed::{self, Completion, EmbedConfig, SolverOutcome};
use crate::graph::Graph;
use crate::subgraph::subgraph_embeddings;
use rand_chacha::rand_core::SeedableRng;
use serde::Serialize;
use std::collections::HashSet;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TuudError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {why}")]
    Malformed {
        path: PathBuf,
        line: usize,
        why: String,
    },
    #[error("{path}:{line}: distinguished pair ({p}, {q}) is an edge of the witness")]
    AdjacentPair {
        path: PathBuf,
        line: usize,
        p: usize,
        q: usize,
    },
}

/// A witness graph with its distinguished non-adjacent pair.
#[derive(Clone, Debug)]
pub struct TuudEntry {
    pub witness: Graph,
    pub pair: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct TuudCatalog {
    pub entries: Vec<TuudEntry>,
    pub source: Option<PathBuf>,
}

const BUILTIN_CATALOG: &str = include_str!("../data/tuud_catalog.txt");

impl TuudCatalog {
    /// The catalog shipped with the crate.
    pub fn builtin() -> TuudCatalog {
        let mut cat = parse_catalog(BUILTIN_CATALOG, Path::new("<builtin>"))
            .expect("builtin catalog is well-formed");
        cat.source = None;
        cat
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Loads `graph6 p q` lines; `#` starts a comment. Pair non-adjacency is
/// checked here, full unfaithfulness via [`validate_entry`].
pub fn load_catalog(path: impl AsRef<Path>) -> Result<TuudCatalog, TuudError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| TuudError::Io {
        path: path.into(),
        source,
    })?;
    parse_catalog(&text, path)
}

fn parse_catalog(text: &str, path: &Path) -> Result<TuudCatalog, TuudError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let malformed = |why: String| TuudError::Malformed {
            path: path.into(),
            line: i + 1,
            why,
        };
        let code = parts
            .next()
            .ok_or_else(|| malformed("missing graph6 code".into()))?;
        let witness =
            crate::graph6::parse_graph6(code).map_err(|e| malformed(format!("bad graph6: {e}")))?;
        let p: usize = parts
            .next()
            .ok_or_else(|| malformed("missing first pair index".into()))?
            .parse()
            .map_err(|e| malformed(format!("bad index: {e}")))?;
        let q: usize = parts
            .next()
            .ok_or_else(|| malformed("missing second pair index".into()))?
            .parse()
            .map_err(|e| malformed(format!("bad index: {e}")))?;
        if parts.next().is_some() {
            return Err(malformed("trailing fields".into()));
        }
        if p == q || p >= witness.vertex_count() || q >= witness.vertex_count() {
            return Err(malformed(format!("pair ({p}, {q}) out of range")));
        }
        if witness.has_edge(p, q) {
            return Err(TuudError::AdjacentPair {
                path: path.into(),
                line: i + 1,
                p,
                q,
            });
        }
        entries.push(TuudEntry {
            witness,
            pair: (p, q),
        });
    }
    Ok(TuudCatalog {
        entries,
        source: Some(path.into()),
    })
}

/// A positive filter result: the witness embedding certifying the host
/// cannot have maximum density among unit-distance graphs.
#[derive(Clone, Debug, Serialize)]
pub struct ReducibleReport {
    pub entry_index: usize,
    /// image of witness vertex `v` is `embedding[v]`
    pub embedding: Vec<usize>,
    pub pair_image: (usize, usize),
}

/// First catalog entry embedding into `g` with the distinguished pair
/// non-adjacent, if any. `None` means `g` survives the filter.
pub fn is_reducible(g: &Graph, catalog: &TuudCatalog) -> Option<ReducibleReport> {
    for (entry_index, entry) in catalog.entries.iter().enumerate() {
        if entry.witness.vertex_count() > g.vertex_count()
            || entry.witness.edge_count() > g.edge_count()
        {
            continue;
        }
        let (p, q) = entry.pair;
        for phi in subgraph_embeddings(g, &entry.witness, None) {
            if !g.has_edge(phi[p], phi[q]) {
                let pair_image = (phi[p], phi[q]);
                return Some(ReducibleReport {
                    entry_index,
                    embedding: phi,
                    pair_image,
                });
            }
        }
    }
    None
}

/// Why an entry did or did not validate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationOutcome {
    Valid,
    /// demonstrably not totally unfaithful
    Invalid(String),
    /// the solver could not settle the witness
    Inconclusive(String),
}

impl ValidationOutcome {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidationOutcome::Valid)
    }
}

/// Checks computationally that an entry is totally unfaithful:
/// (a) the witness embeds, (b) every surviving solver branch places the
/// pair at distance one, (c) the witness plus the pair edge still embeds.
pub fn validate_entry(entry: &TuudEntry, config: &EmbedConfig) -> ValidationOutcome {
    let (p, q) = entry.pair;
    let g = entry.witness;

    // (a) + (b): saturate, then complete every surviving leaf and measure
    // the pair distance there
    let rows = embed::rhombus_constraints(&g);
    let root = embed::ConstraintSystem::new(g, rows, "0".into(), HashSet::new(), config.eps_rank);
    let sat = embed::saturate(root, config);
    if sat.refuted {
        return ValidationOutcome::Invalid("witness is not embeddable".into());
    }
    if sat.budget_exhausted {
        return ValidationOutcome::Inconclusive("branch budget exhausted on witness".into());
    }
    if sat.leaves.is_empty() {
        return ValidationOutcome::Inconclusive("no surviving branch".into());
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut embedded_any = false;
    for leaf in &sat.leaves {
        match embed::randomized_completion(leaf, config, &mut rng) {
            Completion::Coords(coords) => {
                embedded_any = true;
                let dist = (coords[p] - coords[q]).norm();
                if (dist - 1.0).abs() > 1e-6 {
                    return ValidationOutcome::Invalid(format!(
                        "branch {} places the pair at distance {dist:.9}",
                        leaf.branch
                    ));
                }
            }
            Completion::Stuck => {
                return ValidationOutcome::Inconclusive(format!(
                    "stuck kernel on branch {}",
                    leaf.branch
                ));
            }
            Completion::Exhausted => {
                return ValidationOutcome::Inconclusive(format!(
                    "completion retries exhausted on branch {}",
                    leaf.branch
                ));
            }
        }
    }
    if !embedded_any {
        return ValidationOutcome::Inconclusive("witness yielded no embedding".into());
    }

    // (c) adding the forced edge must keep the graph embeddable
    let mut with_edge = g;
    with_edge.add_edge(p, q);
    match embed::solve(&with_edge, config) {
        SolverOutcome::Embedded { .. } => ValidationOutcome::Valid,
        SolverOutcome::Refuted { .. } => {
            ValidationOutcome::Invalid("witness plus pair edge is refuted".into())
        }
        SolverOutcome::Unknown { reason } => {
            ValidationOutcome::Inconclusive(format!("pair-edge graph undecided: {reason}"))
        }
    }
}
