//! Level-by-level enumeration of forbidden-subgraph-free graphs.
//!
//! The level `(n, m)` holds every F-free graph with `n` vertices and `m`
//! edges, deduplicated by canonical code. Levels are built from the levels
//! one vertex below: every dense graph keeps a dense induced subgraph after
//! deleting a minimum-degree vertex (`schade_bound`), so attaching one new
//! vertex of the complementary degree to each graph of the qualifying lower
//! levels reaches everything.
//!
//! F-freeness of extensions is decided without any subgraph re-check: for a
//! host `H`, a new vertex with neighborhood `N` creates a forbidden graph
//! exactly when `N` contains a "bad neighborhood" — the image of a deleted
//! vertex's neighborhood under some embedding of a one-vertex-reduced
//! forbidden graph into `H`. Only the minimal bad sets are stored.
//!
//! Three prunes borrowed from the downward processing of lower levels by
//! edge count skip hosts whose minimum degree shows every child was already
//! produced from a denser parent. They never change the output (the
//! no-prune mode exists to verify exactly that).

use crate::canon::{canonical_form, CanonicalCode};
use crate::graph::{BitIter, Graph};
use crate::par;
use crate::subgraph::{contains_subgraph, subgraph_embeddings_into};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("missing lower level ({n}, {m})")]
    MissingLevel { n: usize, m: usize },
    #[error("level ({n}, {m}) exceeded the budget of {cap} graphs; completed levels remain in the store")]
    Budget { n: usize, m: usize, cap: usize },
    #[error("family member {index} is a subgraph of member {of}; family must be an antichain")]
    NotMinimal { index: usize, of: usize },
    #[error("family members {a} and {b} are isomorphic")]
    Duplicate { a: usize, b: usize },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {source}")]
    Parse {
        path: PathBuf,
        line: usize,
        source: crate::graph6::Graph6Error,
    },
    #[error("checkpoint {path} is corrupt: {why}")]
    Corrupt { path: PathBuf, why: String },
}

/// Minimum edge count of some induced subgraph on `n - 1` vertices of any
/// graph with `n` vertices and `m` edges: deleting a minimum-degree vertex
/// removes at most the average degree, so `ceil(m (n-2) / n)` edges remain.
///
/// Panics when `n == 0` (no vertex to delete).
pub fn schade_bound(n: usize, m: usize) -> usize {
    assert!(n >= 1, "schade_bound needs at least one vertex");
    if n <= 2 {
        return 0;
    }
    (m * (n - 2)).div_ceil(n)
}

/// The forbidden family: an antichain of pairwise non-isomorphic graphs.
#[derive(Clone, Debug)]
pub struct ForbiddenFamily {
    members: Vec<Graph>,
    source: Option<PathBuf>,
}

impl ForbiddenFamily {
    /// Validates pairwise non-isomorphism and subgraph-minimality.
    pub fn from_graphs(members: Vec<Graph>) -> Result<Self, EnumerateError> {
        let codes: Vec<CanonicalCode> = members.iter().map(canonical_form).collect();
        for i in 0..members.len() {
            for j in 0..members.len() {
                if i == j {
                    continue;
                }
                if i < j && codes[i] == codes[j] {
                    return Err(EnumerateError::Duplicate { a: i, b: j });
                }
                if codes[i] != codes[j]
                    && contains_subgraph(&members[j], std::slice::from_ref(&members[i]))
                {
                    return Err(EnumerateError::NotMinimal { index: i, of: j });
                }
            }
        }
        Ok(ForbiddenFamily {
            members,
            source: None,
        })
    }

    /// Loads a family from a file of graph6 lines.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, EnumerateError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| EnumerateError::Io {
            path: path.into(),
            source,
        })?;
        let mut fam = Self::parse(&text, path)?;
        fam.source = Some(path.into());
        Ok(fam)
    }

    /// Parses graph6 lines; `#` starts a comment.
    pub fn parse(text: &str, label: &Path) -> Result<Self, EnumerateError> {
        let mut members = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let g = crate::graph6::parse_graph6(line).map_err(|source| EnumerateError::Parse {
                path: label.into(),
                line: i + 1,
                source,
            })?;
            members.push(g);
        }
        Self::from_graphs(members)
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn source(&self) -> Option<&Path> {
        self.source.as_deref()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A forbidden graph with one vertex deleted, remembering the deleted
/// vertex's neighborhood. Attaching a new vertex whose neighborhood covers
/// an embedded image of that set recreates the forbidden graph.
#[derive(Clone, Debug)]
pub struct RootedForbidden {
    pub reduced: Graph,
    /// vertex mask within `reduced`
    pub root_neighborhood: u64,
}

impl RootedForbidden {
    pub fn neighborhood_size(&self) -> usize {
        self.root_neighborhood.count_ones() as usize
    }
}

/// One entry per (member, vertex) pair; entries with an empty neighborhood
/// are dropped since an isolated vertex never constrains extensions.
pub fn derive_rooted_family(family: &ForbiddenFamily) -> Vec<RootedForbidden> {
    let mut out = Vec::new();
    for f in family.members() {
        for v in f.vertices() {
            if f.degree(v) == 0 {
                continue;
            }
            let reduced = f.delete_vertex(v);
            // relabel the neighborhood mask: vertices above v shift down
            let mut mask = 0u64;
            for u in f.neighbors(v) {
                mask |= 1 << if u > v { u - 1 } else { u };
            }
            out.push(RootedForbidden {
                reduced,
                root_neighborhood: mask,
            });
        }
    }
    out
}

/// The minimal antichain of bad neighborhoods of a host.
#[derive(Clone, Debug, Default)]
pub struct BadNeighborhoods {
    /// vertex masks; no member contains another
    pub minimal_sets: Vec<u64>,
}

impl BadNeighborhoods {
    // clippy's manual_contains misreads the subset test as an equality probe
    #[allow(clippy::manual_contains)]
    pub fn is_bad(&self, neighborhood: u64) -> bool {
        self.minimal_sets.iter().any(|&t| neighborhood & t == t)
    }
}

/// Computes all minimal bad sets of size at most `max_size` by increasing
/// size, skipping supersets of sets already found. With a nonempty
/// `required` mask only sets containing it are enumerated (and minimality
/// is relative to that restriction), which is exactly what extensions
/// forced to cover all minimum-degree vertices need.
pub fn bad_neighborhoods(
    host: &Graph,
    rooted: &[RootedForbidden],
    max_size: usize,
    required: u64,
) -> BadNeighborhoods {
    let n = host.vertex_count();
    let mut found: Vec<u64> = Vec::new();
    let req_count = required.count_ones() as usize;
    let free: Vec<usize> = (0..n).filter(|v| required & (1 << *v) == 0).collect();
    for k in req_count.max(1)..=max_size.min(n) {
        if k < req_count {
            continue;
        }
        let pick = k - req_count;
        if pick > free.len() {
            break;
        }
        #[allow(clippy::manual_contains)]
        for_each_subset(&free, pick, &mut |extra| {
            let t = required | extra;
            if found.iter().any(|&f| t & f == f) {
                return;
            }
            if witnesses_bad_set(host, rooted, t, k) {
                found.push(t);
            }
        });
    }
    BadNeighborhoods {
        minimal_sets: found,
    }
}

/// Does some rooted pattern embed into `host` with its root neighborhood
/// landing inside `t`?
fn witnesses_bad_set(host: &Graph, rooted: &[RootedForbidden], t: u64, t_size: usize) -> bool {
    rooted.iter().any(|rf| {
        rf.neighborhood_size() <= t_size && rf.reduced.vertex_count() <= host.vertex_count() && {
            let anchored: Vec<usize> = BitIter(rf.root_neighborhood).collect();
            subgraph_embeddings_into(host, &rf.reduced, &anchored, t)
                .next()
                .is_some()
        }
    })
}

/// Lexicographic enumeration of `k`-subsets of `items` as masks.
fn for_each_subset(items: &[usize], k: usize, f: &mut impl FnMut(u64)) {
    fn rec(items: &[usize], k: usize, start: usize, acc: u64, f: &mut impl FnMut(u64)) {
        if k == 0 {
            f(acc);
            return;
        }
        for i in start..=items.len().saturating_sub(k) {
            rec(items, k - 1, i + 1, acc | 1 << items[i], f);
        }
    }
    rec(items, k, 0, 0, f);
}

/// All extensions of `host` by one vertex of degree `d` whose neighborhood
/// covers `required` and contains no bad set. Every result is F-free
/// whenever the host was: the bad sets characterize exactly the
/// neighborhoods that would embed a forbidden graph through the new vertex.
pub fn extend(host: &Graph, d: usize, bad: &BadNeighborhoods, required: u64) -> Vec<Graph> {
    let n = host.vertex_count();
    let req_count = required.count_ones() as usize;
    if d > n || req_count > d {
        return Vec::new();
    }
    let free: Vec<usize> = (0..n).filter(|v| required & (1 << *v) == 0).collect();
    let mut out = Vec::new();
    for_each_subset(&free, d - req_count, &mut |extra| {
        let neighborhood = required | extra;
        if !bad.is_bad(neighborhood) {
            out.push(host.with_new_vertex(neighborhood));
        }
    });
    out
}

/// One sealed level: the deduplicated F-free graphs with `n` vertices and
/// `m` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub n: usize,
    pub m: usize,
    pub codes: BTreeSet<CanonicalCode>,
}

impl Level {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn graphs(&self) -> impl Iterator<Item = Graph> + '_ {
        self.codes.iter().map(|c| c.decode())
    }
}

#[derive(Clone, Debug)]
pub struct EnumerateConfig {
    /// apply the minimum-degree prunes (identical output either way)
    pub prune: bool,
    /// sealed-level checkpoint directory
    pub checkpoint: Option<PathBuf>,
    /// per-level graph-count budget
    pub level_cap: Option<usize>,
}

impl Default for EnumerateConfig {
    fn default() -> Self {
        EnumerateConfig {
            prune: true,
            checkpoint: None,
            level_cap: None,
        }
    }
}

/// Builds level `(target_n, target_m)` from the map of lower levels (keyed
/// by edge count at `target_n - 1`), which must cover every `m'` from
/// `schade_bound(target_n, target_m)` through `target_m` that fits on
/// `target_n - 1` vertices.
pub fn build_level(
    target_n: usize,
    target_m: usize,
    lower: &HashMap<usize, Arc<Level>>,
    rooted: &[RootedForbidden],
    config: &EnumerateConfig,
) -> Result<Level, EnumerateError> {
    assert!(target_n >= 1);
    let mut codes: BTreeSet<CanonicalCode> = BTreeSet::new();
    if target_m > target_n * (target_n - 1) / 2 {
        return Ok(Level {
            n: target_n,
            m: target_m,
            codes,
        });
    }
    let host_capacity = (target_n - 1) * target_n.saturating_sub(2) / 2;
    let lo = schade_bound(target_n, target_m);
    for mp in (lo..=target_m).rev() {
        if mp > host_capacity {
            // a host this dense cannot exist on one vertex fewer
            continue;
        }
        let d = target_m - mp;
        if d > target_n - 1 {
            continue;
        }
        let level = lower.get(&mp).ok_or(EnumerateError::MissingLevel {
            n: target_n - 1,
            m: mp,
        })?;
        let hosts: Vec<Graph> = level.graphs().collect();
        let batches = par::map(&hosts, |host| extend_host(host, d, rooted, config));
        for batch in batches {
            codes.extend(batch);
        }
    }
    Ok(Level {
        n: target_n,
        m: target_m,
        codes,
    })
}

fn max_root_size(rooted: &[RootedForbidden]) -> usize {
    rooted
        .iter()
        .map(|r| r.neighborhood_size())
        .max()
        .unwrap_or(0)
}

fn extend_host(
    host: &Graph,
    d: usize,
    rooted: &[RootedForbidden],
    config: &EnumerateConfig,
) -> Vec<CanonicalCode> {
    let mut required = 0u64;
    if config.prune && host.vertex_count() > 0 {
        let delta = host.min_degree();
        if delta + 2 <= d {
            // every degree-d child keeps a minimum-degree vertex besides the
            // new one; deleting it lands in a denser, already-processed host
            return Vec::new();
        }
        if delta + 1 == d {
            let mins = host.min_degree_vertices();
            if mins.count_ones() as usize > d {
                return Vec::new();
            }
            required = mins;
        }
    }
    let max_s = max_root_size(rooted);
    let req_count = required.count_ones() as usize;
    let max_k = if required == 0 {
        max_s.min(d)
    } else {
        d.min(req_count + max_s)
    };
    let bad = bad_neighborhoods(host, rooted, max_k, required);
    extend(host, d, &bad, required)
        .iter()
        .map(canonical_form)
        .collect()
}

#[derive(Serialize, Deserialize)]
struct LevelMeta {
    n: usize,
    m: usize,
    count: usize,
    complete: bool,
}

/// Memoizing store of sealed levels with optional on-disk checkpointing.
pub struct LevelStore {
    family: ForbiddenFamily,
    rooted: Vec<RootedForbidden>,
    config: EnumerateConfig,
    levels: HashMap<(usize, usize), Arc<Level>>,
}

impl LevelStore {
    pub fn new(family: ForbiddenFamily, config: EnumerateConfig) -> Self {
        let rooted = derive_rooted_family(&family);
        LevelStore {
            family,
            rooted,
            config,
            levels: HashMap::new(),
        }
    }

    pub fn family(&self) -> &ForbiddenFamily {
        &self.family
    }

    pub fn config(&self) -> &EnumerateConfig {
        &self.config
    }

    /// The sealed level `(n, m)`, computing (or loading) dependencies as
    /// needed.
    pub fn level(&mut self, n: usize, m: usize) -> Result<Arc<Level>, EnumerateError> {
        if let Some(l) = self.levels.get(&(n, m)) {
            return Ok(l.clone());
        }
        if let Some(l) = self.try_load(n, m)? {
            let l = Arc::new(l);
            self.levels.insert((n, m), l.clone());
            return Ok(l);
        }
        let level = if n == 0 {
            let mut codes = BTreeSet::new();
            if m == 0 {
                codes.insert(canonical_form(&Graph::new(0)));
            }
            Level { n, m, codes }
        } else {
            if m <= n * (n - 1) / 2 {
                // make dependencies available first
                for mp in schade_bound(n, m)..=m {
                    self.level(n - 1, mp)?;
                }
            }
            let mut lower = HashMap::new();
            for mp in 0..=m {
                if let Some(l) = self.levels.get(&(n - 1, mp)) {
                    lower.insert(mp, l.clone());
                }
            }
            build_level(n, m, &lower, &self.rooted, &self.config)?
        };
        if let Some(cap) = self.config.level_cap {
            if level.len() > cap {
                return Err(EnumerateError::Budget { n, m, cap });
            }
        }
        self.seal(&level)?;
        let level = Arc::new(level);
        self.levels.insert((n, m), level.clone());
        Ok(level)
    }

    /// Largest `m` with a nonempty level, searched downward from the bound
    /// implied by the previous vertex count, plus the witnesses.
    pub fn max_density(&mut self, n: usize) -> Result<(usize, Arc<Level>), EnumerateError> {
        if n == 0 {
            let level = self.level(0, 0)?;
            return Ok((0, level));
        }
        let cap_edges = n * (n - 1) / 2;
        let upper = if n >= 3 {
            let (prev, _) = self.max_density(n - 1)?;
            (n * prev / (n - 2)).min(cap_edges)
        } else {
            cap_edges
        };
        for m in (0..=upper).rev() {
            let level = self.level(n, m)?;
            if !level.is_empty() {
                return Ok((m, level));
            }
        }
        unreachable!("the edgeless level is never empty");
    }

    fn checkpoint_paths(&self, n: usize, m: usize) -> Option<(PathBuf, PathBuf)> {
        let dir = self.config.checkpoint.as_ref()?;
        Some((
            dir.join(format!("U_{n}_{m}.g6")),
            dir.join(format!("U_{n}_{m}.json")),
        ))
    }

    fn try_load(&self, n: usize, m: usize) -> Result<Option<Level>, EnumerateError> {
        let Some((codes_path, meta_path)) = self.checkpoint_paths(n, m) else {
            return Ok(None);
        };
        if !meta_path.exists() || !codes_path.exists() {
            return Ok(None);
        }
        let meta_text =
            std::fs::read_to_string(&meta_path).map_err(|source| EnumerateError::Io {
                path: meta_path.clone(),
                source,
            })?;
        let meta: LevelMeta =
            serde_json::from_str(&meta_text).map_err(|e| EnumerateError::Corrupt {
                path: meta_path.clone(),
                why: e.to_string(),
            })?;
        if !meta.complete || meta.n != n || meta.m != m {
            return Ok(None);
        }
        let text = std::fs::read_to_string(&codes_path).map_err(|source| EnumerateError::Io {
            path: codes_path.clone(),
            source,
        })?;
        let mut codes = BTreeSet::new();
        for (i, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let g = crate::graph6::parse_graph6(line).map_err(|source| EnumerateError::Parse {
                path: codes_path.clone(),
                line: i + 1,
                source,
            })?;
            if g.vertex_count() != n || g.edge_count() != m {
                return Err(EnumerateError::Corrupt {
                    path: codes_path.clone(),
                    why: format!("line {} is not an ({n}, {m}) graph", i + 1),
                });
            }
            codes.insert(canonical_form(&g));
        }
        if codes.len() != meta.count {
            return Err(EnumerateError::Corrupt {
                path: codes_path,
                why: format!("expected {} codes, found {}", meta.count, codes.len()),
            });
        }
        Ok(Some(Level { n, m, codes }))
    }

    /// Atomic write: temp file then rename.
    fn seal(&self, level: &Level) -> Result<(), EnumerateError> {
        let Some((codes_path, meta_path)) = self.checkpoint_paths(level.n, level.m) else {
            return Ok(());
        };
        let dir = self.config.checkpoint.as_ref().unwrap();
        std::fs::create_dir_all(dir).map_err(|source| EnumerateError::Io {
            path: dir.clone(),
            source,
        })?;
        let mut body = String::new();
        for code in &level.codes {
            body.push_str(code.as_str());
            body.push('\n');
        }
        let meta = LevelMeta {
            n: level.n,
            m: level.m,
            count: level.len(),
            complete: true,
        };
        let meta_body = serde_json::to_string_pretty(&meta).expect("meta serializes");
        for (path, contents) in [(&codes_path, &body), (&meta_path, &meta_body)] {
            let tmp = path.with_extension("tmp");
            std::fs::write(&tmp, contents).map_err(|source| EnumerateError::Io {
                path: tmp.clone(),
                source,
            })?;
            std::fs::rename(&tmp, path).map_err(|source| EnumerateError::Io {
                path: path.clone(),
                source,
            })?;
        }
        Ok(())
    }
}

/// Independent re-check used by tests and audits: direct subgraph search
/// against the family on every graph of a level.
pub fn level_is_family_free(level: &Level, family: &ForbiddenFamily) -> bool {
    level
        .graphs()
        .all(|g| !contains_subgraph(&g, family.members()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Anchor;
    use crate::subgraph::subgraph_embeddings;

    #[test]
    fn schade_bound_values() {
        assert_eq!(schade_bound(22, 61), 56);
        assert_eq!(schade_bound(21, 57), 52);
        assert_eq!(schade_bound(5, 0), 0);
        assert_eq!(schade_bound(1, 0), 0);
    }

    #[test]
    #[should_panic]
    fn schade_bound_rejects_zero_vertices() {
        schade_bound(0, 0);
    }

    #[test]
    fn rooted_family_of_k4() {
        let fam = ForbiddenFamily::from_graphs(vec![Graph::complete(4)]).unwrap();
        let rooted = derive_rooted_family(&fam);
        assert_eq!(rooted.len(), 4);
        for r in &rooted {
            assert_eq!(r.reduced, Graph::complete(3));
            assert_eq!(r.root_neighborhood, 0b111);
        }
    }

    #[test]
    fn rooted_family_of_k23() {
        let fam = ForbiddenFamily::from_graphs(vec![Graph::complete_bipartite(2, 3)]).unwrap();
        let rooted = derive_rooted_family(&fam);
        assert_eq!(rooted.len(), 5);
        let stars = rooted
            .iter()
            .filter(|r| {
                crate::canon::canonical_form(&r.reduced)
                    == crate::canon::canonical_form(&Graph::complete_bipartite(1, 3))
            })
            .count();
        let squares = rooted
            .iter()
            .filter(|r| {
                crate::canon::canonical_form(&r.reduced)
                    == crate::canon::canonical_form(&Graph::complete_bipartite(2, 2))
            })
            .count();
        assert_eq!((stars, squares), (2, 3));
        for r in rooted {
            let sz = r.neighborhood_size();
            assert!(sz == 2 || sz == 3);
        }
    }

    #[test]
    fn rooted_family_of_k3() {
        let fam = ForbiddenFamily::from_graphs(vec![Graph::complete(3)]).unwrap();
        let rooted = derive_rooted_family(&fam);
        assert_eq!(rooted.len(), 3);
        for r in &rooted {
            assert_eq!(r.reduced, Graph::complete(2));
            assert_eq!(r.root_neighborhood, 0b11);
        }
    }

    #[test]
    fn family_validation() {
        assert!(matches!(
            ForbiddenFamily::from_graphs(vec![Graph::complete(4), Graph::complete(4)]),
            Err(EnumerateError::Duplicate { .. })
        ));
        assert!(matches!(
            ForbiddenFamily::from_graphs(vec![Graph::complete(3), Graph::complete(4)]),
            Err(EnumerateError::NotMinimal { .. })
        ));
    }

    #[test]
    fn bad_sets_of_k3_under_k4() {
        let fam = ForbiddenFamily::from_graphs(vec![Graph::complete(4)]).unwrap();
        let rooted = derive_rooted_family(&fam);
        let bad = bad_neighborhoods(&Graph::complete(3), &rooted, 3, 0);
        assert_eq!(bad.minimal_sets, vec![0b111]);
    }

    #[test]
    fn bad_sets_of_path_under_k4_empty() {
        let fam = ForbiddenFamily::from_graphs(vec![Graph::complete(4)]).unwrap();
        let rooted = derive_rooted_family(&fam);
        let bad = bad_neighborhoods(&Graph::path(3), &rooted, 3, 0);
        assert!(bad.minimal_sets.is_empty());
    }

    #[test]
    fn bad_sets_of_k22_under_k23() {
        let fam = ForbiddenFamily::from_graphs(vec![Graph::complete_bipartite(2, 3)]).unwrap();
        let rooted = derive_rooted_family(&fam);
        let host = Graph::complete_bipartite(2, 2);
        let bad = bad_neighborhoods(&host, &rooted, 4, 0);
        // exactly the two partition sides {0,1} and {2,3}
        let mut sets = bad.minimal_sets.clone();
        sets.sort_unstable();
        assert_eq!(sets, vec![0b0011, 0b1100]);
        // brute-force cross-check over all subsets
        for t in 1u64..16 {
            let grows_forbidden = contains_subgraph(
                &host.with_new_vertex(t),
                std::slice::from_ref(&fam.members()[0]),
            );
            assert_eq!(bad.is_bad(t), grows_forbidden, "subset {t:#06b}");
        }
    }

    #[test]
    fn extend_k3_examples() {
        let fam = ForbiddenFamily::from_graphs(vec![Graph::complete(4)]).unwrap();
        let rooted = derive_rooted_family(&fam);
        let host = Graph::complete(3);
        let bad = bad_neighborhoods(&host, &rooted, 3, 0);
        assert!(extend(&host, 3, &bad, 0).is_empty());
        let twos = extend(&host, 2, &bad, 0);
        assert_eq!(twos.len(), 3);
        let diamond = crate::graph6::parse_graph6("C^").unwrap();
        for g in &twos {
            assert_eq!(canonical_form(g), canonical_form(&diamond));
        }
    }

    #[test]
    fn extend_diamond_matches_naive_filter() {
        let fam =
            ForbiddenFamily::from_graphs(vec![Graph::complete(4), Graph::complete_bipartite(2, 3)])
                .unwrap();
        let rooted = derive_rooted_family(&fam);
        let host = crate::graph6::parse_graph6("C^").unwrap();
        let bad = bad_neighborhoods(&host, &rooted, 2, 0);
        let fast: BTreeSet<CanonicalCode> = extend(&host, 2, &bad, 0)
            .iter()
            .map(canonical_form)
            .collect();
        let naive: BTreeSet<CanonicalCode> = (0..16u64)
            .filter(|t| t.count_ones() == 2)
            .map(|t| host.with_new_vertex(t))
            .filter(|g| !contains_subgraph(g, fam.members()))
            .map(|g| canonical_form(&g))
            .collect();
        assert_eq!(fast, naive);
        for g in extend(&host, 2, &bad, 0) {
            assert_eq!((g.vertex_count(), g.edge_count()), (5, 7));
        }
    }

    #[test]
    fn build_level_missing_dependency_errors() {
        let fam = ForbiddenFamily::from_graphs(vec![Graph::complete(4)]).unwrap();
        let rooted = derive_rooted_family(&fam);
        let lower = HashMap::new();
        let err = build_level(4, 5, &lower, &rooted, &EnumerateConfig::default()).unwrap_err();
        assert!(matches!(err, EnumerateError::MissingLevel { n: 3, .. }));
    }

    #[test]
    fn anchored_equality_still_works() {
        // the onto form used by the public anchor API and the into form used
        // by bad-set detection agree when the sizes match
        let host = Graph::complete_bipartite(2, 3);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let anchor = Anchor::new(vec![1, 2, 3], vec![2, 3, 4]);
        let onto = subgraph_embeddings(&host, &star, Some(&anchor)).count();
        let into = subgraph_embeddings_into(&host, &star, &[1, 2, 3], 0b11100).count();
        assert_eq!(onto, into);
        assert!(onto > 0);
    }
}
