//! Enumeration of stable graphs by number of edges.
//!
//! Level `E + 1` is produced from level `E` by every single degeneration
//! (adding a loop, or splitting a vertex along a new edge). Contracting any
//! edge of a stable graph gives a stable graph, so every graph with `E + 1`
//! edges is a degeneration of one with `E` edges.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{check_pair, CanonicalKey, GraphError, HalfEdge, StableGraph};

/// Upper bound on graphs visited by [`open_locus`].
const LOCUS_VISIT_LIMIT: usize = 2_000_000;

/// All graphs `G` with an edge `e` such that contracting `e` in `G` gives
/// `graph` (possibly with repeats up to isomorphism).
pub fn degenerations(graph: &StableGraph) -> Vec<StableGraph> {
    let mut out = Vec::new();
    let nv = graph.num_vertices();
    for v in 0..nv {
        let gv = graph.vertex_genus(v);
        if gv > 0 {
            let mut genera = graph.genera().to_vec();
            genera[v] -= 1;
            let mut edges = graph.edges().to_vec();
            edges.push([v, v]);
            out.push(StableGraph::from_parts(genera, graph.legs().to_vec(), edges));
        }
        let here = graph.half_edges_at(v);
        let k = here.len();
        for mask in 0u64..(1u64 << k) {
            let moved = mask.count_ones() as usize;
            let stays = k - moved;
            for g_new in 0..=gv {
                let g_old = gv - g_new;
                // each side also carries one end of the new edge
                if 2 * g_old + stays as u32 + 1 <= 2 || 2 * g_new + moved as u32 + 1 <= 2 {
                    continue;
                }
                let mut genera = graph.genera().to_vec();
                genera[v] = g_old;
                genera.push(g_new);
                let w = nv;
                let mut legs = graph.legs().to_vec();
                let mut edges = graph.edges().to_vec();
                for (i, h) in here.iter().enumerate() {
                    if mask >> i & 1 == 0 {
                        continue;
                    }
                    match *h {
                        HalfEdge::Leg(label) => {
                            let leg = legs.iter_mut().find(|(l, _)| *l == label).expect("leg present");
                            leg.1 = w;
                        }
                        HalfEdge::Branch { edge, end } => edges[edge][end as usize] = w,
                    }
                }
                edges.push([v, w]);
                out.push(StableGraph::from_parts(genera, legs, edges));
            }
        }
    }
    out
}

/// Graphs of genus `g` with `n` legs, grouped by edge count `0..=max_edges`,
/// one per isomorphism class, each level sorted by canonical key.
pub fn enumerate_levels(g: u32, n: u32, max_edges: u32, cap: u32) -> Result<Vec<Vec<StableGraph>>, GraphError> {
    check_pair(g, n, cap)?;
    let top = 3 * g + n - 3;
    let mut levels = vec![vec![StableGraph::smooth(g, n)?]];
    for _ in 0..max_edges.min(top) {
        let mut seen = BTreeMap::new();
        for graph in levels.last().expect("nonempty") {
            for d in degenerations(graph) {
                seen.entry(d.canonical_key()).or_insert(d);
            }
        }
        levels.push(seen.into_values().collect());
    }
    Ok(levels)
}

/// One stable graph per isomorphism class for `(g, n)`, sorted by edge count
/// and then canonical key.
pub fn enumerate(g: u32, n: u32, cap: u32) -> Result<Vec<StableGraph>, GraphError> {
    check_pair(g, n, cap)?;
    Ok(enumerate_levels(g, n, 3 * g + n - 3, cap)?.into_iter().flatten().collect())
}

/// Whether every single-edge contraction of every graph in `graphs` is
/// isomorphic to a member of `graphs`.
pub fn is_contraction_closed(graphs: &[StableGraph]) -> bool {
    let keys: HashSet<CanonicalKey> = graphs.iter().map(StableGraph::canonical_key).collect();
    graphs.iter().all(|graph| {
        (0..graph.num_edges()).all(|e| {
            let contracted = graph.contract_edge(e).expect("edge index in range");
            keys.contains(&contracted.canonical_key())
        })
    })
}

/// Whether the union of the strata indexed by `keys` is open in the moduli
/// space of `(g, n)` curves, i.e. the set is closed under edge contraction.
pub fn is_open_union(g: u32, n: u32, keys: &BTreeSet<CanonicalKey>, cap: u32) -> Result<bool, GraphError> {
    let all: BTreeMap<CanonicalKey, StableGraph> = enumerate(g, n, cap)?
        .into_iter()
        .map(|graph| (graph.canonical_key(), graph))
        .collect();
    let mut members = Vec::with_capacity(keys.len());
    for key in keys {
        match all.get(key) {
            Some(graph) => members.push(graph.clone()),
            None => return Err(GraphError::UnknownKey(key.to_hex())),
        }
    }
    Ok(is_contraction_closed(&members))
}

/// The largest contraction-closed set of `(g, n)` graphs all of whose
/// members satisfy `keep`. Found by searching degenerations from the
/// one-vertex graph, so it never enumerates the whole stratification.
pub fn open_locus<F>(g: u32, n: u32, keep: F) -> Result<Vec<StableGraph>, GraphError>
where
    F: Fn(&StableGraph) -> bool,
{
    let top = StableGraph::smooth(g, n)?;
    if !keep(&top) {
        return Ok(Vec::new());
    }
    let mut level: BTreeMap<CanonicalKey, StableGraph> = BTreeMap::from([(top.canonical_key(), top)]);
    let mut out: Vec<StableGraph> = Vec::new();
    let mut visited = 0usize;
    while !level.is_empty() {
        let mut next = BTreeMap::new();
        for graph in level.values() {
            for d in degenerations(graph) {
                visited += 1;
                if visited > LOCUS_VISIT_LIMIT {
                    return Err(GraphError::CapExceeded {
                        complexity: 3 * g + n - 3,
                        cap: graph.num_edges() as u32,
                    });
                }
                let key = d.canonical_key();
                if next.contains_key(&key) || !keep(&d) {
                    continue;
                }
                let interior = (0..d.num_edges()).all(|e| {
                    let c = d.contract_edge(e).expect("edge index in range");
                    level.contains_key(&c.canonical_key())
                });
                if interior {
                    next.insert(key, d);
                }
            }
        }
        out.extend(std::mem::replace(&mut level, next).into_values());
    }
    Ok(out)
}
