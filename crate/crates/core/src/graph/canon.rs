//! Canonical labelling of (optionally decorated) stable graphs.
//!
//! Vertex colours start from genus, decorations and incident leg labels and
//! are refined by neighbourhood multisets until stable. The search then
//! individualizes vertices of the first non-singleton cell and keeps the
//! lexicographically smallest encoding over all discrete leaves. Leaves
//! that reach the minimum differ by a vertex automorphism, so counting them
//! gives the vertex automorphism group order for free.

use std::fmt;
use std::str::FromStr;

use super::{GraphError, StableGraph};

/// Byte string identifying the isomorphism class of a graph (with
/// decorations, when present). Rendered as lowercase hex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl FromStr for CanonicalKey {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        hex::decode(s)
            .map(CanonicalKey)
            .map_err(|_| GraphError::UnknownKey(s.to_string()))
    }
}

/// Labels attached to a graph that isomorphisms must preserve: a multiset
/// of integers per vertex, one integer per leg (indexed like
/// `StableGraph::legs`) and one per edge end.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Decorations {
    pub vertex: Vec<Vec<u32>>,
    pub leg: Vec<u32>,
    pub edge: Vec<[u32; 2]>,
}

impl Decorations {
    pub fn trivial(graph: &StableGraph) -> Self {
        Decorations {
            vertex: vec![Vec::new(); graph.num_vertices()],
            leg: vec![0; graph.legs().len()],
            edge: vec![[0, 0]; graph.num_edges()],
        }
    }
}

struct Search<'a> {
    graph: &'a StableGraph,
    dec: &'a Decorations,
    best: Option<Vec<u32>>,
    hits: usize,
}

pub(crate) fn canonical_key(graph: &StableGraph, dec: Option<&Decorations>) -> CanonicalKey {
    let owned;
    let dec = match dec {
        Some(d) => d,
        None => {
            owned = Decorations::trivial(graph);
            &owned
        }
    };
    let words = run(graph, dec).0;
    let mut bytes = Vec::with_capacity(words.len());
    for mut w in words {
        // LEB128: self-delimiting, so distinct word strings stay distinct
        loop {
            let low = (w & 0x7f) as u8;
            w >>= 7;
            if w == 0 {
                bytes.push(low);
                break;
            }
            bytes.push(low | 0x80);
        }
    }
    CanonicalKey(bytes)
}

/// Number of leg-fixing vertex permutations preserving genus and edge multiplicities.
pub(crate) fn vertex_automorphisms(graph: &StableGraph) -> usize {
    run(graph, &Decorations::trivial(graph)).1
}

fn run(graph: &StableGraph, dec: &Decorations) -> (Vec<u32>, usize) {
    let mut search = Search { graph, dec, best: None, hits: 0 };
    let colors = search.initial_colors();
    search.descend(colors);
    (search.best.expect("search visits at least one leaf"), search.hits)
}

impl Search<'_> {
    fn initial_colors(&self) -> Vec<u32> {
        let nv = self.graph.num_vertices();
        let sigs: Vec<Vec<u32>> = (0..nv)
            .map(|v| {
                let mut sig = vec![self.graph.vertex_genus(v)];
                let extra = &self.dec.vertex[v];
                sig.push(extra.len() as u32);
                sig.extend(extra);
                let mut legs: Vec<[u32; 2]> = self
                    .graph
                    .legs()
                    .iter()
                    .zip(&self.dec.leg)
                    .filter(|((_, w), _)| *w == v)
                    .map(|((label, _), &d)| [*label, d])
                    .collect();
                legs.sort_unstable();
                sig.push(legs.len() as u32);
                sig.extend(legs.into_iter().flatten());
                sig
            })
            .collect();
        rank(&sigs)
    }

    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let nv = colors.len();
        let mut classes = count_classes(&colors);
        loop {
            let sigs: Vec<Vec<u32>> = (0..nv)
                .map(|v| {
                    let mut nbrs: Vec<[u32; 3]> = Vec::new();
                    for (e, &[a, b]) in self.graph.edges().iter().enumerate() {
                        let [da, db] = self.dec.edge[e];
                        if a == v {
                            nbrs.push([colors[b], da, db]);
                        }
                        if b == v {
                            nbrs.push([colors[a], db, da]);
                        }
                    }
                    nbrs.sort_unstable();
                    let mut sig = vec![colors[v]];
                    sig.extend(nbrs.into_iter().flatten());
                    sig
                })
                .collect();
            colors = rank(&sigs);
            let next = count_classes(&colors);
            if next == classes {
                return colors;
            }
            classes = next;
        }
    }

    fn descend(&mut self, colors: Vec<u32>) {
        let colors = self.refine(colors);
        let nv = colors.len();
        let target = (0..nv as u32).find(|&c| colors.iter().filter(|&&x| x == c).count() > 1);
        match target {
            None => {
                let enc = self.encode(&colors);
                match &self.best {
                    Some(best) if enc > *best => {}
                    Some(best) if enc == *best => self.hits += 1,
                    _ => {
                        self.best = Some(enc);
                        self.hits = 1;
                    }
                }
            }
            Some(cell) => {
                for v in (0..nv).filter(|&v| colors[v] == cell) {
                    let next = colors
                        .iter()
                        .enumerate()
                        .map(|(w, &c)| if w == v { 2 * c } else { 2 * c + 1 })
                        .collect();
                    self.descend(next);
                }
            }
        }
    }

    /// Encoding of the graph with vertex `v` placed at position `pos[v]`.
    fn encode(&self, pos: &[u32]) -> Vec<u32> {
        let graph = self.graph;
        let nv = graph.num_vertices();
        let mut order = vec![0usize; nv];
        for (v, &p) in pos.iter().enumerate() {
            order[p as usize] = v;
        }
        let mut words = vec![nv as u32];
        for &v in &order {
            words.push(graph.vertex_genus(v));
            let extra = &self.dec.vertex[v];
            words.push(extra.len() as u32);
            words.extend(extra);
        }
        let mut legs: Vec<[u32; 3]> = graph
            .legs()
            .iter()
            .zip(&self.dec.leg)
            .map(|(&(label, v), &d)| [label, pos[v], d])
            .collect();
        legs.sort_unstable();
        words.push(legs.len() as u32);
        words.extend(legs.into_iter().flat_map(|[_, p, d]| [p, d]));
        let mut edges: Vec<[u32; 4]> = graph
            .edges()
            .iter()
            .zip(&self.dec.edge)
            .map(|(&[a, b], &[da, db])| {
                let x = [pos[a], da];
                let y = [pos[b], db];
                let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
                [lo[0], lo[1], hi[0], hi[1]]
            })
            .collect();
        edges.sort_unstable();
        words.push(edges.len() as u32);
        words.extend(edges.into_iter().flatten());
        words
    }
}

fn rank(sigs: &[Vec<u32>]) -> Vec<u32> {
    let mut distinct: Vec<&Vec<u32>> = sigs.iter().collect();
    distinct.sort();
    distinct.dedup();
    sigs.iter()
        .map(|s| distinct.binary_search(&s).expect("signature present") as u32)
        .collect()
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}
