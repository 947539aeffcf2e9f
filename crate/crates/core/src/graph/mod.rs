//! Stable graphs: the dual graphs indexing the boundary stratification of
//! the moduli space of stable pointed curves.

mod canon;
mod enumerate;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{Decorations, CanonicalKey};
pub use enumerate::{
    degenerations, enumerate, enumerate_levels, is_contraction_closed, is_open_union, open_locus,
};

/// Default bound on `3g - 3 + n` accepted by the enumerators.
pub const DEFAULT_CAP: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("(g, n) = ({g}, {n}) is unstable: 2g - 2 + n must be positive")]
    UnstablePair { g: u32, n: u32 },
    #[error("3g - 3 + n = {complexity} exceeds the complexity cap {cap}")]
    CapExceeded { complexity: u32, cap: u32 },
    #[error("invalid stable graph: {0}")]
    InvalidGraph(String),
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("canonical key {0} does not belong to the enumerated set")]
    UnknownKey(String),
}

impl GraphError {
    pub fn name(&self) -> &'static str {
        match self {
            GraphError::UnstablePair { .. } => "UnstablePair",
            GraphError::CapExceeded { .. } => "CapExceeded",
            GraphError::InvalidGraph(_) => "InvalidGraph",
            GraphError::IndexOutOfRange { .. } => "IndexOutOfRange",
            GraphError::UnknownKey(_) => "UnknownKey",
        }
    }
}

/// `2g - 2 + n > 0`.
pub fn is_stable_pair(g: u32, n: u32) -> bool {
    2 * g + n > 2
}

pub(crate) fn check_pair(g: u32, n: u32, cap: u32) -> Result<(), GraphError> {
    if !is_stable_pair(g, n) {
        return Err(GraphError::UnstablePair { g, n });
    }
    let complexity = 3 * g + n - 3;
    if complexity > cap {
        return Err(GraphError::CapExceeded { complexity, cap });
    }
    Ok(())
}

/// A half-edge: either a leg carrying a marking label, or one end of an edge.
/// End `0` of edge `e` sits at `edges[e][0]`, end `1` at `edges[e][1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfEdge {
    Leg(u32),
    Branch { edge: usize, end: u8 },
}

/// A connected multigraph with genus-labelled vertices, numbered legs and
/// loops allowed, satisfying stability at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct StableGraph {
    genera: Vec<u32>,
    legs: Vec<(u32, usize)>,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<u32>,
    legs: Vec<(u32, usize)>,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphJson> for StableGraph {
    type Error = GraphError;

    fn try_from(json: GraphJson) -> Result<Self, Self::Error> {
        StableGraph::new(
            json.vertices,
            json.legs,
            json.edges.into_iter().map(|(a, b)| [a, b]).collect(),
        )
    }
}

impl From<StableGraph> for GraphJson {
    fn from(graph: StableGraph) -> Self {
        GraphJson {
            vertices: graph.genera,
            legs: graph.legs,
            edges: graph.edges.into_iter().map(|[a, b]| (a, b)).collect(),
        }
    }
}

/// Boundary-type predicates of a stable graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphClass {
    pub smooth: bool,
    pub compact_type: bool,
    pub rational_tails: bool,
    pub has_nonseparating_edge: bool,
    pub has_separating_edge: bool,
}

impl StableGraph {
    /// Builds a graph and checks every stable-graph invariant.
    pub fn new(
        genera: Vec<u32>,
        legs: Vec<(u32, usize)>,
        edges: Vec<[usize; 2]>,
    ) -> Result<Self, GraphError> {
        let graph = StableGraph { genera, legs, edges };
        graph.validate()?;
        Ok(graph)
    }

    pub(crate) fn from_parts(genera: Vec<u32>, legs: Vec<(u32, usize)>, edges: Vec<[usize; 2]>) -> Self {
        let graph = StableGraph { genera, legs, edges };
        debug_assert!(graph.validate().is_ok(), "{:?}", graph.validate());
        graph
    }

    /// The one-vertex graph of genus `g` with legs `1..=n`.
    pub fn smooth(g: u32, n: u32) -> Result<Self, GraphError> {
        if !is_stable_pair(g, n) {
            return Err(GraphError::UnstablePair { g, n });
        }
        Ok(StableGraph {
            genera: vec![g],
            legs: (1..=n).map(|l| (l, 0)).collect(),
            edges: Vec::new(),
        })
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let nv = self.genera.len();
        if nv == 0 {
            return Err(GraphError::InvalidGraph("no vertices".into()));
        }
        for &(label, v) in &self.legs {
            if v >= nv {
                return Err(GraphError::InvalidGraph(format!("leg {label} attached to missing vertex {v}")));
            }
        }
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            if a >= nv || b >= nv {
                return Err(GraphError::InvalidGraph(format!("edge {e} has a missing endpoint")));
            }
        }
        let mut labels: Vec<u32> = self.legs.iter().map(|&(l, _)| l).collect();
        labels.sort_unstable();
        if labels.iter().enumerate().any(|(i, &l)| l as usize != i + 1) {
            return Err(GraphError::InvalidGraph(format!(
                "leg labels {labels:?} are not exactly 1..={}",
                self.legs.len()
            )));
        }
        for v in 0..nv {
            let g = self.genera[v];
            let n = self.valence(v) as u32;
            if 2 * g + n <= 2 {
                return Err(GraphError::InvalidGraph(format!(
                    "vertex {v} of genus {g} and valence {n} is unstable"
                )));
            }
        }
        if !self.is_connected_without(None) {
            return Err(GraphError::InvalidGraph("graph is disconnected".into()));
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_legs(&self) -> u32 {
        self.legs.len() as u32
    }

    pub fn vertex_genus(&self, v: usize) -> u32 {
        self.genera[v]
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn legs(&self) -> &[(u32, usize)] {
        &self.legs
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Arithmetic genus `sum g(v) + #E - #V + 1`.
    pub fn genus(&self) -> u32 {
        let sum: u32 = self.genera.iter().sum();
        sum + self.edges.len() as u32 + 1 - self.genera.len() as u32
    }

    /// `n(v)`: legs plus edge ends at `v`, a loop counting twice.
    pub fn valence(&self, v: usize) -> usize {
        let legs = self.legs.iter().filter(|&&(_, w)| w == v).count();
        let ends = self.edges.iter().map(|&[a, b]| (a == v) as usize + (b == v) as usize).sum::<usize>();
        legs + ends
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let [a, b] = self.edges[e];
        a == b
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&[a, b]| a == v && b == v).count()
    }

    /// Number of edges between distinct vertices `v` and `w`.
    pub fn multiplicity(&self, v: usize, w: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&[a, b]| (a == v && b == w) || (a == w && b == v))
            .count()
    }

    pub fn vertex_of(&self, h: HalfEdge) -> Option<usize> {
        match h {
            HalfEdge::Leg(label) => self.legs.iter().find(|&&(l, _)| l == label).map(|&(_, v)| v),
            HalfEdge::Branch { edge, end } => self.edges.get(edge).map(|ends| ends[end as usize & 1]),
        }
    }

    /// All half-edges, legs first (in label order) then edge ends.
    pub fn half_edges(&self) -> Vec<HalfEdge> {
        let mut labels: Vec<u32> = self.legs.iter().map(|&(l, _)| l).collect();
        labels.sort_unstable();
        labels
            .into_iter()
            .map(HalfEdge::Leg)
            .chain((0..self.edges.len()).flat_map(|e| [0u8, 1].map(|end| HalfEdge::Branch { edge: e, end })))
            .collect()
    }

    /// Half-edges incident to `v`.
    pub fn half_edges_at(&self, v: usize) -> Vec<HalfEdge> {
        self.half_edges()
            .into_iter()
            .filter(|&h| self.vertex_of(h) == Some(v))
            .collect()
    }

    fn is_connected_without(&self, skip: Option<usize>) -> bool {
        let nv = self.genera.len();
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (e, &[a, b]) in self.edges.iter().enumerate() {
                if Some(e) == skip {
                    continue;
                }
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// An edge is separating iff it is not a loop and removing it disconnects the graph.
    pub fn is_separating(&self, e: usize) -> bool {
        !self.is_loop(e) && !self.is_connected_without(Some(e))
    }

    pub fn classify(&self) -> GraphClass {
        let g = self.genus();
        let smooth = self.edges.is_empty();
        let has_separating_edge = (0..self.edges.len()).any(|e| self.is_separating(e));
        let has_nonseparating_edge = (0..self.edges.len()).any(|e| !self.is_separating(e));
        let compact_type = !has_nonseparating_edge;
        let rational_tails = compact_type && self.genera.iter().any(|&gv| gv == g);
        GraphClass {
            smooth,
            compact_type,
            rational_tails,
            has_nonseparating_edge,
            has_separating_edge,
        }
    }

    /// Contracts edge `e`: a loop raises its vertex's genus by one, any other
    /// edge merges its endpoints (summing genera).
    pub fn contract_edge(&self, e: usize) -> Result<StableGraph, GraphError> {
        let len = self.edges.len();
        if e >= len {
            return Err(GraphError::IndexOutOfRange { index: e, len });
        }
        let [a, b] = self.edges[e];
        let mut genera = self.genera.clone();
        let mut edges = self.edges.clone();
        edges.remove(e);
        if a == b {
            genera[a] += 1;
            return Ok(StableGraph::from_parts(genera, self.legs.clone(), edges));
        }
        let (keep, gone) = (a.min(b), a.max(b));
        genera[keep] += genera[gone];
        genera.remove(gone);
        let remap = |v: usize| match v.cmp(&gone) {
            std::cmp::Ordering::Less => v,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => v - 1,
        };
        let legs = self.legs.iter().map(|&(l, v)| (l, remap(v))).collect();
        let edges = edges.into_iter().map(|[x, y]| [remap(x), remap(y)]).collect();
        Ok(StableGraph::from_parts(genera, legs, edges))
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        canon::canonical_key(self, None)
    }

    /// Key of the graph together with decorations that isomorphisms must preserve.
    pub fn canonical_key_decorated(&self, dec: &Decorations) -> CanonicalKey {
        canon::canonical_key(self, Some(dec))
    }

    /// Order of the group of leg-fixing automorphisms acting on half-edges.
    pub fn automorphism_count(&self) -> u64 {
        let vertex_autos = canon::vertex_automorphisms(self) as u64;
        let mut lifts = 1u64;
        let nv = self.genera.len();
        for v in 0..nv {
            let l = self.loops_at(v) as u64;
            lifts *= factorial(l) * (1u64 << l);
            for w in v + 1..nv {
                lifts *= factorial(self.multiplicity(v, w) as u64);
            }
        }
        vertex_autos * lifts
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        serde_json::from_str(s).map_err(|e| GraphError::InvalidGraph(e.to_string()))
    }
}

impl fmt::Display for StableGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (v, g) in self.genera.iter().enumerate() {
            if v > 0 {
                f.write_str(" ")?;
            }
            let legs: BTreeSet<u32> = self.legs.iter().filter(|&&(_, w)| w == v).map(|&(l, _)| l).collect();
            write!(f, "v{v}:g{g}")?;
            if !legs.is_empty() {
                let legs: Vec<String> = legs.iter().map(u32::to_string).collect();
                write!(f, "({})", legs.join(","))?;
            }
        }
        f.write_str("]")?;
        for [a, b] in &self.edges {
            write!(f, " {a}-{b}")?;
        }
        Ok(())
    }
}

impl FromStr for StableGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StableGraph::from_json(s)
    }
}

fn factorial(k: u64) -> u64 {
    (1..=k).product()
}
