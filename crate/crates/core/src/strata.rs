//! Decorated stratum classes (the additive spanning set of the tautological
//! ring) and socle degrees.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{self, CanonicalKey, Decorations, GraphError, HalfEdge, StableGraph};
use crate::hurwitz::partitions;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no leg labelled {0}")]
    UnknownLabel(u32),
    #[error("forgetting a leg leaves the unstable pair (g, n) = ({g}, {n})")]
    UnstableResult { g: u32, n: u32 },
    #[error("codimension {codim} exceeds the dimension {dim}")]
    CodimOutOfRange { codim: u32, dim: u32 },
}

impl StrataError {
    pub fn name(&self) -> &'static str {
        match self {
            StrataError::Graph(e) => e.name(),
            StrataError::UnknownLabel(_) => "UnknownLabel",
            StrataError::UnstableResult { .. } => "UnstableResult",
            StrataError::CodimOutOfRange { .. } => "CodimOutOfRange",
        }
    }
}

/// Which moduli space a statement is about, ordered by strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Open,
    RationalTails,
    CompactType,
    Stable,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 4] = [SpaceKind::Open, SpaceKind::RationalTails, SpaceKind::CompactType, SpaceKind::Stable];
}

/// Top degree in which the tautological ring is one-dimensional.
pub fn socle_degree(kind: SpaceKind, g: u32, n: u32) -> Result<u32, StrataError> {
    if !graph::is_stable_pair(g, n) {
        return Err(GraphError::UnstablePair { g, n }.into());
    }
    Ok(match kind {
        SpaceKind::Open | SpaceKind::RationalTails => g + n - 2 - u32::from(g == 0),
        SpaceKind::CompactType => 2 * g + n - 3,
        SpaceKind::Stable => 3 * g + n - 3,
    })
}

/// A stable graph with psi exponents on half-edges and a multiset of kappa
/// indices on each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedStratum {
    pub graph: StableGraph,
    /// Nonzero psi exponents only.
    #[serde(with = "psi_pairs")]
    pub psi: BTreeMap<HalfEdge, u32>,
    /// Sorted (weakly decreasing) kappa indices per vertex.
    pub kappa: Vec<Vec<u32>>,
}

impl DecoratedStratum {
    pub fn undecorated(graph: StableGraph) -> Self {
        let kappa = vec![Vec::new(); graph.num_vertices()];
        DecoratedStratum { graph, psi: BTreeMap::new(), kappa }
    }

    pub fn codimension(&self) -> u32 {
        self.graph.num_edges() as u32 + self.psi.values().sum::<u32>() + self.kappa.iter().flatten().sum::<u32>()
    }

    fn decorations(&self) -> Decorations {
        let mut dec = Decorations::trivial(&self.graph);
        dec.vertex = self.kappa.clone();
        for (i, &(label, _)) in self.graph.legs().iter().enumerate() {
            dec.leg[i] = self.psi.get(&HalfEdge::Leg(label)).copied().unwrap_or(0);
        }
        for (e, ends) in dec.edge.iter_mut().enumerate() {
            for end in 0..2u8 {
                ends[end as usize] = self.psi.get(&HalfEdge::Branch { edge: e, end }).copied().unwrap_or(0);
            }
        }
        dec
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        self.graph.canonical_key_decorated(&self.decorations())
    }
}

impl std::fmt::Display for DecoratedStratum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.graph)?;
        for (h, e) in &self.psi {
            match h {
                HalfEdge::Leg(l) => write!(f, " psi[leg {l}]^{e}")?,
                HalfEdge::Branch { edge, end } => write!(f, " psi[edge {edge}.{end}]^{e}")?,
            }
        }
        for (v, ks) in self.kappa.iter().enumerate() {
            for k in ks {
                write!(f, " kappa{k}[v{v}]")?;
            }
        }
        Ok(())
    }
}

/// JSON has no structured map keys, so psi exponents travel as pairs.
mod psi_pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::graph::HalfEdge;

    pub fn serialize<S: Serializer>(psi: &BTreeMap<HalfEdge, u32>, s: S) -> Result<S::Ok, S::Error> {
        psi.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<HalfEdge, u32>, D::Error> {
        Ok(Vec::<(HalfEdge, u32)>::deserialize(d)?.into_iter().collect())
    }
}

/// All decorated strata of exactly codimension `codim`, one per
/// isomorphism class of decorated graph, sorted by canonical key.
pub fn enumerate_decorated(g: u32, n: u32, codim: u32, cap: u32) -> Result<Vec<DecoratedStratum>, StrataError> {
    let levels = graph::enumerate_levels(g, n, codim, cap)?;
    let dim = 3 * g + n - 3;
    if codim > dim {
        return Err(StrataError::CodimOutOfRange { codim, dim });
    }
    let mut found = BTreeMap::new();
    for (edges, level) in levels.iter().enumerate() {
        let budget = codim - edges as u32;
        for graph in level {
            let slots = graph.half_edges();
            let mut psi = vec![0u32; slots.len()];
            distribute_psi(graph, &slots, 0, budget, &mut psi, &mut |graph, psi, left| {
                let nv = graph.num_vertices();
                let mut kappa = vec![Vec::new(); nv];
                distribute_kappa(0, left, &mut kappa, &mut |kappa| {
                    let stratum = DecoratedStratum {
                        graph: graph.clone(),
                        psi: slots.iter().zip(psi).filter(|(_, &p)| p > 0).map(|(&h, &p)| (h, p)).collect(),
                        kappa: kappa.to_vec(),
                    };
                    found.entry(stratum.canonical_key()).or_insert(stratum);
                });
            });
        }
    }
    Ok(found.into_values().collect())
}

fn distribute_psi<F>(graph: &StableGraph, slots: &[HalfEdge], at: usize, left: u32, psi: &mut [u32], emit: &mut F)
where
    F: FnMut(&StableGraph, &[u32], u32),
{
    if at == slots.len() {
        emit(graph, psi, left);
        return;
    }
    for p in 0..=left {
        psi[at] = p;
        distribute_psi(graph, slots, at + 1, left - p, psi, emit);
    }
    psi[at] = 0;
}

fn distribute_kappa<F>(v: usize, left: u32, kappa: &mut [Vec<u32>], emit: &mut F)
where
    F: FnMut(&[Vec<u32>]),
{
    if v == kappa.len() {
        if left == 0 {
            emit(kappa);
        }
        return;
    }
    for here in 0..=left {
        for part in partitions(here) {
            kappa[v] = part;
            distribute_kappa(v + 1, left - here, kappa, emit);
        }
    }
    kappa[v].clear();
}

/// Forgets leg `label` of the underlying graph and stabilizes. Legs with
/// larger labels shift down by one; decorations are dropped.
pub fn forget_leg(stratum: &DecoratedStratum, label: u32) -> Result<StableGraph, StrataError> {
    let graph = &stratum.graph;
    let &(_, v) = graph
        .legs()
        .iter()
        .find(|&&(l, _)| l == label)
        .ok_or(StrataError::UnknownLabel(label))?;
    let (g, n) = (graph.genus(), graph.num_legs());
    if !graph::is_stable_pair(g, n - 1) {
        return Err(StrataError::UnstableResult { g, n: n - 1 });
    }
    let mut genera = graph.genera().to_vec();
    let mut legs: Vec<(u32, usize)> = graph
        .legs()
        .iter()
        .filter(|&&(l, _)| l != label)
        .map(|&(l, w)| (if l > label { l - 1 } else { l }, w))
        .collect();
    let mut edges = graph.edges().to_vec();

    let valence = graph.valence(v) - 1;
    if 2 * genera[v] + valence as u32 > 2 {
        return Ok(StableGraph::from_parts(genera, legs, edges));
    }
    // genus 0 with two remaining half-edges
    let incident: Vec<usize> = (0..edges.len()).filter(|&e| edges[e].contains(&v)).collect();
    let other = |e: usize| if edges[e][0] == v { edges[e][1] } else { edges[e][0] };
    match incident.as_slice() {
        [e1, e2] => {
            let (x, y) = (other(*e1), other(*e2));
            let (hi, lo) = if e1 > e2 { (*e1, *e2) } else { (*e2, *e1) };
            edges.remove(hi);
            edges.remove(lo);
            edges.push([x, y]);
        }
        [e] => {
            let x = other(*e);
            let leg = legs.iter_mut().find(|(_, w)| *w == v).expect("remaining half-edge is a leg");
            leg.1 = x;
            edges.remove(*e);
        }
        _ => unreachable!("a stable pair never reduces to an isolated genus-0 vertex"),
    }
    genera.remove(v);
    let shift = |w: usize| if w > v { w - 1 } else { w };
    for leg in &mut legs {
        leg.1 = shift(leg.1);
    }
    for [a, b] in &mut edges {
        *a = shift(*a);
        *b = shift(*b);
    }
    Ok(StableGraph::from_parts(genera, legs, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DEFAULT_CAP;

    #[test]
    fn socle_examples() {
        assert_eq!(socle_degree(SpaceKind::Stable, 2, 9).unwrap(), 12);
        assert_eq!(socle_degree(SpaceKind::CompactType, 2, 0).unwrap(), 1);
        assert_eq!(socle_degree(SpaceKind::RationalTails, 0, 3).unwrap(), 0);
        assert_eq!(socle_degree(SpaceKind::Open, 3, 1).unwrap(), 2);
        assert_eq!(socle_degree(SpaceKind::Stable, 1, 0).unwrap_err().name(), "UnstablePair");
    }

    #[test]
    fn socle_gap_is_genus() {
        for g in 0..8 {
            for n in 0..10 {
                if graph::is_stable_pair(g, n) {
                    let gap = socle_degree(SpaceKind::Stable, g, n).unwrap()
                        - socle_degree(SpaceKind::CompactType, g, n).unwrap();
                    assert_eq!(gap, g);
                }
            }
        }
    }

    #[test]
    fn decorated_counts() {
        assert_eq!(enumerate_decorated(1, 1, 0, DEFAULT_CAP).unwrap().len(), 1);
        assert_eq!(enumerate_decorated(1, 1, 1, DEFAULT_CAP).unwrap().len(), 3);
        assert_eq!(enumerate_decorated(0, 4, 1, DEFAULT_CAP).unwrap().len(), 8);
        assert_eq!(enumerate_decorated(0, 3, 1, DEFAULT_CAP).unwrap_err().name(), "CodimOutOfRange");
    }

    #[test]
    fn forget_leg_cases() {
        let one = DecoratedStratum::undecorated(StableGraph::smooth(1, 1).unwrap());
        assert_eq!(forget_leg(&one, 1).unwrap_err().name(), "UnstableResult");
        assert_eq!(forget_leg(&one, 2).unwrap_err().name(), "UnknownLabel");

        let four = DecoratedStratum::undecorated(StableGraph::smooth(0, 4).unwrap());
        assert_eq!(forget_leg(&four, 4).unwrap(), StableGraph::smooth(0, 3).unwrap());

        // genus-0 vertex holding leg 1 and a double edge to a genus-1 vertex
        let g = StableGraph::new(vec![1, 0], vec![(1, 1)], vec![[0, 1], [0, 1]]).unwrap();
        let forgotten = forget_leg(&DecoratedStratum::undecorated(g), 1).unwrap();
        assert_eq!(forgotten, StableGraph::new(vec![1], vec![], vec![[0, 0]]).unwrap());
        assert_eq!(forgotten.contract_edge(0).unwrap(), StableGraph::smooth(2, 0).unwrap());

        // genus-0 tail with legs 1, 2 on a genus-2 vertex: the tail disappears
        let tail = StableGraph::new(vec![2, 0], vec![(1, 1), (2, 1), (3, 0)], vec![[0, 1]]).unwrap();
        let forgotten = forget_leg(&DecoratedStratum::undecorated(tail), 1).unwrap();
        assert_eq!(forgotten.canonical_key(), StableGraph::smooth(2, 2).unwrap().canonical_key());
    }
}
