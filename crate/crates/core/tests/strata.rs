mod common;

use std::collections::BTreeSet;

use common::graphs::{permutations, Naive};
use strataforge::graph::{enumerate, is_stable_pair, HalfEdge, DEFAULT_CAP};
use strataforge::strata::{enumerate_decorated, forget_leg, socle_degree, DecoratedStratum, SpaceKind};
use strataforge::StableGraph;

/// A decoration in oracle form: psi on legs (by label order), psi on each
/// edge end, kappa multiset per vertex.
type Deco = (Vec<u32>, Vec<[u32; 2]>, Vec<Vec<u32>>);

fn partitions(total: u32, max: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=total.min(max)).rev() {
        for mut rest in partitions(total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn spread(slots: usize, total: u32) -> Vec<Vec<u32>> {
    if slots == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=total)
        .flat_map(|x| {
            spread(slots - 1, total - x).into_iter().map(move |mut rest| {
                rest.insert(0, x);
                rest
            })
        })
        .collect()
}

fn all_decorations(graph: &StableGraph, budget: u32) -> Vec<Deco> {
    let (nl, ne, nv) = (graph.legs().len(), graph.num_edges(), graph.num_vertices());
    let mut out = Vec::new();
    for psi_total in 0..=budget {
        for psi in spread(nl + 2 * ne, psi_total) {
            let kappa_total = budget - psi_total;
            for per_vertex in spread(nv, kappa_total) {
                let mut kappas: Vec<Vec<Vec<u32>>> = vec![vec![]];
                for &k in &per_vertex {
                    kappas = kappas
                        .into_iter()
                        .flat_map(|pre| {
                            partitions(k, k).into_iter().map(move |p| {
                                let mut next = pre.clone();
                                next.push(p);
                                next
                            })
                        })
                        .collect();
                }
                for kappa in kappas {
                    let leg_psi = psi[..nl].to_vec();
                    let edge_psi = (0..ne).map(|e| [psi[nl + 2 * e], psi[nl + 2 * e + 1]]).collect();
                    out.push((leg_psi, edge_psi, kappa));
                }
            }
        }
    }
    out
}

/// Every half-edge automorphism as (vertex map, edge map, end flips).
fn automorphisms(graph: &StableGraph) -> Vec<(Vec<usize>, Vec<usize>, Vec<bool>)> {
    let edges = graph.edges();
    let ne = edges.len();
    let mut out = Vec::new();
    for sigma in permutations(graph.num_vertices()) {
        if (0..graph.num_vertices()).any(|v| graph.vertex_genus(sigma[v]) != graph.vertex_genus(v))
            || graph.legs().iter().any(|&(_, v)| sigma[v] != v)
        {
            continue;
        }
        for phi in permutations(ne) {
            for flips in 0u32..(1 << ne) {
                let flip: Vec<bool> = (0..ne).map(|e| flips >> e & 1 == 1).collect();
                let ok = (0..ne).all(|e| {
                    let [a, b] = edges[e];
                    let [c, d] = edges[phi[e]];
                    let (c, d) = if flip[e] { (d, c) } else { (c, d) };
                    sigma[a] == c && sigma[b] == d
                });
                if ok {
                    out.push((sigma.clone(), phi.clone(), flip));
                }
            }
        }
    }
    out
}

fn orbit_min(deco: &Deco, auts: &[(Vec<usize>, Vec<usize>, Vec<bool>)]) -> Deco {
    auts.iter()
        .map(|(sigma, phi, flip)| {
            let mut edge_psi = vec![[0, 0]; deco.1.len()];
            for (e, &[x, y]) in deco.1.iter().enumerate() {
                edge_psi[phi[e]] = if flip[e] { [y, x] } else { [x, y] };
            }
            let mut kappa = vec![vec![]; deco.2.len()];
            for (v, k) in deco.2.iter().enumerate() {
                kappa[sigma[v]] = k.clone();
            }
            (deco.0.clone(), edge_psi, kappa)
        })
        .min()
        .expect("identity")
}

fn oracle_count(g: u32, n: u32, codim: u32) -> usize {
    let mut total = 0;
    for graph in enumerate(g, n, DEFAULT_CAP).unwrap() {
        let e = graph.num_edges() as u32;
        if e > codim {
            continue;
        }
        let auts = automorphisms(&graph);
        let orbits: BTreeSet<Deco> = all_decorations(&graph, codim - e).iter().map(|d| orbit_min(d, &auts)).collect();
        total += orbits.len();
    }
    total
}

#[test]
fn decorated_counts_match_orbit_oracle() {
    for g in 0..=2 {
        for n in 0..=7 {
            if !is_stable_pair(g, n) || 3 * g + n - 3 > 4 {
                continue;
            }
            for codim in 0..=(3 * g + n - 3) {
                let ours = enumerate_decorated(g, n, codim, DEFAULT_CAP).unwrap();
                assert_eq!(ours.len(), oracle_count(g, n, codim), "({g},{n}) codim {codim}");
                assert!(ours.iter().all(|s| s.codimension() == codim));
            }
        }
    }
}

#[test]
fn decorated_keys_are_distinct() {
    let strata = enumerate_decorated(1, 2, 2, DEFAULT_CAP).unwrap();
    let keys: BTreeSet<_> = strata.iter().map(DecoratedStratum::canonical_key).collect();
    assert_eq!(keys.len(), strata.len());
}

#[test]
fn decorated_json_round_trip() {
    for s in enumerate_decorated(1, 2, 2, DEFAULT_CAP).unwrap() {
        let text = serde_json::to_string(&s).unwrap();
        let back: DecoratedStratum = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}

#[test]
fn socle_degrees() {
    assert_eq!(socle_degree(SpaceKind::Stable, 2, 9).unwrap(), 12);
    assert_eq!(socle_degree(SpaceKind::CompactType, 3, 2).unwrap(), 5);
    assert_eq!(socle_degree(SpaceKind::Open, 0, 5).unwrap(), 2);
    assert_eq!(socle_degree(SpaceKind::Open, 4, 0).unwrap(), 2);
    for g in 0..6 {
        for n in 0..8 {
            if !is_stable_pair(g, n) {
                continue;
            }
            let degrees: Vec<u32> = [SpaceKind::Open, SpaceKind::RationalTails, SpaceKind::CompactType, SpaceKind::Stable]
                .iter()
                .map(|&k| socle_degree(k, g, n).unwrap())
                .collect();
            assert!(degrees.windows(2).all(|w| w[0] <= w[1]), "({g},{n}) {degrees:?}");
        }
    }
}

#[test]
fn forgetting_a_leg_hits_every_stratum() {
    // the forgetful map is surjective on boundary strata
    for (g, n) in [(0, 5), (1, 3), (2, 2)] {
        let image: BTreeSet<Naive> = enumerate(g, n, DEFAULT_CAP)
            .unwrap()
            .into_iter()
            .map(|gr| {
                let forgotten = forget_leg(&DecoratedStratum::undecorated(gr.clone()), n).unwrap();
                assert_eq!(forgotten.genus(), g);
                assert!(gr.num_edges() - forgotten.num_edges() <= 1);
                Naive::from_stable(&forgotten).canonical()
            })
            .collect();
        let target: BTreeSet<Naive> =
            enumerate(g, n - 1, DEFAULT_CAP).unwrap().iter().map(|gr| Naive::from_stable(gr).canonical()).collect();
        assert_eq!(image, target, "({g},{n})");
    }
}

#[test]
fn forget_relabels_higher_legs() {
    let gr = StableGraph::new(vec![1, 0], vec![(1, 0), (2, 1), (3, 1)], vec![[0, 1]]).unwrap();
    let out = forget_leg(&DecoratedStratum::undecorated(gr), 2).unwrap();
    // the genus-0 vertex becomes unstable and its remaining leg moves over
    assert_eq!(out.num_vertices(), 1);
    let mut legs = out.legs().to_vec();
    legs.sort();
    assert_eq!(legs, vec![(1, 0), (2, 0)]);
}

#[test]
fn psi_on_edges_serializes_as_pairs() {
    let gr = StableGraph::new(vec![0, 1], vec![(1, 0), (2, 0)], vec![[0, 1]]).unwrap();
    let mut s = DecoratedStratum::undecorated(gr);
    s.psi.insert(HalfEdge::Branch { edge: 0, end: 1 }, 2);
    let v: serde_json::Value = serde_json::to_value(&s).unwrap();
    assert!(v["psi"].is_array());
    assert_eq!(s.codimension(), 3);
}
