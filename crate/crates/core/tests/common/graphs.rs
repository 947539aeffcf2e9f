//! Naive stable-graph generation with brute-force isomorphism testing.
//!
//! A graph is stored as vertex genera, the vertex of each leg and a
//! symmetric edge-multiplicity matrix (diagonal = loop count). Two graphs
//! are isomorphic iff some vertex permutation maps one onto the other; we
//! try all of them.

use std::collections::BTreeSet;

use strataforge::StableGraph;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Naive {
    pub genera: Vec<u32>,
    /// `legs[i]` is the vertex carrying leg `i + 1`.
    pub legs: Vec<usize>,
    pub mult: Vec<Vec<u32>>,
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl Naive {
    pub fn from_stable(graph: &StableGraph) -> Naive {
        let nv = graph.num_vertices();
        let mut mult = vec![vec![0; nv]; nv];
        for &[a, b] in graph.edges() {
            mult[a][b] += 1;
            if a != b {
                mult[b][a] += 1;
            }
        }
        let mut legs: Vec<(u32, usize)> = graph.legs().to_vec();
        legs.sort();
        Naive { genera: graph.genera().to_vec(), legs: legs.into_iter().map(|(_, v)| v).collect(), mult }
    }

    pub fn nv(&self) -> usize {
        self.genera.len()
    }

    pub fn num_edges(&self) -> u32 {
        (0..self.nv()).map(|a| (a..self.nv()).map(|b| self.mult[a][b]).sum::<u32>()).sum()
    }

    pub fn valence(&self, v: usize) -> u32 {
        let edges: u32 = (0..self.nv()).map(|w| if w == v { 2 * self.mult[v][v] } else { self.mult[v][w] }).sum();
        edges + self.legs.iter().filter(|&&x| x == v).count() as u32
    }

    pub fn is_stable(&self) -> bool {
        (0..self.nv()).all(|v| 2 * self.genera[v] + self.valence(v) > 2)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.nv()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..self.nv() {
                if self.mult[v][w] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The graph relabelled so that old vertex `order[i]` becomes vertex `i`.
    pub fn relabel(&self, order: &[usize]) -> Naive {
        let mut inv = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        Naive {
            genera: order.iter().map(|&o| self.genera[o]).collect(),
            legs: self.legs.iter().map(|&v| inv[v]).collect(),
            mult: order.iter().map(|&a| order.iter().map(|&b| self.mult[a][b]).collect()).collect(),
        }
    }

    /// Smallest relabelling over all vertex permutations.
    pub fn canonical(&self) -> Naive {
        permutations(self.nv()).iter().map(|p| self.relabel(p)).min().expect("at least one permutation")
    }

    pub fn isomorphic(&self, other: &Naive) -> bool {
        self.nv() == other.nv() && permutations(self.nv()).iter().any(|p| &self.relabel(p) == other)
    }

    /// Vertex permutations preserving genera, legs and multiplicities.
    pub fn vertex_automorphisms(&self) -> Vec<Vec<usize>> {
        permutations(self.nv()).into_iter().filter(|p| &self.relabel(p) == self).collect()
    }
}

fn compositions(slots: usize, total: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() + 1 == slots {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for x in 0..=total {
        cur.push(x);
        compositions(slots, total - x, cur, out);
        cur.pop();
    }
}

/// Connected vertex-and-edge skeletons (no legs), one per isomorphism class.
fn skeletons(g: u32, n: u32) -> Vec<Naive> {
    let max_edges = 3 * g + n - 3;
    let max_vertices = (2 * g + n - 2) as usize;
    let mut reps: Vec<Naive> = Vec::new();
    for nv in 1..=max_vertices {
        // weakly increasing genera suffice: every graph has such a relabelling
        let mut genera_lists = Vec::new();
        fn genera(nv: usize, left: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == nv {
                out.push(cur.clone());
                return;
            }
            for x in min..=left {
                cur.push(x);
                genera(nv, left - x, x, cur, out);
                cur.pop();
            }
        }
        genera(nv, g, 0, &mut Vec::new(), &mut genera_lists);
        let pairs: Vec<(usize, usize)> = (0..nv).flat_map(|a| (a..nv).map(move |b| (a, b))).collect();
        for gl in genera_lists {
            let h1 = g - gl.iter().sum::<u32>();
            let edges = h1 + nv as u32 - 1;
            if edges > max_edges {
                continue;
            }
            let mut mults = Vec::new();
            compositions(pairs.len(), edges, &mut Vec::new(), &mut mults);
            for m in mults {
                let mut mult = vec![vec![0; nv]; nv];
                for (&(a, b), &k) in pairs.iter().zip(&m) {
                    mult[a][b] = k;
                    mult[b][a] = k;
                }
                let cand = Naive { genera: gl.clone(), legs: Vec::new(), mult };
                if !cand.is_connected() {
                    continue;
                }
                if !reps.iter().any(|r| r.isomorphic(&cand)) {
                    reps.push(cand);
                }
            }
        }
    }
    reps
}

/// Advances `digits` as a base-`base` counter; false after the last value.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// All stable graphs of type `(g, n)`, one canonical form per class.
pub fn classes(g: u32, n: u32) -> BTreeSet<Naive> {
    let mut out = BTreeSet::new();
    for skel in skeletons(g, n) {
        let nv = skel.nv();
        let auts = skel.vertex_automorphisms();
        let inverses: Vec<Vec<usize>> = auts
            .iter()
            .map(|p| {
                let mut inv = vec![0; nv];
                for (new, &old) in p.iter().enumerate() {
                    inv[old] = new;
                }
                inv
            })
            .collect();
        let base_valence: Vec<u32> = (0..nv).map(|v| skel.valence(v)).collect();
        let mut legs = vec![0usize; n as usize];
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        loop {
            let mut val = base_valence.clone();
            for &v in &legs {
                val[v] += 1;
            }
            if (0..nv).all(|v| 2 * skel.genera[v] + val[v] > 2) {
                // orbit representative under the skeleton's symmetries
                let rep = inverses
                    .iter()
                    .map(|inv| legs.iter().map(|&v| inv[v]).collect::<Vec<_>>())
                    .min()
                    .expect("identity is an automorphism");
                if seen.insert(rep) {
                    out.insert(Naive { legs: legs.clone(), ..skel.clone() }.canonical());
                }
            }
            if !advance(&mut legs, nv) {
                break;
            }
        }
    }
    out
}

/// Half-edge automorphisms counted by brute force: pairs of a vertex
/// permutation and a permutation of edge half-edges that respect the edge
/// pairing, incidence, genera and legs.
pub fn half_edge_automorphisms(graph: &StableGraph) -> u64 {
    let edges = graph.edges();
    let nh = 2 * edges.len();
    let vertex_of = |h: usize| edges[h / 2][h % 2];
    let mut count = 0;
    for sigma in permutations(graph.num_vertices()) {
        if (0..graph.num_vertices()).any(|v| graph.vertex_genus(sigma[v]) != graph.vertex_genus(v)) {
            continue;
        }
        if graph.legs().iter().any(|&(_, v)| sigma[v] != v) {
            continue;
        }
        for pi in permutations(nh) {
            let incident = (0..nh).all(|h| vertex_of(pi[h]) == sigma[vertex_of(h)]);
            let paired = (0..nh).all(|h| pi[h ^ 1] == pi[h] ^ 1);
            if incident && paired {
                count += 1;
            }
        }
    }
    count
}
