//! Exact oracles for small instances: largest triangle-free subgraph,
//! minimum triangle hitting set, bipartization distance, and the
//! good-triangle fractional matching certificate.

use std::collections::VecDeque;

use crate::cuts;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::graph::{triangles, CutSpec, Graph, Pair};

/// Largest edge count accepted by the hitting-set search.
pub const MAX_HITTING_EDGES: usize = 40;

/// Hypergraph on the edges of a graph whose hyperedges are its triangles.
#[derive(Debug, Clone)]
pub struct TriangleHypergraph {
    /// Host edge count; the vertex set of the hypergraph.
    pub vertices: usize,
    pub hyperedges: Vec<[usize; 3]>,
    /// Triangles through each host edge.
    pub degree: Vec<usize>,
}

impl TriangleHypergraph {
    pub fn new(g: &Graph) -> Self {
        let tris = triangles(g);
        TriangleHypergraph {
            vertices: g.m(),
            hyperedges: tris.edge_ids,
            degree: tris.per_edge,
        }
    }
}

fn check_edges(g: &Graph) -> Result<()> {
    if g.m() > MAX_HITTING_EDGES {
        return Err(Error::BudgetExceeded {
            what: "edges",
            got: g.m(),
            limit: MAX_HITTING_EDGES,
        });
    }
    Ok(())
}

struct HittingSearch {
    tris: Vec<u64>,
    best: u32,
    best_set: u64,
}

impl HittingSearch {
    /// Edge-disjoint packing of the unhit triangles, each reduced to its
    /// still-allowed edges. `None` if some triangle can no longer be hit.
    fn packing_bound(&self, unhit: &[u64], forbidden: u64) -> Option<u32> {
        let mut used = 0u64;
        let mut size = 0;
        for &t in unhit {
            let allowed = t & !forbidden;
            if allowed == 0 {
                return None;
            }
            if allowed & used == 0 {
                used |= allowed;
                size += 1;
            }
        }
        Some(size)
    }

    fn search(&mut self, chosen: u64, forbidden: u64, count: u32) {
        let unhit: Vec<u64> = self
            .tris
            .iter()
            .copied()
            .filter(|&t| t & chosen == 0)
            .collect();
        if unhit.is_empty() {
            if count < self.best {
                self.best = count;
                self.best_set = chosen;
            }
            return;
        }
        let Some(lower) = self.packing_bound(&unhit, forbidden) else {
            return;
        };
        if count + lower >= self.best {
            return;
        }
        let target = unhit
            .iter()
            .copied()
            .min_by_key(|&t| (t & !forbidden).count_ones())
            .expect("nonempty");
        let mut edges: Vec<u32> = Vec::with_capacity(3);
        let mut rest = target & !forbidden;
        while rest != 0 {
            edges.push(rest.trailing_zeros());
            rest &= rest - 1;
        }
        // branch on the most-covering edge first
        edges.sort_by_key(|&e| {
            std::cmp::Reverse(unhit.iter().filter(|&&t| t >> e & 1 == 1).count())
        });
        let mut forbid = forbidden;
        for e in edges {
            self.search(chosen | 1 << e, forbid, count + 1);
            forbid |= 1 << e;
        }
    }
}

/// Exact minimum set of edges meeting every triangle, by branch and bound.
/// Limited to 40 edges.
pub fn min_triangle_hitting(g: &Graph) -> Result<(usize, Vec<Pair>)> {
    check_edges(g)?;
    let tris: Vec<u64> = triangles(g)
        .edge_ids
        .iter()
        .map(|ids| ids.iter().fold(0u64, |acc, &e| acc | 1 << e))
        .collect();
    let mut search = HittingSearch {
        tris,
        best: g.m() as u32 + 1,
        best_set: 0,
    };
    search.search(0, 0, 0);
    let set: Vec<Pair> = (0..g.m())
        .filter(|&e| search.best_set >> e & 1 == 1)
        .map(|e| g.edges()[e])
        .collect();
    Ok((set.len(), set))
}

/// Largest triangle-free subgraph: the complement of a minimum hitting set.
pub fn max_triangle_free(g: &Graph) -> Result<(usize, Vec<Pair>)> {
    let (_, hit) = min_triangle_hitting(g)?;
    let keep: Vec<Pair> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| hit.binary_search(e).is_err())
        .collect();
    Ok((keep.len(), keep))
}

/// `min over cuts Π of |F \ Π|` with a minimising cut; vertex 0 is kept off
/// the marked side. `F` must be a subset of `E(g)` and `n <= 24`.
pub fn min_bipartization(g: &Graph, f: &[Pair]) -> Result<(usize, CutSpec)> {
    cuts::check_budget(g.n())?;
    let sub = g.subgraph(f)?;
    let (count, w) = cuts::min_over_cuts(g.n(), sub.edges(), &[]);
    let side = BitVec::from_indices(g.n(), (0..g.n()).filter(|&v| w >> v & 1 == 1));
    Ok((count, CutSpec::from_mask(side)))
}

/// Two-colouring by BFS.
pub fn is_bipartite(g: &Graph) -> bool {
    let mut colour = vec![u8::MAX; g.n()];
    let mut queue = VecDeque::new();
    for root in 0..g.n() {
        if colour[root] != u8::MAX {
            continue;
        }
        colour[root] = 0;
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in g.incident(x) {
                if colour[y] == u8::MAX {
                    colour[y] = 1 - colour[x];
                    queue.push_back(y);
                } else if colour[y] == colour[x] {
                    return false;
                }
            }
        }
    }
    true
}

/// Edge-disjoint triangles chosen greedily in enumeration order.
pub fn greedy_triangle_packing(g: &Graph) -> Vec<[usize; 3]> {
    let tris = triangles(g);
    let mut used = vec![false; g.m()];
    let mut out = Vec::new();
    for (k, ids) in tris.edge_ids.iter().enumerate() {
        if ids.iter().all(|&e| !used[e]) {
            for &e in ids {
                used[e] = true;
            }
            out.push(tris.triples[k]);
        }
    }
    out
}

/// Uniform weight on good triangles.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub threshold: f64,
    /// Indices into the hypergraph's hyperedges.
    pub good: Vec<usize>,
    pub weight_each: f64,
    pub total_weight: f64,
    /// Largest per-edge sum of incident weights.
    pub max_load: f64,
    pub feasible: bool,
}

/// The default threshold `1.9 n q^2`.
pub fn default_threshold(n: usize, q: f64) -> f64 {
    1.9 * n as f64 * q * q
}

/// A triangle is good when each of its edges lies in at most `threshold`
/// triangles; good triangles get weight `1 / threshold`. Feasible iff no edge
/// carries more than total weight 1, in which case the total weight is a
/// lower bound for the fractional matching number and hence for every
/// triangle hitting set.
pub fn fractional_certificate(hyper: &TriangleHypergraph, threshold: f64) -> Result<Certificate> {
    if !(threshold > 0.0) {
        return Err(Error::Domain(format!(
            "certificate threshold must be positive, got {threshold}"
        )));
    }
    let good: Vec<usize> = hyper
        .hyperedges
        .iter()
        .enumerate()
        .filter(|(_, ids)| ids.iter().all(|&e| hyper.degree[e] as f64 <= threshold))
        .map(|(k, _)| k)
        .collect();
    let mut load = vec![0usize; hyper.vertices];
    for &k in &good {
        for &e in &hyper.hyperedges[k] {
            load[e] += 1;
        }
    }
    let max_count = load.iter().copied().max().unwrap_or(0);
    let weight_each = 1.0 / threshold;
    Ok(Certificate {
        threshold,
        total_weight: good.len() as f64 * weight_each,
        max_load: max_count as f64 * weight_each,
        feasible: max_count as f64 <= threshold,
        weight_each,
        good,
    })
}
