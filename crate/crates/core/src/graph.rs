//! Simple graphs on `[n]`, seeded G(n, p) samplers, triangles, cuts and the
//! pair sets over K_n used by the two-round exposure argument.
//!
//! Edges are indexed lexicographically by `(u, v)` with `u < v`. Every edge
//! vector elsewhere in the crate uses this indexing.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::io::{self, Write};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// An unordered vertex pair, always stored with the smaller vertex first.
pub type Pair = (usize, usize);

#[inline]
fn ordered(u: usize, v: usize) -> Pair {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Pair>,
    adj: Vec<BitVec>,
    // (neighbour, edge index), sorted by neighbour
    incident: Vec<Vec<(usize, usize)>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![BitVec::zeros(n); n],
            incident: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from unordered pairs in any order. Rejects self-loops,
    /// duplicates and out-of-range vertices.
    pub fn from_edges<I: IntoIterator<Item = Pair>>(n: usize, pairs: I) -> Result<Self> {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push(ordered(u, v));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unchecked(n, edges))
    }

    fn from_sorted_unchecked(n: usize, edges: Vec<Pair>) -> Self {
        let mut adj = vec![BitVec::zeros(n); n];
        let mut incident = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].set(v, true);
            adj[v].set(u, true);
            incident[u].push((v, i));
            incident[v].push((u, i));
        }
        for list in &mut incident {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adj,
            incident,
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_sorted_unchecked(n, edges)
    }

    /// The cycle `0-1-...-(k-1)-0`. Requires `k >= 3`.
    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3, "a cycle needs at least 3 vertices");
        Self::from_edges(k, (0..k).map(|i| (i, (i + 1) % k))).expect("valid cycle")
    }

    pub fn path(k: usize) -> Self {
        Self::from_edges(k, (1..k).map(|i| (i - 1, i))).expect("valid path")
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        Self::from_sorted_unchecked(self.n + other.n, edges)
    }

    /// Subgraph on the same vertex set with the given edges, which must all
    /// belong to `self`.
    pub fn subgraph(&self, pairs: &[Pair]) -> Result<Self> {
        let g = Graph::from_edges(self.n, pairs.iter().copied())?;
        if let Some(&(u, v)) = g.edges.iter().find(|&&(u, v)| !self.has_edge(u, v)) {
            return Err(Error::NotASubgraph(u, v));
        }
        Ok(g)
    }

    /// Edge-disjoint union of two graphs on the same vertex set.
    pub fn union(&self, other: &Graph) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Domain("union of graphs with different n".into()));
        }
        Graph::from_edges(self.n, self.edges.iter().chain(&other.edges).copied())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Pair] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitVec {
        &self.adj[v]
    }

    /// `(neighbour, edge index)` pairs at `v`, by neighbour.
    #[inline]
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incident[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].get(v)
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n {
            return None;
        }
        let list = &self.incident[u];
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|k| list[k].1)
    }

    /// Edge indices of the given pairs; errors if any pair is not an edge.
    pub fn edge_indices(&self, pairs: &[Pair]) -> Result<Vec<usize>> {
        pairs
            .iter()
            .map(|&(u, v)| self.edge_index(u, v).ok_or(Error::NotASubgraph(u, v)))
            .collect()
    }

    pub fn spanning_forest(&self) -> SpanningForest {
        SpanningForest::new(self)
    }

    /// Plain-text form: `n m` header then one `u v` line per edge.
    pub fn write_text<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{} {}", self.n, self.m())?;
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Reader for the [`Graph::to_text`] format. Edges may come in any order
    /// and orientation; self-loops, repeats and a wrong edge count are errors.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_pair = |line: usize, l: &str| -> Result<(usize, usize)> {
            let err = |msg: &str| Error::Parse {
                line,
                msg: msg.to_string(),
            };
            let mut it = l.split_whitespace();
            let a = it.next().ok_or_else(|| err("missing field"))?;
            let b = it.next().ok_or_else(|| err("missing field"))?;
            if it.next().is_some() {
                return Err(err("trailing fields"));
            }
            let a = a.parse().map_err(|_| err("not an integer"))?;
            let b = b.parse().map_err(|_| err("not an integer"))?;
            Ok((a, b))
        };
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let (u, v) = parse_pair(line, l)?;
            let bad = |msg: String| Error::Parse { line, msg };
            if u == v {
                return Err(bad(format!("self-loop at {u}")));
            }
            if u.max(v) >= n {
                return Err(bad(format!("vertex {} out of range for n = {n}", u.max(v))));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Self::from_edges(n, edges)
    }
}

/// BFS spanning forest, roots at the lowest vertex of each component and
/// neighbours visited in increasing order.
#[derive(Debug, Clone)]
pub struct SpanningForest {
    /// `(parent vertex, edge index)`, `None` at roots.
    pub parent: Vec<Option<(usize, usize)>>,
    pub depth: Vec<usize>,
    pub component: Vec<usize>,
    pub components: usize,
    pub is_tree_edge: Vec<bool>,
}

impl SpanningForest {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut component = vec![usize::MAX; n];
        let mut is_tree_edge = vec![false; g.m()];
        let mut components = 0;
        let mut queue = VecDeque::new();
        for root in 0..n {
            if component[root] != usize::MAX {
                continue;
            }
            component[root] = components;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for &(y, e) in g.incident(x) {
                    if component[y] == usize::MAX {
                        component[y] = components;
                        parent[y] = Some((x, e));
                        depth[y] = depth[x] + 1;
                        is_tree_edge[e] = true;
                        queue.push_back(y);
                    }
                }
            }
            components += 1;
        }
        SpanningForest {
            parent,
            depth,
            component,
            components,
            is_tree_edge,
        }
    }

    /// Tree edges on the path between `u` and `v` (same component).
    pub fn path_edges(&self, mut u: usize, mut v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while self.depth[u] > self.depth[v] {
            let (pu, e) = self.parent[u].expect("non-root");
            out.push(e);
            u = pu;
        }
        while self.depth[v] > self.depth[u] {
            let (pv, e) = self.parent[v].expect("non-root");
            out.push(e);
            v = pv;
        }
        while u != v {
            let (pu, eu) = self.parent[u].expect("non-root");
            let (pv, ev) = self.parent[v].expect("non-root");
            out.push(eu);
            out.push(ev);
            u = pu;
            v = pv;
        }
        out
    }
}

/// Uniform draws in `[0, 1)` from a ChaCha8 stream seeded with
/// `seed_from_u64`; each draw takes the top 53 bits of one `next_u64`.
/// Both the cipher and this conversion are fixed, so a seed always yields the
/// same stream.
pub struct UnitStream(ChaCha8Rng);

impl UnitStream {
    pub fn new(seed: u64) -> Self {
        UnitStream(ChaCha8Rng::seed_from_u64(seed))
    }

    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// G(n, p): pairs are visited in lexicographic order and pair `k` is kept iff
/// the `k`-th draw is `< p`. One draw per pair regardless of `p`, so a fixed
/// seed gives nested graphs as `p` grows.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    if n == 0 {
        return Err(Error::NoVertices);
    }
    let mut stream = UnitStream::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if stream.next_f64() < p {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_sorted_unchecked(n, edges))
}

/// Two-round exposure: `G0 ~ G(n, theta p)`, then each pair outside `G0`
/// joins `G1` with probability `(1 - theta) p / (1 - theta p)`.
///
/// Per pair in lexicographic order: one draw decides membership in `G0`; if
/// the pair missed `G0`, a second draw decides `G1`.
pub fn sample_two_round(n: usize, p: f64, theta: f64, seed: u64) -> Result<(Graph, Graph)> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidTheta(theta));
    }
    check_probability(p)?;
    if n == 0 {
        return Err(Error::NoVertices);
    }
    let p0 = theta * p;
    let q = top_up_probability(p, theta);
    let mut stream = UnitStream::new(seed);
    let (mut e0, mut e1) = (Vec::new(), Vec::new());
    for u in 0..n {
        for v in u + 1..n {
            if stream.next_f64() < p0 {
                e0.push((u, v));
            } else if stream.next_f64() < q {
                e1.push((u, v));
            }
        }
    }
    Ok((
        Graph::from_sorted_unchecked(n, e0),
        Graph::from_sorted_unchecked(n, e1),
    ))
}

/// Second-round probability `(1 - theta) p / (1 - theta p)`.
pub fn top_up_probability(p: f64, theta: f64) -> f64 {
    ((1.0 - theta) * p / (1.0 - theta * p)).clamp(0.0, 1.0)
}

/// All triangles of a graph with per-edge incidence counts.
#[derive(Debug, Clone)]
pub struct TriangleSet {
    /// `(x, y, z)` with `x < y < z`, in lexicographic order.
    pub triples: Vec<[usize; 3]>,
    /// Edge indices `[xy, xz, yz]` for each triple.
    pub edge_ids: Vec<[usize; 3]>,
    /// Number of triangles through each edge.
    pub per_edge: Vec<usize>,
}

impl TriangleSet {
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Indicator of triangle `k` as an edge vector.
    pub fn indicator(&self, k: usize, m: usize) -> BitVec {
        BitVec::from_indices(m, self.edge_ids[k])
    }
}

/// Exact triangle enumeration: for each edge `xy`, scan `N(x) & N(y)` above `y`.
pub fn triangles(g: &Graph) -> TriangleSet {
    let mut triples = Vec::new();
    let mut edge_ids = Vec::new();
    let mut per_edge = vec![0; g.m()];
    for (exy, &(x, y)) in g.edges().iter().enumerate() {
        let (nx, ny) = (g.neighbors(x).words(), g.neighbors(y).words());
        let start = (y + 1) / 64;
        for w in start..nx.len() {
            let mut word = nx[w] & ny[w];
            if w == start {
                word &= u64::MAX.checked_shl(((y + 1) % 64) as u32).unwrap_or(0);
            }
            while word != 0 {
                let z = w * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                let exz = g.edge_index(x, z).expect("adjacent");
                let eyz = g.edge_index(y, z).expect("adjacent");
                for e in [exy, exz, eyz] {
                    per_edge[e] += 1;
                }
                triples.push([x, y, z]);
                edge_ids.push([exy, exz, eyz]);
            }
        }
    }
    TriangleSet {
        triples,
        edge_ids,
        per_edge,
    }
}

/// The event Q: every edge lies in a triangle. True for an edgeless graph.
pub fn every_edge_in_triangle(g: &Graph) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| g.neighbors(u).intersects(g.neighbors(v)))
}

/// `|N(x) ∩ N(y)|`.
pub fn codegree(g: &Graph, x: usize, y: usize) -> Result<usize> {
    if x == y {
        return Err(Error::SameVertex(x));
    }
    for v in [x, y] {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    Ok(g.neighbors(x).and_count(g.neighbors(y)))
}

pub(crate) fn vertex_mask(n: usize, vertices: &[usize]) -> Result<BitVec> {
    let mut mask = BitVec::zeros(n);
    for &v in vertices {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        mask.set(v, true);
    }
    Ok(mask)
}

/// Ordered pair count `|{(y, z) in Y x Z : yz in G}|`; `Y` and `Z` may overlap.
pub fn zeta(g: &Graph, ys: &[usize], zs: &[usize]) -> Result<usize> {
    let ymask = vertex_mask(g.n(), ys)?;
    let zmask = vertex_mask(g.n(), zs)?;
    Ok(ymask
        .iter_ones()
        .map(|y| g.neighbors(y).and_count(&zmask))
        .sum())
}

/// A vertex subset `W`, read as the cut `∇(W, V \ W)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CutSpec {
    side: BitVec,
}

impl std::fmt::Debug for CutSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.side.iter_ones()).finish()
    }
}

impl CutSpec {
    pub fn from_vertices(n: usize, w: &[usize]) -> Result<Self> {
        Ok(CutSpec {
            side: vertex_mask(n, w)?,
        })
    }

    pub fn from_mask(side: BitVec) -> Self {
        CutSpec { side }
    }

    pub fn n(&self) -> usize {
        self.side.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.side.get(v)
    }

    pub fn side(&self) -> &BitVec {
        &self.side
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.side.iter_ones().collect()
    }
}

/// Indices of edges with exactly one endpoint in `W`.
pub fn cut_edges(g: &Graph, cut: &CutSpec) -> Result<Vec<usize>> {
    if cut.n() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: cut.n(),
        });
    }
    Ok(g.edges()
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| cut.contains(u) != cut.contains(v))
        .map(|(i, _)| i)
        .collect())
}

/// Adjacency rows of a subset of `host`'s edges; errors if a pair is not an
/// edge of `host`.
fn sub_rows(host: &Graph, pairs: &[Pair]) -> Result<Vec<BitVec>> {
    let mut rows = vec![BitVec::zeros(host.n()); host.n()];
    for &(u, v) in pairs {
        if !host.has_edge(u, v) {
            return Err(Error::NotASubgraph(u, v));
        }
        rows[u].set(v, true);
        rows[v].set(u, true);
    }
    Ok(rows)
}

fn pairs_where(n: usize, mut keep: impl FnMut(usize, usize) -> bool) -> Vec<Pair> {
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if keep(x, y) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Pairs of K_n outside `h` that close no triangle with two edges of `k`.
/// `k` must be a subset of `E(h)`.
pub fn b_set(k: &[Pair], h: &Graph) -> Result<Vec<Pair>> {
    let rows = sub_rows(h, k)?;
    Ok(pairs_where(h.n(), |x, y| {
        !h.has_edge(x, y) && !rows[x].intersects(&rows[y])
    }))
}

/// Pairs of K_n with a common `f`-neighbour. `f` must be a subset of `E(g)`.
pub fn j_set(f: &[Pair], g: &Graph) -> Result<Vec<Pair>> {
    let rows = sub_rows(g, f)?;
    Ok(pairs_where(g.n(), |x, y| rows[x].intersects(&rows[y])))
}

/// Non-edges of `g0` whose endpoints have a common `g0`-neighbour.
pub fn a_set(g0: &Graph) -> Vec<Pair> {
    pairs_where(g0.n(), |x, y| {
        !g0.has_edge(x, y) && g0.neighbors(x).intersects(g0.neighbors(y))
    })
}

/// `K_n \ (G0 ∪ A(G0))`: non-edges with no common neighbour.
pub fn j0_set(g0: &Graph) -> Vec<Pair> {
    pairs_where(g0.n(), |x, y| {
        !g0.has_edge(x, y) && !g0.neighbors(x).intersects(g0.neighbors(y))
    })
}

/// Pairs `xy` of `A(G0)` such that every common `G0`-neighbour `z` has exactly
/// one of `xz`, `yz` in `f0`.
pub fn coda_b_set(f0: &[Pair], g0: &Graph) -> Result<Vec<Pair>> {
    let rows = sub_rows(g0, f0)?;
    Ok(a_set(g0)
        .into_iter()
        .filter(|&(x, y)| {
            let mut common = g0.neighbors(x).clone();
            common.and_assign(g0.neighbors(y));
            let odd = &rows[x] ^ &rows[y];
            common.and_count(&odd) == common.count_ones()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k4_minus_matching() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn extreme_probabilities() {
        let g = sample_gnp(5, 1.0, 99).unwrap();
        assert_eq!(g.m(), 10);
        assert_eq!(g, Graph::complete(5));
        assert_eq!(sample_gnp(5, 0.0, 99).unwrap().m(), 0);
    }

    #[test]
    fn sampler_rejects_bad_input() {
        assert!(matches!(sample_gnp(5, 1.5, 0), Err(Error::InvalidProbability(_))));
        assert!(matches!(sample_gnp(5, -0.1, 0), Err(Error::InvalidProbability(_))));
        assert!(matches!(sample_gnp(0, 0.5, 0), Err(Error::NoVertices)));
        assert!(matches!(sample_two_round(5, 0.5, 1.0, 0), Err(Error::InvalidTheta(_))));
        assert!(matches!(sample_two_round(5, 0.5, 0.0, 0), Err(Error::InvalidTheta(_))));
    }

    #[test]
    fn sampler_is_deterministic() {
        assert_eq!(sample_gnp(60, 0.3, 5).unwrap(), sample_gnp(60, 0.3, 5).unwrap());
        assert_ne!(sample_gnp(60, 0.3, 5).unwrap(), sample_gnp(60, 0.3, 6).unwrap());
    }

    #[test]
    fn two_round_full_probability_gives_complete_graph() {
        for seed in 0..5 {
            let (g0, g1) = sample_two_round(12, 1.0, 0.5, seed).unwrap();
            let u = g0.union(&g1).unwrap();
            assert_eq!(u, Graph::complete(12));
        }
    }

    #[test]
    fn triangle_fixtures() {
        let k4 = triangles(&Graph::complete(4));
        assert_eq!(k4.len(), 4);
        assert!(k4.per_edge.iter().all(|&c| c == 2));
        assert_eq!(triangles(&Graph::cycle(5)).len(), 0);
        assert_eq!(triangles(&Graph::complete(5)).len(), 10);
        assert_eq!(
            triangles(&Graph::complete(4)).triples,
            vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        );
    }

    #[test]
    fn triangle_scan_crosses_word_boundaries() {
        let g = Graph::from_edges(130, [(0, 63), (0, 64), (63, 64), (1, 128), (1, 129), (128, 129)])
            .unwrap();
        assert_eq!(triangles(&g).triples, vec![[0, 63, 64], [1, 128, 129]]);
    }

    #[test]
    fn q_event_fixtures() {
        assert!(every_edge_in_triangle(&Graph::complete(3)));
        assert!(!every_edge_in_triangle(&Graph::path(3)));
        assert!(!every_edge_in_triangle(&k4_minus_matching()));
        assert!(every_edge_in_triangle(&Graph::empty(4)));
    }

    #[test]
    fn codegree_and_zeta() {
        let k3 = Graph::complete(3);
        assert_eq!(zeta(&k3, &[0, 1, 2], &[0, 1, 2]).unwrap(), 6);
        assert_eq!(zeta(&k3, &[0], &[1, 2]).unwrap(), 2);
        assert_eq!(codegree(&Graph::complete(4), 0, 1).unwrap(), 2);
        assert!(matches!(codegree(&k3, 1, 1), Err(Error::SameVertex(1))));
    }

    #[test]
    fn cut_fixtures() {
        let k4 = Graph::complete(4);
        let w = CutSpec::from_vertices(4, &[0, 1]).unwrap();
        assert_eq!(cut_edges(&k4, &w).unwrap().len(), 4);
        let all = CutSpec::from_vertices(4, &[0, 1, 2, 3]).unwrap();
        assert!(cut_edges(&k4, &all).unwrap().is_empty());
        let none = CutSpec::from_vertices(4, &[]).unwrap();
        assert!(cut_edges(&k4, &none).unwrap().is_empty());
        let c6 = Graph::cycle(6);
        let alt = CutSpec::from_vertices(6, &[0, 2, 4]).unwrap();
        assert_eq!(cut_edges(&c6, &alt).unwrap().len(), 6);
    }

    #[test]
    fn b_set_fixtures() {
        let tri = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(
            b_set(tri.edges(), &tri).unwrap(),
            vec![(0, 3), (1, 3), (2, 3)]
        );
        let k5 = Graph::complete(5);
        assert!(b_set(k5.edges(), &k5).unwrap().is_empty());
        let matching = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(b_set(matching.edges(), &matching).unwrap().len(), 4);
        assert!(matches!(b_set(&[(0, 3)], &tri), Err(Error::NotASubgraph(0, 3))));
    }

    #[test]
    fn j_set_fixtures() {
        let k4 = Graph::complete(4);
        assert_eq!(j_set(&[(0, 1), (0, 2)], &k4).unwrap(), vec![(1, 2)]);
        assert!(j_set(&[], &k4).unwrap().is_empty());
        let k3 = Graph::complete(3);
        assert_eq!(j_set(k3.edges(), &k3).unwrap().len(), 3);
        assert!(j_set(&[(0, 1)], &Graph::empty(3)).is_err());
    }

    #[test]
    fn a_and_coda_b_fixtures() {
        // star centred at 0 with leaves 1, 2, 3
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(a_set(&star), vec![(1, 2), (1, 3), (2, 3)]);
        assert!(j0_set(&star).is_empty());
        assert_eq!(coda_b_set(&[(0, 1)], &star).unwrap(), vec![(1, 2), (1, 3)]);
        assert!(coda_b_set(&[], &star).unwrap().is_empty());
        assert!(coda_b_set(&[(1, 2)], &star).is_err());
    }

    #[test]
    fn text_round_trip_and_rejections() {
        let g = sample_gnp(20, 0.3, 11).unwrap();
        assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
        let loose = Graph::parse_text("3 2\n2 0\n0 1\n").unwrap();
        assert_eq!(loose.edges(), &[(0, 1), (0, 2)]);
        assert!(Graph::parse_text("3 1\n1 1\n").is_err());
        assert!(Graph::parse_text("3 2\n0 1\n1 0\n").is_err());
        assert!(Graph::parse_text("3 2\n0 1\n").is_err());
        assert!(Graph::parse_text("3 1\n0 3\n").is_err());
        assert!(Graph::parse_text("3 1\n0 x\n").is_err());
        assert!(Graph::parse_text("").is_err());
    }

    #[test]
    fn from_edges_rejects_bad_pairs() {
        assert!(matches!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn forest_paths_close_cycles() {
        let g = Graph::cycle(7);
        let f = g.spanning_forest();
        assert_eq!(f.components, 1);
        assert_eq!(f.is_tree_edge.iter().filter(|&&t| t).count(), 6);
        let (e, &(u, v)) = g
            .edges()
            .iter()
            .enumerate()
            .find(|(e, _)| !f.is_tree_edge[*e])
            .unwrap();
        let mut cycle = f.path_edges(u, v);
        cycle.push(e);
        cycle.sort_unstable();
        assert_eq!(cycle, (0..7).collect::<Vec<_>>());
    }

    fn small_graph() -> impl Strategy<Value = Graph> {
        (1usize..=12, 0.0f64..=1.0, any::<u64>())
            .prop_map(|(n, p, seed)| sample_gnp(n, p, seed).unwrap())
    }

    proptest! {
        #[test]
        fn structural_invariants(g in small_graph()) {
            let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
            prop_assert_eq!(degree_sum, 2 * g.m());
            for (i, &(u, v)) in g.edges().iter().enumerate() {
                prop_assert!(u < v);
                prop_assert_eq!(g.edge_index(u, v), Some(i));
                prop_assert_eq!(g.edge_index(v, u), Some(i));
                prop_assert!(g.neighbors(u).get(v) && g.neighbors(v).get(u));
            }
            prop_assert!(g.edges().windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn triangle_counts_match_codegrees(g in small_graph()) {
            let t = triangles(&g);
            let mut codeg_sum = 0;
            for (i, &(u, v)) in g.edges().iter().enumerate() {
                let c = codegree(&g, u, v).unwrap();
                prop_assert_eq!(t.per_edge[i], c);
                codeg_sum += c;
            }
            prop_assert_eq!(3 * t.len(), codeg_sum);
            prop_assert_eq!(t.per_edge.iter().sum::<usize>(), 3 * t.len());
            // brute force over all triples
            let n = g.n();
            let mut brute = 0;
            for x in 0..n { for y in x+1..n { for z in y+1..n {
                if g.has_edge(x,y) && g.has_edge(x,z) && g.has_edge(y,z) { brute += 1; }
            }}}
            prop_assert_eq!(t.len(), brute);
        }

        #[test]
        fn zeta_is_symmetric(g in small_graph(), ym in any::<u16>(), zm in any::<u16>()) {
            let pick = |mask: u16| (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>();
            let (ys, zs) = (pick(ym), pick(zm));
            prop_assert_eq!(zeta(&g, &ys, &zs).unwrap(), zeta(&g, &zs, &ys).unwrap());
            // zeta(Y, Y) counts each edge of G[Y] twice
            let inside = g.edges().iter().filter(|&&(u, v)| ys.contains(&u) && ys.contains(&v)).count();
            prop_assert_eq!(zeta(&g, &ys, &ys).unwrap(), 2 * inside);
        }

        #[test]
        fn b_set_matches_per_pair_recomputation(
            (g, keep) in (1usize..=8, 0.0f64..=1.0, any::<u64>(), any::<u64>())
                .prop_map(|(n, p, s, keep)| (sample_gnp(n, p, s).unwrap(), keep))
        ) {
            let k: Vec<Pair> = g.edges().iter().enumerate()
                .filter(|(i, _)| keep >> (i % 64) & 1 == 1).map(|(_, &e)| e).collect();
            let b = b_set(&k, &g).unwrap();
            let n = g.n();
            let in_k = |a: usize, b: usize| k.contains(&ordered(a, b));
            for x in 0..n { for y in x+1..n {
                let closes = (0..n).any(|z| z != x && z != y && in_k(x, z) && in_k(y, z));
                let expected = !g.has_edge(x, y) && !closes;
                prop_assert_eq!(b.contains(&(x, y)), expected);
            }}
        }
    }

    #[test]
    fn coupled_samples_are_nested() {
        for seed in 0..20 {
            let lo = sample_gnp(40, 0.1, seed).unwrap();
            let hi = sample_gnp(40, 0.25, seed).unwrap();
            assert!(lo.edges().iter().all(|&(u, v)| hi.has_edge(u, v)));
        }
    }

    #[test]
    fn two_round_parts_are_disjoint() {
        let (g0, g1) = sample_two_round(60, 0.3, 0.4, 3).unwrap();
        assert!(g0.edges().iter().all(|&(u, v)| !g1.has_edge(u, v)));
        assert!(g0.union(&g1).is_ok());
    }
}
