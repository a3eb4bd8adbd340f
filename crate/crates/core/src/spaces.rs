//! Subspaces of the edge space `(Z/2)^E(G)`: cycles, cuts, triangles and the
//! triangle-orthogonal space, plus the first Betti number of the clique
//! complex and cut-flip local search over cosets of the cut space.

use std::fmt;

use crate::cuts;
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Gf2Basis};
use crate::graph::{triangles, Graph, Pair, TriangleSet};

/// An element of the edge space of `host`, i.e. a spanning subgraph.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeVector<'g> {
    host: &'g Graph,
    bits: BitVec,
}

impl<'g> EdgeVector<'g> {
    pub fn new(host: &'g Graph, bits: BitVec) -> Result<Self> {
        if bits.len() != host.m() {
            return Err(Error::LengthMismatch {
                expected: host.m(),
                got: bits.len(),
            });
        }
        Ok(EdgeVector { host, bits })
    }

    pub fn zero(host: &'g Graph) -> Self {
        EdgeVector {
            host,
            bits: BitVec::zeros(host.m()),
        }
    }

    pub fn from_edge_ids(host: &'g Graph, ids: &[usize]) -> Self {
        EdgeVector {
            host,
            bits: BitVec::from_indices(host.m(), ids.iter().copied()),
        }
    }

    pub fn from_pairs(host: &'g Graph, pairs: &[Pair]) -> Result<Self> {
        Ok(Self::from_edge_ids(host, &host.edge_indices(pairs)?))
    }

    /// All edges of the host.
    pub fn full(host: &'g Graph) -> Self {
        Self::from_edge_ids(host, &(0..host.m()).collect::<Vec<_>>())
    }

    /// The star `∇(v)`.
    pub fn star(host: &'g Graph, v: usize) -> Self {
        let ids: Vec<usize> = host.incident(v).iter().map(|&(_, e)| e).collect();
        Self::from_edge_ids(host, &ids)
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.bits.get(e)
    }

    /// `d_F(v)`.
    pub fn degree(&self, v: usize) -> usize {
        self.host
            .incident(v)
            .iter()
            .filter(|&&(_, e)| self.bits.get(e))
            .count()
    }

    /// Edges as vertex pairs, lexicographic.
    pub fn pairs(&self) -> Vec<Pair> {
        self.bits.iter_ones().map(|e| self.host.edges()[e]).collect()
    }

    /// Symmetric difference. Panics if the hosts differ in size.
    pub fn add(&self, other: &EdgeVector<'_>) -> EdgeVector<'g> {
        EdgeVector {
            host: self.host,
            bits: &self.bits ^ &other.bits,
        }
    }
}

impl fmt::Debug for EdgeVector<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeVector[{self}]")
    }
}

/// Space-separated `u-v` pairs in lexicographic order.
impl fmt::Display for EdgeVector<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (u, v)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    Cycle,
    Cut,
    Triangle,
    TrianglePerp,
}

/// A basis of one of the named subspaces of the edge space of `host`.
#[derive(Debug, Clone)]
pub struct SpaceBasis<'g> {
    pub host: &'g Graph,
    pub kind: SpaceKind,
    pub basis: Gf2Basis,
}

impl<'g> SpaceBasis<'g> {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn contains(&self, v: &EdgeVector<'_>) -> bool {
        self.basis.contains(v.bits()).expect("same host")
    }

    pub fn vectors(&self) -> impl Iterator<Item = EdgeVector<'g>> + '_ {
        self.basis.rows().map(|(_, r)| EdgeVector {
            host: self.host,
            bits: r.clone(),
        })
    }
}

/// `|E| - n + c`.
pub fn cycle_space_dim(g: &Graph) -> usize {
    g.m() + g.spanning_forest().components - g.n()
}

/// `n - c`.
pub fn cut_space_dim(g: &Graph) -> usize {
    g.n() - g.spanning_forest().components
}

/// Fundamental cycles of the BFS spanning forest, one per non-tree edge.
pub fn cycle_space(g: &Graph) -> SpaceBasis<'_> {
    let forest = g.spanning_forest();
    let mut basis = Gf2Basis::new(g.m());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if forest.is_tree_edge[e] {
            continue;
        }
        let mut cycle = BitVec::from_indices(g.m(), forest.path_edges(u, v));
        cycle.set(e, true);
        basis.insert(&cycle).expect("length m");
    }
    SpaceBasis {
        host: g,
        kind: SpaceKind::Cycle,
        basis,
    }
}

/// Vertex stars, skipping the root of each component.
pub fn cut_space(g: &Graph) -> SpaceBasis<'_> {
    let forest = g.spanning_forest();
    let mut basis = Gf2Basis::new(g.m());
    for v in 0..g.n() {
        if forest.parent[v].is_some() {
            basis
                .insert(EdgeVector::star(g, v).bits())
                .expect("length m");
        }
    }
    SpaceBasis {
        host: g,
        kind: SpaceKind::Cut,
        basis,
    }
}

fn triangle_basis(g: &Graph, tris: &TriangleSet) -> Gf2Basis {
    let target = cycle_space_dim(g);
    let mut basis = Gf2Basis::new(g.m());
    for k in 0..tris.len() {
        if basis.rank() == target {
            break;
        }
        basis.insert(&tris.indicator(k, g.m())).expect("length m");
    }
    basis
}

/// Span of the triangle indicators, inserted in enumeration order and
/// stopping once the rank reaches `dim C`.
pub fn triangle_space(g: &Graph) -> SpaceBasis<'_> {
    SpaceBasis {
        host: g,
        kind: SpaceKind::Triangle,
        basis: triangle_basis(g, &triangles(g)),
    }
}

/// Edge sets meeting every triangle in an even number of edges.
pub fn triangle_perp(g: &Graph) -> SpaceBasis<'_> {
    let tris = triangles(g);
    let full = Gf2Basis::from_vectors(
        g.m(),
        &(0..tris.len()).map(|k| tris.indicator(k, g.m())).collect::<Vec<_>>(),
    )
    .expect("length m");
    SpaceBasis {
        host: g,
        kind: SpaceKind::TrianglePerp,
        basis: full.null_space(),
    }
}

/// `dim C - dim T` from an explicit triangle-space basis.
pub fn betti1_by_rank(g: &Graph) -> usize {
    cycle_space_dim(g) - triangle_space(g).dim()
}

/// The triangle constraints `<F, T> = 0` restricted to edge vectors that
/// vanish on a spanning forest.
///
/// Every coset of the cut space has exactly one member vanishing on the
/// forest, so the solutions of this system form a complement of `C⊥` inside
/// `T⊥` and its dimension is the first Betti number. Forest edges start out
/// known (zero); any triangle with a single unknown edge forces that edge to
/// zero too. What survives the propagation is solved by elimination.
struct ReducedTriangleSystem {
    /// Host edge indices of the undetermined edges.
    unknown: Vec<usize>,
    /// Remaining constraints over `unknown`.
    constraints: Gf2Basis,
}

impl ReducedTriangleSystem {
    fn new(g: &Graph, tris: &TriangleSet) -> Self {
        let m = g.m();
        let mut known = g.spanning_forest().is_tree_edge;

        // edge -> triangles through it, CSR layout
        let mut offsets = vec![0usize; m + 1];
        for ids in &tris.edge_ids {
            for &e in ids {
                offsets[e + 1] += 1;
            }
        }
        for e in 0..m {
            offsets[e + 1] += offsets[e];
        }
        let mut fill = offsets.clone();
        let mut through = vec![0usize; offsets[m]];
        for (t, ids) in tris.edge_ids.iter().enumerate() {
            for &e in ids {
                through[fill[e]] = t;
                fill[e] += 1;
            }
        }

        let mut open: Vec<u8> = tris
            .edge_ids
            .iter()
            .map(|ids| ids.iter().filter(|&&e| !known[e]).count() as u8)
            .collect();
        let mut stack: Vec<usize> = (0..tris.len()).filter(|&t| open[t] == 1).collect();
        while let Some(t) = stack.pop() {
            if open[t] != 1 {
                continue;
            }
            let e = *tris.edge_ids[t]
                .iter()
                .find(|&&e| !known[e])
                .expect("one open edge");
            known[e] = true;
            for &s in &through[offsets[e]..offsets[e + 1]] {
                open[s] -= 1;
                if open[s] == 1 {
                    stack.push(s);
                }
            }
        }

        let unknown: Vec<usize> = (0..m).filter(|&e| !known[e]).collect();
        let mut column = vec![usize::MAX; m];
        for (c, &e) in unknown.iter().enumerate() {
            column[e] = c;
        }
        let mut constraints = Gf2Basis::new(unknown.len());
        for (t, ids) in tris.edge_ids.iter().enumerate() {
            if constraints.rank() == unknown.len() {
                break;
            }
            if open[t] >= 2 {
                let row = BitVec::from_indices(
                    unknown.len(),
                    ids.iter().filter(|&&e| !known[e]).map(|&e| column[e]),
                );
                constraints.insert(&row).expect("length matches");
            }
        }
        ReducedTriangleSystem {
            unknown,
            constraints,
        }
    }

    fn nullity(&self) -> usize {
        self.unknown.len() - self.constraints.rank()
    }

    /// A nonzero solution lifted back to host edges, if one exists.
    fn solution(&self, g: &Graph) -> Option<BitVec> {
        let pivots = self.constraints.pivots();
        let free = (0..self.unknown.len()).find(|c| pivots.binary_search(c).is_err())?;
        let mut out = BitVec::zeros(g.m());
        out.set(self.unknown[free], true);
        for (pivot, row) in self.constraints.rows() {
            if row.get(free) {
                out.set(self.unknown[pivot], true);
            }
        }
        Some(out)
    }
}

/// First Z/2 Betti number of the clique complex, `dim C - dim T`.
pub fn betti1(g: &Graph) -> usize {
    betti1_with(g, &triangles(g))
}

/// [`betti1`] with a precomputed triangle set.
pub fn betti1_with(g: &Graph, tris: &TriangleSet) -> usize {
    ReducedTriangleSystem::new(g, tris).nullity()
}

/// Some `F` in `T⊥ \ C⊥`, present iff `betti1(g) > 0`. The returned vector
/// vanishes on the BFS spanning forest.
pub fn find_witness(g: &Graph) -> Option<EdgeVector<'_>> {
    let tris = triangles(g);
    ReducedTriangleSystem::new(g, &tris)
        .solution(g)
        .map(|bits| EdgeVector { host: g, bits })
}

/// Cut-flip local search: while some vertex has `d_F(v) > d_{G-F}(v)`, replace
/// `F` by `F + ∇(v)`. Vertices are scanned in increasing order and the scan
/// restarts after every flip. The result stays in `F + C⊥`, is no larger than
/// `F`, and satisfies `d_F(v) <= d_{G-F}(v)` everywhere. It need not be a
/// minimum of the coset.
pub fn coset_minimize<'g>(g: &'g Graph, f: &EdgeVector<'_>) -> EdgeVector<'g> {
    let mut bits = f.bits().clone();
    let mut fdeg: Vec<usize> = (0..g.n())
        .map(|v| g.incident(v).iter().filter(|&&(_, e)| bits.get(e)).count())
        .collect();
    'scan: loop {
        for v in 0..g.n() {
            if 2 * fdeg[v] > g.degree(v) {
                for &(w, e) in g.incident(v) {
                    if bits.get(e) {
                        fdeg[w] -= 1;
                    } else {
                        fdeg[w] += 1;
                    }
                    bits.toggle(e);
                }
                fdeg[v] = g.degree(v) - fdeg[v];
                continue 'scan;
            }
        }
        break;
    }
    EdgeVector { host: g, bits }
}

/// A true minimum-size member of `F + C⊥`, by exhaustive search over cuts.
/// Limited to `n <= 24`.
pub fn coset_min_oracle<'g>(g: &'g Graph, f: &EdgeVector<'_>) -> Result<EdgeVector<'g>> {
    cuts::check_budget(g.n())?;
    let (inside, crossing): (Vec<(usize, Pair)>, Vec<(usize, Pair)>) = g
        .edges()
        .iter()
        .copied()
        .enumerate()
        .partition(|&(e, _)| f.bits().get(e));
    let strip = |v: Vec<(usize, Pair)>| v.into_iter().map(|(_, p)| p).collect::<Vec<_>>();
    let (_, w) = cuts::min_over_cuts(g.n(), &strip(inside), &strip(crossing));
    let mut bits = f.bits().clone();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if (w >> u ^ w >> v) & 1 == 1 {
            bits.toggle(e);
        }
    }
    Ok(EdgeVector { host: g, bits })
}
