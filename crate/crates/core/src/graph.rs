//! Weighted undirected graphs stored with a canonical orientation.
//!
//! Every undirected edge `{i, j}` is kept as the directed edge `(min, max)`.
//! Edges are sorted lexicographically, and that order fixes the indexing of
//! every edge flow in the crate. Node ids are 1-based.

use crate::error::{Error, Result};
use crate::signal::{EdgeFlow, NodeSignal};

/// A sorted set of 1-based node ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NodeSet {
    ids: Vec<usize>,
}

impl NodeSet {
    /// Builds a set from arbitrary ids, rejecting ids outside `1..=n`.
    /// Repeated ids collapse.
    pub fn new(ids: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let mut ids: Vec<usize> = ids.into_iter().collect();
        if let Some(&id) = ids.iter().find(|&&id| id == 0 || id > n) {
            return Err(Error::InvalidNode { id, n });
        }
        ids.sort_unstable();
        ids.dedup();
        Ok(NodeSet { ids })
    }

    pub fn empty() -> Self {
        NodeSet { ids: Vec::new() }
    }

    /// The set `{lo, lo + 1, ..., hi}`.
    pub fn range(lo: usize, hi: usize) -> Self {
        NodeSet { ids: (lo..=hi).collect() }
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.ids.iter().all(|&i| other.contains(i))
    }

    /// Membership mask indexed by `id - 1`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &i in &self.ids {
            if i <= n {
                m[i - 1] = true;
            }
        }
        m
    }

    /// The nodes of `1..=n` not in this set.
    pub fn complement(&self, n: usize) -> NodeSet {
        NodeSet {
            ids: (1..=n).filter(|&i| !self.contains(i)).collect(),
        }
    }

    pub(crate) fn check_range(&self, n: usize) -> Result<()> {
        match self.ids.last() {
            Some(&id) if id > n => Err(Error::InvalidNode { id, n }),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Vec<f64>,
    // Out-edges of node i are the contiguous edge ids out_start[i-1]..out_start[i].
    out_start: Vec<usize>,
    // In-edges of node j are in_edges[in_start[j-1]..in_start[j]], sorted by tail id.
    in_start: Vec<usize>,
    in_edges: Vec<usize>,
}

impl Graph {
    /// Builds a graph on nodes `1..=n` from `(i, j, w)` triples.
    ///
    /// Edges are canonicalised to `(min, max)` and sorted, so the result does
    /// not depend on the order of `edge_list`.
    pub fn new(n: usize, edge_list: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("graph needs at least one node".into()));
        }
        let mut canon = Vec::with_capacity(edge_list.len());
        for &(i, j, w) in edge_list {
            for id in [i, j] {
                if id == 0 || id > n {
                    return Err(Error::InvalidNode { id, n });
                }
            }
            if i == j {
                return Err(Error::InvalidEdge(i));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidWeight { i, j, w });
            }
            canon.push((i.min(j), i.max(j), w));
        }
        canon.sort_by_key(|&(i, j, _)| (i, j));
        for pair in canon.windows(2) {
            if (pair[0].0, pair[0].1) == (pair[1].0, pair[1].1) {
                return Err(Error::DuplicateEdge(pair[0].0, pair[0].1));
            }
        }

        let edges: Vec<(usize, usize)> = canon.iter().map(|&(i, j, _)| (i, j)).collect();
        let weights: Vec<f64> = canon.iter().map(|&(_, _, w)| w).collect();

        let mut out_start = vec![0usize; n + 1];
        let mut in_start = vec![0usize; n + 1];
        for &(i, j) in &edges {
            out_start[i] += 1;
            in_start[j] += 1;
        }
        for k in 0..n {
            out_start[k + 1] += out_start[k];
            in_start[k + 1] += in_start[k];
        }
        // Edges are sorted by tail, so scanning them in order fills each
        // in-list in ascending tail order.
        let mut fill = in_start.clone();
        let mut in_edges = vec![0usize; edges.len()];
        for (e, &(_, j)) in edges.iter().enumerate() {
            in_edges[fill[j - 1]] = e;
            fill[j - 1] += 1;
        }

        Ok(Graph {
            n,
            edges,
            weights,
            out_start,
            in_start,
            in_edges,
        })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edges `(i, j)` with `i < j`, in edge-id order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, e: usize) -> f64 {
        self.weights[e]
    }

    /// Edge id of `{i, j}`, if present.
    pub fn find_edge(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = (i.min(j), i.max(j));
        if a == 0 || b > self.n {
            return None;
        }
        let range = self.out_start[a - 1]..self.out_start[a];
        self.edges[range.clone()]
            .binary_search_by(|&(_, t)| t.cmp(&b))
            .ok()
            .map(|k| range.start + k)
    }

    /// `(j, edge id)` for every edge `(i, j)`, ascending in `j`.
    pub fn out_neighbors(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (self.out_start[i - 1]..self.out_start[i]).map(move |e| (self.edges[e].1, e))
    }

    /// `(j, edge id)` for every edge `(j, i)`, ascending in `j`.
    pub fn in_neighbors(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.in_edges[self.in_start[i - 1]..self.in_start[i]]
            .iter()
            .map(move |&e| (self.edges[e].0, e))
    }

    /// Unweighted degree `|N_i|`.
    pub fn degree(&self, i: usize) -> usize {
        (self.out_start[i] - self.out_start[i - 1]) + (self.in_start[i] - self.in_start[i - 1])
    }

    pub fn weighted_degree(&self, i: usize) -> f64 {
        let out: f64 = self.out_neighbors(i).map(|(_, e)| self.weights[e]).sum();
        let inn: f64 = self.in_neighbors(i).map(|(_, e)| self.weights[e]).sum();
        out + inn
    }

    /// First node with no neighbours, if any.
    pub fn first_isolated(&self) -> Option<usize> {
        (1..=self.n).find(|&i| self.degree(i) == 0)
    }

    /// Connected-component label per node (0-based labels, indexed by `id - 1`),
    /// numbered in order of their lowest node id.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for root in 1..=self.n {
            if label[root - 1] != usize::MAX {
                continue;
            }
            label[root - 1] = next;
            stack.push(root);
            while let Some(i) = stack.pop() {
                for (j, _) in self.out_neighbors(i).chain(self.in_neighbors(i)) {
                    if label[j - 1] == usize::MAX {
                        label[j - 1] = next;
                        stack.push(j);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// `(Bx)_e = x_i - x_j` for every edge `e = (i, j)`.
    pub fn incidence_apply(&self, x: &NodeSignal) -> Result<EdgeFlow> {
        self.check_signal(x)?;
        let values = self
            .edges
            .iter()
            .map(|&(i, j)| x.0[i - 1] - x.0[j - 1])
            .collect();
        Ok(EdgeFlow::base(values))
    }

    /// Net outflow `Σ_{j∈N+} y_(i,j) − Σ_{j∈N−} y_(j,i)` at every node, i.e. `Bᵀy`.
    pub fn divergence(&self, y: &EdgeFlow) -> Result<NodeSignal> {
        self.check_base_flow(y)?;
        let mut out = vec![0.0; self.n];
        self.divergence_into(&y.values, &mut out);
        Ok(NodeSignal(out))
    }

    /// Divergence at a single node. Both partial sums run in ascending
    /// neighbour order, so the result does not depend on how callers split
    /// the node range.
    #[inline]
    pub fn divergence_at(&self, i: usize, y: &[f64]) -> f64 {
        let mut out = 0.0;
        for e in self.out_start[i - 1]..self.out_start[i] {
            out += y[e];
        }
        let mut inn = 0.0;
        for &e in &self.in_edges[self.in_start[i - 1]..self.in_start[i]] {
            inn += y[e];
        }
        out - inn
    }

    pub(crate) fn divergence_into(&self, y: &[f64], out: &mut [f64]) {
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.divergence_at(k + 1, y);
        }
    }

    /// Edge ids with exactly one endpoint in `c`, in either orientation.
    pub fn boundary(&self, c: &NodeSet) -> Result<Vec<usize>> {
        c.check_range(self.n)?;
        let mask = c.mask(self.n);
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(i, j))| mask[i - 1] != mask[j - 1])
            .map(|(e, _)| e)
            .collect())
    }

    pub fn boundary_weight(&self, c: &NodeSet) -> Result<f64> {
        Ok(self.boundary(c)?.into_iter().map(|e| self.weights[e]).sum())
    }

    pub fn augment(&self) -> AugmentedGraph {
        AugmentedGraph { base: self.clone() }
    }

    pub(crate) fn check_signal(&self, x: &NodeSignal) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_base_flow(&self, y: &EdgeFlow) -> Result<()> {
        if y.augmented || y.len() != self.edges.len() {
            return Err(Error::DimensionMismatch {
                expected: self.edges.len(),
                got: y.len(),
            });
        }
        Ok(())
    }
}

/// The graph plus a star node `n + 1` and one uncapacitated edge `(i, ⋆)` per node.
///
/// Star edge of node `i` has edge id `m + i - 1`, after the `m` base edges.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedGraph {
    base: Graph,
}

impl AugmentedGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn star_node(&self) -> usize {
        self.base.n + 1
    }

    pub fn star_edge_count(&self) -> usize {
        self.base.n
    }

    pub fn edge_count(&self) -> usize {
        self.base.edge_count() + self.base.n
    }

    pub fn star_edge(&self, i: usize) -> usize {
        self.base.edge_count() + i - 1
    }

    /// All edges of the augmented graph, base edges first.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let star = self.star_node();
        let mut out = self.base.edges.clone();
        out.extend((1..=self.base.n).map(|i| (i, star)));
        out
    }

    /// An augmented graph is not a base graph and cannot be augmented again.
    pub fn augment(&self) -> Result<AugmentedGraph> {
        Err(Error::RepeatedAugmentation)
    }

    /// Lifts a base flow to the augmented graph by routing each node's net
    /// inflow to the star: `y_(i,⋆) = −div(y)_i`. The lifted flow conserves
    /// at every base node, and at `⋆` because divergences sum to zero.
    pub fn lift(&self, y: &EdgeFlow) -> Result<EdgeFlow> {
        let div = self.base.divergence(y)?;
        let mut values = y.values.clone();
        values.extend(div.0.iter().map(|d| -d));
        Ok(EdgeFlow::augmented(values))
    }

    /// Net outflow at every node of the augmented graph, the star last.
    pub fn conservation_residual(&self, y: &EdgeFlow) -> Result<Vec<f64>> {
        if !y.augmented {
            return Err(Error::NotAugmented);
        }
        let m = self.base.edge_count();
        let n = self.base.n;
        if y.len() != m + n {
            return Err(Error::DimensionMismatch {
                expected: m + n,
                got: y.len(),
            });
        }
        let (base, star) = y.values.split_at(m);
        let mut res: Vec<f64> = (1..=n)
            .map(|i| self.base.divergence_at(i, base) + star[i - 1])
            .collect();
        res.push(-star.iter().sum::<f64>());
        Ok(res)
    }
}
