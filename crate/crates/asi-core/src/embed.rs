//! Hyperbolic embedding pipeline: repulsion-attraction pre-weighting,
//! angular coordinates from Laplacian eigenmaps or minimum curvilinear
//! orderings, and power-law radial placement.
//!
//! The pipeline recovers coordinates from topology alone. Edge weights
//! `x_ij` estimate geometric closeness from degrees and common neighbors;
//! Laplacian eigenmaps treat `1/x` as an affinity and read angles off the
//! first nontrivial eigenvectors, while the MCA variants thread all nodes
//! along a minimum spanning tree of `x` and place them equidistantly.
//! Radial coordinates depend only on degree order and the target exponent.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::f64::consts::TAU;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::coords::AngularCoords;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Repulsion-attraction edge weight. Both rules grow with the endpoints'
/// external degrees and shrink with their common neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreweightRule {
    /// `(1 + e_i + e_j) / (1 + CN_ij)`
    Ra1,
    /// `(1 + e_i + e_j + e_i·e_j) / (1 + CN_ij)`
    Ra2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McaVariant {
    /// Append every new tree node at the tail of the ordering.
    Mca1,
    /// Push at the head or tail depending on which half holds the parent.
    Mca2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionMethod {
    LaplacianEigenmaps,
    Mca(McaVariant),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dims {
    Two,
    Three,
}

impl Dims {
    pub fn count(self) -> usize {
        match self {
            Dims::Two => 2,
            Dims::Three => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EmbeddingSpec {
    pub preweight: PreweightRule,
    pub method: ReductionMethod,
    pub dims: Dims,
    /// Power-law exponent for the radial coordinates, `> 1`.
    pub gamma: f64,
}

impl EmbeddingSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.gamma.is_finite() || self.gamma <= 1.0 {
            return Err(Error::InvalidInput(format!(
                "gamma {} must be finite and above 1",
                self.gamma
            )));
        }
        if matches!(self.method, ReductionMethod::Mca(_)) && self.dims == Dims::Three {
            return Err(Error::InvalidInput(
                "curvilinear orderings are circular; 3D embedding requires Laplacian eigenmaps".into(),
            ));
        }
        Ok(())
    }
}

/// Undirected graph with positive finite edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    adj: Vec<Vec<(usize, f64)>>,
}

impl WeightedGraph {
    pub fn from_edges(
        nodes: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut adj = vec![Vec::new(); nodes];
        for (u, v, w) in edges {
            if u >= nodes || v >= nodes {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) out of range for {nodes} nodes"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at node {u}")));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "weight {w} on edge ({u}, {v}) is not positive and finite"
                )));
            }
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable_by_key(|e| e.0);
            if list.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::InvalidInput(format!("duplicate edge at node {u}")));
            }
        }
        Ok(WeightedGraph { adj })
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adj[node].len()
    }

    pub fn neighbors(&self, node: usize) -> &[(usize, f64)] {
        &self.adj[node]
    }

    /// Edges with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == n
    }
}

/// Number of common neighbors of `u` and `v` (both already sorted).
fn common_neighbors(graph: &Graph, u: usize, v: usize) -> usize {
    let (a, b) = (graph.neighbors(u), graph.neighbors(v));
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Assign repulsion-attraction weights to every edge. `e_i` is the number
/// of neighbors of `i` outside the edge and its common neighborhood:
/// `e_i = deg(i) - 1 - CN_ij`.
pub fn preweight(graph: &Graph, rule: PreweightRule) -> WeightedGraph {
    let weighted = graph.edges().map(|(u, v)| {
        let cn = common_neighbors(graph, u, v);
        let e_u = (graph.degree(u) - 1 - cn) as f64;
        let e_v = (graph.degree(v) - 1 - cn) as f64;
        let x = match rule {
            PreweightRule::Ra1 => (1.0 + e_u + e_v) / (1.0 + cn as f64),
            PreweightRule::Ra2 => (1.0 + e_u + e_v + e_u * e_v) / (1.0 + cn as f64),
        };
        (u, v, x)
    });
    WeightedGraph::from_edges(graph.node_count(), weighted)
        .expect("weights from a simple graph are positive and finite")
}

/// Thread all nodes along a minimum spanning tree of the weights (Prim,
/// rooted at the highest-degree node) into a circular ordering.
///
/// Ties are deterministic: the root prefers the lowest id, edges compare
/// by `(weight, new node id, tree node id)`. Weights are compared as raw
/// bits, which orders positive floats correctly.
pub fn mca_ordering(weighted: &WeightedGraph, variant: McaVariant) -> Result<Vec<usize>> {
    let n = weighted.node_count();
    if n == 0 {
        return Err(Error::InvalidInput("ordering of an empty graph".into()));
    }
    if !weighted.is_connected() {
        return Err(Error::InvalidInput("curvilinear ordering requires a connected graph".into()));
    }
    let root = (0..n).max_by_key(|&u| (weighted.degree(u), Reverse(u))).unwrap();
    let mut in_tree = vec![false; n];
    let mut seq: VecDeque<usize> = VecDeque::with_capacity(n);
    let mut heap: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();

    let attach = |seq: &mut VecDeque<usize>, node: usize, parent: Option<usize>| match variant {
        McaVariant::Mca1 => seq.push_back(node),
        McaVariant::Mca2 => match parent {
            None => seq.push_back(node),
            Some(p) => {
                let pos = seq.iter().position(|&x| x == p).expect("parent is in the ordering");
                if pos < seq.len() / 2 {
                    seq.push_front(node);
                } else {
                    seq.push_back(node);
                }
            }
        },
    };

    in_tree[root] = true;
    attach(&mut seq, root, None);
    for &(v, w) in weighted.neighbors(root) {
        heap.push(Reverse((w.to_bits(), v, root)));
    }
    while let Some(Reverse((_, node, parent))) = heap.pop() {
        if in_tree[node] {
            continue;
        }
        in_tree[node] = true;
        attach(&mut seq, node, Some(parent));
        for &(v, w) in weighted.neighbors(node) {
            if !in_tree[v] {
                heap.push(Reverse((w.to_bits(), v, node)));
            }
        }
    }
    Ok(seq.into())
}

/// Equidistant angles for a circular ordering: position `k` of `n` gets
/// `2πk/n`.
pub fn angles_from_ordering(ordering: &[usize]) -> Vec<f64> {
    let n = ordering.len();
    let mut theta = vec![0.0; n];
    for (k, &node) in ordering.iter().enumerate() {
        theta[node] = TAU * k as f64 / n as f64;
    }
    theta
}

/// Angular coordinates from Laplacian eigenmaps over affinities `1/x`.
///
/// Solves the generalized problem `L v = λ D v` through the symmetric
/// form `D^{-1/2} L D^{-1/2}` and reads coordinates from the eigenvectors
/// of the 2nd smallest eigenvalue onward: polar angle of the first two in
/// 2D, unit-sphere normalization of the first three in 3D.
pub fn le_embedding(weighted: &WeightedGraph, dims: Dims) -> Result<AngularCoords> {
    let n = weighted.node_count();
    let k = dims.count();
    if n < k + 1 {
        return Err(Error::InvalidInput(format!(
            "{k}-dimensional eigenmaps need at least {} nodes, got {n}",
            k + 1
        )));
    }
    if !weighted.is_connected() {
        return Err(Error::InvalidInput("eigenmaps require a connected graph".into()));
    }

    let mut affinity = DMatrix::<f64>::zeros(n, n);
    let mut degree = vec![0.0; n];
    for (u, v, x) in weighted.edges() {
        let s = 1.0 / x;
        affinity[(u, v)] = s;
        affinity[(v, u)] = s;
        degree[u] += s;
        degree[v] += s;
    }
    let inv_sqrt: Vec<f64> = degree.iter().map(|&d| 1.0 / d.sqrt()).collect();
    let mut sym = DMatrix::<f64>::identity(n, n);
    for (u, v, _) in weighted.edges() {
        let s = -affinity[(u, v)] * inv_sqrt[u] * inv_sqrt[v];
        sym[(u, v)] = s;
        sym[(v, u)] = s;
    }

    let eigen = SymmetricEigen::try_new(sym, f64::EPSILON, 100 * n * n).ok_or_else(|| {
        Error::Numerical("eigendecomposition of the normalized Laplacian did not converge".into())
    })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[a].partial_cmp(&eigen.eigenvalues[b]).unwrap());

    // generalized eigenvectors, skipping the trivial constant one
    let component = |which: usize, node: usize| -> f64 {
        eigen.eigenvectors[(node, order[1 + which])] * inv_sqrt[node]
    };
    match dims {
        Dims::Two => {
            let theta: Vec<f64> = (0..n)
                .map(|i| component(1, i).atan2(component(0, i)))
                .collect();
            AngularCoords::circle(theta)
        }
        Dims::Three => {
            let mut theta = Vec::with_capacity(n);
            let mut phi = Vec::with_capacity(n);
            for i in 0..n {
                let (x, y, z) = (component(0, i), component(1, i), component(2, i));
                let norm = (x * x + y * y + z * z).sqrt();
                if !norm.is_finite() || norm <= 0.0 {
                    return Err(Error::Numerical(format!(
                        "eigenvector row of node {i} cannot be normalized"
                    )));
                }
                theta.push(y.atan2(x));
                phi.push((z / norm).clamp(-1.0, 1.0).asin());
            }
            AngularCoords::sphere(theta, phi)
        }
    }
}

/// Radial coordinates from degree order: the node with the `i`-th highest
/// degree (1-based, ties by ascending id) sits at
/// `r = 2(β ln i + (1-β) ln N)` with `β = 1/(γ-1)`, clamped at 0.
pub fn radial_coordinates(degrees: &[usize], gamma: f64) -> Result<Vec<f64>> {
    if degrees.is_empty() {
        return Err(Error::InvalidInput("no nodes given".into()));
    }
    if !gamma.is_finite() || gamma <= 1.0 {
        return Err(Error::InvalidInput(format!(
            "gamma {gamma} must be finite and above 1"
        )));
    }
    let n = degrees.len();
    let beta = 1.0 / (gamma - 1.0);
    let ln_n = (n as f64).ln();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&u| (Reverse(degrees[u]), u));
    let mut radii = vec![0.0; n];
    for (pos, &u) in by_degree.iter().enumerate() {
        let r = 2.0 * (beta * ((pos + 1) as f64).ln() + (1.0 - beta) * ln_n);
        radii[u] = r.max(0.0);
    }
    Ok(radii)
}

/// Full coordinates of an embedded network.
#[derive(Debug, Clone)]
pub struct HyperbolicCoords {
    pub angular: AngularCoords,
    pub radii: Vec<f64>,
}

/// Run the whole pipeline on a connected graph. Callers embedding a
/// disconnected network should extract its largest component first.
pub fn embed(graph: &Graph, spec: &EmbeddingSpec) -> Result<HyperbolicCoords> {
    spec.validate()?;
    if graph.node_count() == 0 {
        return Err(Error::InvalidInput("embedding of an empty graph".into()));
    }
    if !graph.is_connected() {
        return Err(Error::InvalidInput(
            "embedding requires a connected graph; extract the largest component first".into(),
        ));
    }
    let weighted = preweight(graph, spec.preweight);
    let angular = match spec.method {
        ReductionMethod::LaplacianEigenmaps => le_embedding(&weighted, spec.dims)?,
        ReductionMethod::Mca(variant) => {
            let ordering = mca_ordering(&weighted, variant)?;
            AngularCoords::circle(angles_from_ordering(&ordering))?
        }
    };
    let degrees: Vec<usize> = (0..graph.node_count()).map(|u| graph.degree(u)).collect();
    let radii = radial_coordinates(&degrees, spec.gamma)?;
    Ok(HyperbolicCoords { angular, radii })
}
