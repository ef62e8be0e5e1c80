//! Minimal undirected simple graph with sorted adjacency lists.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Build from an edge list. Endpoints must be in range and distinct;
    /// duplicate edges collapse to one.
    pub fn from_edges(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); nodes];
        for (u, v) in edges {
            if u >= nodes || v >= nodes {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) out of range for {nodes} nodes"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at node {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph { adj, edge_count: edge_count / 2 })
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adj[node].len()
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Component id per node; ids are assigned in order of first discovery,
    /// so node 0 is always in component 0.
    pub fn connected_components(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        let comp = self.connected_components();
        comp.iter().all(|&c| c == 0)
    }

    /// Nodes of the largest connected component, ascending. Size ties go to
    /// the component discovered first.
    pub fn largest_component_nodes(&self) -> Vec<usize> {
        let comp = self.connected_components();
        let count = comp.iter().max().map_or(0, |&m| m + 1);
        let mut sizes = vec![0usize; count];
        for &c in &comp {
            sizes[c] += 1;
        }
        let best = (0..count).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))).unwrap_or(0);
        (0..self.node_count()).filter(|&i| comp[i] == best).collect()
    }

    /// Subgraph induced by `nodes` (ascending, deduplicated by the caller).
    /// Node `i` of the result corresponds to `nodes[i]`.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.node_count()];
        for (new, &old) in nodes.iter().enumerate() {
            if old >= self.node_count() || index[old] != usize::MAX {
                return Err(Error::InvalidInput(format!("bad node selection at {old}")));
            }
            index[old] = new;
        }
        let mut edges = Vec::new();
        for &old in nodes {
            for &nbr in &self.adj[old] {
                if old < nbr && index[nbr] != usize::MAX {
                    edges.push((index[old], index[nbr]));
                }
            }
        }
        Graph::from_edges(nodes.len(), edges)
    }
}
