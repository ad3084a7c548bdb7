//! Undirected simple graphs with incrementally maintained per-node triangle
//! counts and the active-node bookkeeping the attachment models rely on.
//!
//! A node is *active* when it lies in at least one triangle. Besides degrees
//! and per-node triangle counts the graph tracks two aggregate counters:
//! the number of active nodes and the number of edges whose endpoints are
//! both active. Both update in O(affected nodes) per insertion; the slow
//! recounting routines exist so tests can cross-check the bookkeeping.

use std::fmt;

use thiserror::Error;

/// Dense node index. Nodes are numbered `0..node_count()` in creation order;
/// an appended node always receives the next unused id.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("node {0} does not exist")]
    UnknownNode(NodeId),
    #[error("self-loop on node {0} rejected")]
    SelfLoop(NodeId),
    #[error("edge {0}-{1} already present")]
    DuplicateEdge(NodeId, NodeId),
}

/// Undirected simple graph. Adjacency is stored as a sorted neighbor list
/// per node so common-neighbor scans cost O(min degree).
#[derive(Clone, Debug, Default)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    triangles: Vec<u64>,
    // active[i] == (triangles[i] > 0), kept explicit so that the pair
    // counter update below can mark nodes progressively.
    active: Vec<bool>,
    edge_count: u64,
    triangle_total: u64,
    active_nodes: u64,
    active_edges: u64,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_nodes(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_node();
        }
        g
    }

    /// Builds a graph on `nodes` nodes from an unordered edge list.
    pub fn from_edges<I>(nodes: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut g = Self::with_nodes(nodes);
        for (u, v) in edges {
            g.add_edge(NodeId(u), NodeId(v))?;
        }
        Ok(g)
    }

    /// Complete graph on `k` nodes.
    pub fn complete(k: usize) -> Self {
        let mut g = Self::with_nodes(k);
        for u in 0..k as u32 {
            for v in (u + 1)..k as u32 {
                g.add_edge(NodeId(u), NodeId(v)).expect("pairs are unique");
            }
        }
        g
    }

    /// Path graph on `k` nodes (no triangles, every node inactive).
    pub fn path(k: usize) -> Self {
        let mut g = Self::with_nodes(k);
        for u in 1..k as u32 {
            g.add_edge(NodeId(u - 1), NodeId(u)).expect("pairs are unique");
        }
        g
    }

    /// The diamond graph: complete graph on four nodes minus one edge, i.e.
    /// a quadrilateral with one of its two diagonals. Two triangles share an
    /// edge; all four nodes are active.
    pub fn diamond() -> Self {
        Self::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).expect("static edge list")
    }

    /// Appends an isolated node and returns its id.
    pub fn add_node(&mut self) -> NodeId {
        let id = NodeId(self.adj.len() as u32);
        self.adj.push(Vec::new());
        self.triangles.push(0);
        self.active.push(false);
        id
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    /// Total number of triangles in the graph (a third of the per-node sum).
    pub fn total_triangles(&self) -> u64 {
        self.triangle_total
    }

    /// Number of active nodes, i.e. nodes lying in at least one triangle.
    pub fn active_node_count(&self) -> u64 {
        self.active_nodes
    }

    /// Number of edges whose two endpoints are both active.
    pub fn active_edge_count(&self) -> u64 {
        self.active_edges
    }

    pub fn contains(&self, i: NodeId) -> bool {
        i.index() < self.adj.len()
    }

    /// Panics if the node does not exist.
    pub fn degree(&self, i: NodeId) -> usize {
        self.adj[i.index()].len()
    }

    /// Number of triangles through node `i`. Panics if the node does not exist.
    pub fn triangles_of(&self, i: NodeId) -> u64 {
        self.triangles[i.index()]
    }

    /// Panics if the node does not exist.
    pub fn is_active(&self, i: NodeId) -> bool {
        self.active[i.index()]
    }

    pub fn neighbors(&self, i: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj[i.index()].iter().map(|&w| NodeId(w))
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.adj.len() as u32).map(NodeId)
    }

    /// Edges as `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, nbrs)| {
            nbrs.iter()
                .filter(move |&&w| (w as usize) > i)
                .map(move |&w| (NodeId(i as u32), NodeId(w)))
        })
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        if !self.contains(a) || !self.contains(b) {
            return false;
        }
        let (i, j) = if self.adj[a.index()].len() <= self.adj[b.index()].len() {
            (a, b)
        } else {
            (b, a)
        };
        self.adj[i.index()].binary_search(&j.0).is_ok()
    }

    /// Inserts the undirected edge `{a, b}`, updating degrees, per-node and
    /// total triangle counts, and the active-node/active-edge counters.
    pub fn add_edge(&mut self, a: NodeId, b: NodeId) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if !self.contains(a) {
            return Err(GraphError::UnknownNode(a));
        }
        if !self.contains(b) {
            return Err(GraphError::UnknownNode(b));
        }
        let (i, j) = (a.index(), b.index());
        let pos_i = match self.adj[i].binary_search(&b.0) {
            Ok(_) => return Err(GraphError::DuplicateEdge(a, b)),
            Err(p) => p,
        };
        let pos_j = self.adj[j]
            .binary_search(&a.0)
            .expect_err("adjacency must stay symmetric");
        self.adj[i].insert(pos_i, b.0);
        self.adj[j].insert(pos_j, a.0);
        self.edge_count += 1;

        // The new edge counts toward the active-edge set under the activity
        // in force before any node wakes up; nodes woken below add their
        // incident edges themselves.
        if self.active[i] && self.active[j] {
            self.active_edges += 1;
        }

        let common = intersect_sorted(&self.adj[i], &self.adj[j]);
        let closed = common.len() as u64;
        if closed == 0 {
            return Ok(());
        }
        self.triangle_total += closed;

        let mut woken: Vec<usize> = Vec::new();
        let bump = |idx: usize, by: u64, triangles: &mut Vec<u64>, woken: &mut Vec<usize>| {
            if triangles[idx] == 0 {
                woken.push(idx);
            }
            triangles[idx] += by;
        };
        bump(i, closed, &mut self.triangles, &mut woken);
        bump(j, closed, &mut self.triangles, &mut woken);
        for &k in &common {
            bump(k as usize, 1, &mut self.triangles, &mut woken);
        }

        // Mark woken nodes one at a time: an edge between two woken nodes is
        // counted exactly once, when the second endpoint is processed.
        for &u in &woken {
            for &w in &self.adj[u] {
                if self.active[w as usize] {
                    self.active_edges += 1;
                }
            }
            self.active[u] = true;
            self.active_nodes += 1;
        }
        Ok(())
    }

    /// Clustering coefficient of node `i`: the fraction of its neighbor
    /// pairs that are adjacent; zero for degree below two.
    pub fn clustering_coefficient(&self, i: NodeId) -> Result<f64, GraphError> {
        if !self.contains(i) {
            return Err(GraphError::UnknownNode(i));
        }
        Ok(self.clustering_by_index(i.index()))
    }

    #[inline]
    pub(crate) fn clustering_by_index(&self, idx: usize) -> f64 {
        let d = self.adj[idx].len() as u64;
        if d < 2 {
            0.0
        } else {
            2.0 * self.triangles[idx] as f64 / (d * (d - 1)) as f64
        }
    }

    /// Recomputes every per-node triangle count by exhaustive neighbor-pair
    /// scan. Slow; used to validate the incremental maintenance.
    pub fn brute_force_recount(&self) -> Vec<u64> {
        (0..self.adj.len())
            .map(|i| {
                let nbrs = &self.adj[i];
                let mut count = 0u64;
                for (a, &u) in nbrs.iter().enumerate() {
                    for &w in &nbrs[a + 1..] {
                        if self.has_edge(NodeId(u), NodeId(w)) {
                            count += 1;
                        }
                    }
                }
                count
            })
            .collect()
    }

    /// Recomputes `(active_node_count, active_edge_count)` from scratch.
    pub fn recompute_active_counts(&self) -> (u64, u64) {
        let nodes = self.triangles.iter().filter(|&&t| t > 0).count() as u64;
        let edges = self
            .edges()
            .filter(|&(u, v)| self.triangles[u.index()] > 0 && self.triangles[v.index()] > 0)
            .count() as u64;
        (nodes, edges)
    }
}

/// Intersection of two sorted slices.
fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[x]);
                x += 1;
                y += 1;
            }
        }
    }
    out
}
