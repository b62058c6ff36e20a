//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Every other module consumes [`Graph`]. Graphs are immutable once built:
//! adjacency lists are sorted and degrees are cached at construction.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {vertex} has degree {degree}, expected 2")]
    NotDegreeTwo { vertex: usize, degree: usize },
    #[error("edge {0}-{1} is not incident to vertex {2}")]
    NotIncident(usize, usize, usize),
    #[error("edge {0}-{1} is not present")]
    MissingEdge(usize, usize),
}

/// Coarse shape of a connected graph, as used by the line-graph theorem filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Shape {
    Path,
    Cycle,
    Star,
    Other,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Shape::Path => "path",
            Shape::Cycle => "cycle",
            Shape::Star => "star",
            Shape::Other => "other",
        };
        f.write_str(s)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    degrees: Vec<usize>,
    size: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an explicit edge list.
    ///
    /// Endpoints must lie in `0..n`; self-loops and repeated edges (in either
    /// orientation) are rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0];
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(Self::from_sorted_adjacency(adjacency))
    }

    /// Callers guarantee sorted, symmetric, loop-free, duplicate-free lists.
    pub(crate) fn from_sorted_adjacency(adjacency: Vec<Vec<usize>>) -> Self {
        let degrees: Vec<usize> = adjacency.iter().map(Vec::len).collect();
        let size = degrees.iter().sum::<usize>() / 2;
        Graph {
            adjacency,
            degrees,
            size,
        }
    }

    /// Builds a graph from per-vertex neighbour bitmasks (bit `j` of `masks[i]`
    /// set iff `i ~ j`). Requires `masks.len() <= 128`.
    pub(crate) fn from_masks(masks: &[u128]) -> Self {
        let adjacency = masks
            .iter()
            .map(|&m| (0..masks.len()).filter(|&j| m >> j & 1 == 1).collect())
            .collect();
        Self::from_sorted_adjacency(adjacency)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edge_list(n, &edges).expect("path is simple")
    }

    /// The n-cycle; `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edge_list(n, &edges).expect("cycle is simple")
    }

    /// The star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edge_list(leaves + 1, &edges).expect("star is simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::from_edge_list(n, &edges).expect("complete graph is simple")
    }

    /// Vertex-disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|nbrs| nbrs.iter().map(|&v| v + shift).collect()),
        );
        Self::from_sorted_adjacency(adjacency)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    #[inline]
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Degree pairs `(d_u, d_v)` of every edge, smaller degree first.
    pub fn edge_degree_pairs(&self) -> Vec<(usize, usize)> {
        self.edges()
            .map(|(u, v)| {
                let (a, b) = (self.degrees[u], self.degrees[v]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    /// True iff every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == n
    }

    pub(crate) fn require_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// Vertices of degree one, ascending.
    pub fn pendent_vertices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.degrees[v] == 1).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Inserts a new vertex `n` on the edge `edge`, which must be incident to
    /// the degree-2 vertex `x`. The edge `x-w` becomes `x-n`, `n-w`.
    pub fn subdivide_at_degree2(&self, x: usize, edge: (usize, usize)) -> Result<Graph, GraphError> {
        let n = self.order();
        if x >= n {
            return Err(GraphError::VertexOutOfRange { vertex: x, order: n });
        }
        if self.degrees[x] != 2 {
            return Err(GraphError::NotDegreeTwo {
                vertex: x,
                degree: self.degrees[x],
            });
        }
        let (a, b) = edge;
        let w = match (a == x, b == x) {
            (true, false) => b,
            (false, true) => a,
            _ => return Err(GraphError::NotIncident(a, b, x)),
        };
        if !self.has_edge(x, w) {
            return Err(GraphError::MissingEdge(a, b));
        }
        let y = n;
        let mut adjacency = self.adjacency.clone();
        for (from, to) in [(x, w), (w, x)] {
            let nbrs = &mut adjacency[from];
            let pos = nbrs.binary_search(&to).expect("edge present");
            nbrs.remove(pos);
            // y is the largest id, so pushing keeps the list sorted
            nbrs.push(y);
        }
        let mut y_nbrs = vec![x, w];
        y_nbrs.sort_unstable();
        adjacency.push(y_nbrs);
        Ok(Self::from_sorted_adjacency(adjacency))
    }

    /// Classifies a connected graph as path, cycle, star or other.
    ///
    /// Orders 1 and 2 count as paths. `K_{1,2}` is reported as a path since
    /// the path test is applied first.
    pub fn classify_shape(&self) -> Result<Shape, GraphError> {
        self.require_connected()?;
        let n = self.order();
        if n <= 2 {
            return Ok(Shape::Path);
        }
        let leaves = self.degrees.iter().filter(|&&d| d == 1).count();
        let twos = self.degrees.iter().filter(|&&d| d == 2).count();
        if leaves == 2 && twos == n - 2 {
            return Ok(Shape::Path);
        }
        if twos == n {
            return Ok(Shape::Cycle);
        }
        if leaves == n - 1 && self.degrees.contains(&(n - 1)) {
            return Ok(Shape::Star);
        }
        Ok(Shape::Other)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order(), "permutation length mismatch");
        let mut adjacency = vec![Vec::new(); self.order()];
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            adjacency[perm[u]] = nbrs.iter().map(|&v| perm[v]).collect();
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Self::from_sorted_adjacency(adjacency)
    }

    /// Per-vertex neighbour bitmasks. Panics above 128 vertices.
    pub(crate) fn masks(&self) -> Vec<u128> {
        assert!(self.order() <= 128, "bitmask view limited to 128 vertices");
        self.adjacency
            .iter()
            .map(|nbrs| nbrs.iter().fold(0u128, |m, &v| m | 1 << v))
            .collect()
    }
}
