//! Line graphs: construction, recognition, and pendent-path structure.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Largest order accepted by [`is_line_graph`] (one `u128` adjacency mask per vertex).
pub const MAX_RECOGNITION_ORDER: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineGraphError {
    #[error("graph has no edges")]
    Edgeless,
    #[error("order {order} exceeds the recognition bound {MAX_RECOGNITION_ORDER}")]
    OrderAboveBound { order: usize },
    #[error("graph has no branching vertex (degree >= 3)")]
    NoBranchingVertex,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The line graph of `k`. Vertex `i` of the result is the `i`-th edge of `k`
/// in lexicographic `(u, v)`, `u < v` order; two vertices are adjacent iff
/// the edges share an endpoint.
pub fn line_graph(k: &Graph) -> Result<Graph, LineGraphError> {
    k.require_connected()?;
    let edges: Vec<(usize, usize)> = k.edges().collect();
    if edges.is_empty() {
        return Err(LineGraphError::Edgeless);
    }
    // incident[v]: ids of the edges of k at v, ascending
    let mut incident = vec![Vec::new(); k.order()];
    for (id, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(id);
        incident[v].push(id);
    }
    let mut adjacency = vec![Vec::new(); edges.len()];
    for (id, &(u, v)) in edges.iter().enumerate() {
        let nbrs = &mut adjacency[id];
        // a simple graph has no second edge on both u and v, so the two lists are disjoint
        nbrs.extend(incident[u].iter().chain(&incident[v]).filter(|&&e| e != id));
        nbrs.sort_unstable();
    }
    Ok(Graph::from_sorted_adjacency(adjacency))
}

/// Outcome of line-graph recognition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Recognition {
    LineGraph,
    /// Induced `K_{1,3}`: centre first, then the three pairwise non-adjacent leaves.
    InducedClaw([usize; 4]),
    /// Two odd triangles sharing an edge whose four vertices do not induce
    /// `K_4`: the shared edge, then the two apexes.
    OddTrianglePair([usize; 4]),
}

impl Recognition {
    pub fn is_line_graph(&self) -> bool {
        matches!(self, Recognition::LineGraph)
    }

    pub fn witness(&self) -> Option<&[usize; 4]> {
        match self {
            Recognition::LineGraph => None,
            Recognition::InducedClaw(w) | Recognition::OddTrianglePair(w) => Some(w),
        }
    }
}

/// Decides whether `g` is the line graph of some graph: `g` must have no
/// induced `K_{1,3}`, and any two odd triangles sharing an edge must
/// together induce `K_4`. A triangle is odd when some vertex of `g` is
/// adjacent to an odd number of its vertices.
pub fn is_line_graph(g: &Graph) -> Result<Recognition, LineGraphError> {
    g.require_connected()?;
    let n = g.order();
    if n > MAX_RECOGNITION_ORDER {
        return Err(LineGraphError::OrderAboveBound { order: n });
    }
    let masks = g.masks();
    let adj = |a: usize, b: usize| masks[a] >> b & 1 == 1;

    for v in 0..n {
        let nbrs = g.neighbors(v);
        for (i, &a) in nbrs.iter().enumerate() {
            for (j, &b) in nbrs.iter().enumerate().skip(i + 1) {
                if adj(a, b) {
                    continue;
                }
                for &c in &nbrs[j + 1..] {
                    if !adj(a, c) && !adj(b, c) {
                        return Ok(Recognition::InducedClaw([v, a, b, c]));
                    }
                }
            }
        }
    }

    // odd triangles, grouped by each of their edges
    let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for a in 0..n {
        for b in (a + 1..n).filter(|&b| adj(a, b)) {
            for c in (b + 1..n).filter(|&c| adj(a, c) && adj(b, c)) {
                let tri = 1u128 << a | 1 << b | 1 << c;
                let odd = (0..n).any(|w| (masks[w] & tri).count_ones() % 2 == 1);
                if odd {
                    by_edge.entry((a, b)).or_default().push(c);
                    by_edge.entry((a, c)).or_default().push(b);
                    by_edge.entry((b, c)).or_default().push(a);
                }
            }
        }
    }
    for (&(a, b), apexes) in &by_edge {
        for (i, &c) in apexes.iter().enumerate() {
            for &d in &apexes[i + 1..] {
                if !adj(c, d) {
                    return Ok(Recognition::OddTrianglePair([a, b, c, d]));
                }
            }
        }
    }
    Ok(Recognition::LineGraph)
}

/// A path from a pendent vertex through degree-2 vertices to a branching vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PendentPath {
    /// Leaf first, branching vertex last.
    pub vertices: Vec<usize>,
}

impl PendentPath {
    pub fn leaf(&self) -> usize {
        self.vertices[0]
    }

    pub fn attach_vertex(&self) -> usize {
        *self.vertices.last().expect("a pendent path has at least two vertices")
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }
}

pub fn branching_vertices(g: &Graph) -> Vec<usize> {
    (0..g.order()).filter(|&v| g.degree(v) >= 3).collect()
}

/// Every maximal pendent path, one per leaf, sorted by leaf.
///
/// Requires a connected graph with at least one branching vertex; paths and
/// cycles are rejected.
pub fn pendent_paths(g: &Graph) -> Result<Vec<PendentPath>, LineGraphError> {
    g.require_connected()?;
    if g.max_degree() < 3 {
        return Err(LineGraphError::NoBranchingVertex);
    }
    let paths = g
        .pendent_vertices()
        .into_iter()
        .map(|leaf| {
            let mut vertices = vec![leaf];
            let (mut prev, mut cur) = (leaf, g.neighbors(leaf)[0]);
            vertices.push(cur);
            // connected with a branching vertex: the walk cannot end at another leaf
            while g.degree(cur) == 2 {
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&w| w != prev)
                    .expect("degree two");
                prev = cur;
                cur = next;
                vertices.push(cur);
            }
            debug_assert!(g.degree(cur) >= 3);
            PendentPath { vertices }
        })
        .collect();
    Ok(paths)
}

/// Number of unordered pairs of pendent paths attached to the same vertex.
pub fn adjacent_pendent_pairs(g: &Graph) -> Result<usize, LineGraphError> {
    let mut per_attach: BTreeMap<usize, usize> = BTreeMap::new();
    for p in pendent_paths(g)? {
        *per_attach.entry(p.attach_vertex()).or_default() += 1;
    }
    Ok(per_attach.values().map(|&k| k * (k - 1) / 2).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_key;
    use crate::graph::Shape;

    fn spider_122() -> Graph {
        Graph::from_edge_list(6, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)]).unwrap()
    }

    #[test]
    fn line_graphs_of_standard_families() {
        for n in 3..9 {
            let lp = line_graph(&Graph::path(n)).unwrap();
            assert_eq!(canonical_key(&lp), canonical_key(&Graph::path(n - 1)));
            let lc = line_graph(&Graph::cycle(n)).unwrap();
            assert_eq!(lc.classify_shape().unwrap(), Shape::Cycle);
            assert_eq!(lc.order(), n);
        }
        assert_eq!(line_graph(&Graph::star(3)).unwrap(), Graph::complete(3));
        assert_eq!(line_graph(&Graph::star(4)).unwrap(), Graph::complete(4));
    }

    #[test]
    fn line_graph_degree_identity() {
        let k = spider_122();
        let l = line_graph(&k).unwrap();
        for (id, (u, v)) in k.edges().enumerate() {
            assert_eq!(l.degree(id), k.degree(u) + k.degree(v) - 2);
        }
    }

    #[test]
    fn line_graph_errors() {
        assert_eq!(line_graph(&Graph::path(1)), Err(LineGraphError::Edgeless));
        let split = Graph::path(2).disjoint_union(&Graph::path(2));
        assert_eq!(line_graph(&split), Err(LineGraphError::Graph(GraphError::Disconnected)));
    }

    #[test]
    fn recognition_examples() {
        assert_eq!(
            is_line_graph(&Graph::star(3)).unwrap(),
            Recognition::InducedClaw([0, 1, 2, 3])
        );
        assert!(is_line_graph(&Graph::cycle(5)).unwrap().is_line_graph());
        assert!(is_line_graph(&Graph::complete(4)).unwrap().is_line_graph());
        // K5 minus an edge: two odd triangles share an edge without inducing K4
        let k5e = Graph::from_edge_list(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)],
        )
        .unwrap();
        let verdict = is_line_graph(&k5e).unwrap();
        assert!(matches!(verdict, Recognition::OddTrianglePair(_)));
        assert!(is_line_graph(&Graph::path(128)).unwrap().is_line_graph());
        assert!(is_line_graph(&Graph::path(129)).is_err());
    }

    #[test]
    fn pendent_path_examples() {
        let star = pendent_paths(&Graph::star(3)).unwrap();
        assert_eq!(star.iter().map(PendentPath::length).collect::<Vec<_>>(), vec![1, 1, 1]);
        assert!(star.iter().all(|p| p.attach_vertex() == 0));
        assert_eq!(adjacent_pendent_pairs(&Graph::star(3)).unwrap(), 3);

        let spider = pendent_paths(&spider_122()).unwrap();
        assert_eq!(
            spider.iter().map(PendentPath::length).collect::<Vec<_>>(),
            vec![1, 2, 2]
        );
        assert_eq!(spider[1].vertices, vec![3, 2, 0]);
        assert_eq!(adjacent_pendent_pairs(&spider_122()).unwrap(), 3);

        assert_eq!(pendent_paths(&Graph::cycle(5)), Err(LineGraphError::NoBranchingVertex));
        assert_eq!(pendent_paths(&Graph::path(5)), Err(LineGraphError::NoBranchingVertex));
        assert!(pendent_paths(&Graph::complete(4)).unwrap().is_empty());
        assert_eq!(branching_vertices(&spider_122()), vec![0]);
    }
}
