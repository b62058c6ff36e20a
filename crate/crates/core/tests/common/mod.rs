#![allow(dead_code)]

use proptest::prelude::*;
use thetagraph::Graph;

/// Connected graph from a random parent array plus extra edges; extras
/// that would be loops or repeats are dropped.
pub fn connected_from(n: usize, parents: &[usize], extra: &[(usize, usize)]) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (parents[i - 1] % i, i)).collect();
    for &(a, b) in extra {
        let (a, b) = (a % n, b % n);
        let e = (a.min(b), a.max(b));
        if a != b && !edges.iter().any(|&(u, v)| (u.min(v), u.max(v)) == e) {
            edges.push(e);
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

pub fn connected_graph(max_order: usize, max_extra: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(move |n| {
        (
            prop::collection::vec(any::<usize>(), n - 1),
            prop::collection::vec((any::<usize>(), any::<usize>()), 0..=max_extra),
        )
            .prop_map(move |(parents, extra)| connected_from(n, &parents, &extra))
    })
}

pub fn tree(min_order: usize, max_order: usize) -> impl Strategy<Value = Graph> {
    (min_order..=max_order).prop_flat_map(|n| {
        prop::collection::vec(any::<usize>(), n - 1).prop_map(move |parents| connected_from(n, &parents, &[]))
    })
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Order-independent key: the lexicographically smallest upper-triangle
/// bit string over all `n!` labelings. Only for tiny graphs.
pub fn brute_force_form(g: &Graph) -> (usize, Vec<bool>) {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let code: Vec<bool> = (1..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .map(|(i, j)| g.has_edge(perm[i], perm[j]))
            .collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    (n, best.unwrap_or_default())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
