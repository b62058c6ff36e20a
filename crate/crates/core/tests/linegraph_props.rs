use std::collections::HashSet;

use thetagraph::canon::{canonical_key, CanonicalKey};
use thetagraph::linegraph::{adjacent_pendent_pairs, is_line_graph, line_graph};
use thetagraph::smallgraph::enumerate_connected;
use thetagraph::{Graph, Shape};

fn roots(max_order: usize) -> Vec<Graph> {
    (2..=max_order).flat_map(|n| enumerate_connected(n).unwrap()).collect()
}

#[test]
fn size_and_degree_identities() {
    for k in roots(6) {
        let l = line_graph(&k).unwrap();
        assert_eq!(l.order(), k.size());
        let pairs: usize = k.degrees().iter().map(|&d| d * d.saturating_sub(1) / 2).sum();
        assert_eq!(l.size(), pairs);
        for (id, (u, v)) in k.edges().enumerate() {
            assert_eq!(l.degree(id), k.degree(u) + k.degree(v) - 2);
        }
    }
}

#[test]
fn line_graphs_are_recognised() {
    for k in roots(6) {
        let l = line_graph(&k).unwrap();
        assert!(
            is_line_graph(&l).unwrap().is_line_graph(),
            "root with {} edges",
            k.size()
        );
    }
}

/// Every line graph with exactly `n` vertices, up to isomorphism: roots
/// have `n` edges, hence at most `n + 1` vertices when connected.
fn line_graph_keys(n: usize) -> HashSet<CanonicalKey> {
    (2..=n + 1)
        .flat_map(|order| enumerate_connected(order).unwrap())
        .filter(|k| k.size() == n)
        .map(|k| canonical_key(&line_graph(&k).unwrap()).unwrap())
        .collect()
}

#[test]
fn recognition_agrees_with_root_search() {
    let (mut positive, mut negative) = (0, 0);
    for n in 1..=6 {
        let known = line_graph_keys(n);
        for g in enumerate_connected(n).unwrap() {
            let expected = known.contains(&canonical_key(&g).unwrap());
            let verdict = is_line_graph(&g).unwrap();
            assert_eq!(verdict.is_line_graph(), expected, "{g:?}");
            if expected {
                positive += 1;
            } else {
                negative += 1;
                let w = verdict.witness().unwrap();
                assert!(w.iter().all(|&v| v < n));
            }
        }
    }
    assert!(positive > 0 && negative > 0);
}

#[test]
fn line_graphs_have_no_adjacent_pendent_paths() {
    for k in roots(6) {
        if matches!(k.classify_shape().unwrap(), Shape::Path | Shape::Cycle) {
            continue;
        }
        let l = line_graph(&k).unwrap();
        if l.max_degree() < 3 {
            continue;
        }
        assert_eq!(adjacent_pendent_pairs(&l).unwrap(), 0);
    }
}
