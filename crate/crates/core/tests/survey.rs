use thetagraph::graph6::{parse_graph6, to_graph6};
use thetagraph::indices::index_report;
use thetagraph::smallgraph::GraphUniverse;
use thetagraph::survey::{
    check_thm2_hypothesis, check_thm3_hypothesis, classify_trees, classify_trees_with, find_near_ties, ratio_table,
    verify_prop1, verify_prop2, verify_thm1, verify_thm2, verify_thm3, CensusOptions,
};
use thetagraph::treegen::count_trees;
use thetagraph::Graph;

#[test]
fn census_totals_add_up() {
    for n in 3..=13 {
        let r = classify_trees(n, 1e-9).unwrap();
        assert_eq!(r.total_trees, count_trees(n));
        assert_eq!(
            r.count_theta_pos + r.count_theta_neg + r.count_zero_within_tol,
            r.total_trees
        );
        assert_eq!(
            r.witnesses_neg.len() as u64,
            r.count_theta_neg.min(r.witness_cap as u64)
        );
        for g6 in &r.witnesses_neg {
            assert!(index_report(&parse_graph6(g6).unwrap()).unwrap().theta < -1e-9);
        }
    }
}

#[test]
fn census_does_not_depend_on_partitioning() {
    let base = classify_trees_with(
        14,
        &CensusOptions {
            tol: 1e-9,
            witness_cap: 40,
            partitions: 1,
        },
    )
    .unwrap();
    for partitions in [2, 7, 64] {
        let r = classify_trees_with(
            14,
            &CensusOptions {
                tol: 1e-9,
                witness_cap: 40,
                partitions,
            },
        )
        .unwrap();
        assert_eq!(r, base, "{partitions} partitions");
    }
}

#[test]
fn witness_cap_truncates_but_counts_stay_exact() {
    let r = classify_trees_with(
        13,
        &CensusOptions {
            tol: 1e-9,
            witness_cap: 5,
            partitions: 4,
        },
    )
    .unwrap();
    assert_eq!(r.count_theta_neg, 31);
    assert_eq!(r.witnesses_neg.len(), 5);
    let full = classify_trees(13, 1e-9).unwrap();
    assert_eq!(r.witnesses_neg[..], full.witnesses_neg[..5]);
}

#[test]
fn near_ties_for_the_three_vertex_path() {
    let ties = find_near_ties(3, 1).unwrap();
    assert_eq!(ties.len(), 1);
    assert_eq!(
        parse_graph6(&ties[0].graph6).unwrap().classify_shape().unwrap(),
        thetagraph::Shape::Path
    );
    let expected = 2f64.sqrt() - 2.0 / 3f64.sqrt();
    assert!((ties[0].abs_theta - expected).abs() < 1e-12);
    assert!((ties[0].abc - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn near_ties_clamp_and_sort() {
    let ties = find_near_ties(9, 1_000_000).unwrap();
    assert_eq!(ties.len() as u64, count_trees(9));
    assert!(ties
        .windows(2)
        .all(|w| (w[0].abs_theta, &w[0].graph6) <= (w[1].abs_theta, &w[1].graph6)));
    for t in &ties {
        assert_eq!(t.abs_theta, (t.abc - t.abs).abs());
    }
    assert_eq!(find_near_ties(9, 3).unwrap()[..], ties[..3]);
}

#[test]
fn ratio_rows() {
    let rows = ratio_table(10, 11, 1e-9).unwrap();
    assert_eq!((rows[0].total_trees, rows[0].negative, rows[0].ratio), (106, 0, 0.0));
    assert_eq!((rows[1].total_trees, rows[1].negative), (235, 1));
    assert!((rows[1].ratio - 1.0 / 235.0).abs() < 1e-15);
    assert!(ratio_table(5, 4, 1e-9).is_err());
    assert!(ratio_table(2, 4, 1e-9).is_err());
}

#[test]
fn verifiers_pass_on_small_universes() {
    let u = GraphUniverse::internal_range(1, 6).unwrap();
    for report in [
        verify_prop1(&u, 1e-12).unwrap(),
        verify_thm2(&u, 1e-9).unwrap(),
        verify_thm3(&u, 1e-9).unwrap(),
    ] {
        assert!(report.passed(), "{report:?}");
        assert!(report.hypothesis_holds > 0);
        assert_eq!(report.checked, u.len());
    }
    let five = verify_thm1(&GraphUniverse::internal(5).unwrap(), 1e-9).unwrap();
    assert_eq!((five.checked, five.hypothesis_holds, five.excluded), (19, 19, 2));
    assert!(five.passed());
}

#[test]
fn hypotheses_are_consistent_with_the_universe() {
    for g in GraphUniverse::internal_range(2, 6).unwrap().graphs() {
        // the degree-2 condition of the second theorem implies that of the third
        if check_thm2_hypothesis(g) {
            assert!(check_thm3_hypothesis(g));
        }
    }
}

#[test]
fn subdivision_trials_reproduce() {
    let a = verify_prop2(2000, 42).unwrap();
    let b = verify_prop2(2000, 42).unwrap();
    assert!(a.passed());
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn small_subdivision_examples() {
    let p4 = Graph::path(4);
    let p5 = p4.subdivide_at_degree2(1, (1, 2)).unwrap();
    assert_eq!(to_graph6(&p5).len(), to_graph6(&Graph::path(5)).len());
    let d = index_report(&p4).unwrap().theta - index_report(&p5).unwrap().theta;
    assert!(d.abs() <= 1e-12);
    let c4 = Graph::cycle(3).subdivide_at_degree2(0, (0, 1)).unwrap();
    assert_eq!(index_report(&c4).unwrap().theta, 0.0);
    assert_eq!(index_report(&Graph::cycle(3)).unwrap().theta, 0.0);
}
