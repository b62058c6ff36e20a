use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{f64_roundtrip, opt_f64_roundtrip, SurveyError};
use crate::graph::{Graph, Shape};
use crate::graph6::to_graph6;
use crate::indices::{check_tolerance, index_report};
use crate::linegraph::line_graph;
use crate::smallgraph::GraphUniverse;

/// Largest `|theta(G) - theta(G*)|` accepted for a degree-2 subdivision.
pub const SUBDIVISION_TOL: f64 = 1e-12;

/// Order range of the random graphs used by [`verify_prop2`].
const SUBDIVISION_ORDERS: std::ops::RangeInclusive<usize> = 3..=24;

/// The statements a [`VerificationReport`] can cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Statement {
    /// Minimum degree >= 2 implies `theta <= 0`, with equality only on cycles.
    P1,
    /// Subdividing an edge at a degree-2 vertex leaves `theta` unchanged.
    P2,
    /// Line graphs of connected `K` with `|V(K)| >= 5`, `K` neither path nor cycle, have `theta < 0`.
    T1,
    /// At most `floor(m/2)` pendent vertices and no degree-2 vertex imply `theta < 0`.
    T2,
    /// At most `floor(m/2)` pendent vertices and no degree-2 vertex adjacent
    /// to a vertex of degree 2, 3 or 4 imply `theta < 0`.
    T3,
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Statement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "p1" => Ok(Statement::P1),
            "p2" => Ok(Statement::P2),
            "t1" => Ok(Statement::T1),
            "t2" => Ok(Statement::T2),
            "t3" => Ok(Statement::T3),
            _ => Err(format!("unknown statement `{s}` (expected p1, p2, t1, t2 or t3)")),
        }
    }
}

/// A graph on which a statement's conclusion failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub graph6: String,
    #[serde(serialize_with = "f64_roundtrip")]
    pub value: f64,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub statement: Statement,
    pub universe: String,
    /// Graphs (or trials) within the statement's scope.
    pub checked: usize,
    /// Universe members outside the statement's scope (T1: order below 5,
    /// paths and cycles).
    pub excluded: usize,
    pub hypothesis_holds: usize,
    pub conclusion_failures: Vec<Failure>,
    /// The value closest to violating the conclusion: the largest `theta`
    /// over hypothesis graphs (P1: over non-cycles), or the largest
    /// subdivision residual (P2).
    #[serde(serialize_with = "opt_f64_roundtrip")]
    pub worst_case: Option<f64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.conclusion_failures.is_empty()
    }
}

/// Result of checking one graph.
enum Outcome {
    Excluded,
    HypothesisFails,
    Holds { extreme: Option<f64> },
    Fails { extreme: Option<f64>, failure: Failure },
}

fn assemble(statement: Statement, universe: String, outcomes: Vec<Outcome>, started: Instant) -> VerificationReport {
    let mut report = VerificationReport {
        statement,
        universe,
        checked: 0,
        excluded: 0,
        hypothesis_holds: 0,
        conclusion_failures: Vec::new(),
        worst_case: None,
        elapsed: Duration::ZERO,
    };
    let bump = |worst: &mut Option<f64>, x: Option<f64>| {
        if let Some(x) = x {
            *worst = Some(worst.map_or(x, |w: f64| w.max(x)));
        }
    };
    for outcome in outcomes {
        if matches!(outcome, Outcome::Excluded) {
            report.excluded += 1;
            continue;
        }
        report.checked += 1;
        match outcome {
            Outcome::Excluded | Outcome::HypothesisFails => {}
            Outcome::Holds { extreme } => {
                report.hypothesis_holds += 1;
                bump(&mut report.worst_case, extreme);
            }
            Outcome::Fails { extreme, failure } => {
                report.hypothesis_holds += 1;
                bump(&mut report.worst_case, extreme);
                report.conclusion_failures.push(failure);
            }
        }
    }
    report.elapsed = started.elapsed();
    report
}

fn run_over<F>(statement: Statement, universe: &GraphUniverse, check: F) -> VerificationReport
where
    F: Fn(&Graph) -> Outcome + Sync + Send,
{
    let started = Instant::now();
    let outcomes: Vec<Outcome> = universe.graphs().par_iter().map(check).collect();
    assemble(statement, universe.description().to_string(), outcomes, started)
}

fn theta_of(g: &Graph) -> f64 {
    index_report(g).expect("universe graphs are connected").theta
}

/// Requires `theta < -tol` on every graph where `hypothesis` holds.
fn strict_negative(g: &Graph, tol: f64, hypothesis: bool) -> Outcome {
    if !hypothesis {
        return Outcome::HypothesisFails;
    }
    let theta = theta_of(g);
    if theta < -tol {
        Outcome::Holds { extreme: Some(theta) }
    } else {
        Outcome::Fails {
            extreme: Some(theta),
            failure: Failure {
                graph6: to_graph6(g),
                value: theta,
                reason: format!("theta = {theta:e} is not below -{tol:e}"),
            },
        }
    }
}

/// Graphs with minimum degree at least 2: `theta <= tol`, and
/// `|theta| <= tol` exactly when the graph is a cycle.
pub fn verify_prop1(universe: &GraphUniverse, tol: f64) -> Result<VerificationReport, SurveyError> {
    check_tolerance(tol)?;
    Ok(run_over(Statement::P1, universe, |g| {
        if g.order() < 3 || g.min_degree() < 2 {
            return Outcome::HypothesisFails;
        }
        let theta = theta_of(g);
        let is_cycle = g.classify_shape().expect("connected") == Shape::Cycle;
        let extreme = (!is_cycle).then_some(theta);
        let reason = if theta > tol {
            Some(format!("theta = {theta:e} is positive"))
        } else if (theta.abs() <= tol) != is_cycle {
            Some(if is_cycle {
                format!("cycle with theta = {theta:e}")
            } else {
                format!("non-cycle with theta = {theta:e} within tolerance of zero")
            })
        } else {
            None
        };
        match reason {
            None => Outcome::Holds { extreme },
            Some(reason) => Outcome::Fails {
                extreme,
                failure: Failure {
                    graph6: to_graph6(g),
                    value: theta,
                    reason,
                },
            },
        }
    }))
}

/// A random tree (uniform random parent array) or, with probability one
/// half, a unicyclic graph made from one by closing a cycle. Retried until
/// it has a vertex of degree 2.
fn random_subdivision_host(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let n = rng.gen_range(SUBDIVISION_ORDERS);
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
        if rng.gen_bool(0.5) {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            let (u, v) = (u.min(v), u.max(v));
            if u != v && !edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == (u, v)) {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edge_list(n, &edges).expect("random host is simple");
        if g.degrees().contains(&2) {
            return g;
        }
    }
}

/// `trials` seeded random subdivisions at degree-2 vertices, each checked
/// for `|theta(G) - theta(G*)| <= 1e-12`.
pub fn verify_prop2(trials: usize, seed: u64) -> Result<VerificationReport, SurveyError> {
    if trials == 0 {
        return Err(SurveyError::ZeroTrials);
    }
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcomes = Vec::with_capacity(trials);
    for _ in 0..trials {
        let g = random_subdivision_host(&mut rng);
        let twos: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) == 2).collect();
        let x = *twos.choose(&mut rng).expect("host has a degree-2 vertex");
        let w = *g.neighbors(x).choose(&mut rng).expect("degree two");
        let star = g.subdivide_at_degree2(x, (x, w)).expect("valid subdivision");
        let residual = (theta_of(&g) - theta_of(&star)).abs();
        outcomes.push(if residual <= SUBDIVISION_TOL {
            Outcome::Holds {
                extreme: Some(residual),
            }
        } else {
            Outcome::Fails {
                extreme: Some(residual),
                failure: Failure {
                    graph6: to_graph6(&g),
                    value: residual,
                    reason: format!("subdividing {x}-{w} changed theta by {residual:e}"),
                },
            }
        });
    }
    let universe = format!("{trials} random trees and unicyclic graphs (seed {seed})");
    Ok(assemble(Statement::P2, universe, outcomes, started))
}

/// For every root graph `K` of order at least 5 that is neither a path nor
/// a cycle, requires `theta(L(K)) < -tol`.
pub fn verify_thm1(universe: &GraphUniverse, tol: f64) -> Result<VerificationReport, SurveyError> {
    check_tolerance(tol)?;
    Ok(run_over(Statement::T1, universe, |k| {
        let shape = k.classify_shape().expect("connected");
        if k.order() < 5 || matches!(shape, Shape::Path | Shape::Cycle) {
            return Outcome::Excluded;
        }
        let g = line_graph(k).expect("connected with edges");
        match strict_negative(&g, tol, true) {
            Outcome::Fails { extreme, mut failure } => {
                failure.reason = format!("root {}: {}", to_graph6(k), failure.reason);
                Outcome::Fails { extreme, failure }
            }
            other => other,
        }
    }))
}

fn pendent_count_ok(g: &Graph) -> bool {
    g.size() >= 1 && g.pendent_vertices().len() <= g.size() / 2
}

/// At least one edge, at most `floor(m/2)` pendent vertices, and no vertex of degree 2.
pub fn check_thm2_hypothesis(g: &Graph) -> bool {
    pendent_count_ok(g) && !g.degrees().contains(&2)
}

/// At least one edge, at most `floor(m/2)` pendent vertices, and every
/// degree-2 vertex has no neighbour of degree 2, 3 or 4.
pub fn check_thm3_hypothesis(g: &Graph) -> bool {
    pendent_count_ok(g)
        && (0..g.order())
            .filter(|&v| g.degree(v) == 2)
            .all(|v| g.neighbors(v).iter().all(|&w| !(2..=4).contains(&g.degree(w))))
}

pub fn verify_thm2(universe: &GraphUniverse, tol: f64) -> Result<VerificationReport, SurveyError> {
    check_tolerance(tol)?;
    Ok(run_over(Statement::T2, universe, |g| {
        strict_negative(g, tol, check_thm2_hypothesis(g))
    }))
}

pub fn verify_thm3(universe: &GraphUniverse, tol: f64) -> Result<VerificationReport, SurveyError> {
    check_tolerance(tol)?;
    Ok(run_over(Statement::T3, universe, |g| {
        strict_negative(g, tol, check_thm3_hypothesis(g))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(g: Graph) -> GraphUniverse {
        GraphUniverse::from_graphs("single graph", vec![g])
    }

    #[test]
    fn statement_ids() {
        assert_eq!("t1".parse::<Statement>().unwrap(), Statement::T1);
        assert_eq!("P2".parse::<Statement>().unwrap(), Statement::P2);
        assert!("t4".parse::<Statement>().is_err());
        assert_eq!(Statement::T3.to_string(), "T3");
    }

    #[test]
    fn prop1_examples() {
        let c9 = verify_prop1(&single(Graph::cycle(9)), 1e-12).unwrap();
        assert_eq!((c9.checked, c9.hypothesis_holds), (1, 1));
        assert!(c9.passed());
        assert_eq!(c9.worst_case, None);
        let k4 = verify_prop1(&single(Graph::complete(4)), 1e-12).unwrap();
        assert!(k4.passed());
        assert!(k4.worst_case.unwrap() < 0.0);
        let tree = verify_prop1(&single(Graph::star(4)), 1e-12).unwrap();
        assert_eq!(tree.hypothesis_holds, 0);
    }

    #[test]
    fn prop2_is_reproducible() {
        let a = verify_prop2(200, 7).unwrap();
        let b = verify_prop2(200, 7).unwrap();
        assert!(a.passed());
        assert_eq!(a.checked, 200);
        assert_eq!(a.worst_case, b.worst_case);
        assert!(verify_prop2(0, 7).is_err());
    }

    #[test]
    fn thm1_filters_and_star_root() {
        let paths = GraphUniverse::from_graphs("paths", (1..9).map(Graph::path).collect());
        let r = verify_thm1(&paths, 1e-9).unwrap();
        assert_eq!((r.checked, r.hypothesis_holds, r.excluded), (0, 0, 8));
        assert!(r.passed());
        let star = verify_thm1(&single(Graph::star(4)), 1e-9).unwrap();
        assert_eq!(star.hypothesis_holds, 1);
        assert!(star.passed());
        assert!(star.worst_case.unwrap() < 0.0);
    }

    #[test]
    fn hypothesis_checks() {
        assert!(check_thm2_hypothesis(&Graph::complete(4)));
        assert!(!check_thm2_hypothesis(&Graph::path(3)));
        assert!(!check_thm2_hypothesis(&Graph::path(1)));
        assert!(!check_thm2_hypothesis(&Graph::path(2)));
        assert!(check_thm3_hypothesis(&Graph::complete(5)));
        assert!(!check_thm3_hypothesis(&Graph::cycle(4)));
        // K_{1,5} with one spoke subdivided: the degree-2 vertex sees degrees 5 and 1
        let g = Graph::from_edge_list(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (5, 6)]).unwrap();
        assert!(!check_thm3_hypothesis(&g));
        let edges: Vec<_> = Graph::complete(5).edges().chain([(0, 5)]).collect();
        let g = Graph::from_edge_list(6, &edges).unwrap();
        assert!(check_thm2_hypothesis(&g));
        assert!(verify_thm2(&single(g), 1e-9).unwrap().passed());
    }
}
