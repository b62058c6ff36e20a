use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::Serialize;

use super::{f64_roundtrip, SurveyError};
use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::indices::{
    check_tolerance, classify, extended_theta, theta_from_degree_pairs, ExtendedTheta, IndexReport, SignClass,
};
use crate::treegen::{
    degree_pairs_into, levels_to_graph, partitioned_enumeration, TreePartition, TreeWalker, MAX_TREE_ORDER,
};

pub const DEFAULT_WITNESS_CAP: usize = 100;

/// Sign census of `theta` over every free tree of one order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationRecord {
    pub order: usize,
    pub total_trees: u64,
    pub count_theta_pos: u64,
    pub count_theta_neg: u64,
    pub count_zero_within_tol: u64,
    #[serde(serialize_with = "f64_roundtrip")]
    pub tol: f64,
    /// Trees whose double-precision `theta` fell inside the zero band and
    /// were re-evaluated at extended precision.
    pub reverified_candidates: u64,
    #[serde(serialize_with = "f64_roundtrip")]
    pub min_abs_theta: f64,
    pub min_abs_theta_witness: String,
    /// graph6 of the first `witness_cap` trees with `theta < 0`, in enumeration order.
    pub witnesses_neg: Vec<String>,
    pub witness_cap: usize,
}

impl ClassificationRecord {
    /// `t_n / T_n`: the fraction of trees with `theta < 0`.
    pub fn negative_ratio(&self) -> f64 {
        self.count_theta_neg as f64 / self.total_trees as f64
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CensusOptions {
    pub tol: f64,
    pub witness_cap: usize,
    /// Number of enumeration slices handed to the rayon pool.
    pub partitions: usize,
}

impl CensusOptions {
    pub fn new(tol: f64) -> Self {
        CensusOptions {
            tol,
            witness_cap: DEFAULT_WITNESS_CAP,
            partitions: rayon::current_num_threads() * 4,
        }
    }
}

/// Per-slice partial census. Merging is associative; merging slices in
/// enumeration order reproduces the serial result exactly.
#[derive(Debug, Clone)]
struct Tally {
    total: u64,
    pos: u64,
    neg: u64,
    zero: u64,
    reverified: u64,
    min: Option<(f64, String)>,
    witnesses: Vec<String>,
    cap: usize,
}

impl Tally {
    fn new(cap: usize) -> Self {
        Tally {
            total: 0,
            pos: 0,
            neg: 0,
            zero: 0,
            reverified: 0,
            min: None,
            witnesses: Vec::new(),
            cap,
        }
    }

    fn offer_min(&mut self, abs_theta: f64, levels: &[u8]) {
        let replace = match &self.min {
            None => true,
            Some((best, _)) if abs_theta < *best => true,
            Some((best, _)) if abs_theta > *best => false,
            Some((_, g6)) => to_graph6(&levels_to_graph(levels)) < *g6,
        };
        if replace {
            self.min = Some((abs_theta, to_graph6(&levels_to_graph(levels))));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        self.pos += other.pos;
        self.neg += other.neg;
        self.zero += other.zero;
        self.reverified += other.reverified;
        self.min = match (self.min, other.min) {
            (Some(a), Some(b)) => Some(if cmp_min(&b, &a) == Ordering::Less { b } else { a }),
            (a, b) => a.or(b),
        };
        self.witnesses.extend(other.witnesses);
        self.witnesses.truncate(self.cap);
        self
    }
}

fn cmp_min(a: &(f64, String), b: &(f64, String)) -> Ordering {
    a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1))
}

/// Sign of `theta` with any in-band value re-checked at extended precision.
/// Returns the class and whether a re-check happened.
fn resolve_sign(theta: f64, pairs: &[(usize, usize)], tol: f64) -> (SignClass, bool) {
    match classify(theta, tol) {
        SignClass::ZeroWithinTol => {
            let ext = extended_theta(pairs);
            let class = if ext.is_zero() {
                SignClass::ZeroWithinTol
            } else if ext.value() > 0.0 {
                SignClass::Positive
            } else {
                SignClass::Negative
            };
            (class, true)
        }
        class => (class, false),
    }
}

fn tally_walker(mut walker: TreeWalker, tol: f64, cap: usize) -> Tally {
    let mut tally = Tally::new(cap);
    let mut degrees = Vec::new();
    let mut pairs = Vec::new();
    while let Some(levels) = walker.advance() {
        degree_pairs_into(levels, &mut degrees, &mut pairs);
        let theta = theta_from_degree_pairs(&mut pairs);
        let (class, rechecked) = resolve_sign(theta, &pairs, tol);
        tally.total += 1;
        tally.reverified += u64::from(rechecked);
        match class {
            SignClass::Positive => tally.pos += 1,
            SignClass::Negative => {
                tally.neg += 1;
                if tally.witnesses.len() < cap {
                    tally.witnesses.push(to_graph6(&levels_to_graph(levels)));
                }
            }
            SignClass::ZeroWithinTol => tally.zero += 1,
        }
        tally.offer_min(theta.abs(), levels);
    }
    tally
}

fn slices(n: usize, partitions: usize) -> Vec<TreePartition> {
    partitioned_enumeration(n, partitions.max(1))
}

fn check_order(n: usize) -> Result<(), SurveyError> {
    if n < 3 {
        Err(SurveyError::OrderTooSmall(n))
    } else if n > MAX_TREE_ORDER {
        Err(SurveyError::OrderTooLarge(n))
    } else {
        Ok(())
    }
}

/// Full sign census of the trees of order `n` with default options.
pub fn classify_trees(n: usize, tol: f64) -> Result<ClassificationRecord, SurveyError> {
    classify_trees_with(n, &CensusOptions::new(tol))
}

/// Full sign census of the trees of order `n`. Slices run on the current
/// rayon pool; the result does not depend on the pool size or slice count.
pub fn classify_trees_with(n: usize, opts: &CensusOptions) -> Result<ClassificationRecord, SurveyError> {
    check_order(n)?;
    check_tolerance(opts.tol)?;
    let partials: Vec<Tally> = slices(n, opts.partitions)
        .par_iter()
        .map(|slice| tally_walker(slice.walker(), opts.tol, opts.witness_cap))
        .collect();
    let tally = partials.into_iter().fold(Tally::new(opts.witness_cap), Tally::merge);
    let (min_abs_theta, min_abs_theta_witness) = tally.min.expect("every order has a tree");
    Ok(ClassificationRecord {
        order: n,
        total_trees: tally.total,
        count_theta_pos: tally.pos,
        count_theta_neg: tally.neg,
        count_zero_within_tol: tally.zero,
        tol: opts.tol,
        reverified_candidates: tally.reverified,
        min_abs_theta,
        min_abs_theta_witness,
        witnesses_neg: tally.witnesses,
        witness_cap: opts.witness_cap,
    })
}

/// One row of the `t_n / T_n` table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub order: usize,
    pub total_trees: u64,
    pub negative: u64,
    #[serde(serialize_with = "f64_roundtrip")]
    pub ratio: f64,
}

pub fn ratio_table(n_from: usize, n_to: usize, tol: f64) -> Result<Vec<RatioRow>, SurveyError> {
    check_order(n_from)?;
    if n_to < n_from {
        return Err(SurveyError::EmptyRange(n_from, n_to));
    }
    (n_from..=n_to)
        .map(|n| {
            let rec = classify_trees(n, tol)?;
            Ok(RatioRow {
                order: n,
                total_trees: rec.total_trees,
                negative: rec.count_theta_neg,
                ratio: rec.negative_ratio(),
            })
        })
        .collect()
}

/// A tree with its ABC and ABS values, ranked by `|theta|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TieRecord {
    pub graph6: String,
    #[serde(serialize_with = "f64_roundtrip")]
    pub abc: f64,
    #[serde(serialize_with = "f64_roundtrip")]
    pub abs: f64,
    #[serde(serialize_with = "f64_roundtrip")]
    pub abs_theta: f64,
}

/// Heap entry ordered by `(|theta|, graph6)`; the max sits on top.
struct Ranked(TieRecord);

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Ranked {}
impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .abs_theta
            .total_cmp(&other.0.abs_theta)
            .then_with(|| self.0.graph6.cmp(&other.0.graph6))
    }
}

fn top_k_walker(mut walker: TreeWalker, top_k: usize) -> Vec<TieRecord> {
    let mut heap: BinaryHeap<Ranked> = BinaryHeap::with_capacity(top_k.min(1 << 16) + 1);
    let mut degrees = Vec::new();
    let mut pairs = Vec::new();
    while let Some(levels) = walker.advance() {
        degree_pairs_into(levels, &mut degrees, &mut pairs);
        let theta = theta_from_degree_pairs(&mut pairs);
        let abs_theta = theta.abs();
        if heap.len() == top_k {
            let worst = &heap.peek().expect("non-empty").0;
            if abs_theta > worst.abs_theta {
                continue;
            }
        }
        let report = IndexReport::from_degree_pairs(&mut pairs);
        let candidate = Ranked(TieRecord {
            graph6: to_graph6(&levels_to_graph(levels)),
            abc: report.abc,
            abs: report.abs,
            abs_theta: report.theta.abs(),
        });
        if heap.len() < top_k {
            heap.push(candidate);
        } else if candidate < *heap.peek().expect("non-empty") {
            heap.pop();
            heap.push(candidate);
        }
    }
    heap.into_sorted_vec().into_iter().map(|r| r.0).collect()
}

/// The `top_k` trees of order `n` with the smallest `|theta|`, ascending,
/// ties broken by graph6 string. Clamped to the number of trees.
pub fn find_near_ties(n: usize, top_k: usize) -> Result<Vec<TieRecord>, SurveyError> {
    check_order(n)?;
    if top_k == 0 {
        return Err(SurveyError::ZeroTopK);
    }
    let partitions = rayon::current_num_threads() * 4;
    let partials: Vec<Vec<TieRecord>> = slices(n, partitions)
        .par_iter()
        .map(|slice| top_k_walker(slice.walker(), top_k))
        .collect();
    let mut all: Vec<Ranked> = partials.into_iter().flatten().map(Ranked).collect();
    all.sort();
    all.truncate(top_k);
    Ok(all.into_iter().map(|r| r.0).collect())
}

/// The smallest tree with `theta < 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmallestNegative {
    pub order: usize,
    pub graph6: String,
    /// Whether it is the only tree of its order with `theta < 0`.
    pub unique: bool,
    pub report: IndexReport,
    #[serde(skip)]
    pub graph: Graph,
}

/// Scans orders 3, 4, ... and returns the first tree with `theta < -tol`.
/// When several exist at the first such order, the first in enumeration
/// order is returned and `unique` is false.
pub fn smallest_negative_tree(tol: f64) -> Result<SmallestNegative, SurveyError> {
    check_tolerance(tol)?;
    for n in 3.. {
        let rec = classify_trees_with(
            n,
            &CensusOptions {
                tol,
                witness_cap: 1,
                partitions: 1,
            },
        )?;
        if let Some(g6) = rec.witnesses_neg.first() {
            let graph = crate::graph6::parse_graph6(g6).expect("own output parses");
            let report = crate::indices::index_report(&graph)?;
            return Ok(SmallestNegative {
                order: n,
                graph6: g6.clone(),
                unique: rec.count_theta_neg == 1,
                report,
                graph,
            });
        }
    }
    unreachable!("orders are unbounded")
}

/// A tree whose double-precision `|theta|` lies within a search band,
/// together with its extended-precision re-evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroCandidate {
    pub graph6: String,
    #[serde(serialize_with = "f64_roundtrip")]
    pub theta: f64,
    pub extended: ExtendedTheta,
}

/// Every tree of order `n` with `|theta| <= band`, re-evaluated at extended precision.
pub fn near_zero_candidates(n: usize, band: f64) -> Result<Vec<ZeroCandidate>, SurveyError> {
    check_order(n)?;
    check_tolerance(band)?;
    let mut walker = TreeWalker::new(n);
    let mut degrees = Vec::new();
    let mut pairs = Vec::new();
    let mut out = Vec::new();
    while let Some(levels) = walker.advance() {
        degree_pairs_into(levels, &mut degrees, &mut pairs);
        let theta = theta_from_degree_pairs(&mut pairs);
        if theta.abs() <= band {
            out.push(ZeroCandidate {
                graph6: to_graph6(&levels_to_graph(levels)),
                theta,
                extended: extended_theta(&pairs),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6::parse_graph6;
    use crate::indices::index_report;

    #[test]
    fn small_censuses() {
        for n in 3..=10 {
            let rec = classify_trees(n, 1e-9).unwrap();
            assert_eq!(rec.count_theta_neg, 0, "n = {n}");
            assert_eq!(rec.count_theta_pos, rec.total_trees);
        }
        let eleven = classify_trees(11, 1e-9).unwrap();
        assert_eq!(eleven.count_theta_neg, 1);
        assert_eq!(eleven.witnesses_neg.len(), 1);
    }

    #[test]
    fn census_independent_of_partitioning() {
        let base = classify_trees_with(
            12,
            &CensusOptions {
                tol: 1e-9,
                witness_cap: 3,
                partitions: 1,
            },
        )
        .unwrap();
        for partitions in [2, 5, 64, 1000] {
            let opts = CensusOptions {
                tol: 1e-9,
                witness_cap: 3,
                partitions,
            };
            assert_eq!(classify_trees_with(12, &opts).unwrap(), base);
        }
        assert_eq!(base.witnesses_neg.len(), 3);
        assert_eq!(base.count_theta_neg, 6);
    }

    #[test]
    fn witnesses_are_negative() {
        let rec = classify_trees(12, 1e-9).unwrap();
        for g6 in &rec.witnesses_neg {
            assert!(index_report(&parse_graph6(g6).unwrap()).unwrap().theta < 0.0);
        }
    }

    #[test]
    fn argument_checks() {
        assert!(matches!(classify_trees(2, 1e-9), Err(SurveyError::OrderTooSmall(2))));
        assert!(classify_trees(5, 0.0).is_err());
        assert!(matches!(find_near_ties(5, 0), Err(SurveyError::ZeroTopK)));
        assert!(matches!(ratio_table(6, 5, 1e-9), Err(SurveyError::EmptyRange(6, 5))));
    }

    #[test]
    fn near_ties_of_p3_and_clamping() {
        let p3 = find_near_ties(3, 1).unwrap();
        assert_eq!(p3.len(), 1);
        let expected = 2f64.sqrt() - 2.0 / 3f64.sqrt();
        assert!((p3[0].abs_theta - expected).abs() < 1e-12);
        assert_eq!(p3[0].graph6, to_graph6(&Graph::path(3).relabel(&[1, 0, 2])));
        assert_eq!(find_near_ties(9, 1_000_000).unwrap().len(), 47);
    }

    #[test]
    fn near_ties_are_sorted() {
        let ties = find_near_ties(12, 30).unwrap();
        assert_eq!(ties.len(), 30);
        assert!(ties
            .windows(2)
            .all(|w| (w[0].abs_theta, &w[0].graph6) <= (w[1].abs_theta, &w[1].graph6)));
        let rec = classify_trees(12, 1e-9).unwrap();
        assert_eq!(ties[0].abs_theta, rec.min_abs_theta);
        assert_eq!(ties[0].graph6, rec.min_abs_theta_witness);
    }

    #[test]
    fn ratio_rows() {
        let rows = ratio_table(10, 11, 1e-9).unwrap();
        assert_eq!(rows[0].ratio, 0.0);
        assert_eq!((rows[1].total_trees, rows[1].negative), (235, 1));
        assert!((rows[1].ratio - 1.0 / 235.0).abs() < 1e-15);
    }
}
