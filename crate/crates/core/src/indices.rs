//! Degree-based topological indices.
//!
//! Every index here is a sum over edges of a function of the two endpoint
//! degrees:
//!
//! | index | edge term |
//! |-------|-----------|
//! | Randić `R` | `1 / sqrt(du * dv)` |
//! | sum-connectivity `SC` | `1 / sqrt(du + dv)` |
//! | atom-bond connectivity `ABC` | `sqrt((du + dv - 2) / (du * dv))` |
//! | atom-bond sum-connectivity `ABS` | `sqrt((du + dv - 2) / (du + dv))` |
//!
//! `theta = ABC - ABS`. Its sign is the quantity being surveyed, and it can be
//! as small as 1e-4 for 15-vertex trees, so whole-graph sums are
//! accumulated with compensation over degree pairs in sorted order. Graphs
//! with the same multiset of edge degree pairs therefore get bit-identical
//! values.

use serde::Serialize;
use thiserror::Error;
use twofloat::TwoFloat;

use crate::graph::{Graph, GraphError};
use crate::sum::NeumaierSum;

/// Default half-width of the band around zero treated as `theta = 0`.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// A re-verified `|theta|` at or below this is reported as a genuine zero.
pub const EXTENDED_ZERO_TOL: f64 = 1e-24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndexError {
    #[error("degree must be positive, got ({0}, {1})")]
    NonPositiveDegree(usize, usize),
    #[error("({x}, {y}) is outside the domain y >= x >= 1, y >= 2")]
    Domain { x: usize, y: usize },
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_degrees(du: usize, dv: usize) -> Result<(), IndexError> {
    if du == 0 || dv == 0 {
        Err(IndexError::NonPositiveDegree(du, dv))
    } else {
        Ok(())
    }
}

#[inline]
fn abc_term(du: usize, dv: usize) -> f64 {
    ((du + dv - 2) as f64 / (du * dv) as f64).sqrt()
}

#[inline]
fn abs_term(du: usize, dv: usize) -> f64 {
    ((du + dv - 2) as f64 / (du + dv) as f64).sqrt()
}

#[inline]
fn randic_term(du: usize, dv: usize) -> f64 {
    1.0 / ((du * dv) as f64).sqrt()
}

#[inline]
fn sc_term(du: usize, dv: usize) -> f64 {
    1.0 / ((du + dv) as f64).sqrt()
}

pub fn abc_edge(du: usize, dv: usize) -> Result<f64, IndexError> {
    check_degrees(du, dv)?;
    Ok(abc_term(du, dv))
}

pub fn abs_edge(du: usize, dv: usize) -> Result<f64, IndexError> {
    check_degrees(du, dv)?;
    Ok(abs_term(du, dv))
}

pub fn randic_edge(du: usize, dv: usize) -> Result<f64, IndexError> {
    check_degrees(du, dv)?;
    Ok(randic_term(du, dv))
}

pub fn sc_edge(du: usize, dv: usize) -> Result<f64, IndexError> {
    check_degrees(du, dv)?;
    Ok(sc_term(du, dv))
}

/// Per-edge contribution to `ABS - ABC` for an edge with degrees `x <= y`.
///
/// Negative exactly when `x == 1`; strictly increasing in both arguments on
/// the integer domain `y >= x >= 1, y >= 2`.
pub fn abs_minus_abc(x: usize, y: usize) -> Result<f64, IndexError> {
    if x < 1 || y < x || y < 2 {
        return Err(IndexError::Domain { x, y });
    }
    Ok(abs_term(x, y) - abc_term(x, y))
}

/// All four indices of one graph, plus `theta = abc - abs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndexReport {
    pub randic: f64,
    pub sum_connectivity: f64,
    pub abc: f64,
    pub abs: f64,
    pub theta: f64,
}

impl IndexReport {
    pub const ZERO: IndexReport = IndexReport {
        randic: 0.0,
        sum_connectivity: 0.0,
        abc: 0.0,
        abs: 0.0,
        theta: 0.0,
    };

    /// Computes the report from edge degree pairs. The slice is normalised
    /// (smaller degree first) and sorted in place.
    ///
    /// Panics if any degree is zero.
    pub fn from_degree_pairs(pairs: &mut [(usize, usize)]) -> Self {
        normalize_pairs(pairs);
        let mut r = NeumaierSum::new();
        let mut sc = NeumaierSum::new();
        let mut abc = NeumaierSum::new();
        let mut abs = NeumaierSum::new();
        for &(du, dv) in pairs.iter() {
            assert!(du >= 1, "edge endpoint with degree zero");
            r += randic_term(du, dv);
            sc += sc_term(du, dv);
            abc += abc_term(du, dv);
            abs += abs_term(du, dv);
        }
        let (abc, abs) = (abc.value(), abs.value());
        IndexReport {
            randic: r.value(),
            sum_connectivity: sc.value(),
            abc,
            abs,
            theta: abc - abs,
        }
    }
}

fn normalize_pairs(pairs: &mut [(usize, usize)]) {
    for p in pairs.iter_mut() {
        if p.0 > p.1 {
            *p = (p.1, p.0);
        }
    }
    pairs.sort_unstable();
}

/// Index report for a connected graph. Order 1 yields all zeros.
pub fn index_report(g: &Graph) -> Result<IndexReport, IndexError> {
    g.require_connected()?;
    Ok(IndexReport::from_degree_pairs(&mut g.edge_degree_pairs()))
}

/// `theta` only, for callers that need nothing else. Same summation order
/// as [`IndexReport::from_degree_pairs`], so the value is bit-identical.
pub fn theta_from_degree_pairs(pairs: &mut [(usize, usize)]) -> f64 {
    normalize_pairs(pairs);
    let mut abc = NeumaierSum::new();
    let mut abs = NeumaierSum::new();
    for &(du, dv) in pairs.iter() {
        abc += abc_term(du, dv);
        abs += abs_term(du, dv);
    }
    abc.value() - abs.value()
}

/// `theta` evaluated in double-double arithmetic (about 106 bits).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtendedTheta {
    pub hi: f64,
    pub lo: f64,
}

impl ExtendedTheta {
    pub fn value(&self) -> f64 {
        self.hi + self.lo
    }

    /// True when the extended value is indistinguishable from zero.
    pub fn is_zero(&self) -> bool {
        self.value().abs() <= EXTENDED_ZERO_TOL
    }
}

/// Re-evaluates `theta` at extended precision. Used to double-check any
/// value that falls inside the zero band before it is reported as a tie.
pub fn extended_theta(pairs: &[(usize, usize)]) -> ExtendedTheta {
    let mut pairs = pairs.to_vec();
    normalize_pairs(&mut pairs);
    let mut total = TwoFloat::from(0.0);
    for (du, dv) in pairs {
        let num = TwoFloat::from((du + dv - 2) as f64);
        let abc = (num / TwoFloat::from((du * dv) as f64)).sqrt();
        let abs = (num / TwoFloat::from((du + dv) as f64)).sqrt();
        total += abc - abs;
    }
    ExtendedTheta {
        hi: total.hi(),
        lo: total.lo(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SignClass {
    Positive,
    Negative,
    ZeroWithinTol,
}

impl SignClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            SignClass::Positive => "positive",
            SignClass::Negative => "negative",
            SignClass::ZeroWithinTol => "zero",
        }
    }
}

pub fn check_tolerance(tol: f64) -> Result<(), IndexError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(IndexError::BadTolerance(tol))
    }
}

/// Trichotomy of `theta`: within `tol` of zero, else its sign.
pub fn sign_class(report: &IndexReport, tol: f64) -> Result<SignClass, IndexError> {
    check_tolerance(tol)?;
    Ok(classify(report.theta, tol))
}

#[inline]
pub(crate) fn classify(theta: f64, tol: f64) -> SignClass {
    if theta.abs() <= tol {
        SignClass::ZeroWithinTol
    } else if theta > 0.0 {
        SignClass::Positive
    } else {
        SignClass::Negative
    }
}
