use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use thetagraph::graph6::{parse_graph6, to_graph6};
use thetagraph::indices::{index_report, sign_class};
use thetagraph::smallgraph::{enumerate_connected, GraphUniverse};
use thetagraph::survey::{
    classify_trees_with, find_near_ties, verify_prop1, verify_prop2, verify_thm1, verify_thm2, verify_thm3,
    CensusOptions, ClassificationRecord, Statement, VerificationReport,
};
use thetagraph::treegen::{enumerate_trees, MAX_TREE_ORDER};

use crate::config::{EnumKind, Format, OrderRange, RunConfig, DEFAULT_TOP_K, DEFAULT_TRIALS};
use crate::output::{open_output, roundtrip, sig9, write_csv, write_json, write_lines};

pub const EXIT_COUNTEREXAMPLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

fn input_lines(cfg: &RunConfig) -> Result<Box<dyn BufRead>> {
    Ok(match &cfg.input {
        Some(p) => Box::new(BufReader::new(
            File::open(p).with_context(|| format!("opening {}", p.display()))?,
        )),
        None => Box::new(BufReader::new(io::stdin().lock())),
    })
}

#[derive(Serialize)]
struct IndexRow {
    line: usize,
    graph6: String,
    n: usize,
    m: usize,
    randic: String,
    sum_connectivity: String,
    abc: String,
    abs: String,
    theta: String,
    sign: &'static str,
}

pub fn index(cfg: &RunConfig) -> Result<ExitCode> {
    let format = cfg.format_among(&[Format::Csv, Format::Json], "index")?;
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (idx, line) in input_lines(cfg)?.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.context("reading input")?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let graph = match parse_graph6(text) {
            Ok(g) => g,
            Err(e) => {
                errors.push(format!("line {line_no}: {e}"));
                continue;
            }
        };
        let report = match index_report(&graph) {
            Ok(r) => r,
            Err(e) => {
                errors.push(format!("line {line_no}: {e}"));
                continue;
            }
        };
        let fmt: fn(f64) -> String = if format == Format::Csv { sig9 } else { roundtrip };
        rows.push(IndexRow {
            line: line_no,
            graph6: to_graph6(&graph),
            n: graph.order(),
            m: graph.size(),
            randic: fmt(report.randic),
            sum_connectivity: fmt(report.sum_connectivity),
            abc: fmt(report.abc),
            abs: fmt(report.abs),
            theta: fmt(report.theta),
            sign: sign_class(&report, cfg.tol)?.as_str(),
        });
    }
    let out = open_output(cfg.out.as_deref())?;
    match format {
        Format::Json => write_json(out, &rows)?,
        _ => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.line.to_string(),
                        r.graph6.clone(),
                        r.n.to_string(),
                        r.m.to_string(),
                        r.randic.clone(),
                        r.sum_connectivity.clone(),
                        r.abc.clone(),
                        r.abs.clone(),
                        r.theta.clone(),
                        r.sign.to_string(),
                    ]
                })
                .collect();
            let header = [
                "line",
                "graph6",
                "n",
                "m",
                "randic",
                "sum_connectivity",
                "abc",
                "abs",
                "theta",
                "sign",
            ];
            write_csv(out, "index", &header, &table)?;
        }
    }
    if errors.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for e in &errors {
            eprintln!("error: {e}");
        }
        Ok(ExitCode::from(EXIT_USAGE))
    }
}

pub fn scan(cfg: &RunConfig, range: OrderRange, witness_out: Option<PathBuf>) -> Result<ExitCode> {
    let format = cfg.format_among(&[Format::Csv, Format::Json, Format::Graph6], "scan")?;
    let opts = CensusOptions {
        witness_cap: cfg.witness_cap,
        ..CensusOptions::new(cfg.tol)
    };
    let mut records: Vec<ClassificationRecord> = Vec::new();
    for n in range.from..=range.to {
        let started = Instant::now();
        let rec = classify_trees_with(n, &opts)?;
        eprintln!(
            "order {n}: {} trees, {} negative ({:.2?})",
            rec.total_trees,
            rec.count_theta_neg,
            started.elapsed()
        );
        records.push(rec);
    }
    let witnesses = || records.iter().flat_map(|r| r.witnesses_neg.iter());
    if let Some(path) = witness_out {
        write_lines(open_output(Some(&path))?, witnesses())?;
    }
    let out = open_output(cfg.out.as_deref())?;
    match format {
        Format::Json => write_json(out, &records)?,
        Format::Graph6 => write_lines(out, witnesses())?,
        Format::Csv => {
            let header = [
                "order",
                "total_trees",
                "count_theta_pos",
                "count_theta_neg",
                "count_zero_within_tol",
                "negative_ratio",
                "min_abs_theta",
                "min_abs_theta_witness",
                "reverified_candidates",
                "tol",
            ];
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.order.to_string(),
                        r.total_trees.to_string(),
                        r.count_theta_pos.to_string(),
                        r.count_theta_neg.to_string(),
                        r.count_zero_within_tol.to_string(),
                        sig9(r.negative_ratio()),
                        sig9(r.min_abs_theta),
                        r.min_abs_theta_witness.clone(),
                        r.reverified_candidates.to_string(),
                        roundtrip(r.tol),
                    ]
                })
                .collect();
            write_csv(out, "scan", &header, &rows)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn near_ties(cfg: &RunConfig, n: usize, top_k: Option<usize>) -> Result<ExitCode> {
    let format = cfg.format_among(&[Format::Csv, Format::Json, Format::Graph6], "near-ties")?;
    let ties = find_near_ties(n, top_k.unwrap_or(DEFAULT_TOP_K))?;
    let out = open_output(cfg.out.as_deref())?;
    match format {
        Format::Json => write_json(out, &ties)?,
        Format::Graph6 => write_lines(out, ties.iter().map(|t| &t.graph6))?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = ties
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    vec![
                        (i + 1).to_string(),
                        t.graph6.clone(),
                        sig9(t.abc),
                        sig9(t.abs),
                        sig9(t.abs_theta),
                    ]
                })
                .collect();
            write_csv(out, "near_ties", &["rank", "graph6", "abc", "abs", "abs_theta"], &rows)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn universe(cfg: &RunConfig) -> Result<GraphUniverse> {
    Ok(match &cfg.input {
        Some(path) => GraphUniverse::load(path, None)?,
        None => GraphUniverse::internal_range(1, cfg.max_order)?,
    })
}

pub fn verify(cfg: &RunConfig, statement: Statement, trials: Option<usize>) -> Result<ExitCode> {
    let format = cfg.format_among(&[Format::Json, Format::Csv], "verify")?;
    if trials.is_some() && statement != Statement::P2 {
        bail!("--trials only applies to p2");
    }
    let report: VerificationReport = match statement {
        Statement::P2 => {
            if cfg.input.is_some() {
                bail!("p2 draws random graphs; --in is not accepted");
            }
            verify_prop2(trials.unwrap_or(DEFAULT_TRIALS), cfg.seed)?
        }
        Statement::P1 => verify_prop1(&universe(cfg)?, cfg.tol)?,
        Statement::T1 => verify_thm1(&universe(cfg)?, cfg.tol)?,
        Statement::T2 => verify_thm2(&universe(cfg)?, cfg.tol)?,
        Statement::T3 => verify_thm3(&universe(cfg)?, cfg.tol)?,
    };
    eprintln!(
        "{}: {} checked, {} satisfy the hypothesis, {} failures ({:.2?})",
        report.statement,
        report.checked,
        report.hypothesis_holds,
        report.conclusion_failures.len(),
        report.elapsed
    );
    let out = open_output(cfg.out.as_deref())?;
    match format {
        Format::Csv => {
            let header = [
                "statement",
                "universe",
                "checked",
                "excluded",
                "hypothesis_holds",
                "conclusion_failures",
                "worst_case",
            ];
            let row = vec![
                report.statement.to_string(),
                report.universe.clone(),
                report.checked.to_string(),
                report.excluded.to_string(),
                report.hypothesis_holds.to_string(),
                report.conclusion_failures.len().to_string(),
                report.worst_case.map(sig9).unwrap_or_default(),
            ];
            write_csv(out, "verify", &header, &[row])?;
        }
        _ => write_json(out, &report)?,
    }
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        for f in &report.conclusion_failures {
            eprintln!("counterexample {}: {}", f.graph6, f.reason);
        }
        Ok(ExitCode::from(EXIT_COUNTEREXAMPLE))
    }
}

pub fn enumerate(cfg: &RunConfig, kind: EnumKind, n: usize) -> Result<ExitCode> {
    cfg.format_among(&[Format::Graph6], "enum")?;
    let out = open_output(cfg.out.as_deref())?;
    match kind {
        EnumKind::Trees => {
            if !(1..=MAX_TREE_ORDER).contains(&n) {
                bail!("tree order must be in 1..={MAX_TREE_ORDER}, got {n}");
            }
            write_lines(out, enumerate_trees(n).map(|t| to_graph6(&t)))?;
        }
        EnumKind::Connected => {
            let graphs = enumerate_connected(n)?;
            write_lines(out, graphs.iter().map(to_graph6))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
