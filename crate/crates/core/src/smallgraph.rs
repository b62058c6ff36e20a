//! Connected graphs of small order, up to isomorphism.
//!
//! Internally generated universes come from brute force over every edge
//! subset of `K_n` with canonical-key dedup. Larger universes are read from
//! graph6 files produced by external generators.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_key_bounded, key_from_masks, CanonicalKey, DEFAULT_CANON_BOUND};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, Graph6Error};

/// Largest order enumerated internally.
pub const MAX_INTERNAL_ORDER: usize = 7;

const SUBSET_CHUNK: u32 = 1 << 14;

#[derive(Debug, Error)]
pub enum UniverseError {
    #[error("internal enumeration supports orders 1..={MAX_INTERNAL_ORDER}, got {0}")]
    UnsupportedOrder(usize),
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: Graph6Error,
    },
    #[error("line {line}: expected order {expected}, found {found}")]
    OrderMismatch { line: usize, expected: usize, found: usize },
    #[error("line {line}: graph is not connected")]
    Disconnected { line: usize },
    #[error("line {line}: graph is isomorphic to the one on line {first}")]
    Duplicate { line: usize, first: usize },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// Every connected graph of order `n` (`1 <= n <= 7`), one canonical
/// representative per isomorphism class, sorted by canonical key.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, UniverseError> {
    if !(1..=MAX_INTERNAL_ORDER).contains(&n) {
        return Err(UniverseError::UnsupportedOrder(n));
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (0..i).map(move |j| (j, i))).collect();
    let subsets: u32 = 1 << pairs.len();
    let min_edges = (n - 1) as u32;
    let full: u32 = (1 << n) - 1;

    let keys: BTreeSet<CanonicalKey> = (0..subsets.div_ceil(SUBSET_CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut seen = HashSet::new();
            let mut masks = vec![0u32; n];
            let lo = chunk * SUBSET_CHUNK;
            let hi = subsets.min(lo + SUBSET_CHUNK);
            for subset in lo..hi {
                if subset.count_ones() < min_edges {
                    continue;
                }
                masks.iter_mut().for_each(|m| *m = 0);
                let mut bits = subset;
                while bits != 0 {
                    let (j, i) = pairs[bits.trailing_zeros() as usize];
                    masks[i] |= 1 << j;
                    masks[j] |= 1 << i;
                    bits &= bits - 1;
                }
                if reach_from_zero(&masks) == full {
                    seen.insert(key_from_masks(&masks));
                }
            }
            seen
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
        .into_iter()
        .collect();
    Ok(keys.iter().map(CanonicalKey::to_graph).collect())
}

fn reach_from_zero(masks: &[u32]) -> u32 {
    let mut reached = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = masks[v] & !reached;
        reached |= fresh;
        frontier |= fresh;
    }
    reached
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniverseSource {
    Internal,
    External(PathBuf),
    Explicit,
}

/// A family of connected graphs to run a verifier over.
#[derive(Debug, Clone)]
pub struct GraphUniverse {
    description: String,
    source: UniverseSource,
    graphs: Vec<Graph>,
}

impl GraphUniverse {
    /// All connected graphs of order `n`, generated internally.
    pub fn internal(n: usize) -> Result<Self, UniverseError> {
        Self::internal_range(n, n)
    }

    /// All connected graphs with order in `min..=max`, generated internally.
    pub fn internal_range(min: usize, max: usize) -> Result<Self, UniverseError> {
        let mut graphs = Vec::new();
        for n in min..=max {
            graphs.extend(enumerate_connected(n)?);
        }
        let description = if min == max {
            format!("connected graphs of order {min} (internal)")
        } else {
            format!("connected graphs of order {min}..={max} (internal)")
        };
        Ok(GraphUniverse {
            description,
            source: UniverseSource::Internal,
            graphs,
        })
    }

    /// Caller-supplied graphs; connectivity is the caller's responsibility.
    pub fn from_graphs(description: impl Into<String>, graphs: Vec<Graph>) -> Self {
        GraphUniverse {
            description: description.into(),
            source: UniverseSource::Explicit,
            graphs,
        }
    }

    /// Reads a graph6 file, one graph per line. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn load(path: impl AsRef<Path>, expect_order: Option<usize>) -> Result<Self, UniverseError> {
        let path = path.as_ref();
        let io_err = |source| UniverseError::Io {
            path: path.to_path_buf(),
            source,
        };
        let file = File::open(path).map_err(io_err)?;
        let graphs = read_graph6_universe(BufReader::new(file), expect_order).map_err(|e| match e {
            ReadError::Io(source) => io_err(source),
            ReadError::Universe(e) => e,
        })?;
        Ok(GraphUniverse {
            description: format!("graph6 file {}", path.display()),
            source: UniverseSource::External(path.to_path_buf()),
            graphs,
        })
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn source(&self) -> &UniverseSource {
        &self.source
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }
}

enum ReadError {
    Io(io::Error),
    Universe(UniverseError),
}

/// Parses and validates a graph6 stream. Graphs within the canonical-form
/// bound are also checked for repeated isomorphism classes.
fn read_graph6_universe(reader: impl BufRead, expect_order: Option<usize>) -> Result<Vec<Graph>, ReadError> {
    let mut graphs = Vec::new();
    let mut first_seen: HashMap<CanonicalKey, usize> = HashMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(ReadError::Io)?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fail = |e| Err(ReadError::Universe(e));
        let g = match parse_graph6(text) {
            Ok(g) => g,
            Err(source) => return fail(UniverseError::Parse { line: line_no, source }),
        };
        if let Some(expected) = expect_order {
            if g.order() != expected {
                return fail(UniverseError::OrderMismatch {
                    line: line_no,
                    expected,
                    found: g.order(),
                });
            }
        }
        if !g.is_connected() {
            return fail(UniverseError::Disconnected { line: line_no });
        }
        if let Ok(key) = canonical_key_bounded(&g, DEFAULT_CANON_BOUND) {
            if let Some(&first) = first_seen.get(&key) {
                return fail(UniverseError::Duplicate { line: line_no, first });
            }
            first_seen.insert(key, line_no);
        }
        graphs.push(g);
    }
    Ok(graphs)
}
