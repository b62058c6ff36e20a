//! Isomorphism-free enumeration of free trees.
//!
//! A rooted tree is encoded by the depths of its vertices in depth-first
//! preorder (root at level 1). Free trees are generated as canonical level
//! sequences rooted at a centre, using the successor rule of Wright,
//! Richmond, Odlyzko and McKay: step to the next rooted level sequence, and
//! when the first root subtree violates the centre/canonicity conditions,
//! jump directly to the next admissible sequence. Each free tree of order
//! `n` is produced exactly once, in descending lexicographic order of its
//! level sequence.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LevelSequenceError {
    #[error("level sequence is empty")]
    Empty,
    #[error("first level must be 1, got {0}")]
    BadRoot(u8),
    #[error("level {level} at position {position} is invalid after level {previous}")]
    BadStep { position: usize, level: u8, previous: u8 },
}

/// Depth-first level sequence of a rooted tree: `levels[0] == 1` and every
/// later entry lies in `2..=previous + 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelSequence(Vec<u8>);

impl fmt::Debug for LevelSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LevelSequence({:?})", self.0)
    }
}

impl LevelSequence {
    pub fn new(levels: Vec<u8>) -> Result<Self, LevelSequenceError> {
        let first = *levels.first().ok_or(LevelSequenceError::Empty)?;
        if first != 1 {
            return Err(LevelSequenceError::BadRoot(first));
        }
        for (i, w) in levels.windows(2).enumerate() {
            if w[1] < 2 || w[1] > w[0] + 1 {
                return Err(LevelSequenceError::BadStep {
                    position: i + 1,
                    level: w[1],
                    previous: w[0],
                });
            }
        }
        Ok(LevelSequence(levels))
    }

    pub fn levels(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn parents(&self) -> Vec<usize> {
        let mut parents = Vec::new();
        parents_into(&self.0, &mut parents);
        parents
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut degrees = Vec::new();
        let mut pairs = Vec::new();
        degree_pairs_into(&self.0, &mut degrees, &mut pairs);
        degrees
    }

    /// The tree with vertex `i` at preorder position `i`.
    pub fn to_graph(&self) -> Graph {
        levels_to_graph(&self.0)
    }
}

/// `parents[i]` is the parent of position `i`; the root maps to itself.
pub fn parents_into(levels: &[u8], parents: &mut Vec<usize>) {
    parents.clear();
    let mut last_at = vec![0usize; levels.len() + 2];
    for (i, &l) in levels.iter().enumerate() {
        let l = l as usize;
        parents.push(if i == 0 { 0 } else { last_at[l - 1] });
        last_at[l] = i;
    }
}

/// Fills `degrees` and the edge degree pairs `(deg(parent), deg(child))`
/// straight from a level sequence, without building adjacency.
pub fn degree_pairs_into(levels: &[u8], degrees: &mut Vec<usize>, pairs: &mut Vec<(usize, usize)>) {
    let n = levels.len();
    degrees.clear();
    degrees.resize(n, 0);
    pairs.clear();
    let mut last_at = [0usize; 256];
    let mut parent = Vec::with_capacity(n);
    for (i, &l) in levels.iter().enumerate() {
        let l = l as usize;
        if i > 0 {
            let p = last_at[l - 1];
            degrees[p] += 1;
            degrees[i] += 1;
            parent.push(p);
        }
        last_at[l] = i;
    }
    pairs.extend(parent.iter().enumerate().map(|(c, &p)| (degrees[p], degrees[c + 1])));
}

pub(crate) fn levels_to_graph(levels: &[u8]) -> Graph {
    let mut parents = Vec::new();
    parents_into(levels, &mut parents);
    let edges: Vec<_> = (1..levels.len()).map(|i| (parents[i], i)).collect();
    Graph::from_edge_list(levels.len(), &edges).expect("level sequence yields a simple tree")
}

/// Index one past the first root subtree: the position of the second
/// level-2 entry, or `n` if the root has a single child.
fn first_subtree_end(layout: &[u8]) -> usize {
    layout
        .iter()
        .enumerate()
        .skip(2)
        .find(|&(_, &l)| l == 2)
        .map_or(layout.len(), |(i, _)| i)
}

/// Advances to the next rooted level sequence, changing nothing before
/// position `p` (defaults to the last non-leaf-of-root position).
/// Returns false when there is no successor.
fn next_rooted(layout: &mut [u8], p: Option<usize>) -> bool {
    let p = p.unwrap_or_else(|| {
        let mut p = layout.len() - 1;
        while layout[p] == 2 {
            p -= 1;
        }
        p
    });
    if p == 0 {
        return false;
    }
    let mut q = p - 1;
    while layout[q] != layout[p] - 1 {
        q -= 1;
    }
    for i in p..layout.len() {
        layout[i] = layout[i - p + q];
    }
    true
}

/// Whether the first root subtree `L` and the remainder `R` (root plus the
/// other subtrees) satisfy: height(L) <= height(R), and on equal heights
/// `|L| <= |R|`, and on equal sizes `L <= R` lexicographically.
fn is_admissible(layout: &[u8]) -> bool {
    let m = first_subtree_end(layout);
    let left = &layout[1..m];
    let rest = &layout[m..];
    // heights measured from each part's own root
    let left_height = left.iter().max().map_or(0, |&l| l as usize - 2);
    let rest_height = rest.iter().max().map_or(0, |&l| l as usize - 1);
    if rest_height != left_height {
        return rest_height > left_height;
    }
    let (left_len, rest_len) = (left.len(), rest.len() + 1);
    if left_len != rest_len {
        return left_len < rest_len;
    }
    // re-rooted depths: left as l - 2, rest as [0] followed by l - 1
    let left_depths = left.iter().map(|&l| l - 2);
    let rest_depths = std::iter::once(0).chain(rest.iter().map(|&l| l - 1));
    left_depths.le(rest_depths)
}

/// Moves `layout` to the first admissible sequence at or after it.
fn settle(layout: &mut [u8]) {
    if is_admissible(layout) {
        return;
    }
    let p = first_subtree_end(layout) - 1;
    let jumped_from_deep = layout[p] > 3;
    let advanced = next_rooted(layout, Some(p));
    debug_assert!(advanced, "a successor always exists past the first subtree");
    if jumped_from_deep {
        let m = first_subtree_end(layout);
        let left_height = layout[1..m].iter().max().map_or(0, |&l| l as usize - 2);
        // the remainder becomes a bare path of height left_height + 1
        let n = layout.len();
        let tail = left_height + 1;
        for (k, slot) in layout[n - tail..].iter_mut().enumerate() {
            *slot = (k + 2) as u8;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WalkState {
    /// `layout` still has to be settled before it is emitted.
    Unsettled,
    /// `layout` is admissible and has not been emitted yet.
    Ready,
    /// `layout` was the last emitted sequence.
    Emitted,
    Done,
}

/// Largest order a level sequence can describe.
pub const MAX_TREE_ORDER: usize = u8::MAX as usize;

/// Pull-based walker over canonical level sequences of one order.
///
/// [`TreeWalker::advance`] lends the current sequence without allocating;
/// the `Iterator` impl clones into [`LevelSequence`] values.
#[derive(Debug, Clone)]
pub struct TreeWalker {
    layout: Vec<u8>,
    state: WalkState,
    remaining: Option<usize>,
}

impl TreeWalker {
    /// Walks every free tree of order `n` (`n >= 1`).
    pub fn new(n: usize) -> Self {
        assert!(
            (1..=MAX_TREE_ORDER).contains(&n),
            "tree order must be in 1..={MAX_TREE_ORDER}"
        );
        // the path, rooted at its centre
        let layout: Vec<u8> = (1..=n / 2 + 1).chain(2..=n.div_ceil(2)).map(|l| l as u8).collect();
        let state = if n == 1 { WalkState::Ready } else { WalkState::Unsettled };
        TreeWalker {
            layout,
            state,
            remaining: None,
        }
    }

    /// Resumes at an admissible sequence previously produced by a walker,
    /// emitting at most `limit` sequences.
    fn resume(levels: &[u8], limit: usize) -> Self {
        TreeWalker {
            layout: levels.to_vec(),
            state: WalkState::Ready,
            remaining: Some(limit),
        }
    }

    pub fn advance(&mut self) -> Option<&[u8]> {
        if let Some(0) = self.remaining {
            self.state = WalkState::Done;
        }
        match self.state {
            WalkState::Done => return None,
            WalkState::Ready => {}
            WalkState::Unsettled => settle(&mut self.layout),
            WalkState::Emitted => {
                if self.layout.len() == 1 || !next_rooted(&mut self.layout, None) {
                    self.state = WalkState::Done;
                    return None;
                }
                settle(&mut self.layout);
            }
        }
        self.state = WalkState::Emitted;
        if let Some(r) = self.remaining.as_mut() {
            *r -= 1;
        }
        Some(&self.layout)
    }
}

impl Iterator for TreeWalker {
    type Item = LevelSequence;

    fn next(&mut self) -> Option<LevelSequence> {
        self.advance().map(|l| LevelSequence(l.to_vec()))
    }
}

/// Every free tree of order `n` as a canonical level sequence.
pub fn level_sequences(n: usize) -> TreeWalker {
    TreeWalker::new(n)
}

/// Every free tree of order `n`, each exactly once.
pub fn enumerate_trees(n: usize) -> impl Iterator<Item = Graph> {
    TreeWalker::new(n).map(|s| s.to_graph())
}

/// Number of free trees of order `n`, counted without building graphs.
pub fn count_trees(n: usize) -> u64 {
    let mut walker = TreeWalker::new(n);
    let mut count = 0;
    while walker.advance().is_some() {
        count += 1;
    }
    count
}

/// A contiguous slice of the canonical enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePartition {
    order: usize,
    start: Option<Vec<u8>>,
    len: usize,
}

impl TreePartition {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// First level sequence of the slice, if any.
    pub fn first(&self) -> Option<LevelSequence> {
        self.start.as_ref().map(|s| LevelSequence(s.clone()))
    }

    pub fn walker(&self) -> TreeWalker {
        match &self.start {
            Some(levels) => TreeWalker::resume(levels, self.len),
            None => TreeWalker {
                layout: Vec::new(),
                state: WalkState::Done,
                remaining: Some(0),
            },
        }
    }
}

/// Splits the enumeration of order `n` into `parts` disjoint contiguous
/// slices of near-equal length whose concatenation, in order, is exactly
/// [`level_sequences`]`(n)`. Each slice starts at a recorded canonical
/// sequence, so slices can be walked independently. Trailing slices are
/// empty when `parts` exceeds the number of trees.
pub fn partitioned_enumeration(n: usize, parts: usize) -> Vec<TreePartition> {
    assert!(parts >= 1, "at least one partition is required");
    let total = count_trees(n) as usize;
    let bounds: Vec<usize> = (0..=parts).map(|k| k * total / parts).collect();
    let mut partitions = Vec::with_capacity(parts);
    let mut walker = TreeWalker::new(n);
    let mut index = 0;
    for k in 0..parts {
        let (lo, hi) = (bounds[k], bounds[k + 1]);
        let mut start = None;
        if lo < hi {
            while index <= lo {
                let levels = walker.advance().expect("count matches walk");
                if index == lo {
                    start = Some(levels.to_vec());
                }
                index += 1;
            }
        }
        partitions.push(TreePartition {
            order: n,
            start,
            len: hi - lo,
        });
    }
    partitions
}
