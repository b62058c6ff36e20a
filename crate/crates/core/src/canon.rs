//! Canonical keys for small graphs.
//!
//! The key is the lexicographically smallest upper-triangle adjacency code
//! over all vertex orderings that respect an isomorphism-invariant colouring
//! (iterated degree refinement). Two graphs get the same key iff they are
//! isomorphic. The search is exhaustive inside colour cells, so it is only
//! offered for small orders.

use thiserror::Error;

use crate::graph::Graph;

/// Largest order [`canonical_key_bounded`] will accept (the code must fit a `u128`).
pub const MAX_CANON_ORDER: usize = 16;
pub const DEFAULT_CANON_BOUND: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("order {order} exceeds the canonical-form bound {bound}")]
    OrderAboveBound { order: usize, bound: usize },
}

/// Identifies an isomorphism class: the order plus the minimal adjacency code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    order: u8,
    code: u128,
}

impl CanonicalKey {
    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// Order byte followed by the code bits, big-endian, in graph6 bit order.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.order as usize;
        let bits = n * n.saturating_sub(1) / 2;
        let nbytes = bits.div_ceil(8);
        let mut out = vec![self.order];
        // code holds `bits` bits with the first triangle bit as the most significant
        let aligned = if bits == 0 { 0 } else { self.code << (nbytes * 8 - bits) };
        out.extend((0..nbytes).rev().map(|i| (aligned >> (8 * i)) as u8));
        out
    }

    /// The canonical representative as a labelled graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.order as usize;
        let bits = n * n.saturating_sub(1) / 2;
        let mut masks = vec![0u128; n];
        let mut k = 0;
        for i in 1..n {
            for j in 0..i {
                if self.code >> (bits - 1 - k) & 1 == 1 {
                    masks[i] |= 1 << j;
                    masks[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Graph::from_masks(&masks)
    }
}

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey, CanonError> {
    canonical_key_bounded(g, DEFAULT_CANON_BOUND)
}

pub fn canonical_key_bounded(g: &Graph, bound: usize) -> Result<CanonicalKey, CanonError> {
    let bound = bound.min(MAX_CANON_ORDER);
    if g.order() > bound {
        return Err(CanonError::OrderAboveBound {
            order: g.order(),
            bound,
        });
    }
    let masks: Vec<u32> = g.masks().into_iter().map(|m| m as u32).collect();
    Ok(key_from_masks(&masks))
}

/// Canonical key from per-vertex neighbour bitmasks (order <= 16).
pub(crate) fn key_from_masks(masks: &[u32]) -> CanonicalKey {
    let n = masks.len();
    debug_assert!(n <= MAX_CANON_ORDER);
    let colors = refine(masks);
    // position p is filled from the cell whose colour is slot_colors[p]
    let mut slot_colors = colors.clone();
    slot_colors.sort_unstable();

    let mut search = Search {
        masks,
        colors: &colors,
        slot_colors: &slot_colors,
        perm: Vec::with_capacity(n),
        used: 0,
        columns: vec![0; n],
        best: None,
        best_version: 0,
    };
    search.descend(0, false);
    let best = search.best.expect("at least one ordering exists");

    let mut code = 0u128;
    for (p, &col) in best.iter().enumerate().skip(1) {
        code = (code << p) | col as u128;
    }
    CanonicalKey { order: n as u8, code }
}

/// Iterated degree refinement. Returns a colour per vertex; colours are
/// ranks of isomorphism-invariant signatures, so cell order is invariant.
fn refine(masks: &[u32]) -> Vec<u32> {
    let n = masks.len();
    let mut colors: Vec<u32> = masks.iter().map(|m| m.count_ones()).collect();
    let mut classes = distinct(&mut colors.clone());
    let mut signatures = vec![(0u32, 0u64); n];
    let mut ranked = Vec::with_capacity(n);
    loop {
        // neighbour colour histogram, 4 bits per colour (degrees are < 16)
        for v in 0..n {
            let mut hist = 0u64;
            let mut m = masks[v];
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                hist += 1 << (4 * colors[u]);
                m &= m - 1;
            }
            signatures[v] = (colors[v], hist);
        }
        ranked.clear();
        ranked.extend_from_slice(&signatures);
        let next_classes = distinct(&mut ranked);
        for v in 0..n {
            colors[v] = ranked[..next_classes].binary_search(&signatures[v]).expect("present") as u32;
        }
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

/// Sorts and dedups in place, returning the number of distinct values.
fn distinct<T: Ord + Copy>(values: &mut Vec<T>) -> usize {
    values.sort_unstable();
    values.dedup();
    values.len()
}

struct Search<'a> {
    masks: &'a [u32],
    colors: &'a [u32],
    slot_colors: &'a [u32],
    perm: Vec<usize>,
    used: u32,
    /// columns[p]: adjacency of position p to positions 0..p, position 0 in the high bit.
    columns: Vec<u32>,
    best: Option<Vec<u32>>,
    best_version: u64,
}

impl Search<'_> {
    /// `below`: the current prefix is already strictly smaller than `best`.
    fn descend(&mut self, p: usize, mut below: bool) {
        let n = self.masks.len();
        if p == n {
            if below || self.best.is_none() {
                self.best = Some(self.columns.clone());
                self.best_version += 1;
            }
            return;
        }
        let cell_color = self.slot_colors[p];
        let mut tried: u32 = 0;
        for v in 0..n {
            if self.used >> v & 1 == 1 || self.colors[v] != cell_color {
                continue;
            }
            // twins are swapped by an automorphism fixing every placed vertex
            if (0..n).any(|u| tried >> u & 1 == 1 && self.twins(u, v)) {
                continue;
            }
            tried |= 1 << v;

            let col = self
                .perm
                .iter()
                .fold(0u32, |acc, &u| acc << 1 | (self.masks[v] >> u & 1));
            let mut now_below = below;
            if !below {
                if let Some(best) = &self.best {
                    match col.cmp(&best[p]) {
                        std::cmp::Ordering::Greater => continue,
                        std::cmp::Ordering::Less => now_below = true,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            self.columns[p] = col;
            self.perm.push(v);
            self.used |= 1 << v;
            let version = self.best_version;
            self.descend(p + 1, now_below);
            self.used &= !(1 << v);
            self.perm.pop();
            if self.best_version != version {
                // the new best extends the current prefix
                below = false;
            }
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        (self.masks[u] & !(1 << v)) == (self.masks[v] & !(1 << u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(g: &Graph) -> CanonicalKey {
        canonical_key(g).unwrap()
    }

    #[test]
    fn relabelled_path_has_same_key() {
        let a = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edge_list(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(key(&a), key(&b));
        assert_ne!(key(&a), key(&Graph::star(3)));
    }

    #[test]
    fn representative_round_trips() {
        for g in [Graph::path(5), Graph::cycle(6), Graph::star(4), Graph::complete(5)] {
            let k = key(&g);
            assert_eq!(key(&k.to_graph()), k);
            assert_eq!(k.to_graph().degrees().iter().sum::<usize>(), 2 * g.size());
        }
    }

    #[test]
    fn bytes_carry_order_and_bits() {
        let k = key(&Graph::path(2));
        assert_eq!(k.to_bytes(), vec![2, 0b1000_0000]);
        assert_eq!(key(&Graph::path(1)).to_bytes(), vec![1]);
    }

    #[test]
    fn bound_is_enforced() {
        assert_eq!(
            canonical_key(&Graph::path(11)),
            Err(CanonError::OrderAboveBound { order: 11, bound: 10 })
        );
        assert!(canonical_key_bounded(&Graph::path(11), 12).is_ok());
    }

    #[test]
    fn regular_graphs_finish() {
        // Petersen graph: 3-regular, refinement cannot split it
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
        let petersen = Graph::from_edge_list(10, &edges).unwrap();
        let prism_edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)];
        let prism = Graph::from_edge_list(6, &prism_edges).unwrap();
        let k33 = Graph::from_edge_list(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert_ne!(key(&prism), key(&k33));
        assert_eq!(key(&petersen), key(&petersen.relabel(&[3, 7, 1, 0, 9, 2, 8, 6, 5, 4])));
        assert_eq!(key(&Graph::complete(10)).to_graph(), Graph::complete(10));
    }
}
