//! Word problem for closed walks in the dual graph.
//!
//! The punctured surface retracts onto the dual graph, so a closed walk is
//! trivial there iff it cyclically free-reduces to nothing. The closed surface
//! adds the vertex link as the only relator; it satisfies C'(1/6) on the
//! standard triangulations, so Dehn's algorithm decides triviality.

use alloc::vec::Vec;

use crate::surface::{Side, Triangulation};

/// Removes spurs (a side immediately followed by its partner), including
/// across the wrap-around of the cyclic word.
pub fn cyclic_reduce(t: &Triangulation, walk: &[Side]) -> Vec<Side> {
    let mut stack: Vec<Side> = Vec::with_capacity(walk.len());
    for &s in walk {
        if let Some(&top) = stack.last() {
            if t.partner(top) == s {
                stack.pop();
                continue;
            }
        }
        stack.push(s);
    }
    let mut lo = 0;
    let mut hi = stack.len();
    while hi - lo >= 2 && t.partner(stack[hi - 1]) == stack[lo] {
        lo += 1;
        hi -= 1;
    }
    stack[lo..hi].to_vec()
}

/// Whether the closed walk is free of spurs, cyclically.
pub fn is_cyclically_reduced(t: &Triangulation, walk: &[Side]) -> bool {
    let n = walk.len();
    (0..n).all(|i| t.partner(walk[i]) != walk[(i + 1) % n]) && !(n == 1 && t.partner(walk[0]) == walk[0])
}

/// Which surface a homotopy question is asked on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    /// The surface with its vertex removed.
    Punctured,
    /// The closed surface.
    Closed,
}

/// Positions of each side in the link and in the reversed link.
struct RelatorIndex<'a> {
    fwd: &'a [Side],
    inv: Vec<Side>,
    pos_fwd: Vec<usize>,
    pos_inv: Vec<usize>,
}

impl<'a> RelatorIndex<'a> {
    fn new(t: &'a Triangulation) -> Self {
        let fwd = t.link();
        let inv: Vec<Side> = fwd.iter().rev().map(|&s| t.partner(s)).collect();
        let mut pos_fwd = alloc::vec![0; fwd.len()];
        let mut pos_inv = alloc::vec![0; fwd.len()];
        for (i, &s) in fwd.iter().enumerate() {
            pos_fwd[s] = i;
        }
        for (i, &s) in inv.iter().enumerate() {
            pos_inv[s] = i;
        }
        RelatorIndex { fwd, inv, pos_fwd, pos_inv }
    }
}

/// One pass of Dehn's algorithm: replaces the first cyclic subword that is
/// more than half of a relator conjugate. Returns `None` when no such subword
/// exists.
fn dehn_step(t: &Triangulation, rel: &RelatorIndex<'_>, w: &[Side]) -> Option<Vec<Side>> {
    let n = w.len();
    let m = rel.fwd.len();
    for start in 0..n {
        for (r, pos) in [(rel.fwd, &rel.pos_fwd), (&rel.inv[..], &rel.pos_inv)] {
            let p = pos[w[start]];
            let mut len = 0;
            while len < n && len < m && w[(start + len) % n] == r[(p + len) % m] {
                len += 1;
            }
            if 2 * len > m {
                // u = r[p .. p+len], relator = u v, so u = v^{-1}.
                let mut out = Vec::with_capacity(n - len + m - len);
                for k in (len..m).rev() {
                    out.push(t.partner(r[(p + k) % m]));
                }
                for k in len..n {
                    out.push(w[(start + k) % n]);
                }
                return Some(out);
            }
        }
    }
    None
}

/// Dehn-reduces a cyclic word: the result has no spur and contains no more
/// than half of any relator conjugate.
pub fn dehn_reduce(t: &Triangulation, walk: &[Side]) -> Vec<Side> {
    let rel = RelatorIndex::new(t);
    let mut w = cyclic_reduce(t, walk);
    while let Some(next) = dehn_step(t, &rel, &w) {
        w = cyclic_reduce(t, &next);
    }
    w
}

/// Whether a closed walk is null-homotopic on the given surface.
pub fn is_null_homotopic(t: &Triangulation, walk: &[Side], ambient: Ambient) -> bool {
    match ambient {
        Ambient::Punctured => cyclic_reduce(t, walk).is_empty(),
        Ambient::Closed => dehn_reduce(t, walk).is_empty(),
    }
}

/// Reverses a walk.
pub fn invert(t: &Triangulation, walk: &[Side]) -> Vec<Side> {
    walk.iter().rev().map(|&s| t.partner(s)).collect()
}
