//! One-vertex triangulations of closed orientable surfaces.
//!
//! A triangulation is a list of `4g - 2` triangles, each a counter-clockwise
//! triple of edge labels. Triangle sides are addressed by a flat index
//! `3 * triangle + position`; every side is glued to exactly one partner side
//! carrying the same edge label, always with reversed orientation (the surface
//! is orientable).
//!
//! Curves avoid the vertex and are recorded as walks in the dual graph: a
//! walk is the cyclic list of sides it exits through. Going once around the
//! vertex is itself such a walk (the *link*); it is the single relator of the
//! surface group on top of the free fundamental group of the dual graph.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a triangle side, `3 * triangle + position`.
pub type Side = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TriangulationData", into = "TriangulationData")]
pub struct Triangulation {
    genus: usize,
    triangles: Vec<[usize; 3]>,
    partner: Vec<Side>,
    edge_sides: Vec<[Side; 2]>,
    link: Vec<Side>,
}

#[derive(Serialize, Deserialize)]
struct TriangulationData {
    genus: usize,
    triangles: Vec<[usize; 3]>,
}

impl TryFrom<TriangulationData> for Triangulation {
    type Error = Error;
    fn try_from(d: TriangulationData) -> Result<Self> {
        Triangulation::from_triangles(d.genus, d.triangles)
    }
}

impl From<Triangulation> for TriangulationData {
    fn from(t: Triangulation) -> Self {
        TriangulationData { genus: t.genus, triangles: t.triangles }
    }
}

impl Triangulation {
    /// Validates and assembles a triangulation from counter-clockwise edge
    /// label triples.
    pub fn from_triangles(genus: usize, triangles: Vec<[usize; 3]>) -> Result<Self> {
        if genus < 2 {
            return Err(Error::UnsupportedGenus(genus));
        }
        let n_edges = 6 * genus - 3;
        if triangles.len() != 4 * genus - 2 {
            return Err(Error::InvalidTriangulation(format!(
                "expected {} triangles, found {}",
                4 * genus - 2,
                triangles.len()
            )));
        }
        let mut edge_sides = vec![[usize::MAX; 2]; n_edges];
        let mut seen = vec![0usize; n_edges];
        for (t, tri) in triangles.iter().enumerate() {
            for (i, &e) in tri.iter().enumerate() {
                if e >= n_edges {
                    return Err(Error::InvalidTriangulation(format!("edge label {e} out of range")));
                }
                if seen[e] == 2 {
                    return Err(Error::InvalidTriangulation(format!("edge {e} used more than twice")));
                }
                edge_sides[e][seen[e]] = 3 * t + i;
                seen[e] += 1;
            }
        }
        if let Some(e) = seen.iter().position(|&c| c != 2) {
            return Err(Error::InvalidTriangulation(format!("edge {e} is not used exactly twice")));
        }
        let mut partner = vec![0; 3 * triangles.len()];
        for &[s, s2] in &edge_sides {
            partner[s] = s2;
            partner[s2] = s;
        }
        let mut tri = Triangulation { genus, triangles, partner, edge_sides, link: Vec::new() };
        let link = tri.trace_link();
        if link.len() != tri.num_sides() {
            return Err(Error::InvalidTriangulation(format!(
                "gluing has more than one vertex (first vertex link has {} of {} corners)",
                link.len(),
                tri.num_sides()
            )));
        }
        tri.link = link;
        Ok(tri)
    }

    fn trace_link(&self) -> Vec<Side> {
        let mut out = vec![0];
        let mut s = self.rotate(0);
        while s != 0 && out.len() <= self.num_sides() {
            out.push(s);
            s = self.rotate(s);
        }
        out
    }

    /// Next side met when turning around the vertex: cross `s` into the
    /// neighbouring triangle and continue past the corner that follows.
    #[inline]
    pub fn rotate(&self, s: Side) -> Side {
        let p = self.partner[s];
        3 * (p / 3) + (p % 3 + 1) % 3
    }

    pub fn genus(&self) -> usize {
        self.genus
    }
    pub fn num_edges(&self) -> usize {
        self.edge_sides.len()
    }
    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }
    pub fn num_sides(&self) -> usize {
        3 * self.triangles.len()
    }
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }
    #[inline]
    pub fn partner(&self, s: Side) -> Side {
        self.partner[s]
    }
    #[inline]
    pub fn edge(&self, s: Side) -> usize {
        self.triangles[s / 3][s % 3]
    }
    pub fn edge_sides(&self, e: usize) -> [Side; 2] {
        self.edge_sides[e]
    }
    /// Cyclic sequence of sides crossed by a small loop around the vertex.
    pub fn link(&self) -> &[Side] {
        &self.link
    }

    /// `(V, E, F)` of the cell structure.
    pub fn cell_counts(&self) -> (usize, usize, usize) {
        (1, self.num_edges(), self.num_triangles())
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64
    }

    /// Whether `walk` is a closed walk in the dual graph.
    pub fn is_closed_walk(&self, walk: &[Side]) -> bool {
        let n = walk.len();
        walk.iter().all(|&s| s < self.num_sides())
            && (0..n).all(|i| self.partner[walk[i]] / 3 == walk[(i + 1) % n] / 3)
    }

    /// Longest piece of the link relator: the longest word occurring at two
    /// distinct places among the cyclic conjugates of the link and its inverse.
    pub fn max_piece_length(&self) -> usize {
        let m = self.link.len();
        let fwd: Vec<Side> = self.link.clone();
        let inv: Vec<Side> = self.link.iter().rev().map(|&s| self.partner[s]).collect();
        let words = [fwd, inv];
        let mut best = 0;
        for (wa, a) in words.iter().enumerate() {
            for i in 0..m {
                for (wb, b) in words.iter().enumerate() {
                    for j in 0..m {
                        if wa == wb && i == j {
                            continue;
                        }
                        let mut k = 0;
                        while k < m && a[(i + k) % m] == b[(j + k) % m] {
                            k += 1;
                        }
                        best = best.max(k);
                    }
                }
            }
        }
        best
    }
}

/// Standard one-vertex triangulation of the closed genus-`genus` surface.
///
/// Start from the `4g`-gon with side word `a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1`
/// and cone it from polygon vertex `v0`. Triangle `m - 1` is `(v0, v_m, v_{m+1})`
/// for `m = 1 .. 4g - 2`, listed as the sides `v0->v_m`, `v_m->v_{m+1}`,
/// `v_{m+1}->v0`. Edge labels: `2i` for `a_{i+1}`, `2i + 1` for `b_{i+1}`, and
/// `2g + m - 2` for the diagonal `v0 v_m`.
pub fn build_surface(genus: usize) -> Result<Triangulation> {
    if genus < 2 {
        return Err(Error::UnsupportedGenus(genus));
    }
    let n = 4 * genus;
    let side_label = |k: usize| -> usize {
        let handle = k / 4;
        match k % 4 {
            0 | 2 => 2 * handle,
            _ => 2 * handle + 1,
        }
    };
    let diag = |m: usize| 2 * genus + m - 2;
    let triangles = (1..=n - 2)
        .map(|m| {
            let first = if m == 1 { side_label(0) } else { diag(m) };
            let last = if m == n - 2 { side_label(n - 1) } else { diag(m + 1) };
            [first, side_label(m), last]
        })
        .collect();
    Triangulation::from_triangles(genus, triangles)
}

/// Side index of polygon side `k` in the standard triangulation.
pub(crate) fn polygon_side(genus: usize, k: usize) -> Side {
    let n = 4 * genus;
    if k == 0 {
        0
    } else if k == n - 1 {
        3 * (n - 3) + 2
    } else {
        3 * (k - 1) + 1
    }
}

/// Partner polygon side under the standard side pairing.
pub(crate) fn polygon_partner(k: usize) -> usize {
    match k % 4 {
        0 | 1 => k + 2,
        _ => k - 2,
    }
}

/// Dual walk of a curve drawn in the standard polygon as a cyclic chain of
/// chords: the curve exits the polygon through the sides `exits` in order and
/// re-enters through their partners.
pub(crate) fn polygon_walk(t: &Triangulation, exits: &[usize]) -> Vec<Side> {
    let g = t.genus();
    let tri_of = |k: usize| polygon_side(g, k) / 3;
    let mut walk = Vec::new();
    for (idx, &x) in exits.iter().enumerate() {
        let prev = exits[(idx + exits.len() - 1) % exits.len()];
        let mut cur = tri_of(polygon_partner(prev));
        let target = tri_of(x);
        while cur < target {
            walk.push(3 * cur + 2);
            cur += 1;
        }
        while cur > target {
            walk.push(3 * cur);
            cur -= 1;
        }
        walk.push(polygon_side(g, x));
    }
    walk
}
