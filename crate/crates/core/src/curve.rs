//! Curves on the surface: dual walks, normal coordinates, tightening.
//!
//! A simple multicurve that avoids the vertex is determined up to isotopy in
//! the punctured surface by its normal coordinates (one crossing count per
//! edge). On the closed surface the vertex may be pushed across strands of the
//! curve; the total weight is a convex function of the vertex position on the
//! dual tree of the lifted curve, so greedy descent reaches the minimum and the
//! minimising positions form a connected plateau. The canonical coordinates of
//! a curve on the closed surface are the lexicographically smallest weights on
//! that plateau.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{cyclic_reduce, is_cyclically_reduced};
use crate::surface::{Side, Triangulation};

/// Largest total weight handled with explicit strand-level data.
pub const EXPLICIT_WEIGHT_CAP: usize = 4_000_000;

/// Largest plateau of equal-weight vertex positions explored while picking
/// the canonical representative.
const PLATEAU_CAP: usize = 20_000;

/// A closed transverse path, one walk per component. Each walk lists the
/// triangle sides it exits through, cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CurvePath {
    pub components: Vec<Vec<Side>>,
}

impl CurvePath {
    pub fn new(components: Vec<Vec<Side>>) -> Self {
        CurvePath { components }
    }

    pub fn is_empty(&self) -> bool {
        self.components.iter().all(|c| c.is_empty())
    }

    pub fn crossings(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    fn validate(&self, t: &Triangulation) -> Result<()> {
        if self.components.iter().all(|c| c.is_empty() || t.is_closed_walk(c)) {
            Ok(())
        } else {
            Err(Error::InvalidPath)
        }
    }

    /// No spurs in any component, cyclically.
    pub fn is_spur_free(&self, t: &Triangulation) -> bool {
        self.components.iter().all(|c| c.is_empty() || is_cyclically_reduced(t, c))
    }
}

/// An essential multicurve on the closed surface, stored by its canonical
/// normal coordinates. Equal values are isotopic and vice versa.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiCurve {
    #[serde(with = "crate::decimal::vec")]
    weights: Vec<BigUint>,
}

impl MultiCurve {
    pub fn empty(t: &Triangulation) -> Self {
        MultiCurve { weights: vec![BigUint::zero(); t.num_edges()] }
    }

    /// Canonicalises arbitrary punctured-surface coordinates of a simple
    /// multicurve.
    pub fn from_lift(t: &Triangulation, lift: &[BigUint]) -> Result<Self> {
        let w = explicit(lift)?;
        check_normal(t, &w)?;
        let canon = canonical_weights(t, &w)?;
        Ok(MultiCurve { weights: canon.into_iter().map(BigUint::from).collect() })
    }

    /// Wraps coordinates that are already canonical, checking that they are.
    pub fn from_canonical(t: &Triangulation, weights: Vec<BigUint>) -> Result<Self> {
        let w = explicit(&weights)?;
        check_normal(t, &w)?;
        if canonical_weights(t, &w)? != w {
            return Err(Error::InvalidCoordinates("weights are not in canonical form".to_string()));
        }
        Ok(MultiCurve { weights })
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn explicit_weights(&self) -> Result<Vec<usize>> {
        explicit(&self.weights)
    }

    pub fn total_weight(&self) -> BigUint {
        self.weights.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.iter().all(Zero::is_zero)
    }

    pub fn check_surface(&self, t: &Triangulation) -> Result<()> {
        if self.weights.len() == t.num_edges() {
            Ok(())
        } else {
            Err(Error::SurfaceMismatch)
        }
    }

    /// A concrete tight path carrying this multicurve.
    pub fn path(&self, t: &Triangulation) -> Result<CurvePath> {
        let w = self.explicit_weights()?;
        Ok(CurvePath::new(
            trace(t, &w).into_iter().map(|c| c.into_iter().map(|(s, _)| s).collect()).collect(),
        ))
    }

    /// Connected components, each canonicalised on its own.
    pub fn components(&self, t: &Triangulation) -> Result<Vec<MultiCurve>> {
        let w = self.explicit_weights()?;
        let mut out = Vec::new();
        for comp in trace(t, &w) {
            let letters: Vec<Side> = comp.into_iter().map(|(s, _)| s).collect();
            let cw = weights_of_walks(t, core::slice::from_ref(&letters));
            let canon = canonical_weights(t, &cw)?;
            out.push(MultiCurve { weights: canon.into_iter().map(BigUint::from).collect() });
        }
        Ok(out)
    }

    pub fn component_count(&self, t: &Triangulation) -> Result<usize> {
        Ok(trace(t, &self.explicit_weights()?).len())
    }
}

/// Converts weights to machine integers, refusing totals above the cap.
pub fn explicit(w: &[BigUint]) -> Result<Vec<usize>> {
    let total: BigUint = w.iter().sum();
    match total.to_usize() {
        Some(n) if n <= EXPLICIT_WEIGHT_CAP => Ok(w.iter().map(|x| x.to_usize().unwrap()).collect()),
        _ => Err(Error::CurveTooLarge(total.to_string())),
    }
}

/// Parity and triangle inequalities in every triangle.
pub fn check_normal(t: &Triangulation, w: &[usize]) -> Result<()> {
    if w.len() != t.num_edges() {
        return Err(Error::SurfaceMismatch);
    }
    for (i, tri) in t.triangles().iter().enumerate() {
        let [a, b, c] = tri.map(|e| w[e]);
        if (a + b + c) % 2 != 0 || a > b + c || b > a + c || c > a + b {
            return Err(Error::InvalidCoordinates(format!("triangle {i} has side weights ({a}, {b}, {c})")));
        }
    }
    Ok(())
}

/// Same checks as [`check_normal`] for big weights.
pub fn check_normal_big(t: &Triangulation, w: &[BigUint]) -> Result<()> {
    if w.len() != t.num_edges() {
        return Err(Error::SurfaceMismatch);
    }
    for (i, tri) in t.triangles().iter().enumerate() {
        let [a, b, c] = tri.map(|e| &w[e]);
        let sum = a + b + c;
        if sum.bit(0) || a > &(b + c) || b > &(a + c) || c > &(a + b) {
            return Err(Error::InvalidCoordinates(format!("triangle {i} violates the normal conditions")));
        }
    }
    Ok(())
}

/// Number of normal arcs cutting off corner `k` of triangle `tri`. Corner `k`
/// sits between side `k - 1` and side `k`.
#[inline]
pub fn corner_count(t: &Triangulation, w: &[usize], tri: usize, k: usize) -> usize {
    let e = t.triangles()[tri];
    (w[e[(k + 2) % 3]] + w[e[k]] - w[e[(k + 1) % 3]]) / 2
}

/// The other end, inside the same triangle, of the arc meeting side `s` at
/// position `x` (positions count from the start of the side).
#[inline]
pub fn arc_mate(t: &Triangulation, w: &[usize], s: Side, x: usize) -> (Side, usize) {
    let tri = s / 3;
    let k = s % 3;
    let n_k = corner_count(t, w, tri, k);
    let e = t.triangles()[tri];
    if x < n_k {
        let prev = 3 * tri + (k + 2) % 3;
        (prev, w[e[(k + 2) % 3]] - 1 - x)
    } else {
        let r = w[e[k]] - 1 - x;
        (3 * tri + (k + 1) % 3, r)
    }
}

/// Traces the normal multicurve with weights `w`. Each component lists its
/// exits `(side, position)` in order.
pub fn trace(t: &Triangulation, w: &[usize]) -> Vec<Vec<(Side, usize)>> {
    let ns = t.num_sides();
    let offsets: Vec<usize> = (0..=ns).scan(0, |acc, s| {
        let cur = *acc;
        if s < ns {
            *acc += w[t.edge(s)];
        }
        Some(cur)
    }).collect();
    let mut visited = vec![false; offsets[ns]];
    let mut comps = Vec::new();
    for s0 in 0..ns {
        let ws = w[t.edge(s0)];
        for x0 in 0..ws {
            if visited[offsets[s0] + x0] {
                continue;
            }
            let mut comp = Vec::new();
            let (mut s, mut x) = (s0, x0);
            loop {
                let p = t.partner(s);
                let xp = ws_at(t, w, s) - 1 - x;
                visited[offsets[s] + x] = true;
                visited[offsets[p] + xp] = true;
                comp.push((s, x));
                let (ns2, nx) = arc_mate(t, w, p, xp);
                s = ns2;
                x = nx;
                if s == s0 && x == x0 {
                    break;
                }
            }
            comps.push(comp);
        }
    }
    comps
}

#[inline]
fn ws_at(t: &Triangulation, w: &[usize], s: Side) -> usize {
    w[t.edge(s)]
}

/// Edge crossing counts of a family of walks.
pub fn weights_of_walks(t: &Triangulation, walks: &[Vec<Side>]) -> Vec<usize> {
    let mut w = vec![0; t.num_edges()];
    for walk in walks {
        for &s in walk {
            w[t.edge(s)] += 1;
        }
    }
    w
}

/// Reverses the direction of a traced component.
pub fn reverse_component(t: &Triangulation, w: &[usize], comp: &[(Side, usize)]) -> Vec<(Side, usize)> {
    comp.iter().rev().map(|&(s, x)| (t.partner(s), ws_at(t, w, s) - 1 - x)).collect()
}

/// The walk obtained by sending the crossing `s` the other way round the
/// vertex: `s` equals the inverse of the rest of the link.
pub fn detour(t: &Triangulation, s: Side) -> Vec<Side> {
    let link = t.link();
    let m = link.len();
    let i = link.iter().position(|&l| l == s).expect("every side lies on the link");
    (1..m).map(|k| t.partner(link[(i + m - k) % m])).collect()
}

/// All multicurves obtained from `w` by pushing the vertex across the strand
/// nearest to it along one edge end. Returned as weight vectors.
pub fn push_neighbours(t: &Triangulation, w: &[usize]) -> Vec<Vec<usize>> {
    let comps = trace(t, w);
    let letters: Vec<Vec<Side>> = comps.iter().map(|c| c.iter().map(|&(s, _)| s).collect()).collect();
    let mut out = Vec::new();
    for s in 0..t.num_sides() {
        let ws = w[t.edge(s)];
        if ws == 0 {
            continue;
        }
        let p = t.partner(s);
        let mut hit = None;
        for (ci, comp) in comps.iter().enumerate() {
            if let Some(i) = comp.iter().position(|&(a, x)| a == s && x == 0) {
                hit = Some((ci, letters[ci].clone(), i));
                break;
            }
            if comp.iter().any(|&(a, x)| a == p && x == ws - 1) {
                let rev = reverse_component(t, w, comp);
                let i = rev.iter().position(|&(a, x)| a == s && x == 0).unwrap();
                hit = Some((ci, rev.into_iter().map(|(a, _)| a).collect(), i));
                break;
            }
        }
        let (ci, walk, i) = hit.expect("the strand nearest each edge end belongs to some component");
        let mut pushed = Vec::with_capacity(walk.len() + t.link().len());
        pushed.extend_from_slice(&walk[..i]);
        pushed.extend(detour(t, s));
        pushed.extend_from_slice(&walk[i + 1..]);
        let pushed = cyclic_reduce(t, &pushed);
        let mut all: Vec<Vec<Side>> = letters.clone();
        all[ci] = pushed;
        out.push(weights_of_walks(t, &all));
    }
    out
}

/// Canonical closed-surface coordinates of the simple multicurve `w`.
/// Inessential components disappear.
pub fn canonical_weights(t: &Triangulation, w: &[usize]) -> Result<Vec<usize>> {
    let total = |v: &[usize]| v.iter().sum::<usize>();
    let mut cur = w.to_vec();
    loop {
        let best = push_neighbours(t, &cur).into_iter().min_by(|a, b| total(a).cmp(&total(b)).then(a.cmp(b)));
        match best {
            Some(b) if total(&b) < total(&cur) => cur = b,
            _ => break,
        }
    }
    let level = total(&cur);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(cur.clone());
    queue.push_back(cur);
    while let Some(v) = queue.pop_front() {
        for nb in push_neighbours(t, &v) {
            debug_assert!(total(&nb) >= level, "descent stopped above the minimum");
            if total(&nb) == level && !seen.contains(&nb) {
                if seen.len() >= PLATEAU_CAP {
                    return Err(Error::CurveTooLarge(format!("plateau larger than {PLATEAU_CAP}")));
                }
                seen.insert(nb.clone());
                queue.push_back(nb);
            }
        }
    }
    Ok(seen.into_iter().next().unwrap())
}

/// Tightens a path carrying a simple multicurve: removes spurs, then moves
/// strands across the vertex until the closed-surface minimum is reached.
/// The result is the canonical path of the multicurve.
pub fn tighten(t: &Triangulation, p: &CurvePath) -> Result<CurvePath> {
    p.validate(t)?;
    let reduced: Vec<Vec<Side>> =
        p.components.iter().map(|c| cyclic_reduce(t, c)).filter(|c| !c.is_empty()).collect();
    if reduced.is_empty() {
        return Ok(CurvePath::default());
    }
    let w = weights_of_walks(t, &reduced);
    check_normal(t, &w)?;
    let canon = canonical_weights(t, &w)?;
    Ok(CurvePath::new(trace(t, &canon).into_iter().map(|c| c.into_iter().map(|(s, _)| s).collect()).collect()))
}

/// Normal coordinates of a tightened path.
pub fn coords_of(t: &Triangulation, p: &CurvePath) -> Result<MultiCurve> {
    p.validate(t)?;
    if !p.is_spur_free(t) {
        return Err(Error::NotTight);
    }
    let w = weights_of_walks(t, &p.components);
    check_normal(t, &w)?;
    if canonical_weights(t, &w)? != w {
        return Err(Error::NotTight);
    }
    Ok(MultiCurve { weights: w.into_iter().map(BigUint::from).collect() })
}

/// Coordinates of a spur-free path in the punctured surface, without the
/// closed-surface minimisation.
pub fn lift_of(t: &Triangulation, p: &CurvePath) -> Result<Vec<BigUint>> {
    p.validate(t)?;
    let reduced: Vec<Vec<Side>> = p.components.iter().map(|c| cyclic_reduce(t, c)).collect();
    let w = weights_of_walks(t, &reduced);
    check_normal(t, &w)?;
    Ok(w.into_iter().map(BigUint::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_surface, polygon_walk};

    #[test]
    fn trace_recovers_polygon_curve() {
        let t = build_surface(2).unwrap();
        let walk = polygon_walk(&t, &[2]);
        let red = cyclic_reduce(&t, &walk);
        let w = weights_of_walks(&t, &[red.clone()]);
        check_normal(&t, &w).unwrap();
        let comps = trace(&t, &w);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), red.len());
    }

    #[test]
    fn spur_removed() {
        let t = build_surface(2).unwrap();
        let walk = polygon_walk(&t, &[2]);
        let mut messy = walk.clone();
        let s = messy[0];
        messy.insert(1, t.partner(messy[0]));
        messy.insert(2, s);
        let a = tighten(&t, &CurvePath::new(vec![walk])).unwrap();
        let b = tighten(&t, &CurvePath::new(vec![messy])).unwrap();
        assert_eq!(a, b);
        assert_eq!(tighten(&t, &a).unwrap(), a);
    }

    #[test]
    fn empty_path_tightens_to_empty() {
        let t = build_surface(2).unwrap();
        assert!(tighten(&t, &CurvePath::default()).unwrap().is_empty());
        let zero = coords_of(&t, &CurvePath::default()).unwrap();
        assert!(zero.is_empty());
    }

    #[test]
    fn peripheral_loop_is_inessential() {
        let t = build_surface(2).unwrap();
        let p = CurvePath::new(vec![t.link().to_vec()]);
        assert!(tighten(&t, &p).unwrap().is_empty());
    }

    #[test]
    fn untightened_input_rejected() {
        let t = build_surface(2).unwrap();
        let mut walk = polygon_walk(&t, &[2]);
        let s = walk[0];
        walk.insert(1, t.partner(s));
        walk.insert(2, s);
        assert_eq!(coords_of(&t, &CurvePath::new(vec![walk])), Err(Error::NotTight));
    }

    #[test]
    fn detour_closes_link() {
        let t = build_surface(2).unwrap();
        for s in 0..t.num_sides() {
            let mut w = vec![s];
            w.extend(crate::group::invert(&t, &detour(&t, s)));
            assert!(crate::group::is_null_homotopic(&t, &w, crate::group::Ambient::Closed));
        }
    }
}
