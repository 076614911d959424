//! Dehn twists as flip sequences acting on normal coordinates.
//!
//! Coordinates here live on the surface punctured at the vertex, where an
//! edge flip changes the weight of the flipped edge by
//! `w' = max(w_a + w_c, w_b + w_d) - w` and leaves the others alone. A twist
//! about a curve is computed by flipping until the curve crosses only two
//! edges once each; those edges then cut out an annulus of two triangles, in
//! which one more flip followed by exchanging the two labels is a single twist
//! about its core. Undoing the shortening flips returns to the original
//! triangulation. All arithmetic is exact.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;
use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::surface::Triangulation;

/// Depth of the breadth-first fallback when no single flip shortens a curve.
const LOOKAHEAD: usize = 4;

/// One step acting on edge weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    /// Flip `e` inside the quadrilateral with sides `a, b, c, d` (counter-clockwise,
    /// `a, b` in the triangle before `e`'s partner side).
    Flip { e: usize, a: usize, b: usize, c: usize, d: usize },
    Swap(usize, usize),
}

/// A triangulation being modified by flips; triangles are counter-clockwise
/// edge-label triples.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Working {
    tris: Vec<[usize; 3]>,
}

impl Working {
    fn sides_of(&self, e: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2);
        for (i, t) in self.tris.iter().enumerate() {
            for k in 0..3 {
                if t[k] == e {
                    out.push((i, k));
                }
            }
        }
        out
    }

    /// The flip of `e`, if its two sides lie in distinct triangles.
    fn flip_op(&self, e: usize) -> Option<Op> {
        let s = self.sides_of(e);
        let ((t1, k1), (t2, k2)) = (s[0], s[1]);
        if t1 == t2 {
            return None;
        }
        let r1 = self.tris[t1];
        let r2 = self.tris[t2];
        Some(Op::Flip { e, a: r1[(k1 + 1) % 3], b: r1[(k1 + 2) % 3], c: r2[(k2 + 1) % 3], d: r2[(k2 + 2) % 3] })
    }

    fn apply(&mut self, op: Op) {
        match op {
            Op::Flip { e, a, b, c, d } => {
                let s = self.sides_of(e);
                self.tris[s[0].0] = [e, b, c];
                self.tris[s[1].0] = [e, d, a];
            }
            Op::Swap(e, f) => {
                for t in &mut self.tris {
                    for x in t.iter_mut() {
                        if *x == e {
                            *x = f;
                        } else if *x == f {
                            *x = e;
                        }
                    }
                }
            }
        }
    }

    /// Triangles up to rotation and order, for comparing triangulations.
    fn normal_form(&self) -> Vec<[usize; 3]> {
        let mut v: Vec<[usize; 3]> = self
            .tris
            .iter()
            .map(|t| {
                let r = (0..3).min_by_key(|&i| t[i]).unwrap();
                [t[r], t[(r + 1) % 3], t[(r + 2) % 3]]
            })
            .collect();
        v.sort();
        v
    }
}

fn apply_small(w: &mut [usize], op: Op) {
    match op {
        Op::Flip { e, a, b, c, d } => w[e] = (w[a] + w[c]).max(w[b] + w[d]) - w[e],
        Op::Swap(e, f) => w.swap(e, f),
    }
}

fn apply_big(w: &mut [BigUint], op: Op) {
    match op {
        Op::Flip { e, a, b, c, d } => {
            let x = &w[a] + &w[c];
            let y = &w[b] + &w[d];
            let m = if x > y { x } else { y };
            w[e] = m - &w[e];
        }
        Op::Swap(e, f) => w.swap(e, f),
    }
}

/// Flip program realizing powers of the twist about one curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistProgram {
    shorten: Vec<Op>,
    step: [Op; 2],
    /// Whether `step` is the positive (left-turning) twist.
    step_is_positive: bool,
}

impl TwistProgram {
    /// Builds the program for the connected normal curve with punctured-surface
    /// weights `curve`.
    pub fn new(t: &Triangulation, curve: &[usize]) -> Result<Self> {
        let mut tri = Working { tris: t.triangles().to_vec() };
        let mut w = curve.to_vec();
        let mut shorten = Vec::new();
        while w.iter().sum::<usize>() > 2 {
            let path = shortening_path(&tri, &w).ok_or(Error::ShorteningFailed)?;
            for op in path {
                tri.apply(op);
                apply_small(&mut w, op);
                shorten.push(op);
            }
        }
        let ones: Vec<usize> = (0..w.len()).filter(|&i| w[i] == 1).collect();
        if ones.len() != 2 {
            return Err(Error::ShorteningFailed);
        }
        let before = tri.normal_form();
        // In both annulus triangles `q` follows `p` counter-clockwise for exactly
        // one of the two orders; flipping that `p` twists in a fixed direction.
        for (p, q) in [(ones[0], ones[1]), (ones[1], ones[0])] {
            let follows = tri.sides_of(p).iter().all(|&(i, k)| tri.tris[i][(k + 1) % 3] == q);
            if !follows {
                continue;
            }
            let Some(flip) = tri.flip_op(p) else { continue };
            let mut after = tri.clone();
            after.apply(flip);
            after.apply(Op::Swap(p, q));
            if after.normal_form() == before {
                return Ok(TwistProgram { shorten, step: [flip, Op::Swap(p, q)], step_is_positive: ANNULUS_STEP_IS_POSITIVE });
            }
        }
        Err(Error::ShorteningFailed)
    }

    /// Number of flips used to shorten the curve.
    pub fn len(&self) -> usize {
        self.shorten.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shorten.is_empty()
    }

    /// Applies the `k`-th power of the twist to punctured-surface weights.
    pub fn apply(&self, w: &mut [BigUint], k: i64) {
        if k == 0 {
            return;
        }
        for &op in &self.shorten {
            apply_big(w, op);
        }
        let forward = (k > 0) == self.step_is_positive;
        for _ in 0..k.unsigned_abs() {
            if forward {
                apply_big(w, self.step[0]);
                apply_big(w, self.step[1]);
            } else {
                apply_big(w, self.step[1]);
                apply_big(w, self.step[0]);
            }
        }
        for &op in self.shorten.iter().rev() {
            apply_big(w, op);
        }
    }

    /// Same as [`apply`](Self::apply) on machine integers.
    pub fn apply_small(&self, w: &mut [usize], k: i64) {
        if k == 0 {
            return;
        }
        for &op in &self.shorten {
            apply_small(w, op);
        }
        let forward = (k > 0) == self.step_is_positive;
        for _ in 0..k.unsigned_abs() {
            if forward {
                apply_small(w, self.step[0]);
                apply_small(w, self.step[1]);
            } else {
                apply_small(w, self.step[1]);
                apply_small(w, self.step[0]);
            }
        }
        for &op in self.shorten.iter().rev() {
            apply_small(w, op);
        }
    }
}

/// Orientation of the annulus step; fixed against the rerouting construction.
const ANNULUS_STEP_IS_POSITIVE: bool = true;

/// A short flip sequence strictly decreasing the total weight of `w`.
fn shortening_path(tri: &Working, w: &[usize]) -> Option<Vec<Op>> {
    let total = |v: &[usize]| v.iter().sum::<usize>();
    let start = total(w);
    // greedy: best single flip
    let mut best: Option<(usize, Op)> = None;
    for e in 0..w.len() {
        if let Some(op) = tri.flip_op(e) {
            let mut v = w.to_vec();
            apply_small(&mut v, op);
            let s = total(&v);
            if s < start && best.map_or(true, |(b, _)| s < b) {
                best = Some((s, op));
            }
        }
    }
    if let Some((_, op)) = best {
        return Some(alloc::vec![op]);
    }
    // breadth-first over non-increasing flips
    let mut seen: BTreeMap<(Working, Vec<usize>), ()> = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back((tri.clone(), w.to_vec(), Vec::<Op>::new()));
    seen.insert((tri.clone(), w.to_vec()), ());
    while let Some((tr, v, path)) = queue.pop_front() {
        if path.len() >= LOOKAHEAD {
            continue;
        }
        for e in 0..v.len() {
            let Some(op) = tr.flip_op(e) else { continue };
            let mut v2 = v.clone();
            apply_small(&mut v2, op);
            let s = total(&v2);
            if s > start {
                continue;
            }
            let mut p2 = path.clone();
            p2.push(op);
            if s < start {
                return Some(p2);
            }
            let mut t2 = tr.clone();
            t2.apply(op);
            if seen.insert((t2.clone(), v2.clone()), ()).is_none() {
                queue.push_back((t2, v2, p2));
            }
        }
    }
    None
}
