//! Arrangements of two transverse multicurves and the filling test.
//!
//! Two multicurves drawn from their normal coordinates meet at crossings
//! inside triangles. The arrangement keeps, for every crossing, the
//! counter-clockwise order of its four half-edges and, for every arc between
//! consecutive crossings, the dual walk it follows. Bigons are detected as
//! two-sided faces whose boundary walk is null-homotopic and removed by
//! deleting their two corners; the walk of each merged arc is replaced by the
//! homotopic walk along the other side of the bigon.

use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::curve::{explicit, trace, MultiCurve};
use crate::error::{Error, Result};
use crate::group::{invert, is_null_homotopic, Ambient};
use crate::surface::{Side, Triangulation};

/// Which curve system an arc belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Owner {
    First,
    Second,
}

/// The four half-edges at a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    FirstOut,
    FirstIn,
    SecondOut,
    SecondIn,
}

/// How crossing points of the two systems are ordered along shared edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interleave {
    FirstNearStart,
    SecondNearStart,
    Seeded(u64),
}

/// Which bigon is removed when several are present.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemovalOrder {
    FirstFound,
    LastFound,
}

#[derive(Debug, Clone)]
struct Component {
    owner: Owner,
    /// Crossings met along the component, in order.
    visits: Vec<usize>,
    /// `walks[i]` leads from `visits[i]` to `visits[i + 1]`; a component
    /// without crossings keeps its whole loop in `walks[0]`.
    walks: Vec<Vec<Side>>,
}

#[derive(Debug, Clone)]
struct Crossing {
    /// Half-edges in counter-clockwise order.
    rotation: [Slot; 4],
    /// `(component, visit index)` of the first and second system.
    first: (usize, usize),
    second: (usize, usize),
    sign: i8,
    alive: bool,
}

/// Face-census summary of a bigon-free arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceReport {
    pub crossings: usize,
    pub arcs: usize,
    pub faces: usize,
    /// `V - E + W`.
    pub census: i64,
    pub euler_characteristic: i64,
    pub all_disks: bool,
}

/// A combinatorial map of the union of two multicurves.
#[derive(Debug, Clone)]
pub struct Arrangement<'t> {
    surface: &'t Triangulation,
    ambient: Ambient,
    comps: Vec<Component>,
    crossings: Vec<Crossing>,
}

/// Dart: an arc traversed in one direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Dart {
    comp: usize,
    seg: usize,
    forward: bool,
}

struct SplitMix(u64);
impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Traced components with explicit positions, as produced by [`trace`].
pub type Traced = Vec<Vec<(Side, usize)>>;

impl<'t> Arrangement<'t> {
    /// Draws two multicurves from their coordinates.
    pub fn new(t: &'t Triangulation, x: &MultiCurve, y: &MultiCurve, interleave: Interleave) -> Result<Self> {
        x.check_surface(t)?;
        y.check_surface(t)?;
        let xw = explicit(x.weights())?;
        let yw = explicit(y.weights())?;
        let xc = trace(t, &xw);
        let yc = trace(t, &yw);
        Ok(Self::from_traced(t, &xw, &xc, &yw, &yc, interleave, Ambient::Closed))
    }

    /// Draws two explicitly traced normal multicurves; component orientation
    /// follows the order of the traced exits.
    pub fn from_traced(
        t: &'t Triangulation,
        xw: &[usize],
        xc: &Traced,
        yw: &[usize],
        yc: &Traced,
        interleave: Interleave,
        ambient: Ambient,
    ) -> Self {
        // Slot of each point along the first side of every edge.
        let ne = t.num_edges();
        let mut rng = match interleave {
            Interleave::Seeded(s) => Some(SplitMix(s)),
            _ => None,
        };
        let mut x_slot: Vec<Vec<usize>> = Vec::with_capacity(ne);
        let mut y_slot: Vec<Vec<usize>> = Vec::with_capacity(ne);
        for e in 0..ne {
            let (a, b) = (xw[e], yw[e]);
            let marks: Vec<bool> = match interleave {
                Interleave::FirstNearStart => (0..a + b).map(|i| i < a).collect(),
                Interleave::SecondNearStart => (0..a + b).map(|i| i >= b).collect(),
                Interleave::Seeded(_) => {
                    let rng = rng.as_mut().unwrap();
                    let mut m = Vec::with_capacity(a + b);
                    let (mut ra, mut rb) = (a, b);
                    while ra + rb > 0 {
                        let pick_x = (rng.next() % (ra + rb) as u64) < ra as u64;
                        m.push(pick_x);
                        if pick_x { ra -= 1 } else { rb -= 1 }
                    }
                    m
                }
            };
            x_slot.push(marks.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect());
            y_slot.push(marks.iter().enumerate().filter(|(_, &m)| !m).map(|(i, _)| i).collect());
        }
        let combined = |s: Side, own: &Vec<Vec<usize>>, w: &[usize], pos: usize| -> usize {
            let e = t.edge(s);
            let n = xw[e] + yw[e];
            if t.edge_sides(e)[0] == s {
                own[e][pos]
            } else {
                n - 1 - own[e][w[e] - 1 - pos]
            }
        };
        // Arcs per triangle with boundary parameters `(side position, slot)`.
        struct Arc {
            comp: usize,
            arc: usize,
            from: (usize, usize),
            to: (usize, usize),
        }
        let mut arcs_x: Vec<Vec<Arc>> = (0..t.num_triangles()).map(|_| Vec::new()).collect();
        let mut arcs_y: Vec<Vec<Arc>> = (0..t.num_triangles()).map(|_| Vec::new()).collect();
        for (traced, w, slots, store) in [(xc, xw, &x_slot, &mut arcs_x), (yc, yw, &y_slot, &mut arcs_y)] {
            for (ci, comp) in traced.iter().enumerate() {
                let n = comp.len();
                for i in 0..n {
                    let (ps, px) = comp[(i + n - 1) % n];
                    let entry_side = t.partner(ps);
                    let entry_pos = w[t.edge(ps)] - 1 - px;
                    let (s, x) = comp[i];
                    let from = (entry_side % 3, combined(entry_side, slots, w, entry_pos));
                    let to = (s % 3, combined(s, slots, w, x));
                    store[s / 3].push(Arc { comp: ci, arc: i, from, to });
                }
            }
        }
        // Boundary order: side index then position, both counter-clockwise.
        let between = |a: (usize, usize), b: (usize, usize), p: (usize, usize)| -> bool {
            // strictly inside the ccw boundary interval from a to b
            if a < b {
                a < p && p < b
            } else {
                p > a || p < b
            }
        };
        let ccw_dist = |a: (usize, usize), p: (usize, usize)| -> (bool, (usize, usize)) {
            // key sorting points by ccw distance from a
            (p < a, p)
        };
        let mut comps: Vec<Component> = Vec::new();
        for (owner, traced) in [(Owner::First, xc), (Owner::Second, yc)] {
            for _ in traced {
                comps.push(Component { owner, visits: Vec::new(), walks: Vec::new() });
            }
        }
        let y_off = xc.len();
        // Crossing events along each arc: (arc index, ccw key, crossing id).
        let mut events: Vec<Vec<(usize, (bool, (usize, usize)), usize)>> = vec![Vec::new(); comps.len()];
        let mut crossings = Vec::new();
        for tri in 0..t.num_triangles() {
            for ax in &arcs_x[tri] {
                for ay in &arcs_y[tri] {
                    let y_from_right = between(ax.from, ax.to, ay.from);
                    let y_to_right = between(ax.from, ax.to, ay.to);
                    if y_from_right == y_to_right {
                        continue;
                    }
                    let id = crossings.len();
                    // Order along the x arc: by the y endpoint on the right side.
                    let y_right_end = if y_from_right { ay.from } else { ay.to };
                    let x_right_end = if between(ay.from, ay.to, ax.from) { ax.from } else { ax.to };
                    events[ax.comp].push((ax.arc, ccw_dist(ax.from, y_right_end), id));
                    events[y_off + ay.comp].push((ay.arc, ccw_dist(ay.from, x_right_end), id));
                    let mut ends = [
                        (ax.from, Slot::FirstIn),
                        (ax.to, Slot::FirstOut),
                        (ay.from, Slot::SecondIn),
                        (ay.to, Slot::SecondOut),
                    ];
                    ends.sort_by_key(|&(p, _)| p);
                    // y crossing x from its right to its left counts +1
                    let sign = if y_from_right { 1 } else { -1 };
                    crossings.push(Crossing {
                        rotation: ends.map(|(_, s)| s),
                        first: (0, 0),
                        second: (0, 0),
                        sign,
                        alive: true,
                    });
                }
            }
        }
        for (ci, ev) in events.iter_mut().enumerate() {
            ev.sort();
            let traced = if ci < y_off { &xc[ci] } else { &yc[ci - y_off] };
            let letters: Vec<Side> = traced.iter().map(|&(s, _)| s).collect();
            let n = letters.len();
            let comp = &mut comps[ci];
            if ev.is_empty() {
                comp.walks.push(letters);
                continue;
            }
            for (k, &(_, _, id)) in ev.iter().enumerate() {
                comp.visits.push(id);
                if ci < y_off {
                    crossings[id].first = (ci, k);
                } else {
                    crossings[id].second = (ci, k);
                }
            }
            let m = ev.len();
            for k in 0..m {
                let a0 = ev[k].0;
                let a1 = ev[(k + 1) % m].0;
                // exits a0 .. a1-1, wrapping when the next crossing is not later on the same arc
                let len = if k + 1 < m {
                    a1 - a0
                } else if m == 1 {
                    n
                } else {
                    a1 + n - a0
                };
                let walk: Vec<Side> = (0..len).map(|j| letters[(a0 + j) % n]).collect();
                comps[ci].walks.push(walk);
            }
        }
        Arrangement { surface: t, ambient, comps, crossings }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.alive).count()
    }

    /// Sum of crossing signs; the algebraic intersection number of the two
    /// oriented systems.
    pub fn algebraic_intersection(&self) -> i64 {
        self.crossings.iter().filter(|c| c.alive).map(|c| c.sign as i64).sum()
    }

    fn visit_of(&self, v: usize, owner: Owner) -> (usize, usize) {
        match owner {
            Owner::First => self.crossings[v].first,
            Owner::Second => self.crossings[v].second,
        }
    }

    /// Next dart around a face: arrive at the head of `d`, turn to the next
    /// half-edge in counter-clockwise order, and leave along it.
    fn next_dart(&self, d: Dart) -> Dart {
        let comp = &self.comps[d.comp];
        let m = comp.visits.len();
        let (v, arriving) = if d.forward {
            let v = comp.visits[(d.seg + 1) % m];
            (v, if comp.owner == Owner::First { Slot::FirstIn } else { Slot::SecondIn })
        } else {
            let v = comp.visits[d.seg];
            (v, if comp.owner == Owner::First { Slot::FirstOut } else { Slot::SecondOut })
        };
        let rot = &self.crossings[v].rotation;
        let i = rot.iter().position(|&s| s == arriving).unwrap();
        let leave = rot[(i + 1) % 4];
        let owner = match leave {
            Slot::FirstOut | Slot::FirstIn => Owner::First,
            _ => Owner::Second,
        };
        let (c, k) = self.visit_of(v, owner);
        match leave {
            Slot::FirstOut | Slot::SecondOut => Dart { comp: c, seg: k, forward: true },
            _ => {
                let mm = self.comps[c].visits.len();
                Dart { comp: c, seg: (k + mm - 1) % mm, forward: false }
            }
        }
    }

    fn darts(&self) -> Vec<Dart> {
        let mut out = Vec::new();
        for (ci, c) in self.comps.iter().enumerate() {
            for seg in 0..c.visits.len() {
                out.push(Dart { comp: ci, seg, forward: true });
                out.push(Dart { comp: ci, seg, forward: false });
            }
        }
        out
    }

    /// Face boundary walks as cyclic dart sequences.
    fn faces(&self) -> Vec<Vec<Dart>> {
        let darts = self.darts();
        let mut seen = alloc::collections::BTreeSet::new();
        let mut faces = Vec::new();
        for &d0 in &darts {
            if seen.contains(&d0) {
                continue;
            }
            let mut face = Vec::new();
            let mut d = d0;
            loop {
                seen.insert(d);
                face.push(d);
                d = self.next_dart(d);
                if d == d0 {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    fn dart_walk(&self, d: Dart) -> Vec<Side> {
        let w = &self.comps[d.comp].walks[d.seg];
        if d.forward {
            w.clone()
        } else {
            invert(self.surface, w)
        }
    }

    fn tail(&self, d: Dart) -> usize {
        let c = &self.comps[d.comp];
        if d.forward { c.visits[d.seg] } else { c.visits[(d.seg + 1) % c.visits.len()] }
    }

    /// Closed dual walks running along each face boundary.
    pub fn face_walks(&self) -> Vec<Vec<Side>> {
        let mut out: Vec<Vec<Side>> = self
            .faces()
            .iter()
            .map(|f| f.iter().flat_map(|&d| self.dart_walk(d)).collect())
            .collect();
        for c in &self.comps {
            if c.visits.is_empty() {
                out.push(c.walks[0].clone());
                out.push(invert(self.surface, &c.walks[0]));
            }
        }
        out
    }

    /// Whether the face to the left of `a` is a bigon: two darts, one of
    /// each system, distinct corners and a null-homotopic boundary.
    fn bigon_at(&self, a: Dart) -> Option<(Dart, Dart)> {
        let b = self.next_dart(a);
        if self.next_dart(b) != a || self.comps[a.comp].owner == self.comps[b.comp].owner {
            return None;
        }
        if self.tail(a) == self.tail(b) {
            return None;
        }
        let mut w = self.dart_walk(a);
        w.extend(self.dart_walk(b));
        is_null_homotopic(self.surface, &w, self.ambient).then_some((a, b))
    }

    fn bigons(&self) -> Vec<(Dart, Dart)> {
        self.faces().into_iter().filter(|f| f.len() == 2).filter_map(|f| self.bigon_at(f[0])).collect()
    }

    /// Whether a bigon face is present.
    pub fn has_bigon(&self) -> bool {
        !self.bigons().is_empty()
    }

    /// Removes bigons until none is left.
    pub fn remove_bigons(self) -> Self {
        self.remove_bigons_with(RemovalOrder::FirstFound)
    }

    /// Collapsing a bigon only changes the faces along the two merged arcs,
    /// so after the initial scan just those are re-examined.
    pub fn remove_bigons_with(mut self, order: RemovalOrder) -> Self {
        // Darts are kept as (component, tail crossing, direction), which
        // survive the renumbering done by each collapse.
        let handle = |arr: &Self, d: Dart| (d.comp, arr.tail(d), d.forward);
        let mut stack: Vec<(usize, usize, bool)> = self.bigons().into_iter().map(|(a, _)| handle(&self, a)).collect();
        if order == RemovalOrder::FirstFound {
            stack.reverse();
        }
        while let Some(h) = stack.pop() {
            if !self.crossings[h.1].alive || self.comps[h.0].visits.is_empty() {
                continue;
            }
            let Some((a, b)) = self.bigon_at(self.relocate(h)) else { continue };
            let merged = self.collapse(a, b);
            for d in merged {
                for d in [d, Dart { forward: !d.forward, ..d }] {
                    stack.push(handle(&self, d));
                }
            }
        }
        self
    }

    /// The dart on `comp` leaving crossing `tail` in the given direction.
    fn relocate(&self, (comp, tail, forward): (usize, usize, bool)) -> Dart {
        let c = &self.comps[comp];
        let k = match c.owner {
            Owner::First => self.crossings[tail].first.1,
            Owner::Second => self.crossings[tail].second.1,
        };
        let m = c.visits.len();
        Dart { comp, seg: if forward { k } else { (k + m - 1) % m }, forward }
    }

    /// Pushes each side of the bigon `(a, b)` across it; returns the merged
    /// arcs that still end at crossings.
    fn collapse(&mut self, a: Dart, b: Dart) -> Vec<Dart> {
        let u = self.tail(a);
        let v = self.tail(b);
        // a runs u -> v and b runs v -> u; the replacement for a's arc is b reversed.
        let wa = self.dart_walk(a);
        let wb = self.dart_walk(b);
        let repl_a = invert(self.surface, &wb);
        let repl_b = invert(self.surface, &wa);
        let ends = [self.splice(a, repl_a), self.splice(b, repl_b)];
        self.crossings[u].alive = false;
        self.crossings[v].alive = false;
        for c in [a.comp, b.comp] {
            self.reindex_comp(c);
        }
        ends.into_iter()
            .flatten()
            .map(|(comp, tail)| Dart { comp, seg: self.visit_of(tail, self.comps[comp].owner).1, forward: true })
            .collect()
    }

    /// Replaces the arc of dart `d` by `walk` (given in the dart direction)
    /// and drops both of its end visits, merging the neighbouring arcs.
    /// Returns the component and first crossing of the merged arc.
    fn splice(&mut self, d: Dart, walk: Vec<Side>) -> Option<(usize, usize)> {
        let t = self.surface;
        let comp = &mut self.comps[d.comp];
        let m = comp.visits.len();
        let seg_walk = if d.forward { walk } else { invert(t, &walk) };
        let i = d.seg; // arc from visits[i] to visits[i+1]
        if m == 2 {
            let mut loop_walk = seg_walk;
            append_reduced(t, &mut loop_walk, &comp.walks[(i + 1) % 2]);
            comp.visits.clear();
            comp.walks = vec![loop_walk];
            return None;
        }
        let prev = (i + m - 1) % m;
        let next = (i + 1) % m;
        let mut merged = core::mem::take(&mut comp.walks[prev]);
        append_reduced(t, &mut merged, &seg_walk);
        append_reduced(t, &mut merged, &comp.walks[next]);
        comp.walks[prev] = merged;
        // new arc runs from visits[prev] to visits[i+2]
        let start = comp.visits[prev];
        let (hi, lo) = if i > next { (i, next) } else { (next, i) };
        for k in [hi, lo] {
            comp.visits.remove(k);
            comp.walks.remove(k);
        }
        Some((d.comp, start))
    }

    fn reindex_comp(&mut self, ci: usize) {
        let owner = self.comps[ci].owner;
        for k in 0..self.comps[ci].visits.len() {
            let v = self.comps[ci].visits[k];
            match owner {
                Owner::First => self.crossings[v].first = (ci, k),
                Owner::Second => self.crossings[v].second = (ci, k),
            }
        }
    }

    /// Euler census of the arrangement. Components without crossings count as
    /// one vertex, one arc and two faces.
    pub fn face_census(&self) -> FaceReport {
        let circles = self.comps.iter().filter(|c| c.visits.is_empty()).count();
        let v = self.crossing_count() + circles;
        let e: usize = self.comps.iter().map(|c| c.visits.len()).sum::<usize>() + circles;
        let w = self.faces().len() + 2 * circles;
        let census = v as i64 - e as i64 + w as i64;
        let chi = self.surface.euler_characteristic();
        FaceReport { crossings: self.crossing_count(), arcs: e, faces: w, census, euler_characteristic: chi, all_disks: census == chi }
    }

    /// Every pair of arcs, one from each system, joining the same two
    /// crossings and bounding a null-homotopic loop. Exhaustive, not limited
    /// to faces.
    pub fn all_bigon_loops(&self) -> usize {
        let t = self.surface;
        let mut paths: Vec<(Owner, usize, usize, Vec<Side>)> = Vec::new();
        for c in &self.comps {
            let m = c.visits.len();
            for i in 0..m {
                let mut w = Vec::new();
                for len in 1..m {
                    w.extend(c.walks[(i + len - 1) % m].iter().copied());
                    let (a, b) = (c.visits[i], c.visits[(i + len) % m]);
                    if c.owner == Owner::Second {
                        paths.push((c.owner, b, a, invert(t, &w)));
                    }
                    paths.push((c.owner, a, b, w.clone()));
                }
            }
        }
        let mut count = 0;
        for (o1, a1, b1, w1) in &paths {
            if *o1 != Owner::First {
                continue;
            }
            for (o2, a2, b2, w2) in &paths {
                if *o2 != Owner::Second || a1 != a2 || b1 != b2 || a1 == b1 {
                    continue;
                }
                let mut loop_walk = w1.clone();
                loop_walk.extend(invert(t, w2));
                if is_null_homotopic(t, &loop_walk, self.ambient) {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Appends `tail` to `walk`, cancelling immediate backtracks at the seam.
fn append_reduced(t: &Triangulation, walk: &mut Vec<Side>, tail: &[Side]) {
    for &s in tail {
        if walk.last() == Some(&t.partner(s)) {
            walk.pop();
        } else {
            walk.push(s);
        }
    }
}

/// Minimal-position arrangement of `x` and `y` on the closed surface.
pub fn build_arrangement<'t>(t: &'t Triangulation, x: &MultiCurve, y: &MultiCurve) -> Result<Arrangement<'t>> {
    Arrangement::new(t, x, y, Interleave::FirstNearStart)
}

/// Geometric intersection number on the closed surface.
pub fn intersection_number(t: &Triangulation, x: &MultiCurve, y: &MultiCurve) -> Result<usize> {
    Ok(build_arrangement(t, x, y)?.remove_bigons().crossing_count())
}

/// Whether `x` and `y` together fill the closed surface.
pub fn fills(t: &Triangulation, x: &MultiCurve, y: &MultiCurve) -> Result<bool> {
    Ok(fill_report(t, x, y)?.all_disks)
}

/// Face census of the minimal-position arrangement of two essential
/// multicurves.
pub fn fill_report(t: &Triangulation, x: &MultiCurve, y: &MultiCurve) -> Result<FaceReport> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::NotEssential);
    }
    Ok(build_arrangement(t, x, y)?.remove_bigons().face_census())
}

/// Intersection number of two punctured-surface lifts, with bigons judged
/// on the punctured surface.
pub fn punctured_intersection(t: &Triangulation, xw: &[usize], yw: &[usize]) -> usize {
    let xc = trace(t, xw);
    let yc = trace(t, yw);
    Arrangement::from_traced(t, xw, &xc, yw, &yc, Interleave::FirstNearStart, Ambient::Punctured)
        .remove_bigons()
        .crossing_count()
}

/// Cap on lifts examined while separating the lifts of disjoint curves.
pub const UNION_SEARCH_CAP: usize = 5_000;

/// Union of pairwise disjoint multicurves. Lifts to the punctured surface
/// are pushed across the vertex until they are disjoint there, where union is
/// the sum of coordinates.
pub fn union(t: &Triangulation, parts: &[MultiCurve]) -> Result<MultiCurve> {
    let mut acc: Vec<usize> = alloc::vec![0; t.num_edges()];
    for p in parts {
        p.check_surface(t)?;
        if p.is_empty() {
            continue;
        }
        if intersection_number(t, &MultiCurve::from_lift(t, &big(&acc))?, p)? != 0 {
            return Err(Error::BadCurvePair("union of intersecting multicurves".into()));
        }
        let w = separate(t, &acc, &explicit(p.weights())?)?;
        for (a, b) in acc.iter_mut().zip(w) {
            *a += b;
        }
    }
    MultiCurve::from_lift(t, &big(&acc))
}

fn big(w: &[usize]) -> Vec<num_bigint::BigUint> {
    w.iter().map(|&x| num_bigint::BigUint::from(x)).collect()
}

/// A lift of `w` disjoint from the lift `fixed` in the punctured surface.
fn separate(t: &Triangulation, fixed: &[usize], w: &[usize]) -> Result<Vec<usize>> {
    use alloc::collections::BTreeSet;
    let score = |v: &[usize]| (punctured_intersection(t, fixed, v), v.iter().sum::<usize>());
    let mut seen = BTreeSet::new();
    let mut frontier = BTreeSet::new();
    seen.insert(w.to_vec());
    frontier.insert((score(w), w.to_vec()));
    while let Some((s, v)) = frontier.pop_first() {
        if s.0 == 0 {
            return Ok(v);
        }
        for nb in crate::curve::push_neighbours(t, &v) {
            if seen.len() >= UNION_SEARCH_CAP {
                return Err(Error::CurveTooLarge("lift separation search exhausted".into()));
            }
            if seen.insert(nb.clone()) {
                frontier.insert((score(&nb), nb));
            }
        }
    }
    Err(Error::CurveTooLarge("lift separation search exhausted".into()))
}

/// Image of the punctured-surface multicurve `xw` under the `k`-th power of
/// the twist about the connected curve `cw`, by surgery: at every crossing the
/// curve turns onto `cw`, runs around it `|k|` times and carries on. Positive
/// powers turn left.
pub fn reroute(t: &Triangulation, xw: &[usize], cw: &[usize], k: i64) -> Result<Vec<usize>> {
    Ok(crate::curve::weights_of_walks(t, &reroute_walks(t, xw, cw, k)?))
}

/// The rerouted components of [`reroute`] as reduced walks, each oriented like
/// the traced component of `xw` it comes from.
pub fn reroute_walks(t: &Triangulation, xw: &[usize], cw: &[usize], k: i64) -> Result<Vec<Vec<Side>>> {
    let xc = trace(t, xw);
    let cc = trace(t, cw);
    if cc.len() != 1 {
        return Err(Error::NotConnected);
    }
    let a = Arrangement::from_traced(t, xw, &xc, cw, &cc, Interleave::FirstNearStart, Ambient::Punctured);
    let ring = &a.comps[xc.len()];
    let loop_from = |j: usize, forward: bool| -> Vec<Side> {
        let m = ring.visits.len();
        let fwd: Vec<Side> = (0..m).flat_map(|i| ring.walks[(j + i) % m].iter().copied()).collect();
        if forward { fwd } else { invert(t, &fwd) }
    };
    let mut walks = Vec::new();
    for comp in &a.comps[..xc.len()] {
        if comp.visits.is_empty() {
            walks.push(comp.walks[0].clone());
            continue;
        }
        let mut w = Vec::new();
        for (i, &v) in comp.visits.iter().enumerate() {
            let rot = &a.crossings[v].rotation;
            let out = rot.iter().position(|&s| s == Slot::FirstOut).unwrap();
            let left_is_forward = rot[(out + 1) % 4] == Slot::SecondOut;
            let lp = loop_from(a.crossings[v].second.1, left_is_forward == (k > 0));
            for _ in 0..k.unsigned_abs() {
                w.extend_from_slice(&lp);
            }
            w.extend_from_slice(&comp.walks[i]);
        }
        walks.push(crate::group::cyclic_reduce(t, &w));
    }
    Ok(walks)
}

/// Boundary of a neighbourhood of two curves whose lifts meet exactly once in
/// the punctured surface: the commutator of the two loops based at the
/// crossing. It is separating, cutting off a one-holed torus.
pub fn commutator_curve(t: &Triangulation, x: &MultiCurve, y: &MultiCurve) -> Result<MultiCurve> {
    let xw = explicit(x.weights())?;
    let yw = explicit(y.weights())?;
    let xc = trace(t, &xw);
    let yc = trace(t, &yw);
    if xc.len() != 1 || yc.len() != 1 {
        return Err(Error::NotConnected);
    }
    let a = Arrangement::from_traced(t, &xw, &xc, &yw, &yc, Interleave::FirstNearStart, Ambient::Punctured);
    if a.crossings.len() != 1 {
        return Err(Error::BadCurvePair("curves must meet exactly once".into()));
    }
    let around = |comp: &Component, start: usize| -> Vec<Side> {
        let m = comp.visits.len();
        (0..m).flat_map(|i| comp.walks[(start + i) % m].iter().copied()).collect()
    };
    let c = &a.crossings[0];
    let xl = around(&a.comps[0], c.first.1);
    let yl = around(&a.comps[1], c.second.1);
    let mut w = xl.clone();
    w.extend_from_slice(&yl);
    w.extend(invert(t, &xl));
    w.extend(invert(t, &yl));
    let w = crate::group::cyclic_reduce(t, &w);
    let lift = crate::curve::weights_of_walks(t, core::slice::from_ref(&w));
    MultiCurve::from_lift(t, &big(&lift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::push_neighbours;
    use crate::standard::standard_curves;
    use crate::surface::build_surface;

    fn chain(g: usize) -> (Triangulation, Vec<MultiCurve>) {
        let t = build_surface(g).unwrap();
        let cs = standard_curves(&t).unwrap().into_iter().map(|(_, c)| c).collect();
        (t, cs)
    }

    #[test]
    fn neighbours_cross_once_and_distant_curves_not_at_all() {
        let (t, c) = chain(2);
        let a = Arrangement::new(&t, &c[0], &c[1], Interleave::FirstNearStart).unwrap();
        assert_eq!(a.crossing_count(), 1);
        assert_eq!(a.remove_bigons().crossing_count(), 1);
        assert_eq!(intersection_number(&t, &c[0], &c[2]).unwrap(), 0);
        assert_eq!(intersection_number(&t, &c[0], &c[0]).unwrap(), 0);
        assert_eq!(Arrangement::new(&t, &c[0], &c[1], Interleave::FirstNearStart).unwrap().algebraic_intersection().abs(), 1);
    }

    #[test]
    fn wiggled_curve_loses_its_bigons() {
        let (t, c) = chain(2);
        let yw = explicit(c[1].weights()).unwrap();
        let xw0 = explicit(c[0].weights()).unwrap();
        // A pushed lift of c_1 is isotopic to c_1 on the closed surface but
        // typically meets c_2 more often.
        let mut tried = 0;
        for xw in push_neighbours(&t, &xw0) {
            let a = Arrangement::from_traced(&t, &xw, &trace(&t, &xw), &yw, &trace(&t, &yw), Interleave::FirstNearStart, Ambient::Closed);
            if a.crossing_count() < 3 {
                continue;
            }
            tried += 1;
            assert!(a.all_bigon_loops() > 0);
            let b = a.clone().remove_bigons();
            assert_eq!(b.crossing_count(), 1);
            assert_eq!(b.all_bigon_loops(), 0);
            assert_eq!(a.remove_bigons_with(RemovalOrder::LastFound).crossing_count(), 1);
        }
        assert!(tried > 0);
    }

    #[test]
    fn chain_halves_fill_genus_two() {
        let (t, c) = chain(2);
        let odd = union(&t, &[c[0].clone(), c[2].clone(), c[4].clone()]).unwrap();
        let even = union(&t, &[c[1].clone(), c[3].clone()]).unwrap();
        assert_eq!(odd.component_count(&t).unwrap(), 3);
        let r = fill_report(&t, &odd, &even).unwrap();
        assert!(r.all_disks);
        assert_eq!(r.crossings, 4);
        assert!(!fills(&t, &c[0], &c[2]).unwrap());
        assert!(!fills(&t, &c[0], &c[0]).unwrap());
        assert_eq!(fills(&t, &MultiCurve::empty(&t), &c[0]), Err(Error::NotEssential));
    }

    #[test]
    fn flip_twist_matches_rerouting() {
        use crate::twist::TwistProgram;
        for g in 2..4 {
            let (t, c) = chain(g);
            let lifts: Vec<Vec<usize>> = c.iter().map(|x| explicit(x.weights()).unwrap()).collect();
            for (ci, cw) in lifts.iter().enumerate() {
                let prog = TwistProgram::new(&t, cw).unwrap();
                for (xi, xw) in lifts.iter().enumerate() {
                    for k in [-2i64, -1, 1, 2] {
                        let mut fw = xw.clone();
                        prog.apply_small(&mut fw, k);
                        let rw = reroute(&t, xw, cw, k).unwrap();
                        assert_eq!(fw, rw, "genus {g}: T_c{}^{k}(c{})", ci + 1, xi + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn census_matches_face_walks() {
        let (t, c) = chain(3);
        for i in 0..c.len() {
            for j in 0..c.len() {
                let a = build_arrangement(&t, &c[i], &c[j]).unwrap().remove_bigons();
                let r = a.face_census();
                let trivial = a.face_walks().iter().all(|w| is_null_homotopic(&t, w, Ambient::Closed));
                assert_eq!(r.all_disks, trivial);
                assert!(!r.all_disks);
            }
        }
    }
}
