//! Brute-force references for intersection numbers and filling, sharing no
//! code with the arrangement module.
//!
//! Curves are drawn straight from normal coordinates, strands on each edge
//! ordered by where they go next. Crossings that belong to the same pair of
//! lifts in the universal cover are grouped with a separate Dehn algorithm;
//! a lift pair is linked exactly when it crosses an odd number of times, and
//! the linked pairs count the geometric intersection number. Filling is read
//! off a drawing that realises that number, by counting complementary regions
//! cell by cell inside each triangle.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use mcgdensity_core::curve::{push_neighbours, MultiCurve};
use mcgdensity_core::surface::{Side, Triangulation};
use num_traits::ToPrimitive;

/// Extra turns around each curve allowed when matching crossings to lifts.
const TURNS: i64 = 4;
/// Drawings examined while looking for a minimal one.
const SEARCH_CAP: usize = 4000;

#[derive(Clone, Copy, Debug)]
struct Arc {
    tri: usize,
    /// `(local side, position)` where the arc enters and leaves.
    from: (usize, usize),
    to: (usize, usize),
}

struct Drawn {
    arcs: Vec<Arc>,
    /// `exits[i]` is the side through which `arcs[i]` leaves its triangle.
    exits: Vec<Side>,
}

fn weights(c: &MultiCurve) -> Vec<usize> {
    c.weights().iter().map(|x| x.to_usize().expect("small curve")).collect()
}

/// Where the arc entering `tri` through local side `k` at position `i` leaves.
fn arc_exit(t: &Triangulation, w: &[usize], tri: usize, k: usize, i: usize) -> (usize, usize) {
    let ws = |j: usize| w[t.edge(3 * tri + j % 3)];
    let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
    let before = (ws(k2) + ws(k) - ws(k1)) / 2;
    if i < before {
        (k2, ws(k2) - 1 - i)
    } else {
        (k1, ws(k) - 1 - i)
    }
}

fn next_entry(t: &Triangulation, w: &[usize], tri: usize, exit: (usize, usize)) -> (Side, usize) {
    let s = 3 * tri + exit.0;
    (t.partner(s), w[t.edge(s)] - 1 - exit.1)
}

fn draw(t: &Triangulation, w: &[usize]) -> Drawn {
    let e = (0..w.len()).find(|&e| w[e] > 0).expect("nonempty curve");
    let start = (t.edge_sides(e)[0], 0);
    let (mut arcs, mut exits) = (Vec::new(), Vec::new());
    let mut at = start;
    loop {
        let (tri, k) = (at.0 / 3, at.0 % 3);
        let to = arc_exit(t, w, tri, k, at.1);
        arcs.push(Arc { tri, from: (k, at.1), to });
        exits.push(3 * tri + to.0);
        at = next_entry(t, w, tri, to);
        if at == start {
            break;
        }
    }
    assert_eq!(arcs.len(), w.iter().sum::<usize>(), "oracle needs connected curves");
    Drawn { arcs, exits }
}

/// Whether the ray entering through `s` at `i` on curve `a` lies further
/// counter-clockwise along `s` than the ray entering at `j` on curve `b`.
fn ray_after(t: &Triangulation, wa: &[usize], wb: &[usize], s: Side, i: usize, j: usize) -> bool {
    let (mut pa, mut pb) = ((s, i), (s, j));
    let steps = wa.iter().sum::<usize>() * wb.iter().sum::<usize>() + 1;
    for _ in 0..steps {
        let (tri, k) = (pa.0 / 3, pa.0 % 3);
        let ea = arc_exit(t, wa, tri, k, pa.1);
        let eb = arc_exit(t, wb, tri, k, pb.1);
        if ea.0 != eb.0 {
            return ea.0 == (k + 1) % 3;
        }
        pa = next_entry(t, wa, tri, ea);
        pb = next_entry(t, wb, tri, eb);
    }
    panic!("parallel strands of distinct curves");
}

/// Merged positions of both curves' points along every side.
struct Layout {
    x: Vec<Vec<usize>>,
    y: Vec<Vec<usize>>,
    total: Vec<usize>,
}

impl Layout {
    /// Strands are ordered by where they part, looking in the direction the
    /// `x` strand travels so that a parallel run is ordered from one end.
    fn new(t: &Triangulation, x: &Drawn, wx: &[usize], wy: &[usize]) -> Self {
        let forward: BTreeSet<(Side, usize)> = x.arcs.iter().map(|a| (3 * a.tri + a.from.0, a.from.1)).collect();
        let ns = t.num_sides();
        let (mut x, mut y, mut total) = (vec![Vec::new(); ns], vec![Vec::new(); ns], vec![0; ns]);
        for e in 0..t.num_edges() {
            let [s, p] = t.edge_sides(e);
            let (a, b) = (wx[e], wy[e]);
            let (mut xs, mut ys) = (vec![0; a], vec![0; b]);
            let (mut i, mut j) = (0, 0);
            while i < a || j < b {
                let take_x = j == b
                    || (i < a
                        && if forward.contains(&(s, i)) {
                            !ray_after(t, wx, wy, s, i, j)
                        } else {
                            ray_after(t, wx, wy, p, a - 1 - i, b - 1 - j)
                        });
                if take_x {
                    xs[i] = i + j;
                    i += 1;
                } else {
                    ys[j] = i + j;
                    j += 1;
                }
            }
            let n = a + b;
            x[p] = (0..a).map(|q| n - 1 - xs[a - 1 - q]).collect();
            y[p] = (0..b).map(|q| n - 1 - ys[b - 1 - q]).collect();
            x[s] = xs;
            y[s] = ys;
            total[s] = n;
            total[p] = n;
        }
        Layout { x, y, total }
    }
}

/// A point on a triangle boundary, doubled so that gaps get even keys.
fn key(k: usize, pos: usize) -> usize {
    2 * (k * 1_000_000 + pos) + 1
}

fn chord(arc: &Arc, pos: &[Vec<usize>]) -> (usize, usize) {
    let a = key(arc.from.0, pos[3 * arc.tri + arc.from.0][arc.from.1]);
    let b = key(arc.to.0, pos[3 * arc.tri + arc.to.0][arc.to.1]);
    (a.min(b), a.max(b))
}

fn inside(c: (usize, usize), p: usize) -> bool {
    c.0 < p && p < c.1
}

fn cross(a: (usize, usize), b: (usize, usize)) -> bool {
    inside(a, b.0) != inside(a, b.1)
}

struct Picture {
    x: Drawn,
    y: Drawn,
    layout: Layout,
    /// `(x arc, y arc)` of every crossing.
    crossings: Vec<(usize, usize)>,
}

impl Picture {
    fn new(t: &Triangulation, wx: &[usize], wy: &[usize]) -> Self {
        let (x, y) = (draw(t, wx), draw(t, wy));
        let layout = Layout::new(t, &x, wx, wy);
        let mut by_tri: Vec<Vec<usize>> = vec![Vec::new(); t.num_triangles()];
        for (j, a) in y.arcs.iter().enumerate() {
            by_tri[a.tri].push(j);
        }
        let mut crossings = Vec::new();
        for (i, a) in x.arcs.iter().enumerate() {
            let ca = chord(a, &layout.x);
            for &j in &by_tri[a.tri] {
                if cross(ca, chord(&y.arcs[j], &layout.y)) {
                    crossings.push((i, j));
                }
            }
        }
        Picture { x, y, layout, crossings }
    }

    /// Number of complementary regions.
    fn regions(&self, t: &Triangulation) -> usize {
        let mut chords: Vec<Vec<(usize, usize)>> = vec![Vec::new(); t.num_triangles()];
        for a in &self.x.arcs {
            chords[a.tri].push(chord(a, &self.layout.x));
        }
        for a in &self.y.arcs {
            chords[a.tri].push(chord(a, &self.layout.y));
        }
        let mut gap_id: HashMap<(Side, usize), usize> = HashMap::new();
        for s in 0..t.num_sides() {
            for g in 0..=self.layout.total[s] {
                let n = gap_id.len();
                gap_id.insert((s, g), n);
            }
        }
        let mut uf = UnionFind::new(gap_id.len());
        let mut interior = 0;
        for tri in 0..t.num_triangles() {
            let cs = &chords[tri];
            let mut cells: HashMap<Vec<bool>, usize> = HashMap::new();
            for k in 0..3 {
                let s = 3 * tri + k;
                for g in 0..=self.layout.total[s] {
                    let p = 2 * (k * 1_000_000 + g);
                    let sign: Vec<bool> = cs.iter().map(|&c| inside(c, p)).collect();
                    let id = gap_id[&(s, g)];
                    match cells.get(&sign) {
                        Some(&other) => uf.union(id, other),
                        None => {
                            cells.insert(sign, id);
                        }
                    }
                }
            }
            let crossings = (0..cs.len()).map(|i| (i + 1..cs.len()).filter(|&j| cross(cs[i], cs[j])).count()).sum::<usize>();
            interior += 1 + cs.len() + crossings - cells.len();
        }
        let corner = gap_id[&(0, 0)];
        for s in 0..t.num_sides() {
            let n = self.layout.total[s];
            uf.union(gap_id[&(s, 0)], corner);
            uf.union(gap_id[&(s, n)], corner);
            for g in 0..=n {
                uf.union(gap_id[&(s, g)], gap_id[&(t.partner(s), n - g)]);
            }
        }
        uf.classes() + interior
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&a| self.find(a) == a).count()
    }
}

/// Dehn's algorithm for the single vertex relator, on cyclic dual walks.
struct WordProblem {
    rels: [Vec<Side>; 2],
    at: BTreeMap<Side, Vec<(usize, usize)>>,
    partner: Vec<Side>,
}

impl WordProblem {
    fn new(t: &Triangulation) -> Self {
        let fwd = t.link().to_vec();
        let inv: Vec<Side> = fwd.iter().rev().map(|&s| t.partner(s)).collect();
        let mut at: BTreeMap<Side, Vec<(usize, usize)>> = BTreeMap::new();
        for (r, rel) in [&fwd, &inv].into_iter().enumerate() {
            for (j, &s) in rel.iter().enumerate() {
                at.entry(s).or_default().push((r, j));
            }
        }
        WordProblem { rels: [fwd, inv], at, partner: (0..t.num_sides()).map(|s| t.partner(s)).collect() }
    }

    fn reduce(&self, w: Vec<Side>) -> Vec<Side> {
        let mut out: Vec<Side> = Vec::with_capacity(w.len());
        for s in w {
            if out.last() == Some(&self.partner[s]) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        let mut lo = 0;
        while out.len() - lo >= 2 && out[out.len() - 1] == self.partner[out[lo]] {
            out.pop();
            lo += 1;
        }
        out.drain(..lo);
        out
    }

    fn is_trivial(&self, walk: Vec<Side>) -> bool {
        let m = self.rels[0].len();
        let mut w = self.reduce(walk);
        'outer: while !w.is_empty() {
            let n = w.len();
            for i in 0..n {
                for &(r, j) in self.at.get(&w[i]).into_iter().flatten() {
                    let rel = &self.rels[r];
                    let mut l = 0;
                    while l < n && l < m && w[(i + l) % n] == rel[(j + l) % m] {
                        l += 1;
                    }
                    if 2 * l > m {
                        let mut next: Vec<Side> = (l..m).rev().map(|q| self.partner[rel[(j + q) % m]]).collect();
                        next.extend((l..n).map(|q| w[(i + q) % n]));
                        w = self.reduce(next);
                        continue 'outer;
                    }
                }
            }
            return false;
        }
        true
    }
}

fn crossing_vector(t: &Triangulation, walk: &[Side]) -> Vec<i64> {
    let mut v = vec![0; t.num_edges()];
    for &s in walk {
        let e = t.edge(s);
        v[e] += if t.edge_sides(e)[0] == s { 1 } else { -1 };
    }
    v
}

/// The walk along a drawn curve from arc `from`, `d` arcs forward (or back).
fn travel(t: &Triangulation, c: &Drawn, from: usize, d: i64) -> Vec<Side> {
    let n = c.exits.len() as i64;
    if d >= 0 {
        (0..d).map(|q| c.exits[((from as i64 + q) % n) as usize]).collect()
    } else {
        (1..=-d).map(|q| t.partner(c.exits[(from as i64 - q).rem_euclid(n) as usize])).collect()
    }
}

/// Linked lift pairs among the crossings of a picture.
fn linked_pairs(t: &Triangulation, pic: &Picture) -> usize {
    let wp = WordProblem::new(t);
    let link_vec = crossing_vector(t, t.link());
    let hx = crossing_vector(t, &pic.x.exits);
    let hy = crossing_vector(t, &pic.y.exits);
    let (lx, ly) = (pic.x.exits.len() as i64, pic.y.exits.len() as i64);
    let homologically_trivial = |v: &[i64]| {
        if link_vec.iter().all(|&a| a == 0) {
            v.iter().all(|&a| a == 0)
        } else {
            let i = link_vec.iter().position(|&a| a != 0).unwrap();
            v[i] % link_vec[i] == 0 && v.iter().zip(&link_vec).all(|(&a, &b)| a * link_vec[i] == b * v[i])
        }
    };
    let n = pic.crossings.len();
    let mut uf = UnionFind::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if uf.find(u) == uf.find(v) {
                continue;
            }
            let ((ix, iy), (jx, jy)) = (pic.crossings[u], pic.crossings[v]);
            let dx = (jx as i64 - ix as i64).rem_euclid(lx);
            let dy = (jy as i64 - iy as i64).rem_euclid(ly);
            let base: Vec<i64> = crossing_vector(t, &travel(t, &pic.x, ix, dx))
                .iter()
                .zip(crossing_vector(t, &travel(t, &pic.y, iy, dy)))
                .map(|(a, b)| a - b)
                .collect();
            'turns: for p in -TURNS..=TURNS {
                for q in -TURNS..=TURNS {
                    let v_loop: Vec<i64> = (0..base.len()).map(|e| base[e] + p * hx[e] - q * hy[e]).collect();
                    if !homologically_trivial(&v_loop) {
                        continue;
                    }
                    let mut walk = travel(t, &pic.x, ix, dx + p * lx);
                    let back = travel(t, &pic.y, iy, dy + q * ly);
                    walk.extend(back.iter().rev().map(|&s| t.partner(s)));
                    if wp.is_trivial(walk) {
                        uf.union(u, v);
                        break 'turns;
                    }
                }
            }
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for u in 0..n {
        *sizes.entry(uf.find(u)).or_default() += 1;
    }
    sizes.values().filter(|&&s| s % 2 == 1).count()
}

/// Geometric intersection number of two connected essential curves.
pub fn intersection(t: &Triangulation, x: &MultiCurve, y: &MultiCurve) -> usize {
    if x == y {
        return 0;
    }
    linked_pairs(t, &Picture::new(t, &weights(x), &weights(y)))
}

/// A drawing of `x` and `y` with exactly `target` crossings, found by moving
/// the vertex across strands, fewest crossings first.
fn minimal_picture(t: &Triangulation, x: &MultiCurve, y: &MultiCurve, target: usize) -> Picture {
    let start = (weights(x), weights(y));
    let mut seen = BTreeSet::new();
    let mut queue = BinaryHeap::new();
    let mut order = 0usize;
    seen.insert(start.clone());
    queue.push((std::cmp::Reverse(Picture::new(t, &start.0, &start.1).crossings.len()), std::cmp::Reverse(order), start));
    while let Some((std::cmp::Reverse(v), _, (wx, wy))) = queue.pop() {
        assert!(v >= target, "a drawing beats the intersection number");
        if v == target {
            return Picture::new(t, &wx, &wy);
        }
        let moves = push_neighbours(t, &wx)
            .into_iter()
            .map(|nx| (nx, wy.clone()))
            .chain(push_neighbours(t, &wy).into_iter().map(|ny| (wx.clone(), ny)));
        for next in moves {
            if seen.len() >= SEARCH_CAP {
                panic!("no minimal drawing within {SEARCH_CAP} vertex positions; target {target}, at {v}, start {:?}", (weights(x), weights(y)));
            }
            if seen.insert(next.clone()) {
                order += 1;
                let c = Picture::new(t, &next.0, &next.1).crossings.len();
                queue.push((std::cmp::Reverse(c), std::cmp::Reverse(order), next));
            }
        }
    }
    unreachable!("search space exhausted")
}

/// Whether two connected essential curves fill: in a minimal drawing every
/// complementary region is a disk, so `V - E + F` is the Euler characteristic.
pub fn fills(t: &Triangulation, x: &MultiCurve, y: &MultiCurve) -> bool {
    let i = intersection(t, x, y);
    if i == 0 {
        return false;
    }
    let pic = minimal_picture(t, x, y, i);
    let v = pic.crossings.len() as i64;
    pic.regions(t) as i64 - v == t.euler_characteristic()
}
