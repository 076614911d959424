//! First homology of the closed surface and the symplectic action of twists.
//!
//! A closed dual walk is recorded by its signed edge crossings; with a single
//! vertex the link crosses every edge once each way, so these vectors already
//! are homology classes of the closed surface. Classes are expressed in the
//! basis given by the first `2g` chain curves.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Interleave};
use crate::curve::{explicit, trace, MultiCurve};
use crate::error::{Error, Result};
use crate::group::Ambient;
use crate::surface::{Side, Triangulation};

/// Sign in `T_c^k(v) = v + SIGN * k * <v, c> c` for the left-turning twist,
/// with `<x, y>` counting crossings where `y` passes `x` from right to left.
pub const TRANSVECTION_SIGN: i64 = 1;

/// Signed crossing counts of a closed walk, one entry per edge.
pub fn crossing_vector(t: &Triangulation, walk: &[Side]) -> Vec<i64> {
    let mut v = vec![0i64; t.num_edges()];
    for &s in walk {
        let e = t.edge(s);
        v[e] += if t.edge_sides(e)[0] == s { 1 } else { -1 };
    }
    v
}

/// Square integer matrix, row-major, with unbounded entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymplecticMatrix {
    pub dim: usize,
    #[serde(with = "crate::decimal::vec")]
    pub entries: Vec<BigInt>,
}

impl SymplecticMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        SymplecticMatrix { dim, entries }
    }

    pub fn from_i64(dim: usize, entries: &[i64]) -> Self {
        SymplecticMatrix { dim, entries: entries.iter().map(|&x| BigInt::from(x)).collect() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        SymplecticMatrix { dim: n, entries }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let entries = (0..n * n).map(|idx| self.get(idx % n, idx / n).clone()).collect();
        SymplecticMatrix { dim: n, entries }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// Whether `M^T J M = J`.
    pub fn preserves(&self, form: &Self) -> bool {
        self.transpose().mul(form).mul(self) == *form
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else { return BigInt::zero() };
                for j in 0..n {
                    a.swap(k * n + j, r * n + j);
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        if negate { -d } else { d }
    }
}

/// Homology data of a surface with a chosen basis of oriented curves.
#[derive(Debug, Clone)]
pub struct Homology {
    basis: Vec<Vec<i64>>,
    form: SymplecticMatrix,
}

impl Homology {
    /// Basis from oriented simple closed curves given as traced walks of
    /// their weight vectors (component 0, traced orientation).
    pub fn new(t: &Triangulation, basis_curves: &[MultiCurve]) -> Result<Self> {
        let n = basis_curves.len();
        if n != 2 * t.genus() {
            return Err(Error::InvalidConfig("homology basis needs 2g curves".into()));
        }
        let walks: Vec<Vec<Side>> = basis_curves.iter().map(|c| oriented_walk(t, c)).collect::<Result<_>>()?;
        let basis = walks.iter().map(|w| crossing_vector(t, w)).collect();
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = algebraic_intersection(t, &basis_curves[i], &basis_curves[j])?;
            }
        }
        let form = SymplecticMatrix::from_i64(n, &entries);
        if !form.determinant().is_one() {
            return Err(Error::InvalidConfig("basis curves do not span homology unimodularly".into()));
        }
        Ok(Homology { basis, form })
    }

    /// The intersection form `J` of the basis.
    pub fn form(&self) -> &SymplecticMatrix {
        &self.form
    }

    /// Coordinates of a closed walk's class in the basis.
    pub fn class_of_walk(&self, t: &Triangulation, walk: &[Side]) -> Result<Vec<i64>> {
        solve(&self.basis, &crossing_vector(t, walk)).ok_or(Error::InvalidPath)
    }

    /// Class of a connected curve in its traced orientation.
    pub fn class_of(&self, t: &Triangulation, c: &MultiCurve) -> Result<Vec<i64>> {
        self.class_of_walk(t, &oriented_walk(t, c)?)
    }

    /// `<u, v> = u^T J v`.
    pub fn pairing(&self, u: &[i64], v: &[i64]) -> i64 {
        let n = self.form.dim;
        let mut s = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                s += self.form.get(i, j) * (u[i] * v[j]);
            }
        }
        i64::try_from(s).expect("pairing of small classes")
    }

    /// Matrix of `v -> v + SIGN * k * <v, c> c` acting on column vectors.
    pub fn transvection(&self, class: &[i64], k: i64) -> SymplecticMatrix {
        let n = self.form.dim;
        // <v, c> = sum_i v_i (J c)_i
        let jc: Vec<BigInt> = (0..n).map(|i| (0..n).map(|j| self.form.get(i, j) * class[j]).sum()).collect();
        let mut m = SymplecticMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[i * n + j] += &jc[j] * (TRANSVECTION_SIGN * k * class[i]);
            }
        }
        m
    }
}

/// Walk of the first traced component of a curve.
pub fn oriented_walk(t: &Triangulation, c: &MultiCurve) -> Result<Vec<Side>> {
    let w = explicit(c.weights())?;
    let comps = trace(t, &w);
    match comps.as_slice() {
        [one] => Ok(one.iter().map(|&(s, _)| s).collect()),
        [] => Err(Error::NotEssential),
        _ => Err(Error::NotConnected),
    }
}

/// Algebraic intersection of two curves in their traced orientations.
pub fn algebraic_intersection(t: &Triangulation, x: &MultiCurve, y: &MultiCurve) -> Result<i64> {
    let xw = explicit(x.weights())?;
    let yw = explicit(y.weights())?;
    let a = Arrangement::from_traced(t, &xw, &trace(t, &xw), &yw, &trace(t, &yw), Interleave::FirstNearStart, Ambient::Closed);
    Ok(a.algebraic_intersection())
}

/// Exact integer solution of `sum_i v_i basis[i] = target`, if one exists.
fn solve(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let n = basis.len();
    let m = target.len();
    // rows: equations per edge; columns: unknowns + rhs
    let mut rows: Vec<Vec<i128>> =
        (0..m).map(|e| (0..n).map(|i| basis[i][e] as i128).chain([target[e] as i128]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, p);
        for i in 0..m {
            if i != r && rows[i][col] != 0 {
                let (a, b) = (rows[r][col], rows[i][col]);
                for j in 0..=n {
                    rows[i][j] = rows[i][j] * a - rows[r][j] * b;
                }
                let g = rows[i].iter().fold(0i128, |g, &x| gcd(g, x));
                if g > 1 {
                    rows[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[n] != 0) {
        return None;
    }
    let mut v = vec![0i64; n];
    for (i, &col) in pivots.iter().enumerate() {
        let (a, b) = (rows[i][col], rows[i][n]);
        if b % a != 0 {
            return None;
        }
        v[col] = (b / a) as i64;
    }
    if pivots.len() != n {
        return None;
    }
    Some(v)
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::standard_curves;
    use crate::surface::build_surface;

    #[test]
    fn chain_form_is_tridiagonal_and_unimodular() {
        for g in 2..4 {
            let t = build_surface(g).unwrap();
            let cs: Vec<MultiCurve> = standard_curves(&t).unwrap().into_iter().map(|(_, c)| c).collect();
            let h = Homology::new(&t, &cs[..2 * g]).unwrap();
            let j = h.form();
            assert_eq!(j.transpose(), SymplecticMatrix { dim: j.dim, entries: j.entries.iter().map(|x| -x).collect() });
            for a in 0..2 * g {
                for b in 0..2 * g {
                    assert_eq!(i64::try_from(j.get(a, b)).unwrap().abs(), i64::from(a.abs_diff(b) == 1));
                }
            }
            for (i, c) in cs[..2 * g].iter().enumerate() {
                let v = h.class_of(&t, c).unwrap();
                assert_eq!(v, (0..2 * g).map(|k| i64::from(k == i)).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn twisting_adds_a_multiple_of_the_core_class() {
        use crate::arrangement::reroute_walks;
        for g in 2..4 {
            let t = build_surface(g).unwrap();
            let cs: Vec<MultiCurve> = standard_curves(&t).unwrap().into_iter().map(|(_, c)| c).collect();
            let h = Homology::new(&t, &cs[..2 * g]).unwrap();
            for x in &cs {
                for c in &cs {
                    let xv = h.class_of(&t, x).unwrap();
                    let cv = h.class_of(&t, c).unwrap();
                    for k in [-2i64, 1, 3] {
                        let xw = explicit(x.weights()).unwrap();
                        let cw = explicit(c.weights()).unwrap();
                        let img = reroute_walks(&t, &xw, &cw, k).unwrap();
                        let got = h.class_of_walk(&t, &img[0]).unwrap();
                        let m = h.transvection(&cv, k);
                        let want: Vec<i64> = (0..2 * g)
                            .map(|i| i64::try_from((0..2 * g).map(|j| m.get(i, j) * xv[j]).sum::<BigInt>()).unwrap())
                            .collect();
                        assert_eq!(got, want);
                        assert!(m.preserves(h.form()));
                    }
                }
            }
        }
    }
}
