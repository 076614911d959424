//! Integer polynomials: characteristic polynomials and an irreducibility
//! test through factorization patterns modulo small primes.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::homology::SymplecticMatrix;

/// Dense integer polynomial, coefficients from the constant term upwards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPoly {
    #[serde(with = "crate::decimal::vec")]
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Whether only powers `t^{k m}` occur, for some `k >= 2`.
    pub fn is_polynomial_in_power(&self) -> bool {
        let n = self.degree();
        (2..=n.max(2)).any(|k| n % k == 0 && self.coeffs.iter().enumerate().all(|(i, c)| i % k == 0 || c.is_zero()))
            && n > 0
    }

    /// Whether this is the `m`-th cyclotomic polynomial for some `m`.
    pub fn is_cyclotomic(&self) -> bool {
        let n = self.degree();
        if n == 0 || !self.is_monic() {
            return false;
        }
        // phi(m) >= sqrt(m / 2), so phi(m) = n forces m <= 2 n^2.
        let bound = 2 * n * n + 2;
        let mut table: Vec<IntPoly> = vec![IntPoly::new(vec![BigInt::one()])];
        for m in 1..=bound {
            // x^m - 1 divided by all Phi_d, d | m, d < m
            let mut num = vec![BigInt::zero(); m + 1];
            num[0] = -BigInt::one();
            num[m] = BigInt::one();
            let mut q = IntPoly::new(num);
            for d in 1..m {
                if m % d == 0 {
                    q = q.exact_div(&table[d]);
                }
            }
            if q == *self {
                return true;
            }
            table.push(q);
        }
        false
    }

    /// Quotient by a monic divisor; the remainder is discarded.
    fn exact_div(&self, d: &IntPoly) -> IntPoly {
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        if r.len() <= dd {
            return IntPoly::new(vec![BigInt::zero()]);
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..=dd {
                r[i + j] -= &c * &d.coeffs[j];
            }
            q[i] = c;
        }
        IntPoly::new(q)
    }

    fn mod_p(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        trim(self.coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
    }
}

/// Characteristic polynomial `det(t I - M)` by the Faddeev–LeVerrier recursion
/// (all divisions are exact).
pub fn char_poly(m: &SymplecticMatrix) -> IntPoly {
    let n = m.dim;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = SymplecticMatrix { dim: n, entries: vec![BigInt::zero(); n * n] };
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = m.mul(&mk);
        for i in 0..n {
            next.entries[i * n + i] += &coeffs[n - k + 1];
        }
        mk = next;
        let tr = m.mul(&mk).trace();
        coeffs[n - k] = -(tr / BigInt::from(k));
    }
    IntPoly::new(coeffs)
}

/// Factor-degree pattern of a squarefree polynomial modulo `p`.
pub fn degree_pattern(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let fp = f.mod_p(p);
    if fp.len() != f.coeffs.len() {
        return None;
    }
    let df = derivative(&fp, p);
    if degree(&gcd(fp.clone(), df, p)) != 0 {
        return None;
    }
    let mut rest = make_monic(fp, p);
    let mut pattern = Vec::new();
    let mut h = vec![0, 1];
    let mut i = 1;
    while degree(&rest) >= 2 * i {
        h = powmod(&h, p, &rest, p);
        let mut hx = h.clone();
        hx.resize(hx.len().max(2), 0);
        hx[1] = (hx[1] + p - 1) % p;
        let g = gcd(rest.clone(), trim(hx), p);
        let dg = degree(&g);
        if dg > 0 {
            pattern.extend(core::iter::repeat(i).take(dg / i));
            rest = divide(&rest, &g, p);
            h = rem(&h, &rest, p);
        }
        i += 1;
    }
    if degree(&rest) > 0 {
        pattern.push(degree(&rest));
    }
    pattern.sort();
    Some(pattern)
}

/// Evidence that a monic integer polynomial is irreducible over the
/// rationals: factor-degree patterns modulo primes whose achievable proper
/// factor degrees have empty intersection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityWitness {
    pub patterns: Vec<(u64, Vec<usize>)>,
}

const PRIMES: [u64; 25] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

pub fn irreducibility_witness(f: &IntPoly) -> Option<IrreducibilityWitness> {
    let n = f.degree();
    if !f.is_monic() || n == 0 {
        return None;
    }
    let mut possible: BTreeSet<usize> = (1..n).collect();
    let mut patterns = Vec::new();
    for &p in &PRIMES {
        if possible.is_empty() {
            break;
        }
        let Some(pat) = degree_pattern(f, p) else { continue };
        let sums = subset_sums(&pat);
        let before = possible.len();
        possible.retain(|d| sums.contains(d));
        if possible.len() < before || possible.is_empty() {
            patterns.push((p, pat));
        }
    }
    possible.is_empty().then_some(IrreducibilityWitness { patterns })
}

/// Checks a witness against `f` from scratch.
pub fn check_witness(f: &IntPoly, w: &IrreducibilityWitness) -> bool {
    let n = f.degree();
    let mut possible: BTreeSet<usize> = (1..n).collect();
    for (p, pat) in &w.patterns {
        if degree_pattern(f, *p).as_ref() != Some(pat) {
            return false;
        }
        let sums = subset_sums(pat);
        possible.retain(|d| sums.contains(d));
    }
    f.is_monic() && possible.is_empty()
}

fn subset_sums(pat: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::new();
    s.insert(0);
    for &d in pat {
        let cur: Vec<usize> = s.iter().copied().collect();
        for x in cur {
            s.insert(x + d);
        }
    }
    s
}

// Polynomials over F_p as coefficient vectors, low degree first, trimmed.

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

fn degree(v: &[u64]) -> usize {
    v.len() - 1
}

fn is_zero(v: &[u64]) -> bool {
    v.len() == 1 && v[0] == 0
}

fn inv(a: u64, p: u64) -> u64 {
    let (mut r, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

fn make_monic(v: Vec<u64>, p: u64) -> Vec<u64> {
    let lead = inv(*v.last().unwrap(), p);
    v.into_iter().map(|c| c * lead % p).collect()
}

fn derivative(v: &[u64], p: u64) -> Vec<u64> {
    if v.len() == 1 {
        return vec![0];
    }
    trim((1..v.len()).map(|i| v[i] * (i as u64 % p) % p).collect())
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = degree(m);
    let li = inv(m[dm], p);
    while r.len() > dm && !is_zero(&r) {
        let dr = r.len() - 1;
        let c = r[dr] * li % p;
        if c != 0 {
            for j in 0..=dm {
                r[dr - dm + j] = (r[dr - dm + j] + p - c * m[j] % p) % p;
            }
        }
        r.pop();
        if r.is_empty() {
            r.push(0);
        }
    }
    trim(r)
}

fn divide(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = degree(m);
    if r.len() <= dm {
        return vec![0];
    }
    let li = inv(m[dm], p);
    let mut q = vec![0u64; r.len() - dm];
    for i in (0..q.len()).rev() {
        let c = r[i + dm] * li % p;
        q[i] = c;
        for j in 0..=dm {
            r[i + j] = (r[i + j] + p - c * m[j] % p) % p;
        }
    }
    trim(q)
}

fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&trim(out), m, p)
}

fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !is_zero(&b) {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if is_zero(&a) { a } else { make_monic(a, p) }
}

#[cfg(test)]
fn from_i64(c: &[i64]) -> IntPoly {
    IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_of_small_matrices() {
        let m = SymplecticMatrix::from_i64(2, &[2, 1, 1, 1]);
        assert_eq!(char_poly(&m), from_i64(&[1, -3, 1]));
        let id = SymplecticMatrix::identity(4);
        assert_eq!(char_poly(&id), from_i64(&[1, -4, 6, -4, 1]));
    }

    #[test]
    fn irreducibility() {
        // t^4 - t^3 - t^2 - t + 1 (Salem-like, irreducible)
        let f = from_i64(&[1, -1, -1, -1, 1]);
        let w = irreducibility_witness(&f).unwrap();
        assert!(check_witness(&f, &w));
        // (t^2 - 3t + 1)^2 is reducible
        assert!(irreducibility_witness(&from_i64(&[1, -6, 11, -6, 1])).is_none());
        // (t^2 - 3t + 1)(t^2 - t + 1)
        assert!(irreducibility_witness(&from_i64(&[1, -4, 5, -4, 1])).is_none());
        // x^4 + 1 is irreducible over Q but reducible mod every prime
        assert!(irreducibility_witness(&from_i64(&[1, 0, 0, 0, 1])).is_none());
    }

    #[test]
    fn cyclotomic_and_power_tests() {
        assert!(from_i64(&[1, 1, 1, 1, 1]).is_cyclotomic());
        assert!(from_i64(&[1, -1, 1, -1, 1]).is_cyclotomic());
        assert!(!from_i64(&[1, -1, -1, -1, 1]).is_cyclotomic());
        assert!(from_i64(&[1, 0, -3, 0, 1]).is_polynomial_in_power());
        assert!(!from_i64(&[1, -1, -1, -1, 1]).is_polynomial_in_power());
    }
}
