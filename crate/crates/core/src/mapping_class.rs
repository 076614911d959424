//! Mapping classes as words in Dehn twists.
//!
//! A [`TwistAlphabet`] fixes a surface, a table of twist curves and the probe
//! family used to compare classes. Words are composed right to left: in
//! `T1 T2` the twist `T2` acts first.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arrangement::intersection_number;
use crate::curve::{explicit, MultiCurve};
use crate::error::{Error, Result};

use crate::homology::{Homology, SymplecticMatrix};
use crate::standard::standard_curves;
use crate::surface::{build_surface, Triangulation};
use crate::twist::TwistProgram;

/// Lift growth beyond this factor rules out finite order.
const ORDER_GROWTH_CAP: u32 = 4096;

/// `T_c^power` for the curve with table index `curve`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub curve: usize,
    pub power: i64,
}

/// A word in twists, written like `T1^3 T2^-1 T5^7`; the empty word is `id`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn twist(curve: usize, power: i64) -> Self {
        Word(alloc::vec![Letter { curve, power }])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| Letter { curve: l.curve, power: -l.power }).collect())
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.iter().copied().cycle().take(self.0.len() * n).collect())
    }

    /// Merges adjacent letters on the same curve and drops zero powers.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match out.last_mut() {
                Some(last) if last.curve == l.curve => {
                    last.power += l.power;
                    if last.power == 0 {
                        out.pop();
                    }
                }
                _ if l.power == 0 => {}
                _ => out.push(l),
            }
        }
        Word(out)
    }

    /// Reduced word with first and last letters on different curves; a
    /// conjugate of `self`.
    pub fn cyclically_reduced(&self) -> Word {
        let mut v = self.reduced().0;
        while v.len() > 1 && v[0].curve == v[v.len() - 1].curve {
            let last = v.pop().unwrap();
            v[0].power += last.power;
            if v[0].power == 0 {
                v.remove(0);
            }
            v = Word(v).reduced().0;
        }
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "T{}^{}", l.curve + 1, l.power)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(Word::identity());
        }
        s.split_whitespace()
            .map(|tok| {
                let body = tok.strip_prefix('T').ok_or_else(|| Error::Parse(format!("letter `{tok}` must start with T")))?;
                let (idx, pow) = match body.split_once('^') {
                    Some((i, p)) => (i, p.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?),
                    None => (body, 1),
                };
                let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad curve index in `{tok}`")))?;
                if idx == 0 {
                    return Err(Error::Parse(format!("curve indices start at 1 (`{tok}`)")));
                }
                Ok(Letter { curve: idx - 1, power: pow })
            })
            .collect::<Result<_>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// What two classes are compared by: images of the probe curves and the
/// action on homology.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassKey {
    pub probe_images: Vec<MultiCurve>,
    pub action: SymplecticMatrix,
}

/// A mapping class with its comparison key.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MappingClass {
    pub word: Word,
    pub key: ClassKey,
}

impl PartialEq for MappingClass {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for MappingClass {}

/// How a twist acts on punctured-surface coordinates.
#[derive(Debug, Clone)]
enum TwistAction {
    Flips(TwistProgram),
    /// A word in earlier table curves equal to the twist; used for curves
    /// with no flip program, such as separating ones.
    Word(Word),
}

/// A named twist curve with its precomputed data.
#[derive(Debug, Clone)]
pub struct TwistCurve {
    pub name: String,
    pub curve: MultiCurve,
    lift: Vec<usize>,
    action: TwistAction,
    class: Vec<i64>,
}

impl TwistCurve {
    /// The word realizing this twist, for curves without a flip program.
    pub fn realization(&self) -> Option<&Word> {
        match &self.action {
            TwistAction::Word(w) => Some(w),
            TwistAction::Flips(_) => None,
        }
    }

    pub fn homology_class(&self) -> &[i64] {
        &self.class
    }
    pub fn lift(&self) -> &[usize] {
        &self.lift
    }
}

/// Version tag of the probe family used by [`TwistAlphabet::key`].
pub const PROBE_FAMILY: &str = "chain-2g+1+homology/v1";

/// Surface, twist curve table and probe family.
#[derive(Debug, Clone)]
pub struct TwistAlphabet {
    surface: Triangulation,
    curves: Vec<TwistCurve>,
    probes: Vec<MultiCurve>,
    homology: Homology,
}

impl TwistAlphabet {
    /// The standard surface of the given genus with the chain curves as the
    /// first `2g + 1` twist curves.
    pub fn standard(genus: usize) -> Result<Self> {
        let t = build_surface(genus)?;
        let chain = standard_curves(&t)?;
        Self::from_table(t, chain)
    }

    /// Alphabet from a curve table whose first `2g + 1` entries form a chain:
    /// consecutive curves meet once, all others are disjoint. The chain is the
    /// probe family and its first `2g` curves the homology basis.
    pub fn from_table(t: Triangulation, table: Vec<(String, MultiCurve)>) -> Result<Self> {
        let n = 2 * t.genus() + 1;
        if table.len() < n {
            return Err(Error::InvalidConfig(format!("curve table needs at least {n} curves")));
        }
        for (_, c) in &table {
            c.check_surface(&t)?;
        }
        let probes: Vec<MultiCurve> = table[..n].iter().map(|(_, c)| c.clone()).collect();
        for i in 0..n {
            for j in i + 1..n {
                let want = usize::from(j == i + 1);
                if intersection_number(&t, &probes[i], &probes[j])? != want {
                    let (x, y) = (&table[i].0, &table[j].0);
                    return Err(Error::InvalidConfig(format!("{x} and {y} should meet {want} times")));
                }
            }
        }
        let homology = Homology::new(&t, &probes[..n - 1])?;
        let mut a = TwistAlphabet { surface: t, curves: Vec::new(), probes, homology };
        for (name, c) in table {
            a.add_curve(&name, c)?;
        }
        Ok(a)
    }

    /// Index of the curve with the given name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.name == name)
    }

    fn check_new(&self, c: &MultiCurve) -> Result<Option<usize>> {
        c.check_surface(&self.surface)?;
        if c.is_empty() {
            return Err(Error::NotEssential);
        }
        if c.component_count(&self.surface)? != 1 {
            return Err(Error::NotConnected);
        }
        Ok(self.curves.iter().position(|x| x.curve == *c))
    }

    /// Appends a twist curve and returns its table index.
    pub fn add_curve(&mut self, name: &str, c: MultiCurve) -> Result<usize> {
        if let Some(i) = self.check_new(&c)? {
            return Ok(i);
        }
        let lift = explicit(c.weights())?;
        let program = TwistProgram::new(&self.surface, &lift)?;
        let class = self.homology.class_of(&self.surface, &c)?;
        self.curves.push(TwistCurve { name: name.to_string(), curve: c, lift, action: TwistAction::Flips(program), class });
        Ok(self.curves.len() - 1)
    }

    /// Appends a twist curve whose twist is given by a word in the current
    /// table. The word must fix the curve and act on homology as the twist.
    pub fn add_realized_curve(&mut self, name: &str, c: MultiCurve, word: Word) -> Result<usize> {
        if let Some(i) = self.check_new(&c)? {
            return Ok(i);
        }
        self.check(&word)?;
        let class = self.homology.class_of(&self.surface, &c)?;
        if self.apply(&word, &c)? != c || self.homology_action(&word)? != self.homology.transvection(&class, 1) {
            return Err(Error::InvalidConfig(format!("`{word}` does not realize the twist about {name}")));
        }
        let lift = explicit(c.weights())?;
        self.curves.push(TwistCurve { name: name.to_string(), curve: c, lift, action: TwistAction::Word(word), class });
        Ok(self.curves.len() - 1)
    }

    pub fn surface(&self) -> &Triangulation {
        &self.surface
    }
    pub fn genus(&self) -> usize {
        self.surface.genus()
    }
    pub fn curves(&self) -> &[TwistCurve] {
        &self.curves
    }
    pub fn curve(&self, i: usize) -> Result<&TwistCurve> {
        self.curves.get(i).ok_or_else(|| Error::UnknownCurve(format!("T{}", i + 1)))
    }
    pub fn probes(&self) -> &[MultiCurve] {
        &self.probes
    }
    pub fn homology(&self) -> &Homology {
        &self.homology
    }

    fn check(&self, w: &Word) -> Result<()> {
        for l in w.letters() {
            self.curve(l.curve)?;
        }
        Ok(())
    }

    /// Applies `w` to punctured-surface weights in place.
    pub fn apply_lift(&self, w: &Word, lift: &mut [BigUint]) -> Result<()> {
        self.check(w)?;
        for l in w.letters().iter().rev() {
            match &self.curves[l.curve].action {
                TwistAction::Flips(p) => p.apply(lift, l.power),
                TwistAction::Word(r) => {
                    let step = if l.power > 0 { r.clone() } else { r.inverse() };
                    for _ in 0..l.power.unsigned_abs() {
                        self.apply_lift(&step, lift)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Image of a multicurve.
    pub fn apply(&self, w: &Word, x: &MultiCurve) -> Result<MultiCurve> {
        x.check_surface(&self.surface)?;
        let mut lift = x.weights().to_vec();
        self.apply_lift(w, &mut lift)?;
        MultiCurve::from_lift(&self.surface, &lift)
    }

    /// Action on homology in the chain basis.
    pub fn homology_action(&self, w: &Word) -> Result<SymplecticMatrix> {
        self.check(w)?;
        let mut m = SymplecticMatrix::identity(2 * self.genus());
        for l in w.letters() {
            m = m.mul(&self.homology.transvection(&self.curves[l.curve].class, l.power));
        }
        Ok(m)
    }

    /// Comparison key of `w`.
    pub fn key(&self, w: &Word) -> Result<ClassKey> {
        let probe_images = self.probes.iter().map(|p| self.apply(w, p)).collect::<Result<_>>()?;
        Ok(ClassKey { probe_images, action: self.homology_action(w)? })
    }

    pub fn evaluate(&self, w: &Word) -> Result<MappingClass> {
        Ok(MappingClass { word: w.clone(), key: self.key(w)? })
    }

    pub fn identity(&self) -> MappingClass {
        self.evaluate(&Word::identity()).expect("identity key")
    }

    pub fn twist(&self, curve: usize, k: i64) -> Result<MappingClass> {
        self.evaluate(&Word::twist(curve, k))
    }

    pub fn compose(&self, g: &MappingClass, h: &MappingClass) -> Result<MappingClass> {
        self.evaluate(&g.word.compose(&h.word))
    }

    pub fn inverse(&self, g: &MappingClass) -> Result<MappingClass> {
        self.evaluate(&g.word.inverse())
    }

    pub fn equals(&self, g: &Word, h: &Word) -> Result<bool> {
        Ok(self.key(g)? == self.key(h)?)
    }

    pub fn is_identity(&self, w: &Word) -> Result<bool> {
        let key = self.key(w)?;
        Ok(key.action.is_identity() && key.probe_images == self.probes)
    }

    /// Smallest `n <= n_max` with `w^n` trivial.
    ///
    /// The homology action must have finite order `n0` first. Then `w^n0` lies
    /// in the Torelli group, which is torsion-free, so `w` has finite order iff
    /// `w^n0` is trivial, and that order is `n0`.
    pub fn order_test(&self, w: &Word, n_max: usize) -> Result<Option<usize>> {
        let m = self.homology_action(w)?;
        let mut p = m.clone();
        let mut n0 = None;
        for n in 1..=n_max {
            if p.is_identity() {
                n0 = Some(n);
                break;
            }
            p = p.mul(&m);
        }
        let Some(n0) = n0 else { return Ok(None) };
        // Step the lifts first: a periodic class keeps them bounded, so runaway
        // growth rules it out before the expensive canonical comparison.
        let mut lifts: Vec<Vec<BigUint>> = self.probes.iter().map(|p| p.weights().to_vec()).collect();
        for lift in &mut lifts {
            let cap = lift.iter().sum::<BigUint>() * BigUint::from(ORDER_GROWTH_CAP);
            for _ in 0..n0 {
                self.apply_lift(w, lift)?;
                if lift.iter().sum::<BigUint>() > cap {
                    return Ok(None);
                }
            }
        }
        for (lift, probe) in lifts.iter().zip(&self.probes) {
            match MultiCurve::from_lift(&self.surface, lift) {
                Ok(image) if image == *probe => {}
                Ok(_) | Err(Error::CurveTooLarge(_)) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
        Ok(Some(n0))
    }
}

/// A curve table entry in interchange form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCurve {
    pub name: String,
    #[serde(with = "crate::decimal::vec")]
    pub weights: Vec<BigUint>,
    /// Word in earlier curves realizing the twist, when there is no flip
    /// program.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Word>,
}

/// Surface and curve table: `{genus, triangles, named_curves}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFixture {
    pub genus: usize,
    pub triangles: Vec<[usize; 3]>,
    pub named_curves: Vec<NamedCurve>,
}

impl SurfaceFixture {
    pub fn of(alphabet: &TwistAlphabet) -> Self {
        SurfaceFixture {
            genus: alphabet.genus(),
            triangles: alphabet.surface().triangles().to_vec(),
            named_curves: alphabet
                .curves()
                .iter()
                .map(|c| NamedCurve {
                    name: c.name.clone(),
                    weights: c.curve.weights().to_vec(),
                    twist: c.realization().cloned(),
                })
                .collect(),
        }
    }

    /// Rebuilds the alphabet; curve weights may be any normal coordinates.
    pub fn alphabet(&self) -> Result<TwistAlphabet> {
        let t = Triangulation::from_triangles(self.genus, self.triangles.clone())?;
        let n = 2 * self.genus + 1;
        let mut table = Vec::new();
        let mut realized = Vec::new();
        for (i, c) in self.named_curves.iter().enumerate() {
            if c.weights.len() != t.num_edges() {
                return Err(Error::SurfaceMismatch);
            }
            let curve = MultiCurve::from_lift(&t, &c.weights)?;
            match &c.twist {
                Some(w) if i >= n => realized.push((c.name.clone(), curve, w.clone())),
                Some(_) => return Err(Error::InvalidConfig("chain curves need flip programs".into())),
                None if realized.is_empty() => table.push((c.name.clone(), curve)),
                None => return Err(Error::InvalidConfig("realized curves must come last".into())),
            }
        }
        let mut a = TwistAlphabet::from_table(t, table)?;
        for (name, curve, w) in realized {
            a.add_realized_curve(&name, curve, w)?;
        }
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn words_round_trip() {
        for s in ["T1^3 T2^-1 T5^7", "id", "T12^0"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert_eq!(w("T1 T2"), w("T1^1 T2^1"));
        assert!("T0".parse::<Word>().is_err());
        assert!("X1".parse::<Word>().is_err());
        assert!("T1^x".parse::<Word>().is_err());
    }

    #[test]
    fn fixture_round_trip() {
        let a = TwistAlphabet::standard(2).unwrap();
        let f = SurfaceFixture::of(&a);
        let b = f.alphabet().unwrap();
        assert_eq!(SurfaceFixture::of(&b), f);
    }

    #[test]
    fn commutator_of_chain_neighbours_is_the_chain_boundary() {
        use crate::arrangement::commutator_curve;
        let mut a = TwistAlphabet::standard(2).unwrap();
        let d = commutator_curve(a.surface(), &a.probes()[0], &a.probes()[1]).unwrap();
        assert_eq!(d.component_count(a.surface()).unwrap(), 1);
        let meets: Vec<usize> = a.probes().iter().map(|p| intersection_number(a.surface(), &d, p).unwrap()).collect();
        assert_eq!(meets, [0, 0, 2, 0, 0]);
        assert!(matches!(a.add_curve("d", d.clone()), Err(Error::ShorteningFailed)));
        assert!(a.add_realized_curve("d", d.clone(), w("T1 T2")).is_err());
        let i = a.add_realized_curve("d", d.clone(), w("T1 T2").pow(6)).unwrap();
        assert!(a.curve(i).unwrap().homology_class().iter().all(|&x| x == 0));
        assert!(a.homology_action(&Word::twist(i, 3)).unwrap().is_identity());
        assert_eq!(a.apply(&Word::twist(i, -2), &d).unwrap(), d);
        let f = SurfaceFixture::of(&a);
        assert_eq!(SurfaceFixture::of(&f.alphabet().unwrap()), f);
    }

    #[test]
    fn reduction() {
        assert_eq!(w("T1 T1^-1 T2 T3^0 T2").reduced(), w("T2^2"));
        assert_eq!(w("T1 T2 T3 T1^2").cyclically_reduced(), w("T1^3 T2 T3"));
        assert_eq!(w("T1 T2 T1^-1").cyclically_reduced(), w("T2"));
    }

    #[test]
    fn relations_hold() {
        let a = TwistAlphabet::standard(2).unwrap();
        assert!(a.equals(&w("T1 T2 T1"), &w("T2 T1 T2")).unwrap());
        assert!(a.equals(&w("T1 T3"), &w("T3 T1")).unwrap());
        assert!(!a.equals(&w("T1"), &w("id")).unwrap());
        assert!(a.is_identity(&w("T2^3 T4 T4^-1 T2^-3")).unwrap());
        let c1 = a.probes()[0].clone();
        assert_eq!(a.apply(&w("T1^5"), &c1).unwrap(), c1);
        assert_eq!(a.apply(&w("T1"), &a.probes()[2]).unwrap(), a.probes()[2]);
    }

    #[test]
    fn orders() {
        let a = TwistAlphabet::standard(2).unwrap();
        assert_eq!(a.order_test(&w("id"), 10).unwrap(), Some(1));
        assert_eq!(a.order_test(&w("T1"), 50).unwrap(), None);
        // (T1 T2)^6 is the twist about a separating curve; T1 T2 alone has
        // order 6 on homology but infinite order.
        assert_eq!(a.order_test(&w("T1 T2"), 20).unwrap(), None);
        // the chain of length 5 gives (T1 T2 T3 T4 T5)^6 = 1 and
        // (T1 T2 T3 T4)^10 = 1 on genus 2
        assert_eq!(a.order_test(&w("T1 T2 T3 T4 T5"), 20).unwrap(), Some(6));
        assert_eq!(a.order_test(&w("T1 T2 T3 T4"), 20).unwrap(), Some(10));
    }
}
