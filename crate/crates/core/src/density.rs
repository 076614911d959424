//! Cayley-graph balls, exceptional elements, the multiplier set and the
//! covering/counting check, for the whole group or a subgroup given by
//! generator words.
//!
//! All parallel work goes through an [`Executor`] whose `map` must return
//! results in input order; every merge happens sequentially in a fixed order,
//! so results do not depend on the executor.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::{commutator_curve, fill_report, fills, FaceReport};
use crate::certify::{classify, ClassifierConfig, NTVerdict, VerdictClass};
use crate::curve::MultiCurve;
use crate::error::{Error, Result};
use crate::mapping_class::{ClassKey, TwistAlphabet, Word};

/// Order-preserving parallel map.
pub trait Executor: Sync {
    fn map<T: Sync, U: Send, F: Fn(&T) -> U + Sync>(&self, items: &[T], f: F) -> Vec<U>;
}

/// Runs everything on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T: Sync, U: Send, F: Fn(&T) -> U + Sync>(&self, items: &[T], f: F) -> Vec<U> {
        items.iter().map(f).collect()
    }
}

fn collect<T>(v: Vec<Result<T>>) -> Result<Vec<T>> {
    v.into_iter().collect()
}

/// A finite generating set `S`; steps are `s` and `s^-1` for each `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generators {
    pub words: Vec<Word>,
}

impl Generators {
    /// The twists about the first `n` table curves.
    pub fn twists(n: usize) -> Self {
        Generators { words: (0..n).map(|i| Word::twist(i, 1)).collect() }
    }

    /// `|S|`.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Number of steps, `2|S|`.
    pub fn valence(&self) -> usize {
        2 * self.words.len()
    }

    pub fn step(&self, s: usize) -> Word {
        let w = &self.words[s / 2];
        if s % 2 == 0 { w.clone() } else { w.inverse() }
    }

    /// The twist word spelled by a path of steps.
    pub fn spell(&self, path: &[usize]) -> Word {
        path.iter().fold(Word::identity(), |acc, &s| acc.compose(&self.step(s)))
    }

    /// `sum_{j <= r} (2|S|)^j`.
    pub fn valence_bound(&self, r: usize) -> BigUint {
        let v = BigUint::from(self.valence());
        (0..=r).map(|j| v.pow(j as u32)).sum()
    }
}

/// An element of a ball with its shortest path from the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallElement {
    pub word: Word,
    pub path: Vec<usize>,
    pub key: ClassKey,
}

impl BallElement {
    pub fn distance(&self) -> usize {
        self.path.len()
    }
}

/// The ball `B(1, R)` in the Cayley graph, ordered by distance, then word.
#[derive(Debug, Clone)]
pub struct Ball {
    pub generators: Generators,
    pub radius: usize,
    pub elements: Vec<BallElement>,
    /// False when the size cap stopped enumeration early.
    pub complete: bool,
    /// Radius up to which the ball is exact.
    pub exact_radius: usize,
    index: BTreeMap<ClassKey, usize>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn find(&self, key: &ClassKey) -> Option<&BallElement> {
        self.index.get(key).map(|&i| &self.elements[i])
    }

    /// `|B(r)|` for `r <= radius`.
    pub fn count_within(&self, r: usize) -> usize {
        self.elements.partition_point(|e| e.distance() <= r)
    }
}

/// Exact ball by breadth-first search with left multiplication. Each new
/// element is `s ∘ g`; its probe images are `s` applied to those of `g`.
pub fn enumerate_ball<E: Executor>(
    exec: &E,
    alphabet: &TwistAlphabet,
    generators: &Generators,
    radius: usize,
    size_cap: usize,
) -> Result<Ball> {
    for w in &generators.words {
        alphabet.key(w)?;
    }
    let steps: Vec<(Word, crate::homology::SymplecticMatrix)> = (0..generators.valence())
        .map(|s| {
            let w = generators.step(s);
            let m = alphabet.homology_action(&w)?;
            Ok((w, m))
        })
        .collect::<Result<_>>()?;
    let root = BallElement { word: Word::identity(), path: Vec::new(), key: alphabet.identity().key };
    let mut index = BTreeMap::new();
    index.insert(root.key.clone(), 0);
    let mut elements = vec![root];
    let mut level_start = 0;
    let mut complete = true;
    let mut exact_radius = 0;
    for _ in 0..radius {
        let frontier: Vec<(usize, usize)> =
            (level_start..elements.len()).flat_map(|i| (0..steps.len()).map(move |s| (i, s))).collect();
        let keys = collect(exec.map(&frontier, |&(i, s)| {
            let g = &elements[i];
            let (w, m) = &steps[s];
            let probe_images =
                g.key.probe_images.iter().map(|p| alphabet.apply(w, p)).collect::<Result<Vec<_>>>()?;
            Ok(ClassKey { probe_images, action: m.mul(&g.key.action) })
        }))?;
        let mut level: BTreeMap<ClassKey, BallElement> = BTreeMap::new();
        for (&(i, s), key) in frontier.iter().zip(keys) {
            if index.contains_key(&key) {
                continue;
            }
            let g = &elements[i];
            let word = steps[s].0.compose(&g.word);
            let mut path = vec![s];
            path.extend_from_slice(&g.path);
            match level.get(&key) {
                Some(e) if (&e.word, &e.path) <= (&word, &path) => {}
                _ => {
                    level.insert(key.clone(), BallElement { word, path, key });
                }
            }
        }
        if elements.len() + level.len() > size_cap {
            complete = false;
            break;
        }
        let mut fresh: Vec<BallElement> = level.into_values().collect();
        fresh.sort_by(|x, y| (&x.word, &x.path).cmp(&(&y.word, &y.path)));
        level_start = elements.len();
        for e in fresh {
            index.insert(e.key.clone(), elements.len());
            elements.push(e);
        }
        exact_radius += 1;
    }
    Ok(Ball { generators: generators.clone(), radius, elements, complete, exact_radius, index })
}

/// Curves `a, b` driving the multiplier construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePair {
    pub a: MultiCurve,
    pub b: MultiCurve,
    pub a_name: String,
    pub b_name: String,
    /// `b = h(a)` for this word, when `b` was found by search.
    pub b_from_a: Option<Word>,
    pub fill_evidence: FaceReport,
    pub note: String,
}

/// What `fills(a, b)` does and does not establish.
pub const PAIR_NOTE: &str = "fills(a, b) certifies curve-complex distance at least 3 only; whether the pair is \
     far enough apart for the finiteness of exceptional elements is not checked";

impl CurvePair {
    pub fn new(alphabet: &TwistAlphabet, a: (&str, MultiCurve), b: (&str, MultiCurve), b_from_a: Option<Word>) -> Result<Self> {
        let fill_evidence = fill_report(alphabet.surface(), &a.1, &b.1)?;
        if !fill_evidence.all_disks {
            return Err(Error::BadCurvePair(format!("{} and {} do not fill", a.0, b.0)));
        }
        Ok(CurvePair {
            a: a.1,
            b: b.1,
            a_name: a.0.to_string(),
            b_name: b.0.to_string(),
            b_from_a,
            fill_evidence,
            note: PAIR_NOTE.to_string(),
        })
    }
}

/// Reduced words over the letters `T_i^{±1}`, `i < n`, in order of length
/// and then lexicographically.
fn short_words(n: usize, max_len: usize) -> impl Iterator<Item = Word> {
    let letters: Vec<(usize, i64)> = (0..n).flat_map(|i| [(i, 1), (i, -1)]).collect();
    (1..=max_len).flat_map(move |len| {
        let letters = letters.clone();
        let total = letters.len().pow(len as u32);
        (0..total).filter_map(move |mut code| {
            let mut w = Vec::with_capacity(len);
            for _ in 0..len {
                w.push(letters[code % letters.len()]);
                code /= letters.len();
            }
            w.reverse();
            if w.windows(2).any(|p| p[0].0 == p[1].0) {
                return None;
            }
            Some(Word(w.into_iter().map(|(curve, power)| crate::mapping_class::Letter { curve, power }).collect()))
        })
    })
}

/// The first image `h(c)` of a curve under reduced chain-twist words `h` of
/// length at most `max_len` such that `c` and `h(c)` fill.
pub fn filling_image(alphabet: &TwistAlphabet, c: &MultiCurve, max_len: usize) -> Result<(Word, MultiCurve)> {
    let n = alphabet.probes().len();
    for h in short_words(n, max_len) {
        let image = alphabet.apply(&h, c)?;
        if fills(alphabet.surface(), c, &image)? {
            return Ok((h, image));
        }
    }
    Err(Error::NotFilling)
}

/// Default pair: `a = c1` and `b` its first filling image.
pub fn default_pair(alphabet: &TwistAlphabet, search_len: usize) -> Result<CurvePair> {
    let a = alphabet.probes()[0].clone();
    let (h, b) = filling_image(alphabet, &a, search_len)?;
    let a_name = alphabet.curves()[0].name.clone();
    let b_name = format!("{h} ({a_name})");
    CurvePair::new(alphabet, (&a_name, a), (&b_name, b), Some(h))
}

/// Separating curves for subgroup runs: `d`, the boundary of a neighbourhood
/// of the first two chain curves, and `e = h(d)` filling with it. Both are
/// appended to the table with twist words `(T1 T2)^6` and `h T_d h^-1`;
/// returns their indices.
pub fn add_separating_pair(alphabet: &mut TwistAlphabet, search_len: usize) -> Result<(usize, usize, Word)> {
    let t = alphabet.surface().clone();
    let d = commutator_curve(&t, &alphabet.probes()[0], &alphabet.probes()[1])?;
    let chain_boundary = Word::twist(0, 1).compose(&Word::twist(1, 1)).pow(6);
    let id = alphabet.add_realized_curve("d", d.clone(), chain_boundary)?;
    let (h, e) = filling_image(alphabet, &d, search_len)?;
    let conj = h.compose(&Word::twist(id, 1)).compose(&h.inverse());
    let ie = alphabet.add_realized_curve("e", e, conj)?;
    Ok((id, ie, h))
}

/// Whether neither `a, g(a)` nor `b, g(b)` fill.
pub fn is_exceptional(alphabet: &TwistAlphabet, g: &Word, pair: &CurvePair) -> Result<bool> {
    let t = alphabet.surface();
    Ok(!fills(t, &pair.a, &alphabet.apply(g, &pair.a)?)? && !fills(t, &pair.b, &alphabet.apply(g, &pair.b)?)?)
}

/// Indices of the exceptional elements of a ball.
pub fn find_exceptionals<E: Executor>(exec: &E, alphabet: &TwistAlphabet, ball: &Ball, pair: &CurvePair) -> Result<Vec<usize>> {
    if !fills(alphabet.surface(), &pair.a, &pair.b)? {
        return Err(Error::BadCurvePair("a and b do not fill".into()));
    }
    let flags = collect(exec.map(&ball.elements, |e| is_exceptional(alphabet, &e.word, pair)))?;
    Ok(flags.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i).collect())
}

/// A multiplier with a path in the generators and an upper bound on its
/// distance from the identity (exact when found in the ball).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplier {
    pub word: Word,
    pub path: Vec<usize>,
    pub length: usize,
    pub exact_length: bool,
}

/// An exceptional element and the multiplier found for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Patch {
    pub exceptional: Word,
    pub multiplier: Option<Word>,
}

/// `F = {1, T_a^k_a, T_b^k_b} ∪ {f_i, T_a^k_a ∘ f_i, T_b^k_b ∘ f_i}` and the
/// covering radius `R' = max |f| + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierSet {
    pub k_a: u64,
    pub k_b: u64,
    pub patches: Vec<Patch>,
    pub elements: Vec<Multiplier>,
    pub r_prime: usize,
    /// Every exceptional element received a patch.
    pub complete: bool,
}

/// Paths in the generators for `T_a^{k_a}` and `T_b^{k_b}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistPowers {
    pub a_path: Vec<usize>,
    pub b_path: Vec<usize>,
    pub k_a: u64,
    pub k_b: u64,
}

impl TwistPowers {
    /// Whole-group powers: `T_a` is the generator `a_gen`; `T_b = h T_a h^-1`.
    pub fn whole_group(generators: &Generators, a_gen: usize, h: &Word, k_a: u64, k_b: u64) -> Result<Self> {
        let path_of = |w: &Word| -> Result<Vec<usize>> {
            let mut p = Vec::new();
            for l in w.letters() {
                let s = generators
                    .words
                    .iter()
                    .position(|g| *g == Word::twist(l.curve, 1))
                    .ok_or_else(|| Error::InvalidConfig(format!("T{} is not a generator", l.curve + 1)))?;
                let step = if l.power > 0 { 2 * s } else { 2 * s + 1 };
                p.extend(core::iter::repeat(step).take(l.power.unsigned_abs() as usize));
            }
            Ok(p)
        };
        let ta = vec![2 * a_gen];
        let hp = path_of(h)?;
        let hi = path_of(&h.inverse())?;
        let mut b_unit = hp;
        b_unit.push(2 * a_gen);
        b_unit.extend(hi);
        Ok(TwistPowers {
            a_path: ta.repeat(k_a as usize),
            b_path: conj_power(&b_unit, k_b as usize, 2 * a_gen),
            k_a,
            k_b,
        })
    }
}

/// `h T^k h^-1` from the path of `h T h^-1`, with `T` the step `t`.
fn conj_power(unit: &[usize], k: usize, t: usize) -> Vec<usize> {
    let mid = unit.iter().position(|&s| s == t).unwrap_or(0);
    let mut p = unit[..mid].to_vec();
    p.extend(core::iter::repeat(t).take(k));
    p.extend_from_slice(&unit[mid + 1..]);
    p
}

fn multiplier(alphabet: &TwistAlphabet, ball: &Ball, path: Vec<usize>) -> Result<Multiplier> {
    let word = ball.generators.spell(&path);
    // distances of ball elements are exact; otherwise the path is an upper bound
    Ok(match ball.find(&alphabet.key(&word)?) {
        Some(e) => Multiplier { word: e.word.clone(), path: e.path.clone(), length: e.distance(), exact_length: true },
        None => Multiplier { word, length: path.len(), path, exact_length: false },
    })
}

/// Patches every exceptional element with the first ball element `f`, in
/// ball order, making `f ∘ g` non-exceptional, and assembles `F`.
pub fn build_multiplier_set(
    alphabet: &TwistAlphabet,
    ball: &Ball,
    exceptionals: &[usize],
    pair: &CurvePair,
    powers: &TwistPowers,
) -> Result<MultiplierSet> {
    let mut patches = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut complete = true;
    for &i in exceptionals {
        let g = &ball.elements[i];
        let mut found = None;
        for (j, f) in ball.elements.iter().enumerate() {
            if !is_exceptional(alphabet, &f.word.compose(&g.word), pair)? {
                found = Some(j);
                break;
            }
        }
        complete &= found.is_some();
        if let Some(j) = found {
            if !chosen.contains(&j) {
                chosen.push(j);
            }
        }
        patches.push(Patch { exceptional: g.word.clone(), multiplier: found.map(|j| ball.elements[j].word.clone()) });
    }
    let mut paths: Vec<Vec<usize>> = vec![Vec::new(), powers.a_path.clone(), powers.b_path.clone()];
    for &j in &chosen {
        let f = &ball.elements[j].path;
        for base in [&Vec::new(), &powers.a_path, &powers.b_path] {
            let mut p = base.clone();
            p.extend_from_slice(f);
            paths.push(p);
        }
    }
    let mut elements: Vec<Multiplier> = Vec::new();
    let mut keys = Vec::new();
    for p in paths {
        let m = multiplier(alphabet, ball, p)?;
        let key = alphabet.key(&m.word)?;
        if !keys.contains(&key) {
            keys.push(key);
            elements.push(m);
        }
    }
    let r_prime = elements.iter().map(|m| m.length).max().unwrap_or(0) + 1;
    Ok(MultiplierSet { k_a: powers.k_a, k_b: powers.k_b, patches, elements, r_prime, complete })
}

/// `(2|S|)^{-2(R'+1)}` as an exact fraction `1 / denominator`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityBound {
    pub base: u64,
    pub exponent: u64,
    /// Decimal digits of `base^exponent`.
    pub denominator: String,
    pub value: f64,
}

impl DensityBound {
    pub fn new(generator_count: usize, r_prime: usize) -> Self {
        let base = 2 * generator_count as u64;
        let exponent = 2 * (r_prime as u64 + 1);
        let d = BigUint::from(base).pow(exponent as u32);
        let value = if d.bits() < 1000 { 1.0 / d.to_f64().unwrap_or(f64::INFINITY) } else { 0.0 };
        DensityBound { base, exponent, denominator: d.to_string(), value }
    }

    pub fn denominator(&self) -> BigUint {
        self.denominator.parse().unwrap_or_else(|_| BigUint::zero())
    }
}

/// How one ball element fared in the covering check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverOutcome {
    /// Index into `F` of the first multiplier giving a pseudo-Anosov.
    pub multiplier: Option<usize>,
    /// Verdict classes of `f ∘ g` for the multipliers tried.
    pub tried: Vec<VerdictClass>,
}

impl CoverOutcome {
    pub fn covered(&self) -> bool {
        self.multiplier.is_some()
    }
    /// Not covered although no verdict was Unknown.
    pub fn is_failure(&self) -> bool {
        !self.covered() && !self.tried.contains(&VerdictClass::Unknown)
    }
}

/// Tries the multipliers on `g` in order until one gives a pseudo-Anosov.
pub fn cover_element(
    alphabet: &TwistAlphabet,
    g: &Word,
    verdict_of_g: &NTVerdict,
    f: &MultiplierSet,
    cfg: &ClassifierConfig,
) -> Result<CoverOutcome> {
    let mut tried = Vec::new();
    for (i, m) in f.elements.iter().enumerate() {
        let v = if m.word.is_empty() { verdict_of_g.clone() } else { classify(alphabet, &m.word.compose(g), cfg)? };
        tried.push(v.class());
        if v.is_pa() {
            return Ok(CoverOutcome { multiplier: Some(i), tried });
        }
    }
    Ok(CoverOutcome { multiplier: None, tried })
}

/// Element counts by verdict class within one radius.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub total: usize,
    pub periodic: usize,
    pub certified_pa: usize,
    pub heuristic_pa: usize,
    pub reducible: usize,
    pub unknown: usize,
    pub exceptional: usize,
}

impl Counts {
    pub fn of_class(&self, c: VerdictClass) -> usize {
        match c {
            VerdictClass::Periodic => self.periodic,
            VerdictClass::CertifiedPa => self.certified_pa,
            VerdictClass::HeuristicPa => self.heuristic_pa,
            VerdictClass::Reducible => self.reducible,
            VerdictClass::Unknown => self.unknown,
        }
    }

    fn add(&mut self, c: VerdictClass) {
        self.total += 1;
        match c {
            VerdictClass::Periodic => self.periodic += 1,
            VerdictClass::CertifiedPa => self.certified_pa += 1,
            VerdictClass::HeuristicPa => self.heuristic_pa += 1,
            VerdictClass::Reducible => self.reducible += 1,
            VerdictClass::Unknown => self.unknown += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Densities {
    /// Certified pseudo-Anosov fraction: a lower bound.
    pub certified: f64,
    /// Certified plus heuristic fraction.
    pub combined: f64,
}

/// `|B(R')| · |PA ∩ B(R)| >= |B(R - R')|`, with `|B(R')|` replaced by the
/// valence bound when `R' > R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingInequality {
    pub ball_r_prime: String,
    pub ball_r_prime_exact: bool,
    pub pa_in_ball: usize,
    pub inner_ball: usize,
    pub holds: bool,
}

/// Covering statistics at one radius.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringSummary {
    /// `R - R'`, when nonnegative.
    pub inner_radius: Option<usize>,
    /// Elements of `B(R - R')`, all of which must be covered.
    pub inner_checked: usize,
    pub inner_covered: usize,
    /// The same check over the whole of `B(R)`.
    pub checked: usize,
    pub covered: usize,
    /// Uncovered with some Unknown verdict.
    pub unresolved: usize,
    /// Uncovered with only definite non-pseudo-Anosov verdicts.
    pub failures: Vec<Word>,
    pub inequality: CountingInequality,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusRow {
    #[serde(rename = "R")]
    pub radius: usize,
    pub counts: Counts,
    pub densities: Densities,
    pub bound: DensityBound,
    pub covering: CoveringSummary,
    /// `|B(R)| <= sum_{j <= R} (2|S|)^j`.
    pub valence_bound_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityConfig {
    pub radius: usize,
    pub ball_cap: usize,
    pub classifier: ClassifierConfig,
}

/// Everything a density run produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub generators: Generators,
    pub curve_pair: CurvePair,
    pub multiplier_set: MultiplierSet,
    pub per_radius: Vec<RadiusRow>,
    pub complete: bool,
    /// Word, distance and verdict of every ball element.
    pub elements: Vec<ElementRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub word: Word,
    pub distance: usize,
    pub verdict: NTVerdict,
    pub exceptional: bool,
    pub cover: CoverOutcome,
}

pub fn classify_ball<E: Executor>(exec: &E, alphabet: &TwistAlphabet, ball: &Ball, cfg: &ClassifierConfig) -> Result<Vec<NTVerdict>> {
    collect(exec.map(&ball.elements, |e| classify(alphabet, &e.word, cfg)))
}

/// Ball, exceptionals, multiplier set, covering and densities.
pub fn density_run<E: Executor>(
    exec: &E,
    alphabet: &TwistAlphabet,
    generators: &Generators,
    pair: &CurvePair,
    powers: &TwistPowers,
    cfg: &DensityConfig,
) -> Result<DensityReport> {
    cfg.classifier.validate()?;
    let ball = enumerate_ball(exec, alphabet, generators, cfg.radius, cfg.ball_cap)?;
    let verdicts = classify_ball(exec, alphabet, &ball, &cfg.classifier)?;
    let exceptionals = find_exceptionals(exec, alphabet, &ball, pair)?;
    let f = build_multiplier_set(alphabet, &ball, &exceptionals, pair, powers)?;
    let indexed: Vec<usize> = (0..ball.len()).collect();
    let covers = collect(exec.map(&indexed, |&i| {
        cover_element(alphabet, &ball.elements[i].word, &verdicts[i], &f, &cfg.classifier)
    }))?;
    let mut per_radius = Vec::new();
    for r in 0..=ball.exact_radius {
        per_radius.push(radius_row(&ball, generators, &verdicts, &exceptionals, &covers, &f, r));
    }
    let elements = ball
        .elements
        .iter()
        .enumerate()
        .map(|(i, e)| ElementRecord {
            word: e.word.clone(),
            distance: e.distance(),
            verdict: verdicts[i].clone(),
            exceptional: exceptionals.binary_search(&i).is_ok(),
            cover: covers[i].clone(),
        })
        .collect();
    Ok(DensityReport {
        generators: generators.clone(),
        curve_pair: pair.clone(),
        multiplier_set: f,
        per_radius,
        complete: ball.complete,
        elements,
    })
}

fn radius_row(
    ball: &Ball,
    generators: &Generators,
    verdicts: &[NTVerdict],
    exceptionals: &[usize],
    covers: &[CoverOutcome],
    f: &MultiplierSet,
    r: usize,
) -> RadiusRow {
    let n = ball.count_within(r);
    let mut counts = Counts::default();
    for v in &verdicts[..n] {
        counts.add(v.class());
    }
    counts.exceptional = exceptionals.iter().filter(|&&i| i < n).count();
    let frac = |x: usize| x as f64 / n as f64;
    let densities = Densities {
        certified: frac(counts.certified_pa),
        combined: frac(counts.certified_pa + counts.heuristic_pa),
    };
    let inner_radius = r.checked_sub(f.r_prime);
    let inner = inner_radius.map_or(0, |ri| ball.count_within(ri));
    let pa = counts.certified_pa + counts.heuristic_pa;
    let (ball_r_prime, exact) = if f.r_prime <= ball.exact_radius {
        (BigUint::from(ball.count_within(f.r_prime)), true)
    } else {
        (generators.valence_bound(f.r_prime), false)
    };
    let inequality = CountingInequality {
        ball_r_prime: ball_r_prime.to_string(),
        ball_r_prime_exact: exact,
        pa_in_ball: pa,
        inner_ball: inner,
        holds: &ball_r_prime * BigUint::from(pa) >= BigUint::from(inner),
    };
    let covering = CoveringSummary {
        inner_radius,
        inner_checked: inner,
        inner_covered: covers[..inner].iter().filter(|c| c.covered()).count(),
        checked: n,
        covered: covers[..n].iter().filter(|c| c.covered()).count(),
        unresolved: covers[..n].iter().filter(|c| !c.covered() && !c.is_failure()).count(),
        failures: (0..n).filter(|&i| covers[i].is_failure()).map(|i| ball.elements[i].word.clone()).collect(),
        inequality,
    };
    RadiusRow {
        radius: r,
        counts,
        densities,
        bound: DensityBound::new(generators.len(), f.r_prime),
        covering,
        valence_bound_holds: BigUint::from(n) <= generators.valence_bound(r),
    }
}

/// How membership of the twist powers in the subgroup is established.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    /// All generators and twist powers act trivially on homology.
    Torelli,
    /// The twist powers are spelled by the given generator paths.
    Words,
}

/// The subgroup hypothesis: `T_a^{k_a}, T_b^{k_b} ∈ H` with `a, b` filling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionStar {
    pub a: String,
    pub b: String,
    pub k_a: u64,
    pub k_b: u64,
    pub adjusted_k_a: u64,
    pub adjusted_k_b: u64,
    pub fill_evidence: FaceReport,
    pub membership: Membership,
    /// Paths in the subgroup generators spelling `T_a^{k_a}` and `T_b^{k_b}`.
    pub a_path: Vec<usize>,
    pub b_path: Vec<usize>,
}

/// Smallest multiple of `k` that is at least 7.
pub fn adjusted_exponent(k: u64) -> u64 {
    7u64.div_ceil(k) * k
}

fn unverified(clause: String) -> Error {
    Error::ConditionStarUnverified(clause)
}

/// A generator path equal to `T_c^k`: a single generator or its inverse.
fn find_twist_path(alphabet: &TwistAlphabet, gens: &Generators, c: usize, k: u64) -> Result<Option<Vec<usize>>> {
    let target = Word::twist(c, k as i64);
    for s in 0..gens.valence() {
        if alphabet.equals(&gens.step(s), &target)? {
            return Ok(Some(vec![s]));
        }
    }
    Ok(None)
}

/// Checks the subgroup hypothesis for the table curves `a`, `b`.
pub fn validate_condition_star(
    alphabet: &TwistAlphabet,
    gens: &Generators,
    (a, b): (usize, usize),
    (k_a, k_b): (u64, u64),
    membership: Membership,
) -> Result<ConditionStar> {
    if k_a == 0 || k_b == 0 {
        return Err(unverified("exponents must be positive".into()));
    }
    if a == b {
        return Err(unverified("a and b must differ".into()));
    }
    let (ca, cb) = (alphabet.curve(a)?, alphabet.curve(b)?);
    let fill_evidence = fill_report(alphabet.surface(), &ca.curve, &cb.curve)?;
    if !fill_evidence.all_disks {
        return Err(unverified(format!("{} and {} do not fill", ca.name, cb.name)));
    }
    if membership == Membership::Torelli {
        for (i, w) in gens.words.iter().enumerate() {
            if !alphabet.homology_action(w)?.is_identity() {
                return Err(unverified(format!("generator {} (`{w}`) acts nontrivially on homology", i + 1)));
            }
        }
        for (c, k) in [(a, k_a), (b, k_b)] {
            if !alphabet.homology_action(&Word::twist(c, k as i64))?.is_identity() {
                return Err(unverified(format!("T_{}^{k} acts nontrivially on homology", alphabet.curve(c)?.name)));
            }
        }
    }
    let mut paths = Vec::new();
    for (c, k) in [(a, k_a), (b, k_b)] {
        let p = find_twist_path(alphabet, gens, c, k)?
            .ok_or_else(|| unverified(format!("T_{}^{k} is not a generator", alphabet.curve(c).map(|x| x.name.clone()).unwrap_or_default())))?;
        paths.push(p);
    }
    let b_path = paths.pop().unwrap();
    let a_path = paths.pop().unwrap();
    Ok(ConditionStar {
        a: ca.name.clone(),
        b: cb.name.clone(),
        k_a,
        k_b,
        adjusted_k_a: adjusted_exponent(k_a),
        adjusted_k_b: adjusted_exponent(k_b),
        fill_evidence,
        membership,
        a_path,
        b_path,
    })
}

impl ConditionStar {
    /// Paths for the adjusted powers.
    pub fn powers(&self) -> TwistPowers {
        TwistPowers {
            a_path: self.a_path.repeat((self.adjusted_k_a / self.k_a) as usize),
            b_path: self.b_path.repeat((self.adjusted_k_b / self.k_b) as usize),
            k_a: self.adjusted_k_a,
            k_b: self.adjusted_k_b,
        }
    }
}

/// The density run over the subgroup generated by `gens`.
pub fn subgroup_pipeline<E: Executor>(
    exec: &E,
    alphabet: &TwistAlphabet,
    gens: &Generators,
    cs: &ConditionStar,
    cfg: &DensityConfig,
) -> Result<DensityReport> {
    let a = alphabet.index_of(&cs.a).ok_or_else(|| Error::UnknownCurve(cs.a.clone()))?;
    let b = alphabet.index_of(&cs.b).ok_or_else(|| Error::UnknownCurve(cs.b.clone()))?;
    let pair = CurvePair::new(
        alphabet,
        (&cs.a, alphabet.curve(a)?.curve.clone()),
        (&cs.b, alphabet.curve(b)?.curve.clone()),
        None,
    )?;
    density_run(exec, alphabet, gens, &pair, &cs.powers(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_arithmetic() {
        let b = DensityBound::new(5, 8);
        assert_eq!(b.denominator(), BigUint::from(10u32).pow(18));
        assert_eq!(b.value, 1e-18);
        assert_eq!(adjusted_exponent(3), 9);
        assert_eq!(adjusted_exponent(1), 7);
        assert_eq!(adjusted_exponent(9), 9);
    }

    #[test]
    fn small_balls() {
        let a = TwistAlphabet::standard(2).unwrap();
        let s = Generators::twists(5);
        let b0 = enumerate_ball(&Sequential, &a, &s, 0, 100).unwrap();
        assert_eq!(b0.len(), 1);
        let b1 = enumerate_ball(&Sequential, &a, &s, 1, 100).unwrap();
        assert_eq!(b1.len(), 11);
        let capped = enumerate_ball(&Sequential, &a, &s, 2, 20).unwrap();
        assert!(!capped.complete);
        assert_eq!(capped.exact_radius, 1);
    }
}
