//! Pseudo-Anosov evidence: twist-window certificates, Penner-form and
//! homological certificates, and a growth-based heuristic classifier.
//!
//! Every certificate re-verifies from its own payload against an alphabet;
//! nothing computed while producing it is trusted.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::{fill_report, intersection_number, union, FaceReport};
use crate::curve::MultiCurve;
use crate::error::{Error, Result};
use crate::homology::SymplecticMatrix;
use crate::mapping_class::{SurfaceFixture, TwistAlphabet, Word};
use crate::poly::{char_poly, check_witness, irreducibility_witness, IntPoly, IrreducibilityWitness};

/// Length of the window of consecutive twist exponents guaranteed to contain
/// a pseudo-Anosov.
pub const FATHI_WINDOW: usize = 8;

pub const FATHI_GUARANTEE: &str = "for every window of 8 consecutive integers k, at least one T_c^k∘g is \
     pseudo-Anosov; in particular at least one of {g, T_c^7∘g} is pseudo-Anosov";

/// Thresholds of the heuristic parts of classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierConfig {
    /// Maximum number of iterations of the growth test.
    pub iter_cap: usize,
    /// Growth ratios must exceed `1 + epsilon`.
    pub epsilon: f64,
    /// Number of consecutive ratios that must agree.
    pub window: usize,
    /// Allowed spread of the agreeing ratios.
    pub tolerance: f64,
    /// Largest `n` tried in the orbit form of the twist-window test.
    pub fathi_depth: usize,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig { iter_cap: 40, epsilon: 0.01, window: 5, tolerance: 1e-3, fathi_depth: 3 }
    }
}

impl ClassifierConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iter_cap < 8 {
            return Err(Error::InvalidConfig("iter_cap must be at least 8".into()));
        }
        if !(self.epsilon > 0.0 && self.tolerance > 0.0) || self.window == 0 || self.fathi_depth == 0 {
            return Err(Error::InvalidConfig("classifier thresholds must be positive".into()));
        }
        Ok(())
    }
}

/// `c` and `g^n(c)` fill, so the orbit of `c` fills and the twist window
/// guarantee applies to `(g, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FathiCertificate {
    pub word: Word,
    pub curve: MultiCurve,
    pub power: usize,
    pub image: MultiCurve,
    pub fill_evidence: FaceReport,
    pub guarantee: String,
}

impl FathiCertificate {
    pub fn verify(&self, alphabet: &TwistAlphabet) -> Result<bool> {
        let t = alphabet.surface();
        self.curve.check_surface(t)?;
        if self.power == 0 || self.curve.component_count(t)? != 1 || self.guarantee != FATHI_GUARANTEE {
            return Ok(false);
        }
        let image = alphabet.apply(&self.word.pow(self.power), &self.curve)?;
        if image != self.image {
            return Ok(false);
        }
        let report = fill_report(t, &self.curve, &image)?;
        Ok(report.all_disks && report == self.fill_evidence)
    }
}

/// Certificate for `g` with twist curve `c`: tries `fills(c, g(c))`, then
/// `fills(c, g^n(c))` for `n` up to `depth`.
pub fn fathi_certificate(alphabet: &TwistAlphabet, g: &Word, c: &MultiCurve, depth: usize) -> Result<FathiCertificate> {
    let t = alphabet.surface();
    c.check_surface(t)?;
    if c.is_empty() {
        return Err(Error::NotEssential);
    }
    if c.component_count(t)? != 1 {
        return Err(Error::NotConnected);
    }
    let mut image = c.clone();
    for power in 1..=depth.max(1) {
        image = alphabet.apply(g, &image)?;
        let report = fill_report(t, c, &image)?;
        if report.all_disks {
            return Ok(FathiCertificate {
                word: g.clone(),
                curve: c.clone(),
                power,
                image,
                fill_evidence: report,
                guarantee: FATHI_GUARANTEE.to_string(),
            });
        }
    }
    Err(Error::NotFilling)
}

/// Positive twists about the disjoint family `A`, negative twists about the
/// disjoint family `B`, every curve used, `A ∪ B` filling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PennerCertificate {
    /// Cyclically reduced form of the certified word.
    pub word: Word,
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub positive_union: MultiCurve,
    pub negative_union: MultiCurve,
    pub fill_evidence: FaceReport,
}

/// Curve indices split by the sign of their letters, or `None` if a curve
/// occurs with both signs or either side is empty.
fn sign_pattern(w: &Word) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for l in w.letters() {
        let (mine, other) = if l.power > 0 { (&mut pos, &neg) } else { (&mut neg, &pos) };
        if other.contains(&l.curve) {
            return None;
        }
        if !mine.contains(&l.curve) {
            mine.push(l.curve);
        }
    }
    pos.sort_unstable();
    neg.sort_unstable();
    (!pos.is_empty() && !neg.is_empty()).then_some((pos, neg))
}

fn pairwise_disjoint(alphabet: &TwistAlphabet, family: &[usize]) -> Result<bool> {
    let t = alphabet.surface();
    for (i, &x) in family.iter().enumerate() {
        for &y in &family[i + 1..] {
            let (cx, cy) = (&alphabet.curve(x)?.curve, &alphabet.curve(y)?.curve);
            if cx == cy || intersection_number(t, cx, cy)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn family_union(alphabet: &TwistAlphabet, family: &[usize]) -> Result<MultiCurve> {
    let parts: Vec<MultiCurve> = family.iter().map(|&i| Ok(alphabet.curve(i)?.curve.clone())).collect::<Result<_>>()?;
    union(alphabet.surface(), &parts)
}

pub fn penner_certificate(alphabet: &TwistAlphabet, g: &Word) -> Result<Option<PennerCertificate>> {
    let word = g.cyclically_reduced();
    let Some((positive, negative)) = sign_pattern(&word) else { return Ok(None) };
    if !pairwise_disjoint(alphabet, &positive)? || !pairwise_disjoint(alphabet, &negative)? {
        return Ok(None);
    }
    let positive_union = family_union(alphabet, &positive)?;
    let negative_union = family_union(alphabet, &negative)?;
    let fill_evidence = fill_report(alphabet.surface(), &positive_union, &negative_union)?;
    if !fill_evidence.all_disks {
        return Ok(None);
    }
    Ok(Some(PennerCertificate { word, positive, negative, positive_union, negative_union, fill_evidence }))
}

impl PennerCertificate {
    pub fn verify(&self, alphabet: &TwistAlphabet, g: &Word) -> Result<bool> {
        if g.cyclically_reduced() != self.word {
            return Ok(false);
        }
        if sign_pattern(&self.word) != Some((self.positive.clone(), self.negative.clone())) {
            return Ok(false);
        }
        if !pairwise_disjoint(alphabet, &self.positive)? || !pairwise_disjoint(alphabet, &self.negative)? {
            return Ok(false);
        }
        if family_union(alphabet, &self.positive)? != self.positive_union
            || family_union(alphabet, &self.negative)? != self.negative_union
        {
            return Ok(false);
        }
        let report = fill_report(alphabet.surface(), &self.positive_union, &self.negative_union)?;
        Ok(report.all_disks && report == self.fill_evidence)
    }
}

/// The action on homology has an irreducible, non-cyclotomic characteristic
/// polynomial that is not a polynomial in `t^k` for any `k >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologicalCertificate {
    pub action: SymplecticMatrix,
    pub char_poly: IntPoly,
    pub irreducibility: IrreducibilityWitness,
}

pub fn casson_bleiler(alphabet: &TwistAlphabet, g: &Word) -> Result<Option<HomologicalCertificate>> {
    let action = alphabet.homology_action(g)?;
    let f = char_poly(&action);
    if f.is_polynomial_in_power() {
        return Ok(None);
    }
    let Some(irreducibility) = irreducibility_witness(&f) else { return Ok(None) };
    if f.is_cyclotomic() {
        return Ok(None);
    }
    Ok(Some(HomologicalCertificate { action, char_poly: f, irreducibility }))
}

impl HomologicalCertificate {
    pub fn verify(&self, alphabet: &TwistAlphabet, g: &Word) -> Result<bool> {
        let action = alphabet.homology_action(g)?;
        if action != self.action || char_poly(&action) != self.char_poly {
            return Ok(false);
        }
        let f = &self.char_poly;
        Ok(check_witness(f, &self.irreducibility) && !f.is_cyclotomic() && !f.is_polynomial_in_power())
    }
}

/// Why an element counts as pseudo-Anosov.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PaEvidence {
    Penner(PennerCertificate),
    Homological(HomologicalCertificate),
    /// Converged exponential growth of curve weights only.
    Growth,
}

impl PaEvidence {
    pub fn is_certified(&self) -> bool {
        !matches!(self, PaEvidence::Growth)
    }
}

/// Outcome of classification. Certified pseudo-Anosov verdicts carry their
/// certificate; growth-only ones are heuristic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NTVerdict {
    Periodic { order: usize },
    PseudoAnosov { evidence: PaEvidence, dilatation: Option<f64> },
    ReducibleLikely { witness: MultiCurve },
    Unknown { dilatation: Option<f64> },
}

/// Coarse verdict classes used for counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictClass {
    Periodic,
    CertifiedPa,
    HeuristicPa,
    Reducible,
    Unknown,
}

impl VerdictClass {
    pub const ALL: [VerdictClass; 5] = [
        VerdictClass::Periodic,
        VerdictClass::CertifiedPa,
        VerdictClass::HeuristicPa,
        VerdictClass::Reducible,
        VerdictClass::Unknown,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerdictClass::Periodic => "periodic",
            VerdictClass::CertifiedPa => "certified_pa",
            VerdictClass::HeuristicPa => "heuristic_pa",
            VerdictClass::Reducible => "reducible",
            VerdictClass::Unknown => "unknown",
        }
    }
}

impl NTVerdict {
    pub fn class(&self) -> VerdictClass {
        match self {
            NTVerdict::Periodic { .. } => VerdictClass::Periodic,
            NTVerdict::PseudoAnosov { evidence, .. } if evidence.is_certified() => VerdictClass::CertifiedPa,
            NTVerdict::PseudoAnosov { .. } => VerdictClass::HeuristicPa,
            NTVerdict::ReducibleLikely { .. } => VerdictClass::Reducible,
            NTVerdict::Unknown { .. } => VerdictClass::Unknown,
        }
    }

    pub fn is_pa(&self) -> bool {
        matches!(self, NTVerdict::PseudoAnosov { .. })
    }

    pub fn is_certified_pa(&self) -> bool {
        self.class() == VerdictClass::CertifiedPa
    }

    pub fn dilatation(&self) -> Option<f64> {
        match self {
            NTVerdict::PseudoAnosov { dilatation, .. } | NTVerdict::Unknown { dilatation } => *dilatation,
            _ => None,
        }
    }
}

/// `a / b` as a float, for arbitrarily large operands.
fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    let shift = b.bits().max(a.bits()).saturating_sub(60);
    let (x, y) = ((a >> shift).to_f64().unwrap_or(f64::MAX), (b >> shift).to_f64().unwrap_or(f64::MAX));
    if y == 0.0 {
        f64::INFINITY
    } else {
        x / y
    }
}

/// Weight growth of the iterates `g^n(x)` of a probe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Growth {
    /// Ratios of total weights of consecutive iterates.
    pub ratios: Vec<f64>,
    /// Final ratio once the last `window` ratios agree to within `tolerance`.
    pub dilatation: Option<f64>,
}

impl Growth {
    pub fn is_exponential(&self, cfg: &ClassifierConfig) -> bool {
        self.dilatation.is_some_and(|l| l > 1.0 + cfg.epsilon)
    }
}

/// Iterates `g` on a lift of the probe in the punctured surface, stopping
/// once the ratio sequence settles or after `iter_cap` steps.
pub fn growth(alphabet: &TwistAlphabet, g: &Word, cfg: &ClassifierConfig, probe: &MultiCurve) -> Result<Growth> {
    let mut x: Vec<BigUint> = probe.weights().to_vec();
    let mut prev: BigUint = x.iter().sum();
    let mut ratios = Vec::new();
    for _ in 0..cfg.iter_cap {
        alphabet.apply_lift(g, &mut x)?;
        let total: BigUint = x.iter().sum();
        if prev.is_zero() {
            break;
        }
        ratios.push(ratio(&total, &prev));
        prev = total;
        if let Some(l) = settled(&ratios, cfg) {
            return Ok(Growth { ratios, dilatation: Some(l) });
        }
    }
    Ok(Growth { ratios, dilatation: None })
}

fn settled(ratios: &[f64], cfg: &ClassifierConfig) -> Option<f64> {
    if ratios.len() < cfg.window {
        return None;
    }
    let tail = &ratios[ratios.len() - cfg.window..];
    let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // Slowly growing sequences (twists) have ratios drifting down to 1; only
    // call them settled when they also look exponential.
    (hi - lo <= cfg.tolerance && lo > 1.0 + cfg.epsilon).then(|| *tail.last().unwrap())
}

/// Largest finite order a mapping class of genus `g` can have.
pub fn max_periodic_order(genus: usize) -> usize {
    4 * genus + 2
}

/// An invariant multicurve: a table or probe curve, or a two-element orbit
/// of one, fixed by the core `v` of `g = u v u^-1`, carried over by `u`.
pub fn reducing_witness(alphabet: &TwistAlphabet, g: &Word) -> Result<Option<MultiCurve>> {
    let w = g.reduced();
    let letters = w.letters();
    let (mut lo, mut hi) = (0, letters.len());
    while hi - lo >= 2 && letters[lo].curve == letters[hi - 1].curve && letters[lo].power == -letters[hi - 1].power {
        lo += 1;
        hi -= 1;
    }
    let conjugator = Word(letters[..lo].to_vec());
    let core = Word(letters[lo..hi].to_vec());
    match core_witness(alphabet, &core)? {
        Some(c) => Ok(Some(alphabet.apply(&conjugator, &c)?)),
        None => Ok(None),
    }
}

/// Lift weight, relative to the curve, beyond which an image is not
/// canonicalised in the witness search.
const WITNESS_LIFT_FACTOR: u32 = 64;

/// `g(c)`, unless its punctured-surface lift is too heavy to be worth
/// comparing.
fn light_image(alphabet: &TwistAlphabet, g: &Word, c: &MultiCurve) -> Result<Option<MultiCurve>> {
    let mut lift = c.weights().to_vec();
    alphabet.apply_lift(g, &mut lift)?;
    if lift.iter().sum::<BigUint>() > c.total_weight() * WITNESS_LIFT_FACTOR {
        return Ok(None);
    }
    MultiCurve::from_lift(alphabet.surface(), &lift).map(Some)
}

fn core_witness(alphabet: &TwistAlphabet, g: &Word) -> Result<Option<MultiCurve>> {
    let t = alphabet.surface();
    let mut candidates: Vec<&MultiCurve> = alphabet.curves().iter().map(|c| &c.curve).collect();
    for p in alphabet.probes() {
        if !candidates.contains(&p) {
            candidates.push(p);
        }
    }
    let images = candidates.iter().map(|c| light_image(alphabet, g, c)).collect::<Result<Vec<_>>>()?;
    for (c, image) in candidates.iter().zip(&images) {
        if image.as_ref() == Some(*c) {
            return Ok(Some((*c).clone()));
        }
    }
    for (c, image) in candidates.iter().zip(images) {
        let Some(image) = image else { continue };
        if light_image(alphabet, g, &image)?.as_ref() == Some(*c) && intersection_number(t, c, &image)? == 0 {
            return Ok(Some(union(t, &[(*c).clone(), image])?));
        }
    }
    Ok(None)
}

/// Growth-based classification from a single probe.
pub fn growth_classify(alphabet: &TwistAlphabet, g: &Word, cfg: &ClassifierConfig, probe: &MultiCurve) -> Result<NTVerdict> {
    if let Some(order) = alphabet.order_test(g, max_periodic_order(alphabet.genus()))? {
        return Ok(NTVerdict::Periodic { order });
    }
    if let Some(witness) = reducing_witness(alphabet, g)? {
        return Ok(NTVerdict::ReducibleLikely { witness });
    }
    let gr = growth(alphabet, g, cfg, probe)?;
    Ok(if gr.is_exponential(cfg) {
        NTVerdict::PseudoAnosov { evidence: PaEvidence::Growth, dilatation: gr.dilatation }
    } else {
        NTVerdict::Unknown { dilatation: gr.dilatation }
    })
}

/// Growth-rate estimate of a certified class from its first probe.
fn estimate(alphabet: &TwistAlphabet, g: &Word, cfg: &ClassifierConfig) -> Result<Option<f64>> {
    match alphabet.probes().first() {
        Some(p) => Ok(growth(alphabet, g, cfg, p)?.dilatation),
        None => Ok(None),
    }
}

/// Strongest verdict from, in order: the order test, the Penner pattern, the
/// homological criterion and weight growth of every probe curve.
pub fn classify(alphabet: &TwistAlphabet, g: &Word, cfg: &ClassifierConfig) -> Result<NTVerdict> {
    if let Some(order) = alphabet.order_test(g, max_periodic_order(alphabet.genus()))? {
        return Ok(NTVerdict::Periodic { order });
    }
    if let Some(cert) = penner_certificate(alphabet, g)? {
        let dilatation = estimate(alphabet, g, cfg)?;
        return Ok(NTVerdict::PseudoAnosov { evidence: PaEvidence::Penner(cert), dilatation });
    }
    if let Some(cert) = casson_bleiler(alphabet, g)? {
        let dilatation = estimate(alphabet, g, cfg)?;
        return Ok(NTVerdict::PseudoAnosov { evidence: PaEvidence::Homological(cert), dilatation });
    }
    if let Some(witness) = reducing_witness(alphabet, g)? {
        return Ok(NTVerdict::ReducibleLikely { witness });
    }
    // A reducible class with a pseudo-Anosov piece makes some probes grow
    // exponentially, but not every probe at the same rate.
    let mut rate: Option<f64> = None;
    let mut all_grow = true;
    for p in alphabet.probes() {
        let gr = growth(alphabet, g, cfg, p)?;
        match (gr.is_exponential(cfg), gr.dilatation, rate) {
            (true, Some(l), None) => rate = Some(l),
            (true, Some(l), Some(r)) if (l - r).abs() <= 10.0 * cfg.tolerance * r => {}
            _ => {
                all_grow = false;
                break;
            }
        }
    }
    Ok(if all_grow && rate.is_some() {
        NTVerdict::PseudoAnosov { evidence: PaEvidence::Growth, dilatation: rate }
    } else {
        NTVerdict::Unknown { dilatation: rate }
    })
}

/// Schema tag of certificate files.
pub const CERTIFICATE_SCHEMA: &str = "mcgdensity-certificate/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Fathi(FathiCertificate),
    Penner(PennerCertificate),
    Homological(HomologicalCertificate),
}

/// A self-contained certificate: surface, curve table, word and evidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema: String,
    pub surface: SurfaceFixture,
    pub word: Word,
    pub certificate: Certificate,
}

impl CertificateFile {
    pub fn new(alphabet: &TwistAlphabet, word: &Word, certificate: Certificate) -> Self {
        CertificateFile {
            schema: CERTIFICATE_SCHEMA.to_string(),
            surface: SurfaceFixture::of(alphabet),
            word: word.clone(),
            certificate,
        }
    }

    /// Certificate file for a certified pseudo-Anosov verdict.
    pub fn of_verdict(alphabet: &TwistAlphabet, word: &Word, v: &NTVerdict) -> Option<Self> {
        let cert = match v {
            NTVerdict::PseudoAnosov { evidence: PaEvidence::Penner(c), .. } => Certificate::Penner(c.clone()),
            NTVerdict::PseudoAnosov { evidence: PaEvidence::Homological(c), .. } => Certificate::Homological(c.clone()),
            _ => return None,
        };
        Some(Self::new(alphabet, word, cert))
    }

    /// Rebuilds the alphabet from the payload and re-checks the evidence.
    pub fn verify(&self) -> Result<bool> {
        if self.schema != CERTIFICATE_SCHEMA {
            return Ok(false);
        }
        let alphabet = self.surface.alphabet()?;
        match &self.certificate {
            Certificate::Fathi(c) => Ok(c.word == self.word && c.verify(&alphabet)?),
            Certificate::Penner(c) => c.verify(&alphabet, &self.word),
            Certificate::Homological(c) => c.verify(&alphabet, &self.word),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn penner_patterns() {
        let a = TwistAlphabet::standard(2).unwrap();
        let cert = penner_certificate(&a, &w("T1 T3 T5 T2^-1 T4^-1")).unwrap().unwrap();
        assert_eq!(cert.positive, [0, 2, 4]);
        assert!(cert.verify(&a, &w("T1 T3 T5 T2^-1 T4^-1")).unwrap());
        assert!(penner_certificate(&a, &w("T1 T2")).unwrap().is_none());
        assert!(penner_certificate(&a, &w("T1")).unwrap().is_none());
        assert!(penner_certificate(&a, &w("T1 T2^-1 T1^-1")).unwrap().is_none());
    }

    #[test]
    fn fathi_examples() {
        let a = TwistAlphabet::standard(2).unwrap();
        let c1 = a.probes()[0].clone();
        assert!(matches!(fathi_certificate(&a, &w("id"), &c1, 3), Err(Error::NotFilling)));
        assert!(matches!(fathi_certificate(&a, &w("T1"), &c1, 3), Err(Error::NotFilling)));
        let g = w("T1 T3 T5 T2^-1 T4^-1");
        // c1 and g(c1) do not fill; c1 and g^3(c1) do
        assert!(matches!(fathi_certificate(&a, &g, &c1, 1), Err(Error::NotFilling)));
        let cert = fathi_certificate(&a, &g, &c1, 3).unwrap();
        assert_eq!(cert.power, 3);
        assert!(cert.guarantee.contains("8 consecutive"));
        assert!(cert.verify(&a).unwrap());
    }

    #[test]
    fn simple_verdicts() {
        let a = TwistAlphabet::standard(2).unwrap();
        let cfg = ClassifierConfig::default();
        assert_eq!(classify(&a, &w("id"), &cfg).unwrap(), NTVerdict::Periodic { order: 1 });
        let v = classify(&a, &w("T1^7"), &cfg).unwrap();
        assert_eq!(v, NTVerdict::ReducibleLikely { witness: a.probes()[0].clone() });
        let v = classify(&a, &w("T1 T3 T5 T2^-1 T4^-1"), &cfg).unwrap();
        assert!(v.is_certified_pa());
        let g = growth(&a, &w("T1"), &cfg, &a.probes()[1]).unwrap();
        assert!(!g.is_exponential(&cfg));
    }

    #[test]
    fn certificate_files_verify_and_detect_tampering() {
        let a = TwistAlphabet::standard(2).unwrap();
        let g = w("T1 T3 T5 T2^-1 T4^-1");
        let v = classify(&a, &g, &ClassifierConfig::default()).unwrap();
        let f = CertificateFile::of_verdict(&a, &g, &v).unwrap();
        assert!(f.verify().unwrap());
        let mut bad = f.clone();
        if let Certificate::Penner(c) = &mut bad.certificate {
            c.fill_evidence.faces += 1;
        }
        assert!(!bad.verify().unwrap());
    }
}
