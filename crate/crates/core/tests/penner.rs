use mcgdensity_core::certify::{classify, growth, penner_certificate, ClassifierConfig, NTVerdict, PaEvidence};
use mcgdensity_core::mapping_class::{TwistAlphabet, Word};

const FIXTURE: &str = "T1 T3 T5 T2^-1 T4^-1";

/// Perron root of the product of Penner's matrices `I + E_ii Ω` over the
/// letters of the word, where `Ω` is the chain intersection matrix.
fn penner_perron_root(word: &Word, curves: usize) -> f64 {
    let omega = |i: usize, j: usize| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 };
    let mut m: Vec<Vec<f64>> = (0..curves).map(|i| (0..curves).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for l in word.letters() {
        let q: Vec<Vec<f64>> = (0..curves)
            .map(|i| (0..curves).map(|j| f64::from(u8::from(i == j)) + if i == l.curve { omega(i, j) } else { 0.0 }).collect())
            .collect();
        m = (0..curves).map(|i| (0..curves).map(|j| (0..curves).map(|k| m[i][k] * q[k][j]).sum()).collect()).collect();
    }
    let mut v = vec![1.0; curves];
    let mut lambda = 0.0;
    for _ in 0..500 {
        let next: Vec<f64> = (0..curves).map(|i| (0..curves).map(|j| m[i][j] * v[j]).sum()).collect();
        lambda = next.iter().sum::<f64>() / v.iter().sum::<f64>();
        v = next.iter().map(|x| x / lambda).collect();
    }
    lambda
}

#[test]
fn perron_root_of_fixture() {
    let root = penner_perron_root(&FIXTURE.parse().unwrap(), 5);
    assert!((root - (5.0 + 21f64.sqrt()) / 2.0).abs() < 1e-9, "{root}");
}

#[test]
fn fixture_is_certified_with_matching_dilatation() {
    let a = TwistAlphabet::standard(2).unwrap();
    let g: Word = FIXTURE.parse().unwrap();
    let root = penner_perron_root(&g, 5);
    let cert = penner_certificate(&a, &g).unwrap().expect("Penner certificate");
    assert!(cert.verify(&a, &g).unwrap());
    match classify(&a, &g, &ClassifierConfig::default()).unwrap() {
        NTVerdict::PseudoAnosov { evidence: PaEvidence::Penner(_), dilatation: Some(l) } => {
            assert!((l - root).abs() < 1e-3, "estimate {l} vs {root}")
        }
        v => panic!("unexpected verdict {v:?}"),
    }
    for p in a.probes() {
        let l = growth(&a, &g, &ClassifierConfig::default(), p).unwrap().dilatation.unwrap();
        assert!((l - root).abs() < 1e-3, "probe estimate {l} vs {root}");
    }
}

#[test]
fn mixed_signs_on_one_curve_are_not_penner() {
    let a = TwistAlphabet::standard(2).unwrap();
    assert!(penner_certificate(&a, &"T1 T2^-1 T1^-1".parse().unwrap()).unwrap().is_none());
    assert!(penner_certificate(&a, &"T1 T2".parse().unwrap()).unwrap().is_none());
}
