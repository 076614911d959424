mod support;

use mcgdensity_core::arrangement::{fills, intersection_number};
use mcgdensity_core::mapping_class::TwistAlphabet;
use support::{oracle, random_words};

#[test]
fn chain_pairs_match_oracle() {
    let a = TwistAlphabet::standard(2).unwrap();
    let t = a.surface();
    let cs: Vec<_> = a.curves().iter().map(|c| c.curve.clone()).collect();
    for (i, x) in cs.iter().enumerate() {
        for (j, y) in cs.iter().enumerate() {
            let want = oracle::intersection(t, x, y);
            assert_eq!(intersection_number(t, x, y).unwrap(), want, "i(c{}, c{})", i + 1, j + 1);
            assert_eq!(fills(t, x, y).unwrap(), oracle::fills(t, x, y), "fills(c{}, c{})", i + 1, j + 1);
        }
    }
}

#[test]
fn chain_intersection_matrix() {
    let a = TwistAlphabet::standard(2).unwrap();
    let t = a.surface();
    let cs: Vec<_> = a.curves().iter().map(|c| c.curve.clone()).collect();
    for i in 0..cs.len() {
        for j in 0..cs.len() {
            let want = usize::from(i.abs_diff(j) == 1);
            assert_eq!(oracle::intersection(t, &cs[i], &cs[j]), want, "c{} c{}", i + 1, j + 1);
        }
    }
}

#[test]
fn twisted_images_match_oracle() {
    let a = TwistAlphabet::standard(2).unwrap();
    let t = a.surface();
    let cs: Vec<_> = a.curves().iter().map(|c| c.curve.clone()).collect();
    let images: Vec<_> = random_words(7, 50, cs.len(), 6, 3)
        .iter()
        .enumerate()
        .map(|(n, w)| (w.clone(), a.apply(w, &cs[n % cs.len()]).unwrap()))
        .collect();
    let mut filling = 0;
    for (n, (w, y)) in images.iter().enumerate() {
        let (_, next) = &images[(n + 1) % images.len()];
        for x in cs.iter().chain([next]) {
            assert_eq!(intersection_number(t, x, y).unwrap(), oracle::intersection(t, x, y), "image under {w}");
            let f = oracle::fills(t, x, y);
            assert_eq!(fills(t, x, y).unwrap(), f, "image under {w}");
            filling += usize::from(f);
        }
    }
    assert!(filling >= 10, "only {filling} filling pairs exercised");
}
