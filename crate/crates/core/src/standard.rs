//! The standard chain of curves on the standard triangulation.
//!
//! On the `4g`-gon, handle `i` owns sides `4i .. 4i + 3`. Each curve is given
//! by the polygon sides it leaves through, in order. The chain starts with the
//! chords through sides `0` and `1`, alternates a connector through
//! `4i + 1, 4i + 4, 4i + 3, 4i` with the chord through `4i + 5`, and ends with
//! the chord through `4g - 4`. The simpler two-chord connectors cross each
//! other twice, hence the longer ones.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::curve::{coords_of, tighten, CurvePath, MultiCurve};
use crate::error::{Error, Result};
use crate::surface::{build_surface, polygon_walk, Side, Triangulation};

/// Polygon exits of chain curve `c_{m+1}`.
fn chain_exits(genus: usize, m: usize) -> Vec<usize> {
    match m {
        0 => alloc::vec![0],
        1 => alloc::vec![1],
        _ if m == 2 * genus => alloc::vec![4 * (genus - 1)],
        _ if m % 2 == 1 => alloc::vec![4 * (m / 2) + 1],
        _ => {
            let i = m / 2 - 1;
            alloc::vec![4 * i + 1, 4 * i + 4, 4 * i + 3, 4 * i]
        }
    }
}

/// Name of the `m`-th chain curve (1-based).
pub fn chain_name(m: usize) -> String {
    format!("c{m}")
}

/// Tightened oriented walks of the chain curves `c_1 .. c_{2g+1}`.
pub fn chain_walks(t: &Triangulation) -> Result<Vec<Vec<Side>>> {
    let g = t.genus();
    if *t != build_surface(g)? {
        return Err(Error::InvalidTriangulation("chain curves need the standard triangulation".into()));
    }
    (0..=2 * g)
        .map(|m| {
            let p = tighten(t, &CurvePath::new(alloc::vec![polygon_walk(t, &chain_exits(g, m))]))?;
            p.components.into_iter().next().ok_or(Error::NotEssential)
        })
        .collect()
}

/// The chain `c_1 .. c_{2g+1}` as named multicurves.
pub fn standard_curves(t: &Triangulation) -> Result<Vec<(String, MultiCurve)>> {
    chain_walks(t)?
        .into_iter()
        .enumerate()
        .map(|(m, w)| Ok((chain_name(m + 1), coords_of(t, &CurvePath::new(alloc::vec![w]))?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::intersection_number;

    #[test]
    fn chain_pattern() {
        for g in 2..5 {
            let t = build_surface(g).unwrap();
            let cs = standard_curves(&t).unwrap();
            assert_eq!(cs.len(), 2 * g + 1);
            for (i, (_, a)) in cs.iter().enumerate() {
                assert_eq!(a.component_count(&t).unwrap(), 1);
                for (j, (_, b)) in cs.iter().enumerate() {
                    let want = usize::from(i.abs_diff(j) == 1);
                    assert_eq!(intersection_number(&t, a, b).unwrap(), want, "genus {g}: c{} c{}", i + 1, j + 1);
                }
            }
        }
    }
}
