//! Helly and Radon numbers of small finite planar sets.

use itertools::Itertools;

use super::{independent_by_index, mask_points};
use crate::error::{Error, Result};
use crate::geometry::HullIndex;
use crate::numeric::Point;

/// Exact invariants of a finite point set `M` with its induced convexity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarReport {
    pub helly: usize,
    pub radon: usize,
    /// Largest Helly-independent subset found first in lexicographic order.
    pub helly_witness: Vec<Point>,
    /// Largest partition-free subset found first in lexicographic order.
    pub radon_witness: Vec<Point>,
    /// `h ≠ 4 ⇒ r = h + 1` and `h = 4 ⇒ r ∈ {5, 6}`.
    pub consistent: bool,
}

/// Both invariants by exhaustive subset scans over a [`HullIndex`] of `M`.
///
/// `h(M)` is the largest Helly-independent subset and `r(M)` is one more
/// than the largest partition-free subset; both properties are hereditary,
/// so each scan stops at the first size without a witness.
pub fn check_2d_helly_radon(points: &[Point], node_cap: u64) -> Result<PlanarReport> {
    let mut m = points.to_vec();
    m.sort();
    m.dedup();
    if m.is_empty() {
        return Err(Error::precondition("the point set is empty"));
    }
    if let Some(p) = m.iter().find(|p| p.len() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.len(),
        });
    }
    if m.len() > 24 {
        return Err(Error::precondition("exhaustive planar checks support at most 24 points"));
    }
    let index = HullIndex::with_candidates(&m, m.clone())?;
    let obstructions = index.radon_obstructions();
    let mut examined = 0u64;
    let mut scan = |pred: &dyn Fn(u64) -> bool| -> Result<(usize, u64)> {
        let mut best = (0, 0u64);
        for k in 1..=m.len() {
            let mut hit = None;
            for combo in (0..m.len()).combinations(k) {
                examined += 1;
                if examined > node_cap {
                    return Err(Error::NodeCap { cap: node_cap as usize });
                }
                let mask = combo.iter().fold(0u64, |acc, &i| acc | 1 << i);
                if pred(mask) {
                    hit = Some(mask);
                    break;
                }
            }
            match hit {
                Some(mask) => best = (k, mask),
                None => break,
            }
        }
        Ok(best)
    };
    let (h, hmask) = scan(&|mask| independent_by_index(&index, mask))?;
    let (free, rmask) = scan(&|mask| !obstructions.iter().any(|o| o & !mask == 0))?;
    let r = free + 1;
    let consistent = if h == 4 { r == 5 || r == 6 } else { r == h + 1 };
    Ok(PlanarReport {
        helly: h,
        radon: r,
        helly_witness: mask_points(&m, hmask),
        radon_witness: mask_points(&m, rmask),
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int_point;

    fn pts(v: &[[i64; 2]]) -> Vec<Point> {
        v.iter().map(|p| int_point(p)).collect()
    }

    #[test]
    fn triangle() {
        let r = check_2d_helly_radon(&pts(&[[0, 0], [1, 0], [0, 1]]), 1000).unwrap();
        assert_eq!((r.helly, r.radon, r.consistent), (3, 4, true));
    }

    #[test]
    fn square() {
        let r = check_2d_helly_radon(&pts(&[[0, 0], [1, 0], [0, 1], [1, 1]]), 1000).unwrap();
        assert_eq!(r.helly, 4);
        assert!(r.consistent && (r.radon == 5 || r.radon == 6));
    }

    #[test]
    fn collinear_triple() {
        let r = check_2d_helly_radon(&pts(&[[0, 0], [1, 1], [2, 2]]), 1000).unwrap();
        assert_eq!((r.helly, r.radon), (2, 3));
    }
}
