//! Empirical fractional-Helly pairs `(α, β)` for finite families.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::in_hull;
use crate::numeric::{Point, Rational};
use crate::spaces::{bounding_box, GroundSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeResult {
    /// Fraction of `h`-tuples of the family with a common point of `M`.
    pub alpha: Rational,
    /// Largest fraction of the family sharing a single point of `M`.
    pub beta: Rational,
    pub intersecting: u64,
    pub tuples: u64,
    /// A point attaining `beta`.
    pub best_point: Option<Point>,
}

/// Exact `(α, β)` for the traces `conv(C_i) ∩ M`.
///
/// Candidate points are the points of `M` in the bounding box of all
/// generators, which contains every trace; membership is decided exactly
/// once per candidate and set.
pub fn fractional_probe(family: &[Vec<Point>], ground: &GroundSet, h: usize, tuple_cap: u64) -> Result<ProbeResult> {
    let n = family.len();
    if h == 0 || n < h {
        return Err(Error::precondition(format!("need at least h = {h} ≥ 1 sets, got {n}")));
    }
    if !ground.is_locally_finite() {
        return Err(Error::precondition("the probe scans points of a locally finite ground set"));
    }
    let all: Vec<Point> = family.concat();
    if let Some(p) = all.iter().find(|p| !ground.contains(p)) {
        return Err(Error::precondition(format!("generator ({}) is not in M", crate::numeric::fmt_point(p))));
    }
    let candidates = match bounding_box(&all) {
        Some((lo, hi)) => ground.points_in_box(&lo, &hi)?,
        None => Vec::new(),
    };
    // rows: candidates; columns: sets
    let member: Vec<Vec<bool>> = candidates
        .iter()
        .map(|c| family.iter().map(|s| !s.is_empty() && in_hull(s, c)).collect())
        .collect();
    let (best_count, best_point) = member
        .iter()
        .zip(&candidates)
        .map(|(row, c)| (row.iter().filter(|b| **b).count(), c))
        .fold((0, None), |acc, (k, c)| if k > acc.0 { (k, Some(c.clone())) } else { acc });
    let mut tuples = 0u64;
    let mut intersecting = 0u64;
    for tuple in (0..n).combinations(h) {
        tuples += 1;
        if tuples > tuple_cap {
            return Err(Error::NodeCap { cap: tuple_cap as usize });
        }
        if member.iter().any(|row| tuple.iter().all(|&i| row[i])) {
            intersecting += 1;
        }
    }
    let frac = |a: u64, b: u64| {
        if b == 0 {
            Rational::zero()
        } else {
            Rational::new(BigInt::from(a), BigInt::from(b))
        }
    };
    Ok(ProbeResult {
        alpha: frac(intersecting, tuples),
        beta: frac(best_count as u64, n as u64),
        intersecting,
        tuples,
        best_point,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, int_point, rat};
    use crate::spaces::SpaceDescriptor;

    fn z2() -> GroundSet {
        SpaceDescriptor::integers(2).into()
    }

    #[test]
    fn identical_singletons() {
        let fam = vec![vec![int_point(&[1, 1])]; 5];
        let r = fractional_probe(&fam, &z2(), 2, 1000).unwrap();
        assert_eq!((r.alpha, r.beta), (int(1), int(1)));
    }

    #[test]
    fn disjoint_singletons() {
        let fam: Vec<Vec<Point>> = (0..5).map(|i| vec![int_point(&[i, 0])]).collect();
        let r = fractional_probe(&fam, &z2(), 2, 1000).unwrap();
        assert_eq!((r.alpha, r.beta), (int(0), rat(1, 5)));
    }

    #[test]
    fn too_few_sets() {
        assert!(fractional_probe(&[vec![int_point(&[0, 0])]], &z2(), 2, 10).is_err());
    }
}
