//! Brute-force Helly and Radon oracles, witness constructions and seeded
//! instance generators.
//!
//! An `M`-convex set is represented by a finite generating list of points of
//! `M`; its trace is `conv(points) ∩ M`. Searches over a window work on
//! bitmasks of the window's points through a [`HullIndex`].

pub mod evidence;
pub mod helly;
pub mod planar;
pub mod probe;
pub mod radon;
pub mod random;
pub mod symmetry;
pub mod witness;

pub use evidence::{grid_points, helly_grid_search, radon_grid_search};
pub use helly::{helly_independent, helly_number_search, HellySearch};
pub use planar::{check_2d_helly_radon, PlanarReport};
pub use probe::{fractional_probe, ProbeResult};
pub use radon::{has_radon_partition, radon_number_search, radon_partition, RadonPartitionResult, RadonSearch};
pub use witness::{
    fig1, verify_helly_pattern, witness_cube, witness_double, witness_radon_double, witness_tight_system, Fig1Report,
    PatternReport,
};

use crate::error::{Error, Result};
use crate::feasibility::{mixed_feasible, BoundsBox, FeasibilityVerdict, MixedOptions};
use crate::geometry::hull::{in_hull, lifted_hulls};
use crate::geometry::HullIndex;
use crate::numeric::{fmt_point, Point};
use crate::spaces::{bounding_box, GroundSet};

/// Distinct points, all in the ground set.
pub fn check_configuration(points: &[Point], ground: &GroundSet) -> Result<()> {
    let dim = points.first().map_or(0, Vec::len);
    for (i, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        if !ground.contains(p) {
            return Err(Error::precondition(format!("point ({}) is not in the ground set", fmt_point(p))));
        }
        if points[..i].contains(p) {
            return Err(Error::precondition(format!("point ({}) is repeated", fmt_point(p))));
        }
    }
    Ok(())
}

/// Points of the ground set in the window; a finite point ground set with
/// no window contributes all its points.
pub fn window_points(ground: &GroundSet, window: Option<&BoundsBox>) -> Result<Vec<Point>> {
    match (ground, window) {
        (GroundSet::Points(pts), None) => {
            let mut v = pts.clone();
            v.sort();
            v.dedup();
            Ok(v)
        }
        (_, Some(w)) => {
            let lo: Option<Vec<_>> = w.lower.iter().cloned().collect();
            let hi: Option<Vec<_>> = w.upper.iter().cloned().collect();
            match (lo, hi) {
                (Some(lo), Some(hi)) => ground.points_in_box(&lo, &hi),
                _ => Err(Error::precondition("search windows must be bounded")),
            }
        }
        (GroundSet::Space(_), None) => Err(Error::precondition("a window is required for a product space")),
    }
}

/// A point of `M` lying in the hull of every set, if any.
///
/// Locally finite ground sets are scanned over the points in the common
/// bounding box; otherwise the lifted hull system is decided exactly.
pub fn common_point(sets: &[&[Point]], ground: &GroundSet) -> Result<Option<Point>> {
    if sets.iter().any(|s| s.is_empty()) {
        return Ok(None);
    }
    if sets.is_empty() {
        return Err(Error::precondition("the intersection of no sets is the whole space"));
    }
    if ground.is_locally_finite() {
        let boxes: Vec<(Point, Point)> = sets.iter().map(|s| bounding_box(s).expect("non-empty")).collect();
        let mut lo = boxes[0].0.clone();
        let mut hi = boxes[0].1.clone();
        for (l, h) in &boxes[1..] {
            for i in 0..lo.len() {
                lo[i] = lo[i].clone().max(l[i].clone());
                hi[i] = hi[i].clone().min(h[i].clone());
            }
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(None);
        }
        return Ok(ground
            .points_in_box(&lo, &hi)?
            .into_iter()
            .find(|p| sets.iter().all(|s| in_hull(s, p))));
    }
    let GroundSet::Space(space) = ground else {
        unreachable!("point ground sets are locally finite")
    };
    let system = lifted_hulls(space, sets);
    Ok(match mixed_feasible(&system, &MixedOptions::default())? {
        FeasibilityVerdict::Feasible { witness } => Some(witness[..space.dim()].to_vec()),
        _ => None,
    })
}

/// Mask of all `n` low bits.
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn mask_points(points: &[Point], mask: u64) -> Vec<Point> {
    (0..points.len()).filter(|i| mask >> i & 1 == 1).map(|i| points[i].clone()).collect()
}

/// `⋂_{s ∈ S} conv(S ∖ {s})` meets no candidate of the index.
pub(crate) fn independent_by_index(index: &HullIndex, set: u64) -> bool {
    !(0..index.candidates.len()).any(|c| {
        let mut rest = set;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if !index.in_hull(c, set & !bit) {
                return false;
            }
            rest &= !bit;
        }
        true
    })
}
