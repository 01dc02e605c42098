//! Window searches over spaces with real factors.
//!
//! Candidate points come from a rational grid on the real axes; every hull
//! test is still decided exactly over the full space. A configuration found
//! this way is a genuine lower bound, while an exhausted size only says that
//! no grid configuration of that size exists.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::feasibility::BoundsBox;
use crate::numeric::{Point, Rational};
use crate::spaces::{Factor, GroundSet, SpaceDescriptor};

use super::helly::{helly_independent, HellySearch};
use super::radon::{has_radon_partition, RadonSearch};
use super::symmetry::WindowSymmetry;

/// Points of the window whose real coordinates are multiples of `1/den`.
pub fn grid_points(space: &SpaceDescriptor, window: &BoundsBox, den: u32) -> Result<Vec<Point>> {
    if den == 0 {
        return Err(Error::precondition("grid denominator must be positive"));
    }
    if window.lower.len() != space.dim() || window.upper.len() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: window.lower.len(),
        });
    }
    let step = Rational::new(1.into(), den.into());
    let mut axes = Vec::with_capacity(space.dim());
    for (i, f) in space.factors.iter().enumerate() {
        let (Some(lo), Some(hi)) = (&window.lower[i], &window.upper[i]) else {
            return Err(Error::precondition("search windows must be bounded"));
        };
        let axis = match f {
            Factor::Real => {
                let first = crate::numeric::ceil(&(lo / &step));
                let mut v = Vec::new();
                let mut x = Rational::from_integer(first) * &step;
                while x <= *hi {
                    v.push(x.clone());
                    x += &step;
                }
                v
            }
            _ => f.values_in(Some(lo), Some(hi)).expect("discrete factor"),
        };
        axes.push(axis);
    }
    Ok(axes.into_iter().multi_cartesian_product().collect())
}

/// Symmetries of the grid that never exchange coordinates of different
/// factor kinds.
fn grid_symmetry(space: &SpaceDescriptor, pts: &[Point]) -> WindowSymmetry {
    WindowSymmetry::of_points_with(pts, |perm| {
        perm.iter().enumerate().all(|(i, &j)| space.factors[i] == space.factors[j])
    })
}

/// Scan canonical configurations by increasing size; the property must be
/// hereditary. Returns the largest size with a witness, that witness, the
/// first size without one, and the number of configurations examined.
fn hereditary_scan(
    pts: &[Point],
    sym: &WindowSymmetry,
    max_size: usize,
    node_cap: u64,
    mut holds: impl FnMut(&[Point]) -> Result<bool>,
) -> Result<(usize, Vec<Point>, Option<usize>, u64)> {
    let n = pts.len();
    if n > 64 {
        return Err(Error::precondition(format!("grid has {n} points, at most 64 supported")));
    }
    let (mut size, mut best, mut examined) = (0, Vec::new(), 0u64);
    for k in 1..=max_size.min(n) {
        let mut found = None;
        for combo in (0..n).combinations(k) {
            let mask = combo.iter().fold(0u64, |m, &i| m | 1 << i);
            if !sym.is_canonical(mask, n) {
                continue;
            }
            examined += 1;
            if examined > node_cap {
                return Err(Error::NodeCap { cap: node_cap as usize });
            }
            let config: Vec<Point> = combo.iter().map(|&i| pts[i].clone()).collect();
            if holds(&config)? {
                found = Some(config);
                break;
            }
        }
        match found {
            Some(config) => {
                size = k;
                best = config;
            }
            None => return Ok((size, best, Some(k), examined)),
        }
    }
    Ok((size, best, None, examined))
}

/// Largest Helly-independent grid configuration.
pub fn helly_grid_search(
    space: &SpaceDescriptor,
    window: &BoundsBox,
    den: u32,
    max_size: usize,
    node_cap: u64,
) -> Result<HellySearch> {
    let pts = grid_points(space, window, den)?;
    let ground = GroundSet::from(space.clone());
    let sym = grid_symmetry(space, &pts);
    let (size, configuration, exhausted_at, examined) =
        hereditary_scan(&pts, &sym, max_size, node_cap, |c| helly_independent(c, &ground))?;
    Ok(HellySearch {
        size,
        configuration,
        exhausted_at,
        window_points: pts.len(),
        examined,
    })
}

/// Largest partition-free grid configuration.
pub fn radon_grid_search(
    space: &SpaceDescriptor,
    window: &BoundsBox,
    den: u32,
    max_size: usize,
    node_cap: u64,
) -> Result<RadonSearch> {
    let pts = grid_points(space, window, den)?;
    let ground = GroundSet::from(space.clone());
    let sym = grid_symmetry(space, &pts);
    let (partition_free_max, configuration, exhausted_at, examined) =
        hereditary_scan(&pts, &sym, max_size, node_cap, |c| Ok(!has_radon_partition(c, &ground)?))?;
    Ok(RadonSearch {
        partition_free_max,
        configuration,
        next_all_partitioned: exhausted_at.is_some(),
        window_points: pts.len(),
        examined,
    })
}
