//! Helly independence and windowed Helly-number searches.

use itertools::Itertools;

use super::symmetry::WindowSymmetry;
use super::{check_configuration, common_point, independent_by_index, window_points};
use crate::error::{Error, Result};
use crate::feasibility::BoundsBox;
use crate::geometry::HullIndex;
use crate::numeric::Point;
use crate::spaces::GroundSet;

/// Whether `⋂_{s ∈ S} conv(S ∖ {s})` contains no point of `M`, so that the
/// traces of `S ∖ {s}` witness `h(M) ≥ |S|`.
pub fn helly_independent(points: &[Point], ground: &GroundSet) -> Result<bool> {
    if points.is_empty() {
        return Err(Error::precondition("a Helly configuration needs at least one point"));
    }
    check_configuration(points, ground)?;
    if ground.is_locally_finite() && points.len() <= 64 {
        let index = HullIndex::new(points, ground)?;
        return Ok(independent_by_index(&index, super::full_mask(points.len())));
    }
    let punctured: Vec<Vec<Point>> = (0..points.len())
        .map(|i| points.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect())
        .collect();
    let refs: Vec<&[Point]> = punctured.iter().map(Vec::as_slice).collect();
    Ok(common_point(&refs, ground)?.is_none())
}

/// Outcome of an exhaustive windowed search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HellySearch {
    /// Largest independent configuration size found; a lower bound on `h(M)`.
    pub size: usize,
    /// Canonical witness of that size.
    pub configuration: Vec<Point>,
    /// Smallest size shown to admit no independent configuration in the
    /// window, when the scan got that far.
    pub exhausted_at: Option<usize>,
    pub window_points: usize,
    pub examined: u64,
}

/// Scan configurations of the window's points by increasing size.
///
/// Independence is hereditary (dropping a point from an independent set keeps
/// it independent), so the scan stops at the first size with no independent
/// configuration.
pub fn helly_number_search(
    ground: &GroundSet,
    window: Option<&BoundsBox>,
    max_size: usize,
    node_cap: u64,
) -> Result<HellySearch> {
    if !ground.is_locally_finite() {
        return Err(Error::precondition("window searches need a locally finite ground set"));
    }
    let pts = window_points(ground, window)?;
    let index = HullIndex::with_candidates(&pts, pts.clone())?;
    let sym = WindowSymmetry::of_points(&pts);
    let n = pts.len();
    let mut out = HellySearch {
        size: 0,
        configuration: Vec::new(),
        exhausted_at: None,
        window_points: n,
        examined: 0,
    };
    for k in 1..=max_size.min(n) {
        let mut found = None;
        for combo in (0..n).combinations(k) {
            let mask = combo.iter().fold(0u64, |m, &i| m | 1 << i);
            if !sym.is_canonical(mask, n) {
                continue;
            }
            out.examined += 1;
            if out.examined > node_cap {
                return Err(Error::NodeCap { cap: node_cap as usize });
            }
            if independent_by_index(&index, mask) {
                found = Some(combo);
                break;
            }
        }
        match found {
            Some(combo) => {
                out.size = k;
                out.configuration = combo.into_iter().map(|i| pts[i].clone()).collect();
            }
            None => {
                out.exhausted_at = Some(k);
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, int_point, rat};
    use crate::spaces::{Factor, SpaceDescriptor};

    fn z(d: usize) -> GroundSet {
        SpaceDescriptor::integers(d).into()
    }

    fn window(d: usize, lo: i64, hi: i64) -> BoundsBox {
        BoundsBox {
            lower: vec![Some(int(lo)); d],
            upper: vec![Some(int(hi)); d],
        }
    }

    #[test]
    fn unit_square_is_independent() {
        let s: Vec<Point> = [[0, 0], [1, 0], [0, 1], [1, 1]].iter().map(|p| int_point(p)).collect();
        assert!(helly_independent(&s, &z(2)).unwrap());
        assert!(!helly_independent(&s, &SpaceDescriptor::reals(2).into()).unwrap());
    }

    #[test]
    fn collinear_triple_is_dependent() {
        let s: Vec<Point> = [[0], [1], [2]].iter().map(|p| int_point(p)).collect();
        assert!(!helly_independent(&s, &z(1)).unwrap());
    }

    #[test]
    fn lattice_windows() {
        assert_eq!(helly_number_search(&z(1), Some(&window(1, 0, 3)), 8, 1 << 20).unwrap().size, 2);
        let r = helly_number_search(&z(2), Some(&window(2, 0, 2)), 9, 1 << 20).unwrap();
        assert_eq!((r.size, r.exhausted_at), (4, Some(5)));
    }

    #[test]
    fn finite_line_has_helly_two() {
        let f = Factor::finite([int(0), int(1), int(2), rat(5, 2)]).unwrap();
        let g: GroundSet = SpaceDescriptor::new(vec![f]).into();
        let w = BoundsBox {
            lower: vec![Some(int(0))],
            upper: vec![Some(rat(5, 2))],
        };
        assert_eq!(helly_number_search(&g, Some(&w), 4, 1000).unwrap().size, 2);
    }

    #[test]
    fn node_cap_is_reported() {
        let e = helly_number_search(&z(2), Some(&window(2, 0, 2)), 9, 3).unwrap_err();
        assert_eq!(e, Error::NodeCap { cap: 3 });
    }
}
