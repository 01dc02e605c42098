//! Radon partitions and windowed Radon-number searches.

use itertools::Itertools;

use super::symmetry::WindowSymmetry;
use super::{check_configuration, full_mask, mask_points, window_points};
use crate::error::{Error, Result};
use crate::feasibility::BoundsBox;
use crate::geometry::{hull_intersect_space, HullIndex, HullWitness};
use crate::numeric::Point;
use crate::spaces::GroundSet;

/// A partition `(B, C)` of part of a configuration whose hulls share a point
/// of `M`; `b` and `c` are empty when none exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadonPartitionResult {
    pub b: Vec<Point>,
    pub c: Vec<Point>,
    pub witness: Option<HullWitness>,
}

impl RadonPartitionResult {
    pub fn is_partitioned(&self) -> bool {
        self.witness.is_some()
    }

    pub fn verify(&self, ground: &GroundSet) -> bool {
        match &self.witness {
            Some(w) => w.verify(&self.b, &self.c, ground) && self.b.iter().all(|p| !self.c.contains(p)),
            None => self.b.is_empty() && self.c.is_empty(),
        }
    }
}

/// Unordered disjoint pairs `(B, C)` of a configuration of `n` points, in
/// canonical order: by `|B ∪ C|`, then by the union mask, then by the mask of
/// `B`, where `B` always holds the lowest index of the union.
pub fn canonical_pairs(n: usize) -> impl Iterator<Item = (u64, u64)> {
    (2..=n).flat_map(move |k| {
        (0..n).combinations(k).flat_map(|union| {
            let first = 1u64 << union[0];
            let rest: Vec<u64> = union[1..].iter().map(|&i| 1u64 << i).collect();
            let all: u64 = rest.iter().sum();
            (0u64..(1 << rest.len()) - 1).map(move |sel| {
                let mut b = first;
                for (j, bit) in rest.iter().enumerate() {
                    if sel >> j & 1 == 1 {
                        b |= bit;
                    }
                }
                (b, (first | all) & !b)
            })
        })
    })
}

/// First partition in canonical order whose hulls meet in `M`, each pair
/// decided by [`hull_intersect_space`].
pub fn radon_partition(points: &[Point], ground: &GroundSet) -> Result<RadonPartitionResult> {
    if points.len() < 2 {
        return Err(Error::precondition("a Radon partition needs at least two points"));
    }
    check_configuration(points, ground)?;
    for (b, c) in canonical_pairs(points.len()) {
        let (bp, cp) = (mask_points(points, b), mask_points(points, c));
        if let Some(w) = hull_intersect_space(&bp, &cp, ground)? {
            return Ok(RadonPartitionResult {
                b: bp,
                c: cp,
                witness: Some(w),
            });
        }
    }
    Ok(RadonPartitionResult {
        b: Vec::new(),
        c: Vec::new(),
        witness: None,
    })
}

/// Existence of a partition, decided through a [`HullIndex`] when the ground
/// set is locally finite; the returned partition is not canonical.
pub fn has_radon_partition(points: &[Point], ground: &GroundSet) -> Result<bool> {
    check_configuration(points, ground)?;
    if !ground.is_locally_finite() || points.len() > 64 {
        return Ok(points.len() >= 2 && radon_partition(points, ground)?.is_partitioned());
    }
    let index = HullIndex::new(points, ground)?;
    let all = full_mask(points.len());
    Ok(index.radon_obstructions().iter().any(|o| o & !all == 0))
}

/// Outcome of an exhaustive windowed Radon search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadonSearch {
    /// Largest partition-free configuration size; `r(M) ≥` this plus one.
    pub partition_free_max: usize,
    pub configuration: Vec<Point>,
    /// Every configuration of size `partition_free_max + 1` in the window
    /// admits a partition.
    pub next_all_partitioned: bool,
    pub window_points: usize,
    pub examined: u64,
}

/// Scan window configurations by increasing size up to `max_size`.
///
/// Being partition-free is hereditary, so the first size with no
/// partition-free configuration ends the scan.
pub fn radon_number_search(
    ground: &GroundSet,
    window: Option<&BoundsBox>,
    max_size: usize,
    node_cap: u64,
) -> Result<RadonSearch> {
    if !ground.is_locally_finite() {
        return Err(Error::precondition("window searches need a locally finite ground set"));
    }
    let pts = window_points(ground, window)?;
    let index = HullIndex::with_candidates(&pts, pts.clone())?;
    let obstructions = index.radon_obstructions();
    let sym = WindowSymmetry::of_points(&pts);
    let n = pts.len();
    let mut out = RadonSearch {
        partition_free_max: 0,
        configuration: Vec::new(),
        next_all_partitioned: false,
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
            if !obstructions.iter().any(|o| o & !mask == 0) {
                found = Some(combo);
                break;
            }
        }
        match found {
            Some(combo) => {
                out.partition_free_max = k;
                out.configuration = combo.into_iter().map(|i| pts[i].clone()).collect();
            }
            None => {
                out.next_all_partitioned = true;
                break;
            }
        }
    }
    Ok(out)
}
