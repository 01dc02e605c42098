//! Affine symmetries of a search window, used to skip configurations that
//! are images of earlier ones.

use std::collections::HashMap;

use itertools::Itertools;

use crate::numeric::{Point, Rational};
use crate::spaces::bounding_box;

/// Index permutations of a point list induced by coordinate reflections and
/// coordinate swaps that map the list onto itself.
///
/// Any affine bijection that preserves the window's point set preserves hull
/// membership among those points, so Helly independence and Radon partitions
/// are invariant under every listed permutation.
#[derive(Debug, Clone)]
pub struct WindowSymmetry {
    pub perms: Vec<Vec<usize>>,
}

impl WindowSymmetry {
    pub fn trivial() -> Self {
        Self { perms: Vec::new() }
    }

    /// Coordinate permutations are tried for dimension ≤ 4; reflections
    /// always.
    pub fn of_points(points: &[Point]) -> Self {
        Self::of_points_with(points, |_| true)
    }

    /// As [`of_points`](Self::of_points), keeping only coordinate
    /// permutations accepted by `allowed`.
    pub fn of_points_with(points: &[Point], allowed: impl Fn(&[usize]) -> bool) -> Self {
        let Some((lo, hi)) = bounding_box(points) else {
            return Self::trivial();
        };
        let dim = lo.len();
        let lookup: HashMap<&Point, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let coord_perms: Vec<Vec<usize>> = if dim <= 4 {
            (0..dim)
                .permutations(dim)
                .filter(|p| p.iter().enumerate().all(|(i, &j)| hi[i].clone() - &lo[i] == hi[j].clone() - &lo[j]))
                .filter(|p| allowed(p))
                .collect()
        } else {
            vec![(0..dim).collect()]
        };
        let mut perms = Vec::new();
        for pi in &coord_perms {
            for flips in 0u32..(1 << dim) {
                if flips == 0 && pi.iter().enumerate().all(|(i, &j)| i == j) {
                    continue;
                }
                let map = |p: &Point| -> Point {
                    (0..dim)
                        .map(|i| {
                            let j = pi[i];
                            let x = p[j].clone() - &lo[j] + &lo[i];
                            if flips >> i & 1 == 1 {
                                lo[i].clone() + &hi[i] - x
                            } else {
                                x
                            }
                        })
                        .collect::<Vec<Rational>>()
                };
                let image: Option<Vec<usize>> = points.iter().map(|p| lookup.get(&map(p)).copied()).collect();
                if let Some(image) = image {
                    perms.push(image);
                }
            }
        }
        Self { perms }
    }

    pub fn image(perm: &[usize], mask: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= 1 << perm[i];
            rest &= rest - 1;
        }
        out
    }

    /// The mask is the least element of its orbit, ordered by the reversed
    /// bit pattern so that the lexicographically first index list wins.
    pub fn is_canonical(&self, mask: u64, n: usize) -> bool {
        let key = |m: u64| m.reverse_bits() >> (64 - n.max(1));
        let own = key(mask);
        self.perms.iter().all(|p| key(Self::image(p, mask)) <= own)
    }

    pub fn order(&self) -> usize {
        self.perms.len() + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int_point;
    use crate::spaces::SpaceDescriptor;

    #[test]
    fn square_window_has_dihedral_group() {
        let pts = SpaceDescriptor::integers(2)
            .points_in_box(&int_point(&[0, 0]), &int_point(&[2, 2]))
            .unwrap();
        assert_eq!(WindowSymmetry::of_points(&pts).order(), 8);
    }

    #[test]
    fn asymmetric_set_has_no_symmetry() {
        let pts = vec![int_point(&[0, 0]), int_point(&[1, 0]), int_point(&[0, 2])];
        assert_eq!(WindowSymmetry::of_points(&pts).order(), 1);
    }

    #[test]
    fn one_representative_per_orbit() {
        let pts = SpaceDescriptor::integers(1)
            .points_in_box(&int_point(&[0]), &int_point(&[3]))
            .unwrap();
        let sym = WindowSymmetry::of_points(&pts);
        let canon: Vec<u64> = (1u64..16).filter(|&m| sym.is_canonical(m, 4)).collect();
        // {0} ~ {3}, {1} ~ {2}: the first index list in lex order is kept
        assert!(canon.contains(&0b0001) && !canon.contains(&0b1000));
        assert!(canon.contains(&0b0011) && !canon.contains(&0b1100));
    }
}
