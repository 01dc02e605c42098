//! Convex hull membership and intersections of hulls with the ground set.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::feasibility::simplex::{solve_standard, StandardOutcome};
use crate::feasibility::{mixed_feasible, FeasibilityVerdict, MixedOptions};
use crate::numeric::{solve_linear, AffineForm, Point, Rational};
use crate::spaces::{bounding_box, Factor, GroundSet, SpaceDescriptor};
use crate::system::InequalitySystem;

/// Convex coefficients `λ ≥ 0`, `Σλ = 1`, `Σ λ_i p_i = target`, if any.
pub fn convex_coefficients(points: &[Point], target: &[Rational]) -> Option<Vec<Rational>> {
    if points.is_empty() {
        return None;
    }
    let k = target.len();
    let mut a: Vec<Vec<Rational>> = (0..k).map(|r| points.iter().map(|p| p[r].clone()).collect()).collect();
    a.push(vec![Rational::one(); points.len()]);
    let mut b = target.to_vec();
    b.push(Rational::one());
    match solve_standard(&a, &b, &vec![Rational::zero(); points.len()]) {
        StandardOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

pub fn in_hull(points: &[Point], target: &[Rational]) -> bool {
    convex_coefficients(points, target).is_some()
}

pub fn verify_convex(points: &[Point], coeffs: &[Rational], target: &[Rational]) -> bool {
    if points.len() != coeffs.len() || coeffs.iter().any(Signed::is_negative) {
        return false;
    }
    if coeffs.iter().sum::<Rational>() != Rational::one() {
        return false;
    }
    (0..target.len()).all(|r| points.iter().zip(coeffs).map(|(p, l)| &p[r] * l).sum::<Rational>() == target[r])
}

/// A point of `M ∩ conv B ∩ conv C` with convex coefficients for both hulls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullWitness {
    pub point: Point,
    pub coeffs_b: Vec<Rational>,
    pub coeffs_c: Vec<Rational>,
}

impl HullWitness {
    pub fn verify(&self, b: &[Point], c: &[Point], ground: &GroundSet) -> bool {
        ground.contains(&self.point)
            && verify_convex(b, &self.coeffs_b, &self.point)
            && verify_convex(c, &self.coeffs_c, &self.point)
    }
}

fn check_points(sets: &[&[Point]], ground: &GroundSet, dim: usize) -> Result<()> {
    for p in sets.iter().flat_map(|s| s.iter()) {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        if !ground.contains(p) {
            return Err(Error::precondition(format!("point ({}) is not in the ground set", crate::numeric::fmt_point(p))));
        }
    }
    Ok(())
}

pub fn ground_dim(ground: &GroundSet) -> Option<usize> {
    match ground {
        GroundSet::Space(s) => Some(s.dim()),
        GroundSet::Points(p) => p.first().map(Vec::len),
    }
}

/// Decide `M ∩ conv B ∩ conv C ≠ ∅`.
///
/// Locally finite ground sets are scanned over their points in the common
/// bounding box (the intersection lies inside it). Spaces with real factors
/// are decided by mixed feasibility of the lifted system in `(x, λ, μ)`.
pub fn hull_intersect_space(b: &[Point], c: &[Point], ground: &GroundSet) -> Result<Option<HullWitness>> {
    let Some(dim) = b.first().or(c.first()).map(Vec::len).or(ground_dim(ground)) else {
        return Ok(None);
    };
    if let Some(gd) = ground_dim(ground) {
        if gd != dim {
            return Err(Error::DimensionMismatch { expected: gd, found: dim });
        }
    }
    check_points(&[b, c], ground, dim)?;
    if b.is_empty() || c.is_empty() {
        return Ok(None);
    }
    if ground.is_locally_finite() {
        let (lb, hb) = bounding_box(b).expect("non-empty");
        let (lc, hc) = bounding_box(c).expect("non-empty");
        let lo: Point = lb.iter().zip(&lc).map(|(x, y)| x.max(y).clone()).collect();
        let hi: Point = hb.iter().zip(&hc).map(|(x, y)| x.min(y).clone()).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(None);
        }
        for p in ground.points_in_box(&lo, &hi)? {
            if let (Some(coeffs_b), Some(coeffs_c)) = (convex_coefficients(b, &p), convex_coefficients(c, &p)) {
                return Ok(Some(HullWitness {
                    point: p,
                    coeffs_b,
                    coeffs_c,
                }));
            }
        }
        return Ok(None);
    }
    let GroundSet::Space(space) = ground else {
        unreachable!("finite point sets are locally finite")
    };
    let system = lifted_hulls(space, &[b, c]);
    match mixed_feasible(&system, &MixedOptions::default())? {
        FeasibilityVerdict::Feasible { witness } => {
            let point = witness[..dim].to_vec();
            let coeffs_b = witness[dim..dim + b.len()].to_vec();
            let coeffs_c = witness[dim + b.len()..].to_vec();
            Ok(Some(HullWitness {
                point,
                coeffs_b,
                coeffs_c,
            }))
        }
        _ => Ok(None),
    }
}

/// System in `(x, λ¹, …, λ^s)` over `M × ℝ^{Σ|S_j|}` stating `x ∈ conv S_j`
/// for every `j`. Integer coordinates of `x` are bounded through `λ`.
pub fn lifted_hulls(space: &SpaceDescriptor, sets: &[&[Point]]) -> InequalitySystem {
    let dim = space.dim();
    let total = dim + sets.iter().map(|s| s.len()).sum::<usize>();
    let mut forms = Vec::new();
    let mut offset = dim;
    for set in sets {
        for j in 0..set.len() {
            forms.push(AffineForm::coordinate(total, offset + j, 1, Rational::zero()));
        }
        let mut sum = AffineForm::constant_form(total, -Rational::one());
        for j in 0..set.len() {
            sum.coeffs[offset + j] = Rational::one();
        }
        forms.push(sum.negated());
        forms.push(sum);
        for r in 0..dim {
            let mut eq = AffineForm::coordinate(total, r, -1, Rational::zero());
            for (j, p) in set.iter().enumerate() {
                eq.coeffs[offset + j] = p[r].clone();
            }
            forms.push(eq.negated());
            forms.push(eq);
        }
        offset += set.len();
    }
    let mut factors = space.factors.clone();
    factors.extend(std::iter::repeat_n(Factor::Real, total - dim));
    InequalitySystem::new(SpaceDescriptor::new(factors), forms).expect("dimensions agree")
}

/// Half-plane forms `a(x) ≥ 0` of the convex hull of planar points, one per
/// edge in counter-clockwise order. Degenerate hulls (a point or a segment)
/// get forms pinning them down as well.
pub fn planar_hull_forms(points: &[Point]) -> Vec<AffineForm> {
    let hull = planar_hull(points);
    match hull.len() {
        0 => Vec::new(),
        1 => {
            let p = &hull[0];
            vec![
                AffineForm::coordinate(2, 0, 1, -p[0].clone()),
                AffineForm::coordinate(2, 0, -1, p[0].clone()),
                AffineForm::coordinate(2, 1, 1, -p[1].clone()),
                AffineForm::coordinate(2, 1, -1, p[1].clone()),
            ]
        }
        2 => {
            let (p, q) = (&hull[0], &hull[1]);
            let line = edge_form(p, q);
            let along = AffineForm::new(
                vec![&q[0] - &p[0], &q[1] - &p[1]],
                -((&q[0] - &p[0]) * &p[0] + (&q[1] - &p[1]) * &p[1]),
            );
            let back = AffineForm::new(
                vec![&p[0] - &q[0], &p[1] - &q[1]],
                -((&p[0] - &q[0]) * &q[0] + (&p[1] - &q[1]) * &q[1]),
            );
            vec![line.normalized(), line.negated().normalized(), along.normalized(), back.normalized()]
        }
        n => (0..n).map(|i| edge_form(&hull[i], &hull[(i + 1) % n]).normalized()).collect(),
    }
}

/// Nonnegative to the left of the directed line `p → q`.
fn edge_form(p: &Point, q: &Point) -> AffineForm {
    let dx = &q[0] - &p[0];
    let dy = &q[1] - &p[1];
    AffineForm::new(vec![-dy.clone(), dx.clone()], &dy * &p[0] - &dx * &p[1])
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Vertices of the planar convex hull in counter-clockwise order, starting
/// from the lexicographically smallest point (monotone chain).
pub fn planar_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// For each candidate point of the ground set, the subsets (as bitmasks over
/// a base configuration) of affinely independent points whose hull contains
/// the candidate in its relative interior.
///
/// `p ∈ conv X` holds exactly when one of the masks of `p` lies inside `X`,
/// so hull queries over subsets of the base become bit tests.
#[derive(Debug, Clone)]
pub struct HullIndex {
    pub base: Vec<Point>,
    pub candidates: Vec<Point>,
    pub masks: Vec<Vec<u64>>,
}

impl HullIndex {
    /// `base` has at most 64 points; candidates are the ground points in the
    /// bounding box of `base`.
    pub fn new(base: &[Point], ground: &GroundSet) -> Result<Self> {
        let candidates = match bounding_box(base) {
            Some((lo, hi)) => ground.points_in_box(&lo, &hi)?,
            None => Vec::new(),
        };
        Self::with_candidates(base, candidates)
    }

    pub fn with_candidates(base: &[Point], candidates: Vec<Point>) -> Result<Self> {
        if base.len() > 64 {
            return Err(Error::precondition("hull index supports at most 64 base points"));
        }
        let dim = base.first().map_or(0, Vec::len);
        let simplices = affine_simplices(base, dim);
        let masks = candidates
            .iter()
            .map(|p| {
                simplices
                    .iter()
                    .filter(|(_, s)| relative_interior(base, s, p))
                    .map(|(m, _)| *m)
                    .collect()
            })
            .collect();
        Ok(Self {
            base: base.to_vec(),
            candidates,
            masks,
        })
    }

    /// Whether candidate `c` lies in `conv` of the base points in `set`.
    pub fn in_hull(&self, c: usize, set: u64) -> bool {
        self.masks[c].iter().any(|m| m & !set == 0)
    }

    /// First candidate in `conv B ∩ conv C` for disjoint masks.
    pub fn common_point(&self, b: u64, c: u64) -> Option<usize> {
        (0..self.candidates.len()).find(|&i| self.in_hull(i, b) && self.in_hull(i, c))
    }

    /// Minimal unions `m₁ ∪ m₂` of disjoint masks sharing a candidate: a
    /// subset of the base has a Radon partition iff it contains one of them.
    pub fn radon_obstructions(&self) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        for masks in &self.masks {
            for (i, m1) in masks.iter().enumerate() {
                for m2 in &masks[i + 1..] {
                    if m1 & m2 == 0 {
                        out.push(m1 | m2);
                    }
                }
            }
        }
        minimal_masks(out)
    }
}

/// Drop duplicates and proper supersets.
pub(crate) fn minimal_masks(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    let mut out: Vec<u64> = Vec::new();
    for m in masks {
        if !out.iter().any(|o| o & !m == 0) {
            out.push(m);
        }
    }
    out
}

/// All affinely independent subsets of size at most `dim + 1`.
fn affine_simplices(base: &[Point], dim: usize) -> Vec<(u64, Vec<usize>)> {
    let mut out = Vec::new();
    for size in 1..=(dim + 1).min(base.len()) {
        for subset in (0..base.len()).combinations(size) {
            if affinely_independent(base, &subset) {
                let mask = subset.iter().fold(0u64, |m, &i| m | (1 << i));
                out.push((mask, subset));
            }
        }
    }
    out
}

fn affinely_independent(base: &[Point], subset: &[usize]) -> bool {
    let p0 = &base[subset[0]];
    let dim = p0.len();
    let m: Vec<Vec<Rational>> = (0..dim)
        .map(|r| subset[1..].iter().map(|&i| &base[i][r] - &p0[r]).collect())
        .collect();
    if subset.len() == 1 {
        return true;
    }
    solve_linear(&m, &vec![Rational::zero(); dim]).is_ok_and(|s| s.kernel.is_empty())
}

/// Barycentric coordinates of `p` in the simplex are all positive.
fn relative_interior(base: &[Point], simplex: &[usize], p: &[Rational]) -> bool {
    let dim = p.len();
    let mut m: Vec<Vec<Rational>> = (0..dim).map(|r| simplex.iter().map(|&i| base[i][r].clone()).collect()).collect();
    m.push(vec![Rational::one(); simplex.len()]);
    let mut rhs = p.to_vec();
    rhs.push(Rational::one());
    match solve_linear(&m, &rhs) {
        Ok(s) => s.solution.is_some_and(|l| l.iter().all(Signed::is_positive)),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int_point, point};

    fn z(d: usize) -> GroundSet {
        GroundSet::Space(SpaceDescriptor::integers(d))
    }

    #[test]
    fn line_example() {
        let w = hull_intersect_space(&[int_point(&[0]), int_point(&[2])], &[int_point(&[1])], &z(1))
            .unwrap()
            .unwrap();
        assert_eq!(w.point, int_point(&[1]));
        assert!(w.verify(&[int_point(&[0]), int_point(&[2])], &[int_point(&[1])], &z(1)));
    }

    #[test]
    fn diagonals_of_unit_square_miss_lattice() {
        let b = [int_point(&[0, 0]), int_point(&[1, 1])];
        let c = [int_point(&[1, 0]), int_point(&[0, 1])];
        assert_eq!(hull_intersect_space(&b, &c, &z(2)).unwrap(), None);
        let r = GroundSet::Space(SpaceDescriptor::reals(2));
        let w = hull_intersect_space(&b, &c, &r).unwrap().unwrap();
        assert_eq!(w.point, point(&[(1, 2), (1, 2)]));
        assert!(w.verify(&b, &c, &r));
    }

    #[test]
    fn lifted_path_on_mixed_space() {
        // ℝ×ℤ: segments crossing at (1/2, 1/2) only
        let m = GroundSet::Space(SpaceDescriptor::mixed(1, 1));
        let b = [point(&[(0, 1), (0, 1)]), point(&[(1, 1), (1, 1)])];
        let c = [point(&[(1, 1), (0, 1)]), point(&[(0, 1), (1, 1)])];
        assert_eq!(hull_intersect_space(&b, &c, &m).unwrap(), None);
        let b2 = [point(&[(0, 1), (0, 1)]), point(&[(2, 1), (2, 1)])];
        let c2 = [point(&[(1, 2), (1, 1)]), point(&[(3, 2), (1, 1)])];
        let w = hull_intersect_space(&b2, &c2, &m).unwrap().unwrap();
        assert_eq!(w.point, point(&[(1, 1), (1, 1)]));
        assert!(w.verify(&b2, &c2, &m));
    }

    #[test]
    fn points_outside_ground_rejected() {
        let b = [point(&[(1, 2)])];
        assert!(matches!(hull_intersect_space(&b, &b, &z(1)), Err(Error::Precondition(_))));
    }

    #[test]
    fn planar_hull_of_square_with_interior_point() {
        let pts = vec![
            int_point(&[0, 0]),
            int_point(&[2, 0]),
            int_point(&[1, 1]),
            int_point(&[2, 2]),
            int_point(&[0, 2]),
        ];
        let forms = planar_hull_forms(&pts);
        assert_eq!(forms.len(), 4);
        for p in &pts {
            assert!(forms.iter().all(|f| !f.eval(p).is_negative()));
        }
        assert!(forms.iter().any(|f| f.eval(&int_point(&[3, 1])).is_negative()));
    }

    #[test]
    fn index_agrees_with_lp() {
        let base = vec![int_point(&[0, 0]), int_point(&[2, 0]), int_point(&[0, 2]), int_point(&[2, 2])];
        let idx = HullIndex::new(&base, &z(2)).unwrap();
        for (c, p) in idx.candidates.iter().enumerate() {
            for set in 1u64..16 {
                let pts: Vec<Point> = (0..4).filter(|i| set >> i & 1 == 1).map(|i| base[i].clone()).collect();
                assert_eq!(idx.in_hull(c, set), in_hull(&pts, p), "{p:?} {set:b}");
            }
        }
        assert_eq!(idx.radon_obstructions(), vec![0b1111]);
    }
}
