use num_bigint::BigInt;
use num_traits::One;

use super::lp::coordinate_range;
use crate::numeric::{AffineForm, Rational};
use crate::spaces::Factor;
use crate::system::InequalitySystem;

/// Per-coordinate rational bounds; `None` leaves a side open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsBox {
    pub lower: Vec<Option<Rational>>,
    pub upper: Vec<Option<Rational>>,
}

impl BoundsBox {
    pub fn unbounded(dim: usize) -> Self {
        Self {
            lower: vec![None; dim],
            upper: vec![None; dim],
        }
    }

    /// `[-radius, radius]` on every coordinate.
    pub fn uniform(dim: usize, radius: &Rational) -> Self {
        Self {
            lower: vec![Some(-radius.clone()); dim],
            upper: vec![Some(radius.clone()); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Exact LP optima of `±x_i` over the relaxation; `None` when the
    /// relaxation is empty.
    pub fn from_lp(system: &InequalitySystem) -> Option<Self> {
        let dim = system.dim();
        let mut b = Self::unbounded(dim);
        for i in 0..dim {
            let (lo, hi) = coordinate_range(&system.forms, dim, i)?;
            b.lower[i] = lo;
            b.upper[i] = hi;
        }
        Some(b)
    }

    /// Forms `x_i − lo ≥ 0` and `hi − x_i ≥ 0` for every finite side,
    /// restricted to `coords` when given.
    pub fn forms(&self, coords: Option<&[usize]>) -> Vec<AffineForm> {
        let dim = self.dim();
        let all: Vec<usize> = (0..dim).collect();
        let coords = coords.unwrap_or(&all);
        let mut out = Vec::new();
        for &i in coords {
            if let Some(lo) = &self.lower[i] {
                out.push(AffineForm::coordinate(dim, i, 1, -lo.clone()));
            }
            if let Some(hi) = &self.upper[i] {
                out.push(AffineForm::coordinate(dim, i, -1, hi.clone()));
            }
        }
        out
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.iter().enumerate().all(|(i, x)| {
            self.lower[i].as_ref().is_none_or(|l| x >= l) && self.upper[i].as_ref().is_none_or(|h| x <= h)
        })
    }
}

/// Range forms `x_i − min F ≥ 0`, `max F − x_i ≥ 0` for each finite factor.
pub(crate) fn finite_range_forms(system: &InequalitySystem) -> Vec<(usize, bool, AffineForm)> {
    let dim = system.dim();
    let mut out = Vec::new();
    for (i, f) in system.space.factors.iter().enumerate() {
        if let Factor::Finite(values) = f {
            let lo = values.first().expect("finite factors are non-empty");
            let hi = values.last().expect("finite factors are non-empty");
            out.push((i, false, AffineForm::coordinate(dim, i, 1, -lo.clone())));
            out.push((i, true, AffineForm::coordinate(dim, i, -1, hi.clone())));
        }
    }
    out
}

/// Radius `R` such that whenever the system has a solution in `M`, it has
/// one with every integer coordinate in `[-R, R]`; if the supremum of an
/// objective over `M` is finite, some maximizer also lies in that box.
///
/// With the forms scaled to coprime integer rows `[c_i | b_i]` and `Δ` an
/// upper bound on the absolute value of every square subdeterminant, write a
/// solution as `z = v + Σ μ_r r` with `v` on a minimal face (`|v_j| ≤ Δ`) and
/// at most `k` integral recession generators (`|r_j| ≤ Δ`). Then
/// `z − Σ ⌊μ_r⌋ r` keeps integral coordinates integral, stays in the
/// polyhedron, does not decrease a bounded objective, and satisfies
/// `|x_j| ≤ (k+1)Δ`. `Δ` is taken from Hadamard's inequality: the product of
/// the `k` largest row norms, each rounded up. Finite factors enter as their
/// range forms so that recession directions vanish on them.
pub fn certified_radius(system: &InequalitySystem) -> Rational {
    let k = system.dim();
    let mut norms: Vec<BigInt> = system
        .forms
        .iter()
        .chain(finite_range_forms(system).iter().map(|(_, _, f)| f))
        .filter_map(|f| {
            let scale = f.primitive_scale()?;
            let row = f.scaled(&scale).to_vector();
            let sq: BigInt = row.iter().map(|e| e.numer() * e.numer()).sum();
            let root = sq.sqrt();
            Some(if &root * &root == sq { root } else { root + 1 })
        })
        .collect();
    norms.sort_unstable_by(|a, b| b.cmp(a));
    let delta: BigInt = norms.iter().take(k).fold(BigInt::one(), |acc, n| acc * n);
    Rational::from_integer(delta * BigInt::from(k + 1))
}

/// Box on the integer coordinates of `system` with the certified radius.
pub fn certified_box(system: &InequalitySystem) -> BoundsBox {
    let r = certified_radius(system);
    let mut b = BoundsBox::unbounded(system.dim());
    for (i, f) in system.space.factors.iter().enumerate() {
        if *f == Factor::Integer {
            b.lower[i] = Some(-r.clone());
            b.upper[i] = Some(r.clone());
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;
    use crate::spaces::SpaceDescriptor;

    #[test]
    fn radius_uses_hadamard_product() {
        // rows (1,0,-1) and (0,2,3) after scaling: norms ceil(√2)=2, ceil(√13)=4
        let sys = InequalitySystem::new(
            SpaceDescriptor::integers(2),
            vec![AffineForm::from_ints(&[1, 0], -1), AffineForm::from_ints(&[0, 2], 3)],
        )
        .unwrap();
        assert_eq!(certified_radius(&sys), int(3 * 8));
    }

    #[test]
    fn lp_box_is_exact() {
        let sys = InequalitySystem::new(
            SpaceDescriptor::reals(1),
            vec![AffineForm::from_ints(&[2], -1), AffineForm::from_ints(&[-4], 3)],
        )
        .unwrap();
        let b = BoundsBox::from_lp(&sys).unwrap();
        assert_eq!(b.lower[0], Some(crate::numeric::rat(1, 2)));
        assert_eq!(b.upper[0], Some(crate::numeric::rat(3, 4)));
    }
}
