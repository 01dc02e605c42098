//! Linear programs over the real relaxation of an inequality system.

use num_traits::{One, Signed, Zero};

use super::simplex::{solve_standard, StandardOutcome};
use crate::numeric::{AffineForm, Rational};
use crate::system::InequalitySystem;

/// Nonnegative multipliers `λ` with `Σ λ_i a_i` identically equal to a
/// negative constant, proving that `a_i(x) ≥ 0` has no real solution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rational>,
}

impl FarkasCertificate {
    /// The combined form `Σ λ_i a_i`, or `None` on a length mismatch.
    pub fn combination(&self, forms: &[AffineForm]) -> Option<AffineForm> {
        if forms.len() != self.multipliers.len() {
            return None;
        }
        let dim = forms.first().map_or(0, AffineForm::dim);
        let mut acc = AffineForm::constant_form(dim, Rational::zero());
        for (f, l) in forms.iter().zip(&self.multipliers) {
            if f.dim() != dim {
                return None;
            }
            acc.add_scaled(f, l);
        }
        Some(acc)
    }

    /// Exact check against `forms`; independent of any solver state.
    pub fn verify(&self, forms: &[AffineForm]) -> bool {
        if self.multipliers.iter().any(Signed::is_negative) {
            return false;
        }
        match self.combination(forms) {
            Some(c) => c.is_constant() && c.constant.is_negative(),
            None => false,
        }
    }

    pub fn support(&self) -> Vec<usize> {
        self.multipliers
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Result of [`lp_solve`], maximizing the objective over the relaxation.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible(FarkasCertificate),
    /// Feasible; `value` is the maximum (zero when no objective was given).
    Optimal { point: Vec<Rational>, value: Rational },
    /// Feasible with `objective(point + s·ray) → ∞` as `s → ∞`.
    Unbounded { point: Vec<Rational>, ray: Vec<Rational> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible(_))
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Infeasible(_) => None,
            LpOutcome::Optimal { point, .. } | LpOutcome::Unbounded { point, .. } => Some(point),
        }
    }
}

/// Maximize `objective` over `{x ∈ ℚᵏ : a_i(x) ≥ 0}`, ignoring the integrality
/// structure of the system's space.
pub fn lp_solve(system: &InequalitySystem, objective: Option<&AffineForm>) -> LpOutcome {
    solve_forms(&system.forms, system.dim(), objective)
}

pub fn lp_feasible(forms: &[AffineForm], dim: usize) -> bool {
    solve_forms(forms, dim, None).is_feasible()
}

/// Core LP routine. Free variables are split as `x = u − v`, each form
/// receives a surplus column: `c·u − c·v − s = −b`.
pub(crate) fn solve_forms(
    forms: &[AffineForm],
    dim: usize,
    objective: Option<&AffineForm>,
) -> LpOutcome {
    let m = forms.len();
    let n = 2 * dim + m;
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for (i, f) in forms.iter().enumerate() {
        debug_assert_eq!(f.dim(), dim);
        let mut row = vec![Rational::zero(); n];
        for (j, c) in f.coeffs.iter().enumerate() {
            if !c.is_zero() {
                row[j] = c.clone();
                row[dim + j] = -c.clone();
            }
        }
        row[2 * dim + i] = -Rational::one();
        a.push(row);
        b.push(-f.constant.clone());
    }
    let mut costs = vec![Rational::zero(); n];
    if let Some(obj) = objective {
        for (j, c) in obj.coeffs.iter().enumerate() {
            costs[j] = -c.clone();
            costs[dim + j] = c.clone();
        }
    }
    let split = |v: &[Rational]| -> Vec<Rational> { (0..dim).map(|j| &v[j] - &v[dim + j]).collect() };
    match solve_standard(&a, &b, &costs) {
        StandardOutcome::Infeasible => LpOutcome::Infeasible(farkas(forms, dim)),
        StandardOutcome::Optimal { x, .. } => {
            let point = split(&x);
            let value = objective.map_or_else(Rational::zero, |o| o.eval(&point));
            LpOutcome::Optimal { point, value }
        }
        StandardOutcome::Unbounded { x, ray } => LpOutcome::Unbounded {
            point: split(&x),
            ray: split(&ray),
        },
    }
}

/// Multipliers for an LP-infeasible system: `λ ≥ 0`, `Σ λ_i c_i = 0`,
/// `Σ λ_i b_i = −1`. Feasible by Farkas' lemma whenever the system is not.
pub(crate) fn farkas(forms: &[AffineForm], dim: usize) -> FarkasCertificate {
    let m = forms.len();
    let mut a = vec![vec![Rational::zero(); m]; dim + 1];
    for (i, f) in forms.iter().enumerate() {
        for (j, c) in f.coeffs.iter().enumerate() {
            a[j][i] = c.clone();
        }
        a[dim][i] = f.constant.clone();
    }
    let mut b = vec![Rational::zero(); dim + 1];
    b[dim] = -Rational::one();
    match solve_standard(&a, &b, &vec![Rational::zero(); m]) {
        StandardOutcome::Optimal { x, .. } => FarkasCertificate { multipliers: x },
        other => panic!("Farkas alternative must be solvable for an infeasible system: {other:?}"),
    }
}

/// Exact min and max of coordinate `coord`; `None` for an unbounded side.
/// Returns `None` overall when the forms are infeasible.
pub(crate) fn coordinate_range(
    forms: &[AffineForm],
    dim: usize,
    coord: usize,
) -> Option<(Option<Rational>, Option<Rational>)> {
    let up = AffineForm::coordinate(dim, coord, 1, Rational::zero());
    let down = AffineForm::coordinate(dim, coord, -1, Rational::zero());
    let hi = match solve_forms(forms, dim, Some(&up)) {
        LpOutcome::Infeasible(_) => return None,
        LpOutcome::Optimal { value, .. } => Some(value),
        LpOutcome::Unbounded { .. } => None,
    };
    let lo = match solve_forms(forms, dim, Some(&down)) {
        LpOutcome::Infeasible(_) => return None,
        LpOutcome::Optimal { value, .. } => Some(-value),
        LpOutcome::Unbounded { .. } => None,
    };
    Some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, int_point};

    #[test]
    fn maximize_on_interval() {
        let forms = vec![AffineForm::from_ints(&[1], 0), AffineForm::from_ints(&[-1], 1)];
        let obj = AffineForm::from_ints(&[1], 0);
        match solve_forms(&forms, 1, Some(&obj)) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, int(1));
                assert_eq!(point, int_point(&[1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_interval_farkas() {
        // x - 1 ≥ 0, -x ≥ 0  →  1·(x-1) + 1·(-x) = -1
        let forms = vec![AffineForm::from_ints(&[1], -1), AffineForm::from_ints(&[-1], 0)];
        match solve_forms(&forms, 1, None) {
            LpOutcome::Infeasible(cert) => {
                assert!(cert.verify(&forms));
                assert_eq!(cert.multipliers, int_point(&[1, 1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_ray() {
        let forms = vec![AffineForm::from_ints(&[1, 0], 0), AffineForm::from_ints(&[0, 1], 0)];
        let obj = AffineForm::from_ints(&[1, 1], 0);
        match solve_forms(&forms, 2, Some(&obj)) {
            LpOutcome::Unbounded { ray, .. } => assert!(obj.eval_linear(&ray).is_positive()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn farkas_rejects_tampering() {
        let forms = vec![AffineForm::from_ints(&[1], -1), AffineForm::from_ints(&[-1], 0)];
        let bad = FarkasCertificate {
            multipliers: int_point(&[1, 2]),
        };
        assert!(!bad.verify(&forms));
        let negative = FarkasCertificate {
            multipliers: int_point(&[-1, -1]),
        };
        assert!(!negative.verify(&forms));
    }

    #[test]
    fn constant_forms() {
        let forms = vec![AffineForm::from_ints(&[0, 0], -2)];
        assert!(!lp_feasible(&forms, 2));
        let forms = vec![AffineForm::from_ints(&[0, 0], 0)];
        assert!(lp_feasible(&forms, 2));
    }
}
