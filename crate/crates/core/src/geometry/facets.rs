use num_traits::{One, Signed, Zero};

use super::projection::implied;
use crate::error::{Error, Result};
use crate::feasibility::lp::solve_forms;
use crate::feasibility::LpOutcome;
use crate::numeric::{AffineForm, Rational};
use crate::system::InequalitySystem;

/// Interior margin of the polyhedron: `max s` subject to `a_i(x) ≥ s` and
/// `s ≤ 1`, over forms scaled to primitive integer rows. Positive exactly
/// when the polyhedron is full-dimensional. `None` when it is empty.
pub fn interior_margin(forms: &[AffineForm], dim: usize) -> Option<Rational> {
    let mut lifted: Vec<AffineForm> = forms
        .iter()
        .filter(|f| !f.is_constant())
        .map(|f| {
            let mut coeffs = f.normalized().coeffs;
            coeffs.push(-Rational::one());
            AffineForm::new(coeffs, f.normalized().constant)
        })
        .collect();
    if forms.iter().any(|f| f.is_constant() && f.constant.is_negative()) {
        return None;
    }
    lifted.push(AffineForm::coordinate(dim + 1, dim, -1, Rational::one()));
    let obj = AffineForm::coordinate(dim + 1, dim, 1, Rational::zero());
    match solve_forms(&lifted, dim + 1, Some(&obj)) {
        LpOutcome::Infeasible(_) => None,
        LpOutcome::Optimal { value, .. } => {
            if value.is_negative() {
                None
            } else {
                Some(value)
            }
        }
        LpOutcome::Unbounded { .. } => unreachable!("s is capped at 1"),
    }
}

/// Indices of a minimal subsystem describing the same polyhedron. Forms are
/// tested from the highest index down, so among duplicates the first is kept.
pub fn irredundant_indices(forms: &[AffineForm], dim: usize) -> Result<Vec<usize>> {
    match interior_margin(forms, dim) {
        None => return Err(Error::EmptyPolyhedron),
        Some(m) if m.is_zero() => return Err(Error::NotFullDimensional),
        Some(_) => {}
    }
    let mut keep: Vec<usize> = (0..forms.len()).filter(|&i| !forms[i].is_constant()).collect();
    let mut pos = keep.len();
    while pos > 0 {
        pos -= 1;
        let i = keep[pos];
        let others: Vec<AffineForm> = keep.iter().filter(|&&j| j != i).map(|&j| forms[j].clone()).collect();
        if implied(&others, &forms[i], dim) {
            keep.remove(pos);
        }
    }
    Ok(keep)
}

/// The facet-defining forms of a full-dimensional polyhedron. Every retained
/// form is needed: dropping it strictly enlarges the polyhedron.
pub fn irredundant_facets(system: &InequalitySystem) -> Result<InequalitySystem> {
    let keep = irredundant_indices(&system.forms, system.dim())?;
    Ok(system.subsystem(&keep))
}

/// A point satisfying every form except `i`, where `a_i < 0`; the
/// witness that form `i` is not redundant.
pub fn redundancy_witness(forms: &[AffineForm], dim: usize, i: usize) -> Option<Vec<Rational>> {
    let others: Vec<AffineForm> = forms.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f.clone()).collect();
    match solve_forms(&others, dim, Some(&forms[i].negated())) {
        LpOutcome::Optimal { point, value } if value.is_positive() => Some(point),
        LpOutcome::Unbounded { point, ray } => {
            // walk along the ray until a_i turns negative
            let slope = forms[i].eval_linear(&ray);
            let at = forms[i].eval(&point);
            let step = (at.abs() + Rational::one()) / (-slope);
            Some(point.iter().zip(&ray).map(|(p, r)| p + r * &step).collect())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::SpaceDescriptor;

    fn square(extra: Vec<AffineForm>) -> InequalitySystem {
        let mut forms = vec![
            AffineForm::from_ints(&[1, 0], 0),
            AffineForm::from_ints(&[-1, 0], 1),
            AffineForm::from_ints(&[0, 1], 0),
            AffineForm::from_ints(&[0, -1], 1),
        ];
        forms.extend(extra);
        InequalitySystem::new(SpaceDescriptor::reals(2), forms).unwrap()
    }

    #[test]
    fn duplicate_keeps_first_copy() {
        let sys = square(vec![AffineForm::from_ints(&[1, 0], 0)]);
        assert_eq!(irredundant_indices(&sys.forms, 2).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn redundant_dropped() {
        let sys = square(vec![AffineForm::from_ints(&[1, 1], 10)]);
        let f = irredundant_facets(&sys).unwrap();
        assert_eq!(f.len(), 4);
        for i in 0..4 {
            let w = redundancy_witness(&f.forms, 2, i).unwrap();
            assert!(f.forms[i].eval(&w).is_negative());
        }
    }

    #[test]
    fn degenerate_inputs() {
        let empty = square(vec![AffineForm::from_ints(&[1, 0], -2)]);
        assert_eq!(irredundant_facets(&empty), Err(Error::EmptyPolyhedron));
        let flat = square(vec![AffineForm::from_ints(&[-1, 0], 0)]);
        assert_eq!(irredundant_facets(&flat), Err(Error::NotFullDimensional));
    }
}
