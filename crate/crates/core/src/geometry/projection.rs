//! Fourier–Motzkin elimination of real coordinates with exact provenance.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::feasibility::lp::solve_forms;
use crate::feasibility::LpOutcome;
use crate::numeric::{AffineForm, Rational};
use crate::spaces::Factor;
use crate::system::InequalitySystem;

/// Nonnegative multipliers over the forms of the original system.
pub type Combination = Vec<(usize, Rational)>;

/// A projected form together with the combination of original forms it
/// equals, after the eliminated coordinates are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedForm {
    pub form: AffineForm,
    pub provenance: Combination,
}

/// Result of eliminating real coordinates from a system.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub system: InequalitySystem,
    pub provenance: Vec<Combination>,
    /// Coordinates of the original space retained, in order.
    pub kept: Vec<usize>,
}

impl Projection {
    fn identity(system: &InequalitySystem) -> Self {
        Self {
            system: system.clone(),
            provenance: (0..system.len()).map(|i| vec![(i, Rational::from_integer(1.into()))]).collect(),
            kept: (0..system.dim()).collect(),
        }
    }

    pub fn forms(&self) -> impl Iterator<Item = ProjectedForm> + '_ {
        self.system
            .forms
            .iter()
            .zip(&self.provenance)
            .map(|(form, provenance)| ProjectedForm {
                form: form.clone(),
                provenance: provenance.clone(),
            })
    }

    /// Check every provenance identity against `original`: the combination
    /// must be the projected form with zeros at the eliminated coordinates.
    pub fn verify(&self, original: &InequalitySystem) -> bool {
        let dim = original.dim();
        self.system.forms.iter().zip(&self.provenance).all(|(form, comb)| {
            let mut acc = AffineForm::constant_form(dim, Rational::zero());
            for (i, l) in comb {
                if l.is_negative() || *i >= original.len() {
                    return false;
                }
                acc.add_scaled(&original.forms[*i], l);
            }
            acc == form.embedded(dim, &self.kept)
        })
    }

    /// Keep only the forms at `indices`, in that order.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        Self {
            system: self.system.subsystem(indices),
            provenance: indices.iter().map(|&i| self.provenance[i].clone()).collect(),
            kept: self.kept.clone(),
        }
    }

    fn eliminate(&self, coord: usize) -> Self {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut forms = Vec::new();
        let mut provenance = Vec::new();
        for (i, f) in self.system.forms.iter().enumerate() {
            let c = &f.coeffs[coord];
            if c.is_positive() {
                pos.push(i);
            } else if c.is_negative() {
                neg.push(i);
            } else {
                forms.push(f.without_coord(coord));
                provenance.push(self.provenance[i].clone());
            }
        }
        for &p in &pos {
            for &n in &neg {
                let fp = &self.system.forms[p];
                let fn_ = &self.system.forms[n];
                let wp = -fn_.coeffs[coord].clone();
                let wn = fp.coeffs[coord].clone();
                let mut f = fp.scaled(&wp);
                f.add_scaled(fn_, &wn);
                forms.push(f.without_coord(coord));
                provenance.push(combine(&[(&self.provenance[p], &wp), (&self.provenance[n], &wn)]));
            }
        }
        let mut kept = self.kept.clone();
        kept.remove(coord);
        let mut out = Self {
            system: InequalitySystem {
                space: self.system.space.without_coord(coord),
                forms,
            },
            provenance,
            kept,
        };
        out.tidy();
        out
    }

    /// Normalize to primitive integer rows, drop trivially true constants and
    /// duplicates (the first copy is kept), then prune LP-redundant forms
    /// from the highest index down.
    fn tidy(&mut self) {
        let mut forms: Vec<AffineForm> = Vec::new();
        let mut provenance: Vec<Combination> = Vec::new();
        for (f, comb) in self.system.forms.iter().zip(&self.provenance) {
            let (f, comb) = match f.primitive_scale() {
                Some(s) => (f.scaled(&s), scale(comb, &s)),
                None => continue,
            };
            if f.is_constant() && !f.constant.is_negative() {
                continue;
            }
            if forms.contains(&f) {
                continue;
            }
            forms.push(f);
            provenance.push(comb);
        }
        let dim = self.system.space.dim();
        if !solve_forms(&forms, dim, None).is_feasible() {
            self.system.forms = forms;
            self.provenance = provenance;
            return;
        }
        let mut i = forms.len();
        while i > 0 {
            i -= 1;
            let others: Vec<AffineForm> = forms
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, f)| f.clone())
                .collect();
            if implied(&others, &forms[i], dim) {
                forms.remove(i);
                provenance.remove(i);
            }
        }
        self.system.forms = forms;
        self.provenance = provenance;
    }
}

/// Whether `target ≥ 0` holds on the (nonempty) polyhedron of `forms`.
pub(crate) fn implied(forms: &[AffineForm], target: &AffineForm, dim: usize) -> bool {
    match solve_forms(forms, dim, Some(&target.negated())) {
        LpOutcome::Optimal { value, .. } => !value.is_positive(),
        LpOutcome::Unbounded { .. } => false,
        LpOutcome::Infeasible(_) => true,
    }
}

fn scale(comb: &Combination, s: &Rational) -> Combination {
    comb.iter().map(|(i, l)| (*i, l * s)).collect()
}

fn combine(parts: &[(&Combination, &Rational)]) -> Combination {
    let mut out: Combination = Vec::new();
    for (comb, w) in parts {
        for (i, l) in comb.iter() {
            let v = l * *w;
            match out.iter_mut().find(|(j, _)| j == i) {
                Some((_, acc)) => *acc += v,
                None => out.push((*i, v)),
            }
        }
    }
    out.retain(|(_, l)| !l.is_zero());
    out.sort_by_key(|(i, _)| *i);
    out
}

/// Eliminate one real coordinate. The result describes exactly the image of
/// the polyhedron under the coordinate projection.
pub fn project_out_real(system: &InequalitySystem, coord: usize) -> Result<Projection> {
    project_out_reals(system, &[coord])
}

/// Eliminate several real coordinates; provenance refers to `system`.
pub fn project_out_reals(system: &InequalitySystem, coords: &[usize]) -> Result<Projection> {
    let mut coords = coords.to_vec();
    coords.sort_unstable();
    coords.dedup();
    for &c in &coords {
        match system.space.factors.get(c) {
            Some(Factor::Real) => {}
            Some(_) => return Err(Error::precondition(format!("coordinate {c} is not a real factor"))),
            None => {
                return Err(Error::DimensionMismatch {
                    expected: system.dim(),
                    found: c + 1,
                })
            }
        }
    }
    let mut proj = Projection::identity(system);
    for &c in coords.iter().rev() {
        proj = proj.eliminate(c);
    }
    Ok(proj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::SpaceDescriptor;

    fn forms_of(p: &Projection) -> Vec<AffineForm> {
        p.system.forms.clone()
    }

    #[test]
    fn square_projects_to_interval() {
        let sys = InequalitySystem::new(
            SpaceDescriptor::reals(2),
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[-1, 0], 1),
                AffineForm::from_ints(&[0, 1], 0),
                AffineForm::from_ints(&[0, -1], 1),
            ],
        )
        .unwrap();
        let p = project_out_real(&sys, 0).unwrap();
        assert_eq!(forms_of(&p), vec![AffineForm::from_ints(&[1], 0), AffineForm::from_ints(&[-1], 1)]);
        assert!(p.verify(&sys));
        assert_eq!(p.kept, vec![1]);
    }

    #[test]
    fn triangle_projects_to_interval() {
        let sys = InequalitySystem::new(
            SpaceDescriptor::reals(2),
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[0, 1], 0),
                AffineForm::from_ints(&[-1, -1], 1),
            ],
        )
        .unwrap();
        let p = project_out_real(&sys, 0).unwrap();
        assert_eq!(forms_of(&p), vec![AffineForm::from_ints(&[1], 0), AffineForm::from_ints(&[-1], 1)]);
        assert!(p.verify(&sys));
        assert_eq!(p.provenance[1], vec![(0, crate::numeric::int(1)), (2, crate::numeric::int(1))]);
    }

    #[test]
    fn rejects_integer_coordinate() {
        let sys = InequalitySystem::new(SpaceDescriptor::integers(1), vec![AffineForm::from_ints(&[1], 0)]).unwrap();
        assert!(project_out_real(&sys, 0).is_err());
    }
}
