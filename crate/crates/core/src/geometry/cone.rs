//! Conic decompositions of affine forms.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::feasibility::lp::solve_forms;
use crate::feasibility::simplex::{solve_standard, StandardOutcome};
use crate::feasibility::LpOutcome;
use crate::numeric::{solve_linear, AffineForm, Rational};

/// `target = Σ λ_i · generators[i]` with `λ_i > 0` on the listed indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDecomposition {
    pub support: Vec<(usize, Rational)>,
}

impl ConeDecomposition {
    pub fn indices(&self) -> Vec<usize> {
        self.support.iter().map(|(i, _)| *i).collect()
    }

    /// Exact identity check.
    pub fn verify(&self, target: &AffineForm, generators: &[AffineForm]) -> bool {
        let mut acc = AffineForm::constant_form(target.dim(), Rational::zero());
        for (i, l) in &self.support {
            match generators.get(*i) {
                Some(g) if !l.is_negative() && g.dim() == target.dim() => acc.add_scaled(g, l),
                _ => return false,
            }
        }
        acc == *target
    }
}

/// A vector `y` over form coordinates `(c, b)` with `⟨y, g⟩ ≥ 0` for every
/// generator and `⟨y, target⟩ < 0`.
pub fn verify_separator(separator: &[Rational], target: &AffineForm, generators: &[AffineForm]) -> bool {
    let dot = |f: &AffineForm| -> Option<Rational> {
        let v = f.to_vector();
        (v.len() == separator.len()).then(|| v.iter().zip(separator).map(|(a, b)| a * b).sum())
    };
    generators.iter().all(|g| dot(g).is_some_and(|d| !d.is_negative()))
        && dot(target).is_some_and(|d| d.is_negative())
}

/// Express `target` as a nonnegative combination of at most `size_cap`
/// generators.
///
/// A basic solution of `Σ λ_i g_i = target, λ ≥ 0` is found by simplex, then
/// zero-sum circuits among the support are cancelled until the support
/// columns are linearly independent. When `target` is outside the cone the
/// error carries a separating functional.
pub fn caratheodory_decompose(
    target: &AffineForm,
    generators: &[AffineForm],
    size_cap: usize,
) -> Result<ConeDecomposition> {
    let dim = target.dim();
    if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: g.dim(),
        });
    }
    let rows = dim + 1;
    let a: Vec<Vec<Rational>> = (0..rows)
        .map(|r| generators.iter().map(|g| component(g, r, dim)).collect())
        .collect();
    let b = target.to_vector();
    let lambda = match solve_standard(&a, &b, &vec![Rational::zero(); generators.len()]) {
        StandardOutcome::Optimal { x, .. } => x,
        _ => {
            return Err(Error::NotInCone {
                separator: separator(target, generators),
            })
        }
    };
    let support: Vec<(usize, Rational)> = lambda
        .into_iter()
        .enumerate()
        .filter(|(_, l)| !l.is_zero())
        .collect();
    let support = reduce_support(generators, support);
    if support.len() > size_cap {
        return Err(Error::SupportCapExceeded {
            found: support.len(),
            cap: size_cap,
        });
    }
    Ok(ConeDecomposition { support })
}

fn component(f: &AffineForm, r: usize, dim: usize) -> Rational {
    if r < dim {
        f.coeffs[r].clone()
    } else {
        f.constant.clone()
    }
}

/// Cancel circuits: while the support generators admit a kernel vector `z`,
/// move along `−z` until the first coefficient (lowest index on ties) hits
/// zero.
pub fn reduce_support(generators: &[AffineForm], mut support: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    loop {
        if support.is_empty() {
            return support;
        }
        let rows = generators[support[0].0].dim() + 1;
        let dim = rows - 1;
        let m: Vec<Vec<Rational>> = (0..rows)
            .map(|r| support.iter().map(|(i, _)| component(&generators[*i], r, dim)).collect())
            .collect();
        let sol = solve_linear(&m, &vec![Rational::zero(); rows]).expect("shapes agree");
        let Some(mut z) = sol.kernel.into_iter().next() else {
            return support;
        };
        if !z.iter().any(Signed::is_positive) {
            z.iter_mut().for_each(|v| *v = -v.clone());
        }
        let mut best: Option<(usize, Rational)> = None;
        for (k, zk) in z.iter().enumerate() {
            if zk.is_positive() {
                let ratio = &support[k].1 / zk;
                if best.as_ref().is_none_or(|(_, r)| ratio < *r) {
                    best = Some((k, ratio));
                }
            }
        }
        let (hit, theta) = best.expect("kernel vector has a positive entry");
        for (k, zk) in z.iter().enumerate() {
            support[k].1 -= &theta * zk;
        }
        support[hit].1 = Rational::zero();
        support.retain(|(_, l)| !l.is_zero());
    }
}

fn separator(target: &AffineForm, generators: &[AffineForm]) -> Vec<Rational> {
    let n = target.dim() + 1;
    let as_functional = |f: &AffineForm, constant: i64| AffineForm::new(f.to_vector(), Rational::from_integer(constant.into()));
    let mut forms: Vec<AffineForm> = generators.iter().map(|g| as_functional(g, 0)).collect();
    forms.push(as_functional(target, 0).negated().shifted(&-Rational::one()));
    match solve_forms(&forms, n, None) {
        LpOutcome::Optimal { point, .. } | LpOutcome::Unbounded { point, .. } => point,
        LpOutcome::Infeasible(_) => unreachable!("Farkas alternative to an infeasible cone membership"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    #[test]
    fn generator_itself() {
        let g = vec![AffineForm::from_ints(&[1, 0], 0), AffineForm::from_ints(&[0, 1], 0)];
        let d = caratheodory_decompose(&g[0], &g, 1).unwrap();
        assert_eq!(d.support, vec![(0, int(1))]);
    }

    #[test]
    fn redundant_generators() {
        let b1 = AffineForm::from_ints(&[1, 0], 1);
        let b2 = AffineForm::from_ints(&[0, 1], 0);
        let b3 = AffineForm::from_ints(&[1, 1], 1);
        let mut target = b1.clone();
        target.add_scaled(&b2, &int(2));
        let gens = vec![b1, b2, b3];
        let d = caratheodory_decompose(&target, &gens, 2).unwrap();
        assert!(d.verify(&target, &gens));
        assert!(d.support.len() <= 2);
    }

    #[test]
    fn circuit_cancellation_shrinks_support() {
        let gens = vec![
            AffineForm::from_ints(&[1, 0], 0),
            AffineForm::from_ints(&[0, 1], 0),
            AffineForm::from_ints(&[1, 1], 0),
        ];
        let target = AffineForm::from_ints(&[2, 2], 0);
        let s = reduce_support(&gens, vec![(0, int(1)), (1, int(1)), (2, int(1))]);
        assert!(s.len() <= 2);
        assert!(ConeDecomposition { support: s }.verify(&target, &gens));
    }

    #[test]
    fn outside_cone_separated() {
        let gens = vec![AffineForm::from_ints(&[1], 0)];
        let target = AffineForm::from_ints(&[-1], 0);
        match caratheodory_decompose(&target, &gens, 2) {
            Err(Error::NotInCone { separator }) => assert!(verify_separator(&separator, &target, &gens)),
            other => panic!("{other:?}"),
        }
    }
}
