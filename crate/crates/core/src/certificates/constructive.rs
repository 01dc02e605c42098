//! Certificates built by projecting out the real coordinates.
//!
//! For a bounded full-dimensional `Q` with no point in `ℝⁿ × ℤᵈ`, every
//! facet form `a_j` of the projection `T(Q)` is a nonnegative combination of
//! at most `n+1` original forms tight on the preimage face. A `2ᵈ`-sized
//! lattice certificate `J` among the facets then lifts to the union of those
//! supports.

use num_traits::{One, Signed};

use super::{certificate_by_search, certify_indices, decide, Check, CertifyOptions, InfeasibilityCertificate, Method};
use crate::error::{Error, Result};
use crate::feasibility::lp::{coordinate_range, lp_feasible, solve_forms};
use crate::feasibility::{FeasibilityVerdict, LpOutcome};
use crate::geometry::{caratheodory_decompose, interior_margin, irredundant_indices, project_out_reals};
use crate::numeric::{AffineForm, Rational};
use crate::spaces::SpaceDescriptor;
use crate::system::InequalitySystem;

/// Where a form of a preprocessed system comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormOrigin {
    Original(usize),
    /// `±x_coord + t ≥ 0`; `upper` for the minus sign.
    Box { coord: usize, upper: bool },
}

/// Bounded, full-dimensional system with no point of the space, together
/// with the transcript of how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct Preprocessed {
    pub system: InequalitySystem,
    pub origin: Vec<FormOrigin>,
    /// Box radius, when a box was needed.
    pub t: Option<Rational>,
    /// Constant relaxation, when the polytope was lower-dimensional.
    pub epsilon: Option<Rational>,
}

impl Preprocessed {
    /// Original indices among `indices`, and whether any box form occurred.
    pub fn map_back(&self, indices: &[usize]) -> (Vec<usize>, bool) {
        let mut out = Vec::new();
        let mut boxed = false;
        for &i in indices {
            match self.origin[i] {
                FormOrigin::Original(j) => out.push(j),
                FormOrigin::Box { .. } => boxed = true,
            }
        }
        out.sort_unstable();
        out.dedup();
        (out, boxed)
    }
}

/// Box the polyhedron with `±x_i + t ≥ 0` when `t` is given, then relax
/// every constant by the largest `ε = 2^-j` keeping the relaxed polytope
/// free of space points if it is not full-dimensional.
///
/// The system must be infeasible over its space with a nonempty real
/// relaxation; an empty relaxation is handled by Farkas reduction instead.
pub fn lemma3_preprocess(
    system: &InequalitySystem,
    t: Option<&Rational>,
    options: &CertifyOptions,
) -> Result<Preprocessed> {
    let dim = system.dim();
    let mut forms = system.forms.clone();
    let mut origin: Vec<FormOrigin> = (0..system.len()).map(FormOrigin::Original).collect();
    if let Some(t) = t {
        for coord in 0..dim {
            for upper in [false, true] {
                let sign = if upper { -1 } else { 1 };
                forms.push(AffineForm::coordinate(dim, coord, sign, t.clone()));
                origin.push(FormOrigin::Box { coord, upper });
            }
        }
    }
    let boxed = InequalitySystem::new(system.space.clone(), forms)?;
    let margin = interior_margin(&boxed.forms, dim).ok_or(Error::EmptyPolyhedron)?;
    if margin.is_positive() {
        return Ok(Preprocessed {
            system: boxed,
            origin,
            t: t.cloned(),
            epsilon: None,
        });
    }
    let mut eps = Rational::new(1.into(), 2.into());
    for _ in 0..options.max_halvings {
        let relaxed = InequalitySystem {
            space: boxed.space.clone(),
            forms: boxed.forms.iter().map(|f| f.shifted(&eps)).collect(),
        };
        if !decide(&relaxed, options)?.is_feasible() {
            return Ok(Preprocessed {
                system: relaxed,
                origin,
                t: t.cloned(),
                epsilon: Some(eps),
            });
        }
        eps /= Rational::from_integer(2.into());
    }
    Err(Error::EpsilonExhausted {
        max_halvings: options.max_halvings,
    })
}

/// Certificate of size at most `(n+1)·2ᵈ` for a system over `ℝⁿ × ℤᵈ`,
/// following the projection argument.
///
/// An empty relaxation is reduced to at most `k+1` forms by a conic
/// decomposition of the Farkas combination. Otherwise an unbounded
/// polyhedron is boxed with radius `t = 1, 2, 4, …` until the certificate of
/// the boxed system stays infeasible with its box forms deleted, giving up
/// past `t_max`.
pub fn certificate_constructive(
    system: &InequalitySystem,
    options: &CertifyOptions,
) -> Result<InfeasibilityCertificate> {
    if system.space.has_finite() {
        return Err(Error::precondition("the constructive method needs a space R^n x Z^d"));
    }
    let dim = system.dim();
    let verdict = decide(system, options)?;
    if verdict.is_feasible() {
        return Err(Error::SystemFeasible);
    }
    if let FeasibilityVerdict::Infeasible { farkas } = &verdict {
        let combination = farkas.combination(&system.forms).expect("lengths agree");
        let dec = caratheodory_decompose(&combination, &system.forms, dim + 1)?;
        let checks = vec![Check::new(
            format!(
                "empty relaxation: Farkas support reduced to {} <= k+1 = {} forms",
                dec.support.len(),
                dim + 1
            ),
            dec.verify(&combination, &system.forms) && combination.is_constant() && combination.constant.is_negative(),
        )];
        return certify_indices(system, dec.indices(), Method::Constructive, checks, options);
    }
    let bounded = (0..dim).all(|c| matches!(coordinate_range(&system.forms, dim, c), Some((Some(_), Some(_)))));
    let mut t: Option<Rational> = if bounded { None } else { Some(Rational::one()) };
    loop {
        let attempt = match lemma3_preprocess(system, t.as_ref(), options) {
            // the box misses the polyhedron entirely
            Err(Error::EmptyPolyhedron) if t.is_some() => None,
            other => Some(other?),
        };
        if let Some(pre) = attempt {
            let (local, mut checks) = project_and_lift(&pre.system, options)?;
            let (indices, boxed) = pre.map_back(&local);
            if !boxed || !decide(&system.subsystem(&indices), options)?.is_feasible() {
                let mut transcript = Vec::new();
                if let Some(t) = &pre.t {
                    transcript.push(Check::new(format!("box t={t} not needed by the certificate"), true));
                }
                if let Some(eps) = &pre.epsilon {
                    transcript.push(Check::new(
                        format!("relaxation eps={eps} keeps the polytope free of space points"),
                        true,
                    ));
                }
                transcript.append(&mut checks);
                return certify_indices(system, indices, Method::Constructive, transcript, options);
            }
        }
        let next = t.map_or_else(Rational::one, |t| t * Rational::from_integer(2.into()));
        if next > options.t_max {
            return Err(Error::TmaxExceeded {
                t_max: options.t_max.clone(),
            });
        }
        t = Some(next);
    }
}

/// Core of the constructive method on a bounded, full-dimensional system
/// with no point of its space: indices into `system`.
fn project_and_lift(system: &InequalitySystem, options: &CertifyOptions) -> Result<(Vec<usize>, Vec<Check>)> {
    let n = system.space.n_real();
    let d = system.space.d_int();
    let dim = system.dim();
    let proj = project_out_reals(system, &system.space.real_coords())?;
    let mut checks = vec![Check::new(
        format!("projection onto {} integer coordinates: provenance identities", d),
        proj.verify(system),
    )];
    let facet_ids = irredundant_indices(&proj.system.forms, d)?;
    let facets = proj.restrict(&facet_ids);
    let projected = InequalitySystem::new(SpaceDescriptor::integers(d), facets.system.forms.clone())?;
    let lattice_cert = certificate_by_search(&projected, 1usize << d, options)?;
    checks.push(Check::new(
        format!(
            "facets={} lattice certificate J size {} <= 2^d = {}",
            facet_ids.len(),
            lattice_cert.size(),
            1usize << d
        ),
        lattice_cert.size() <= 1 << d,
    ));
    let mut union = Vec::new();
    for &j in &lattice_cert.indices {
        let a_j = facets.system.forms[j].embedded(dim, &facets.kept);
        let tight = tight_on_face(system, &a_j);
        let generators: Vec<AffineForm> = tight.iter().map(|&i| system.forms[i].clone()).collect();
        let dec = caratheodory_decompose(&a_j, &generators, n + 1)?;
        checks.push(Check::new(
            format!(
                "facet {j}: {} tight forms, decomposition support {} <= n+1 = {}",
                tight.len(),
                dec.support.len(),
                n + 1
            ),
            dec.verify(&a_j, &generators),
        ));
        union.extend(dec.indices().into_iter().map(|g| tight[g]));
    }
    union.sort_unstable();
    union.dedup();
    Ok((union, checks))
}

/// Forms vanishing on the face `{z ∈ Q : a(z) = 0}` of `Q`, where `a ≥ 0`
/// on `Q` defines a nonempty face.
fn tight_on_face(system: &InequalitySystem, a: &AffineForm) -> Vec<usize> {
    let dim = system.dim();
    let mut face = system.forms.clone();
    face.push(a.negated());
    debug_assert!(lp_feasible(&face, dim));
    (0..system.len())
        .filter(|&i| match solve_forms(&face, dim, Some(&system.forms[i])) {
            LpOutcome::Optimal { value, .. } => !value.is_positive(),
            _ => false,
        })
        .collect()
}
