//! Small infeasibility certificates and optimality supports over mixed spaces.
//!
//! Subsystems are decided with [`BoundsPolicy::Certified`], so subsets whose
//! relaxation leaves integer coordinates unbounded are still decided exactly.

mod constructive;

use std::fmt;

use itertools::Itertools;
use num_traits::One;

pub use constructive::{certificate_constructive, lemma3_preprocess, FormOrigin, Preprocessed};

use crate::error::{Error, Result};
use crate::feasibility::{mixed_feasible, sup_over_space, BoundsPolicy, FeasibilityVerdict, MixedOptions, SupResult};
use crate::numeric::{AffineForm, Point, Rational};
use crate::system::InequalitySystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Search,
    Constructive,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Search => "search",
            Method::Constructive => "constructive",
        })
    }
}

/// One verification performed while building a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
}

impl Check {
    fn new(label: impl Into<String>, passed: bool) -> Self {
        Self {
            label: label.into(),
            passed,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} {}", self.label, if self.passed { "ok" } else { "FAILED" })
    }
}

/// A subsystem already infeasible over the space of the full system.
#[derive(Debug, Clone, PartialEq)]
pub struct InfeasibilityCertificate {
    pub method: Method,
    /// Sorted indices into the system's forms.
    pub indices: Vec<usize>,
    /// Verdict of the subsystem, whose form `j` is `indices[j]`.
    pub verdict: FeasibilityVerdict,
    pub checks: Vec<Check>,
}

impl InfeasibilityCertificate {
    pub fn size(&self) -> usize {
        self.indices.len()
    }

    /// Independent re-check of the stored verdict against `system`.
    pub fn verify(&self, system: &InequalitySystem) -> bool {
        self.indices.iter().all(|&i| i < system.len())
            && !self.verdict.is_feasible()
            && self.verdict.verify(&system.subsystem(&self.indices))
    }

    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for InfeasibilityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CERT infeasible method={} size={} indices={}",
            self.method,
            self.size(),
            self.indices.iter().join(",")
        )?;
        for c in &self.checks {
            write!(f, "\n{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifyOptions {
    pub node_cap: usize,
    /// Largest box radius tried by the constructive method.
    pub t_max: Rational,
    /// Bound on the halvings of ε and δ.
    pub max_halvings: u32,
    /// Starting δ of the support reduction.
    pub delta0: Rational,
    pub parallel: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            node_cap: 200_000,
            t_max: Rational::from_integer(1_048_576.into()),
            max_halvings: 40,
            delta0: Rational::one(),
            parallel: cfg!(feature = "parallel"),
        }
    }
}

impl CertifyOptions {
    pub(crate) fn mixed(&self) -> MixedOptions {
        MixedOptions {
            bounds: BoundsPolicy::Certified,
            node_cap: self.node_cap,
        }
    }
}

/// Decide a system over its space with certified bounds.
pub fn decide(system: &InequalitySystem, options: &CertifyOptions) -> Result<FeasibilityVerdict> {
    mixed_feasible(system, &options.mixed())
}

/// Lexicographically first subsystem of minimum cardinality that is
/// infeasible over the space, searching sizes `1..=budget`.
pub fn certificate_by_search(
    system: &InequalitySystem,
    budget: usize,
    options: &CertifyOptions,
) -> Result<InfeasibilityCertificate> {
    if budget == 0 {
        return Err(Error::precondition("certificate budget must be positive"));
    }
    if decide(system, options)?.is_feasible() {
        return Err(Error::SystemFeasible);
    }
    for size in 1..=budget.min(system.len()) {
        if let Some(found) = first_infeasible(system, size, options)? {
            let (indices, verdict) = found;
            return Ok(finish_search(system, indices, verdict, budget, options));
        }
    }
    Err(Error::NoCertificateWithinBudget { budget })
}

type Found = (Vec<usize>, FeasibilityVerdict);

fn first_infeasible(system: &InequalitySystem, size: usize, options: &CertifyOptions) -> Result<Option<Found>> {
    let test = |subset: Vec<usize>| -> Option<Result<Found>> {
        match decide(&system.subsystem(&subset), options) {
            Ok(v) if v.is_feasible() => None,
            Ok(v) => Some(Ok((subset, v))),
            Err(e) => Some(Err(e)),
        }
    };
    #[cfg(feature = "parallel")]
    if options.parallel {
        use rayon::prelude::*;
        let subsets: Vec<Vec<usize>> = (0..system.len()).combinations(size).collect();
        return subsets.into_par_iter().find_map_first(test).transpose();
    }
    (0..system.len()).combinations(size).find_map(test).transpose()
}

fn finish_search(
    system: &InequalitySystem,
    indices: Vec<usize>,
    verdict: FeasibilityVerdict,
    budget: usize,
    options: &CertifyOptions,
) -> InfeasibilityCertificate {
    let mut checks = vec![
        Check::new(
            format!("subsystem infeasible over {} ({})", system.space, verdict_kind(&verdict)),
            verdict.verify(&system.subsystem(&indices)),
        ),
        Check::new(format!("size {} <= budget {budget}", indices.len()), indices.len() <= budget),
    ];
    checks.push(irreducible_check(system, &indices, options));
    InfeasibilityCertificate {
        method: Method::Search,
        indices,
        verdict,
        checks,
    }
}

pub(crate) fn verdict_kind(v: &FeasibilityVerdict) -> &'static str {
    match v {
        FeasibilityVerdict::Feasible { .. } => "feasible",
        FeasibilityVerdict::Infeasible { .. } => "farkas",
        FeasibilityVerdict::InfeasibleByExhaustion(_) => "exhaustion",
    }
}

/// Every subsystem obtained by dropping one index has a solution.
fn irreducible_check(system: &InequalitySystem, indices: &[usize], options: &CertifyOptions) -> Check {
    let ok = (0..indices.len()).all(|skip| {
        let rest: Vec<usize> = indices.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &i)| i).collect();
        decide(&system.subsystem(&rest), options).is_ok_and(|v| v.verify(&system.subsystem(&rest)) && v.is_feasible())
    });
    Check::new("irreducible: dropping any index leaves a solvable subsystem", ok)
}

/// Build a certificate from indices found by other means, deciding and
/// verifying the subsystem afresh.
pub(crate) fn certify_indices(
    system: &InequalitySystem,
    mut indices: Vec<usize>,
    method: Method,
    mut checks: Vec<Check>,
    options: &CertifyOptions,
) -> Result<InfeasibilityCertificate> {
    indices.sort_unstable();
    indices.dedup();
    let sub = system.subsystem(&indices);
    let verdict = decide(&sub, options)?;
    checks.push(Check::new(
        format!("subsystem infeasible over {} ({})", system.space, verdict_kind(&verdict)),
        !verdict.is_feasible() && verdict.verify(&sub),
    ));
    if let Some(h) = system.space.helly_budget().value() {
        checks.push(Check::new(format!("size {} <= budget {h}", indices.len()), indices.len() as u64 <= h));
    }
    Ok(InfeasibilityCertificate {
        method,
        indices,
        verdict,
        checks,
    })
}

/// At most `h − 1` forms whose supremum of the objective equals the
/// supremum over the whole system.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportCertificate {
    pub indices: Vec<usize>,
    pub mu: Rational,
    pub maximizer: Point,
    /// The last δ used; the augmented system with `c − μ − δ ≥ 0` is
    /// infeasible on `indices` for this δ and the one before it.
    pub delta: Rational,
    pub checks: Vec<Check>,
}

impl fmt::Display for SupportCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SUPPORT mu={} size={} indices={} delta={}",
            self.mu,
            self.indices.len(),
            self.indices.iter().join(","),
            self.delta
        )?;
        for c in &self.checks {
            write!(f, "\n{c}")?;
        }
        Ok(())
    }
}

/// Reduce the system to at most `budget − 1` forms with the same supremum.
///
/// For shrinking `δ` the augmented system `{b_i ≥ 0} ∪ {c − μ − δ ≥ 0}` is
/// infeasible and has a search certificate, which must contain the objective
/// form. Halving stops once two successive δ give the same index set and
/// that set's supremum is exactly `μ`.
pub fn support_reduce(
    system: &InequalitySystem,
    objective: &AffineForm,
    budget: usize,
    options: &CertifyOptions,
) -> Result<SupportCertificate> {
    if budget == 0 {
        return Err(Error::precondition("support budget must be positive"));
    }
    let (mu, maximizer) = match sup_over_space(system, objective, &options.mixed())? {
        SupResult::Max { value, witness } => (value, witness),
        SupResult::Unbounded => return Err(Error::SupremumUnbounded),
        SupResult::Infeasible => return Err(Error::SupremumInfeasible),
    };
    let m = system.len();
    let mut delta = options.delta0.clone();
    let mut previous: Option<Vec<usize>> = None;
    let two = Rational::from_integer(2.into());
    for _ in 0..=options.max_halvings {
        let cut = objective.shifted(&-(&mu + &delta));
        let aug = system.with_form(cut);
        let cert = certificate_by_search(&aug, budget, options)?;
        if !cert.indices.contains(&m) {
            return Err(Error::precondition("system is infeasible without the objective cut"));
        }
        let indices: Vec<usize> = cert.indices.iter().copied().filter(|&i| i != m).collect();
        if previous.as_ref() == Some(&indices) {
            let sub = system.subsystem(&indices);
            let sub_sup = sup_over_space(&sub, objective, &options.mixed())?;
            if sub_sup.value() == Some(&mu) {
                let checks = vec![
                    Check::new(format!("sup over subsystem equals mu={mu}"), true),
                    Check::new(
                        format!("size {} <= budget-1 {}", indices.len(), budget - 1),
                        indices.len() < budget,
                    ),
                    Check::new(
                        "maximizer attains mu",
                        system.satisfied_by(&maximizer) && objective.eval(&maximizer) == mu,
                    ),
                ];
                return Ok(SupportCertificate {
                    indices,
                    mu,
                    maximizer,
                    delta,
                    checks,
                });
            }
        }
        previous = Some(indices);
        delta /= &two;
    }
    Err(Error::EpsilonExhausted {
        max_halvings: options.max_halvings,
    })
}

/// Supremum of `objective` over the subsystem at `indices`; `None` when
/// unbounded or infeasible.
pub fn subsystem_sup(
    system: &InequalitySystem,
    indices: &[usize],
    objective: &AffineForm,
    options: &CertifyOptions,
) -> Result<Option<Rational>> {
    Ok(sup_over_space(&system.subsystem(indices), objective, &options.mixed())?
        .value()
        .cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use crate::spaces::SpaceDescriptor;

    #[test]
    fn integer_interval_certificate() {
        let sys = InequalitySystem::new(
            SpaceDescriptor::integers(1),
            vec![
                AffineForm::new(vec![int(1)], rat(-1, 2)),
                AffineForm::new(vec![int(-1)], rat(3, 4)),
                AffineForm::from_ints(&[1], 10),
            ],
        )
        .unwrap();
        let c = certificate_by_search(&sys, 2, &CertifyOptions::default()).unwrap();
        assert_eq!(c.indices, vec![0, 1]);
        assert!(c.verify(&sys));
        assert!(c.all_checks_passed());
        assert_eq!(
            c.to_string().lines().next().unwrap(),
            "CERT infeasible method=search size=2 indices=0,1"
        );
    }

    #[test]
    fn feasible_system_rejected() {
        let sys = InequalitySystem::new(SpaceDescriptor::integers(1), vec![AffineForm::from_ints(&[1], 0)]).unwrap();
        assert_eq!(
            certificate_by_search(&sys, 2, &CertifyOptions::default()),
            Err(Error::SystemFeasible)
        );
    }

    #[test]
    fn support_of_integer_cap() {
        // maximize y over {y ≤ 3/2, y ≤ 5, x + y ≤ 100} in ℝ×ℤ
        let sys = InequalitySystem::new(
            SpaceDescriptor::mixed(1, 1),
            vec![
                AffineForm::new(vec![int(0), int(-1)], rat(3, 2)),
                AffineForm::from_ints(&[0, -1], 5),
                AffineForm::from_ints(&[-1, -1], 100),
            ],
        )
        .unwrap();
        let obj = AffineForm::from_ints(&[0, 1], 0);
        let s = support_reduce(&sys, &obj, 4, &CertifyOptions::default()).unwrap();
        assert_eq!(s.mu, int(1));
        assert_eq!(s.indices, vec![0]);
        assert!(s.checks.iter().all(|c| c.passed));
    }

    #[test]
    fn constant_objective_has_empty_support() {
        let sys = InequalitySystem::new(SpaceDescriptor::integers(1), vec![AffineForm::from_ints(&[1], 0)]).unwrap();
        let s = support_reduce(&sys, &AffineForm::from_ints(&[0], 0), 2, &CertifyOptions::default()).unwrap();
        assert_eq!(s.mu, int(0));
        assert!(s.indices.is_empty());
    }
}
