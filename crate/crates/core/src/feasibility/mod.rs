//! Exact decision procedures: rational LP with Farkas certificates and
//! branch-and-bound feasibility/optimization over mixed spaces.
//!
//! Branch-and-bound explores depth first, lower branch first, splitting the
//! most fractional integer coordinate (ties by index) and otherwise the first
//! finite-set coordinate whose LP value is not a member. An infeasible
//! verdict carries either a Farkas certificate for the relaxation or the full
//! proof tree, whose leaves are Farkas certificates of the branch systems.

pub mod bounds;
pub mod lp;
pub(crate) mod simplex;

use num_traits::{Signed, Zero};

pub use bounds::{certified_box, certified_radius, BoundsBox};
pub use lp::{lp_solve, FarkasCertificate, LpOutcome};

use crate::error::{Error, Result};
use crate::numeric::{AffineForm, Point, Rational};
use crate::spaces::Factor;
use crate::system::InequalitySystem;
use bounds::finite_range_forms;
use lp::{coordinate_range, solve_forms};

/// How branch-and-bound obtains bounds on integer coordinates that the LP
/// relaxation leaves open.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum BoundsPolicy {
    /// Reject with [`Error::PotentiallyUnbounded`].
    #[default]
    Require,
    /// Intersect with a caller-supplied box. Verdicts then speak about the
    /// system restricted to that box.
    Given(BoundsBox),
    /// Intersect with [`certified_box`], which provably preserves both
    /// feasibility and finite optima over `M`.
    Certified,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedOptions {
    pub bounds: BoundsPolicy,
    pub node_cap: usize,
}

impl Default for MixedOptions {
    fn default() -> Self {
        Self {
            bounds: BoundsPolicy::Require,
            node_cap: 1_000_000,
        }
    }
}

impl MixedOptions {
    pub fn certified() -> Self {
        Self {
            bounds: BoundsPolicy::Certified,
            ..Self::default()
        }
    }
}

/// Form appended to the root of a branch-and-bound search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtraForm {
    /// `x_i ≥ min F` or `x_i ≤ max F` for a finite factor.
    FiniteRange { coord: usize, upper: bool },
    /// A side of the bounding box.
    Box { coord: usize, upper: bool, bound: Rational },
}

impl ExtraForm {
    fn form(&self, system: &InequalitySystem) -> Option<AffineForm> {
        let dim = system.dim();
        match self {
            ExtraForm::FiniteRange { coord, upper } => {
                let Some(Factor::Finite(values)) = system.space.factors.get(*coord) else {
                    return None;
                };
                Some(if *upper {
                    AffineForm::coordinate(dim, *coord, -1, values.last()?.clone())
                } else {
                    AffineForm::coordinate(dim, *coord, 1, -values.first()?.clone())
                })
            }
            ExtraForm::Box { coord, upper, bound } => {
                if *coord >= dim {
                    return None;
                }
                Some(if *upper {
                    AffineForm::coordinate(dim, *coord, -1, bound.clone())
                } else {
                    AffineForm::coordinate(dim, *coord, 1, -bound.clone())
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoxOrigin {
    None,
    Given(BoundsBox),
    Certified { radius: Rational },
}

/// One node of a branch-and-bound refutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofNode {
    /// Multipliers over the node system: original forms, then root extras,
    /// then the branch forms along the path.
    Leaf(FarkasCertificate),
    /// `x_coord ≤ below` and `x_coord ≥ above`; a missing side has no values
    /// of the factor.
    Split {
        coord: usize,
        below: Option<(Rational, Box<ProofNode>)>,
        above: Option<(Rational, Box<ProofNode>)>,
    },
}

impl ProofNode {
    pub fn leaves(&self) -> usize {
        match self {
            ProofNode::Leaf(_) => 1,
            ProofNode::Split { below, above, .. } => {
                below.as_ref().map_or(0, |(_, n)| n.leaves()) + above.as_ref().map_or(0, |(_, n)| n.leaves())
            }
        }
    }
}

/// Exhaustion record of an infeasible branch-and-bound search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRecord {
    pub extras: Vec<ExtraForm>,
    pub origin: BoxOrigin,
    pub root: ProofNode,
    pub nodes: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum FeasibilityVerdict {
    Feasible { witness: Point },
    /// The real relaxation is already empty.
    Infeasible { farkas: FarkasCertificate },
    InfeasibleByExhaustion(SearchRecord),
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityVerdict::Feasible { .. })
    }

    pub fn witness(&self) -> Option<&Point> {
        match self {
            FeasibilityVerdict::Feasible { witness } => Some(witness),
            _ => None,
        }
    }

    /// Re-check the verdict from scratch against `system`.
    pub fn verify(&self, system: &InequalitySystem) -> bool {
        match self {
            FeasibilityVerdict::Feasible { witness } => {
                witness.len() == system.dim() && system.space.contains(witness) && system.satisfied_by(witness)
            }
            FeasibilityVerdict::Infeasible { farkas } => farkas.verify(&system.forms),
            FeasibilityVerdict::InfeasibleByExhaustion(record) => verify_exhaustion(system, record),
        }
    }
}

/// Independent check of an exhaustion record: extras are legitimate for the
/// space (a certified box is recomputed, a given box is accepted as the
/// stated restriction), every split leaves no factor value uncovered, and
/// every leaf certificate verifies over its node system.
pub fn verify_exhaustion(system: &InequalitySystem, record: &SearchRecord) -> bool {
    let mut root_forms = system.forms.clone();
    for extra in &record.extras {
        match (extra, &record.origin) {
            (ExtraForm::FiniteRange { .. }, _) => {}
            (ExtraForm::Box { coord, upper, bound }, BoxOrigin::Certified { radius }) => {
                let expected = if *upper { radius.clone() } else { -radius.clone() };
                if *radius != certified_radius(system)
                    || *bound != expected
                    || system.space.factors.get(*coord) != Some(&Factor::Integer)
                {
                    return false;
                }
            }
            (ExtraForm::Box { coord, upper, bound }, BoxOrigin::Given(b)) => {
                let side = if *upper { b.upper.get(*coord) } else { b.lower.get(*coord) };
                if side.cloned().flatten().as_ref() != Some(bound) {
                    return false;
                }
            }
            (ExtraForm::Box { .. }, BoxOrigin::None) => return false,
        }
        match extra.form(system) {
            Some(f) => root_forms.push(f),
            None => return false,
        }
    }
    verify_node(system, &record.root, &mut root_forms)
}

fn verify_node(system: &InequalitySystem, node: &ProofNode, forms: &mut Vec<AffineForm>) -> bool {
    match node {
        ProofNode::Leaf(cert) => cert.verify(forms),
        ProofNode::Split { coord, below, above } => {
            let Some(factor) = system.space.factors.get(*coord) else {
                return false;
            };
            if !split_covers(factor, below.as_ref().map(|b| &b.0), above.as_ref().map(|a| &a.0)) {
                return false;
            }
            let dim = system.dim();
            for (side, upper) in [(below, true), (above, false)] {
                if let Some((value, child)) = side {
                    let f = if upper {
                        AffineForm::coordinate(dim, *coord, -1, value.clone())
                    } else {
                        AffineForm::coordinate(dim, *coord, 1, -value.clone())
                    };
                    forms.push(f);
                    let ok = verify_node(system, child, forms);
                    forms.pop();
                    if !ok {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// No value of `factor` lies strictly between the two sides, and a missing
/// side has no values at all.
fn split_covers(factor: &Factor, below: Option<&Rational>, above: Option<&Rational>) -> bool {
    match factor {
        Factor::Real => false,
        Factor::Integer => match (below, above) {
            (Some(b), Some(a)) => Rational::from_integer(b.floor().to_integer() + 1) >= *a,
            _ => false,
        },
        Factor::Finite(values) => values.iter().all(|v| {
            below.is_some_and(|b| v <= b) || above.is_some_and(|a| v >= a)
        }),
    }
}

/// Result of [`sup_over_space`].
#[derive(Debug, Clone, PartialEq)]
pub enum SupResult {
    Max { value: Rational, witness: Point },
    Unbounded,
    Infeasible,
}

impl SupResult {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            SupResult::Max { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Decide whether some `x ∈ M` satisfies every form.
pub fn mixed_feasible(system: &InequalitySystem, options: &MixedOptions) -> Result<FeasibilityVerdict> {
    let dim = system.dim();
    match solve_forms(&system.forms, dim, None) {
        LpOutcome::Infeasible(farkas) => return Ok(FeasibilityVerdict::Infeasible { farkas }),
        LpOutcome::Optimal { point, .. } | LpOutcome::Unbounded { point, .. } => {
            if system.space.contains(&point) {
                return Ok(FeasibilityVerdict::Feasible { witness: point });
            }
        }
    }
    let (extras, origin) = root_extras(system, &options.bounds)?;
    let mut search = Search::new(system, &extras, options.node_cap, None);
    match search.explore()? {
        Explored::Found(witness) => Ok(FeasibilityVerdict::Feasible { witness }),
        Explored::Refuted(root) => Ok(FeasibilityVerdict::InfeasibleByExhaustion(SearchRecord {
            extras,
            origin,
            root,
            nodes: search.nodes,
        })),
    }
}

/// Exact `sup{objective(x) : x ∈ M, a_i(x) ≥ 0}`.
///
/// Unboundedness is read off the LP relaxation: for rational data a feasible
/// mixed problem is unbounded exactly when its relaxation is. Bounded
/// problems attain their supremum, which branch-and-bound returns together
/// with a maximizer.
pub fn sup_over_space(
    system: &InequalitySystem,
    objective: &AffineForm,
    options: &MixedOptions,
) -> Result<SupResult> {
    let dim = system.dim();
    if objective.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: objective.dim(),
        });
    }
    let mut relax = system.forms.clone();
    relax.extend(finite_range_forms(system).into_iter().map(|(_, _, f)| f));
    match solve_forms(&relax, dim, Some(objective)) {
        LpOutcome::Infeasible(_) => return Ok(SupResult::Infeasible),
        LpOutcome::Unbounded { .. } => {
            let opts = MixedOptions {
                bounds: BoundsPolicy::Certified,
                node_cap: options.node_cap,
            };
            return Ok(if mixed_feasible(system, &opts)?.is_feasible() {
                SupResult::Unbounded
            } else {
                SupResult::Infeasible
            });
        }
        LpOutcome::Optimal { .. } => {}
    }
    let (extras, _) = root_extras(system, &options.bounds)?;
    let mut search = Search::new(system, &extras, options.node_cap, Some(objective));
    search.explore()?;
    Ok(match search.incumbent {
        Some((value, witness)) => SupResult::Max { value, witness },
        None => SupResult::Infeasible,
    })
}

fn root_extras(system: &InequalitySystem, policy: &BoundsPolicy) -> Result<(Vec<ExtraForm>, BoxOrigin)> {
    let dim = system.dim();
    let mut extras: Vec<ExtraForm> = finite_range_forms(system)
        .into_iter()
        .map(|(coord, upper, _)| ExtraForm::FiniteRange { coord, upper })
        .collect();
    let int_coords: Vec<usize> = (0..dim)
        .filter(|&i| system.space.factors[i] == Factor::Integer)
        .collect();
    let origin = match policy {
        BoundsPolicy::Certified => {
            if int_coords.is_empty() {
                BoxOrigin::None
            } else {
                let radius = certified_radius(system);
                for &coord in &int_coords {
                    extras.push(ExtraForm::Box {
                        coord,
                        upper: false,
                        bound: -radius.clone(),
                    });
                    extras.push(ExtraForm::Box {
                        coord,
                        upper: true,
                        bound: radius.clone(),
                    });
                }
                BoxOrigin::Certified { radius }
            }
        }
        BoundsPolicy::Given(b) => {
            if b.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: b.dim(),
                });
            }
            for coord in 0..dim {
                if let Some(lo) = &b.lower[coord] {
                    extras.push(ExtraForm::Box {
                        coord,
                        upper: false,
                        bound: lo.clone(),
                    });
                }
                if let Some(hi) = &b.upper[coord] {
                    extras.push(ExtraForm::Box {
                        coord,
                        upper: true,
                        bound: hi.clone(),
                    });
                }
            }
            BoxOrigin::Given(b.clone())
        }
        BoundsPolicy::Require => BoxOrigin::None,
    };
    if !matches!(policy, BoundsPolicy::Certified) {
        let mut forms = system.forms.clone();
        forms.extend(extras.iter().filter_map(|e| e.form(system)));
        for &coord in &int_coords {
            match coordinate_range(&forms, dim, coord) {
                None => break,
                Some((Some(_), Some(_))) => {}
                Some(_) => return Err(Error::PotentiallyUnbounded { coord }),
            }
        }
    }
    Ok((extras, origin))
}

enum Explored {
    Found(Point),
    Refuted(ProofNode),
}

enum Visit {
    Done(Explored),
    Branch {
        coord: usize,
        below: Option<Rational>,
        above: Option<Rational>,
    },
}

/// A split whose sides are explored one after the other.
struct Frame {
    coord: usize,
    pending: [Option<(Rational, bool)>; 2],
    current: Option<(Rational, bool)>,
    below: Option<(Rational, Box<ProofNode>)>,
    above: Option<(Rational, Box<ProofNode>)>,
}

struct Search<'a> {
    system: &'a InequalitySystem,
    forms: Vec<AffineForm>,
    /// Number of forms before the branch bounds.
    base: usize,
    /// `(coord, upper)` of each branch bound, parallel to `forms[base..]`.
    path: Vec<(usize, bool)>,
    objective: Option<&'a AffineForm>,
    incumbent: Option<(Rational, Point)>,
    nodes: usize,
    node_cap: usize,
}

impl<'a> Search<'a> {
    fn new(
        system: &'a InequalitySystem,
        extras: &[ExtraForm],
        node_cap: usize,
        objective: Option<&'a AffineForm>,
    ) -> Self {
        let mut forms = system.forms.clone();
        forms.extend(extras.iter().filter_map(|e| e.form(system)));
        Self {
            system,
            base: forms.len(),
            forms,
            path: Vec::new(),
            objective,
            incumbent: None,
            nodes: 0,
            node_cap,
        }
    }

    /// Depth-first search with an explicit stack; proof trees can be as deep
    /// as the box is wide.
    fn explore(&mut self) -> Result<Explored> {
        let mut stack: Vec<Frame> = Vec::new();
        let mut step = self.visit()?;
        loop {
            let mut result = match step {
                Visit::Done(r) => Some(r),
                Visit::Branch { coord, below, above } => {
                    stack.push(Frame {
                        coord,
                        pending: [below.map(|v| (v, true)), above.map(|v| (v, false))],
                        current: None,
                        below: None,
                        above: None,
                    });
                    None
                }
            };
            // hand the result to the innermost frame awaiting it, closing
            // frames that have no side left to explore
            loop {
                let Some(frame) = stack.last_mut() else {
                    return Ok(result.expect("the root reports a result"));
                };
                if let Some((v, upper)) = frame.current.take() {
                    self.forms.pop();
                    self.path.pop();
                    match result.take().expect("a child reports a result") {
                        Explored::Found(p) => return Ok(Explored::Found(p)),
                        Explored::Refuted(child) => {
                            let slot = if upper { &mut frame.below } else { &mut frame.above };
                            *slot = Some((v, Box::new(child)));
                        }
                    }
                }
                if let Some((v, upper)) = frame.pending.iter_mut().find_map(Option::take) {
                    let dim = self.system.dim();
                    let f = if upper {
                        AffineForm::coordinate(dim, frame.coord, -1, v.clone())
                    } else {
                        AffineForm::coordinate(dim, frame.coord, 1, -v.clone())
                    };
                    self.forms.push(f);
                    self.path.push((frame.coord, upper));
                    frame.current = Some((v, upper));
                    break;
                }
                let frame = stack.pop().expect("non-empty");
                result = Some(Explored::Refuted(ProofNode::Split {
                    coord: frame.coord,
                    below: frame.below,
                    above: frame.above,
                }));
            }
            step = self.visit()?;
        }
    }

    /// Solve the LP of the current node.
    fn visit(&mut self) -> Result<Visit> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::NodeCap { cap: self.node_cap });
        }
        let dim = self.system.dim();
        let active = self.active_forms();
        let lp_forms: Vec<AffineForm> = active.iter().map(|&i| self.forms[i].clone()).collect();
        let (point, value) = match solve_forms(&lp_forms, dim, self.objective) {
            LpOutcome::Infeasible(cert) => {
                let mut multipliers = vec![Rational::zero(); self.forms.len()];
                for (&i, l) in active.iter().zip(cert.multipliers) {
                    multipliers[i] = l;
                }
                return Ok(Visit::Done(Explored::Refuted(ProofNode::Leaf(FarkasCertificate { multipliers }))));
            }
            LpOutcome::Optimal { point, value } => (point, value),
            LpOutcome::Unbounded { point, .. } => (point, Rational::zero()),
        };
        let pruned = || {
            Visit::Done(Explored::Refuted(ProofNode::Split {
                coord: usize::MAX,
                below: None,
                above: None,
            }))
        };
        if self.objective.is_some() {
            if let Some((best, _)) = &self.incumbent {
                if value <= *best {
                    return Ok(pruned());
                }
            }
        }
        let Some(coord) = self.branch_coordinate(&point) else {
            if self.objective.is_some() {
                self.incumbent = Some((value, point));
                return Ok(pruned());
            }
            return Ok(Visit::Done(Explored::Found(point)));
        };
        let (below, above) = self.system.space.factors[coord].neighbours(&point[coord]);
        Ok(Visit::Branch { coord, below, above })
    }

    /// Base forms plus, per coordinate and side, the latest branch bound.
    /// Branching happens strictly inside the current bounds, so the latest
    /// bound implies every earlier one on the same side.
    fn active_forms(&self) -> Vec<usize> {
        let mut seen: Vec<(usize, bool)> = Vec::new();
        let mut tail = Vec::new();
        for (k, key) in self.path.iter().enumerate().rev() {
            if !seen.contains(key) {
                seen.push(*key);
                tail.push(self.base + k);
            }
        }
        tail.reverse();
        (0..self.base).chain(tail).collect()
    }

    /// Most fractional integer coordinate (ties by index), else the first
    /// finite coordinate off its value list.
    fn branch_coordinate(&self, point: &[Rational]) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, f) in self.system.space.factors.iter().enumerate() {
            if *f != Factor::Integer || point[i].is_integer() {
                continue;
            }
            let frac = point[i].fract().abs();
            let dist = std::cmp::min(frac.clone(), Rational::from_integer(1.into()) - frac);
            if best.as_ref().is_none_or(|(_, d)| dist > *d) {
                best = Some((i, dist));
            }
        }
        if let Some((i, _)) = best {
            return Some(i);
        }
        self.system
            .space
            .factors
            .iter()
            .enumerate()
            .find(|(i, f)| matches!(f, Factor::Finite(_)) && !f.contains(&point[*i]))
            .map(|(i, _)| i)
    }
}
