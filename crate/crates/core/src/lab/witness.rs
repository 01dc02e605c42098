//! Lower-bound witnesses: the unit cube, product doubling and the planar
//! counterexample on `{0, 1, 2, 5/2} × ℤ`.

use std::fmt;

use itertools::Itertools;

use super::radon::has_radon_partition;
use super::{check_configuration, common_point, helly_independent};
use crate::error::{Error, Result};
use crate::geometry::planar_hull_forms;
use crate::numeric::{fmt_point, int, rat, Point};
use crate::spaces::{Factor, GroundSet, SpaceDescriptor};
use crate::system::InequalitySystem;

/// `{0,1}ᵈ` in lexicographic order.
pub fn witness_cube(d: usize) -> Result<Vec<Point>> {
    if !(1..=6).contains(&d) {
        return Err(Error::precondition("cube witnesses are provided for 1 ≤ d ≤ 6"));
    }
    Ok((0..d).map(|_| [int(0), int(1)]).multi_cartesian_product().collect())
}

/// Intersection pattern of a family of hulls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternReport {
    /// A point of `M` in every hull, if any.
    pub total: Option<Point>,
    /// For each `i`, a point of `M` in every hull except the `i`-th.
    pub punctured: Vec<Option<Point>>,
}

impl PatternReport {
    /// Empty total intersection while every proper subfamily intersects.
    pub fn holds(&self) -> bool {
        self.total.is_none() && self.punctured.iter().all(Option::is_some)
    }
}

/// Exact intersection pattern of the traces `conv(C_i) ∩ M`.
pub fn verify_helly_pattern(family: &[Vec<Point>], ground: &GroundSet) -> Result<PatternReport> {
    if family.len() < 2 {
        return Err(Error::precondition("a Helly pattern needs at least two sets"));
    }
    for set in family {
        check_configuration(&dedup(set), ground)?;
    }
    let refs: Vec<&[Point]> = family.iter().map(Vec::as_slice).collect();
    let total = common_point(&refs, ground)?;
    let punctured = (0..family.len())
        .map(|i| {
            let sub: Vec<&[Point]> = refs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, s)| *s).collect();
            common_point(&sub, ground)
        })
        .collect::<Result<_>>()?;
    Ok(PatternReport { total, punctured })
}

fn dedup(set: &[Point]) -> Vec<Point> {
    let mut v = set.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Double a verified pattern of `h` hulls over `M` into `2h` hulls over
/// `M × ℤ`.
///
/// With `U` the union of all generators, the new sets are generated by
/// `(C_i × {j}) ∪ (U × {1 − j})`. Layer `j` of such a set is `C_i`'s trace and
/// layer `1 − j` is the trace of `conv U`, so the total intersection is empty
/// on both layers, while dropping `(i, j)` leaves the points of
/// `⋂_{k≠i} C_k` on layer `j`.
pub fn witness_double(family: &[Vec<Point>], space: &SpaceDescriptor) -> Result<Vec<Vec<Point>>> {
    let ground: GroundSet = space.clone().into();
    if !verify_helly_pattern(family, &ground)?.holds() {
        return Err(Error::precondition("input family does not have the Helly pattern"));
    }
    let union: Vec<Point> = dedup(&family.concat());
    let lift = |p: &Point, z: i64| -> Point {
        let mut q = p.clone();
        q.push(int(z));
        q
    };
    let doubled: Vec<Vec<Point>> = family
        .iter()
        .flat_map(|c| {
            let union = &union;
            (0..2).map(move |j| {
                c.iter()
                    .map(|p| lift(p, j))
                    .chain(union.iter().map(|p| lift(p, 1 - j)))
                    .collect()
            })
        })
        .collect();
    let lifted: GroundSet = space.product(&SpaceDescriptor::integers(1)).into();
    if !verify_helly_pattern(&doubled, &lifted)?.holds() {
        return Err(Error::precondition("doubled family lost the Helly pattern"));
    }
    Ok(doubled)
}

/// `A × {0, 1}` for a partition-free `A`, checked partition-free in `M × ℤ`.
pub fn witness_radon_double(points: &[Point], space: &SpaceDescriptor) -> Result<Vec<Point>> {
    let ground: GroundSet = space.clone().into();
    if points.is_empty() || has_radon_partition(points, &ground)? {
        return Err(Error::precondition("configuration is not partition-free"));
    }
    let doubled: Vec<Point> = (0..2)
        .flat_map(|z| {
            points.iter().map(move |p| {
                let mut q = p.clone();
                q.push(int(z));
                q
            })
        })
        .collect();
    let lifted: GroundSet = space.product(&SpaceDescriptor::integers(1)).into();
    if has_radon_partition(&doubled, &lifted)? {
        return Err(Error::precondition("doubled configuration admits a partition"));
    }
    Ok(doubled)
}

/// An infeasible system over `ℝⁿ × ℤᵈ` with `(n+1)·2ᵈ` forms whose proper
/// subsystems are all feasible.
///
/// With `g_v(x)` the ℓ₁ distance from `x` to the cube vertex `v` (written
/// as the linear form that agrees with it on the cube) and simplex forms
/// `s_0 = −1 − Σ y_i`, `s_j = y_j` summing to `−1`, the forms are
/// `g_v(x) + s_j(y) ≥ 0`. Dropping `(v, j)` admits `x = v` with `s_j = −1`
/// and the other `s` zero; keeping all of them fails at every lattice `x`
/// because some `g_v(x) ≤ 0`.
pub fn witness_tight_system(n: usize, d: usize) -> Result<InequalitySystem> {
    if d > 6 || n > 6 {
        return Err(Error::precondition("tight systems are provided for n, d ≤ 6"));
    }
    let dim = n + d;
    let mut forms = Vec::new();
    for v in (0..d).map(|_| [0i64, 1]).multi_cartesian_product() {
        for j in 0..=n {
            let mut coeffs = vec![int(0); dim];
            let mut constant = int(0);
            if j == 0 {
                coeffs[..n].iter_mut().for_each(|c| *c = int(-1));
                constant -= int(1);
            } else {
                coeffs[j - 1] = int(1);
            }
            for (i, &vi) in v.iter().enumerate() {
                if vi == 0 {
                    coeffs[n + i] = int(1);
                } else {
                    coeffs[n + i] = int(-1);
                    constant += int(1);
                }
            }
            forms.push(crate::numeric::AffineForm::new(coeffs, constant));
        }
    }
    InequalitySystem::new(SpaceDescriptor::mixed(n, d), forms)
}

/// `{0, 1, 2, 5/2} × ℤ`.
pub fn fig1_space() -> SpaceDescriptor {
    let line = Factor::finite([int(0), int(1), int(2), rat(5, 2)]).expect("distinct values");
    SpaceDescriptor::new(vec![line, Factor::Integer])
}

/// `A = {(0,0), (1,0), (1,1), (2,1), (5/2,2)}`.
pub fn fig1_points() -> Vec<Point> {
    vec![
        vec![int(0), int(0)],
        vec![int(1), int(0)],
        vec![int(1), int(1)],
        vec![int(2), int(1)],
        vec![rat(5, 2), int(2)],
    ]
}

/// The five hulls `conv(A ∖ {a})` written as one inequality system, forms
/// grouped by set in the order of `A`.
pub fn fig1_system() -> InequalitySystem {
    let a = fig1_points();
    let forms = (0..a.len())
        .flat_map(|i| {
            let rest: Vec<Point> = a.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
            planar_hull_forms(&rest)
        })
        .collect();
    InequalitySystem::new(fig1_space(), forms).expect("planar forms")
}

/// Verification transcript for the five sets `A ∖ {a}`.
#[derive(Debug, Clone)]
pub struct Fig1Report {
    pub space: SpaceDescriptor,
    pub points: Vec<Point>,
    pub pattern: PatternReport,
    pub independent: bool,
}

impl Fig1Report {
    pub fn holds(&self) -> bool {
        self.independent && self.pattern.holds()
    }
}

pub fn fig1() -> Result<Fig1Report> {
    let space = fig1_space();
    let ground: GroundSet = space.clone().into();
    let points = fig1_points();
    let family: Vec<Vec<Point>> = (0..points.len())
        .map(|i| points.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect())
        .collect();
    let pattern = verify_helly_pattern(&family, &ground)?;
    let independent = helly_independent(&points, &ground)?;
    Ok(Fig1Report {
        space,
        points,
        pattern,
        independent,
    })
}

impl fmt::Display for Fig1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "space: {}", self.space)?;
        writeln!(f, "A = {}", self.points.iter().map(|p| format!("({})", fmt_point(p))).join(" "))?;
        for (i, w) in self.pattern.punctured.iter().enumerate() {
            let a = fmt_point(&self.points[i]);
            match w {
                Some(p) => writeln!(f, "4-wise, all sets but A\\{{({a})}}: common point ({})", fmt_point(p))?,
                None => writeln!(f, "4-wise, all sets but A\\{{({a})}}: EMPTY")?,
            }
        }
        match &self.pattern.total {
            Some(p) => writeln!(f, "5-wise: common point ({})", fmt_point(p))?,
            None => writeln!(f, "5-wise: empty")?,
        }
        writeln!(f, "helly_independent={}", self.independent)?;
        write!(f, "VERIFIED {}", if self.holds() { "ok" } else { "FAILED" })
    }
}
