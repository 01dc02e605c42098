//! Ground sets `M = F₁ × … × F_k`, each factor ℝ, ℤ or a finite set of
//! rationals, plus finite point clouds used as ground sets by the planar
//! Helly/Radon oracles.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::feasibility::lp::{coordinate_range, solve_forms, LpOutcome};
use crate::numeric::{ceil, floor, parse_rational, AffineForm, Point, Rational};
use crate::system::InequalitySystem;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Factor {
    Real,
    Integer,
    /// Sorted, duplicate-free, non-empty.
    Finite(Vec<Rational>),
}

impl Factor {
    pub fn finite(values: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let mut v: Vec<Rational> = values.into_iter().collect();
        v.sort();
        v.dedup();
        if v.is_empty() {
            return Err(Error::precondition("finite factor must be non-empty"));
        }
        Ok(Factor::Finite(v))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            Factor::Real => true,
            Factor::Integer => x.is_integer(),
            Factor::Finite(values) => values.binary_search(x).is_ok(),
        }
    }

    /// Values of a discrete factor inside `[lo, hi]`; `None` for ℝ or an
    /// unbounded integer range.
    pub fn values_in(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Option<Vec<Rational>> {
        match self {
            Factor::Real => None,
            Factor::Integer => {
                let (lo, hi) = (lo?, hi?);
                let mut v = Vec::new();
                let mut z = ceil(lo);
                let top = floor(hi);
                while z <= top {
                    v.push(Rational::from_integer(z.clone()));
                    z += BigInt::one();
                }
                Some(v)
            }
            Factor::Finite(values) => Some(
                values
                    .iter()
                    .filter(|x| lo.is_none_or(|l| *x >= l) && hi.is_none_or(|h| *x <= h))
                    .cloned()
                    .collect(),
            ),
        }
    }

    /// Largest member `≤ x` and smallest member `≥ x` of a discrete factor.
    pub(crate) fn neighbours(&self, x: &Rational) -> (Option<Rational>, Option<Rational>) {
        match self {
            Factor::Real => (Some(x.clone()), Some(x.clone())),
            Factor::Integer => (
                Some(Rational::from_integer(floor(x))),
                Some(Rational::from_integer(ceil(x))),
            ),
            Factor::Finite(values) => {
                let below = values.iter().rev().find(|v| *v <= x).cloned();
                let above = values.iter().find(|v| *v >= x).cloned();
                (below, above)
            }
        }
    }

    fn label(&self) -> String {
        match self {
            Factor::Real => "R".into(),
            Factor::Integer => "Z".into(),
            Factor::Finite(v) => format!("{{{}}}", v.iter().join(",")),
        }
    }
}

/// Ordered product of factors; coordinates map positionally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpaceDescriptor {
    pub factors: Vec<Factor>,
}

/// Certified Helly number of a space, when one is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HellyBudget {
    Known(u64),
    Unknown,
}

impl HellyBudget {
    pub fn value(self) -> Option<u64> {
        match self {
            HellyBudget::Known(h) => Some(h),
            HellyBudget::Unknown => None,
        }
    }
}

impl SpaceDescriptor {
    pub fn new(factors: Vec<Factor>) -> Self {
        Self { factors }
    }

    /// `ℝⁿ × ℤᵈ` with the real factors first.
    pub fn mixed(n_real: usize, d_int: usize) -> Self {
        let mut factors = vec![Factor::Real; n_real];
        factors.extend(std::iter::repeat_n(Factor::Integer, d_int));
        Self { factors }
    }

    pub fn reals(n: usize) -> Self {
        Self::mixed(n, 0)
    }

    pub fn integers(d: usize) -> Self {
        Self::mixed(0, d)
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn n_real(&self) -> usize {
        self.factors.iter().filter(|f| **f == Factor::Real).count()
    }

    pub fn d_int(&self) -> usize {
        self.factors.iter().filter(|f| **f == Factor::Integer).count()
    }

    pub fn has_finite(&self) -> bool {
        self.factors.iter().any(|f| matches!(f, Factor::Finite(_)))
    }

    pub fn has_real(&self) -> bool {
        self.factors.contains(&Factor::Real)
    }

    /// Only ℝ and ℤ factors, the setting of the `(n+1)·2ᵈ` bound.
    pub fn is_mixed_integer(&self) -> bool {
        !self.has_finite()
    }

    pub fn real_coords(&self) -> Vec<usize> {
        self.coords_where(|f| *f == Factor::Real)
    }

    pub fn discrete_coords(&self) -> Vec<usize> {
        self.coords_where(|f| *f != Factor::Real)
    }

    fn coords_where(&self, pred: impl Fn(&Factor) -> bool) -> Vec<usize> {
        self.factors
            .iter()
            .enumerate()
            .filter(|(_, f)| pred(f))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn without_coord(&self, coord: usize) -> Self {
        let mut factors = self.factors.clone();
        factors.remove(coord);
        Self { factors }
    }

    pub fn product(&self, other: &SpaceDescriptor) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self { factors }
    }

    pub fn member(&self, point: &[Rational]) -> Result<bool> {
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: point.len(),
            });
        }
        Ok(self.contains(point))
    }

    pub(crate) fn contains(&self, point: &[Rational]) -> bool {
        self.factors.iter().zip(point).all(|(f, x)| f.contains(x))
    }

    /// `(n+1)·2ᵈ` for `ℝⁿ × ℤᵈ`; unknown as soon as a finite factor occurs,
    /// because Helly numbers do not multiply over general products.
    pub fn helly_budget(&self) -> HellyBudget {
        if self.has_finite() {
            return HellyBudget::Unknown;
        }
        let n = self.n_real() as u64;
        let d = self.d_int() as u32;
        match 2u64.checked_pow(d).and_then(|p| p.checked_mul(n + 1)) {
            Some(h) => HellyBudget::Known(h),
            None => HellyBudget::Unknown,
        }
    }

    /// All points of `M` in the box `[lo, hi]`, lexicographically ordered.
    pub fn points_in_box(&self, lo: &[Rational], hi: &[Rational]) -> Result<Vec<Point>> {
        let mut axes = Vec::with_capacity(self.dim());
        for (i, f) in self.factors.iter().enumerate() {
            match f.values_in(Some(&lo[i]), Some(&hi[i])) {
                Some(v) => axes.push(v),
                None => {
                    return Err(Error::precondition(
                        "point enumeration is undefined on a real factor",
                    ))
                }
            }
        }
        Ok(cartesian(axes))
    }
}

/// Lexicographic cartesian product; the empty product is one empty point.
fn cartesian(axes: Vec<Vec<Rational>>) -> Vec<Point> {
    if axes.is_empty() {
        return vec![Vec::new()];
    }
    axes.into_iter().multi_cartesian_product().collect()
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "R^0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .chunk_by(|x| (*x).clone())
            .into_iter()
            .map(|(factor, group)| {
                let count = group.count();
                if count == 1 {
                    factor.label()
                } else {
                    format!("{}^{count}", factor.label())
                }
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl FromStr for SpaceDescriptor {
    type Err = String;

    /// `R^2 x Z^3 x {0,1,2,5/2}`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut tokens = Vec::new();
        let mut depth = 0usize;
        let mut current = String::new();
        for ch in s.chars() {
            match ch {
                '{' => {
                    depth += 1;
                    current.push(ch);
                }
                '}' => {
                    depth = depth.checked_sub(1).ok_or("unbalanced `}`")?;
                    current.push(ch);
                }
                'x' | '×' if depth == 0 => tokens.push(std::mem::take(&mut current)),
                _ => current.push(ch),
            }
        }
        if depth != 0 {
            return Err("unbalanced `{`".into());
        }
        tokens.push(current);

        let mut factors = Vec::new();
        for token in tokens {
            let token = token.trim();
            if token.is_empty() {
                return Err(format!("empty factor in `{s}`"));
            }
            let (base, power) = match token.rsplit_once('^') {
                Some((b, p)) if !token.ends_with('}') => {
                    let p: usize = p.trim().parse().map_err(|_| format!("bad exponent in `{token}`"))?;
                    (b.trim(), p)
                }
                _ => (token, 1),
            };
            let factor = match base {
                "R" | "ℝ" => Factor::Real,
                "Z" | "ℤ" => Factor::Integer,
                b if b.starts_with('{') && b.ends_with('}') => {
                    let inner = &b[1..b.len() - 1];
                    let values = inner
                        .split(',')
                        .map(parse_rational)
                        .collect::<std::result::Result<Vec<_>, _>>()?;
                    Factor::finite(values).map_err(|e| e.to_string())?
                }
                other => return Err(format!("unknown factor `{other}`")),
            };
            factors.extend(std::iter::repeat_n(factor, power));
        }
        Ok(Self { factors })
    }
}

/// The ground set `M` of the Helly/Radon oracles: a product space or a finite
/// list of points.
#[derive(Debug, Clone, PartialEq)]
pub enum GroundSet {
    Space(SpaceDescriptor),
    Points(Vec<Point>),
}

impl From<SpaceDescriptor> for GroundSet {
    fn from(s: SpaceDescriptor) -> Self {
        GroundSet::Space(s)
    }
}

impl GroundSet {
    pub fn contains(&self, p: &[Rational]) -> bool {
        match self {
            GroundSet::Space(s) => s.contains(p),
            GroundSet::Points(pts) => pts.iter().any(|q| q.as_slice() == p),
        }
    }

    /// Whether `M` meets every bounded box in finitely many points.
    pub fn is_locally_finite(&self) -> bool {
        match self {
            GroundSet::Space(s) => !s.has_real(),
            GroundSet::Points(_) => true,
        }
    }

    /// Points of `M` in the box `[lo, hi]`.
    pub fn points_in_box(&self, lo: &[Rational], hi: &[Rational]) -> Result<Vec<Point>> {
        match self {
            GroundSet::Space(s) => s.points_in_box(lo, hi),
            GroundSet::Points(pts) => {
                let mut v: Vec<Point> = pts
                    .iter()
                    .filter(|p| p.iter().zip(lo).zip(hi).all(|((x, l), h)| x >= l && x <= h))
                    .cloned()
                    .collect();
                v.sort();
                v.dedup();
                Ok(v)
            }
        }
    }
}

/// Coordinate-wise bounding box of a non-empty point list.
pub fn bounding_box(points: &[Point]) -> Option<(Point, Point)> {
    let first = points.first()?;
    let mut lo = first.clone();
    let mut hi = first.clone();
    for p in &points[1..] {
        for (i, x) in p.iter().enumerate() {
            if *x < lo[i] {
                lo[i] = x.clone();
            }
            if *x > hi[i] {
                hi[i] = x.clone();
            }
        }
    }
    Some((lo, hi))
}

/// Exhaustive list of the points of `M` inside a bounded polytope.
///
/// Coordinates are fixed one at a time in order; the admissible range of the
/// next coordinate is the exact LP minimum and maximum over the polytope with
/// the prefix substituted, so no dead branches are explored beyond the
/// integer rounding of those bounds.
pub fn enumerate_in_polytope(
    space: &SpaceDescriptor,
    polytope: &InequalitySystem,
) -> Result<PolytopePoints> {
    if polytope.space.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: polytope.dim(),
        });
    }
    if space.has_real() {
        return Err(Error::precondition(
            "enumerate_in_polytope rejects real factors; use mixed_feasible",
        ));
    }
    let dim = space.dim();
    for coord in 0..dim {
        match coordinate_range(&polytope.forms, dim, coord) {
            None => break,
            Some((Some(_), Some(_))) => {}
            Some(_) => {
                if let Factor::Finite(_) = space.factors[coord] {
                    continue;
                }
                return Err(Error::Unbounded);
            }
        }
    }
    let mut it = PolytopePoints {
        space: space.clone(),
        forms: polytope.forms.clone(),
        stack: Vec::new(),
        prefix: Vec::new(),
        done: false,
    };
    it.push_level();
    Ok(it)
}

/// Lazy depth-first stream of lattice/finite points of a polytope.
pub struct PolytopePoints {
    space: SpaceDescriptor,
    forms: Vec<AffineForm>,
    /// Candidate values for each fixed depth and the next position to try.
    stack: Vec<(Vec<Rational>, usize)>,
    prefix: Vec<Rational>,
    done: bool,
}

impl PolytopePoints {
    fn candidates(&self) -> Vec<Rational> {
        let depth = self.prefix.len();
        let rest = self.space.dim() - depth;
        let forms: Vec<AffineForm> = self
            .forms
            .iter()
            .map(|f| f.substitute_prefix(&self.prefix))
            .collect();
        if rest == 0 {
            return Vec::new();
        }
        let up = AffineForm::coordinate(rest, 0, 1, Rational::zero());
        let down = AffineForm::coordinate(rest, 0, -1, Rational::zero());
        let hi = match solve_forms(&forms, rest, Some(&up)) {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Unbounded { .. } => None,
            LpOutcome::Infeasible(_) => return Vec::new(),
        };
        let lo = match solve_forms(&forms, rest, Some(&down)) {
            LpOutcome::Optimal { value, .. } => Some(-value),
            LpOutcome::Unbounded { .. } => None,
            LpOutcome::Infeasible(_) => return Vec::new(),
        };
        self.space.factors[depth]
            .values_in(lo.as_ref(), hi.as_ref())
            .unwrap_or_default()
    }

    fn push_level(&mut self) {
        if self.space.dim() == 0 {
            return;
        }
        let c = self.candidates();
        self.stack.push((c, 0));
    }
}

impl Iterator for PolytopePoints {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        if self.done {
            return None;
        }
        if self.space.dim() == 0 {
            self.done = true;
            let empty: Vec<Rational> = Vec::new();
            return self
                .forms
                .iter()
                .all(|f| f.eval(&empty) >= Rational::zero())
                .then_some(empty);
        }
        loop {
            let Some((values, pos)) = self.stack.last_mut() else {
                self.done = true;
                return None;
            };
            if *pos >= values.len() {
                self.stack.pop();
                if self.prefix.pop().is_none() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            let v = values[*pos].clone();
            *pos += 1;
            self.prefix.push(v);
            if self.prefix.len() == self.space.dim() {
                let p = self.prefix.clone();
                self.prefix.pop();
                return Some(p);
            }
            self.push_level();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, int_point, point, rat};

    fn fig1_axis() -> Factor {
        Factor::finite([int(0), int(1), int(2), rat(5, 2)]).unwrap()
    }

    #[test]
    fn member_examples() {
        let rz = SpaceDescriptor::mixed(1, 1);
        assert!(rz.member(&point(&[(1, 2), (3, 1)])).unwrap());
        assert!(!rz.member(&point(&[(1, 2), (3, 2)])).unwrap());
        let m = SpaceDescriptor::new(vec![fig1_axis(), Factor::Integer]);
        assert!(m.member(&point(&[(5, 2), (2, 1)])).unwrap());
        assert!(rz.member(&[int(1)]).is_err());
    }

    #[test]
    fn budget_examples() {
        assert_eq!(SpaceDescriptor::reals(2).helly_budget(), HellyBudget::Known(3));
        assert_eq!(SpaceDescriptor::integers(2).helly_budget(), HellyBudget::Known(4));
        assert_eq!(SpaceDescriptor::mixed(1, 1).helly_budget(), HellyBudget::Known(4));
        let m = SpaceDescriptor::new(vec![fig1_axis(), Factor::Integer]);
        assert_eq!(m.helly_budget(), HellyBudget::Unknown);
    }

    #[test]
    fn budget_recurrence() {
        for n in 0..=6 {
            for d in 0..=6 {
                let h = SpaceDescriptor::mixed(n, d).helly_budget().value().unwrap();
                let more_real = SpaceDescriptor::mixed(n + 1, d).helly_budget().value().unwrap();
                let more_int = SpaceDescriptor::mixed(n, d + 1).helly_budget().value().unwrap();
                assert_eq!(more_real, h + (1 << d));
                assert_eq!(more_int, 2 * h);
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let s: SpaceDescriptor = "R^2 x Z^3 x {0,1,2,5/2}".parse().unwrap();
        assert_eq!(s.n_real(), 2);
        assert_eq!(s.d_int(), 3);
        assert_eq!(s.dim(), 6);
        assert_eq!(s.to_string(), "R^2 x Z^3 x {0,1,2,5/2}");
        let t: SpaceDescriptor = "{5/2, 0,1,2,2} x Z".parse().unwrap();
        assert_eq!(t.to_string(), "{0,1,2,5/2} x Z");
        assert!("R x Q".parse::<SpaceDescriptor>().is_err());
        assert!("{} x Z".parse::<SpaceDescriptor>().is_err());
        assert!("R x".parse::<SpaceDescriptor>().is_err());
    }

    fn box_system(space: SpaceDescriptor, bounds: &[(Rational, Rational)]) -> InequalitySystem {
        let dim = space.dim();
        let mut forms = Vec::new();
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            forms.push(AffineForm::coordinate(dim, i, 1, -lo.clone()));
            forms.push(AffineForm::coordinate(dim, i, -1, hi.clone()));
        }
        InequalitySystem::new(space, forms).unwrap()
    }

    #[test]
    fn enumerate_unit_square() {
        let z2 = SpaceDescriptor::integers(2);
        let sys = box_system(z2.clone(), &[(int(0), int(1)), (int(0), int(1))]);
        let pts: Vec<_> = enumerate_in_polytope(&z2, &sys).unwrap().collect();
        assert_eq!(
            pts,
            vec![int_point(&[0, 0]), int_point(&[0, 1]), int_point(&[1, 0]), int_point(&[1, 1])]
        );
    }

    #[test]
    fn enumerate_fig1_box() {
        let m = SpaceDescriptor::new(vec![fig1_axis(), Factor::Integer]);
        let sys = box_system(m.clone(), &[(int(0), rat(5, 2)), (int(0), int(2))]);
        let pts: Vec<_> = enumerate_in_polytope(&m, &sys).unwrap().collect();
        // independent double loop: 4 axis values times 3 integer heights
        let mut expected = Vec::new();
        for x in [int(0), int(1), int(2), rat(5, 2)] {
            for y in 0..=2 {
                expected.push(vec![x.clone(), int(y)]);
            }
        }
        assert_eq!(pts, expected);
    }

    #[test]
    fn enumerate_triangle_matches_pick() {
        // vertices (0,0),(3,0),(0,3): area 9/2, boundary 9, interior 1 → 10 points
        let z2 = SpaceDescriptor::integers(2);
        let sys = InequalitySystem::new(
            z2.clone(),
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[0, 1], 0),
                AffineForm::from_ints(&[-1, -1], 3),
            ],
        )
        .unwrap();
        assert_eq!(enumerate_in_polytope(&z2, &sys).unwrap().count(), 10);
    }

    #[test]
    fn enumerate_rejects_reals_and_unbounded() {
        let rz = SpaceDescriptor::mixed(1, 1);
        let sys = box_system(rz.clone(), &[(int(0), int(1)), (int(0), int(1))]);
        assert!(enumerate_in_polytope(&rz, &sys).is_err());
        let z2 = SpaceDescriptor::integers(2);
        let half = InequalitySystem::new(z2.clone(), vec![AffineForm::from_ints(&[1, 0], 0)]).unwrap();
        assert_eq!(enumerate_in_polytope(&z2, &half).err(), Some(Error::Unbounded));
    }

    #[test]
    fn enumerate_empty_polytope() {
        let z1 = SpaceDescriptor::integers(1);
        let sys = InequalitySystem::new(
            z1.clone(),
            vec![AffineForm::from_ints(&[2], -1), AffineForm::from_ints(&[-4], 3)],
        )
        .unwrap();
        assert_eq!(enumerate_in_polytope(&z1, &sys).unwrap().count(), 0);
    }
}
