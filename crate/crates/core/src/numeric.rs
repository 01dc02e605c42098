//! Exact rational scalars, affine forms and linear algebra.
//!
//! Every quantity in the crate is a [`Rational`]; `num-rational` keeps each
//! value in lowest terms with a positive denominator after every operation,
//! so equality and hashing are structural.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// A point of ℚᵏ.
pub type Point = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn point(coords: &[(i64, i64)]) -> Point {
    coords.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn int_point(coords: &[i64]) -> Point {
    coords.iter().map(|&n| int(n)).collect()
}

/// Parse `p`, `p/q` or a terminating decimal such as `2.5`.
pub fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num).ok_or_else(|| format!("malformed rational `{s}`"))?;
        let den = parse_unsigned(den).ok_or_else(|| format!("malformed rational `{s}`"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("malformed rational `{s}`"));
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            parse_unsigned(whole_digits).ok_or_else(|| format!("malformed rational `{s}`"))?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| format!("malformed rational `{s}`"))?;
        let value = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -value } else { value });
    }
    parse_integer(s)
        .map(Rational::from_integer)
        .ok_or_else(|| format!("malformed rational `{s}`"))
}

fn parse_unsigned(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let (negative, digits) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let value = parse_unsigned(digits)?;
    Some(if negative { -value } else { value })
}

pub fn fmt_point(p: &[Rational]) -> String {
    p.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}

pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Affine-linear function `x ↦ ⟨coeffs, x⟩ + constant` on ℚᵏ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl AffineForm {
    pub fn new(coeffs: Vec<Rational>, constant: Rational) -> Self {
        Self { coeffs, constant }
    }

    /// `c·x + b` with integer data.
    pub fn from_ints(coeffs: &[i64], constant: i64) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect(), int(constant))
    }

    pub fn constant_form(dim: usize, value: Rational) -> Self {
        Self::new(vec![Rational::zero(); dim], value)
    }

    /// `sign·x_coord + offset`.
    pub fn coordinate(dim: usize, coord: usize, sign: i64, offset: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); dim];
        coeffs[coord] = int(sign);
        Self::new(coeffs, offset)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: point.len(),
            });
        }
        Ok(self.eval(point))
    }

    pub(crate) fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = self.constant.clone();
        for (c, x) in self.coeffs.iter().zip(point) {
            if !c.is_zero() && !x.is_zero() {
                acc += c * x;
            }
        }
        acc
    }

    /// Value of the linear part only.
    pub fn eval_linear(&self, direction: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (c, x) in self.coeffs.iter().zip(direction) {
            if !c.is_zero() && !x.is_zero() {
                acc += c * x;
            }
        }
        acc
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Self::new(
            self.coeffs.iter().map(|c| c * factor).collect(),
            &self.constant * factor,
        )
    }

    pub fn add_scaled(&mut self, other: &AffineForm, factor: &Rational) {
        debug_assert_eq!(self.dim(), other.dim());
        if factor.is_zero() {
            return;
        }
        for (c, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !o.is_zero() {
                *c += o * factor;
            }
        }
        self.constant += &other.constant * factor;
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-Rational::one())
    }

    pub fn shifted(&self, delta: &Rational) -> Self {
        Self::new(self.coeffs.clone(), &self.constant + delta)
    }

    /// Drop coordinate `coord`, which must carry a zero coefficient for the
    /// result to describe the same function.
    pub fn without_coord(&self, coord: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.remove(coord);
        Self::new(coeffs, self.constant.clone())
    }

    /// Insert zero coefficients so that coordinate `i` of `self` becomes
    /// coordinate `positions[i]` of a form on ℚ^`dim`.
    pub fn embedded(&self, dim: usize, positions: &[usize]) -> Self {
        let mut coeffs = vec![Rational::zero(); dim];
        for (c, &p) in self.coeffs.iter().zip(positions) {
            coeffs[p] = c.clone();
        }
        Self::new(coeffs, self.constant.clone())
    }

    /// Substitute fixed values for the leading coordinates.
    pub fn substitute_prefix(&self, prefix: &[Rational]) -> Self {
        let mut constant = self.constant.clone();
        for (c, x) in self.coeffs.iter().zip(prefix) {
            constant += c * x;
        }
        Self::new(self.coeffs[prefix.len()..].to_vec(), constant)
    }

    /// The positive multiple with coprime integer entries; `None` for the
    /// zero form.
    pub fn primitive_scale(&self) -> Option<Rational> {
        let entries = self.coeffs.iter().chain(std::iter::once(&self.constant));
        let mut lcm_den = BigInt::one();
        let mut gcd_num = BigInt::zero();
        for e in entries {
            if e.is_zero() {
                continue;
            }
            lcm_den = lcm_den.lcm(e.denom());
            gcd_num = gcd_num.gcd(e.numer());
        }
        if gcd_num.is_zero() {
            None
        } else {
            Some(Rational::new(lcm_den, gcd_num.abs()))
        }
    }

    pub fn normalized(&self) -> Self {
        match self.primitive_scale() {
            Some(s) => self.scaled(&s),
            None => self.clone(),
        }
    }

    /// The form as a vector `(c_1, …, c_k, b)`.
    pub fn to_vector(&self) -> Vec<Rational> {
        let mut v = self.coeffs.clone();
        v.push(self.constant.clone());
        v
    }

    pub fn from_vector(mut v: Vec<Rational>) -> Self {
        let constant = v.pop().unwrap_or_else(Rational::zero);
        Self::new(v, constant)
    }
}

impl fmt::Display for AffineForm {
    /// Line syntax of system files: `c1 … ck b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.coeffs {
            write!(f, "{c} ")?;
        }
        write!(f, "{}", self.constant)
    }
}

/// Outcome of exact Gaussian elimination on `A·x = rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSolution {
    /// A particular solution with free variables set to zero, when consistent.
    pub solution: Option<Vec<Rational>>,
    pub rank: usize,
    /// Basis of the null space of `A`.
    pub kernel: Vec<Vec<Rational>>,
}

impl LinearSolution {
    pub fn is_consistent(&self) -> bool {
        self.solution.is_some()
    }

    pub fn is_unique(&self) -> bool {
        self.solution.is_some() && self.kernel.is_empty()
    }
}

/// Solve `matrix · x = rhs` exactly by reduction to reduced row echelon form.
///
/// Pivots are chosen as the first nonzero entry in each column, scanning rows
/// top to bottom.
pub fn solve_linear(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Result<LinearSolution> {
    let rows = matrix.len();
    if rhs.len() != rows {
        return Err(Error::DimensionMismatch {
            expected: rows,
            found: rhs.len(),
        });
    }
    let cols = matrix.first().map_or(0, Vec::len);
    if let Some(bad) = matrix.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch {
            expected: cols,
            found: bad.len(),
        });
    }
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for v in aug[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot).skip(c) {
                if !p.is_zero() {
                    *v -= p * &factor;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let rank = pivot_cols.len();
    let consistent = aug[rank..].iter().all(|row| row[cols].is_zero());

    let solution = consistent.then(|| {
        let mut x = vec![Rational::zero(); cols];
        for (i, &c) in pivot_cols.iter().enumerate() {
            x[c] = aug[i][cols].clone();
        }
        x
    });

    let kernel = (0..cols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (i, &c) in pivot_cols.iter().enumerate() {
                v[c] = -aug[i][free].clone();
            }
            v
        })
        .collect();

    Ok(LinearSolution {
        solution,
        rank,
        kernel,
    })
}

pub fn mat_vec(matrix: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    matrix
        .iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}
