//! Seeded instance generators.
//!
//! All generators draw from [`ChaCha8Rng`], whose output for a given seed is
//! fixed across platforms and releases of `rand_chacha`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::feasibility::{mixed_feasible, sup_over_space, MixedOptions, SupResult};
use crate::numeric::{ceil, int, AffineForm, Point, Rational};
use crate::spaces::SpaceDescriptor;
use crate::system::InequalitySystem;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

fn random_form(rng: &mut ChaCha8Rng, dim: usize, coef: i64) -> AffineForm {
    loop {
        let c: Vec<Rational> = (0..dim).map(|_| small(rng, coef)).collect();
        if c.iter().any(|x| !x.is_zero()) {
            return AffineForm::new(c, small(rng, coef));
        }
    }
}

/// A form `a·x + b` with `0 ≤ a·center + b < 1`, or `None` when `b` would
/// leave `[-coef, coef]`.
fn form_near(rng: &mut ChaCha8Rng, center: &[Rational], coef: i64) -> Option<AffineForm> {
    let c: Vec<Rational> = (0..center.len()).map(|_| small(rng, coef)).collect();
    if c.iter().all(Zero::is_zero) {
        return None;
    }
    let at: Rational = c.iter().zip(center).map(|(a, x)| a * x).sum();
    let b = Rational::from_integer(ceil(&-at));
    (b.abs() <= int(coef)).then(|| AffineForm::new(c, b))
}

/// A system over `ℝⁿ × ℤᵈ` with at most `max_forms` forms and integer
/// coefficients in `[-coef, coef]` that has no solution in the space.
///
/// Half of the draws are uniform; the other half surround a random rational
/// centre with forms that just admit it, which yields small polytopes that
/// often contain no lattice point. Draws that are feasible, or that the
/// decision procedure cannot settle within its node cap, are redrawn.
pub fn random_infeasible_system(
    rng: &mut ChaCha8Rng,
    n_real: usize,
    d_int: usize,
    max_forms: usize,
    coef: i64,
) -> Result<InequalitySystem> {
    let space = SpaceDescriptor::mixed(n_real, d_int);
    let dim = space.dim();
    let opts = MixedOptions {
        node_cap: 20_000,
        ..MixedOptions::certified()
    };
    loop {
        let m = rng.gen_range(2..=max_forms.max(2));
        let forms: Vec<AffineForm> = if rng.gen_bool(0.5) {
            (0..m).map(|_| random_form(rng, dim, coef)).collect()
        } else {
            let center: Point = (0..dim)
                .map(|_| {
                    let den = rng.gen_range(1..=4i64);
                    Rational::new(BigInt::from(rng.gen_range(-3 * den..=3 * den)), BigInt::from(den))
                })
                .collect();
            let mut v = Vec::with_capacity(m);
            while v.len() < m {
                if let Some(f) = form_near(rng, &center, coef) {
                    v.push(f);
                }
            }
            v
        };
        let system = InequalitySystem::new(space.clone(), forms)?;
        match mixed_feasible(&system, &opts) {
            Ok(v) if !v.is_feasible() => return Ok(system),
            _ => continue,
        }
    }
}

/// Distinct planar points with coordinates in `[0, 4]` and denominators at
/// most 4.
pub fn random_planar_set(rng: &mut ChaCha8Rng, max_points: usize) -> Vec<Point> {
    let k = rng.gen_range(1..=max_points);
    let mut out: Vec<Point> = Vec::new();
    while out.len() < k {
        let p: Point = (0..2)
            .map(|_| {
                let den = rng.gen_range(1..=4i64);
                Rational::new(BigInt::from(rng.gen_range(0..=4 * den)), BigInt::from(den))
            })
            .collect();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// A bounded system over `ℤᵈ`: the box `[0, u]ᵈ` followed by random forms.
pub fn random_lattice_system(rng: &mut ChaCha8Rng, d: usize) -> InequalitySystem {
    let u = rng.gen_range(1..=4i64);
    let mut forms = box_forms(d, 0, u);
    let extra = rng.gen_range(1..=6);
    forms.extend((0..extra).map(|_| {
        let mut f = random_form(rng, d, 5);
        f.constant = small(rng, 10);
        f
    }));
    InequalitySystem::new(SpaceDescriptor::integers(d), forms).expect("dimensions agree")
}

fn box_forms(dim: usize, lo: i64, hi: i64) -> Vec<AffineForm> {
    (0..dim)
        .flat_map(|i| {
            [
                AffineForm::coordinate(dim, i, 1, int(-lo)),
                AffineForm::coordinate(dim, i, -1, int(hi)),
            ]
        })
        .collect()
}

/// A bounded system over `ℝ × ℤ` with a linear objective whose supremum over
/// the space is finite and attained.
pub fn random_sup_instance(rng: &mut ChaCha8Rng) -> Result<(InequalitySystem, AffineForm)> {
    let space = SpaceDescriptor::mixed(1, 1);
    loop {
        let mut forms = box_forms(2, -4, 4);
        let extra = rng.gen_range(1..=5);
        forms.extend((0..extra).map(|_| random_form(rng, 2, 6)));
        let objective = random_form(rng, 2, 4);
        let system = InequalitySystem::new(space.clone(), forms)?;
        if let SupResult::Max { .. } = sup_over_space(&system, &objective, &MixedOptions::default())? {
            return Ok((system, objective));
        }
    }
}

/// A bounded system over `ℝᵏ` (the box `[-3, 3]ᵏ` plus random forms) and a
/// random objective.
pub fn random_lp_instance(rng: &mut ChaCha8Rng, k: usize) -> (InequalitySystem, AffineForm) {
    let mut forms = box_forms(k, -3, 3);
    let extra = rng.gen_range(0..=4);
    forms.extend((0..extra).map(|_| random_form(rng, k, 5)));
    let objective = random_form(rng, k, 5);
    (InequalitySystem::new(SpaceDescriptor::reals(k), forms).expect("dimensions agree"), objective)
}

/// `n` sets of one to four random points of `[0, w]²`.
pub fn random_family(rng: &mut ChaCha8Rng, n: usize, w: i64) -> Vec<Vec<Point>> {
    (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=4);
            (0..k)
                .map(|_| vec![int(rng.gen_range(0..=w)), int(rng.gen_range(0..=w))])
                .collect()
        })
        .collect()
}
