use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

use mixhelly::feasibility::{lp_solve, mixed_feasible, LpOutcome, MixedOptions};
use mixhelly::geometry::cone::caratheodory_decompose;
use mixhelly::geometry::projection::project_out_real;
use mixhelly::lab::check_2d_helly_radon;
use mixhelly::lab::random::{random_lattice_system, random_lp_instance, random_planar_set, seeded};
use mixhelly::numeric::{ceil, floor, int, mat_vec, parse_rational, rat, solve_linear, AffineForm, Rational};
use mixhelly::spaces::{enumerate_in_polytope, SpaceDescriptor};
use mixhelly::InequalitySystem;

fn ratio() -> impl Strategy<Value = (i64, i64)> {
    (-1000i64..=1000, 1i64..=60)
}

fn forms(dim: usize, count: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<AffineForm>> {
    prop::collection::vec((prop::collection::vec(-4i64..=4, dim), -8i64..=8), count)
        .prop_map(|v| v.into_iter().map(|(c, b)| AffineForm::from_ints(&c, b)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rationals_agree_with_cross_multiplication((a, b) in ratio(), (c, d) in ratio()) {
        let (x, y) = (rat(a, b), rat(c, d));
        let (a, b, c, d) = (BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d));
        let sum = &x + &y;
        prop_assert_eq!(sum.numer() * (&b * &d), (&a * &d + &c * &b) * sum.denom());
        let prod = &x * &y;
        prop_assert_eq!(prod.numer() * (&b * &d), (&a * &c) * prod.denom());
        prop_assert_eq!(x < y, &a * &d < &c * &b);
        prop_assert_eq!(floor(&x), a.div_floor(&b));
        prop_assert_eq!(ceil(&x), -(-&a).div_floor(&b));
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn solve_linear_recovers_solutions(
        k in 1usize..=4,
        entries in prop::collection::vec(-5i64..=5, 16),
        x0 in prop::collection::vec(-6i64..=6, 4),
    ) {
        let a: Vec<Vec<Rational>> = (0..k).map(|r| (0..k).map(|c| int(entries[r * 4 + c])).collect()).collect();
        let x0: Vec<Rational> = x0[..k].iter().map(|&v| int(v)).collect();
        let rhs = mat_vec(&a, &x0);
        let sol = solve_linear(&a, &rhs).unwrap();
        prop_assert!(sol.is_consistent());
        let x = sol.solution.clone().unwrap();
        prop_assert_eq!(mat_vec(&a, &x), rhs);
        for z in &sol.kernel {
            prop_assert!(mat_vec(&a, z).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(sol.rank + sol.kernel.len(), k);
        if sol.is_unique() {
            prop_assert_eq!(x, x0);
        }
    }

    #[test]
    fn cone_decompositions_are_exact_and_small(
        generators in forms(2, 2..=7),
        weights in prop::collection::vec(0i64..=3, 7),
    ) {
        let mut target = AffineForm::constant_form(2, Rational::zero());
        for (g, w) in generators.iter().zip(&weights) {
            target.add_scaled(g, &int(*w));
        }
        let dec = caratheodory_decompose(&target, &generators, 3).unwrap();
        prop_assert!(dec.verify(&target, &generators));
        prop_assert!(dec.support.len() <= 3);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Eliminating the last real coordinate: points of the system project into
    /// the projection, and every point of the projection lifts.
    #[test]
    fn projection_is_exact(
        system in forms(3, 2..=7),
        probe in prop::collection::vec((-6i64..=6, 1i64..=3), 2),
    ) {
        let system = InequalitySystem::new(SpaceDescriptor::reals(3), system).unwrap();
        let p = project_out_real(&system, 2).unwrap();
        prop_assert!(p.verify(&system));
        prop_assert_eq!(p.kept.clone(), vec![0, 1]);
        let y: Vec<Rational> = probe.iter().map(|&(n, d)| rat(n, d)).collect();
        let fiber: Vec<AffineForm> = system.forms.iter().map(|f| f.substitute_prefix(&y)).collect();
        let fiber = InequalitySystem::new(SpaceDescriptor::reals(1), fiber).unwrap();
        let lifts = !matches!(lp_solve(&fiber, None), LpOutcome::Infeasible(_));
        prop_assert_eq!(lifts, p.system.satisfied_by(&y));
        if let LpOutcome::Optimal { point, .. } = lp_solve(&system, None) {
            prop_assert!(p.system.satisfied_by(&point[..2]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn branch_and_bound_matches_enumeration(seed in any::<u64>(), d in 1usize..=3) {
        let system = random_lattice_system(&mut seeded(seed), d);
        let brute = enumerate_in_polytope(&system.space, &system).unwrap().next();
        let verdict = mixed_feasible(&system, &MixedOptions::default()).unwrap();
        prop_assert_eq!(verdict.is_feasible(), brute.is_some());
        prop_assert!(verdict.verify(&system));
    }

    #[test]
    fn simplex_matches_vertex_enumeration(seed in any::<u64>(), k in 1usize..=3) {
        let (system, objective) = random_lp_instance(&mut seeded(seed), k);
        let mut best: Option<Rational> = None;
        for rows in (0..system.len()).combinations(k) {
            let a: Vec<Vec<Rational>> = rows.iter().map(|&i| system.forms[i].coeffs.clone()).collect();
            let b: Vec<Rational> = rows.iter().map(|&i| -system.forms[i].constant.clone()).collect();
            let sol = solve_linear(&a, &b).unwrap();
            if let (true, Some(x)) = (sol.is_unique(), sol.solution) {
                if system.satisfied_by(&x) {
                    let v = objective.evaluate(&x).unwrap();
                    best = Some(best.map_or(v.clone(), |b| b.max(v)));
                }
            }
        }
        match lp_solve(&system, Some(&objective)) {
            LpOutcome::Optimal { point, value } => {
                prop_assert!(system.satisfied_by(&point));
                prop_assert_eq!(Some(value), best);
            }
            LpOutcome::Infeasible(f) => {
                prop_assert!(f.verify(&system.forms));
                prop_assert_eq!(best, None);
            }
            LpOutcome::Unbounded { .. } => prop_assert!(false, "boxed instance reported unbounded"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn planar_sets_respect_the_case_split(seed in any::<u64>()) {
        let m = random_planar_set(&mut seeded(seed), 7);
        let report = check_2d_helly_radon(&m, 1 << 22).unwrap();
        prop_assert!(report.consistent, "h={} r={}", report.helly, report.radon);
    }
}
