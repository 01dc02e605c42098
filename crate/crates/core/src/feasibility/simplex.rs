//! Dense two-phase primal simplex over exact rationals.
//!
//! Solves `min c·x  s.t.  A·x = b, x ≥ 0` with Bland's rule (lowest index
//! entering column, lowest basic index among tied leaving rows), which
//! terminates without cycling.

use num_traits::{One, Signed, Zero};

use crate::numeric::Rational;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum StandardOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded { x: Vec<Rational>, ray: Vec<Rational> },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs; the last entry holds minus the objective value.
    objective: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

enum Step {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nonzero: Vec<usize> = (0..=self.cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let factor = row[c].clone();
            for &j in &nonzero {
                let delta = &pivot_row[j] * &factor;
                row[j] -= delta;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.objective);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Run Bland's rule restricted to columns `< allowed`.
    fn optimize(&mut self, allowed: usize) -> Step {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.objective[j].is_negative()) else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Step::Unbounded(enter),
            }
        }
    }

    fn primal(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }

    fn set_costs(&mut self, costs: &[Rational]) {
        let mut obj = vec![Rational::zero(); self.cols + 1];
        obj[..costs.len()].clone_from_slice(costs);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = costs.get(b).cloned().unwrap_or_else(Rational::zero);
            if cb.is_zero() {
                continue;
            }
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero() {
                    obj[j] -= &cb * v;
                }
            }
        }
        self.objective = obj;
    }
}

pub(crate) fn solve_standard(
    a: &[Vec<Rational>],
    b: &[Rational],
    costs: &[Rational],
) -> StandardOutcome {
    let m = a.len();
    let n = costs.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    debug_assert_eq!(b.len(), m);

    // Phase 1: artificial column n+i for row i, right-hand sides made nonnegative.
    let cols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut r = Vec::with_capacity(cols + 1);
        for v in row {
            r.push(if flip { -v.clone() } else { v.clone() });
        }
        for j in 0..m {
            r.push(if i == j { Rational::one() } else { Rational::zero() });
        }
        r.push(if flip { -rhs.clone() } else { rhs.clone() });
        rows.push(r);
    }
    let mut tab = Tableau {
        rows,
        objective: Vec::new(),
        basis: (n..n + m).collect(),
        cols,
    };
    let mut phase_one = vec![Rational::zero(); cols];
    for c in phase_one.iter_mut().skip(n) {
        *c = Rational::one();
    }
    tab.set_costs(&phase_one);
    match tab.optimize(cols) {
        Step::Optimal => {}
        Step::Unbounded(_) => unreachable!("phase one objective is bounded below by zero"),
    }
    if !tab.objective[cols].is_zero() {
        return StandardOutcome::Infeasible;
    }

    // Drive artificial variables out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for row in tab.rows.iter_mut() {
        let rhs = row[cols].clone();
        row.truncate(n);
        row.push(rhs);
    }
    tab.cols = n;
    tab.set_costs(costs);

    match tab.optimize(n) {
        Step::Optimal => {
            let x = tab.primal(n);
            let value = -tab.objective[n].clone();
            StandardOutcome::Optimal { x, value }
        }
        Step::Unbounded(enter) => {
            let x = tab.primal(n);
            let mut ray = vec![Rational::zero(); n];
            ray[enter] = Rational::one();
            for (i, &bv) in tab.basis.iter().enumerate() {
                ray[bv] = -tab.rows[i][enter].clone();
            }
            StandardOutcome::Unbounded { x, ray }
        }
    }
}
