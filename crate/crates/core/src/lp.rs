//! Exact two-phase simplex with Bland's rule.
//!
//! Dense tableau over rationals; sized for the small membership and redundancy
//! programs the polytope kernel issues, not for large models.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced costs followed by minus the objective value.
    obj: Vec<Rational>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn price(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.resize(self.width + 1, Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if !cb.is_zero() {
                for (o, t) in obj.iter_mut().zip(row) {
                    *o -= cb * t;
                }
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, p) in self.obj.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations over columns `< allowed`. Returns false when unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let rhs = self.rhs();
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[enter].is_positive() {
                    let ratio = &row[rhs] / &row[enter];
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
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

/// Minimizes `cost·x` subject to `a·x = b`, `x ≥ 0`.
pub(crate) fn minimize_standard(
    a: &[Vec<Rational>],
    b: &[Rational],
    cost: &[Rational],
) -> LpOutcome {
    let n = cost.len();
    let m = a.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut t: Vec<Rational> = Vec::with_capacity(width + 1);
        t.extend(row.iter().map(|x| if flip { -x } else { x.clone() }));
        t.extend((0..m).map(|k| Rational::from_integer((k == i).into())));
        t.push(if flip { -rhs } else { rhs.clone() });
        rows.push(t);
    }
    let mut tab = Tableau {
        rows,
        basis: (n..width).collect(),
        obj: Vec::new(),
        width,
    };

    let phase1: Vec<Rational> = (0..width)
        .map(|j| Rational::from_integer((j >= n).into()))
        .collect();
    tab.price(&phase1);
    tab.optimize(width);
    if !tab.obj[width].is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive artificials out of the basis; rows where that is impossible are redundant.
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
        let rhs = row[width].clone();
        row.truncate(n);
        row.push(rhs);
    }
    tab.width = n;

    tab.price(cost);
    if !tab.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &b) in tab.rows.iter().zip(&tab.basis) {
        x[b] = row[n].clone();
    }
    let value = -tab.obj[n].clone();
    LpOutcome::Optimal { x, value }
}

/// Maximizes `objective·x` over free `x` with `ineq·x ≤ b` and `eq·x = f`.
pub(crate) fn maximize_free(
    dim: usize,
    ineq: &[(&[Rational], &Rational)],
    eq: &[(&[Rational], &Rational)],
    objective: &[Rational],
) -> LpOutcome {
    // x = u − v, one slack per inequality.
    let slacks = ineq.len();
    let width = 2 * dim + slacks;
    let mut a = Vec::with_capacity(ineq.len() + eq.len());
    let mut b = Vec::with_capacity(ineq.len() + eq.len());
    for (k, (normal, offset)) in ineq.iter().enumerate() {
        let mut row = vec![Rational::zero(); width];
        for j in 0..dim {
            row[j] = normal[j].clone();
            row[dim + j] = -normal[j].clone();
        }
        row[2 * dim + k] = Rational::from_integer(1.into());
        a.push(row);
        b.push((*offset).clone());
    }
    for (normal, offset) in eq {
        let mut row = vec![Rational::zero(); width];
        for j in 0..dim {
            row[j] = normal[j].clone();
            row[dim + j] = -normal[j].clone();
        }
        a.push(row);
        b.push((*offset).clone());
    }
    let mut cost = vec![Rational::zero(); width];
    for j in 0..dim {
        cost[j] = -objective[j].clone();
        cost[dim + j] = objective[j].clone();
    }
    match minimize_standard(&a, &b, &cost) {
        LpOutcome::Optimal { x, value } => {
            let point = (0..dim).map(|j| &x[j] - &x[dim + j]).collect();
            LpOutcome::Optimal {
                x: point,
                value: -value,
            }
        }
        other => other,
    }
}
