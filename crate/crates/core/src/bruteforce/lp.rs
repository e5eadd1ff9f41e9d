//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Intended for the small programs used as optimality oracles: a few dozen
//! rows and a few hundred columns at most.

use num_traits::{Signed, Zero};

use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `minimize objective·x` subject to the constraints and `x ≥ 0`.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        Self {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        debug_assert_eq!(coeffs.len(), self.objective.len());
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> LpOutcome {
        solve(self)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.width]
    }

    /// Runs primal simplex for `cost`; returns false when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.width).find(|&j| {
                allowed[j] && !self.basis.contains(&j) && {
                    let reduced = self
                        .rows
                        .iter()
                        .zip(&self.basis)
                        .fold(cost[j].clone(), |acc, (row, &b)| acc - &cost[b] * &row[j]);
                    reduced.is_negative()
                }
            });
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if a.is_positive() {
                    let t = self.rhs(r) / a;
                    let better = match &leave {
                        None => true,
                        Some((lr, lt)) => t < *lt || (t == *lt && self.basis[r] < self.basis[*lr]),
                    };
                    if better {
                        leave = Some((r, t));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (r, &b)| acc + &cost[b] * self.rhs(r))
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.objective.len();
    let m = lp.constraints.len();
    let slack_count = lp
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let art_start = n + slack_count;
    let width = art_start + m;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_slack = n;
    for (i, con) in lp.constraints.iter().enumerate() {
        let flip = con.rhs.is_negative();
        let sign = if flip { -rational::one() } else { rational::one() };
        let relation = match (con.relation, flip) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        };
        let mut row = vec![Rational::zero(); width + 1];
        for (j, a) in con.coeffs.iter().enumerate() {
            row[j] = a * &sign;
        }
        row[width] = &con.rhs * &sign;
        match relation {
            Relation::Le => {
                row[next_slack] = rational::one();
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -rational::one();
                next_slack += 1;
                row[art_start + i] = rational::one();
                basis.push(art_start + i);
            }
            Relation::Eq => {
                row[art_start + i] = rational::one();
                basis.push(art_start + i);
            }
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, width };

    let phase1: Vec<Rational> = (0..width)
        .map(|j| if j >= art_start { rational::one() } else { Rational::zero() })
        .collect();
    let all = vec![true; width];
    t.optimize(&phase1, &all);
    if t.objective(&phase1).is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive zero-valued artificials out of the basis where possible
    for r in 0..m {
        if t.basis[r] >= art_start {
            if let Some(c) = (0..art_start).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, c);
            }
        }
    }

    let mut phase2 = lp.objective.clone();
    phase2.resize(width, Rational::zero());
    let allowed: Vec<bool> = (0..width).map(|j| j < art_start).collect();
    if !t.optimize(&phase2, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs(r).clone();
        }
    }
    LpOutcome::Optimal {
        value: t.objective(&phase2),
        x,
    }
}
