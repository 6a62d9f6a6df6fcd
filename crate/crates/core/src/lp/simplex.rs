//! Dense two-phase tableau simplex with Bland's anti-cycling rule.
//!
//! The program is rewritten as `max c'x'` over `A'x' = b'`, `x' ≥ 0`,
//! `b' ≥ 0`: free variables split in two, slacks on inequality rows, rows
//! with a negative right-hand side negated, artificials wherever no slack
//! can start in the basis.
//!
//! Rows are scaled to integers and pivoting is fraction-free: the tableau
//! holds integers over one shared positive denominator, and every update
//! divides exactly by the previous pivot. No gcds are taken along the way.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{linalg, Bound, LinearProgram, LpSolution, Relation};
use crate::error::{Error, Result};
use crate::rational::{dot, int, integer_scale, Rational};

/// `(p·x − f·y) / d` entrywise; the division is exact by construction.
fn eliminate(row: &mut [BigInt], pivot_row: &[BigInt], p: &BigInt, f: &BigInt, d: &BigInt) {
    for (x, y) in row.iter_mut().zip(pivot_row) {
        let mut v = p * &*x;
        if !y.is_zero() {
            v -= f * y;
        }
        let (q, r) = v.div_rem(d);
        debug_assert!(r.is_zero(), "inexact fraction-free division");
        *x = q;
    }
}

struct Tableau {
    /// Constraint rows, right-hand side in the last column.
    rows: Vec<Vec<BigInt>>,
    /// Reduced costs; the last entry is minus the objective value.
    obj: Vec<BigInt>,
    /// Common denominator of every entry, always positive.
    den: BigInt,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                let f = row[c].clone();
                eliminate(row, &prow, &p, &f, &self.den);
            }
        }
        let f = self.obj[c].clone();
        eliminate(&mut self.obj, &prow, &p, &f, &self.den);
        self.den = p;
        if self.den.is_negative() {
            for x in self.rows.iter_mut().flatten().chain(self.obj.iter_mut()) {
                *x = -&*x;
            }
            self.den = -&self.den;
        }
        self.basis[r] = c;
    }

    /// Reduced costs for an integer cost vector.
    fn set_objective(&mut self, cost: &[BigInt]) {
        let mut obj: Vec<BigInt> = cost.iter().map(|c| c * &self.den).collect();
        obj.push(BigInt::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if !cost[b].is_zero() {
                for (o, x) in obj.iter_mut().zip(row) {
                    *o -= &cost[b] * x;
                }
            }
        }
        self.obj = obj;
    }

    fn entry(&self, x: &BigInt) -> Rational {
        Rational::new(x.clone(), self.den.clone())
    }

    fn value(&self) -> Rational {
        -self.entry(&self.obj[self.cols])
    }

    /// Pivot to optimality; `false` means the objective is unbounded.
    fn optimize(&mut self, allowed: impl Fn(usize) -> bool) -> bool {
        loop {
            let Some(c) = (0..self.cols).find(|&j| allowed(j) && self.obj[j].is_positive()) else {
                return true;
            };
            // Smallest ratio b_i / a_ic, ties to the smallest basic index.
            let mut leave: Option<usize> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(k) => {
                        let best = &self.rows[k];
                        let lhs = &row[self.cols] * &best[c];
                        let rhs = &best[self.cols] * &row[c];
                        lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[k])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
            match leave {
                Some(r) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

fn to_integer(x: &Rational) -> BigInt {
    debug_assert!(x.is_integer());
    x.to_integer()
}

pub(super) fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.vars();

    // Column layout: structural (split where free), then slacks, then artificials.
    let mut cols = 0;
    let mut split: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    for bound in &lp.bounds {
        let plus = cols;
        cols += 1;
        let minus = (*bound == Bound::Free).then(|| {
            cols += 1;
            plus + 1
        });
        split.push((plus, minus));
    }
    let mut slack = Vec::with_capacity(lp.constraints.len());
    for c in &lp.constraints {
        slack.push((c.relation != Relation::Eq).then(|| {
            cols += 1;
            cols - 1
        }));
    }
    let structural = cols;

    // Rows become coprime integers with a non-negative right-hand side.
    // Slack columns are rescaled to ±1, which only renames the slack.
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(lp.constraints.len());
    let mut rhs = Vec::with_capacity(lp.constraints.len());
    let mut row_scale = Vec::with_capacity(lp.constraints.len());
    for (c, s) in lp.constraints.iter().zip(&slack) {
        let mut row = vec![Rational::zero(); structural];
        for (coef, &(plus, minus)) in c.coeffs.iter().zip(&split) {
            row[plus] = coef.clone();
            if let Some(m) = minus {
                row[m] = -coef.clone();
            }
        }
        row.push(c.rhs.clone());
        let mut scale = integer_scale(&row);
        if c.rhs.is_negative() {
            scale = -scale;
        }
        row.iter_mut().for_each(|x| *x *= &scale);
        if let Some(s) = *s {
            let sign = if c.relation == Relation::Le { 1 } else { -1 };
            row[s] = int(if scale.is_positive() { sign } else { -sign });
        }
        rhs.push(row.pop().expect("right-hand side"));
        a.push(row);
        row_scale.push(scale);
    }

    let mut basis = Vec::with_capacity(a.len());
    let mut artificials = 0;
    for (row, s) in a.iter().zip(&slack) {
        match s {
            Some(s) if row[*s].is_positive() => basis.push(*s),
            _ => {
                basis.push(structural + artificials);
                artificials += 1;
            }
        }
    }
    let total = structural + artificials;
    let rows = a
        .iter()
        .zip(&rhs)
        .zip(&basis)
        .map(|((row, b), &basic)| {
            let mut r: Vec<BigInt> = row.iter().map(to_integer).collect();
            r.resize(total, BigInt::zero());
            if basic >= structural {
                r[basic] = BigInt::one();
            }
            r.push(to_integer(b));
            r
        })
        .collect();
    let mut t = Tableau {
        rows,
        obj: Vec::new(),
        den: BigInt::one(),
        basis,
        cols: total,
    };

    let mut kept: Vec<usize> = (0..a.len()).collect();
    if artificials > 0 {
        let cost: Vec<BigInt> = (0..total)
            .map(|j| {
                if j >= structural {
                    -BigInt::one()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        t.set_objective(&cost);
        t.optimize(|_| true);
        if t.value().is_negative() {
            return Ok(LpSolution::Infeasible);
        }
        // Drive degenerate artificials out of the basis; a row with no
        // structural entry left is a linear combination of the others.
        let mut drop = Vec::new();
        for i in 0..t.rows.len() {
            if t.basis[i] < structural {
                continue;
            }
            match (0..structural).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => drop.push(i),
            }
        }
        for &i in drop.iter().rev() {
            t.rows.remove(i);
            t.basis.remove(i);
            kept.remove(i);
        }
    }

    let mut cost = vec![Rational::zero(); total];
    for (cj, &(plus, minus)) in lp.objective.iter().zip(&split) {
        cost[plus] = cj.clone();
        if let Some(m) = minus {
            cost[m] = -cj.clone();
        }
    }
    let cost_scale = integer_scale(&cost);
    cost.iter_mut().for_each(|x| *x *= &cost_scale);
    t.set_objective(&cost.iter().map(to_integer).collect::<Vec<_>>());
    if !t.optimize(|j| j < structural) {
        return Ok(LpSolution::Unbounded);
    }

    let mut xs = vec![Rational::zero(); total];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        xs[b] = t.entry(&row[total]);
    }
    let primal: Vec<Rational> = split
        .iter()
        .map(|&(plus, minus)| match minus {
            Some(m) => &xs[plus] - &xs[m],
            None => xs[plus].clone(),
        })
        .collect();

    // Duals from Bᵀy = c_B on the surviving rows, mapped back through the scalings.
    if t.basis.iter().any(|&b| b >= structural) {
        return Err(Error::internal(
            "artificial variable left in the final basis",
        ));
    }
    let bt: Vec<Vec<Rational>> = t
        .basis
        .iter()
        .map(|&b| kept.iter().map(|&r| a[r][b].clone()).collect())
        .collect();
    let cb: Vec<Rational> = t.basis.iter().map(|&b| cost[b].clone()).collect();
    let y = linalg::solve(&bt, &cb).map_err(|_| Error::internal("singular final basis"))?;
    let mut dual = vec![Rational::zero(); lp.constraints.len()];
    for (&r, yr) in kept.iter().zip(y) {
        dual[r] = yr * &row_scale[r] / &cost_scale;
    }

    Ok(LpSolution::Optimal {
        value: dot(&lp.objective, &primal),
        primal,
        dual,
    })
}
