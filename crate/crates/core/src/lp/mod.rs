//! Exact linear programming over the rationals.
//!
//! Every certificate in the crate comes out of [`solve`]: a dense two-phase
//! simplex with Bland's rule. Optimal answers carry a primal and a dual
//! vector, and both are checked exactly (feasibility plus `c·x = b·y`)
//! before they are returned.

pub mod linalg;
mod simplex;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{dot, Rational};

pub use linalg::affine_hyperplane_through;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    NonNegative,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `max c·x` subject to row constraints and per-variable bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bound>,
}

impl LinearProgram {
    /// Zero objective, no constraints, all variables non-negative.
    pub fn new(vars: usize) -> Self {
        LinearProgram {
            objective: vec![Rational::zero(); vars],
            constraints: Vec::new(),
            bounds: vec![Bound::NonNegative; vars],
        }
    }

    pub fn vars(&self) -> usize {
        self.objective.len()
    }

    pub fn maximize(mut self, objective: Vec<Rational>) -> Self {
        self.objective = objective;
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn set_free(&mut self, var: usize) {
        self.bounds[var] = Bound::Free;
    }

    fn check_dims(&self) -> Result<()> {
        let n = self.vars();
        if self.bounds.len() != n {
            return Err(Error::dims(format!(
                "{} bounds for {n} variables",
                self.bounds.len()
            )));
        }
        if let Some((i, c)) = self
            .constraints
            .iter()
            .enumerate()
            .find(|(_, c)| c.coeffs.len() != n)
        {
            return Err(Error::dims(format!(
                "row {i} has {} coefficients for {n} variables",
                c.coeffs.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpSolution {
    Optimal {
        value: Rational,
        primal: Vec<Rational>,
        /// One multiplier per constraint row: `≥ 0` on `≤` rows, `≤ 0` on
        /// `≥` rows, free on equalities.
        dual: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn status(&self) -> LpStatus {
        match self {
            LpSolution::Optimal { .. } => LpStatus::Optimal,
            LpSolution::Infeasible => LpStatus::Infeasible,
            LpSolution::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpSolution::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn primal(&self) -> Option<&[Rational]> {
        match self {
            LpSolution::Optimal { primal, .. } => Some(primal),
            _ => None,
        }
    }

    pub fn dual(&self) -> Option<&[Rational]> {
        match self {
            LpSolution::Optimal { dual, .. } => Some(dual),
            _ => None,
        }
    }
}

pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    lp.check_dims()?;
    let solution = simplex::solve(lp)?;
    if let LpSolution::Optimal {
        value,
        primal,
        dual,
    } = &solution
    {
        verify_optimum(lp, value, primal, dual)?;
    }
    Ok(solution)
}

/// Phase one only: any point satisfying `constraints`, all variables `≥ 0`.
pub fn feasible_point(vars: usize, constraints: Vec<Constraint>) -> Result<LpSolution> {
    let lp = LinearProgram {
        constraints,
        ..LinearProgram::new(vars)
    };
    solve(&lp)
}

fn row_holds(lhs: &Rational, relation: Relation, rhs: &Rational) -> bool {
    match relation {
        Relation::Le => lhs <= rhs,
        Relation::Ge => lhs >= rhs,
        Relation::Eq => lhs == rhs,
    }
}

fn verify_optimum(
    lp: &LinearProgram,
    value: &Rational,
    primal: &[Rational],
    dual: &[Rational],
) -> Result<()> {
    for (j, (x, bound)) in primal.iter().zip(&lp.bounds).enumerate() {
        if *bound == Bound::NonNegative && x.is_negative() {
            return Err(Error::internal(format!("primal variable {j} is negative")));
        }
    }
    for (i, c) in lp.constraints.iter().enumerate() {
        if !row_holds(&dot(&c.coeffs, primal), c.relation, &c.rhs) {
            return Err(Error::internal(format!("primal violates row {i}")));
        }
        let sign_ok = match c.relation {
            Relation::Le => !dual[i].is_negative(),
            Relation::Ge => !dual[i].is_positive(),
            Relation::Eq => true,
        };
        if !sign_ok {
            return Err(Error::internal(format!(
                "dual multiplier {i} has the wrong sign"
            )));
        }
    }
    for j in 0..lp.vars() {
        let reduced: Rational = lp
            .constraints
            .iter()
            .zip(dual)
            .fold(Rational::zero(), |acc, (c, y)| acc + &c.coeffs[j] * y);
        let ok = match lp.bounds[j] {
            Bound::NonNegative => reduced >= lp.objective[j],
            Bound::Free => reduced == lp.objective[j],
        };
        if !ok {
            return Err(Error::internal(format!("dual infeasible at column {j}")));
        }
    }
    let primal_value = dot(&lp.objective, primal);
    let rhs: Vec<Rational> = lp.constraints.iter().map(|c| c.rhs.clone()).collect();
    if &primal_value != value || dot(&rhs, dual) != primal_value {
        return Err(Error::internal("strong duality fails"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn row(coeffs: &[i64], relation: Relation, rhs: i64) -> Constraint {
        Constraint {
            coeffs: coeffs.iter().map(|&c| int(c)).collect(),
            relation,
            rhs: int(rhs),
        }
    }

    #[test]
    fn single_variable_bound() {
        let mut lp = LinearProgram::new(1).maximize(vec![int(1)]);
        lp.constrain(vec![int(1)], Relation::Le, int(1));
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.value(), Some(&int(1)));
        assert_eq!(sol.primal().unwrap(), &[int(1)]);
    }

    #[test]
    fn simplex_face_dual() {
        let mut lp = LinearProgram::new(2).maximize(vec![int(1), int(1)]);
        lp.constrain(vec![int(1), int(1)], Relation::Le, int(1));
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.value(), Some(&int(1)));
        assert_eq!(sol.dual().unwrap(), &[int(1)]);
    }

    #[test]
    fn infeasible_systems() {
        let mut lp = LinearProgram::new(1);
        lp.constrain(vec![int(1)], Relation::Le, int(-1));
        assert_eq!(solve(&lp).unwrap(), LpSolution::Infeasible);

        let sol = feasible_point(
            1,
            vec![row(&[1], Relation::Ge, 1), row(&[1], Relation::Le, 0)],
        )
        .unwrap();
        assert_eq!(sol.status(), LpStatus::Infeasible);
    }

    #[test]
    fn feasible_interval() {
        let sol = feasible_point(
            1,
            vec![row(&[1], Relation::Ge, 1), row(&[1], Relation::Le, 2)],
        )
        .unwrap();
        let x = &sol.primal().unwrap()[0];
        assert!(*x >= int(1) && *x <= int(2));
    }

    #[test]
    fn unbounded_and_free_variables() {
        let mut lp = LinearProgram::new(2).maximize(vec![int(1), int(0)]);
        lp.constrain(vec![int(-1), int(1)], Relation::Le, int(3));
        assert_eq!(solve(&lp).unwrap().status(), LpStatus::Unbounded);

        // A free variable pushed down to its only bound.
        let mut lp = LinearProgram::new(1).maximize(vec![int(-1)]);
        lp.set_free(0);
        lp.constrain(vec![int(1)], Relation::Ge, int(-5));
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.primal().unwrap(), &[int(-5)]);
        assert_eq!(sol.value(), Some(&int(5)));
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2).maximize(vec![int(1), int(2)]);
        lp.constrain(vec![int(1), int(1)], Relation::Eq, int(1));
        lp.constrain(vec![int(2), int(2)], Relation::Eq, int(2));
        lp.constrain(vec![int(1), int(0)], Relation::Ge, frac(1, 3));
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.value(), Some(&frac(5, 3)));
    }

    #[test]
    fn dimension_mismatch() {
        let mut lp = LinearProgram::new(2);
        lp.constrain(vec![int(1)], Relation::Le, int(1));
        assert!(matches!(solve(&lp), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the textbook largest-coefficient rule.
        let mut lp =
            LinearProgram::new(4).maximize(vec![frac(3, 4), int(-150), frac(1, 50), int(-6)]);
        lp.constrain(
            vec![frac(1, 4), int(-60), frac(-1, 25), int(9)],
            Relation::Le,
            int(0),
        );
        lp.constrain(
            vec![frac(1, 2), int(-90), frac(-1, 50), int(3)],
            Relation::Le,
            int(0),
        );
        lp.constrain(vec![int(0), int(0), int(1), int(0)], Relation::Le, int(1));
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.value(), Some(&frac(1, 20)));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=4).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // Exactness and strong duality are verified inside `solve`; an `Err`
        // here means a certificate failed.
        #[test]
        fn random_lps_terminate_with_certificates(
            (m, n) in (1usize..=12, 1usize..=12),
            seed in proptest::collection::vec(small_rational(), 12 * 12 + 24),
            rels in proptest::collection::vec(0u8..3, 12),
        ) {
            let mut it = seed.into_iter();
            let mut lp = LinearProgram::new(n).maximize((0..n).map(|_| it.next().unwrap()).collect());
            for r in rels.iter().take(m) {
                let coeffs: Vec<Rational> = (0..n).map(|_| it.next().unwrap()).collect();
                let relation = [Relation::Le, Relation::Ge, Relation::Eq][*r as usize];
                lp.constrain(coeffs, relation, it.next().unwrap());
            }
            solve(&lp).unwrap();
        }

        #[test]
        fn box_optimum_matches_corner_enumeration(
            bounds in proptest::collection::vec((small_rational(), small_rational()), 1..=6),
            costs in proptest::collection::vec(small_rational(), 6),
        ) {
            let n = bounds.len();
            let boxes: Vec<(Rational, Rational)> = bounds
                .into_iter()
                .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
                .collect();
            let c: Vec<Rational> = costs[..n].to_vec();
            let mut lp = LinearProgram::new(n).maximize(c.clone());
            for (j, (lo, hi)) in boxes.iter().enumerate() {
                lp.set_free(j);
                let mut e = vec![Rational::zero(); n];
                e[j] = int(1);
                lp.constrain(e.clone(), Relation::Ge, lo.clone());
                lp.constrain(e, Relation::Le, hi.clone());
            }
            let mut best: Option<Rational> = None;
            for mask in 0..(1u32 << n) {
                let corner: Vec<Rational> = boxes
                    .iter()
                    .enumerate()
                    .map(|(j, (lo, hi))| if mask >> j & 1 == 1 { hi.clone() } else { lo.clone() })
                    .collect();
                let v = dot(&c, &corner);
                if best.as_ref().is_none_or(|b| v > *b) {
                    best = Some(v);
                }
            }
            let sol = solve(&lp).unwrap();
            prop_assert_eq!(sol.value(), best.as_ref());
        }
    }
}
