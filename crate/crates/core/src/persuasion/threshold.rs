//! The threshold environment: a safe action `a_0` and risky actions
//! `a_1..a_n`, where the receiver takes `a_i` only once `p(ω_i) ≥ T`.
//!
//! Hyperplanes are computed in reduced coordinates `(p(ω_1), …, p(ω_n))`,
//! dropping `p(ω_0)`, so that `n` points always determine one.

use num_traits::{One, Signed, Zero};

use super::{solve_bp, BpSolution, SenderReceiverGame};
use crate::efficiency::{counting_bound, ex_ante_efficient_cone, CountingReport, Verdict};
use crate::error::{Error, Result};
use crate::game::validate_prior;
use crate::lp::{self, affine_hyperplane_through, LinearProgram, LpSolution, Relation};
use crate::rational::{dot, frac, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterPoint {
    /// `w<i>` for a vertex, `o<i><j>` for the extreme point of `C_i` on `[ω_i, ω_j]`.
    pub label: String,
    pub coords: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdEnv {
    pub n: usize,
    pub t: Rational,
    /// `u_S(a_0..a_n)`, with `u_S(a_0) = 0`.
    pub sender: Vec<Rational>,
    /// Realization with `E_p u_R(a_i) = p(ω_i) − T` and `E_p u_R(a_0) = 0`.
    pub game: SenderReceiverGame,
    pub outer_points: Vec<OuterPoint>,
}

impl ThresholdEnv {
    fn vertex(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n + 1];
        v[i] = int(1);
        v
    }

    /// `o_ij`: `p(ω_i) = T`, `p(ω_j) = 1 − T`.
    pub fn o(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n + 1];
        v[i] = self.t.clone();
        v[j] = Rational::one() - &self.t;
        v
    }
}

/// `sender[i − 1] = u_S(a_i)` for the risky actions.
pub fn build_threshold_env(n: usize, t: Rational, sender: Vec<Rational>) -> Result<ThresholdEnv> {
    if n < 2 {
        return Err(Error::invalid(
            "the threshold environment needs n ≥ 2 risky actions",
        ));
    }
    if t <= frac(1, 2) || t >= int(1) {
        return Err(Error::invalid(format!("threshold {t} is outside (1/2, 1)")));
    }
    if sender.len() != n || sender.iter().any(|u| !u.is_positive()) {
        return Err(Error::invalid("need n strictly positive sender payoffs"));
    }
    let states: Vec<String> = (0..=n).map(|i| format!("w{i}")).collect();
    let actions: Vec<String> = (0..=n).map(|i| format!("a{i}")).collect();
    let mut us = vec![Rational::zero()];
    us.extend(sender);
    let payoffs = (0..=n)
        .map(|s| {
            (0..=n)
                .map(|a| {
                    let ur = match a {
                        0 => Rational::zero(),
                        _ if a == s => Rational::one() - &t,
                        _ => -t.clone(),
                    };
                    (us[a].clone(), ur)
                })
                .collect()
        })
        .collect();
    let uniform = vec![frac(1, n as i64 + 1); n + 1];
    let game = SenderReceiverGame::from_tables(states, uniform, actions, payoffs)?;
    let mut env = ThresholdEnv {
        n,
        t,
        sender: us,
        game,
        outer_points: Vec::new(),
    };
    // Every vertex must sit strictly inside its own cell.
    for i in 0..=n {
        if env.game.best_responses(&env.vertex(i))? != vec![i] {
            return Err(Error::internal(format!(
                "ω_{i} is not interior to its cell"
            )));
        }
    }
    let mut outer: Vec<OuterPoint> = (0..=n)
        .map(|i| OuterPoint {
            label: format!("w{i}"),
            coords: env.vertex(i),
        })
        .collect();
    for i in 1..=n {
        for j in (0..=n).filter(|&j| j != i) {
            outer.push(OuterPoint {
                label: format!("o{i}{j}"),
                coords: env.o(i, j),
            });
        }
    }
    env.outer_points = outer;
    Ok(env)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionReport {
    /// `(h, c)` with `H_i = {h·(p_1..p_n) = c}`, index 0 for `H_0`.
    pub hyperplanes: Vec<(Vec<Rational>, Rational)>,
    /// `p ∈ R_i` (closed), `i = 0..n`.
    pub in_region: Vec<bool>,
    /// `p ∈ int(R_i)`.
    pub in_region_interior: Vec<bool>,
    pub in_r_star: bool,
    pub in_r_star_interior: bool,
    /// Projection from `ω_0` onto the face `p(ω_0) = 0`; `q[0] = 0`.
    pub q: Vec<Rational>,
    pub i_star: usize,
    pub j_star: usize,
    pub t_p: Rational,
}

fn reduced(p: &[Rational]) -> Vec<Rational> {
    p[1..].to_vec()
}

pub fn region_analysis(env: &ThresholdEnv, prior: &[Rational]) -> Result<RegionReport> {
    let n = env.n;
    validate_prior(prior, n + 1)?;
    let mut hyperplanes = Vec::with_capacity(n + 1);
    hyperplanes.push(affine_hyperplane_through(
        &(1..=n).map(|i| reduced(&env.o(i, 0))).collect::<Vec<_>>(),
    )?);
    for i in 1..=n {
        let mut pts = vec![vec![Rational::zero(); n]];
        pts.extend((1..=n).filter(|&j| j != i).map(|j| reduced(&env.o(j, i))));
        hyperplanes.push(affine_hyperplane_through(&pts)?);
    }

    let x = reduced(prior);
    let mut in_region = Vec::with_capacity(n + 1);
    let mut in_region_interior = Vec::with_capacity(n + 1);
    for (i, (h, c)) in hyperplanes.iter().enumerate() {
        let side = (dot(h, &x) - c).signum();
        let own = (dot(h, &reduced(&env.vertex(i))) - c).signum();
        if own.is_zero() {
            return Err(Error::internal(format!("ω_{i} lies on H_{i}")));
        }
        in_region.push(side == own || side.is_zero());
        in_region_interior.push(side == own);
    }
    let pairs = |flags: &[bool]| flags[0] && (1..=n).filter(|&i| flags[i]).count() >= 2;
    let in_r_star = pairs(&in_region);
    let in_r_star_interior = pairs(&in_region_interior);

    let rest = Rational::one() - &prior[0];
    let mut q = vec![Rational::zero()];
    q.extend(prior[1..].iter().map(|pi| pi / &rest));
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by(|&a, &b| q[b].cmp(&q[a]).then(a.cmp(&b)));
    let (i_star, j_star) = (order[0], order[1]);
    let t_p = [
        rest.clone(),
        Rational::one() - &q[i_star],
        Rational::one() - &q[j_star],
    ]
    .into_iter()
    .max()
    .unwrap();

    if in_r_star_interior != (env.t > t_p) {
        return Err(Error::internal(
            "hyperplane membership and the T_p threshold disagree",
        ));
    }
    Ok(RegionReport {
        hyperplanes,
        in_region,
        in_region_interior,
        in_r_star,
        in_r_star_interior,
        q,
        i_star,
        j_star,
        t_p,
    })
}

/// Best sender value from Bayes-plausible distributions over `Out(𝒫)`.
pub fn outer_point_value(env: &ThresholdEnv, prior: &[Rational]) -> Result<Rational> {
    validate_prior(prior, env.n + 1)?;
    let values = env
        .outer_points
        .iter()
        .map(|o| env.game.sender_value_at(&o.coords))
        .collect::<Result<Vec<_>>>()?;
    let mut lp = LinearProgram::new(env.outer_points.len()).maximize(values);
    for (s, ps) in prior.iter().enumerate() {
        lp.constrain(
            env.outer_points
                .iter()
                .map(|o| o.coords[s].clone())
                .collect(),
            Relation::Eq,
            ps.clone(),
        );
    }
    match lp::solve(&lp)? {
        LpSolution::Optimal { value, .. } => Ok(value),
        other => Err(Error::internal(format!(
            "outer-point LP is {:?}; the vertices alone are Bayes-plausible",
            other.status()
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixingPattern {
    /// `a_0` and two risky actions are all played in `ω_0`.
    ThreeActionsInSafeState,
    /// Two risky states each see at least two actions.
    MixedInTwoRiskyStates,
    Both,
    Neither,
}

impl MixingPattern {
    pub fn as_str(self) -> &'static str {
        match self {
            MixingPattern::ThreeActionsInSafeState => "three_actions_in_safe_state",
            MixingPattern::MixedInTwoRiskyStates => "mixed_in_two_risky_states",
            MixingPattern::Both => "both",
            MixingPattern::Neither => "neither",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdReport {
    pub region: RegionReport,
    /// `p ∈ int(R_*)`.
    pub applicable: bool,
    pub bp: BpSolution,
    pub outer_point_value: Rational,
    pub counting: CountingReport,
    pub cone_verdict: Verdict,
    pub case: MixingPattern,
    /// Some state sees more than one action.
    pub mixed: bool,
    /// Applicable, mixed and inefficient.
    pub confirmed: bool,
}

pub fn verify_threshold_inefficiency(
    env: &ThresholdEnv,
    prior: &[Rational],
) -> Result<ThresholdReport> {
    let region = region_analysis(env, prior)?;
    let bp = solve_bp(&env.game, prior)?;
    let outer = outer_point_value(env, prior)?;
    if outer != bp.value {
        return Err(Error::internal(format!(
            "outer-point value {outer} differs from the obedience LP value {}",
            bp.value
        )));
    }
    let game = env.game.game().with_prior(prior.to_vec())?;
    let counting = counting_bound(&game, &bp.outcome)?;
    let cone_verdict = ex_ante_efficient_cone(&game, &bp.outcome)?.verdict;

    let safe = bp.outcome.support(0);
    let three = safe.contains(&0) && safe.iter().filter(|&&a| a != 0).count() >= 2;
    let mixed_risky = (1..=env.n)
        .filter(|&s| bp.outcome.support(s).len() >= 2)
        .count()
        >= 2;
    let case = match (three, mixed_risky) {
        (true, true) => MixingPattern::Both,
        (true, false) => MixingPattern::ThreeActionsInSafeState,
        (false, true) => MixingPattern::MixedInTwoRiskyStates,
        (false, false) => MixingPattern::Neither,
    };
    let applicable = region.in_r_star_interior;
    let mixed = !bp.outcome.is_pure();
    Ok(ThresholdReport {
        mixed,
        confirmed: applicable && mixed && cone_verdict == Verdict::Inefficient,
        region,
        applicable,
        bp,
        outer_point_value: outer,
        counting,
        cone_verdict,
        case,
    })
}

/// Interior grid points of the simplex over `states` coordinates with
/// common denominator `denom`, in lexicographic order.
pub fn simplex_grid(states: usize, denom: usize) -> Vec<Vec<Rational>> {
    fn rec(left: usize, slots: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            if left >= 1 {
                acc.push(left);
                out.push(acc.clone());
                acc.pop();
            }
            return;
        }
        for k in 1..left.saturating_sub(slots - 2) {
            acc.push(k);
            rec(left - k, slots - 1, acc, out);
            acc.pop();
        }
    }
    if states == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(denom, states, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|v| {
            v.into_iter()
                .map(|k| frac(k as i64, denom as i64))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env2() -> ThresholdEnv {
        build_threshold_env(2, frac(7, 10), vec![int(2), int(3)]).unwrap()
    }

    #[test]
    fn outer_points_of_n2() {
        let env = env2();
        assert_eq!(env.outer_points.len(), 7);
        assert_eq!(env.o(1, 2), vec![int(0), frac(7, 10), frac(3, 10)]);
        assert_eq!(env.o(1, 0), vec![frac(3, 10), frac(7, 10), int(0)]);
        let env3 = build_threshold_env(3, frac(3, 4), vec![int(1), int(2), int(3)]).unwrap();
        assert_eq!(env3.outer_points.len(), 13);
    }

    #[test]
    fn realized_partition() {
        let env = env2();
        for k in 0..=10 {
            let p1 = frac(k, 10);
            let belief = vec![(int(1) - &p1) / int(2), p1.clone(), (int(1) - &p1) / int(2)];
            let a1 = env.game.expected_receiver(&belief, 1);
            let a0 = env.game.expected_receiver(&belief, 0);
            assert_eq!(a1 >= a0, p1 >= frac(7, 10));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_threshold_env(1, frac(7, 10), vec![int(1)]).is_err());
        assert!(build_threshold_env(2, frac(1, 2), vec![int(1), int(2)]).is_err());
        assert!(build_threshold_env(2, int(1), vec![int(1), int(2)]).is_err());
        assert!(build_threshold_env(2, frac(7, 10), vec![int(0), int(2)]).is_err());
    }

    #[test]
    fn hyperplanes_in_reduced_coordinates() {
        let env = env2();
        let r = region_analysis(&env, &[frac(1, 2), frac(1, 4), frac(1, 4)]).unwrap();
        // H_0: p1 + p2 = 7/10, i.e. p(ω0) = 3/10.
        assert_eq!(r.hyperplanes[0], (vec![int(1), int(1)], frac(7, 10)));
        // H_1 through ω_0 and o_21: 7 p1 − 3 p2 = 0.
        assert_eq!(r.hyperplanes[1], (vec![int(1), frac(-3, 7)], int(0)));
        assert_eq!(r.t_p, frac(1, 2));
        assert!(r.in_r_star_interior);
    }

    #[test]
    fn threshold_of_the_barycentre() {
        let r = region_analysis(&env2(), &[frac(1, 3), frac(1, 3), frac(1, 3)]).unwrap();
        assert_eq!(r.q, vec![int(0), frac(1, 2), frac(1, 2)]);
        assert_eq!((r.i_star, r.j_star), (1, 2));
        assert_eq!(r.t_p, frac(2, 3));
    }

    #[test]
    fn near_safe_vertex_is_in_r0() {
        let r = region_analysis(&env2(), &[frac(9, 10), frac(1, 20), frac(1, 20)]).unwrap();
        assert!(r.in_region[0] && r.in_region_interior[0]);
    }

    #[test]
    fn inefficient_inside_r_star() {
        let rep =
            verify_threshold_inefficiency(&env2(), &[frac(1, 2), frac(1, 4), frac(1, 4)]).unwrap();
        assert!(rep.applicable && rep.confirmed);
        assert_eq!(rep.cone_verdict, Verdict::Inefficient);
        assert_ne!(rep.case, MixingPattern::Neither);
        assert_eq!(rep.outer_point_value, rep.bp.value);
    }

    #[test]
    fn not_applicable_in_a_risky_cell() {
        let rep = verify_threshold_inefficiency(&env2(), &[frac(1, 10), frac(8, 10), frac(1, 10)])
            .unwrap();
        assert!(!rep.applicable && !rep.confirmed);
    }

    #[test]
    fn grid_enumeration() {
        let g = simplex_grid(3, 5);
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(|p| p.iter().sum::<Rational>() == int(1)));
        assert_eq!(simplex_grid(3, 40).len(), 741);
        assert_eq!(simplex_grid(2, 2), vec![vec![frac(1, 2), frac(1, 2)]]);
    }
}
