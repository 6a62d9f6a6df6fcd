//! Ex-post and ex-ante Pareto efficiency of outcomes, with certificates.
//!
//! Two independent ex-ante tests are provided. The deviation-cone test asks
//! whether some nonnegative combination of state-wise deviations
//! `d(ω,a) = u(ω,a) − u(μ|ω)` is weakly positive and nonzero; by the theorem
//! of the alternative, exactly one of that system and `n ≥ 1, n·d ≤ 0 ∀d` is
//! solvable. The dominance test searches the feasible set `F_p` directly.
//! Both return a strictly positive weight vector when efficient and a
//! dominating outcome when not, and every certificate is re-verified before
//! the report is handed out.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{
    induced_payoff, state_payoff_unchecked, support_counts, Game, Outcome, PayoffVector,
};
use crate::lp::{self, LinearProgram, LpSolution, Relation};
use crate::rational::{dot, int, Rational};
use crate::rule::{outcome_from_rule, DecisionRuleProfile, Rule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation {
    pub state: usize,
    pub joint: usize,
    pub vector: Vec<Rational>,
}

/// All `|Ω|·|A|` deviations, state-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationSet {
    num_joint: usize,
    deviations: Vec<Deviation>,
}

impl DeviationSet {
    pub fn get(&self, state: usize, joint: usize) -> &Deviation {
        &self.deviations[state * self.num_joint + joint]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Deviation> {
        self.deviations.iter()
    }

    pub fn len(&self) -> usize {
        self.deviations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deviations.is_empty()
    }

    /// `Σ λ_d d` for `lambda` indexed like the set.
    pub fn combine(&self, lambda: &[Rational]) -> Vec<Rational> {
        let k = self.deviations.first().map_or(0, |d| d.vector.len());
        let mut acc = vec![Rational::zero(); k];
        for (d, l) in self.deviations.iter().zip(lambda) {
            if l.is_zero() {
                continue;
            }
            for (slot, x) in acc.iter_mut().zip(&d.vector) {
                *slot += l * x;
            }
        }
        acc
    }
}

pub fn deviations(game: &Game, outcome: &Outcome) -> Result<DeviationSet> {
    outcome.check_against(game)?;
    let mut out = Vec::with_capacity(game.num_states() * game.num_joint());
    for s in 0..game.num_states() {
        let base = state_payoff_unchecked(game, outcome.row(s), s);
        for j in 0..game.num_joint() {
            let vector = game
                .payoff(s, j)
                .iter()
                .zip(base.iter())
                .map(|(u, b)| u - b)
                .collect();
            out.push(Deviation {
                state: s,
                joint: j,
                vector,
            });
        }
    }
    Ok(DeviationSet {
        num_joint: game.num_joint(),
        deviations: out,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Efficient,
    Inefficient,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Efficient => "efficient",
            Verdict::Inefficient => "inefficient",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Cone,
    Dominance,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Cone => "cone",
            Method::Dominance => "dominance",
        }
    }
}

/// Evidence of a Pareto improvement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Nonzero weights `λ_{(ω,a)}` on deviations.
    pub lambda: Vec<((usize, usize), Rational)>,
    /// `Σ λ d`, weakly positive and nonzero.
    pub combined: Vec<Rational>,
    /// An outcome whose ex-ante payoff Pareto-dominates `u(μ)`.
    pub dominating_outcome: Outcome,
    /// Its payoff, a point of `F_p`.
    pub dominating_point: PayoffVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingReport {
    pub per_state: Vec<usize>,
    pub total: usize,
    /// `k + |Ω|`.
    pub bound: usize,
    /// `total < bound`. Failing means generically inefficient, nothing more.
    pub passes: bool,
    /// States whose support exceeds the number of players.
    pub states_over_k: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfficiencyReport {
    pub verdict: Verdict,
    pub method: Method,
    /// Present iff efficient; every entry is at least one.
    pub weights: Option<Vec<Rational>>,
    /// Present iff inefficient.
    pub witness: Option<Witness>,
    pub counting: CountingReport,
    /// For inefficient outcomes that are still supported by a nonnegative,
    /// nonzero weight vector (weakly efficient): that vector, normalized to
    /// sum to one. Strict positivity is what the verdict tests.
    pub weakly_supported: Option<Vec<Rational>>,
}

impl EfficiencyReport {
    fn efficient(
        game: &Game,
        devs: &DeviationSet,
        method: Method,
        weights: Vec<Rational>,
        counting: CountingReport,
    ) -> Result<Self> {
        if weights.len() != game.players() || weights.iter().any(|n| *n < int(1)) {
            return Err(Error::internal(
                "weight certificate is not componentwise ≥ 1",
            ));
        }
        if devs.iter().any(|d| dot(&weights, &d.vector).is_positive()) {
            return Err(Error::internal(
                "weight certificate is beaten by a deviation",
            ));
        }
        Ok(EfficiencyReport {
            verdict: Verdict::Efficient,
            method,
            weights: Some(weights),
            witness: None,
            counting,
            weakly_supported: None,
        })
    }

    fn inefficient(
        game: &Game,
        outcome: &Outcome,
        devs: &DeviationSet,
        method: Method,
        lambda: Vec<Rational>,
        dominating_outcome: Outcome,
        counting: CountingReport,
    ) -> Result<Self> {
        if lambda.iter().any(Signed::is_negative) || lambda.iter().all(Zero::is_zero) {
            return Err(Error::internal(
                "deviation weights are not nonnegative and nonzero",
            ));
        }
        let combined = devs.combine(&lambda);
        if combined.iter().any(Signed::is_negative) || combined.iter().all(Zero::is_zero) {
            return Err(Error::internal(
                "combined deviation is not a Pareto improvement",
            ));
        }
        let base = induced_payoff(game, outcome)?;
        let dominating_point = induced_payoff(game, &dominating_outcome)?;
        if !dominating_point.pareto_dominates(&base) {
            return Err(Error::internal("dominating point does not dominate"));
        }
        let weakly_supported = weak_support(game, devs)?;
        let lambda = devs
            .iter()
            .zip(lambda)
            .filter(|(_, l)| !l.is_zero())
            .map(|(d, l)| ((d.state, d.joint), l))
            .collect();
        Ok(EfficiencyReport {
            verdict: Verdict::Inefficient,
            method,
            weights: None,
            witness: Some(Witness {
                lambda,
                combined,
                dominating_outcome,
                dominating_point,
            }),
            counting,
            weakly_supported,
        })
    }
}

fn weight_lp(k: usize, devs: &DeviationSet) -> LinearProgram {
    let mut lp = LinearProgram::new(k).maximize(vec![int(-1); k]);
    for d in devs.iter() {
        if d.vector.iter().any(|x| !x.is_zero()) {
            lp.constrain(d.vector.clone(), Relation::Le, Rational::zero());
        }
    }
    lp
}

/// `n ≥ 1`, `n·d ≤ 0` for every deviation, minimizing `Σ n`.
fn common_positive_weights(k: usize, devs: &DeviationSet) -> Result<Option<Vec<Rational>>> {
    let mut lp = weight_lp(k, devs);
    for i in 0..k {
        let mut e = vec![Rational::zero(); k];
        e[i] = int(1);
        lp.constrain(e, Relation::Ge, int(1));
    }
    Ok(match lp::solve(&lp)? {
        LpSolution::Optimal { primal, .. } => Some(primal),
        LpSolution::Infeasible => None,
        LpSolution::Unbounded => return Err(Error::internal("weight LP unbounded")),
    })
}

fn weak_support(game: &Game, devs: &DeviationSet) -> Result<Option<Vec<Rational>>> {
    let k = game.players();
    let mut lp = weight_lp(k, devs);
    lp.constrain(vec![int(1); k], Relation::Eq, int(1));
    Ok(lp::solve(&lp)?.primal().map(<[Rational]>::to_vec))
}

pub fn counting_bound(game: &Game, outcome: &Outcome) -> Result<CountingReport> {
    outcome.check_against(game)?;
    let counts = support_counts(outcome);
    let k = game.players();
    let bound = k + game.num_states();
    let states_over_k = counts
        .per_state
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > k)
        .map(|(s, _)| s)
        .collect();
    Ok(CountingReport {
        passes: counts.total < bound,
        per_state: counts.per_state,
        total: counts.total,
        bound,
        states_over_k,
    })
}

/// Deviation-cone test with the alternative system as cross-check.
pub fn ex_ante_efficient_cone(game: &Game, outcome: &Outcome) -> Result<EfficiencyReport> {
    let devs = deviations(game, outcome)?;
    let counting = counting_bound(game, outcome)?;
    let k = game.players();
    let m = devs.len();

    // max 1·Σλd  s.t.  Σλd ≥ 0,  Σλ ≤ 1,  λ ≥ 0.
    let objective = devs.iter().map(|d| d.vector.iter().sum()).collect();
    let mut cone = LinearProgram::new(m).maximize(objective);
    for i in 0..k {
        cone.constrain(
            devs.iter().map(|d| d.vector[i].clone()).collect(),
            Relation::Ge,
            Rational::zero(),
        );
    }
    cone.constrain(vec![int(1); m], Relation::Le, int(1));
    let (value, lambda) = match lp::solve(&cone)? {
        LpSolution::Optimal { value, primal, .. } => (value, primal),
        other => {
            return Err(Error::internal(format!(
                "deviation-cone LP is {:?}, expected optimal",
                other.status()
            )))
        }
    };
    let weights = common_positive_weights(k, &devs)?;

    match (value.is_positive(), weights) {
        (false, Some(n)) => EfficiencyReport::efficient(game, &devs, Method::Cone, n, counting),
        (true, None) => {
            let dominating = improve_along(game, outcome, &devs, &lambda)?;
            EfficiencyReport::inefficient(
                game,
                outcome,
                &devs,
                Method::Cone,
                lambda,
                dominating,
                counting,
            )
        }
        (true, Some(_)) => Err(Error::internal(
            "both a Pareto-improving deviation mixture and positive weights exist",
        )),
        (false, None) => Err(Error::internal(
            "neither a Pareto-improving deviation mixture nor positive weights exist",
        )),
    }
}

/// Outcome `ν(·|ω) = (1 − Σ_a s)μ(·|ω) + Σ_a s δ_a` with
/// `s_{ω,a} = λ_{ω,a}·min p / p(ω)`, so that `u(ν) = u(μ) + min p · Σλd`.
fn improve_along(
    game: &Game,
    outcome: &Outcome,
    devs: &DeviationSet,
    lambda: &[Rational],
) -> Result<Outcome> {
    let c = game
        .prior()
        .iter()
        .min()
        .cloned()
        .ok_or_else(|| Error::invalid("game has no states"))?;
    let mut rows = Vec::with_capacity(game.num_states());
    for (s, p) in game.prior().iter().enumerate() {
        let shares: Vec<Rational> = (0..game.num_joint())
            .map(|j| &lambda[s * game.num_joint() + j] * &c / p)
            .collect();
        let keep = Rational::one() - shares.iter().sum::<Rational>();
        let row = outcome
            .row(s)
            .iter()
            .zip(shares)
            .map(|(mu, share)| mu * &keep + share)
            .collect();
        rows.push(row);
    }
    debug_assert_eq!(devs.len(), lambda.len());
    Outcome::new(rows).map_err(|e| Error::internal(format!("improved outcome invalid: {e}")))
}

/// Direct search of `F_p` for a Pareto-dominating feasible payoff.
pub fn ex_ante_efficient_dominance(game: &Game, outcome: &Outcome) -> Result<EfficiencyReport> {
    let devs = deviations(game, outcome)?;
    let counting = counting_bound(game, outcome)?;
    let base = induced_payoff(game, outcome)?;
    let (k, na, ns) = (game.players(), game.num_joint(), game.num_states());
    let var = |s: usize, j: usize| s * na + j;

    // ν(a|ω) ≥ 0 with unit rows; v = Σ p ν u ≥ u(μ); maximize Σ_i v_i.
    let mut objective = vec![Rational::zero(); ns * na];
    let mut rows = vec![vec![Rational::zero(); ns * na]; k];
    for (s, p) in game.prior().iter().enumerate() {
        for j in 0..na {
            for (i, u) in game.payoff(s, j).iter().enumerate() {
                let w = p * u;
                objective[var(s, j)] += &w;
                rows[i][var(s, j)] = w;
            }
        }
    }
    let mut lp = LinearProgram::new(ns * na).maximize(objective);
    for s in 0..ns {
        let mut e = vec![Rational::zero(); ns * na];
        e[var(s, 0)..var(s, 0) + na].fill(int(1));
        lp.constrain(e, Relation::Eq, int(1));
    }
    for (row, b) in rows.into_iter().zip(base.iter()) {
        lp.constrain(row, Relation::Ge, b.clone());
    }
    let LpSolution::Optimal {
        value,
        primal,
        dual,
    } = lp::solve(&lp)?
    else {
        return Err(Error::internal(
            "dominance LP is not optimal although μ is feasible",
        ));
    };

    let gain = value - base.iter().sum::<Rational>();
    if gain.is_zero() {
        // Multipliers on the `v ≥ u(μ)` rows are ≤ 0; n = 1 − y ≥ 1.
        let weights = dual[ns..].iter().map(|y| Rational::one() - y).collect();
        EfficiencyReport::efficient(game, &devs, Method::Dominance, weights, counting)
    } else {
        let lambda: Vec<Rational> = (0..ns)
            .flat_map(|s| (0..na).map(move |j| (s, j)))
            .map(|(s, j)| &game.prior()[s] * &primal[var(s, j)])
            .collect();
        let nu = Outcome::new(primal.chunks(na).map(<[Rational]>::to_vec).collect())?;
        EfficiencyReport::inefficient(
            game,
            outcome,
            &devs,
            Method::Dominance,
            lambda,
            nu,
            counting,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExPostReport {
    pub state: usize,
    pub verdict: Verdict,
    /// `u(μ|ω)`.
    pub point: PayoffVector,
    /// A mixture over joint actions whose payoff dominates `u(μ|ω)`.
    pub dominating_mixture: Option<Vec<Rational>>,
    pub dominating_point: Option<PayoffVector>,
}

pub fn ex_post_efficient(game: &Game, outcome: &Outcome, state: usize) -> Result<ExPostReport> {
    outcome.check_against(game)?;
    game.check_state(state)?;
    let point = state_payoff_unchecked(game, outcome.row(state), state);
    let na = game.num_joint();
    let payoffs = game.payoffs_in(state);

    let objective = payoffs.iter().map(|u| u.iter().sum()).collect();
    let mut lp = LinearProgram::new(na).maximize(objective);
    lp.constrain(vec![int(1); na], Relation::Eq, int(1));
    for (i, b) in point.iter().enumerate() {
        lp.constrain(
            payoffs.iter().map(|u| u[i].clone()).collect(),
            Relation::Ge,
            b.clone(),
        );
    }
    let LpSolution::Optimal { value, primal, .. } = lp::solve(&lp)? else {
        return Err(Error::internal(
            "ex-post LP is not optimal although μ(ω) is feasible",
        ));
    };
    if value == point.iter().sum::<Rational>() {
        return Ok(ExPostReport {
            state,
            verdict: Verdict::Efficient,
            point,
            dominating_mixture: None,
            dominating_point: None,
        });
    }
    let better = state_payoff_unchecked(game, &primal, state);
    if !better.pareto_dominates(&point) {
        return Err(Error::internal("ex-post improvement does not dominate"));
    }
    Ok(ExPostReport {
        state,
        verdict: Verdict::Inefficient,
        point,
        dominating_mixture: Some(primal),
        dominating_point: Some(better),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConditionsReport {
    /// States in which the prescribed joint action differs across type profiles.
    pub varying_states: usize,
    /// `varying_states ≥ k`.
    pub condition_i: bool,
    /// Per-player rules only: players using at least two actions.
    pub q: Option<usize>,
    /// Per-player rules only: `q ≥ 1` and `|Ω|(2^q − 1) ≥ k`.
    pub condition_ii: Option<bool>,
    /// Either condition holds: generically inefficient (advisory only).
    pub generically_inefficient: bool,
    pub outcome: Outcome,
}

pub fn corollary1_check(
    profile: &DecisionRuleProfile,
    game: &Game,
) -> Result<RuleConditionsReport> {
    if !profile.full_support() {
        return Err(Error::Precondition(
            "the type distribution must have full support".into(),
        ));
    }
    let outcome = outcome_from_rule(profile, game)?;
    let k = game.players();
    let profiles: usize = profile.type_counts().iter().product();
    let mut varying_states = 0;
    for s in 0..game.num_states() {
        let first = profile.action(game, 0, s)?;
        let mut varies = false;
        for t in 1..profiles {
            if profile.action(game, t, s)? != first {
                varies = true;
                break;
            }
        }
        varying_states += usize::from(varies);
    }
    let condition_i = varying_states >= k;
    let (q, condition_ii) = match profile.rule() {
        Rule::Joint(_) => (None, None),
        Rule::PerPlayer(table) => {
            let q = table
                .iter()
                .filter(|row| row.iter().any(|&a| a != row[0]))
                .count();
            let lhs = game.num_states().checked_mul((1usize << q.min(63)) - 1);
            let holds = q >= 1 && lhs.is_none_or(|v| v >= k);
            (Some(q), Some(holds))
        }
    };
    Ok(RuleConditionsReport {
        varying_states,
        condition_i,
        q,
        condition_ii,
        generically_inefficient: condition_i || condition_ii == Some(true),
        outcome,
    })
}
