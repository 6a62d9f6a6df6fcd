//! Bayesian persuasion.
//!
//! The sender commits to a signal; by the revelation principle it suffices
//! to search over direct recommendations `μ(a|ω)` that the receiver is
//! willing to obey. That is one finite LP. For two states the value is
//! cross-checked against the concave envelope of the sender's value
//! function.

mod threshold;
mod value;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{validate_prior, Game, Outcome};
use crate::lp::{self, LinearProgram, LpSolution, Relation};
use crate::rational::{dot, int, Rational};

pub use threshold::{
    build_threshold_env, outer_point_value, region_analysis, simplex_grid,
    verify_threshold_inefficiency, MixingPattern, OuterPoint, RegionReport, ThresholdEnv,
    ThresholdReport,
};
pub use value::{concavify_1d, value_function_1d, ConcaveEnvelope, LinearPiece, ValueFunction1d};

/// A two-player game whose first player (the sender) has a single dummy
/// action, so joint actions are the receiver's actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenderReceiverGame {
    game: Game,
}

pub const SENDER: usize = 0;
pub const RECEIVER: usize = 1;

impl SenderReceiverGame {
    pub fn new(game: Game) -> Result<Self> {
        if game.players() != 2 {
            return Err(Error::invalid(
                "a sender-receiver game has exactly two players",
            ));
        }
        if game.actions()[SENDER].len() != 1 {
            return Err(Error::invalid(
                "the sender must have a single (dummy) action in a sender-receiver game",
            ));
        }
        Ok(SenderReceiverGame { game })
    }

    /// `payoffs[state][action] = (u_S, u_R)`.
    pub fn from_tables(
        states: Vec<String>,
        prior: Vec<Rational>,
        actions: Vec<String>,
        payoffs: Vec<Vec<(Rational, Rational)>>,
    ) -> Result<Self> {
        if payoffs.len() != states.len() || payoffs.iter().any(|row| row.len() != actions.len()) {
            return Err(Error::dims("payoff table does not match states × actions"));
        }
        let game = Game::from_fn(
            states,
            prior,
            vec![vec!["s".to_string()], actions],
            |s, a| {
                let (us, ur) = &payoffs[s][a[1]];
                vec![us.clone(), ur.clone()]
            },
        )?;
        Ok(SenderReceiverGame { game })
    }

    pub fn game(&self) -> &Game {
        &self.game
    }

    pub fn into_game(self) -> Game {
        self.game
    }

    pub fn with_prior(&self, prior: Vec<Rational>) -> Result<Self> {
        Ok(SenderReceiverGame {
            game: self.game.with_prior(prior)?,
        })
    }

    pub fn actions(&self) -> &[String] {
        &self.game.actions()[RECEIVER]
    }

    pub fn num_actions(&self) -> usize {
        self.game.num_joint()
    }

    pub fn num_states(&self) -> usize {
        self.game.num_states()
    }

    pub fn sender_payoff(&self, state: usize, action: usize) -> &Rational {
        &self.game.payoff(state, action)[SENDER]
    }

    pub fn receiver_payoff(&self, state: usize, action: usize) -> &Rational {
        &self.game.payoff(state, action)[RECEIVER]
    }

    /// `u_S(ω, a)` does not depend on `ω`.
    pub fn sender_state_independent(&self) -> bool {
        (0..self.num_actions()).all(|a| {
            (1..self.num_states()).all(|s| self.sender_payoff(s, a) == self.sender_payoff(0, a))
        })
    }

    pub fn expected_receiver(&self, belief: &[Rational], action: usize) -> Rational {
        let col: Vec<Rational> = (0..self.num_states())
            .map(|s| self.receiver_payoff(s, action).clone())
            .collect();
        dot(belief, &col)
    }

    pub fn expected_sender(&self, belief: &[Rational], action: usize) -> Rational {
        let col: Vec<Rational> = (0..self.num_states())
            .map(|s| self.sender_payoff(s, action).clone())
            .collect();
        dot(belief, &col)
    }

    fn check_belief(&self, belief: &[Rational]) -> Result<()> {
        if belief.len() != self.num_states() {
            return Err(Error::dims(format!(
                "belief has {} entries for {} states",
                belief.len(),
                self.num_states()
            )));
        }
        if !crate::rational::is_probability_vector(belief) {
            return Err(Error::invalid("belief is not a probability vector"));
        }
        Ok(())
    }

    /// `A*(q)`: the receiver's best responses at belief `q`.
    pub fn best_responses(&self, belief: &[Rational]) -> Result<Vec<usize>> {
        self.check_belief(belief)?;
        let values: Vec<Rational> = (0..self.num_actions())
            .map(|a| self.expected_receiver(belief, a))
            .collect();
        let best = values.iter().max().expect("at least one action").clone();
        Ok((0..values.len()).filter(|&a| values[a] == best).collect())
    }

    /// Sender's value at `q` when ties are broken in the sender's favour.
    pub fn sender_value_at(&self, belief: &[Rational]) -> Result<Rational> {
        Ok(self
            .best_responses(belief)?
            .into_iter()
            .map(|a| self.expected_sender(belief, a))
            .max()
            .expect("non-empty best-response set"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Posterior {
    pub action: usize,
    /// Probability that `action` is recommended.
    pub probability: Rational,
    pub belief: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpSolution {
    pub prior: Vec<Rational>,
    pub outcome: Outcome,
    pub value: Rational,
    /// One entry per recommendation sent with positive probability.
    pub posteriors: Vec<Posterior>,
    /// Binding obedience constraints `(recommended, deviation)`.
    pub active_obedience: Vec<(usize, usize)>,
}

/// `Σ_ω p(ω) μ(a|ω) (u_R(ω,a) − u_R(ω,b))`.
fn obedience_slack(
    g: &SenderReceiverGame,
    prior: &[Rational],
    mu: &Outcome,
    a: usize,
    b: usize,
) -> Rational {
    (0..g.num_states())
        .map(|s| &prior[s] * mu.prob(s, a) * (g.receiver_payoff(s, a) - g.receiver_payoff(s, b)))
        .sum()
}

/// Sender-optimal obedient recommendation policy at `prior`.
pub fn solve_bp(g: &SenderReceiverGame, prior: &[Rational]) -> Result<BpSolution> {
    validate_prior(prior, g.num_states())?;
    let (ns, na) = (g.num_states(), g.num_actions());
    let var = |s: usize, a: usize| s * na + a;

    let mut objective = vec![Rational::zero(); ns * na];
    for s in 0..ns {
        for a in 0..na {
            objective[var(s, a)] = &prior[s] * g.sender_payoff(s, a);
        }
    }
    let mut lp = LinearProgram::new(ns * na).maximize(objective);
    for s in 0..ns {
        let mut row = vec![Rational::zero(); ns * na];
        row[var(s, 0)..var(s, 0) + na].fill(int(1));
        lp.constrain(row, Relation::Eq, int(1));
    }
    for a in 0..na {
        for b in (0..na).filter(|&b| b != a) {
            let mut row = vec![Rational::zero(); ns * na];
            for s in 0..ns {
                row[var(s, a)] = &prior[s] * (g.receiver_payoff(s, a) - g.receiver_payoff(s, b));
            }
            if row.iter().any(|x| !x.is_zero()) {
                lp.constrain(row, Relation::Ge, Rational::zero());
            }
        }
    }
    let LpSolution::Optimal { value, primal, .. } = lp::solve(&lp)? else {
        return Err(Error::internal(
            "obedience LP is not optimal (full pooling is always feasible)",
        ));
    };
    let outcome = Outcome::new(primal.chunks(na).map(<[Rational]>::to_vec).collect())?;

    let mut posteriors = Vec::new();
    let mut active = Vec::new();
    for a in 0..na {
        let weights: Vec<Rational> = (0..ns).map(|s| &prior[s] * outcome.prob(s, a)).collect();
        let total: Rational = weights.iter().sum();
        if total.is_zero() {
            continue;
        }
        for b in (0..na).filter(|&b| b != a) {
            let slack = obedience_slack(g, prior, &outcome, a, b);
            if slack.is_negative() {
                return Err(Error::internal(
                    "returned recommendation policy is not obedient",
                ));
            }
            if slack.is_zero() {
                active.push((a, b));
            }
        }
        posteriors.push(Posterior {
            action: a,
            belief: weights.iter().map(|w| w / &total).collect(),
            probability: total,
        });
    }
    Ok(BpSolution {
        prior: prior.to_vec(),
        outcome,
        value,
        posteriors,
        active_obedience: active,
    })
}
