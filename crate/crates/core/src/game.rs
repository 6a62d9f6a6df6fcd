//! Finite games with incomplete information, outcomes and induced payoffs.
//!
//! A [`Game`] has `k` players, a finite state set with an interior prior, a
//! finite action set per player and a payoff vector for every
//! (state, joint action) pair. Joint actions are indexed in row-major order
//! over the per-player action lists: the last player's action varies
//! fastest. Every tensor in the crate uses that order.

use std::fmt;
use std::ops::Deref;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Expected payoff per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PayoffVector(pub Vec<Rational>);

impl PayoffVector {
    pub fn zeros(k: usize) -> Self {
        PayoffVector(vec![Rational::zero(); k])
    }

    /// Weakly better for everyone and strictly better for someone.
    pub fn pareto_dominates(&self, other: &PayoffVector) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
            && self.0 != other.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }
}

impl Deref for PayoffVector {
    type Target = [Rational];

    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for PayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    states: Vec<String>,
    prior: Vec<Rational>,
    actions: Vec<Vec<String>>,
    /// `payoffs[state][joint][player]`
    payoffs: Vec<Vec<Vec<Rational>>>,
    strides: Vec<usize>,
}

impl Game {
    pub fn new(
        states: Vec<String>,
        prior: Vec<Rational>,
        actions: Vec<Vec<String>>,
        payoffs: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self> {
        let k = actions.len();
        if k < 2 {
            return Err(Error::invalid(format!(
                "a game needs at least 2 players, got {k}"
            )));
        }
        if states.is_empty() {
            return Err(Error::invalid("a game needs at least one state"));
        }
        if let Some(i) = actions.iter().position(Vec::is_empty) {
            return Err(Error::invalid(format!("player {i} has no actions")));
        }
        check_unique(&states, "state")?;
        for list in &actions {
            check_unique(list, "action")?;
        }
        validate_prior(&prior, states.len())?;

        let mut strides = vec![1; k];
        for i in (0..k - 1).rev() {
            strides[i] = strides[i + 1] * actions[i + 1].len();
        }
        let joint = strides[0] * actions[0].len();
        if payoffs.len() != states.len() {
            return Err(Error::dims(format!(
                "payoff tensor has {} states, expected {}",
                payoffs.len(),
                states.len()
            )));
        }
        for (s, row) in payoffs.iter().enumerate() {
            if row.len() != joint {
                return Err(Error::dims(format!(
                    "state `{}` has {} joint actions, expected {joint}",
                    states[s],
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|u| u.len() != k) {
                return Err(Error::dims(format!(
                    "payoff vector of length {} in state `{}`, expected {k}",
                    bad.len(),
                    states[s]
                )));
            }
        }
        Ok(Game {
            states,
            prior,
            actions,
            payoffs,
            strides,
        })
    }

    /// Build the payoff tensor from a function of (state index, action profile).
    pub fn from_fn<F>(
        states: Vec<String>,
        prior: Vec<Rational>,
        actions: Vec<Vec<String>>,
        mut payoff: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, &[usize]) -> Vec<Rational>,
    {
        let sizes: Vec<usize> = actions.iter().map(Vec::len).collect();
        let joint: usize = sizes.iter().product();
        let payoffs = (0..states.len())
            .map(|s| (0..joint).map(|j| payoff(s, &unrank(j, &sizes))).collect())
            .collect();
        Game::new(states, prior, actions, payoffs)
    }

    /// Same payoffs under a different interior prior.
    pub fn with_prior(&self, prior: Vec<Rational>) -> Result<Self> {
        validate_prior(&prior, self.states.len())?;
        Ok(Game {
            prior,
            ..self.clone()
        })
    }

    pub fn players(&self) -> usize {
        self.actions.len()
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_joint(&self) -> usize {
        self.strides[0] * self.actions[0].len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn prior(&self) -> &[Rational] {
        &self.prior
    }

    pub fn actions(&self) -> &[Vec<String>] {
        &self.actions
    }

    pub fn payoff(&self, state: usize, joint: usize) -> &[Rational] {
        &self.payoffs[state][joint]
    }

    pub fn payoffs_in(&self, state: usize) -> &[Vec<Rational>] {
        &self.payoffs[state]
    }

    pub fn state_index(&self, label: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| Error::UnknownState(label.to_string()))
    }

    pub(crate) fn check_state(&self, state: usize) -> Result<()> {
        if state < self.states.len() {
            Ok(())
        } else {
            Err(Error::UnknownState(format!("#{state}")))
        }
    }

    pub fn joint_index(&self, profile: &[usize]) -> Result<usize> {
        if profile.len() != self.players() {
            return Err(Error::dims(format!(
                "profile has {} entries, expected {}",
                profile.len(),
                self.players()
            )));
        }
        profile
            .iter()
            .zip(&self.actions)
            .zip(&self.strides)
            .try_fold(0, |acc, ((&a, list), &stride)| {
                if a < list.len() {
                    Ok(acc + a * stride)
                } else {
                    Err(Error::UnknownLabel(format!("action #{a}")))
                }
            })
    }

    pub fn profile(&self, joint: usize) -> Vec<usize> {
        let sizes: Vec<usize> = self.actions.iter().map(Vec::len).collect();
        unrank(joint, &sizes)
    }

    /// Comma-separated action labels, e.g. `s,a1`.
    pub fn joint_label(&self, joint: usize) -> String {
        self.profile(joint)
            .iter()
            .zip(&self.actions)
            .map(|(&a, list)| list[a].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Inverse of [`Game::joint_label`]. Players with a single action may be
    /// omitted, so `a1` names the joint action `s,a1` of a sender-receiver game.
    pub fn parse_joint_label(&self, label: &str) -> Result<usize> {
        let parts: Vec<&str> = label.split(',').map(str::trim).collect();
        let unknown = || Error::UnknownLabel(label.to_string());
        let free: Vec<usize> = (0..self.players())
            .filter(|&i| self.actions[i].len() > 1)
            .collect();
        let players: Vec<usize> = if parts.len() == self.players() {
            (0..self.players()).collect()
        } else if parts.len() == free.len() {
            free
        } else {
            return Err(unknown());
        };
        let mut profile = vec![0; self.players()];
        for (&player, part) in players.iter().zip(&parts) {
            profile[player] = self.actions[player]
                .iter()
                .position(|a| a == part)
                .ok_or_else(unknown)?;
        }
        self.joint_index(&profile)
    }
}

pub(crate) fn unrank(mut index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (slot, &size) in out.iter_mut().zip(sizes).rev() {
        *slot = index % size;
        index /= size;
    }
    out
}

fn check_unique(labels: &[String], what: &str) -> Result<()> {
    for (i, a) in labels.iter().enumerate() {
        if labels[..i].contains(a) {
            return Err(Error::invalid(format!("duplicate {what} label `{a}`")));
        }
    }
    Ok(())
}

/// Strictly positive entries summing to exactly one.
pub fn validate_prior(prior: &[Rational], states: usize) -> Result<()> {
    if prior.len() != states {
        return Err(Error::dims(format!(
            "prior has {} entries, expected {states}",
            prior.len()
        )));
    }
    if prior.iter().any(|p| !p.is_positive()) {
        return Err(Error::invalid("prior must be interior (every entry > 0)"));
    }
    if !rational::is_probability_vector(prior) {
        return Err(Error::invalid("prior must sum to 1"));
    }
    Ok(())
}

/// Per-state distributions over joint actions, `μ(a | ω)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    rows: Vec<Vec<Rational>>,
}

impl Outcome {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("an outcome needs at least one state"));
        }
        let width = rows[0].len();
        for (s, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::dims("outcome rows have different lengths"));
            }
            if !rational::is_probability_vector(row) {
                return Err(Error::invalid(format!(
                    "outcome row {s} is not a probability vector"
                )));
            }
        }
        Ok(Outcome { rows })
    }

    /// Deterministic outcome playing `joint[s]` in state `s`.
    pub fn pure(num_joint: usize, joint: &[usize]) -> Result<Self> {
        let rows = joint
            .iter()
            .map(|&j| {
                if j >= num_joint {
                    return Err(Error::UnknownLabel(format!("joint action #{j}")));
                }
                let mut row = vec![Rational::zero(); num_joint];
                row[j] = rational::int(1);
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Outcome::new(rows)
    }

    pub fn num_states(&self) -> usize {
        self.rows.len()
    }

    pub fn num_joint(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, state: usize) -> &[Rational] {
        &self.rows[state]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn prob(&self, state: usize, joint: usize) -> &Rational {
        &self.rows[state][joint]
    }

    pub fn support(&self, state: usize) -> Vec<usize> {
        self.rows[state]
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .map(|(j, _)| j)
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        (0..self.num_states()).all(|s| self.support(s).len() == 1)
    }

    pub fn check_against(&self, game: &Game) -> Result<()> {
        if self.num_states() != game.num_states() || self.num_joint() != game.num_joint() {
            return Err(Error::dims(format!(
                "outcome is {}x{}, game has {} states and {} joint actions",
                self.num_states(),
                self.num_joint(),
                game.num_states(),
                game.num_joint()
            )));
        }
        Ok(())
    }
}

/// `u(μ | ω) = Σ_a μ(a|ω) u(ω, a)`.
pub fn state_payoff(game: &Game, outcome: &Outcome, state: usize) -> Result<PayoffVector> {
    outcome.check_against(game)?;
    game.check_state(state)?;
    Ok(state_payoff_unchecked(game, outcome.row(state), state))
}

pub(crate) fn state_payoff_unchecked(game: &Game, row: &[Rational], state: usize) -> PayoffVector {
    let mut acc = PayoffVector::zeros(game.players());
    for (j, p) in row.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (slot, u) in acc.0.iter_mut().zip(game.payoff(state, j)) {
            *slot += p * u;
        }
    }
    acc
}

/// Ex-ante payoff vector `u(μ) = Σ_ω p(ω) u(μ | ω)`.
pub fn induced_payoff(game: &Game, outcome: &Outcome) -> Result<PayoffVector> {
    outcome.check_against(game)?;
    let mut acc = PayoffVector::zeros(game.players());
    for (s, p) in game.prior().iter().enumerate() {
        let u = state_payoff_unchecked(game, outcome.row(s), s);
        for (slot, x) in acc.0.iter_mut().zip(u.0) {
            *slot += p * x;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportCounts {
    pub per_state: Vec<usize>,
    pub total: usize,
}

pub fn support_counts(outcome: &Outcome) -> SupportCounts {
    let per_state: Vec<usize> = (0..outcome.num_states())
        .map(|s| outcome.support(s).len())
        .collect();
    let total = per_state.iter().sum();
    SupportCounts { per_state, total }
}
