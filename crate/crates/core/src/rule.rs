//! Type-contingent pure decision rules and the outcomes they induce.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{unrank, Game, Outcome};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    /// `σ(t, ω)`: `joint[type_profile][state]` is a joint action index.
    Joint(Vec<Vec<usize>>),
    /// `σ_i(t_i)`: `actions[player][own type]` is an action index of that player.
    PerPlayer(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionRuleProfile {
    /// Number of types per player.
    type_counts: Vec<usize>,
    /// `pi[state][type_profile]`, type profiles in row-major order.
    pi: Vec<Vec<Rational>>,
    rule: Rule,
}

impl DecisionRuleProfile {
    pub fn new(type_counts: Vec<usize>, pi: Vec<Vec<Rational>>, rule: Rule) -> Result<Self> {
        if type_counts.contains(&0) {
            return Err(Error::invalid("every player needs at least one type"));
        }
        let profiles: usize = type_counts.iter().product();
        for (s, row) in pi.iter().enumerate() {
            if row.len() != profiles {
                return Err(Error::dims(format!(
                    "type distribution in state {s} has {} entries, expected {profiles}",
                    row.len()
                )));
            }
            if !rational::is_probability_vector(row) {
                return Err(Error::invalid(format!(
                    "type distribution in state {s} is not a probability vector"
                )));
            }
        }
        match &rule {
            Rule::Joint(table) if table.len() != profiles => {
                return Err(Error::dims("joint rule needs one row per type profile"));
            }
            Rule::PerPlayer(table) => {
                if table.len() != type_counts.len() {
                    return Err(Error::dims("per-player rule needs one row per player"));
                }
                if table
                    .iter()
                    .zip(&type_counts)
                    .any(|(row, &c)| row.len() != c)
                {
                    return Err(Error::dims("per-player rule needs one action per own type"));
                }
            }
            _ => {}
        }
        Ok(DecisionRuleProfile {
            type_counts,
            pi,
            rule,
        })
    }

    /// `π(t|ω) > 0` for every type profile and state.
    pub fn full_support(&self) -> bool {
        self.pi.iter().flatten().all(Signed::is_positive)
    }

    pub fn type_counts(&self) -> &[usize] {
        &self.type_counts
    }

    pub fn num_states(&self) -> usize {
        self.pi.len()
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn type_distribution(&self, state: usize) -> &[Rational] {
        &self.pi[state]
    }

    /// Joint action prescribed for type profile `t` in `state`.
    pub fn action(&self, game: &Game, t: usize, state: usize) -> Result<usize> {
        match &self.rule {
            Rule::Joint(table) => {
                let j = *table[t]
                    .get(state)
                    .ok_or_else(|| Error::dims("joint rule has too few states"))?;
                if j >= game.num_joint() {
                    return Err(Error::UnknownLabel(format!("joint action #{j}")));
                }
                Ok(j)
            }
            Rule::PerPlayer(table) => {
                let types = unrank(t, &self.type_counts);
                let profile: Vec<usize> =
                    types.iter().zip(table).map(|(&ti, row)| row[ti]).collect();
                game.joint_index(&profile)
            }
        }
    }
}

/// `μ(a|ω) = Σ_{t : σ(t,ω) = a} π(t|ω)`.
pub fn outcome_from_rule(profile: &DecisionRuleProfile, game: &Game) -> Result<Outcome> {
    if profile.num_states() != game.num_states() {
        return Err(Error::dims(
            "type distribution and game have different state counts",
        ));
    }
    if profile.type_counts.len() != game.players() {
        return Err(Error::dims("one type set per player is required"));
    }
    let mut rows = vec![vec![Rational::zero(); game.num_joint()]; game.num_states()];
    for (state, row) in rows.iter_mut().enumerate() {
        for (t, mass) in profile.pi[state].iter().enumerate() {
            let a = profile.action(game, t, state)?;
            row[a] += mass;
        }
    }
    Outcome::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn two_by_two(states: usize) -> Game {
        Game::from_fn(
            (0..states).map(|s| format!("w{s}")).collect(),
            vec![frac(1, states as i64); states],
            vec![vec!["u".into(), "d".into()], vec!["l".into(), "r".into()]],
            |s, a| vec![int((s + a[0]) as i64), int(a[1] as i64)],
        )
        .unwrap()
    }

    fn uniform_pi(states: usize, profiles: usize) -> Vec<Vec<Rational>> {
        vec![vec![frac(1, profiles as i64); profiles]; states]
    }

    #[test]
    fn constant_rule_concentrates() {
        let game = two_by_two(2);
        let profile = DecisionRuleProfile::new(
            vec![2, 2],
            uniform_pi(2, 4),
            Rule::Joint(vec![vec![2, 2]; 4]),
        )
        .unwrap();
        let mu = outcome_from_rule(&profile, &game).unwrap();
        assert_eq!(mu, Outcome::pure(4, &[2, 2]).unwrap());
    }

    #[test]
    fn per_player_rule_matches_brute_force() {
        let game = two_by_two(2);
        // Player 0 plays its type, player 1 always plays `r`.
        let pi = vec![
            vec![frac(1, 10), frac(2, 10), frac(3, 10), frac(4, 10)],
            vec![frac(1, 4); 4],
        ];
        let profile = DecisionRuleProfile::new(
            vec![2, 2],
            pi.clone(),
            Rule::PerPlayer(vec![vec![0, 1], vec![1, 1]]),
        )
        .unwrap();
        let mu = outcome_from_rule(&profile, &game).unwrap();
        for (s, row) in pi.iter().enumerate() {
            let mut expected = vec![Rational::zero(); 4];
            for (t, mass) in row.iter().enumerate() {
                let t0 = t / 2;
                expected[t0 * 2 + 1] += mass;
            }
            assert_eq!(mu.row(s), expected.as_slice());
            assert_eq!(mu.support(s).len(), 2);
        }
    }

    #[test]
    fn zero_mass_types_vanish() {
        let game = two_by_two(1);
        let pi = vec![vec![int(1), int(0)]];
        let profile =
            DecisionRuleProfile::new(vec![2, 1], pi, Rule::Joint(vec![vec![0], vec![3]])).unwrap();
        assert!(!profile.full_support());
        let mu = outcome_from_rule(&profile, &game).unwrap();
        assert!(mu.prob(0, 3).is_zero());
        assert_eq!(mu.support(0), vec![0]);
    }

    #[test]
    fn unknown_actions_are_rejected() {
        let game = two_by_two(1);
        let profile =
            DecisionRuleProfile::new(vec![1, 1], vec![vec![int(1)]], Rule::Joint(vec![vec![9]]))
                .unwrap();
        assert!(matches!(
            outcome_from_rule(&profile, &game),
            Err(Error::UnknownLabel(_))
        ));
        let profile = DecisionRuleProfile::new(
            vec![1, 1],
            vec![vec![int(1)]],
            Rule::PerPlayer(vec![vec![0], vec![5]]),
        )
        .unwrap();
        assert!(outcome_from_rule(&profile, &game).is_err());
    }
}
