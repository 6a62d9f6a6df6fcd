//! Seeded random instances for property tests, sweeps and benchmarks.
//!
//! Payoffs are rationals with denominators at most `max_den`; priors and
//! outcome weights use small integer weights so the exact arithmetic stays
//! cheap.

use rand::seq::index::sample;
use rand::Rng;

use crate::allocation::AllocationInstance;
use crate::error::Result;
use crate::game::{Game, Outcome};
use crate::geometry2d::Point;
use crate::persuasion::SenderReceiverGame;
use crate::rational::{int, Rational};

/// Uniform over `{n/d : |n/d| ≤ bound}` for a uniform denominator `d ≤ max_den`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    let d = rng.random_range(1..=max_den.max(1));
    let n = rng.random_range(-bound * d..=bound * d);
    Rational::new(n.into(), d.into())
}

/// Positive integer weights normalised to a probability vector.
pub fn simplex_point<R: Rng + ?Sized>(rng: &mut R, n: usize, max_weight: i64) -> Vec<Rational> {
    let w: Vec<i64> = (0..n)
        .map(|_| rng.random_range(1..=max_weight.max(1)))
        .collect();
    let total: i64 = w.iter().sum();
    w.into_iter()
        .map(|x| Rational::new(x.into(), total.into()))
        .collect()
}

pub fn interior_prior<R: Rng + ?Sized>(rng: &mut R, states: usize) -> Vec<Rational> {
    simplex_point(rng, states, 9)
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Random payoffs in `[−10, 10]` for the given action counts.
pub fn game<R: Rng + ?Sized>(
    rng: &mut R,
    actions: &[usize],
    states: usize,
    max_den: i64,
) -> Result<Game> {
    let k = actions.len();
    let prior = interior_prior(rng, states);
    let action_labels = actions
        .iter()
        .enumerate()
        .map(|(i, &n)| labels(&format!("p{i}a"), n))
        .collect();
    Game::from_fn(labels("w", states), prior, action_labels, |_, _| {
        (0..k).map(|_| rational(rng, 10, max_den)).collect()
    })
}

/// Random game with `2..=max_players` players, `1..=max_actions` actions each
/// (at least two joint actions) and `1..=max_states` states.
pub fn small_game<R: Rng + ?Sized>(
    rng: &mut R,
    max_players: usize,
    max_actions: usize,
    max_states: usize,
    max_den: i64,
) -> Result<Game> {
    let k = rng.random_range(2..=max_players.max(2));
    let mut actions: Vec<usize> = (0..k)
        .map(|_| rng.random_range(1..=max_actions.max(1)))
        .collect();
    if actions.iter().all(|&a| a == 1) {
        actions[0] = 2;
    }
    let states = rng.random_range(1..=max_states.max(1));
    game(rng, &actions, states, max_den)
}

/// Random weights on a random support of `size` joint actions.
pub fn distribution<R: Rng + ?Sized>(rng: &mut R, n: usize, size: usize) -> Vec<Rational> {
    let size = size.clamp(1, n);
    let support = sample(rng, n, size);
    let weights = simplex_point(rng, size, 9);
    let mut row = vec![int(0); n];
    for (j, w) in support.into_iter().zip(weights) {
        row[j] = w;
    }
    row
}

/// Outcome with a uniformly random support size per state.
pub fn outcome<R: Rng + ?Sized>(rng: &mut R, game: &Game) -> Result<Outcome> {
    let n = game.num_joint();
    let rows = (0..game.num_states())
        .map(|_| {
            let size = rng.random_range(1..=n);
            distribution(rng, n, size)
        })
        .collect();
    Outcome::new(rows)
}

/// Outcome whose support sizes add up to at least `total` (capped at the
/// largest possible value).
pub fn outcome_with_total_support<R: Rng + ?Sized>(
    rng: &mut R,
    game: &Game,
    total: usize,
) -> Result<Outcome> {
    let (n, ns) = (game.num_joint(), game.num_states());
    let mut sizes: Vec<usize> = (0..ns).map(|_| rng.random_range(1..=n)).collect();
    while sizes.iter().sum::<usize>() < total.min(n * ns) {
        let s = rng.random_range(0..ns);
        if sizes[s] < n {
            sizes[s] += 1;
        }
    }
    Outcome::new(
        sizes
            .into_iter()
            .map(|size| distribution(rng, n, size))
            .collect(),
    )
}

/// Sender-receiver game with payoffs in `[−10, 10]`; with
/// `state_independent_sender` the sender's payoff depends on the action only
/// and its values are pairwise distinct.
pub fn sender_receiver<R: Rng + ?Sized>(
    rng: &mut R,
    states: usize,
    actions: usize,
    state_independent_sender: bool,
    max_den: i64,
) -> Result<SenderReceiverGame> {
    let prior = interior_prior(rng, states);
    let flat: Vec<Rational> = loop {
        let xs: Vec<Rational> = (0..actions).map(|_| rational(rng, 10, max_den)).collect();
        let mut sorted = xs.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() == xs.len() {
            break xs;
        }
    };
    let payoffs = (0..states)
        .map(|_| {
            (0..actions)
                .map(|a| {
                    let us = if state_independent_sender {
                        flat[a].clone()
                    } else {
                        rational(rng, 10, max_den)
                    };
                    (us, rational(rng, 10, max_den))
                })
                .collect()
        })
        .collect();
    SenderReceiverGame::from_tables(labels("w", states), prior, labels("a", actions), payoffs)
}

/// Nonzero integer direction with coordinates in `[−bound, bound]`.
pub fn direction<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Point {
    loop {
        let p = Point::new(
            int(rng.random_range(-bound..=bound)),
            int(rng.random_range(-bound..=bound)),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

/// Principal values in `[−1, 1]` for every type profile and agent.
pub fn principal_values<R: Rng + ?Sized>(
    rng: &mut R,
    states: usize,
    agents: usize,
    max_den: i64,
) -> Vec<Vec<Rational>> {
    (0..states)
        .map(|_| (0..agents).map(|_| rational(rng, 1, max_den)).collect())
        .collect()
}

/// Allocation instance with the given type counts, a random interior prior
/// and random principal values.
pub fn allocation<R: Rng + ?Sized>(
    rng: &mut R,
    type_counts: &[usize],
    t: Rational,
    max_den: i64,
) -> Result<AllocationInstance> {
    let types = type_counts
        .iter()
        .enumerate()
        .map(|(i, &n)| labels(&format!("t{}_", i + 1), n))
        .collect();
    let states: usize = type_counts.iter().product();
    let prior = interior_prior(rng, states);
    let values = principal_values(rng, states, type_counts.len(), max_den);
    AllocationInstance::new(types, prior, values, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_draws_are_reproducible() {
        let a = game(&mut ChaCha8Rng::seed_from_u64(7), &[2, 3], 2, 1000).unwrap();
        let b = game(&mut ChaCha8Rng::seed_from_u64(7), &[2, 3], 2, 1000).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn denominators_are_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let x = rational(&mut rng, 10, 1000);
            assert!(*x.denom() <= 1000.into());
            assert!(x.abs() <= int(10));
        }
    }

    #[test]
    fn total_support_is_reached() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = game(&mut rng, &[2, 2], 3, 100).unwrap();
        for total in [1, 5, 9, 12, 40] {
            let mu = outcome_with_total_support(&mut rng, &g, total).unwrap();
            let sum: usize = (0..3).map(|s| mu.support(s).len()).sum();
            assert!(sum >= total.min(12));
        }
    }

    #[test]
    fn state_independent_sender_is_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = sender_receiver(&mut rng, 2, 5, true, 10).unwrap();
        assert!(g.sender_state_independent());
    }
}
