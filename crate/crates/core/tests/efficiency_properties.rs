mod common;

use effcert::efficiency::{
    counting_bound, ex_ante_efficient_cone, ex_ante_efficient_dominance, ex_post_efficient,
    EfficiencyReport, Verdict,
};
use effcert::game::{induced_payoff, state_payoff, Game, Outcome};
use effcert::rational::{dot, int};
use effcert::{sample, Rational};
use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

/// `k ∈ {2, 3}`, `|Ω| ∈ {1, 2, 3}`, at most six joint actions.
fn small_game<R: Rng>(rng: &mut R, max_den: i64) -> Game {
    let k = rng.random_range(2..=3);
    let actions = loop {
        let a: Vec<usize> = (0..k).map(|_| rng.random_range(1..=3)).collect();
        let joint: usize = a.iter().product();
        if (2..=6).contains(&joint) {
            break a;
        }
    };
    let states = rng.random_range(1..=3);
    sample::game(rng, &actions, states, max_den).unwrap()
}

/// Plays a maximiser of a random strictly positive welfare function in
/// every state, so the result is efficient by construction.
fn welfare_maximiser<R: Rng>(rng: &mut R, game: &Game) -> Outcome {
    let n: Vec<Rational> = (0..game.players())
        .map(|_| Rational::new(rng.random_range(1..=20).into(), 1.into()))
        .collect();
    let joint: Vec<usize> = (0..game.num_states())
        .map(|s| {
            (0..game.num_joint())
                .max_by_key(|&j| dot(&n, game.payoff(s, j)))
                .unwrap()
        })
        .collect();
    Outcome::pure(game.num_joint(), &joint).unwrap()
}

fn instances(seed: u64, count: usize) -> Vec<(Game, Outcome)> {
    let mut rng = common::rng(seed);
    (0..count)
        .map(|i| {
            let game = small_game(&mut rng, 1000);
            let mu = if i % 2 == 0 {
                welfare_maximiser(&mut rng, &game)
            } else {
                sample::outcome(&mut rng, &game).unwrap()
            };
            (game, mu)
        })
        .collect()
}

fn check_certificate(game: &Game, mu: &Outcome, rep: &EfficiencyReport) {
    match rep.verdict {
        Verdict::Efficient => {
            let n = rep
                .weights
                .as_ref()
                .expect("efficient verdicts carry weights");
            assert!(rep.witness.is_none());
            assert!(n.iter().all(|x| *x >= int(1)), "weights below one: {n:?}");
            for s in 0..game.num_states() {
                let here = dot(n, &state_payoff(game, mu, s).unwrap());
                let best = (0..game.num_joint())
                    .map(|j| dot(n, game.payoff(s, j)))
                    .max()
                    .unwrap();
                assert_eq!(here, best, "state {s} does not maximise n·u");
            }
        }
        Verdict::Inefficient => {
            let w = rep
                .witness
                .as_ref()
                .expect("inefficient verdicts carry a witness");
            assert!(rep.weights.is_none());
            assert!(w.combined.iter().all(|x| !x.is_negative()));
            assert!(w.combined.iter().any(|x| !x.is_zero()));
            w.dominating_outcome.check_against(game).unwrap();
            let v = induced_payoff(game, &w.dominating_outcome).unwrap();
            assert_eq!(
                v, w.dominating_point,
                "dominating point is not the payoff of its outcome"
            );
            assert!(v.pareto_dominates(&induced_payoff(game, mu).unwrap()));
        }
    }
}

#[test]
fn cone_and_dominance_agree_and_certify() {
    let cases = instances(2024, 1200);
    let efficient = cases
        .par_iter()
        .map(|(game, mu)| {
            let cone = ex_ante_efficient_cone(game, mu).unwrap();
            let dom = ex_ante_efficient_dominance(game, mu).unwrap();
            assert_eq!(
                cone.verdict, dom.verdict,
                "oracles disagree on {game:?} / {mu:?}"
            );
            check_certificate(game, mu, &cone);
            check_certificate(game, mu, &dom);
            if cone.verdict == Verdict::Efficient {
                for s in 0..game.num_states() {
                    assert_eq!(
                        ex_post_efficient(game, mu, s).unwrap().verdict,
                        Verdict::Efficient
                    );
                }
            }
            usize::from(cone.verdict == Verdict::Efficient)
        })
        .sum::<usize>();
    // Both branches must be exercised substantially.
    assert!(
        (400..=1000).contains(&efficient),
        "efficient count {efficient}"
    );
}

#[test]
fn verdict_does_not_depend_on_the_prior() {
    let cases = instances(77, 120);
    cases.par_iter().enumerate().for_each(|(i, (game, mu))| {
        let mut rng = common::rng(1000 + i as u64);
        let base = ex_ante_efficient_cone(game, mu).unwrap().verdict;
        for _ in 0..10 {
            let prior = sample::interior_prior(&mut rng, game.num_states());
            let other = game.with_prior(prior).unwrap();
            assert_eq!(ex_ante_efficient_cone(&other, mu).unwrap().verdict, base);
        }
    });
}

#[test]
fn outcomes_violating_the_counting_bound_are_inefficient() {
    let mut rng = common::rng(99);
    let mut cases = Vec::new();
    while cases.len() < 1100 {
        let game = small_game(&mut rng, 1000);
        let bound = game.players() + game.num_states();
        if game.num_joint() * game.num_states() < bound {
            continue;
        }
        let mu = sample::outcome_with_total_support(&mut rng, &game, bound).unwrap();
        cases.push((game, mu));
    }
    cases.par_iter().for_each(|(game, mu)| {
        assert!(!counting_bound(game, mu).unwrap().passes);
        assert_eq!(
            ex_ante_efficient_cone(game, mu).unwrap().verdict,
            Verdict::Inefficient
        );
        assert_eq!(
            ex_ante_efficient_dominance(game, mu).unwrap().verdict,
            Verdict::Inefficient
        );
    });
}

#[test]
fn induced_payoff_is_the_prior_average_of_state_payoffs() {
    let mut rng = common::rng(5);
    for _ in 0..200 {
        let game = small_game(&mut rng, 50);
        let mu = sample::outcome(&mut rng, &game).unwrap();
        let mut avg = vec![Rational::zero(); game.players()];
        for s in 0..game.num_states() {
            for (a, x) in avg
                .iter_mut()
                .zip(state_payoff(&game, &mu, s).unwrap().iter())
            {
                *a += &game.prior()[s] * x;
            }
        }
        assert_eq!(induced_payoff(&game, &mu).unwrap().into_inner(), avg);
    }
}
