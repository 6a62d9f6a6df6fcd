//! Seeded fixtures shared by the benchmarks.

use effcert::lp::{LinearProgram, Relation};
use effcert::persuasion::SenderReceiverGame;
use effcert::rational::int;
use effcert::{sample, Game, Outcome};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A bounded, feasible packing LP with `rows` constraints in `vars` variables.
pub fn packing_lp(seed: u64, vars: usize, rows: usize) -> LinearProgram {
    let mut r = rng(seed);
    let objective = (0..vars)
        .map(|_| sample::rational(&mut r, 10, 20))
        .collect();
    let mut lp = LinearProgram::new(vars).maximize(objective);
    for _ in 0..rows {
        let coeffs = (0..vars)
            .map(|_| sample::rational(&mut r, 5, 20) + int(6))
            .collect();
        lp.constrain(coeffs, Relation::Le, int(100));
    }
    lp
}

/// Random games with a random full-support outcome each.
pub fn game_outcomes(
    seed: u64,
    actions: &[usize],
    states: usize,
    count: usize,
) -> Vec<(Game, Outcome)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let g = sample::game(&mut r, actions, states, 100).unwrap();
            let mu = sample::outcome(&mut r, &g).unwrap();
            (g, mu)
        })
        .collect()
}

pub fn sender_receiver(seed: u64, states: usize, actions: usize) -> SenderReceiverGame {
    sample::sender_receiver(&mut rng(seed), states, actions, false, 30).unwrap()
}
