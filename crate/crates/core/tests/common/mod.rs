#![allow(dead_code)]

use effcert::cheaptalk::CheapTalkProfile;
use effcert::persuasion::{value_function_1d, SenderReceiverGame};
use effcert::rational::int;
use effcert::Rational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|m| format!("m{m}")).collect()
}

fn belief(q1: &Rational) -> Vec<Rational> {
    vec![int(1) - q1, q1.clone()]
}

/// A receiver mixture over `A*(q)` giving a state-independent sender exactly `c`.
fn mixture_hitting(g: &SenderReceiverGame, best: &[usize], c: &Rational) -> Option<Vec<Rational>> {
    let u = |a: usize| g.sender_payoff(0, a).clone();
    let hi = best
        .iter()
        .copied()
        .filter(|&a| u(a) >= *c)
        .min_by_key(|&a| u(a))?;
    let lo = best
        .iter()
        .copied()
        .filter(|&a| u(a) <= *c)
        .max_by_key(|&a| u(a))?;
    let mut tau = vec![int(0); g.num_actions()];
    if u(hi) == u(lo) {
        tau[hi] = int(1);
    } else {
        let w = (c - u(lo)) / (u(hi) - u(lo));
        tau[lo] = int(1) - &w;
        tau[hi] = w;
    }
    Some(tau)
}

/// Babbling profiles plus two-message profiles whose posteriors sit at
/// receiver-indifference beliefs, for a two-state game with a
/// state-independent sender. Every returned profile is meant to be an
/// equilibrium at `p1 = P(ω1)`.
pub fn two_state_equilibria(g: &SenderReceiverGame, p1: &Rational) -> Vec<CheapTalkProfile> {
    let na = g.num_actions();
    let nm = na.max(2);
    let mut out = Vec::new();

    for a in g.best_responses(&belief(p1)).unwrap() {
        let mut send = vec![int(0); nm];
        send[0] = int(1);
        let mut reply = vec![int(0); na];
        reply[a] = int(1);
        out.push(CheapTalkProfile::new(labels(nm), vec![send; 2], vec![reply; nm]).unwrap());
    }

    let v = value_function_1d(g).unwrap();
    let candidates = v.breakpoints.clone();
    let u = |a: usize| g.sender_payoff(0, a).clone();
    for q1 in candidates.iter().filter(|q| *q < p1) {
        for q2 in candidates.iter().filter(|q| *q > p1) {
            let b1 = g.best_responses(&belief(q1)).unwrap();
            let b2 = g.best_responses(&belief(q2)).unwrap();
            let lo1 = b1.iter().map(|&a| u(a)).min().unwrap();
            let hi1 = b1.iter().map(|&a| u(a)).max().unwrap();
            let lo2 = b2.iter().map(|&a| u(a)).min().unwrap();
            let hi2 = b2.iter().map(|&a| u(a)).max().unwrap();
            let c = lo1.clone().max(lo2.clone());
            if c > hi1.clone().min(hi2.clone()) {
                continue;
            }
            let (Some(t1), Some(t2)) = (mixture_hitting(g, &b1, &c), mixture_hitting(g, &b2, &c))
            else {
                continue;
            };
            let alpha = (q2 - p1) / (q2 - q1);
            let s1 = &alpha * q1 / p1;
            let s0 = &alpha * (int(1) - q1) / (int(1) - p1);
            let mut row0 = vec![int(0); nm];
            let mut row1 = vec![int(0); nm];
            row0[0] = s0.clone();
            row0[1] = int(1) - &s0;
            row1[0] = s1.clone();
            row1[1] = int(1) - &s1;
            let mut receiver = vec![t1.clone(); nm];
            receiver[1] = t2;
            out.push(CheapTalkProfile::new(labels(nm), vec![row0, row1], receiver).unwrap());
        }
    }
    out
}
