//! The worked instances used throughout the docs and tests.
//!
//! The two-state sender-receiver running example has receiver actions
//! `a0..a4`; payoffs are `(sender, receiver)`:
//!
//! ```text
//!          a0      a1       a2       a3      a4
//! ω0     (2,9)  (10,8)  (0,32/5)  (3,4)   (1,0)
//! ω1     (2,0)  (10,4)  (0,32/5)  (3,8)   (1,9)
//! ```

use crate::allocation::AllocationInstance;
use crate::cheaptalk::CheapTalkProfile;
use crate::game::{Game, Outcome};
use crate::persuasion::SenderReceiverGame;
use crate::rational::{frac, int, Rational};

const RUNNING: [[(i64, i64); 5]; 2] = [
    [(2, 9), (10, 8), (0, 0), (3, 4), (1, 0)],
    [(2, 0), (10, 4), (0, 0), (3, 8), (1, 9)],
];

/// The running example with prior `P(ω1) = p1`.
pub fn running_game(p1: Rational) -> Game {
    running_sr(p1).into_game()
}

pub fn running_sr(p1: Rational) -> SenderReceiverGame {
    let states = vec!["w0".to_string(), "w1".to_string()];
    let prior = vec![int(1) - &p1, p1];
    let actions = (0..5).map(|a| format!("a{a}")).collect();
    let payoffs = RUNNING
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(a, &(s, r))| {
                    // a2 pays the receiver 6.4 in both states.
                    let receiver = if a == 2 { frac(32, 5) } else { int(r) };
                    (int(s), receiver)
                })
                .collect()
        })
        .collect();
    SenderReceiverGame::from_tables(states, prior, actions, payoffs)
        .expect("the running example is well formed")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunningCase {
    /// `P(ω1) = 1/10`: a0 and a1 in ω0, a1 in ω1.
    A,
    /// `P(ω1) = 3/10`: a1 in both states.
    B,
    /// `P(ω1) = 7/10`: a1 in ω0, a1 and a4 in ω1.
    C,
}

impl RunningCase {
    pub fn prior(self) -> Rational {
        match self {
            RunningCase::A => frac(1, 10),
            RunningCase::B => frac(3, 10),
            RunningCase::C => frac(7, 10),
        }
    }
}

pub fn running_outcome(case: RunningCase) -> (Game, Outcome) {
    let game = running_game(case.prior());
    let z = || int(0);
    let rows = match case {
        RunningCase::A => vec![
            vec![frac(5, 9), frac(4, 9), z(), z(), z()],
            vec![z(), int(1), z(), z(), z()],
        ],
        RunningCase::B => vec![
            vec![z(), int(1), z(), z(), z()],
            vec![z(), int(1), z(), z(), z()],
        ],
        RunningCase::C => vec![
            vec![z(), int(1), z(), z(), z()],
            vec![z(), frac(2, 7), z(), z(), frac(5, 7)],
        ],
    };
    (game, Outcome::new(rows).expect("valid outcome"))
}

/// The informative equilibrium at `P(ω1) = 1/2`: message `m1` induces the
/// posterior 2/5 where the receiver mixes a1/a2 as 3/10 : 7/10, message `m2`
/// induces 3/5 where the receiver plays a3. Off-path messages are answered
/// with a3.
pub fn informative_profile() -> CheapTalkProfile {
    let messages: Vec<String> = (1..=5).map(|m| format!("m{m}")).collect();
    let z = || int(0);
    let sender = vec![
        vec![frac(3, 5), frac(2, 5), z(), z(), z()],
        vec![frac(2, 5), frac(3, 5), z(), z(), z()],
    ];
    let a3 = || vec![z(), z(), z(), int(1), z()];
    let receiver = vec![
        vec![z(), frac(3, 10), frac(7, 10), z(), z()],
        a3(),
        a3(),
        a3(),
        a3(),
    ];
    CheapTalkProfile::new(messages, sender, receiver).expect("valid profile")
}

/// Babbling: every state sends `m1`, every message is answered with `action`.
pub fn babbling_profile(action: usize) -> CheapTalkProfile {
    let messages: Vec<String> = (1..=5).map(|m| format!("m{m}")).collect();
    let mut send = vec![int(0); 5];
    send[0] = int(1);
    let mut reply = vec![int(0); 5];
    reply[action] = int(1);
    CheapTalkProfile::new(messages, vec![send; 2], vec![reply; 5]).expect("valid profile")
}

/// Two agents with types `{L, H}`, uniform prior, `u_1 = 1/5` if agent 2
/// reports L and `3/5` otherwise, `u_2 = 2/5` if agent 1 reports L and
/// `3/10` otherwise.
pub fn allocation_worked_instance(t: Rational) -> AllocationInstance {
    let types = vec![
        vec!["L".to_string(), "H".to_string()],
        vec!["L".to_string(), "H".to_string()],
    ];
    let prior = vec![frac(1, 4); 4];
    let values = (0..4)
        .map(|s| {
            let (w1, w2) = (s / 2, s % 2);
            let u1 = if w2 == 0 { frac(1, 5) } else { frac(3, 5) };
            let u2 = if w1 == 0 { frac(2, 5) } else { frac(3, 10) };
            vec![u1, u2]
        })
        .collect();
    AllocationInstance::new(types, prior, values, t).expect("valid instance")
}
