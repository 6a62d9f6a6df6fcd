//! Cheap talk: equilibrium verification, the receiver's best responses,
//! the sender's favourite attainable action and the quasiconcave envelope of
//! the value function on a two-state belief line.

use num_traits::{Signed, Zero};

use crate::efficiency::{ex_ante_efficient_cone, EfficiencyReport, Verdict};
use crate::error::{Error, Result};
use crate::game::{validate_prior, Outcome};
use crate::lp::{self, LpStatus, Relation};
use crate::persuasion::{SenderReceiverGame, ValueFunction1d};
use crate::rational::{dot, int, is_probability_vector, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheapTalkProfile {
    messages: Vec<String>,
    /// `σ(m|ω)`, one row per state.
    sender: Vec<Vec<Rational>>,
    /// `τ(a|m)`, one row per message.
    receiver: Vec<Vec<Rational>>,
}

impl CheapTalkProfile {
    pub fn new(
        messages: Vec<String>,
        sender: Vec<Vec<Rational>>,
        receiver: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let m = messages.len();
        if m == 0 {
            return Err(Error::invalid("a profile needs at least one message"));
        }
        let mut seen = std::collections::HashSet::new();
        if !messages.iter().all(|x| seen.insert(x)) {
            return Err(Error::invalid("duplicate message labels"));
        }
        if sender.iter().any(|row| row.len() != m) {
            return Err(Error::dims("every sender row needs one entry per message"));
        }
        if receiver.len() != m {
            return Err(Error::dims(
                "the receiver strategy needs one row per message",
            ));
        }
        if let Some(w) = receiver.first().map(Vec::len) {
            if receiver.iter().any(|row| row.len() != w) {
                return Err(Error::dims("receiver rows have different lengths"));
            }
        }
        for row in sender.iter().chain(&receiver) {
            if !is_probability_vector(row) {
                return Err(Error::invalid("strategy row is not a probability vector"));
            }
        }
        Ok(CheapTalkProfile {
            messages,
            sender,
            receiver,
        })
    }

    pub fn messages(&self) -> &[String] {
        &self.messages
    }

    pub fn sender(&self) -> &[Vec<Rational>] {
        &self.sender
    }

    pub fn receiver(&self) -> &[Vec<Rational>] {
        &self.receiver
    }

    fn check_against(&self, g: &SenderReceiverGame) -> Result<()> {
        if self.sender.len() != g.num_states() {
            return Err(Error::dims(format!(
                "sender strategy covers {} states, the game has {}",
                self.sender.len(),
                g.num_states()
            )));
        }
        if self.receiver[0].len() != g.num_actions() {
            return Err(Error::dims(format!(
                "receiver strategy covers {} actions, the game has {}",
                self.receiver[0].len(),
                g.num_actions()
            )));
        }
        if self.messages.len() < g.num_actions().max(g.num_states()) {
            return Err(Error::invalid(
                "need at least as many messages as actions or states",
            ));
        }
        Ok(())
    }

    /// `μ(a|ω) = Σ_m σ(m|ω) τ(a|m)`.
    pub fn induced_outcome(&self) -> Result<Outcome> {
        let na = self.receiver[0].len();
        let rows = self
            .sender
            .iter()
            .map(|sigma| {
                let mut row = vec![Rational::zero(); na];
                for (s, tau) in sigma.iter().zip(&self.receiver) {
                    if s.is_zero() {
                        continue;
                    }
                    for (slot, t) in row.iter_mut().zip(tau) {
                        *slot += s * t;
                    }
                }
                row
            })
            .collect();
        Outcome::new(rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageCheck {
    pub message: usize,
    /// Probability the message is sent.
    pub probability: Rational,
    /// Bayes posterior after an on-path message.
    pub posterior: Option<Vec<Rational>>,
    /// `A*(posterior)` for on-path messages.
    pub best_responses: Vec<usize>,
    /// Every action in the support of `τ(·|m)` is a best response.
    pub receiver_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbeReport {
    pub is_equilibrium: bool,
    /// `slack[ω][m] = max_m' U(ω,m') − U(ω,m)` where `U(ω,m) = Σ_a τ(a|m) u_S(ω,a)`.
    pub sender_slacks: Vec<Vec<Rational>>,
    pub sender_ok: Vec<bool>,
    /// Sender's best attainable payoff in each state.
    pub sender_values: Vec<Rational>,
    /// Ex-ante sender payoff of the profile.
    pub sender_payoff: Rational,
    pub messages: Vec<MessageCheck>,
    pub outcome: Outcome,
}

pub fn verify_pbe(
    g: &SenderReceiverGame,
    profile: &CheapTalkProfile,
    prior: &[Rational],
) -> Result<PbeReport> {
    validate_prior(prior, g.num_states())?;
    profile.check_against(g)?;
    let (ns, na) = (g.num_states(), g.num_actions());
    let nm = profile.messages.len();

    let mut sender_slacks = Vec::with_capacity(ns);
    let mut sender_ok = Vec::with_capacity(ns);
    let mut sender_values = Vec::with_capacity(ns);
    let mut sender_payoff = Rational::zero();
    for (s, w) in prior.iter().enumerate() {
        let us: Vec<Rational> = (0..na).map(|a| g.sender_payoff(s, a).clone()).collect();
        let vals: Vec<Rational> = profile.receiver.iter().map(|tau| dot(tau, &us)).collect();
        let best = vals.iter().max().expect("messages exist").clone();
        let slack: Vec<Rational> = vals.iter().map(|v| &best - v).collect();
        let ok = (0..nm).all(|m| profile.sender[s][m].is_zero() || slack[m].is_zero());
        sender_payoff += w * dot(&profile.sender[s], &vals);
        sender_slacks.push(slack);
        sender_ok.push(ok);
        sender_values.push(best);
    }

    let mut messages = Vec::with_capacity(nm);
    for m in 0..nm {
        let joint: Vec<Rational> = (0..ns).map(|s| &prior[s] * &profile.sender[s][m]).collect();
        let probability: Rational = joint.iter().sum();
        if probability.is_zero() {
            messages.push(MessageCheck {
                message: m,
                probability,
                posterior: None,
                best_responses: Vec::new(),
                receiver_ok: true,
            });
            continue;
        }
        let posterior: Vec<Rational> = joint.iter().map(|x| x / &probability).collect();
        let best = g.best_responses(&posterior)?;
        let receiver_ok = profile.receiver[m]
            .iter()
            .enumerate()
            .all(|(a, t)| t.is_zero() || best.contains(&a));
        messages.push(MessageCheck {
            message: m,
            probability,
            posterior: Some(posterior),
            best_responses: best,
            receiver_ok,
        });
    }
    let is_equilibrium = sender_ok.iter().all(|&b| b) && messages.iter().all(|c| c.receiver_ok);
    Ok(PbeReport {
        is_equilibrium,
        sender_slacks,
        sender_ok,
        sender_values,
        sender_payoff,
        messages,
        outcome: profile.induced_outcome()?,
    })
}

/// `A*(p)`.
pub fn best_response_actions(g: &SenderReceiverGame, belief: &[Rational]) -> Result<Vec<usize>> {
    g.best_responses(belief)
}

fn require_transparent_sender(g: &SenderReceiverGame) -> Result<()> {
    if !g.sender_state_independent() {
        return Err(Error::Precondition(
            "the sender's payoff depends on the state".into(),
        ));
    }
    let mut us: Vec<&Rational> = (0..g.num_actions())
        .map(|a| g.sender_payoff(0, a))
        .collect();
    us.sort();
    if us.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition(
            "the sender's payoffs are not distinct across actions".into(),
        ));
    }
    Ok(())
}

/// `A* = {a : a ∈ A*(p) for some belief p}` and the sender's favourite `a* ∈ A*`.
pub fn sender_best_feasible_action(g: &SenderReceiverGame) -> Result<(Vec<usize>, usize)> {
    require_transparent_sender(g)?;
    let (ns, na) = (g.num_states(), g.num_actions());
    let mut attainable = Vec::new();
    for a in 0..na {
        let mut rows = vec![lp::Constraint {
            coeffs: vec![int(1); ns],
            relation: Relation::Eq,
            rhs: int(1),
        }];
        for b in (0..na).filter(|&b| b != a) {
            rows.push(lp::Constraint {
                coeffs: (0..ns)
                    .map(|s| g.receiver_payoff(s, a) - g.receiver_payoff(s, b))
                    .collect(),
                relation: Relation::Ge,
                rhs: Rational::zero(),
            });
        }
        if lp::feasible_point(ns, rows)?.status() == LpStatus::Optimal {
            attainable.push(a);
        }
    }
    let best = *attainable
        .iter()
        .max_by_key(|&&a| g.sender_payoff(0, a))
        .ok_or_else(|| Error::internal("no action is a best response anywhere"))?;
    Ok((attainable, best))
}

/// A step function on `[0, 1]`: values at breakpoints and on the open
/// intervals between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    pub breakpoints: Vec<Rational>,
    pub point_values: Vec<Rational>,
    pub piece_values: Vec<Rational>,
}

impl StepFunction {
    pub fn eval(&self, p: &Rational) -> Result<Rational> {
        if let Some(i) = self.breakpoints.iter().position(|b| b == p) {
            return Ok(self.point_values[i].clone());
        }
        self.breakpoints
            .windows(2)
            .position(|w| w[0] < *p && *p < w[1])
            .map(|i| self.piece_values[i].clone())
            .ok_or_else(|| Error::invalid(format!("belief {p} outside [0, 1]")))
    }

    /// Values in left-to-right order: point, piece, point, …, point.
    pub fn sequence(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(2 * self.breakpoints.len());
        for (i, v) in self.point_values.iter().enumerate() {
            out.push(v.clone());
            if let Some(pv) = self.piece_values.get(i) {
                out.push(pv.clone());
            }
        }
        out
    }

    /// Superlevel sets are intervals: values rise, then fall.
    pub fn is_quasiconcave(&self) -> bool {
        let seq = self.sequence();
        let mut falling = false;
        for w in seq.windows(2) {
            if w[1] < w[0] {
                falling = true;
            } else if w[1] > w[0] && falling {
                return false;
            }
        }
        true
    }
}

/// `min(sup_{q ≤ p} V, sup_{q ≥ p} V)` for a piecewise-constant `V`.
pub fn quasiconcave_envelope_1d(v: &ValueFunction1d) -> Result<StepFunction> {
    v.validate()?;
    if !v.is_piecewise_constant() {
        return Err(Error::invalid(
            "the quasiconcave envelope is built for piecewise-constant value functions",
        ));
    }
    let seq: Vec<Rational> = {
        let mut s = Vec::new();
        for (i, pv) in v.point_values.iter().enumerate() {
            s.push(pv.clone());
            if let Some(pc) = v.pieces.get(i) {
                s.push(pc.intercept.clone());
            }
        }
        s
    };
    let mut left = seq.clone();
    for i in 1..left.len() {
        if left[i - 1] > left[i] {
            left[i] = left[i - 1].clone();
        }
    }
    let mut right = seq;
    for i in (0..right.len() - 1).rev() {
        if right[i + 1] > right[i] {
            right[i] = right[i + 1].clone();
        }
    }
    let env: Vec<Rational> = left.into_iter().zip(right).map(|(l, r)| l.min(r)).collect();

    // Drop breakpoints where the envelope does not change.
    let mut breakpoints = vec![v.breakpoints[0].clone()];
    let mut point_values = vec![env[0].clone()];
    let mut piece_values: Vec<Rational> = Vec::new();
    for i in 0..v.pieces.len() {
        let piece = &env[2 * i + 1];
        let next_point = &env[2 * i + 2];
        let mergeable = piece_values
            .last()
            .is_some_and(|last| last == piece && point_values.last() == Some(piece));
        if mergeable {
            breakpoints.pop();
            point_values.pop();
        } else {
            piece_values.push(piece.clone());
        }
        breakpoints.push(v.breakpoints[i + 1].clone());
        point_values.push(next_point.clone());
    }
    Ok(StepFunction {
        breakpoints,
        point_values,
        piece_values,
    })
}

/// With a state-independent sender, an equilibrium outcome is efficient iff
/// it plays `a*` with certainty.
pub fn a_star_rule_verdict(g: &SenderReceiverGame, outcome: &Outcome) -> Result<Verdict> {
    let (_, a_star) = sender_best_feasible_action(g)?;
    outcome.check_against(g.game())?;
    let certain = (0..g.num_states()).all(|s| *outcome.prob(s, a_star) == int(1));
    Ok(if certain {
        Verdict::Efficient
    } else {
        Verdict::Inefficient
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheapTalkEfficiency {
    pub pbe: PbeReport,
    pub stochastic: bool,
    /// Stochastic equilibrium outcome: generically inefficient (advisory).
    pub stochastic_advisory: bool,
    /// Present when the sender's payoff is state-independent with distinct values.
    pub a_star_rule: Option<Verdict>,
    pub a_star: Option<usize>,
    pub cone: EfficiencyReport,
    pub a_star_rule_agrees: Option<bool>,
}

pub fn efficiency_predicates(
    g: &SenderReceiverGame,
    profile: &CheapTalkProfile,
    prior: &[Rational],
) -> Result<CheapTalkEfficiency> {
    let pbe = verify_pbe(g, profile, prior)?;
    if !pbe.is_equilibrium {
        return Err(Error::Precondition(
            "the profile is not an equilibrium".into(),
        ));
    }
    let stochastic = !pbe.outcome.is_pure();
    let game = g.game().with_prior(prior.to_vec())?;
    let cone = ex_ante_efficient_cone(&game, &pbe.outcome)?;
    let transparent = require_transparent_sender(g).is_ok();
    let (a_star_rule, a_star) = if transparent {
        (
            Some(a_star_rule_verdict(g, &pbe.outcome)?),
            Some(sender_best_feasible_action(g)?.1),
        )
    } else {
        (None, None)
    };
    Ok(CheapTalkEfficiency {
        stochastic,
        stochastic_advisory: stochastic,
        a_star_rule_agrees: a_star_rule.map(|v| v == cone.verdict),
        a_star_rule,
        a_star,
        cone,
        pbe,
    })
}

/// Whether any deviation in the report's witness moves weight to `action`
/// in `state`.
pub fn witness_uses(report: &EfficiencyReport, state: usize, action: usize) -> bool {
    report.witness.as_ref().is_some_and(|w| {
        w.lambda
            .iter()
            .any(|((s, a), l)| *s == state && *a == action && l.is_positive())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{babbling_profile, informative_profile, running_sr};
    use crate::persuasion::{concavify_1d, value_function_1d};
    use crate::rational::frac;

    fn prior(p1: Rational) -> Vec<Rational> {
        vec![int(1) - &p1, p1]
    }

    #[test]
    fn informative_profile_is_an_equilibrium() {
        let g = running_sr(frac(1, 2));
        let rep = verify_pbe(&g, &informative_profile(), &prior(frac(1, 2))).unwrap();
        assert!(rep.is_equilibrium);
        assert_eq!(rep.sender_payoff, int(3));
        assert_eq!(rep.sender_values, vec![int(3), int(3)]);
        assert!(rep
            .sender_slacks
            .iter()
            .all(|row| row.iter().all(Zero::is_zero)));
        assert_eq!(rep.messages[0].posterior, Some(prior(frac(2, 5))));
        assert_eq!(rep.messages[1].posterior, Some(prior(frac(3, 5))));
        assert!(rep.messages[2].posterior.is_none());
    }

    #[test]
    fn induced_outcome_composes_strategies() {
        let prof = informative_profile();
        let mu = prof.induced_outcome().unwrap();
        // ω0: 3/5 · (3/10 a1 + 7/10 a2) + 2/5 · a3.
        assert_eq!(
            mu.row(0),
            &[int(0), frac(9, 50), frac(21, 50), frac(2, 5), int(0)]
        );
    }

    #[test]
    fn pure_a1_reply_breaks_the_equilibrium() {
        let g = running_sr(frac(1, 2));
        let prof = informative_profile();
        let mut receiver = prof.receiver().to_vec();
        receiver[0] = vec![int(0), int(1), int(0), int(0), int(0)];
        let bad = CheapTalkProfile::new(prof.messages().to_vec(), prof.sender().to_vec(), receiver)
            .unwrap();
        let rep = verify_pbe(&g, &bad, &prior(frac(1, 2))).unwrap();
        assert!(!rep.is_equilibrium);
        assert!(rep.sender_slacks[0][1].is_positive());
    }

    #[test]
    fn babbling_equilibria() {
        let g = running_sr(frac(1, 2));
        for (p, a) in [(frac(3, 10), 1), (frac(7, 10), 3)] {
            let rep = verify_pbe(&g, &babbling_profile(a), &prior(p)).unwrap();
            assert!(rep.is_equilibrium);
        }
        // a4 is not a best response to the prior 3/10.
        let rep = verify_pbe(&g, &babbling_profile(4), &prior(frac(3, 10))).unwrap();
        assert!(!rep.is_equilibrium);
    }

    #[test]
    fn attainable_actions() {
        let g = running_sr(frac(1, 2));
        assert_eq!(
            sender_best_feasible_action(&g).unwrap(),
            (vec![0, 1, 2, 3, 4], 1)
        );
        let dominated = SenderReceiverGame::from_tables(
            vec!["w0".into(), "w1".into()],
            vec![frac(1, 2), frac(1, 2)],
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                vec![(int(1), int(3)), (int(2), int(1)), (int(3), int(3))],
                vec![(int(1), int(3)), (int(2), int(1)), (int(3), int(3))],
            ],
        )
        .unwrap();
        assert_eq!(
            sender_best_feasible_action(&dominated).unwrap(),
            (vec![0, 2], 2)
        );
    }

    #[test]
    fn precondition_failures() {
        let dependent = SenderReceiverGame::from_tables(
            vec!["w0".into(), "w1".into()],
            vec![frac(1, 2), frac(1, 2)],
            vec!["x".into(), "y".into()],
            vec![
                vec![(int(1), int(0)), (int(2), int(0))],
                vec![(int(5), int(0)), (int(2), int(0))],
            ],
        )
        .unwrap();
        assert!(matches!(
            sender_best_feasible_action(&dependent),
            Err(Error::Precondition(_))
        ));
        let mu = Outcome::pure(2, &[0, 0]).unwrap();
        assert!(a_star_rule_verdict(&dependent, &mu).is_err());
        let ties = SenderReceiverGame::from_tables(
            vec!["w0".into(), "w1".into()],
            vec![frac(1, 2), frac(1, 2)],
            vec!["x".into(), "y".into()],
            vec![
                vec![(int(1), int(0)), (int(1), int(0))],
                vec![(int(1), int(0)), (int(1), int(0))],
            ],
        )
        .unwrap();
        assert!(sender_best_feasible_action(&ties).is_err());
    }

    #[test]
    fn example_quasiconcave_envelope() {
        let v = value_function_1d(&running_sr(frac(1, 2))).unwrap();
        let q = quasiconcave_envelope_1d(&v).unwrap();
        assert_eq!(
            q.breakpoints,
            vec![int(0), frac(1, 5), frac(2, 5), frac(4, 5), int(1)]
        );
        assert_eq!(
            q.point_values,
            vec![int(2), int(10), int(10), int(3), int(1)]
        );
        assert_eq!(q.piece_values, vec![int(2), int(10), int(3), int(1)]);
        assert_eq!(q.eval(&frac(1, 2)).unwrap(), int(3));
        assert!(q.is_quasiconcave());
        let cav = concavify_1d(&v).unwrap();
        for k in 0..=100 {
            let p = frac(k, 100);
            let qv = q.eval(&p).unwrap();
            assert!(qv >= v.eval(&p).unwrap());
            assert!(cav.eval(&p).unwrap() >= qv);
        }
    }

    #[test]
    fn monotone_value_is_its_own_envelope() {
        let g = SenderReceiverGame::from_tables(
            vec!["w0".into(), "w1".into()],
            vec![frac(1, 2), frac(1, 2)],
            vec!["x".into(), "y".into()],
            vec![
                vec![(int(1), int(1)), (int(2), int(0))],
                vec![(int(1), int(0)), (int(2), int(1))],
            ],
        )
        .unwrap();
        let v = value_function_1d(&g).unwrap();
        let q = quasiconcave_envelope_1d(&v).unwrap();
        for k in 0..=10 {
            let p = frac(k, 10);
            assert_eq!(q.eval(&p).unwrap(), v.eval(&p).unwrap());
        }
    }

    #[test]
    fn example_predicates() {
        let g = running_sr(frac(1, 2));
        let b3 = efficiency_predicates(&g, &babbling_profile(1), &prior(frac(3, 10))).unwrap();
        assert_eq!(
            (b3.a_star_rule, b3.cone.verdict),
            (Some(Verdict::Efficient), Verdict::Efficient)
        );

        let b7 = efficiency_predicates(&g, &babbling_profile(3), &prior(frac(7, 10))).unwrap();
        assert_eq!(
            (b7.a_star_rule, b7.cone.verdict),
            (Some(Verdict::Inefficient), Verdict::Inefficient)
        );
        assert!(witness_uses(&b7.cone, 0, 1));

        let inf = efficiency_predicates(&g, &informative_profile(), &prior(frac(1, 2))).unwrap();
        assert!(inf.stochastic && inf.stochastic_advisory);
        assert_eq!(
            (inf.a_star_rule, inf.cone.verdict),
            (Some(Verdict::Inefficient), Verdict::Inefficient)
        );
        assert_eq!(inf.a_star_rule_agrees, Some(true));
    }

    #[test]
    fn non_equilibrium_is_rejected_by_predicates() {
        let g = running_sr(frac(1, 2));
        assert!(efficiency_predicates(&g, &babbling_profile(4), &prior(frac(3, 10))).is_err());
    }
}
