//! JSON renderings of command results.

use effcert::allocation::{AllocationInstance, AllocationVerdict, DicReport, MechanismOutcome};
use effcert::cheaptalk::{CheapTalkEfficiency, PbeReport};
use effcert::game::{support_counts, Game};
use effcert::io::{certificate_to_json, counting_to_json, outcome_to_json};
use effcert::persuasion::{BpSolution, SenderReceiverGame, ThresholdReport};
use effcert::rational::{to_json, vec_to_json};
use serde_json::{json, Map, Value};

fn labelled<T>(labels: &[String], xs: &[T], f: impl Fn(&T) -> Value) -> Value {
    Value::Object(labels.iter().cloned().zip(xs.iter().map(f)).collect())
}

pub fn bp(game: &Game, sol: &BpSolution) -> Value {
    let receiver = &game.actions()[1];
    let posteriors: Vec<Value> = sol
        .posteriors
        .iter()
        .map(|p| {
            json!({
                "action": receiver[p.action],
                "probability": to_json(&p.probability),
                "belief": labelled(game.states(), &p.belief, to_json),
            })
        })
        .collect();
    let support: Map<String, Value> = game
        .states()
        .iter()
        .enumerate()
        .map(|(s, l)| {
            let acts: Vec<&String> = sol
                .outcome
                .support(s)
                .iter()
                .map(|&a| &receiver[a])
                .collect();
            (l.clone(), json!(acts))
        })
        .collect();
    let obedience: Vec<Value> = sol
        .active_obedience
        .iter()
        .map(|&(a, b)| json!({"recommended": receiver[a], "deviation": receiver[b]}))
        .collect();
    json!({
        "prior": labelled(game.states(), &sol.prior, to_json),
        "value": to_json(&sol.value),
        "outcome": outcome_to_json(game, &sol.outcome),
        "support": support,
        "support_sizes": support_counts(&sol.outcome).per_state,
        "posteriors": posteriors,
        "active_obedience": obedience,
    })
}

pub fn pbe(g: &SenderReceiverGame, messages: &[String], rep: &PbeReport) -> Value {
    let game = g.game();
    let checks: Vec<Value> = rep
        .messages
        .iter()
        .map(|m| {
            json!({
                "message": messages[m.message],
                "probability": to_json(&m.probability),
                "posterior": m.posterior.as_ref().map_or(Value::Null, |p| labelled(game.states(), p, to_json)),
                "best_responses": m.best_responses.iter().map(|&a| g.actions()[a].clone()).collect::<Vec<_>>(),
                "receiver_ok": m.receiver_ok,
            })
        })
        .collect();
    let slacks: Map<String, Value> = game
        .states()
        .iter()
        .zip(&rep.sender_slacks)
        .map(|(s, row)| (s.clone(), labelled(messages, row, to_json)))
        .collect();
    json!({
        "equilibrium": rep.is_equilibrium,
        "sender_payoff": to_json(&rep.sender_payoff),
        "sender_ok": labelled(game.states(), &rep.sender_ok, |b| json!(b)),
        "sender_values": labelled(game.states(), &rep.sender_values, to_json),
        "sender_slacks": slacks,
        "messages": checks,
        "outcome": outcome_to_json(game, &rep.outcome),
    })
}

pub fn cheaptalk_efficiency(
    g: &SenderReceiverGame,
    game: &Game,
    messages: &[String],
    eff: &CheapTalkEfficiency,
    envelopes: Option<Value>,
) -> Value {
    json!({
        "equilibrium": pbe(g, messages, &eff.pbe),
        "stochastic": eff.stochastic,
        "stochastic_generically_inefficient": eff.stochastic_advisory,
        "a_star": eff.a_star.map(|a| g.actions()[a].clone()),
        "a_star_rule": eff.a_star_rule.map(|v| v.as_str()),
        "a_star_rule_agrees": eff.a_star_rule_agrees,
        "certificate": certificate_to_json(game, &eff.cone),
        "efficient": eff.cone.verdict == effcert::efficiency::Verdict::Efficient,
        "envelopes": envelopes.unwrap_or(Value::Null),
    })
}

pub fn threshold(g: &SenderReceiverGame, rep: &ThresholdReport) -> Value {
    let game = g
        .game()
        .with_prior(rep.bp.prior.clone())
        .expect("prior already validated");
    let r = &rep.region;
    let planes: Vec<Value> = r
        .hyperplanes
        .iter()
        .map(|(h, c)| json!({"normal": vec_to_json(h), "offset": to_json(c)}))
        .collect();
    json!({
        "prior": vec_to_json(&rep.bp.prior),
        "t_p": to_json(&r.t_p),
        "q": vec_to_json(&r.q),
        "i_star": r.i_star,
        "j_star": r.j_star,
        "hyperplanes": planes,
        "in_region": r.in_region,
        "in_region_interior": r.in_region_interior,
        "in_r_star": r.in_r_star,
        "in_r_star_interior": r.in_r_star_interior,
        "applicable": rep.applicable,
        "outer_point_value": to_json(&rep.outer_point_value),
        "bp": bp(&game, &rep.bp),
        "counting": counting_to_json(&game, &rep.counting),
        "verdict": rep.cone_verdict.as_str(),
        "mixing_pattern": rep.case.as_str(),
        "mixed": rep.mixed,
        "confirmed": rep.confirmed,
    })
}

pub fn allocation(
    inst: &AllocationInstance,
    embedded: &Game,
    mech: &MechanismOutcome,
    dic: &DicReport,
    verdict: &AllocationVerdict,
    draws: &[Value],
) -> Value {
    let states: Vec<String> = (0..inst.num_states())
        .map(|s| inst.state_label(s))
        .collect();
    let per_state = |rows: &[Vec<bool>]| labelled(&states, rows, |r| json!(r));
    let violations: Vec<Value> = dic
        .violations
        .iter()
        .map(|v| {
            json!({
                "agent": v.agent + 1,
                "state": states[v.state],
                "misreport": inst.types()[v.agent][v.misreport],
                "truthful": to_json(&v.truthful),
                "deviating": to_json(&v.deviating),
            })
        })
        .collect();
    json!({
        "t": to_json(inst.t()),
        "selected_count": mech.selected_count,
        "outcome": outcome_to_json(embedded, &mech.outcome),
        "peer_values": labelled(&states, &mech.ranks.peer_values, |r| vec_to_json(r)),
        "ranks": labelled(&states, &mech.ranks.ranks, |r| vec_to_json(r)),
        "robust_ranks": labelled(&states, &mech.ranks.robust, |r| vec_to_json(r)),
        "informational_size": labelled(&states, &mech.delta, to_json),
        "selected": per_state(&mech.selected),
        "eligible": per_state(&mech.eligible),
        "dic": {"holds": dic.holds, "comparisons": dic.comparisons, "violations": violations},
        "assumption_violations": verdict.violations,
        "support_sizes": labelled(&states, &verdict.support_sizes, |c| json!(c)),
        "total_support": verdict.total_support,
        "bound": verdict.bound,
        "exceeds_bound": verdict.counting_exceeds_bound,
        "verdict": verdict.verdict.map(|v| v.as_str()),
        "certificate": verdict.cone.as_ref().map_or(Value::Null, |c| certificate_to_json(embedded, c)),
        "principal_value_draws": draws,
    })
}
