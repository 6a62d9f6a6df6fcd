//! JSON encodings of games, outcomes, cheap-talk profiles, allocation
//! instances and efficiency certificates.
//!
//! Rationals are written as `"num/den"` strings (integers without a
//! denominator). Decimal numbers and decimal strings are accepted on input.
//! Probability maps list only positive entries; omitted entries are zero.

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::allocation::AllocationInstance;
use crate::cheaptalk::CheapTalkProfile;
use crate::efficiency::{CountingReport, EfficiencyReport, Method, Verdict, Witness};
use crate::error::{Error, Result};
use crate::game::{Game, Outcome, PayoffVector};
use crate::persuasion::SenderReceiverGame;
use crate::rational::{from_json, to_json, vec_from_json, vec_to_json, Rational};

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::invalid(format!("missing field `{key}`")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::invalid(format!("{what} must be a JSON object")))
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| Error::invalid(format!("{what} must be an array of strings")))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::invalid(format!("{what} must be an array of strings")))
        })
        .collect()
}

fn string_lists(v: &Value, what: &str) -> Result<Vec<Vec<String>>> {
    v.as_array()
        .ok_or_else(|| Error::invalid(format!("{what} must be an array of arrays")))?
        .iter()
        .map(|x| strings(x, what))
        .collect()
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::invalid(format!("`{key}` must be a non-negative integer")))
}

/// A prior given either as an array in state order or as a map keyed by label.
fn prior_from_json(
    v: &Value,
    labels: &[String],
    index: impl Fn(&str) -> Result<usize>,
) -> Result<Vec<Rational>> {
    match v {
        Value::Array(_) => vec_from_json(v),
        Value::Object(map) => {
            let mut out = vec![None; labels.len()];
            for (k, p) in map {
                let s = index(k)?;
                if out[s].replace(from_json(p)?).is_some() {
                    return Err(Error::invalid(format!("prior lists `{k}` twice")));
                }
            }
            out.into_iter()
                .zip(labels)
                .map(|(p, l)| p.ok_or_else(|| Error::invalid(format!("prior is missing `{l}`"))))
                .collect()
        }
        _ => Err(Error::invalid("prior must be an array or an object")),
    }
}

pub fn game_to_json(game: &Game) -> Value {
    let mut payoffs = Map::new();
    for (s, label) in game.states().iter().enumerate() {
        let row: Map<String, Value> = (0..game.num_joint())
            .map(|j| (game.joint_label(j), vec_to_json(game.payoff(s, j))))
            .collect();
        payoffs.insert(label.clone(), Value::Object(row));
    }
    json!({
        "players": game.players(),
        "states": game.states(),
        "prior": vec_to_json(game.prior()),
        "actions": game.actions(),
        "payoffs": payoffs,
    })
}

pub fn game_from_json(v: &Value) -> Result<Game> {
    let k = usize_field(v, "players")?;
    let states = strings(field(v, "states")?, "states")?;
    let actions = string_lists(field(v, "actions")?, "actions")?;
    if actions.len() != k {
        return Err(Error::dims(format!(
            "`players` is {k} but {} action lists are given",
            actions.len()
        )));
    }
    let index = |l: &str| {
        states
            .iter()
            .position(|s| s == l)
            .ok_or_else(|| Error::UnknownState(l.to_string()))
    };
    let prior = prior_from_json(field(v, "prior")?, &states, index)?;
    // Build a shell game for label parsing, then fill in payoffs.
    let shell = Game::from_fn(states.clone(), prior.clone(), actions.clone(), |_, _| {
        vec![Rational::zero(); k]
    })?;
    let table = object(field(v, "payoffs")?, "`payoffs`")?;
    let mut payoffs: Vec<Vec<Option<Vec<Rational>>>> =
        vec![vec![None; shell.num_joint()]; states.len()];
    for (label, row) in table {
        let s = shell.state_index(label)?;
        for (joint, u) in object(row, "a payoff row")? {
            let j = shell.parse_joint_label(joint)?;
            let u = vec_from_json(u)?;
            if payoffs[s][j].replace(u).is_some() {
                return Err(Error::invalid(format!(
                    "payoff for `{joint}` in `{label}` given twice"
                )));
            }
        }
    }
    let payoffs = payoffs
        .into_iter()
        .enumerate()
        .map(|(s, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, u)| {
                    u.ok_or_else(|| {
                        Error::invalid(format!(
                            "missing payoff for `{}` in state `{}`",
                            shell.joint_label(j),
                            states[s]
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Game::new(states, prior, actions, payoffs)
}

/// `{"<state>": {"<joint>": prob}}` with zero entries omitted.
pub fn outcome_to_json(game: &Game, outcome: &Outcome) -> Value {
    let map: Map<String, Value> = game
        .states()
        .iter()
        .enumerate()
        .map(|(s, label)| {
            let row: Map<String, Value> = outcome
                .support(s)
                .into_iter()
                .map(|j| (game.joint_label(j), to_json(outcome.prob(s, j))))
                .collect();
            (label.clone(), Value::Object(row))
        })
        .collect();
    Value::Object(map)
}

pub fn outcome_from_json(game: &Game, v: &Value) -> Result<Outcome> {
    let mut rows = vec![vec![Rational::zero(); game.num_joint()]; game.num_states()];
    let mut seen = vec![false; game.num_states()];
    for (label, row) in object(v, "an outcome")? {
        let s = game.state_index(label)?;
        seen[s] = true;
        for (joint, p) in object(row, "an outcome row")? {
            let j = game.parse_joint_label(joint)?;
            rows[s][j] += from_json(p)?;
        }
    }
    if let Some(s) = seen.iter().position(|&b| !b) {
        return Err(Error::invalid(format!(
            "outcome is missing state `{}`",
            game.states()[s]
        )));
    }
    Outcome::new(rows)
}

fn prob_map(labels: &[String], row: &[Rational]) -> Value {
    Value::Object(
        labels
            .iter()
            .zip(row)
            .filter(|(_, p)| !p.is_zero())
            .map(|(l, p)| (l.clone(), to_json(p)))
            .collect(),
    )
}

fn prob_map_from_json(v: &Value, labels: &[String], what: &str) -> Result<Vec<Rational>> {
    let mut row = vec![Rational::zero(); labels.len()];
    for (key, p) in object(v, what)? {
        let i = labels
            .iter()
            .position(|l| l == key)
            .ok_or_else(|| Error::UnknownLabel(key.clone()))?;
        row[i] += from_json(p)?;
    }
    Ok(row)
}

pub fn profile_to_json(g: &SenderReceiverGame, profile: &CheapTalkProfile) -> Value {
    let m = profile.messages();
    let sender: Map<String, Value> = g
        .game()
        .states()
        .iter()
        .zip(profile.sender())
        .map(|(s, row)| (s.clone(), prob_map(m, row)))
        .collect();
    let receiver: Map<String, Value> = m
        .iter()
        .zip(profile.receiver())
        .map(|(msg, row)| (msg.clone(), prob_map(g.actions(), row)))
        .collect();
    json!({"messages": m, "sender": sender, "receiver": receiver})
}

pub fn profile_from_json(g: &SenderReceiverGame, v: &Value) -> Result<CheapTalkProfile> {
    let messages = strings(field(v, "messages")?, "messages")?;
    let sender_map = object(field(v, "sender")?, "`sender`")?;
    let receiver_map = object(field(v, "receiver")?, "`receiver`")?;
    let sender = g
        .game()
        .states()
        .iter()
        .map(|s| {
            let row = sender_map
                .get(s)
                .ok_or_else(|| Error::invalid(format!("sender strategy is missing state `{s}`")))?;
            prob_map_from_json(row, &messages, "a sender row")
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(extra) = sender_map.keys().find(|k| g.game().state_index(k).is_err()) {
        return Err(Error::UnknownState(extra.clone()));
    }
    let receiver = messages
        .iter()
        .map(|m| {
            let row = receiver_map.get(m).ok_or_else(|| {
                Error::invalid(format!("receiver strategy is missing message `{m}`"))
            })?;
            prob_map_from_json(row, g.actions(), "a receiver row")
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(extra) = receiver_map.keys().find(|k| !messages.contains(k)) {
        return Err(Error::UnknownLabel(extra.clone()));
    }
    CheapTalkProfile::new(messages, sender, receiver)
}

pub fn instance_to_json(inst: &AllocationInstance) -> Value {
    let labels: Vec<String> = (0..inst.num_states())
        .map(|s| inst.state_label(s))
        .collect();
    let prior: Map<String, Value> = labels
        .iter()
        .zip(inst.prior())
        .map(|(l, p)| (l.clone(), to_json(p)))
        .collect();
    let values: Map<String, Value> = labels
        .iter()
        .zip(inst.values())
        .map(|(l, u)| (l.clone(), vec_to_json(u)))
        .collect();
    json!({
        "agents": inst.agents(),
        "types": inst.types(),
        "prior": prior,
        "values": values,
        "t": to_json(inst.t()),
    })
}

pub fn instance_from_json(v: &Value) -> Result<AllocationInstance> {
    let n = usize_field(v, "agents")?;
    let types = string_lists(field(v, "types")?, "types")?;
    if types.len() != n {
        return Err(Error::dims(format!(
            "`agents` is {n} but {} type lists are given",
            types.len()
        )));
    }
    let t = from_json(field(v, "t")?)?;
    let states: usize = types.iter().map(Vec::len).product();
    // A uniform shell resolves labels; the real instance is validated below.
    let uniform = Rational::new(1.into(), states.into());
    let shell = AllocationInstance::new(
        types.clone(),
        vec![uniform; states],
        vec![vec![Rational::zero(); n]; states],
        t.clone(),
    )?;
    let labels: Vec<String> = (0..states).map(|s| shell.state_label(s)).collect();
    let prior = prior_from_json(field(v, "prior")?, &labels, |l| shell.parse_state_label(l))?;
    let value_map = object(field(v, "values")?, "`values`")?;
    let mut values = vec![None; states];
    for (label, u) in value_map {
        let s = shell.parse_state_label(label)?;
        if values[s].replace(vec_from_json(u)?).is_some() {
            return Err(Error::invalid(format!("values for `{label}` given twice")));
        }
    }
    let values = values
        .into_iter()
        .zip(&labels)
        .map(|(u, l)| u.ok_or_else(|| Error::invalid(format!("values missing for `{l}`"))))
        .collect::<Result<Vec<_>>>()?;
    AllocationInstance::new(types, prior, values, t)
}

pub fn counting_to_json(game: &Game, c: &CountingReport) -> Value {
    json!({
        "per_state": c.per_state,
        "total": c.total,
        "bound": c.bound,
        "passes": c.passes,
        "states_over_k": c.states_over_k.iter().map(|&s| game.states()[s].clone()).collect::<Vec<_>>(),
    })
}

pub fn counting_from_json(game: &Game, v: &Value) -> Result<CountingReport> {
    let per_state = field(v, "per_state")?
        .as_array()
        .ok_or_else(|| Error::invalid("`per_state` must be an array"))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| Error::invalid("bad support count"))
        })
        .collect::<Result<Vec<_>>>()?;
    let states_over_k = strings(field(v, "states_over_k")?, "states_over_k")?
        .iter()
        .map(|l| game.state_index(l))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountingReport {
        per_state,
        total: usize_field(v, "total")?,
        bound: usize_field(v, "bound")?,
        passes: field(v, "passes")?
            .as_bool()
            .ok_or_else(|| Error::invalid("`passes` must be a boolean"))?,
        states_over_k,
    })
}

/// `{"verdict", "method", "weights"?, "witness"?, "counting", "weakly_supported"?}`.
pub fn certificate_to_json(game: &Game, report: &EfficiencyReport) -> Value {
    let mut out = Map::new();
    out.insert("verdict".into(), json!(report.verdict.as_str()));
    out.insert("method".into(), json!(report.method.as_str()));
    if let Some(n) = &report.weights {
        out.insert("weights".into(), vec_to_json(n));
    }
    if let Some(w) = &report.witness {
        let mut lambda = Map::new();
        for ((s, j), l) in &w.lambda {
            let entry = lambda
                .entry(game.states()[*s].clone())
                .or_insert_with(|| Value::Object(Map::new()));
            entry
                .as_object_mut()
                .expect("constructed as an object")
                .insert(game.joint_label(*j), to_json(l));
        }
        out.insert(
            "witness".into(),
            json!({
                "lambda": lambda,
                "combined_deviation": vec_to_json(&w.combined),
                "dominating_outcome": outcome_to_json(game, &w.dominating_outcome),
                "dominating_point": vec_to_json(&w.dominating_point),
            }),
        );
    }
    out.insert("counting".into(), counting_to_json(game, &report.counting));
    if let Some(n) = &report.weakly_supported {
        out.insert("weakly_supported".into(), vec_to_json(n));
    }
    Value::Object(out)
}

pub fn certificate_from_json(game: &Game, v: &Value) -> Result<EfficiencyReport> {
    let verdict = match field(v, "verdict")?.as_str() {
        Some("efficient") => Verdict::Efficient,
        Some("inefficient") => Verdict::Inefficient,
        _ => {
            return Err(Error::invalid(
                "`verdict` must be \"efficient\" or \"inefficient\"",
            ))
        }
    };
    let method = match field(v, "method")?.as_str() {
        Some("cone") => Method::Cone,
        Some("dominance") => Method::Dominance,
        _ => return Err(Error::invalid("`method` must be \"cone\" or \"dominance\"")),
    };
    let weights = v.get("weights").map(vec_from_json).transpose()?;
    let weakly_supported = v.get("weakly_supported").map(vec_from_json).transpose()?;
    let witness = v
        .get("witness")
        .map(|w| -> Result<Witness> {
            let mut lambda = Vec::new();
            for (state, row) in object(field(w, "lambda")?, "`lambda`")? {
                let s = game.state_index(state)?;
                for (joint, l) in object(row, "a lambda row")? {
                    lambda.push(((s, game.parse_joint_label(joint)?), from_json(l)?));
                }
            }
            lambda.sort_by_key(|a| a.0);
            Ok(Witness {
                lambda,
                combined: vec_from_json(field(w, "combined_deviation")?)?,
                dominating_outcome: outcome_from_json(game, field(w, "dominating_outcome")?)?,
                dominating_point: PayoffVector(vec_from_json(field(w, "dominating_point")?)?),
            })
        })
        .transpose()?;
    Ok(EfficiencyReport {
        verdict,
        method,
        weights,
        witness,
        counting: counting_from_json(game, field(v, "counting")?)?,
        weakly_supported,
    })
}
