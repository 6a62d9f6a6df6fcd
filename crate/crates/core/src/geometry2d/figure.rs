//! Plot-ready description of a two-player game and outcome.

use serde_json::{json, Value};

use super::cone::{intersect_positive, normal_cone_at, NormalCone};
use super::polygon::{hull, minkowski_sum, Location, Polygon};
use super::Point;
use crate::error::{Error, Result};
use crate::game::{induced_payoff, state_payoff, Game, Outcome};
use crate::rational::to_json;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleSets {
    /// `F_ω` for every state.
    pub per_state: Vec<Polygon>,
    /// `F_p = Σ p(ω) F_ω`.
    pub ex_ante: Polygon,
}

pub fn feasible_sets(game: &Game) -> Result<FeasibleSets> {
    if game.players() != 2 {
        return Err(Error::invalid(format!(
            "planar geometry needs two players, the game has {}",
            game.players()
        )));
    }
    let per_state = (0..game.num_states())
        .map(|s| {
            let pts: Vec<Point> = game
                .payoffs_in(s)
                .iter()
                .map(|u| Point::from_slice(u))
                .collect();
            hull(&pts)
        })
        .collect::<Result<Vec<_>>>()?;
    let terms: Vec<_> = game.prior().iter().cloned().zip(per_state.iter()).collect();
    let ex_ante = minkowski_sum(&terms)?;
    Ok(FeasibleSets { per_state, ex_ante })
}

fn point_json(p: &Point) -> Value {
    json!([to_json(&p.x), to_json(&p.y)])
}

fn polygon_json(poly: &Polygon) -> Value {
    Value::Array(poly.vertices().iter().map(point_json).collect())
}

pub(crate) fn cone_json(cone: &NormalCone) -> Value {
    match cone {
        NormalCone::Ray(r) => json!({"kind": "ray", "direction": point_json(r)}),
        NormalCone::Line(r) => json!({"kind": "line", "direction": point_json(r)}),
        NormalCone::Wedge { from, to } => {
            json!({"kind": "wedge", "from": point_json(from), "to": point_json(to)})
        }
        NormalCone::Plane => json!({"kind": "plane"}),
    }
}

fn located_point(poly: &Polygon, p: &Point) -> Result<(Value, Option<NormalCone>)> {
    let loc = poly.locate(p);
    if loc == Location::Exterior {
        return Err(Error::internal(format!(
            "{p} lies outside its own feasible set"
        )));
    }
    let cone = (loc == Location::Boundary)
        .then(|| normal_cone_at(poly, p))
        .transpose()?;
    let value = json!({
        "point": point_json(p),
        "location": loc.as_str(),
        "normal_cone": cone.as_ref().map_or(Value::Null, cone_json),
        "positive_normal_cone": cone
            .as_ref()
            .and_then(NormalCone::positive_part)
            .as_ref()
            .map_or(Value::Null, cone_json),
    });
    Ok((value, cone))
}

/// Hulls of every `F_ω` and of `F_p`, the outcome's points and the normal
/// cones there, and whether a strictly positive common normal exists.
pub fn figure_data(game: &Game, outcome: &Outcome) -> Result<Value> {
    let sets = feasible_sets(game)?;
    outcome.check_against(game)?;
    let mut states = Vec::new();
    let mut cones = Vec::new();
    for (s, poly) in sets.per_state.iter().enumerate() {
        let p = Point::from_slice(&state_payoff(game, outcome, s)?);
        let (mut entry, cone) = located_point(poly, &p)?;
        entry["state"] = json!(game.states()[s]);
        entry["hull"] = polygon_json(poly);
        entry["weight"] = to_json(&game.prior()[s]);
        cones.push(cone);
        states.push(entry);
    }
    let p = Point::from_slice(&induced_payoff(game, outcome)?);
    let (mut ex_ante, cone) = located_point(&sets.ex_ante, &p)?;
    ex_ante["hull"] = polygon_json(&sets.ex_ante);

    let common = cones
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .and_then(|cs| intersect_positive(&cs))
        .filter(NormalCone::meets_open_positive_quadrant);
    let ex_ante_positive = cone.is_some_and(|c| c.meets_open_positive_quadrant());
    if common.is_some() != ex_ante_positive {
        return Err(Error::internal(
            "state-wise common normal and ex-ante normal cone disagree",
        ));
    }
    Ok(json!({
        "states": states,
        "ex_ante": ex_ante,
        "common_positive_normal": common.as_ref().map_or(Value::Null, cone_json),
        "efficient": ex_ante_positive,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{running_outcome, RunningCase};
    use crate::rational::{frac, int};

    #[test]
    fn case_b_point_is_on_the_boundary() {
        let (game, mu) = running_outcome(RunningCase::B);
        let fig = figure_data(&game, &mu).unwrap();
        assert_eq!(fig["ex_ante"]["point"], json!(["10", "34/5"]));
        assert_eq!(fig["ex_ante"]["location"], "boundary");
        assert_eq!(fig["efficient"], true);
    }

    #[test]
    fn case_a_has_no_common_normal() {
        let (game, mu) = running_outcome(RunningCase::A);
        let fig = figure_data(&game, &mu).unwrap();
        assert_eq!(
            fig["states"][0]["normal_cone"],
            json!({"kind": "ray", "direction": ["1", "8"]})
        );
        assert_eq!(fig["common_positive_normal"], Value::Null);
        assert_eq!(fig["efficient"], false);
    }

    #[test]
    fn single_state_sum_is_the_state_hull() {
        let game = Game::from_fn(
            vec!["w".into()],
            vec![int(1)],
            vec![vec!["x".into(), "y".into()], vec!["l".into(), "r".into()]],
            |_, a| {
                vec![
                    int((a[0] * 3 + a[1]) as i64),
                    int((a[1] * 2) as i64 - a[0] as i64),
                ]
            },
        )
        .unwrap();
        let sets = feasible_sets(&game).unwrap();
        assert_eq!(sets.ex_ante, sets.per_state[0]);
        let three = Game::from_fn(
            vec!["w".into()],
            vec![int(1)],
            vec![vec!["x".into()]; 3],
            |_, _| vec![frac(1, 2); 3],
        )
        .unwrap();
        assert!(feasible_sets(&three).is_err());
    }
}
