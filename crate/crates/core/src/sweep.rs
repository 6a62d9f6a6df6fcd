//! Prior-grid sweeps: solve persuasion at every grid prior and classify the
//! resulting outcome. Grid points are processed in parallel; rows come back
//! in grid order.

use rayon::prelude::*;

use crate::efficiency::{counting_bound, ex_ante_efficient_cone, Verdict};
use crate::error::{Error, Result};
use crate::game::support_counts;
use crate::persuasion::{
    concavify_1d, simplex_grid, solve_bp, value_function_1d, verify_threshold_inefficiency,
    SenderReceiverGame, ThresholdEnv,
};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub prior: Vec<Rational>,
    pub value: Rational,
    /// Concave envelope at the prior (two-state games only).
    pub cav: Option<Rational>,
    pub support: Vec<usize>,
    pub bound: usize,
    pub bound_passes: bool,
    pub verdict: Verdict,
    pub in_r_star: Option<bool>,
    pub in_r_star_interior: Option<bool>,
    pub t_p: Option<Rational>,
}

/// Column names; identical for every sweep kind.
pub fn sweep_header(states: &[String]) -> Vec<String> {
    let mut h: Vec<String> = states.iter().map(|s| format!("p_{s}")).collect();
    h.push("value".into());
    h.push("cav".into());
    h.extend(states.iter().map(|s| format!("support_{s}")));
    for c in [
        "support_total",
        "bound",
        "bound_passes",
        "verdict",
        "in_r_star",
        "in_r_star_interior",
        "t_p",
    ] {
        h.push(c.into());
    }
    h
}

impl SweepRow {
    pub fn fields(&self) -> Vec<String> {
        let opt = |x: &Option<bool>| x.map_or(String::new(), |b| b.to_string());
        let mut f: Vec<String> = self.prior.iter().map(ToString::to_string).collect();
        f.push(self.value.to_string());
        f.push(self.cav.as_ref().map_or(String::new(), ToString::to_string));
        f.extend(self.support.iter().map(ToString::to_string));
        f.push(self.support.iter().sum::<usize>().to_string());
        f.push(self.bound.to_string());
        f.push(self.bound_passes.to_string());
        f.push(self.verdict.as_str().into());
        f.push(opt(&self.in_r_star));
        f.push(opt(&self.in_r_star_interior));
        f.push(self.t_p.as_ref().map_or(String::new(), ToString::to_string));
        f
    }
}

/// Interior points `i/(points−1)` of an evenly spaced grid on `[0, 1]`; the
/// two endpoints are not interior priors and are skipped.
pub fn line_grid(points: usize) -> Result<Vec<Rational>> {
    if points < 2 {
        return Err(Error::invalid("grid resolution must be at least 2"));
    }
    let d = (points - 1) as i64;
    Ok((1..d).map(|i| Rational::new(i.into(), d.into())).collect())
}

/// Two-state sweep over `P(ω1)`, with the envelope cross-check at every point.
pub fn sweep_two_state(g: &SenderReceiverGame, points: usize) -> Result<Vec<SweepRow>> {
    if g.num_states() != 2 {
        return Err(Error::invalid("a line sweep needs exactly two states"));
    }
    let cav = concavify_1d(&value_function_1d(g)?)?;
    line_grid(points)?
        .into_par_iter()
        .map(|p1| {
            let prior = vec![int(1) - &p1, p1.clone()];
            let sol = solve_bp(g, &prior)?;
            let c = cav.eval(&p1)?;
            if c != sol.value {
                return Err(Error::internal(format!(
                    "persuasion value {} differs from the envelope {c} at {p1}",
                    sol.value
                )));
            }
            let game = g.game().with_prior(prior.clone())?;
            let counting = counting_bound(&game, &sol.outcome)?;
            let verdict = ex_ante_efficient_cone(&game, &sol.outcome)?.verdict;
            Ok(SweepRow {
                support: support_counts(&sol.outcome).per_state,
                prior,
                value: sol.value,
                cav: Some(c),
                bound: counting.bound,
                bound_passes: counting.passes,
                verdict,
                in_r_star: None,
                in_r_star_interior: None,
                t_p: None,
            })
        })
        .collect()
}

/// Sweep over the interior simplex grid with step `1/denom`.
pub fn sweep_threshold(env: &ThresholdEnv, denom: usize) -> Result<Vec<SweepRow>> {
    if denom < 2 {
        return Err(Error::invalid("grid resolution must be at least 2"));
    }
    simplex_grid(env.n + 1, denom)
        .into_par_iter()
        .map(|prior| {
            let rep = verify_threshold_inefficiency(env, &prior)?;
            Ok(SweepRow {
                support: support_counts(&rep.bp.outcome).per_state,
                prior,
                value: rep.bp.value,
                cav: None,
                bound: rep.counting.bound,
                bound_passes: rep.counting.passes,
                verdict: rep.cone_verdict,
                in_r_star: Some(rep.region.in_r_star),
                in_r_star_interior: Some(rep.region.in_r_star_interior),
                t_p: Some(rep.region.t_p),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::running_sr;
    use crate::persuasion::build_threshold_env;
    use crate::rational::frac;

    #[test]
    fn grid_skips_endpoints() {
        assert!(line_grid(2).unwrap().is_empty());
        assert_eq!(
            line_grid(5).unwrap(),
            vec![frac(1, 4), frac(1, 2), frac(3, 4)]
        );
        assert!(line_grid(1).is_err());
    }

    #[test]
    fn efficient_exactly_between_one_fifth_and_two_fifths() {
        let rows = sweep_two_state(&running_sr(frac(1, 2)), 11).unwrap();
        assert_eq!(rows.len(), 9);
        for r in &rows {
            let p = &r.prior[1];
            let inside = *p >= frac(1, 5) && *p <= frac(2, 5);
            assert_eq!(r.verdict == Verdict::Efficient, inside, "p = {p}");
        }
    }

    #[test]
    fn rows_match_the_header() {
        let g = running_sr(frac(1, 2));
        let rows = sweep_two_state(&g, 5).unwrap();
        let header = sweep_header(g.game().states());
        assert!(rows.iter().all(|r| r.fields().len() == header.len()));
        assert_eq!(
            rows[1].fields()[..3],
            ["1/2".to_string(), "1/2".into(), "17/2".into()]
        );
    }

    #[test]
    fn threshold_sweep_is_ordered_and_flags_regions() {
        let env = build_threshold_env(2, frac(7, 10), vec![int(1), int(2)]).unwrap();
        let rows = sweep_threshold(&env, 10).unwrap();
        assert_eq!(rows.len(), 36);
        assert_eq!(rows[0].prior, vec![frac(1, 10), frac(1, 10), frac(4, 5)]);
        for r in rows.iter().filter(|r| r.in_r_star_interior == Some(true)) {
            assert_eq!(r.verdict, Verdict::Inefficient);
        }
    }
}
