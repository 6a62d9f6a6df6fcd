//! Allocating one good among agents without transfers.
//!
//! Agents report types; the principal's value of giving the good to agent
//! `i` is `u_i(ω)`. The ranking mechanism ranks agents by their peer values
//! `E[u_i | ω_{−i}]`, selects the top `⌊t(k−1)⌋` and hands the good to a
//! selected agent only if it would be selected under every own report and
//! its peer value is non-negative. Leftover mass stays with the principal
//! (action `a0`).
//!
//! Ranks are normalised to `{1/n, 2/n, …, 1}` for `n = k−1` agents, with
//! equal peer values ordered by agent index.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::efficiency::{ex_ante_efficient_cone, EfficiencyReport, Verdict};
use crate::error::{Error, Result};
use crate::game::{support_counts, unrank, validate_prior, Game, Outcome};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationInstance {
    types: Vec<Vec<String>>,
    /// Over type profiles, row-major with the last agent fastest.
    prior: Vec<Rational>,
    /// `values[ω][i] = u_i(ω)`.
    values: Vec<Vec<Rational>>,
    t: Rational,
}

impl AllocationInstance {
    pub fn new(
        types: Vec<Vec<String>>,
        prior: Vec<Rational>,
        values: Vec<Vec<Rational>>,
        t: Rational,
    ) -> Result<Self> {
        if types.len() < 2 {
            return Err(Error::invalid("need at least two agents"));
        }
        for (i, list) in types.iter().enumerate() {
            if list.len() < 2 {
                return Err(Error::invalid(format!(
                    "agent {} needs at least two types",
                    i + 1
                )));
            }
            if (1..list.len()).any(|j| list[..j].contains(&list[j])) {
                return Err(Error::invalid(format!(
                    "agent {} has duplicate types",
                    i + 1
                )));
            }
            if list.iter().any(|x| x.contains(',')) {
                return Err(Error::invalid("type labels may not contain commas"));
            }
        }
        let states: usize = types.iter().map(Vec::len).product();
        validate_prior(&prior, states)?;
        if values.len() != states || values.iter().any(|row| row.len() != types.len()) {
            return Err(Error::dims(
                "values need one entry per agent in every type profile",
            ));
        }
        if values.iter().flatten().any(|u| u.abs() > int(1)) {
            return Err(Error::invalid("principal values must lie in [-1, 1]"));
        }
        if !t.is_positive() || t > int(1) {
            return Err(Error::invalid("threshold t must lie in (0, 1]"));
        }
        Ok(AllocationInstance {
            types,
            prior,
            values,
            t,
        })
    }

    pub fn agents(&self) -> usize {
        self.types.len()
    }

    /// Players in the embedded game: the principal plus every agent.
    pub fn k(&self) -> usize {
        self.agents() + 1
    }

    pub fn types(&self) -> &[Vec<String>] {
        &self.types
    }

    pub fn prior(&self) -> &[Rational] {
        &self.prior
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn num_states(&self) -> usize {
        self.prior.len()
    }

    fn sizes(&self) -> Vec<usize> {
        self.types.iter().map(Vec::len).collect()
    }

    pub fn profile(&self, state: usize) -> Vec<usize> {
        unrank(state, &self.sizes())
    }

    pub fn state_index(&self, profile: &[usize]) -> usize {
        profile
            .iter()
            .zip(self.sizes())
            .fold(0, |acc, (&w, size)| acc * size + w)
    }

    /// Comma-separated type labels, e.g. `L,H`.
    pub fn state_label(&self, state: usize) -> String {
        self.profile(state)
            .iter()
            .zip(&self.types)
            .map(|(&w, list)| list[w].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_state_label(&self, label: &str) -> Result<usize> {
        let parts: Vec<&str> = label.split(',').map(str::trim).collect();
        if parts.len() != self.agents() {
            return Err(Error::UnknownState(label.to_string()));
        }
        let profile = parts
            .iter()
            .zip(&self.types)
            .map(|(p, list)| list.iter().position(|x| x == p))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::UnknownState(label.to_string()))?;
        Ok(self.state_index(&profile))
    }

    /// The state reached when agent `i` reports `w` and everyone else keeps `state`.
    pub fn with_report(&self, state: usize, i: usize, w: usize) -> usize {
        let mut profile = self.profile(state);
        profile[i] = w;
        self.state_index(&profile)
    }

    pub fn with_t(&self, t: Rational) -> Result<Self> {
        AllocationInstance::new(
            self.types.clone(),
            self.prior.clone(),
            self.values.clone(),
            t,
        )
    }

    pub fn with_values(&self, values: Vec<Vec<Rational>>) -> Result<Self> {
        AllocationInstance::new(
            self.types.clone(),
            self.prior.clone(),
            values,
            self.t.clone(),
        )
    }
}

/// `peer[ω][i] = u_i(ω_{−i}) = Σ_{ω_i'} p(ω_i' | ω_{−i}) u_i(ω_i', ω_{−i})`.
pub fn peer_values(inst: &AllocationInstance) -> Vec<Vec<Rational>> {
    (0..inst.num_states())
        .map(|s| {
            (0..inst.agents())
                .map(|i| {
                    let mut mass = Rational::zero();
                    let mut total = Rational::zero();
                    for w in 0..inst.types[i].len() {
                        let s2 = inst.with_report(s, i, w);
                        mass += &inst.prior[s2];
                        total += &inst.prior[s2] * &inst.values[s2][i];
                    }
                    total / mass
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTables {
    pub peer_values: Vec<Vec<Rational>>,
    /// `r_i(ω)`.
    pub ranks: Vec<Vec<Rational>>,
    /// `r_i*(ω_{−i}) = max_{ω_i} r_i(ω_i, ω_{−i})`, stored per full state.
    pub robust: Vec<Vec<Rational>>,
}

fn positions(peer: &[Rational]) -> Vec<usize> {
    (0..peer.len())
        .map(|i| {
            1 + (0..peer.len())
                .filter(|&j| peer[j] > peer[i] || (peer[j] == peer[i] && j < i))
                .count()
        })
        .collect()
}

pub fn ranks_and_robust_ranks(inst: &AllocationInstance) -> RankTables {
    let n = inst.agents() as i64;
    let peer = peer_values(inst);
    let ranks: Vec<Vec<Rational>> = peer
        .iter()
        .map(|row| {
            positions(row)
                .into_iter()
                .map(|pos| Rational::new(pos.into(), n.into()))
                .collect()
        })
        .collect();
    let robust = (0..inst.num_states())
        .map(|s| {
            (0..inst.agents())
                .map(|i| {
                    (0..inst.types[i].len())
                        .map(|w| &ranks[inst.with_report(s, i, w)][i])
                        .max()
                        .expect("at least two types")
                        .clone()
                })
                .collect()
        })
        .collect();
    RankTables {
        peer_values: peer,
        ranks,
        robust,
    }
}

fn delta_from(inst: &AllocationInstance, ranks: &[Vec<Rational>]) -> Vec<Rational> {
    (0..inst.num_states())
        .map(|s| {
            let mut best = Rational::zero();
            for i in 0..inst.agents() {
                for w in 0..inst.types[i].len() {
                    let shift = (&ranks[s][i] - &ranks[inst.with_report(s, i, w)][i]).abs();
                    best = best.max(shift);
                }
            }
            best
        })
        .collect()
}

/// `δ(ω)`: the largest rank shift a single agent can cause by misreporting.
pub fn informational_size(inst: &AllocationInstance) -> Vec<Rational> {
    delta_from(inst, &ranks_and_robust_ranks(inst).ranks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionRule {
    /// Each selected agent gets `1/⌊t(k−1)⌋`.
    Uniform,
    /// Each selected agent gets `1/(t(k−1))`; the remainder stays with the principal.
    Scaled,
}

impl SelectionRule {
    pub fn as_str(self) -> &'static str {
        match self {
            SelectionRule::Uniform => "uniform",
            SelectionRule::Scaled => "scaled",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MechanismOutcome {
    /// Over actions `a0, a1, …, a_n`.
    pub outcome: Outcome,
    pub ranks: RankTables,
    pub selected: Vec<Vec<bool>>,
    pub eligible: Vec<Vec<bool>>,
    pub delta: Vec<Rational>,
    /// `⌊t(k−1)⌋`.
    pub selected_count: usize,
}

pub fn action_labels(inst: &AllocationInstance) -> Vec<String> {
    (0..=inst.agents()).map(|a| format!("a{a}")).collect()
}

pub fn run_mechanism(inst: &AllocationInstance, rule: SelectionRule) -> Result<MechanismOutcome> {
    let n = inst.agents();
    let scaled_t = &inst.t * int(n as i64);
    let selected_count = selected_set_size(&inst.t, n);
    let share = match rule {
        SelectionRule::Uniform if selected_count == 0 => Rational::zero(),
        SelectionRule::Uniform => Rational::new(1.into(), selected_count.into()),
        SelectionRule::Scaled => scaled_t.recip(),
    };
    let ranks = ranks_and_robust_ranks(inst);
    let mut rows = Vec::with_capacity(inst.num_states());
    let mut selected = Vec::with_capacity(inst.num_states());
    let mut eligible = Vec::with_capacity(inst.num_states());
    for s in 0..inst.num_states() {
        let sel: Vec<bool> = ranks.ranks[s].iter().map(|r| *r <= inst.t).collect();
        if sel.iter().filter(|&&b| b).count() != selected_count {
            return Err(Error::internal(
                "selected set does not have ⌊t(k−1)⌋ members",
            ));
        }
        let elig: Vec<bool> = (0..n)
            .map(|i| ranks.robust[s][i] <= inst.t && !ranks.peer_values[s][i].is_negative())
            .collect();
        let mut row = vec![Rational::zero(); n + 1];
        for i in (0..n).filter(|&i| sel[i] && elig[i]) {
            row[i + 1] = share.clone();
        }
        row[0] = int(1) - row[1..].iter().sum::<Rational>();
        rows.push(row);
        selected.push(sel);
        eligible.push(elig);
    }
    let delta = delta_from(inst, &ranks.ranks);
    Ok(MechanismOutcome {
        outcome: Outcome::new(rows)?,
        ranks,
        selected,
        eligible,
        delta,
        selected_count,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DicViolation {
    pub agent: usize,
    pub state: usize,
    pub misreport: usize,
    pub truthful: Rational,
    pub deviating: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DicReport {
    pub holds: bool,
    pub comparisons: usize,
    pub violations: Vec<DicViolation>,
}

/// Exhaustive check of `μ(a_i | ω_i, ω_{−i}) ≥ μ(a_i | ω_i', ω_{−i})`.
pub fn verify_dic(inst: &AllocationInstance, outcome: &Outcome) -> Result<DicReport> {
    let n = inst.agents();
    if outcome.num_states() != inst.num_states() || outcome.num_joint() != n + 1 {
        return Err(Error::dims(format!(
            "mechanism must be {} states × {} actions",
            inst.num_states(),
            n + 1
        )));
    }
    let mut comparisons = 0;
    let mut violations = Vec::new();
    for s in 0..inst.num_states() {
        let own = inst.profile(s);
        for (i, &w_true) in own.iter().enumerate() {
            let truthful = outcome.prob(s, i + 1);
            for w in (0..inst.types[i].len()).filter(|&w| w != w_true) {
                comparisons += 1;
                let deviating = outcome.prob(inst.with_report(s, i, w), i + 1);
                if deviating > truthful {
                    violations.push(DicViolation {
                        agent: i,
                        state: s,
                        misreport: w,
                        truthful: truthful.clone(),
                        deviating: deviating.clone(),
                    });
                }
            }
        }
    }
    Ok(DicReport {
        holds: violations.is_empty(),
        comparisons,
        violations,
    })
}

/// The instance as a `k`-player game: the principal (player 0) chooses
/// `a0..a_n` and earns `u_i(ω)` from `a_i` and 0 from `a0`; agent `i` has a
/// single action and earns 1 exactly when `a_i` is chosen.
pub fn embed_game(inst: &AllocationInstance, principal_values: &[Vec<Rational>]) -> Result<Game> {
    let n = inst.agents();
    if principal_values.len() != inst.num_states() || principal_values.iter().any(|r| r.len() != n)
    {
        return Err(Error::dims(
            "principal values need one entry per agent and state",
        ));
    }
    let states = (0..inst.num_states())
        .map(|s| inst.state_label(s))
        .collect();
    let mut actions = vec![action_labels(inst)];
    actions.extend((1..=n).map(|i| vec![format!("r{i}")]));
    Game::from_fn(states, inst.prior.clone(), actions, |s, profile| {
        let a = profile[0];
        let mut u = vec![Rational::zero(); n + 1];
        if a > 0 {
            u[0] = principal_values[s][a - 1].clone();
            u[a] = int(1);
        }
        u
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationVerdict {
    /// Failed assumptions; the verdict is withheld when non-empty.
    pub violations: Vec<String>,
    pub support_sizes: Vec<usize>,
    pub total_support: usize,
    /// `k + |Ω|`.
    pub bound: usize,
    /// `2|Ω| > k + |Ω|`.
    pub doubling_exceeds_bound: bool,
    pub counting_exceeds_bound: bool,
    pub cone: Option<EfficiencyReport>,
    pub verdict: Option<Verdict>,
}

/// Checks the assumptions under which the ranking mechanism is generically
/// inefficient, the counting bound, and the exact cone test on the embedded
/// game. `principal_values` replaces the instance's values in the embedding
/// (the mechanism itself is left unchanged).
pub fn allocation_verdict(
    inst: &AllocationInstance,
    mech: &MechanismOutcome,
    principal_values: Option<&[Vec<Rational>]>,
) -> Result<AllocationVerdict> {
    let n = inst.agents();
    let k = inst.k();
    let floor = Rational::new(1.into(), (n as i64).into());
    let two = Rational::new(2.into(), (n as i64).into());
    let mut violations = Vec::new();
    for s in 0..inst.num_states() {
        let need = (&floor + &mech.delta[s]).max(two.clone());
        if inst.t < need {
            violations.push(format!(
                "t = {} < {} at {}",
                inst.t,
                need,
                inst.state_label(s)
            ));
        }
        if mech.ranks.peer_values[s].iter().all(Signed::is_negative) {
            violations.push(format!(
                "every peer value is negative at {}",
                inst.state_label(s)
            ));
        }
    }
    let counts = support_counts(&mech.outcome);
    let states = inst.num_states();
    let bound = k + states;
    let mut report = AllocationVerdict {
        support_sizes: counts.per_state.clone(),
        total_support: counts.total,
        bound,
        doubling_exceeds_bound: 2 * states > bound,
        counting_exceeds_bound: counts.total >= bound,
        cone: None,
        verdict: None,
        violations,
    };
    if !report.violations.is_empty() {
        return Ok(report);
    }
    if counts.per_state.iter().any(|&c| c < 2) {
        return Err(Error::internal(
            "a state has a deterministic outcome under the assumptions",
        ));
    }
    if states < 1 << n || !report.doubling_exceeds_bound {
        return Err(Error::internal("|Ω| ≥ 2^(k−1) should force 2|Ω| > k + |Ω|"));
    }
    let values = principal_values.unwrap_or(&inst.values);
    let game = embed_game(inst, values)?;
    let cone = ex_ante_efficient_cone(&game, &mech.outcome)?;
    report.verdict = Some(cone.verdict);
    report.cone = Some(cone);
    Ok(report)
}

/// `⌊t n⌋` without building an outcome.
pub fn selected_set_size(t: &Rational, agents: usize) -> usize {
    (t * int(agents as i64))
        .floor()
        .to_integer()
        .to_usize()
        .unwrap_or(usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::allocation_worked_instance;
    use crate::rational::frac;

    fn half() -> Rational {
        frac(1, 2)
    }

    #[test]
    fn worked_peer_values_and_ranks() {
        let inst = allocation_worked_instance(int(1));
        let rt = ranks_and_robust_ranks(&inst);
        // State order: LL, LH, HL, HH.
        assert_eq!(rt.peer_values[0], vec![frac(1, 5), frac(2, 5)]);
        assert_eq!(rt.peer_values[1], vec![frac(3, 5), frac(2, 5)]);
        assert_eq!(rt.peer_values[3], vec![frac(3, 5), frac(3, 10)]);
        assert_eq!(rt.ranks[0], vec![int(1), half()]);
        assert_eq!(rt.ranks[1], vec![half(), int(1)]);
        // Agent 1 ranks second under both own reports when agent 2 is L.
        assert_eq!(rt.robust[0][0], int(1));
        assert_eq!(rt.robust[2][0], int(1));
        assert_eq!(informational_size(&inst), vec![half(); 4]);
    }

    #[test]
    fn own_type_independent_values_are_their_own_peer_values() {
        let inst = allocation_worked_instance(int(1));
        // u_1 ignores ω_1 and u_2 ignores ω_2.
        assert_eq!(peer_values(&inst), inst.values().to_vec());
    }

    #[test]
    fn correlated_prior_matches_brute_force() {
        let types = vec![
            vec!["x".into(), "y".into()],
            vec!["p".into(), "q".into(), "r".into()],
        ];
        let prior = vec![
            frac(1, 10),
            frac(1, 5),
            frac(1, 20),
            frac(3, 20),
            frac(1, 4),
            frac(1, 4),
        ];
        let values: Vec<Vec<Rational>> = (0..6)
            .map(|s| vec![frac(s as i64 - 2, 5), frac(3 - 2 * s as i64, 10)])
            .collect();
        let inst = AllocationInstance::new(types, prior.clone(), values.clone(), int(1)).unwrap();
        let peer = peer_values(&inst);
        for (s, row) in peer.iter().enumerate() {
            let (w1, w2) = (s / 3, s % 3);
            for i in 0..2 {
                let (mut num, mut den) = (Rational::zero(), Rational::zero());
                for s2 in 0..6 {
                    let same_others = if i == 0 { s2 % 3 == w2 } else { s2 / 3 == w1 };
                    if same_others {
                        num += &prior[s2] * &values[s2][i];
                        den += &prior[s2];
                    }
                }
                assert_eq!(row[i], num / den);
            }
        }
    }

    #[test]
    fn ties_favour_lower_index() {
        assert_eq!(positions(&[int(1), int(1), int(2)]), vec![2, 3, 1]);
    }

    #[test]
    fn own_type_irrelevant_means_zero_size() {
        let types = vec![vec!["L".into(), "H".into()]; 3];
        let prior = vec![frac(1, 8); 8];
        let values = vec![vec![frac(1, 2), frac(1, 3), frac(1, 4)]; 8];
        let inst = AllocationInstance::new(types, prior, values, frac(2, 3)).unwrap();
        assert!(informational_size(&inst).iter().all(Zero::is_zero));
        let mech = run_mechanism(&inst, SelectionRule::Uniform).unwrap();
        assert_eq!(mech.selected_count, 2);
        assert_eq!(mech.outcome.row(0), &[int(0), half(), half(), int(0)]);
    }

    #[test]
    fn worked_mechanism_and_dic() {
        let inst = allocation_worked_instance(int(1));
        let mech = run_mechanism(&inst, SelectionRule::Uniform).unwrap();
        for s in 0..4 {
            assert_eq!(mech.outcome.row(s), &[int(0), half(), half()]);
        }
        let dic = verify_dic(&inst, &mech.outcome).unwrap();
        assert!(dic.holds);
        assert_eq!(dic.comparisons, 8);
    }

    #[test]
    fn negative_peer_value_moves_mass_to_the_principal() {
        let inst = allocation_worked_instance(int(1));
        let values = inst
            .values()
            .iter()
            .map(|row| vec![row[0].clone(), -row[1].clone()])
            .collect();
        let inst = inst.with_values(values).unwrap();
        let mech = run_mechanism(&inst, SelectionRule::Uniform).unwrap();
        for s in 0..4 {
            assert_eq!(mech.outcome.row(s), &[half(), half(), int(0)]);
        }
        let v = allocation_verdict(&inst, &mech, None).unwrap();
        assert_eq!(v.support_sizes, vec![2; 4]);
        assert!(v.counting_exceeds_bound);
        assert_eq!(v.verdict, Some(Verdict::Inefficient));
    }

    #[test]
    fn dic_violations_are_reported() {
        let inst = allocation_worked_instance(int(1));
        // Agent 1 gets the good iff it reports H.
        let rows = (0..4)
            .map(|s| {
                if s / 2 == 1 {
                    vec![int(0), int(1), int(0)]
                } else {
                    vec![int(1), int(0), int(0)]
                }
            })
            .collect();
        let dic = verify_dic(&inst, &Outcome::new(rows).unwrap()).unwrap();
        assert!(!dic.holds);
        assert!(dic
            .violations
            .iter()
            .all(|v| v.agent == 0 && v.misreport == 1));
        assert_eq!(dic.violations.len(), 2);

        let constant = Outcome::new(vec![vec![frac(1, 5), frac(2, 5), frac(2, 5)]; 4]).unwrap();
        assert!(verify_dic(&inst, &constant).unwrap().holds);
    }

    #[test]
    fn worked_verdict() {
        let inst = allocation_worked_instance(int(1));
        let mech = run_mechanism(&inst, SelectionRule::Uniform).unwrap();
        let v = allocation_verdict(&inst, &mech, None).unwrap();
        assert!(v.violations.is_empty());
        assert_eq!((v.total_support, v.bound), (8, 7));
        assert!(v.doubling_exceeds_bound);
        assert_eq!(v.verdict, Some(Verdict::Inefficient));
    }

    #[test]
    fn small_threshold_withholds_the_verdict() {
        let inst = allocation_worked_instance(half());
        let mech = run_mechanism(&inst, SelectionRule::Uniform).unwrap();
        let v = allocation_verdict(&inst, &mech, None).unwrap();
        assert!(!v.violations.is_empty());
        assert!(v.verdict.is_none());
    }

    #[test]
    fn four_agents_select_two() {
        let types = vec![vec!["L".into(), "H".into()]; 4];
        let prior = vec![frac(1, 16); 16];
        let values = (0..16)
            .map(|s| {
                (0..4)
                    .map(|i| frac(((s * 7 + i * 3) % 11) as i64, 11))
                    .collect()
            })
            .collect();
        let inst = AllocationInstance::new(types, prior, values, frac(1, 2)).unwrap();
        for rule in [SelectionRule::Uniform, SelectionRule::Scaled] {
            let mech = run_mechanism(&inst, rule).unwrap();
            assert!(mech
                .selected
                .iter()
                .all(|s| s.iter().filter(|&&b| b).count() == 2));
            assert!(verify_dic(&inst, &mech.outcome).unwrap().holds);
        }
    }

    #[test]
    fn scaled_rule_keeps_residual_mass() {
        let types = vec![vec!["L".into(), "H".into()]; 3];
        let prior = vec![frac(1, 8); 8];
        let values = vec![vec![frac(1, 2), frac(1, 3), frac(1, 4)]; 8];
        let inst = AllocationInstance::new(types, prior, values, frac(5, 6)).unwrap();
        let mech = run_mechanism(&inst, SelectionRule::Scaled).unwrap();
        assert_eq!(
            mech.outcome.row(0),
            &[frac(1, 5), frac(2, 5), frac(2, 5), int(0)]
        );
        let uniform = run_mechanism(&inst, SelectionRule::Uniform).unwrap();
        assert_eq!(uniform.outcome.row(0), &[int(0), half(), half(), int(0)]);
    }

    #[test]
    fn instance_validation() {
        let two = || vec!["L".to_string(), "H".to_string()];
        let ok_prior = vec![frac(1, 4); 4];
        let vals = vec![vec![int(0), int(0)]; 4];
        assert!(AllocationInstance::new(
            vec![two()],
            vec![half(); 2],
            vec![vec![int(0)]; 2],
            int(1)
        )
        .is_err());
        assert!(AllocationInstance::new(
            vec![two(), two()],
            ok_prior.clone(),
            vals.clone(),
            int(0)
        )
        .is_err());
        assert!(AllocationInstance::new(
            vec![two(), two()],
            ok_prior.clone(),
            vec![vec![int(2), int(0)]; 4],
            int(1)
        )
        .is_err());
        let inst = AllocationInstance::new(vec![two(), two()], ok_prior, vals, int(1)).unwrap();
        assert_eq!(inst.state_label(2), "H,L");
        assert_eq!(inst.parse_state_label("H, L").unwrap(), 2);
        assert_eq!(selected_set_size(&frac(5, 6), 3), 2);
    }
}
