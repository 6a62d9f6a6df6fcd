//! The sender's value function on a two-state belief line and its concave
//! envelope. A belief is written as `p = P(second state)`.

use num_traits::{One, Signed, Zero};

use super::SenderReceiverGame;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// `V(p) = intercept + slope·p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPiece {
    pub lo: Rational,
    pub hi: Rational,
    pub intercept: Rational,
    pub slope: Rational,
}

impl LinearPiece {
    pub fn eval(&self, p: &Rational) -> Rational {
        &self.intercept + &self.slope * p
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }
}

/// `V` as exact point values at breakpoints `0 = b_0 < … < b_m = 1` and one
/// linear piece on each open interval `(b_i, b_{i+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueFunction1d {
    pub breakpoints: Vec<Rational>,
    pub point_values: Vec<Rational>,
    /// Receiver best-response set at each breakpoint.
    pub point_actions: Vec<Vec<usize>>,
    pub pieces: Vec<LinearPiece>,
    /// Receiver best-response set on each open interval.
    pub piece_actions: Vec<Vec<usize>>,
}

impl ValueFunction1d {
    pub fn eval(&self, p: &Rational) -> Result<Rational> {
        if p.is_negative() || *p > int(1) {
            return Err(Error::invalid(format!("belief {p} outside [0, 1]")));
        }
        if let Some(i) = self.breakpoints.iter().position(|b| b == p) {
            return Ok(self.point_values[i].clone());
        }
        let piece = self
            .pieces
            .iter()
            .find(|pc| pc.lo < *p && *p < pc.hi)
            .ok_or_else(|| Error::invalid("malformed value function"))?;
        Ok(piece.eval(p))
    }

    /// Whether every piece is constant (state-independent sender payoffs).
    pub fn is_piecewise_constant(&self) -> bool {
        self.pieces.iter().all(LinearPiece::is_constant)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let m = self.breakpoints.len();
        let ok = m >= 2
            && self.breakpoints[0].is_zero()
            && self.breakpoints[m - 1] == int(1)
            && self.breakpoints.windows(2).all(|w| w[0] < w[1])
            && self.point_values.len() == m
            && self.pieces.len() == m - 1
            && self
                .pieces
                .iter()
                .zip(self.breakpoints.windows(2))
                .all(|(pc, w)| pc.lo == w[0] && pc.hi == w[1]);
        if ok {
            Ok(())
        } else {
            Err(Error::invalid("malformed value-function description"))
        }
    }
}

fn belief(p: &Rational) -> [Rational; 2] {
    [Rational::one() - p, p.clone()]
}

/// Receiver payoff of `a` along the line: `(intercept, slope)`.
fn line(g: &SenderReceiverGame, a: usize, sender: bool) -> (Rational, Rational) {
    let (u0, u1) = if sender {
        (g.sender_payoff(0, a), g.sender_payoff(1, a))
    } else {
        (g.receiver_payoff(0, a), g.receiver_payoff(1, a))
    };
    (u0.clone(), u1 - u0)
}

pub fn value_function_1d(g: &SenderReceiverGame) -> Result<ValueFunction1d> {
    if g.num_states() != 2 {
        return Err(Error::invalid(format!(
            "the belief-line value function needs two states, the game has {}",
            g.num_states()
        )));
    }
    let na = g.num_actions();
    // Every place where two receiver lines or two sender lines cross.
    let mut cands = vec![Rational::zero(), Rational::one()];
    for sender in [false, true] {
        let lines: Vec<_> = (0..na).map(|a| line(g, a, sender)).collect();
        for a in 0..na {
            for b in a + 1..na {
                let ds = &lines[a].1 - &lines[b].1;
                if ds.is_zero() {
                    continue;
                }
                let x = (&lines[b].0 - &lines[a].0) / ds;
                if x.is_positive() && x < int(1) {
                    cands.push(x);
                }
            }
        }
    }
    cands.sort();
    cands.dedup();

    let at = |p: &Rational| -> Result<(Vec<usize>, Rational)> {
        let q = belief(p);
        Ok((g.best_responses(&q)?, g.sender_value_at(&q)?))
    };
    // Selected action on an open interval, as a linear piece.
    let piece_on = |lo: &Rational, hi: &Rational| -> Result<(Vec<usize>, Rational, Rational)> {
        let mid = (lo + hi) / int(2);
        let q = belief(&mid);
        let acts = g.best_responses(&q)?;
        let best = acts
            .iter()
            .copied()
            .max_by_key(|&a| g.expected_sender(&q, a))
            .expect("non-empty");
        let (c, s) = line(g, best, true);
        Ok((acts, c, s))
    };

    let raw: Vec<_> = cands
        .windows(2)
        .map(|w| piece_on(&w[0], &w[1]))
        .collect::<Result<_>>()?;
    let mut breakpoints = vec![cands[0].clone()];
    let mut point_actions = vec![at(&cands[0])?.0];
    let mut point_values = vec![at(&cands[0])?.1];
    let mut pieces: Vec<LinearPiece> = Vec::new();
    let mut piece_actions: Vec<Vec<usize>> = Vec::new();
    for (i, (acts, c, s)) in raw.iter().enumerate() {
        let hi = &cands[i + 1];
        let continues = pieces.last().is_some_and(|last| {
            // Merge across an interior candidate where nothing changes.
            let prev = breakpoints.last().unwrap();
            piece_actions.last() == Some(acts)
                && last.intercept == *c
                && last.slope == *s
                && point_actions.last() == Some(acts)
                && *point_values.last().unwrap() == last.eval(prev)
        });
        if continues {
            breakpoints.pop();
            point_actions.pop();
            point_values.pop();
            pieces.last_mut().unwrap().hi = hi.clone();
        } else {
            pieces.push(LinearPiece {
                lo: breakpoints.last().unwrap().clone(),
                hi: hi.clone(),
                intercept: c.clone(),
                slope: s.clone(),
            });
            piece_actions.push(acts.clone());
        }
        let (pa, pv) = at(hi)?;
        breakpoints.push(hi.clone());
        point_actions.push(pa);
        point_values.push(pv);
    }
    let v = ValueFunction1d {
        breakpoints,
        point_values,
        point_actions,
        pieces,
        piece_actions,
    };
    v.validate()?;
    Ok(v)
}

/// Upper concave envelope as consecutive linear segments over `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcaveEnvelope {
    pub segments: Vec<LinearPiece>,
}

impl ConcaveEnvelope {
    pub fn eval(&self, p: &Rational) -> Result<Rational> {
        self.segments
            .iter()
            .find(|s| s.lo <= *p && *p <= s.hi)
            .map(|s| s.eval(p))
            .ok_or_else(|| Error::invalid(format!("belief {p} outside [0, 1]")))
    }
}

/// Upper hull of the closure of the graph of `V`.
pub fn concavify_1d(v: &ValueFunction1d) -> Result<ConcaveEnvelope> {
    v.validate()?;
    let mut pts: Vec<(Rational, Rational)> = v
        .breakpoints
        .iter()
        .cloned()
        .zip(v.point_values.iter().cloned())
        .collect();
    for pc in &v.pieces {
        pts.push((pc.lo.clone(), pc.eval(&pc.lo)));
        pts.push((pc.hi.clone(), pc.eval(&pc.hi)));
    }
    pts.sort();
    // Keep the highest value at each abscissa.
    let mut top: Vec<(Rational, Rational)> = Vec::new();
    for (x, y) in pts {
        match top.last_mut() {
            Some((lx, ly)) if *lx == x => {
                if y > *ly {
                    *ly = y;
                }
            }
            _ => top.push((x, y)),
        }
    }
    let mut hull: Vec<(Rational, Rational)> = Vec::new();
    for p in top {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            // Drop `b` unless it lies strictly above the chord from `a` to `p`.
            let cross = (&b.0 - &a.0) * (&p.1 - &a.1) - (&b.1 - &a.1) * (&p.0 - &a.0);
            if cross.is_negative() {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
            LinearPiece {
                lo: w[0].0.clone(),
                hi: w[1].0.clone(),
                intercept: &w[0].1 - &slope * &w[0].0,
                slope,
            }
        })
        .collect();
    Ok(ConcaveEnvelope { segments })
}
