//! Exact planar geometry for two-player payoff sets.
//!
//! `F_ω` is the convex hull of the state's payoff vectors and `F_p` their
//! prior-weighted Minkowski sum. Normal cones at the outcome point decide
//! efficiency geometrically, which makes this module an independent oracle
//! for the LP tests when `k = 2`.

mod cone;
mod figure;
mod polygon;

use std::fmt;
use std::ops::{Add, Sub};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rational::Rational;

pub use cone::{intersect_positive, normal_cone_at, NormalCone};
pub use figure::{feasible_sets, figure_data, FeasibleSets};
pub use polygon::{hull, minkowski_sum, support_set, Face, Location, Polygon};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_slice(v: &[Rational]) -> Self {
        Point::new(v[0].clone(), v[1].clone())
    }

    pub fn zero() -> Self {
        Point::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, w: &Rational) -> Self {
        Point::new(&self.x * w, &self.y * w)
    }

    pub fn dot(&self, o: &Point) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    /// Quarter turn counterclockwise.
    pub fn rot_ccw(&self) -> Point {
        Point::new(-self.y.clone(), self.x.clone())
    }

    /// Quarter turn clockwise; for a counterclockwise edge this is the
    /// outer normal.
    pub fn rot_cw(&self) -> Point {
        Point::new(self.y.clone(), -self.x.clone())
    }

    pub fn neg(&self) -> Point {
        Point::new(-self.x.clone(), -self.y.clone())
    }

    /// Same direction, coprime integer coordinates.
    pub fn primitive(&self) -> Point {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.x.denom().lcm(self.y.denom());
        let (a, b) = (
            self.x.numer() * (&l / self.x.denom()),
            self.y.numer() * (&l / self.y.denom()),
        );
        let g = a.gcd(&b);
        Point::new(
            Rational::from_integer(a / &g),
            Rational::from_integer(b / &g),
        )
    }

    /// 0 for directions in `[0, π)`, 1 for `[π, 2π)`.
    pub(crate) fn half(&self) -> u8 {
        if self.y.is_positive() || (self.y.is_zero() && self.x.is_positive()) {
            0
        } else {
            1
        }
    }

    /// Angular order from the positive x axis, counterclockwise.
    pub(crate) fn angle_cmp(&self, o: &Point) -> std::cmp::Ordering {
        self.half()
            .cmp(&o.half())
            .then_with(|| Rational::zero().cmp(&self.cross(o)))
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}
