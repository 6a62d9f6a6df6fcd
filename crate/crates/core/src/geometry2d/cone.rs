//! Outer normal cones of convex polygons.

use num_traits::{Signed, Zero};

use super::polygon::{on_segment, Location, Polygon};
use super::Point;
use crate::error::{Error, Result};
use crate::rational::int;

/// A closed convex cone of directions in the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalCone {
    /// `{t·r : t ≥ 0}`.
    Ray(Point),
    /// `{t·r : t ∈ ℝ}`, the normal cone at a relative-interior point of a segment.
    Line(Point),
    /// Directions swept counterclockwise from `from` to `to`, an angle of at
    /// most π (exactly π at a segment endpoint).
    Wedge { from: Point, to: Point },
    /// Every direction; the normal cone of a single point.
    Plane,
}

fn wedge(from: Point, to: Point) -> NormalCone {
    let (from, to) = (from.primitive(), to.primitive());
    if from == to {
        NormalCone::Ray(from)
    } else {
        NormalCone::Wedge { from, to }
    }
}

impl NormalCone {
    pub fn contains(&self, d: &Point) -> bool {
        if d.is_zero() {
            return true;
        }
        match self {
            NormalCone::Ray(r) => r.cross(d).is_zero() && r.dot(d).is_positive(),
            NormalCone::Line(r) => r.cross(d).is_zero(),
            NormalCone::Wedge { from, to } => {
                let after_from = !from.cross(d).is_negative();
                if from.cross(to).is_zero() {
                    after_from
                } else {
                    after_from && !d.cross(to).is_negative()
                }
            }
            NormalCone::Plane => true,
        }
    }

    /// Rays that bound the cone (both directions of a line).
    fn boundary_rays(&self) -> Vec<Point> {
        match self {
            NormalCone::Ray(r) => vec![r.clone()],
            NormalCone::Line(r) => vec![r.clone(), r.neg()],
            NormalCone::Wedge { from, to } => vec![from.clone(), to.clone()],
            NormalCone::Plane => Vec::new(),
        }
    }

    /// Intersection with the closed nonnegative quadrant, if it contains a
    /// nonzero direction.
    pub fn positive_part(&self) -> Option<NormalCone> {
        let in_quadrant = |d: &Point| !d.x.is_negative() && !d.y.is_negative();
        let mut rays: Vec<Point> = self
            .boundary_rays()
            .into_iter()
            .filter(in_quadrant)
            .collect();
        for axis in [Point::new(int(1), int(0)), Point::new(int(0), int(1))] {
            if self.contains(&axis) {
                rays.push(axis);
            }
        }
        let lo = rays.iter().min_by(|a, b| a.angle_cmp(b))?.clone();
        let hi = rays.iter().max_by(|a, b| a.angle_cmp(b))?.clone();
        Some(wedge(lo, hi))
    }

    /// Whether some direction with both coordinates strictly positive lies
    /// in the cone.
    pub fn meets_open_positive_quadrant(&self) -> bool {
        let open = |d: &Point| d.x.is_positive() && d.y.is_positive();
        match self {
            NormalCone::Plane => true,
            NormalCone::Ray(r) => open(r),
            NormalCone::Line(r) => open(r) || open(&r.neg()),
            NormalCone::Wedge { from, to } => {
                open(from) || open(to) || self.contains(&Point::new(int(1), int(1)))
            }
        }
    }
}

/// Common part of several cones inside the closed nonnegative quadrant.
pub fn intersect_positive(cones: &[NormalCone]) -> Option<NormalCone> {
    let mut lo: Option<Point> = None;
    let mut hi: Option<Point> = None;
    for c in cones {
        let (a, b) = match c.positive_part()? {
            NormalCone::Ray(r) => (r.clone(), r),
            NormalCone::Wedge { from, to } => (from, to),
            _ => unreachable!("positive parts are pointed"),
        };
        lo = Some(match lo {
            Some(l) if l.angle_cmp(&a).is_ge() => l,
            _ => a,
        });
        hi = Some(match hi {
            Some(h) if h.angle_cmp(&b).is_le() => h,
            _ => b,
        });
    }
    let (lo, hi) = (lo?, hi?);
    lo.angle_cmp(&hi).is_le().then(|| wedge(lo, hi))
}

/// Outer normal cone of `poly` at a boundary point.
pub fn normal_cone_at(poly: &Polygon, q: &Point) -> Result<NormalCone> {
    if poly.locate(q) != Location::Boundary {
        return Err(Error::Geometry(format!("{q} is not on the boundary")));
    }
    let vs = poly.vertices();
    match vs {
        [_] => Ok(NormalCone::Plane),
        [a, b] => {
            let e = b - a;
            Ok(if q == a {
                wedge(e.rot_ccw(), e.rot_cw())
            } else if q == b {
                wedge(e.rot_cw(), e.rot_ccw())
            } else {
                NormalCone::Line(e.rot_cw().primitive())
            })
        }
        _ => {
            let n = vs.len();
            if let Some(i) = vs.iter().position(|v| v == q) {
                let prev = &vs[(i + n - 1) % n];
                let next = &vs[(i + 1) % n];
                return Ok(wedge((&vs[i] - prev).rot_cw(), (next - &vs[i]).rot_cw()));
            }
            for i in 0..n {
                let next = &vs[(i + 1) % n];
                if on_segment(&vs[i], next, q) {
                    return Ok(NormalCone::Ray((next - &vs[i]).rot_cw().primitive()));
                }
            }
            Err(Error::internal("boundary point not found on any edge"))
        }
    }
}
