//! Convex polygons: hulls, weighted Minkowski sums and support sets.

use num_traits::{Signed, Zero};

use super::Point;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Convex polygon as its extreme points in counterclockwise order. One
/// vertex is a point, two are a segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

impl Location {
    pub fn as_str(self) -> &'static str {
        match self {
            Location::Interior => "interior",
            Location::Boundary => "boundary",
            Location::Exterior => "exterior",
        }
    }
}

impl Polygon {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Counterclockwise edges `v_{i+1} − v_i`; a segment has two, a point none.
    pub fn edges(&self) -> Vec<Point> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .map(|i| &self.vertices[(i + 1) % n] - &self.vertices[i])
            .collect()
    }

    pub fn scale(&self, w: &Rational) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|v| v.scale(w)).collect(),
        }
    }

    /// Support function `h(n) = max_{x∈P} n·x`.
    pub fn support_value(&self, n: &Point) -> Rational {
        self.vertices
            .iter()
            .map(|v| n.dot(v))
            .max()
            .expect("polygons are non-empty")
    }

    pub fn locate(&self, q: &Point) -> Location {
        match self.vertices.as_slice() {
            [v] => {
                if v == q {
                    Location::Boundary
                } else {
                    Location::Exterior
                }
            }
            [a, b] => {
                if on_segment(a, b, q) {
                    Location::Boundary
                } else {
                    Location::Exterior
                }
            }
            vs => {
                let mut on_edge = false;
                for i in 0..vs.len() {
                    let a = &vs[i];
                    let b = &vs[(i + 1) % vs.len()];
                    let c = (b - a).cross(&(q - a));
                    if c.is_negative() {
                        return Location::Exterior;
                    }
                    on_edge |= c.is_zero();
                }
                if on_edge {
                    Location::Boundary
                } else {
                    Location::Interior
                }
            }
        }
    }
}

pub(crate) fn on_segment(a: &Point, b: &Point, q: &Point) -> bool {
    (b - a).cross(&(q - a)).is_zero() && !(q - a).dot(&(q - b)).is_positive()
}

/// Andrew's monotone chain; collinear boundary points are dropped.
pub fn hull(points: &[Point]) -> Result<Polygon> {
    if points.is_empty() {
        return Err(Error::Geometry("hull of an empty point set".into()));
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return Ok(Polygon { vertices: pts });
    }
    let turn = |o: &Point, a: &Point, b: &Point| (a - o).cross(&(b - o));
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(Polygon { vertices: lower })
}

/// Index of the lowest vertex, leftmost among ties.
fn bottom(vertices: &[Point]) -> usize {
    (0..vertices.len())
        .min_by(|&i, &j| {
            let (a, b) = (&vertices[i], &vertices[j]);
            a.y.cmp(&b.y).then_with(|| a.x.cmp(&b.x))
        })
        .expect("non-empty")
}

/// `Σ w_i P_i` by merging the polygons' edge sequences in angular order.
pub fn minkowski_sum(terms: &[(Rational, &Polygon)]) -> Result<Polygon> {
    if terms.is_empty() {
        return Err(Error::Geometry("Minkowski sum of nothing".into()));
    }
    if terms.iter().any(|(w, _)| !w.is_positive()) {
        return Err(Error::Geometry("Minkowski weights must be positive".into()));
    }
    let mut start = Point::zero();
    let mut edges: Vec<Point> = Vec::new();
    for (w, poly) in terms {
        let scaled = poly.scale(w);
        let b = bottom(&scaled.vertices);
        start = &start + &scaled.vertices[b];
        let es = scaled.edges();
        let n = es.len();
        edges.extend((0..n).map(|i| es[(b + i) % n].clone()));
    }
    edges.sort_by(|a, b| a.angle_cmp(b));

    // Merge parallel edges, then walk.
    let mut merged: Vec<Point> = Vec::new();
    for e in edges {
        match merged.last_mut() {
            Some(last) if last.cross(&e).is_zero() && last.dot(&e).is_positive() => {
                *last = &*last + &e;
            }
            _ => merged.push(e),
        }
    }
    let mut vertices = vec![start];
    for e in &merged[..merged.len().saturating_sub(1)] {
        let next = vertices.last().unwrap() + e;
        vertices.push(next);
    }
    // A closing check keeps the walk honest.
    if let Some(last) = merged.last() {
        if vertices.last().unwrap() + last != vertices[0] {
            return Err(Error::internal("Minkowski edge walk does not close"));
        }
    }
    // Same starting vertex as `hull`: the lexicographic minimum.
    let first = (0..vertices.len())
        .min_by(|&a, &b| vertices[a].cmp(&vertices[b]))
        .unwrap_or(0);
    vertices.rotate_left(first);
    Ok(Polygon { vertices })
}

/// A face of a polygon: the set of maximizers of a linear functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Face {
    Vertex(Point),
    /// Endpoints in counterclockwise order along the boundary.
    Edge(Point, Point),
}

impl Face {
    /// Endpoints in lexicographic order, for orientation-free comparison.
    pub fn sorted_endpoints(&self) -> (Point, Point) {
        match self {
            Face::Vertex(p) => (p.clone(), p.clone()),
            Face::Edge(a, b) => {
                if a <= b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                }
            }
        }
    }

    /// `Σ w_i G_i` for faces sharing an outer normal (so all are parallel).
    pub fn weighted_sum(terms: &[(Rational, Face)]) -> Face {
        let (mut lo, mut hi) = (Point::zero(), Point::zero());
        for (w, f) in terms {
            let (a, b) = f.sorted_endpoints();
            lo = &lo + &a.scale(w);
            hi = &hi + &b.scale(w);
        }
        Face::from_endpoints(lo, hi)
    }

    fn from_endpoints(lo: Point, hi: Point) -> Face {
        if lo == hi {
            Face::Vertex(lo)
        } else {
            Face::Edge(lo, hi)
        }
    }

    /// Same face with lexicographically ordered endpoints.
    pub fn normalized(&self) -> Face {
        let (a, b) = self.sorted_endpoints();
        Face::from_endpoints(a, b)
    }
}

/// `S(P; n)`, the maximizers of `n·x` over `P`.
pub fn support_set(poly: &Polygon, n: &Point) -> Result<Face> {
    if n.is_zero() {
        return Err(Error::Geometry("support set of the zero direction".into()));
    }
    let best = poly.support_value(n);
    let vs = &poly.vertices;
    let hits: Vec<usize> = (0..vs.len()).filter(|&i| n.dot(&vs[i]) == best).collect();
    Ok(match hits.as_slice() {
        [i] => Face::Vertex(vs[*i].clone()),
        [i, j] => {
            // Consecutive around the boundary; order them counterclockwise.
            if (*i + 1) % vs.len() == *j {
                Face::Edge(vs[*i].clone(), vs[*j].clone())
            } else {
                Face::Edge(vs[*j].clone(), vs[*i].clone())
            }
        }
        _ => {
            return Err(Error::internal(
                "more than two extreme points on a supporting line",
            ))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::running_game;
    use crate::rational::{frac, int};

    fn p(x: i64, y: i64) -> Point {
        Point::new(int(x), int(y))
    }

    fn state_points(state: usize) -> Vec<Point> {
        let g = running_game(frac(1, 2));
        (0..5)
            .map(|j| Point::from_slice(g.payoff(state, j)))
            .collect()
    }

    fn as_set(poly: &Polygon) -> Vec<Point> {
        let mut v = poly.vertices().to_vec();
        v.sort();
        v
    }

    #[test]
    fn example_hulls() {
        let h0 = hull(&state_points(0)).unwrap();
        let mut want = vec![p(1, 0), p(10, 8), p(2, 9), Point::new(int(0), frac(32, 5))];
        want.sort();
        assert_eq!(as_set(&h0), want);
        let h1 = hull(&state_points(1)).unwrap();
        let mut want = vec![
            p(2, 0),
            p(10, 4),
            p(3, 8),
            p(1, 9),
            Point::new(int(0), frac(32, 5)),
        ];
        want.sort();
        assert_eq!(as_set(&h1), want);
        for poly in [&h0, &h1] {
            for e in poly.edges().windows(2) {
                assert!(
                    e[0].cross(&e[1]).is_positive(),
                    "strictly convex, counterclockwise"
                );
            }
        }
    }

    #[test]
    fn degenerate_hulls() {
        assert_eq!(hull(&[p(1, 1), p(1, 1)]).unwrap().vertices(), &[p(1, 1)]);
        assert_eq!(
            hull(&[p(0, 0), p(2, 2), p(1, 1)]).unwrap().vertices(),
            &[p(0, 0), p(2, 2)]
        );
        assert!(hull(&[]).is_err());
    }

    #[test]
    fn translation_by_a_point() {
        let sq = hull(&[p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap();
        let t = hull(&[p(3, -2)]).unwrap();
        let s = minkowski_sum(&[(int(1), &sq), (int(1), &t)]).unwrap();
        assert_eq!(s, hull(&[p(3, -2), p(4, -2), p(4, -1), p(3, -1)]).unwrap());
    }

    #[test]
    fn support_function_is_additive() {
        let h0 = hull(&state_points(0)).unwrap();
        let h1 = hull(&state_points(1)).unwrap();
        let (w0, w1) = (frac(9, 10), frac(1, 10));
        let fp = minkowski_sum(&[(w0.clone(), &h0), (w1.clone(), &h1)]).unwrap();
        let n = p(1, 1);
        assert_eq!(
            fp.support_value(&n),
            &w0 * h0.support_value(&n) + &w1 * h1.support_value(&n)
        );
    }

    #[test]
    fn outcome_a_point_sits_inside_the_weighted_sum() {
        // No single positive normal supports both state points, so the
        // ex-ante point is strictly inside F_p.
        let h0 = hull(&state_points(0)).unwrap();
        let h1 = hull(&state_points(1)).unwrap();
        let fp = minkowski_sum(&[(frac(9, 10), &h0), (frac(1, 10), &h1)]).unwrap();
        assert_eq!(
            fp.locate(&Point::new(int(6), frac(81, 10))),
            Location::Interior
        );
    }

    #[test]
    fn example_support_sets() {
        let h0 = hull(&state_points(0)).unwrap();
        assert_eq!(
            support_set(&h0, &p(1, 8)).unwrap().normalized(),
            Face::Edge(p(2, 9), p(10, 8))
        );
        let h1 = hull(&state_points(1)).unwrap();
        assert_eq!(support_set(&h1, &p(1, 0)).unwrap(), Face::Vertex(p(10, 4)));
        let sq = hull(&[p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap();
        assert_eq!(
            support_set(&sq, &p(0, 1)).unwrap(),
            Face::Edge(p(1, 1), p(0, 1))
        );
        assert!(support_set(&sq, &p(0, 0)).is_err());
    }

    #[test]
    fn locate_degenerate() {
        let seg = hull(&[p(0, 0), p(2, 2)]).unwrap();
        assert_eq!(seg.locate(&p(1, 1)), Location::Boundary);
        assert_eq!(seg.locate(&p(3, 3)), Location::Exterior);
        let pt = hull(&[p(1, 2)]).unwrap();
        assert_eq!(pt.locate(&p(1, 2)), Location::Boundary);
    }
}
