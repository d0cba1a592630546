//! Planar convex hulls (Andrew's monotone chain) and shoelace areas.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cross-product tolerance used for collinearity and convexity decisions.
pub const CROSS_TOL: f64 = 1e-12;

pub type Point2 = [f64; 2];

/// `(a - o) x (b - o)`; positive when `o, a, b` turn counterclockwise.
#[inline]
pub fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// A closed polygon listed counterclockwise. `convex` records whether every turn
/// is left within [`CROSS_TOL`] and there are at least three vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon2 {
    pub vertices: Vec<Point2>,
    pub convex: bool,
}

impl Polygon2 {
    pub fn new(vertices: Vec<Point2>) -> Polygon2 {
        let convex = is_convex_ccw(&vertices);
        Polygon2 { vertices, convex }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Twice the signed area.
    fn signed_area2(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let p = self.vertices[i];
                let q = self.vertices[(i + 1) % n];
                p[0] * q[1] - q[0] * p[1]
            })
            .sum()
    }

    /// Shoelace area (absolute value).
    pub fn area(&self) -> f64 {
        if self.vertices.len() < 3 {
            return 0.0;
        }
        0.5 * self.signed_area2().abs()
    }

    pub fn scaled(&self, factor: f64) -> Polygon2 {
        let vertices = self
            .vertices
            .iter()
            .map(|p| [factor * p[0], factor * p[1]])
            .collect();
        if factor > 0.0 {
            Polygon2 {
                vertices,
                convex: self.convex,
            }
        } else {
            Polygon2::new(vertices)
        }
    }

    /// Image under the linear map `[[a, b], [c, d]]`; reorders to stay counterclockwise.
    pub fn transformed(&self, m: [[f64; 2]; 2]) -> Polygon2 {
        let mut vertices: Vec<Point2> = self
            .vertices
            .iter()
            .map(|p| {
                [
                    m[0][0] * p[0] + m[0][1] * p[1],
                    m[1][0] * p[0] + m[1][1] * p[1],
                ]
            })
            .collect();
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] < 0.0 {
            vertices.reverse();
        }
        Polygon2::new(vertices)
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, p) in self.vertices.iter().enumerate() {
            for q in &self.vertices[i + 1..] {
                d = d.max(dist(*p, *q));
            }
        }
        d
    }

    /// Euclidean distance from `q` to the polygon (zero inside). Requires a convex,
    /// counterclockwise polygon.
    pub fn distance_to(&self, q: Point2) -> f64 {
        let n = self.vertices.len();
        match n {
            0 => f64::INFINITY,
            1 => dist(q, self.vertices[0]),
            _ => {
                let inside = n >= 3
                    && (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], q) >= 0.0);
                if inside {
                    return 0.0;
                }
                (0..n)
                    .map(|i| segment_distance(q, self.vertices[i], self.vertices[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

fn dist(p: Point2, q: Point2) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

fn segment_distance(q: Point2, a: Point2, b: Point2) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    if len2 == 0.0 {
        return dist(q, a);
    }
    let t = (((q[0] - a[0]) * ab[0] + (q[1] - a[1]) * ab[1]) / len2).clamp(0.0, 1.0);
    dist(q, [a[0] + t * ab[0], a[1] + t * ab[1]])
}

fn is_convex_ccw(vertices: &[Point2]) -> bool {
    let n = vertices.len();
    n >= 3
        && (0..n).all(|i| cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]) > -CROSS_TOL)
}

/// Symmetric Hausdorff distance between two convex polygons. For polytopes the
/// maximum is attained at a vertex, so vertex-to-polygon distances suffice.
pub fn hausdorff_distance(a: &Polygon2, b: &Polygon2) -> f64 {
    let one_way = |x: &Polygon2, y: &Polygon2| {
        x.vertices
            .iter()
            .map(|&p| y.distance_to(p))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Convex hull by monotone chain, then shoelace area. Collinear input yields area
/// zero and a polygon flagged non-convex.
pub fn hull_area_2d(points: &[Point2]) -> Result<(f64, Polygon2)> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("hull of an empty point set".into()));
    }
    if points.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return Err(Error::InvalidArgument("non-finite point".into()));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|p, q| p[0].total_cmp(&q[0]).then(p[1].total_cmp(&q[1])));
    pts.dedup();
    if pts.len() < 3 {
        let poly = Polygon2 {
            vertices: pts,
            convex: false,
        };
        return Ok((0.0, poly));
    }

    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= CROSS_TOL {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= CROSS_TOL
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();

    let poly = Polygon2::new(hull);
    let area = if poly.len() >= 3 { poly.area() } else { 0.0 };
    Ok((area, poly))
}
