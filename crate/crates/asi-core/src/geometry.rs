//! Circular and planar primitives shared by the 2D and 3D mistake
//! counters: angular ranking, convex hulls, containment tests and the
//! sphere-to-rectangle projection.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Tolerance for collinearity during hull construction and for boundary
/// classification in containment tests. All projected coordinates live in
/// `[0, 2π] x [0, π]`, so a single absolute tolerance works.
pub const GEOM_EPS: f64 = 1e-12;

/// Normalize an azimuth into `[0, 2π)`.
pub fn normalize_azimuth(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Rank nodes by ascending angle, 1-based. Ties break by ascending node
/// index, which keeps the result a permutation even with duplicate angles.
pub fn circular_ranks(angles: &[f64]) -> Result<Vec<usize>> {
    for (i, a) in angles.iter().enumerate() {
        if !a.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite angle at node {i}")));
        }
    }
    let mut by_angle: Vec<usize> = (0..angles.len()).collect();
    by_angle.sort_by(|&a, &b| angles[a].partial_cmp(&angles[b]).unwrap().then(a.cmp(&b)));
    let mut ranks = vec![0usize; angles.len()];
    for (pos, &node) in by_angle.iter().enumerate() {
        ranks[node] = pos + 1;
    }
    Ok(ranks)
}

/// Inverse of [`circular_ranks`]: `order[k]` is the node holding rank `k + 1`.
pub fn order_from_ranks(ranks: &[usize]) -> Vec<usize> {
    let mut order = vec![0usize; ranks.len()];
    for (node, &r) in ranks.iter().enumerate() {
        order[r - 1] = node;
    }
    order
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

/// Cross product of `a - o` and `b - o`: positive when `o -> a -> b` turns
/// counter-clockwise.
fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Convex polygon with vertices in counter-clockwise order.
///
/// Hulls of fewer than three non-collinear points are kept as degenerate
/// polygons (a single point or a segment) instead of being rejected; the
/// containment test treats them as zero-area regions.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

impl Containment {
    /// Boundary points count as contained; a node exactly on a hull edge is
    /// still inside the group's extent.
    pub fn is_contained(self) -> bool {
        !matches!(self, Containment::Outside)
    }
}

/// Monotone-chain convex hull. Collinear points are dropped from the
/// vertex list; inputs whose hull has no area come back as a degenerate
/// one- or two-vertex polygon.
pub fn convex_hull(points: &[Point]) -> Result<Polygon> {
    if points.is_empty() {
        return Err(Error::InvalidInput("convex hull of an empty point set".into()));
    }
    for (i, p) in points.iter().enumerate() {
        if !p.x.is_finite() || !p.y.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite point at index {i}")));
        }
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup();
    if pts.len() == 1 {
        return Ok(Polygon { vertices: pts });
    }
    let chain = |iter: &mut dyn Iterator<Item = Point>| {
        let mut half: Vec<Point> = Vec::new();
        for p in iter {
            while half.len() >= 2 && cross(half[half.len() - 2], half[half.len() - 1], p) <= GEOM_EPS {
                half.pop();
            }
            half.push(p);
        }
        half
    };
    let mut lower = chain(&mut pts.iter().copied());
    let mut upper = chain(&mut pts.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.append(&mut upper);
    Ok(Polygon { vertices: lower })
}

/// Classify a point against a convex polygon.
///
/// Full polygons use per-edge cross-product signs, with [`GEOM_EPS`]
/// deciding boundary membership. Degenerate hulls are handled by distance:
/// within [`GEOM_EPS`] of the point or segment is boundary, anything else
/// outside.
pub fn polygon_contains(poly: &Polygon, p: Point) -> Containment {
    let v = poly.vertices();
    match v.len() {
        0 => Containment::Outside,
        1 => {
            if (p.x - v[0].x).hypot(p.y - v[0].y) <= GEOM_EPS {
                Containment::Boundary
            } else {
                Containment::Outside
            }
        }
        2 => {
            if point_segment_distance(p, v[0], v[1]) <= GEOM_EPS {
                Containment::Boundary
            } else {
                Containment::Outside
            }
        }
        n => {
            let mut on_edge = false;
            for i in 0..n {
                let c = cross(v[i], v[(i + 1) % n], p);
                if c < -GEOM_EPS {
                    return Containment::Outside;
                }
                if c <= GEOM_EPS {
                    on_edge = true;
                }
            }
            if on_edge {
                Containment::Boundary
            } else {
                Containment::Inside
            }
        }
    }
}

fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return (p.x - a.x).hypot(p.y - a.y);
    }
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    (p.x - (a.x + t * dx)).hypot(p.y - (a.y + t * dy))
}

/// Project spherical coordinates into the rectangle spanned by a group's
/// extremes: `y = φ - phi_lo`, and `x` is the azimuthal offset from the
/// start of the occupied arc.
///
/// When the arc wraps through zero the offset is measured from `theta_hi`.
/// That branch evaluates `(θ + 2π - theta_hi) mod 2π` piecewise so that
/// `θ = theta_hi` maps to exactly 0; the literal modulo can land just
/// below `2π` instead and would throw the extreme member across the
/// rectangle.
pub fn map_to_rectangle(
    theta: f64,
    phi: f64,
    theta_lo: f64,
    theta_hi: f64,
    phi_lo: f64,
    wraps: bool,
) -> Point {
    let x = if wraps {
        if theta >= theta_hi {
            theta - theta_hi
        } else {
            theta + (TAU - theta_hi)
        }
    } else {
        theta - theta_lo
    };
    Point::new(x, phi - phi_lo)
}
