//! Planar points and the minimum enclosing circle.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

// Shadowed by inherent f64 methods whenever std is linked into the build.
#[allow(unused_imports)]
use num_traits::Float;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub const ORIGIN: Point2D = Point2D { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2D { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2D) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn midpoint(self, other: Point2D) -> Point2D {
        Point2D::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl Add for Point2D {
    type Output = Point2D;
    fn add(self, rhs: Point2D) -> Point2D {
        Point2D::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2D {
    type Output = Point2D;
    fn sub(self, rhs: Point2D) -> Point2D {
        Point2D::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2D {
    type Output = Point2D;
    fn mul(self, k: f64) -> Point2D {
        Point2D::new(self.x * k, self.y * k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point2D,
    pub radius: f64,
}

impl Circle {
    fn from_one(p: Point2D) -> Circle {
        Circle {
            center: p,
            radius: 0.0,
        }
    }

    fn from_two(p: Point2D, q: Point2D) -> Circle {
        let center = p.midpoint(q);
        Circle {
            center,
            radius: center.distance(p).max(center.distance(q)),
        }
    }

    /// Circumcircle of three points. Nearly collinear triples fall back to the
    /// widest diameter circle of the three.
    fn from_three(p: Point2D, q: Point2D, r: Point2D) -> Circle {
        let (bx, by) = (q.x - p.x, q.y - p.y);
        let (cx, cy) = (r.x - p.x, r.y - p.y);
        let det = 2.0 * (bx * cy - by * cx);
        let scale = (bx * bx + by * by).max(cx * cx + cy * cy);
        if det.abs() <= 1e-12 * scale {
            return [Circle::from_two(p, q), Circle::from_two(p, r), Circle::from_two(q, r)]
                .into_iter()
                .fold(Circle::from_one(p), |acc, c| if c.radius > acc.radius { c } else { acc });
        }
        let b2 = bx * bx + by * by;
        let c2 = cx * cx + cy * cy;
        let ux = (cy * b2 - by * c2) / det;
        let uy = (bx * c2 - cx * b2) / det;
        let center = Point2D::new(p.x + ux, p.y + uy);
        let radius = center.distance(p).max(center.distance(q)).max(center.distance(r));
        Circle { center, radius }
    }

    /// Containment with a small relative slack for rounding in the
    /// constructed circles.
    pub fn contains(&self, p: Point2D) -> bool {
        self.center.distance(p) <= self.radius * (1.0 + 1e-12) + 1e-12
    }
}

/// Smallest circle enclosing every point.
///
/// Randomized incremental construction with a fixed shuffle seed, so the
/// result is a deterministic function of the input.
pub fn min_enclosing_circle(points: &[Point2D]) -> Result<Circle> {
    if points.is_empty() {
        return Err(Error::Empty("min_enclosing_circle"));
    }
    if let Some(p) = points.iter().find(|p| !p.is_finite()) {
        let bad = if p.x.is_finite() { p.y } else { p.x };
        return Err(Error::domain("point coordinate", bad, "finite"));
    }
    let mut pts: Vec<Point2D> = points.to_vec();
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5bc0_1e));

    let mut circle = Circle::from_one(pts[0]);
    for i in 1..pts.len() {
        if !circle.contains(pts[i]) {
            circle = with_boundary_point(&pts[..i], pts[i]);
        }
    }
    Ok(circle)
}

fn with_boundary_point(pts: &[Point2D], p: Point2D) -> Circle {
    let mut circle = Circle::from_one(p);
    for j in 0..pts.len() {
        if !circle.contains(pts[j]) {
            circle = with_two_boundary_points(&pts[..j], p, pts[j]);
        }
    }
    circle
}

fn with_two_boundary_points(pts: &[Point2D], p: Point2D, q: Point2D) -> Circle {
    let mut circle = Circle::from_two(p, q);
    for &r in pts {
        if !circle.contains(r) {
            circle = Circle::from_three(p, q, r);
        }
    }
    circle
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn single_point() {
        let p = Point2D::new(3.0, -2.0);
        let c = min_enclosing_circle(&[p]).unwrap();
        assert_eq!(c.center, p);
        assert_eq!(c.radius, 0.0);
    }

    #[test]
    fn two_points_give_diameter_circle() {
        let c = min_enclosing_circle(&[Point2D::new(-1.0, 0.0), Point2D::new(3.0, 0.0)]).unwrap();
        assert!((c.center.x - 1.0).abs() < 1e-15 && c.center.y.abs() < 1e-15);
        assert!((c.radius - 2.0).abs() < 1e-15);
    }

    #[test]
    fn equilateral_triangle() {
        let h = 3.0_f64.sqrt() / 2.0;
        let pts = [Point2D::new(0.0, 0.0), Point2D::new(1.0, 0.0), Point2D::new(0.5, h)];
        let c = min_enclosing_circle(&pts).unwrap();
        assert!((c.radius - 1.0 / 3.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn collinear_points() {
        let pts: Vec<_> = (0..7).map(|i| Point2D::new(i as f64, 2.0 * i as f64)).collect();
        let c = min_enclosing_circle(&pts).unwrap();
        assert!((c.center.x - 3.0).abs() < 1e-12 && (c.center.y - 6.0).abs() < 1e-12);
        assert!((c.radius - 45.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn obtuse_triangle_uses_longest_side() {
        let pts = vec![Point2D::new(0.0, 0.0), Point2D::new(10.0, 0.0), Point2D::new(5.0, 1.0)];
        let c = min_enclosing_circle(&pts).unwrap();
        assert!((c.radius - 5.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(min_enclosing_circle(&[]).is_err());
        assert!(min_enclosing_circle(&[Point2D::new(f64::NAN, 0.0)]).is_err());
    }
}
