//! Minimal 2D/3D point types and the segment-crossing test used for
//! map-based LOS determination.

use serde::{Deserialize, Serialize};

/// Plan-view point, meters. Serializes as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(f64, f64)", into = "(f64, f64)")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn distance(self, other: Point2) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2 { x, y }
    }
}

impl From<Point2> for (f64, f64) {
    fn from(p: Point2) -> Self {
        (p.x, p.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn plan_view(self) -> Point2 {
        Point2 {
            x: self.x,
            y: self.y,
        }
    }

    pub fn distance(self, other: Point3) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2) + (self.z - other.z).powi(2))
            .sqrt()
    }
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Proper-crossing test between segments `a1->a2` and `b1->b2`.
///
/// Returns the parameter t in (0, 1) along `a1->a2` where the crossing
/// happens, or `None` when the segments do not cross. Touching at an
/// endpoint or collinear overlap does not count as a crossing.
pub fn segment_crossing_param(a1: Point2, a2: Point2, b1: Point2, b2: Point2) -> Option<f64> {
    let s1 = cross(a1, a2, b1);
    let s2 = cross(a1, a2, b2);
    if s1 * s2 >= 0.0 {
        return None;
    }
    let w1 = cross(b1, b2, a1);
    let w2 = cross(b1, b2, a2);
    if w1 * w2 >= 0.0 {
        return None;
    }
    Some(w1 / (w1 - w2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_at_midpoint() {
        let t = segment_crossing_param(
            Point2::new(0.0, 0.0),
            Point2::new(10.0, 0.0),
            Point2::new(5.0, -1.0),
            Point2::new(5.0, 1.0),
        )
        .unwrap();
        assert!((t - 0.5).abs() < 1e-12);
    }

    #[test]
    fn parallel_and_disjoint() {
        let a1 = Point2::new(0.0, 0.0);
        let a2 = Point2::new(10.0, 0.0);
        assert!(
            segment_crossing_param(a1, a2, Point2::new(0.0, 1.0), Point2::new(10.0, 1.0)).is_none()
        );
        assert!(
            segment_crossing_param(a1, a2, Point2::new(11.0, -1.0), Point2::new(11.0, 1.0))
                .is_none()
        );
    }

    #[test]
    fn endpoint_touch_is_not_a_crossing() {
        let a1 = Point2::new(0.0, 0.0);
        let a2 = Point2::new(10.0, 0.0);
        // wall ends exactly on the segment
        assert!(
            segment_crossing_param(a1, a2, Point2::new(5.0, 0.0), Point2::new(5.0, 2.0)).is_none()
        );
    }

    #[test]
    fn point_distances() {
        assert_eq!(Point2::new(0.0, 0.0).distance(Point2::new(3.0, 4.0)), 5.0);
        assert_eq!(
            Point3::new(0.0, 0.0, 0.0).distance(Point3::new(2.0, 3.0, 6.0)),
            7.0
        );
    }
}
