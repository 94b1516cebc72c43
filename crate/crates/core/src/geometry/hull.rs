//! Andrew's monotone chain and signed-distance membership.

use super::Point2;
use crate::GeometryError;

/// Convex hull as a counterclockwise vertex list without collinear vertices.
/// Degenerates to two vertices (a segment) or one (a point).
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut best: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max(v[i].distance(&v[j]));
            }
        }
        best
    }

    /// Twice the signed area; positive for counterclockwise polygons.
    pub fn doubled_area(&self) -> f64 {
        let v = &self.vertices;
        (0..v.len())
            .map(|i| {
                let (a, b) = (v[i], v[(i + 1) % v.len()]);
                a.x * b.y - a.y * b.x
            })
            .sum()
    }
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

pub fn convex_hull_2d(points: &[Point2]) -> Result<ConvexPolygon, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::Empty);
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    if pts.len() == 1 {
        return Ok(ConvexPolygon { vertices: pts });
    }

    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    // last point repeats the first
    hull.pop();
    Ok(ConvexPolygon { vertices: hull })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HullPosition {
    Inside,
    Boundary,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HullVerdict {
    pub position: HullPosition,
    /// Distance to the hull boundary: positive inside, negative outside.
    pub signed_distance: f64,
    /// Absolute tolerance the verdict was judged at.
    pub tolerance: f64,
}

impl HullVerdict {
    pub fn is_contained(&self) -> bool {
        self.position != HullPosition::Outside
    }
}

fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 {
        (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    p.distance(&Point2::new(a.x + t * dx, a.y + t * dy))
}

/// Classifies `p` against `hull`. `tol_rel` is scaled by the hull diameter,
/// except for a single-point hull where it is absolute.
pub fn point_in_hull(hull: &ConvexPolygon, p: Point2, tol_rel: f64) -> HullVerdict {
    let v = &hull.vertices;
    let (signed_distance, tolerance) = match v.len() {
        1 => (0.0 - p.distance(&v[0]), tol_rel),
        2 => (
            0.0 - segment_distance(p, v[0], v[1]),
            tol_rel * hull.diameter(),
        ),
        n => {
            let mut dist = f64::INFINITY;
            let mut inside = true;
            for i in 0..n {
                let (a, b) = (v[i], v[(i + 1) % n]);
                inside &= cross(a, b, p) >= 0.0;
                dist = dist.min(segment_distance(p, a, b));
            }
            (if inside { dist } else { -dist }, tol_rel * hull.diameter())
        }
    };
    let position = if signed_distance.abs() < tolerance {
        HullPosition::Boundary
    } else if signed_distance > 0.0 {
        HullPosition::Inside
    } else if signed_distance == 0.0 {
        HullPosition::Boundary
    } else {
        HullPosition::Outside
    };
    HullVerdict {
        position,
        signed_distance,
        tolerance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[(f64, f64)]) -> Vec<Point2> {
        raw.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    #[test]
    fn square_drops_interior_point() {
        let h = convex_hull_2d(&pts(&[
            (0.0, 0.0),
            (1.0, 0.0),
            (0.0, 1.0),
            (1.0, 1.0),
            (0.5, 0.5),
        ]))
        .unwrap();
        assert_eq!(
            h.vertices(),
            pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).as_slice()
        );
        assert!(h.doubled_area() > 0.0);
    }

    #[test]
    fn collinear_points_give_segment() {
        let h = convex_hull_2d(&pts(&[(1.0, 0.0), (0.0, 0.0), (2.0, 0.0)])).unwrap();
        assert!(h.is_segment());
        assert_eq!(h.vertices(), pts(&[(0.0, 0.0), (2.0, 0.0)]).as_slice());
    }

    #[test]
    fn duplicates_give_point() {
        let h = convex_hull_2d(&pts(&[(1.0, 2.0), (1.0, 2.0)])).unwrap();
        assert!(h.is_point());
        assert_eq!(convex_hull_2d(&[]), Err(GeometryError::Empty));
        assert_eq!(
            convex_hull_2d(&pts(&[(f64::NAN, 0.0)])),
            Err(GeometryError::NonFinite)
        );
    }

    #[test]
    fn triangle_contains_cubic_critical_points() {
        let h = convex_hull_2d(&pts(&[(2.0, 0.0), (0.0, 1.0), (0.0, -1.0)])).unwrap();
        for x in [1.0 / 3.0, 1.0] {
            let v = point_in_hull(&h, Point2::new(x, 0.0), 1e-12);
            assert_eq!(v.position, HullPosition::Inside, "{x}");
        }
    }

    #[test]
    fn verdicts() {
        let tri = convex_hull_2d(&pts(&[(0.0, 0.0), (3.0, 0.0), (0.0, 3.0)])).unwrap();
        assert_eq!(
            point_in_hull(&tri, Point2::new(1.0, 1.0), 1e-9).position,
            HullPosition::Inside
        );
        assert_eq!(
            point_in_hull(&tri, Point2::new(3.0, 0.0), 1e-9).position,
            HullPosition::Boundary
        );

        let square =
            convex_hull_2d(&pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])).unwrap();
        let v = point_in_hull(&square, Point2::new(2.0, 0.5), 1e-9);
        assert_eq!(v.position, HullPosition::Outside);
        assert!((v.signed_distance + 1.0).abs() < 1e-15);
        let c = point_in_hull(&square, Point2::new(0.5, 0.5), 1e-9);
        assert!((c.signed_distance - 0.5).abs() < 1e-15);
    }

    #[test]
    fn degenerate_hull_membership() {
        let seg = convex_hull_2d(&pts(&[(0.0, 1.0), (0.0, -1.0)])).unwrap();
        let v = point_in_hull(&seg, Point2::new(0.0, 0.0), 1e-8);
        assert_eq!(v.position, HullPosition::Boundary);
        assert_eq!(v.signed_distance, 0.0);
        assert_eq!(
            point_in_hull(&seg, Point2::new(0.1, 0.0), 1e-8).position,
            HullPosition::Outside
        );

        let pt = convex_hull_2d(&pts(&[(1.0, 1.0)])).unwrap();
        assert_eq!(
            point_in_hull(&pt, Point2::new(1.0, 1.0 + 1e-10), 1e-8).position,
            HullPosition::Boundary
        );
        assert_eq!(
            point_in_hull(&pt, Point2::new(1.0, 1.1), 1e-8).position,
            HullPosition::Outside
        );
    }
}
