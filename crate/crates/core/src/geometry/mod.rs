//! Planar convex hulls and exact rectilinear hulls.
//!
//! A complex number is identified with the point `(re, im)` of the plane, so
//! `C^M` becomes `R^{2M}`.

mod hull;
mod recti;

pub use hull::{convex_hull_2d, point_in_hull, ConvexPolygon, HullPosition, HullVerdict};
pub use recti::{
    box_union_contains, recti_hull, recti_hull_grid, AxisBox, AxisLines, BoxUnion, RectiGrid,
    DEFAULT_BOX_TOL, MAX_GRID_CELLS, SNAP_REL,
};

use num_complex::Complex64;

use crate::GeometryError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl From<Complex64> for Point2 {
    fn from(c: Complex64) -> Self {
        Point2::new(c.re, c.im)
    }
}

impl From<Point2> for Complex64 {
    fn from(p: Point2) -> Self {
        Complex64::new(p.x, p.y)
    }
}

/// Outcome of checking `H_1 ⊂ H` for a planar point set: every corner of
/// every box of the rectilinear hull must lie in the convex hull.
#[derive(Clone, Debug, PartialEq)]
pub struct NestingReport {
    pub pass: bool,
    /// Smallest signed distance over all box corners (negative = outside).
    pub worst_signed_distance: f64,
    pub corners_checked: usize,
}

/// Checks that the rectilinear hull of `points` is nested in their convex
/// hull. Box corners suffice since boxes and the hull are both convex.
pub fn hull_nesting_check(points: &[Point2], tol: f64) -> Result<NestingReport, GeometryError> {
    let hull = convex_hull_2d(points)?;
    let rows: Vec<Vec<f64>> = points.iter().map(|p| vec![p.x, p.y]).collect();
    let boxes = recti_hull(&rows, 2)?;
    let mut worst = f64::INFINITY;
    let mut pass = true;
    let mut corners_checked = 0;
    for corner in boxes.corners() {
        let v = point_in_hull(&hull, Point2::new(corner[0], corner[1]), tol);
        worst = worst.min(v.signed_distance);
        pass &= v.position != HullPosition::Outside;
        corners_checked += 1;
    }
    Ok(NestingReport {
        pass,
        worst_signed_distance: worst,
        corners_checked,
    })
}
