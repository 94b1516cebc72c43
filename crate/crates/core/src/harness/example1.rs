//! Rectilinear-hull containment of critical points for cubics with roots
//! `a ± bi, c` and for quadratics.

use num_complex::Complex64;

use crate::geometry::{box_union_contains, recti_hull, AxisLines, BoxUnion};
use crate::roots::{cubic_derivative_roots, CriticalRegime, CubicSpec};
use crate::HarnessError;

#[derive(Clone, Debug, PartialEq)]
pub struct Example1Report {
    pub spec: CubicSpec,
    pub regime: CriticalRegime,
    pub critical_points: [Complex64; 2],
    pub h1: BoxUnion,
    /// Both critical points lie in `h1`.
    pub contained: bool,
    /// The three roots lie on a line parallel to an axis, i.e. `a = c`.
    pub axis_aligned_roots: bool,
    /// `contained == axis_aligned_roots`.
    pub paper_iff_holds: bool,
    /// Complex-critical regime, where the equivalence is claimed.
    pub within_premise: bool,
}

/// Absolute per-axis tolerance scaled by the extent of `points`.
fn box_tol(points: &[Complex64], tol: f64) -> f64 {
    let extent = points
        .iter()
        .flat_map(|p| [p.re.abs(), p.im.abs()])
        .fold(1.0, f64::max);
    tol * extent
}

fn as_rows(points: &[Complex64]) -> Vec<Vec<f64>> {
    points.iter().map(|p| vec![p.re, p.im]).collect()
}

fn all_contained(h1: &BoxUnion, points: &[Complex64], tol: f64) -> Result<bool, HarnessError> {
    for p in points {
        if !box_union_contains(h1, &[p.re, p.im], tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn example1_classify(spec: &CubicSpec, tol: f64) -> Result<Example1Report, HarnessError> {
    let critical = cubic_derivative_roots(spec)?;
    let roots = spec.roots();
    let h1 = recti_hull(&as_rows(&roots), 2)?;
    let contained = all_contained(&h1, &critical.points, box_tol(&roots, tol))?;
    let axis_aligned_roots = AxisLines::new(&[spec.a, spec.a, spec.c]).len() == 1;
    Ok(Example1Report {
        spec: *spec,
        regime: critical.regime,
        critical_points: critical.points,
        h1,
        contained,
        axis_aligned_roots,
        paper_iff_holds: contained == axis_aligned_roots,
        within_premise: critical.regime == CriticalRegime::ComplexCritical,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticReport {
    pub roots: [Complex64; 2],
    /// The single critical point `(r1 + r2) / 2`.
    pub midpoint: Complex64,
    pub h1: BoxUnion,
    pub contained: bool,
    /// The roots share a real or an imaginary part.
    pub aligned: bool,
    /// Connected components of `h1`.
    pub components: usize,
    pub paper_iff_holds: bool,
    /// `r1 = r2`: the critical point is the double root.
    pub degenerate: bool,
}

pub fn example1_quadratic(
    r1: Complex64,
    r2: Complex64,
    tol: f64,
) -> Result<QuadraticReport, HarnessError> {
    let roots = [r1, r2];
    let midpoint = (r1 + r2) * 0.5;
    let h1 = recti_hull(&as_rows(&roots), 2)?;
    let contained = all_contained(&h1, &[midpoint], box_tol(&roots, tol))?;
    let aligned =
        AxisLines::new(&[r1.re, r2.re]).len() == 1 || AxisLines::new(&[r1.im, r2.im]).len() == 1;
    Ok(QuadraticReport {
        roots,
        midpoint,
        components: h1.component_count(),
        h1,
        contained,
        aligned,
        paper_iff_holds: contained == aligned,
        degenerate: r1 == r2,
    })
}
