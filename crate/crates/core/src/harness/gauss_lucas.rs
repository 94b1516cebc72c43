use num_complex::Complex64;

use super::{Verdict, ROOT_TOL};
use crate::geometry::{convex_hull_2d, point_in_hull, ConvexPolygon, HullVerdict, Point2};
use crate::poly::UniPoly;
use crate::roots::{roots_all, RootSet};
use crate::HarnessError;

/// Classical check that every critical point lies in the hull of the roots.
#[derive(Clone, Debug, PartialEq)]
pub struct GlReport {
    pub verdict: Verdict,
    pub roots: RootSet,
    pub critical_points: RootSet,
    pub hull: ConvexPolygon,
    /// Membership verdict of each critical point, in `critical_points` order.
    pub checks: Vec<HullVerdict>,
}

impl GlReport {
    /// Smallest signed distance over all critical points.
    pub fn worst_signed_distance(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.signed_distance)
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn verify_gl_univariate(p: &UniPoly, tol: f64) -> Result<GlReport, HarnessError> {
    let degree = p.degree().unwrap_or(0);
    if degree < 2 {
        return Err(HarnessError::DegreeTooLow(degree));
    }
    let roots = roots_all(p, ROOT_TOL)?;
    let critical_points = roots_all(&p.derivative(), ROOT_TOL)?;
    let hull = convex_hull_2d(
        &roots
            .roots
            .iter()
            .map(|&r| Point2::from(r))
            .collect::<Vec<_>>(),
    )?;
    let checks: Vec<HullVerdict> = critical_points
        .roots
        .iter()
        .map(|&w: &Complex64| point_in_hull(&hull, w.into(), tol))
        .collect();
    let verdict = if !(roots.converged && critical_points.converged) {
        Verdict::Inconclusive
    } else if checks.iter().all(HullVerdict::is_contained) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(GlReport {
        verdict,
        roots,
        critical_points,
        hull,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::DEFAULT_TOL;

    #[test]
    fn quartic_power_passes() {
        let r = Complex64::new(1.5, -0.5);
        let p = UniPoly::from_roots(&[r; 4]);
        let report = verify_gl_univariate(&p, DEFAULT_TOL).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
    }

    #[test]
    fn example_cubic_passes() {
        let p = UniPoly::from_real(&[-2.0, 1.0, -2.0, 1.0]);
        let report = verify_gl_univariate(&p, DEFAULT_TOL).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.hull.vertices().len(), 3);
        assert!(report.worst_signed_distance() > 0.0);
    }

    #[test]
    fn low_degree_rejected() {
        let p = UniPoly::from_real(&[1.0, 1.0]);
        assert_eq!(
            verify_gl_univariate(&p, DEFAULT_TOL),
            Err(HarnessError::DegreeTooLow(1))
        );
    }
}
