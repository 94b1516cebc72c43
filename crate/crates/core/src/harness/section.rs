//! Section witnesses for critical points of a single partial derivative.
//!
//! For `Q_k(z) = 0`, fix every coordinate except the `k`-th and let
//! `f(w) = P(.., w, ..)`. Then `f'(z_k) = Q_k(z) = 0`, so the classical
//! theorem puts `z_k` in the convex hull of the roots of `f`. Any separately
//! convex superset of the zero set contains that hull in its section through
//! `z`, so a passing check certifies `z ∈ H_2(P^{-1}(0))`.

use num_complex::Complex64;

use super::ROOT_TOL;
use crate::geometry::{convex_hull_2d, point_in_hull, ConvexPolygon, HullVerdict, Point2};
use crate::poly::{insert_coordinate, omit_coordinate, MultiPoly, UniPoly};
use crate::roots::{roots_all, RootSet};
use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectionStatus {
    Pass,
    Fail,
    Inconclusive,
    /// The restriction is constant (or null), so this section carries no
    /// information.
    Degenerate,
}

impl SectionStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SectionStatus::Pass => "pass",
            SectionStatus::Fail => "fail",
            SectionStatus::Inconclusive => "inconclusive",
            SectionStatus::Degenerate => "degenerate",
        }
    }
}

/// Roots of the restriction, their hull, and where `z_k` falls.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionWitness {
    pub roots_of_f: RootSet,
    pub hull: ConvexPolygon,
    pub verdict: HullVerdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Theorem1Report {
    pub status: SectionStatus,
    pub k: usize,
    pub z: Vec<Complex64>,
    /// `f(w) = P(z_1, .., w, .., z_M)` with `w` in slot `k`.
    pub restriction: UniPoly,
    /// `f'(z_k)`, equal to `Q_k(z)` up to roundoff.
    pub derivative_at_zk: Complex64,
    /// `|Q_k(z)|` evaluated on the full polynomial.
    pub critical_residual: f64,
    /// Absent for degenerate sections.
    pub witness: Option<SectionWitness>,
}

fn critical_bound(q: &MultiPoly, z: &[Complex64], tol: f64) -> Result<(f64, f64), HarnessError> {
    let residual = q.evaluate(z)?.norm();
    let bound = tol * q.evaluate_abs(z)?;
    Ok((residual, bound))
}

/// Checks the section witness for a critical point `z` of `Q_k`.
pub fn verify_theorem1(
    p: &MultiPoly,
    k: usize,
    z: &[Complex64],
    tol: f64,
) -> Result<Theorem1Report, HarnessError> {
    let q = p.partial_derivative(k)?;
    if q.is_null() {
        return Err(HarnessError::NullDerivative { k });
    }
    let (critical_residual, bound) = critical_bound(&q, z, tol)?;
    if critical_residual > bound {
        return Err(HarnessError::NotCritical {
            residual: critical_residual,
            bound,
        });
    }
    let zk = z[k - 1];
    let restriction = p.restrict(k, &omit_coordinate(z, k))?;
    let derivative_at_zk = restriction.derivative().eval(zk);
    let mut report = Theorem1Report {
        status: SectionStatus::Degenerate,
        k,
        z: z.to_vec(),
        restriction,
        derivative_at_zk,
        critical_residual,
        witness: None,
    };
    if report.restriction.is_constant() {
        return Ok(report);
    }
    let roots_of_f = roots_all(&report.restriction, ROOT_TOL)?;
    let points: Vec<Point2> = roots_of_f.roots.iter().map(|&r| r.into()).collect();
    let hull = convex_hull_2d(&points)?;
    let verdict = point_in_hull(&hull, zk.into(), tol);
    report.status = if !roots_of_f.converged {
        SectionStatus::Inconclusive
    } else if verdict.is_contained() {
        SectionStatus::Pass
    } else {
        SectionStatus::Fail
    };
    report.witness = Some(SectionWitness {
        roots_of_f,
        hull,
        verdict,
    });
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectionCriticalPoints {
    /// Lifted critical points that satisfy `|Q_k(z)| <= tol · Σ|c||z^e|`.
    pub points: Vec<Vec<Complex64>>,
    /// Roots of `f'` whose lift failed the residual check.
    pub uncertified: Vec<Vec<Complex64>>,
    /// The restriction is constant: every point of the section is critical.
    pub degenerate: bool,
    /// Whether the root finder converged on `f'`.
    pub converged: bool,
}

/// Critical points of `Q_k` on the section through `others`: roots of `f'`
/// lifted back to `C^M`.
pub fn find_section_critical_points(
    p: &MultiPoly,
    k: usize,
    others: &[Complex64],
    tol: f64,
) -> Result<SectionCriticalPoints, HarnessError> {
    let f = p.restrict(k, others)?;
    let mut out = SectionCriticalPoints {
        points: Vec::new(),
        uncertified: Vec::new(),
        degenerate: f.is_constant(),
        converged: true,
    };
    let df = f.derivative();
    if df.is_constant() {
        return Ok(out);
    }
    let q = p.partial_derivative(k)?;
    let rs = roots_all(&df, ROOT_TOL)?;
    out.converged = rs.converged;
    for &w in &rs.roots {
        let z = insert_coordinate(others, k, w);
        let (residual, bound) = critical_bound(&q, &z, tol)?;
        if residual <= bound {
            out.points.push(z);
        } else {
            out.uncertified.push(z);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{verify_gl_univariate, Verdict, DEFAULT_TOL};
    use crate::parser::parse_poly;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sum_of_squares_section() {
        let p = parse_poly("z1^2 + z2^2", None).unwrap();
        let r = verify_theorem1(&p, 1, &[c(0.0, 0.0), c(1.0, 0.0)], DEFAULT_TOL).unwrap();
        assert_eq!(r.status, SectionStatus::Pass);
        let w = r.witness.unwrap();
        assert!(w.hull.is_segment());
        assert_eq!(w.verdict.signed_distance, 0.0);
    }

    #[test]
    fn annihilated_section_is_degenerate() {
        let p = parse_poly("z1*z2", None).unwrap();
        let r = verify_theorem1(&p, 1, &[c(3.0, -1.0), c(0.0, 0.0)], DEFAULT_TOL).unwrap();
        assert_eq!(r.status, SectionStatus::Degenerate);
        assert!(r.witness.is_none());
    }

    #[test]
    fn hypothesis_and_criticality_are_enforced() {
        let p = parse_poly("z2^2 + 1", None).unwrap();
        assert!(matches!(
            verify_theorem1(&p, 1, &[c(0.0, 0.0), c(0.0, 0.0)], DEFAULT_TOL),
            Err(HarnessError::NullDerivative { k: 1 })
        ));
        let q = parse_poly("z1^2 + z2", None).unwrap();
        assert!(matches!(
            verify_theorem1(&q, 1, &[c(1.0, 0.0), c(0.0, 0.0)], DEFAULT_TOL),
            Err(HarnessError::NotCritical { .. })
        ));
    }

    #[test]
    fn section_critical_points_fixtures() {
        let cube = parse_poly("z1^3", None).unwrap();
        let s = find_section_critical_points(&cube, 1, &[], DEFAULT_TOL).unwrap();
        assert_eq!(s.points, vec![vec![c(0.0, 0.0)], vec![c(0.0, 0.0)]]);

        let p = parse_poly("z1^2 + z2^2", None).unwrap();
        let s = find_section_critical_points(&p, 1, &[c(1.0, 0.0)], DEFAULT_TOL).unwrap();
        assert_eq!(s.points, vec![vec![c(0.0, 0.0), c(1.0, 0.0)]]);
        assert!(!s.degenerate);

        let d = parse_poly("z1*z2", None).unwrap();
        let s = find_section_critical_points(&d, 1, &[c(0.0, 0.0)], DEFAULT_TOL).unwrap();
        assert!(s.degenerate && s.points.is_empty());
    }

    #[test]
    fn restriction_derivative_matches_partial_derivative() {
        let p = parse_poly("(1+2i)*z1^3*z2 - z1^2*z3^2 + 4*z2*z3 + z1 - 7i", None).unwrap();
        let others = [c(0.3, -0.8), c(-1.1, 0.4)];
        let lhs = p.restrict(1, &others).unwrap().derivative();
        let rhs = p
            .partial_derivative(1)
            .unwrap()
            .restrict(1, &others)
            .unwrap();
        assert_eq!(lhs.coeffs().len(), rhs.coeffs().len());
        for (a, b) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            assert!((a - b).norm() <= 1e-12 * a.norm().max(b.norm()));
        }
    }

    #[test]
    fn univariate_embedding_agrees_with_classical_check() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let coeffs: Vec<Complex64> = (0..4)
                .map(|_| c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
                .collect();
            let uni = UniPoly::new(coeffs);
            let multi = MultiPoly::from(&uni);
            let gl = verify_gl_univariate(&uni, DEFAULT_TOL).unwrap();
            assert_eq!(gl.verdict, Verdict::Pass);
            for &w in &gl.critical_points.roots {
                let r = verify_theorem1(&multi, 1, &[w], DEFAULT_TOL).unwrap();
                assert_eq!(r.status, SectionStatus::Pass);
            }
        }
    }
}
