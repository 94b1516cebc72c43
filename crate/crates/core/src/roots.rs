//! All-roots solver for univariate complex polynomials, residual
//! certification, and the closed-form critical points of the cubic
//! `(z - c)((z - a)^2 + b^2)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::poly::UniPoly;
use crate::RootError;

pub const DEFAULT_MAX_ITER: usize = 200;
/// Polishing steps applied to every root after the simultaneous iteration.
pub const POLISH_STEPS: usize = 3;
const STEP_TOL: f64 = 1e-14;

/// Roots of a polynomial together with their certified residuals.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    /// One entry per unit of degree, including exact zeros split off first.
    pub roots: Vec<Complex64>,
    /// `|p(r)|` for each root.
    pub residuals: Vec<f64>,
    /// Largest coefficient magnitude of the input polynomial.
    pub scale: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl RootSet {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }
}

/// Residual bound `tol · scale · max(1, |r|)^degree` used to certify a
/// candidate root `r`.
pub fn certification_bound(p: &UniPoly, r: Complex64, tol: f64) -> f64 {
    let degree = p.degree().unwrap_or(0) as i32;
    tol * p.coeff_scale() * r.norm().max(1.0).powi(degree)
}

/// Finds all roots with the default iteration cap.
pub fn roots_all(p: &UniPoly, tol: f64) -> Result<RootSet, RootError> {
    roots_all_with(p, tol, DEFAULT_MAX_ITER)
}

/// Aberth-Ehrlich simultaneous iteration followed by Newton polishing.
///
/// Zero trailing coefficients are split off as exact roots at 0. A root is
/// frozen once its update falls below `1e-14 (1 + |z|)` or its residual is
/// already at the rounding floor of Horner evaluation.
pub fn roots_all_with(p: &UniPoly, tol: f64, max_iter: usize) -> Result<RootSet, RootError> {
    let degree = p.degree().ok_or(RootError::NullPolynomial)?;
    if degree == 0 {
        return Err(RootError::Constant);
    }
    let zeros = p
        .coeffs()
        .iter()
        .take_while(|c| c.re == 0.0 && c.im == 0.0)
        .count();
    let reduced = UniPoly::new(p.coeffs()[zeros..].to_vec());
    let n = degree - zeros;

    let mut roots = vec![Complex64::default(); zeros];
    let mut iterations = 0;
    let mut settled_all = true;
    match n {
        0 => {}
        1 => {
            let c = reduced.coeffs();
            roots.push(-c[0] / c[1]);
        }
        _ => {
            let (found, iters, settled) = aberth(&reduced, max_iter);
            iterations = iters;
            settled_all = settled;
            roots.extend(found.into_iter().map(|z| polish(&reduced, z)));
        }
    }

    let residuals: Vec<f64> = roots.iter().map(|&r| p.eval(r).norm()).collect();
    let certified = roots
        .iter()
        .zip(&residuals)
        .all(|(&r, &res)| res <= certification_bound(p, r, tol));
    Ok(RootSet {
        roots,
        residuals,
        scale: p.coeff_scale(),
        converged: settled_all && certified,
        iterations,
    })
}

fn initial_guesses(p: &UniPoly) -> Vec<Complex64> {
    let c = p.coeffs();
    let n = c.len() - 1;
    let lead = c[n].norm();
    let radius = 1.0 + c[..n].iter().map(|x| x.norm() / lead).fold(0.0, f64::max);
    // golden-ratio offset keeps the start off any symmetry axis of the roots
    let phase = 2.0 * PI * 0.618_033_988_749_894_9 / n as f64;
    (0..n)
        .map(|j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / n as f64 + phase))
        .collect()
}

fn rounding_floor(p: &UniPoly, z: Complex64) -> f64 {
    let n = p.degree().unwrap_or(0) as f64;
    4.0 * (n + 1.0) * f64::EPSILON * p.eval_abs(z)
}

fn aberth(p: &UniPoly, max_iter: usize) -> (Vec<Complex64>, usize, bool) {
    let mut z = initial_guesses(p);
    let n = z.len();
    let mut settled = vec![false; n];
    for iter in 1..=max_iter {
        for i in 0..n {
            if settled[i] {
                continue;
            }
            let (value, slope) = p.eval_with_derivative(z[i]);
            if value.norm() <= rounding_floor(p, z[i]) {
                settled[i] = true;
                continue;
            }
            let mut repulsion = Complex64::default();
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        repulsion += d.inv();
                    }
                }
            }
            let denom = slope / value - repulsion;
            let step = if denom.norm() > 0.0 && denom.is_finite() {
                denom.inv()
            } else {
                Complex64::new(1e-8 * (1.0 + z[i].norm()), 0.0)
            };
            z[i] -= step;
            if step.norm() <= STEP_TOL * (1.0 + z[i].norm()) {
                settled[i] = true;
            }
        }
        if settled.iter().all(|&s| s) {
            return (z, iter, true);
        }
    }
    (z, max_iter, false)
}

fn polish(p: &UniPoly, mut z: Complex64) -> Complex64 {
    let mut residual = p.eval(z).norm();
    for _ in 0..POLISH_STEPS {
        if residual == 0.0 {
            break;
        }
        let (value, slope) = p.eval_with_derivative(z);
        if slope.norm() == 0.0 {
            break;
        }
        let candidate = z - value / slope;
        let r = p.eval(candidate).norm();
        if !candidate.is_finite() || r >= residual {
            break;
        }
        z = candidate;
        residual = r;
    }
    z
}

/// Residual check of one candidate root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootCheck {
    pub candidate: Complex64,
    pub residual: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Evaluates `p` at each candidate and compares against
/// [`certification_bound`]. No iteration is performed.
pub fn certify_roots(
    p: &UniPoly,
    candidates: &[Complex64],
    tol: f64,
) -> Result<Vec<RootCheck>, RootError> {
    if p.is_null() {
        return Err(RootError::NullPolynomial);
    }
    Ok(candidates
        .iter()
        .map(|&candidate| {
            let residual = p.eval(candidate).norm();
            let bound = certification_bound(p, candidate, tol);
            RootCheck {
                candidate,
                residual,
                bound,
                pass: residual <= bound,
            }
        })
        .collect())
}

/// The monic cubic with roots `a ± bi` and `c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl CubicSpec {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, RootError> {
        if b == 0.0 {
            return Err(RootError::RealRootsOnly);
        }
        Ok(CubicSpec { a, b, c })
    }

    pub fn roots(&self) -> [Complex64; 3] {
        [
            Complex64::new(self.a, self.b),
            Complex64::new(self.a, -self.b),
            Complex64::new(self.c, 0.0),
        ]
    }

    /// `(z - c)((z - a)^2 + b^2)` expanded.
    pub fn polynomial(&self) -> UniPoly {
        let CubicSpec { a, b, c } = *self;
        UniPoly::from_real(&[
            -c * (a * a + b * b),
            a * a + b * b + 2.0 * a * c,
            -(2.0 * a + c),
            1.0,
        ])
    }

    /// `3z^2 - (4a + 2c) z + a^2 + b^2 + 2ac`.
    pub fn derivative(&self) -> UniPoly {
        let CubicSpec { a, b, c } = *self;
        UniPoly::from_real(&[a * a + b * b + 2.0 * a * c, -(4.0 * a + 2.0 * c), 3.0])
    }

    /// `3b^2 - (a - c)^2`; positive exactly in the complex-critical regime.
    pub fn discriminant(&self) -> f64 {
        3.0 * self.b * self.b - (self.a - self.c).powi(2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CriticalRegime {
    /// `3b^2 > (a-c)^2`: a complex-conjugate pair of critical points.
    ComplexCritical,
    /// `3b^2 <= (a-c)^2`: two real critical points (possibly equal).
    RealCritical,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicCritical {
    pub points: [Complex64; 2],
    pub regime: CriticalRegime,
}

/// Closed-form critical points `(2a + c)/3 ± sqrt(3b^2 - (a-c)^2) i / 3`,
/// switching to the real form when the radicand is not positive.
pub fn cubic_derivative_roots(spec: &CubicSpec) -> Result<CubicCritical, RootError> {
    if spec.b == 0.0 {
        return Err(RootError::RealRootsOnly);
    }
    let center = (2.0 * spec.a + spec.c) / 3.0;
    let disc = spec.discriminant();
    if disc > 0.0 {
        let half = disc.sqrt() / 3.0;
        Ok(CubicCritical {
            points: [Complex64::new(center, half), Complex64::new(center, -half)],
            regime: CriticalRegime::ComplexCritical,
        })
    } else {
        let half = (-disc).sqrt() / 3.0;
        Ok(CubicCritical {
            points: [
                Complex64::new(center - half, 0.0),
                Complex64::new(center + half, 0.0),
            ],
            regime: CriticalRegime::RealCritical,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::matched_max_error;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_circle_pair() {
        let rs = roots_all(&UniPoly::from_real(&[1.0, 0.0, 1.0]), 1e-12).unwrap();
        assert!(rs.converged);
        assert!(matched_max_error(&rs.roots, &[c(0.0, 1.0), c(0.0, -1.0)]).unwrap() < 1e-14);
    }

    #[test]
    fn scaled_pair() {
        let rs = roots_all(&UniPoly::from_real(&[1.0, 0.0, 3.0]), 1e-12).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!(matched_max_error(&rs.roots, &[c(0.0, s), c(0.0, -s)]).unwrap() < 1e-14);
        assert!((s - 0.577_350_269_2).abs() < 1e-10);
    }

    #[test]
    fn cubic_from_roots() {
        let expected = [c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)];
        let p = UniPoly::from_roots(&expected);
        let rs = roots_all(&p, 1e-10).unwrap();
        assert!(rs.converged);
        assert!(rs.residuals.iter().all(|&r| r <= 1e-10));
        assert!(matched_max_error(&rs.roots, &expected).unwrap() < 1e-12);
    }

    #[test]
    fn zero_roots_are_split_off() {
        // w^3 (w - 1)
        let p = UniPoly::from_real(&[0.0, 0.0, 0.0, -1.0, 1.0]);
        let rs = roots_all(&p, 1e-12).unwrap();
        assert_eq!(rs.degree(), 4);
        assert_eq!(rs.roots.iter().filter(|r| r.norm() == 0.0).count(), 3);
    }

    #[test]
    fn errors() {
        assert_eq!(
            roots_all(&UniPoly::zero(), 1e-8),
            Err(RootError::NullPolynomial)
        );
        assert_eq!(
            roots_all(&UniPoly::from_real(&[2.0]), 1e-8),
            Err(RootError::Constant)
        );
        assert!(certify_roots(&UniPoly::zero(), &[], 1e-8).is_err());
    }

    #[test]
    fn certify() {
        let p = UniPoly::from_real(&[1.0, 0.0, 1.0]);
        let ok = certify_roots(&p, &[c(0.0, 1.0), c(0.0, -1.0)], 1e-12).unwrap();
        assert!(ok.iter().all(|r| r.pass));
        let bad = certify_roots(&p, &[c(1.0, 0.0)], 1e-12).unwrap();
        assert!(!bad[0].pass);
        assert_eq!(bad[0].residual, 2.0);
    }

    #[test]
    fn multiple_root_cluster_converges() {
        let p = UniPoly::from_roots(&[c(1.0, 0.5); 4]);
        let rs = roots_all(&p, 1e-10).unwrap();
        assert!(rs.converged, "{rs:?}");
        assert!(rs.roots.iter().all(|r| (r - c(1.0, 0.5)).norm() < 1e-3));
    }

    #[test]
    fn cubic_closed_forms() {
        let s = 1.0 / 3f64.sqrt();
        let r = cubic_derivative_roots(&CubicSpec::new(0.0, 1.0, 0.0).unwrap()).unwrap();
        assert_eq!(r.regime, CriticalRegime::ComplexCritical);
        assert!(matched_max_error(&r.points, &[c(0.0, s), c(0.0, -s)]).unwrap() < 1e-15);

        let r = cubic_derivative_roots(&CubicSpec::new(0.0, 1.0, 1.0).unwrap()).unwrap();
        let h = 2f64.sqrt() / 3.0;
        assert!(
            matched_max_error(&r.points, &[c(1.0 / 3.0, h), c(1.0 / 3.0, -h)]).unwrap() < 1e-15
        );

        let spec = CubicSpec::new(0.0, 1.0, 2.0).unwrap();
        let r = cubic_derivative_roots(&spec).unwrap();
        assert_eq!(r.regime, CriticalRegime::RealCritical);
        // quadratic formula on 3z^2 - 4z + 1
        let (qa, qb, qc) = (3.0f64, -4.0f64, 1.0f64);
        let d = (qb * qb - 4.0 * qa * qc).sqrt();
        let oracle = [
            c((-qb - d) / (2.0 * qa), 0.0),
            c((-qb + d) / (2.0 * qa), 0.0),
        ];
        assert!(matched_max_error(&r.points, &oracle).unwrap() < 1e-15);
        let numeric = roots_all(&spec.derivative(), 1e-12).unwrap();
        assert!(matched_max_error(&r.points, &numeric.roots).unwrap() < 1e-12);

        assert_eq!(CubicSpec::new(1.0, 0.0, 2.0), Err(RootError::RealRootsOnly));
    }

    #[test]
    fn cubic_expansions_agree_with_from_roots() {
        let spec = CubicSpec::new(0.3, -1.2, 2.5).unwrap();
        let direct = UniPoly::from_roots(&spec.roots());
        for (x, y) in direct.coeffs().iter().zip(spec.polynomial().coeffs()) {
            assert!((x - y).norm() < 1e-12);
        }
        assert_eq!(spec.polynomial().derivative().coeffs().len(), 3);
        for (x, y) in spec
            .polynomial()
            .derivative()
            .coeffs()
            .iter()
            .zip(spec.derivative().coeffs())
        {
            assert!((x - y).norm() < 1e-12);
        }
    }
}
