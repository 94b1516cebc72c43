//! θ-stability: the open region `A(θ) = {z : Im(e^{iθ_k} z_k) > 0 ∀k}`,
//! exact univariate checks, a seeded Monte Carlo falsifier for several
//! variables, and a generator of polynomials that are θ-stable by
//! construction.
//!
//! Substituting `z_k = e^{-iθ_k} u_k` maps `A(θ)` onto the product of open
//! upper half-planes, so all searches run in rotated coordinates.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exec::Exec;
use crate::poly::{ensure_finite_slice, MultiPoly, UniPoly, RESTRICT_DEAD_COEFF};
use crate::roots::roots_all;
use crate::{PolyError, RootError};

/// Margin factor: a root `t` counts as inside the open upper half-plane only
/// when `Im t > tol (1 + |t|)`.
pub const DEFAULT_MARGIN_TOL: f64 = 1e-8;
/// Relative residual bound for a certified counterexample.
pub const WITNESS_TOL: f64 = 1e-8;
/// Residual tolerance handed to the root finder for line restrictions.
pub const LINE_ROOT_TOL: f64 = 1e-9;
/// Cap on heavy-tailed sample magnitudes.
pub const SAMPLE_CAP: f64 = 1e6;
const DIRECTION_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("stability of the null polynomial is not defined")]
    NullPolynomial,
    #[error("at least one trial is required")]
    NoTrials,
    #[error("degree and variable count must be positive")]
    EmptyShape,
}

/// Rotation angles `θ = (θ_1, .., θ_M)` in radians.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaVector(Vec<f64>);

impl ThetaVector {
    pub fn new(angles: Vec<f64>) -> Result<Self, PolyError> {
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(PolyError::NonFinite);
        }
        Ok(ThetaVector(angles))
    }

    pub fn zeros(m: usize) -> Self {
        ThetaVector(vec![0.0; m])
    }

    pub fn angles(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check_len(&self, m: usize) -> Result<(), PolyError> {
        if self.0.len() != m {
            return Err(PolyError::DimensionMismatch {
                expected: m,
                found: self.0.len(),
            });
        }
        Ok(())
    }

    /// `e^{-iθ} ∘ u`.
    pub fn unrotate(&self, u: &[Complex64]) -> Vec<Complex64> {
        u.iter()
            .zip(&self.0)
            .map(|(&uk, &t)| Complex64::from_polar(1.0, -t) * uk)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilityStatus {
    /// Proven free of zeros in the region (univariate only).
    StableCertified,
    /// Sampling found nothing; evidence, not proof.
    NoCounterexampleFound,
    /// A certified zero inside the region was found.
    Counterexample,
}

impl StabilityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            StabilityStatus::StableCertified => "stable-certified",
            StabilityStatus::NoCounterexampleFound => "no-counterexample-found",
            StabilityStatus::Counterexample => "counterexample",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    /// Point of `A(θ)` where the polynomial (nearly) vanishes.
    pub witness: Option<Vec<Complex64>>,
    /// `|P(witness)|`.
    pub residual: Option<f64>,
    /// Trials consumed; for a counterexample, the index of the winning trial
    /// plus one.
    pub trials_run: u64,
    pub seed: u64,
}

/// `true` iff `Im(e^{iθ_k} z_k) > 0` for every `k`.
pub fn in_region(theta: &ThetaVector, z: &[Complex64]) -> Result<bool, PolyError> {
    theta.check_len(z.len())?;
    ensure_finite_slice(z)?;
    Ok(z.iter()
        .zip(&theta.0)
        .all(|(&zk, &t)| (Complex64::from_polar(1.0, t) * zk).im > 0.0))
}

/// `q(u) = P(e^{-iθ} ∘ u)`: multiplies every term by `Π e^{-iθ_k e_k}`.
pub fn rotate_coords(p: &MultiPoly, theta: &ThetaVector) -> Result<MultiPoly, PolyError> {
    theta.check_len(p.num_vars())?;
    Ok(p.map_coefficients(|m, c| {
        let angle: f64 = m
            .exponents()
            .iter()
            .zip(&theta.0)
            .map(|(&e, &t)| -t * e as f64)
            .sum();
        c * Complex64::from_polar(1.0, angle)
    }))
}

/// Residual bound for a counterexample `z`: `WITNESS_TOL · scale ·
/// max(1, ‖z‖∞)^deg`.
pub fn witness_bound(p: &MultiPoly, z: &[Complex64]) -> f64 {
    let radius = z.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let degree = p.total_degree().unwrap_or(0) as i32;
    WITNESS_TOL * p.coeff_scale() * radius.powi(degree)
}

/// Rounding allowance per unit of degree in [`zero_enclosure_radius`].
const EVAL_SLACK: f64 = 64.0 * f64::EPSILON;

/// Radius of a disk around `s = 0` that contains a zero of `s ↦ p(z + s w)`,
/// where `w` is given in rotated coordinates (`z`-direction `e^{-iθ} ∘ w`).
/// A polynomial of degree `n` has a zero within `n |g(0) / g'(0)|` of `0`;
/// both values are widened by a rounding allowance. Infinite when the
/// directional derivative cannot be bounded away from zero.
fn zero_enclosure_radius(
    p: &MultiPoly,
    partials: &[MultiPoly],
    theta: &ThetaVector,
    z: &[Complex64],
    w: &[f64],
) -> f64 {
    let n = p.total_degree().unwrap_or(0) as f64;
    let slack = EVAL_SLACK * (n + z.len() as f64 + 1.0);
    let (Ok(value), Ok(value_abs)) = (p.evaluate(z), p.evaluate_abs(z)) else {
        return f64::INFINITY;
    };
    let mut deriv = Complex64::default();
    let mut deriv_abs = 0.0;
    for ((q, &wk), &t) in partials.iter().zip(w).zip(theta.angles()) {
        if wk == 0.0 {
            continue;
        }
        let (Ok(dq), Ok(dq_abs)) = (q.evaluate(z), q.evaluate_abs(z)) else {
            return f64::INFINITY;
        };
        deriv += Complex64::from_polar(wk, -t) * dq;
        deriv_abs += wk * dq_abs;
    }
    let lower = deriv.norm() - slack * deriv_abs;
    if lower <= 0.0 {
        return f64::INFINITY;
    }
    n * (value.norm() + slack * value_abs) / lower
}

/// Re-checks a claimed counterexample independently of how it was found.
/// Requires strict membership in `A(θ)`, a small residual, and a zero
/// enclosure that stays inside `A(θ)`: along the all-ones direction or one
/// coordinate axis (in rotated coordinates), the disk guaranteed to hold a
/// zero must not reach the boundary. Returns the residual.
pub fn certify_witness(p: &MultiPoly, theta: &ThetaVector, z: &[Complex64]) -> Option<f64> {
    if !in_region(theta, z).ok()? {
        return None;
    }
    let residual = p.evaluate(z).ok()?.norm();
    if residual > witness_bound(p, z) {
        return None;
    }
    let m = z.len();
    let depth: Vec<f64> = z
        .iter()
        .zip(theta.angles())
        .map(|(&zk, &t)| (Complex64::from_polar(1.0, t) * zk).im - 4.0 * f64::EPSILON * zk.norm())
        .collect();
    let partials: Vec<MultiPoly> = (1..=m)
        .map(|k| p.partial_derivative(k))
        .collect::<Result<_, _>>()
        .ok()?;
    let mut directions = vec![vec![1.0; m]];
    directions.extend((0..m).map(|k| {
        let mut e = vec![0.0; m];
        e[k] = 1.0;
        e
    }));
    directions
        .iter()
        .any(|w| {
            let room = depth
                .iter()
                .zip(w)
                .filter(|(_, &wk)| wk > 0.0)
                .map(|(&d, &wk)| d / wk)
                .fold(f64::INFINITY, f64::min);
            zero_enclosure_radius(p, &partials, theta, z, w) < room
        })
        .then_some(residual)
}

/// Exact stability test of a univariate polynomial via its roots.
pub fn univariate_theta_stable(
    p: &UniPoly,
    theta: f64,
    tol: f64,
) -> Result<StabilityVerdict, StabilityError> {
    if p.is_null() {
        return Err(StabilityError::NullPolynomial);
    }
    let mut verdict = StabilityVerdict {
        status: StabilityStatus::StableCertified,
        witness: None,
        residual: None,
        trials_run: 0,
        seed: 0,
    };
    if p.is_constant() {
        return Ok(verdict);
    }
    let rs = roots_all(p, LINE_ROOT_TOL)?;
    let rot = Complex64::from_polar(1.0, theta);
    let multi = MultiPoly::from(p);
    let angle = ThetaVector(vec![theta]);
    if let Some((r, res)) = rs
        .roots
        .iter()
        .filter(|&&r| (rot * r).im > tol * (1.0 + r.norm()))
        .find_map(|&r| certify_witness(&multi, &angle, &[r]).map(|res| (r, res)))
    {
        verdict.status = StabilityStatus::Counterexample;
        verdict.witness = Some(vec![r]);
        verdict.residual = Some(res);
    }
    Ok(verdict)
}

/// `g(t) = q(x + t v)` by binomial expansion of every monomial, with
/// cancelled leading coefficients dropped as in [`MultiPoly::restrict`].
pub fn line_restriction(q: &MultiPoly, x: &[f64], v: &[f64]) -> UniPoly {
    let degree = q.total_degree().unwrap_or(0) as usize;
    let mut acc = vec![Complex64::default(); degree + 1];
    for (m, &c) in q.terms() {
        let mut term = UniPoly::new(vec![c]);
        for (k, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = term.mul(&binomial_power(x[k], v[k], e));
            }
        }
        for (slot, &t) in acc.iter_mut().zip(term.coeffs()) {
            *slot += t;
        }
    }
    let largest = acc.iter().map(|c| c.norm()).fold(0.0, f64::max);
    while acc
        .last()
        .is_some_and(|c| c.norm() <= RESTRICT_DEAD_COEFF * largest)
    {
        acc.pop();
    }
    UniPoly::new(acc)
}

/// Coefficients of `(x + t v)^e` in `t`.
fn binomial_power(x: f64, v: f64, e: u32) -> UniPoly {
    let mut coeffs = Vec::with_capacity(e as usize + 1);
    let mut binom = 1.0;
    for j in 0..=e {
        if j > 0 {
            binom = binom * (e - j + 1) as f64 / j as f64;
        }
        let value = binom * x.powi((e - j) as i32) * v.powi(j as i32);
        coeffs.push(Complex64::new(value, 0.0));
    }
    UniPoly::new(coeffs)
}

/// Heavy-tailed nonnegative sample `1/U - 1`, capped.
fn heavy_tail<R: Rng>(rng: &mut R) -> f64 {
    let u = 1.0 - rng.gen::<f64>();
    (1.0 / u - 1.0).min(SAMPLE_CAP)
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Samples one random line `x + t v` (x real, v strictly positive) and returns
/// a certified zero of `p` inside `A(θ)` found on it, if any.
fn falsifier_trial(
    p: &MultiPoly,
    q: &MultiPoly,
    theta: &ThetaVector,
    seed: u64,
    trial: u64,
    tol: f64,
) -> Option<(Vec<Complex64>, f64)> {
    let m = p.num_vars();
    let mut rng = trial_rng(seed, trial);
    let x: Vec<f64> = (0..m)
        .map(|_| {
            let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            sign * heavy_tail(&mut rng)
        })
        .collect();
    let v: Vec<f64> = (0..m)
        .map(|_| heavy_tail(&mut rng).max(DIRECTION_FLOOR))
        .collect();
    let g = line_restriction(q, &x, &v);
    let lift = |t: Complex64| -> Vec<Complex64> {
        let u: Vec<Complex64> = x.iter().zip(&v).map(|(&xk, &vk)| xk + t * vk).collect();
        theta.unrotate(&u)
    };
    if g.is_null() {
        // q vanishes on the whole line, including the point t = i
        let z = lift(Complex64::new(0.0, 1.0));
        return certify_witness(p, theta, &z).map(|r| (z, r));
    }
    if g.is_constant() {
        return None;
    }
    let rs = roots_all(&g, LINE_ROOT_TOL).ok()?;
    rs.roots
        .iter()
        .filter(|t| t.im > tol * (1.0 + t.norm()))
        .find_map(|&t| {
            let z = lift(t);
            certify_witness(p, theta, &z).map(|r| (z, r))
        })
}

/// Monte Carlo search for a zero of `p` in `A(θ)` using the default
/// execution strategy.
pub fn mc_falsifier(
    p: &MultiPoly,
    theta: &ThetaVector,
    trials: u64,
    seed: u64,
    tol: f64,
) -> Result<StabilityVerdict, StabilityError> {
    mc_falsifier_with(p, theta, trials, seed, tol, Exec::default())
}

/// Monte Carlo search for a zero of `p` in `A(θ)`.
///
/// Each trial draws a line through the product of upper half-planes (in
/// rotated coordinates) and solves for its zeros in closed form. Trial `i`
/// uses stream `i` of a ChaCha generator keyed by `seed`, and the
/// lowest-index counterexample wins, so the verdict does not depend on
/// `exec`. Never returns [`StabilityStatus::StableCertified`].
pub fn mc_falsifier_with(
    p: &MultiPoly,
    theta: &ThetaVector,
    trials: u64,
    seed: u64,
    tol: f64,
    exec: Exec,
) -> Result<StabilityVerdict, StabilityError> {
    if p.is_null() {
        return Err(StabilityError::NullPolynomial);
    }
    if trials == 0 {
        return Err(StabilityError::NoTrials);
    }
    let q = rotate_coords(p, theta)?;
    let found = exec.find_map_first(trials, |t| {
        falsifier_trial(p, &q, theta, seed, t, tol).map(|(z, r)| (t, z, r))
    });
    Ok(match found {
        Some((t, z, r)) => StabilityVerdict {
            status: StabilityStatus::Counterexample,
            witness: Some(z),
            residual: Some(r),
            trials_run: t + 1,
            seed,
        },
        None => StabilityVerdict {
            status: StabilityStatus::NoCounterexampleFound,
            witness: None,
            residual: None,
            trials_run: trials,
            seed,
        },
    })
}

/// One affine factor `b + Σ a_k u_k` in rotated coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct StableFactor {
    pub weights: Vec<f64>,
    pub offset: Complex64,
}

impl StableFactor {
    /// The factor as a polynomial in the original coordinates `z`, where
    /// `u_k = e^{iθ_k} z_k`.
    pub fn to_poly(&self, theta: &ThetaVector) -> MultiPoly {
        let m = self.weights.len();
        let terms = self
            .weights
            .iter()
            .zip(theta.angles())
            .enumerate()
            .filter(|(_, (&a, _))| a != 0.0)
            .map(|(k, (&a, &t))| {
                let mut e = vec![0; m];
                e[k] = 1;
                (e, Complex64::from_polar(a, t))
            })
            .chain(std::iter::once((vec![0; m], self.offset)));
        MultiPoly::from_terms(m, terms).expect("factor terms are well formed")
    }
}

/// Factors used by [`random_stable_poly`]: nonnegative weights with at least
/// one positive, and an offset in the closed upper half-plane.
pub fn random_stable_factors(m: usize, degree: usize, seed: u64) -> Vec<StableFactor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..degree)
        .map(|_| {
            let mut weights: Vec<f64> = (0..m)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        0.0
                    } else {
                        rng.gen_range(0.1..2.0)
                    }
                })
                .collect();
            if weights.iter().all(|&a| a == 0.0) {
                let k = rng.gen_range(0..m);
                weights[k] = rng.gen_range(0.1..2.0);
            }
            let offset = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.0..1.0));
            StableFactor { weights, offset }
        })
        .collect()
}

/// A θ-stable polynomial: a product of `degree` affine factors, each
/// nonvanishing on `A(θ)`.
pub fn random_stable_poly(
    m: usize,
    degree: usize,
    theta: &ThetaVector,
    seed: u64,
) -> Result<MultiPoly, StabilityError> {
    if m == 0 || degree == 0 {
        return Err(StabilityError::EmptyShape);
    }
    theta.check_len(m)?;
    let mut p = MultiPoly::constant(m, Complex64::new(1.0, 0.0));
    for factor in random_stable_factors(m, degree, seed) {
        p = p.mul(&factor.to_poly(theta))?;
    }
    Ok(p)
}
