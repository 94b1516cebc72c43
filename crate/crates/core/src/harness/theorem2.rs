//! Stability of partial derivatives of θ-stable polynomials, checked by
//! falsification.

use crate::exec::Exec;
use crate::poly::MultiPoly;
use crate::stability::{
    mc_falsifier_with, univariate_theta_stable, StabilityError, StabilityStatus, StabilityVerdict,
    ThetaVector, DEFAULT_MARGIN_TOL,
};
use crate::{HarnessError, PolyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem2Status {
    /// No certified zero of `Q_k` in `A(θ)`.
    Pass,
    /// `Q_k` has a certified zero in `A(θ)`.
    Fail,
    /// The input itself has a certified zero in `A(θ)`.
    HypothesisViolated,
    /// `Q_k` is null.
    Skipped,
}

impl Theorem2Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Theorem2Status::Pass => "pass",
            Theorem2Status::Fail => "fail",
            Theorem2Status::HypothesisViolated => "hypothesis-violated",
            Theorem2Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Theorem2Report {
    pub status: Theorem2Status,
    pub k: usize,
    pub p_verdict: StabilityVerdict,
    /// Absent when the hypothesis fails or `Q_k` is null.
    pub derivative_verdict: Option<StabilityVerdict>,
}

/// Univariate inputs are decided exactly from their roots; several variables
/// go through the Monte Carlo falsifier.
fn stability_verdict(
    p: &MultiPoly,
    theta: &ThetaVector,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<StabilityVerdict, StabilityError> {
    if p.num_vars() == 1 {
        let mut v =
            univariate_theta_stable(&p.to_univariate()?, theta.angles()[0], DEFAULT_MARGIN_TOL)?;
        v.seed = seed;
        return Ok(v);
    }
    mc_falsifier_with(p, theta, trials, seed, DEFAULT_MARGIN_TOL, exec)
}

pub fn verify_theorem2(
    p: &MultiPoly,
    theta: &ThetaVector,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<Theorem2Report, HarnessError> {
    verify_theorem2_with(p, theta, k, trials, seed, Exec::default())
}

pub fn verify_theorem2_with(
    p: &MultiPoly,
    theta: &ThetaVector,
    k: usize,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<Theorem2Report, HarnessError> {
    if theta.len() != p.num_vars() {
        return Err(PolyError::DimensionMismatch {
            expected: p.num_vars(),
            found: theta.len(),
        }
        .into());
    }
    let q = p.partial_derivative(k)?;
    let p_verdict = stability_verdict(p, theta, trials, seed, exec)?;
    let mut report = Theorem2Report {
        status: Theorem2Status::HypothesisViolated,
        k,
        p_verdict,
        derivative_verdict: None,
    };
    if report.p_verdict.status == StabilityStatus::Counterexample {
        return Ok(report);
    }
    if q.is_null() {
        report.status = Theorem2Status::Skipped;
        return Ok(report);
    }
    let dv = stability_verdict(&q, theta, trials, seed, exec)?;
    report.status = if dv.status == StabilityStatus::Counterexample {
        Theorem2Status::Fail
    } else {
        Theorem2Status::Pass
    };
    report.derivative_verdict = Some(dv);
    Ok(report)
}
