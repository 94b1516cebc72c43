//! Seeded random suites over the harness checks.
//!
//! Case `i` of a sweep draws from stream `i` of a ChaCha generator keyed by
//! the sweep seed, so results do not depend on the [`Exec`] mode.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    example1_classify, example1_quadratic, find_section_critical_points, verify_gl_univariate,
    verify_lemma1, verify_theorem1, SectionStatus, Verdict,
};
use crate::exec::Exec;
use crate::geometry::{convex_hull_2d, hull_nesting_check, Point2};
use crate::poly::{MultiPoly, UniPoly};
use crate::roots::CubicSpec;
use crate::stability::{
    mc_falsifier_with, random_stable_poly, univariate_theta_stable, StabilityStatus,
    StabilityVerdict, ThetaVector, DEFAULT_MARGIN_TOL,
};
use crate::HarnessError;

/// Failure descriptions kept per sweep.
pub const MAX_FAILURES_KEPT: usize = 20;

/// Aggregated outcome of a sweep.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepSummary {
    pub cases: usize,
    /// Individual checks (a case may hold several).
    pub checks: usize,
    pub pass: usize,
    pub fail: usize,
    /// Checks outside the premise of the statement: constant sections,
    /// null derivatives, real-critical cubics, coincident roots.
    pub degenerate: usize,
    pub inconclusive: usize,
    /// Smallest signed distance relative to hull diameter, where meaningful.
    pub worst: Option<f64>,
    pub failures: Vec<String>,
}

impl SweepSummary {
    pub fn verdict(&self) -> Verdict {
        if self.fail > 0 {
            Verdict::Fail
        } else if self.inconclusive > 0 || self.pass == 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }

    fn record(&mut self, case: usize, outcome: Outcome) {
        match outcome {
            Outcome::Pass => self.pass += 1,
            Outcome::Degenerate => self.degenerate += 1,
            Outcome::Inconclusive => self.inconclusive += 1,
            Outcome::Fail(msg) => {
                self.fail += 1;
                if self.failures.len() < MAX_FAILURES_KEPT {
                    self.failures.push(format!("case {case}: {msg}"));
                }
            }
            Outcome::Distance(d) => {
                self.worst = Some(self.worst.map_or(d, |w| w.min(d)));
            }
        }
    }

    fn collect(per_case: Vec<Vec<Outcome>>) -> Self {
        let mut s = SweepSummary {
            cases: per_case.len(),
            ..Default::default()
        };
        for (case, outcomes) in per_case.into_iter().enumerate() {
            for o in outcomes {
                s.record(case, o);
            }
        }
        s.checks = s.pass + s.fail + s.degenerate + s.inconclusive;
        s
    }
}

enum Outcome {
    Pass,
    Fail(String),
    Degenerate,
    Inconclusive,
    Distance(f64),
}

fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

fn relative(signed_distance: f64, diameter: f64) -> f64 {
    if diameter > 0.0 {
        signed_distance / diameter
    } else {
        signed_distance
    }
}

fn complex_in_disk<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(lo..=hi), rng.gen_range(-PI..PI))
}

/// Random polynomial of degree 2..=12 with coefficients of modulus at most 10.
pub fn random_univariate<R: Rng>(rng: &mut R) -> UniPoly {
    let degree = rng.gen_range(2..=12);
    let mut coeffs: Vec<Complex64> = (0..degree)
        .map(|_| complex_in_disk(rng, 0.0, 10.0))
        .collect();
    coeffs.push(complex_in_disk(rng, 0.1, 10.0));
    UniPoly::new(coeffs)
}

/// Classical containment on `n` random polynomials.
pub fn gl_sweep(n: usize, seed: u64, tol: f64, exec: Exec) -> SweepSummary {
    SweepSummary::collect(exec.map(n, |i| {
        let p = random_univariate(&mut case_rng(seed, i));
        match verify_gl_univariate(&p, tol) {
            Ok(r) => {
                let d = relative(r.worst_signed_distance(), r.hull.diameter());
                let o = match r.verdict {
                    Verdict::Pass => Outcome::Pass,
                    Verdict::Fail => Outcome::Fail(format!("critical point outside hull by {d:e}")),
                    Verdict::Inconclusive => Outcome::Inconclusive,
                };
                vec![o, Outcome::Distance(d)]
            }
            Err(e) => vec![Outcome::Fail(e.to_string())],
        }
    }))
}

/// One case of the section-witness suite: a polynomial in `M ∈ {2,3,4}`
/// variables of total degree at most 5 whose `k`-th partial is non-null, and
/// the coordinates fixed off slot `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionCase {
    pub p: MultiPoly,
    pub k: usize,
    pub others: Vec<Complex64>,
}

pub fn random_section_case<R: Rng>(rng: &mut R) -> SectionCase {
    let m = rng.gen_range(2..=4);
    let k = rng.gen_range(1..=m);
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(2..=7) {
        let total = rng.gen_range(0..=5u32);
        let mut e = vec![0u32; m];
        for _ in 0..total {
            e[rng.gen_range(0..m)] += 1;
        }
        terms.push((e, complex_in_disk(rng, 0.1, 3.0)));
    }
    let mut forced = vec![0u32; m];
    forced[k - 1] = rng.gen_range(1..=5);
    terms.push((forced, complex_in_disk(rng, 0.1, 3.0)));
    let p = MultiPoly::from_terms(m, terms).expect("terms fit the variable count");
    let others = (0..m - 1)
        .map(|_| {
            if rng.gen_bool(0.15) {
                Complex64::default()
            } else {
                Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
            }
        })
        .collect();
    SectionCase { p, k, others }
}

fn section_outcomes(case: &SectionCase, tol: f64) -> Result<Vec<Outcome>, HarnessError> {
    let found = find_section_critical_points(&case.p, case.k, &case.others, tol)?;
    if found.degenerate || (found.points.is_empty() && found.uncertified.is_empty()) {
        return Ok(vec![Outcome::Degenerate]);
    }
    let mut out: Vec<Outcome> = found
        .uncertified
        .iter()
        .map(|_| Outcome::Inconclusive)
        .collect();
    if !found.converged {
        out.push(Outcome::Inconclusive);
    }
    for z in &found.points {
        let r = match verify_theorem1(&case.p, case.k, z, tol) {
            Ok(r) => r,
            Err(HarnessError::NotCritical { .. }) => {
                out.push(Outcome::Inconclusive);
                continue;
            }
            Err(e) => return Err(e),
        };
        out.push(match r.status {
            SectionStatus::Pass => Outcome::Pass,
            SectionStatus::Degenerate => Outcome::Degenerate,
            SectionStatus::Inconclusive => Outcome::Inconclusive,
            SectionStatus::Fail => Outcome::Fail(format!("z = {z:?} outside the section hull")),
        });
        if let Some(w) = &r.witness {
            out.push(Outcome::Distance(relative(
                w.verdict.signed_distance,
                w.hull.diameter(),
            )));
        }
    }
    Ok(out)
}

/// Section witnesses for every critical point found on `n` random sections.
pub fn theorem1_sweep(n: usize, seed: u64, tol: f64, exec: Exec) -> SweepSummary {
    SweepSummary::collect(exec.map(n, |i| {
        let case = random_section_case(&mut case_rng(seed, i));
        section_outcomes(&case, tol).unwrap_or_else(|e| vec![Outcome::Fail(e.to_string())])
    }))
}

/// One stable polynomial of the derivative-stability suite.
#[derive(Clone, Debug, PartialEq)]
pub struct StableCase {
    pub p: MultiPoly,
    pub theta: ThetaVector,
    pub falsifier_seed: u64,
}

/// `M ≤ 3`, degree ≤ 5; even cases use `θ = 0`, odd cases a random `θ`.
pub fn random_stable_case<R: Rng>(rng: &mut R, case: usize) -> StableCase {
    let m = rng.gen_range(1..=3);
    let degree = rng.gen_range(1..=5);
    let theta = if case.is_multiple_of(2) {
        ThetaVector::zeros(m)
    } else {
        ThetaVector::new((0..m).map(|_| rng.gen_range(-PI..PI)).collect()).expect("finite angles")
    };
    let poly_seed = rng.gen();
    let p = random_stable_poly(m, degree, &theta, poly_seed).expect("positive shape");
    StableCase {
        p,
        theta,
        falsifier_seed: rng.gen(),
    }
}

fn stability_of(
    p: &MultiPoly,
    case: &StableCase,
    trials: u64,
) -> Result<StabilityVerdict, HarnessError> {
    if p.num_vars() == 1 {
        let angle = case.theta.angles()[0];
        return Ok(univariate_theta_stable(
            &p.to_univariate()?,
            angle,
            DEFAULT_MARGIN_TOL,
        )?);
    }
    Ok(mc_falsifier_with(
        p,
        &case.theta,
        trials,
        case.falsifier_seed,
        DEFAULT_MARGIN_TOL,
        Exec::Sequential,
    )?)
}

fn stable_outcomes(case: &StableCase, trials: u64) -> Result<Vec<Outcome>, HarnessError> {
    let pv = stability_of(&case.p, case, trials)?;
    if pv.status == StabilityStatus::Counterexample {
        return Ok(vec![Outcome::Fail(format!(
            "generated polynomial has a zero at {:?}",
            pv.witness
        ))]);
    }
    let mut out = Vec::new();
    for k in 1..=case.p.num_vars() {
        let q = case.p.partial_derivative(k)?;
        if q.is_null() {
            out.push(Outcome::Degenerate);
            continue;
        }
        let v = stability_of(&q, case, trials)?;
        out.push(match v.status {
            StabilityStatus::Counterexample => {
                Outcome::Fail(format!("partial {k} vanishes at {:?}", v.witness))
            }
            _ => Outcome::Pass,
        });
    }
    Ok(out)
}

/// Falsification of every partial derivative of `n` generated stable
/// polynomials, `trials` lines each.
pub fn theorem2_sweep(n: usize, seed: u64, trials: u64, exec: Exec) -> SweepSummary {
    SweepSummary::collect(exec.map(n, |i| {
        let case = random_stable_case(&mut case_rng(seed, i), i);
        stable_outcomes(&case, trials).unwrap_or_else(|e| vec![Outcome::Fail(e.to_string())])
    }))
}

/// Midpoint convexity of `configs` random sections, `samples` pairs each.
/// Each configuration is one check.
pub fn lemma1_sweep(configs: usize, samples: usize, seed: u64, exec: Exec) -> SweepSummary {
    SweepSummary::collect(exec.map(configs, |i| {
        let mut rng = case_rng(seed, i);
        let m = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=m);
        let theta = ThetaVector::new((0..m).map(|_| rng.gen_range(-PI..PI)).collect())
            .expect("finite angles");
        let fixed: Vec<Complex64> = (0..m - 1)
            .map(|_| Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
            .collect();
        match verify_lemma1(&theta, k, &fixed, samples, rng.gen()) {
            Ok(r) if r.pass() => vec![Outcome::Pass],
            Ok(r) => vec![Outcome::Fail(format!(
                "{} midpoint violations, {} predicate disagreements",
                r.midpoint_violations, r.predicate_disagreements
            ))],
            Err(e) => vec![Outcome::Fail(e.to_string())],
        }
    }))
}

/// `points` evenly spaced values on `[lo, hi]`.
fn grid_axis(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}

/// The cubic classification over `a, c ∈ [-1, 1]`, `b ∈ [0.1, 2]`. Grid
/// points in the real-critical regime count as degenerate.
pub fn example1_grid(points: usize, tol: f64, exec: Exec) -> SweepSummary {
    let ac = grid_axis(-1.0, 1.0, points);
    let bs = grid_axis(0.1, 2.0, points);
    SweepSummary::collect(exec.map(points * points * points, |i| {
        let (a, b, c) = (
            ac[i / (points * points)],
            bs[i / points % points],
            ac[i % points],
        );
        let r = match CubicSpec::new(a, b, c)
            .map_err(HarnessError::from)
            .and_then(|s| example1_classify(&s, tol))
        {
            Ok(r) => r,
            Err(e) => return vec![Outcome::Fail(e.to_string())],
        };
        vec![if !r.within_premise {
            Outcome::Degenerate
        } else if r.paper_iff_holds {
            Outcome::Pass
        } else {
            Outcome::Fail(format!(
                "(a, b, c) = ({a}, {b}, {c}): contained = {}, aligned = {}",
                r.contained, r.axis_aligned_roots
            ))
        }]
    }))
}

/// Quadratic containment against axis alignment. Half the pairs share a real
/// or imaginary part.
pub fn quadratic_sweep(n: usize, seed: u64, tol: f64, exec: Exec) -> SweepSummary {
    SweepSummary::collect(exec.map(n, |i| {
        let mut rng = case_rng(seed, i);
        let r1 = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let mut r2 = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        match i % 4 {
            0 => r2.re = r1.re,
            1 => r2.im = r1.im,
            _ => {}
        }
        match example1_quadratic(r1, r2, tol) {
            Ok(r) if r.degenerate => vec![Outcome::Degenerate],
            Ok(r) if r.paper_iff_holds && (r.components == 1) == r.aligned => vec![Outcome::Pass],
            Ok(r) => vec![Outcome::Fail(format!(
                "{r1} / {r2}: contained = {}, aligned = {}, components = {}",
                r.contained, r.aligned, r.components
            ))],
            Err(e) => vec![Outcome::Fail(e.to_string())],
        }
    }))
}

/// Nesting of the rectilinear hull in the convex hull for random planar sets
/// of 1..=10 points; even cases use integer points of a 6×6 lattice.
pub fn nesting_sweep(n: usize, seed: u64, tol: f64, exec: Exec) -> SweepSummary {
    SweepSummary::collect(exec.map(n, |i| {
        let mut rng = case_rng(seed, i);
        let size = rng.gen_range(1..=10);
        let points: Vec<Point2> = (0..size)
            .map(|_| {
                if i % 2 == 0 {
                    Point2::new(rng.gen_range(0..6) as f64, rng.gen_range(0..6) as f64)
                } else {
                    Point2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0))
                }
            })
            .collect();
        let diameter = convex_hull_2d(&points).map_or(0.0, |h| h.diameter());
        match hull_nesting_check(&points, tol) {
            Ok(r) if r.pass => vec![
                Outcome::Pass,
                Outcome::Distance(relative(r.worst_signed_distance, diameter)),
            ],
            Ok(r) => vec![Outcome::Fail(format!(
                "corner outside hull by {:e}",
                r.worst_signed_distance
            ))],
            Err(e) => vec![Outcome::Fail(e.to_string())],
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::DEFAULT_TOL;

    #[test]
    fn small_sweeps_pass() {
        let exec = Exec::Sequential;
        for s in [
            gl_sweep(50, 1, DEFAULT_TOL, exec),
            theorem1_sweep(50, 2, DEFAULT_TOL, exec),
            lemma1_sweep(5, 200, 3, exec),
            quadratic_sweep(40, 4, DEFAULT_TOL, exec),
            nesting_sweep(40, 5, DEFAULT_TOL, exec),
            theorem2_sweep(4, 6, 200, exec),
        ] {
            assert_eq!(s.verdict(), Verdict::Pass, "{s:?}");
        }
    }

    #[test]
    fn grid_tallies_regimes() {
        let s = example1_grid(5, DEFAULT_TOL, Exec::Sequential);
        assert_eq!(s.cases, 125);
        assert_eq!(s.fail, 0, "{s:?}");
        assert!(s.degenerate > 0 && s.pass > 0);
        assert_eq!(s.pass + s.degenerate, 125);
    }

    #[test]
    fn modes_agree() {
        let a = theorem1_sweep(30, 9, DEFAULT_TOL, Exec::Sequential);
        let b = theorem1_sweep(30, 9, DEFAULT_TOL, Exec::default());
        assert_eq!(a, b);
    }
}
