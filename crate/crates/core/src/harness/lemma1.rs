//! Sections of the complement of `A(θ)` and their convexity.
//!
//! Fixing every coordinate but the `k`-th, `w = x + iy` lies in the section of
//! `A(θ)^c` iff `min(x sinθ_k + y cosθ_k, c) ≤ 0`, where `c` is the minimum of
//! `Im(e^{iθ_j} z_j)` over the fixed coordinates. For `c ≤ 0` that is the whole
//! plane, otherwise a closed half-plane.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::insert_coordinate;
use crate::stability::{in_region, ThetaVector};
use crate::{HarnessError, PolyError};

/// Random points used for the predicate cross-check.
pub const PREDICATE_POINTS: usize = 10_000;
const SAMPLE_BOX: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lemma1Section {
    pub theta_k: f64,
    /// `None` when there are no other coordinates (`c = +∞`).
    pub c: Option<f64>,
}

impl Lemma1Section {
    /// `Im(e^{iθ_k} w)`, computed exactly as the region test does.
    fn rotated_im(&self, w: Complex64) -> f64 {
        (Complex64::from_polar(1.0, self.theta_k) * w).im
    }

    pub fn contains(&self, w: Complex64) -> bool {
        let lin = self.rotated_im(w);
        match self.c {
            Some(c) => lin.min(c) <= 0.0,
            None => lin <= 0.0,
        }
    }

    /// The section is the whole plane.
    pub fn is_plane(&self) -> bool {
        self.c.is_some_and(|c| c <= 0.0)
    }
}

/// Section of `A(θ)^c` through the coordinates `fixed` (all but the `k`-th).
pub fn lemma1_section(
    theta: &ThetaVector,
    k: usize,
    fixed: &[Complex64],
) -> Result<Lemma1Section, HarnessError> {
    let m = theta.len();
    if k == 0 || k > m {
        return Err(PolyError::IndexOutOfRange {
            index: k,
            num_vars: m,
        }
        .into());
    }
    if fixed.len() + 1 != m {
        return Err(PolyError::DimensionMismatch {
            expected: m - 1,
            found: fixed.len(),
        }
        .into());
    }
    if fixed.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(PolyError::NonFinite.into());
    }
    let angles = theta.angles();
    let c = fixed
        .iter()
        .zip(angles.iter().enumerate().filter(|(j, _)| j + 1 != k))
        .map(|(&z, (_, &t))| (Complex64::from_polar(1.0, t) * z).im)
        .reduce(f64::min);
    Ok(Lemma1Section {
        theta_k: angles[k - 1],
        c,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma1Report {
    pub section: Lemma1Section,
    pub samples: usize,
    /// Pairs inside the section whose midpoint fell outside.
    pub midpoint_violations: usize,
    pub predicate_points: usize,
    /// Points where the section formula and `!in_region` disagree.
    pub predicate_disagreements: usize,
}

impl Lemma1Report {
    pub fn pass(&self) -> bool {
        self.midpoint_violations == 0 && self.predicate_disagreements == 0
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(
        rng.gen_range(-SAMPLE_BOX..SAMPLE_BOX),
        rng.gen_range(-SAMPLE_BOX..SAMPLE_BOX),
    )
}

/// Draws a point of the section; reflection through the origin flips the sign
/// of the linear form exactly.
fn section_point(section: &Lemma1Section, rng: &mut ChaCha8Rng) -> Complex64 {
    let w = random_point(rng);
    if section.contains(w) {
        w
    } else {
        -w
    }
}

/// Midpoint convexity on `samples` random pairs, plus agreement of the
/// section formula with the region definition on [`PREDICATE_POINTS`] points.
pub fn verify_lemma1(
    theta: &ThetaVector,
    k: usize,
    fixed: &[Complex64],
    samples: usize,
    seed: u64,
) -> Result<Lemma1Report, HarnessError> {
    let section = lemma1_section(theta, k, fixed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut midpoint_violations = 0;
    for _ in 0..samples {
        let a = section_point(&section, &mut rng);
        let b = section_point(&section, &mut rng);
        debug_assert!(section.contains(a) && section.contains(b));
        if !section.contains((a + b) * 0.5) {
            midpoint_violations += 1;
        }
    }
    let mut predicate_disagreements = 0;
    for _ in 0..PREDICATE_POINTS {
        let w = random_point(&mut rng);
        let z = insert_coordinate(fixed, k, w);
        if section.contains(w) == in_region(theta, &z)? {
            predicate_disagreements += 1;
        }
    }
    Ok(Lemma1Report {
        section,
        samples,
        midpoint_violations,
        predicate_points: PREDICATE_POINTS,
        predicate_disagreements,
    })
}
