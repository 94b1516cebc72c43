//! Instance-level verification of the containment and stability results.
//!
//! Each check reports a tri-state [`Verdict`]; sections on which the
//! one-variable restriction degenerates to a constant are tallied apart from
//! passes and failures.

mod example1;
mod gauss_lucas;
mod lemma1;
mod section;
pub mod sweep;
mod theorem2;

pub use example1::{example1_classify, example1_quadratic, Example1Report, QuadraticReport};
pub use gauss_lucas::{verify_gl_univariate, GlReport};
pub use lemma1::{lemma1_section, verify_lemma1, Lemma1Report, Lemma1Section, PREDICATE_POINTS};
pub use section::{
    find_section_critical_points, verify_theorem1, SectionCriticalPoints, SectionStatus,
    SectionWitness, Theorem1Report,
};
pub use theorem2::{verify_theorem2, verify_theorem2_with, Theorem2Report, Theorem2Status};

/// Containment tolerance, relative to the hull diameter.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Residual tolerance passed to the root finder inside the harness.
pub const ROOT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// The numerics could not settle the question (e.g. unconverged roots).
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}
