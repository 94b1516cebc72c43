mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gauss_lucas::geometry::{convex_hull_2d, recti_hull, BoxUnion, Point2};
use gauss_lucas::harness::sweep::{
    example1_grid, gl_sweep, lemma1_sweep, nesting_sweep, quadratic_sweep, theorem1_sweep,
    theorem2_sweep, SweepSummary,
};
use gauss_lucas::harness::{
    example1_classify, example1_quadratic, find_section_critical_points, verify_gl_univariate,
    verify_lemma1, verify_theorem1, verify_theorem2, SectionStatus, Theorem2Status, Verdict,
};
use gauss_lucas::roots::{certify_roots, roots_all, CriticalRegime, CubicSpec};
use gauss_lucas::stability::{StabilityVerdict, ThetaVector};
use gauss_lucas::{format_poly, parse_poly, Complex64, Exec, MultiPoly, UniPoly};
use serde_json::{json, Value};

use report::{complex, points, Counts, Format, Report, Witness};

#[derive(Parser, Debug)]
#[command(
    name = "gausslucas",
    version,
    about = "Check Gauss-Lucas type containment and stability statements on concrete polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Polynomial expression, e.g. "(z1-2)*(z1^2+1)".
    #[arg(
        long,
        global = true,
        conflicts_with = "poly_file",
        allow_hyphen_values = true
    )]
    poly: Option<String>,
    /// File holding one polynomial; '#' starts a comment.
    #[arg(long, global = true)]
    poly_file: Option<PathBuf>,
    /// Comma-separated angles in radians; defaults to all zeros.
    #[arg(long, global = true, allow_hyphen_values = true)]
    theta: Option<String>,
    /// 1-based coordinate index.
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Comma-separated complex constants for the coordinates other than k.
    #[arg(long, global = true, allow_hyphen_values = true)]
    at: Option<String>,
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots of a univariate polynomial.
    Roots,
    /// Convex hull of points, or of the roots of --poly.
    Hull {
        /// Points "x,y;x,y;...".
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
    },
    /// Rectilinear hull of points in any dimension.
    Rectihull {
        /// Points "x1,x2,..;y1,y2,..;...".
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
    },
    /// One-variable restriction of --poly to coordinate --k through --at.
    Restrict,
    /// Partial derivative with respect to --k.
    Diff,
    /// Critical points of a univariate polynomial lie in the hull of its roots.
    CheckGl,
    /// Section witnesses for critical points of the k-th partial.
    CheckT1 {
        /// Full critical point to check instead of searching the section.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Falsifier run on --poly and on its partial derivatives.
    CheckT2,
    /// Convexity of a section of the complement of the stability region.
    CheckLemma1,
    /// Classify the cubic with roots a ± bi and c.
    Example1 {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
    },
    /// Classify the quadratic with roots r1 and r2.
    Example1Quad {
        #[arg(long, allow_hyphen_values = true)]
        r1: String,
        #[arg(long, allow_hyphen_values = true)]
        r2: String,
    },
    /// Run a seeded random suite.
    Sweep {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Cases per suite; each suite has its own default.
        #[arg(long)]
        cases: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Gl,
    T1,
    T2,
    Lemma1,
    Example1,
    Quadratic,
    Nesting,
    All,
}

type CliResult<T> = Result<T, String>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let format = match cli.common.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CliResult<Report> {
    let c = &cli.common;
    match &cli.command {
        Command::Roots => cmd_roots(c),
        Command::Hull { points } => cmd_hull(c, points.as_deref()),
        Command::Rectihull { points } => cmd_rectihull(c, points.as_deref()),
        Command::Restrict => cmd_restrict(c),
        Command::Diff => cmd_diff(c),
        Command::CheckGl => cmd_check_gl(c),
        Command::CheckT1 { point } => cmd_check_t1(c, point.as_deref()),
        Command::CheckT2 => cmd_check_t2(c),
        Command::CheckLemma1 => cmd_check_lemma1(c),
        Command::Example1 { a, b, c: cc } => cmd_example1(c, *a, *b, *cc),
        Command::Example1Quad { r1, r2 } => cmd_example1_quad(c, r1, r2),
        Command::Sweep { suite, cases } => cmd_sweep(c, *suite, *cases),
    }
}

fn read_poly(c: &Common) -> CliResult<MultiPoly> {
    let text = match (&c.poly, &c.poly_file) {
        (Some(t), None) => t.clone(),
        (None, Some(path)) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            raw.lines()
                .map(|l| l.split('#').next().unwrap_or(""))
                .collect::<Vec<_>>()
                .join("\n")
        }
        _ => return Err("exactly one of --poly or --poly-file is required".into()),
    };
    parse_poly(&text, None).map_err(|e| e.to_string())
}

fn read_univariate(c: &Common) -> CliResult<UniPoly> {
    let p = read_poly(c)?;
    if p.num_vars() != 1 {
        return Err(format!(
            "this command needs a polynomial in z1 only, got {} variables",
            p.num_vars()
        ));
    }
    p.to_univariate().map_err(|e| e.to_string())
}

fn parse_complex(text: &str) -> CliResult<Complex64> {
    let p = parse_poly(text, None).map_err(|e| format!("bad complex constant '{text}': {e}"))?;
    if !p.is_constant() {
        return Err(format!("'{text}' is not a constant"));
    }
    Ok(p.coefficient(&vec![0; p.num_vars()]))
}

fn parse_complex_list(text: &str) -> CliResult<Vec<Complex64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| parse_complex(s.trim())).collect()
}

fn parse_reals(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number '{}'", s.trim()))
        })
        .collect()
}

fn parse_points(text: &str) -> CliResult<Vec<Vec<f64>>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(parse_reals)
        .collect()
}

fn theta_for(c: &Common, m: usize) -> CliResult<ThetaVector> {
    match &c.theta {
        None => Ok(ThetaVector::zeros(m)),
        Some(t) => {
            let angles = parse_reals(t)?;
            if angles.len() != m {
                return Err(format!("--theta has {} angles, expected {m}", angles.len()));
            }
            ThetaVector::new(angles).map_err(|e| e.to_string())
        }
    }
}

fn require_k(c: &Common, m: usize) -> CliResult<usize> {
    match c.k {
        Some(k) if (1..=m).contains(&k) => Ok(k),
        Some(k) => Err(format!("--k {k} is out of range 1..={m}")),
        None => Err("--k is required".into()),
    }
}

fn fixed_coords(c: &Common, m: usize) -> CliResult<Vec<Complex64>> {
    let others = parse_complex_list(c.at.as_deref().unwrap_or(""))?;
    if others.len() + 1 != m {
        return Err(format!("--at needs {} values, got {}", m - 1, others.len()));
    }
    Ok(others)
}

fn point2(v: &Point2) -> Value {
    json!([v.x, v.y])
}

fn boxes_json(bu: &BoxUnion) -> Value {
    Value::Array(
        bu.boxes
            .iter()
            .map(|b| json!({"lo": b.lo, "hi": b.hi}))
            .collect(),
    )
}

fn cmd_roots(c: &Common) -> CliResult<Report> {
    let p = read_univariate(c)?;
    let rs = roots_all(&p, c.tol).map_err(|e| e.to_string())?;
    let checks = certify_roots(&p, &rs.roots, c.tol).map_err(|e| e.to_string())?;
    let mut r = Report::new("roots", c.seed, c.tol);
    for ch in &checks {
        if ch.pass {
            r.counts.pass += 1;
        } else {
            r.counts.fail += 1;
            r.witnesses.push(Witness {
                point: vec![ch.candidate],
                residual: Some(ch.residual),
                signed_distance: None,
            });
        }
    }
    r.verdict = if rs.converged && r.counts.fail == 0 {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    r.details = json!({
        "polynomial": format_poly(&MultiPoly::from(&p)),
        "roots": points(&rs.roots),
        "residuals": rs.residuals,
        "converged": rs.converged,
        "iterations": rs.iterations,
    });
    Ok(r)
}

fn cmd_hull(c: &Common, pts: Option<&str>) -> CliResult<Report> {
    let planar: Vec<Point2> = match pts {
        Some(text) => parse_points(text)?
            .into_iter()
            .map(|v| match v.as_slice() {
                [x, y] => Ok(Point2::new(*x, *y)),
                _ => Err("hull points must have two coordinates".to_string()),
            })
            .collect::<CliResult<_>>()?,
        None => {
            let p = read_univariate(c)?;
            let rs = roots_all(&p, c.tol).map_err(|e| e.to_string())?;
            rs.roots.iter().map(|&z| z.into()).collect()
        }
    };
    let hull = convex_hull_2d(&planar).map_err(|e| e.to_string())?;
    let mut r = Report::new("hull", c.seed, c.tol);
    r.details = json!({
        "vertices": hull.vertices().iter().map(point2).collect::<Vec<_>>(),
        "diameter": hull.diameter(),
    });
    Ok(r)
}

fn cmd_rectihull(c: &Common, pts: Option<&str>) -> CliResult<Report> {
    let rows = match pts {
        Some(text) => parse_points(text)?,
        None => {
            let p = read_univariate(c)?;
            let rs = roots_all(&p, c.tol).map_err(|e| e.to_string())?;
            rs.roots.iter().map(|z| vec![z.re, z.im]).collect()
        }
    };
    let dim = rows.first().map_or(0, Vec::len);
    let bu = recti_hull(&rows, dim).map_err(|e| e.to_string())?;
    let mut r = Report::new("rectihull", c.seed, c.tol);
    r.details = json!({
        "dim": dim,
        "boxes": boxes_json(&bu),
        "components": bu.component_count(),
    });
    Ok(r)
}

fn cmd_restrict(c: &Common) -> CliResult<Report> {
    let p = read_poly(c)?;
    let k = require_k(c, p.num_vars())?;
    let others = fixed_coords(c, p.num_vars())?;
    let f = p.restrict(k, &others).map_err(|e| e.to_string())?;
    let mut r = Report::new("restrict", c.seed, c.tol);
    r.details = json!({
        "k": k,
        "at": points(&others),
        "restriction": format_poly(&MultiPoly::from(&f)),
        "coefficients": points(f.coeffs()),
    });
    Ok(r)
}

fn cmd_diff(c: &Common) -> CliResult<Report> {
    let p = read_poly(c)?;
    let k = require_k(c, p.num_vars())?;
    let q = p.partial_derivative(k).map_err(|e| e.to_string())?;
    let mut r = Report::new("diff", c.seed, c.tol);
    r.details = json!({
        "k": k,
        "derivative": format_poly(&q),
        "null": q.is_null(),
    });
    Ok(r)
}

fn cmd_check_gl(c: &Common) -> CliResult<Report> {
    let p = read_univariate(c)?;
    let g = verify_gl_univariate(&p, c.tol).map_err(|e| e.to_string())?;
    let mut r = Report::new("check-gl", c.seed, c.tol);
    r.verdict = g.verdict;
    for (&w, v) in g.critical_points.roots.iter().zip(&g.checks) {
        if v.is_contained() {
            r.counts.pass += 1;
        } else {
            r.counts.fail += 1;
            r.witnesses.push(Witness {
                point: vec![w],
                residual: Some(p.derivative().eval(w).norm()),
                signed_distance: Some(v.signed_distance),
            });
        }
    }
    r.details = json!({
        "roots": points(&g.roots.roots),
        "critical_points": points(&g.critical_points.roots),
        "signed_distances": g.checks.iter().map(|v| v.signed_distance).collect::<Vec<_>>(),
        "hull": g.hull.vertices().iter().map(point2).collect::<Vec<_>>(),
    });
    Ok(r)
}

fn cmd_check_t1(c: &Common, point: Option<&str>) -> CliResult<Report> {
    let p = read_poly(c)?;
    let m = p.num_vars();
    let k = require_k(c, m)?;
    let (candidates, degenerate_section) = match point {
        Some(text) => {
            let z = parse_complex_list(text)?;
            if z.len() != m {
                return Err(format!("--point needs {m} values, got {}", z.len()));
            }
            (vec![z], false)
        }
        None => {
            let others = fixed_coords(c, m)?;
            let found =
                find_section_critical_points(&p, k, &others, c.tol).map_err(|e| e.to_string())?;
            (found.points, found.degenerate)
        }
    };
    let mut r = Report::new("check-t1", c.seed, c.tol);
    let mut inconclusive = 0;
    let mut sections = Vec::new();
    if degenerate_section {
        r.counts.degenerate += 1;
    }
    for z in &candidates {
        let t = verify_theorem1(&p, k, z, c.tol).map_err(|e| e.to_string())?;
        let distance = t.witness.as_ref().map(|w| w.verdict.signed_distance);
        match t.status {
            SectionStatus::Pass => r.counts.pass += 1,
            SectionStatus::Degenerate => r.counts.degenerate += 1,
            SectionStatus::Inconclusive => inconclusive += 1,
            SectionStatus::Fail => {
                r.counts.fail += 1;
                r.witnesses.push(Witness {
                    point: z.clone(),
                    residual: Some(t.critical_residual),
                    signed_distance: distance,
                });
            }
        }
        sections.push(json!({
            "point": points(z),
            "status": t.status.as_str(),
            "restriction": format_poly(&MultiPoly::from(&t.restriction)),
            "roots_of_f": t.witness.as_ref().map(|w| points(&w.roots_of_f.roots)),
            "signed_distance": distance,
        }));
    }
    r.verdict = if r.counts.fail > 0 {
        Verdict::Fail
    } else if inconclusive > 0 || r.counts.pass == 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    r.details = json!({"k": k, "sections": sections});
    Ok(r)
}

fn stability_json(v: &StabilityVerdict) -> Value {
    json!({
        "status": v.status.as_str(),
        "trials_run": v.trials_run,
        "witness": v.witness.as_deref().map(points),
        "residual": v.residual,
    })
}

fn counterexample(v: &StabilityVerdict) -> Option<Witness> {
    v.witness.as_ref().map(|z| Witness {
        point: z.clone(),
        residual: v.residual,
        signed_distance: None,
    })
}

fn cmd_check_t2(c: &Common) -> CliResult<Report> {
    let p = read_poly(c)?;
    let m = p.num_vars();
    let theta = theta_for(c, m)?;
    let ks: Vec<usize> = match c.k {
        Some(_) => vec![require_k(c, m)?],
        None => (1..=m).collect(),
    };
    let mut r = Report::new("check-t2", c.seed, c.tol);
    let mut derivatives = Vec::new();
    let mut hypothesis = None;
    let mut violated = false;
    for &k in &ks {
        let t = verify_theorem2(&p, &theta, k, c.trials, c.seed).map_err(|e| e.to_string())?;
        if hypothesis.is_none() {
            hypothesis = Some(stability_json(&t.p_verdict));
        }
        match t.status {
            Theorem2Status::HypothesisViolated => {
                r.counts.fail += 1;
                r.witnesses.extend(counterexample(&t.p_verdict));
                violated = true;
                break;
            }
            Theorem2Status::Skipped => r.counts.degenerate += 1,
            Theorem2Status::Pass => r.counts.pass += 1,
            Theorem2Status::Fail => {
                r.counts.fail += 1;
                r.witnesses
                    .extend(t.derivative_verdict.as_ref().and_then(counterexample));
            }
        }
        derivatives.push(json!({
            "k": k,
            "status": t.status.as_str(),
            "derivative": t.derivative_verdict.as_ref().map(stability_json),
        }));
    }
    r.verdict = if r.counts.fail > 0 {
        Verdict::Fail
    } else if r.counts.pass == 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    r.details = json!({
        "theta": theta.angles(),
        "trials": c.trials,
        "polynomial": hypothesis,
        "hypothesis_violated": violated,
        "partials": derivatives,
    });
    Ok(r)
}

fn cmd_check_lemma1(c: &Common) -> CliResult<Report> {
    let m = match (&c.theta, &c.at) {
        (Some(t), _) => parse_reals(t)?.len(),
        (None, Some(at)) => parse_complex_list(at)?.len() + 1,
        (None, None) => 1,
    };
    let theta = theta_for(c, m)?;
    let k = require_k(c, m)?;
    let fixed = fixed_coords(c, m)?;
    let samples = usize::try_from(c.trials).map_err(|_| "--trials is too large".to_string())?;
    let l = verify_lemma1(&theta, k, &fixed, samples, c.seed).map_err(|e| e.to_string())?;
    let mut r = Report::new("check-lemma1", c.seed, c.tol);
    if l.pass() {
        r.counts.pass = 1;
    } else {
        r.counts.fail = 1;
        r.verdict = Verdict::Fail;
    }
    r.details = json!({
        "theta": theta.angles(),
        "k": k,
        "c": l.section.c,
        "whole_plane": l.section.is_plane(),
        "samples": l.samples,
        "midpoint_violations": l.midpoint_violations,
        "predicate_points": l.predicate_points,
        "predicate_disagreements": l.predicate_disagreements,
    });
    Ok(r)
}

fn cmd_example1(c: &Common, a: f64, b: f64, cc: f64) -> CliResult<Report> {
    let spec = CubicSpec::new(a, b, cc).map_err(|e| e.to_string())?;
    let e = example1_classify(&spec, c.tol).map_err(|e| e.to_string())?;
    let mut r = Report::new("example1", c.seed, c.tol);
    if !e.within_premise {
        r.counts.degenerate = 1;
        r.verdict = Verdict::Inconclusive;
    } else if e.paper_iff_holds {
        r.counts.pass = 1;
    } else {
        r.counts.fail = 1;
        r.verdict = Verdict::Fail;
        r.witnesses
            .extend(e.critical_points.iter().map(|&w| Witness {
                point: vec![w],
                residual: Some(spec.derivative().eval(w).norm()),
                signed_distance: None,
            }));
    }
    r.details = json!({
        "a": a,
        "b": b,
        "c": cc,
        "regime": match e.regime {
            CriticalRegime::ComplexCritical => "complex-critical",
            CriticalRegime::RealCritical => "real-critical",
        },
        "critical_points": e.critical_points.iter().map(|&w| complex(w)).collect::<Vec<_>>(),
        "h1": boxes_json(&e.h1),
        "contained": e.contained,
        "axis_aligned_roots": e.axis_aligned_roots,
        "paper_iff_holds": e.paper_iff_holds,
        "within_premise": e.within_premise,
    });
    Ok(r)
}

fn cmd_example1_quad(c: &Common, r1: &str, r2: &str) -> CliResult<Report> {
    let (r1, r2) = (parse_complex(r1)?, parse_complex(r2)?);
    let q = example1_quadratic(r1, r2, c.tol).map_err(|e| e.to_string())?;
    let mut r = Report::new("example1-quad", c.seed, c.tol);
    if q.degenerate {
        r.counts.degenerate = 1;
    } else if q.paper_iff_holds {
        r.counts.pass = 1;
    } else {
        r.counts.fail = 1;
        r.verdict = Verdict::Fail;
        r.witnesses.push(Witness {
            point: vec![q.midpoint],
            residual: None,
            signed_distance: None,
        });
    }
    r.details = json!({
        "roots": points(&q.roots),
        "midpoint": complex(q.midpoint),
        "h1": boxes_json(&q.h1),
        "contained": q.contained,
        "aligned": q.aligned,
        "components": q.components,
        "paper_iff_holds": q.paper_iff_holds,
        "degenerate": q.degenerate,
    });
    Ok(r)
}

fn summary_json(s: &SweepSummary) -> Value {
    json!({
        "cases": s.cases,
        "checks": s.checks,
        "pass": s.pass,
        "fail": s.fail,
        "degenerate": s.degenerate,
        "inconclusive": s.inconclusive,
        "verdict": s.verdict().as_str(),
        "worst_relative_distance": s.worst,
        "failures": s.failures,
    })
}

fn cmd_sweep(c: &Common, suite: Suite, cases: Option<usize>) -> CliResult<Report> {
    let exec = Exec::default();
    let n = |default: usize| cases.unwrap_or(default);
    let run_one = |s: Suite| -> SweepSummary {
        match s {
            Suite::Gl => gl_sweep(n(1000), c.seed, c.tol, exec),
            Suite::T1 => theorem1_sweep(n(500), c.seed, c.tol, exec),
            Suite::T2 => theorem2_sweep(n(200), c.seed, c.trials, exec),
            Suite::Lemma1 => lemma1_sweep(n(100), 1000, c.seed, exec),
            Suite::Example1 => example1_grid(n(21), c.tol, exec),
            Suite::Quadratic => quadratic_sweep(n(1000), c.seed, c.tol, exec),
            Suite::Nesting => nesting_sweep(n(1000), c.seed, c.tol, exec),
            Suite::All => unreachable!("expanded below"),
        }
    };
    let suites: Vec<Suite> = if suite == Suite::All {
        vec![
            Suite::Gl,
            Suite::T1,
            Suite::T2,
            Suite::Lemma1,
            Suite::Example1,
            Suite::Quadratic,
            Suite::Nesting,
        ]
    } else {
        vec![suite]
    };
    let mut r = Report::new("sweep", c.seed, c.tol);
    let mut details = serde_json::Map::new();
    let mut verdicts = Vec::new();
    for s in suites {
        let summary = run_one(s);
        r.counts = Counts {
            pass: r.counts.pass + summary.pass,
            fail: r.counts.fail + summary.fail,
            degenerate: r.counts.degenerate + summary.degenerate,
        };
        verdicts.push(summary.verdict());
        let name = s
            .to_possible_value()
            .expect("named suite")
            .get_name()
            .to_string();
        details.insert(name, summary_json(&summary));
    }
    r.verdict = if verdicts.contains(&Verdict::Fail) {
        Verdict::Fail
    } else if verdicts.contains(&Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    details.insert("trials".into(), json!(c.trials));
    r.details = Value::Object(details);
    Ok(r)
}
