//! Command-line front end.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::{decay_profile, error_table, first_zero};
use crate::basis::inner_product_rcs;
use crate::collocation::NodeDistribution;
use crate::error::{Error, Result};
use crate::format::sci;
use crate::newton::{solve, NewtonConfig, SolveReport};
use crate::problem::{by_name, standard_lane_emden, LaneEmdenProblem, LOG_CLAMP};
use crate::reference::{first_zero_reference, published_abscissae, reference_for};
use crate::trial::SpectralSolution;

type BoxedFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NOT_CONVERGED: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rcs-lane-emden",
    version,
    about = "Rational Chebyshev collocation for Lane-Emden type equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Nodes {
    Uniform,
    MappedChebyshev,
}

impl From<Nodes> for NodeDistribution {
    fn from(n: Nodes) -> Self {
        match n {
            Nodes::Uniform => NodeDistribution::Uniform,
            Nodes::MappedChebyshev => NodeDistribution::MappedChebyshev,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Truncation order N (N+1 unknowns)
    #[arg(long)]
    pub n: Option<usize>,
    /// Right end of the collocation interval
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub tol_residual: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Grow q in four warm-started stages
    #[arg(long)]
    pub continuation: bool,
    #[arg(long, value_enum, default_value = "mapped-chebyshev")]
    pub nodes: Nodes,
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Builtin name, `lane-emden` (with --m) or `lane-emden-m<m>`
    #[arg(long)]
    pub problem: Option<String>,
    /// Polytropic index for the standard equation
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<f64>,
    /// JSON file describing a custom problem
    #[arg(long, conflicts_with_all = ["problem", "m"])]
    pub custom_spec: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one problem and write its coefficients
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// First zeros of the standard equation for a list of m
    Zeros {
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            default_value = "1.5,2,2.5,3,4"
        )]
        m: Vec<f64>,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare a solution with its reference at the published abscissae
    Table {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Reuse a solution written by `solve` instead of solving again
        #[arg(long, conflicts_with_all = ["problem", "m", "custom_spec"])]
        solution: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Absolute coefficients |a_i| of a solution
    Coeffs {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, conflicts_with_all = ["problem", "m", "custom_spec"])]
        solution: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Inner products of the mapped basis against (pi/2) delta_ij
    OrthoCheck {
        #[arg(long, default_value_t = 20)]
        max_degree: usize,
        #[arg(long, default_value_t = 64)]
        quadrature_nodes: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Nonlinearities selectable from a custom problem file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonlinearityKind {
    Power,
    Exp,
    Sinh,
    Sin,
    Linear,
    ExpMix,
    Log6,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomSpec {
    #[serde(default = "custom_name")]
    pub name: String,
    pub alpha: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub g: NonlinearityKind,
    /// Exponent for `g = power`.
    #[serde(default)]
    pub exponent: Option<f64>,
    /// Coefficients of f in ascending powers of x.
    #[serde(default = "one")]
    pub f: Vec<f64>,
    #[serde(default)]
    pub h: Vec<f64>,
    #[serde(default)]
    pub q: Option<f64>,
    #[serde(rename = "N", default)]
    pub n: Option<usize>,
}

fn custom_name() -> String {
    "custom".into()
}

fn one() -> Vec<f64> {
    vec![1.0]
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck)
}

impl CustomSpec {
    pub fn into_problem(self) -> Result<LaneEmdenProblem> {
        let (g, dg): (BoxedFn, BoxedFn) = match self.g {
            NonlinearityKind::Power => {
                let m = self
                    .exponent
                    .ok_or_else(|| Error::Config("g = power needs an exponent".into()))?;
                let p = standard_lane_emden(m)?;
                let (g, dg) = (p.g.clone(), p.dg.clone());
                (Box::new(move |y| g(y)), Box::new(move |y| dg(y)))
            }
            NonlinearityKind::Exp => (Box::new(f64::exp), Box::new(f64::exp)),
            NonlinearityKind::Sinh => (Box::new(f64::sinh), Box::new(f64::cosh)),
            NonlinearityKind::Sin => (Box::new(f64::sin), Box::new(f64::cos)),
            NonlinearityKind::Linear => (Box::new(|y| y), Box::new(|_| 1.0)),
            NonlinearityKind::ExpMix => (
                Box::new(|y: f64| 4.0 * (2.0 * y.exp() + (0.5 * y).exp())),
                Box::new(|y: f64| 4.0 * (2.0 * y.exp() + 0.5 * (0.5 * y).exp())),
            ),
            NonlinearityKind::Log6 => (
                Box::new(|y: f64| {
                    let y = y.max(LOG_CLAMP);
                    -6.0 * y - 4.0 * y * y.ln()
                }),
                Box::new(|y: f64| -10.0 - 4.0 * y.max(LOG_CLAMP).ln()),
            ),
        };
        let (f, h) = (self.f, self.h);
        let mut p = LaneEmdenProblem::new(self.name, self.alpha, g, dg, self.a, self.b)
            .with_f(move |x| horner(&f, x))
            .with_h(move |x| horner(&h, x));
        if let Some(q) = self.q {
            p.default_q = q;
        }
        if let Some(n) = self.n {
            p.default_n = n;
        }
        p.validate()?;
        Ok(p)
    }
}

/// Resolves the problem flags to a problem definition.
pub fn resolve_problem(args: &ProblemArgs) -> Result<LaneEmdenProblem> {
    if let Some(path) = &args.custom_spec {
        let spec: CustomSpec = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        return spec.into_problem();
    }
    match (args.problem.as_deref(), args.m) {
        (None | Some("lane-emden"), Some(m)) => standard_lane_emden(m),
        (Some("lane-emden"), None) => Err(Error::Config("--problem lane-emden needs --m".into())),
        (Some(name), None) => by_name(name),
        (Some(name), Some(_)) => Err(Error::Config(format!(
            "--m only applies to the lane-emden family, not {name}"
        ))),
        (None, None) => Err(Error::Config("give --problem, --m or --custom-spec".into())),
    }
}

fn newton_config(args: &SolverArgs) -> Result<NewtonConfig> {
    let mut cfg = NewtonConfig::default();
    if let Some(t) = args.tol_residual {
        cfg.tol_residual = t;
    }
    if let Some(k) = args.max_iters {
        cfg.max_iters = k;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Solves with defaults from the problem, overridden by the flags.
pub fn run_solve(problem: &LaneEmdenProblem, args: &SolverArgs) -> Result<SolveReport> {
    let n = args.n.unwrap_or(problem.default_n);
    let q = args.q.unwrap_or(problem.default_q);
    if n < 4 {
        return Err(Error::Config(format!("N must be at least 4, got {n}")));
    }
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::Config(format!("q must be positive, got {q}")));
    }
    solve(
        problem,
        n,
        q,
        args.nodes.into(),
        &newton_config(args)?,
        args.continuation,
    )
}

#[derive(Serialize)]
struct SolveDocument<'a> {
    #[serde(flatten)]
    solution: &'a SpectralSolution,
    iterations: usize,
    final_residual_norm: f64,
    converged: bool,
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_json(out: &OutputArgs, value: &impl Serialize) -> Result<()> {
    let mut w = open_output(out.output.as_deref())?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn exit_for(report: &SolveReport) -> u8 {
    if report.converged {
        EXIT_OK
    } else {
        eprintln!(
            "warning: not converged after {} iterations, residual {:e} > {:e}",
            report.iterations, report.final_residual_norm, report.effective_tolerance
        );
        EXIT_NOT_CONVERGED
    }
}

fn cmd_solve(problem: &ProblemArgs, out: &OutputArgs) -> Result<u8> {
    let p = resolve_problem(problem)?;
    let report = run_solve(&p, &problem.solver)?;
    match out.format.unwrap_or(Format::Json) {
        Format::Json => write_json(
            out,
            &SolveDocument {
                solution: &report.solution,
                iterations: report.iterations,
                final_residual_norm: report.final_residual_norm,
                converged: report.converged,
            },
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(open_output(out.output.as_deref())?);
            w.write_record(["i", "coeff"])?;
            for (i, c) in report.solution.coeffs.iter().enumerate() {
                w.write_record([i.to_string(), sci(*c)])?;
            }
            w.flush()?;
        }
    }
    Ok(exit_for(&report))
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroRow {
    pub m: f64,
    pub x_zero: Option<f64>,
    pub reference: Option<f64>,
    pub abs_diff: Option<f64>,
    #[serde(skip)]
    pub converged: bool,
}

fn known_zero(m: f64) -> Option<f64> {
    match m {
        0.0 => Some(6f64.sqrt()),
        1.0 => Some(std::f64::consts::PI),
        _ => first_zero_reference(m),
    }
}

/// Solves each m independently (in parallel) and locates the first zero.
pub fn zero_sweep(ms: &[f64], args: &SolverArgs) -> Result<Vec<ZeroRow>> {
    let results: Vec<Result<ZeroRow>> = std::thread::scope(|s| {
        let handles: Vec<_> = ms
            .iter()
            .map(|&m| {
                s.spawn(move || {
                    let p = standard_lane_emden(m)?;
                    let report = run_solve(&p, args)?;
                    let x_zero = match first_zero(&report.solution, report.solution.q) {
                        Ok(z) => Some(z.x_zero),
                        Err(Error::NoZeroFound { .. }) => None,
                        Err(e) => return Err(e),
                    };
                    let reference = known_zero(m);
                    let abs_diff = x_zero.zip(reference).map(|(a, b)| (a - b).abs());
                    Ok(ZeroRow {
                        m,
                        x_zero,
                        reference,
                        abs_diff,
                        converged: report.converged,
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("zero sweep worker panicked"))
            .collect()
    });
    results.into_iter().collect()
}

fn cmd_zeros(ms: &[f64], solver: &SolverArgs, out: &OutputArgs) -> Result<u8> {
    if ms.is_empty() {
        return Err(Error::Config("--m needs at least one value".into()));
    }
    let rows = zero_sweep(ms, solver)?;
    match out.format.unwrap_or(Format::Csv) {
        Format::Json => write_json(out, &rows)?,
        Format::Csv => {
            let opt = |v: Option<f64>| v.map_or_else(|| "none".to_string(), sci);
            let mut w = csv::Writer::from_writer(open_output(out.output.as_deref())?);
            w.write_record(["m", "x_zero", "reference", "abs_diff"])?;
            for r in &rows {
                w.write_record([
                    format!("{}", r.m),
                    opt(r.x_zero),
                    opt(r.reference),
                    opt(r.abs_diff),
                ])?;
            }
            w.flush()?;
        }
    }
    if rows.iter().all(|r| r.converged) {
        Ok(EXIT_OK)
    } else {
        eprintln!("warning: at least one solve did not converge");
        Ok(EXIT_NOT_CONVERGED)
    }
}

/// Either reloads `--solution` or solves from the problem flags.
fn obtain_solution(
    problem: &ProblemArgs,
    solution: Option<&Path>,
) -> Result<(SpectralSolution, u8)> {
    if let Some(path) = solution {
        return Ok((SpectralSolution::load(path)?, EXIT_OK));
    }
    let p = resolve_problem(problem)?;
    let report = run_solve(&p, &problem.solver)?;
    let code = exit_for(&report);
    Ok((report.solution, code))
}

/// Published abscissae where available, otherwise 11 uniform points on [0, q].
pub fn table_abscissae(sol: &SpectralSolution) -> Vec<f64> {
    published_abscissae(&sol.problem)
        .unwrap_or_else(|| (0..=10).map(|k| sol.q * k as f64 / 10.0).collect())
}

fn cmd_table(problem: &ProblemArgs, solution: Option<&Path>, out: &OutputArgs) -> Result<u8> {
    let (sol, code) = obtain_solution(problem, solution)?;
    let reference = reference_for(&sol.problem)?;
    let table = error_table(&sol, &reference, &table_abscissae(&sol))?;
    match out.format.unwrap_or(Format::Csv) {
        Format::Csv => table.write_csv(open_output(out.output.as_deref())?)?,
        Format::Json => write_json(out, &table.rows)?,
    }
    Ok(code)
}

fn cmd_coeffs(problem: &ProblemArgs, solution: Option<&Path>, out: &OutputArgs) -> Result<u8> {
    let (sol, code) = obtain_solution(problem, solution)?;
    let profile = decay_profile(&sol)?;
    match out.format.unwrap_or(Format::Csv) {
        Format::Csv => profile.write_csv(open_output(out.output.as_deref())?)?,
        Format::Json => write_json(out, &profile)?,
    }
    Ok(code)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrthoEntry {
    pub i: usize,
    pub j: usize,
    pub inner_product: f64,
    pub deviation: f64,
}

pub fn ortho_grid(max_degree: usize, nodes: usize) -> Result<Vec<OrthoEntry>> {
    let mut grid = Vec::with_capacity((max_degree + 1).pow(2));
    for i in 0..=max_degree {
        for j in 0..=max_degree {
            let ip = inner_product_rcs(i, j, nodes)?;
            let expected = if i == j {
                std::f64::consts::FRAC_PI_2
            } else {
                0.0
            };
            grid.push(OrthoEntry {
                i,
                j,
                inner_product: ip,
                deviation: (ip - expected).abs(),
            });
        }
    }
    Ok(grid)
}

fn cmd_ortho(max_degree: usize, nodes: usize, out: &OutputArgs) -> Result<u8> {
    let grid = ortho_grid(max_degree, nodes)?;
    match out.format.unwrap_or(Format::Csv) {
        Format::Json => write_json(out, &grid)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(open_output(out.output.as_deref())?);
            w.write_record(["i", "j", "inner_product", "deviation"])?;
            for e in &grid {
                w.write_record([
                    e.i.to_string(),
                    e.j.to_string(),
                    sci(e.inner_product),
                    sci(e.deviation),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn dispatch(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Solve { problem, output } => cmd_solve(problem, output),
        Command::Zeros { m, solver, output } => cmd_zeros(m, solver, output),
        Command::Table {
            problem,
            solution,
            output,
        } => cmd_table(problem, solution.as_deref(), output),
        Command::Coeffs {
            problem,
            solution,
            output,
        } => cmd_coeffs(problem, solution.as_deref(), output),
        Command::OrthoCheck {
            max_degree,
            quadrature_nodes,
            output,
        } => cmd_ortho(*max_degree, *quadrature_nodes, output),
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e @ (Error::SingularJacobian { .. } | Error::NonFinite { .. })) => {
            eprintln!("error: {e}");
            EXIT_NOT_CONVERGED
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem_args(problem: Option<&str>, m: Option<f64>) -> ProblemArgs {
        ProblemArgs {
            problem: problem.map(String::from),
            m,
            custom_spec: None,
            solver: SolverArgs {
                n: None,
                q: None,
                tol_residual: None,
                max_iters: None,
                continuation: false,
                nodes: Nodes::MappedChebyshev,
            },
        }
    }

    #[test]
    fn problem_resolution() {
        assert_eq!(
            resolve_problem(&problem_args(Some("lane-emden"), Some(2.0)))
                .unwrap()
                .name,
            "lane-emden-m2"
        );
        assert_eq!(
            resolve_problem(&problem_args(None, Some(3.0)))
                .unwrap()
                .name,
            "lane-emden-m3"
        );
        assert_eq!(
            resolve_problem(&problem_args(Some("isothermal"), None))
                .unwrap()
                .default_n,
            40
        );
        assert!(resolve_problem(&problem_args(Some("lane-emden"), Some(-1.0))).is_err());
        assert!(resolve_problem(&problem_args(Some("lane-emden"), None)).is_err());
        assert!(resolve_problem(&problem_args(Some("sin"), Some(2.0))).is_err());
        assert!(resolve_problem(&problem_args(None, None)).is_err());
    }

    #[test]
    fn custom_spec_reproduces_builtin() {
        let text =
            r#"{"alpha": 2, "A": 1, "B": 0, "g": "linear", "f": [-6, 0, -4], "q": 1.0, "N": 40}"#;
        let p: CustomSpec = serde_json::from_str(text).unwrap();
        let p = p.into_problem().unwrap();
        let args = SolverArgs {
            n: None,
            q: None,
            tol_residual: None,
            max_iters: None,
            continuation: false,
            nodes: Nodes::MappedChebyshev,
        };
        let custom = run_solve(&p, &args).unwrap();
        let builtin = run_solve(&by_name("linear_poly").unwrap(), &args).unwrap();
        assert_eq!(custom.solution.coeffs, builtin.solution.coeffs);
    }

    #[test]
    fn custom_spec_errors() {
        let no_exp: CustomSpec =
            serde_json::from_str(r#"{"alpha": 2, "A": 1, "B": 0, "g": "power"}"#).unwrap();
        assert!(matches!(no_exp.into_problem(), Err(Error::Config(_))));
        assert!(
            serde_json::from_str::<CustomSpec>(r#"{"alpha": 2, "A": 1, "B": 0, "g": "tanh"}"#)
                .is_err()
        );
        let neg: CustomSpec =
            serde_json::from_str(r#"{"alpha": -2, "A": 1, "B": 0, "g": "exp"}"#).unwrap();
        assert!(neg.into_problem().is_err());
    }

    #[test]
    fn horner_evaluates_ascending_coefficients() {
        assert_eq!(horner(&[1.0, 2.0, 3.0], 2.0), 17.0);
        assert_eq!(horner(&[], 5.0), 0.0);
    }

    #[test]
    fn ortho_grid_shape() {
        let g = ortho_grid(3, 16).unwrap();
        assert_eq!(g.len(), 16);
        assert!(g.iter().all(|e| e.deviation < 1e-12));
    }

    #[test]
    fn known_zeros() {
        assert_eq!(known_zero(0.0), Some(6f64.sqrt()));
        assert_eq!(known_zero(5.0), None);
        assert_eq!(known_zero(2.0), Some(4.35287460));
    }
}
