//! Command-line interface: reproducible interpolation, transform, scattered,
//! dual/variety, Lebesgue, and benchmark jobs with CSV/JSON input and output.
//!
//! Every command is a thin composition of library calls; numeric outputs are
//! deterministic for a fixed `--seed`. Exit code 0 on success, 1 on domain
//! errors (a machine-readable JSON line goes to standard error), 2 on usage
//! errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use multinterp::approx::{
    default_lebesgue_samples, fit_rate, lebesgue_1d_formula, lebesgue_estimate, run_convergence,
    run_perturbation_study, runge, BenchmarkRecord, NodeFamily, RateFit,
};
use multinterp::dual::{dual_decompose, variety_fit, DualDecomposition};
use multinterp::error::Error;
use multinterp::io;
use multinterp::multiindex::{DegreeNorm, MultiIndexSet};
use multinterp::newton::{divided_differences, FunctionValues};
use multinterp::nodes::{chebyshev_first, chebyshev_second, GeneratingNodes, UnisolventNodes};
use multinterp::scattered::build_scattered;
use multinterp::transform::TransformSet;

fn parse_degree_norm(s: &str) -> Result<DegreeNorm, String> {
    if s.trim().eq_ignore_ascii_case("inf") {
        return Ok(DegreeNorm::LInf);
    }
    let v: f64 = s
        .parse()
        .map_err(|_| format!("degree norm must be a number or `inf`, got {s:?}"))?;
    DegreeNorm::from_value(v).map_err(|e| e.to_string())
}

#[derive(Args, Debug, Clone)]
struct SpaceArgs {
    /// Ambient dimension
    #[arg(short, long)]
    m: usize,
    /// Polynomial degree bound
    #[arg(short, long)]
    n: usize,
    /// Degree norm: 1, 2, inf, or a real >= 1
    #[arg(short, long, value_parser = parse_degree_norm)]
    p: DegreeNorm,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum GpKind {
    /// Chebyshev nodes of the second kind (extrema)
    Cheb2,
    /// Chebyshev nodes of the first kind
    Cheb1,
    /// Per-dimension 1D nodes from a JSON file (array of arrays)
    File,
}

#[derive(Args, Debug, Clone)]
struct GpArgs {
    /// 1D generating node family
    #[arg(long, value_enum, default_value = "cheb2")]
    gp: GpKind,
    /// JSON file with per-dimension node values (for --gp file)
    #[arg(long)]
    gp_file: Option<PathBuf>,
    /// Disable Leja ordering of the Chebyshev families
    #[arg(long)]
    no_leja: bool,
    /// Per-dimension scale factors, comma separated (e.g. 1,1,0.3)
    #[arg(long, value_delimiter = ',')]
    gp_scale: Option<Vec<f64>>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FnKind {
    /// 1 / (1 + 10 ||x||^2)
    Runge10,
    /// 1 / (1 + ||x||^2)
    Runge1,
    /// Canonical-coefficient polynomial from --poly-file (CSV)
    Poly,
}

#[derive(Parser, Debug)]
#[command(
    name = "multinterp",
    about = "Multivariate polynomial interpolation on unisolvent nodes",
    version
)]
struct Cli {
    /// RNG seed for everything stochastic (fixed, not entropic)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Relative pivot threshold for rank decisions
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol_rank: f64,
    /// Cardinality cap guarding against accidental blow-ups
    #[arg(long, global = true, default_value_t = 100_000_000)]
    cap_cardinality: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Interpolate a registered function on a unisolvent grid
    Interpolate {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        gp: GpArgs,
        #[arg(long = "fn", value_enum, default_value = "runge10")]
        function: FnKind,
        /// Canonical coefficient CSV defining the polynomial for --fn poly
        #[arg(long)]
        poly_file: Option<PathBuf>,
        /// Output JSON coefficient bundle
        #[arg(short, long)]
        output: PathBuf,
        /// Optional coefficient CSV alongside the bundle
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Evaluate a coefficient bundle at points from a CSV file
    Eval {
        /// JSON coefficient bundle produced by `interpolate`
        #[arg(long)]
        coeffs: PathBuf,
        /// Points CSV (columns x_1..x_m)
        #[arg(long)]
        points: PathBuf,
        /// Output values CSV
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Precompute and cache the NL/LN/CN/NC transform matrices
    Transform {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        gp: GpArgs,
        /// Cache file; reused without rebuilding when the content key matches
        #[arg(short, long)]
        output: PathBuf,
        /// Directory for dense CSV exports of the four matrices
        #[arg(long)]
        matrices_dir: Option<PathBuf>,
    },
    /// Interpolate values given on arbitrary (scattered) nodes
    Scattered {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        gp: GpArgs,
        /// Given nodes CSV (columns x_1..x_m)
        #[arg(long)]
        nodes: PathBuf,
        /// Values CSV (single `value` column)
        #[arg(long)]
        values: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Rank-revealing decomposition over arbitrary input nodes
    Dual {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        gp: GpArgs,
        /// Sample CSV (columns x_1..x_m, optional value column ignored)
        #[arg(long)]
        samples: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Fit samples on an algebraic variety (kernel + least-squares fit)
    Variety {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        gp: GpArgs,
        /// Sample CSV (columns x_1..x_m, optional value column)
        #[arg(long)]
        samples: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Sampled Lebesgue function of a grid
    Lebesgue {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        gp: GpArgs,
        /// Optional output JSON (a summary line always goes to stdout)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convergence benchmark against a registered function
    BenchRunge {
        /// Ambient dimension
        #[arg(short, long)]
        m: usize,
        /// Degree norm: 1, 2, inf, or a real >= 1
        #[arg(short, long, value_parser = parse_degree_norm)]
        p: DegreeNorm,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        n_step: usize,
        #[arg(long = "fn", value_enum, default_value = "runge10")]
        function: FnKind,
        #[arg(long)]
        poly_file: Option<PathBuf>,
        /// Chebyshev family for the grids
        #[arg(long, value_enum, default_value = "cheb2")]
        gp: GpKind,
        /// Random test points per degree
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Override the per-dimension default degree cap
        #[arg(long)]
        degree_cap: Option<usize>,
        /// Output CSV (m,n,p,cardinality,max_error,seconds,seed)
        #[arg(short, long)]
        output: PathBuf,
        /// Optional JSON summary with the fitted rate
        #[arg(long)]
        summary: Option<PathBuf>,
        /// External benchmark CSVs (same schema) for a side-by-side table
        #[arg(long)]
        compare: Vec<PathBuf>,
    },
    /// Perturbed-grid study (measured vs estimated errors)
    BenchPerturb {
        #[arg(short, long)]
        m: usize,
        #[arg(short, long, value_parser = parse_degree_norm)]
        p: DegreeNorm,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        n_step: usize,
        /// Perturbation amplitudes in [0,1], comma separated
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.0, 0.05, 0.25, 0.5, 1.0])]
        amplitudes: Vec<f64>,
        #[arg(long)]
        degree_cap: Option<usize>,
        /// Output CSV (amplitude,n,cardinality,ap,est,s_inf,retries)
        #[arg(short, long)]
        output: PathBuf,
        /// Optional JSON dump of the full study
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::InvalidDegreeNorm(_) => "invalid_degree_norm",
        Error::CardinalityCapExceeded { .. } => "cardinality_cap_exceeded",
        Error::InvalidIndexSet(_) => "invalid_index_set",
        Error::DuplicateNodes { .. } => "duplicate_nodes",
        Error::DuplicateValues => "duplicate_values",
        Error::InsufficientNodes { .. } => "insufficient_nodes",
        Error::SizeMismatch { .. } => "size_mismatch",
        Error::NotUnisolvent { .. } => "not_unisolvent",
        Error::SingularMatrix => "singular_matrix",
        Error::MissingDerivativeBound(_) => "missing_derivative_bound",
        Error::EmptySamples => "empty_samples",
        Error::DegenerateInput => "degenerate_input",
        Error::RateFitUnderdetermined { .. } => "rate_fit_underdetermined",
        Error::EmptyInput => "empty_input",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
        Error::Csv(_) => "csv",
        Error::Format(_) => "format",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let payload = serde_json::json!({
                "error": e.to_string(),
                "kind": error_kind(&e),
            });
            eprintln!("{payload}");
            ExitCode::from(1)
        }
    }
}

/// Default benchmark degree caps per dimension; CLI-overridable.
fn default_degree_cap(m: usize) -> usize {
    match m {
        0 | 1 => 1000,
        2 => 60,
        3 => 30,
        _ => 16,
    }
}

fn check_degree_cap(m: usize, n_max: usize, overridden: Option<usize>) -> Result<(), Error> {
    let cap = overridden.unwrap_or_else(|| default_degree_cap(m));
    if n_max > cap {
        return Err(Error::Format(format!(
            "n_max {n_max} exceeds the degree cap {cap} for m={m}; raise it with --degree-cap"
        )));
    }
    Ok(())
}

fn build_gp(space: &SpaceArgs, gp: &GpArgs) -> Result<GeneratingNodes, Error> {
    let mut per_dim: Vec<Vec<f64>> = match gp.gp {
        GpKind::Cheb2 => {
            let base = if gp.no_leja {
                chebyshev_second(space.n)
            } else {
                multinterp::nodes::leja_chebyshev_second(space.n)
            };
            vec![base; space.m]
        }
        GpKind::Cheb1 => {
            let base = if gp.no_leja {
                chebyshev_first(space.n)
            } else {
                multinterp::nodes::leja_chebyshev_first(space.n)
            };
            vec![base; space.m]
        }
        GpKind::File => {
            let path = gp
                .gp_file
                .as_ref()
                .ok_or_else(|| Error::Format("--gp file requires --gp-file <path>".to_string()))?;
            io::load_json::<_, Vec<Vec<f64>>>(path)?
        }
    };
    if let Some(scales) = &gp.gp_scale {
        if scales.len() != per_dim.len() {
            return Err(Error::SizeMismatch {
                what: "gp scale factors",
                expected: per_dim.len(),
                got: scales.len(),
            });
        }
        for (values, &s) in per_dim.iter_mut().zip(scales) {
            for v in values.iter_mut() {
                *v *= s;
            }
        }
    }
    // User files and scaled families may leave the standard cube.
    GeneratingNodes::new(per_dim.clone()).or_else(|_| GeneratingNodes::new_unscaled(per_dim))
}

fn build_nodes(space: &SpaceArgs, gp: &GpArgs, cap: usize) -> Result<UnisolventNodes, Error> {
    let set = MultiIndexSet::complete_with_cap(space.m, space.n, space.p, cap)?;
    let generating = build_gp(space, gp)?;
    UnisolventNodes::generate(set, generating)
}

type DynFn = Box<dyn Fn(&[f64]) -> f64 + Sync + Send>;

fn resolve_function(kind: FnKind, poly_file: Option<&Path>) -> Result<DynFn, Error> {
    match kind {
        FnKind::Runge10 => Ok(Box::new(runge(10.0))),
        FnKind::Runge1 => Ok(Box::new(runge(1.0))),
        FnKind::Poly => {
            let path = poly_file
                .ok_or_else(|| Error::Format("--fn poly requires --poly-file <csv>".to_string()))?;
            let (indices, coeffs) = io::read_coefficients_csv(path)?;
            let m = indices
                .first()
                .ok_or_else(|| Error::Format("empty polynomial file".to_string()))?
                .dim();
            let set = MultiIndexSet::from_indices(m, indices.clone())?;
            let chain = set.increment_chain();
            // Coefficients arrive in file order; re-align to lex order.
            let mut aligned = vec![0.0; set.len()];
            for (idx, c) in indices.iter().zip(&coeffs) {
                let pos = set.position(idx).expect("index present after validation");
                aligned[pos] = *c;
            }
            Ok(Box::new(move |x: &[f64]| {
                multinterp::transform::monomial_values(&set, &chain, x)
                    .iter()
                    .zip(&aligned)
                    .map(|(b, c)| b * c)
                    .sum()
            }))
        }
    }
}

#[derive(Serialize)]
struct ScatteredOutput {
    schema: u32,
    m: usize,
    n: usize,
    p: DegreeNorm,
    s_inf: f64,
    lebesgue_reference: f64,
    s_n: f64,
    c_lag: Vec<f64>,
}

#[derive(Serialize)]
struct DualOutput {
    schema: u32,
    rank: usize,
    kernel_dim: usize,
    p0_indices: Vec<usize>,
    pivot_columns: Vec<usize>,
    kernel: Vec<Vec<f64>>,
}

impl DualOutput {
    fn from_decomposition(d: &DualDecomposition) -> Self {
        Self {
            schema: io::SCHEMA_VERSION,
            rank: d.rank(),
            kernel_dim: d.kernel_dim(),
            p0_indices: d.p0_indices().to_vec(),
            pivot_columns: d.pivot_columns().to_vec(),
            kernel: d
                .kernel_basis()
                .iter()
                .map(|k| k.as_slice().to_vec())
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct VarietyOutput {
    schema: u32,
    rank: usize,
    kernel_dim: usize,
    p0_indices: Vec<usize>,
    kernel: Vec<Vec<f64>>,
    interpolant: Option<Vec<f64>>,
    residual_max: Option<f64>,
    residual_rms: Option<f64>,
}

#[derive(Serialize)]
struct LebesgueOutput {
    schema: u32,
    m: usize,
    n: usize,
    p: DegreeNorm,
    estimate: f64,
    sample_count: usize,
    scheme: String,
    formula_1d: f64,
    formula_1d_power_m: f64,
}

#[derive(Serialize)]
struct BenchSummary {
    schema: u32,
    m: usize,
    p: DegreeNorm,
    seed: u64,
    records: usize,
    fit: RateFit,
}

fn run(cli: Cli) -> Result<(), Error> {
    let seed = cli.seed;
    let cap = cli.cap_cardinality;
    match cli.command {
        Command::Interpolate {
            space,
            gp,
            function,
            poly_file,
            output,
            csv,
        } => {
            let nodes = build_nodes(&space, &gp, cap)?;
            let f = resolve_function(function, poly_file.as_deref())?;
            let values = FunctionValues::sample(&nodes, |x| f(x));
            let q = divided_differences(&nodes, values.as_slice())?;
            io::save_json(&output, &io::CoefficientBundle::from_newton(&q))?;
            if let Some(csv_path) = csv {
                io::write_coefficients_csv(&csv_path, q.set(), q.coefficients())?;
            }
            println!(
                "interpolated {} coefficients (m={} n={} p={}) -> {}",
                q.set().len(),
                space.m,
                space.n,
                space.p,
                output.display()
            );
            Ok(())
        }
        Command::Eval {
            coeffs,
            points,
            output,
        } => {
            let bundle: io::CoefficientBundle = io::load_json(&coeffs)?;
            let q = bundle.into_newton()?;
            let pts = io::read_points_csv(&points)?;
            let values = q.eval_batch(&pts)?;
            io::write_values_csv(&output, &values)?;
            println!("evaluated {} points -> {}", values.len(), output.display());
            Ok(())
        }
        Command::Transform {
            space,
            gp,
            output,
            matrices_dir,
        } => {
            let nodes = build_nodes(&space, &gp, cap)?;
            let key = TransformSet::content_key(&nodes);
            let (transform, cached) = match io::load_cached_transform(&output, &key) {
                Some(t) => (t, true),
                None => {
                    let t = TransformSet::build(nodes)?;
                    io::save_json(&output, &io::TransformBundle::new(t.clone()))?;
                    (t, false)
                }
            };
            if let Some(dir) = matrices_dir {
                std::fs::create_dir_all(&dir)?;
                io::write_matrix_csv(dir.join("nl.csv"), transform.nl())?;
                io::write_matrix_csv(dir.join("ln.csv"), transform.ln())?;
                io::write_matrix_csv(dir.join("cn.csv"), transform.cn())?;
                io::write_matrix_csv(dir.join("nc.csv"), transform.nc())?;
            }
            println!(
                "transform for |A|={} {} -> {}",
                transform.set().len(),
                if cached { "loaded from cache" } else { "built" },
                output.display()
            );
            Ok(())
        }
        Command::Scattered {
            space,
            gp,
            nodes,
            values,
            output,
        } => {
            let reference = build_nodes(&space, &gp, cap)?;
            let given = io::read_points_csv(&nodes)?;
            let vals = io::read_values_csv(&values)?;
            let sys = build_scattered(&reference, given)?;
            let c_lag = sys.interpolate(&vals)?;
            let lambda = lebesgue_1d_formula(space.n.max(1)).powi(space.m as i32);
            let out = ScatteredOutput {
                schema: io::SCHEMA_VERSION,
                m: space.m,
                n: space.n,
                p: space.p,
                s_inf: sys.s_inf(),
                lebesgue_reference: lambda,
                s_n: sys.error_factor(lambda),
                c_lag: c_lag.as_slice().to_vec(),
            };
            io::save_json(&output, &out)?;
            println!(
                "scattered system solved: s_inf={:.6e}, s_n={:.6e} -> {}",
                out.s_inf,
                out.s_n,
                output.display()
            );
            Ok(())
        }
        Command::Dual {
            space,
            gp,
            samples,
            output,
        } => {
            let reference = build_nodes(&space, &gp, cap)?;
            let (points, _values) = io::read_samples_csv(&samples)?;
            let d = dual_decompose(&reference, &points, cli.tol_rank)?;
            let out = DualOutput::from_decomposition(&d);
            io::save_json(&output, &out)?;
            println!(
                "dual decomposition: rank={} kernel_dim={} -> {}",
                out.rank,
                out.kernel_dim,
                output.display()
            );
            Ok(())
        }
        Command::Variety {
            space,
            gp,
            samples,
            output,
        } => {
            let reference = build_nodes(&space, &gp, cap)?;
            let (points, values) = io::read_samples_csv(&samples)?;
            let out = match values {
                Some(vals) => {
                    let fit = variety_fit(&reference, &points, &vals, cli.tol_rank)?;
                    VarietyOutput {
                        schema: io::SCHEMA_VERSION,
                        rank: fit.decomposition.rank(),
                        kernel_dim: fit.decomposition.kernel_dim(),
                        p0_indices: fit.decomposition.p0_indices().to_vec(),
                        kernel: fit
                            .decomposition
                            .kernel_basis()
                            .iter()
                            .map(|k| k.as_slice().to_vec())
                            .collect(),
                        interpolant: Some(fit.interpolant.as_slice().to_vec()),
                        residual_max: Some(fit.residual_max),
                        residual_rms: Some(fit.residual_rms),
                    }
                }
                None => {
                    let d = dual_decompose(&reference, &points, cli.tol_rank)?;
                    VarietyOutput {
                        schema: io::SCHEMA_VERSION,
                        rank: d.rank(),
                        kernel_dim: d.kernel_dim(),
                        p0_indices: d.p0_indices().to_vec(),
                        kernel: d
                            .kernel_basis()
                            .iter()
                            .map(|k| k.as_slice().to_vec())
                            .collect(),
                        interpolant: None,
                        residual_max: None,
                        residual_rms: None,
                    }
                }
            };
            io::save_json(&output, &out)?;
            println!(
                "variety: rank={} kernel_dim={} -> {}",
                out.rank,
                out.kernel_dim,
                output.display()
            );
            Ok(())
        }
        Command::Lebesgue { space, gp, output } => {
            let nodes = build_nodes(&space, &gp, cap)?;
            let samples = default_lebesgue_samples(&nodes, seed);
            let est = lebesgue_estimate(&nodes, &samples, "grid+nodes(+random for m>=3)")?;
            let formula = lebesgue_1d_formula(space.n.max(1));
            let out = LebesgueOutput {
                schema: io::SCHEMA_VERSION,
                m: space.m,
                n: space.n,
                p: space.p,
                estimate: est.value,
                sample_count: est.sample_count,
                scheme: est.scheme,
                formula_1d: formula,
                formula_1d_power_m: formula.powi(space.m as i32),
            };
            println!(
                "lebesgue estimate {:.6} over {} samples (1D formula {:.6})",
                out.estimate, out.sample_count, out.formula_1d
            );
            if let Some(path) = output {
                io::save_json(&path, &out)?;
            }
            Ok(())
        }
        Command::BenchRunge {
            m,
            p,
            n_min,
            n_max,
            n_step,
            function,
            poly_file,
            gp,
            points,
            degree_cap,
            output,
            summary,
            compare,
        } => {
            check_degree_cap(m, n_max, degree_cap)?;
            let family = match gp {
                GpKind::Cheb2 => NodeFamily::ChebyshevSecondLeja,
                GpKind::Cheb1 => NodeFamily::ChebyshevFirstLeja,
                GpKind::File => {
                    return Err(Error::Format(
                        "benchmarks need a degree-indexed family; use cheb1 or cheb2".to_string(),
                    ))
                }
            };
            let f = resolve_function(function, poly_file.as_deref())?;
            let degrees: Vec<usize> = (n_min..=n_max).step_by(n_step.max(1)).collect();
            let records = run_convergence(|x: &[f64]| f(x), m, p, &degrees, family, points, seed)?;
            io::write_benchmark_csv(&output, &records)?;
            let fit = fit_rate(&records, n_min, n_max)?;
            println!(
                "bench: {} degrees, fitted rate rho={:.4} c={:.4} R^2={:.5} -> {}",
                records.len(),
                fit.rho,
                fit.c,
                fit.r_squared,
                output.display()
            );
            if let Some(path) = summary {
                io::save_json(
                    &path,
                    &BenchSummary {
                        schema: io::SCHEMA_VERSION,
                        m,
                        p,
                        seed,
                        records: records.len(),
                        fit,
                    },
                )?;
            }
            if !compare.is_empty() {
                print_comparison(&records, &compare)?;
            }
            Ok(())
        }
        Command::BenchPerturb {
            m,
            p,
            n_min,
            n_max,
            n_step,
            amplitudes,
            degree_cap,
            output,
            summary,
        } => {
            check_degree_cap(m, n_max, degree_cap)?;
            let degrees: Vec<usize> = (n_min..=n_max).step_by(n_step.max(1)).collect();
            let study = run_perturbation_study(m, p, &degrees, &amplitudes, seed)?;
            io::write_perturbation_csv(&output, &study)?;
            if let Some(path) = summary {
                io::save_json(&path, &study)?;
            }
            println!(
                "perturbation study: {} rows ({} amplitudes x {} degrees) -> {}",
                study.records.len(),
                amplitudes.len(),
                degrees.len(),
                output.display()
            );
            Ok(())
        }
    }
}

/// Side-by-side error table: one row per degree, one column per source.
fn print_comparison(ours: &[BenchmarkRecord], files: &[PathBuf]) -> Result<(), Error> {
    let mut sources: Vec<(String, Vec<BenchmarkRecord>)> =
        vec![("this".to_string(), ours.to_vec())];
    for f in files {
        let name = f
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| f.display().to_string());
        sources.push((name, io::read_benchmark_csv(f)?));
    }
    let mut degrees: Vec<usize> = sources
        .iter()
        .flat_map(|(_, recs)| recs.iter().map(|r| r.n))
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    print!("{:>6}", "n");
    for (name, _) in &sources {
        print!(" {name:>14}");
    }
    println!();
    for n in degrees {
        print!("{n:>6}");
        for (_, recs) in &sources {
            match recs.iter().find(|r| r.n == n) {
                Some(r) => print!(" {:>14.6e}", r.max_error),
                None => print!(" {:>14}", "-"),
            }
        }
        println!();
    }
    Ok(())
}
