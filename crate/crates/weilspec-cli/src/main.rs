//! Command-line harness: sweeps, spectra, comparisons and verifications.
//!
//! Exit codes: 0 success, 1 validation failure, 2 numerical failure
//! (with the failing stage named on stderr).

mod sweep;

use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use weilspec_core::metrics::{bound_check, pair_and_score, PairingMode};
use weilspec_core::oplab::{BuilderKind, SolverKind};
use weilspec_core::scan::{run_point, ScanConfig};
use weilspec_core::specfun::MangoldtTable;
use weilspec_core::weil::{build_xi, verify_explicit_formula, WindowedTestFunction, XiMethod};
use weilspec_core::zeros::{zero_check_report, ZerosTable};
use weilspec_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "weilspec",
    about = "Windowed Weil-constrained compressions of the scaling generator, \
             their spectra, and their dissonance against Riemann zeta zeros",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairingArg {
    Sorted,
    Nearest,
}

impl From<PairingArg> for PairingMode {
    fn from(value: PairingArg) -> Self {
        match value {
            PairingArg::Sorted => PairingMode::SortedIndex,
            PairingArg::Nearest => PairingMode::NearestEigenvalue,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BuilderArg {
    Kill,
    Perturb,
}

impl From<BuilderArg> for BuilderKind {
    fn from(value: BuilderArg) -> Self {
        match value {
            BuilderArg::Kill => BuilderKind::Kill,
            BuilderArg::Perturb => BuilderKind::Perturb,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Dense,
    Secular,
}

impl From<SolverArg> for SolverKind {
    fn from(value: SolverArg) -> Self {
        match value {
            SolverArg::Dense => SolverKind::Dense,
            SolverArg::Secular => SolverKind::Secular,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum XiMethodArg {
    Riesz,
    Gram,
}

impl From<XiMethodArg> for XiMethod {
    fn from(value: XiMethodArg) -> Self {
        match value {
            XiMethodArg::Riesz => XiMethod::Riesz,
            XiMethodArg::Gram => XiMethod::Gram,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sieve prime powers and their von Mangoldt weights.
    Sieve {
        #[arg(long)]
        limit: u64,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the truncated Weil vector on the window basis.
    Xi {
        #[arg(long)]
        lambda: f64,
        /// Mode cutoff N (the vector has 2N+1 components).
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "riesz")]
        method: XiMethodArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectrum of the constrained operator at kappa = N = lambda.
    Spectrum {
        #[arg(long)]
        kappa: u64,
        #[arg(long, value_enum, default_value = "kill")]
        builder: BuilderArg,
        #[arg(long, value_enum, default_value = "secular")]
        solver: SolverArg,
        #[arg(long, value_enum, default_value = "riesz")]
        xi_method: XiMethodArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also dump the dense operator matrix as CSV.
        #[arg(long)]
        matrix_out: Option<PathBuf>,
        /// Emit the compressed-commutator block table (report only;
        /// builds the dense position matrix, so kappa is capped at 500).
        #[arg(long)]
        commutator_report: bool,
    },
    /// Pair a spectrum against a zero table and score the dissonance.
    Compare {
        #[arg(long)]
        kappa: u64,
        #[arg(long)]
        zeros: PathBuf,
        #[arg(long, value_enum, default_value = "nearest")]
        pairing: PairingArg,
        /// Zeros to compare (capped at min(kappa, table size)).
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the explicit-formula identity against a zero table.
    VerifyEf {
        #[arg(long)]
        zeros: PathBuf,
        /// Fejer window half-width.
        #[arg(long)]
        window: f64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
    },
    /// Sweep kappa over a range per the experimental protocol.
    Scan(sweep::ScanArgs),
    /// Verify the leading entries of a zero table via the Hardy Z-function.
    VerifyZeros {
        #[arg(long)]
        zeros: PathBuf,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
}

/// Failure with a process exit code and a named stage.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn validation(stage: &str, err: impl std::fmt::Display) -> Failure {
        Failure {
            code: 1,
            message: format!("{stage}: {err}"),
        }
    }

    fn numerical(stage: &str, err: impl std::fmt::Display) -> Failure {
        Failure {
            code: 2,
            message: format!("numerical failure in {stage}: {err}"),
        }
    }

    pub fn from_core(stage: &str, err: CoreError) -> Failure {
        if err.is_numerical() {
            Failure::numerical(stage, err)
        } else {
            Failure::validation(stage, err)
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

/// Either a file or stdout.
fn sink(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    match path {
        Some(p) => {
            let f = std::fs::File::create(p)
                .map_err(|e| Failure::validation("output", format!("{}: {e}", p.display())))?;
            Ok(Box::new(std::io::BufWriter::new(f)))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Sieve { limit, out } => {
            if limit > weilspec_core::specfun::MAX_SIEVE_LIMIT {
                return Err(Failure::validation(
                    "sieve",
                    format!(
                        "limit {limit} exceeds the supported maximum {}",
                        weilspec_core::specfun::MAX_SIEVE_LIMIT
                    ),
                ));
            }
            let table = MangoldtTable::sieve(limit);
            let mut w = sink(&out)?;
            let io = |e: std::io::Error| Failure::validation("sieve output", e);
            writeln!(w, "n,lambda_n").map_err(io)?;
            for entry in table.entries() {
                writeln!(w, "{},{}", entry.n, real(entry.weight)).map_err(io)?;
            }
            eprintln!(
                "sieved {} prime powers up to {limit}; psi({limit}) = {:.6}",
                table.entries().len(),
                table.chebyshev_psi(limit as f64)
            );
            Ok(())
        }
        Command::Xi {
            lambda,
            n,
            method,
            tol,
            out,
        } => {
            if lambda.is_nan() || lambda <= 1.0 {
                return Err(Failure::validation("xi", "lambda must exceed 1"));
            }
            let method: XiMethod = method.into();
            let ell = lambda.ln();
            let sieve_limit = match method {
                XiMethod::Riesz => lambda.ceil() as u64,
                XiMethod::Gram => (lambda * lambda).ceil() as u64,
            };
            let mangoldt = MangoldtTable::sieve(sieve_limit);
            let xi = build_xi(ell, n, &mangoldt, tol, method)
                .map_err(|e| Failure::from_core("xi", e))?;
            let mut w = sink(&out)?;
            let io = |e: std::io::Error| Failure::validation("xi output", e);
            writeln!(w, "k,xi_k").map_err(io)?;
            for k in -(n as i64)..=(n as i64) {
                writeln!(w, "{k},{}", real(xi.component(k))).map_err(io)?;
            }
            eprintln!(
                "xi({method}, lambda = {lambda}, N = {n}): norm = {:.12e}, \
                 im residue = {:.2e}, evenness defect = {:.2e}{}",
                xi.norm(),
                xi.im_residue(),
                xi.evenness_defect(),
                match xi.min_gram_eigenvalue() {
                    Some(e) => format!(", min Gram eigenvalue = {e:+.6e}"),
                    None => String::new(),
                },
                method = xi.method().as_str(),
            );
            Ok(())
        }
        Command::Spectrum {
            kappa,
            builder,
            solver,
            xi_method,
            out,
            matrix_out,
            commutator_report,
        } => {
            let cfg = ScanConfig {
                builder: builder.into(),
                solver: solver.into(),
                xi_method: xi_method.into(),
                ..ScanConfig::default()
            };
            // A spectrum needs no zero table; feed a one-entry stub and
            // skip the comparisons by requesting zero rows.
            let point = spectrum_only(kappa, &cfg)?;
            let mut w = sink(&out)?;
            let io = |e: std::io::Error| Failure::validation("spectrum output", e);
            writeln!(w, "k,nu_k").map_err(io)?;
            let n = point.0.n_max() as i64;
            for k in -n..=n {
                writeln!(w, "{k},{}", real(point.0.nu(k))).map_err(io)?;
            }
            if let Some(path) = matrix_out {
                let dense = point.1;
                let dim = 2 * point.0.n_max() + 1;
                let f = std::fs::File::create(&path).map_err(|e| {
                    Failure::validation("matrix output", format!("{}: {e}", path.display()))
                })?;
                let mut mw = std::io::BufWriter::new(f);
                for row in 0..dim {
                    let line: Vec<String> =
                        (0..dim).map(|col| real(dense[row * dim + col])).collect();
                    writeln!(mw, "{}", line.join(",")).map_err(io)?;
                }
            }
            eprintln!(
                "spectrum at kappa = {kappa}: dimension {}, |nu_0| = {:.3e}",
                2 * point.0.n_max() + 1,
                point.0.nu(0).abs()
            );
            if commutator_report {
                if kappa > 500 {
                    return Err(Failure::validation(
                        "spectrum",
                        "commutator report limited to kappa <= 500 (dense position matrix)",
                    ));
                }
                let basis = weilspec_core::oplab::FourierBasis::new(
                    weilspec_core::oplab::LogWindow::new(kappa as f64)
                        .map_err(|e| Failure::from_core("window", e))?,
                    kappa as usize,
                );
                let n4 = (kappa as usize / 4).max(1);
                let rows =
                    weilspec_core::oplab::commutator_identity_table(&basis, &[1, n4 / 2, n4]);
                eprintln!("commutator block report, C = i(XM - MX) vs identity:");
                eprintln!("  m,block_dim,max_deviation,frobenius_deviation");
                for row in rows {
                    eprintln!(
                        "  {},{},{:.6e},{:.6e}",
                        row.m, row.block_dim, row.max_deviation, row.frobenius_deviation
                    );
                }
            }
            Ok(())
        }
        Command::Compare {
            kappa,
            zeros,
            pairing,
            count,
            out,
        } => {
            let table = ZerosTable::load(&zeros).map_err(|e| Failure::from_core("zeros", e))?;
            let cfg = ScanConfig::default();
            let point =
                run_point(kappa, &cfg, &table).map_err(|e| Failure::from_core("compare", e))?;
            let count = count.min(kappa as usize).min(table.count());
            let report =
                pair_and_score(&point.spectrum, &table, pairing.into(), count, kappa as f64)
                    .map_err(|e| Failure::from_core("compare", e))?;
            let mut w = sink(&out)?;
            let io = |e: std::io::Error| Failure::validation("compare output", e);
            writeln!(w, "k,zero,eigenvalue,distance").map_err(io)?;
            for row in &report.rows {
                writeln!(
                    w,
                    "{},{},{},{}",
                    row.index,
                    real(row.zero),
                    real(row.eigenvalue),
                    real(row.distance)
                )
                .map_err(io)?;
            }
            let (bound, satisfied) =
                bound_check(&report).map_err(|e| Failure::from_core("compare", e))?;
            eprintln!(
                "pairing = {}, count = {count}: epsilon = {:.6e}, uniform = {:.6e}, \
                 bound 1/(4 ln kappa) = {:.6e} ({}), E ln kappa = {:.6e}",
                report.pairing.as_str(),
                report.epsilon,
                report.uniform,
                bound,
                if satisfied { "satisfied" } else { "violated" },
                report.uniform * (kappa as f64).ln(),
            );
            Ok(())
        }
        Command::VerifyEf {
            zeros,
            window,
            count,
            tol,
        } => {
            if window.is_nan() || window <= 0.0 {
                return Err(Failure::validation("verify-ef", "window must be positive"));
            }
            let table = ZerosTable::load(&zeros).map_err(|e| Failure::from_core("zeros", e))?;
            let sieve_limit = window.exp().ceil() as u64 + 1;
            let mangoldt = MangoldtTable::sieve(sieve_limit);
            let f = WindowedTestFunction::fejer(window);
            let report = verify_explicit_formula(&f, &mangoldt, &table, count, tol)
                .map_err(|e| Failure::from_core("verify-ef", e))?;
            println!(
                "W(g)        = {:+.10e}  (pole {:+.6e}, arch {:+.6e}, prime {:+.6e})",
                report.weil.total,
                report.weil.pole_term,
                report.weil.archimedean_term,
                report.weil.prime_term
            );
            println!(
                "zero side   = {:+.10e}  ({} zeros)",
                report.zero_sum, report.count
            );
            println!(
                "|difference| = {:.3e}  budget = tol {:.1e} + tail {:.3e} + quad {:.1e}",
                report.difference,
                report.tolerance,
                report.tail_bound,
                report.weil.quadrature_error
            );
            if report.pass {
                println!("explicit formula: PASS");
                Ok(())
            } else {
                println!("explicit formula: FAIL");
                Err(Failure::numerical(
                    "verify-ef",
                    format!("identity mismatch {:.3e}", report.difference),
                ))
            }
        }
        Command::Scan(args) => sweep::run(args),
        Command::VerifyZeros { zeros, count, tol } => {
            let table = ZerosTable::load(&zeros).map_err(|e| Failure::from_core("zeros", e))?;
            let report = zero_check_report(&table, count, tol)
                .map_err(|e| Failure::from_core("verify-zeros", e))?;
            println!("index,gamma,z_below,z_above,sign_change,margin");
            for row in &report.rows {
                println!(
                    "{},{},{},{},{},{}",
                    row.index,
                    real(row.gamma),
                    real(row.z_below),
                    real(row.z_above),
                    row.sign_change,
                    real(row.margin)
                );
            }
            let consistent = weilspec_core::weil::count_consistency(&table, 3.0)
                .map_err(|e| Failure::numerical("verify-zeros count consistency", e));
            match (report.all_pass(), consistent) {
                (true, Ok(n)) => {
                    eprintln!(
                        "verified {} sign changes; count estimate consistent over {n} ordinates",
                        report.rows.len()
                    );
                    Ok(())
                }
                (false, _) => {
                    let fail = report.first_failure().unwrap();
                    Err(Failure::numerical(
                        "verify-zeros",
                        format!(
                            "no sign change at index {} (gamma = {})",
                            fail.index, fail.gamma
                        ),
                    ))
                }
                (true, Err(f)) => Err(f),
            }
        }
    }
}

/// Spectrum plus the dense matrix, computed without a zero table.
fn spectrum_only(
    kappa: u64,
    cfg: &ScanConfig,
) -> CliResult<(weilspec_core::oplab::Spectrum, Vec<f64>)> {
    use weilspec_core::oplab::{
        build_generator, constrain_kill, constrain_perturb, eig_dense, eig_secular, FourierBasis,
        LogWindow,
    };
    if kappa < 2 {
        return Err(Failure::validation("spectrum", "kappa must be at least 2"));
    }
    let lambda = kappa as f64;
    let ell = lambda.ln();
    let mangoldt = MangoldtTable::sieve(kappa);
    let xi = build_xi(ell, kappa as usize, &mangoldt, cfg.tol, cfg.xi_method)
        .map_err(|e| Failure::from_core("xi", e))?;
    let basis = FourierBasis::new(
        LogWindow::new(lambda).map_err(|e| Failure::from_core("window", e))?,
        kappa as usize,
    );
    let mu = build_generator(&basis);
    let op = match cfg.builder {
        BuilderKind::Kill => constrain_kill(mu, &xi.unit()),
        BuilderKind::Perturb => constrain_perturb(mu, &xi.unit()),
    }
    .map_err(|e| Failure::from_core("constraint", e))?;
    let spectrum = match cfg.solver {
        SolverKind::Dense => eig_dense(&op),
        SolverKind::Secular => eig_secular(&op),
    }
    .map_err(|e| Failure::from_core("eigensolver", e))?;
    Ok((spectrum, op.dense()))
}
