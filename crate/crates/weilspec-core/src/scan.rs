//! The kappa-sweep harness: a single dial `kappa = N = lambda` drives the
//! window, the mode cutoff and the comparison length.

use crate::error::{Error, Result};
use crate::metrics::{pair_and_score, ErrorReport, PairingMode};
use crate::oplab::{
    build_generator, constrain_kill, constrain_perturb, eig_dense, eig_secular, BuilderKind,
    FourierBasis, LogWindow, SolverKind, Spectrum,
};
use crate::specfun::MangoldtTable;
use crate::weil::{build_xi, XiMethod};
use crate::zeros::ZerosTable;

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub kappa_from: u64,
    pub kappa_to: u64,
    pub kappa_step: u64,
    /// Integer radius of the local-extremum scan around each sweep point.
    pub scan_radius: u64,
    /// Which pairing's uniform error drives the extremum scan.
    pub pairing: PairingMode,
    pub builder: BuilderKind,
    pub solver: SolverKind,
    pub xi_method: XiMethod,
    /// Compare against at most this many zeros (the protocol caps at 1000).
    pub max_zeros: usize,
    /// Archimedean quadrature budget per Weil-vector entry.
    pub tol: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            kappa_from: 50,
            kappa_to: 1000,
            kappa_step: 50,
            scan_radius: 10,
            pairing: PairingMode::NearestEigenvalue,
            builder: BuilderKind::Kill,
            solver: SolverKind::Secular,
            xi_method: XiMethod::Riesz,
            max_zeros: 1000,
            tol: 1e-9,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.kappa_from < 2 {
            return Err(Error::InvalidArgument(
                "kappa_from must be at least 2".into(),
            ));
        }
        if self.kappa_step < 1 {
            return Err(Error::InvalidArgument("kappa_step must be >= 1".into()));
        }
        if self.kappa_to < self.kappa_from {
            return Err(Error::InvalidArgument(
                "kappa_to must not precede kappa_from".into(),
            ));
        }
        Ok(())
    }

    pub fn sweep_points(&self) -> Vec<u64> {
        (self.kappa_from..=self.kappa_to)
            .step_by(self.kappa_step as usize)
            .collect()
    }
}

/// One sweep point: both pairings' errors, the lower bound, the conjecture
/// product, and the local extrema around the point.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub kappa: u64,
    pub dimension: usize,
    pub epsilon_sorted: f64,
    pub epsilon_nearest: f64,
    pub uniform_sorted: f64,
    pub uniform_nearest: f64,
    /// `1/(4 ln kappa)`.
    pub bound: f64,
    /// `uniform_nearest * ln kappa`.
    pub product: f64,
    pub kappa_min: u64,
    pub e_min: f64,
    pub kappa_max: u64,
    pub e_max: f64,
    pub secular_fallback: bool,
    pub wall_time_ms: f64,
}

/// Everything computed at one kappa.
#[derive(Debug)]
pub struct PointResult {
    pub kappa: u64,
    pub spectrum: Spectrum,
    pub sorted: ErrorReport,
    pub nearest: ErrorReport,
    pub secular_fallback: bool,
}

impl PointResult {
    /// The uniform error under the configured extremum pairing.
    pub fn uniform(&self, pairing: PairingMode) -> f64 {
        match pairing {
            PairingMode::SortedIndex => self.sorted.uniform,
            PairingMode::NearestEigenvalue => self.nearest.uniform,
        }
    }
}

/// Build the operator at `kappa = N = lambda` and score it against the
/// zero table under both pairings. Deterministic for fixed inputs.
pub fn run_point(kappa: u64, cfg: &ScanConfig, zeros: &ZerosTable) -> Result<PointResult> {
    if kappa < 2 {
        return Err(Error::InvalidArgument(format!(
            "kappa must be at least 2 (got {kappa})"
        )));
    }
    let lambda = kappa as f64;
    let ell = lambda.ln();
    let n_max = kappa as usize;
    let mangoldt = MangoldtTable::sieve(kappa);
    let xi = build_xi(ell, n_max, &mangoldt, cfg.tol, cfg.xi_method)?;
    let xi_hat = xi.unit();
    let mu = build_generator(&FourierBasis::new(LogWindow::new(lambda)?, n_max));
    let op = match cfg.builder {
        BuilderKind::Kill => constrain_kill(mu, &xi_hat)?,
        BuilderKind::Perturb => constrain_perturb(mu, &xi_hat)?,
    };

    let mut secular_fallback = false;
    let spectrum = match cfg.solver {
        SolverKind::Dense => eig_dense(&op)?,
        SolverKind::Secular => match eig_secular(&op) {
            Ok(s) => s,
            Err(Error::SecularBracketing { .. }) => {
                secular_fallback = true;
                eig_dense(&op)?
            }
            Err(other) => return Err(other),
        },
    };
    spectrum.validate_kernel(1e-10 * op.diag_norm())?;

    let count = n_max.min(cfg.max_zeros).min(zeros.count());
    let sorted = pair_and_score(&spectrum, zeros, PairingMode::SortedIndex, count, lambda)?;
    let mut nearest = pair_and_score(
        &spectrum,
        zeros,
        PairingMode::NearestEigenvalue,
        count,
        lambda,
    )?;
    nearest.kappa_product = Some(nearest.uniform * lambda.ln());
    Ok(PointResult {
        kappa,
        spectrum,
        sorted,
        nearest,
        secular_fallback,
    })
}

/// Extremum selection over scanned values; ties break toward smaller kappa.
pub(crate) fn select_extrema(values: &[(u64, f64)]) -> (u64, f64, u64, f64) {
    debug_assert!(!values.is_empty());
    let mut min_at = values[0].0;
    let mut min_val = f64::INFINITY;
    let mut max_at = values[0].0;
    let mut max_val = f64::NEG_INFINITY;
    for &(kappa, e) in values {
        if e < min_val {
            min_val = e;
            min_at = kappa;
        }
        if e > max_val {
            max_val = e;
            max_at = kappa;
        }
    }
    (min_at, min_val, max_at, max_val)
}

/// Scan every integer kappa in `[center - radius, center + radius]` and
/// return the arguments and values of the minimal and maximal uniform
/// error. Ties break toward smaller kappa.
pub fn local_extrema(
    center: u64,
    radius: u64,
    cfg: &ScanConfig,
    zeros: &ZerosTable,
) -> Result<(u64, f64, u64, f64)> {
    let lo = center.saturating_sub(radius).max(2);
    let hi = center + radius;
    let mut values = Vec::with_capacity((hi - lo + 1) as usize);
    for kappa in lo..=hi {
        let point = run_point(kappa, cfg, zeros)?;
        values.push((kappa, point.uniform(cfg.pairing)));
    }
    Ok(select_extrema(&values))
}

/// Full evaluation of one sweep point including its extremum scan.
pub fn sweep_point(kappa: u64, cfg: &ScanConfig, zeros: &ZerosTable) -> Result<ScanRow> {
    let started = std::time::Instant::now();
    let point = run_point(kappa, cfg, zeros)?;
    let (kappa_min, e_min, kappa_max, e_max) = if cfg.scan_radius == 0 {
        let e = point.uniform(cfg.pairing);
        (kappa, e, kappa, e)
    } else {
        local_extrema(kappa, cfg.scan_radius, cfg, zeros)?
    };
    Ok(ScanRow {
        kappa,
        dimension: point.spectrum.dimension(),
        epsilon_sorted: point.sorted.epsilon,
        epsilon_nearest: point.nearest.epsilon,
        uniform_sorted: point.sorted.uniform,
        uniform_nearest: point.nearest.uniform,
        bound: 0.25 / (kappa as f64).ln(),
        product: point.nearest.uniform * (kappa as f64).ln(),
        kappa_min,
        e_min,
        kappa_max,
        e_max,
        secular_fallback: point.secular_fallback,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

pub mod csv {
    //! Deterministic CSV layout for sweep rows: header + one row per point,
    //! reals at 17 significant digits so the dump is loss-free.

    use super::ScanRow;
    use crate::error::{Error, Result};

    pub const HEADER: &str = "kappa,dimension,epsilon_sorted,epsilon_nearest,uniform_sorted,\
                              uniform_nearest,bound,product,kappa_min,e_min,kappa_max,e_max,\
                              secular_fallback,wall_time_ms";

    pub fn real(x: f64) -> String {
        format!("{x:.16e}")
    }

    pub fn format_row(row: &ScanRow) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{:.3}",
            row.kappa,
            row.dimension,
            real(row.epsilon_sorted),
            real(row.epsilon_nearest),
            real(row.uniform_sorted),
            real(row.uniform_nearest),
            real(row.bound),
            real(row.product),
            row.kappa_min,
            real(row.e_min),
            row.kappa_max,
            real(row.e_max),
            row.secular_fallback,
            row.wall_time_ms,
        )
    }

    /// Row without the wall-time column, for determinism comparisons.
    pub fn format_row_stable(row: &ScanRow) -> String {
        let full = format_row(row);
        full[..full.rfind(',').unwrap()].to_string()
    }

    pub fn parse_row(line: &str) -> Result<ScanRow> {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 14 {
            return Err(Error::InvalidArgument(format!(
                "sweep CSV row has {} fields, expected 14",
                fields.len()
            )));
        }
        let f = |i: usize| -> Result<f64> {
            fields[i]
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad real in CSV field {i}")))
        };
        let u = |i: usize| -> Result<u64> {
            fields[i]
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad integer in CSV field {i}")))
        };
        Ok(ScanRow {
            kappa: u(0)?,
            dimension: u(1)? as usize,
            epsilon_sorted: f(2)?,
            epsilon_nearest: f(3)?,
            uniform_sorted: f(4)?,
            uniform_nearest: f(5)?,
            bound: f(6)?,
            product: f(7)?,
            kappa_min: u(8)?,
            e_min: f(9)?,
            kappa_max: u(10)?,
            e_max: f(11)?,
            secular_fallback: fields[12] == "true",
            wall_time_ms: f(13)?,
        })
    }
}
