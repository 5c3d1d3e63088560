//! The sweep subcommand: resumable, parallel over sweep points, with a
//! deterministic final CSV and the two figure SVGs.

use crate::{CliResult, Failure};
use clap::Args;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use weilspec_core::metrics::PairingMode;
use weilspec_core::plot::{error_curve_svg, rug_svg};
use weilspec_core::scan::{csv, run_point, sweep_point, ScanConfig, ScanRow};
use weilspec_core::zeros::ZerosTable;

#[derive(Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub from: u64,
    #[arg(long)]
    pub to: u64,
    #[arg(long, default_value_t = 50)]
    pub step: u64,
    /// Local-extremum scan radius around each sweep point.
    #[arg(long, default_value_t = 10)]
    pub radius: u64,
    #[arg(long)]
    pub zeros: PathBuf,
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, value_enum, default_value = "nearest")]
    pub pairing: crate::PairingArg,
    #[arg(long, value_enum, default_value = "kill")]
    pub builder: crate::BuilderArg,
    #[arg(long, value_enum, default_value = "secular")]
    pub solver: crate::SolverArg,
    #[arg(long, value_enum, default_value = "riesz")]
    pub xi_method: crate::XiMethodArg,
    #[arg(long, default_value_t = 1000)]
    pub max_zeros: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Rug-figure interval as `lo,hi`.
    #[arg(long, default_value = "0,60")]
    pub rug: String,
    /// Continue a partial sweep instead of starting over.
    #[arg(long)]
    pub resume: bool,
}

pub fn run(args: ScanArgs) -> CliResult<()> {
    let cfg = ScanConfig {
        kappa_from: args.from,
        kappa_to: args.to,
        kappa_step: args.step,
        scan_radius: args.radius,
        pairing: args.pairing.into(),
        builder: args.builder.into(),
        solver: args.solver.into(),
        xi_method: args.xi_method.into(),
        max_zeros: args.max_zeros,
        tol: args.tol,
    };
    cfg.validate().map_err(|e| Failure::from_core("scan", e))?;
    let (rug_lo, rug_hi) = parse_rug(&args.rug)?;
    let zeros = ZerosTable::load(&args.zeros).map_err(|e| Failure::from_core("zeros", e))?;

    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| Failure::validation("scan", format!("{}: {e}", args.out_dir.display())))?;
    let csv_path = args.out_dir.join("sweep.csv");
    let journal_path = args.out_dir.join("sweep.journal.csv");
    write_config(&args.out_dir, &cfg, rug_lo, rug_hi)?;

    // Resumption: completed rows live in the journal in completion order.
    let mut done: BTreeMap<u64, ScanRow> = BTreeMap::new();
    if args.resume && journal_path.exists() {
        let text = std::fs::read_to_string(&journal_path)
            .map_err(|e| Failure::validation("scan resume", e))?;
        for line in text.lines().skip(1) {
            if line.trim().is_empty() {
                continue;
            }
            match csv::parse_row(line) {
                Ok(row) => {
                    done.insert(row.kappa, row);
                }
                Err(_) => break, // torn tail line from an interrupted run
            }
        }
        eprintln!("resuming: {} completed points found", done.len());
    }

    let journal = Mutex::new(open_journal(&journal_path, done.is_empty())?);
    let pending: Vec<u64> = cfg
        .sweep_points()
        .into_iter()
        .filter(|k| !done.contains_key(k))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        }))
        .build()
        .map_err(|e| Failure::validation("scan", e))?;

    // Failed points are logged and the sweep continues.
    let failures = Mutex::new(Vec::<(u64, String)>::new());
    let computed: Vec<ScanRow> = pool.install(|| {
        pending
            .par_iter()
            .filter_map(|&kappa| match sweep_point(kappa, &cfg, &zeros) {
                Ok(row) => {
                    let mut j = journal.lock().unwrap();
                    let _ = writeln!(j, "{}", csv::format_row(&row));
                    let _ = j.flush();
                    Some(row)
                }
                Err(err) => {
                    failures.lock().unwrap().push((kappa, err.to_string()));
                    None
                }
            })
            .collect()
    });
    drop(journal);

    for row in computed {
        done.insert(row.kappa, row);
    }
    let failures = failures.into_inner().unwrap();
    for (kappa, err) in &failures {
        eprintln!("point kappa = {kappa} failed: {err}");
    }

    // Deterministic final CSV, ascending in kappa.
    let rows: Vec<ScanRow> = done.into_values().collect();
    let mut out = String::from(csv::HEADER);
    out.push('\n');
    for row in &rows {
        out.push_str(&csv::format_row(row));
        out.push('\n');
    }
    std::fs::write(&csv_path, out)
        .map_err(|e| Failure::validation("scan output", format!("{}: {e}", csv_path.display())))?;

    // Figure 1 style: extremum curves with the labelled inverse-log fit.
    let curve = error_curve_svg(&rows);
    std::fs::write(args.out_dir.join("error_curve.svg"), curve)
        .map_err(|e| Failure::validation("scan output", e))?;

    // Figure 2 style: rug of zeros vs eigenvalues of the largest
    // completed sweep point.
    if let Some(last) = rows.last() {
        let point =
            run_point(last.kappa, &cfg, &zeros).map_err(|e| Failure::from_core("scan rug", e))?;
        let svg = rug_svg(
            zeros.ordinates(),
            point.spectrum.eigenvalues(),
            rug_lo,
            rug_hi,
        );
        std::fs::write(args.out_dir.join("rug.svg"), svg)
            .map_err(|e| Failure::validation("scan output", e))?;
    }

    eprintln!(
        "sweep complete: {} rows -> {}",
        rows.len(),
        csv_path.display()
    );
    if !failures.is_empty() {
        return Err(Failure::numerical(
            "scan",
            format!("{} sweep points failed (see log above)", failures.len()),
        ));
    }
    Ok(())
}

fn parse_rug(text: &str) -> CliResult<(f64, f64)> {
    let parts: Vec<&str> = text.split(',').collect();
    let bad = || Failure::validation("scan", format!("cannot parse rug interval '{text}'"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    if hi <= lo || hi.is_nan() || lo.is_nan() {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn open_journal(path: &Path, truncate: bool) -> CliResult<std::fs::File> {
    let mut options = std::fs::OpenOptions::new();
    options.create(true).write(true);
    if truncate {
        options.truncate(true);
    } else {
        options.append(true);
    }
    let mut file = options
        .open(path)
        .map_err(|e| Failure::validation("scan journal", format!("{}: {e}", path.display())))?;
    if truncate {
        writeln!(file, "{}", csv::HEADER).map_err(|e| Failure::validation("scan journal", e))?;
    }
    Ok(file)
}

fn write_config(dir: &Path, cfg: &ScanConfig, rug_lo: f64, rug_hi: f64) -> CliResult<()> {
    let text = format!(
        "kappa_from = {}\nkappa_to = {}\nkappa_step = {}\nscan_radius = {}\n\
         pairing = {}\nbuilder = {}\nsolver = {}\nxi_method = {}\nmax_zeros = {}\n\
         tol = {:e}\nrug_interval = [{rug_lo}, {rug_hi}]\n",
        cfg.kappa_from,
        cfg.kappa_to,
        cfg.kappa_step,
        cfg.scan_radius,
        match cfg.pairing {
            PairingMode::SortedIndex => "sorted",
            PairingMode::NearestEigenvalue => "nearest",
        },
        cfg.builder.as_str(),
        cfg.solver.as_str(),
        cfg.xi_method.as_str(),
        cfg.max_zeros,
        cfg.tol,
    );
    std::fs::write(dir.join("config.txt"), text).map_err(|e| Failure::validation("scan config", e))
}
