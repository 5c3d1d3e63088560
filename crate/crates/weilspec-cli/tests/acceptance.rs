//! Acceptance suite: one pass/fail line per criterion, every tolerance
//! pinned in code. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines on success.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::time::Instant;
use weilspec_core::metrics::{pair_and_score, PairingMode};
use weilspec_core::oplab::{
    build_generator, constrain_kill, eig_dense, eig_secular, uncertainty_report, FourierBasis,
    LogWindow,
};
use weilspec_core::scan::{csv, ScanConfig};
use weilspec_core::specfun::{re_digamma_quarter_line, MangoldtTable};
use weilspec_core::weil::{build_xi, verify_explicit_formula, WindowedTestFunction, XiMethod};
use weilspec_core::zeros::{verify_first_zeros, ZerosTable};

fn zeros_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros1000.txt")
}

/// Figure-3 table: (index, zero, eigenvalue, printed uniform error).
const FIGURE3: [(usize, f64, f64, f64); 25] = [
    (976, 1391.8532004433, 1391.4514, 4.02e-1),
    (977, 1392.6440277886, 1392.8618, 2.18e-1),
    (978, 1393.4334017408, 1393.3467, 8.67e-2),
    (979, 1394.8841846757, 1394.7680, 1.16e-1),
    (980, 1396.5441631237, 1396.3391, 2.05e-1),
    (981, 1397.8346233214, 1397.9900, 1.55e-1),
    (982, 1398.8376752014, 1399.0261, 1.88e-1),
    (983, 1399.8394729412, 1399.7780, 6.15e-2),
    (984, 1400.4269462974, 1400.5144, 8.75e-2),
    (985, 1402.5643472501, 1402.5598, 4.53e-3),
    (986, 1402.9737476409, 1402.5598, 4.14e-1),
    (987, 1404.0062921705, 1403.8400, 1.66e-1),
    (988, 1405.6669750593, 1405.5550, 1.12e-1),
    (989, 1407.0851427764, 1406.9932, 9.20e-2),
    (990, 1408.1363074962, 1408.4056, 2.69e-1),
    (991, 1409.3206810798, 1409.1783, 1.42e-1),
    (992, 1410.0248107258, 1409.8967, 1.28e-1),
    (993, 1411.2570568157, 1411.2466, 1.05e-2),
    (994, 1411.9656534618, 1411.6276, 3.38e-1),
    (995, 1413.8431487886, 1413.9023, 5.92e-2),
    (996, 1415.5857847955, 1415.7133, 1.27e-1),
    (997, 1415.7815813033, 1415.7133, 6.83e-2),
    (998, 1417.1028229338, 1417.0852, 1.76e-2),
    (999, 1418.6969638525, 1418.3616, 3.35e-1),
    (1000, 1419.4224809460, 1419.7621, 3.40e-1),
];

struct Gate {
    results: Vec<(String, Result<String, String>)>,
}

impl Gate {
    fn run(&mut self, name: &str, body: impl FnOnce() -> Result<String, String>) {
        let started = Instant::now();
        let outcome = body();
        let elapsed = started.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("[PASS] {name} ({elapsed:.2}s) {detail}"),
            Err(detail) => println!("[FAIL] {name} ({elapsed:.2}s) {detail}"),
        }
        self.results.push((name.to_string(), outcome));
    }
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn protocol_operator(kappa: u64) -> (FourierBasis, weilspec_core::oplab::ConstrainedOperator) {
    let lambda = kappa as f64;
    let mangoldt = MangoldtTable::sieve(kappa);
    let xi = build_xi(
        lambda.ln(),
        kappa as usize,
        &mangoldt,
        1e-9,
        XiMethod::Riesz,
    )
    .unwrap();
    let basis = FourierBasis::new(LogWindow::new(lambda).unwrap(), kappa as usize);
    let mu = build_generator(&basis);
    let op = constrain_kill(mu, &xi.unit()).unwrap();
    (basis, op)
}

#[test]
fn acceptance() {
    let mut gate = Gate {
        results: Vec::new(),
    };
    let zeros = ZerosTable::load(zeros_path()).expect("shipped zero table");

    gate.run(
        "criterion 1: explicit-formula identity (fejer a=2, 1000 zeros)",
        || {
            let started = Instant::now();
            let mangoldt = MangoldtTable::sieve(10);
            let f = WindowedTestFunction::fejer(2.0);
            let report = verify_explicit_formula(&f, &mangoldt, &zeros, 1000, 1e-2)
                .map_err(|e| e.to_string())?;
            check(
                report.difference <= 1e-2,
                format!("difference {:e} > 1e-2", report.difference),
            )?;
            check(
                report.tail_bound <= 3e-3,
                format!("tail bound {:e} > 3e-3", report.tail_bound),
            )?;
            check(report.pass, "verification flagged fail")?;
            let secs = started.elapsed().as_secs_f64();
            check(secs < 60.0, format!("took {secs:.1}s >= 60s"))?;
            Ok(format!(
                "|W - zero side| = {:.3e}, tail bound = {:.3e}",
                report.difference, report.tail_bound
            ))
        },
    );

    gate.run("criterion 2: Figure 3 arithmetic reproduction", || {
        let started = Instant::now();
        // Distinct eigenvalues of the paper's sub-table, ascending.
        let mut nus: Vec<f64> = FIGURE3.iter().map(|r| r.2).collect();
        nus.sort_by(f64::total_cmp);
        nus.dedup();
        check(
            nus.len() == 23,
            "rows 985/986 and 996/997 share eigenvalues",
        )?;
        // A synthetic symmetric spectrum holding exactly these positives.
        let mut diag: Vec<f64> = nus.iter().map(|&v| -v).collect();
        diag.push(0.0);
        diag.extend_from_slice(&nus);
        diag.sort_by(f64::total_cmp);
        let mut xi = vec![0.0; diag.len()];
        xi[diag.len() / 2] = 1.0;
        let spectrum = eig_dense(&constrain_kill(diag, &xi).unwrap()).unwrap();
        let table =
            ZerosTable::from_ordinates(FIGURE3.iter().map(|r| r.1).collect(), "figure3").unwrap();
        let report = pair_and_score(
            &spectrum,
            &table,
            PairingMode::NearestEigenvalue,
            25,
            7050.0,
        )
        .map_err(|e| e.to_string())?;
        // Each computed distance reproduces the printed value to 3
        // significant figures, within the quantisation radius of the
        // 4-decimal eigenvalue column (the printed E was computed from
        // unrounded eigenvalues; rows 985/989/996 sit inside that radius).
        for (row, &(index, _, nu_printed, e_printed)) in report.rows.iter().zip(&FIGURE3) {
            let half_ulp_3sf = 0.5 * 10f64.powf(e_printed.log10().floor() - 2.0);
            let tolerance = half_ulp_3sf + 5e-5;
            check(
                (row.eigenvalue - nu_printed).abs() < 1e-9,
                format!(
                    "row {index}: paired {} instead of {nu_printed}",
                    row.eigenvalue
                ),
            )?;
            check(
                (row.distance - e_printed).abs() <= tolerance,
                format!(
                    "row {index}: distance {:.6e} vs printed {e_printed:.3e} (tol {tolerance:.1e})",
                    row.distance
                ),
            )?;
        }
        // Duplicated-eigenvalue rows pair to the same value.
        check(
            report.rows[9].eigenvalue == report.rows[10].eigenvalue,
            "985/986 differ",
        )?;
        check(
            report.rows[20].eigenvalue == report.rows[21].eigenvalue,
            "996/997 differ",
        )?;
        // Sub-sample mean respects the lower bound at lambda = 7050.
        let bound = 0.25 / 7050f64.ln();
        check(
            report.epsilon >= bound,
            format!("mean {:.4} below bound {bound:.4}", report.epsilon),
        )?;
        check(
            (report.epsilon - 0.16579).abs() < 5e-4,
            format!("sub-sample mean {:.5} strays from 0.16579", report.epsilon),
        )?;
        let secs = started.elapsed().as_secs_f64();
        check(secs < 1.0, format!("took {secs:.2}s >= 1s"))?;
        Ok(format!("25 rows, sub-sample mean = {:.4}", report.epsilon))
    });

    gate.run("criterion 3: operator invariants at kappa = 50", || {
        let (basis, op) = protocol_operator(50);
        let scale = op.diag_norm();
        let spectrum = eig_secular(&op).map_err(|e| e.to_string())?;
        check(spectrum.dimension() == 101, "dimension 2*50+1")?;
        let nu0 = spectrum.nu(0).abs();
        check(nu0 <= 1e-10 * scale, format!("|nu_0| = {nu0:e}"))?;
        let sym = spectrum.symmetry_defect();
        check(sym <= 1e-9 * scale, format!("symmetry defect {sym:e}"))?;
        let n = basis.n_max() as i64;
        for k in -n..=n {
            let lo = if k - 1 < -n {
                f64::NEG_INFINITY
            } else {
                basis.frequency(k - 1)
            };
            let hi = if k + 1 > n {
                f64::INFINITY
            } else {
                basis.frequency(k + 1)
            };
            let nu = spectrum.nu(k);
            check(
                lo <= nu + 1e-12 * scale && nu <= hi + 1e-12 * scale,
                format!("interlacing fails at k = {k}"),
            )?;
        }
        Ok(format!("|nu_0| = {nu0:.2e}, symmetry defect = {sym:.2e}"))
    });

    gate.run(
        "criterion 4: solver equivalence (kappa in {25,50,100,200})",
        || {
            let mut worst_all: f64 = 0.0;
            for kappa in [25u64, 50, 100, 200] {
                let (_, op) = protocol_operator(kappa);
                let scale = op.diag_norm();
                let dense = eig_dense(&op).map_err(|e| e.to_string())?;
                let secular = eig_secular(&op).map_err(|e| e.to_string())?;
                let worst = dense
                    .eigenvalues()
                    .iter()
                    .zip(secular.eigenvalues())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max);
                check(
                    worst <= 1e-8 * scale,
                    format!("kappa = {kappa}: disagreement {worst:e} > 1e-8 * {scale:.1}"),
                )?;
                worst_all = worst_all.max(worst / scale);
            }
            Ok(format!("worst relative disagreement = {worst_all:.2e}"))
        },
    );

    gate.run(
        "criterion 5: lower bound at sweep points (kappa = 50..500)",
        || {
            let cfg = ScanConfig::default();
            let mut min_margin = f64::INFINITY;
            for kappa in (50..=500).step_by(50) {
                let point = weilspec_core::scan::run_point(kappa, &cfg, &zeros)
                    .map_err(|e| e.to_string())?;
                let bound = 0.25 / (kappa as f64).ln();
                if kappa == 50 {
                    check(
                        (bound - 0.0639).abs() < 1e-4,
                        format!("bound at 50 is {bound:.4}, expected 0.0639"),
                    )?;
                }
                check(
                    point.sorted.epsilon >= bound,
                    format!(
                        "kappa = {kappa}: epsilon_sorted {:.4e} < {bound:.4e}",
                        point.sorted.epsilon
                    ),
                )?;
                min_margin = min_margin.min(point.sorted.epsilon / bound);
            }
            Ok(format!("min epsilon/bound ratio = {min_margin:.1}"))
        },
    );

    gate.run("criterion 6: xi structure at (ln 200, N = 200)", || {
        let mangoldt = MangoldtTable::sieve(200);
        let xi = build_xi(200f64.ln(), 200, &mangoldt, 1e-9, XiMethod::Riesz)
            .map_err(|e| e.to_string())?;
        let max_abs = xi.components().iter().fold(0.0f64, |m, x| m.max(x.abs()));
        check(
            xi.im_residue() <= 1e-9 * max_abs,
            format!("im residue {:e}", xi.im_residue()),
        )?;
        check(
            xi.evenness_defect() <= 1e-8 * max_abs,
            format!("evenness defect {:e}", xi.evenness_defect()),
        )?;
        Ok(format!(
            "im residue = {:.1e}, evenness defect = {:.1e}, norm = {:.6}",
            xi.im_residue(),
            xi.evenness_defect(),
            xi.norm()
        ))
    });

    gate.run("criterion 7: uncertainty premises at kappa = 50 (100 states)", || {
        let (basis, op) = protocol_operator(50);
        let ell = basis.window().half_width();
        let n = basis.dimension();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        let mut product_lo = f64::INFINITY;
        let mut product_hi = f64::NEG_INFINITY;
        for trial in 0..100 {
            let mut psi: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in psi.iter_mut() {
                *z /= norm;
            }
            let report = uncertainty_report(&psi, &basis, &op).map_err(|e| e.to_string())?;
            check(
                report.sigma_u <= ell,
                format!("trial {trial}: sigma_u {} > ln lambda {ell}", report.sigma_u),
            )?;
            product_lo = product_lo.min(report.product);
            product_hi = product_hi.max(report.product);
        }
        Ok(format!(
            "sigma_u <= ln lambda = {ell:.4} throughout; products in [{product_lo:.3}, {product_hi:.3}]"
        ))
    });

    gate.run("criterion 8: special functions", || {
        const GAMMA: f64 = 0.577_215_664_901_532_9;
        let psi_quarter = re_digamma_quarter_line(0.0);
        let identity = psi_quarter + GAMMA + std::f64::consts::PI / 2.0 + 3.0 * 2f64.ln();
        check(
            identity.abs() <= 1e-10,
            format!("psi(1/4) identity residue {identity:e}"),
        )?;
        let table = MangoldtTable::sieve(10);
        let sum: f64 = table.entries().iter().map(|e| e.weight).sum();
        let residue = (sum - 2520f64.ln()).abs();
        check(
            residue <= 1e-12,
            format!("Mangoldt sum residue {residue:e}"),
        )?;
        Ok(format!(
            "psi(1/4) residue = {:.1e}, ln lcm(1..10) residue = {residue:.1e}",
            identity.abs()
        ))
    });

    gate.run("criterion 9: Hardy Z oracle on the first 10 zeros", || {
        let report = verify_first_zeros(&zeros, 10, 1e-4).map_err(|e| e.to_string())?;
        check(report.all_pass(), "sign change missing")?;
        // Negative control: corrupt the second ordinate.
        let mut ords: Vec<f64> = zeros.ordinates()[..10].to_vec();
        ords[1] = 21.5;
        let corrupted = ZerosTable::from_ordinates(ords, "corrupted").unwrap();
        match verify_first_zeros(&corrupted, 10, 1e-4) {
            Err(weilspec_core::Error::ZeroSignChange { index: 2, .. }) => {}
            other => {
                return Err(format!(
                    "corrupted table should fail at index 2, got {other:?}"
                ))
            }
        }
        let min_margin = report
            .rows
            .iter()
            .map(|r| r.margin)
            .fold(f64::INFINITY, f64::min);
        Ok(format!(
            "10 sign changes verified, min |Z| margin = {min_margin:.2e}"
        ))
    });

    gate.run(
        "criterion 10: mechanical sweep protocol (desk default)",
        || {
            // The paper-scale magnitudes (E ~ 0.1-0.4 at kappa = 7050) are NOT
            // reproducible from the pinned window-mode construction: interlacing
            // around the uniform grid pi k/ln kappa caps nearest-pairing gaps at
            // pi/(2 ln kappa) while the zero ordinates outrun the spectral range.
            // The acceptance requirement is mechanical completion of the
            // protocol: the desk-scale default sweep below, and the long-running
            // 50..7500 mode via `weilspec scan --to 7500` (structurally
            // identical, exercised externally; see README).
            let started = Instant::now();
            let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
            let status = std::process::Command::new(env!("CARGO_BIN_EXE_weilspec"))
                .args([
                    "scan", "--from", "50", "--to", "1000", "--step", "50", "--radius", "10",
                    "--zeros",
                ])
                .arg(zeros_path())
                .arg("--out-dir")
                .arg(dir.path())
                .status()
                .map_err(|e| e.to_string())?;
            check(status.success(), "desk sweep failed")?;
            let secs = started.elapsed().as_secs_f64();
            check(
                secs < 1800.0,
                format!("desk sweep took {secs:.0}s >= 30 min"),
            )?;
            let csv_text =
                std::fs::read_to_string(dir.path().join("sweep.csv")).map_err(|e| e.to_string())?;
            let rows: Vec<_> = csv_text.lines().skip(1).collect();
            check(
                rows.len() == 20,
                format!("{} rows, expected 20", rows.len()),
            )?;
            for line in &rows {
                let row = csv::parse_row(line).map_err(|e| e.to_string())?;
                check(
                    row.epsilon_sorted >= row.bound,
                    format!("kappa = {}: bound violated", row.kappa),
                )?;
                check(row.e_min <= row.e_max, "extrema ordered")?;
            }
            for artifact in ["error_curve.svg", "rug.svg", "config.txt"] {
                check(
                    dir.path().join(artifact).exists(),
                    format!("{artifact} missing"),
                )?;
            }
            let svg = std::fs::read_to_string(dir.path().join("error_curve.svg"))
                .map_err(|e| e.to_string())?;
            check(
                svg.contains("fit:"),
                "reference curve must be labelled a fit",
            )?;

            // Deterministic rerun on a sub-range.
            let rerun_a = tempfile::tempdir().map_err(|e| e.to_string())?;
            let rerun_b = tempfile::tempdir().map_err(|e| e.to_string())?;
            for d in [&rerun_a, &rerun_b] {
                let status = std::process::Command::new(env!("CARGO_BIN_EXE_weilspec"))
                    .args([
                        "scan", "--from", "50", "--to", "200", "--step", "50", "--radius", "2",
                        "--zeros",
                    ])
                    .arg(zeros_path())
                    .arg("--out-dir")
                    .arg(d.path())
                    .status()
                    .map_err(|e| e.to_string())?;
                check(status.success(), "rerun failed")?;
            }
            let strip = |p: &Path| -> Result<String, String> {
                let text = std::fs::read_to_string(p).map_err(|e| e.to_string())?;
                Ok(text
                    .lines()
                    .map(|l| {
                        l.rsplit_once(',')
                            .map(|(head, _)| head.to_string())
                            .unwrap_or_default()
                    })
                    .collect::<Vec<_>>()
                    .join("\n"))
            };
            check(
                strip(&rerun_a.path().join("sweep.csv"))?
                    == strip(&rerun_b.path().join("sweep.csv"))?,
                "rerun differs",
            )?;
            Ok(format!(
                "20 rows + figures in {secs:.0}s; rerun byte-identical (wall time excluded)"
            ))
        },
    );

    println!();
    let failed: Vec<&str> = gate
        .results
        .iter()
        .filter(|(_, r)| r.is_err())
        .map(|(n, _)| n.as_str())
        .collect();
    assert!(
        failed.is_empty(),
        "acceptance criteria failed: {}",
        failed.join("; ")
    );
}

#[test]
fn fig3_rug_figure_renders_25_upper_ticks() {
    // Rug over [1390, 1420] driven by the paper's zero sub-table.
    let zeros: Vec<f64> = FIGURE3.iter().map(|r| r.1).collect();
    let nus: Vec<f64> = FIGURE3.iter().map(|r| r.2).collect();
    let svg = weilspec_core::plot::rug_svg(&zeros, &nus, 1390.0, 1420.0);
    let upper = svg.split("id=\"zeros\"").nth(1).unwrap();
    let upper = &upper[..upper.find("</g>").unwrap()];
    assert_eq!(upper.matches("<line").count(), 25);
}
