//! Acceptance criteria, each run at its stated tolerance. Prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.

use std::f64::consts::TAU;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use moshinsky2d::oracle::{
    choose_radial_domain, fourier_nodes, fourier_partial, gauss_legendre, nystrom_eigenvalues,
};
use moshinsky2d::{
    asymptotic_eta, asymptotic_k_eta, collective_occupancy, condensate_deficit_large_n,
    cutoffs_for_tail, derive_params, occupancy, participation_collective, participation_fragment,
    participation_total, rdm_kernel, rdm_partial, reconstruct_rdm, DerivedParams, PolarPoint,
    SystemParams,
};
use moshinsky2d_cli::figure::{figure_table, FigureOverrides, Panel};
use moshinsky2d_cli::output::Cell;

const STRESS_N: [u64; 3] = [2, 50, 500];
const STRESS_LAMBDA: [f64; 4] = [0.1, 1.0, 1e2, 1e4];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn params(n: u64, lambda: f64) -> (SystemParams, DerivedParams) {
    let p = SystemParams::new(n, lambda).expect("valid parameters");
    (p, derive_params(p).expect("valid parameters"))
}

fn stress_grid() -> Vec<(u64, f64)> {
    STRESS_N.iter().flat_map(|&n| STRESS_LAMBDA.iter().map(move |&l| (n, l))).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

/// `N` log-uniform on `[2, 1e6]`; lambda log-uniform on `[1e-6, 1e8]`, with a
/// fifth of the draws on the attractive side and a few exact zeros.
fn random_points(count: usize, seed: u64) -> Vec<(u64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = 10f64.powf(rng.gen_range(2f64.log10()..=6.0)).round() as u64;
            let lower = -1.0 / (2.0 * n as f64) + 1e-6;
            let u: f64 = rng.gen();
            let lambda = if u < 0.02 {
                0.0
            } else if u < 0.2 && lower < 0.0 {
                rng.gen_range(lower..0.0)
            } else {
                10f64.powf(rng.gen_range(-6.0..=8.0))
            };
            (n, lambda)
        })
        .collect()
}

fn c1_parameter_identities() -> Outcome {
    let mut worst_match = 0.0f64;
    let mut worst_norm = 0.0f64;
    for (n, lambda) in random_points(1000, 1) {
        let (_, d) = params(n, lambda);
        let (rb, rc) = d.matching_residuals();
        worst_match = worst_match.max(rb).max(rc);
        worst_norm = worst_norm.max(d.normalization_residual());
    }
    outcome(
        worst_match <= 1e-12 && worst_norm <= 1e-12,
        format!("1000 random points: matching {worst_match:.2e}, normalization {worst_norm:.2e} (tol 1e-12)"),
    )
}

fn c2_non_interacting_limit() -> Outcome {
    let mut worst = 0.0f64;
    for n in STRESS_N {
        let (_, d) = params(n, 0.0);
        for v in [
            occupancy(&d, 0, 0),
            participation_total(&d),
            participation_collective(&d),
            participation_fragment(&d),
            collective_occupancy(&d, 0),
        ] {
            worst = worst.max((v - 1.0).abs());
        }
    }
    outcome(worst <= 1e-14, format!("lambda00, K, K_eta, kappa, eta0 at N = 2, 50, 500: max |x - 1| = {worst:.2e} (tol 1e-14)"))
}

fn c3_oracle_equivalence() -> Outcome {
    const M: usize = 200;
    let jobs: Vec<(u64, f64, i64)> =
        stress_grid().into_iter().flat_map(|(n, lam)| (0..=6).map(move |l| (n, lam, l))).collect();
    let results: Vec<Result<f64, String>> = jobs
        .par_iter()
        .map(|&(n, lam, l)| {
            let (_, d) = params(n, lam);
            let r_max = choose_radial_domain(&d, 1e-12, 8, 6).map_err(|e| e.to_string())?;
            let ev = nystrom_eigenvalues(&d, l, M, r_max).map_err(|e| e.to_string())?;
            Ok((0..=8u64)
                .map(|k| (ev[k as usize].max(0.0) - occupancy(&d, k, l)).abs())
                .fold(0.0, f64::max))
        })
        .collect();
    let mut worst = 0.0f64;
    for (r, (n, lam, l)) in results.into_iter().zip(&jobs) {
        match r {
            Ok(dev) => worst = worst.max(dev),
            Err(e) => return outcome(false, format!("Nyström solve failed at N={n}, lambda={lam}, l={l}: {e}")),
        }
    }
    outcome(worst <= 1e-8, format!("n <= 8, |l| <= 6, 12 stress points, m = {M}: max |Δλ| = {worst:.2e} (tol 1e-8)"))
}

fn c4_bessel_reduction() -> Outcome {
    let mut worst = 0.0f64;
    for (n, lam) in stress_grid() {
        let (_, d) = params(n, lam);
        let r_max = choose_radial_domain(&d, 1e-12, 8, 6).expect("valid epsilon");
        let radii: Vec<f64> = (0..5).map(|i| r_max * i as f64 / 4.0).collect();
        for l in 0..=6i64 {
            for &r in &radii {
                for &r2 in &radii {
                    let m = fourier_nodes(&d, l, r, r2);
                    let numeric = fourier_partial(&d, l, r, r2, m).expect("rule is fine enough");
                    worst = worst.max((numeric - rdm_partial(&d, l, r, r2)).abs());
                }
            }
        }
    }
    outcome(worst <= 1e-10, format!("5x5 radial grid, l <= 6, 12 stress points: max deviation {worst:.2e} (tol 1e-10)"))
}

fn c5_schmidt_reconstruction() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for (n, lam) in [(2u64, 1.0), (500, 1e2)] {
        let (_, d) = params(n, lam);
        let c = cutoffs_for_tail(&d, 1e-10).expect("valid epsilon");
        let r_max = choose_radial_domain(&d, 1e-12, c.n_max, c.l_max).expect("valid epsilon");
        let rule = gauss_legendre(200, 0.0, r_max).expect("quadrature converges");
        let defect = TAU
            * rule
                .nodes
                .par_iter()
                .zip(rule.weights.par_iter())
                .map(|(&r, &w)| {
                    let q = PolarPoint::new(r, 0.0).expect("non-negative radius");
                    w * r * (rdm_kernel(&d, q, q) - reconstruct_rdm(&d, q, q, c.n_max, c.l_max))
                })
                .sum::<f64>();
        let dev = (defect - c.tail_mass).abs();
        passed &= dev <= 1e-8;
        parts.push(format!("N={n} lambda={lam}: cutoffs ({}, {}) |defect - tail| = {dev:.2e}", c.n_max, c.l_max));
    }
    outcome(passed, format!("{} (tol 1e-8)", parts.join("; ")))
}

fn c6_participation_identity() -> Outcome {
    let mut points = random_points(1000, 6);
    points.extend(stress_grid());
    points.extend(STRESS_N.iter().map(|&n| (n, 0.0)));
    let mut worst = 0.0f64;
    for (n, lam) in points {
        let (_, d) = params(n, lam);
        let k = participation_total(&d);
        worst = worst.max(rel(k, participation_fragment(&d) * participation_collective(&d)));
    }
    outcome(worst <= 1e-14, format!("1015 points: max relative residual {worst:.2e} (tol 1e-14)"))
}

fn c7_asymptotics() -> Outcome {
    let lambdas = [1e4, 1e5, 1e6, 1e7, 1e8];
    let mut passed = true;
    let mut parts = Vec::new();
    for n in [2u64, 500] {
        let mut eta_err = Vec::new();
        let mut k_err = Vec::new();
        for &lam in &lambdas {
            let (p, d) = params(n, lam);
            let eta = collective_occupancy(&d, 0);
            eta_err.push((asymptotic_eta(p, 0).expect("lambda > 0") - eta).abs() / eta);
            let k = participation_collective(&d);
            k_err.push((asymptotic_k_eta(p).expect("lambda > 0") - k).abs() / k);
        }
        for errs in [&eta_err, &k_err] {
            passed &= errs.windows(2).all(|w| w[1] < w[0]);
            passed &= errs[errs.len() - 1] < 0.05;
        }
        parts.push(format!(
            "N={n}: eta0 {:.1e} -> {:.1e}, K_eta {:.1e} -> {:.1e}",
            eta_err[0],
            eta_err[4],
            k_err[0],
            k_err[4]
        ));
    }
    outcome(passed, format!("{} (monotone, < 5% at 1e8)", parts.join("; ")))
}

fn c8_condensation() -> Outcome {
    let mut errs = Vec::new();
    for n in [1_000u64, 10_000, 100_000, 1_000_000] {
        let (p, d) = params(n, 1.0);
        let exact = 1.0 - occupancy(&d, 0, 0);
        let est = condensate_deficit_large_n(p).expect("lambda >= 0");
        errs.push((exact - est).abs() / est);
    }
    let passed = errs.windows(2).all(|w| w[1] < w[0]) && errs[3] <= 1e-2;
    let shown: Vec<String> = errs.iter().map(|e| format!("{e:.2e}")).collect();
    outcome(passed, format!("lambda=1, N = 1e3..1e6: relative error {} (monotone, tol 1e-2 at 1e6)", shown.join(", ")))
}

fn real(c: &Cell) -> f64 {
    match c {
        Cell::Real(v) => *v,
        Cell::Int(v) => *v as f64,
        other => panic!("non-numeric cell {other:?}"),
    }
}

fn is_unimodal(v: &[f64]) -> bool {
    let peak = argmax(v);
    v[..=peak].windows(2).all(|w| w[1] > w[0]) && v[peak..].windows(2).all(|w| w[1] < w[0])
}

fn argmax(v: &[f64]) -> usize {
    (0..v.len()).fold(0, |best, i| if v[i] > v[best] { i } else { best })
}

/// Unimodal K_eta(N) for each lambda; the peak moves by at most a factor 10
/// in N over four decades of lambda; the K_eta peak and the eta0 minimum
/// sit within one grid step of each other.
fn c9_figure_shape() -> Outcome {
    let fig2a = figure_table(Panel::Fig2a, &FigureOverrides::default()).expect("default grid is valid");
    let fig2b = figure_table(Panel::Fig2b, &FigureOverrides::default()).expect("default grid is valid");
    let mut passed = true;
    let mut peaks = Vec::new();
    for lam in [1.0, 1e2, 1e4] {
        let rows: Vec<&Vec<Cell>> = fig2a.rows.iter().filter(|r| real(&r[0]) == lam).collect();
        let ns: Vec<f64> = rows.iter().map(|r| real(&r[1])).collect();
        let k: Vec<f64> = rows.iter().map(|r| real(&r[2])).collect();
        passed &= !k.is_empty() && is_unimodal(&k);
        let i = argmax(&k);
        peaks.push((lam, i, ns[i]));
    }
    let (lo, hi) = peaks.iter().fold((f64::INFINITY, 0.0f64), |(a, b), p| (a.min(p.2), b.max(p.2)));
    passed &= hi / lo <= 10.0;

    let eta0: Vec<f64> = fig2b.rows.iter().map(|r| real(&r[1])).collect();
    let eta_min = (0..eta0.len()).fold(0, |best, i| if eta0[i] < eta0[best] { i } else { best });
    let k_peak = peaks[1].1;
    passed &= eta_min.abs_diff(k_peak) <= 1;

    let shown: Vec<String> = peaks.iter().map(|(l, _, n)| format!("lambda={l}: N*={n}")).collect();
    outcome(
        passed,
        format!(
            "unimodal K_eta(N), {}; eta0 minimum at N={} vs K_eta peak N={}",
            shown.join(", "),
            real(&fig2b.rows[eta_min][0]),
            peaks[1].2
        ),
    )
}

fn run_cli(args: &[&str], jobs: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_moshinsky2d"))
        .args(args)
        .args(["--jobs", jobs])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn c10_determinism() -> Outcome {
    let cases: [&[&str]; 4] = [
        &["sweep", "--n", "log:2:10000:25", "--lambda", "log:0.01:1e8:40"],
        &["sweep", "--n", "2,50,500", "--lambda", "-0.0009,0,1,100", "--format", "json", "--no-meta"],
        &["figure", "fig2a"],
        &["figure", "fig1b", "--format", "json"],
    ];
    let mut compared = 0;
    for args in cases {
        let reference = match run_cli(args, "8") {
            Ok(b) => b,
            Err(e) => return outcome(false, e),
        };
        for jobs in ["8", "8", "1"] {
            match run_cli(args, jobs) {
                Ok(b) if b == reference => compared += 1,
                Ok(_) => return outcome(false, format!("{args:?} differs between runs (jobs {jobs})")),
                Err(e) => return outcome(false, e),
            }
        }
    }
    outcome(true, format!("4 sweep/figure invocations, {compared} byte comparisons incl. --jobs 1 vs 8"))
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("C1", "parameter identities", c1_parameter_identities),
        ("C2", "non-interacting limit", c2_non_interacting_limit),
        ("C3", "Nyström oracle equivalence", c3_oracle_equivalence),
        ("C4", "Bessel-reduction equivalence", c4_bessel_reduction),
        ("C5", "Schmidt reconstruction", c5_schmidt_reconstruction),
        ("C6", "K = kappa K_eta", c6_participation_identity),
        ("C7", "large-lambda asymptotics", c7_asymptotics),
        ("C8", "large-N condensation", c8_condensation),
        ("C9", "figure shapes", c9_figure_shape),
        ("C10", "byte determinism", c10_determinism),
    ];
    let mut failures = 0;
    for (id, name, f) in criteria {
        let start = Instant::now();
        let o = std::panic::catch_unwind(f).unwrap_or_else(|_| outcome(false, "panicked"));
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("{id:<4} {verdict}  {name}: {} [{:.2} s]", o.detail, start.elapsed().as_secs_f64());
        failures += usize::from(!o.passed);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
