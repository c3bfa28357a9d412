//! Runs every closed form against its numerical counterpart and reports the
//! measured deviations. Failed checks are data, not errors.

use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::error::Result;
use crate::kernel::{rdm_kernel, rdm_partial, reconstruct_rdm, PolarPoint};
use crate::occupancy::{
    collective_occupancy, cutoffs_for_tail, occupancy, participation_collective,
    participation_fragment, participation_total,
};
use crate::oracle::fourier::{fourier_nodes, fourier_partial};
use crate::oracle::nystrom::{choose_radial_domain, nystrom_eigenvalues, nystrom_spectrum};
use crate::oracle::quadrature::{gauss_legendre, orthonormality_matrix};
use crate::params::{derive_params, rel_diff, DerivedParams, SystemParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    /// Skips the `2m` grid-refinement study.
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub level: VerifyLevel,
    /// Gauss–Legendre nodes for the Nyström grid and the radial integrals.
    pub nodes: usize,
    /// Highest radial index compared against the Nyström spectrum.
    pub n_cap: u64,
    /// Highest `|l|` compared against the Nyström spectrum.
    pub l_cap: u64,
    /// Kernel-diagonal cutoff used to pick the radial domain.
    pub domain_eps: f64,
    /// Occupancy tail for the reconstruction check.
    pub tail_eps: f64,
    /// Points per axis of the radial grid for the Fourier comparison.
    pub grid_points: usize,
    /// Multiplies `t` before any analytic quantity is evaluated. Anything
    /// other than 1 corrupts the closed forms; used to prove the checks bite.
    pub t_scale: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            level: VerifyLevel::Quick,
            nodes: 200,
            n_cap: 8,
            l_cap: 6,
            domain_eps: 1e-12,
            tail_eps: 1e-10,
            grid_points: 5,
            t_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub deviation: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckResult {
    pub fn new(name: &str, deviation: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            deviation,
            threshold,
            passed: deviation.is_finite() && deviation <= threshold,
        }
    }

    fn failed(name: &str, threshold: f64) -> Self {
        CheckResult::new(name, f64::INFINITY, threshold)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub params: SystemParams,
    pub derived: DerivedParams,
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn verify_all(p: SystemParams, config: &VerifyConfig) -> Result<VerifyReport> {
    let mut d = derive_params(p)?;
    d.t *= config.t_scale;

    let mut checks = parameter_checks(&d);
    checks.push(kernel_normalization(&d, config));
    checks.push(fourier_vs_bessel(&d, config));
    checks.push(orthonormality(&d, config));
    checks.extend(nystrom_checks(&d, config));
    checks.push(reconstruction_defect(&d, config));

    Ok(VerifyReport { params: p, derived: d, config: *config, checks })
}

fn parameter_checks(d: &DerivedParams) -> Vec<CheckResult> {
    let (rb, rc) = d.matching_residuals();
    let k = participation_total(d);
    let identity = rel_diff(k, participation_fragment(d) * participation_collective(d));
    vec![
        CheckResult::new("matching_b", rb, 1e-12),
        CheckResult::new("matching_c", rc, 1e-12),
        CheckResult::new("normalization_identity", d.normalization_residual(), 1e-12),
        CheckResult::new("participation_identity", identity, 1e-14),
        CheckResult::new("participation_direct_sum", rel_diff(k, direct_participation(d)), 1e-12),
    ]
}

/// `(sum lambda_nl^2)^-1` by explicit summation over a truncation whose
/// occupancy tail is below `1e-15`.
fn direct_participation(d: &DerivedParams) -> f64 {
    let Ok(c) = cutoffs_for_tail(d, 1e-15) else {
        return f64::NAN;
    };
    let mut sum = 0.0;
    for n in 0..=c.n_max {
        let mut row = occupancy(d, n, 0).powi(2);
        for l in 1..=c.l_max as i64 {
            row += 2.0 * occupancy(d, n, l).powi(2);
        }
        sum += row;
    }
    1.0 / sum
}

fn kernel_normalization(d: &DerivedParams, config: &VerifyConfig) -> CheckResult {
    const NAME: &str = "kernel_normalization";
    let Ok(r_max) = choose_radial_domain(d, config.domain_eps, 0, 0) else {
        return CheckResult::failed(NAME, 1e-10);
    };
    let Ok(rule) = gauss_legendre(config.nodes, 0.0, r_max) else {
        return CheckResult::failed(NAME, 1e-10);
    };
    let total = TAU
        * rule.integrate(|r| {
            let q = PolarPoint::new(r, 0.0).expect("quadrature nodes are non-negative");
            r * rdm_kernel(d, q, q)
        });
    CheckResult::new(NAME, (total - 1.0).abs(), 1e-10)
}

fn fourier_vs_bessel(d: &DerivedParams, config: &VerifyConfig) -> CheckResult {
    const NAME: &str = "fourier_vs_bessel";
    let Ok(r_max) = choose_radial_domain(d, config.domain_eps, config.n_cap, config.l_cap) else {
        return CheckResult::failed(NAME, 1e-10);
    };
    let k = config.grid_points.max(2);
    let radii: Vec<f64> = (0..k).map(|i| r_max * i as f64 / (k - 1) as f64).collect();
    let mut worst = 0.0f64;
    for l in 0..=config.l_cap as i64 {
        for &r in &radii {
            for &r2 in &radii {
                let m = fourier_nodes(d, l, r, r2);
                let numeric = match fourier_partial(d, l, r, r2, m) {
                    Ok(v) => v,
                    Err(_) => return CheckResult::failed(NAME, 1e-10),
                };
                worst = worst.max((numeric - rdm_partial(d, l, r, r2)).abs());
            }
        }
    }
    CheckResult::new(NAME, worst, 1e-10)
}

fn orthonormality(d: &DerivedParams, config: &VerifyConfig) -> CheckResult {
    const NAME: &str = "orbital_orthonormality";
    let (n_cap, l_cap) = (config.n_cap.min(3), config.l_cap.min(3));
    // same domain as the Nyström grid; the turning-point margin of the
    // smaller caps alone leaves orbital tails near 1e-9
    let Ok(r_max) = choose_radial_domain(d, config.domain_eps, config.n_cap.max(3), config.l_cap.max(3)) else {
        return CheckResult::failed(NAME, 1e-9);
    };
    match gauss_legendre(config.nodes, 0.0, r_max) {
        Ok(rule) => {
            let g = orthonormality_matrix(d, n_cap, l_cap, &rule);
            CheckResult::new(NAME, g.max_identity_deviation(), 1e-9)
        }
        Err(_) => CheckResult::failed(NAME, 1e-9),
    }
}

fn nystrom_checks(d: &DerivedParams, config: &VerifyConfig) -> Vec<CheckResult> {
    let failed = |with_refinement: bool| {
        let mut v = vec![
            CheckResult::failed("nystrom_vs_analytic", 1e-8),
            CheckResult::failed("nystrom_sum_rule", 1e-6),
        ];
        if with_refinement {
            v.push(CheckResult::failed("nystrom_refinement", 1e-8));
        }
        v
    };
    let full = config.level == VerifyLevel::Full;
    let Ok(r_max) = choose_radial_domain(d, config.domain_eps, config.n_cap, config.l_cap) else {
        return failed(full);
    };
    let spectra: Vec<_> = (0..=config.l_cap as i64)
        .into_par_iter()
        .map(|l| {
            if full {
                nystrom_spectrum(d, l, config.nodes, r_max)
                    .map(|res| (res.eigenvalues, res.resolution_defect))
            } else {
                nystrom_eigenvalues(d, l, config.nodes, r_max).map(|ev| (ev, 0.0))
            }
        })
        .collect();
    let Ok(spectra) = spectra.into_iter().collect::<Result<Vec<_>>>() else {
        return failed(full);
    };

    let mut worst = 0.0f64;
    let mut mass = 0.0;
    let mut refinement = 0.0f64;
    for (l, (ev, defect)) in spectra.iter().enumerate() {
        for n in 0..=config.n_cap {
            let numeric = ev.get(n as usize).copied().unwrap_or(0.0).max(0.0);
            worst = worst.max((numeric - occupancy(d, n, l as i64)).abs());
        }
        let trace: f64 = ev.iter().sum();
        mass += if l == 0 { trace } else { 2.0 * trace };
        refinement = refinement.max(*defect);
    }
    let outside: f64 = 2.0 * collective_occupancy(d, config.l_cap as i64 + 1) / d.one_minus_sqrt_t();
    let mut out = vec![
        CheckResult::new("nystrom_vs_analytic", worst, 1e-8),
        CheckResult::new("nystrom_sum_rule", (mass + outside - 1.0).abs(), 1e-6),
    ];
    if full {
        out.push(CheckResult::new("nystrom_refinement", refinement, 1e-8));
    }
    out
}

fn reconstruction_defect(d: &DerivedParams, config: &VerifyConfig) -> CheckResult {
    const NAME: &str = "reconstruction_defect";
    let Ok(c) = cutoffs_for_tail(d, config.tail_eps) else {
        return CheckResult::failed(NAME, 1e-8);
    };
    let Ok(r_max) = choose_radial_domain(d, config.domain_eps, c.n_max, c.l_max) else {
        return CheckResult::failed(NAME, 1e-8);
    };
    let Ok(rule) = gauss_legendre(config.nodes, 0.0, r_max) else {
        return CheckResult::failed(NAME, 1e-8);
    };
    let defect: f64 = rule
        .nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(&r, &w)| {
            let q = PolarPoint::new(r, 0.0).expect("quadrature nodes are non-negative");
            w * r * (rdm_kernel(d, q, q) - reconstruct_rdm(d, q, q, c.n_max, c.l_max))
        })
        .sum::<f64>()
        * TAU;
    CheckResult::new(NAME, (defect - c.tail_mass).abs(), 1e-8)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: u64, lambda: f64) -> SystemParams {
        SystemParams::new(n, lambda).unwrap()
    }

    #[test]
    fn non_interacting_passes_tightly() {
        let r = verify_all(sp(2, 0.0), &VerifyConfig::default()).unwrap();
        for c in &r.checks {
            assert!(c.passed && c.deviation < 1e-10, "{c:?}");
        }
    }

    #[test]
    fn unit_coupling_passes() {
        let r = verify_all(sp(2, 1.0), &VerifyConfig::default()).unwrap();
        assert!(r.all_passed(), "{:#?}", r.checks);
        assert!(r.check("nystrom_refinement").is_none());
    }

    #[test]
    fn corrupted_t_is_caught() {
        let cfg = VerifyConfig { t_scale: 1.01, ..VerifyConfig::default() };
        let r = verify_all(sp(2, 1.0), &cfg).unwrap();
        assert!(!r.all_passed());
        assert!(!r.check("nystrom_vs_analytic").unwrap().passed);
        assert!(!r.check("matching_b").unwrap().passed);
    }
}
