//! Large-interaction and large-`N` estimates.

use crate::error::{Error, Result};
use crate::params::SystemParams;

/// `beta(N) = N^(3/4) / (2^(1/4) sqrt(N - 1))`.
pub fn beta(n_particles: u64) -> f64 {
    let n = n_particles as f64;
    n.powf(0.75) / (2f64.powf(0.25) * (n - 1.0).sqrt())
}

/// Two-term large-`lambda` estimate
/// `eta_l ~ beta lambda^(-1/4) - 2 |l| beta^2 lambda^(-1/2)`.
///
/// Only meaningful for strong coupling; at `lambda ~ 1` it is far from the
/// exact value.
pub fn asymptotic_eta(p: SystemParams, l: i64) -> Result<f64> {
    require_positive(p)?;
    let b = beta(p.n_particles);
    let q = p.lambda.powf(-0.25);
    Ok(b * q - 2.0 * l.unsigned_abs() as f64 * b * b * q * q)
}

/// Leading large-`lambda` estimate `K_eta ~ 2 lambda^(1/4) / beta(N)`.
pub fn asymptotic_k_eta(p: SystemParams) -> Result<f64> {
    require_positive(p)?;
    Ok(2.0 * p.lambda.powf(0.25) / beta(p.n_particles))
}

/// Large-`N` estimate `sqrt(lambda / 2N)` of the condensate deficit
/// `1 - lambda_00`.
pub fn condensate_deficit_large_n(p: SystemParams) -> Result<f64> {
    p.validate()?;
    if p.lambda < 0.0 {
        return Err(Error::domain(format!(
            "condensate estimate needs lambda ≥ 0 (got {})",
            p.lambda
        )));
    }
    Ok((p.lambda / (2.0 * p.n_particles as f64)).sqrt())
}

fn require_positive(p: SystemParams) -> Result<()> {
    p.validate()?;
    if p.lambda <= 0.0 {
        return Err(Error::domain(format!(
            "asymptotic expansion needs lambda > 0 (got {})",
            p.lambda
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEstimates {
    pub eta_l_approx: f64,
    pub k_eta_approx: f64,
    pub condensate_occ_approx: f64,
    pub beta_n: f64,
}

impl AsymptoticEstimates {
    pub fn new(p: SystemParams, l: i64) -> Result<Self> {
        Ok(AsymptoticEstimates {
            eta_l_approx: asymptotic_eta(p, l)?,
            k_eta_approx: asymptotic_k_eta(p)?,
            condensate_occ_approx: 1.0 - condensate_deficit_large_n(p)?,
            beta_n: beta(p.n_particles),
        })
    }
}
