//! Nyström discretization of the radial eigenproblem
//! `int_0^inf rho_l(r, r') v(r') r' dr' = lambda v(r)`.
//!
//! With Gauss–Legendre nodes `r_i`, weights `w_i` on `[0, R]` the
//! discretized operator `rho_l(r_i, r_j) w_j r_j` is similar to the symmetric
//! matrix `sqrt(w_i r_i) rho_l(r_i, r_j) sqrt(w_j r_j)`, whose spectrum is
//! computed by cyclic Jacobi rotations.

use crate::error::{Error, Result};
use crate::kernel::rdm_partial;
use crate::oracle::jacobi::symmetric_eigen;
use crate::oracle::quadrature::{gauss_legendre, QuadratureRule};
use crate::params::DerivedParams;

pub const MIN_NODES: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct NystromResult {
    pub l: i64,
    pub grid: QuadratureRule,
    /// Descending.
    pub eigenvalues: Vec<f64>,
    pub r_max: f64,
    pub m: usize,
    /// Largest shift of the leading `m` eigenvalues when re-solved on `2m`
    /// nodes.
    pub resolution_defect: f64,
}

impl NystromResult {
    /// Eigenvalues with discretization noise below zero clamped to zero.
    pub fn clamped_eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|&x| x.max(0.0)).collect()
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

/// Radial cutoff `max(sqrt(ln(1/eps) / (B - C/2)), 1.5 sqrt(4 n_max + 2 l_max + 2) / z)`.
///
/// The first term makes the kernel diagonal negligible, the second puts the
/// outermost classical turning point of the requested orbitals well inside.
pub fn choose_radial_domain(d: &DerivedParams, epsilon: f64, n_max: u64, l_max: u64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain(format!("epsilon must lie in (0, 1) (got {epsilon})")));
    }
    let diag = ((1.0 / epsilon).ln() / d.diagonal_decay()).sqrt();
    let turning = 1.5 * ((4 * n_max + 2 * l_max + 2) as f64).sqrt() / d.z2.sqrt();
    Ok(diag.max(turning))
}

fn nystrom_matrix(d: &DerivedParams, l: i64, rule: &QuadratureRule) -> Vec<f64> {
    let m = rule.len();
    let sw: Vec<f64> = rule.nodes.iter().zip(&rule.weights).map(|(&r, &w)| (w * r).sqrt()).collect();
    let mut a = vec![0.0; m * m];
    for i in 0..m {
        for j in i..m {
            let v = sw[i] * rdm_partial(d, l, rule.nodes[i], rule.nodes[j]) * sw[j];
            a[i * m + j] = v;
            a[j * m + i] = v;
        }
    }
    a
}

fn solve(d: &DerivedParams, l: i64, m: usize, r_max: f64) -> Result<(QuadratureRule, Vec<f64>)> {
    if m < MIN_NODES {
        return Err(Error::domain(format!("Nyström grid needs at least {MIN_NODES} nodes (got {m})")));
    }
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(Error::domain(format!("radial cutoff must be positive (got {r_max})")));
    }
    let rule = gauss_legendre(m, 0.0, r_max)?;
    let a = nystrom_matrix(d, l, &rule);
    let eig = symmetric_eigen(&a, m, false)?;
    Ok((rule, eig.eigenvalues))
}

/// Spectrum on `m` nodes only, without the refinement study.
pub fn nystrom_eigenvalues(d: &DerivedParams, l: i64, m: usize, r_max: f64) -> Result<Vec<f64>> {
    solve(d, l, m, r_max).map(|(_, ev)| ev)
}

/// Spectrum on `m` nodes plus the shift observed on `2m` nodes.
pub fn nystrom_spectrum(d: &DerivedParams, l: i64, m: usize, r_max: f64) -> Result<NystromResult> {
    let (grid, eigenvalues) = solve(d, l, m, r_max)?;
    let (_, fine) = solve(d, l, 2 * m, r_max)?;
    let resolution_defect = eigenvalues
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(NystromResult { l, grid, eigenvalues, r_max, m, resolution_defect })
}
