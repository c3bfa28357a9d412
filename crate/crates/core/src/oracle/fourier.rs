//! Angular Fourier components of the full kernel by the periodic
//! trapezoidal rule.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::kernel::{rdm_kernel, PolarPoint};
use crate::params::DerivedParams;

/// `int_0^{2pi} rho(r, theta; r', 0) cos(l theta) dtheta` on `m_theta`
/// equispaced nodes.
pub fn fourier_partial(d: &DerivedParams, l: i64, r: f64, r2: f64, m_theta: usize) -> Result<f64> {
    let need = 4 * (l.unsigned_abs() as usize + 1);
    if m_theta < need {
        return Err(Error::domain(format!(
            "angular rule needs m_theta ≥ 4(|l|+1) = {need} (got {m_theta})"
        )));
    }
    let q = PolarPoint::new(r2, 0.0)?;
    let h = TAU / m_theta as f64;
    let mut sum = 0.0;
    for j in 0..m_theta {
        let theta = j as f64 * h;
        let p = PolarPoint::new(r, theta)?;
        sum += rdm_kernel(d, p, q) * (l as f64 * theta).cos();
    }
    Ok(sum * h)
}

/// Node count that resolves the angular peak of `exp(x cos theta)` with
/// `x = C r r' / 2`: aliasing error falls like `exp(-m^2 / 2x)`, so
/// `m ~ 12 sqrt(x)` is far below double precision.
pub fn fourier_nodes(d: &DerivedParams, l: i64, r: f64, r2: f64) -> usize {
    let x = 0.5 * d.c_coef * r * r2;
    let need = 4 * (l.unsigned_abs() as usize + 1);
    let m = (12.0 * x.sqrt()).ceil() as usize + need;
    m.max(64).next_multiple_of(2)
}
