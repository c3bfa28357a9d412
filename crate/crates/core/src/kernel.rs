//! The one-particle density-matrix kernel, its angular partial waves, the
//! natural orbitals, and the truncated Schmidt sum.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::occupancy::occupancy;
use crate::params::DerivedParams;
use crate::special::{bessel_i_scaled, laguerre_sequence_scaled, ln_factorial_ratio};

pub type ComplexAmplitude = Complex64;

/// A point in the plane; the angle is stored reduced to `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    r: f64,
    phi: f64,
}

impl PolarPoint {
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::domain(format!("radius must be finite and ≥ 0 (got {r})")));
        }
        if !phi.is_finite() {
            return Err(Error::domain(format!("angle must be finite (got {phi})")));
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(PolarPoint { r, phi })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Radial quantum number `n >= 0` and angular momentum `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitalIndex {
    pub n: u64,
    pub l: i64,
}

impl OrbitalIndex {
    pub fn new(n: u64, l: i64) -> Self {
        OrbitalIndex { n, l }
    }
}

/// Radial part `v_nl(r) = sqrt(2 n! z^2 / (n+|l|)!) (z r)^|l| exp(-z^2 r^2 / 2) L_n^|l|(z^2 r^2)`.
pub fn radial_orbital(d: &DerivedParams, idx: OrbitalIndex, r: f64) -> f64 {
    radial_orbitals(d, idx.l, idx.n, r)[idx.n as usize]
}

/// `v_nl(r)` for every `n = 0..=n_max` at fixed `l`, sharing one Laguerre
/// recurrence.
pub fn radial_orbitals(d: &DerivedParams, l: i64, n_max: u64, r: f64) -> Vec<f64> {
    let al = l.unsigned_abs();
    if r == 0.0 && al > 0 {
        return vec![0.0; n_max as usize + 1];
    }
    let x = d.z2 * r * r;
    let centrifugal = if al == 0 { 0.0 } else { al as f64 * (d.z2.sqrt() * r).ln() };
    let base = 0.5 * (2.0 * d.z2).ln() + centrifugal - 0.5 * x;
    let lag = laguerre_sequence_scaled(n_max, al as f64, x);
    lag.iter()
        .enumerate()
        .map(|(n, &(m, scale))| {
            if m == 0.0 {
                return 0.0;
            }
            let ln_norm = 0.5 * ln_factorial_ratio(n as u64, al);
            m * (base + ln_norm + scale).exp()
        })
        .collect()
}

/// `u_nl(r, phi) = v_nl(r) exp(i l phi) / sqrt(2 pi)`.
pub fn natural_orbital(d: &DerivedParams, idx: OrbitalIndex, p: PolarPoint) -> ComplexAmplitude {
    let v = radial_orbital(d, idx, p.r) / TAU.sqrt();
    let angle = idx.l as f64 * p.phi;
    Complex64::new(v * angle.cos(), v * angle.sin())
}

/// `rho(p, q) = A exp(-B/2 (r^2 + r'^2) + C/2 r r' cos(phi - phi'))`.
pub fn rdm_kernel(d: &DerivedParams, p: PolarPoint, q: PolarPoint) -> f64 {
    let cos = (p.phi - q.phi).abs().cos();
    let exponent = -0.5 * d.b_coef * (p.r * p.r + q.r * q.r) + 0.5 * d.c_coef * (p.r * q.r) * cos;
    d.a_norm * exponent.exp()
}

/// Partial wave `rho_l(r, r') = 2 pi A exp(-B/2 (r^2 + r'^2)) I_l(C r r' / 2)`.
///
/// Evaluated as `2 pi A exp(x - B (r^2 + r'^2)/2) [exp(-x) I_l(x)]` with
/// `x = C r r'/2`; the combined exponent is at most zero because `2B > C`.
pub fn rdm_partial(d: &DerivedParams, l: i64, r: f64, r2: f64) -> f64 {
    let x = 0.5 * d.c_coef * r * r2;
    let exponent = x - 0.5 * d.b_coef * (r * r + r2 * r2);
    2.0 * d.a_pi() * exponent.exp() * bessel_i_scaled(l, x)
}

/// Truncated Schmidt sum over `n <= n_max`, `|l| <= l_max`, in the real
/// cosine form `rho_0 / 2pi + sum_{l>=1} rho_l cos(l dphi) / pi`.
pub fn reconstruct_rdm(
    d: &DerivedParams,
    p: PolarPoint,
    q: PolarPoint,
    n_max: u64,
    l_max: u64,
) -> f64 {
    let dphi = (p.phi - q.phi).abs();
    let mut total = 0.0;
    for l in 0..=l_max as i64 {
        let vp = radial_orbitals(d, l, n_max, p.r);
        let vq = if p.r == q.r { vp.clone() } else { radial_orbitals(d, l, n_max, q.r) };
        let partial: f64 = (0..=n_max)
            .map(|n| occupancy(d, n, l) * vp[n as usize] * vq[n as usize])
            .sum();
        let weight = if l == 0 { 1.0 / TAU } else { 1.0 / PI };
        total += weight * partial * (l as f64 * dphi).cos();
    }
    total
}

/// Truncated partial wave `sum_{n<=n_max} lambda_nl v_nl(r) v_nl(r')`.
pub fn partial_schmidt(d: &DerivedParams, l: i64, n_max: u64, r: f64, r2: f64) -> f64 {
    let vp = radial_orbitals(d, l, n_max, r);
    let vq = radial_orbitals(d, l, n_max, r2);
    (0..=n_max)
        .map(|n| occupancy(d, n, l) * vp[n as usize] * vq[n as usize])
        .sum()
}
