//! Physical inputs and the closed-form parameter set of the density-matrix
//! kernel `rho(r, r') = A exp(-B/2 (r^2 + r'^2) + C/2 r r' cos(phi - phi'))`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Particle number and interaction strength, in trap units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub n_particles: u64,
    pub lambda: f64,
}

impl SystemParams {
    /// Validates `n_particles >= 2` and `lambda > -1/(2 n_particles)`.
    pub fn new(n_particles: u64, lambda: f64) -> Result<Self> {
        let p = SystemParams { n_particles, lambda };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_particles < 2 {
            return Err(Error::domain(format!(
                "n_particles must be ≥ 2 (got {})",
                self.n_particles
            )));
        }
        if !self.lambda.is_finite() {
            return Err(Error::domain(format!("lambda must be finite (got {})", self.lambda)));
        }
        let bound = self.lambda_lower_bound();
        if self.lambda <= bound {
            return Err(Error::domain(format!(
                "lambda must be > -1/(2N) = {bound} for N = {} (got {})",
                self.n_particles, self.lambda
            )));
        }
        Ok(())
    }

    /// The open lower bound `-1/(2N)` on the interaction strength.
    pub fn lambda_lower_bound(&self) -> f64 {
        -1.0 / (2.0 * self.n_particles as f64)
    }

    /// Attractive interactions lie outside the range the closed forms were
    /// charted on; they are still mathematically valid.
    pub fn is_extrapolated(&self) -> bool {
        self.lambda < 0.0
    }
}

/// Every scalar appearing in the kernel and its Schmidt decomposition.
///
/// `t` and `sqrt(t)` are formed as `C^2/(2B+s)^2` and `C/(2B+s)`, never as the
/// difference `2B - s`, so they keep full relative precision when `C << B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub omega: f64,
    pub gamma: f64,
    pub a_norm: f64,
    pub b_coef: f64,
    pub c_coef: f64,
    pub t: f64,
    pub z2: f64,
    pub s: f64,
}

pub fn derive_params(p: SystemParams) -> Result<DerivedParams> {
    p.validate()?;
    let n = p.n_particles as f64;
    let arg = 2.0 * p.lambda * n;
    let omega = (1.0 + arg).sqrt();
    // omega - 1 without cancellation near lambda = 0
    let omega_m1 = arg / (1.0 + omega);
    let gamma = (n - 1.0 + omega) / n;
    let ratio = omega / gamma;
    let c_coef = (omega_m1 / n).powi(2) * (n - 1.0) / gamma;
    let b_coef = ratio + 0.5 * c_coef;
    // 4B^2 - C^2 = (2B - C)(2B + C) with 2B - C = 2 omega / gamma exactly
    let s = 2.0 * (ratio * (ratio + c_coef)).sqrt();
    let denom = 2.0 * b_coef + s;
    let t = (c_coef * c_coef) / (denom * denom);
    Ok(DerivedParams {
        omega,
        gamma,
        a_norm: omega / (PI * gamma),
        b_coef,
        c_coef,
        t,
        z2: 0.5 * s,
        s,
    })
}

impl DerivedParams {
    /// `pi * A = omega / gamma`, formed without a round trip through `pi`.
    pub fn a_pi(&self) -> f64 {
        self.omega / self.gamma
    }

    /// `B - C/2 = omega / gamma`, the decay rate of the kernel diagonal.
    pub fn diagonal_decay(&self) -> f64 {
        self.omega / self.gamma
    }

    pub fn sqrt_t(&self) -> f64 {
        self.t.sqrt()
    }

    /// `1 - t = 2s / (2B + s)`.
    pub fn one_minus_t(&self) -> f64 {
        2.0 * self.s / (2.0 * self.b_coef + self.s)
    }

    /// `1 + t = 4B / (2B + s)`.
    pub fn one_plus_t(&self) -> f64 {
        4.0 * self.b_coef / (2.0 * self.b_coef + self.s)
    }

    /// `1 - sqrt(t) = (2B + s - C) / (2B + s)`.
    pub fn one_minus_sqrt_t(&self) -> f64 {
        (2.0 * self.b_coef + self.s - self.c_coef) / (2.0 * self.b_coef + self.s)
    }

    /// `t^(k/2)` for a non-negative half-integer power `k/2`; exact zero when
    /// the result would be subnormal.
    pub fn t_half_power(&self, k: u64) -> f64 {
        if k == 0 {
            return 1.0;
        }
        let q = self.sqrt_t();
        if q == 0.0 {
            return 0.0;
        }
        let v = if k <= 128 {
            q.powi(k as i32)
        } else {
            (k as f64 * q.ln()).exp()
        };
        if v < f64::MIN_POSITIVE {
            0.0
        } else {
            v
        }
    }

    /// Relative residuals of the two matching conditions
    /// `B = (1 + 2t/(1-t)) z^2` and `C = 4 sqrt(t) z^2 / (1-t)`, using the
    /// stored `t` literally.
    pub fn matching_residuals(&self) -> (f64, f64) {
        let t = self.t;
        let b = (1.0 + 2.0 * t / (1.0 - t)) * self.z2;
        let c = 4.0 * t.sqrt() * self.z2 / (1.0 - t);
        let rb = rel_diff(b, self.b_coef);
        let rc = if self.c_coef == 0.0 && c == 0.0 {
            0.0
        } else {
            rel_diff(c, self.c_coef)
        };
        (rb, rc)
    }

    /// Relative residual of `2 pi A (2B + s + C) = s (2B + s - C)`, which is
    /// equivalent to the occupancies summing to one.
    pub fn normalization_residual(&self) -> f64 {
        let lhs = 2.0 * PI * self.a_norm * (2.0 * self.b_coef + self.s + self.c_coef);
        let rhs = self.s * (2.0 * self.b_coef + self.s - self.c_coef);
        rel_diff(lhs, rhs)
    }
}

pub(crate) fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
