use crate::error::{Error, Result};
use crate::kernel::{radial_orbitals, OrbitalIndex};
use crate::params::DerivedParams;

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_STEPS: usize = 100;

/// Nodes and positive weights of an interpolatory rule on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub lo: f64,
    pub hi: f64,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// `P_m(x)` and `P_m'(x)` by the Bonnet recurrence.
fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// `m`-point Gauss–Legendre rule on `[lo, hi]`, nodes ascending.
///
/// Roots of `P_m` are found by Newton iteration from the guess
/// `cos(pi (i + 3/4) / (m + 1/2))`; the rule is built on `[-1, 1]` by
/// reflection symmetry and mapped affinely.
pub fn gauss_legendre(m: usize, lo: f64, hi: f64) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::domain("quadrature needs at least one node"));
    }
    if lo >= hi || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain(format!("quadrature interval must satisfy lo < hi (got [{lo}, {hi}])")));
    }
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    let half_count = m.div_ceil(2);
    for i in 0..half_count {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut converged = false;
        let mut dp = 0.0;
        for _ in 0..NEWTON_STEPS {
            let (p, d) = legendre_with_derivative(m, z);
            dp = d;
            let step = p / d;
            z -= step;
            if step.abs() <= NEWTON_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::QuadratureNotConverged { index: i, m, steps: NEWTON_STEPS });
        }
        let (_, d) = legendre_with_derivative(m, z);
        if d.is_finite() {
            dp = d;
        }
        let weight = 2.0 / ((1.0 - z * z) * dp * dp);
        // i-th root from the top; mirror to the bottom
        x[m - 1 - i] = z;
        x[i] = -z;
        w[m - 1 - i] = weight;
        w[i] = weight;
    }
    if m % 2 == 1 {
        x[m / 2] = 0.0;
    }
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    Ok(QuadratureRule {
        nodes: x.iter().map(|&t| mid + half * t).collect(),
        weights: w.iter().map(|&v| v * half).collect(),
        lo,
        hi,
    })
}

/// Gram matrix of natural orbitals over a rule with measure `r dr` (radial)
/// times the exact angular factor, which makes different `l` orthogonal.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub indices: Vec<OrbitalIndex>,
    /// Row-major, `indices.len()` squared entries.
    pub values: Vec<f64>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.dim() + j]
    }

    /// Largest `| |G_ij| - delta_ij |`; orbital signs are a free convention.
    pub fn max_identity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.get(i, j).abs() - target).abs());
            }
        }
        worst
    }
}

/// Gram matrix on indices `n <= n_cap`, `|l| <= l_cap`, ordered by `(l, n)`.
pub fn orthonormality_matrix(
    d: &DerivedParams,
    n_cap: u64,
    l_cap: u64,
    rule: &QuadratureRule,
) -> GramMatrix {
    let mut indices = Vec::new();
    for l in -(l_cap as i64)..=(l_cap as i64) {
        for n in 0..=n_cap {
            indices.push(OrbitalIndex::new(n, l));
        }
    }
    let dim = indices.len();
    let mut values = vec![0.0; dim * dim];
    let block = n_cap as usize + 1;
    for (bl, l) in (-(l_cap as i64)..=(l_cap as i64)).enumerate() {
        let samples: Vec<Vec<f64>> = rule.nodes.iter().map(|&r| radial_orbitals(d, l, n_cap, r)).collect();
        for a in 0..block {
            for b in 0..block {
                let v: f64 = samples
                    .iter()
                    .zip(rule.nodes.iter().zip(&rule.weights))
                    .map(|(s, (&r, &w))| w * r * s[a] * s[b])
                    .sum();
                let (i, j) = (bl * block + a, bl * block + b);
                values[i * dim + j] = v;
            }
        }
    }
    GramMatrix { indices, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{derive_params, SystemParams};
    use approx::assert_relative_eq;

    #[test]
    fn textbook_rules() {
        let r = gauss_legendre(1, -1.0, 1.0).unwrap();
        assert_eq!(r.nodes, vec![0.0]);
        assert_relative_eq!(r.weights[0], 2.0, max_relative = 1e-15);
        let r = gauss_legendre(2, -1.0, 1.0).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert_relative_eq!(r.nodes[0], -x, max_relative = 1e-15);
        assert_relative_eq!(r.nodes[1], x, max_relative = 1e-15);
        assert_relative_eq!(r.weights[0], 1.0, max_relative = 1e-15);
        assert_relative_eq!(r.weights[1], 1.0, max_relative = 1e-15);
    }

    #[test]
    fn polynomial_exactness() {
        let r = gauss_legendre(20, 0.0, 1.0).unwrap();
        assert!((r.integrate(|x| x.powi(5)) - 1.0 / 6.0).abs() < 1e-15);
        for deg in 0..40 {
            let exact = 1.0 / (deg as f64 + 1.0);
            assert_relative_eq!(r.integrate(|x| x.powi(deg)), exact, max_relative = 1e-13);
        }
    }

    #[test]
    fn rule_invariants_for_many_sizes() {
        for &m in &[3usize, 8, 17, 64, 200, 401, 800] {
            let r = gauss_legendre(m, -2.0, 5.0).unwrap();
            assert_eq!(r.len(), m);
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            assert!(r.nodes[0] > -2.0 && r.nodes[m - 1] < 5.0);
            assert!(r.weights.iter().all(|&w| w > 0.0));
            let total: f64 = r.weights.iter().sum();
            assert_relative_eq!(total, 7.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(gauss_legendre(0, 0.0, 1.0).is_err());
        assert!(gauss_legendre(4, 1.0, 1.0).is_err());
    }

    #[test]
    fn gram_matrix_trivial_and_interacting() {
        let d0 = derive_params(SystemParams::new(2, 0.0).unwrap()).unwrap();
        let rule = gauss_legendre(80, 0.0, 10.0).unwrap();
        let g = orthonormality_matrix(&d0, 0, 0, &rule);
        assert_eq!(g.dim(), 1);
        assert!((g.get(0, 0) - 1.0).abs() < 1e-13);

        let d = derive_params(SystemParams::new(2, 1.0).unwrap()).unwrap();
        let rule = gauss_legendre(160, 0.0, 10.0).unwrap();
        let g = orthonormality_matrix(&d, 3, 3, &rule);
        assert_eq!(g.dim(), 28);
        assert!(g.max_identity_deviation() <= 1e-9);
    }
}
