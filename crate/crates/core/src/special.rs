//! Generalized Laguerre polynomials and exponentially scaled modified Bessel
//! functions of the first kind.

/// Above this argument `bessel_i_scaled` switches from the ascending series
/// to Miller's downward recurrence.
pub const BESSEL_SERIES_LIMIT: f64 = 30.0;

const RESCALE_ABOVE: f64 = 1e200;

/// `L_n^alpha(x)` by the upward three-term recurrence
/// `(k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}`.
pub fn laguerre(n: u64, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_k^alpha(x)` for `k = 0..=n_max` as `(mantissa, ln_scale)` pairs with
/// `L_k = mantissa * exp(ln_scale)`; the recurrence is rescaled whenever the
/// mantissa grows past `1e200`, so large `x` and `n` never overflow.
pub fn laguerre_sequence_scaled(n_max: u64, alpha: f64, x: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut ln_scale = 0.0;
    let mut prev = 1.0;
    out.push((prev, ln_scale));
    if n_max == 0 {
        return out;
    }
    let mut cur = 1.0 + alpha - x;
    out.push((cur, ln_scale));
    for k in 1..n_max {
        let kf = k as f64;
        let mut next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        if next.abs() > RESCALE_ABOVE {
            let f = 1.0 / RESCALE_ABOVE;
            next *= f;
            cur *= f;
            ln_scale += RESCALE_ABOVE.ln();
        }
        prev = cur;
        cur = next;
        out.push((cur, ln_scale));
    }
    out
}

/// `ln(n! / (n + k)!)` as a running sum of logarithms.
pub fn ln_factorial_ratio(n: u64, k: u64) -> f64 {
    -(n + 1..=n + k).map(|j| (j as f64).ln()).sum::<f64>()
}

/// `exp(-x) I_l(x)` for `x >= 0`; negative orders map to `|l|`.
///
/// Finite for every `x`, including arguments where `I_l` alone overflows.
pub fn bessel_i_scaled(l: i64, x: f64) -> f64 {
    let l = l.unsigned_abs();
    debug_assert!(x >= 0.0, "bessel_i_scaled needs x >= 0");
    if x == 0.0 {
        return if l == 0 { 1.0 } else { 0.0 };
    }
    if x <= BESSEL_SERIES_LIMIT {
        bessel_i_scaled_series(l, x)
    } else {
        bessel_i_scaled_miller(l, x)
    }
}

/// `sum_k exp(-x) (x/2)^(2k+l) / (k! (k+l)!)`; all terms are positive.
fn bessel_i_scaled_series(l: u64, x: f64) -> f64 {
    let half = 0.5 * x;
    let ln_first = l as f64 * half.ln() + ln_factorial_ratio(0, l) - x;
    let mut term = ln_first.exp();
    if term == 0.0 {
        return 0.0;
    }
    let q = half * half;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + l as f64));
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

/// Miller's backward recurrence `I_{k-1} = I_{k+1} + (2k / x) I_k`,
/// normalized with `exp(-x) (I_0 + 2 sum_{k>=1} I_k) = 1`.
fn bessel_i_scaled_miller(l: u64, x: f64) -> f64 {
    // exp(-x) I_k(x) ~ exp(-k^2 / 2x): sqrt(80 x) puts the start far below
    // double precision relative to the bulk of the normalization sum.
    let start = l.max((80.0 * x).sqrt().ceil() as u64) + 32;
    let two_over_x = 2.0 / x;
    let mut above = 0.0f64;
    let mut cur = 1e-280f64;
    let mut sum = 0.0f64;
    let mut at_l = 0.0f64;
    let mut k = start;
    while k > 0 {
        if k == l {
            at_l = cur;
        }
        sum += 2.0 * cur;
        let below = above + (k as f64) * two_over_x * cur;
        above = cur;
        cur = below;
        if cur > RESCALE_ABOVE {
            let f = 1.0 / RESCALE_ABOVE;
            cur *= f;
            above *= f;
            sum *= f;
            at_l *= f;
        }
        k -= 1;
    }
    // cur now holds the unnormalized I_0
    if l == 0 {
        at_l = cur;
    }
    sum += cur;
    at_l / sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Power series with explicit factorials, summed in plain f64.
    fn series_oracle(l: u64, x: f64) -> f64 {
        let fact = |k: u64| (1..=k).map(|j| j as f64).product::<f64>();
        let mut s = 0.0;
        for k in 0..120u64 {
            s += (0.5 * x).powi((2 * k + l) as i32) / (fact(k) * fact(k + l));
        }
        s * (-x).exp()
    }

    // Independent oracle: exp(-x) I_l(x) = (1/pi) int_0^pi exp(x (cos th - 1)) cos(l th) dth,
    // evaluated with the trapezoidal rule (spectrally accurate for periodic integrands).
    fn integral_oracle(l: u64, x: f64) -> f64 {
        let m = 4000usize;
        let h = std::f64::consts::PI / m as f64;
        let mut s = 0.0;
        for j in 0..=m {
            let th = j as f64 * h;
            let w = if j == 0 || j == m { 0.5 } else { 1.0 };
            s += w * (x * (th.cos() - 1.0)).exp() * (l as f64 * th).cos();
        }
        s * h / std::f64::consts::PI
    }

    #[test]
    fn laguerre_fixtures() {
        assert_eq!(laguerre(0, 3.7, -2.0), 1.0);
        assert_eq!(laguerre(1, 2.0, 3.0), 0.0);
        assert_eq!(laguerre(2, 0.0, 2.0), -1.0);
    }

    #[test]
    fn laguerre_matches_explicit_low_orders() {
        for &alpha in &[0.0, 1.0, 2.0, 5.0, 0.5] {
            for i in 0..=500 {
                let x = 50.0 * i as f64 / 500.0;
                let explicit = [
                    1.0,
                    1.0 + alpha - x,
                    0.5 * (x * x - 2.0 * (alpha + 2.0) * x + (alpha + 1.0) * (alpha + 2.0)),
                    (-x * x * x + 3.0 * (alpha + 3.0) * x * x
                        - 3.0 * (alpha + 2.0) * (alpha + 3.0) * x
                        + (alpha + 1.0) * (alpha + 2.0) * (alpha + 3.0))
                        / 6.0,
                ];
                for (n, &e) in explicit.iter().enumerate() {
                    let v = laguerre(n as u64, alpha, x);
                    let scale = e.abs().max(1.0);
                    assert!((v - e).abs() <= 1e-13 * scale, "n={n} a={alpha} x={x}: {v} vs {e}");
                }
            }
        }
    }

    #[test]
    fn scaled_sequence_agrees_and_survives_large_arguments() {
        let seq = laguerre_sequence_scaled(40, 3.0, 7.5);
        for (n, &(m, s)) in seq.iter().enumerate() {
            let direct = laguerre(n as u64, 3.0, 7.5);
            assert_relative_eq!(m * s.exp(), direct, max_relative = 1e-12, epsilon = 1e-300);
        }
        let seq = laguerre_sequence_scaled(600, 0.0, 5000.0);
        let (m, s) = seq[600];
        assert!(m.is_finite() && m > 0.0 && s > 0.0);
        // ln L_600(5000) = 1785.0651175702299..., 40-digit reference
        assert_relative_eq!(m.ln() + s, 1_785.065_117_570_23, max_relative = 1e-12);
    }

    #[test]
    fn bessel_fixtures() {
        assert_eq!(bessel_i_scaled(0, 0.0), 1.0);
        assert_eq!(bessel_i_scaled(3, 0.0), 0.0);
        // exp(-1) I_0(1), exp(-1) I_1(1) from the power series to 20 digits
        assert_relative_eq!(bessel_i_scaled(0, 1.0), 0.465_759_607_593_640_6, max_relative = 1e-15);
        assert_relative_eq!(bessel_i_scaled(1, 1.0), 0.207_910_415_349_708_4, max_relative = 1e-15);
        assert_eq!(bessel_i_scaled(-2, 4.0), bessel_i_scaled(2, 4.0));
    }

    #[test]
    fn series_branch_against_oracles() {
        for l in 0..=20u64 {
            for &x in &[1e-3, 0.1, 0.5, 1.0, 2.5, 7.0, 12.0, 20.0, 29.9, 30.0] {
                let v = bessel_i_scaled(l as i64, x);
                let o = series_oracle(l, x);
                assert_relative_eq!(v, o, max_relative = 1e-12);
                // the trapezoid oracle carries absolute roundoff near 1e-16
                assert!((v - integral_oracle(l, x)).abs() <= 1e-12 * o + 1e-15);
            }
        }
    }

    #[test]
    fn miller_branch_against_integral_oracle() {
        for l in 0..=20u64 {
            for &x in &[30.5, 45.0, 100.0, 700.0] {
                let v = bessel_i_scaled(l as i64, x);
                let o = integral_oracle(l, x);
                assert!((v - o).abs() <= 1e-12 * o, "l={l} x={x}: {v} vs {o}");
            }
        }
    }

    #[test]
    fn branches_agree_in_overlap_window() {
        for l in 0..=20u64 {
            for i in 0..=40 {
                let x = 20.0 + i as f64 * 0.5;
                let a = bessel_i_scaled_series(l, x);
                let b = bessel_i_scaled_miller(l, x);
                assert_relative_eq!(a, b, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn recurrence_identity_at_large_arguments() {
        for &x in &[30.0, 75.0, 300.0, 1e3, 5e3, 1e4] {
            for l in 1..=20i64 {
                let lhs = bessel_i_scaled(l - 1, x) - bessel_i_scaled(l + 1, x);
                let rhs = 2.0 * l as f64 * bessel_i_scaled(l, x) / x;
                assert_relative_eq!(lhs, rhs, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn large_orders_small_arguments() {
        let v = bessel_i_scaled(200, 1.0);
        assert!((0.0..1e-300).contains(&v));
        let v = bessel_i_scaled(60, 40.0);
        assert!(v > 0.0 && v < bessel_i_scaled(59, 40.0));
    }
}
