//! Parameter grids: explicit lists and linear or logarithmic ranges.

use std::str::FromStr;

use crate::error::{CliError, CliResult};

/// `k` points from `lo` to `hi` inclusive; logarithmic spacing needs `lo > 0`.
pub fn log_grid(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    spaced(k, lo, hi, |f| 10f64.powf(a + (b - a) * f))
}

pub fn lin_grid(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    spaced(k, lo, hi, |f| lo + (hi - lo) * f)
}

// endpoints are reproduced exactly
fn spaced(k: usize, lo: f64, hi: f64, at: impl Fn(f64) -> f64) -> Vec<f64> {
    match k {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..k)
            .map(|i| match i {
                0 => lo,
                i if i == k - 1 => hi,
                i => at(i as f64 / (k - 1) as f64),
            })
            .collect(),
    }
}

/// Logarithmic grid of integers, rounded and deduplicated, ascending.
pub fn int_log_grid(lo: u64, hi: u64, k: usize) -> Vec<u64> {
    let mut out: Vec<u64> =
        log_grid(lo as f64, hi as f64, k).into_iter().map(|x| x.round() as u64).collect();
    out.dedup();
    out
}

/// Λ axis: logarithmic when the range is strictly positive, linear otherwise.
pub fn lambda_axis(lo: f64, hi: f64, k: usize) -> CliResult<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(CliError::usage(format!("invalid lambda range [{lo}, {hi}]")));
    }
    check_points(k)?;
    Ok(if lo > 0.0 { log_grid(lo, hi, k) } else { lin_grid(lo, hi, k) })
}

pub fn n_axis(lo: u64, hi: u64, k: usize) -> CliResult<Vec<u64>> {
    if lo == 0 || lo > hi {
        return Err(CliError::usage(format!("invalid N range [{lo}, {hi}]")));
    }
    check_points(k)?;
    Ok(int_log_grid(lo, hi, k))
}

fn check_points(k: usize) -> CliResult<()> {
    if k == 0 {
        return Err(CliError::usage("--points must be at least 1"));
    }
    Ok(())
}

/// Value list given as `a,b,c`, `log:lo:hi:k` or `lin:lo:hi:k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueSpec(pub String);

impl ValueSpec {
    pub fn reals(&self) -> CliResult<Vec<f64>> {
        match self.range()? {
            Some((kind, lo, hi, k)) => {
                let (lo, hi) = (parse::<f64>(lo)?, parse::<f64>(hi)?);
                if kind == "log" && lo <= 0.0 {
                    return Err(CliError::usage(format!("log range needs a positive start: {}", self.0)));
                }
                if lo > hi {
                    return Err(CliError::usage(format!("empty range: {}", self.0)));
                }
                Ok(if kind == "log" { log_grid(lo, hi, k) } else { lin_grid(lo, hi, k) })
            }
            None => self.list(),
        }
    }

    pub fn integers(&self) -> CliResult<Vec<u64>> {
        match self.range()? {
            Some((kind, lo, hi, k)) => {
                let (lo, hi) = (parse::<u64>(lo)?, parse::<u64>(hi)?);
                if lo > hi || (kind == "log" && lo == 0) {
                    return Err(CliError::usage(format!("invalid range: {}", self.0)));
                }
                if kind == "log" {
                    Ok(int_log_grid(lo, hi, k))
                } else {
                    let mut v: Vec<u64> =
                        lin_grid(lo as f64, hi as f64, k).into_iter().map(|x| x.round() as u64).collect();
                    v.dedup();
                    Ok(v)
                }
            }
            None => self.list(),
        }
    }

    fn range(&self) -> CliResult<Option<(&str, &str, &str, usize)>> {
        let parts: Vec<&str> = self.0.split(':').map(str::trim).collect();
        match parts.as_slice() {
            [kind @ ("log" | "lin"), lo, hi, k] => {
                let k = parse::<usize>(k)?;
                if k == 0 {
                    return Err(CliError::usage(format!("range needs at least one point: {}", self.0)));
                }
                Ok(Some((kind, lo, hi, k)))
            }
            [_] => Ok(None),
            _ => Err(CliError::usage(format!(
                "expected a comma list or log:lo:hi:k / lin:lo:hi:k, got {:?}",
                self.0
            ))),
        }
    }

    fn list<T: FromStr>(&self) -> CliResult<Vec<T>> {
        let v = self.0.split(',').map(|s| parse::<T>(s.trim())).collect::<CliResult<Vec<T>>>()?;
        if v.is_empty() {
            return Err(CliError::usage("empty value list"));
        }
        Ok(v)
    }
}

impl FromStr for ValueSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            Err("empty value list".into())
        } else {
            Ok(ValueSpec(s.to_string()))
        }
    }
}

fn parse<T: FromStr>(s: &str) -> CliResult<T> {
    s.parse::<T>().map_err(|_| CliError::usage(format!("cannot parse {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_hits_decades() {
        let g = log_grid(1e-2, 1e8, 11);
        assert_eq!(g.len(), 11);
        assert_eq!(g[0], 1e-2);
        assert_eq!(g[10], 1e8);
        for (i, x) in g.iter().enumerate() {
            let want = 10f64.powi(i as i32 - 2);
            assert!((x / want - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn integer_grid_is_deduplicated_and_ascending() {
        let g = int_log_grid(2, 10_000, 50);
        assert_eq!(g[0], 2);
        assert_eq!(*g.last().unwrap(), 10_000);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(g.len(), 48);
    }

    #[test]
    fn lambda_axis_switches_to_linear() {
        let g = lambda_axis(0.0, 1.0, 5).unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(lambda_axis(2.0, 1.0, 5).is_err());
    }

    #[test]
    fn value_specs() {
        assert_eq!(ValueSpec("1,10,100".into()).reals().unwrap(), vec![1.0, 10.0, 100.0]);
        assert_eq!(ValueSpec("log:1:100:3".into()).reals().unwrap(), vec![1.0, 10.0, 100.0]);
        assert_eq!(ValueSpec("lin:2:10:5".into()).integers().unwrap(), vec![2, 4, 6, 8, 10]);
        assert!(ValueSpec("log:0:10:3".into()).reals().is_err());
        assert!(ValueSpec("1,x".into()).reals().is_err());
        assert!(ValueSpec("a:b".into()).reals().is_err());
    }
}
