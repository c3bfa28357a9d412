//! Per-point evaluation of every scalar observable and the `(N, lambda)` sweep.

use rayon::prelude::*;

use moshinsky2d::{
    collective_occupancy, condensate_deficit_large_n, derive_params, occupancy,
    participation_collective, participation_fragment, participation_total, SystemParams,
};

use crate::error::{CliError, CliResult};
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Observable {
    Eta,
    KEta,
    KTotal,
    Kappa,
    LambdaNl,
    Condensate,
}

impl Observable {
    pub const ALL: [Observable; 6] = [
        Observable::Eta,
        Observable::KEta,
        Observable::KTotal,
        Observable::Kappa,
        Observable::LambdaNl,
        Observable::Condensate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Observable::Eta => "eta",
            Observable::KEta => "k_eta",
            Observable::KTotal => "k_total",
            Observable::Kappa => "kappa",
            Observable::LambdaNl => "lambda_nl",
            Observable::Condensate => "condensate",
        }
    }

    /// Comma-separated names; the result is deduplicated in canonical order.
    pub fn parse_set(s: &str) -> CliResult<Vec<Observable>> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let o = Observable::ALL.into_iter().find(|o| o.name() == item).ok_or_else(|| {
                let names: Vec<_> = Observable::ALL.iter().map(|o| o.name()).collect();
                CliError::usage(format!("unknown observable {item:?} (valid: {})", names.join(", ")))
            })?;
            out.push(o);
        }
        if out.is_empty() {
            return Err(CliError::usage("observable set is empty"));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub n_values: Vec<u64>,
    pub lambda_values: Vec<f64>,
    pub l_max_report: u64,
    pub observables: Vec<Observable>,
}

impl SweepSpec {
    /// Every pair, `N`-major.
    pub fn points(&self) -> Vec<(u64, f64)> {
        self.n_values
            .iter()
            .flat_map(|&n| self.lambda_values.iter().map(move |&l| (n, l)))
            .collect()
    }

    pub fn validate(&self) -> CliResult<Vec<SystemParams>> {
        if self.n_values.is_empty() || self.lambda_values.is_empty() {
            return Err(CliError::usage("sweep ranges must be non-empty"));
        }
        self.points()
            .into_iter()
            .map(|(n, l)| SystemParams::new(n, l).map_err(CliError::from))
            .collect()
    }

    pub fn columns(&self) -> Vec<String> {
        let mut c = vec!["N".to_string(), "lambda".into(), "t".into()];
        for o in &self.observables {
            match o {
                Observable::Eta => c.extend((0..=self.l_max_report).map(|l| format!("eta{l}"))),
                Observable::KEta => c.push("k_eta".into()),
                Observable::KTotal => c.push("k_total".into()),
                Observable::Kappa => c.push("kappa".into()),
                Observable::LambdaNl => c.push("lambda00".into()),
                Observable::Condensate => c.push("cond_deficit".into()),
            }
        }
        c
    }
}

/// All observables at one `(N, lambda)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n_particles: u64,
    pub lambda: f64,
    pub t: f64,
    pub eta: Vec<f64>,
    pub k_eta: f64,
    pub k_total: f64,
    pub kappa: f64,
    pub lambda_00: f64,
    /// Large-`N` estimate `sqrt(lambda / 2N)` of `1 - lambda_00`; NaN for
    /// attractive interactions.
    pub condensate_deficit: f64,
}

impl SweepRow {
    pub fn evaluate(p: SystemParams, l_max_report: u64) -> CliResult<Self> {
        let d = derive_params(p)?;
        Ok(SweepRow {
            n_particles: p.n_particles,
            lambda: p.lambda,
            t: d.t,
            eta: (0..=l_max_report as i64).map(|l| collective_occupancy(&d, l)).collect(),
            k_eta: participation_collective(&d),
            k_total: participation_total(&d),
            kappa: participation_fragment(&d),
            lambda_00: occupancy(&d, 0, 0),
            condensate_deficit: condensate_deficit_large_n(p).unwrap_or(f64::NAN),
        })
    }

    pub fn cells(&self, observables: &[Observable]) -> Vec<Cell> {
        let mut c = vec![self.n_particles.into(), self.lambda.into(), self.t.into()];
        for o in observables {
            match o {
                Observable::Eta => c.extend(self.eta.iter().map(|&v| Cell::Real(v))),
                Observable::KEta => c.push(self.k_eta.into()),
                Observable::KTotal => c.push(self.k_total.into()),
                Observable::Kappa => c.push(self.kappa.into()),
                Observable::LambdaNl => c.push(self.lambda_00.into()),
                Observable::Condensate => c.push(self.condensate_deficit.into()),
            }
        }
        c
    }
}

/// Validates every point, then evaluates in parallel on the current rayon
/// pool. Row order is the order of [`SweepSpec::points`].
pub fn run_sweep(spec: &SweepSpec) -> CliResult<Vec<SweepRow>> {
    let points = spec.validate()?;
    points.into_par_iter().map(|p| SweepRow::evaluate(p, spec.l_max_report)).collect()
}

pub fn sweep_table(spec: &SweepSpec, rows: &[SweepRow]) -> Table {
    let mut t = Table::new(spec.columns());
    for r in rows {
        t.push(r.cells(&spec.observables));
    }
    t
}
