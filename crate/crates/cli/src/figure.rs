//! Data grids behind the published figure panels.

use rayon::prelude::*;

use moshinsky2d::{
    asymptotic_eta, asymptotic_k_eta, collective_occupancy, derive_params,
    participation_collective, participation_fragment, participation_total, SystemParams,
};

use crate::error::{CliError, CliResult};
use crate::grid::{lambda_axis, n_axis};
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Panel {
    /// Collective occupancies against lambda, N = 2.
    Fig1a,
    /// Collective occupancies against lambda, N = 500.
    Fig1b,
    /// Collective participation against lambda, N = 2.
    Fig1c,
    /// Collective participation against lambda, N = 500.
    Fig1d,
    /// Collective participation against N for several lambda.
    Fig2a,
    /// Lowest collective occupancies against N.
    Fig2b,
    /// Total participation against lambda for several N.
    Fig3a,
    /// Fragment participation against lambda for several N.
    Fig3b,
}

impl Panel {
    pub fn name(self) -> &'static str {
        match self {
            Panel::Fig1a => "fig1a",
            Panel::Fig1b => "fig1b",
            Panel::Fig1c => "fig1c",
            Panel::Fig1d => "fig1d",
            Panel::Fig2a => "fig2a",
            Panel::Fig2b => "fig2b",
            Panel::Fig3a => "fig3a",
            Panel::Fig3b => "fig3b",
        }
    }
}

pub const LAMBDA_RANGE: (f64, f64) = (1e-2, 1e8);
pub const LAMBDA_POINTS: usize = 60;
pub const N_RANGE: (u64, u64) = (2, 10_000);
pub const N_POINTS: usize = 50;
pub const FIG2A_LAMBDAS: [f64; 3] = [1.0, 1e2, 1e4];
pub const FIG2B_LAMBDA: f64 = 1e2;
pub const FIG3_NS: [u64; 3] = [2, 50, 500];

/// Grid overrides; `None` keeps the panel default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FigureOverrides {
    pub n: Option<u64>,
    pub n_values: Option<Vec<u64>>,
    pub n_min: Option<u64>,
    pub n_max: Option<u64>,
    pub lambda: Option<f64>,
    pub lambda_values: Option<Vec<f64>>,
    pub lambda_min: Option<f64>,
    pub lambda_max: Option<f64>,
    pub points: Option<usize>,
    pub l_max: Option<u64>,
}

impl FigureOverrides {
    fn lambda_grid(&self) -> CliResult<Vec<f64>> {
        lambda_axis(
            self.lambda_min.unwrap_or(LAMBDA_RANGE.0),
            self.lambda_max.unwrap_or(LAMBDA_RANGE.1),
            self.points.unwrap_or(LAMBDA_POINTS),
        )
    }

    fn n_grid(&self) -> CliResult<Vec<u64>> {
        n_axis(
            self.n_min.unwrap_or(N_RANGE.0),
            self.n_max.unwrap_or(N_RANGE.1),
            self.points.unwrap_or(N_POINTS),
        )
    }
}

/// Evaluates a panel on the current rayon pool. The table carries the grid
/// description as metadata.
pub fn figure_table(panel: Panel, o: &FigureOverrides) -> CliResult<Table> {
    let mut table = match panel {
        Panel::Fig1a | Panel::Fig1b => {
            let n = o.n.unwrap_or(if panel == Panel::Fig1a { 2 } else { 500 });
            eta_vs_lambda(n, &o.lambda_grid()?, o.l_max.unwrap_or(5))?
        }
        Panel::Fig1c | Panel::Fig1d => {
            let n = o.n.unwrap_or(if panel == Panel::Fig1c { 2 } else { 500 });
            k_eta_vs_lambda(n, &o.lambda_grid()?)?
        }
        Panel::Fig2a => {
            let lambdas = o.lambda_values.clone().unwrap_or_else(|| FIG2A_LAMBDAS.to_vec());
            k_eta_vs_n(&lambdas, &o.n_grid()?)?
        }
        Panel::Fig2b => {
            eta_vs_n(o.lambda.unwrap_or(FIG2B_LAMBDA), &o.n_grid()?, o.l_max.unwrap_or(2))?
        }
        Panel::Fig3a | Panel::Fig3b => {
            let ns = o.n_values.clone().unwrap_or_else(|| FIG3_NS.to_vec());
            participation_vs_lambda(panel, &ns, &o.lambda_grid()?)?
        }
    };
    table.meta.insert(0, ("figure".into(), panel.name().into()));
    Ok(table)
}

fn validated(points: impl IntoIterator<Item = (u64, f64)>) -> CliResult<Vec<SystemParams>> {
    points.into_iter().map(|(n, l)| SystemParams::new(n, l).map_err(CliError::from)).collect()
}

fn eval_rows(
    params: Vec<SystemParams>,
    row: impl Fn(SystemParams) -> CliResult<Vec<Cell>> + Sync + Send,
) -> CliResult<Vec<Vec<Cell>>> {
    params.into_par_iter().map(row).collect()
}

fn fill(mut t: Table, rows: Vec<Vec<Cell>>) -> Table {
    for r in rows {
        t.push(r);
    }
    t
}

fn grid_meta(t: &mut Table, key: &str, values: &[f64]) {
    if let (Some(a), Some(b)) = (values.first(), values.last()) {
        t.meta(key, format!("{a}..{b} ({} points)", values.len()));
    }
}

fn eta_vs_lambda(n: u64, lambdas: &[f64], l_max: u64) -> CliResult<Table> {
    let params = validated(lambdas.iter().map(|&l| (n, l)))?;
    let mut cols = vec!["lambda".to_string()];
    cols.extend((0..=l_max).map(|l| format!("eta{l}")));
    cols.extend((0..=l_max).map(|l| format!("eta{l}_asym")));
    let mut t = Table::new(cols);
    t.meta("N", n);
    grid_meta(&mut t, "lambda", lambdas);
    let rows = eval_rows(params, |p| {
        let d = derive_params(p)?;
        let mut r = vec![Cell::Real(p.lambda)];
        r.extend((0..=l_max as i64).map(|l| Cell::Real(collective_occupancy(&d, l))));
        r.extend((0..=l_max as i64).map(|l| Cell::Real(asymptotic_eta(p, l).unwrap_or(f64::NAN))));
        Ok(r)
    })?;
    Ok(fill(t, rows))
}

fn k_eta_vs_lambda(n: u64, lambdas: &[f64]) -> CliResult<Table> {
    let params = validated(lambdas.iter().map(|&l| (n, l)))?;
    let mut t = Table::new(["lambda", "k_eta", "k_eta_asym"]);
    t.meta("N", n);
    grid_meta(&mut t, "lambda", lambdas);
    let rows = eval_rows(params, |p| {
        let d = derive_params(p)?;
        Ok(vec![
            p.lambda.into(),
            participation_collective(&d).into(),
            asymptotic_k_eta(p).unwrap_or(f64::NAN).into(),
        ])
    })?;
    Ok(fill(t, rows))
}

fn k_eta_vs_n(lambdas: &[f64], ns: &[u64]) -> CliResult<Table> {
    let params = validated(lambdas.iter().flat_map(|&l| ns.iter().map(move |&n| (n, l))))?;
    let mut t = Table::new(["lambda", "N", "k_eta"]);
    let lam: Vec<String> = lambdas.iter().map(|l| l.to_string()).collect();
    t.meta("lambda", lam.join(","));
    t.meta("N", format!("{}..{} ({} points)", ns[0], ns[ns.len() - 1], ns.len()));
    let rows = eval_rows(params, |p| {
        let d = derive_params(p)?;
        Ok(vec![p.lambda.into(), p.n_particles.into(), participation_collective(&d).into()])
    })?;
    Ok(fill(t, rows))
}

fn eta_vs_n(lambda: f64, ns: &[u64], l_max: u64) -> CliResult<Table> {
    let params = validated(ns.iter().map(|&n| (n, lambda)))?;
    let mut cols = vec!["N".to_string()];
    cols.extend((0..=l_max).map(|l| format!("eta{l}")));
    let mut t = Table::new(cols);
    t.meta("lambda", lambda);
    t.meta("N", format!("{}..{} ({} points)", ns[0], ns[ns.len() - 1], ns.len()));
    let rows = eval_rows(params, |p| {
        let d = derive_params(p)?;
        let mut r = vec![Cell::from(p.n_particles)];
        r.extend((0..=l_max as i64).map(|l| Cell::Real(collective_occupancy(&d, l))));
        Ok(r)
    })?;
    Ok(fill(t, rows))
}

fn participation_vs_lambda(panel: Panel, ns: &[u64], lambdas: &[f64]) -> CliResult<Table> {
    let params = validated(ns.iter().flat_map(|&n| lambdas.iter().map(move |&l| (n, l))))?;
    let name = if panel == Panel::Fig3a { "k_total" } else { "kappa" };
    let mut t = Table::new(["N", "lambda", name]);
    let nv: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
    t.meta("N", nv.join(","));
    grid_meta(&mut t, "lambda", lambdas);
    let rows = eval_rows(params, |p| {
        let d = derive_params(p)?;
        let v = if panel == Panel::Fig3a { participation_total(&d) } else { participation_fragment(&d) };
        Ok(vec![p.n_particles.into(), p.lambda.into(), v.into()])
    })?;
    Ok(fill(t, rows))
}
