//! Occupancies `lambda_nl`, their per-`l` sums, participation numbers and
//! truncated occupancy tables.
//!
//! The spectrum is geometric: `lambda_nl = pi A (1 - t) t^(n + |l|/2) / z^2`,
//! so every partial sum and tail has a closed form.

use crate::error::{Error, Result};
use crate::params::DerivedParams;

/// Default hard cap on the number of entries in an [`OccupancyTable`].
pub const DEFAULT_TABLE_LIMIT: usize = 1_000_000;

/// Occupancy of the natural orbital `(n, l)`.
pub fn occupancy(d: &DerivedParams, n: u64, l: i64) -> f64 {
    let k = 2 * n + l.unsigned_abs();
    d.a_pi() * d.one_minus_t() * d.t_half_power(k) / d.z2
}

/// Collective occupancy `eta_l`, the fraction of particles with angular
/// momentum `l`.
pub fn collective_occupancy(d: &DerivedParams, l: i64) -> f64 {
    d.a_pi() * d.t_half_power(l.unsigned_abs()) / d.z2
}

// Participations are at least one; rounding near `t = 0` can land an ulp below.

/// Effective number of angular-momentum fragments, `(sum_l eta_l^2)^-1`.
pub fn participation_collective(d: &DerivedParams) -> f64 {
    let a_pi = d.a_pi();
    (d.s.powi(3) / (8.0 * d.b_coef * a_pi * a_pi)).max(1.0)
}

/// Effective number of natural orbitals, `(sum_nl lambda_nl^2)^-1`.
pub fn participation_total(d: &DerivedParams) -> f64 {
    let r = d.s / (2.0 * d.a_pi());
    (r * r).max(1.0)
}

/// Effective number of radial orbitals inside one `l` fragment; the same for
/// every `l`.
pub fn participation_fragment(d: &DerivedParams) -> f64 {
    (2.0 * d.b_coef / d.s).max(1.0)
}

/// Truncation `0 <= n <= n_max`, `|l| <= l_max` and the exact occupancy mass
/// left outside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cutoffs {
    pub n_max: u64,
    pub l_max: u64,
    pub tail_mass: f64,
}

impl Cutoffs {
    pub fn entry_count(&self) -> u128 {
        (self.n_max as u128 + 1) * (2 * self.l_max as u128 + 1)
    }
}

/// Mass outside the truncation, `a + b (1 - a)` with `a = t^(n_max+1)` the
/// radial tail fraction and `b` the collective mass at `|l| > l_max`.
pub fn tail_mass(d: &DerivedParams, n_max: u64, l_max: u64) -> f64 {
    let a = d.t_half_power(2 * (n_max + 1));
    let b = angular_tail(d, l_max);
    a + b * (1.0 - a)
}

fn angular_tail(d: &DerivedParams, l_max: u64) -> f64 {
    2.0 * collective_occupancy(d, 0) * d.t_half_power(l_max + 1) / d.one_minus_sqrt_t()
}

/// Smallest truncation whose exact tail mass is at most `epsilon`.
///
/// "Smallest" means fewest table entries `(n_max + 1)(2 l_max + 1)`; among
/// equal counts the smaller `l_max` wins.
pub fn cutoffs_for_tail(d: &DerivedParams, epsilon: f64) -> Result<Cutoffs> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain(format!("epsilon must lie in (0, 1) (got {epsilon})")));
    }
    if d.t == 0.0 {
        return Ok(Cutoffs { n_max: 0, l_max: 0, tail_mass: 0.0 });
    }
    let ln_t = d.t.ln();
    let mut best: Option<Cutoffs> = None;
    let mut l_max = 0u64;
    loop {
        if let Some(b) = best {
            if 2 * l_max as u128 + 1 > b.entry_count() {
                break;
            }
        }
        let b = angular_tail(d, l_max);
        if b < epsilon {
            // need t^(n_max+1) <= (epsilon - b) / (1 - b)
            let target = (epsilon - b) / (1.0 - b);
            let guess = (target.ln() / ln_t).ceil().max(1.0) as u64;
            let mut n_max = guess.saturating_sub(2);
            while tail_mass(d, n_max, l_max) > epsilon {
                n_max += 1;
            }
            let c = Cutoffs { n_max, l_max, tail_mass: tail_mass(d, n_max, l_max) };
            match best {
                Some(prev) if prev.entry_count() <= c.entry_count() => {}
                _ => best = Some(c),
            }
        }
        l_max += 1;
    }
    Ok(best.expect("t < 1 guarantees a finite truncation"))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccupancyEntry {
    pub n: u64,
    pub l: i64,
    pub occupancy: f64,
}

/// Occupancies on a rectangular `(n, l)` truncation plus the analytic tail.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyTable {
    pub params: DerivedParams,
    pub n_max: u64,
    pub l_max: u64,
    pub entries: Vec<OccupancyEntry>,
    pub tail_mass: f64,
}

impl OccupancyTable {
    /// Entries for every `n <= n_max` and `|l| <= l_max`, in `(n, l)` order
    /// with `l` running from `-l_max` to `l_max`.
    pub fn with_cutoffs(d: &DerivedParams, n_max: u64, l_max: u64, limit: usize) -> Result<Self> {
        let needed = (n_max as u128 + 1) * (2 * l_max as u128 + 1);
        if needed > limit as u128 {
            return Err(Error::TableTooLarge { needed, limit });
        }
        let l_max_i = l_max as i64;
        let mut entries = Vec::with_capacity(needed as usize);
        for n in 0..=n_max {
            for l in -l_max_i..=l_max_i {
                entries.push(OccupancyEntry { n, l, occupancy: occupancy(d, n, l) });
            }
        }
        Ok(OccupancyTable {
            params: *d,
            n_max,
            l_max,
            entries,
            tail_mass: tail_mass(d, n_max, l_max),
        })
    }

    pub fn get(&self, n: u64, l: i64) -> Option<f64> {
        if n > self.n_max || l.unsigned_abs() > self.l_max {
            return None;
        }
        let width = 2 * self.l_max + 1;
        let idx = n * width + (l + self.l_max as i64) as u64;
        Some(self.entries[idx as usize].occupancy)
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|e| e.occupancy).sum()
    }

    /// Entries ordered by descending occupancy; ties by `n`, then `|l|`, then
    /// `+l` before `-l`.
    pub fn sorted_by_occupancy(&self) -> Vec<OccupancyEntry> {
        let mut v = self.entries.clone();
        v.sort_by(|a, b| {
            b.occupancy
                .total_cmp(&a.occupancy)
                .then(a.n.cmp(&b.n))
                .then(a.l.unsigned_abs().cmp(&b.l.unsigned_abs()))
                .then(b.l.cmp(&a.l))
        });
        v
    }
}

pub fn build_occupancy_table(d: &DerivedParams, epsilon: f64) -> Result<OccupancyTable> {
    build_occupancy_table_with_limit(d, epsilon, DEFAULT_TABLE_LIMIT)
}

pub fn build_occupancy_table_with_limit(
    d: &DerivedParams,
    epsilon: f64,
    limit: usize,
) -> Result<OccupancyTable> {
    let c = cutoffs_for_tail(d, epsilon)?;
    OccupancyTable::with_cutoffs(d, c.n_max, c.l_max, limit)
}
