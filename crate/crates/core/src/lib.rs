//! Exact natural-orbital (Schmidt) decomposition of the one-particle reduced
//! density matrix for `N` bosons in a two-dimensional isotropic harmonic trap
//! with pairwise harmonic interactions.
//!
//! All quantities are dimensionless: lengths in `sqrt(hbar / m omega)`,
//! energies in `hbar omega`, and the interaction strength `lambda` in
//! `m omega^2`.
//!
//! The crate is split into
//!
//! * [`params`]: physical inputs and the derived closed-form parameter set,
//! * [`occupancy`]: occupancies, collective occupancies, participations and
//!   truncated occupancy tables,
//! * [`asymptotics`]: large-interaction and large-`N` estimates,
//! * [`special`]: Laguerre polynomials and scaled modified Bessel functions,
//! * [`kernel`]: the density-matrix kernel, its partial waves, the natural
//!   orbitals and the truncated Schmidt reconstruction,
//! * [`oracle`]: independent quadrature machinery (Gauss–Legendre, a
//!   Nyström discretization with a cyclic Jacobi eigensolver, angular
//!   Fourier quadrature) and the aggregate verification runner.
//!
//! ```
//! use moshinsky2d::{derive_params, occupancy, SystemParams};
//!
//! let d = derive_params(SystemParams::new(2, 1.0).unwrap()).unwrap();
//! let l00 = occupancy(&d, 0, 0);
//! assert!((l00 - 0.922_741_298_051_220_5).abs() < 1e-14);
//! ```

pub mod asymptotics;
mod error;
pub mod kernel;
pub mod occupancy;
pub mod oracle;
pub mod params;
pub mod special;

pub use asymptotics::{
    asymptotic_eta, asymptotic_k_eta, beta, condensate_deficit_large_n, AsymptoticEstimates,
};
pub use error::{Error, Result};
pub use kernel::{
    natural_orbital, radial_orbital, rdm_kernel, rdm_partial, reconstruct_rdm, ComplexAmplitude,
    OrbitalIndex, PolarPoint,
};
pub use occupancy::{
    build_occupancy_table, build_occupancy_table_with_limit, collective_occupancy,
    cutoffs_for_tail, occupancy, participation_collective, participation_fragment,
    participation_total, Cutoffs, OccupancyEntry, OccupancyTable, DEFAULT_TABLE_LIMIT,
};
pub use params::{derive_params, DerivedParams, SystemParams};
