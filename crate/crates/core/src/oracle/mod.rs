//! Numerical machinery that checks the closed forms without sharing their
//! code paths: only the [`DerivedParams`](crate::DerivedParams) set is
//! common to both sides.

pub mod fourier;
pub mod jacobi;
pub mod nystrom;
pub mod quadrature;
pub mod verify;

pub use fourier::{fourier_nodes, fourier_partial};
pub use jacobi::{symmetric_eigen, SymmetricEigen};
pub use nystrom::{choose_radial_domain, nystrom_eigenvalues, nystrom_spectrum, NystromResult};
pub use quadrature::{gauss_legendre, orthonormality_matrix, GramMatrix, QuadratureRule};
pub use verify::{verify_all, CheckResult, VerifyConfig, VerifyLevel, VerifyReport};
