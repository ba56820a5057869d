//! Finite-difference eigensolver for `−ψ'' + V(x)ψ = Eψ` with a complex
//! potential, used as an independent check on the analytic spectra.

mod bound;
mod eigen;
mod grid;
mod operator;
mod tridiag;
mod verify;

use num_complex::Complex64;
use thiserror::Error;

pub use bound::{
    bound_spectrum, BoundLevel, BoundSpectrum, SearchOptions, CONTINUUM_DECAY_LENGTHS,
};
pub use eigen::{boundary_leak, eigen_near, Complex64Ser, EigenResult, Eigenpair};
pub use grid::{decay_rate, Grid, SPACING};
pub use operator::{discretize, DiscretizedOperator};
pub use verify::{
    match_levels, verify_spectrum, LevelMatch, LevelMatching, VerificationReport, VerifyOptions,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("invalid numerical setup: {0}")]
    InvalidGrid(String),
    #[error(
        "no convergence from shift {shift} after {max_iter} iterations (last estimate {energy}, residual {residual:e})"
    )]
    NoConvergence {
        max_iter: usize,
        shift: Complex64,
        energy: Complex64,
        residual: f64,
    },
    #[error("shift {shift} stays singular after perturbation")]
    SingularShift { shift: Complex64 },
    #[error(
        "domain too small: state at E = {energy} has boundary leak {boundary_leak:e} with half-width {half_width}; enlarge L"
    )]
    DomainTooSmall {
        energy: Complex64,
        boundary_leak: f64,
        half_width: f64,
    },
}

/// Ground-state style helper: raw eigenvalue near `shift` on `grid` and on
/// the grid with half the spacing, combined as `(4·E_{h/2} − E_h)/3`.
pub fn extrapolated_eigenvalue(
    v: &crate::model::PotentialCoefficients,
    grid: &Grid,
    shift: Complex64,
    tol: f64,
    max_iter: usize,
) -> Result<Complex64, NumericsError> {
    let coarse = eigen_near(&discretize(v, grid), shift, tol, max_iter)?
        .result
        .energy();
    let fine = eigen_near(&discretize(v, &grid.refined()?), coarse, tol, max_iter)?
        .result
        .energy();
    Ok((4.0 * fine - coarse) / 3.0)
}
