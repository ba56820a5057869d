//! Closed-form algebra of the complexified Scarf II family.
//!
//! Everything here works on the `(tanh αx, sech αx)` basis: a
//! [`Superpotential`] is a pair of coefficients, and its partners are
//! [`PotentialCoefficients`] on `sech²` and `sech·tanh`.

mod inversion;
mod params;
mod potential;
mod superpotential;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

pub use inversion::{physical_to_susy, PhysicalFactorization};
pub(crate) use params::check_alpha;
pub use params::{Branch, ComplexSusyParams, PcsPhysicalParams, SusyParams};
pub use potential::PotentialCoefficients;
pub use superpotential::{dual_pair, dual_superpotentials, partner_potentials, Superpotential};

/// Absolute tolerance on `C·(2(A − B) + α)`.
pub const TOL_CONSTRAINT: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(
        "no real factorization: roots of t² − {sum}t + {product} are {roots}, need both real and nonnegative"
    )]
    NoRealFactorization {
        sum: f64,
        product: f64,
        roots: String,
    },
}

/// `V−` of the branch-`±` ansatz, evaluated from its real/imaginary split:
///
/// ```text
/// t2 = −[A² + B² − 2C² + αA ± i(2A − 2B + α)C]
/// st = ±(2A − 2B + α)C + i[2AB + 2C² + αB]
/// e0 = (A ± iC)²
/// ```
///
/// Only the real part of `st` carries the branch sign, so the minus branch is
/// the PT image of the plus branch rather than its plain conjugate.
pub fn pcs_partner_coefficients(p: &SusyParams, branch: Branch) -> PotentialCoefficients {
    let SusyParams { a, b, c, alpha } = *p;
    let s = branch.sign();
    let k = (2.0 * a - 2.0 * b + alpha) * c;
    let t2 = -Complex64::new(a * a + b * b - 2.0 * c * c + alpha * a, s * k);
    let st = Complex64::new(s * k, 2.0 * a * b + 2.0 * c * c + alpha * b);
    let e0 = Complex64::new(a * a - c * c, s * 2.0 * a * c);
    PotentialCoefficients::new(t2, st, e0, alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PtConstraint {
    pub pt_symmetric: bool,
    /// `|C·(2(A − B) + α)|`
    pub constraint_residual: f64,
    /// `C ≠ 0` but `A = B − α/2`.
    pub degenerate_branch: bool,
}

pub fn pt_constraint_check(p: &SusyParams) -> PtConstraint {
    let factor = 2.0 * (p.a - p.b) + p.alpha;
    let constraint_residual = (p.c * factor).abs();
    PtConstraint {
        pt_symmetric: constraint_residual <= TOL_CONSTRAINT,
        constraint_residual,
        degenerate_branch: p.c.abs() > TOL_CONSTRAINT && factor.abs() <= TOL_CONSTRAINT,
    }
}

/// The parameter exchange `A + α/2 ↔ B`.
///
/// On [`ComplexSusyParams`] it leaves the `V−` shape unchanged for every
/// `(𝒜, ℬ)`. On [`SusyParams`] with `C ≠ 0` it also swaps the branch: the
/// exchanged plus-branch shape is the original minus-branch shape.
pub trait Exchange: Sized {
    fn exchanged(&self) -> Self;
}

impl Exchange for SusyParams {
    fn exchanged(&self) -> Self {
        let half = 0.5 * self.alpha;
        SusyParams {
            a: self.b - half,
            b: self.a + half,
            ..*self
        }
    }
}

impl Exchange for ComplexSusyParams {
    fn exchanged(&self) -> Self {
        let half = 0.5 * self.alpha;
        ComplexSusyParams {
            cal_a: self.cal_b - half,
            cal_b: self.cal_a + half,
            alpha: self.alpha,
        }
    }
}

pub fn exchange_map<P: Exchange>(p: &P) -> P {
    p.exchanged()
}
