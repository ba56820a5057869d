//! The sl(2) potential-algebra family and its correspondence with the SUSY
//! parameters.
//!
//! With `F = tanh αx` and `G = b·sech αx` the family is
//! `V_m = (1/4 − m²)F′ + 2mG′ + G²`, i.e. `t2 = b² + α(1/4 − m²)`,
//! `st = −2αmb` and no constant term.

mod solve;

use num_complex::Complex64;
use thiserror::Error;

use crate::model::{check_alpha, Branch, ModelError, PotentialCoefficients, SusyParams};

pub use solve::{
    canonical_sort, closed_form_solutions, newton_solutions, solve_correspondence, NewtonSettings,
};

/// Agreement required between the two solution routes.
pub const ROUTE_TOL: f64 = 1e-8;
/// Largest acceptable correspondence residual of a returned solution.
pub const SOLUTION_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Sl2Error {
    #[error("degenerate root b² = {b2}: m is undefined when b = 0")]
    DegenerateB { b2: Complex64 },
    #[error("Newton route diverged from every start (best residual {residual:e})")]
    NewtonDivergence { residual: f64 },
    #[error("solution routes disagree: closed form has {closed} solutions, Newton found {newton} matching within {tol:e}")]
    RouteMismatch {
        closed: usize,
        newton: usize,
        tol: f64,
    },
    #[error("solution ({m}, {b}) has correspondence residual {residual:e}")]
    InaccurateSolution {
        m: Complex64,
        b: Complex64,
        residual: f64,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sl2Params {
    pub m: Complex64,
    pub b: Complex64,
    pub alpha: f64,
}

impl Sl2Params {
    pub fn new(m: Complex64, b: Complex64, alpha: f64) -> Result<Self, ModelError> {
        check_alpha(alpha)?;
        if !(m.re.is_finite() && m.im.is_finite() && b.re.is_finite() && b.im.is_finite()) {
            return Err(ModelError::InvalidParameter(format!(
                "m and b must be finite, got m = {m}, b = {b}"
            )));
        }
        Ok(Self { m, b, alpha })
    }

    /// The sign partner `(−m, −b)`, which gives the same potential.
    pub fn negated(&self) -> Self {
        Self {
            m: -self.m,
            b: -self.b,
            alpha: self.alpha,
        }
    }
}

/// `V_m` on the `(sech², sech·tanh)` basis, assembled from its real and
/// imaginary parts.
pub fn build_sl2_potential(s: &Sl2Params) -> PotentialCoefficients {
    let Sl2Params { m, b, alpha } = *s;
    let t2 = Complex64::new(
        b.re * b.re - b.im * b.im - alpha * (m.re * m.re - m.im * m.im) + 0.25 * alpha,
        2.0 * b.re * b.im - 2.0 * alpha * m.re * m.im,
    );
    let st = -2.0 * alpha * Complex64::new(m.re * b.re - m.im * b.im, m.re * b.im + m.im * b.re);
    PotentialCoefficients::new(t2, st, Complex64::new(0.0, 0.0), alpha)
}

/// `p = ±(A − B + α/2)C` and `q = AB + C² + αB/2`: half the real and
/// imaginary parts of the target `st`.
fn half_st(p: &SusyParams, branch: Branch) -> (f64, f64) {
    let SusyParams { a, b, c, alpha } = *p;
    (
        branch.sign() * (a - b + 0.5 * alpha) * c,
        a * b + c * c + 0.5 * alpha * b,
    )
}

/// The four real equations matching `V_m` to the branch-`±` `V−`, each as
/// LHS − RHS:
///
/// ```text
/// b_R² − b_I² − α(m_R² − m_I²) + α/4  = −[A² + B² − 2C² + αA]
/// 2b_R b_I − 2α m_R m_I               = ∓(2A − 2B + α)C
/// −2α(m_R b_R − m_I b_I)              = ±(2A − 2B + α)C
/// −2α(m_R b_I + m_I b_R)              = 2AB + 2C² + αB
/// ```
pub fn correspondence_residuals(s: &Sl2Params, p: &SusyParams, branch: Branch) -> [f64; 4] {
    let Sl2Params { m, b, .. } = *s;
    let SusyParams { a, b: bb, c, alpha } = *p;
    let k = branch.sign() * (2.0 * a - 2.0 * bb + alpha) * c;
    [
        b.re * b.re - b.im * b.im - alpha * (m.re * m.re - m.im * m.im)
            + 0.25 * alpha
            + (a * a + bb * bb - 2.0 * c * c + alpha * a),
        2.0 * b.re * b.im - 2.0 * alpha * m.re * m.im + k,
        -2.0 * alpha * (m.re * b.re - m.im * b.im) - k,
        -2.0 * alpha * (m.re * b.im + m.im * b.re) - (2.0 * a * bb + 2.0 * c * c + alpha * bb),
    ]
}

pub fn max_residual(s: &Sl2Params, p: &SusyParams, branch: Branch) -> f64 {
    correspondence_residuals(s, p, branch)
        .iter()
        .fold(0.0, |acc, r| acc.max(r.abs()))
}

/// `m` from the last two equations once `b ≠ 0` is known:
///
/// ```text
/// m_R = −(p b_R + q b_I) / (α|b|²)
/// m_I =  (p b_I − q b_R) / (α|b|²)
/// ```
pub fn m_from_b(b: Complex64, p: &SusyParams, branch: Branch) -> Complex64 {
    let (hp, hq) = half_st(p, branch);
    let d = p.alpha * b.norm_sqr();
    Complex64::new(-(hp * b.re + hq * b.im) / d, (hp * b.im - hq * b.re) / d)
}

/// `m_R² − m_I²` written in `b` alone.
pub fn m_square_difference(b: Complex64, p: &SusyParams, branch: Branch) -> f64 {
    let (hp, hq) = half_st(p, branch);
    let d = p.alpha * b.norm_sqr();
    let (br2, bi2) = (b.re * b.re, b.im * b.im);
    ((br2 - bi2) * (hp * hp - hq * hq) + 4.0 * hp * hq * b.re * b.im) / (d * d)
}

/// `m_R·m_I` written in `b` alone.
pub fn m_product(b: Complex64, p: &SusyParams, branch: Branch) -> f64 {
    let (hp, hq) = half_st(p, branch);
    let d = p.alpha * b.norm_sqr();
    let (br2, bi2) = (b.re * b.re, b.im * b.im);
    (hp * hq * (br2 - bi2) - b.re * b.im * (hp * hp - hq * hq)) / (d * d)
}
