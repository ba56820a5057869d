use num_complex::Complex64;
use serde::Serialize;

use super::tridiag::TridiagonalLu;
use super::{DiscretizedOperator, NumericsError};

/// Fraction of the grid at each end inspected for leakage.
const EDGE_FRACTION: f64 = 0.05;
/// Fixed-shift iteration hands over to Rayleigh-quotient refinement once
/// the relative residual drops below this.
const REFINE_BELOW: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenResult {
    pub energy: Complex64Ser,
    /// `‖Hψ − Eψ‖ / ‖ψ‖`
    pub residual: f64,
    /// `max |ψ|` over the outer 5% of nodes on either side, over `max |ψ|`.
    pub boundary_leak: f64,
    pub iterations: usize,
}

/// Serializes as `{ "re": .., "im": .. }`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Complex64Ser {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Complex64Ser {
    /// Signed zeros are written as `0`.
    fn from(z: Complex64) -> Self {
        Self {
            re: z.re + 0.0,
            im: z.im + 0.0,
        }
    }
}

impl From<Complex64Ser> for Complex64 {
    fn from(z: Complex64Ser) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl EigenResult {
    pub fn energy(&self) -> Complex64 {
        self.energy.into()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub result: EigenResult,
    pub vector: Vec<Complex64>,
}

/// Deterministic start: a ramp rather than the constant vector, so that
/// states odd under reflection are not excluded by symmetry.
pub(crate) fn start_vector(n: usize) -> Vec<Complex64> {
    let denom = (n.max(2) - 1) as f64;
    let mut v: Vec<Complex64> = (0..n)
        .map(|j| Complex64::new(1.0 + 0.5 * j as f64 / denom, 0.0))
        .collect();
    normalize(&mut v);
    v
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let n = norm2(v);
    if n > 0.0 {
        let inv = 1.0 / n;
        for z in v.iter_mut() {
            *z *= inv;
        }
    }
    n
}

pub fn boundary_leak(v: &[Complex64]) -> f64 {
    let n = v.len();
    let edge = ((n as f64 * EDGE_FRACTION).ceil() as usize).max(1).min(n);
    let peak = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    let outer = v[..edge]
        .iter()
        .chain(&v[n - edge..])
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    outer / peak
}

/// Candidate energies for a unit vector: the bilinear quotient `ψᵀHψ/ψᵀψ`
/// (second-order accurate for complex symmetric `H`) and the Hermitian one
/// `ψ*Hψ` (stable when `ψᵀψ` is nearly zero). The one with the smaller
/// residual wins.
fn best_quotient(op: &DiscretizedOperator, v: &[Complex64]) -> (Complex64, f64) {
    let hv = op.apply(v);
    let mut bilinear_num = Complex64::new(0.0, 0.0);
    let mut bilinear_den = Complex64::new(0.0, 0.0);
    let mut herm = Complex64::new(0.0, 0.0);
    for (x, y) in v.iter().zip(&hv) {
        bilinear_num += x * y;
        bilinear_den += x * x;
        herm += x.conj() * y;
    }
    let mut best = (herm, op.residual_norm(v, herm));
    if bilinear_den.norm() > 1e-3 {
        let e = bilinear_num / bilinear_den;
        let r = op.residual_norm(v, e);
        if r < best.1 {
            best = (e, r);
        }
    }
    best
}

/// Inverse iteration with a fixed complex shift, refined by Rayleigh-quotient
/// steps once the eigenvector has separated out.
///
/// Each step is one O(N) tridiagonal solve with partial pivoting. A shift
/// that makes the matrix exactly singular is nudged by `tol` and retried.
pub fn eigen_near(
    op: &DiscretizedOperator,
    shift: Complex64,
    tol: f64,
    max_iter: usize,
) -> Result<Eigenpair, NumericsError> {
    if !(tol > 0.0) {
        return Err(NumericsError::InvalidGrid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut sigma = shift;
    let mut lu = factor_nudged(op, &mut sigma, tol)?;
    let mut v = start_vector(op.len());
    let mut refining = false;
    let mut last = (sigma, f64::INFINITY);

    for it in 1..=max_iter {
        lu.solve_in_place(&mut v);
        if normalize(&mut v) == 0.0 || v.iter().any(|z| !z.is_finite()) {
            break;
        }
        let (energy, residual) = best_quotient(op, &v);
        last = (energy, residual);
        if residual <= tol {
            return Ok(Eigenpair {
                result: EigenResult {
                    energy: energy.into(),
                    residual,
                    boundary_leak: boundary_leak(&v),
                    iterations: it,
                },
                vector: v,
            });
        }
        if !refining && residual <= REFINE_BELOW * (1.0 + energy.norm()) {
            refining = true;
        }
        if refining {
            sigma = energy;
            match TridiagonalLu::factor(&op.diag, op.offdiag, sigma) {
                Ok(f) => lu = f,
                // The estimate is an exact eigenvalue of the discretization.
                Err(_) => {
                    return Ok(Eigenpair {
                        result: EigenResult {
                            energy: energy.into(),
                            residual,
                            boundary_leak: boundary_leak(&v),
                            iterations: it,
                        },
                        vector: v,
                    })
                }
            }
        }
    }
    Err(NumericsError::NoConvergence {
        max_iter,
        shift,
        energy: last.0,
        residual: last.1,
    })
}

fn factor_nudged(
    op: &DiscretizedOperator,
    sigma: &mut Complex64,
    tol: f64,
) -> Result<TridiagonalLu, NumericsError> {
    for _ in 0..4 {
        match TridiagonalLu::factor(&op.diag, op.offdiag, *sigma) {
            Ok(lu) => return Ok(lu),
            Err(_) => *sigma += Complex64::new(tol, tol),
        }
    }
    Err(NumericsError::SingularShift { shift: *sigma })
}
