use num_complex::Complex64;

use super::Grid;
use crate::model::PotentialCoefficients;

/// Central-difference `−d²/dx² + V(x) − e0` on a [`Grid`]: complex symmetric
/// and tridiagonal with constant off-diagonal `−1/h²`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscretizedOperator {
    pub diag: Vec<Complex64>,
    pub offdiag: f64,
    pub grid: Grid,
    /// Inverse length scale of the potential that produced the operator.
    pub alpha: f64,
}

pub fn discretize(v: &PotentialCoefficients, grid: &Grid) -> DiscretizedOperator {
    let h = grid.spacing();
    let kinetic = 2.0 / (h * h);
    let diag = grid.nodes().map(|x| kinetic + v.eval_shape(x)).collect();
    DiscretizedOperator {
        diag,
        offdiag: -1.0 / (h * h),
        grid: *grid,
        alpha: v.alpha,
    }
}

impl DiscretizedOperator {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// `‖(H − E)ψ‖₂`, accumulated from node differences so the large
    /// `2/h²` diagonal does not swamp the result.
    pub fn residual_norm(&self, psi: &[Complex64], energy: Complex64) -> f64 {
        let n = psi.len();
        let inv_h2 = -self.offdiag;
        let kinetic = 2.0 * inv_h2;
        let zero = Complex64::new(0.0, 0.0);
        let mut acc = 0.0;
        for j in 0..n {
            let left = if j > 0 { psi[j - 1] } else { zero };
            let right = if j + 1 < n { psi[j + 1] } else { zero };
            let lap = ((psi[j] - left) + (psi[j] - right)) * inv_h2;
            let r = lap + (self.diag[j] - kinetic - energy) * psi[j];
            acc += r.norm_sqr();
        }
        acc.sqrt()
    }

    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let n = psi.len();
        (0..n)
            .map(|j| {
                let mut y = self.diag[j] * psi[j];
                if j > 0 {
                    y += self.offdiag * psi[j - 1];
                }
                if j + 1 < n {
                    y += self.offdiag * psi[j + 1];
                }
                y
            })
            .collect()
    }

    /// Largest `|diag[j] − conj(diag[N−1−j])|`: zero for a PT-symmetric potential.
    pub fn pt_defect(&self) -> f64 {
        let n = self.diag.len();
        (0..n)
            .map(|j| (self.diag[j] - self.diag[n - 1 - j].conj()).norm())
            .fold(0.0, f64::max)
    }
}
