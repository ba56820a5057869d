//! LU factorization with partial pivoting of a shifted tridiagonal matrix
//! whose sub- and super-diagonals are one constant. Pivoting produces a
//! second superdiagonal in `U`.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ZeroPivot(pub usize);

#[derive(Debug, Clone)]
pub(crate) struct TridiagonalLu {
    /// Multipliers of `L`.
    lower: Vec<Complex64>,
    /// Diagonal of `U`.
    diag: Vec<Complex64>,
    /// First and second superdiagonals of `U`.
    upper1: Vec<Complex64>,
    upper2: Vec<Complex64>,
    swapped: Vec<bool>,
}

#[inline]
fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

impl TridiagonalLu {
    /// Factors `T − shift·I` where `T` has diagonal `diag` and constant
    /// off-diagonal `off`.
    pub(crate) fn factor(
        diag: &[Complex64],
        off: f64,
        shift: Complex64,
    ) -> Result<Self, ZeroPivot> {
        let n = diag.len();
        let off = Complex64::new(off, 0.0);
        let mut d: Vec<Complex64> = diag.iter().map(|&x| x - shift).collect();
        let mut dl = vec![off; n.saturating_sub(1)];
        let mut du = vec![off; n.saturating_sub(1)];
        let mut du2 = vec![Complex64::new(0.0, 0.0); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];

        for i in 0..n.saturating_sub(1) {
            if abs1(d[i]) >= abs1(dl[i]) {
                if abs1(d[i]) != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if let Some(i) = d.iter().position(|&x| abs1(x) == 0.0) {
            return Err(ZeroPivot(i));
        }
        Ok(Self {
            lower: dl,
            diag: d,
            upper1: du,
            upper2: du2,
            swapped,
        })
    }

    /// Overwrites `b` with the solution of `(T − shift·I) x = b`.
    pub(crate) fn solve_in_place(&self, b: &mut [Complex64]) {
        let n = self.diag.len();
        debug_assert_eq!(b.len(), n);
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.lower[i] * b[i];
            } else {
                b[i + 1] -= self.lower[i] * b[i];
            }
        }
        b[n - 1] /= self.diag[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.upper1[n - 2] * b[n - 1]) / self.diag[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.upper1[i] * b[i + 1] - self.upper2[i] * b[i + 2]) / self.diag[i];
        }
    }
}
