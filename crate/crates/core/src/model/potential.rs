use num_complex::Complex64;

/// `V(x) = t2·sech²(αx) + st·sech(αx)·tanh(αx) + e0`.
///
/// `e0` is the value of the potential as `|x| → ∞`. It is kept separate from
/// the shape coefficients; bound-state energies elsewhere in the crate are
/// always measured relative to it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialCoefficients {
    pub t2: Complex64,
    pub st: Complex64,
    pub e0: Complex64,
    pub alpha: f64,
}

impl PotentialCoefficients {
    pub fn new(t2: Complex64, st: Complex64, e0: Complex64, alpha: f64) -> Self {
        Self { t2, st, e0, alpha }
    }

    pub fn zero(alpha: f64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self::new(z, z, z, alpha)
    }

    /// Same shape with the asymptotic offset removed.
    pub fn shape(&self) -> Self {
        Self {
            e0: Complex64::new(0.0, 0.0),
            ..*self
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.eval_shape(x) + self.e0
    }

    /// Potential minus its asymptotic value.
    pub fn eval_shape(&self, x: f64) -> Complex64 {
        let ax = self.alpha * x;
        let sech = 1.0 / ax.cosh();
        self.t2 * (sech * sech) + self.st * (sech * ax.tanh())
    }

    /// Largest coefficient magnitude, used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.t2.norm().max(self.st.norm()).max(self.e0.norm())
    }

    /// `V(x) → V(-x)*`: sech² is even and sech·tanh is odd.
    pub fn pt_image(&self) -> Self {
        Self {
            t2: self.t2.conj(),
            st: -self.st.conj(),
            e0: self.e0.conj(),
            alpha: self.alpha,
        }
    }

    /// PT symmetry of the shape alone: `Im t2 = 0` and `Re st = 0`.
    pub fn is_pt_symmetric_shape(&self, tol: f64) -> bool {
        self.t2.im.abs() <= tol && self.st.re.abs() <= tol
    }

    /// PT symmetry including the constant offset.
    pub fn is_pt_symmetric(&self, tol: f64) -> bool {
        self.is_pt_symmetric_shape(tol) && self.e0.im.abs() <= tol
    }

    /// Largest absolute difference between the `(t2, st)` pairs.
    pub fn shape_distance(&self, other: &Self) -> f64 {
        (self.t2 - other.t2).norm().max((self.st - other.st).norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pt_image_is_pointwise_reflection_conjugate() {
        let v = PotentialCoefficients::new(c(-3.0, 0.7), c(0.4, 2.0), c(1.0, -0.3), 1.3);
        let w = v.pt_image();
        for &x in &[-2.0, -0.3, 0.0, 0.9, 4.0] {
            let d = w.eval(x) - v.eval(-x).conj();
            assert!(d.norm() < 1e-14, "x = {x}: {d}");
        }
        assert_eq!(w.pt_image(), v);
    }

    #[test]
    fn pt_symmetric_shape_is_fixed_by_pt_image() {
        let v = PotentialCoefficients::new(c(-15.0, 0.0), c(0.0, 15.0), c(4.0, 0.0), 1.0);
        assert!(v.is_pt_symmetric(0.0));
        assert_eq!(v.pt_image(), v);
    }

    #[test]
    fn offset_only_breaks_full_symmetry() {
        let v = PotentialCoefficients::new(c(-1.0, 0.0), c(0.0, 1.0), c(3.75, 2.0), 1.0);
        assert!(v.is_pt_symmetric_shape(1e-12));
        assert!(!v.is_pt_symmetric(1e-12));
    }

    #[test]
    fn decays_to_offset() {
        let v = PotentialCoefficients::new(c(-2.0, 0.0), c(0.0, 5.0), c(1.0, 0.5), 1.0);
        assert!((v.eval(800.0) - v.e0).norm() < 1e-300);
        assert!((v.eval(-40.0) - v.e0).norm() < 1e-15);
    }
}
