use num_complex::Complex64;

use super::{Branch, ComplexSusyParams, PotentialCoefficients, SusyParams};

/// `W(x) = lam·tanh(αx) + i·mu·sech(αx)` together with the factorization
/// energy of the partner `V−`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Superpotential {
    pub lam: Complex64,
    pub mu: Complex64,
    pub alpha: f64,
    pub factorization_energy: Complex64,
}

impl Superpotential {
    /// Builds `W` with its natural factorization energy `-lam²`.
    pub fn new(lam: Complex64, mu: Complex64, alpha: f64) -> Self {
        Self {
            lam,
            mu,
            alpha,
            factorization_energy: -(lam * lam),
        }
    }

    pub fn real(lam: f64, mu: f64, alpha: f64) -> Self {
        Self::new(Complex64::new(lam, 0.0), Complex64::new(mu, 0.0), alpha)
    }

    /// The ansatz `(A ± iC) tanh αx + (±C + iB) sech αx`.
    pub fn from_ansatz(p: &SusyParams, branch: Branch) -> Self {
        let q = p.complexify(branch);
        Self::new(q.cal_a, q.cal_b, q.alpha)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let ax = self.alpha * x;
        let sech = 1.0 / ax.cosh();
        self.lam * ax.tanh() + Complex64::i() * self.mu * sech
    }

    pub fn derivative(&self, x: f64) -> Complex64 {
        let ax = self.alpha * x;
        let sech = 1.0 / ax.cosh();
        let tanh = ax.tanh();
        self.alpha * (self.lam * (sech * sech) - Complex64::i() * self.mu * (sech * tanh))
    }

    /// Whether `W(-x)* = -W(x)`, i.e. both `lam` and `mu` are real.
    pub fn is_pt_antisymmetric(&self, tol: f64) -> bool {
        self.lam.im.abs() <= tol && self.mu.im.abs() <= tol
    }

    /// Largest `|W(-x)* + W(x)|` over the sample points.
    pub fn pt_antisymmetry_violation(&self, xs: &[f64]) -> f64 {
        xs.iter()
            .map(|&x| (self.eval(-x).conj() + self.eval(x)).norm())
            .fold(0.0, f64::max)
    }

    /// Partner potentials `V∓ = W² ∓ W'`.
    ///
    /// With `S = sech αx`, `T = tanh αx`: `W² = lam²(1 − S²) + 2i·lam·mu·ST − mu²S²`
    /// and `W' = α·lam·S² − iα·mu·ST`.
    pub fn partner_potentials(&self) -> (PotentialCoefficients, PotentialCoefficients) {
        let (lam, mu, a) = (self.lam, self.mu, self.alpha);
        let i = Complex64::i();
        let lam2 = lam * lam;
        let mu2 = mu * mu;
        let vminus =
            PotentialCoefficients::new(-(lam * (lam + a) + mu2), i * mu * (2.0 * lam + a), lam2, a);
        let vplus =
            PotentialCoefficients::new(-(lam * (lam - a) + mu2), i * mu * (2.0 * lam - a), lam2, a);
        (vminus, vplus)
    }
}

/// The two superpotentials of one potential, related by `lam + α/2 ↔ mu`.
pub fn dual_pair(q: &ComplexSusyParams) -> (Superpotential, Superpotential) {
    let half = 0.5 * q.alpha;
    let w = Superpotential::new(q.cal_a, q.cal_b, q.alpha);
    let wprime = Superpotential::new(q.cal_b - half, q.cal_a + half, q.alpha);
    (w, wprime)
}

/// `W, W′` for the ansatz on the given branch. With `C = 0` both are
/// PT-antisymmetric and carry real factorization energies `-A²` and
/// `-(B − α/2)²`.
pub fn dual_superpotentials(p: &SusyParams, branch: Branch) -> (Superpotential, Superpotential) {
    dual_pair(&p.complexify(branch))
}

/// `V∓` pair for a superpotential (free-function spelling).
pub fn partner_potentials(w: &Superpotential) -> (PotentialCoefficients, PotentialCoefficients) {
    w.partner_potentials()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn hermitian_limit() {
        let (vm, _) = Superpotential::real(1.0, 0.0, 1.0).partner_potentials();
        assert_eq!(vm.t2, c(-2.0, 0.0));
        assert_eq!(vm.st, c(0.0, 0.0));
        assert_eq!(vm.e0, c(1.0, 0.0));
    }

    #[test]
    fn zero_superpotential() {
        let (vm, vp) = Superpotential::real(0.0, 0.0, 1.0).partner_potentials();
        for v in [vm, vp] {
            assert_eq!(v.scale(), 0.0);
        }
    }

    #[test]
    fn worked_pt_example() {
        let (vm, _) = Superpotential::real(2.0, 3.0, 1.0).partner_potentials();
        assert!(close(vm.t2, c(-15.0, 0.0)));
        assert!(close(vm.st, c(0.0, 15.0)));
        assert!(close(vm.e0, c(4.0, 0.0)));
    }

    #[test]
    fn derivative_matches_central_difference() {
        let w = Superpotential::new(c(1.3, -0.4), c(0.7, 0.2), 0.8);
        let h = 1e-5;
        for &x in &[-3.0, -0.5, 0.0, 1.7] {
            let fd = (w.eval(x + h) - w.eval(x - h)) / (2.0 * h);
            assert!((fd - w.derivative(x)).norm() < 1e-8);
        }
    }

    #[test]
    fn dual_factorization_energies() {
        let p = SusyParams::new(2.0, 3.2, 0.0, 1.0).unwrap();
        let (w, wp) = dual_superpotentials(&p, Branch::Plus);
        assert!(close(w.factorization_energy, c(-4.0, 0.0)));
        assert!(close(wp.factorization_energy, c(-7.29, 0.0)));
        assert_eq!(w.factorization_energy.im, 0.0);
        assert_eq!(wp.factorization_energy.im, 0.0);
    }

    #[test]
    fn complexified_dual_energies() {
        let p = SusyParams::new(2.0, 3.0, 0.5, 1.0).unwrap();
        let (w, wp) = dual_superpotentials(&p, Branch::Plus);
        assert!(close(w.factorization_energy, c(-3.75, -2.0)));
        assert!(close(wp.factorization_energy, c(-6.0, 2.5)));
        let (w, wp) = dual_superpotentials(&p, Branch::Minus);
        assert!(close(w.factorization_energy, c(-3.75, 2.0)));
        assert!(close(wp.factorization_energy, c(-6.0, -2.5)));
    }

    #[test]
    fn duals_share_shape() {
        let p = SusyParams::new(1.7, -0.6, 0.3, 1.4).unwrap();
        for br in Branch::BOTH {
            let (w, wp) = dual_superpotentials(&p, br);
            let (a, _) = w.partner_potentials();
            let (b, _) = wp.partner_potentials();
            assert!(a.shape_distance(&b) < 1e-13);
            assert!((a.e0 - b.e0).norm() > 1e-3);
        }
    }
}
