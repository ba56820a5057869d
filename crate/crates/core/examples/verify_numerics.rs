//! Finite-difference eigensolver against analytic levels in the broken
//! phase, on both branches, plus the second-order convergence of the raw
//! eigenvalue.

use num_complex::Complex64;
use pcs_susy::model::{pcs_partner_coefficients, Branch, SusyParams};
use pcs_susy::numerics::{discretize, eigen_near, verify_spectrum, Grid, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = SusyParams::new(2.0, 3.0, 0.5, 1.0)?;
    for branch in Branch::BOTH {
        let r = verify_spectrum(&p, branch, &VerifyOptions::default())?;
        println!(
            "{branch}: {} levels, max |dE| = {:.2e}",
            r.matching.matches.len(),
            r.matching.max_delta
        );
        for l in &r.numeric {
            println!(
                "  E = {:.8}  residual {:.1e}  leak {:.1e}",
                l.energy(),
                l.residual,
                l.boundary_leak
            );
        }
    }

    let v = pcs_partner_coefficients(&SusyParams::pt_symmetric(1.0, 0.0, 1.0)?, Branch::Plus);
    let exact = Complex64::new(-1.0, 0.0);
    let mut last = None;
    for n in [1000, 2000, 4000] {
        let op = discretize(&v, &Grid::new(12.0, n)?);
        let err = (eigen_near(&op, exact, 1e-10, 300)?.result.energy() - exact).norm();
        match last {
            Some(prev) => println!("N = {n}: error {err:.3e}, ratio {:.3}", prev / err),
            None => println!("N = {n}: error {err:.3e}"),
        }
        last = Some(err);
    }
    Ok(())
}
