//! Parameters `(m, b)` of the sl(2) family reproducing the SUSY potential,
//! by closed form and by deflated Newton iteration.

use num_complex::Complex64;
use pcs_susy::model::{Branch, SusyParams};
use pcs_susy::sl2::{
    build_sl2_potential, closed_form_solutions, max_residual, newton_solutions,
    solve_correspondence, NewtonSettings,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (a, b, c) in [(2.0, 3.0, 0.0), (2.0, 3.0, 0.5)] {
        let p = SusyParams::new(a, b, c, 1.0)?;
        println!("A = {a}, B = {b}, C = {c}");
        for s in solve_correspondence(&p, Branch::Plus)? {
            let v = build_sl2_potential(&s);
            println!(
                "  m = {:.6}, b = {:.6}   t2 = {:.4}, st = {:.4}, residual {:.1e}",
                tidy(s.m),
                tidy(s.b),
                tidy(v.t2),
                tidy(v.st),
                max_residual(&s, &p, Branch::Plus)
            );
        }
        let closed = closed_form_solutions(&p, Branch::Plus)?;
        let newton = newton_solutions(&p, Branch::Plus, &NewtonSettings::default())?;
        println!(
            "  closed form: {} roots, Newton: {} roots",
            closed.len(),
            newton.len()
        );
    }
    Ok(())
}

/// Drops the sign of zero parts, which `{:.6}` would otherwise print.
fn tidy(z: Complex64) -> Complex64 {
    let r = |x: f64| if x.abs() < 5e-7 { 0.0 } else { x };
    Complex64::new(r(z.re), r(z.im))
}
