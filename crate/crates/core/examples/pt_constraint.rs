//! Where the complexified potential stays PT-symmetric: `C = 0` or
//! `2(A − B) + α = 0`.

use pcs_susy::model::{
    pcs_partner_coefficients, pt_constraint_check, Branch, SusyParams, TOL_CONSTRAINT,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        (2.0, 3.0, 0.0),
        (2.0, 3.0, 0.5),
        (2.0, 2.5, 0.5),
        (-1.0, -0.5, 1.2),
    ];
    println!(
        "{:>6} {:>6} {:>6} {:>10} {:>12} {:>10}",
        "A", "B", "C", "symmetric", "residual", "real t2"
    );
    for (a, b, c) in cases {
        let p = SusyParams::new(a, b, c, 1.0)?;
        let k = pt_constraint_check(&p);
        let v = pcs_partner_coefficients(&p, Branch::Plus);
        println!(
            "{a:>6} {b:>6} {c:>6} {:>10} {:>12.3e} {:>10}",
            k.pt_symmetric,
            k.constraint_residual,
            v.is_pt_symmetric_shape(TOL_CONSTRAINT)
        );
    }
    Ok(())
}
