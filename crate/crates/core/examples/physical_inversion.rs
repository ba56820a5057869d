//! From physical couplings `V1`, `V2` back to SUSY parameters.

use pcs_susy::model::{pcs_partner_coefficients, physical_to_susy, Branch, PcsPhysicalParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let phys = PcsPhysicalParams::new(15.0, -15.0, 1.0)?;
    let f = physical_to_susy(&phys)?;
    println!("roots: {:?}", f.roots);
    for q in &f.candidates {
        let v = pcs_partner_coefficients(q, Branch::Plus);
        println!(
            "A = {:>5}, B = {:>5}:  V1 = {}, V2 = {}",
            q.a, q.b, -v.t2.re, -v.st.im
        );
    }
    println!(
        "mirrored: {:?}",
        f.mirrored.iter().map(|q| (q.a, q.b)).collect::<Vec<_>>()
    );
    Ok(())
}
