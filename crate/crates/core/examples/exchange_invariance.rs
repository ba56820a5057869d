//! The `A + α/2 ↔ B` exchange leaves the potential unchanged and swaps the
//! two level towers.

use num_complex::Complex64;
use pcs_susy::model::{exchange_map, pcs_partner_coefficients, Branch, SusyParams};
use pcs_susy::spectra::two_series_spectrum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = SusyParams::pt_symmetric(2.0, 3.0, 1.0)?;
    let e = exchange_map(&p);
    println!("(A, B) = ({}, {})  ->  ({}, {})", p.a, p.b, e.a, e.b);

    let v = pcs_partner_coefficients(&p, Branch::Plus);
    let w = pcs_partner_coefficients(&e, Branch::Plus);
    println!("t2: {} vs {}", tidy(v.t2), tidy(w.t2));
    println!("st: {} vs {}", tidy(v.st), tidy(w.st));
    println!("shape distance: {:e}", v.shape_distance(&w));

    let (s1, s2) = two_series_spectrum(&p, Branch::Plus);
    let (t1, t2) = two_series_spectrum(&e, Branch::Plus);
    println!(
        "series1 before {:?}",
        s1.energies.iter().map(|z| z.re).collect::<Vec<_>>()
    );
    println!(
        "series2 after  {:?}",
        t2.energies.iter().map(|z| z.re).collect::<Vec<_>>()
    );
    println!(
        "series2 before {:?}",
        s2.energies.iter().map(|z| z.re).collect::<Vec<_>>()
    );
    println!(
        "series1 after  {:?}",
        t1.energies.iter().map(|z| z.re).collect::<Vec<_>>()
    );

    // With C ≠ 0 the exchanged real parameters describe the other branch.
    let q = p.with_c(0.5);
    let swapped = pcs_partner_coefficients(&exchange_map(&q), Branch::Minus);
    let original = pcs_partner_coefficients(&q, Branch::Plus);
    println!(
        "C = 0.5: plus before vs minus after, distance {:e}",
        original.shape_distance(&swapped)
    );
    Ok(())
}

/// Drops the sign of zero parts.
fn tidy(z: Complex64) -> Complex64 {
    z + Complex64::new(0.0, 0.0)
}
