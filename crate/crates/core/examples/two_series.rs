//! The two analytic level towers at a PT-symmetric point, checked against
//! the finite-difference solver.
//!
//! `cargo run --release --example two_series -- 2.5 3.2`

use pcs_susy::model::{Branch, SusyParams};
use pcs_susy::numerics::{verify_spectrum, VerifyOptions};
use pcs_susy::spectra::two_series_spectrum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let (a, b) = match args.as_slice() {
        [a, b, ..] => (*a, *b),
        _ => (2.5, 3.2),
    };
    let p = SusyParams::pt_symmetric(a, b, 1.0)?;

    let (s1, s2) = two_series_spectrum(&p, Branch::Plus);
    for s in [&s1, &s2] {
        println!(
            "{} (factorization energy {}):",
            s.label, s.factorization_energy.re
        );
        for (n, e) in s.energies.iter().enumerate() {
            println!("  n = {n}: E = {:.6}", e.re);
        }
    }

    let r = verify_spectrum(&p, Branch::Plus, &VerifyOptions::default())?;
    println!("grid: L = {}, N = {}", r.grid.half_width(), r.grid.points());
    for m in &r.matching.matches {
        println!(
            "  analytic {:>10.6}  numeric {:>14.10}  |dE| = {:.2e}",
            m.analytic.re, m.numeric.re, m.delta
        );
    }
    println!("{}", if r.pass() { "PASS" } else { "FAIL" });
    Ok(())
}
