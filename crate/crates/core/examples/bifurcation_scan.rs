//! Real levels splitting into conjugate pairs as `C` moves off zero.
//!
//! `cargo run --release --example bifurcation_scan > scan.csv`

use pcs_susy::model::SusyParams;
use pcs_susy::spectra::bifurcation_scan;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = SusyParams::pt_symmetric(2.0, 3.0, 1.0)?;
    let cs: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
    let mut out = csv::Writer::from_writer(std::io::stdout());
    out.write_record([
        "C",
        "level",
        "re_E_plus",
        "im_E_plus",
        "re_E_minus",
        "im_E_minus",
    ])?;
    for pt in bifurcation_scan(&p, &cs)? {
        eprintln!(
            "C = {:.2}: conjugation defect {:e}",
            pt.c,
            pt.conjugation_defect()
        );
        for (k, (ep, em)) in pt.energies_plus.iter().zip(&pt.energies_minus).enumerate() {
            out.write_record([
                pt.c.to_string(),
                k.to_string(),
                (ep.re + 0.0).to_string(),
                (ep.im + 0.0).to_string(),
                (em.re + 0.0).to_string(),
                (em.im + 0.0).to_string(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}
