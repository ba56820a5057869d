use num_complex::Complex64;
use rayon::prelude::*;

use super::{merged_levels, two_series_spectrum, SpectraError};
use crate::model::{Branch, SusyParams};

/// Both-branch analytic levels at one value of `C`, each list sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct BifurcationPoint {
    pub c: f64,
    pub energies_plus: Vec<Complex64>,
    pub energies_minus: Vec<Complex64>,
}

impl BifurcationPoint {
    pub fn at(p0: &SusyParams, c: f64) -> Self {
        let p = p0.with_c(c);
        let (s1, s2) = two_series_spectrum(&p, Branch::Plus);
        let (m1, m2) = two_series_spectrum(&p, Branch::Minus);
        BifurcationPoint {
            c,
            energies_plus: merged_levels(&s1, &s2),
            energies_minus: merged_levels(&m1, &m2),
        }
    }

    pub fn energies(&self, branch: Branch) -> &[Complex64] {
        match branch {
            Branch::Plus => &self.energies_plus,
            Branch::Minus => &self.energies_minus,
        }
    }

    /// Largest `|E₊ − conj(E₋)|` after sorting both conjugated lists.
    pub fn conjugation_defect(&self) -> f64 {
        conjugation_defect(&self.energies_plus, &self.energies_minus)
    }

    pub fn all_real(&self) -> bool {
        self.energies_plus
            .iter()
            .chain(&self.energies_minus)
            .all(|e| e.im == 0.0)
    }
}

/// `∞` when the lists differ in length.
pub fn conjugation_defect(plus: &[Complex64], minus: &[Complex64]) -> f64 {
    if plus.len() != minus.len() {
        return f64::INFINITY;
    }
    let mut conj: Vec<Complex64> = minus.iter().map(|e| e.conj()).collect();
    super::sort_energies(&mut conj);
    let mut p = plus.to_vec();
    super::sort_energies(&mut p);
    p.iter()
        .zip(&conj)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// Sweeps `C` with `A`, `B`, `α` held at `p0`. Grid points are evaluated in
/// parallel; the output follows the input order.
pub fn bifurcation_scan(
    p0: &SusyParams,
    c_grid: &[f64],
) -> Result<Vec<BifurcationPoint>, SpectraError> {
    if let Some(i) = c_grid.iter().position(|c| !c.is_finite()) {
        return Err(SpectraError::NonFiniteGrid(i));
    }
    Ok(c_grid
        .par_iter()
        .map(|&c| BifurcationPoint::at(p0, c))
        .collect())
}
