//! Analytic bound-state spectra from shape invariance.
//!
//! Each superpotential of the dual pair generates one tower of levels. For
//! `C = 0` both towers are real; for `C ≠ 0` the plus and minus branches give
//! complex-conjugate towers.

mod bifurcation;
mod ladder;

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::model::{dual_pair, Branch, ComplexSusyParams, Superpotential, SusyParams};

pub use bifurcation::{bifurcation_scan, conjugation_defect, BifurcationPoint};
pub use ladder::shape_invariance_step;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error("ladder exhausted: Re(lam) = {re_lam} leaves no bound state after a step of {alpha}")]
    LadderExhausted { re_lam: f64, alpha: f64 },
    #[error("C grid contains a non-finite value at index {0}")]
    NonFiniteGrid(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesLabel {
    Series1,
    Series2,
}

impl SeriesLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesLabel::Series1 => "series1",
            SeriesLabel::Series2 => "series2",
        }
    }
}

impl fmt::Display for SeriesLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One tower of levels `E_n = −(lam − nα)²`, relative to the potential's
/// asymptotic value.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSeries {
    pub label: SeriesLabel,
    pub branch: Branch,
    /// `(lam_n, mu)` of the superpotential whose zero mode is level `n`.
    pub ladder_params: Vec<(Complex64, Complex64)>,
    pub energies: Vec<Complex64>,
    /// Factorization energy of the generating superpotential.
    pub factorization_energy: Complex64,
}

impl SpectrumSeries {
    /// Climbs the ladder while the running `Re(lam)` stays positive.
    pub fn from_superpotential(w: &Superpotential, label: SeriesLabel, branch: Branch) -> Self {
        let mut ladder_params = Vec::new();
        let mut energies = Vec::new();
        let mut current = *w;
        while current.lam.re > 0.0 {
            ladder_params.push((current.lam, current.mu));
            energies.push(-(current.lam * current.lam));
            match shape_invariance_step(&current) {
                Ok((next, _)) => current = next,
                Err(_) => break,
            }
        }
        SpectrumSeries {
            label,
            branch,
            ladder_params,
            energies,
            factorization_energy: w.factorization_energy,
        }
    }

    /// Admissibility failed: the generating zero mode is not normalizable.
    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }
}

/// The two towers of one parameter set and branch.
pub fn series_pair(q: &ComplexSusyParams, branch: Branch) -> (SpectrumSeries, SpectrumSeries) {
    let (w, wprime) = dual_pair(q);
    (
        SpectrumSeries::from_superpotential(&w, SeriesLabel::Series1, branch),
        SpectrumSeries::from_superpotential(&wprime, SeriesLabel::Series2, branch),
    )
}

/// Series 1 from `W` (`E = −𝒜²`), series 2 from `W′` (`E′ = −(ℬ − α/2)²`).
///
/// With `C = 0` this is `−(A − nα)²` for `n < A/α` and `−(B − α/2 − nα)²` for
/// `n < (B − α/2)/α`, with imaginary parts exactly zero.
pub fn two_series_spectrum(p: &SusyParams, branch: Branch) -> (SpectrumSeries, SpectrumSeries) {
    series_pair(&p.complexify(branch), branch)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BrokenSpectrum {
    pub plus: (SpectrumSeries, SpectrumSeries),
    pub minus: (SpectrumSeries, SpectrumSeries),
}

impl BrokenSpectrum {
    pub fn branch(&self, branch: Branch) -> &(SpectrumSeries, SpectrumSeries) {
        match branch {
            Branch::Plus => &self.plus,
            Branch::Minus => &self.minus,
        }
    }
}

/// Both branches at once. The minus towers are the level-by-level
/// conjugates of the plus towers since `𝒜, ℬ` are conjugated.
pub fn broken_spectrum(p: &SusyParams) -> BrokenSpectrum {
    BrokenSpectrum {
        plus: two_series_spectrum(p, Branch::Plus),
        minus: two_series_spectrum(p, Branch::Minus),
    }
}

/// Orders by real part, then imaginary part.
pub fn energy_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

pub fn sort_energies(energies: &mut [Complex64]) {
    energies.sort_by(energy_order);
}

/// Both towers merged into one sorted list (degenerate levels repeated).
pub fn merged_levels(s1: &SpectrumSeries, s2: &SpectrumSeries) -> Vec<Complex64> {
    let mut all: Vec<Complex64> = s1.energies.iter().chain(&s2.energies).copied().collect();
    sort_energies(&mut all);
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn re_list(s: &SpectrumSeries) -> Vec<f64> {
        s.energies.iter().map(|e| e.re).collect()
    }

    fn assert_list(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn two_real_series() {
        let p = SusyParams::new(2.5, 3.2, 0.0, 1.0).unwrap();
        let (s1, s2) = two_series_spectrum(&p, Branch::Plus);
        assert_list(&re_list(&s1), &[-6.25, -2.25, -0.25]);
        assert_list(&re_list(&s2), &[-7.29, -2.89, -0.49]);
        for e in s1.energies.iter().chain(&s2.energies) {
            assert_eq!(e.im, 0.0);
        }
        assert_eq!(s1.energies[0], s1.factorization_energy);
        assert_eq!(s2.energies[0], s2.factorization_energy);
    }

    #[test]
    fn second_series_empty_at_boundary() {
        let p = SusyParams::new(2.5, 0.5, 0.0, 1.0).unwrap();
        let (s1, s2) = two_series_spectrum(&p, Branch::Plus);
        assert_eq!(s1.len(), 3);
        assert!(s2.is_empty());
    }

    #[test]
    fn fixed_point_series_coincide() {
        let p = SusyParams::new(2.0, 2.5, 0.0, 1.0).unwrap();
        let (s1, s2) = two_series_spectrum(&p, Branch::Plus);
        assert_list(&re_list(&s1), &[-4.0, -1.0]);
        assert_eq!(s1.energies, s2.energies);
    }

    #[test]
    fn broken_ground_levels_and_pairing() {
        let p = SusyParams::new(2.0, 3.0, 0.5, 1.0).unwrap();
        let b = broken_spectrum(&p);
        let close = |a: Complex64, b: Complex64| (a - b).norm() < 1e-12;
        assert!(close(b.plus.0.energies[0], c(-3.75, -2.0)));
        assert!(close(b.plus.1.energies[0], c(-6.0, 2.5)));
        assert!(close(b.minus.0.energies[0], c(-3.75, 2.0)));
        assert!(close(b.minus.1.energies[0], c(-6.0, -2.5)));
        assert!(close(b.plus.0.energies[1], c(-0.75, -1.0)));
        for (sp, sm) in [(&b.plus.0, &b.minus.0), (&b.plus.1, &b.minus.1)] {
            assert_eq!(sp.len(), sm.len());
            for (ep, em) in sp.energies.iter().zip(&sm.energies) {
                assert_eq!(*ep, em.conj());
            }
        }
    }

    #[test]
    fn complex_level_with_positive_real_part_is_kept() {
        // ℬ − α/2 − 2α = 0.5 − i: decaying, although Re E > 0.
        let p = SusyParams::new(2.0, 3.0, 1.0, 1.0).unwrap();
        let (s1, s2) = two_series_spectrum(&p, Branch::Plus);
        assert_eq!(s1.len(), 2);
        assert_eq!(s2.len(), 3);
        assert!((s2.energies[2] - c(0.75, 1.0)).norm() < 1e-12);
    }
}
