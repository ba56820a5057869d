use num_complex::Complex64;
use serde::Serialize;

use super::bound::{bound_spectrum, BoundLevel, SearchOptions};
use super::eigen::Complex64Ser;
use super::{Grid, NumericsError};
use crate::model::{pcs_partner_coefficients, Branch, SusyParams};
use crate::spectra::{merged_levels, two_series_spectrum};

/// Levels further apart than `tol_match` times this are never paired.
const MATCH_RADIUS_FACTOR: f64 = 1e4;

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Grid override; sized from the analytic levels when absent.
    pub grid: Option<Grid>,
    pub search: SearchOptions,
    pub tol_match: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            grid: None,
            search: SearchOptions::default(),
            tol_match: 1e-6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LevelMatch {
    pub analytic: Complex64Ser,
    pub numeric: Complex64Ser,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelMatching {
    pub matches: Vec<LevelMatch>,
    pub unmatched_analytic: Vec<Complex64Ser>,
    pub unmatched_numeric: Vec<Complex64Ser>,
    pub max_delta: f64,
    pub pass: bool,
}

/// Greedy nearest pairing of two multisets: closest pair first, each entry
/// used once. Pairs further apart than `tol_match · 10⁴` stay unmatched.
/// Passes when nothing is left over and every pair is within `tol_match`.
pub fn match_levels(
    analytic: &[Complex64],
    numeric: &[Complex64],
    tol_match: f64,
) -> LevelMatching {
    let radius = tol_match * MATCH_RADIUS_FACTOR;
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (i, a) in analytic.iter().enumerate() {
        for (j, n) in numeric.iter().enumerate() {
            let d = (a - n).norm();
            if d <= radius {
                candidates.push((d, i, j));
            }
        }
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut used_a = vec![false; analytic.len()];
    let mut used_n = vec![false; numeric.len()];
    let mut matches = Vec::new();
    for (d, i, j) in candidates {
        if used_a[i] || used_n[j] {
            continue;
        }
        used_a[i] = true;
        used_n[j] = true;
        matches.push(LevelMatch {
            analytic: analytic[i].into(),
            numeric: numeric[j].into(),
            delta: d,
        });
    }
    matches.sort_by(|x, y| {
        x.analytic
            .re
            .total_cmp(&y.analytic.re)
            .then(x.analytic.im.total_cmp(&y.analytic.im))
    });
    let unmatched_analytic: Vec<Complex64Ser> = analytic
        .iter()
        .zip(&used_a)
        .filter(|(_, u)| !**u)
        .map(|(e, _)| (*e).into())
        .collect();
    let unmatched_numeric: Vec<Complex64Ser> = numeric
        .iter()
        .zip(&used_n)
        .filter(|(_, u)| !**u)
        .map(|(e, _)| (*e).into())
        .collect();
    let max_delta = matches.iter().map(|m| m.delta).fold(0.0, f64::max);
    let pass =
        unmatched_analytic.is_empty() && unmatched_numeric.is_empty() && max_delta <= tol_match;
    LevelMatching {
        matches,
        unmatched_analytic,
        unmatched_numeric,
        max_delta,
        pass,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub params: SusyParams,
    pub branch: Branch,
    pub grid: Grid,
    pub analytic: Vec<Complex64Ser>,
    pub numeric: Vec<BoundLevel>,
    pub matching: LevelMatching,
    pub tol_match: f64,
    pub failed_shifts: usize,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.matching.pass
    }
}

/// Checks both analytic towers of `(p, branch)` against the eigenvalues of
/// the discretized `V−`. Levels are compared as multisets, so a level of
/// multiplicity two pairs with two coinciding analytic levels.
pub fn verify_spectrum(
    p: &SusyParams,
    branch: Branch,
    opts: &VerifyOptions,
) -> Result<VerificationReport, NumericsError> {
    p.validate()
        .map_err(|e| NumericsError::InvalidGrid(e.to_string()))?;
    let (s1, s2) = two_series_spectrum(p, branch);
    let analytic = merged_levels(&s1, &s2);
    let grid = match opts.grid {
        Some(g) => g,
        None => Grid::for_levels(p.alpha, &analytic)?,
    };
    let v = pcs_partner_coefficients(p, branch);
    let spectrum = bound_spectrum(&v, &grid, &analytic, &opts.search)?;
    let matching = match_levels(&analytic, &spectrum.energies(), opts.tol_match);
    Ok(VerificationReport {
        params: *p,
        branch,
        grid,
        analytic: analytic.into_iter().map(Into::into).collect(),
        numeric: spectrum.levels,
        matching,
        tol_match: opts.tol_match,
        failed_shifts: spectrum.failed_shifts,
    })
}
