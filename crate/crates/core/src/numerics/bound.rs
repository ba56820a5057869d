use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::eigen::{eigen_near, Complex64Ser, EigenResult};
use super::grid::decay_rate;
use super::{discretize, DiscretizedOperator, Grid, NumericsError};
use crate::model::PotentialCoefficients;
use crate::spectra::energy_order;

/// States whose decay length fits fewer than this many times into the
/// half-width are treated as discretized continuum.
pub const CONTINUUM_DECAY_LENGTHS: f64 = 8.0;
/// Relative distance within which a converged eigenvalue counts as the
/// realisation of an expected level.
const EXPECTED_RADIUS: f64 = 0.05;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOptions {
    /// Residual bound for every accepted eigenpair.
    pub tol: f64,
    pub max_iter: usize,
    /// Largest boundary leak tolerated on a bound state.
    pub leak_tol: f64,
    /// Eigenvalues closer than this are the same eigenvalue.
    pub dedup_tol: f64,
    /// Richardson-extrapolate against the grid with half the spacing.
    pub extrapolate: bool,
    /// Add a lattice of shifts over the region holding the bound states.
    pub scan: bool,
    /// Lattice spacing of the scan; defaults to `α²/2`.
    pub scan_spacing: Option<f64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 300,
            leak_tol: 1e-8,
            dedup_tol: 1e-8,
            extrapolate: true,
            scan: true,
            scan_spacing: None,
        }
    }
}

/// One numerically resolved bound level.
///
/// Near an exceptional point two levels coalesce into a Jordan block; the
/// discretization splits it into eigenvalues `O(h)` apart. Such groups are
/// recognised by their separation halving when `h` is halved, and reported
/// once, at their mean, with `multiplicity` counting the members.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundLevel {
    pub energy: Complex64Ser,
    pub multiplicity: usize,
    /// Whether `energy` is a Richardson extrapolation.
    pub extrapolated: bool,
    /// Raw eigenpairs on the finest grid used.
    pub members: Vec<EigenResult>,
    /// Largest residual over members.
    pub residual: f64,
    /// Largest boundary leak over members.
    pub boundary_leak: f64,
}

impl BoundLevel {
    pub fn energy(&self) -> Complex64 {
        self.energy.into()
    }

    fn from_members(energy: Complex64, extrapolated: bool, members: Vec<EigenResult>) -> Self {
        let residual = members.iter().map(|m| m.residual).fold(0.0, f64::max);
        let boundary_leak = members.iter().map(|m| m.boundary_leak).fold(0.0, f64::max);
        BoundLevel {
            energy: energy.into(),
            multiplicity: members.len(),
            extrapolated,
            members,
            residual,
            boundary_leak,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundSpectrum {
    pub levels: Vec<BoundLevel>,
    pub grid: Grid,
    pub refined_grid: Option<Grid>,
    /// Shifts whose inverse iteration did not converge.
    pub failed_shifts: usize,
}

impl BoundSpectrum {
    /// Level energies with multiplicity expanded, sorted.
    pub fn energies(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = self
            .levels
            .iter()
            .flat_map(|l| std::iter::repeat_n(l.energy(), l.multiplicity))
            .collect();
        out.sort_by(energy_order);
        out
    }
}

/// Finds every bound state of `v` on `grid`.
///
/// Shifts are seeded at `predictions` (each with a small ring around it, so
/// that both members of a split pair are reached) and, when enabled, on a
/// lattice over the rectangle `[min Re − 1, max(0, max Re)] × [−|Im|max − 1,
/// |Im|max + 1]`. Without predictions the rectangle is bounded by the
/// potential's depth. A converged eigenvalue is a bound state when its decay
/// rate `Re √(−E)` is resolved by the domain; those must show a boundary leak
/// below `leak_tol`, or the search fails with `DomainTooSmall`.
///
/// The fallback lattice cannot guarantee completeness for a non-normal
/// operator; seeding with the analytic levels is what makes it reliable.
pub fn bound_spectrum(
    v: &PotentialCoefficients,
    grid: &Grid,
    predictions: &[Complex64],
    opts: &SearchOptions,
) -> Result<BoundSpectrum, NumericsError> {
    let coarse_op = discretize(v, grid);
    let mut shifts = seed_shifts(&coarse_op, predictions);
    if opts.scan {
        shifts.extend(scan_shifts(v, predictions, opts));
    }
    let (found, mut failed) = collect(&coarse_op, &shifts, opts);
    let mut coarse = bound_only(found, grid, predictions, opts)?;
    coarse.sort_by(|a, b| energy_order(&a.energy(), &b.energy()));

    if !opts.extrapolate {
        let levels = coarse
            .into_iter()
            .map(|r| BoundLevel::from_members(r.energy(), false, vec![r]))
            .collect();
        return Ok(BoundSpectrum {
            levels,
            grid: *grid,
            refined_grid: None,
            failed_shifts: failed,
        });
    }

    let fine_grid = grid.refined()?;
    let fine_op = discretize(v, &fine_grid);
    let coarse_energies: Vec<Complex64> = coarse.iter().map(|r| r.energy()).collect();
    let fine_shifts = seed_shifts(&fine_op, &coarse_energies);
    let (found, f) = collect(&fine_op, &fine_shifts, opts);
    failed += f;
    let mut fine = bound_only(found, &fine_grid, &coarse_energies, opts)?;
    fine.sort_by(|a, b| energy_order(&a.energy(), &b.energy()));

    // Re-seed the coarse grid from the fine eigenvalues so every fine member
    // of a split pair has its own coarse partner.
    let back: Vec<Complex64> = fine.iter().map(|r| r.energy()).collect();
    let (extra, f) = collect(&coarse_op, &back, opts);
    failed += f;
    for r in bound_only(extra, grid, &back, opts)? {
        if !coarse
            .iter()
            .any(|c| same_eigenvalue(c, &r, opts.dedup_tol))
        {
            coarse.push(r);
        }
    }
    let coarse_energies: Vec<Complex64> = coarse.iter().map(|r| r.energy()).collect();

    let mut levels = richardson_levels(&fine, &coarse_energies);
    levels.sort_by(|a, b| energy_order(&a.energy(), &b.energy()));
    Ok(BoundSpectrum {
        levels,
        grid: *grid,
        refined_grid: Some(fine_grid),
        failed_shifts: failed,
    })
}

/// Groups the fine eigenvalues and extrapolates each group against its
/// coarse partners: `E = (4·E_fine − E_coarse)/3`.
fn richardson_levels(fine: &[EigenResult], coarse: &[Complex64]) -> Vec<BoundLevel> {
    let n = fine.len();
    if n == 0 {
        return Vec::new();
    }
    let partner: Vec<Option<usize>> = fine
        .iter()
        .map(|r| {
            let e = r.energy();
            (0..coarse.len())
                .min_by(|&i, &j| (coarse[i] - e).norm().total_cmp(&(coarse[j] - e).norm()))
        })
        .collect();

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let (Some(pi), Some(pj)) = (partner[i], partner[j]) else {
                continue;
            };
            let fine_sep = (fine[i].energy() - fine[j].energy()).norm();
            let split = if pi == pj {
                // Two fine eigenvalues collapsing onto one coarse one.
                true
            } else {
                let coarse_sep = (coarse[pi] - coarse[pj]).norm();
                fine_sep <= 0.75 * coarse_sep
            };
            if split {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_index: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_index[r] {
            Some(g) => groups[g].push(i),
            None => {
                root_index[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }

    groups
        .into_iter()
        .map(|members| {
            let m = members.len() as f64;
            let fine_mean: Complex64 =
                members.iter().map(|&i| fine[i].energy()).sum::<Complex64>() / m;
            let mut partners: Vec<usize> = members.iter().filter_map(|&i| partner[i]).collect();
            partners.sort_unstable();
            partners.dedup();
            let results: Vec<EigenResult> = members.iter().map(|&i| fine[i]).collect();
            if partners.len() == members.len() {
                let coarse_mean: Complex64 =
                    partners.iter().map(|&k| coarse[k]).sum::<Complex64>() / m;
                BoundLevel::from_members((4.0 * fine_mean - coarse_mean) / 3.0, true, results)
            } else {
                BoundLevel::from_members(fine_mean, false, results)
            }
        })
        .collect()
}

/// Each predicted level plus four shifts on a small diagonal ring around it.
fn seed_shifts(op: &DiscretizedOperator, centres: &[Complex64]) -> Vec<Complex64> {
    let h = op.grid.spacing();
    let a2 = op.alpha * op.alpha;
    let mut out = Vec::with_capacity(centres.len() * 5);
    for &c in centres {
        out.push(c);
        let rho = h * op.alpha * (c.norm() + a2).sqrt();
        for (sr, si) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)] {
            out.push(c + Complex64::new(sr * rho, si * rho) * std::f64::consts::FRAC_1_SQRT_2);
        }
    }
    out
}

fn scan_shifts(
    v: &PotentialCoefficients,
    predictions: &[Complex64],
    opts: &SearchOptions,
) -> Vec<Complex64> {
    let a2 = v.alpha * v.alpha;
    let spacing = opts.scan_spacing.unwrap_or(0.5 * a2);
    let (re_lo, re_hi, im_hi) = if predictions.is_empty() {
        let depth = v.t2.norm() + v.st.norm();
        (-depth - 1.0, 0.0, depth + 1.0)
    } else {
        let min_re = predictions.iter().map(|e| e.re).fold(0.0, f64::min);
        let max_re = predictions.iter().map(|e| e.re).fold(0.0, f64::max);
        let max_im = predictions.iter().map(|e| e.im.abs()).fold(0.0, f64::max);
        (min_re - 1.0, max_re, max_im + 1.0)
    };
    if !(spacing > 0.0) {
        return Vec::new();
    }
    let n_re = ((re_hi - re_lo) / spacing).floor() as usize;
    let n_im = (2.0 * im_hi / spacing).floor() as usize;
    let mut out = Vec::with_capacity((n_re + 1) * (n_im + 1));
    for i in 0..=n_re {
        for k in 0..=n_im {
            out.push(Complex64::new(
                re_lo + i as f64 * spacing,
                -im_hi + k as f64 * spacing,
            ));
        }
    }
    out
}

/// Runs inverse iteration from every shift and de-duplicates the converged
/// eigenvalues, keeping the smallest-residual representative.
fn collect(
    op: &DiscretizedOperator,
    shifts: &[Complex64],
    opts: &SearchOptions,
) -> (Vec<EigenResult>, usize) {
    let outcomes: Vec<Result<EigenResult, NumericsError>> = shifts
        .par_iter()
        .map(|&s| eigen_near(op, s, opts.tol, opts.max_iter).map(|p| p.result))
        .collect();
    let mut found: Vec<EigenResult> = Vec::new();
    let mut failed = 0;
    for outcome in outcomes {
        match outcome {
            Ok(r) => match found
                .iter_mut()
                .find(|f| same_eigenvalue(f, &r, opts.dedup_tol))
            {
                Some(f) => {
                    if r.residual < f.residual {
                        *f = r;
                    }
                }
                None => found.push(r),
            },
            Err(err) => {
                log::debug!("inverse iteration failed: {err}");
                failed += 1;
            }
        }
    }
    (found, failed)
}

/// Near a coalescence the eigenvalue error is of order `√residual` rather
/// than `residual`, so the merge radius widens accordingly.
fn same_eigenvalue(a: &EigenResult, b: &EigenResult, dedup_tol: f64) -> bool {
    let (ea, eb) = (a.energy(), b.energy());
    let res = a.residual.max(b.residual);
    let radius = dedup_tol.max(res.sqrt() * (1.0 + ea.norm().max(eb.norm())));
    (ea - eb).norm() <= radius
}

/// Keeps bound states. A state near an expected level is always held to the
/// leak bound, however slowly it decays.
fn bound_only(
    found: Vec<EigenResult>,
    grid: &Grid,
    expected: &[Complex64],
    opts: &SearchOptions,
) -> Result<Vec<EigenResult>, NumericsError> {
    let l = grid.half_width();
    let mut out = Vec::new();
    for r in found {
        let e = r.energy();
        let near_expected = expected
            .iter()
            .any(|x| (x - e).norm() <= EXPECTED_RADIUS * (1.0 + x.norm()));
        if !near_expected && decay_rate(e) * l < CONTINUUM_DECAY_LENGTHS {
            continue;
        }
        if r.boundary_leak > opts.leak_tol {
            return Err(NumericsError::DomainTooSmall {
                energy: r.energy(),
                boundary_leak: r.boundary_leak,
                half_width: l,
            });
        }
        out.push(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{pcs_partner_coefficients, Branch, SusyParams};

    #[test]
    fn box_has_no_bound_states() {
        let v = PotentialCoefficients::zero(1.0);
        let grid = Grid::new(12.0, 2000).unwrap();
        let s = bound_spectrum(&v, &grid, &[], &SearchOptions::default()).unwrap();
        assert!(s.levels.is_empty());
    }

    #[test]
    fn narrow_domain_is_rejected() {
        let p = SusyParams::new(2.5, 3.2, 0.0, 1.0).unwrap();
        let v = pcs_partner_coefficients(&p, Branch::Plus);
        let grid = Grid::new(12.0, 4000).unwrap();
        let predictions = [Complex64::new(-0.25, 0.0)];
        let opts = SearchOptions {
            scan: false,
            ..Default::default()
        };
        let err = bound_spectrum(&v, &grid, &predictions, &opts).unwrap_err();
        assert!(matches!(err, NumericsError::DomainTooSmall { .. }), "{err}");
    }

    #[test]
    fn scan_lattice_covers_rectangle() {
        let v = PotentialCoefficients::zero(1.0);
        let preds = [Complex64::new(-2.0, 1.0), Complex64::new(-0.5, -1.0)];
        let s = scan_shifts(&v, &preds, &SearchOptions::default());
        let min_re = s.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let max_im = s.iter().map(|z| z.im).fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(min_re, -3.0);
        assert_eq!(max_im, 2.0);
        assert_eq!(s.len(), 7 * 9);
    }

    #[test]
    fn split_pair_is_grouped() {
        // Synthetic: a pair whose separation halves, and a distinct level.
        let mk = |re: f64, im: f64| EigenResult {
            energy: Complex64::new(re, im).into(),
            residual: 0.0,
            boundary_leak: 0.0,
            iterations: 1,
        };
        let coarse = [
            Complex64::new(-4.0, 0.02),
            Complex64::new(-4.0, -0.02),
            Complex64::new(-1.0, 0.0),
        ];
        let fine = [mk(-4.0, 0.01), mk(-4.0, -0.01), mk(-1.0 + 3e-4, 0.0)];
        let levels = richardson_levels(&fine, &coarse);
        assert_eq!(levels.len(), 2);
        let pair = levels.iter().find(|l| l.multiplicity == 2).unwrap();
        assert!((pair.energy() - Complex64::new(-4.0, 0.0)).norm() < 1e-14);
        let single = levels.iter().find(|l| l.multiplicity == 1).unwrap();
        assert!((single.energy().re - (-1.0 + 4e-4)).abs() < 1e-14);
    }
}
