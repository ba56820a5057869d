use std::cmp::Ordering;

use num_complex::Complex64;

use super::{m_from_b, max_residual, Sl2Error, Sl2Params, ROUTE_TOL, SOLUTION_TOL};
use crate::model::{pcs_partner_coefficients, Branch, SusyParams};

/// Relative size below which a root `b²` counts as zero.
const DEGENERATE_B2: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonSettings {
    pub max_iter: usize,
    /// Passes over the start lattice, each rotated and scaled by 0.3,
    /// while roots are still missing.
    pub rounds: usize,
}

impl Default for NewtonSettings {
    fn default() -> Self {
        Self {
            max_iter: 100,
            rounds: 6,
        }
    }
}

/// All `(m, b)` reproducing the branch-`±` `V−` shape, verified by both
/// routes and in canonical order.
pub fn solve_correspondence(p: &SusyParams, branch: Branch) -> Result<Vec<Sl2Params>, Sl2Error> {
    p.validate()?;
    let closed = closed_form_solutions(p, branch)?;
    let newton = newton_solutions(p, branch, &NewtonSettings::default())?;
    let matched = closed
        .iter()
        .filter(|s| newton.iter().any(|t| same_solution(s, t, ROUTE_TOL)))
        .count();
    if matched != closed.len() || newton.len() != closed.len() {
        return Err(Sl2Error::RouteMismatch {
            closed: closed.len(),
            newton: matched,
            tol: ROUTE_TOL,
        });
    }
    for s in &closed {
        let residual = max_residual(s, p, branch);
        if residual > SOLUTION_TOL * scale(p) {
            return Err(Sl2Error::InaccurateSolution {
                m: s.m,
                b: s.b,
                residual,
            });
        }
    }
    Ok(closed)
}

/// Eliminates `m` from `b² + α(1/4 − m²) = t2` and `−2αmb = st`:
/// `b⁴ − (t2 − α/4)b² − st²/(4α) = 0`, then `m = −st/(2αb)`.
pub fn closed_form_solutions(p: &SusyParams, branch: Branch) -> Result<Vec<Sl2Params>, Sl2Error> {
    let v = pcs_partner_coefficients(p, branch);
    let alpha = p.alpha;
    let s = v.t2 - 0.25 * alpha;
    let c0 = -(v.st * v.st) / (4.0 * alpha);
    // y² − s·y + c0 = 0, larger root first to avoid cancellation.
    let r = (s * s - 4.0 * c0).sqrt();
    let big = if (s.conj() * r).re >= 0.0 {
        0.5 * (s + r)
    } else {
        0.5 * (s - r)
    };
    let size = s.norm() + c0.norm().sqrt();
    if big.norm() <= DEGENERATE_B2 * size.max(f64::MIN_POSITIVE) {
        return Err(Sl2Error::DegenerateB { b2: big });
    }
    let small = c0 / big;
    let mut out = Vec::with_capacity(4);
    for y in [big, small] {
        if y.norm() <= DEGENERATE_B2 * size {
            return Err(Sl2Error::DegenerateB { b2: y });
        }
        let b = y.sqrt();
        for b in [b, -b] {
            let m = -v.st / (2.0 * alpha * b);
            push_unique(&mut out, Sl2Params { m, b, alpha });
        }
    }
    canonical_sort(&mut out);
    Ok(out)
}

/// Newton iteration on the first two correspondence equations in
/// `(b_R, b_I)`, with `m` eliminated through the last two. Roots already
/// found are deflated so later starts converge elsewhere.
///
/// The eliminated system is `F(b) = b² + α/4 − α·m(b)² − t2` with
/// `m(b) = −st/(2αb)`, whose real and imaginary parts are exactly the first
/// two residual lines; `F` is analytic, so its real Jacobian follows from
/// `F′(b) = 2b + st²/(2αb³)`.
pub fn newton_solutions(
    p: &SusyParams,
    branch: Branch,
    settings: &NewtonSettings,
) -> Result<Vec<Sl2Params>, Sl2Error> {
    let v = pcs_partner_coefficients(p, branch);
    let alpha = p.alpha;
    let st = v.st;
    let f = |b: Complex64| -> Complex64 {
        let m = m_from_b(b, p, branch);
        let r = super::correspondence_residuals(&Sl2Params { m, b, alpha }, p, branch);
        Complex64::new(r[0], r[1])
    };
    let df = |b: Complex64| 2.0 * b + st * st / (2.0 * alpha * b * b * b);

    let radius = ((v.t2 - 0.25 * alpha).norm() + (st.norm() / alpha.sqrt()))
        .sqrt()
        .max(1e-3);
    let tol = 1e-14 * scale(p);
    let sigma = 1.0 / (radius * radius);
    let mut roots: Vec<Complex64> = Vec::new();
    let mut best = f64::INFINITY;

    'rounds: for round in 0..settings.rounds.max(1) {
        // Each round rotates the lattice and shrinks it, reaching roots that
        // sit close to the pole of F at b = 0.
        let twist = Complex64::from_polar(1.0, 0.37 * round as f64);
        let shrink = 0.3f64.powi(round as i32);
        for (sr, si) in START_LATTICE {
            if roots.len() == 4 {
                break 'rounds;
            }
            let start = twist * Complex64::new(sr, si) * (radius * shrink / 3.0);
            match newton_deflated(&f, &df, start, &roots, sigma, settings.max_iter, tol) {
                Ok(b) => {
                    let b = polish(&f, &df, b, tol);
                    best = best.min(f(b).norm());
                    if b.norm_sqr() > 0.0
                        && f(b).norm() <= 1e3 * tol
                        && !roots
                            .iter()
                            .any(|r| (r - b).norm() <= ROUTE_TOL * (1.0 + b.norm()))
                    {
                        roots.push(b);
                    }
                }
                Err(res) => {
                    best = best.min(res);
                    log::debug!("sl2 Newton start {start} diverged (residual {res:e})");
                }
            }
        }
    }
    if roots.is_empty() {
        return Err(Sl2Error::NewtonDivergence { residual: best });
    }
    let mut out: Vec<Sl2Params> = roots
        .into_iter()
        .map(|b| Sl2Params {
            m: m_from_b(b, p, branch),
            b,
            alpha,
        })
        .collect();
    canonical_sort(&mut out);
    Ok(out)
}

/// `(b_R, b_I)` directions, in units of a third of the root radius.
const START_LATTICE: [(f64, f64); 8] = [
    (1.0, 3.0),
    (-1.0, 3.0),
    (3.0, 1.0),
    (3.0, -1.0),
    (1.0, -3.0),
    (-1.0, -3.0),
    (-3.0, 1.0),
    (-3.0, -1.0),
];

/// Newton on `G = M·F` with `M = ∏(1/|b − r|² + σ)`: `M` blows up at the
/// known roots and tends to a constant far away, so iterates are pushed
/// off old roots without being drawn to infinity. The deflated step is the
/// plain step `d = −F/F′` scaled by `1/(1 − ∇log M·d)`.
fn newton_deflated<F, D>(
    f: &F,
    df: &D,
    start: Complex64,
    roots: &[Complex64],
    sigma: f64,
    max_iter: usize,
    tol: f64,
) -> Result<Complex64, f64>
where
    F: Fn(Complex64) -> Complex64,
    D: Fn(Complex64) -> Complex64,
{
    let weight = |b: Complex64| {
        roots
            .iter()
            .fold(1.0, |acc, r| acc * (1.0 / (b - r).norm_sqr() + sigma))
    };
    let is_new = |b: Complex64| {
        roots
            .iter()
            .all(|r| (r - b).norm() > ROUTE_TOL * (1.0 + r.norm()))
    };
    let mut b = start;
    let mut g = weight(b) * f(b).norm();
    for _ in 0..max_iter {
        let fb = f(b);
        if fb.norm() <= tol && is_new(b) {
            return Ok(b);
        }
        let d = -fb / df(b);
        // ∇log M as a complex number, dotted with d as a real 2-vector.
        let grad_dot: f64 = roots
            .iter()
            .map(|r| {
                let e = b - r;
                let n2 = e.norm_sqr();
                -2.0 * (e.conj() * d).re / (n2 * (1.0 + sigma * n2))
            })
            .sum();
        let mut step = d / (1.0 - grad_dot);
        if !(step.re.is_finite() && step.im.is_finite()) {
            return Err(fb.norm());
        }
        let mut next = b + step;
        let mut g_next = weight(next) * f(next).norm();
        let mut halvings = 0;
        while !(g_next < g) && halvings < 30 {
            step *= 0.5;
            next = b + step;
            g_next = weight(next) * f(next).norm();
            halvings += 1;
        }
        if next == b || !(next.re.is_finite() && next.im.is_finite()) {
            break;
        }
        b = next;
        g = g_next;
        if step.norm() <= 1e-15 * (1.0 + b.norm()) {
            break;
        }
    }
    let res = f(b).norm();
    if res <= 1e3 * tol && is_new(b) {
        Ok(b)
    } else {
        Err(res)
    }
}

/// A few undeflated steps, kept only while they reduce `|F|`.
fn polish<F, D>(f: &F, df: &D, mut b: Complex64, tol: f64) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
    D: Fn(Complex64) -> Complex64,
{
    for _ in 0..5 {
        let fb = f(b);
        if fb.norm() <= tol {
            break;
        }
        let next = b - fb / df(b);
        if f(next).norm() < fb.norm() {
            b = next;
        } else {
            break;
        }
    }
    b
}

/// Magnitude of the target coefficients; tolerances are relative to it.
fn scale(p: &SusyParams) -> f64 {
    let v = pcs_partner_coefficients(p, Branch::Plus);
    1.0 + v.t2.norm() + v.st.norm()
}

fn same_solution(s: &Sl2Params, t: &Sl2Params, tol: f64) -> bool {
    (s.b - t.b).norm() <= tol * (1.0 + s.b.norm()) && (s.m - t.m).norm() <= tol * (1.0 + s.m.norm())
}

fn push_unique(out: &mut Vec<Sl2Params>, s: Sl2Params) {
    if !out.iter().any(|t| same_solution(t, &s, ROUTE_TOL)) {
        out.push(s);
    }
}

/// Sign convention of `b`: `Re b > 0`, or `Re b = 0` and `Im b ≥ 0`.
fn positive(b: Complex64) -> bool {
    if b.re.abs() > 1e-12 * b.norm() {
        b.re > 0.0
    } else {
        b.im >= 0.0
    }
}

/// Orders by `Re b²`, `Im b²`, then the sign-convention representative first.
pub fn canonical_sort(solutions: &mut [Sl2Params]) {
    solutions.sort_by(|s, t| {
        let (ys, yt) = (s.b * s.b, t.b * t.b);
        let key = |y: f64, z: f64, n: f64| {
            if (y - z).abs() <= 1e-12 * n {
                Ordering::Equal
            } else {
                y.total_cmp(&z)
            }
        };
        let n = 1.0 + ys.norm().max(yt.norm());
        key(ys.re, yt.re, n)
            .then(key(ys.im, yt.im, n))
            .then(positive(t.b).cmp(&positive(s.b)))
    });
}
