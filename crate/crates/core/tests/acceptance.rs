//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fail.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use pcs_susy::model::{
    dual_pair, exchange_map, pcs_partner_coefficients, pt_constraint_check, Branch,
    PotentialCoefficients, Superpotential, SusyParams, TOL_CONSTRAINT,
};
use pcs_susy::numerics::{discretize, eigen_near, verify_spectrum, Grid, VerifyOptions};
use pcs_susy::sl2::{
    build_sl2_potential, correspondence_residuals, m_from_b, m_product, m_square_difference,
    solve_correspondence,
};
use pcs_susy::spectra::{bifurcation_scan, conjugation_defect, two_series_spectrum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const DRAWS: usize = 1000;
const SEED: u64 = 0x5ca7_f11e;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit(a: f64, b: f64, cc: f64) -> SusyParams {
    SusyParams::new(a, b, cc, 1.0).unwrap()
}

fn random_params(rng: &mut ChaCha8Rng) -> SusyParams {
    let a = rng.gen_range(-4.0..4.0);
    let b = rng.gen_range(-4.0..4.0);
    let cc = if rng.gen_bool(0.25) {
        0.0
    } else {
        rng.gen_range(-2.0..2.0)
    };
    let alpha = rng.gen_range(0.2..3.0);
    SusyParams::new(a, b, cc, alpha).unwrap()
}

fn random_branch(rng: &mut ChaCha8Rng) -> Branch {
    if rng.gen_bool(0.5) {
        Branch::Plus
    } else {
        Branch::Minus
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn two_series_reproduction() -> Outcome {
    let start = Instant::now();
    let p = unit(2.5, 3.2, 0.0);
    let r = match verify_spectrum(&p, Branch::Plus, &VerifyOptions::default()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let elapsed = start.elapsed();
    let mut want: Vec<f64> = (0..3)
        .flat_map(|n| [-(2.5 - n as f64).powi(2), -(2.7 - n as f64).powi(2)])
        .collect();
    want.sort_by(f64::total_cmp);
    let mut got: Vec<Complex64> = r.numeric.iter().map(|l| l.energy()).collect();
    got.sort_by(|x, y| x.re.total_cmp(&y.re));
    let max_delta = if got.len() == want.len() {
        got.iter()
            .zip(&want)
            .map(|(g, w)| (g - w).norm())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    outcome(
        got.len() == 6 && max_delta <= 1e-6 && elapsed <= Duration::from_secs(10),
        format!(
            "{} levels, max |dE| = {max_delta:.3e}, {}",
            got.len(),
            secs(elapsed)
        ),
    )
}

fn exchange_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst_shape = 0.0f64;
    let mut worst_involution = 0.0f64;
    let mut bitwise = 0;
    let mut bad = 0;
    for _ in 0..DRAWS {
        let p = random_params(&mut rng);
        let br = random_branch(&mut rng);
        let check = |a: &PotentialCoefficients, b: &PotentialCoefficients| {
            a.shape_distance(b) / a.scale().max(1.0)
        };

        // Complexified parameters: V− keeps its shape.
        let q = p.complexify(br);
        let (w, _) = dual_pair(&q);
        let (w2, _) = dual_pair(&exchange_map(&q));
        let d1 = check(&w.partner_potentials().0, &w2.partner_potentials().0);

        // Real parameters: the same potential, reached through the other branch.
        let v = pcs_partner_coefficients(&p, br);
        let e = pcs_partner_coefficients(&exchange_map(&p), br.flipped());
        let d2 = check(&v, &e);
        worst_shape = worst_shape.max(d1).max(d2);

        let r = exchange_map(&exchange_map(&p));
        if r == p {
            bitwise += 1;
        }
        let ulp = f64::EPSILON * (p.a.abs().max(p.b.abs()) + p.alpha);
        let defect = (r.a - p.a).abs().max((r.b - p.b).abs());
        worst_involution = worst_involution.max(defect / ulp);
        if d1 > 1e-14 || d2 > 1e-14 || defect > ulp || r.c != p.c || r.alpha != p.alpha {
            bad += 1;
        }
    }
    outcome(
        bad == 0,
        format!(
            "{DRAWS} draws, max relative shape change {worst_shape:.2e}, involution bitwise exact in {bitwise}/{DRAWS} (worst {worst_involution:.2} ulp of one rounding)"
        ),
    )
}

fn constraint_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut agree = 0;
    let mut symmetric = 0;
    for k in 0..DRAWS {
        let mut p = random_params(&mut rng);
        // Put a third of the draws on the A + α/2 = B line.
        if k % 3 == 0 {
            p = SusyParams::new(p.a, p.a + p.alpha / 2.0, p.c, p.alpha).unwrap();
        }
        let br = random_branch(&mut rng);
        let check = pt_constraint_check(&p).pt_symmetric;
        let real = pcs_partner_coefficients(&p, br).is_pt_symmetric_shape(TOL_CONSTRAINT);
        symmetric += check as usize;
        agree += (check == real) as usize;
    }
    outcome(
        agree == DRAWS,
        format!("{agree}/{DRAWS} agree ({symmetric} PT-symmetric draws)"),
    )
}

fn spectral_bifurcation() -> Outcome {
    let start = Instant::now();
    let p0 = unit(2.0, 3.0, 0.0);
    let cs: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let pts = match bifurcation_scan(&p0, &cs) {
        Ok(p) => p,
        Err(e) => return outcome(false, e.to_string()),
    };
    let real_at_zero = pts[0].all_real();
    let analytic = pts[1..]
        .iter()
        .map(|p| p.conjugation_defect())
        .fold(0.0, f64::max);
    let complex_above_zero = pts[1..].iter().all(|p| !p.all_real());

    let runs: Vec<_> = [0.0, 0.5, 1.0]
        .into_iter()
        .flat_map(|cc| Branch::BOTH.map(|br| (cc, br)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(cc, br)| {
            (
                cc,
                br,
                verify_spectrum(&p0.with_c(cc), br, &VerifyOptions::default()),
            )
        })
        .collect();
    let mut numeric = 0.0f64;
    let mut all_verified = true;
    let mut zero_imag = 0.0f64;
    for cc in [0.0, 0.5, 1.0] {
        let get = |br: Branch| {
            runs.iter()
                .find(|(x, b, _)| *x == cc && *b == br)
                .and_then(|(_, _, r)| r.as_ref().ok())
        };
        let (Some(rp), Some(rm)) = (get(Branch::Plus), get(Branch::Minus)) else {
            all_verified = false;
            continue;
        };
        all_verified &= rp.pass() && rm.pass();
        let ep: Vec<Complex64> = rp.numeric.iter().map(|l| l.energy()).collect();
        let em: Vec<Complex64> = rm.numeric.iter().map(|l| l.energy()).collect();
        numeric = numeric.max(conjugation_defect(&ep, &em));
        if cc == 0.0 {
            zero_imag = ep.iter().chain(&em).map(|e| e.im.abs()).fold(0.0, f64::max);
        }
    }
    let elapsed = start.elapsed();
    outcome(
        real_at_zero
            && complex_above_zero
            && analytic <= 1e-6
            && all_verified
            && numeric <= 1e-6
            && zero_imag <= 1e-6
            && elapsed <= Duration::from_secs(60),
        format!(
            "analytic defect {analytic:.2e}, numeric defect {numeric:.2e}, max |Im E| at C=0 {zero_imag:.2e}, numeric checks {}, {}",
            if all_verified { "verified" } else { "FAILED" },
            secs(elapsed)
        ),
    )
}

fn sl2_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut worst = 0.0f64;
    let mut errors = Vec::new();
    let mut solutions = 0;
    for _ in 0..DRAWS {
        let a = rng.gen_range(-3.0..3.0);
        let b = rng.gen_range(-3.0..3.0);
        let cc = if rng.gen_bool(0.25) {
            0.0
        } else {
            rng.gen_range(-1.5..1.5)
        };
        let alpha = rng.gen_range(0.3..2.5);
        let p = SusyParams::new(a, b, cc, alpha).unwrap();
        let br = random_branch(&mut rng);
        let sols = match solve_correspondence(&p, br) {
            Ok(s) => s,
            Err(e) => {
                errors.push(format!("{p:?}: {e}"));
                continue;
            }
        };
        let target = pcs_partner_coefficients(&p, br);
        for s in &sols {
            solutions += 1;
            let v = build_sl2_potential(s);
            let m2 = s.m * s.m;
            let checks = correspondence_residuals(s, &p, br)
                .map(f64::abs)
                .into_iter()
                .chain([
                    (m_from_b(s.b, &p, br) - s.m).norm(),
                    (m_square_difference(s.b, &p, br) - m2.re).abs(),
                    (m_product(s.b, &p, br) - s.m.re * s.m.im).abs(),
                    (v.t2 - target.t2).norm(),
                    (v.st - target.st).norm(),
                ]);
            worst = checks.fold(worst, f64::max);
        }
    }

    let p = unit(2.0, 3.0, 0.0);
    let worked = solve_correspondence(&p, Branch::Plus).is_ok_and(|sols| {
        [(-2.5, 3.0), (-3.0, 2.5)].iter().all(|&(m, b)| {
            sols.iter()
                .any(|s| (s.m - c(m, 0.0)).norm() <= 1e-10 && (s.b - c(0.0, b)).norm() <= 1e-10)
        })
    });
    let mut detail = format!(
        "{DRAWS} draws, {solutions} solutions, worst residual {worst:.2e}, worked pair {}",
        if worked { "recovered" } else { "MISSING" }
    );
    if let Some(first) = errors.first() {
        detail.push_str(&format!(
            ", {} solver errors (first: {first})",
            errors.len()
        ));
    }
    outcome(errors.is_empty() && worst <= 1e-10 && worked, detail)
}

fn shape_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let xs: Vec<f64> = (0..2001).map(|k| -10.0 + 0.01 * k as f64).collect();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let lam = c(rng.gen_range(-4.0..4.0), rng.gen_range(-2.0..2.0));
        let mu = c(rng.gen_range(-4.0..4.0), rng.gen_range(-2.0..2.0));
        let alpha = rng.gen_range(0.3..2.0);
        let (_, vplus) = Superpotential::new(lam, mu, alpha).partner_potentials();
        let (vminus, _) = Superpotential::new(lam - alpha, mu, alpha).partner_potentials();
        let d: Vec<Complex64> = xs.iter().map(|&x| vplus.eval(x) - vminus.eval(x)).collect();
        let spread = d.iter().map(|z| (z - d[0]).norm()).fold(0.0, f64::max);
        worst = worst.max(spread);
    }
    outcome(
        worst <= 1e-12,
        format!("100 draws, worst spread {worst:.2e}"),
    )
}

fn discretization_order() -> Outcome {
    let v = pcs_partner_coefficients(&unit(1.0, 0.0, 0.0), Branch::Plus);
    let err = |n: usize| -> Result<f64, String> {
        let grid = Grid::new(12.0, n).map_err(|e| e.to_string())?;
        let pair = eigen_near(&discretize(&v, &grid), c(-1.0, 0.0), 1e-10, 300)
            .map_err(|e| e.to_string())?;
        Ok((pair.result.energy() - c(-1.0, 0.0)).norm())
    };
    match (err(2000), err(4000)) {
        (Ok(e1), Ok(e2)) => {
            let ratio = e1 / e2;
            outcome(
                (3.5..=4.5).contains(&ratio),
                format!("error {e1:.3e} -> {e2:.3e}, ratio {ratio:.3}"),
            )
        }
        (Err(e), _) | (_, Err(e)) => outcome(false, e),
    }
}

fn degenerate_fixed_point() -> Outcome {
    let p = unit(2.0, 2.5, 0.0);
    let (s1, s2) = two_series_spectrum(&p, Branch::Plus);
    let coincide = s1.len() == s2.len()
        && s1
            .energies
            .iter()
            .zip(&s2.energies)
            .all(|(a, b)| (a - b).norm() <= 1e-12);
    let r = match verify_spectrum(&p, Branch::Plus, &VerifyOptions::default()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut worst = 0.0f64;
    let mut once = s1.energies.iter().all(|e| {
        let hits: Vec<_> = r
            .numeric
            .iter()
            .filter(|l| (l.energy() - e).norm() <= 1e-6)
            .collect();
        if let [l] = hits.as_slice() {
            worst = worst.max((l.energy() - e).norm());
            l.multiplicity == 2
        } else {
            false
        }
    });
    once &= r.numeric.len() == s1.len();
    outcome(
        coincide && once && r.pass(),
        format!(
            "series coincide: {coincide}, {} numeric levels for {} distinct predictions, each once with multiplicity 2: {once}, max |dE| = {worst:.3e}",
            r.numeric.len(),
            s1.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("two-series reproduction", two_series_reproduction),
        ("exchange invariance", exchange_invariance),
        ("PT constraint equivalence", constraint_equivalence),
        ("spectral bifurcation", spectral_bifurcation),
        ("sl(2) equivalence", sl2_equivalence),
        ("shape-invariance contract", shape_invariance),
        ("discretization order", discretization_order),
        ("degenerate fixed point", degenerate_fixed_point),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += (!o.pass) as usize;
        println!(
            "criterion {} ({name}): {} | {}",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
