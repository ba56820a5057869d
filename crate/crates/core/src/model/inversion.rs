use serde::Serialize;

use super::params::check_alpha;
use super::{ModelError, PcsPhysicalParams, SusyParams};

/// All `C = 0` parameter sets reproducing a physical potential.
///
/// The sign convention is `V1 = A(A + α) + B²`, `V2 = −B(2A + α)`, which maps
/// `-V1 sech² − iV2 sech·tanh` onto `V−` with `st = iB(2A + α)`.
/// `mirrored` holds the solutions for the opposite sign of `V2` (equivalently
/// `x → −x`), which have `B` negated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhysicalFactorization {
    /// Roots of `t² − (V1 + α²/4)t + V2²/4`, ascending.
    pub roots: [f64; 2],
    pub candidates: Vec<SusyParams>,
    pub mirrored: Vec<SusyParams>,
}

/// Inverts the physical couplings. With `a = A + α/2`, the pair `(a², B²)`
/// is an ordering of the quadratic's roots; the two orderings are related by
/// the `A + α/2 ↔ B` exchange, and each comes with the sign pair `(a, B)`,
/// `(−a, −B)`.
pub fn physical_to_susy(phys: &PcsPhysicalParams) -> Result<PhysicalFactorization, ModelError> {
    let PcsPhysicalParams { v1, v2, alpha } = *phys;
    check_alpha(alpha)?;
    let sum = v1 + 0.25 * alpha * alpha;
    let product = 0.25 * v2 * v2;
    let mut disc = sum * sum - 4.0 * product;
    let scale = sum * sum + 4.0 * product;
    // The exceptional point has disc = 0 exactly; keep it from rounding negative.
    if disc < 0.0 && disc > -1e-13 * scale {
        disc = 0.0;
    }
    if disc < 0.0 || sum < 0.0 {
        let roots = if disc < 0.0 {
            let re = 0.5 * sum;
            let im = 0.5 * (-disc).sqrt();
            format!("{re} ± {im}i")
        } else {
            let r = disc.sqrt();
            format!("{} and {}", 0.5 * (sum - r), 0.5 * (sum + r))
        };
        return Err(ModelError::NoRealFactorization {
            sum,
            product,
            roots,
        });
    }
    let r = disc.sqrt();
    let hi = 0.5 * (sum + r);
    // Stable smaller root via the product of roots.
    let lo = if hi > 0.0 { product / hi } else { 0.0 };
    let roots = [lo, hi];

    let half = 0.5 * alpha;
    let zero_tol = 1e-14 * sum.max(1e-300);
    let mut candidates: Vec<SusyParams> = Vec::new();
    for (ta, tb) in [(roots[0], roots[1]), (roots[1], roots[0])] {
        let a_abs = ta.max(0.0).sqrt();
        if ta <= zero_tol {
            // a = 0 forces V2 = 0 and leaves the sign of B free.
            let b_abs = tb.max(0.0).sqrt();
            for b in [b_abs, -b_abs] {
                push_unique(&mut candidates, -half, b, alpha);
            }
        } else {
            for a in [a_abs, -a_abs] {
                push_unique(&mut candidates, a - half, -v2 / (2.0 * a), alpha);
            }
        }
    }
    candidates.sort_by(|p, q| {
        let kp = p.a + half <= 0.0;
        let kq = q.a + half <= 0.0;
        kp.cmp(&kq)
            .then(p.a.total_cmp(&q.a))
            .then(p.b.total_cmp(&q.b))
    });
    let mirrored = candidates
        .iter()
        .map(|p| SusyParams { b: -p.b, ..*p })
        .collect();
    Ok(PhysicalFactorization {
        roots,
        candidates,
        mirrored,
    })
}

fn push_unique(out: &mut Vec<SusyParams>, a: f64, b: f64, alpha: f64) {
    // Normalise -0.0 so equal candidates compare equal.
    let b = if b == 0.0 { 0.0 } else { b };
    let dup = out.iter().any(|p| {
        (p.a - a).abs() <= 1e-12 * (1.0 + a.abs()) && (p.b - b).abs() <= 1e-12 * (1.0 + b.abs())
    });
    if !dup {
        out.push(SusyParams {
            a,
            b,
            c: 0.0,
            alpha,
        });
    }
}
