use num_complex::Complex64;

use super::SpectraError;
use crate::model::Superpotential;

/// One rung of the shape-invariance ladder: `V+(lam, mu) = V−(lam − α, mu) + shift`
/// with `shift = lam² − (lam − α)²`.
///
/// Fails once the next `Re(lam)` would be negative, since the partner then
/// has no normalizable zero mode left to climb to.
pub fn shape_invariance_step(
    w: &Superpotential,
) -> Result<(Superpotential, Complex64), SpectraError> {
    let next_lam = w.lam - w.alpha;
    if next_lam.re < 0.0 {
        return Err(SpectraError::LadderExhausted {
            re_lam: w.lam.re,
            alpha: w.alpha,
        });
    }
    let next = Superpotential::new(next_lam, w.mu, w.alpha);
    let shift = w.lam * w.lam - next_lam * next_lam;
    Ok((next, shift))
}
