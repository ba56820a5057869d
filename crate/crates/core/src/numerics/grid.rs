use num_complex::Complex64;
use serde::Serialize;

use super::NumericsError;

/// Uniform interior nodes `x_j = −L + (j + 1)h`, `h = 2L/(N + 1)`, with
/// Dirichlet walls at `±L`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    half_width: f64,
    points: usize,
}

/// Bound states are resolved when their decay length fits this many times
/// into the half-width.
pub const DECAY_LENGTHS: f64 = 24.0;
/// Default spacing, in units of `1/α`.
pub const SPACING: f64 = 0.01;
pub const MAX_POINTS: usize = 4_000_000;

impl Grid {
    pub fn new(half_width: f64, points: usize) -> Result<Self, NumericsError> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(NumericsError::InvalidGrid(format!(
                "half-width must be positive, got {half_width}"
            )));
        }
        if points < 3 {
            return Err(NumericsError::InvalidGrid(format!(
                "need at least 3 interior points, got {points}"
            )));
        }
        if points > MAX_POINTS {
            return Err(NumericsError::InvalidGrid(format!(
                "{points} interior points exceeds the limit of {MAX_POINTS}"
            )));
        }
        Ok(Self { half_width, points })
    }

    /// Grid sized for the given expected levels: wide enough that the
    /// slowest-decaying one is down by `e^{-24}` at the wall, fine enough
    /// that `h ≤ 0.01/α` and `h·√|E| ≤ 0.04` for the deepest.
    pub fn for_levels(alpha: f64, levels: &[Complex64]) -> Result<Self, NumericsError> {
        let mut half_width = 12.0 / alpha;
        let mut spacing = SPACING / alpha;
        for e in levels {
            let kappa = decay_rate(*e);
            if kappa > 0.0 {
                half_width = half_width.max(DECAY_LENGTHS / kappa);
            }
            let depth = e.norm();
            if depth > 0.0 {
                spacing = spacing.min(0.04 / depth.sqrt());
            }
        }
        let points = (2.0 * half_width / spacing).ceil() as usize;
        Self::new(half_width, points.max(3))
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points as f64 + 1.0)
    }

    pub fn node(&self, j: usize) -> f64 {
        -self.half_width + (j as f64 + 1.0) * self.spacing()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|j| self.node(j))
    }

    /// Halves the spacing while keeping every existing node: `N → 2N + 1`.
    pub fn refined(&self) -> Result<Self, NumericsError> {
        Self::new(self.half_width, 2 * self.points + 1)
    }
}

/// `Re √(−E)` on the principal branch: the exponential decay rate of a bound
/// state with energy `E` below an asymptotically vanishing potential.
pub fn decay_rate(energy: Complex64) -> f64 {
    (-energy).sqrt().re
}
