use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ModelError;

/// The `±` label carried by the complexified superpotentials `W±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    /// `+1.0` for [`Branch::Plus`], `-1.0` for [`Branch::Minus`].
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Branch {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" | "+" => Ok(Branch::Plus),
            "minus" | "-" => Ok(Branch::Minus),
            other => Err(ModelError::InvalidParameter(format!(
                "branch must be `plus` or `minus`, got `{other}`"
            ))),
        }
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<(), ModelError> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter(format!(
            "alpha must be finite and positive, got {alpha}"
        )))
    }
}

fn check_finite(name: &str, v: f64) -> Result<(), ModelError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter(format!(
            "{name} must be finite, got {v}"
        )))
    }
}

/// Couplings of the physical potential `-V1 sech²(αx) - i V2 sech(αx) tanh(αx)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcsPhysicalParams {
    pub v1: f64,
    pub v2: f64,
    pub alpha: f64,
}

impl PcsPhysicalParams {
    pub fn new(v1: f64, v2: f64, alpha: f64) -> Result<Self, ModelError> {
        check_finite("V1", v1)?;
        check_finite("V2", v2)?;
        check_alpha(alpha)?;
        Ok(Self { v1, v2, alpha })
    }
}

/// Real parameters of the superpotential ansatz
/// `W± = (A ± iC) tanh αx + (±C + iB) sech αx`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SusyParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
}

impl SusyParams {
    pub fn new(a: f64, b: f64, c: f64, alpha: f64) -> Result<Self, ModelError> {
        let p = Self { a, b, c, alpha };
        p.validate()?;
        Ok(p)
    }

    /// The PT-symmetric (`C = 0`) member of the family.
    pub fn pt_symmetric(a: f64, b: f64, alpha: f64) -> Result<Self, ModelError> {
        Self::new(a, b, 0.0, alpha)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        check_finite("A", self.a)?;
        check_finite("B", self.b)?;
        check_finite("C", self.c)?;
        check_alpha(self.alpha)
    }

    pub fn with_c(self, c: f64) -> Self {
        Self { c, ..self }
    }

    /// Repackages the branch-`±` parameters as `𝒜 = A ± iC`, `ℬ = B ∓ iC`
    /// (the latter from `iℬ = ±C + iB`).
    pub fn complexify(&self, branch: Branch) -> ComplexSusyParams {
        let s = branch.sign();
        ComplexSusyParams {
            cal_a: Complex64::new(self.a, s * self.c),
            cal_b: Complex64::new(self.b, -s * self.c),
            alpha: self.alpha,
        }
    }
}

/// Complex pair `(𝒜, ℬ)` with superpotential `𝒜 tanh αx + iℬ sech αx`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexSusyParams {
    pub cal_a: Complex64,
    pub cal_b: Complex64,
    pub alpha: f64,
}

impl ComplexSusyParams {
    pub fn new(cal_a: Complex64, cal_b: Complex64, alpha: f64) -> Result<Self, ModelError> {
        check_finite("Re 𝒜", cal_a.re)?;
        check_finite("Im 𝒜", cal_a.im)?;
        check_finite("Re ℬ", cal_b.re)?;
        check_finite("Im ℬ", cal_b.im)?;
        check_alpha(alpha)?;
        Ok(Self {
            cal_a,
            cal_b,
            alpha,
        })
    }
}
