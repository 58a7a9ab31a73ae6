use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by every checker.
///
/// Two tiers: `algebra` for construction-level identities and `classify`
/// for predicates and functional-equation verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Mass normalization and exact identities such as Haar transforms.
    pub algebra: f64,
    /// Class-membership predicates (`|μ̂| ∈ {0, 1}` and friends).
    pub classify: f64,
    /// Per-point absolute error allowed in the product identity and `Δ`-zero tests.
    pub equation: f64,
    /// Total-variation threshold for comparing exact joint laws.
    pub total_variation: f64,
    /// Most negative mass tolerated by the inverse transform before it is
    /// declared not positive definite.
    pub positive_definite: f64,
    /// Below this modulus a characteristic function is treated as vanishing.
    pub vanishing: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        algebra: 1e-12,
        classify: 1e-9,
        equation: 1e-9,
        total_variation: 1e-10,
        positive_definite: 1e-10,
        vanishing: 1e-9,
    };

    /// Overrides the decision tier (classification and equation tolerances).
    pub fn with_decision(mut self, tol: f64) -> Self {
        self.classify = tol;
        self.equation = tol;
        self
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
