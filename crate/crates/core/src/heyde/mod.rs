//! The symmetry condition for the conditional distribution of
//! `L_2 = Σ b_j ξ_j` given `L_1 = Σ a_j ξ_j`, for independent `ξ_j` with
//! integer coefficients.
//!
//! By the characteristic-function criterion the condition is equivalent to
//!
//! ```text
//! Π_j μ̂_j(a_j u + b_j v) = Π_j μ̂_j(a_j u − b_j v)    for all u, v ∈ Y,
//! ```
//!
//! which [`check_heyde_cf`] tests directly, while [`check_heyde_exact`]
//! compares the exact joint laws of `(L_1, L_2)` and `(L_1, −L_2)`.

mod classify;
mod reduction;
mod symmetry;

pub use classify::{classify_conclusion, CaseStatus, ClassificationReport};
pub use reduction::{reduction_pipeline, Reduction};
pub use symmetry::{check_heyde_cf, check_heyde_exact, check_q_heyde, HeydeVerdict, QVerdict, Witness};

use serde::Serialize;

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::group::{is_admissible, Group};

/// Coefficients of the two linear forms, with the cross sums
/// `l_ij = a_j b_i + b_j a_i` and cross differences `m_ij = a_j b_i − b_j a_i`
/// derived once at construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearFormsSpec {
    a: Vec<i64>,
    b: Vec<i64>,
    l: Vec<Vec<i64>>,
    m: Vec<Vec<i64>>,
}

impl LinearFormsSpec {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidLinearForms("no coefficients".into()));
        }
        if a.len() != b.len() {
            return Err(Error::InvalidLinearForms(format!(
                "a has {} coefficients but b has {}",
                a.len(),
                b.len()
            )));
        }
        let overflow = || Error::InvalidLinearForms("coefficient products overflow".into());
        let n = a.len();
        let mut l = vec![vec![0; n]; n];
        let mut m = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let ajbi = a[j].checked_mul(b[i]).ok_or_else(overflow)?;
                let bjai = b[j].checked_mul(a[i]).ok_or_else(overflow)?;
                l[i][j] = ajbi.checked_add(bjai).ok_or_else(overflow)?;
                m[i][j] = ajbi.checked_sub(bjai).ok_or_else(overflow)?;
            }
        }
        Ok(LinearFormsSpec { a, b, l, m })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn l(&self, i: usize, j: usize) -> i64 {
        self.l[i][j]
    }

    pub fn m(&self, i: usize, j: usize) -> i64 {
        self.m[i][j]
    }

    /// The same forms with `L_2` replaced by `−L_2`.
    pub fn with_negated_b(&self) -> Self {
        Self::new(self.a.clone(), self.b.iter().map(|b| -b).collect()).expect("negation keeps shape")
    }

    pub(crate) fn validate(&self, g: &Group, mus: &[Distribution]) -> Result<()> {
        if mus.len() != self.n() {
            return Err(Error::InvalidLinearForms(format!(
                "{} coefficients but {} distributions",
                self.n(),
                mus.len()
            )));
        }
        for mu in mus {
            g.ensure_same(mu.group())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientReport {
    pub a_admissible: Vec<bool>,
    pub b_admissible: Vec<bool>,
    /// Every `l_ij`, diagonal `2 a_j b_j` included.
    pub l_admissible: Vec<Vec<bool>>,
    /// `m_ij`; the diagonal is identically zero and reported inadmissible.
    pub m_admissible: Vec<Vec<bool>>,
    /// All `a_j`, `b_j` and `l_ij` admissible.
    pub passes: bool,
    /// Every off-diagonal `m_ij` admissible.
    pub all_m_admissible: bool,
    /// Fewer than two variables, or no off-diagonal `m_ij` admissible; then
    /// `b_1 L_1 = a_1 L_2` on the group.
    pub proportional_forms: bool,
    pub failures: Vec<String>,
}

/// Admissibility verdicts for every coefficient the characterization needs.
///
/// Gating uses `a_j`, `b_j` and `l_ij` (including `i = j`); the cross
/// differences are reported alongside.
pub fn check_coefficients(g: &Group, spec: &LinearFormsSpec) -> CoefficientReport {
    let n = spec.n();
    let a_admissible: Vec<bool> = spec.a.iter().map(|&a| is_admissible(g, a)).collect();
    let b_admissible: Vec<bool> = spec.b.iter().map(|&b| is_admissible(g, b)).collect();
    let l_admissible: Vec<Vec<bool>> =
        spec.l.iter().map(|row| row.iter().map(|&v| is_admissible(g, v)).collect()).collect();
    let m_admissible: Vec<Vec<bool>> =
        spec.m.iter().map(|row| row.iter().map(|&v| is_admissible(g, v)).collect()).collect();

    let mut failures = Vec::new();
    for (j, ok) in a_admissible.iter().enumerate() {
        if !ok {
            failures.push(format!("inadmissible coefficient a_{} = {}", j + 1, spec.a[j]));
        }
    }
    for (j, ok) in b_admissible.iter().enumerate() {
        if !ok {
            failures.push(format!("inadmissible coefficient b_{} = {}", j + 1, spec.b[j]));
        }
    }
    for i in 0..n {
        for j in i..n {
            if !l_admissible[i][j] {
                failures.push(format!(
                    "inadmissible cross sum l_{}{} = b_{}a_{} + b_{}a_{} = {}",
                    i + 1,
                    j + 1,
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1,
                    spec.l[i][j]
                ));
            }
        }
    }
    let off_diagonal = || (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
    let all_m_admissible = off_diagonal().all(|(i, j)| m_admissible[i][j]);
    let proportional_forms = n < 2 || off_diagonal().all(|(i, j)| !m_admissible[i][j]);
    CoefficientReport {
        passes: failures.is_empty(),
        a_admissible,
        b_admissible,
        l_admissible,
        m_admissible,
        all_m_admissible,
        proportional_forms,
        failures,
    }
}
