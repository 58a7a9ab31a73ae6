use serde::Serialize;

use super::{check_coefficients, CoefficientReport, HeydeVerdict, LinearFormsSpec};
use crate::classes::{classify, ClassMembership};
use crate::distribution::Distribution;
use crate::error::Result;
use crate::group::{is_admissible, Group};
use crate::tolerance::Tolerances;

/// Outcome of one characterization statement on a concrete instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CaseStatus {
    /// Hypotheses hold and every distribution lies in the concluded class.
    Confirmed,
    /// Hypotheses hold but some distribution escapes the concluded class.
    /// Indicates a numerical or implementation defect.
    Violated,
    /// Hypotheses fail, the symmetry holds, and every distribution escapes
    /// the class: the instance is a counterexample showing the hypothesis is
    /// needed.
    Counterexample { reason: String },
    NotApplicable { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub symmetric: bool,
    /// `Some(p)` when every nonzero element has order `p`.
    pub prime_exponent: Option<u64>,
    /// `2X = 0`; no coefficient choice can pass on such groups.
    pub exponent_two: bool,
    pub all_nonvanishing: bool,
    pub coefficients: CoefficientReport,
    pub classes: Vec<ClassMembership>,
    pub all_degenerate: bool,
    /// Characterization for nonvanishing characteristic functions on
    /// exponent-`p` groups (`p > 2`): all distributions degenerate. Its
    /// converse direction: outside those groups a symmetric tuple with
    /// nonvanishing transforms and every `μ_j ∉ Γ(X)` exists.
    pub nonvanishing_case: CaseStatus,
    /// Characterization without the nonvanishing assumption on
    /// exponent-3 groups; counterexamples escape `Γ(X) * I(X)`.
    pub general_case: CaseStatus,
}

pub fn classify_conclusion(
    g: &Group,
    spec: &LinearFormsSpec,
    mus: &[Distribution],
    verdict: &HeydeVerdict,
    tol: &Tolerances,
) -> Result<ClassificationReport> {
    spec.validate(g, mus)?;
    let coefficients = check_coefficients(g, spec);
    let classes: Vec<ClassMembership> = mus.iter().map(|mu| classify(mu, tol)).collect();
    let all_nonvanishing = mus.iter().all(|mu| mu.char_function().is_nonvanishing(tol.vanishing));
    let all_degenerate = classes.iter().all(|c| c.degenerate);
    let prime_exponent = g.prime_exponent();
    let exponent_two = !is_admissible(g, 2);

    let nonvanishing_case = if !verdict.holds {
        not_applicable("symmetry does not hold")
    } else if exponent_two {
        not_applicable("group has exponent 2")
    } else if !all_nonvanishing {
        not_applicable("some characteristic function vanishes")
    } else if let (Some(_), true) = (prime_exponent, coefficients.passes) {
        if all_degenerate {
            CaseStatus::Confirmed
        } else {
            CaseStatus::Violated
        }
    } else if classes.iter().all(|c| !c.gaussian) {
        let reason = match prime_exponent {
            None => "non-prime-exponent group",
            Some(_) => "coefficient admissibility fails",
        };
        CaseStatus::Counterexample { reason: reason.into() }
    } else {
        not_applicable(if prime_exponent.is_none() {
            "non-prime-exponent group"
        } else {
            "coefficient admissibility fails"
        })
    };

    let general_case = if !verdict.holds {
        not_applicable("symmetry does not hold")
    } else if exponent_two {
        not_applicable("group has exponent 2")
    } else if let (Some(3), true) = (prime_exponent, coefficients.passes) {
        if all_degenerate {
            CaseStatus::Confirmed
        } else {
            CaseStatus::Violated
        }
    } else if classes.iter().all(|c| !c.gaussian_times_idempotent) {
        let reason = match prime_exponent {
            Some(3) => "coefficient admissibility fails",
            Some(_) => "exponent-p group with p > 3",
            None => "group is not of exponent 3",
        };
        CaseStatus::Counterexample { reason: reason.into() }
    } else {
        not_applicable(if prime_exponent == Some(3) {
            "coefficient admissibility fails"
        } else {
            "group is not of exponent 3"
        })
    };

    Ok(ClassificationReport {
        symmetric: verdict.holds,
        prime_exponent,
        exponent_two,
        all_nonvanishing,
        coefficients,
        classes,
        all_degenerate,
        nonvanishing_case,
        general_case,
    })
}

fn not_applicable(reason: &str) -> CaseStatus {
    CaseStatus::NotApplicable { reason: reason.into() }
}
