//! Membership tests for the distribution classes used by the
//! characterization results:
//!
//! * `D(X)` degenerate distributions `E_x`;
//! * `I(X)` shifts of Haar distributions `E_x * m_K`;
//! * `Γ(X)` Gaussian distributions, `μ̂(y) = (x, y)·exp(−φ(y))` with
//!   `φ ≥ 0` solving the parallelogram equation;
//! * `Γ(X) * I(X)`.
//!
//! All four are decided from the characteristic function.

use serde::Serialize;

use crate::distribution::{CharFunction, Distribution};
use crate::finite_difference::{fe1_violation_on, GroupFunction};
use crate::group::{Element, Group, Point, Primal};
use crate::subgroup::Subgroup;
use crate::tolerance::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassMembership {
    pub degenerate: bool,
    pub gaussian: bool,
    pub idempotent_shift: bool,
    pub gaussian_times_idempotent: bool,
}

pub fn classify(mu: &Distribution, tol: &Tolerances) -> ClassMembership {
    let cf = mu.char_function();
    ClassMembership {
        degenerate: is_degenerate(mu),
        gaussian: gaussian_from_cf(mu, &cf, tol).is_some(),
        idempotent_shift: idempotent_from_cf(mu, &cf, tol).is_some(),
        gaussian_times_idempotent: gaussian_times_idempotent_from_cf(&cf, tol),
    }
}

pub fn is_degenerate(mu: &Distribution) -> bool {
    mu.support_indices().len() == 1
}

/// `μ = E_x * m_K` for some `x` and `K`.
pub fn is_idempotent_shift(mu: &Distribution, tol: &Tolerances) -> bool {
    idempotent_decomposition(mu, tol).is_some()
}

/// Returns `(x, K)` with `μ = E_x * m_K`.
///
/// `|μ̂|` must take only the values 0 and 1, and `H = {y : |μ̂(y)| = 1}`
/// must be a subgroup; then `K = A(X, H)` and `x` is any support point.
pub fn idempotent_decomposition(mu: &Distribution, tol: &Tolerances) -> Option<(Element, Subgroup<Primal>)> {
    idempotent_from_cf(mu, &mu.char_function(), tol)
}

fn idempotent_from_cf(mu: &Distribution, cf: &CharFunction, tol: &Tolerances) -> Option<(Element, Subgroup<Primal>)> {
    let g = mu.group();
    let mut unit = Vec::new();
    for (y, v) in cf.values().iter().enumerate() {
        let r = v.norm();
        if (r - 1.0).abs() <= tol.classify {
            unit.push(y);
        } else if r > tol.classify {
            return None;
        }
    }
    let h = Subgroup::<crate::group::Dual>::from_indices(g, &unit)?;
    let k = h.annihilator();
    let x: Element = Point::from_index(g, *mu.support_indices().first()?);
    let candidate = Distribution::haar(&k).translate(&x).ok()?;
    (mu.max_mass_difference(&candidate).ok()? <= tol.classify).then_some((x, k))
}

/// `μ ∈ Γ(X)`.
///
/// A Gaussian characteristic function has modulus `exp(−φ) > 0`, so a
/// vanishing `μ̂` short-circuits to the degenerate test.
pub fn is_gaussian(mu: &Distribution, tol: &Tolerances) -> bool {
    gaussian_decomposition(mu, tol).is_some()
}

/// Returns `(x, φ)` with `μ̂(y) = (x, y)·exp(−φ(y))`.
pub fn gaussian_decomposition(mu: &Distribution, tol: &Tolerances) -> Option<(Element, GroupFunction<f64>)> {
    gaussian_from_cf(mu, &mu.char_function(), tol)
}

fn gaussian_from_cf(mu: &Distribution, cf: &CharFunction, tol: &Tolerances) -> Option<(Element, GroupFunction<f64>)> {
    let g = mu.group();
    if !cf.is_nonvanishing(tol.vanishing) {
        if !is_degenerate(mu) {
            return None;
        }
        let x: Element = Point::from_index(g, mu.support_indices()[0]);
        return Some((x, GroupFunction::constant(g, 0.0)));
    }
    let all: Vec<usize> = (0..g.order()).collect();
    let x = phase_character(g, cf, &all, tol.classify)?;
    let phi = GroupFunction::from_index_fn(g, |y| -cf.at_index(y).norm().ln());
    (fe1_violation_on(&phi, &all) <= tol.classify).then_some((x, phi))
}

/// `μ ∈ Γ(X) * I(X)`: the nonvanishing set of `μ̂` is a subgroup `H`, and on
/// `H` the function `μ̂` has the Gaussian form.
pub fn is_gaussian_times_idempotent(mu: &Distribution, tol: &Tolerances) -> bool {
    gaussian_times_idempotent_from_cf(&mu.char_function(), tol)
}

fn gaussian_times_idempotent_from_cf(cf: &CharFunction, tol: &Tolerances) -> bool {
    let g = cf.group();
    let nonzero: Vec<usize> = (0..g.order()).filter(|&y| cf.at_index(y).norm() > tol.vanishing).collect();
    let Some(h) = Subgroup::<crate::group::Dual>::from_indices(g, &nonzero) else {
        return false;
    };
    if phase_character(g, cf, h.indices(), tol.classify).is_none() {
        return false;
    }
    let phi = GroupFunction::from_index_fn(g, |y| {
        let r = cf.at_index(y).norm();
        if r > tol.vanishing {
            -r.ln()
        } else {
            0.0
        }
    });
    fe1_violation_on(&phi, h.indices()) <= tol.classify
}

/// Finds `x` with `μ̂(y)/|μ̂(y)| = (x, y)` for every `y` in `on`.
fn phase_character(g: &Group, cf: &CharFunction, on: &[usize], tol: f64) -> Option<Element> {
    let units: Vec<(usize, num::complex::Complex64)> =
        on.iter().map(|&y| (y, cf.at_index(y) / cf.at_index(y).norm())).collect();
    (0..g.order())
        .find(|&x| units.iter().all(|&(y, u)| (g.pairing_idx(x, y) - u).norm() <= tol))
        .map(|x| Point::from_index(g, x))
}
