//! Finite-difference elimination on the logarithmic form of the symmetry
//! identity,
//!
//! ```text
//! Σ_j ψ_j(a_j u + b_j v) = Σ_j ψ_j(a_j u − b_j v).
//! ```
//!
//! Step `t` (for `t = n, …, 1`) shifts `(u, v)` by `(b_t h_t, a_t h_t)` and
//! subtracts. On the left this applies `Δ_{l_tj h_t}` to the `j`-th term; on
//! the right it applies `Δ_{m_tj h_t}` and, since `m_tt = 0`, removes `ψ_t`.
//! After the `h` steps the right side is gone. Steps `t = n, …, 2` then
//! shift by `(b_t k_t, −a_t k_t)`, which removes `ψ_t` from the left, leaving
//!
//! ```text
//! Δ_{m_21 k_2} … Δ_{m_n1 k_n} Δ_{l_11 h_1} … Δ_{l_n1 h_n} ψ_1(a_1 u + b_1 v),
//! ```
//!
//! which vanishes whenever the identity holds. Setting `v = 0` gives a
//! one-variable equation for `ψ_1`.

use num::complex::Complex64;

use super::LinearFormsSpec;
use crate::error::{Error, Result};
use crate::finite_difference::GroupFunction;
use crate::group::{Character, Group};

#[derive(Clone, Debug)]
pub struct Reduction {
    /// Left side after the `h` steps, on `Y × Y`.
    pub lhs_after_h: GroupFunction,
    /// Right side after the `h` steps; identically zero for any `ψ`.
    pub rhs_after_h: GroupFunction,
    /// Left side after all steps, on `Y × Y`.
    pub residual: GroupFunction,
    /// `u ↦ residual(u, 0)`, on `Y`.
    pub restricted: GroupFunction,
}

/// Runs the elimination. `hs` holds `h_1, …, h_n`; `ks` holds
/// `k_2, …, k_n`.
pub fn reduction_pipeline(
    psis: &[GroupFunction],
    spec: &LinearFormsSpec,
    hs: &[Character],
    ks: &[Character],
) -> Result<Reduction> {
    let n = spec.n();
    if psis.len() != n || hs.len() != n || ks.len() + 1 != n {
        return Err(Error::InvalidLinearForms(format!(
            "need {n} functions, {n} h-shifts and {} k-shifts; got {}, {}, {}",
            n - 1,
            psis.len(),
            hs.len(),
            ks.len()
        )));
    }
    let y = psis[0].group().clone();
    for psi in psis {
        y.ensure_same(psi.group())?;
    }
    for s in hs.iter().chain(ks) {
        y.ensure_same(s.group())?;
    }
    let square = y.product(&y)?;
    let size = y.order();
    let pair = |p: usize, q: usize| p * size + q;

    let form = |sign: i64| {
        GroupFunction::from_index_fn(&square, |uv| {
            let (u, v) = (uv / size, uv % size);
            (0..n)
                .map(|j| {
                    let arg = y.add_idx(y.scale_idx(spec.a()[j], u), y.scale_idx(sign * spec.b()[j], v));
                    *psis[j].at_index(arg)
                })
                .sum::<Complex64>()
        })
    };
    let mut lhs = form(1);
    let mut rhs = form(-1);

    for t in (0..n).rev() {
        let h = hs[t].index();
        let dir = pair(y.scale_idx(spec.b()[t], h), y.scale_idx(spec.a()[t], h));
        lhs = lhs.delta_idx(dir);
        rhs = rhs.delta_idx(dir);
    }
    let lhs_after_h = lhs.clone();

    for t in (1..n).rev() {
        let k = ks[t - 1].index();
        let dir = pair(y.scale_idx(spec.b()[t], k), y.scale_idx(-spec.a()[t], k));
        lhs = lhs.delta_idx(dir);
    }
    let restricted = restrict_second_to_zero(&y, &lhs);
    Ok(Reduction { lhs_after_h, rhs_after_h: rhs, residual: lhs, restricted })
}

fn restrict_second_to_zero(y: &Group, f: &GroupFunction) -> GroupFunction {
    GroupFunction::from_index_fn(y, |u| *f.at_index(u * y.order()))
}
