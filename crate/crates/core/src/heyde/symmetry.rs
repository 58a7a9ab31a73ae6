use num::complex::Complex64;
use serde::Serialize;

use super::LinearFormsSpec;
use crate::distribution::{CharFunction, Distribution};
use crate::error::{Error, Result};
use crate::finite_difference::{is_polynomial, GroupFunction, PolynomialTestResult};
use crate::group::Group;
use crate::oracle::joint_law;
use crate::sweep::max_over_pairs;
use crate::tolerance::Tolerances;

/// A pair of coordinate vectors locating the largest violation: `(u, v)`
/// characters for the product identity, `(L_1, L_2)` values for the
/// joint-law comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub first: Vec<u64>,
    pub second: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeydeVerdict {
    pub holds: bool,
    pub max_violation: f64,
    pub tolerance: f64,
    /// Present only when `max_violation` exceeds `tolerance`.
    pub witness: Option<Witness>,
}

impl HeydeVerdict {
    fn from_sweep(g: &Group, (worst, u, v): (f64, usize, usize), tolerance: f64) -> Self {
        let holds = worst <= tolerance;
        HeydeVerdict {
            holds,
            max_violation: worst,
            tolerance,
            witness: (!holds).then(|| Witness { first: g.coords_of(u), second: g.coords_of(v) }),
        }
    }
}

/// Values `Π_j μ̂_j(a_j u + s·b_j v)` for `s = ±1`, tabulated once.
struct ProductTable {
    cfs: Vec<CharFunction>,
    a_scaled: Vec<Vec<usize>>,
    b_scaled: Vec<Vec<usize>>,
}

impl ProductTable {
    fn new(g: &Group, spec: &LinearFormsSpec, mus: &[Distribution]) -> Self {
        let scale = |c: i64| (0..g.order()).map(|y| g.scale_idx(c, y)).collect::<Vec<_>>();
        ProductTable {
            cfs: mus.iter().map(Distribution::char_function).collect(),
            a_scaled: spec.a().iter().map(|&a| scale(a)).collect(),
            b_scaled: spec.b().iter().map(|&b| scale(b)).collect(),
        }
    }

    fn sides(&self, g: &Group, u: usize, v: usize) -> (Complex64, Complex64) {
        let mut plus = Complex64::new(1.0, 0.0);
        let mut minus = Complex64::new(1.0, 0.0);
        for (j, cf) in self.cfs.iter().enumerate() {
            let au = self.a_scaled[j][u];
            let bv = self.b_scaled[j][v];
            plus *= cf.at_index(g.add_idx(au, bv));
            minus *= cf.at_index(g.sub_idx(au, bv));
        }
        (plus, minus)
    }
}

/// Sweeps every `(u, v) ∈ Y × Y` and compares the two products.
pub fn check_heyde_cf(
    g: &Group,
    spec: &LinearFormsSpec,
    mus: &[Distribution],
    tol: &Tolerances,
) -> Result<HeydeVerdict> {
    spec.validate(g, mus)?;
    let table = ProductTable::new(g, spec, mus);
    let worst = max_over_pairs(g.order(), |u, v| {
        let (p, m) = table.sides(g, u, v);
        (p - m).norm()
    });
    Ok(HeydeVerdict::from_sweep(g, worst, tol.equation))
}

/// Compares the exact joint laws of `(L_1, L_2)` and `(L_1, −L_2)` by total
/// variation distance.
pub fn check_heyde_exact(
    g: &Group,
    spec: &LinearFormsSpec,
    mus: &[Distribution],
    tol: &Tolerances,
) -> Result<HeydeVerdict> {
    spec.validate(g, mus)?;
    let law = joint_law(g, spec, mus)?;
    let mirrored = law.negate_second();
    let tv = law.total_variation(&mirrored)?;
    let holds = tv <= tol.total_variation;
    let witness = (!holds).then(|| {
        let (l1, l2) = law.largest_discrepancy(&mirrored);
        Witness { first: g.coords_of(l1), second: g.coords_of(l2) }
    });
    Ok(HeydeVerdict { holds, max_violation: tv, tolerance: tol.total_variation, witness })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QVerdict {
    /// `r` is a polynomial on `Y × Y` with `r(0, 0) = 0`.
    pub holds: bool,
    pub r_at_origin: [f64; 2],
    pub max_abs_r: f64,
    pub polynomial: PolynomialTestResult,
}

/// The polynomial-cofactor form of the symmetry condition.
///
/// Builds `r(u, v) = log(Π μ̂_j(a_j u + b_j v) / Π μ̂_j(a_j u − b_j v))`,
/// taking the principal logarithm of the ratio itself so that `r` is zero
/// wherever the two products agree, and tests whether `r` is a polynomial
/// on `Y × Y` vanishing at the origin.
pub fn check_q_heyde(
    g: &Group,
    spec: &LinearFormsSpec,
    mus: &[Distribution],
    tol: &Tolerances,
) -> Result<QVerdict> {
    spec.validate(g, mus)?;
    let table = ProductTable::new(g, spec, mus);
    for (j, cf) in table.cfs.iter().enumerate() {
        if let Some(y) = cf.first_zero(tol.vanishing) {
            return Err(Error::VanishingCharacteristicFunction { index: j, coords: y.coords() });
        }
    }
    let square = g.product(g)?;
    let n = g.order();
    let r = GroupFunction::from_index_fn(&square, |uv| {
        let (p, m) = table.sides(g, uv / n, uv % n);
        (p / m).ln()
    });
    let polynomial = is_polynomial(&r, None, tol.equation);
    let origin = *r.at_index(0);
    Ok(QVerdict {
        holds: polynomial.is_polynomial && origin.norm() <= tol.equation,
        r_at_origin: [origin.re, origin.im],
        max_abs_r: r.max_magnitude(),
        polynomial,
    })
}
