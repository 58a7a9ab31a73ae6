//! Finite differences `Δ_h f(y) = f(y + h) − f(y)` on functions over a
//! finite group, polynomial detection, and the parallelogram equation
//!
//! ```text
//! φ(u + v) + φ(u − v) = 2[φ(u) + φ(v)]
//! ```
//!
//! Functions are generic over the value type: `Complex64` and `f64` compare
//! against a tolerance, `BigRational` compares exactly.

use std::fmt::Debug;
use std::ops::{Add, Sub};

use num::complex::Complex64;
use num::{BigRational, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Character, Group, Point};

pub trait FieldValue: Clone + Debug + Send + Sync + Zero + Add<Output = Self> + Sub<Output = Self> {
    fn magnitude(&self) -> f64;
    /// Exact types ignore `tol`.
    fn is_negligible(&self, tol: f64) -> bool;
}

impl FieldValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
}

impl FieldValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
}

impl FieldValue for BigRational {
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

/// A function on every point of a group (in practice the dual `Y` or `Y×Y`).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupFunction<T = Complex64> {
    group: Group,
    values: Vec<T>,
}

impl<T: FieldValue> GroupFunction<T> {
    pub fn new(group: &Group, values: Vec<T>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::ShapeMismatch { expected: group.order(), found: values.len() });
        }
        Ok(GroupFunction { group: group.clone(), values })
    }

    pub fn from_fn(group: &Group, f: impl Fn(&Character) -> T) -> Self {
        let values = group.characters().map(|y| f(&y)).collect();
        GroupFunction { group: group.clone(), values }
    }

    pub fn from_index_fn(group: &Group, f: impl FnMut(usize) -> T) -> Self {
        GroupFunction { group: group.clone(), values: (0..group.order()).map(f).collect() }
    }

    pub fn constant(group: &Group, c: T) -> Self {
        GroupFunction { group: group.clone(), values: vec![c; group.order()] }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn at(&self, y: &Character) -> &T {
        &self.values[y.index()]
    }

    pub fn at_index(&self, y: usize) -> &T {
        &self.values[y]
    }

    pub fn map<U: FieldValue>(&self, f: impl Fn(&T) -> U) -> GroupFunction<U> {
        GroupFunction { group: self.group.clone(), values: self.values.iter().map(f).collect() }
    }

    /// `y ↦ f(y + h)`.
    pub fn shifted(&self, h: &Character) -> Result<Self> {
        self.group.ensure_same(h.group())?;
        Ok(self.shifted_idx(h.index()))
    }

    fn shifted_idx(&self, h: usize) -> Self {
        let g = &self.group;
        let values = (0..g.order()).map(|y| self.values[g.add_idx(y, h)].clone()).collect();
        GroupFunction { group: g.clone(), values }
    }

    pub fn delta(&self, h: &Character) -> Result<Self> {
        self.group.ensure_same(h.group())?;
        Ok(self.delta_idx(h.index()))
    }

    pub(crate) fn delta_idx(&self, h: usize) -> Self {
        let shift = shift_table(&self.group, h);
        GroupFunction { group: self.group.clone(), values: apply_delta(&self.values, &shift) }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(GroupFunction { group: self.group.clone(), values })
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(GroupFunction { group: self.group.clone(), values })
    }

    pub fn max_magnitude(&self) -> f64 {
        self.values.iter().map(FieldValue::magnitude).fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.is_negligible(tol))
    }

    pub fn is_constant(&self, tol: f64) -> bool {
        let c = self.values[0].clone();
        self.values.iter().all(|v| (v.clone() - c.clone()).is_negligible(tol))
    }
}

fn shift_table(g: &Group, h: usize) -> Vec<usize> {
    (0..g.order()).map(|y| g.add_idx(y, h)).collect()
}

fn apply_delta<T: FieldValue>(values: &[T], shift: &[usize]) -> Vec<T> {
    shift.iter().zip(values).map(|(&s, v)| values[s].clone() - v.clone()).collect()
}

pub fn delta<T: FieldValue>(h: &Character, f: &GroupFunction<T>) -> Result<GroupFunction<T>> {
    f.delta(h)
}

/// `Δ_{h_1} Δ_{h_2} ... Δ_{h_k} f`, applied left to right. The operators
/// commute so the order is immaterial.
pub fn iterated_delta<T: FieldValue>(hs: &[Character], f: &GroupFunction<T>) -> Result<GroupFunction<T>> {
    hs.iter().try_fold(f.clone(), |acc, h| acc.delta(h))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolynomialWitness {
    pub h: Vec<u64>,
    pub y: Vec<u64>,
    /// `|Δ_h^{max_degree+1} f(y)|`.
    pub magnitude: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolynomialTestResult {
    pub is_polynomial: bool,
    /// Smallest `n` with `Δ_h^{n+1} f ≡ 0` for every `h`.
    pub degree: Option<usize>,
    pub max_degree: usize,
    pub witness: Option<PolynomialWitness>,
}

/// Decides whether `Δ_h^{n+1} f ≡ 0` for every `h` and some `n ≤ max_degree`
/// (default `|domain|`), sweeping every direction `h` and point `y`.
pub fn is_polynomial<T: FieldValue>(f: &GroupFunction<T>, max_degree: Option<usize>, tol: f64) -> PolynomialTestResult {
    let g = &f.group;
    let max_degree = max_degree.unwrap_or(g.order());
    let mut degree = 0;
    for h in 0..g.order() {
        let shift = shift_table(g, h);
        let mut current = f.values.clone();
        let mut vanished_at = None;
        for k in 1..=max_degree + 1 {
            current = apply_delta(&current, &shift);
            if current.iter().all(|v| v.is_negligible(tol)) {
                vanished_at = Some(k);
                break;
            }
        }
        match vanished_at {
            Some(k) => degree = degree.max(k - 1),
            None => {
                let (y, v) = current
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.magnitude().total_cmp(&b.1.magnitude()))
                    .expect("nonempty group");
                return PolynomialTestResult {
                    is_polynomial: false,
                    degree: None,
                    max_degree,
                    witness: Some(PolynomialWitness {
                        h: g.coords_of(h),
                        y: g.coords_of(y),
                        magnitude: v.magnitude(),
                    }),
                };
            }
        }
    }
    PolynomialTestResult { is_polynomial: true, degree: Some(degree), max_degree, witness: None }
}

/// Largest violation of the parallelogram equation over all `(u, v)`.
pub fn fe1_violation<T: FieldValue>(phi: &GroupFunction<T>) -> f64 {
    let members: Vec<usize> = (0..phi.group.order()).collect();
    fe1_violation_on(phi, &members)
}

/// Same, with `u` and `v` restricted to the given subgroup.
pub fn fe1_violation_on<T: FieldValue>(phi: &GroupFunction<T>, members: &[usize]) -> f64 {
    let g = &phi.group;
    let v = &phi.values;
    let mut worst = 0.0f64;
    for &a in members {
        for &b in members {
            let lhs = v[g.add_idx(a, b)].clone() + v[g.sub_idx(a, b)].clone();
            let s = v[a].clone() + v[b].clone();
            let rhs = s.clone() + s;
            worst = worst.max((lhs - rhs).magnitude());
        }
    }
    worst
}

pub fn satisfies_fe1<T: FieldValue>(phi: &GroupFunction<T>, tol: f64) -> bool {
    let g = &phi.group;
    let v = &phi.values;
    (0..g.order()).all(|a| {
        (0..g.order()).all(|b| {
            let lhs = v[g.add_idx(a, b)].clone() + v[g.sub_idx(a, b)].clone();
            let s = v[a].clone() + v[b].clone();
            (lhs - (s.clone() + s)).is_negligible(tol)
        })
    })
}

/// Points of `Y` as characters of a function's domain.
pub fn domain_points(f: &GroupFunction<impl FieldValue>) -> impl Iterator<Item = Character> + '_ {
    (0..f.group.order()).map(move |i| Point::from_index(&f.group, i))
}
