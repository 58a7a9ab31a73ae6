//! Probability distributions on a finite group and their characteristic
//! functions.
//!
//! Transform convention: `μ̂(y) = Σ_x μ(x)·(x, y)` (so `μ̂(0) = 1`), and the
//! inverse divides by `|X|`.

use num::complex::Complex64;
use num::{BigRational, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{Character, Element, Group, Point, Primal};
use crate::subgroup::Subgroup;
use crate::tolerance::Tolerances;

#[derive(Clone, Debug)]
pub struct Distribution {
    group: Group,
    probs: Vec<f64>,
}

impl Distribution {
    /// Takes a full probability vector indexed like the group. Weights must
    /// be nonnegative and sum to one within the algebra tolerance.
    pub fn new(group: &Group, probs: Vec<f64>) -> Result<Self> {
        check_len(group, probs.len())?;
        if let Some((i, &p)) = probs.iter().enumerate().find(|(_, p)| !(**p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidDistribution(format!(
                "mass {p} at {:?} is not a nonnegative number",
                group.coords_of(i)
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > Tolerances::DEFAULT.algebra {
            return Err(Error::InvalidDistribution(format!("masses sum to {total}, not 1")));
        }
        Ok(Distribution { group: group.clone(), probs })
    }

    /// Normalizes nonnegative weights by their sum.
    pub fn from_weights(group: &Group, weights: Vec<f64>) -> Result<Self> {
        check_len(group, weights.len())?;
        if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidDistribution("weights must be finite and nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidDistribution("weights sum to zero".into()));
        }
        Ok(Distribution { group: group.clone(), probs: weights.into_iter().map(|w| w / total).collect() })
    }

    /// Normalizes rational weights exactly before converting each mass to
    /// the nearest double.
    pub fn from_rational_weights(group: &Group, weights: &[BigRational]) -> Result<Self> {
        check_len(group, weights.len())?;
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::InvalidDistribution("weights must be nonnegative".into()));
        }
        let total = weights.iter().fold(BigRational::zero(), |acc, w| acc + w);
        if total.is_zero() {
            return Err(Error::InvalidDistribution("weights sum to zero".into()));
        }
        let probs = weights
            .iter()
            .map(|w| (w / &total).to_f64().unwrap_or(f64::NAN))
            .collect();
        Ok(Distribution { group: group.clone(), probs })
    }

    pub fn point_mass(x: &Element) -> Self {
        let mut probs = vec![0.0; x.group().order()];
        probs[x.index()] = 1.0;
        Distribution { group: x.group().clone(), probs }
    }

    /// Uniform distribution `m_K` on a subgroup.
    pub fn haar(k: &Subgroup<Primal>) -> Self {
        let g = k.parent();
        let mut probs = vec![0.0; g.order()];
        let w = 1.0 / k.len() as f64;
        for &i in k.indices() {
            probs[i] = w;
        }
        Distribution { group: g.clone(), probs }
    }

    pub fn uniform(g: &Group) -> Self {
        Self::haar(&Subgroup::whole(g))
    }

    /// Convex combination `Σ w_i μ_i`; weights are normalized.
    pub fn mixture(components: &[(f64, &Distribution)]) -> Result<Self> {
        let (_, first) = components
            .first()
            .ok_or_else(|| Error::InvalidDistribution("empty mixture".into()))?;
        let g = first.group.clone();
        let mut weights = vec![0.0; g.order()];
        for (w, mu) in components {
            g.ensure_same(&mu.group)?;
            if !(*w >= 0.0) {
                return Err(Error::InvalidDistribution(format!("negative mixture weight {w}")));
            }
            for (acc, p) in weights.iter_mut().zip(&mu.probs) {
                *acc += w * p;
            }
        }
        Self::from_weights(&g, weights)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn mass(&self, x: &Element) -> f64 {
        self.probs[x.index()]
    }

    pub fn char_function(&self) -> CharFunction {
        let g = &self.group;
        let roots = g.roots();
        let support: Vec<(usize, f64)> =
            self.probs.iter().copied().enumerate().filter(|(_, p)| *p != 0.0).collect();
        let values = (0..g.order())
            .map(|y| {
                support
                    .iter()
                    .map(|&(x, p)| roots[g.phase(x, y) as usize] * p)
                    .sum::<Complex64>()
            })
            .collect();
        CharFunction { group: g.clone(), values }
    }

    /// `(μ * ν)(x) = Σ_z μ(z) ν(x − z)`.
    pub fn convolve(&self, other: &Distribution) -> Result<Distribution> {
        self.group.ensure_same(&other.group)?;
        let g = &self.group;
        let mut probs = vec![0.0; g.order()];
        for (z, &p) in self.probs.iter().enumerate().filter(|(_, p)| **p != 0.0) {
            for (w, &q) in other.probs.iter().enumerate().filter(|(_, q)| **q != 0.0) {
                probs[g.add_idx(z, w)] += p * q;
            }
        }
        Ok(Distribution { group: g.clone(), probs })
    }

    /// `μ̄(B) = μ(−B)`.
    pub fn reflect(&self) -> Distribution {
        let g = &self.group;
        let mut probs = vec![0.0; g.order()];
        for (x, &p) in self.probs.iter().enumerate() {
            probs[g.neg_idx(x)] = p;
        }
        Distribution { group: g.clone(), probs }
    }

    /// `μ * E_x`.
    pub fn translate(&self, x: &Element) -> Result<Distribution> {
        self.group.ensure_same(x.group())?;
        let g = &self.group;
        let mut probs = vec![0.0; g.order()];
        for (z, &p) in self.probs.iter().enumerate() {
            probs[g.add_idx(z, x.index())] = p;
        }
        Ok(Distribution { group: g.clone(), probs })
    }

    /// Law of `a·ξ` when `ξ ~ μ`.
    pub fn push_forward(&self, a: i64) -> Distribution {
        let g = &self.group;
        let mut probs = vec![0.0; g.order()];
        for (x, &p) in self.probs.iter().enumerate() {
            probs[g.scale_idx(a, x)] += p;
        }
        Distribution { group: g.clone(), probs }
    }

    /// Elements carrying mass above the algebra tolerance.
    pub fn support(&self) -> Vec<Element> {
        self.support_indices().into_iter().map(|i| Point::from_index(&self.group, i)).collect()
    }

    pub fn support_indices(&self) -> Vec<usize> {
        let tol = Tolerances::DEFAULT.algebra;
        (0..self.probs.len()).filter(|&i| self.probs[i] > tol).collect()
    }

    /// Largest absolute difference between corresponding masses.
    pub fn max_mass_difference(&self, other: &Distribution) -> Result<f64> {
        self.group.ensure_same(&other.group)?;
        Ok(self.probs.iter().zip(&other.probs).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max))
    }
}

fn check_len(group: &Group, len: usize) -> Result<()> {
    if len != group.order() {
        return Err(Error::InvalidDistribution(format!(
            "expected {} masses for {group}, found {len}",
            group.order()
        )));
    }
    Ok(())
}

/// A complex function on the dual group, indexed like the group.
///
/// Values produced by [`Distribution::char_function`] satisfy `f(0) = 1`,
/// `|f| ≤ 1` and `f(−y) = conj f(y)`. Values supplied by callers only need
/// `f(0) = 1`; whether they come from a distribution is what
/// [`CharFunction::to_distribution`] decides.
#[derive(Clone, Debug)]
pub struct CharFunction {
    group: Group,
    values: Vec<Complex64>,
}

impl CharFunction {
    pub fn new(group: &Group, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidDistribution(format!(
                "expected {} values for {group}, found {}",
                group.order(),
                values.len()
            )));
        }
        if (values[0] - 1.0).norm() > Tolerances::DEFAULT.algebra {
            return Err(Error::InvalidDistribution(format!(
                "value at the zero character is {}, not 1",
                values[0]
            )));
        }
        Ok(CharFunction { group: group.clone(), values })
    }

    pub fn from_fn(group: &Group, f: impl Fn(&Character) -> Complex64) -> Result<Self> {
        let values = group.characters().map(|y| f(&y)).collect();
        Self::new(group, values)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, y: &Character) -> Complex64 {
        self.values[y.index()]
    }

    pub fn at_index(&self, y: usize) -> Complex64 {
        self.values[y]
    }

    /// First character (by index) where `|f(y)| ≤ tol`.
    pub fn first_zero(&self, tol: f64) -> Option<Character> {
        self.values
            .iter()
            .position(|v| v.norm() <= tol)
            .map(|i| Point::from_index(&self.group, i))
    }

    pub fn is_nonvanishing(&self, tol: f64) -> bool {
        self.first_zero(tol).is_none()
    }

    /// Checks the invariants every genuine characteristic function has.
    pub fn satisfies_invariants(&self, tol: f64) -> bool {
        let g = &self.group;
        (self.values[0] - 1.0).norm() <= tol
            && self.values.iter().all(|v| v.norm() <= 1.0 + tol)
            && (0..g.order()).all(|y| (self.values[g.neg_idx(y)] - self.values[y].conj()).norm() <= tol)
    }

    pub fn max_difference(&self, other: &CharFunction) -> Result<f64> {
        self.group.ensure_same(&other.group)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn pointwise_product(&self, other: &CharFunction) -> Result<CharFunction> {
        self.group.ensure_same(&other.group)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(CharFunction { group: self.group.clone(), values })
    }

    /// Inverse transform with a positive-definiteness test.
    ///
    /// On a finite group a function with `f(0) = 1` is a characteristic
    /// function iff its inverse transform is a nonnegative real vector.
    /// Masses down to `-tol.positive_definite` are clamped to zero and the
    /// result renormalized.
    pub fn to_distribution(&self, tol: &Tolerances) -> Result<Distribution> {
        let g = &self.group;
        let roots = g.roots();
        let e = g.exponent();
        let scale = 1.0 / g.order() as f64;
        let raw: Vec<Complex64> = (0..g.order())
            .map(|x| {
                (0..g.order())
                    .map(|y| {
                        let k = g.phase(x, y);
                        self.values[y] * roots[((e - k) % e) as usize]
                    })
                    .sum::<Complex64>()
                    * scale
            })
            .collect();
        if let Some((i, m)) = raw
            .iter()
            .enumerate()
            .filter(|(_, m)| m.im.abs() > tol.positive_definite)
            .max_by(|a, b| a.1.im.abs().total_cmp(&b.1.im.abs()))
        {
            return Err(Error::NonHermitian { coords: g.coords_of(i), imag: m.im });
        }
        let (worst, min) = raw
            .iter()
            .enumerate()
            .map(|(i, m)| (i, m.re))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty group");
        if min < -tol.positive_definite {
            return Err(Error::NotPositiveDefinite { coords: g.coords_of(worst), mass: min });
        }
        Distribution::from_weights(g, raw.iter().map(|m| m.re.max(0.0)).collect())
    }
}

pub fn char_function(mu: &Distribution) -> CharFunction {
    mu.char_function()
}

pub fn from_char_function(f: &CharFunction, tol: &Tolerances) -> Result<Distribution> {
    f.to_distribution(tol)
}

pub fn convolve(mu: &Distribution, nu: &Distribution) -> Result<Distribution> {
    mu.convolve(nu)
}

pub fn reflect(mu: &Distribution) -> Distribution {
    mu.reflect()
}

pub fn point_mass(x: &Element) -> Distribution {
    Distribution::point_mass(x)
}

pub fn haar(k: &Subgroup<Primal>) -> Distribution {
    Distribution::haar(k)
}

pub fn support(mu: &Distribution) -> Vec<Element> {
    mu.support()
}
