use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::heyde::LinearFormsSpec;

/// Law of `(L_1, L_2)` on `X × X`, indexed `l_1·|X| + l_2`.
#[derive(Clone, Debug)]
pub struct JointLaw {
    base: Group,
    square: Group,
    probs: Vec<f64>,
}

impl JointLaw {
    pub fn base(&self) -> &Group {
        &self.base
    }

    /// `X × X`.
    pub fn group(&self) -> &Group {
        &self.square
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn mass(&self, l1: &Element, l2: &Element) -> f64 {
        self.probs[l1.index() * self.base.order() + l2.index()]
    }

    /// Law of `(L_1, −L_2)`.
    pub fn negate_second(&self) -> JointLaw {
        let n = self.base.order();
        let mut probs = vec![0.0; self.probs.len()];
        for (i, &p) in self.probs.iter().enumerate() {
            probs[(i / n) * n + self.base.neg_idx(i % n)] = p;
        }
        JointLaw { base: self.base.clone(), square: self.square.clone(), probs }
    }

    pub fn total_variation(&self, other: &JointLaw) -> Result<f64> {
        self.base.ensure_same(&other.base)?;
        Ok(0.5 * self.probs.iter().zip(&other.probs).map(|(p, q)| (p - q).abs()).sum::<f64>())
    }

    /// Cell `(l_1, l_2)` where the two laws differ most; ties go to the
    /// smallest index.
    pub fn largest_discrepancy(&self, other: &JointLaw) -> (usize, usize) {
        let mut best = (0, f64::NEG_INFINITY);
        for (i, (p, q)) in self.probs.iter().zip(&other.probs).enumerate() {
            let d = (p - q).abs();
            if d > best.1 {
                best = (i, d);
            }
        }
        let n = self.base.order();
        (best.0 / n, best.0 % n)
    }

    pub fn first_marginal(&self) -> Distribution {
        self.marginal(|i, n| i / n)
    }

    pub fn second_marginal(&self) -> Distribution {
        self.marginal(|i, n| i % n)
    }

    fn marginal(&self, pick: impl Fn(usize, usize) -> usize) -> Distribution {
        let n = self.base.order();
        let mut probs = vec![0.0; n];
        for (i, &p) in self.probs.iter().enumerate() {
            probs[pick(i, n)] += p;
        }
        Distribution::from_weights(&self.base, probs).expect("marginal of a probability law")
    }
}

/// Exact law of `(L_1, L_2)`, folding in one `ξ_j` at a time. Cost is
/// `O(n · |X|² · |supp μ_j|)`.
pub fn joint_law(g: &Group, spec: &LinearFormsSpec, mus: &[Distribution]) -> Result<JointLaw> {
    spec.validate(g, mus)?;
    let square = g.product(g)?;
    let n = g.order();
    let mut state = vec![0.0; n * n];
    state[0] = 1.0;
    for (j, mu) in mus.iter().enumerate() {
        let moves: Vec<(usize, usize, f64)> = mu
            .probs()
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(x, &p)| (g.scale_idx(spec.a()[j], x), g.scale_idx(spec.b()[j], x), p))
            .collect();
        let mut next = vec![0.0; n * n];
        for (s, &p) in state.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let (s1, s2) = (s / n, s % n);
            for &(ax, bx, q) in &moves {
                next[g.add_idx(s1, ax) * n + g.add_idx(s2, bx)] += p * q;
            }
        }
        state = next;
    }
    Ok(JointLaw { base: g.clone(), square, probs: state })
}

/// The same law by walking every point of `X^n`. Only for cross-checking
/// small instances; `|X|^n` must stay within the enumeration bound.
pub fn joint_law_enumerated(g: &Group, spec: &LinearFormsSpec, mus: &[Distribution]) -> Result<JointLaw> {
    spec.validate(g, mus)?;
    let square = g.product(g)?;
    let n = g.order();
    let total = (n as u128).checked_pow(mus.len() as u32).unwrap_or(u128::MAX);
    if total > g.enum_bound() as u128 {
        return Err(Error::EnumerationBound { order: total, bound: g.enum_bound() });
    }
    let mut probs = vec![0.0; n * n];
    let mut xs = vec![0usize; mus.len()];
    loop {
        let p: f64 = xs.iter().zip(mus).map(|(&x, mu)| mu.probs()[x]).product();
        if p > 0.0 {
            let l1 = g.combine_idx(spec.a(), &xs);
            let l2 = g.combine_idx(spec.b(), &xs);
            probs[l1 * n + l2] += p;
        }
        let mut pos = xs.len();
        loop {
            if pos == 0 {
                return Ok(JointLaw { base: g.clone(), square, probs });
            }
            pos -= 1;
            xs[pos] += 1;
            if xs[pos] < n {
                break;
            }
            xs[pos] = 0;
        }
    }
}
