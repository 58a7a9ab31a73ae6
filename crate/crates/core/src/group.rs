//! Finite Abelian groups in product form `Z(n_1) x ... x Z(n_r)`.
//!
//! Every finite Abelian group is isomorphic to its character group, so the
//! dual is carried by the same moduli list. The identification is fixed by
//! the pairing
//!
//! ```text
//! (x, y) = exp(2πi · Σ_i x_i y_i / n_i)
//! ```
//!
//! Elements and characters are distinct types (`Point<Primal>` and
//! `Point<Dual>`) so that a character cannot be fed where an element is
//! expected. Internally both are addressed by a row-major linear index.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num::complex::Complex64;
use num::integer::Integer;

use crate::error::{Error, Result};
use crate::subgroup::Subgroup;

/// Default cap on the number of elements any whole-group scan may visit.
pub const DEFAULT_ENUM_BOUND: u64 = 1_000_000;

#[derive(Clone)]
pub struct Group(Arc<Inner>);

struct Inner {
    moduli: Vec<u64>,
    order: usize,
    strides: Vec<usize>,
    exponent: u64,
    phase_weights: Vec<u64>,
    bound: u64,
    roots: OnceLock<Vec<Complex64>>,
}

impl Group {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        Self::with_bound(moduli, DEFAULT_ENUM_BOUND)
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    /// Builds a group whose order, and every group derived from it, must
    /// stay within `bound` elements.
    pub fn with_bound(moduli: Vec<u64>, bound: u64) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup("empty moduli list".into()));
        }
        if let Some(bad) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!("modulus {bad} is smaller than 2")));
        }
        let mut order: u128 = 1;
        for &n in &moduli {
            order = order.saturating_mul(n as u128);
            if order > bound as u128 {
                return Err(Error::EnumerationBound { order, bound });
            }
        }
        let order = order as usize;
        let mut strides = vec![1usize; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1] as usize;
        }
        let exponent = moduli.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        let phase_weights = moduli.iter().map(|&n| exponent / n).collect();
        Ok(Group(Arc::new(Inner {
            moduli,
            order,
            strides,
            exponent,
            phase_weights,
            bound,
            roots: OnceLock::new(),
        })))
    }

    pub fn moduli(&self) -> &[u64] {
        &self.0.moduli
    }

    pub fn rank(&self) -> usize {
        self.0.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    /// Least common multiple of the moduli: the smallest `e` with `eX = 0`.
    pub fn exponent(&self) -> u64 {
        self.0.exponent
    }

    pub fn enum_bound(&self) -> u64 {
        self.0.bound
    }

    /// `G x H`, with the coordinates of `self` first. The result inherits
    /// the enumeration bound of `self`.
    pub fn product(&self, other: &Group) -> Result<Group> {
        let mut moduli = self.0.moduli.clone();
        moduli.extend_from_slice(&other.0.moduli);
        Group::with_bound(moduli, self.0.bound)
    }

    pub fn power(&self, n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::InvalidGroup("zeroth power of a group".into()));
        }
        let moduli = self.0.moduli.iter().copied().cycle().take(n * self.rank()).collect();
        Group::with_bound(moduli, self.0.bound)
    }

    /// `Some(p)` when every modulus equals the same prime `p`, i.e. every
    /// nonzero element has order `p`.
    pub fn prime_exponent(&self) -> Option<u64> {
        let p = self.0.moduli[0];
        (self.0.moduli.iter().all(|&n| n == p) && is_prime(p)).then_some(p)
    }

    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        Ok(Point::from_index(self, self.index_of_signed(coords)?))
    }

    pub fn character(&self, coords: &[i64]) -> Result<Character> {
        Ok(Point::from_index(self, self.index_of_signed(coords)?))
    }

    pub fn zero<S: Side>(&self) -> Point<S> {
        Point::from_index(self, 0)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(move |i| Point::from_index(self, i))
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order()).map(move |i| Point::from_index(self, i))
    }

    // ---- index-level arithmetic -------------------------------------------

    pub fn index_of(&self, coords: &[u64]) -> Result<usize> {
        if coords.len() != self.rank() {
            return Err(Error::ShapeMismatch { expected: self.rank(), found: coords.len() });
        }
        Ok(coords
            .iter()
            .zip(&self.0.moduli)
            .zip(&self.0.strides)
            .map(|((&c, &n), &s)| (c % n) as usize * s)
            .sum())
    }

    fn index_of_signed(&self, coords: &[i64]) -> Result<usize> {
        if coords.len() != self.rank() {
            return Err(Error::ShapeMismatch { expected: self.rank(), found: coords.len() });
        }
        Ok(coords
            .iter()
            .zip(&self.0.moduli)
            .zip(&self.0.strides)
            .map(|((&c, &n), &s)| c.rem_euclid(n as i64) as usize * s)
            .sum())
    }

    pub fn coords_of(&self, index: usize) -> Vec<u64> {
        (0..self.rank()).map(|i| self.coord(index, i)).collect()
    }

    #[inline]
    fn coord(&self, index: usize, i: usize) -> u64 {
        ((index / self.0.strides[i]) as u64) % self.0.moduli[i]
    }

    pub fn add_idx(&self, x: usize, y: usize) -> usize {
        let mut out = 0;
        for i in 0..self.rank() {
            let n = self.0.moduli[i];
            out += (((self.coord(x, i) + self.coord(y, i)) % n) as usize) * self.0.strides[i];
        }
        out
    }

    pub fn neg_idx(&self, x: usize) -> usize {
        let mut out = 0;
        for i in 0..self.rank() {
            let n = self.0.moduli[i];
            out += (((n - self.coord(x, i)) % n) as usize) * self.0.strides[i];
        }
        out
    }

    pub fn sub_idx(&self, x: usize, y: usize) -> usize {
        self.add_idx(x, self.neg_idx(y))
    }

    /// `a · x`, coordinate-wise modulo each modulus; negative `a` allowed.
    pub fn scale_idx(&self, a: i64, x: usize) -> usize {
        let mut out = 0;
        for i in 0..self.rank() {
            let n = self.0.moduli[i];
            let a = (a as i128).rem_euclid(n as i128) as u64;
            out += ((a * self.coord(x, i) % n) as usize) * self.0.strides[i];
        }
        out
    }

    /// `Σ_i a_i x_i` for index vectors.
    pub fn combine_idx(&self, coeffs: &[i64], xs: &[usize]) -> usize {
        coeffs
            .iter()
            .zip(xs)
            .fold(0, |acc, (&a, &x)| self.add_idx(acc, self.scale_idx(a, x)))
    }

    /// The pairing exponent `k` with `(x, y) = exp(2πi k / exponent)`.
    ///
    /// Exact integer arithmetic: `(x, y) = 1` iff the result is zero.
    pub fn phase(&self, x: usize, y: usize) -> u64 {
        let e = self.0.exponent;
        let mut acc = 0u64;
        for i in 0..self.rank() {
            let n = self.0.moduli[i];
            let t = self.coord(x, i) * self.coord(y, i) % n;
            acc = (acc + t * self.0.phase_weights[i]) % e;
        }
        acc
    }

    pub fn pairing_idx(&self, x: usize, y: usize) -> Complex64 {
        self.roots()[self.phase(x, y) as usize]
    }

    /// The `exponent`-th roots of unity, `roots()[k] = exp(2πi k / exponent)`.
    /// Quarter turns are exact.
    pub fn roots(&self) -> &[Complex64] {
        self.0.roots.get_or_init(|| {
            let e = self.0.exponent;
            (0..e)
                .map(|k| {
                    if (4 * k) % e == 0 {
                        match 4 * k / e {
                            0 => Complex64::new(1.0, 0.0),
                            1 => Complex64::new(0.0, 1.0),
                            2 => Complex64::new(-1.0, 0.0),
                            _ => Complex64::new(0.0, -1.0),
                        }
                    } else {
                        let theta = std::f64::consts::TAU * k as f64 / e as f64;
                        Complex64::new(theta.cos(), theta.sin())
                    }
                })
                .collect()
        })
    }

    pub(crate) fn ensure_same(&self, other: &Group) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroupMismatch { expected: self.to_string(), found: other.to_string() })
        }
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.moduli == other.0.moduli
    }
}

impl Eq for Group {}

impl Hash for Group {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.moduli.hash(state);
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.0.moduli.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z({n})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({self})")
    }
}

/// Parses the literal form `Z(4)xZ(3)`. A power such as `Z(3)^2` is
/// accepted as shorthand for `Z(3)xZ(3)`.
impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_moduli(s).and_then(Group::new)
    }
}

pub fn parse_moduli(s: &str) -> Result<Vec<u64>> {
    let bad = || Error::Parse(format!("bad group literal {s:?}; expected e.g. \"Z(4)xZ(3)\""));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut moduli = Vec::new();
    for factor in compact.split(['x', '×', '*']) {
        let (base, power) = match factor.split_once('^') {
            Some((b, p)) => (b, p.parse::<usize>().map_err(|_| bad())?),
            None => (factor, 1),
        };
        let n = base
            .strip_prefix("Z(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?
            .parse::<u64>()
            .map_err(|_| bad())?;
        moduli.extend(std::iter::repeat_n(n, power));
    }
    Ok(moduli)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

// ---- elements and characters ----------------------------------------------

/// Which side of the duality a point lives on.
pub trait Side: Copy + fmt::Debug + Send + Sync + 'static {
    type Opposite: Side;
    const NAME: &'static str;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Primal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dual;

impl Side for Primal {
    type Opposite = Dual;
    const NAME: &'static str = "element";
}

impl Side for Dual {
    type Opposite = Primal;
    const NAME: &'static str = "character";
}

/// A point of the group (`Primal`) or of its dual (`Dual`).
#[derive(Clone)]
pub struct Point<S: Side> {
    group: Group,
    index: usize,
    _side: PhantomData<S>,
}

pub type Element = Point<Primal>;
pub type Character = Point<Dual>;

impl<S: Side> Point<S> {
    pub fn from_index(group: &Group, index: usize) -> Self {
        debug_assert!(index < group.order());
        Point { group: group.clone(), index, _side: PhantomData }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn coords(&self) -> Vec<u64> {
        self.group.coords_of(self.index)
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        Ok(Self::from_index(&self.group, self.group.add_idx(self.index, other.index)))
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        Ok(Self::from_index(&self.group, self.group.sub_idx(self.index, other.index)))
    }

    pub fn negated(&self) -> Self {
        Self::from_index(&self.group, self.group.neg_idx(self.index))
    }

    pub fn scaled(&self, a: i64) -> Self {
        Self::from_index(&self.group, self.group.scale_idx(a, self.index))
    }

    /// Smallest `k ≥ 1` with `k · self = 0`.
    pub fn order(&self) -> u64 {
        self.group
            .moduli()
            .iter()
            .enumerate()
            .map(|(i, &n)| n / n.gcd(&self.group.coord(self.index, i)))
            .fold(1, |acc, m| acc.lcm(&m))
    }
}

impl<S: Side> PartialEq for Point<S> {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.group == other.group
    }
}

impl<S: Side> Eq for Point<S> {}

impl<S: Side> Hash for Point<S> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.group.hash(state);
        self.index.hash(state);
    }
}

impl<S: Side> fmt::Debug for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?} in {}", S::NAME, self.coords(), self.group)
    }
}

pub fn add<S: Side>(x: &Point<S>, y: &Point<S>) -> Result<Point<S>> {
    x.plus(y)
}

pub fn scalar_mul<S: Side>(a: i64, x: &Point<S>) -> Point<S> {
    x.scaled(a)
}

/// The value `(x, y)` of the character `y` at the element `x`.
pub fn pairing(x: &Element, y: &Character) -> Result<Complex64> {
    x.group.ensure_same(&y.group)?;
    Ok(x.group.pairing_idx(x.index, y.index))
}

/// `X^(a) = aX`.
pub fn endo_image(g: &Group, a: i64) -> Subgroup<Primal> {
    Subgroup::image(g, a)
}

/// `X_(a) = ker(x ↦ ax)`.
pub fn endo_kernel(g: &Group, a: i64) -> Subgroup<Primal> {
    Subgroup::kernel(g, a)
}

/// An integer `a` is admissible for `X` when `aX ≠ {0}`, that is, when
/// some modulus does not divide `a`.
pub fn is_admissible(g: &Group, a: i64) -> bool {
    g.moduli().iter().any(|&n| (a as i128).rem_euclid(n as i128) != 0)
}

/// `A(X, H)` for a subgroup `H` of the dual.
pub fn annihilator(g: &Group, h: &Subgroup<Dual>) -> Result<Subgroup<Primal>> {
    g.ensure_same(h.parent())?;
    Ok(h.annihilator())
}

pub fn subgroup_generated(g: &Group, gens: &[Element]) -> Result<Subgroup<Primal>> {
    Subgroup::generated(g, gens)
}
