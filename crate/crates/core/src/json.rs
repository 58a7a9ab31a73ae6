//! JSON formats for groups, distributions, instances and functions, and
//! canonical report output.
//!
//! A group is either a literal string such as `"Z(4)xZ(3)"` or
//! `{"moduli": [4, 3]}`. A mass is a number or an exact `"p/q"` string.
//! Distributions take one of these shapes (`group` may be omitted inside an
//! instance, where the instance group is used):
//!
//! ```json
//! {"group": "Z(3)", "probs": [{"coords": [0], "mass": "2/3"}, {"coords": [1], "mass": "1/3"}]}
//! {"kind": "point_mass", "at": [2]}
//! {"kind": "haar", "generators": [[3]]}
//! {"kind": "uniform"}
//! {"kind": "mixture", "components": [{"weight": 0.5, "distribution": {"kind": "uniform"}}]}
//! ```
//!
//! Listed masses must sum to one unless `"normalize": true`. When every mass
//! is an exact string the normalization is done in rational arithmetic.

use num::complex::Complex64;
use num::{BigInt, BigRational, Zero};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::counterexamples::Instance;
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::finite_difference::GroupFunction;
use crate::group::{parse_moduli, Element, Group};
use crate::heyde::LinearFormsSpec;
use crate::subgroup::Subgroup;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Literal(String),
    Moduli { moduli: Vec<u64> },
}

impl GroupSpec {
    pub fn build(&self, bound: u64) -> Result<Group> {
        let moduli = match self {
            GroupSpec::Literal(s) => parse_moduli(s)?,
            GroupSpec::Moduli { moduli } => moduli.clone(),
        };
        Group::with_bound(moduli, bound)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Mass {
    Number(f64),
    Exact(String),
}

impl Mass {
    fn rational(&self) -> Result<Option<BigRational>> {
        match self {
            Mass::Number(_) => Ok(None),
            Mass::Exact(s) => parse_rational(s).map(Some),
        }
    }

    fn value(&self) -> Result<f64> {
        match self {
            Mass::Number(x) => Ok(*x),
            Mass::Exact(s) => {
                let r = parse_rational(s)?;
                Ok(num::ToPrimitive::to_f64(&r).unwrap_or(f64::NAN))
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}; expected \"p/q\" or an integer"));
    let (p, q) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassEntry {
    pub coords: Vec<i64>,
    pub mass: Mass,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub weight: Mass,
    pub distribution: DistributionSpec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionSpec {
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub kind: Option<String>,
    #[serde(default)]
    pub probs: Option<Vec<MassEntry>>,
    #[serde(default)]
    pub normalize: bool,
    #[serde(default)]
    pub at: Option<Vec<i64>>,
    #[serde(default)]
    pub generators: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub components: Option<Vec<Component>>,
}

impl DistributionSpec {
    /// Builds the distribution on its own group, or on `outer` when none is
    /// given. A stated group must match `outer`.
    pub fn build(&self, outer: Option<&Group>, bound: u64) -> Result<Distribution> {
        let g = match (&self.group, outer) {
            (Some(spec), Some(outer)) => {
                let g = spec.build(bound)?;
                outer.ensure_same(&g)?;
                g
            }
            (Some(spec), None) => spec.build(bound)?,
            (None, Some(outer)) => outer.clone(),
            (None, None) => return Err(Error::Parse("distribution has no group".into())),
        };
        let kind = match (&self.kind, &self.probs) {
            (Some(k), _) => k.as_str(),
            (None, Some(_)) => "masses",
            (None, None) => return Err(Error::Parse("distribution needs \"probs\" or \"kind\"".into())),
        };
        let missing = |field: &str| Error::Parse(format!("kind {kind:?} needs field {field:?}"));
        match kind {
            "masses" => masses(&g, self.probs.as_deref().ok_or_else(|| missing("probs"))?, self.normalize),
            "point_mass" => Ok(Distribution::point_mass(&g.element(self.at.as_deref().ok_or_else(|| missing("at"))?)?)),
            "haar" => {
                let gens = self.generators.as_ref().ok_or_else(|| missing("generators"))?;
                let gens = gens.iter().map(|c| g.element(c)).collect::<Result<Vec<Element>>>()?;
                Ok(Distribution::haar(&Subgroup::generated(&g, &gens)?))
            }
            "uniform" => Ok(Distribution::uniform(&g)),
            "mixture" => {
                let comps = self.components.as_ref().ok_or_else(|| missing("components"))?;
                let built = comps
                    .iter()
                    .map(|c| Ok((c.weight.value()?, c.distribution.build(Some(&g), bound)?)))
                    .collect::<Result<Vec<_>>>()?;
                let refs: Vec<(f64, &Distribution)> = built.iter().map(|(w, d)| (*w, d)).collect();
                Distribution::mixture(&refs)
            }
            other => Err(Error::Parse(format!(
                "unknown distribution kind {other:?}; expected masses, point_mass, haar, uniform or mixture"
            ))),
        }
    }
}

fn masses(g: &Group, entries: &[MassEntry], normalize: bool) -> Result<Distribution> {
    let mut seen = vec![false; g.order()];
    let mut slots = Vec::with_capacity(entries.len());
    for e in entries {
        let idx = g.element(&e.coords)?.index();
        if std::mem::replace(&mut seen[idx], true) {
            return Err(Error::Parse(format!("coordinates {:?} listed twice", e.coords)));
        }
        slots.push(idx);
    }
    let exact = entries.iter().map(|e| e.mass.rational()).collect::<Result<Vec<_>>>()?;
    if exact.iter().all(Option::is_some) && !entries.is_empty() {
        let mut weights = vec![BigRational::zero(); g.order()];
        let mut total = BigRational::zero();
        for (&i, w) in slots.iter().zip(exact.into_iter().flatten()) {
            total += &w;
            weights[i] = w;
        }
        if !normalize && total != BigRational::from_integer(1.into()) {
            return Err(Error::InvalidDistribution(format!("masses sum to {total}, not 1")));
        }
        return Distribution::from_rational_weights(g, &weights);
    }
    let mut probs = vec![0.0; g.order()];
    for (&i, e) in slots.iter().zip(entries) {
        probs[i] = e.mass.value()?;
    }
    if normalize {
        Distribution::from_weights(g, probs)
    } else {
        Distribution::new(g, probs)
    }
}

/// Extra fields are ignored so that constructed instances can be fed back in.
#[derive(Clone, Debug, Deserialize)]
pub struct InstanceSpec {
    pub group: GroupSpec,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub distributions: Vec<DistributionSpec>,
}

#[derive(Clone, Debug)]
pub struct ParsedInstance {
    pub group: Group,
    pub spec: LinearFormsSpec,
    pub distributions: Vec<Distribution>,
}

fn from_text<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_instance(text: &str, bound: u64) -> Result<ParsedInstance> {
    let raw: InstanceSpec = from_text(text)?;
    let group = raw.group.build(bound)?;
    let spec = LinearFormsSpec::new(raw.a, raw.b)?;
    let distributions = raw
        .distributions
        .iter()
        .map(|d| d.build(Some(&group), bound))
        .collect::<Result<Vec<_>>>()?;
    if distributions.len() != spec.n() {
        return Err(Error::InvalidLinearForms(format!(
            "{} coefficients but {} distributions",
            spec.n(),
            distributions.len()
        )));
    }
    Ok(ParsedInstance { group, spec, distributions })
}

pub fn parse_distribution(text: &str, bound: u64) -> Result<Distribution> {
    from_text::<DistributionSpec>(text)?.build(None, bound)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionEntry {
    coords: Vec<i64>,
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionSpec {
    group: GroupSpec,
    values: Vec<FunctionEntry>,
}

/// `{"group": ..., "values": [{"coords": [..], "re": x, "im": y}]}`; points
/// not listed are zero, and an empty list is rejected.
pub fn parse_function(text: &str, bound: u64) -> Result<GroupFunction> {
    let raw: FunctionSpec = from_text(text)?;
    if raw.values.is_empty() {
        return Err(Error::Parse("function has no values".into()));
    }
    let g = raw.group.build(bound)?;
    let mut values = vec![Complex64::zero(); g.order()];
    let mut seen = vec![false; g.order()];
    for e in &raw.values {
        let idx = g.character(&e.coords)?.index();
        if std::mem::replace(&mut seen[idx], true) {
            return Err(Error::Parse(format!("coordinates {:?} listed twice", e.coords)));
        }
        values[idx] = Complex64::new(e.re, e.im);
    }
    GroupFunction::new(&g, values)
}

impl Serialize for Group {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Serialize)]
struct MassOut {
    coords: Vec<u64>,
    mass: f64,
}

/// Lists every point with positive mass.
impl Serialize for Distribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            group: &'a Group,
            probs: Vec<MassOut>,
        }
        let g = self.group();
        let probs = self
            .probs()
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, &mass)| MassOut { coords: g.coords_of(i), mass })
            .collect();
        Out { group: g, probs }.serialize(s)
    }
}

impl Serialize for Instance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            kind: &'a str,
            group: &'a Group,
            a: &'a [i64],
            b: &'a [i64],
            distributions: &'a [Distribution],
            checks: &'a [crate::counterexamples::Check],
            all_checks_passed: bool,
            warnings: &'a [String],
        }
        Out {
            kind: self.kind,
            group: &self.group,
            a: self.spec.a(),
            b: self.spec.b(),
            distributions: &self.distributions,
            checks: &self.checks,
            all_checks_passed: self.all_passed(),
            warnings: &self.warnings,
        }
        .serialize(s)
    }
}

/// Rounds every float to 15 significant digits and maps `-0` to `0`.
/// Object keys come out sorted, so equal inputs give equal text.
pub fn canonicalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(0.0);
            let r: f64 = format!("{x:.14e}").parse().unwrap_or(x);
            let r = if r == 0.0 { 0.0 } else { r };
            serde_json::Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, canonicalize(v))).collect()),
        other => other,
    }
}

pub fn to_canonical_value(x: &impl Serialize) -> Result<Value> {
    serde_json::to_value(x).map(canonicalize).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_canonical_string(x: &impl Serialize) -> Result<String> {
    let v = to_canonical_value(x)?;
    serde_json::to_string_pretty(&v).map_err(|e| Error::Parse(e.to_string()))
}
