//! Matching-degree functions.
//!
//! Every partial score lies in `[0, 1]`, 0 meaning total mismatch and 1 a
//! perfect match:
//!
//! * numeric attributes use a fuzzy step membership over the searched
//!   interval ([`fuzzy_step`], [`match_numeric`]);
//! * discrete attributes use the characteristic function of the searched set
//!   ([`match_discrete`]);
//! * fields of interest use the asymmetric rational function [`phi`], clamped
//!   at zero ([`match_interest`]).
//!
//! [`total_degree`] combines them into the weighted mean over the items of
//! the search profile.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::{DiscreteSet, InterestLevel, NumericRange, Profile};

/// Relative width `e` of the linear transition region at each edge of a
/// searched interval. Strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct FuzzyLevel(f64);

impl FuzzyLevel {
    pub const DEFAULT: FuzzyLevel = FuzzyLevel(0.1);

    pub fn new(e: f64) -> Result<Self> {
        if e > 0.0 && e < 1.0 {
            Ok(FuzzyLevel(e))
        } else {
            Err(Error::InvalidFuzzyLevel(e))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for FuzzyLevel {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl TryFrom<f64> for FuzzyLevel {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        FuzzyLevel::new(value)
    }
}

impl From<FuzzyLevel> for f64 {
    fn from(value: FuzzyLevel) -> Self {
        value.0
    }
}

/// Fuzzy step membership `h_e(x; a, b)`.
///
/// The value is 1 on `(a, b]`, rises linearly from 0 at `a - e|a|` to 1 at
/// `a`, falls linearly from 1 at `b` to 0 at `b + e|b|`, and is 0 elsewhere.
/// For `a > 0` and `b > 0` the ramps are exactly `x/(ae) - (1-e)/e` and
/// `(1+e)/e - x/(be)`. A zero endpoint has a zero-width ramp (hard step).
/// An infinite endpoint has no ramp on that side, so `a = -inf` gives 1 for
/// every `x <= b` and `b = +inf` gives 1 for every `x > a`, including
/// `x = +inf`.
pub fn fuzzy_step(x: f64, a: f64, b: f64, e: FuzzyLevel) -> Result<f64> {
    if a.is_nan() || b.is_nan() || a > b {
        return Err(Error::InvalidStepBounds { a, b });
    }
    if x.is_nan() {
        return Err(Error::InvalidStepBounds { a: x, b: x });
    }
    Ok(step(x, a, b, e.value()))
}

// Caller guarantees a <= b and no NaN.
fn step(x: f64, a: f64, b: f64, e: f64) -> f64 {
    if x > b {
        if b == f64::INFINITY {
            return 1.0;
        }
        let width = e * b.abs();
        let foot = b + width;
        if width == 0.0 || x >= foot {
            return 0.0;
        }
        return (1.0 - (x - b) / width).clamp(0.0, 1.0);
    }
    if x > a || a == f64::NEG_INFINITY {
        return 1.0;
    }
    // x <= a, a finite
    let width = e * a.abs();
    let foot = a - width;
    if width == 0.0 || x <= foot {
        return 0.0;
    }
    (1.0 - (a - x) / width).clamp(0.0, 1.0)
}

/// Matching degree of a searched range against an advertised range:
/// `max[h_e(b_a; a_s, b_s), h_e(b_s; a_a, b_a)]`.
///
/// Both terms are evaluated at the upper endpoints. An empty range on either
/// side scores 0.
pub fn match_numeric(search: &NumericRange, advert: &NumericRange, e: FuzzyLevel) -> f64 {
    let (Some((a_s, b_s)), Some((a_a, b_a))) = (search.bounds(), advert.bounds()) else {
        return 0.0;
    };
    let e = e.value();
    step(b_a, a_s, b_s, e).max(step(b_s, a_a, b_a, e))
}

/// Characteristic function of the searched set at the advertised value.
pub fn match_discrete(search: &DiscreteSet, advert_value: &str) -> f64 {
    if search.contains(advert_value) {
        1.0
    } else {
        0.0
    }
}

/// The constant `c = (1 + sqrt 7) / 2` of the interest matching function.
pub fn interest_constant() -> f64 {
    (1.0 + 7f64.sqrt()) / 2.0
}

/// `phi(x, y) = 1 - (c^2 - 1)(x - y)^2 / (c^2 - 2 + (x - c y)^2)`.
///
/// On `[-1, 1]^2` the denominator is at least `c^2 - 2 > 0` and the result
/// never exceeds 1. It can be negative, which [`match_interest`] clamps.
pub fn phi(x: f64, y: f64) -> f64 {
    let c = interest_constant();
    let c2 = c * c;
    let d = x - y;
    let skew = x - c * y;
    1.0 - (c2 - 1.0) * d * d / (c2 - 2.0 + skew * skew)
}

/// Matching degree of a searched interest level against an advertised one,
/// `max[phi(l_s, l_a), 0]`.
///
/// It is 1 on the diagonal, 1/2 when the searcher is indifferent and the
/// advertiser is at either extreme, and 0 when the searcher is at an extreme
/// and the advertiser indifferent. It is asymmetric and even.
pub fn match_interest(search: InterestLevel, advert: InterestLevel) -> f64 {
    phi(search.value(), advert.value()).max(0.0)
}

/// Per-item weights. Names not listed weigh 1.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    #[serde(default)]
    numeric: BTreeMap<String, f64>,
    #[serde(default)]
    discrete: BTreeMap<String, f64>,
    #[serde(default)]
    interest: BTreeMap<String, f64>,
}

impl Weights {
    pub fn new(
        numeric: BTreeMap<String, f64>,
        discrete: BTreeMap<String, f64>,
        interest: BTreeMap<String, f64>,
    ) -> Result<Self> {
        let w = Weights { numeric, discrete, interest };
        w.check()?;
        Ok(w)
    }

    pub fn check(&self) -> Result<()> {
        for (name, &value) in self.numeric.iter().chain(&self.discrete).chain(&self.interest) {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidWeight { name: name.clone(), value });
            }
        }
        Ok(())
    }

    pub fn with(mut self, kind: ItemKind, name: &str, weight: f64) -> Result<Self> {
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(Error::InvalidWeight { name: name.to_owned(), value: weight });
        }
        self.map_mut(kind).insert(name.trim().to_owned(), weight);
        Ok(self)
    }

    pub fn get(&self, kind: ItemKind, name: &str) -> f64 {
        self.map(kind).get(name).copied().unwrap_or(1.0)
    }

    /// Multiply every explicit weight by `factor`. Implicit weights stay 1,
    /// so only a fully explicit weight set is rescaled uniformly.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let scale = |m: &BTreeMap<String, f64>| m.iter().map(|(k, v)| (k.clone(), v * factor)).collect();
        Weights::new(scale(&self.numeric), scale(&self.discrete), scale(&self.interest))
    }

    fn map(&self, kind: ItemKind) -> &BTreeMap<String, f64> {
        match kind {
            ItemKind::Numeric => &self.numeric,
            ItemKind::Discrete => &self.discrete,
            ItemKind::Interest => &self.interest,
        }
    }

    fn map_mut(&mut self, kind: ItemKind) -> &mut BTreeMap<String, f64> {
        match kind {
            ItemKind::Numeric => &mut self.numeric,
            ItemKind::Discrete => &mut self.discrete,
            ItemKind::Interest => &mut self.interest,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MatchConfig {
    pub fuzzy: FuzzyLevel,
    pub weights: Weights,
}

impl MatchConfig {
    pub fn with_fuzzy(mut self, fuzzy: FuzzyLevel) -> Self {
        self.fuzzy = fuzzy;
        self
    }

    pub fn with_weights(mut self, weights: Weights) -> Self {
        self.weights = weights;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemKind {
    Numeric,
    Discrete,
    Interest,
}

impl fmt::Display for ItemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ItemKind::Numeric => "numeric",
            ItemKind::Discrete => "discrete",
            ItemKind::Interest => "interest",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ItemScore {
    pub kind: ItemKind,
    pub partial: f64,
    pub weight: f64,
}

/// Partial score of every searched item plus the weighted total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreBreakdown {
    pub per_item: BTreeMap<String, ItemScore>,
    pub total: f64,
    /// Notes about items that could not be compared (kind mismatch,
    /// non-singleton advertised set). Not part of the wire format.
    #[serde(skip)]
    pub diagnostics: Vec<String>,
}

/// Total matching degree of `advert` with respect to `search`.
///
/// Only the items of the search profile count. A searched attribute the
/// advert lacks scores 0; a searched interest the advert lacks is compared
/// against indifference (level 0). The total is
/// `sum w(p) partial(p) / sum w(p)` over all searched items.
pub fn total_degree(search: &Profile, advert: &Profile, config: &MatchConfig) -> Result<ScoreBreakdown> {
    if search.is_empty() {
        return Err(Error::EmptySearchProfile);
    }
    let e = config.fuzzy;
    let mut per_item = BTreeMap::new();
    let mut diagnostics = Vec::new();

    let kind_mismatch = |name: &str, searched: ItemKind, diagnostics: &mut Vec<String>| {
        let found = if advert.numeric().contains_key(name) {
            Some(ItemKind::Numeric)
        } else if advert.discrete().contains_key(name) {
            Some(ItemKind::Discrete)
        } else if advert.interests().contains_key(name) {
            Some(ItemKind::Interest)
        } else {
            None
        };
        if let Some(found) = found.filter(|&k| k != searched) {
            diagnostics.push(format!(
                "{name}: searched as {searched} but advertised as {found}; scored 0"
            ));
        }
    };

    for (name, range) in search.numeric() {
        let partial = match advert.numeric().get(name) {
            Some(offer) => match_numeric(range, offer, e),
            None => {
                kind_mismatch(name, ItemKind::Numeric, &mut diagnostics);
                0.0
            }
        };
        let weight = config.weights.get(ItemKind::Numeric, name);
        per_item.insert(name.clone(), ItemScore { kind: ItemKind::Numeric, partial, weight });
    }

    for (name, set) in search.discrete() {
        let partial = match advert.discrete().get(name) {
            Some(offer) if offer.is_empty() => 0.0,
            Some(offer) => match offer.as_singleton() {
                Some(value) => match_discrete(set, value),
                None => {
                    diagnostics.push(format!(
                        "{name}: advertised set {offer} is not a single value; scored 0"
                    ));
                    0.0
                }
            },
            None => {
                kind_mismatch(name, ItemKind::Discrete, &mut diagnostics);
                0.0
            }
        };
        let weight = config.weights.get(ItemKind::Discrete, name);
        per_item.insert(name.clone(), ItemScore { kind: ItemKind::Discrete, partial, weight });
    }

    for (name, &level) in search.interests() {
        let offered = match advert.interests().get(name) {
            Some(&l) => l,
            None => {
                kind_mismatch(name, ItemKind::Interest, &mut diagnostics);
                InterestLevel::INDIFFERENT
            }
        };
        let partial = match_interest(level, offered);
        let weight = config.weights.get(ItemKind::Interest, name);
        per_item.insert(name.clone(), ItemScore { kind: ItemKind::Interest, partial, weight });
    }

    let (weighted, weight_total) = per_item
        .values()
        .fold((0.0, 0.0), |(sum, wsum), s| (sum + s.weight * s.partial, wsum + s.weight));
    let total = (weighted / weight_total).clamp(0.0, 1.0);

    Ok(ScoreBreakdown { per_item, total, diagnostics })
}
