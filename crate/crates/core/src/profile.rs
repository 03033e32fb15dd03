//! Profile data model: owners, attribute stencils and fields of interest.
//!
//! A [`Profile`] is used both for searching and for advertising. What it
//! means depends on the [`Role`] it is stored or queried under: a search
//! profile holds desired ranges and levels, an advertising profile holds the
//! owner's own values (one value per discrete attribute).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct OwnerId(String);

impl OwnerId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.trim().is_empty() {
            return Err(Error::EmptyOwner);
        }
        Ok(OwnerId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for OwnerId {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        OwnerId::new(value)
    }
}

impl From<OwnerId> for String {
    fn from(value: OwnerId) -> Self {
        value.0
    }
}

impl fmt::Display for OwnerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&self.0)
    }
}

impl FromStr for OwnerId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OwnerId::new(s)
    }
}

/// Whether a profile describes what its owner looks for or what it offers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Search,
    Advertising,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Search => "search",
            Role::Advertising => "advertising",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "search" => Ok(Role::Search),
            "advertising" => Ok(Role::Advertising),
            other => Err(format!("unknown role {other:?}, expected \"search\" or \"advertising\"")),
        }
    }
}

/// Closed interval `[lower, upper]` over the extended reals, or the empty
/// null range.
///
/// There are no open intervals: `p > x` is read as `[x, +inf]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NumericRange {
    Empty,
    Closed { lower: f64, upper: f64 },
}

impl NumericRange {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        let reason = if lower.is_nan() || upper.is_nan() {
            Some("endpoints must not be NaN")
        } else if lower > upper {
            Some("lower bound exceeds upper bound")
        } else if lower == f64::INFINITY {
            Some("lower bound must not be +inf")
        } else if upper == f64::NEG_INFINITY {
            Some("upper bound must not be -inf")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidRange { lower, upper, reason }),
            None => Ok(NumericRange::Closed { lower, upper }),
        }
    }

    /// The degenerate range `[x, x]`.
    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    /// `[x, +inf]`.
    pub fn at_least(x: f64) -> Result<Self> {
        Self::new(x, f64::INFINITY)
    }

    /// `[-inf, x]`.
    pub fn at_most(x: f64) -> Result<Self> {
        Self::new(f64::NEG_INFINITY, x)
    }

    pub fn unbounded() -> Self {
        NumericRange::Closed {
            lower: f64::NEG_INFINITY,
            upper: f64::INFINITY,
        }
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        match *self {
            NumericRange::Empty => None,
            NumericRange::Closed { lower, upper } => Some((lower, upper)),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, NumericRange::Empty)
    }

    pub fn contains(&self, x: f64) -> bool {
        match *self {
            NumericRange::Empty => false,
            NumericRange::Closed { lower, upper } => lower <= x && x <= upper,
        }
    }
}

impl fmt::Display for NumericRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NumericRange::Empty => f.write_str("{}"),
            NumericRange::Closed { lower, upper } => write!(f, "[{lower}, {upper}]"),
        }
    }
}

/// Finite set of discrete values; exact, case-sensitive membership.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiscreteSet(BTreeSet<String>);

impl DiscreteSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(value: impl Into<String>) -> Self {
        DiscreteSet(BTreeSet::from([value.into()]))
    }

    pub fn contains(&self, value: &str) -> bool {
        self.0.contains(value)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The single value of an advertised attribute, if this set has exactly one.
    pub fn as_singleton(&self) -> Option<&str> {
        if self.0.len() == 1 {
            self.0.iter().next().map(String::as_str)
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

impl<S: Into<String>> FromIterator<S> for DiscreteSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        DiscreteSet(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for DiscreteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(v)?;
        }
        f.write_str("}")
    }
}

/// Level of interest in a field: -1 aversion, 0 indifference, 1 enthusiasm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct InterestLevel(f64);

impl InterestLevel {
    pub const INDIFFERENT: InterestLevel = InterestLevel(0.0);

    pub fn new(level: f64) -> Result<Self> {
        if (-1.0..=1.0).contains(&level) {
            Ok(InterestLevel(level))
        } else {
            Err(Error::LevelOutOfRange(level))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Attribute stencils and interest fields of one owner.
///
/// Names are trimmed on insertion. Inserting a name into one map does not
/// remove it from the others; [`validate_profile`] reports such collisions.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    owner: OwnerId,
    numeric: BTreeMap<String, NumericRange>,
    discrete: BTreeMap<String, DiscreteSet>,
    interests: BTreeMap<String, InterestLevel>,
}

impl Profile {
    pub fn new(owner: OwnerId) -> Self {
        Profile {
            owner,
            numeric: BTreeMap::new(),
            discrete: BTreeMap::new(),
            interests: BTreeMap::new(),
        }
    }

    pub fn with_numeric(mut self, name: &str, range: NumericRange) -> Self {
        self.set_numeric(name, range);
        self
    }

    pub fn with_discrete(mut self, name: &str, values: DiscreteSet) -> Self {
        self.set_discrete(name, values);
        self
    }

    pub fn with_interest(mut self, field: &str, level: InterestLevel) -> Self {
        self.set_interest(field, level);
        self
    }

    pub fn set_numeric(&mut self, name: &str, range: NumericRange) -> Option<NumericRange> {
        self.numeric.insert(name.trim().to_owned(), range)
    }

    pub fn set_discrete(&mut self, name: &str, values: DiscreteSet) -> Option<DiscreteSet> {
        self.discrete.insert(name.trim().to_owned(), values)
    }

    pub fn set_interest(&mut self, field: &str, level: InterestLevel) -> Option<InterestLevel> {
        self.interests.insert(field.trim().to_owned(), level)
    }

    pub fn owner(&self) -> &OwnerId {
        &self.owner
    }

    pub fn numeric(&self) -> &BTreeMap<String, NumericRange> {
        &self.numeric
    }

    pub fn discrete(&self) -> &BTreeMap<String, DiscreteSet> {
        &self.discrete
    }

    pub fn interests(&self) -> &BTreeMap<String, InterestLevel> {
        &self.interests
    }

    /// Number of attribute stencils plus interest fields.
    pub fn item_count(&self) -> usize {
        self.numeric.len() + self.discrete.len() + self.interests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.item_count() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Issue {
    pub path: String,
    pub message: String,
}

/// All invariant violations found in a profile. `ok` holds iff there are none.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport { ok: true, issues: Vec::new() }
    }

    pub fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.issues.push(Issue {
            path: path.into(),
            message: message.into(),
        });
        self.ok = false;
    }

    pub fn merge(&mut self, other: ValidationReport) {
        for issue in other.issues {
            self.push(issue.path, issue.message);
        }
    }

    /// Prefix every issue path, e.g. with `profiles[3]`.
    pub fn nested(mut self, prefix: &str) -> Self {
        for issue in &mut self.issues {
            issue.path = if issue.path.is_empty() {
                prefix.to_owned()
            } else {
                format!("{prefix}.{}", issue.path)
            };
        }
        self
    }

    pub fn first_path(&self) -> Option<&str> {
        self.issues.first().map(|i| i.path.as_str())
    }

    pub fn into_result(self, role: Role) -> Result<()> {
        if self.ok {
            Ok(())
        } else {
            Err(Error::Invalid { role, report: self })
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}: {}", issue.path, issue.message)?;
        }
        Ok(())
    }
}

pub(crate) const NON_SINGLETON: &str = "advertised discrete attribute must be singleton";

/// Check a typed profile against the invariants of `role`.
///
/// Violations are collected, never raised. Value-level checks (levels,
/// interval bounds) are enforced by the value types themselves; see
/// [`crate::document::validate_document`] for raw documents.
pub fn validate_profile(profile: &Profile, role: Role) -> ValidationReport {
    let mut report = ValidationReport::new();

    let sections: [(&str, Vec<&String>); 3] = [
        ("numeric", profile.numeric.keys().collect()),
        ("discrete", profile.discrete.keys().collect()),
        ("interests", profile.interests.keys().collect()),
    ];
    let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
    for (section, names) in &sections {
        for name in names {
            if name.is_empty() {
                report.push(format!("{section}.{name}"), "name must not be empty");
                continue;
            }
            if let Some(first) = seen.insert(name.as_str(), section) {
                report.push(
                    format!("{section}.{name}"),
                    format!("name already used in {first}"),
                );
            }
        }
    }

    if role == Role::Advertising {
        for (name, set) in &profile.discrete {
            if set.len() > 1 {
                report.push(format!("discrete.{name}"), NON_SINGLETON);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn owner(id: &str) -> OwnerId {
        OwnerId::new(id).unwrap()
    }

    #[test]
    fn owner_rejects_blank() {
        assert!(OwnerId::new("   ").is_err());
        assert!(OwnerId::new("").is_err());
        assert_eq!(OwnerId::new("194.94.2.21").unwrap().as_str(), "194.94.2.21");
        assert_ne!(owner("alice"), owner("Alice"));
    }

    #[test]
    fn range_construction() {
        assert!(NumericRange::new(2.0, 1.0).is_err());
        assert!(NumericRange::new(f64::NAN, 1.0).is_err());
        assert!(NumericRange::new(f64::INFINITY, f64::INFINITY).is_err());
        assert!(NumericRange::new(f64::NEG_INFINITY, f64::NEG_INFINITY).is_err());
        let r = NumericRange::at_least(180.0).unwrap();
        assert_eq!(r.bounds(), Some((180.0, f64::INFINITY)));
        assert!(r.contains(180.0));
        assert!(!r.contains(179.9));
        assert!(!NumericRange::Empty.contains(0.0));
    }

    #[test]
    fn level_rejects_out_of_range() {
        assert!(InterestLevel::new(1.3).is_err());
        assert!(InterestLevel::new(-1.0001).is_err());
        assert!(InterestLevel::new(f64::NAN).is_err());
        assert_eq!(InterestLevel::new(-1.0).unwrap().value(), -1.0);
    }

    #[test]
    fn alice_advert_is_valid() {
        let alice = Profile::new(owner("Alice"))
            .with_numeric("age", NumericRange::point(25.0).unwrap())
            .with_numeric("height", NumericRange::point(165.0).unwrap())
            .with_interest("tennis", InterestLevel::new(1.0).unwrap())
            .with_interest("chess", InterestLevel::new(0.5).unwrap())
            .with_interest("basketball", InterestLevel::new(0.5).unwrap());
        let report = validate_profile(&alice, Role::Advertising);
        assert!(report.ok, "{report}");
        assert_eq!(alice.item_count(), 5);
    }

    #[test]
    fn advert_discrete_must_be_singleton() {
        let p = Profile::new(owner("Eve"))
            .with_discrete("eye_color", ["blue", "green"].into_iter().collect());
        assert!(validate_profile(&p, Role::Search).ok);
        let report = validate_profile(&p, Role::Advertising);
        assert!(!report.ok);
        assert_eq!(report.issues[0].path, "discrete.eye_color");
        assert_eq!(report.issues[0].message, NON_SINGLETON);
    }

    #[test]
    fn empty_set_is_allowed_in_advert() {
        let p = Profile::new(owner("Eve")).with_discrete("eye_color", DiscreteSet::new());
        assert!(validate_profile(&p, Role::Advertising).ok);
    }

    #[test]
    fn name_collision_across_maps() {
        let p = Profile::new(owner("Eve"))
            .with_numeric("age", NumericRange::point(3.0).unwrap())
            .with_interest("age", InterestLevel::new(0.2).unwrap());
        let report = validate_profile(&p, Role::Search);
        assert!(!report.ok);
        assert_eq!(report.issues[0].path, "interests.age");
    }

    #[test]
    fn names_are_trimmed() {
        let p = Profile::new(owner("Eve")).with_interest("  tennis ", InterestLevel::new(0.2).unwrap());
        assert!(p.interests().contains_key("tennis"));
        let blank = Profile::new(owner("Eve")).with_interest("  ", InterestLevel::INDIFFERENT);
        assert!(!validate_profile(&blank, Role::Search).ok);
    }
}
