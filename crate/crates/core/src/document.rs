//! JSON profile documents.
//!
//! ```json
//! {
//!   "owner": "Alice",
//!   "numeric":   { "age": {"min": 20, "max": 40} },
//!   "discrete":  { "eye_color": ["blue", "green"] },
//!   "interests": { "tennis": 1.0, "chess": 0.5 }
//! }
//! ```
//!
//! A missing `min` is -inf and a missing `max` is +inf. A numeric range of
//! `null` is the empty range. All three sections are optional.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::{
    validate_profile, DiscreteSet, InterestLevel, NumericRange, OwnerId, Profile, Role,
    ValidationReport,
};

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RangeDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
}

/// Untyped profile as it appears on the wire. Nothing is checked until
/// [`ProfileDocument::into_profile`] or [`validate_document`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ProfileDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub owner: Option<String>,
    #[serde(default)]
    pub numeric: BTreeMap<String, Option<RangeDocument>>,
    #[serde(default)]
    pub discrete: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub interests: BTreeMap<String, f64>,
}

impl ProfileDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        from_json_tracked(text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile documents always serialize")
    }

    /// Validate for `role` and convert into a typed profile.
    pub fn into_profile(&self, role: Role) -> Result<Profile> {
        let (profile, report) = build(self, role);
        match profile {
            Some(p) if report.ok => Ok(p),
            _ => Err(Error::Invalid { role, report }),
        }
    }
}

impl From<&Profile> for ProfileDocument {
    fn from(p: &Profile) -> Self {
        let numeric = p
            .numeric()
            .iter()
            .map(|(name, range)| {
                let doc = range.bounds().map(|(lower, upper)| RangeDocument {
                    min: lower.is_finite().then_some(lower),
                    max: upper.is_finite().then_some(upper),
                });
                (name.clone(), doc)
            })
            .collect();
        let discrete = p
            .discrete()
            .iter()
            .map(|(name, set)| (name.clone(), set.iter().map(str::to_owned).collect()))
            .collect();
        let interests = p
            .interests()
            .iter()
            .map(|(name, level)| (name.clone(), level.value()))
            .collect();
        ProfileDocument {
            owner: Some(p.owner().to_string()),
            numeric,
            discrete,
            interests,
        }
    }
}

/// Every issue that would stop `doc` from becoming a valid profile in `role`.
pub fn validate_document(doc: &ProfileDocument, role: Role) -> ValidationReport {
    build(doc, role).1
}

fn build(doc: &ProfileDocument, role: Role) -> (Option<Profile>, ValidationReport) {
    let mut report = ValidationReport::new();

    let owner = match doc.owner.as_deref() {
        None => {
            report.push("owner", "missing owner");
            None
        }
        Some(id) => match OwnerId::new(id) {
            Ok(owner) => Some(owner),
            Err(e) => {
                report.push("owner", e.to_string());
                None
            }
        },
    };
    // Placeholder owner so the item checks below still run.
    let mut profile = Profile::new(owner.clone().unwrap_or_else(|| OwnerId::new("?").unwrap()));

    for (name, range) in &doc.numeric {
        let path = format!("numeric.{name}");
        let parsed = match range {
            None => Ok(NumericRange::Empty),
            Some(r) => NumericRange::new(
                r.min.unwrap_or(f64::NEG_INFINITY),
                r.max.unwrap_or(f64::INFINITY),
            ),
        };
        match parsed {
            Ok(r) => {
                profile.set_numeric(name, r);
            }
            Err(e) => report.push(path, e.to_string()),
        }
    }

    for (name, values) in &doc.discrete {
        let path = format!("discrete.{name}");
        let mut seen = BTreeSet::new();
        let mut clean = true;
        for v in values {
            if v.is_empty() {
                report.push(path.clone(), "value must not be empty");
                clean = false;
            } else if !seen.insert(v.as_str()) {
                report.push(path.clone(), format!("duplicate value {v:?}"));
                clean = false;
            }
        }
        if clean {
            profile.set_discrete(name, values.iter().cloned().collect::<DiscreteSet>());
        }
    }

    for (name, level) in &doc.interests {
        match InterestLevel::new(*level) {
            Ok(l) => {
                profile.set_interest(name, l);
            }
            Err(_) => report.push(format!("interests.{name}"), "level out of [-1,1]"),
        }
    }

    // Names are trimmed on insertion, so two raw keys can land on one name.
    let sections: [(&str, Vec<&String>); 3] = [
        ("numeric", doc.numeric.keys().collect()),
        ("discrete", doc.discrete.keys().collect()),
        ("interests", doc.interests.keys().collect()),
    ];
    for (section, names) in sections {
        let mut seen = BTreeSet::new();
        for name in names {
            let trimmed = name.trim();
            if !seen.insert(trimmed) {
                report.push(
                    format!("{section}.{trimmed}"),
                    "name used more than once after trimming",
                );
            }
        }
    }

    report.merge(validate_profile(&profile, role));

    (owner.map(|_| profile), report)
}

pub(crate) fn from_json_tracked<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(Error::from_json)?;
    Ok(value)
}
