//! Keyed profile collection with single-file JSON persistence.
//!
//! File layout:
//!
//! ```json
//! {"profiles": [{"role": "search", "owner": "Alice", "numeric": {...}, ...}, ...]}
//! ```
//!
//! Each entry is a profile document plus its `role` and an optional
//! `updated_at` timestamp. Saving writes a temporary file next to the target
//! and renames it into place.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use chrono::{DateTime, SubsecRound, Utc};
use serde::{Deserialize, Serialize};

use crate::document::{from_json_tracked, validate_document, ProfileDocument, RangeDocument};
use crate::error::{Error, Result};
use crate::profile::{validate_profile, OwnerId, Profile, Role, ValidationReport};

#[derive(Debug, Clone, PartialEq)]
pub struct StoredProfile {
    pub owner: OwnerId,
    pub role: Role,
    pub profile: Profile,
    pub updated_at: DateTime<Utc>,
}

#[derive(Debug, Clone, Default)]
pub struct ProfileStore {
    entries: BTreeMap<(OwnerId, Role), StoredProfile>,
}

impl PartialEq for ProfileStore {
    /// Semantic equality: same keys and profiles, timestamps ignored.
    fn eq(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|((k1, v1), (k2, v2))| k1 == k2 && v1.profile == v2.profile)
    }
}

impl ProfileStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Insert or replace the profile stored under `(owner, role)`. Returns the
    /// replaced profile. Invalid profiles leave the store unchanged.
    pub fn put(&mut self, owner: &OwnerId, role: Role, profile: Profile) -> Result<Option<Profile>> {
        self.put_at(owner, role, profile, Utc::now())
    }

    fn put_at(
        &mut self,
        owner: &OwnerId,
        role: Role,
        profile: Profile,
        updated_at: DateTime<Utc>,
    ) -> Result<Option<Profile>> {
        if profile.owner() != owner {
            return Err(Error::OwnerMismatch {
                expected: owner.clone(),
                found: profile.owner().clone(),
            });
        }
        validate_profile(&profile, role).into_result(role)?;
        let entry = StoredProfile {
            owner: owner.clone(),
            role,
            profile,
            updated_at: updated_at.trunc_subsecs(0),
        };
        Ok(self
            .entries
            .insert((owner.clone(), role), entry)
            .map(|old| old.profile))
    }

    pub fn get(&self, owner: &OwnerId, role: Role) -> Option<&StoredProfile> {
        self.entries.get(&(owner.clone(), role))
    }

    pub fn remove(&mut self, owner: &OwnerId, role: Role) -> Option<Profile> {
        self.entries.remove(&(owner.clone(), role)).map(|e| e.profile)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &StoredProfile> {
        self.entries.values()
    }

    /// Advertising profiles of everybody except `searcher`, owner ascending.
    pub fn eligible_adverts(&self, searcher: &OwnerId) -> Vec<&Profile> {
        self.entries
            .values()
            .filter(|e| e.role == Role::Advertising && &e.owner != searcher)
            .map(|e| &e.profile)
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StoreFile = from_json_tracked(text)?;
        let mut store = ProfileStore::new();
        let now = Utc::now();
        for (i, entry) in file.profiles.into_iter().enumerate() {
            let role = entry.role;
            let doc = entry.document();
            let report = validate_document(&doc, role);
            if !report.ok {
                return Err(Error::Invalid {
                    role,
                    report: report.nested(&format!("profiles[{i}]")),
                });
            }
            let profile = doc.into_profile(role)?;
            let owner = profile.owner().clone();
            if store.entries.contains_key(&(owner.clone(), role)) {
                return Err(Error::DuplicateProfile { owner, role });
            }
            store.put_at(&owner, role, profile, entry.updated_at.unwrap_or(now))?;
        }
        Ok(store)
    }

    /// Report every problem in a store file instead of stopping at the first.
    /// Only malformed JSON is an error.
    pub fn validate_json(text: &str) -> Result<ValidationReport> {
        let file: StoreFile = from_json_tracked(text)?;
        let mut report = ValidationReport::new();
        let mut seen = BTreeMap::new();
        for (i, entry) in file.profiles.iter().enumerate() {
            let prefix = format!("profiles[{i}]");
            report.merge(validate_document(&entry.document(), entry.role).nested(&prefix));
            if let Some(owner) = &entry.owner {
                if let Some(first) = seen.insert((owner.clone(), entry.role), i) {
                    report.push(
                        prefix,
                        format!("duplicate {} profile for {owner} (first at profiles[{first}])", entry.role),
                    );
                }
            }
        }
        Ok(report)
    }

    pub fn to_json_pretty(&self) -> String {
        let file = StoreFile {
            profiles: self
                .entries
                .values()
                .map(|e| StoreEntry::new(e.role, ProfileDocument::from(&e.profile), Some(e.updated_at)))
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("store always serializes")
    }

    /// Load a store file. Nothing is returned unless every entry is valid.
    pub fn load_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// Write the store atomically: temp file in the same directory, then rename.
    pub fn save_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
        tmp.write_all(self.to_json_pretty().as_bytes())
            .and_then(|_| tmp.write_all(b"\n"))
            .and_then(|_| tmp.as_file().sync_all())
            .map_err(|e| Error::io(tmp.path(), e))?;
        tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
        Ok(())
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct StoreFile {
    profiles: Vec<StoreEntry>,
}

// Spelled out instead of flattening ProfileDocument so parse errors keep
// their field paths.
#[derive(Debug, Serialize, Deserialize)]
struct StoreEntry {
    role: Role,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    owner: Option<String>,
    #[serde(default)]
    numeric: BTreeMap<String, Option<RangeDocument>>,
    #[serde(default)]
    discrete: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    interests: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    updated_at: Option<DateTime<Utc>>,
}

impl StoreEntry {
    fn new(role: Role, doc: ProfileDocument, updated_at: Option<DateTime<Utc>>) -> Self {
        StoreEntry {
            role,
            owner: doc.owner,
            numeric: doc.numeric,
            discrete: doc.discrete,
            interests: doc.interests,
            updated_at,
        }
    }

    fn document(&self) -> ProfileDocument {
        ProfileDocument {
            owner: self.owner.clone(),
            numeric: self.numeric.clone(),
            discrete: self.discrete.clone(),
            interests: self.interests.clone(),
        }
    }
}
