#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use matchdeg::{DiscreteSet, InterestLevel, NumericRange, OwnerId, Profile, ProfileStore, Role};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn example2_store() -> ProfileStore {
    ProfileStore::load_file(fixture("example2_store.json")).unwrap()
}

pub fn owner(id: &str) -> OwnerId {
    OwnerId::new(id).unwrap()
}

pub fn stored(store: &ProfileStore, id: &str, role: Role) -> Profile {
    store.get(&owner(id), role).unwrap().profile.clone()
}

const NUMERIC: [&str; 4] = ["age", "height", "cpu", "temp"];
const DISCRETE: [&str; 3] = ["eye", "city", "os"];
const INTERESTS: [&str; 4] = ["tennis", "chess", "basketball", "golf"];
const VALUES: [&str; 4] = ["a", "b", "c", "d"];

fn endpoint(rng: &mut impl Rng) -> f64 {
    match rng.gen_range(0..10) {
        0 => 0.0,
        1 => rng.gen_range(-50.0..0.0),
        2 => rng.gen_range(0.0..1.0),
        _ => rng.gen_range(1.0..200.0),
    }
}

fn random_range(rng: &mut impl Rng) -> NumericRange {
    let a = endpoint(rng);
    let b = a + rng.gen_range(0.0..40.0);
    match rng.gen_range(0..8) {
        0 => NumericRange::at_least(a).unwrap(),
        1 => NumericRange::at_most(b).unwrap(),
        2 => NumericRange::Empty,
        _ => NumericRange::new(a, b).unwrap(),
    }
}

/// A value near a searched range's edges, so the fuzzy ramps get exercised.
fn near(rng: &mut impl Rng, range: &NumericRange) -> NumericRange {
    let Some((a, b)) = range.bounds() else {
        return random_range(rng);
    };
    let anchor = if a.is_finite() && (rng.gen_bool(0.5) || !b.is_finite()) {
        a
    } else if b.is_finite() {
        b
    } else {
        endpoint(rng)
    };
    let x = anchor * (1.0 + rng.gen_range(-0.15..0.15)) + rng.gen_range(-0.5..0.5);
    match rng.gen_range(0..6) {
        0 => NumericRange::at_most(x).unwrap(),
        1 => NumericRange::new(x, x + rng.gen_range(0.0..10.0)).unwrap(),
        _ => NumericRange::point(x).unwrap(),
    }
}

fn level(rng: &mut impl Rng) -> InterestLevel {
    let x = if rng.gen_bool(0.3) {
        *[-1.0, -0.5, 0.0, 0.5, 1.0].choose(rng).unwrap()
    } else {
        rng.gen_range(-1.0..=1.0)
    };
    InterestLevel::new(x).unwrap()
}

/// Search profile with 1..=max_items items over a small shared vocabulary.
pub fn random_search(rng: &mut impl Rng, id: &str, max_items: usize) -> Profile {
    let mut names: Vec<(u8, &str)> = NUMERIC
        .iter()
        .map(|n| (0, *n))
        .chain(DISCRETE.iter().map(|n| (1, *n)))
        .chain(INTERESTS.iter().map(|n| (2, *n)))
        .collect();
    names.shuffle(rng);
    let count = rng.gen_range(1..=max_items);
    let mut p = Profile::new(owner(id));
    for (kind, name) in names.into_iter().take(count) {
        match kind {
            0 => p.set_numeric(name, random_range(rng)).map(|_| ()),
            1 => {
                let k = rng.gen_range(0..=3);
                let set: DiscreteSet = VALUES.choose_multiple(rng, k).copied().collect();
                p.set_discrete(name, set).map(|_| ())
            }
            _ => p.set_interest(name, level(rng)).map(|_| ()),
        };
    }
    p
}

/// Advertising profile that overlaps `search` on some items and adds others.
pub fn random_advert(rng: &mut impl Rng, id: &str, search: &Profile) -> Profile {
    let mut p = Profile::new(owner(id));
    for (name, range) in search.numeric() {
        if rng.gen_bool(0.8) {
            p.set_numeric(name, near(rng, range));
        }
    }
    for name in search.discrete().keys() {
        match rng.gen_range(0..5) {
            0 => {}
            1 => {
                p.set_discrete(name, DiscreteSet::new());
            }
            _ => {
                p.set_discrete(name, DiscreteSet::singleton(*VALUES.choose(rng).unwrap()));
            }
        }
    }
    for name in search.interests().keys() {
        if rng.gen_bool(0.7) {
            p.set_interest(name, level(rng));
        }
    }
    for name in INTERESTS {
        if !search.interests().contains_key(name) && rng.gen_bool(0.2) {
            p.set_interest(name, level(rng));
        }
    }
    p
}
