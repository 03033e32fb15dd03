//! Fuzzy matchmaking of search and advertising profiles.
//!
//! A search profile lists desired attribute ranges and interest levels; an
//! advertising profile lists what its owner offers. [`total_degree`] scores
//! one pair in `[0, 1]`, [`rank`] orders every eligible advert for a search.
//!
//! ```
//! use matchdeg::{
//!     rank, InterestLevel, MatchConfig, MatchQuery, NumericRange, OwnerId, Profile,
//! };
//!
//! let alice = Profile::new(OwnerId::new("Alice")?)
//!     .with_numeric("age", NumericRange::new(20.0, 40.0)?)
//!     .with_interest("tennis", InterestLevel::new(1.0)?)
//!     .with_interest("chess", InterestLevel::new(0.5)?);
//! let bob = Profile::new(OwnerId::new("Bob")?)
//!     .with_numeric("age", NumericRange::point(26.0)?)
//!     .with_interest("tennis", InterestLevel::new(0.5)?);
//!
//! let query = MatchQuery::new(alice, MatchConfig::default())?;
//! let results = rank(&query, [&bob])?;
//! assert_eq!(results[0].advert_owner.as_str(), "Bob");
//! assert!((results[0].total - 0.7315).abs() < 1e-4);
//! # Ok::<(), matchdeg::Error>(())
//! ```
//!
//! The `examples/` directory has one runnable program per capability.

pub mod cli;
pub mod document;
pub mod engine;
pub mod error;
pub mod profile;
pub mod scoring;
pub mod service;
pub mod stencil;
pub mod store;

pub use document::{validate_document, ProfileDocument};
pub use engine::{
    best_match, build_search_space, rank, rank_detailed, MatchQuery, MatchResponse, MatchResult,
    Ranking, ResultEntry,
};
pub use error::{Error, Result};
pub use profile::{
    validate_profile, DiscreteSet, InterestLevel, Issue, NumericRange, OwnerId, Profile, Role,
    ValidationReport,
};
pub use scoring::{
    fuzzy_step, interest_constant, match_discrete, match_interest, match_numeric, phi,
    total_degree, FuzzyLevel, ItemKind, ItemScore, MatchConfig, ScoreBreakdown, Weights,
};
pub use stencil::{parse_stencil_shorthand, Stencil};
pub use store::{ProfileStore, StoredProfile};
