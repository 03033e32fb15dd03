//! Local matchmaking: one search profile against every eligible advert.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::num::NonZeroUsize;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::{validate_profile, OwnerId, Profile, Role};
use crate::scoring::{total_degree, ItemScore, MatchConfig, ScoreBreakdown};

#[derive(Debug, Clone)]
pub struct MatchQuery {
    search: Profile,
    config: MatchConfig,
    k: Option<NonZeroUsize>,
}

impl MatchQuery {
    /// Fails unless `search` is a valid, non-empty search profile.
    pub fn new(search: Profile, config: MatchConfig) -> Result<Self> {
        validate_profile(&search, Role::Search).into_result(Role::Search)?;
        if search.is_empty() {
            return Err(Error::EmptySearchProfile);
        }
        config.weights.check()?;
        Ok(MatchQuery { search, config, k: None })
    }

    /// Keep only the best `k` results. `None` keeps all.
    pub fn top(mut self, k: Option<NonZeroUsize>) -> Self {
        self.k = k;
        self
    }

    pub fn search(&self) -> &Profile {
        &self.search
    }

    pub fn config(&self) -> &MatchConfig {
        &self.config
    }

    pub fn k(&self) -> Option<NonZeroUsize> {
        self.k
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchResult {
    pub advert_owner: OwnerId,
    pub total: f64,
    pub rank: usize,
    pub breakdown: ScoreBreakdown,
}

/// Wire form of a ranking, shared by the HTTP service and `rank --json`:
/// `{"results": [{"owner", "total", "rank", "breakdown": {item: {kind, partial, weight}}}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResponse {
    pub results: Vec<ResultEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEntry {
    pub owner: OwnerId,
    pub total: f64,
    pub rank: usize,
    pub breakdown: BTreeMap<String, ItemScore>,
}

impl From<&MatchResult> for ResultEntry {
    fn from(r: &MatchResult) -> Self {
        ResultEntry {
            owner: r.advert_owner.clone(),
            total: r.total,
            rank: r.rank,
            breakdown: r.breakdown.per_item.clone(),
        }
    }
}

impl From<&[MatchResult]> for MatchResponse {
    fn from(results: &[MatchResult]) -> Self {
        MatchResponse {
            results: results.iter().map(ResultEntry::from).collect(),
        }
    }
}

/// Ranked results plus notes about adverts that were skipped or only
/// partially comparable.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Ranking {
    pub results: Vec<MatchResult>,
    pub diagnostics: Vec<String>,
}

/// Pair `search` with every advert whose owner differs from the searcher.
pub fn build_search_space<'s, 'a>(
    search: &'s Profile,
    adverts: impl IntoIterator<Item = &'a Profile>,
) -> Vec<(&'s Profile, &'a Profile)> {
    adverts
        .into_iter()
        .filter(|a| a.owner() != search.owner())
        .map(|a| (search, a))
        .collect()
}

/// Best-first ranking of eligible adverts; see [`rank_detailed`].
pub fn rank<'a>(query: &MatchQuery, adverts: impl IntoIterator<Item = &'a Profile>) -> Result<Vec<MatchResult>> {
    rank_detailed(query, adverts).map(|r| r.results)
}

/// Score every pair of the search space and sort by total descending, ties
/// by advert owner ascending. Adverts that fail advertising-role validation
/// are skipped and reported in `diagnostics`.
///
/// Scoring runs in parallel; the output does not depend on input order or
/// thread scheduling.
pub fn rank_detailed<'a>(
    query: &MatchQuery,
    adverts: impl IntoIterator<Item = &'a Profile>,
) -> Result<Ranking> {
    let search = &query.search;
    let pairs = build_search_space(search, adverts);

    let scored: Vec<std::result::Result<(OwnerId, ScoreBreakdown), String>> = pairs
        .par_iter()
        .map(|&(s, a)| {
            let report = validate_profile(a, Role::Advertising);
            if !report.ok {
                return Ok(Err(format!("skipped advert of {}: {report}", a.owner())));
            }
            total_degree(s, a, &query.config).map(|b| Ok((a.owner().clone(), b)))
        })
        .collect::<Result<_>>()?;

    let mut diagnostics = Vec::new();
    let mut results = Vec::with_capacity(scored.len());
    for item in scored {
        match item {
            Ok((owner, breakdown)) => {
                diagnostics.extend(breakdown.diagnostics.iter().map(|d| format!("{owner}: {d}")));
                results.push(MatchResult {
                    advert_owner: owner,
                    total: breakdown.total,
                    rank: 0,
                    breakdown,
                });
            }
            Err(note) => diagnostics.push(note),
        }
    }

    results.sort_by(compare_results);
    if let Some(k) = query.k {
        results.truncate(k.get());
    }
    for (i, r) in results.iter_mut().enumerate() {
        r.rank = i + 1;
    }
    diagnostics.sort();
    for d in &diagnostics {
        tracing::warn!("{d}");
    }
    Ok(Ranking { results, diagnostics })
}

fn compare_results(a: &MatchResult, b: &MatchResult) -> Ordering {
    b.total
        .total_cmp(&a.total)
        .then_with(|| a.advert_owner.cmp(&b.advert_owner))
}

/// The single best advert, or `None` when nobody else advertises.
pub fn best_match<'a>(
    query: &MatchQuery,
    adverts: impl IntoIterator<Item = &'a Profile>,
) -> Result<Option<MatchResult>> {
    let query = query.clone().top(NonZeroUsize::new(1));
    Ok(rank(&query, adverts)?.into_iter().next())
}
