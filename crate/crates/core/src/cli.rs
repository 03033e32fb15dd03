//! `matchdeg` command line: `score`, `rank`, `validate` and `serve`.
//!
//! Exit codes: 0 success, 1 runtime or IO error, 2 usage error, 3 validation
//! failure.

use std::fs;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::document::{validate_document, ProfileDocument};
use crate::engine::{rank_detailed, MatchQuery, MatchResponse};
use crate::error::Error;
use crate::profile::{OwnerId, Profile, Role, ValidationReport};
use crate::scoring::{total_degree, FuzzyLevel, ItemScore, MatchConfig, Weights};
use crate::service::{self, AppState, ADDR_ENV, DEFAULT_ADDR};
use crate::store::ProfileStore;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum CliExit {
    Success = 0,
    Runtime = 1,
    Usage = 2,
    Validation = 3,
}

impl CliExit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

impl From<&Error> for CliExit {
    fn from(err: &Error) -> Self {
        match err {
            Error::Io { .. } => CliExit::Runtime,
            _ => CliExit::Validation,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "matchdeg", version, about = "Fuzzy matchmaking of search and advertising profiles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score one advertising profile against one search profile.
    Score(ScoreArgs),
    /// Rank every eligible advert in a store against a search profile.
    Rank(RankArgs),
    /// Validate a profile document or a store file.
    Validate(ValidateArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct Tuning {
    /// Fuzzy level e, strictly between 0 and 1.
    #[arg(long, value_name = "E", value_parser = parse_fuzzy, default_value = "0.1")]
    pub fuzzy: FuzzyLevel,

    /// JSON file with per-item weights: {"numeric": {..}, "discrete": {..}, "interest": {..}}.
    #[arg(long, value_name = "FILE")]
    pub weights: Option<PathBuf>,

    /// Emit machine-readable JSON at full precision.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// Search profile document.
    #[arg(long, value_name = "FILE")]
    pub search: PathBuf,

    /// Advertising profile document.
    #[arg(long, value_name = "FILE")]
    pub advert: PathBuf,

    #[command(flatten)]
    pub tuning: Tuning,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    /// Search profile document.
    #[arg(long, value_name = "FILE")]
    pub search: PathBuf,

    /// Store file holding the advertising profiles.
    #[arg(long, value_name = "FILE")]
    pub store: PathBuf,

    /// Keep only the best K results.
    #[arg(long, value_name = "K")]
    pub top: Option<NonZeroUsize>,

    #[command(flatten)]
    pub tuning: Tuning,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Profile document or store file.
    pub file: PathBuf,

    /// Role to check a single profile document against.
    #[arg(long, default_value = "search", value_parser = parse_role)]
    pub role: Role,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// Store file; created on the first write if it does not exist.
    #[arg(long, value_name = "FILE")]
    pub store: PathBuf,

    #[arg(long, value_name = "HOST:PORT", env = ADDR_ENV, default_value = DEFAULT_ADDR)]
    pub addr: String,
}

fn parse_fuzzy(s: &str) -> Result<FuzzyLevel, String> {
    let e: f64 = s.parse().map_err(|_| format!("invalid number {s:?}"))?;
    FuzzyLevel::new(e).map_err(|_| "fuzzy level must be in (0,1)".to_owned())
}

fn parse_role(s: &str) -> Result<Role, String> {
    s.parse()
}

/// Machine output of `score`: one result without a rank.
#[derive(Debug, Serialize)]
pub struct ScoreOutput {
    pub owner: OwnerId,
    pub total: f64,
    pub breakdown: std::collections::BTreeMap<String, ItemScore>,
}

/// Run a parsed command, writing normal output to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliExit {
    let result = match cli.command {
        Command::Score(args) => score(&args, out, err),
        Command::Rank(args) => rank(&args, out, err),
        Command::Validate(args) => validate(&args, out, err),
        Command::Serve(args) => serve(&args, err),
    };
    match result {
        Ok(code) => code,
        Err((code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

type CmdResult = Result<CliExit, (CliExit, String)>;

fn fail(e: Error) -> (CliExit, String) {
    (CliExit::from(&e), e.to_string())
}

fn read(path: &Path) -> Result<String, (CliExit, String)> {
    fs::read_to_string(path).map_err(|e| fail(Error::Io { path: path.into(), source: e }))
}

fn load_profile(path: &Path, role: Role) -> Result<Profile, (CliExit, String)> {
    let text = read(path)?;
    ProfileDocument::from_json(&text)
        .and_then(|doc| doc.into_profile(role))
        .map_err(|e| (CliExit::from(&e), format!("{}: {e}", path.display())))
}

fn config(tuning: &Tuning) -> Result<MatchConfig, (CliExit, String)> {
    let mut config = MatchConfig::default().with_fuzzy(tuning.fuzzy);
    if let Some(path) = &tuning.weights {
        let text = read(path)?;
        let weights: Weights = crate::document::from_json_tracked(&text)
            .and_then(|w: Weights| w.check().map(|_| w))
            .map_err(|e| (CliExit::Validation, format!("{}: {e}", path.display())))?;
        config = config.with_weights(weights);
    }
    Ok(config)
}

fn score(args: &ScoreArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let search = load_profile(&args.search, Role::Search)?;
    let advert = load_profile(&args.advert, Role::Advertising)?;
    let config = config(&args.tuning)?;
    let breakdown = total_degree(&search, &advert, &config).map_err(fail)?;
    for d in &breakdown.diagnostics {
        let _ = writeln!(err, "warning: {d}");
    }

    if args.tuning.json {
        let output = ScoreOutput {
            owner: advert.owner().clone(),
            total: breakdown.total,
            breakdown: breakdown.per_item,
        };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&output).unwrap());
    } else {
        let _ = writeln!(
            out,
            "search {} vs advert {} (fuzzy level {})",
            search.owner(),
            advert.owner(),
            config.fuzzy.value()
        );
        let width = breakdown.per_item.keys().map(|k| k.len()).max().unwrap_or(4).max(4);
        let _ = writeln!(out, "{:<width$}  {:<8}  {:>6}  {:>7}", "item", "kind", "weight", "partial");
        for (name, s) in &breakdown.per_item {
            let _ = writeln!(
                out,
                "{:<width$}  {:<8}  {:>6}  {:>7.4}",
                name,
                s.kind.to_string(),
                s.weight,
                s.partial
            );
        }
        let _ = writeln!(out, "total {:.4}", breakdown.total);
    }
    Ok(CliExit::Success)
}

fn rank(args: &RankArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let search = load_profile(&args.search, Role::Search)?;
    let config = config(&args.tuning)?;
    let store = ProfileStore::load_file(&args.store)
        .map_err(|e| (CliExit::Runtime, format!("{}: {e}", args.store.display())))?;
    let query = MatchQuery::new(search, config).map_err(fail)?.top(args.top);
    let ranking = rank_detailed(&query, store.eligible_adverts(query.search().owner())).map_err(fail)?;
    for d in &ranking.diagnostics {
        let _ = writeln!(err, "warning: {d}");
    }

    if args.tuning.json {
        let response = MatchResponse::from(ranking.results.as_slice());
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&response).unwrap());
    } else {
        let width = ranking
            .results
            .iter()
            .map(|r| r.advert_owner.as_str().len())
            .max()
            .unwrap_or(5)
            .max(5);
        let _ = writeln!(out, "{:>4}  {:<width$}  {:>6}", "rank", "owner", "total");
        for r in &ranking.results {
            let _ = writeln!(out, "{:>4}  {:<width$}  {:>6.4}", r.rank, r.advert_owner.as_str(), r.total);
        }
    }
    Ok(CliExit::Success)
}

fn validate(args: &ValidateArgs, out: &mut dyn Write, _err: &mut dyn Write) -> CmdResult {
    let text = read(&args.file)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| (CliExit::Validation, format!("{}: {e}", args.file.display())))?;
    let report: ValidationReport = if value.get("profiles").is_some() {
        ProfileStore::validate_json(&text)
    } else {
        ProfileDocument::from_json(&text).map(|doc| validate_document(&doc, args.role))
    }
    .map_err(|e| (CliExit::Validation, format!("{}: {e}", args.file.display())))?;

    if report.ok {
        let _ = writeln!(out, "ok");
        Ok(CliExit::Success)
    } else {
        for issue in &report.issues {
            let _ = writeln!(out, "{}: {}", issue.path, issue.message);
        }
        Ok(CliExit::Validation)
    }
}

fn serve(args: &ServeArgs, err: &mut dyn Write) -> CmdResult {
    let store = if args.store.exists() {
        ProfileStore::load_file(&args.store)
            .map_err(|e| (CliExit::Runtime, format!("{}: {e}", args.store.display())))?
    } else {
        ProfileStore::new()
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| (CliExit::Runtime, e.to_string()))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(&args.addr)
            .await
            .map_err(|e| (CliExit::Runtime, format!("bind {}: {e}", args.addr)))?;
        let local = listener.local_addr().map_err(|e| (CliExit::Runtime, e.to_string()))?;
        let _ = writeln!(err, "listening on {local}");
        let state = AppState::new(store, Some(args.store.clone()));
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
        };
        service::serve(listener, state, shutdown)
            .await
            .map_err(|e| (CliExit::Runtime, e.to_string()))
    })?;
    Ok(CliExit::Success)
}
