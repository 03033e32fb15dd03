//! HTTP facade over a [`ProfileStore`].
//!
//! | method | path                         | success            |
//! |--------|------------------------------|--------------------|
//! | PUT    | `/profiles/{owner}/{role}`   | 200, stored doc    |
//! | GET    | `/profiles/{owner}/{role}`   | 200, stored doc    |
//! | DELETE | `/profiles/{owner}/{role}`   | 204                |
//! | POST   | `/match`                     | 200, ranked results|
//! | GET    | `/healthz`                   | 200, `ok`          |
//!
//! Errors are JSON bodies `{"status", "code", "message", "detail"}`.
//! Mutations are applied to a copy of the store, persisted, and only then
//! swapped in under the write lock, so readers see either the old or the new
//! state.

use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tokio::sync::RwLock;

use crate::document::{from_json_tracked, ProfileDocument};
use crate::engine::{rank, MatchQuery, MatchResponse};
use crate::error::Error;
use crate::profile::{OwnerId, Role};
use crate::scoring::{FuzzyLevel, MatchConfig, Weights};
use crate::store::ProfileStore;

pub const ADDR_ENV: &str = "MATCHDEG_ADDR";
pub const DEFAULT_ADDR: &str = "127.0.0.1:8080";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    pub status: u16,
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status: status.as_u16(),
            code: code.to_owned(),
            message: message.into(),
            detail: None,
        }
    }

    fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", message)
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", message)
    }
}

impl From<Error> for ApiError {
    fn from(err: Error) -> Self {
        match err {
            Error::Parse { ref path, .. } => {
                let path = path.clone();
                ApiError::new(StatusCode::BAD_REQUEST, "malformed_body", err.to_string()).detail(path)
            }
            Error::Invalid { ref report, .. } => {
                let detail = report.first_path().map(str::to_owned);
                let mut e = ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_profile", err.to_string());
                e.detail = detail;
                e
            }
            Error::EmptySearchProfile => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "empty_search_profile", err.to_string())
            }
            Error::OwnerMismatch { .. } => ApiError::new(StatusCode::CONFLICT, "owner_mismatch", err.to_string()),
            Error::InvalidFuzzyLevel(_) | Error::InvalidWeight { .. } | Error::EmptyOwner => {
                ApiError::bad_request(err.to_string())
            }
            other => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", other.to_string()),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

type ApiResult<T> = std::result::Result<T, ApiError>;

pub struct AppState {
    store: RwLock<ProfileStore>,
    path: Option<PathBuf>,
}

impl AppState {
    /// `path`, when given, receives the whole store after every mutation.
    pub fn new(store: ProfileStore, path: Option<PathBuf>) -> Arc<Self> {
        Arc::new(AppState {
            store: RwLock::new(store),
            path,
        })
    }

    pub async fn snapshot(&self) -> ProfileStore {
        self.store.read().await.clone()
    }

    async fn mutate<T>(&self, f: impl FnOnce(&mut ProfileStore) -> ApiResult<T>) -> ApiResult<T> {
        let mut guard = self.store.write().await;
        let mut next = guard.clone();
        let out = f(&mut next)?;
        if let Some(path) = &self.path {
            next.save_file(path).map_err(ApiError::from)?;
        }
        *guard = next;
        Ok(out)
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/healthz", get(|| async { "ok" }))
        .route(
            "/profiles/{owner}/{role}",
            get(get_profile).put(put_profile).delete(delete_profile),
        )
        .route("/match", post(match_profiles))
        .fallback(|| async { ApiError::not_found("no such endpoint") })
        .method_not_allowed_fallback(|| async { ApiError::bad_request("method not allowed") })
        .with_state(state)
}

/// Serve until `shutdown` resolves.
pub async fn serve(
    listener: tokio::net::TcpListener,
    state: Arc<AppState>,
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(state))
        .with_graceful_shutdown(shutdown)
        .await
}

fn key(owner: &str, role: &str) -> ApiResult<(OwnerId, Role)> {
    let owner = OwnerId::new(owner).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let role = role.parse::<Role>().map_err(ApiError::bad_request)?;
    Ok((owner, role))
}

async fn get_profile(
    State(state): State<Arc<AppState>>,
    Path((owner, role)): Path<(String, String)>,
) -> ApiResult<Json<ProfileDocument>> {
    let (owner, role) = key(&owner, &role)?;
    let store = state.store.read().await;
    store
        .get(&owner, role)
        .map(|e| Json(ProfileDocument::from(&e.profile)))
        .ok_or_else(|| ApiError::not_found(format!("no {role} profile for {owner}")))
}

async fn put_profile(
    State(state): State<Arc<AppState>>,
    Path((owner, role)): Path<(String, String)>,
    body: String,
) -> ApiResult<Json<ProfileDocument>> {
    let (owner, role) = key(&owner, &role)?;
    let mut doc: ProfileDocument = from_json_tracked(&body)?;
    match doc.owner.as_deref() {
        None => doc.owner = Some(owner.to_string()),
        Some(found) if found != owner.as_str() => {
            return Err(ApiError::new(
                StatusCode::CONFLICT,
                "owner_mismatch",
                format!("body owner {found:?} does not match path owner {owner:?}"),
            )
            .detail("owner"));
        }
        Some(_) => {}
    }
    let profile = doc.into_profile(role)?;
    let normalized = ProfileDocument::from(&profile);
    state
        .mutate(|store| store.put(&owner, role, profile).map_err(ApiError::from))
        .await?;
    Ok(Json(normalized))
}

async fn delete_profile(
    State(state): State<Arc<AppState>>,
    Path((owner, role)): Path<(String, String)>,
) -> ApiResult<StatusCode> {
    let (owner, role) = key(&owner, &role)?;
    state
        .mutate(|store| {
            store
                .remove(&owner, role)
                .map(|_| StatusCode::NO_CONTENT)
                .ok_or_else(|| ApiError::not_found(format!("no {role} profile for {owner}")))
        })
        .await
}

#[derive(Debug, Deserialize)]
struct MatchRequest {
    /// Inline profile document, or the owner id of a stored search profile.
    search: serde_json::Value,
    #[serde(default)]
    k: Option<serde_json::Value>,
    #[serde(default)]
    fuzzy: Option<f64>,
    #[serde(default)]
    weights: Option<Weights>,
}

fn parse_k(k: Option<&serde_json::Value>) -> ApiResult<Option<NonZeroUsize>> {
    match k {
        None | Some(serde_json::Value::Null) => Ok(None),
        Some(serde_json::Value::String(s)) if s == "all" => Ok(None),
        Some(v) => v
            .as_u64()
            .and_then(|n| usize::try_from(n).ok())
            .and_then(NonZeroUsize::new)
            .map(Some)
            .ok_or_else(|| ApiError::bad_request(format!("k must be a positive integer or \"all\", got {v}")).detail("k")),
    }
}

async fn match_profiles(State(state): State<Arc<AppState>>, body: String) -> ApiResult<Json<MatchResponse>> {
    let req: MatchRequest = from_json_tracked(&body)?;
    let k = parse_k(req.k.as_ref())?;
    let mut config = MatchConfig::default();
    if let Some(e) = req.fuzzy {
        config.fuzzy = FuzzyLevel::new(e).map_err(|e| ApiError::from(e).detail("fuzzy"))?;
    }
    if let Some(w) = req.weights {
        w.check().map_err(|e| ApiError::from(e).detail("weights"))?;
        config.weights = w;
    }

    let store = state.store.read().await;
    let search = match req.search {
        serde_json::Value::String(owner) => {
            let owner = OwnerId::new(owner).map_err(|e| ApiError::bad_request(e.to_string()).detail("search"))?;
            store
                .get(&owner, Role::Search)
                .map(|e| e.profile.clone())
                .ok_or_else(|| ApiError::not_found(format!("no search profile for {owner}")).detail("search"))?
        }
        value => {
            let doc: ProfileDocument = serde_path_to_error::deserialize(value).map_err(|e| {
                let path = e.path().to_string();
                ApiError::new(StatusCode::BAD_REQUEST, "malformed_body", e.into_inner().to_string())
                    .detail(format!("search.{path}"))
            })?;
            doc.into_profile(Role::Search).map_err(|e| {
                let mut api = ApiError::from(e);
                api.detail = api.detail.map(|d| format!("search.{d}"));
                api
            })?
        }
    };

    let query = MatchQuery::new(search, config)?.top(k);
    let results = rank(&query, store.eligible_adverts(query.search().owner()))?;
    Ok(Json(MatchResponse::from(results.as_slice())))
}
