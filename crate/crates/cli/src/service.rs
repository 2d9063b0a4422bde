//! HTTP game service. Sessions live in memory; each is locked while a move and
//! the engine's reply are applied, so clients only ever see whole turns.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, MutexGuard, RwLock};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use narrow_core::analysis::{chain_of, chains, classify_edge_direct, find_double_deals, ChainCategory, EdgeClass};
use narrow_core::board::{BoardState, PrimalEdgeId, WireState};
use narrow_core::solver::Solver;
use narrow_core::strategy::AgentMode;
use narrow_core::{EdgeRef, GameSpec};

use crate::engine::{EngineError, EngineRole, MoveError, Session};

/// Largest board (in faces) the service will host with an engine.
pub const MAX_ENGINE_FACES: usize = 15;

#[derive(Default)]
pub struct AppState {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    solver: Mutex<Solver>,
    next_id: AtomicU64,
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

impl AppState {
    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        let sessions = self.sessions.read().unwrap_or_else(|p| p.into_inner());
        sessions
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "not_found", format!("no game '{id}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: ErrorBody,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> ApiError {
        ApiError { status, body: ErrorBody { code: code.into(), message: message.into() } }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> ApiError {
        ApiError::new(StatusCode::BAD_REQUEST, "bad_request", r.body_text())
    }
}

impl From<EngineError> for ApiError {
    fn from(e: EngineError) -> ApiError {
        match e {
            EngineError::Strategy(narrow_core::StrategyError::Unsupported(_)) | EngineError::ConstructiveSecond => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "unsupported", e.to_string())
            }
            e => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "engine_error", e.to_string()),
        }
    }
}

impl From<MoveError> for ApiError {
    fn from(e: MoveError) -> ApiError {
        match e {
            MoveError::GameOver => ApiError::new(StatusCode::CONFLICT, "game_over", e.to_string()),
            MoveError::NotYourTurn => ApiError::new(StatusCode::CONFLICT, "not_your_turn", e.to_string()),
            MoveError::Illegal(b) => ApiError::new(StatusCode::BAD_REQUEST, "illegal_move", b.to_string()),
            MoveError::Engine(e) => e.into(),
        }
    }
}

fn default_role() -> EngineRole {
    EngineRole::First
}

fn default_mode() -> AgentMode {
    AgentMode::SolverAssisted
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CreateGame {
    pub spec: GameSpec,
    #[serde(default = "default_role")]
    pub engine_role: EngineRole,
    #[serde(default = "default_mode")]
    pub engine_mode: AgentMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Created {
    pub id: String,
    pub state: WireState,
    pub engine_replies: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MoveRequest {
    pub edge: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveReply {
    pub state: WireState,
    pub engine_replies: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fetched {
    pub state: WireState,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainView {
    pub id: usize,
    pub category: ChainCategory,
    pub length: usize,
    /// Primal edges of the chain; a leg bundle lists every undrawn edge in it.
    pub edges: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeView {
    pub edge: String,
    pub string: String,
    pub class: EdgeClass,
    pub chain: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleDealView {
    /// Draw `take` then `decline` to capture both faces; draw `decline` alone to double-deal.
    pub take: String,
    pub decline: String,
    pub faces: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub state: WireState,
    pub chains: Vec<ChainView>,
    pub edges: Vec<EdgeView>,
    pub double_deals: Vec<DoubleDealView>,
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", get(fetch_game))
        .route("/games/{id}/moves", post(submit_move))
        .route("/games/{id}/analysis", get(analyze_game))
        .fallback(|| async { ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint") })
        .with_state(state)
}

fn names(ids: &[PrimalEdgeId]) -> Vec<String> {
    ids.iter().map(ToString::to_string).collect()
}

async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> Result<T, ApiError> + Send + 'static,
) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .unwrap_or_else(|e| Err(ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string())))
}

async fn create_game(
    State(app): State<Arc<AppState>>,
    body: Result<Json<CreateGame>, JsonRejection>,
) -> Result<(StatusCode, Json<Created>), ApiError> {
    let Json(req) = body?;
    if req.engine_role != EngineRole::None && req.spec.coin_count() > MAX_ENGINE_FACES {
        return Err(ApiError::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            "board_too_large",
            format!("engine games are limited to {MAX_ENGINE_FACES} faces"),
        ));
    }
    let created = blocking(move || {
        let (session, replies) = Session::start(req.spec, req.engine_role, req.engine_mode, &mut lock(&app.solver))?;
        let id = (app.next_id.fetch_add(1, Ordering::Relaxed) + 1).to_string();
        let state = session.state.wire();
        app.sessions
            .write()
            .unwrap_or_else(|p| p.into_inner())
            .insert(id.clone(), Arc::new(Mutex::new(session)));
        Ok(Created { id, state, engine_replies: names(&replies) })
    })
    .await?;
    Ok((StatusCode::CREATED, Json(created)))
}

async fn fetch_game(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Fetched>, ApiError> {
    let session = app.session(&id)?;
    let state = lock(&session).state.wire();
    Ok(Json(Fetched { state }))
}

async fn submit_move(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<MoveReply>, ApiError> {
    let Json(req) = body?;
    let session = app.session(&id)?;
    let reply = blocking(move || {
        let mut s = lock(&session);
        let edge = PrimalEdgeId::parse(&s.state.spec(), &req.edge)
            .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "illegal_move", e.to_string()))?;
        let replies = s.human_move(edge, &mut lock(&app.solver))?;
        Ok(MoveReply { state: s.state.wire(), engine_replies: names(&replies) })
    })
    .await?;
    Ok(Json(reply))
}

async fn analyze_game(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Analysis>, ApiError> {
    let session = app.session(&id)?;
    let state = lock(&session).state.clone();
    Ok(Json(analysis(&state)))
}

/// Chains, string labels and double-deals of a state, in primal terms.
pub fn analysis(st: &BoardState) -> Analysis {
    let p = &st.position;
    let board = &st.board;
    let undrawn = board.undrawn();
    let primal_of = |e: EdgeRef| -> Vec<String> {
        undrawn
            .iter()
            .filter(|id| board.primal_to_dual(**id) == Ok(e))
            .map(ToString::to_string)
            .collect()
    };
    let all_chains = chains(p);
    let chain_views = all_chains
        .iter()
        .enumerate()
        .map(|(id, c)| ChainView {
            id,
            category: c.category,
            length: c.length,
            edges: c.edges.iter().flat_map(|&e| primal_of(e)).collect(),
        })
        .collect();
    let edges = if p.is_terminal() { Vec::new() } else { undrawn.clone() }
        .into_iter()
        .map(|id| {
            let e = board.primal_to_dual(id).expect("undrawn edge has a string");
            let chain = chain_of(p, e).and_then(|c| all_chains.iter().position(|d| *d == c));
            EdgeView {
                edge: id.to_string(),
                string: e.to_string(),
                class: classify_edge_direct(p, e).expect("undrawn edge is a legal cut"),
                chain,
            }
        })
        .collect();
    let pick = |e: EdgeRef| board.dual_to_primal(e).map(|id| id.to_string()).unwrap_or_default();
    let double_deals = find_double_deals(p)
        .into_iter()
        .map(|dd| DoubleDealView { take: pick(dd.x), decline: pick(dd.y), faces: [dd.pair.0, dd.pair.1] })
        .collect();
    Analysis { state: st.wire(), chains: chain_views, edges, double_deals }
}

/// Runs the service on localhost until interrupted.
pub fn serve(port: u16) -> anyhow::Result<()> {
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async {
        let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, router(Arc::new(AppState::default()))).await?;
        Ok(())
    })
}
