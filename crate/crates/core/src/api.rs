//! JSON-over-HTTP session service.
//!
//! Endpoints:
//!
//! - `POST /session` creates a session from a system document.
//! - `POST /session/{id}/command` applies one [`InteractionCommand`].
//! - `GET /session/{id}/state` returns the current snapshot.
//! - `GET /session/{id}/log` returns the interaction log as TSV text.
//!
//! [`SessionService`] holds the protocol logic and is usable without HTTP;
//! [`router`] wraps it in axum.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex, RwLock};
use std::time::Instant;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::session::{
    DiagramKind, InteractionCommand, OptimizerMode, Session, SessionConfig, Snapshot,
};
use crate::set_model::{SetSystem, SystemDocument};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CreateRequest {
    pub system: SystemDocument,
    pub kind: DiagramKind,
    #[serde(default)]
    pub optimizer: OptimizerMode,
    #[serde(default)]
    pub seed: u64,
    /// Overrides the canvas side of hoop diagrams.
    #[serde(default)]
    pub canvas: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateResponse {
    pub session_id: String,
    #[serde(flatten)]
    pub snapshot: Snapshot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogResponse {
    pub session_id: String,
    pub log: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub session_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub status: StatusCode,
    pub body: ErrorBody,
}

impl ApiError {
    fn new(
        status: StatusCode,
        code: &str,
        message: impl Into<String>,
        session_id: Option<&str>,
    ) -> Self {
        ApiError {
            status,
            body: ErrorBody {
                code: code.to_string(),
                message: message.into(),
                session_id: session_id.map(str::to_string),
            },
        }
    }

    fn unknown_session(id: &str) -> Self {
        Self::new(
            StatusCode::NOT_FOUND,
            "unknown-session",
            format!("no session {id:?}"),
            Some(id),
        )
    }

    fn malformed(message: impl Into<String>, session_id: Option<&str>) -> Self {
        Self::new(
            StatusCode::BAD_REQUEST,
            "malformed-request",
            message,
            session_id,
        )
    }

    fn from_core(err: Error, session_id: Option<&str>) -> Self {
        let status = match err {
            Error::Io(_) => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        Self::new(status, err.code(), err.to_string(), session_id)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = serde_json::to_string(&self.body).expect("error bodies serialize");
        (
            self.status,
            [(header::CONTENT_TYPE, "application/json")],
            body,
        )
            .into_response()
    }
}

/// In-memory session registry. Commands to one session are serialized by
/// its lock; distinct sessions proceed independently.
pub struct SessionService {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    started: Instant,
}

impl Default for SessionService {
    fn default() -> Self {
        Self::new()
    }
}

impl SessionService {
    pub fn new() -> Self {
        SessionService {
            sessions: RwLock::new(HashMap::new()),
            started: Instant::now(),
        }
    }

    fn now_ms(&self) -> u64 {
        self.started.elapsed().as_millis() as u64
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::unknown_session(id))
    }

    pub fn create(&self, request: &CreateRequest) -> Result<StateResponse, ApiError> {
        let system =
            SetSystem::from_document(&request.system).map_err(|e| ApiError::from_core(e, None))?;
        let mut config = SessionConfig {
            seed: request.seed,
            ..SessionConfig::default()
        };
        if let Some(canvas) = request.canvas {
            config.style.canvas_size = canvas;
        }
        let session = Session::create(&system, request.kind, request.optimizer, config)
            .map_err(|e| ApiError::from_core(e, None))?;
        let snapshot = session.snapshot(None);
        let id = uuid::Uuid::new_v4().to_string();
        self.sessions
            .write()
            .unwrap()
            .insert(id.clone(), Arc::new(Mutex::new(session)));
        Ok(StateResponse {
            session_id: id,
            snapshot,
        })
    }

    pub fn command(
        &self,
        id: &str,
        command: &InteractionCommand,
    ) -> Result<StateResponse, ApiError> {
        let cell = self.session(id)?;
        let mut session = cell.lock().unwrap();
        let (next, transition) = session
            .apply(command, self.now_ms())
            .map_err(|e| ApiError::from_core(e, Some(id)))?;
        *session = next;
        Ok(StateResponse {
            session_id: id.to_string(),
            snapshot: session.snapshot(Some(transition)),
        })
    }

    pub fn state(&self, id: &str) -> Result<StateResponse, ApiError> {
        let cell = self.session(id)?;
        let session = cell.lock().unwrap();
        Ok(StateResponse {
            session_id: id.to_string(),
            snapshot: session.snapshot(None),
        })
    }

    pub fn log(&self, id: &str) -> Result<LogResponse, ApiError> {
        let cell = self.session(id)?;
        let session = cell.lock().unwrap();
        Ok(LogResponse {
            session_id: id.to_string(),
            log: session.export_log(),
        })
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn json<T: Serialize>(status: StatusCode, value: &T) -> Response {
    let body = serde_json::to_string(value).expect("responses serialize");
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn reply<T: Serialize>(result: Result<T, ApiError>) -> Response {
    match result {
        Ok(v) => json(StatusCode::OK, &v),
        Err(e) => e.into_response(),
    }
}

async fn create_handler(State(service): State<Arc<SessionService>>, body: Bytes) -> Response {
    let request: CreateRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return ApiError::malformed(e.to_string(), None).into_response(),
    };
    reply(service.create(&request))
}

async fn command_handler(
    State(service): State<Arc<SessionService>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Response {
    if let Err(e) = service.session(&id) {
        return e.into_response();
    }
    let command: InteractionCommand = match serde_json::from_slice(&body) {
        Ok(c) => c,
        Err(e) => return ApiError::malformed(e.to_string(), Some(&id)).into_response(),
    };
    reply(service.command(&id, &command))
}

async fn state_handler(
    State(service): State<Arc<SessionService>>,
    Path(id): Path<String>,
) -> Response {
    reply(service.state(&id))
}

async fn log_handler(
    State(service): State<Arc<SessionService>>,
    Path(id): Path<String>,
) -> Response {
    reply(service.log(&id))
}

pub fn router(service: Arc<SessionService>) -> Router {
    Router::new()
        .route("/session", post(create_handler))
        .route("/session/{id}/command", post(command_handler))
        .route("/session/{id}/state", get(state_handler))
        .route("/session/{id}/log", get(log_handler))
        .with_state(service)
}

/// Binds `addr` and serves until the task is dropped.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(SessionService::new()))).await
}
