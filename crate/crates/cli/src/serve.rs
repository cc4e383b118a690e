//! HTTP+JSON session API used by the interactive explorer.
//!
//! | method | path                       | body                 |
//! |--------|----------------------------|----------------------|
//! | POST   | `/session`                 | `{"k":int}`          |
//! | GET    | `/session/{id}`            |                      |
//! | POST   | `/session/{id}/flop`       | `{"centers":[id]}`   |
//! | POST   | `/session/{id}/undo`       |                      |
//! | GET    | `/session/{id}/export`     | `?format=dot\|json`  |
//!
//! Every session response is
//! `{"session":id,"config":Configuration,"eligible":[[id]],"history_len":int}`.
//! Bad input is answered with 400, unknown sessions with 404, and moves the
//! engine refuses (illegal or unsupported, or undo with no history) with 409,
//! always as `{"error":string}`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use floplab_core::export::export_configuration;
use floplab_core::{initial_configuration, Configuration, Error, FlopMove, Format, VertexId};
use serde::Deserialize;
use serde_json::{json, Value};

/// One user's walk through configurations; the last entry is current.
#[derive(Debug)]
struct Session {
    history: Vec<Configuration>,
}

impl Session {
    fn current(&self) -> &Configuration {
        self.history.last().expect("a session always holds its start")
    }
}

pub struct AppState {
    default_k: u32,
    next_id: AtomicU64,
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
}

impl AppState {
    pub fn new(default_k: u32) -> Self {
        AppState { default_k, next_id: AtomicU64::new(1), sessions: Mutex::new(HashMap::new()) }
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .lock()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("no session {id:?}")))
    }
}

#[derive(Debug)]
pub struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::IllegalMove(_) | Error::UnsupportedState { .. } => StatusCode::CONFLICT,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError(status, e.to_string())
    }
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError(StatusCode::BAD_REQUEST, format!("malformed JSON body: {e}")))
}

fn view(id: &str, session: &Session) -> Value {
    let c = session.current();
    let eligible: Vec<Vec<VertexId>> = c.eligible_flops(true).iter().map(|mv| mv.centers().collect()).collect();
    json!({
        "session": id,
        "config": c,
        "eligible": eligible,
        "history_len": session.history.len() - 1,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateBody {
    k: Option<u32>,
}

async fn create(State(state): State<Arc<AppState>>, body: Bytes) -> Result<Json<Value>, ApiError> {
    let k = if body.iter().all(u8::is_ascii_whitespace) {
        state.default_k
    } else {
        parse_body::<CreateBody>(&body)?.k.unwrap_or(state.default_k)
    };
    let start = initial_configuration(k)?;
    let id = state.next_id.fetch_add(1, Ordering::Relaxed).to_string();
    let session = Session { history: vec![start] };
    let out = view(&id, &session);
    state.sessions.lock().unwrap().insert(id, Arc::new(Mutex::new(session)));
    Ok(Json(out))
}

async fn show(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = state.session(&id)?;
    let session = session.lock().unwrap();
    Ok(Json(view(&id, &session)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlopBody {
    centers: Vec<String>,
}

async fn flop(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<Value>, ApiError> {
    let request: FlopBody = parse_body(&body)?;
    let centers = request.centers.iter().map(|s| s.parse::<VertexId>()).collect::<Result<Vec<_>, _>>()?;
    let mv = FlopMove::new(centers)?;
    let session = state.session(&id)?;
    let mut session = session.lock().unwrap();
    let next = session.current().apply_flop(&mv)?;
    session.history.push(next);
    Ok(Json(view(&id, &session)))
}

async fn undo(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = state.session(&id)?;
    let mut session = session.lock().unwrap();
    if session.history.len() < 2 {
        return Err(ApiError(StatusCode::CONFLICT, "nothing to undo".into()));
    }
    session.history.pop();
    Ok(Json(view(&id, &session)))
}

#[derive(Deserialize)]
struct ExportQuery {
    format: Option<String>,
}

async fn export(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<ExportQuery>,
) -> Result<Response, ApiError> {
    let format: Format = q.format.as_deref().unwrap_or("dot").parse()?;
    let session = state.session(&id)?;
    let text = export_configuration(session.lock().unwrap().current(), format);
    let content_type = match format {
        Format::Dot => "text/vnd.graphviz; charset=utf-8",
        Format::Json => "application/json",
    };
    Ok(([(header::CONTENT_TYPE, content_type)], text).into_response())
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/session", post(create))
        .route("/session/{id}", get(show))
        .route("/session/{id}/flop", post(flop))
        .route("/session/{id}/undo", post(undo))
        .route("/session/{id}/export", get(export))
        .with_state(state)
}

pub async fn serve(port: u16, default_k: u32) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(AppState::new(default_k)))).await
}
