//! Stateless HTTP facade over the profile engine.
//!
//! Routes:
//!
//! - `POST /api/profile`: body `{"dataset": {...}, "config": {...}, "response_format": "json"|"svg"|"html", "title": "..."}`.
//!   `config`, `response_format` (default `json`) and `title` are optional.
//! - `GET /api/schema`: the results-document JSON Schema.
//! - `GET /{path}`: the web UI bundle.
//!
//! Every request carries its own dataset; nothing is stored between requests.

mod assets;

use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, State};
use axum::http::{header, HeaderMap, HeaderValue, Method, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use perfprof::export::CurveDocument;
use perfprof::{
    analyze, emit_schema, parse_dataset, render_html, render_svg, ConfigError, ConfigRequest,
    ValidationReport,
};
use serde::Deserialize;
use serde_json::value::RawValue;
use sha2::{Digest, Sha256};

pub use assets::Assets;

pub const DEFAULT_BODY_LIMIT: usize = 32 * 1024 * 1024;

pub const DENOMINATOR_HEADER: &str = "x-profile-denominator";
pub const EXCLUDED_HEADER: &str = "x-profile-excluded-no-baseline";
pub const MAX_RATIO_HEADER: &str = "x-profile-max-ratio";

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Largest accepted request body, in bytes.
    pub body_limit: usize,
    /// Serve the UI from this directory instead of the embedded bundle.
    pub assets_dir: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            body_limit: DEFAULT_BODY_LIMIT,
            assets_dir: None,
        }
    }
}

struct AppState {
    schema_etag: HeaderValue,
    assets: Assets,
}

pub fn router(config: ServiceConfig) -> Router {
    let digest = Sha256::digest(emit_schema().as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    let state = Arc::new(AppState {
        schema_etag: HeaderValue::from_str(&format!("\"{hex}\"")).expect("hex etag"),
        assets: match config.assets_dir {
            Some(dir) => Assets::Dir(dir),
            None => Assets::Embedded,
        },
    });
    Router::new()
        .route("/api/profile", post(handle_profile))
        .route("/api/schema", get(handle_schema))
        .fallback(serve_static)
        .layer(DefaultBodyLimit::max(config.body_limit))
        .with_state(state)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileRequest<'a> {
    #[serde(borrow)]
    dataset: &'a RawValue,
    #[serde(default)]
    config: Option<serde_json::Value>,
    #[serde(default)]
    response_format: Option<String>,
    #[serde(default)]
    title: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Svg,
    Html,
}

fn unprocessable(report: ValidationReport) -> Response {
    (
        StatusCode::UNPROCESSABLE_ENTITY,
        [(header::CONTENT_TYPE, "application/json")],
        serde_json::to_string(&report).expect("report serializes"),
    )
        .into_response()
}

fn bad_request(message: String) -> Response {
    (
        StatusCode::BAD_REQUEST,
        [(header::CONTENT_TYPE, "application/json")],
        serde_json::json!({ "error": message }).to_string(),
    )
        .into_response()
}

async fn handle_profile(body: Bytes) -> Response {
    let request: ProfileRequest<'_> = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return bad_request(format!("malformed request body: {e}")),
    };

    let mut report = ValidationReport::default();
    let format = match request.response_format.as_deref() {
        None | Some("json") => Some(Format::Json),
        Some("svg") => Some(Format::Svg),
        Some("html") => Some(Format::Html),
        Some(other) => {
            report.error(
                "response_format",
                format!("unknown format {other:?} (expected json, svg or html)"),
            );
            None
        }
    };
    let dataset = match parse_dataset(request.dataset.get().as_bytes()) {
        Ok(ds) => Some(ds),
        Err(r) => {
            report.merge(r.nest("dataset/"));
            None
        }
    };
    let config_request = match request.config {
        None | Some(serde_json::Value::Null) => Some(ConfigRequest::default()),
        Some(value) => match serde_json::from_value::<ConfigRequest>(value) {
            Ok(c) => Some(c),
            Err(e) => {
                report.error("config", e.to_string());
                None
            }
        },
    };
    let (Some(format), Some(dataset), Some(config_request)) = (format, dataset, config_request)
    else {
        return unprocessable(report);
    };
    let config = match config_request.resolve::<f64, _>(&dataset) {
        Ok(c) => c,
        Err(ConfigError(r)) => return unprocessable(r.nest("config/")),
    };
    let profiles = match analyze(&dataset, &config) {
        Ok(p) => p,
        Err(ConfigError(r)) => return unprocessable(r.nest("config/")),
    };

    let mut headers = HeaderMap::new();
    headers.insert(DENOMINATOR_HEADER, profiles.denominator().into());
    headers.insert(EXCLUDED_HEADER, profiles.excluded_no_baseline().into());
    let max_ratio = profiles
        .max_ratio()
        .map_or_else(|| "none".to_owned(), |m| m.to_string());
    headers.insert(
        MAX_RATIO_HEADER,
        HeaderValue::from_str(&max_ratio).expect("numeric header"),
    );

    let (content_type, body) = match format {
        Format::Json => (
            "application/json",
            CurveDocument::from_profiles(&profiles).to_json(),
        ),
        Format::Svg | Format::Html => {
            let svg = match render_svg(&profiles, &config) {
                Ok(svg) => svg,
                Err(e) => {
                    let mut r = ValidationReport::default();
                    r.error("config", e.to_string());
                    return unprocessable(r);
                }
            };
            if format == Format::Svg {
                ("image/svg+xml", svg)
            } else {
                let title = request.title.as_deref().unwrap_or("");
                (
                    "text/html; charset=utf-8",
                    render_html(&svg, title, dataset.metric_name()),
                )
            }
        }
    };
    headers.insert(header::CONTENT_TYPE, HeaderValue::from_static(content_type));
    (StatusCode::OK, headers, body).into_response()
}

async fn handle_schema(State(state): State<Arc<AppState>>, request_headers: HeaderMap) -> Response {
    let etag = state.schema_etag.clone();
    let cache = HeaderValue::from_static("public, max-age=86400");
    let matches = request_headers
        .get_all(header::IF_NONE_MATCH)
        .iter()
        .filter_map(|v| v.to_str().ok())
        .flat_map(|v| v.split(','))
        .any(|tag| {
            let tag = tag.trim();
            tag == "*" || tag.as_bytes() == etag.as_bytes()
        });
    if matches {
        return (
            StatusCode::NOT_MODIFIED,
            [(header::ETAG, etag), (header::CACHE_CONTROL, cache)],
        )
            .into_response();
    }
    (
        StatusCode::OK,
        [
            (
                header::CONTENT_TYPE,
                HeaderValue::from_static("application/schema+json"),
            ),
            (header::ETAG, etag),
            (header::CACHE_CONTROL, cache),
        ],
        emit_schema(),
    )
        .into_response()
}

async fn serve_static(State(state): State<Arc<AppState>>, method: Method, uri: Uri) -> Response {
    if method != Method::GET && method != Method::HEAD {
        return StatusCode::METHOD_NOT_ALLOWED.into_response();
    }
    match state.assets.get(uri.path()).await {
        Some((content_type, bytes)) => {
            ([(header::CONTENT_TYPE, content_type)], bytes).into_response()
        }
        None => (StatusCode::NOT_FOUND, "not found\n").into_response(),
    }
}
