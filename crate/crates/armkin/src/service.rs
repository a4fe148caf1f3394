// Copyright 2026 the Armkin Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Stateless JSON service.
//!
//! Every body carries `"v": 1`. Floats are rounded to 12 significant
//! digits so identical requests produce identical bytes.

use std::collections::HashMap;
use std::net::SocketAddr;

use axum::extract::rejection::QueryRejection;
use axum::extract::Query;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use serde_json::{json, Map, Value};

use crate::arm::{normalize_arm, ArmSpec, EndEffectorTarget, SortedArm};
use crate::design::{design_pair, solve_with};
use crate::error::ArmError;
use crate::format::sig12;
use crate::topology::{path_class, reach_of, transition_values, vital_critical_values};
use crate::verify::component_certificate;

pub const SCHEMA_VERSION: u32 = 1;

/// Named example arms, one per path class.
pub const PRESETS: [(&str, &[f64]); 3] = [
    ("class-I", &[3.0, 2.5, 2.5, 0.5]),
    ("class-II", &[4.0, 3.0, 2.0, 0.5]),
    ("class-III", &[2.0, 2.0, 1.0]),
];

/// Rounds every float in a JSON tree and stamps the schema version.
fn finish(mut body: Value) -> Value {
    fn walk(v: &mut Value) {
        match v {
            Value::Number(n) if n.is_f64() => {
                let x = sig12(n.as_f64().unwrap_or_default());
                *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
            }
            Value::Array(items) => items.iter_mut().for_each(walk),
            Value::Object(map) => map.values_mut().for_each(walk),
            _ => {}
        }
    }
    walk(&mut body);
    if let Value::Object(map) = &mut body {
        map.insert("v".to_string(), json!(SCHEMA_VERSION));
    }
    body
}

fn arm_fields(arm: &SortedArm) -> Map<String, Value> {
    let reach = reach_of(arm);
    let transitions: Map<String, Value> = transition_values(arm)
        .iter()
        .map(|(t, v)| {
            (
                t.label().to_string(),
                json!({ "z": v.z, "reachable": v.reachable }),
            )
        })
        .collect();
    let mut m = Map::new();
    m.insert("lengths".into(), json!(arm.original().lengths()));
    m.insert("sorted".into(), json!(arm.lengths()));
    m.insert("sigma".into(), json!(arm.perm()));
    m.insert("reach".into(), json!([reach.lo, reach.hi]));
    m.insert("class".into(), json!(path_class(arm).label()));
    m.insert("transitions".into(), Value::Object(transitions));
    m.insert("vital".into(), json!(vital_critical_values(arm)));
    m
}

/// Body of `/api/arm/info`.
pub fn info_json(spec: &ArmSpec) -> Value {
    finish(Value::Object(arm_fields(&normalize_arm(spec))))
}

/// Body of a successful `/api/arm/solve`.
pub fn solve_json(spec: &ArmSpec, target: EndEffectorTarget) -> Result<Value, ArmError> {
    let plan = design_pair(&normalize_arm(spec));
    let s = solve_with(&plan, target)?;
    let cert = component_certificate(spec, s.z(), &s.pair[0], &s.pair[1])?;
    let mut m = arm_fields(&s.sorted);
    m.insert("target".into(), json!([target.qx(), target.qy()]));
    m.insert("z".into(), json!(s.z()));
    m.insert("rho".into(), json!(s.rho()));
    m.insert("components".into(), json!(s.report.components()));
    m.insert("connectivity".into(), json!(s.report.connectivity));
    m.insert("block".into(), json!(s.report.state.label()));
    m.insert("configurations".into(), json!(s.configurations));
    m.insert("agreement".into(), json!(s.agreement));
    m.insert("certificate".into(), json!(cert.verdict));
    m.insert("psi".into(), json!([cert.psi_a, cert.psi_b]));
    Ok(finish(Value::Object(m)))
}

/// Body reported for a target outside the reach interval.
pub fn unreachable_json(z: f64, lo: f64, hi: f64) -> Value {
    finish(json!({
        "error": "unreachable",
        "message": format!("base length {z} is outside the reach interval"),
        "z": z,
        "reach": [lo, hi],
    }))
}

/// Body of `/api/presets`.
pub fn presets_json() -> Value {
    let presets: Vec<Value> = PRESETS
        .iter()
        .map(|(name, lengths)| {
            let arm = SortedArm::from_lengths(lengths).expect("presets are valid");
            json!({
                "name": name,
                "lengths": lengths,
                "class": path_class(&arm).label(),
                "vital": vital_critical_values(&arm),
            })
        })
        .collect();
    finish(json!({ "presets": presets }))
}

#[derive(Debug)]
pub enum ApiError {
    BadRequest(String),
    Unreachable { z: f64, lo: f64, hi: f64 },
    Internal(String),
}

impl From<ArmError> for ApiError {
    fn from(e: ArmError) -> Self {
        match e {
            ArmError::Unreachable { z, lo, hi } => ApiError::Unreachable { z, lo, hi },
            ArmError::ChainCollapsed { .. }
            | ArmError::PlanMismatch { .. }
            | ArmError::InvalidSwitchSet
            | ArmError::TriangleInequality { .. }
            | ArmError::DegenerateSide { .. }
            | ArmError::OutOfDomain { .. }
            | ArmError::NotRestricted { .. } => ApiError::Internal(e.to_string()),
            other => ApiError::BadRequest(other.to_string()),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, body) = match self {
            ApiError::BadRequest(message) => (
                StatusCode::BAD_REQUEST,
                finish(json!({ "error": "bad_request", "message": message })),
            ),
            ApiError::Unreachable { z, lo, hi } => (
                StatusCode::UNPROCESSABLE_ENTITY,
                unreachable_json(z, lo, hi),
            ),
            ApiError::Internal(message) => (
                StatusCode::INTERNAL_SERVER_ERROR,
                finish(json!({ "error": "internal", "message": message })),
            ),
        };
        (status, Json(body)).into_response()
    }
}

type Params = Result<Query<HashMap<String, String>>, QueryRejection>;

fn params(q: Params) -> Result<HashMap<String, String>, ApiError> {
    q.map(|Query(m)| m)
        .map_err(|e| ApiError::BadRequest(e.body_text()))
}

fn field<'a>(m: &'a HashMap<String, String>, key: &str) -> Result<&'a str, ApiError> {
    m.get(key)
        .map(String::as_str)
        .ok_or_else(|| ApiError::BadRequest(format!("missing query parameter '{key}'")))
}

fn number(m: &HashMap<String, String>, key: &str) -> Result<f64, ApiError> {
    let raw = field(m, key)?;
    raw.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| ApiError::BadRequest(format!("'{key}' is not a finite number: '{raw}'")))
}

fn lengths(m: &HashMap<String, String>) -> Result<ArmSpec, ApiError> {
    field(m, "lengths")?.parse().map_err(ApiError::BadRequest)
}

async fn info(q: Params) -> Result<Json<Value>, ApiError> {
    let m = params(q)?;
    Ok(Json(info_json(&lengths(&m)?)))
}

async fn solve(q: Params) -> Result<Json<Value>, ApiError> {
    let m = params(q)?;
    let spec = lengths(&m)?;
    let target = EndEffectorTarget::new(number(&m, "qx")?, number(&m, "qy")?)?;
    Ok(Json(solve_json(&spec, target)?))
}

async fn presets() -> Json<Value> {
    Json(presets_json())
}

async fn not_found() -> (StatusCode, Json<Value>) {
    (
        StatusCode::NOT_FOUND,
        Json(finish(json!({ "error": "not_found" }))),
    )
}

pub fn router() -> Router {
    Router::new()
        .route("/api/arm/info", get(info))
        .route("/api/arm/solve", get(solve))
        .route("/api/presets", get(presets))
        .fallback(not_found)
}

/// Serves [`router`] until the process is stopped.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router()).await
}
