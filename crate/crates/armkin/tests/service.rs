use axum::body::{Body, Bytes};
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use armkin::service::router;

async fn get(uri: &str) -> (StatusCode, Bytes) {
    let resp = router()
        .oneshot(Request::get(uri).body(Body::empty()).unwrap())
        .await
        .unwrap();
    let status = resp.status();
    assert_eq!(resp.headers()["content-type"], "application/json", "{uri}");
    (status, resp.into_body().collect().await.unwrap().to_bytes())
}

async fn get_json(uri: &str) -> (StatusCode, Value) {
    let (status, body) = get(uri).await;
    (status, serde_json::from_slice(&body).unwrap())
}

#[tokio::test]
async fn info_reports_topology() {
    let (status, v) = get_json("/api/arm/info?lengths=4,3,2,0.5").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["v"], 1);
    assert_eq!(v["class"], "II");
    assert_eq!(v["reach"], json!([0.0, 9.5]));
    assert_eq!(v["vital"], json!([4.5, 3.5, 0.5]));
    assert_eq!(
        v["transitions"]["A"],
        json!({ "z": 4.5, "reachable": true })
    );
}

#[tokio::test]
async fn solve_single_component() {
    let (status, v) = get_json("/api/arm/solve?lengths=2,1&qx=3&qy=0").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["configurations"], json!([[0.0, 0.0]]));
    assert_eq!(v["components"], 1);
}

#[tokio::test]
async fn solve_two_components() {
    let (status, v) = get_json("/api/arm/solve?lengths=2,2,1&qx=0.5&qy=0").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["configurations"].as_array().unwrap().len(), 2);
    assert_eq!(v["agreement"], false);
    assert_eq!(v["certificate"], "Different");
    assert_eq!(v["block"], "LT_BOT");
}

#[tokio::test]
async fn unreachable_is_422() {
    let (status, v) = get_json("/api/arm/solve?lengths=5,1,1&qx=1&qy=0").await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["error"], "unreachable");
    assert_eq!(v["reach"], json!([3.0, 7.0]));
}

#[tokio::test]
async fn bad_requests_are_400() {
    for uri in [
        "/api/arm/solve?lengths=2,1&qx=3",
        "/api/arm/solve?lengths=2,-1&qx=3&qy=0",
        "/api/arm/solve?lengths=2,1&qx=abc&qy=0",
        "/api/arm/solve?lengths=2,1&qx=inf&qy=0",
        "/api/arm/solve?lengths=2,1&qx=0&qy=0",
        "/api/arm/info",
        "/api/arm/info?lengths=3",
    ] {
        let (status, v) = get_json(uri).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{uri}");
        assert_eq!(v["error"], "bad_request", "{uri}");
        assert!(v["message"].is_string());
    }
}

#[tokio::test]
async fn unknown_route_is_404() {
    let (status, v) = get_json("/api/nope").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(v["error"], "not_found");
}

#[tokio::test]
async fn presets_cover_all_classes() {
    let (status, v) = get_json("/api/presets").await;
    assert_eq!(status, StatusCode::OK);
    let mut classes: Vec<&str> = v["presets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["class"].as_str().unwrap())
        .collect();
    classes.sort_unstable();
    assert_eq!(classes, ["I", "II", "III"]);
}

#[tokio::test]
async fn repeated_requests_are_byte_identical() {
    let uri = "/api/arm/solve?lengths=3,2.5,2.5,0.5&qx=0.7&qy=-1.1";
    let (_, a) = get(uri).await;
    let (_, b) = get(uri).await;
    assert_eq!(a, b);
}

#[tokio::test]
async fn solve_matches_forward_kinematics() {
    let (_, v) = get_json("/api/arm/solve?lengths=3,1,2,0.5&qx=-1.5&qy=2").await;
    let lengths = [3.0, 1.0, 2.0, 0.5];
    for cfg in v["configurations"].as_array().unwrap() {
        let (mut x, mut y) = (0.0, 0.0);
        for (l, a) in lengths.iter().zip(cfg.as_array().unwrap()) {
            let a = a.as_f64().unwrap();
            x += l * a.cos();
            y += l * a.sin();
        }
        // Angles are rounded to 12 significant digits.
        assert!((x + 1.5).abs() < 1e-9 && (y - 2.0).abs() < 1e-9, "{x} {y}");
    }
}
