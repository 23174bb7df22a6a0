use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use hoops::api::{router, SessionService};

async fn send(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let request = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))
        .unwrap();
    let response = app.clone().oneshot(request).await.unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap())
}

fn create_body() -> Value {
    json!({
        "system": {
            "sets": ["Dogs", "Cars", "Poker"],
            "zones": [
                {"members": ["Dogs", "Poker"]},
                {"members": ["Cars"]},
                {"members": ["Dogs"]},
                {"members": ["Cars", "Poker"]}
            ]
        },
        "kind": "hoop"
    })
}

async fn create(app: &Router) -> String {
    let (status, body) = send(app, "POST", "/session", Some(create_body())).await;
    assert_eq!(status, StatusCode::OK);
    body["session_id"].as_str().unwrap().to_string()
}

#[tokio::test]
async fn session_lifecycle() {
    let app = router(Arc::new(SessionService::new()));
    let id = create(&app).await;
    let (_, initial) = send(&app, "GET", &format!("/session/{id}/state"), None).await;
    assert_eq!(initial["set_names"], json!(["Cars", "Dogs", "Poker"]));
    assert!(initial["svg"].as_str().unwrap().starts_with("<svg"));

    let (status, body) = send(
        &app,
        "POST",
        &format!("/session/{id}/command"),
        Some(json!({"type": "reorder_set", "set": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["transition"]["animation_duration_ms"], 1000);
    assert_eq!(body["segment_stats"]["runs_per_set"][1], 1);

    let (_, body) = send(
        &app,
        "POST",
        &format!("/session/{id}/command"),
        Some(json!({"type": "rotate", "direction": "left"})),
    )
    .await;
    assert_eq!(body["transition"]["rotation"], -1);
    assert_eq!(
        body["transition"]["zone_moves"].as_array().unwrap().len(),
        4
    );

    let (_, body) = send(
        &app,
        "POST",
        &format!("/session/{id}/command"),
        Some(json!({"type": "reset"})),
    )
    .await;
    assert_eq!(body["svg"], initial["svg"]);

    let (status, body) = send(&app, "GET", &format!("/session/{id}/log"), None).await;
    assert_eq!(status, StatusCode::OK);
    let log = body["log"].as_str().unwrap();
    assert_eq!(
        log.lines()
            .map(|l| l.split('\t').nth(1).unwrap())
            .collect::<Vec<_>>(),
        ["kind", "click-reorder-set", "rotate-left", "reset"]
    );
}

#[tokio::test]
async fn probe_highlights_without_animation() {
    let app = router(Arc::new(SessionService::new()));
    let id = create(&app).await;
    let (_, body) = send(
        &app,
        "POST",
        &format!("/session/{id}/command"),
        Some(json!({"type": "probe", "x": 366.0, "y": 300.0})),
    )
    .await;
    assert_eq!(
        body["highlight"]["target"],
        json!({"type": "zone", "index": 0})
    );
    assert_eq!(body["transition"]["animation_duration_ms"], 0);
    assert_eq!(body["transition"]["event"], "hover-zone");
}

#[tokio::test]
async fn errors_carry_codes() {
    let app = router(Arc::new(SessionService::new()));
    let (status, body) = send(&app, "GET", "/session/missing/state", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["code"], "unknown-session");

    let id = create(&app).await;
    let (status, body) = send(
        &app,
        "POST",
        &format!("/session/{id}/command"),
        Some(json!({"type": "twirl"})),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["code"], "malformed-request");
    assert_eq!(body["session_id"], id.as_str());

    let (status, body) = send(
        &app,
        "POST",
        &format!("/session/{id}/command"),
        Some(json!({"type": "bring_to_front", "set": 3})),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["code"], "invalid-index");

    let (status, body) = send(&app, "POST", "/session", Some(json!({"kind": "hoop"}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["code"], "malformed-request");

    let mut bad = create_body();
    bad["system"]["zones"] = json!([{"members": ["Dogs"]}, {"members": ["Dogs"]}]);
    let (status, body) = send(&app, "POST", "/session", Some(bad)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["code"], "invalid-system");
}

#[tokio::test]
async fn sessions_are_isolated() {
    let app = router(Arc::new(SessionService::new()));
    let a = create(&app).await;
    let b = create(&app).await;
    assert_ne!(a, b);
    send(
        &app,
        "POST",
        &format!("/session/{a}/command"),
        Some(json!({"type": "rotate", "direction": "right"})),
    )
    .await;
    let (_, sa) = send(&app, "GET", &format!("/session/{a}/state"), None).await;
    let (_, sb) = send(&app, "GET", &format!("/session/{b}/state"), None).await;
    assert_ne!(sa["zone_order"], sb["zone_order"]);
    let (_, log) = send(&app, "GET", &format!("/session/{b}/log"), None).await;
    assert_eq!(log["log"], "");
}
