use serde_json::Value;
use sturmkit_web::{cf_expand, flow_decide, sturmian_window};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn expand() {
    let v = parse(cf_expand("(1+sqrt(5))/4"));
    assert_eq!(v["text"], "[0; 1, (4)]");
    assert_eq!(v["value"]["text"], "1/4+sqrt(5)/4");
    assert!(parse(cf_expand("1+")).get("error").is_some());
}

#[test]
fn window_and_complexity() {
    let v = parse(sturmian_window("sqrt(2)-1", 0, 20));
    assert_eq!(v["symbols"].as_str().unwrap().len(), 20);
    assert_eq!(v["factor_counts"], serde_json::json!([2, 3, 4, 5, 6, 7, 8, 9]));
    assert!(parse(sturmian_window("1/2", 0, 5)).get("error").is_some());
}

#[test]
fn decide() {
    assert_eq!(parse(flow_decide("(1+sqrt(5))/4", "(sqrt(5)-1)/4"))["verdict"], "YES");
    assert_eq!(parse(flow_decide("sqrt(2)", "sqrt(3)"))["verdict"], "NO");
}
