use serde_json::Value;

/// Flattens a JSON report into `path: value` lines. Arrays of scalars
/// print inline, e.g. `cone.generators[0]: (1, 0)`.
pub fn text(report: &Value) -> String {
    let mut out = String::new();
    walk(report, "", &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn walk(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(child, &p, out);
            }
        }
        Value::Array(items) => {
            if let Some(parts) = items.iter().map(scalar).collect::<Option<Vec<_>>>() {
                out.push_str(&format!("{path}: ({})\n", parts.join(", ")));
            } else {
                for (i, child) in items.iter().enumerate() {
                    walk(child, &format!("{path}[{i}]"), out);
                }
            }
        }
        _ => out.push_str(&format!("{path}: {}\n", scalar(v).unwrap_or_default())),
    }
}
