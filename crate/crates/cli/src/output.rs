//! JSON and CSV renderings of reports.

use serde_json::Value as Json;

pub fn render_json(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Flattens nested values into `(path, value)` pairs in document order.
pub fn flatten(v: &Json) -> Vec<(String, String)> {
    fn go(v: &Json, path: String, out: &mut Vec<(String, String)>) {
        match v {
            Json::Object(m) => {
                for (k, x) in m {
                    let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                    go(x, p, out);
                }
            }
            Json::Array(items) => {
                for (i, x) in items.iter().enumerate() {
                    go(x, format!("{path}[{i}]"), out);
                }
            }
            Json::String(s) => out.push((path, s.clone())),
            Json::Null => out.push((path, String::new())),
            other => out.push((path, other.to_string())),
        }
    }
    let mut out = Vec::new();
    go(v, String::new(), &mut out);
    out
}

/// One CSV row per scalar: `item,label,field,value`.
pub fn render_csv(items: &[(String, String, Json)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["item", "label", "field", "value"]).unwrap();
    for (item, label, v) in items {
        for (field, value) in flatten(v) {
            w.write_record([item.as_str(), label.as_str(), field.as_str(), value.as_str()]).unwrap();
        }
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattens_paths() {
        let v = json!({ "a": [1, { "b": "x,y" }], "c": null });
        assert_eq!(
            flatten(&v),
            vec![("a[0]".into(), "1".into()), ("a[1].b".into(), "x,y".into()), ("c".into(), String::new())]
        );
        let csv = render_csv(&[("1".into(), "cmd".into(), v)]);
        assert!(csv.contains("\"x,y\""));
    }
}
