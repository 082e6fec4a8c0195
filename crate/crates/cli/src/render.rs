//! Plain-text rendering of a JSON payload.

use serde_json::Value;

pub fn table(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out.truncate(out.trim_end().len());
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// `[1, 2, 3]` style for arrays of scalars.
fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    let items = v.as_array()?;
    let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
    Some(format!("[{}]", parts?.join(", ")))
}

/// Rows of a matrix of scalars, right-aligned per column.
fn matrix(v: &Value) -> Option<Vec<String>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.as_array()?.iter().map(scalar).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> = (0..cols)
        .map(|c| cells.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    Some(
        cells
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(c, s)| format!("{s:>w$}", w = width[c]))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect(),
    )
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            let key_width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, v) in map {
                if let Some(s) = inline(v) {
                    out.push_str(&format!("{pad}{k:<key_width$}  {s}\n"));
                } else if let Some(rows) = matrix(v) {
                    out.push_str(&format!("{pad}{k}\n"));
                    for r in rows {
                        out.push_str(&format!("{pad}  {r}\n"));
                    }
                } else {
                    out.push_str(&format!("{pad}{k}\n"));
                    write_value(out, v, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                if let Some(s) = inline(item) {
                    out.push_str(&format!("{pad}- {s}\n"));
                } else {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    write_value(out, item, indent + 1);
                }
            }
        }
        v => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_scalars_lists_and_matrices() {
        let v = json!({
            "f": 1,
            "elements": [0, 3],
            "rows": [[-1, 1], [2, -1]],
            "status": "ok",
        });
        let text = table(&v);
        assert!(text.contains("elements  [0, 3]"));
        assert!(text.contains("rows\n  -1  1\n   2 -1"));
        assert!(text.contains("status    ok"));
    }

    #[test]
    fn renders_nested_records() {
        let v = json!({"output": {"generators": [{"plus": [3, 0], "minus": [0, 2], "degree": 6}]}});
        let text = table(&v);
        assert!(text.contains("plus    [3, 0]"), "{text}");
        assert!(text.contains("degree  6"));
    }
}
