//! Deterministic CSV/JSON emission: fixed 12-significant-digit scientific
//! formatting for floats, LF line endings, lexicographically sorted JSON
//! keys. Identical inputs produce byte-identical artifacts.

/// Format a float with 12 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.11e}")
}

/// A JSON scalar or array value already rendered to text.
#[derive(Debug, Clone)]
pub enum JsonValue {
    Number(f64),
    Integer(i64),
    Bool(bool),
    Text(String),
    NumberArray(Vec<f64>),
}

impl JsonValue {
    fn render(&self) -> String {
        match self {
            JsonValue::Number(x) => fmt_f64(*x),
            JsonValue::Integer(i) => i.to_string(),
            JsonValue::Bool(b) => b.to_string(),
            JsonValue::Text(s) => format!("\"{}\"", escape(s)),
            JsonValue::NumberArray(xs) => {
                let inner: Vec<String> = xs.iter().map(|x| fmt_f64(*x)).collect();
                format!("[{}]", inner.join(","))
            }
        }
    }
}

fn escape(s: &str) -> String {
    s.chars()
        .flat_map(|c| match c {
            '"' => "\\\"".chars().collect::<Vec<_>>(),
            '\\' => "\\\\".chars().collect(),
            '\n' => "\\n".chars().collect(),
            c => vec![c],
        })
        .collect()
}

/// Render an object with keys sorted lexicographically.
pub fn json_object(fields: Vec<(String, JsonValue)>) -> String {
    let mut fields = fields;
    fields.sort_by(|a, b| a.0.cmp(&b.0));
    let inner: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("\"{}\":{}", escape(k), v.render()))
        .collect();
    format!("{{{}}}", inner.join(","))
}

/// Render an array of pre-rendered objects.
pub fn json_array(items: Vec<String>) -> String {
    format!("[{}]", items.join(","))
}

/// Render a CSV table: header row plus data rows, LF endings, trailing
/// newline.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
