//! Byte-stable JSON fragments.
//!
//! Reports are compared against golden files, so every formatting choice is
//! pinned here: callers emit keys in a fixed order, finite labels print with
//! exactly nine fractional digits, and the infinite label prints as the
//! string `"inf"`.

use ttgs_core::Value;

/// Quotes and escapes a string literal.
pub fn string(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// A label: nine fractional digits, or the `"inf"` sentinel.
pub fn label(value: Value) -> String {
    if value.is_infinite() {
        "\"inf\"".to_string()
    } else {
        float(value.get())
    }
}

/// A finite number with nine fractional digits.
pub fn float(x: f64) -> String {
    format!("{x:.9}")
}

pub fn labels(values: &[Value]) -> String {
    let items: Vec<String> = values.iter().map(|&v| label(v)).collect();
    format!("[{}]", items.join(", "))
}

pub fn counts(values: &[u64]) -> String {
    let items: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", items.join(", "))
}

pub fn indices(values: &[usize]) -> String {
    let items: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", items.join(", "))
}

pub fn floats(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|&v| float(v)).collect();
    format!("[{}]", items.join(", "))
}

/// `null` or a bare index.
pub fn opt_index(value: Option<usize>) -> String {
    match value {
        None => "null".to_string(),
        Some(i) => i.to_string(),
    }
}
