//! JSON lines with 17 significant digits, and a flat CSV projection of the same records.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Decimal text of `v` with 17 significant digits: positional for exponents in `[-5, 17)`,
/// scientific otherwise.
pub fn format_f64(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    let sci = format!("{v:.16e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(1) as usize;
        format!("{v:.decimals$}")
    } else {
        sci
    }
}

fn write_number<W: ?Sized + Write>(writer: &mut W, v: f64) -> io::Result<()> {
    writer.write_all(format_f64(v).as_bytes())
}

struct Compact17;

impl Formatter for Compact17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write_number(writer, value)
    }
    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write_number(writer, value as f64)
    }
}

/// One compact JSON line.
pub fn json_line<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Compact17);
    value.serialize(&mut ser).expect("records serialize");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => format_f64(n.as_f64().unwrap_or(f64::NAN)),
        other => json_line(other),
    }
}

/// Records rendered in the requested format, one per line (CSV adds a header from the first
/// record's top-level keys; nested values become compact JSON cells).
pub fn render(records: &[Value], format: Format) -> String {
    match format {
        Format::Json => records.iter().map(|r| json_line(r) + "\n").collect(),
        Format::Csv => {
            let Some(Value::Object(first)) = records.first() else {
                return records.iter().map(|r| csv_cell(r) + "\n").collect();
            };
            let keys: Vec<&String> = first.keys().collect();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(keys.iter().map(|k| k.as_str())).expect("in-memory write");
            for r in records {
                let row: Vec<String> = keys.iter().map(|k| r.get(k.as_str()).map_or(String::new(), csv_cell)).collect();
                w.write_record(&row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_f64(0.1), "0.10000000000000001");
        assert_eq!(format_f64(3.0), "3.0000000000000000");
        assert_eq!(format_f64(0.0), "0.0");
        assert_eq!(format_f64(1e-7), "9.9999999999999995e-8");
        assert_eq!(format_f64(12345.5), "12345.500000000000");
        for v in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-300, 6.02e23, -4.5] {
            assert_eq!(format_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_uses_the_formatter() {
        let v = serde_json::json!({"a": 0.5, "b": [1, 2.0], "c": "x"});
        assert_eq!(json_line(&v), r#"{"a":0.50000000000000000,"b":[1,2.0000000000000000],"c":"x"}"#);
    }

    #[test]
    fn csv_projection() {
        let rows = vec![serde_json::json!({"kind": "thin", "r": 0.25, "sigma": ["a"]})];
        assert_eq!(render(&rows, Format::Csv), "kind,r,sigma\nthin,0.25000000000000000,\"[\"\"a\"\"]\"\n");
    }
}
