//! JSON emission with fixed float formatting.
//!
//! Every `f64` is written with 17 significant digits in exponent form
//! (`8.0000000000000004e-1`), which round-trips exactly and keeps output
//! byte-stable across platforms. Non-finite values become `null`.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

/// Top-level object printed by every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope<T> {
    pub tool_version: String,
    pub subcommand: String,
    pub inputs: serde_json::Value,
    pub result: T,
    pub warnings: Vec<String>,
}

impl<T> ReportEnvelope<T> {
    pub fn new(subcommand: &str, inputs: serde_json::Value, result: T) -> Self {
        ReportEnvelope {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            inputs,
            result,
            warnings: Vec::new(),
        }
    }
}

/// Pretty printer that pins float formatting.
pub struct FixedFloatFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl Default for FixedFloatFormatter<'_> {
    fn default() -> Self {
        FixedFloatFormatter {
            inner: PrettyFormatter::with_indent(b"  "),
        }
    }
}

pub fn format_f64(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        "null".to_string()
    }
}

impl Formatter for FixedFloatFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloatFormatter::default());
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Sample {
        x: f64,
        v: Vec<f64>,
        big: i128,
        name: String,
    }

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(format_f64(0.8), "8.0000000000000004e-1");
        assert_eq!(format_f64(1.0), "1.0000000000000000e0");
        assert_eq!(format_f64(f64::NAN), "null");
        assert_eq!(format_f64(-2.5e-300), "-2.5000000000000000e-300");
    }

    #[test]
    fn round_trip_is_exact() {
        let s = Sample {
            x: 0.1 + 0.2,
            v: vec![1.0 / 3.0, -7e200, 5e-324],
            big: i128::MAX / 3,
            name: "diag".into(),
        };
        let text = to_json_string(&s).unwrap();
        let back: Sample = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(text.contains("\n  \"x\": 3.0000000000000004e-1"));
    }
}
