use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use kbessel::Error;
use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Violation = 1,
    Usage = 2,
    Numerical = 3,
}

/// A failure that ends the command before any output is produced.
#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            exit: Exit::Usage,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = if e.is_numerical() { Exit::Numerical } else { Exit::Usage };
        Self {
            exit,
            message: e.to_string(),
        }
    }
}

/// `f64` in scientific notation with 17 significant digits.
pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

/// Compact JSON whose floats carry 17 significant digits.
struct SeventeenDigits(CompactFormatter);

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(num(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits(CompactFormatter));
    value.serialize(&mut ser).expect("JSON serialization of plain data");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Builds a CSV document with LF line endings.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self { text }
    }

    pub fn row(&mut self, fields: &[String]) {
        let _ = writeln!(self.text, "{}", fields.join(","));
    }

    pub fn finish(self) -> String {
        self.text
    }
}

/// Writes `doc` to `path` through a temporary file in the same directory,
/// so the target either holds the whole document or is left untouched.
pub fn emit(doc: &str, path: Option<&Path>) -> Result<(), Failure> {
    let Some(path) = path else {
        let mut out = io::stdout().lock();
        return out
            .write_all(doc.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| Failure::usage(format!("cannot write to stdout: {e}")));
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: io::Error| Failure::usage(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(doc.as_bytes()).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        let doc = to_json(&serde_json::json!({ "a": 0.1, "b": 1.0, "c": -2.5e-300, "n": 3 }));
        assert_eq!(doc, "{\"a\":1.0000000000000001e-1,\"b\":1.0000000000000000e0,\"c\":-2.5000000000000000e-300,\"n\":3}\n");
        let back: serde_json::Value = serde_json::from_str(&doc).unwrap();
        assert_eq!(back["a"].as_f64(), Some(0.1));
    }

    #[test]
    fn non_finite_becomes_null() {
        assert_eq!(to_json(&f64::NAN), "null\n");
    }

    #[test]
    fn csv_uses_lf() {
        let mut csv = Csv::new(&["x", "y"]);
        csv.row(&["1".into(), "2".into()]);
        assert_eq!(csv.finish(), "x,y\n1,2\n");
    }

    #[test]
    fn numerical_errors_map_to_three() {
        let f: Failure = Error::NonConvergence { max_terms: 5, tail_bound: 1.0 }.into();
        assert_eq!(f.exit, Exit::Numerical);
        let f: Failure = Error::Precondition("mu < nu".into()).into();
        assert_eq!(f.exit, Exit::Usage);
    }
}
