//! Deterministic CSV output with `#`-prefixed comment headers and atomic
//! file replacement (write to a temp file in the target directory, then
//! rename).
//!
//! Floats are rendered with Rust's shortest round-trip formatting, so
//! repeated runs with identical inputs produce byte-identical files.

use std::io::Write;
use std::path::Path;

#[derive(Debug, Default)]
pub struct CsvDoc {
    comments: Vec<String>,
    header: Option<String>,
    rows: Vec<String>,
}

/// Render a float with shortest round-trip digits, locale-independent.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{}", v)
    }
}

impl CsvDoc {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reproducibility header line (`# key = value`).
    pub fn comment(&mut self, text: impl AsRef<str>) -> &mut Self {
        self.comments.push(format!("# {}", text.as_ref()));
        self
    }

    pub fn header(&mut self, cols: &[&str]) -> &mut Self {
        self.header = Some(cols.join(","));
        self
    }

    pub fn row(&mut self, fields: &[String]) -> &mut Self {
        self.rows.push(fields.join(","));
        self
    }

    pub fn row_f64(&mut self, values: &[f64]) -> &mut Self {
        let fields: Vec<String> = values.iter().map(|&v| fmt_f64(v)).collect();
        self.row(&fields)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str(c);
            out.push('\n');
        }
        if let Some(h) = &self.header {
            out.push_str(h);
            out.push('\n');
        }
        for r in &self.rows {
            out.push_str(r);
            out.push('\n');
        }
        out
    }

    /// Atomic write: temp file in the destination directory, then rename.
    pub fn write_atomic(&self, path: &Path) -> std::io::Result<()> {
        let dir = path.parent().unwrap_or_else(|| Path::new("."));
        let stem = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "out.csv".to_string());
        let tmp = dir.join(format!(".{stem}.tmp"));
        {
            let mut f = std::fs::File::create(&tmp)?;
            f.write_all(self.render().as_bytes())?;
            f.sync_all()?;
        }
        std::fs::rename(&tmp, path)
    }
}
