//! Deterministic report serialization.
//!
//! All artifacts are byte-stable for a fixed input: floats print in
//! Rust's shortest round-trip decimal form, JSON keys are emitted in a
//! fixed order by construction, and every artifact ends in a single
//! trailing newline.

use crate::error::Result;
use crate::verify::{ConstantsTable, HolderReport};
use std::path::{Path, PathBuf};

/// Environment variable naming the default output directory for
/// relative artifact paths.
pub const OUT_DIR_ENV: &str = "QCMAP_OUT_DIR";

/// Shortest decimal that round-trips the value (integers drop the dot:
/// `4.0` prints as `4`).
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// Incremental JSON object with caller-controlled key order.
#[derive(Debug, Default)]
pub struct JsonObj {
    buf: String,
}

impl JsonObj {
    pub fn new() -> Self {
        Self::default()
    }

    fn push_key(&mut self, key: &str) {
        if !self.buf.is_empty() {
            self.buf.push(',');
        }
        self.buf.push('"');
        self.buf.push_str(key);
        self.buf.push_str("\":");
    }

    pub fn num(mut self, key: &str, v: f64) -> Self {
        self.push_key(key);
        self.buf.push_str(&fmt_f64(v));
        self
    }

    pub fn int(mut self, key: &str, v: usize) -> Self {
        self.push_key(key);
        self.buf.push_str(&v.to_string());
        self
    }

    pub fn opt_num(mut self, key: &str, v: Option<f64>) -> Self {
        self.push_key(key);
        match v {
            Some(x) => self.buf.push_str(&fmt_f64(x)),
            None => self.buf.push_str("null"),
        }
        self
    }

    pub fn boolean(mut self, key: &str, v: bool) -> Self {
        self.push_key(key);
        self.buf.push_str(if v { "true" } else { "false" });
        self
    }

    pub fn text(mut self, key: &str, v: &str) -> Self {
        self.push_key(key);
        push_json_escaped(&mut self.buf, v);
        self
    }

    pub fn opt_text(self, key: &str, v: Option<&str>) -> Self {
        match v {
            Some(s) => self.text(key, s),
            None => {
                let mut me = self;
                me.push_key(key);
                me.buf.push_str("null");
                me
            }
        }
    }

    pub fn complex(mut self, key: &str, v: num_complex::Complex64) -> Self {
        self.push_key(key);
        self.buf.push('[');
        self.buf.push_str(&fmt_f64(v.re));
        self.buf.push(',');
        self.buf.push_str(&fmt_f64(v.im));
        self.buf.push(']');
        self
    }

    /// Pre-rendered JSON value (e.g. a nested object).
    pub fn raw(mut self, key: &str, v: &str) -> Self {
        self.push_key(key);
        self.buf.push_str(v);
        self
    }

    /// The object without a trailing newline (for nesting).
    pub fn finish_inline(self) -> String {
        format!("{{{}}}", self.buf)
    }

    /// The object as a complete artifact line.
    pub fn finish(self) -> String {
        format!("{{{}}}\n", self.buf)
    }
}

fn push_json_escaped(buf: &mut String, s: &str) {
    buf.push('"');
    for ch in s.chars() {
        match ch {
            '"' => buf.push_str("\\\""),
            '\\' => buf.push_str("\\\\"),
            '\n' => buf.push_str("\\n"),
            '\r' => buf.push_str("\\r"),
            '\t' => buf.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                buf.push_str(&format!("\\u{:04x}", c as u32));
            }
            c => buf.push(c),
        }
    }
    buf.push('"');
}

/// Header of the Hölder-report CSV schema.
pub const HOLDER_CSV_HEADER: &str =
    "K,R,estimate,bound,ratio,witness_z_re,witness_z_im,witness_w_re,witness_w_im,violated";

fn holder_csv_row(r: &HolderReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        fmt_f64(r.k),
        r.r.map(fmt_f64).unwrap_or_default(),
        fmt_f64(r.estimate),
        fmt_f64(r.bound),
        fmt_f64(r.ratio()),
        fmt_f64(r.witness_z.re),
        fmt_f64(r.witness_z.im),
        fmt_f64(r.witness_w.re),
        fmt_f64(r.witness_w.im),
        r.violated
    )
}

/// CSV artifact for one or more Hölder reports.
pub fn holder_csv(reports: &[HolderReport]) -> String {
    let mut out = String::from(HOLDER_CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&holder_csv_row(r));
        out.push('\n');
    }
    out
}

/// JSON artifact for one Hölder report.
pub fn holder_json(r: &HolderReport) -> String {
    let budget = JsonObj::new()
        .int("radii", r.budget.radii)
        .int("angles", r.budget.angles)
        .int("top_seeds", r.budget.top_seeds)
        .int("refine_rounds", r.budget.refine_rounds)
        .finish_inline();
    JsonObj::new()
        .num("K", r.k)
        .opt_num("R", r.r)
        .num("estimate", r.estimate)
        .num("bound", r.bound)
        .num("ratio", r.ratio())
        .complex("witness_z", r.witness_z)
        .complex("witness_w", r.witness_w)
        .boolean("violated", r.violated)
        .num("tol", r.tol)
        .raw("budget", &budget)
        .finish()
}

/// JSON artifact for the constants table.
pub fn constants_json(t: &ConstantsTable) -> String {
    JsonObj::new()
        .num("K", t.k)
        .num("mori", t.mori)
        .num("conjecture", t.conjecture)
        .num("sharp", t.sharp)
        .num("vz", t.vz)
        .finish()
}

/// CSV artifact for the constants table.
pub fn constants_csv(t: &ConstantsTable) -> String {
    format!(
        "K,mori,conjecture,sharp,vz\n{},{},{},{},{}\n",
        fmt_f64(t.k),
        fmt_f64(t.mori),
        fmt_f64(t.conjecture),
        fmt_f64(t.sharp),
        fmt_f64(t.vz)
    )
}

/// Resolve an artifact path: relative paths land in `QCMAP_OUT_DIR`
/// when that variable is set.
pub fn resolve_artifact_path(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

/// Write an artifact, returning the resolved path actually written.
pub fn write_artifact(path: &Path, content: &str) -> Result<PathBuf> {
    let resolved = resolve_artifact_path(path);
    std::fs::write(&resolved, content)?;
    Ok(resolved)
}
