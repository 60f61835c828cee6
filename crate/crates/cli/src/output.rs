//! Dataset writers. CSV puts metadata in leading `#` comment lines and
//! prints floats with 17 significant digits so that files reproduce
//! bit-identically; JSON carries the same row fields plus a structured
//! metadata block.

use std::io::Write;

use serde_json::{json, Map, Value};
use tjc_core::TwoQubitDensity;

use crate::rows::SurfaceRow;
use crate::CliError;

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Open the output sink: a file path, or stdout for `None` / `-`.
pub fn open_sink(path: Option<&str>) -> Result<Box<dyn Write>, CliError> {
    match path {
        None | Some("-") => Ok(Box::new(std::io::stdout().lock())),
        Some(p) => {
            let f = std::fs::File::create(p).map_err(|e| CliError::Io(format!("{p}: {e}")))?;
            Ok(Box::new(std::io::BufWriter::new(f)))
        }
    }
}

/// Matrix entries as re/im pairs in row-major basis order.
pub fn matrix_fields(rho: &TwoQubitDensity) -> Vec<(String, f64)> {
    let mut out = Vec::with_capacity(32);
    for i in 0..4 {
        for j in 0..4 {
            let z = rho.entry(i, j);
            out.push((format!("m{i}{j}_re"), z.re));
            out.push((format!("m{i}{j}_im"), z.im));
        }
    }
    out
}

pub const SURFACE_BASE_COLUMNS: [&str; 6] = ["beta", "gt", "nbar", "C", "EOF", "negativity"];

pub fn write_surface_csv(
    sink: &mut dyn Write,
    metadata: &[(String, String)],
    rows: &[SurfaceRow],
) -> Result<(), CliError> {
    for (k, v) in metadata {
        writeln!(sink, "# {k} = {v}")?;
    }
    let mut header: Vec<String> = SURFACE_BASE_COLUMNS.iter().map(|s| s.to_string()).collect();
    for i in 0..4 {
        for j in 0..4 {
            header.push(format!("m{i}{j}_re"));
            header.push(format!("m{i}{j}_im"));
        }
    }
    writeln!(sink, "{}", header.join(","))?;
    for row in rows {
        let mut fields = vec![
            fmt_f64(row.beta),
            fmt_f64(row.gt),
            fmt_f64(row.nbar),
            fmt_f64(row.concurrence),
            fmt_f64(row.eof),
            fmt_f64(row.negativity),
        ];
        for (_, v) in matrix_fields(&row.rho) {
            fields.push(fmt_f64(v));
        }
        writeln!(sink, "{}", fields.join(","))?;
    }
    sink.flush()?;
    Ok(())
}

pub fn surface_row_json(row: &SurfaceRow) -> Value {
    let mut obj = Map::new();
    obj.insert("beta".into(), json!(row.beta));
    obj.insert("gt".into(), json!(row.gt));
    obj.insert("nbar".into(), json!(row.nbar));
    obj.insert("C".into(), json!(row.concurrence));
    obj.insert("EOF".into(), json!(row.eof));
    obj.insert("negativity".into(), json!(row.negativity));
    for (k, v) in matrix_fields(&row.rho) {
        obj.insert(k, json!(v));
    }
    Value::Object(obj)
}

pub fn write_json(sink: &mut dyn Write, metadata: Value, rows: Vec<Value>) -> Result<(), CliError> {
    let doc = json!({ "metadata": metadata, "rows": rows });
    serde_json::to_writer_pretty(&mut *sink, &doc).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(sink)?;
    sink.flush()?;
    Ok(())
}
