//! Command implementations behind the `braid-orbits` binary.
//!
//! Every command returns a process exit code: 0 for pass, 1 for a verified
//! mismatch, 2 for an input error, 3 for an internal-consistency or budget
//! failure. Reports are JSON documents (see [`crate::formats`]) written to
//! `--output` when given, otherwise to stdout.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use braid_orbits::families::merge_seed_signatures;
use braid_orbits::tuple::is_triangular;
use braid_orbits::{
    enumerate_orbit, reconstruct_tuple, run_pipeline, symmetry_expansion, verify_catalog_row,
    Catalog, CatalogRow, OrbitType, ParamSignature, PipelineOptions, Reconstruction, RowKind,
};

use crate::formats;
use crate::selector::expand_selector;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable naming the default catalog file.
pub const CATALOG_ENV: &str = "BRAID_ORBITS_CATALOG";

/// A command failure carrying the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_INPUT, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_INTERNAL, message: message.into() }
    }
}

enum CatalogSource {
    Builtin(&'static Catalog),
    Owned(Catalog),
}

impl CatalogSource {
    fn get(&self) -> &Catalog {
        match self {
            CatalogSource::Builtin(c) => c,
            CatalogSource::Owned(c) => c,
        }
    }
}

/// `--catalog` wins over the environment variable; with neither, the
/// embedded catalog is used.
fn load_catalog(path: Option<&Path>) -> Result<CatalogSource, CliError> {
    let path = match path {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os(CATALOG_ENV).map(PathBuf::from),
    };
    match path {
        None => Ok(CatalogSource::Builtin(Catalog::builtin())),
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| CliError::input(format!("reading catalog {p:?}: {e}")))?;
            Catalog::parse(&text)
                .map(CatalogSource::Owned)
                .map_err(CliError::input)
        }
    }
}

fn write_json(output: Option<&Path>, v: &Value) -> Result<(), CliError> {
    let text = format!("{}\n", serde_json::to_string_pretty(v).expect("report serializes"));
    match output {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::input(format!("writing report {p:?}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn row_kind_name(kind: RowKind) -> &'static str {
    match kind {
        RowKind::Standard => "standard",
        RowKind::Triangular => "triangular",
        RowKind::Inconsistent => "inconsistent",
        RowKind::DihedralFormula => "dihedral-formula",
        RowKind::DihedralEstimate => "dihedral-estimate",
    }
}

/// Check catalog rows against the engine and report per row.
pub fn cmd_verify(
    table: u8,
    rows: Option<&str>,
    budget: u64,
    catalog: Option<&Path>,
    output: Option<&Path>,
) -> Result<i32, CliError> {
    let catalog = load_catalog(catalog)?;
    let catalog = catalog.get();
    let selected: Vec<&CatalogRow> = match rows {
        Some(sel) => expand_selector(sel)
            .map_err(CliError::input)?
            .iter()
            .map(|id| {
                catalog
                    .get(table, id)
                    .ok_or_else(|| CliError::input(format!("no row {id} in table {table}")))
            })
            .collect::<Result<_, _>>()?,
        None => {
            let all: Vec<&CatalogRow> = catalog.table(table).collect();
            if all.is_empty() {
                return Err(CliError::input(format!("no table {table} in the catalog")));
            }
            all
        }
    };
    let mut row_reports = Vec::new();
    let mut any_fail = false;
    let mut any_error = false;
    for row in selected {
        match verify_catalog_row(row, budget) {
            Ok(report) => {
                println!("{report}");
                any_fail |= !report.pass;
                row_reports.push(json!({
                    "table": report.table,
                    "row": report.row,
                    "pass": report.pass,
                    "expected": report.expected,
                    "observed": report.observed,
                    "detail": report.detail,
                }));
            }
            Err(e) => {
                println!("table {} row {}: ERROR ({e})", row.table, row.row);
                any_error = true;
                row_reports.push(json!({
                    "table": row.table,
                    "row": row.row,
                    "pass": false,
                    "error": e,
                }));
            }
        }
    }
    let code = if any_error {
        EXIT_INTERNAL
    } else if any_fail {
        EXIT_MISMATCH
    } else {
        EXIT_PASS
    };
    let report = json!({
        "schema": formats::VERIFY_REPORT_SCHEMA,
        "table": table,
        "budget": budget,
        "pass": code == EXIT_PASS,
        "rows": row_reports,
    });
    write_json(output, &report)?;
    Ok(code)
}

/// Enumerate the braid orbit of a tuple or concrete-signature document.
pub fn cmd_orbit(
    input: &Path,
    budget: u64,
    output: Option<&Path>,
) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::input(format!("reading {input:?}: {e}")))?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{input:?} is not valid JSON: {e}")))?;
    let schema = doc.get("schema").and_then(Value::as_str).unwrap_or("");
    let (kind, tuple) = match schema {
        formats::TUPLE_SCHEMA => {
            let t = formats::tuple_from_json(&doc).map_err(CliError::input)?;
            if is_triangular(&t) {
                return Err(CliError::input(
                    "tuple rejected: triangular (all matrices share an eigenvector), \
                     so its orbit is not signature-faithful",
                ));
            }
            ("tuple", t)
        }
        formats::SIGNATURE_SCHEMA => {
            let s = formats::signature_from_json(&doc).map_err(CliError::input)?;
            let concrete = formats::concrete_signature(&s, &BTreeMap::new())
                .map_err(CliError::input)?;
            match reconstruct_tuple(&concrete).map_err(CliError::internal)? {
                Reconstruction::Unique(t) => ("signature", t),
                Reconstruction::Triangular => {
                    return Err(CliError::input(
                        "signature rejected: triangular (only triangular tuples realize it)",
                    ));
                }
                Reconstruction::Inconsistent(reason) => {
                    return Err(CliError::input(format!(
                        "signature rejected: inconsistent ({reason})"
                    )));
                }
            }
        }
        other => {
            return Err(CliError::input(format!(
                "expected a '{}' or '{}' document, got schema '{other}'",
                formats::TUPLE_SCHEMA,
                formats::SIGNATURE_SCHEMA,
            )));
        }
    };
    let report = enumerate_orbit(&tuple, budget).map_err(CliError::internal)?;
    println!(
        "{}: finite={} length={} total_states={}",
        kind, report.finite, report.length, report.total_states
    );
    write_json(output, &formats::orbit_report_to_json(kind, &report))?;
    Ok(EXIT_PASS)
}

fn orbit_type_json(kind: &OrbitType) -> Value {
    match kind {
        OrbitType::Exceptional(len) => json!({"type": "exceptional", "length": len}),
        other => json!({"type": other.to_string()}),
    }
}

/// Run the candidate-construction / closure / recognition pipeline.
#[allow(clippy::too_many_arguments)]
pub fn cmd_classify(
    seed_rows: Option<&str>,
    seed_table: u8,
    worked_example: bool,
    full: bool,
    checkpoint: Option<&Path>,
    options: PipelineOptions,
    catalog: Option<&Path>,
    output: Option<&Path>,
) -> Result<i32, CliError> {
    let options = PipelineOptions {
        checkpoint: checkpoint.map(Path::to_path_buf),
        ..options
    };
    let seeds: Vec<ParamSignature> = if worked_example || full {
        let base = merge_seed_signatures();
        if full {
            let mut out: Vec<ParamSignature> = Vec::new();
            for s in &base {
                for e in symmetry_expansion(s) {
                    if !out.contains(&e) {
                        out.push(e);
                    }
                }
            }
            out
        } else {
            base
        }
    } else if let Some(sel) = seed_rows {
        let catalog = load_catalog(catalog)?;
        let catalog = catalog.get();
        let mut seeds = Vec::new();
        for id in expand_selector(sel).map_err(CliError::input)? {
            let row = catalog
                .get(seed_table, &id)
                .ok_or_else(|| CliError::input(format!("no row {id} in table {seed_table}")))?;
            if row.signature.n() != 4 {
                return Err(CliError::input(format!(
                    "seed row {} is not a 4-signature",
                    row.id()
                )));
            }
            let concrete = row
                .signature
                .evaluate(&row.samples)
                .map_err(CliError::input)?;
            seeds.push(ParamSignature::from_particular(&concrete));
        }
        seeds
    } else if matches!(&options.checkpoint, Some(p) if p.exists()) {
        Vec::new() // resume entirely from the checkpoint
    } else {
        return Err(CliError::input(
            "no seeds: pass --seed-rows, --worked-example, --full, \
             or --checkpoint pointing at an existing run",
        ));
    };
    let report = run_pipeline(&seeds, &options).map_err(CliError::internal)?;
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let typed: Vec<Value> = report
        .typed
        .iter()
        .map(|t| {
            *counts.entry(t.kind.to_string()).or_insert(0) += 1;
            let mut v = orbit_type_json(&t.kind);
            let obj = v.as_object_mut().expect("object");
            obj.insert("signature".into(), formats::signature_to_json(&t.candidate.signature));
            obj.insert("provenance".into(), json!(t.candidate.provenance));
            v
        })
        .collect();
    let inconsistent: Vec<Value> = report
        .inconsistent
        .iter()
        .map(|c| {
            json!({
                "signature": formats::signature_to_json(&c.signature),
                "provenance": c.provenance,
            })
        })
        .collect();
    println!(
        "classified {} families ({} culled as inconsistent)",
        report.typed.len(),
        report.inconsistent.len()
    );
    for (kind, count) in &counts {
        println!("  {kind}: {count}");
    }
    let doc = json!({
        "schema": formats::CLASSIFY_REPORT_SCHEMA,
        "counts": counts,
        "typed": typed,
        "inconsistent": inconsistent,
    });
    write_json(output, &doc)?;
    Ok(EXIT_PASS)
}

/// Export a catalog table in the published column order.
pub fn cmd_export(
    table: u8,
    catalog: Option<&Path>,
    output: Option<&Path>,
) -> Result<i32, CliError> {
    let catalog = load_catalog(catalog)?;
    let catalog = catalog.get();
    let rows: Vec<&CatalogRow> = catalog.table(table).collect();
    let Some(first) = rows.first() else {
        return Err(CliError::input(format!("no table {table} in the catalog")));
    };
    let n = first.signature.n();
    let columns = formats::table_columns(n).map_err(CliError::input)?;
    let rows_json: Vec<Value> = rows
        .iter()
        .map(|row| {
            let values = formats::table_row_values(row.length, &row.signature)
                .map_err(CliError::internal)?;
            let mut obj = Map::new();
            obj.insert("row".into(), json!(row.row));
            obj.insert("values".into(), json!(values));
            obj.insert("kind".into(), json!(row_kind_name(row.kind)));
            if let Some(f) = row.family {
                obj.insert("family".into(), json!(f.to_string()));
            }
            if !row.samples.is_empty() {
                let samples: Map<String, Value> = row
                    .samples
                    .iter()
                    .map(|(k, v)| (k.clone(), formats::rational_to_json(v)))
                    .collect();
                obj.insert("samples".into(), Value::Object(samples));
            }
            if let Some(note) = &row.note {
                obj.insert("note".into(), json!(note));
            }
            Ok(Value::Object(obj))
        })
        .collect::<Result<_, CliError>>()?;
    let doc = json!({
        "schema": formats::TABLE_SCHEMA,
        "table": table,
        "n": n,
        "columns": columns,
        "rows": rows_json,
    });
    write_json(output, &doc)?;
    Ok(EXIT_PASS)
}
