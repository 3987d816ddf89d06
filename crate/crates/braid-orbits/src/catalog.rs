//! The catalog of known finite orbits and its verification harness.
//!
//! Rows are shipped as an embedded, versioned data file. Each row records a
//! table of origin, a row number, the published orbit length (when the table
//! states one), the signature cells in the table's column order, and — for
//! parametric rows — a sample parameter assignment used for verification.
//!
//! Verification reconstructs a tuple from the (evaluated) signature and
//! enumerates its orbit. Rows whose published length depends on the
//! parameters are checked against the dihedral length formula or against the
//! published length bounds instead of a single number.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::affine::parse_affine;
use crate::angle::{parse_rational, Rational};
use crate::cells::CellId;
use crate::orbit::enumerate_orbit;
use crate::reconstruct::{reconstruct_tuple, Reconstruction};
use crate::signature::ParamSignature;
use crate::subgroup::dihedral_length;

const CATALOG_TEXT: &str = include_str!("../data/catalog.txt");

/// How a row's published length is to be checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// Reconstruct, enumerate, compare against the stated length.
    Standard,
    /// The signature only has triangular realizations; reconstruction must
    /// say so. No orbit is enumerated.
    Triangular,
    /// No tuple realizes the signature; reconstruction must say so.
    Inconsistent,
    /// Length is given by the dihedral closed form in the sample parameters.
    DihedralFormula,
    /// Length depends on the parameter denominators; only the published
    /// two-sided bound is checked.
    DihedralEstimate,
}

/// One row of the catalog.
#[derive(Clone, Debug)]
pub struct CatalogRow {
    pub table: u8,
    pub row: String,
    pub length: Option<u64>,
    pub signature: ParamSignature,
    /// Sample parameter values used to verify parametric rows.
    pub samples: BTreeMap<String, Rational>,
    pub kind: RowKind,
    /// Orbit family letter where the source assigns one.
    pub family: Option<char>,
    pub note: Option<String>,
}

impl CatalogRow {
    pub fn id(&self) -> String {
        format!("{}.{}", self.table, self.row)
    }
}

/// The full table collection.
pub struct Catalog {
    rows: Vec<CatalogRow>,
}

impl Catalog {
    /// The catalog shipped with the crate.
    pub fn builtin() -> &'static Catalog {
        static BUILTIN: OnceLock<Catalog> = OnceLock::new();
        BUILTIN.get_or_init(|| Catalog::parse(CATALOG_TEXT).expect("embedded catalog parses"))
    }

    pub fn rows(&self) -> &[CatalogRow] {
        &self.rows
    }

    pub fn get(&self, table: u8, row: &str) -> Option<&CatalogRow> {
        self.rows.iter().find(|r| r.table == table && r.row == row)
    }

    pub fn table(&self, table: u8) -> impl Iterator<Item = &CatalogRow> {
        self.rows.iter().filter(move |r| r.table == table)
    }

    /// Parse the data-file format (see the embedded file for a sample).
    pub fn parse(text: &str) -> Result<Catalog, String> {
        let mut lines = text.lines().map(str::trim).enumerate();
        match lines.next() {
            Some((_, "catalog v1")) => {}
            other => return Err(format!("unsupported catalog header: {other:?}")),
        }
        let mut rows = Vec::new();
        let mut table: Option<(u8, usize)> = None;
        for (idx, line) in lines {
            let fail = |msg: String| format!("catalog line {}: {msg}", idx + 1);
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("table ") {
                let mut it = rest.split_whitespace();
                let t: u8 = it
                    .next()
                    .ok_or_else(|| fail("missing table number".into()))?
                    .parse()
                    .map_err(|e| fail(format!("bad table number: {e}")))?;
                let n: usize = it
                    .next()
                    .and_then(|s| s.strip_prefix("n="))
                    .ok_or_else(|| fail("missing n=".into()))?
                    .parse()
                    .map_err(|e| fail(format!("bad n: {e}")))?;
                table = Some((t, n));
                continue;
            }
            let (t, n) = table.ok_or_else(|| fail("row before any table header".into()))?;
            let (data, opts) = match line.split_once('|') {
                Some((d, o)) => (d, o),
                None => (line, ""),
            };
            let mut fields = data.split_whitespace();
            let row = fields
                .next()
                .ok_or_else(|| fail("missing row id".into()))?
                .to_string();
            let length = match fields.next() {
                Some("-") => None,
                Some(s) => Some(s.parse::<u64>().map_err(|e| fail(format!("bad length: {e}")))?),
                None => return Err(fail("missing length".into())),
            };
            let columns = column_cells(n).map_err(fail)?;
            let mut signature = ParamSignature::new(n);
            for cell in &columns {
                let expr = fields
                    .next()
                    .ok_or_else(|| fail(format!("missing cell {cell}")))?;
                signature.insert(cell.clone(), parse_affine(expr).map_err(fail)?);
            }
            if let Some(extra) = fields.next() {
                return Err(fail(format!("unexpected trailing field '{extra}'")));
            }
            let mut samples = BTreeMap::new();
            let mut kind = RowKind::Standard;
            let mut family = None;
            let mut note = None;
            for opt in opts.split_whitespace() {
                let (key, value) = opt
                    .split_once('=')
                    .ok_or_else(|| fail(format!("bad option '{opt}'")))?;
                match key {
                    "kind" => {
                        kind = match value {
                            "standard" => RowKind::Standard,
                            "triangular" => RowKind::Triangular,
                            "inconsistent" => RowKind::Inconsistent,
                            "dihedral-formula" => RowKind::DihedralFormula,
                            "dihedral-estimate" => RowKind::DihedralEstimate,
                            _ => return Err(fail(format!("unknown kind '{value}'"))),
                        }
                    }
                    "type" => {
                        let mut chars = value.chars();
                        family = chars.next();
                        if family.is_none() || chars.next().is_some() {
                            return Err(fail(format!("bad type '{value}'")));
                        }
                    }
                    "note" => note = Some(value.to_string()),
                    name => {
                        samples.insert(name.to_string(), parse_rational(value).map_err(fail)?);
                    }
                }
            }
            for p in signature.parameters() {
                if !samples.contains_key(&p) {
                    return Err(fail(format!("parameter '{p}' has no sample value")));
                }
            }
            rows.push(CatalogRow {
                table: t,
                row,
                length,
                signature,
                samples,
                kind,
                family,
                note,
            });
        }
        Ok(Catalog { rows })
    }
}

fn column_cells(n: usize) -> Result<Vec<CellId>, String> {
    let pairs: &[[u8; 2]] = match n {
        4 => &[[1, 2], [2, 3], [1, 3], [2, 4]],
        5 => &[[1, 2], [2, 3], [3, 4], [4, 5], [5, 1], [1, 3], [2, 4]],
        _ => return Err(format!("no column layout for n = {n}")),
    };
    let mut out: Vec<CellId> = (1..=n as u8).map(|x| CellId::theta(x, n)).collect();
    out.extend(pairs.iter().map(|p| CellId::sigma(p, n)));
    Ok(out)
}

/// Outcome of checking one catalog row.
#[derive(Clone, Debug)]
pub struct RowReport {
    pub table: u8,
    pub row: String,
    pub pass: bool,
    pub expected: Option<u64>,
    pub observed: Option<u64>,
    pub detail: String,
}

impl fmt::Display for RowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "table {} row {}: {} ({})",
            self.table,
            self.row,
            if self.pass { "pass" } else { "FAIL" },
            self.detail
        )
    }
}

/// Check one catalog row against the engine.
///
/// Parametric rows are evaluated at their stored sample values first. An
/// `Err` means the check could not be carried out (arithmetic failure,
/// budget exhausted); a mismatch is reported through `pass: false`.
pub fn verify_catalog_row(row: &CatalogRow, budget: u64) -> Result<RowReport, String> {
    let report = |pass, observed, detail: String| RowReport {
        table: row.table,
        row: row.row.clone(),
        pass,
        expected: row.length,
        observed,
        detail,
    };
    let sig = row.signature.evaluate(&row.samples)?;
    match row.kind {
        RowKind::Triangular => {
            let got = reconstruct_tuple(&sig)?;
            let pass = matches!(got, Reconstruction::Triangular);
            Ok(report(pass, None, format!("expected triangular, got {got:?}")))
        }
        RowKind::Inconsistent => {
            let got = reconstruct_tuple(&sig)?;
            let pass = matches!(got, Reconstruction::Inconsistent(_));
            Ok(report(pass, None, format!("expected inconsistent, got {got:?}")))
        }
        RowKind::Standard => {
            let expected = row
                .length
                .ok_or_else(|| format!("row {} has no published length", row.id()))?;
            let tuple = match reconstruct_tuple(&sig)? {
                Reconstruction::Unique(t) => t,
                other => return Err(format!("row {}: reconstruction gave {other:?}", row.id())),
            };
            let orbit = enumerate_orbit(&tuple, budget)?;
            if !orbit.finite {
                return Err(format!("row {}: budget {budget} exhausted", row.id()));
            }
            let pass = orbit.length == expected;
            Ok(report(
                pass,
                Some(orbit.length),
                format!("expected length {expected}, observed {}", orbit.length),
            ))
        }
        RowKind::DihedralFormula => {
            let get = |name: &str| {
                row.samples
                    .get(name)
                    .ok_or_else(|| format!("row {}: missing sample '{name}'", row.id()))
            };
            let formula = dihedral_length(get("x")?, get("y")?, get("z")?)?;
            let tuple = match reconstruct_tuple(&sig)? {
                Reconstruction::Unique(t) => t,
                other => return Err(format!("row {}: reconstruction gave {other:?}", row.id())),
            };
            let orbit = enumerate_orbit(&tuple, budget)?;
            if !orbit.finite {
                return Err(format!("row {}: budget {budget} exhausted", row.id()));
            }
            let pass = orbit.length == formula;
            Ok(report(
                pass,
                Some(orbit.length),
                format!("closed form gives {formula}, observed {}", orbit.length),
            ))
        }
        RowKind::DihedralEstimate => {
            let tuple = match reconstruct_tuple(&sig)? {
                Reconstruction::Unique(t) => t,
                other => return Err(format!("row {}: reconstruction gave {other:?}", row.id())),
            };
            let orbit = enumerate_orbit(&tuple, budget)?;
            if !orbit.finite {
                return Err(format!("row {}: budget {budget} exhausted", row.id()));
            }
            // common denominator d of the parameters; published bound is
            // 4d²/π² < length < d²/2 + 1, checked with 9.8696 < π² < 9.8697
            let d = row
                .samples
                .values()
                .map(|q| q.denom().abs())
                .fold(num_bigint::BigInt::from(1), |a, b| a.lcm(&b));
            let d2 = (&d * &d).to_u64().ok_or("denominator overflow")?;
            let pass = orbit.length * 98_697 > d2 * 40_000 && 2 * orbit.length < d2 + 2;
            Ok(report(
                pass,
                Some(orbit.length),
                format!(
                    "length {} vs published bound (4·{d2}/π², {d2}/2 + 1)",
                    orbit.length
                ),
            ))
        }
    }
}
