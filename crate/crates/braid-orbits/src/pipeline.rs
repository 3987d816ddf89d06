//! Classification pipeline: build candidate 5-signatures from a list of
//! 4-signatures, filter them to braid closure, and recognize orbit types.
//!
//! The three stages mirror the search that produced the catalog:
//!
//! 1. *candidates* — every 4-signature is inducted into a partial
//!    5-signature at each of the five split positions, and the partials are
//!    merged five ways (with sign branching and parameter solving) into
//!    complete candidate 5-signatures;
//! 2. *closure* — candidates whose braid images cannot be merged back into
//!    the list are removed (parametric candidates are replaced by their
//!    constrained copies when only a constrained merge exists), until the
//!    list is closed under all ten braid actions at the signature level;
//! 3. *recognition* — survivors are typed as unit-matrix additions,
//!    cyclic/dihedral/tetrahedral/octahedral/icosahedral, triangular
//!    families, or exceptional orbits; inconsistent signatures, which can
//!    survive closure, are culled here by reconstruction.
//!
//! Long runs checkpoint the candidate list between stages into a versioned
//! text file and resume from it.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use crate::affine::{parse_affine, AffineAngle};
use crate::angle::{rat, Rational};
use crate::cells::{canonical_cell, CellId};
use crate::merge::{
    canonicalize_parameters, max_abs_coeff, merge_signatures, substitute_signature,
};
use crate::orbit::{enumerate_orbit, DEFAULT_BUDGET};
use crate::reconstruct::{reconstruct_tuple, Reconstruction};
use crate::signature::{braid_signature, induct_signature, ParamSignature, Signature};
use crate::subgroup::{classify_subgroup, SubgroupClass};
use crate::tuple::BraidDir;

/// Knobs for a pipeline run.
#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Largest parameter coefficient a merged cell may carry; exceeding it
    /// is a checked error rather than a silent truncation.
    pub max_coeff: i64,
    /// Labeled-state budget for orbit enumeration of exceptional survivors.
    pub orbit_budget: u64,
    /// Safety cap on the intermediate candidate count.
    pub max_candidates: usize,
    /// Checkpoint file written between stages and consulted on startup.
    pub checkpoint: Option<PathBuf>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            max_coeff: 4,
            orbit_budget: DEFAULT_BUDGET,
            max_candidates: 100_000,
            checkpoint: None,
        }
    }
}

/// A candidate 5-signature with the trail of rows and split positions (and
/// closure constraints) that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub signature: ParamSignature,
    pub provenance: Vec<String>,
}

/// Deduplicated list of candidate 5-signatures.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CandidateList {
    pub entries: Vec<Candidate>,
}

impl CandidateList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains_signature(&self, s: &ParamSignature) -> bool {
        let key = normal_form(s);
        self.entries.iter().any(|c| c.signature == key)
    }
}

/// Recognized orbit type of a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitType {
    /// A 4-tuple with a unit (or negated unit) matrix inserted.
    UnitAddition,
    Cyclic,
    Dihedral,
    Tetrahedral,
    Octahedral,
    Icosahedral,
    /// Every realization is triangular; the family is understood
    /// analytically rather than by enumeration.
    Triangular,
    /// None of the above; the recorded value is the enumerated orbit length.
    Exceptional(u64),
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitType::UnitAddition => write!(f, "unit-addition"),
            OrbitType::Cyclic => write!(f, "cyclic"),
            OrbitType::Dihedral => write!(f, "dihedral"),
            OrbitType::Tetrahedral => write!(f, "tetrahedral"),
            OrbitType::Octahedral => write!(f, "octahedral"),
            OrbitType::Icosahedral => write!(f, "icosahedral"),
            OrbitType::Triangular => write!(f, "triangular"),
            OrbitType::Exceptional(len) => write!(f, "exceptional(length {len})"),
        }
    }
}

/// A typed survivor of the full pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct TypedCandidate {
    pub candidate: Candidate,
    pub kind: OrbitType,
}

/// Output of [`recognize_types`]: the typed partition plus the signatures
/// culled as inconsistent.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ClassificationReport {
    pub typed: Vec<TypedCandidate>,
    pub inconsistent: Vec<Candidate>,
}

impl ClassificationReport {
    pub fn count(&self, kind: impl Fn(&OrbitType) -> bool) -> usize {
        self.typed.iter().filter(|t| kind(&t.kind)).count()
    }
}

/// Fold constant cells to canonical angles and renormalize parameters, so
/// that structurally equal families compare equal.
fn normal_form(s: &ParamSignature) -> ParamSignature {
    let folded = s.map_values(|v| match v.as_angle() {
        Some(a) => AffineAngle::constant(a.value().clone()),
        None => v.clone(),
    });
    canonicalize_parameters(&folded)
}

/// Rename every parameter of a signature with a suffix tag, keeping
/// parameter sets of independent signatures disjoint before merging.
fn tag_parameters(s: &ParamSignature, tag: &str) -> ParamSignature {
    let map: BTreeMap<String, String> = s
        .parameters()
        .into_iter()
        .map(|p| (p.clone(), format!("{p}_{tag}")))
        .collect();
    s.map_values(|v| v.rename(&map))
}

/// Relabel matrix indices through a permutation that preserves the cyclic
/// order (a rotation or a reflection), keeping cell values.
fn relabel(s: &ParamSignature, perm: impl Fn(u8) -> u8) -> ParamSignature {
    let n = s.n();
    let mut out = ParamSignature::new(n);
    for (cell, v) in s.cells() {
        let indices: Vec<u8> = cell.indices().iter().map(|&i| perm(i)).collect();
        let cell = canonical_cell(&indices, n).expect("dihedral relabeling preserves cells");
        out.insert(cell, v.clone());
    }
    out
}

/// Negate matrices p and q: cells containing exactly one of them flip their
/// trace sign, i.e. the angle v becomes 1 − v.
fn negate_pair(s: &ParamSignature, p: u8, q: u8) -> ParamSignature {
    let mut out = ParamSignature::new(s.n());
    for (cell, v) in s.cells() {
        let hits = cell.indices().iter().filter(|&&i| i == p || i == q).count();
        let v = if hits % 2 == 1 {
            AffineAngle::constant(Rational::from_integer(1.into())).sub(v)
        } else {
            v.clone()
        };
        out.insert(cell.clone(), v);
    }
    out
}

/// Closure of a signature under the symmetries that act on signatures
/// without touching matrices: cyclic relabeling, inversion-reversal, and
/// sign flips of matrix pairs. Members are in normal form.
pub fn symmetry_expansion(s: &ParamSignature) -> Vec<ParamSignature> {
    let n = s.n() as u8;
    let mut out: Vec<ParamSignature> = Vec::new();
    let mut queue = vec![normal_form(s)];
    while let Some(cur) = queue.pop() {
        if out.contains(&cur) {
            continue;
        }
        queue.push(normal_form(&relabel(&cur, |i| i % n + 1)));
        queue.push(normal_form(&relabel(&cur, |i| n + 1 - i)));
        for p in 1..=n {
            for q in p + 1..=n {
                queue.push(normal_form(&negate_pair(&cur, p, q)));
            }
        }
        out.push(cur);
    }
    out
}

/// Close a list of complete 4-signatures under the eight braid actions.
///
/// Candidate construction needs a braid-closed seed list: a braid image of
/// a built 5-signature reduces to braid images of the seeds, so closure
/// filtering against candidates built from an unclosed list would cull
/// everything. The cap bounds runaway inputs with a checked error.
pub fn braid_seed_closure(seeds: &[ParamSignature], cap: usize) -> Result<Vec<ParamSignature>, String> {
    let mut out: Vec<ParamSignature> = Vec::new();
    let mut queue: Vec<ParamSignature> = seeds.iter().map(normal_form).collect();
    while let Some(cur) = queue.pop() {
        if cur.n() != 4 {
            return Err(format!("4-signature expected, got n={}", cur.n()));
        }
        if out.contains(&cur) {
            continue;
        }
        for k in 1..=4 {
            for dir in [BraidDir::Forward, BraidDir::Backward] {
                queue.push(normal_form(&braid_signature(&cur, k, dir)));
            }
        }
        out.push(cur);
        if out.len() > cap {
            return Err(format!("seed braid closure exceeds the cap of {cap}"));
        }
    }
    Ok(out)
}

fn push_unique(list: &mut Vec<Candidate>, mut cand: Candidate) {
    cand.signature = normal_form(&cand.signature);
    if list.iter().any(|c| c.signature == cand.signature) {
        return;
    }
    list.push(cand);
}

/// Build complete candidate 5-signatures from a list of 4-signatures.
///
/// Every 4-signature is inducted at each of the five split positions; the
/// partials are merged across the positions in all compatible ways (the
/// merge branches over signs of shared parametric cells and solves the
/// induced linear conditions), and only candidates defining all twenty
/// cells survive. Callers wanting the full symmetry family of each row
/// expand it with [`symmetry_expansion`] first.
pub fn build_candidates(
    list4: &[ParamSignature],
    options: &PipelineOptions,
) -> Result<CandidateList, String> {
    let mut by_position: Vec<Vec<(Candidate, bool)>> = Vec::with_capacity(5);
    for position in 1..=5usize {
        let mut bucket = Vec::new();
        for (row, s4) in list4.iter().enumerate() {
            if s4.n() != 4 {
                return Err(format!("4-signature expected, got n={}", s4.n()));
            }
            let tag = format!("r{}p{}", row + 1, position);
            let concrete = s4.parameters().is_empty();
            // tag after normalizing: canonical names collide across rows,
            // and merging treats same-named parameters as shared
            let lifted =
                tag_parameters(&normal_form_partial(&induct_signature(s4, position)?), &tag);
            let cand = Candidate {
                signature: lifted,
                provenance: vec![tag],
            };
            bucket.push((cand, concrete));
        }
        by_position.push(bucket);
    }
    let mut acc: BTreeMap<String, (Candidate, bool)> = by_position[0]
        .iter()
        .map(|e| (render_signature(&e.0.signature), e.clone()))
        .collect();
    for bucket in &by_position[1..] {
        let mut next: BTreeMap<String, (Candidate, bool)> = BTreeMap::new();
        for (a, a_concrete) in acc.values() {
            for (b, b_concrete) in bucket {
                let concrete = *a_concrete && *b_concrete;
                let merged_branches: Vec<ParamSignature> = if concrete {
                    // both sides have constant cells only: a merge is just an
                    // agreement check on shared cells plus a union
                    merge_concrete(&a.signature, &b.signature).into_iter().collect()
                } else {
                    merge_signatures(&a.signature, &b.signature)
                        .map_err(|e| {
                            format!("merging {:?} with {:?}: {e}", a.provenance, b.provenance)
                        })?
                        .into_iter()
                        .map(|(m, _)| normal_form_partial(&m))
                        .collect()
                };
                for merged in merged_branches {
                    if max_abs_coeff(&merged) > options.max_coeff {
                        return Err(format!(
                            "parameter coefficient exceeds {} while merging {:?} with {:?}",
                            options.max_coeff, a.provenance, b.provenance
                        ));
                    }
                    let key = render_signature(&merged);
                    next.entry(key).or_insert_with(|| {
                        let mut provenance = a.provenance.clone();
                        provenance.extend(b.provenance.iter().cloned());
                        (Candidate { signature: merged, provenance }, concrete)
                    });
                    if next.len() > options.max_candidates {
                        return Err(format!(
                            "candidate list exceeds the cap of {}",
                            options.max_candidates
                        ));
                    }
                }
            }
        }
        acc = next;
    }
    let entries = acc
        .into_values()
        .map(|(c, _)| c)
        .filter(|c| c.signature.is_complete())
        .collect();
    Ok(CandidateList { entries })
}

/// Merge two partial signatures with constant cells: the shared cells must
/// agree as angles, and the result is the union.
fn merge_concrete(a: &ParamSignature, b: &ParamSignature) -> Option<ParamSignature> {
    let mut out = a.clone();
    for (cell, v) in b.cells() {
        match a.get(cell) {
            Some(w) => {
                if w.as_angle() != v.as_angle() {
                    return None;
                }
            }
            None => out.insert(cell.clone(), v.clone()),
        }
    }
    Some(out)
}

/// Normal form for possibly incomplete signatures: fold constants; only
/// canonicalize parameters when any are present.
fn normal_form_partial(s: &ParamSignature) -> ParamSignature {
    let folded = s.map_values(|v| match v.as_angle() {
        Some(a) => AffineAngle::constant(a.value().clone()),
        None => v.clone(),
    });
    if folded.parameters().is_empty() {
        folded
    } else {
        canonicalize_parameters(&folded)
    }
}

fn render_signature(s: &ParamSignature) -> String {
    let cells: Vec<String> = s.cells().map(|(c, v)| format!("{c}={v}")).collect();
    format!("n={};{}", s.n(), cells.join(";"))
}

/// True when some merge branch leaves every parameter of `image` unbound.
fn merge_outcomes(
    image: &ParamSignature,
    partner: &ParamSignature,
) -> Result<(bool, Vec<BTreeMap<String, AffineAngle>>), String> {
    let image_params = image.parameters();
    let partner = tag_parameters(partner, "o");
    let mut constrained = Vec::new();
    for (_, assignments) in
        merge_signatures(image, &partner).map_err(|e| format!("closure merge failed: {e}"))?
    {
        // a binding that merely renames an image parameter into a partner
        // parameter is not a condition; the merge is condition-free exactly
        // when the image keeps its full parameter dimension
        let substituted = canonicalize_parameters(&substitute_signature(image, &assignments));
        if substituted.parameters().len() >= image_params.len() {
            return Ok((true, Vec::new()));
        }
        // keep only the conditions on the image's own parameters; partner
        // parameters surviving inside the bound expressions stay free and
        // are renamed away by canonicalization later
        let restricted: BTreeMap<String, AffineAngle> = assignments
            .into_iter()
            .filter(|(k, _)| image_params.contains(k))
            .collect();
        constrained.push(restricted);
    }
    Ok((false, constrained))
}

/// Filter a candidate list to its largest subset closed under all ten braid
/// actions at the signature level.
///
/// Parameter-free candidates whose some braid image merges with no list
/// member are excluded. A parametric candidate survives a braid action if
/// some member merges with the image without binding the image's
/// parameters; otherwise the candidate is replaced by copies constrained by
/// each binding that does allow a merge, and excluded itself. The rounds
/// repeat until nothing changes, so the output is a fixpoint.
pub fn closure_filter(list: CandidateList) -> Result<CandidateList, String> {
    let gens: Vec<(i64, BraidDir)> = (1..=5)
        .flat_map(|k| [(k, BraidDir::Forward), (k, BraidDir::Backward)])
        .collect();
    let mut list = list;
    loop {
        let snapshot = list.entries.clone();
        let mut keep: Vec<Candidate> = Vec::new();
        let mut changed = false;
        'cands: for cand in &snapshot {
            let parametric = !cand.signature.parameters().is_empty();
            for &(k, dir) in &gens {
                let image = braid_signature(&cand.signature, k, dir);
                let mut constrained: Vec<BTreeMap<String, AffineAngle>> = Vec::new();
                let mut free_merge = false;
                for t in &snapshot {
                    let (free, mut conds) = merge_outcomes(&image, &t.signature)?;
                    if free {
                        free_merge = true;
                        break;
                    }
                    constrained.append(&mut conds);
                }
                if free_merge {
                    continue;
                }
                changed = true;
                if parametric {
                    for conds in constrained {
                        let copy = substitute_signature(&cand.signature, &conds);
                        let mut provenance = cand.provenance.clone();
                        provenance.push(format!(
                            "constrained({})",
                            conds.iter()
                                .map(|(k, v)| format!("{k}={v}"))
                                .collect::<Vec<_>>()
                                .join("&")
                        ));
                        push_unique(&mut keep, Candidate { signature: copy, provenance });
                    }
                }
                continue 'cands;
            }
            push_unique(&mut keep, cand.clone());
        }
        list = CandidateList { entries: keep };
        if !changed {
            return Ok(list);
        }
    }
}

/// Compare two cell values up to the trace-level identifications: equal,
/// negated, or (for constants) equal as normalized angles.
fn same_cell_value(a: &AffineAngle, b: &AffineAngle) -> bool {
    if let (Some(x), Some(y)) = (a.as_angle(), b.as_angle()) {
        return x == y;
    }
    a == b || *a == b.neg()
}

/// A signature of a tuple with a unit (or negated unit) matrix at some
/// position: the matrix angle is integral and every larger cell through
/// that position agrees with the cell that drops it (negated for −1).
pub fn is_unit_addition(s: &ParamSignature) -> bool {
    let n = s.n();
    'positions: for i in 1..=n as u8 {
        let Some(a) = s.get(&CellId::theta(i, n)).and_then(AffineAngle::as_angle) else {
            continue;
        };
        if !a.is_integral() {
            continue;
        }
        let flip = !a.is_zero();
        for (cell, v) in s.cells() {
            if !cell.contains(i) || cell.indices().len() == 1 {
                continue;
            }
            let rest: Vec<u8> = cell.indices().iter().copied().filter(|&j| j != i).collect();
            let Ok(dropped) = canonical_cell(&rest, n) else {
                continue 'positions;
            };
            let Some(w) = s.get(&dropped) else {
                continue 'positions;
            };
            let want = if flip {
                AffineAngle::constant(Rational::from_integer(1.into())).sub(w)
            } else {
                w.clone()
            };
            if !same_cell_value(v, &want) {
                continue 'positions;
            }
        }
        return true;
    }
    false
}

/// Evaluate a parametric signature at generic sample values (distinct odd
/// prime denominators) for reconstruction-based recognition.
fn sample_signature(s: &ParamSignature) -> Result<Signature, String> {
    let samples = [rat(1, 5), rat(1, 7), rat(1, 9), rat(1, 11), rat(1, 13)];
    let values: BTreeMap<String, Rational> = s
        .parameters()
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            samples
                .get(i)
                .cloned()
                .ok_or_else(|| format!("more parameters than sample values: {p}"))
                .map(|v| (p, v))
        })
        .collect::<Result<_, _>>()?;
    s.evaluate(&values)
}

/// Type every candidate: unit additions by cell inspection, the rest by
/// reconstructing (a generic sample of) the signature and classifying the
/// subgroup its matrices generate; signatures with no realization are
/// culled into the inconsistent list.
pub fn recognize_types(
    list: &CandidateList,
    options: &PipelineOptions,
) -> Result<ClassificationReport, String> {
    let mut report = ClassificationReport::default();
    for cand in &list.entries {
        if is_unit_addition(&cand.signature) {
            report.typed.push(TypedCandidate {
                candidate: cand.clone(),
                kind: OrbitType::UnitAddition,
            });
            continue;
        }
        let sig = sample_signature(&cand.signature)?;
        let kind = match reconstruct_tuple(&sig)? {
            Reconstruction::Inconsistent(_) => {
                report.inconsistent.push(cand.clone());
                continue;
            }
            Reconstruction::Triangular => OrbitType::Triangular,
            Reconstruction::Unique(t) => match classify_subgroup(&t) {
                SubgroupClass::Cyclic => OrbitType::Cyclic,
                SubgroupClass::Dihedral => OrbitType::Dihedral,
                SubgroupClass::Tetrahedral => OrbitType::Tetrahedral,
                SubgroupClass::Octahedral => OrbitType::Octahedral,
                SubgroupClass::Icosahedral => OrbitType::Icosahedral,
                SubgroupClass::Other => {
                    let orbit = enumerate_orbit(&t, options.orbit_budget)?;
                    if !orbit.finite {
                        return Err(format!(
                            "orbit budget exhausted on candidate {:?}",
                            cand.provenance
                        ));
                    }
                    OrbitType::Exceptional(orbit.length)
                }
            },
        };
        report.typed.push(TypedCandidate {
            candidate: cand.clone(),
            kind,
        });
    }
    Ok(report)
}

const CHECKPOINT_HEADER: &str = "pipeline checkpoint v1";

fn options_stamp(options: &PipelineOptions) -> String {
    format!(
        "max_coeff={} orbit_budget={} max_candidates={}",
        options.max_coeff, options.orbit_budget, options.max_candidates
    )
}

fn render_candidate(c: &Candidate) -> String {
    let cells: Vec<String> = c
        .signature
        .cells()
        .map(|(cell, v)| format!("{cell}={v}"))
        .collect();
    format!(
        "n={}; {} | prov={}",
        c.signature.n(),
        cells.join("; "),
        c.provenance.join(",")
    )
}

fn parse_cell_name(name: &str, n: usize) -> Result<CellId, String> {
    let rest = name
        .strip_prefix("theta_")
        .or_else(|| name.strip_prefix("sigma_"))
        .ok_or_else(|| format!("bad cell name {name}"))?;
    let indices: Vec<u8> = rest
        .split(',')
        .map(|t| t.parse::<u8>().map_err(|e| format!("bad cell index {t}: {e}")))
        .collect::<Result<_, _>>()?;
    canonical_cell(&indices, n)
}

fn parse_candidate(line: &str) -> Result<Candidate, String> {
    let (body, prov) = line
        .split_once(" | prov=")
        .ok_or_else(|| format!("candidate line missing provenance: {line}"))?;
    let mut fields = body.split("; ");
    let n: usize = fields
        .next()
        .and_then(|f| f.strip_prefix("n="))
        .ok_or("candidate line missing size")?
        .parse()
        .map_err(|e| format!("bad size: {e}"))?;
    let mut signature = ParamSignature::new(n);
    for field in fields {
        let (name, expr) = field
            .split_once('=')
            .ok_or_else(|| format!("bad cell field {field}"))?;
        signature.insert(parse_cell_name(name, n)?, parse_affine(expr)?);
    }
    Ok(Candidate {
        signature,
        provenance: prov.split(',').map(str::to_string).collect(),
    })
}

/// Write a stage checkpoint: versioned header, the options it belongs to,
/// and the candidate list.
pub fn save_checkpoint(
    path: &Path,
    stage: &str,
    options: &PipelineOptions,
    list: &CandidateList,
) -> Result<(), String> {
    let mut out = String::new();
    out.push_str(CHECKPOINT_HEADER);
    out.push('\n');
    out.push_str(&format!("stage {stage}\n"));
    out.push_str(&format!("options {}\n", options_stamp(options)));
    out.push_str(&format!("entries {}\n", list.len()));
    for c in &list.entries {
        out.push_str(&render_candidate(c));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| format!("writing checkpoint {path:?}: {e}"))
}

/// Load a checkpoint if the file exists; fails when the header, options, or
/// entry count do not match what was written.
pub fn load_checkpoint(
    path: &Path,
    options: &PipelineOptions,
) -> Result<Option<(String, CandidateList)>, String> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(format!("reading checkpoint {path:?}: {e}")),
    };
    let mut lines = text.lines();
    if lines.next() != Some(CHECKPOINT_HEADER) {
        return Err("unrecognized checkpoint header".into());
    }
    let stage = lines
        .next()
        .and_then(|l| l.strip_prefix("stage "))
        .ok_or("checkpoint missing stage")?
        .to_string();
    let stamp = lines
        .next()
        .and_then(|l| l.strip_prefix("options "))
        .ok_or("checkpoint missing options")?;
    if stamp != options_stamp(options) {
        return Err(format!(
            "checkpoint was written with different options ({stamp})"
        ));
    }
    let count: usize = lines
        .next()
        .and_then(|l| l.strip_prefix("entries "))
        .ok_or("checkpoint missing entry count")?
        .parse()
        .map_err(|e| format!("bad entry count: {e}"))?;
    let entries: Vec<Candidate> = lines.map(parse_candidate).collect::<Result<_, _>>()?;
    if entries.len() != count {
        return Err(format!(
            "checkpoint advertises {count} entries but contains {}",
            entries.len()
        ));
    }
    Ok(Some((stage, CandidateList { entries })))
}

/// Run all three stages, checkpointing between them when configured. A
/// matching checkpoint resumes the run after the stage it recorded.
pub fn run_pipeline(
    list4: &[ParamSignature],
    options: &PipelineOptions,
) -> Result<ClassificationReport, String> {
    let resumed = match &options.checkpoint {
        Some(path) => load_checkpoint(path, options)?,
        None => None,
    };
    let (stage, list) = match resumed {
        Some(x) => x,
        None => {
            let built = build_candidates(list4, options)?;
            if let Some(path) = &options.checkpoint {
                save_checkpoint(path, "candidates", options, &built)?;
            }
            ("candidates".to_string(), built)
        }
    };
    let closed = if stage == "closed" {
        list
    } else {
        let closed = closure_filter(list)?;
        if let Some(path) = &options.checkpoint {
            save_checkpoint(path, "closed", options, &closed)?;
        }
        closed
    };
    recognize_types(&closed, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::catalog::Catalog;
    use crate::cells::enumerate_cells;
    use crate::families::{tuple_f, tuple_f_sources};
    use crate::signature::signature_of_tuple;
    use crate::tuple::{braid_tuple, MonodromyTuple};
    use std::collections::VecDeque;

    fn desk_seeds() -> Vec<ParamSignature> {
        tuple_f_sources()
            .iter()
            .map(|t| ParamSignature::from_particular(&signature_of_tuple(t).unwrap()))
            .collect()
    }

    fn f_signature() -> ParamSignature {
        normal_form(&ParamSignature::from_particular(
            &signature_of_tuple(&tuple_f()).unwrap(),
        ))
    }

    /// All signatures reachable from a tuple by braid moves, in normal form.
    fn orbit_signatures(t: &MonodromyTuple) -> Vec<Candidate> {
        let mut seen: Vec<ParamSignature> = Vec::new();
        let mut queue = VecDeque::new();
        queue.push_back(t.clone());
        seen.push(normal_form(&ParamSignature::from_particular(
            &signature_of_tuple(t).unwrap(),
        )));
        while let Some(cur) = queue.pop_front() {
            for k in 1..=5 {
                for dir in [BraidDir::Forward, BraidDir::Backward] {
                    let next = braid_tuple(&cur, k, dir);
                    let s = normal_form(&ParamSignature::from_particular(
                        &signature_of_tuple(&next).unwrap(),
                    ));
                    if !seen.contains(&s) {
                        seen.push(s);
                        queue.push_back(next);
                    }
                }
            }
        }
        seen.into_iter()
            .map(|signature| Candidate {
                signature,
                provenance: vec!["orbit".into()],
            })
            .collect()
    }

    fn flat_inconsistent_signature() -> ParamSignature {
        // all θ = 0 and all σ = 1: survives closure but has no realization
        let mut s = ParamSignature::new(5);
        for cell in enumerate_cells(5) {
            let v = if cell.is_theta() { 0 } else { 1 };
            s.insert(cell, AffineAngle::constant(rat(v, 1)));
        }
        s
    }

    #[test]
    fn empty_input_gives_empty_candidates() {
        let list = build_candidates(&[], &PipelineOptions::default()).unwrap();
        assert!(list.is_empty());
    }

    #[test]
    fn symmetry_expansion_contains_rotations_and_sign_flips() {
        let s = ParamSignature::from_particular(
            &signature_of_tuple(&tuple_f_sources()[3]).unwrap(),
        );
        let family = symmetry_expansion(&s);
        assert!(family.contains(&normal_form(&s)));
        assert!(family.contains(&normal_form(&relabel(&s, |i| i % 4 + 1))));
        assert!(family.contains(&normal_form(&negate_pair(&s, 1, 3))));
        // closed under the generators
        for member in &family {
            assert!(family.contains(&normal_form(&relabel(member, |i| i % 4 + 1))));
            assert!(family.contains(&normal_form(&negate_pair(member, 2, 4))));
        }
    }

    #[test]
    fn desk_scale_candidates_contain_the_tetrahedral_signature() {
        let list = build_candidates(&desk_seeds(), &PipelineOptions::default()).unwrap();
        assert!(list.contains_signature(&f_signature()));
        for c in &list.entries {
            assert!(c.signature.is_complete());
            assert_eq!(c.provenance.len(), 5);
        }
    }

    #[test]
    fn unit_catalog_row_produces_a_unit_addition_family() {
        let row = Catalog::builtin().get(1, "2").unwrap();
        let list = build_candidates(
            &[row.signature.clone()],
            &PipelineOptions::default(),
        )
        .unwrap();
        assert!(list.entries.iter().any(|c| is_unit_addition(&c.signature)));
    }

    #[test]
    fn complete_orbit_is_a_closure_fixpoint() {
        let entries = orbit_signatures(&tuple_f());
        let list = CandidateList { entries };
        let filtered = closure_filter(list.clone()).unwrap();
        assert_eq!(filtered.len(), list.len());
        // rerunning is the identity
        assert_eq!(closure_filter(filtered.clone()).unwrap().len(), filtered.len());
    }

    #[test]
    fn lone_signature_is_culled_by_closure() {
        let list = CandidateList {
            entries: vec![Candidate {
                signature: f_signature(),
                provenance: vec!["lone".into()],
            }],
        };
        assert!(closure_filter(list).unwrap().is_empty());
    }

    #[test]
    fn inconsistent_signature_survives_closure_but_not_recognition() {
        let list = CandidateList {
            entries: vec![Candidate {
                signature: flat_inconsistent_signature(),
                provenance: vec!["flat".into()],
            }],
        };
        let closed = closure_filter(list).unwrap();
        assert_eq!(closed.len(), 1);
        let report = recognize_types(&closed, &PipelineOptions::default()).unwrap();
        assert!(report.typed.is_empty());
        assert_eq!(report.inconsistent.len(), 1);
    }

    #[test]
    fn unit_addition_detection() {
        // (A, B, C, I) signature: cells through 4 copy the cell without it
        let t = tuple_f_sources()[0].clone(); // starts with the identity
        let s = ParamSignature::from_particular(&signature_of_tuple(&t).unwrap());
        assert!(is_unit_addition(&s));
        assert!(!is_unit_addition(&f_signature()));
        // negating the unit still counts: the matrix is −I
        assert!(is_unit_addition(&negate_pair(&s, 1, 2)));
    }

    #[test]
    fn positional_chain_of_parametric_seeds_merges_to_the_tetrahedral_signature() {
        // merging the five families at their home positions, branching over
        // signs and solving the induced relations, pins every parameter and
        // leaves the tetrahedral signature among the branches
        let seeds = crate::families::merge_seed_signatures();
        let f = f_signature();
        let mut acc: Vec<ParamSignature> = Vec::new();
        for (i, s) in seeds.iter().enumerate() {
            let tag = format!("r{}p{}", i + 1, i + 1);
            let lifted =
                tag_parameters(&normal_form_partial(&induct_signature(s, i + 1).unwrap()), &tag);
            if acc.is_empty() {
                acc.push(lifted);
                continue;
            }
            let mut next = Vec::new();
            for a in &acc {
                for (m, _) in merge_signatures(a, &lifted).unwrap() {
                    next.push(normal_form_partial(&m));
                }
            }
            acc = next;
        }
        assert!(acc.iter().any(|a| a.is_complete() && normal_form(a) == f));
    }

    #[test]
    #[ignore] // full desk-scale candidate construction takes a few minutes
    fn parametric_seeds_build_candidates_containing_the_tetrahedral_signature() {
        let seeds = crate::families::merge_seed_signatures();
        let list = build_candidates(&seeds, &PipelineOptions::default()).unwrap();
        assert!(list.contains_signature(&f_signature()));
    }

    #[test]
    fn closed_orbit_with_flat_row_recognizes_and_culls() {
        // stages 3 and 4 on a braid-closed list: the tetrahedral orbit plus
        // the flat inconsistent signature all survive closure; recognition
        // types the orbit members tetrahedral and culls the flat signature
        let mut entries = orbit_signatures(&tuple_f());
        let orbit_len = entries.len();
        entries.push(Candidate {
            signature: flat_inconsistent_signature(),
            provenance: vec!["flat".into()],
        });
        let closed = closure_filter(CandidateList { entries }).unwrap();
        assert_eq!(closed.len(), orbit_len + 1);
        let report = recognize_types(&closed, &PipelineOptions::default()).unwrap();
        assert_eq!(report.inconsistent.len(), 1);
        assert_eq!(report.typed.len(), orbit_len);
        assert!(report.typed.iter().all(|t| t.kind == OrbitType::Tetrahedral));
        let f = f_signature();
        assert!(report
            .typed
            .iter()
            .any(|t| t.kind == OrbitType::Tetrahedral && t.candidate.signature == f));
        assert_eq!(report.count(|k| matches!(k, OrbitType::Exceptional(_))), 0);
    }

    #[test]
    fn checkpoints_round_trip_and_resume() {
        let dir = std::env::temp_dir().join(format!("pipeline-ckpt-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("state.txt");
        let _ = std::fs::remove_file(&path);

        let mut options = PipelineOptions {
            checkpoint: Some(path.clone()),
            ..PipelineOptions::default()
        };
        // a realistic candidate list round-trips through the file
        let list = build_candidates(&desk_seeds(), &options).unwrap();
        save_checkpoint(&path, "candidates", &options, &list).unwrap();
        let (stage, loaded) = load_checkpoint(&path, &options).unwrap().unwrap();
        assert_eq!(stage, "candidates");
        assert_eq!(loaded, list);
        // a closed-stage checkpoint short-circuits both construction stages:
        // resuming with empty input still recognizes the stored candidate
        let stored = CandidateList {
            entries: vec![Candidate {
                signature: f_signature(),
                provenance: vec!["stored".into()],
            }],
        };
        save_checkpoint(&path, "closed", &options, &stored).unwrap();
        let resumed = run_pipeline(&[], &options).unwrap();
        assert_eq!(resumed.typed.len(), 1);
        assert_eq!(resumed.typed[0].kind, OrbitType::Tetrahedral);
        // a checkpoint from different options is rejected
        options.max_coeff = 3;
        assert!(load_checkpoint(&path, &options).is_err());
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn malformed_checkpoints_are_rejected() {
        let dir = std::env::temp_dir().join(format!("pipeline-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.txt");
        let options = PipelineOptions::default();
        std::fs::write(&path, "not a checkpoint\n").unwrap();
        assert!(load_checkpoint(&path, &options).is_err());
        std::fs::write(
            &path,
            format!("{CHECKPOINT_HEADER}\nstage closed\noptions {}\nentries 3\n", options_stamp(&options)),
        )
        .unwrap();
        assert!(load_checkpoint(&path, &options).is_err());
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn candidate_serialization_round_trips() {
        let f = Candidate {
            signature: f_signature(),
            provenance: vec!["r1p1".into(), "r2p2".into()],
        };
        let mut parametric = ParamSignature::new(5);
        parametric.insert(
            CellId::theta(1, 5),
            parse_affine("2x-1/3").unwrap(),
        );
        parametric.insert(CellId::sigma(&[1, 3], 5), parse_affine("x+y").unwrap());
        let p = Candidate {
            signature: parametric,
            provenance: vec!["p".into()],
        };
        for cand in [f, p] {
            let parsed = parse_candidate(&render_candidate(&cand)).unwrap();
            assert_eq!(parsed.signature, cand.signature);
            assert_eq!(parsed.provenance, cand.provenance);
        }
    }

    #[test]
    fn coefficient_bound_is_a_checked_error() {
        let row = Catalog::builtin().get(1, "2").unwrap();
        let options = PipelineOptions {
            max_coeff: 0,
            ..PipelineOptions::default()
        };
        assert!(build_candidates(&[row.signature.clone()], &options).is_err());
    }

    #[test]
    fn sample_evaluation_uses_distinct_values() {
        let mut s = ParamSignature::new(5);
        s.insert(CellId::theta(1, 5), parse_affine("x").unwrap());
        s.insert(CellId::theta(2, 5), parse_affine("y").unwrap());
        let sig = sample_signature(&s).unwrap();
        assert_ne!(
            sig.get(&CellId::theta(1, 5)),
            sig.get(&CellId::theta(2, 5))
        );
        let constant = ParamSignature::new(5);
        assert_eq!(sample_signature(&constant).unwrap(), Signature::new(5));
        let _ = Angle::zero();
    }
}
