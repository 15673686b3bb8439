//! Benchmark manifests and report rows.

use std::path::{Path, PathBuf};
use std::time::Instant;

use border_core::{EnumerationOptions, PointSet};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::gen::{generate_complete_intersection, generate_random};
use crate::io::{parse_points, points_to_json, FieldJson, InputError};
use crate::{run_engine, EngineRun};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    CompleteIntersection {
        field: FieldJson,
        roots: Vec<Vec<String>>,
    },
    Random {
        field: FieldJson,
        points: usize,
        vars: usize,
        seed: u64,
        #[serde(default = "default_range")]
        range: u64,
    },
}

fn default_range() -> u64 {
    10
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<PointSet, InputError> {
        match self {
            GeneratorSpec::CompleteIntersection { field, roots } => {
                let field = field.to_spec()?;
                let parsed = roots
                    .iter()
                    .map(|l| l.iter().map(|r| field.parse(r)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                generate_complete_intersection(&parsed, field)
            }
            GeneratorSpec::Random {
                field,
                points,
                vars,
                seed,
                range,
            } => generate_random(field.to_spec()?, *points, *vars, *seed, *range),
        }
    }
}

/// One manifest entry: a point source and the command to time on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchEntry {
    #[serde(default)]
    pub input: Option<PathBuf>,
    #[serde(default)]
    pub generator: Option<GeneratorSpec>,
    pub command: String,
    #[serde(default)]
    pub engine: Option<String>,
    #[serde(default)]
    pub parallel: bool,
    #[serde(default)]
    pub literal: bool,
}

/// One benchmark row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub input_digest: String,
    pub command: String,
    pub engine: String,
    pub field: String,
    pub s: usize,
    pub n: usize,
    pub pair_count: usize,
    pub raw_count: u64,
    pub branch_count: u64,
    pub wall_ms: f64,
    pub dedup_ratio: f64,
}

/// SHA-256 of the canonical JSON form of the point set.
pub fn digest(points: &PointSet) -> String {
    let canonical = serde_json::to_string(&points_to_json(points)).expect("point sets serialize");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

pub fn load_entry_points(entry: &BenchEntry, base: &Path) -> Result<PointSet, InputError> {
    match (&entry.input, &entry.generator) {
        (Some(path), None) => {
            let path = if path.is_absolute() { path.clone() } else { base.join(path) };
            let text = std::fs::read_to_string(&path)
                .map_err(|e| InputError::new(format!("{}: {e}", path.display())))?;
            parse_points(&text).map_err(|e| InputError::new(format!("{}: {e}", path.display())))
        }
        (None, Some(g)) => g.generate(),
        _ => Err(InputError::new("each manifest entry needs exactly one of input or generator")),
    }
}

pub fn run_entry(entry: &BenchEntry, base: &Path) -> Result<RunReport, InputError> {
    let points = load_entry_points(entry, base)?;
    let options = EnumerationOptions {
        parallel: entry.parallel,
        prune_revisits: !entry.literal,
    };
    let start = Instant::now();
    let run: EngineRun = run_engine(&entry.command, entry.engine.as_deref(), &points, &options)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(RunReport {
        input_digest: digest(&points),
        command: entry.command.clone(),
        engine: run.engine.clone(),
        field: points.field().to_string(),
        s: points.len(),
        n: points.arity(),
        pair_count: run.pairs.len(),
        raw_count: run.raw_count,
        branch_count: run.branch_count,
        wall_ms,
        dedup_ratio: if run.raw_count == 0 {
            1.0
        } else {
            run.pairs.len() as f64 / run.raw_count as f64
        },
    })
}

pub fn reports_to_text(rows: &[RunReport]) -> String {
    let mut out = String::from("command            engine  field        s  n    pairs      raw   branches     ms\n");
    for r in rows {
        out.push_str(&format!(
            "{:<18} {:<7} {:<10} {:>3} {:>2} {:>8} {:>8} {:>10} {:>6.0}\n",
            r.command, r.engine, r.field, r.s, r.n, r.pair_count, r.raw_count, r.branch_count, r.wall_ms
        ));
    }
    out
}
