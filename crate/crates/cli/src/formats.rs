//! On-disk formats: network JSON (schema v1), generator and sweep
//! configuration files, sparse flow CSV, and input digests.

use std::f64::consts::{PI, TAU};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use symlife_core::{
    validate_instance, EnergyModel64, FlowMatrix64, GenKind, GeneratorSpec, NetworkInstance64,
    Point64, SeedNode,
};

use crate::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Network file, schema v1. Collectors are `[x, y]`, sensors `[x, y, Q]`,
/// and the energy model a list of `[lambda, a]` power terms summed as
/// `E(d) = Σ lambda·d^a`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NetworkFile {
    pub schema: u32,
    pub collectors: Vec<[f64; 2]>,
    pub sensors: Vec<[f64; 3]>,
    pub energy_model: Vec<[f64; 2]>,
}

impl NetworkFile {
    pub fn from_instance(instance: &NetworkInstance64) -> Self {
        NetworkFile {
            schema: SCHEMA_VERSION,
            collectors: instance.collectors.iter().map(|p| [p.x, p.y]).collect(),
            sensors: instance
                .sensors
                .iter()
                .zip(&instance.data)
                .map(|(p, &q)| [p.x, p.y, q])
                .collect(),
            energy_model: instance.energy_model.terms.iter().map(|&(l, a)| [l, a]).collect(),
        }
    }

    /// Build and validate the instance. Missing collectors or sensors are
    /// left for the solver, which reports them in its own words; every
    /// other diagnostic is fatal here.
    pub fn to_instance(&self) -> CliResult<NetworkInstance64> {
        if self.schema != SCHEMA_VERSION {
            return Err(CliError::usage(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                self.schema
            )));
        }
        let instance = NetworkInstance64 {
            collectors: self.collectors.iter().map(|&[x, y]| Point64::new(x, y)).collect(),
            sensors: self.sensors.iter().map(|&[x, y, _]| Point64::new(x, y)).collect(),
            data: self.sensors.iter().map(|&[_, _, q]| q).collect(),
            energy_model: terms_to_model(&self.energy_model)?,
        };
        if let Some(d) = validate_instance(&instance)
            .iter()
            .find(|d| d.message != "no collectors" && d.message != "no sensors")
        {
            return Err(CliError::domain(format!("invalid instance: {}", d.message)));
        }
        Ok(instance)
    }
}

pub fn terms_to_model(terms: &[[f64; 2]]) -> CliResult<EnergyModel64> {
    let model = EnergyModel64 { terms: terms.iter().map(|&[l, a]| (l, a)).collect() };
    model.validate()?;
    Ok(model)
}

pub fn read_to_string(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

/// Parse a JSON document; serde errors already carry line and column.
pub fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> CliResult<T> {
    serde_json::from_str(text)
        .map_err(|e| CliError::usage(format!("parse error in {}: {e}", path.display())))
}

/// Load a network file, returning the instance and the input digest.
pub fn load_network(path: &Path) -> CliResult<(NetworkInstance64, String)> {
    let text = read_to_string(path)?;
    let file: NetworkFile = parse_json(path, &text)?;
    Ok((file.to_instance()?, digest_hex(text.as_bytes())))
}

pub fn digest_hex(bytes: &[u8]) -> String {
    let mut hex = String::with_capacity(64);
    for b in Sha256::digest(bytes) {
        hex.push_str(&format!("{b:02x}"));
    }
    hex
}

/// Sparse flow triplets `i,j,q`: positive entries only, row-major order,
/// shortest round-trip float formatting.
pub fn flow_to_csv(flow: &FlowMatrix64) -> String {
    let mut out = String::from("i,j,q\n");
    for i in 0..flow.dim() {
        for j in 0..flow.dim() {
            let q = flow.get(i, j);
            if q > 0.0 {
                out.push_str(&format!("{i},{j},{q}\n"));
            }
        }
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::usage(format!("cannot create {}: {e}", dir.display())))?;
        }
    }
    std::fs::write(path, contents)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

/// Quote a CSV field when it contains a delimiter, quote, or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn default_radius_range() -> [f64; 2] {
    [0.8, 3.0]
}

fn default_energy_terms() -> Vec<[f64; 2]> {
    vec![[1.0, 2.0]]
}

fn default_true() -> bool {
    true
}

fn default_one() -> f64 {
    1.0
}

/// One explicit generator seed; `q` is the data volume for sensors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeedEntry {
    pub x: f64,
    pub y: f64,
    #[serde(default = "default_one")]
    pub q: f64,
    #[serde(default)]
    pub collector: bool,
}

/// Generator description consumed by `generate` and reusable inside sweep
/// configs. Seeds may be listed explicitly, drawn at random
/// (`random_orbits` sensor orbits inside the generating wedge), or both.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenSpecFile {
    pub schema: u32,
    /// `cyclic` or `dihedral`.
    pub kind: String,
    pub fold: usize,
    #[serde(default)]
    pub seeds: Vec<SeedEntry>,
    #[serde(default)]
    pub random_orbits: usize,
    #[serde(default = "default_radius_range")]
    pub radius_range: [f64; 2],
    #[serde(default = "default_true")]
    pub center_collector: bool,
    #[serde(default)]
    pub border_c0: Vec<f64>,
    #[serde(default)]
    pub border_c1: Vec<f64>,
    #[serde(default = "default_energy_terms")]
    pub energy_model: Vec<[f64; 2]>,
    #[serde(default)]
    pub rng_seed: u64,
}

impl GenSpecFile {
    pub fn to_spec(&self, seed_override: Option<u64>) -> CliResult<GeneratorSpec<f64>> {
        if self.schema != SCHEMA_VERSION {
            return Err(CliError::usage(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                self.schema
            )));
        }
        let kind = parse_gen_kind(&self.kind, self.fold)?;
        let rng_seed = seed_override.unwrap_or(self.rng_seed);
        let mut seeds: Vec<SeedNode<f64>> = self
            .seeds
            .iter()
            .map(|s| {
                let p = Point64::new(s.x, s.y);
                if s.collector {
                    SeedNode::collector(p)
                } else {
                    SeedNode::sensor(p, s.q)
                }
            })
            .collect();
        if self.random_orbits > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            seeds.extend(draw_sensor_seeds(kind, self.random_orbits, self.radius_range, &mut rng));
        }
        Ok(GeneratorSpec {
            kind,
            seeds,
            center_collector: self.center_collector,
            border_c0: self.border_c0.clone(),
            border_c1: self.border_c1.clone(),
            energy_model: terms_to_model(&self.energy_model)?,
            rng_seed,
        })
    }
}

pub fn parse_gen_kind(kind: &str, fold: usize) -> CliResult<GenKind> {
    match kind {
        "cyclic" => Ok(GenKind::Cyclic(fold)),
        "dihedral" => Ok(GenKind::Dihedral(fold)),
        other => Err(CliError::usage(format!(
            "unknown generator kind {other:?} (expected cyclic or dihedral)"
        ))),
    }
}

/// Draw sensor seeds inside a safe sub-window of the generating wedge.
/// Cyclic angles stay within a quarter of the sector so the nearest-member
/// fundamental region is closed and reductions stay exact; dihedral angles
/// keep clear of both mirror half-lines.
pub fn draw_sensor_seeds(
    kind: GenKind,
    count: usize,
    radius_range: [f64; 2],
    rng: &mut ChaCha8Rng,
) -> Vec<SeedNode<f64>> {
    let m = kind.fold() as f64;
    (0..count)
        .map(|_| {
            let r = rng.gen_range(radius_range[0]..radius_range[1]);
            let theta = match kind {
                GenKind::Cyclic(_) => TAU / m * rng.gen_range(0.30..0.55),
                GenKind::Dihedral(_) => PI / m * rng.gen_range(0.15..0.85),
            };
            let q = rng.gen_range(1..=8) as f64 * 0.25;
            SeedNode::sensor(Point64::new(r * theta.cos(), r * theta.sin()), q)
        })
        .collect()
}

/// Sweep configuration: network files (the last path component may use
/// `*`/`?` wildcards) plus generator batches.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepConfig {
    pub schema: u32,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub files: Vec<String>,
    #[serde(default)]
    pub generated: Vec<SweepGen>,
}

/// One generator batch: the cartesian product of `m_values` and
/// `rng_seeds`, each instance drawing `orbits` random sensor orbits.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepGen {
    /// `cyclic` or `dihedral`.
    pub kind: String,
    pub m_values: Vec<usize>,
    pub orbits: usize,
    pub rng_seeds: Vec<u64>,
    #[serde(default = "default_radius_range")]
    pub radius_range: [f64; 2],
    #[serde(default = "default_energy_terms")]
    pub energy_model: Vec<[f64; 2]>,
}

/// Expand a file pattern. Wildcards are supported in the final component
/// only; matches come back sorted, and a wildcard pattern with no matches
/// expands to nothing.
pub fn expand_pattern(pattern: &str) -> CliResult<Vec<PathBuf>> {
    if !pattern.contains('*') && !pattern.contains('?') {
        return Ok(vec![PathBuf::from(pattern)]);
    }
    let path = Path::new(pattern);
    let name = path
        .file_name()
        .ok_or_else(|| CliError::usage(format!("bad file pattern {pattern:?}")))?
        .to_string_lossy()
        .into_owned();
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    if dir.to_string_lossy().contains('*') || dir.to_string_lossy().contains('?') {
        return Err(CliError::usage(format!(
            "wildcards are only supported in the file name: {pattern:?}"
        )));
    }
    let entries = std::fs::read_dir(&dir)
        .map_err(|e| CliError::usage(format!("cannot read directory {}: {e}", dir.display())))?;
    let mut matches: Vec<PathBuf> = entries
        .filter_map(|e| e.ok())
        .filter(|e| wildcard_match(&name, &e.file_name().to_string_lossy()))
        .map(|e| dir.join(e.file_name()))
        .collect();
    matches.sort();
    Ok(matches)
}

/// Glob-style match: `*` any run of characters, `?` any single character.
fn wildcard_match(pattern: &str, name: &str) -> bool {
    let p: Vec<char> = pattern.chars().collect();
    let n: Vec<char> = name.chars().collect();
    // dp[i][j]: pattern[..i] matches name[..j]
    let mut dp = vec![vec![false; n.len() + 1]; p.len() + 1];
    dp[0][0] = true;
    for i in 1..=p.len() {
        if p[i - 1] == '*' {
            dp[i][0] = dp[i - 1][0];
        }
    }
    for i in 1..=p.len() {
        for j in 1..=n.len() {
            dp[i][j] = match p[i - 1] {
                '*' => dp[i - 1][j] || dp[i][j - 1],
                '?' => dp[i - 1][j - 1],
                ch => dp[i - 1][j - 1] && ch == n[j - 1],
            };
        }
    }
    dp[p.len()][n.len()]
}
