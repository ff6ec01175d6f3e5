//! Command-line plumbing for gptlab: loading systems, running checks, writing reports.

pub mod render;
pub mod report;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use gptlab::catalog::{self, CatalogEntry};
use gptlab::gpm::{structure_gpms, structure_propensity_check, verify_structure, GpmPropensity, ProbabilityStructure, StructureReport};
use gptlab::gpt::{AnySystem, Body};
use gptlab::{io, with_system, Rational};

pub use report::{Check, Report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("check failed: {0}")]
    CheckFailure(String),
    #[error("engine error: {0}")]
    Engine(String),
    #[error("plane does not meet the body")]
    EmptySection,
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::CheckFailure(_) => 1,
            CliError::Engine(_) | CliError::EmptySection | CliError::Write { .. } => 3,
        }
    }
}

/// Where a system comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Catalog(String),
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub inputs: Vec<Source>,
    pub checks: BTreeSet<Check>,
    /// Overrides the arc-engine tolerance; exact polytopes ignore it.
    pub tol: Option<f64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: Vec::new(),
            checks: [Check::Validate, Check::Classify, Check::Determinism].into(),
            tol: None,
            seed: 0,
            out: None,
        }
    }
}

fn set_body_tolerance<T: gptlab::Scalar>(b: &mut Body<T>, t: f64) {
    match b {
        Body::Polytope(_) => {}
        Body::Arc(a) => a.tol = t,
        Body::PillDual(d) => d.tol = t,
    }
}

pub fn set_tolerance(sys: &mut AnySystem, t: f64) {
    with_system!(sys, s => {
        set_body_tolerance(&mut s.states, t);
        set_body_tolerance(&mut s.effects, t);
    })
}

/// A loaded system with its display name and catalog entry, if any.
pub struct Loaded {
    pub name: String,
    pub entry: Option<CatalogEntry>,
    pub system: AnySystem,
}

pub fn load(src: &Source, tol: Option<f64>) -> Result<Loaded, CliError> {
    let mut loaded = match src {
        Source::Catalog(name) => {
            let entry = catalog::build(name).map_err(|e| match e {
                catalog::CatalogError::UnknownEntry(_) | catalog::CatalogError::InvalidParameter(_) => CliError::Parse(e.to_string()),
                other => CliError::Engine(other.to_string()),
            })?;
            Loaded {
                name: entry.name.clone(),
                system: entry.system.clone(),
                entry: Some(entry),
            }
        }
        Source::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            let system = io::parse_system(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            let name = path.file_stem().map_or("system".into(), |s| s.to_string_lossy().into_owned());
            Loaded { name, entry: None, system }
        }
    };
    if let Some(t) = tol {
        set_tolerance(&mut loaded.system, t);
    }
    Ok(loaded)
}

pub fn report_for(src: &Source, cfg: &RunConfig) -> Result<Report, CliError> {
    let l = load(src, cfg.tol)?;
    match &l.entry {
        Some(e) => report::entry_report(e, &l.system, cfg),
        None => report::system_report(&l.system, &l.name, cfg),
    }
}

pub fn to_json<S: Serialize>(v: &S) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs every input, writing one report each to `cfg.out` or to `stdout`.
/// Inputs are processed concurrently; output order follows input order.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Vec<Report>, CliError> {
    if cfg.inputs.is_empty() {
        return Err(CliError::Parse("no input system given".into()));
    }
    let results: Vec<Result<Report, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = cfg
            .inputs
            .iter()
            .map(|src| scope.spawn(move || report_for(src, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(CliError::Engine("worker panicked".into()))))
            .collect()
    });
    let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    if let Some(dir) = &cfg.out {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.clone(), source })?;
        for r in &reports {
            write_file(&dir.join(format!("{}.json", file_name(&r.system))), &to_json(r))?;
        }
    } else {
        for r in &reports {
            stdout
                .write_all(to_json(r).as_bytes())
                .map_err(|source| CliError::Write { path: "<stdout>".into(), source })?;
        }
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| {
            let bad: Vec<&str> = r.results.iter().filter(|(_, ok)| !**ok).map(|(k, _)| *k).collect();
            format!("{} ({})", r.system, bad.join(", "))
        })
        .collect();
    if failed.is_empty() {
        Ok(reports)
    } else {
        Err(CliError::CheckFailure(failed.join("; ")))
    }
}

/// `nu_bit(1/4)` becomes `nu_bit_1_4`.
pub fn file_name(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect();
    s.trim_matches('_').to_string()
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureOutput {
    pub schema: &'static str,
    pub elements: usize,
    pub axioms: StructureReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gpm_vertices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub propensity: Option<GpmPropensity>,
    pub passed: bool,
}

/// Axiom check and GPM enumeration for a probability structure file.
pub fn structure_report(text: &str) -> Result<StructureOutput, CliError> {
    let s: ProbabilityStructure = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let axioms = verify_structure(&s);
    let (gpm_vertices, propensity) = if axioms.passed() {
        let gpms = structure_gpms::<Rational>(&s).map_err(|e| CliError::Engine(e.to_string()))?;
        let split = structure_propensity_check(&s, &gpms).map_err(|e| CliError::Engine(e.to_string()))?;
        (Some(gpms.len()), Some(split))
    } else {
        (None, None)
    };
    Ok(StructureOutput {
        schema: report::SCHEMA,
        elements: s.elements.len(),
        passed: axioms.passed(),
        axioms,
        gpm_vertices,
        propensity,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogListing {
    pub name: String,
    pub description: String,
    pub scalar: &'static str,
    pub dim: usize,
}

pub fn catalog_listing() -> Result<Vec<CatalogListing>, CliError> {
    let entries = catalog::all_entries().map_err(|e| CliError::Engine(e.to_string()))?;
    Ok(entries
        .iter()
        .map(|e| CatalogListing {
            name: e.name.clone(),
            description: e.description.clone(),
            scalar: e.system.scalar_name(),
            dim: e.system.dim(),
        })
        .collect())
}

/// Which body of a system to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    States,
    Effects,
}

pub fn render_svg(src: &Source, which: Which, plane: Option<&str>, tol: Option<f64>) -> Result<String, CliError> {
    let l = load(src, tol)?;
    let n = l.system.dim();
    let plane = plane.map(|p| render::parse_plane(p, n)).transpose()?;
    let title = format!(
        "{} {}",
        l.name,
        match which {
            Which::States => "states",
            Which::Effects => "effects",
        }
    );
    let outline = with_system!(&l.system, s => render::outline(
        match which {
            Which::States => &s.states,
            Which::Effects => &s.effects,
        },
        plane,
    ))?;
    Ok(render::to_svg(&outline, &title))
}
