use std::collections::BTreeMap;

use serde::Serialize;

use gptlab::catalog::{evaluate, CatalogEntry, Claim};
use gptlab::determinism::{check_intermediate_determinism, check_lemmas, propensity_states, DeterminismVerdict, LemmaReport, PropensityReport};
use gptlab::gpm::{coherent, enumerate_gpms, enumerate_mixture_gpms, gpm_propensity_check, representation_check, GpmError};
use gptlab::gpt::{classify_restriction, listed_effects, validate_system, AnySystem, Body, Classification, GptSystem, ValidationReport};
use gptlab::{with_system, Scalar};

use crate::{CliError, RunConfig};

pub const SCHEMA: &str = "gptlab-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Validate,
    Classify,
    Determinism,
    Propensity,
    Gpm,
    Lemmas,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Validate,
        Check::Classify,
        Check::Determinism,
        Check::Propensity,
        Check::Gpm,
        Check::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Validate => "validate",
            Check::Classify => "classify",
            Check::Determinism => "determinism",
            Check::Propensity => "propensity",
            Check::Gpm => "gpm",
            Check::Lemmas => "lemmas",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GpmSection {
    pub effects: usize,
    pub observables: usize,
    pub coherent: bool,
    pub observable_vertices: usize,
    pub observable_realized: usize,
    pub mixture_vertices: usize,
    pub mixture_realized: usize,
    pub spanning: bool,
    pub propensity: usize,
    pub non_propensity: usize,
}

impl GpmSection {
    pub fn passed(&self) -> bool {
        self.coherent && self.mixture_realized == self.mixture_vertices
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Section<T> {
    Done(T),
    Skipped { skipped: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub system: String,
    pub scalar: &'static str,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validate: Option<ValidationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classify: Option<Classification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinism: Option<DeterminismVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub propensity: Option<PropensityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gpm: Option<Section<GpmSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemmas: Option<Section<LemmaReport>>,
    /// Expected-vs-actual rows for catalog entries.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub claims: Vec<Claim>,
    pub results: BTreeMap<&'static str, bool>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub companion: Option<Box<Report>>,
}

fn gpm_section<T: Scalar>(sys: &GptSystem<T>) -> Result<Section<GpmSection>, GpmError> {
    if !matches!(sys.effects, Body::Polytope(_)) {
        return Ok(Section::Skipped {
            skipped: format!("effects are an {}", sys.effects.kind()),
        });
    }
    let effects = listed_effects(&sys.effects);
    let obs = &sys.observables;
    let plain = enumerate_gpms(&effects, obs)?;
    let plain_rep = representation_check(&effects, &plain)?;
    let mixed = enumerate_mixture_gpms(&effects, obs)?;
    let mixed_rep = representation_check(&effects, &mixed)?;
    let split = gpm_propensity_check(&effects, obs)?;
    Ok(Section::Done(GpmSection {
        effects: effects.len(),
        observables: obs.len(),
        coherent: coherent(&effects)?,
        observable_vertices: plain_rep.vertices,
        observable_realized: plain_rep.realized,
        mixture_vertices: mixed_rep.vertices,
        mixture_realized: mixed_rep.realized,
        spanning: mixed_rep.spanning,
        propensity: split.propensity.len(),
        non_propensity: split.non_propensity.len(),
    }))
}

fn build<T: Scalar>(sys: &GptSystem<T>, name: &str, scalar: &'static str, cfg: &RunConfig) -> Result<Report, CliError> {
    let want = |c: Check| cfg.checks.contains(&c);
    let engine = |e: &dyn std::fmt::Display| CliError::Engine(format!("{name}: {e}"));
    let mut rep = Report {
        schema: SCHEMA,
        system: name.to_string(),
        scalar,
        seed: cfg.seed,
        tolerance: cfg.tol,
        validate: None,
        classify: None,
        determinism: None,
        propensity: None,
        gpm: None,
        lemmas: None,
        claims: Vec::new(),
        results: BTreeMap::new(),
        passed: true,
        companion: None,
    };
    if want(Check::Validate) {
        let v = validate_system(sys);
        rep.results.insert("validate", v.passed());
        rep.validate = Some(v);
    }
    if want(Check::Classify) {
        let c = classify_restriction(sys).map_err(|e| engine(&e))?;
        rep.results.insert("classify", true);
        rep.classify = Some(c);
    }
    if want(Check::Determinism) {
        let d = check_intermediate_determinism(sys).map_err(|e| engine(&e))?;
        rep.results.insert("determinism", d.satisfies_id && d.oracle_agrees());
        rep.determinism = Some(d);
    }
    if want(Check::Propensity) {
        let p = propensity_states(sys).map_err(|e| engine(&e))?;
        rep.results.insert("propensity", p.all_extremal());
        rep.propensity = Some(p);
    }
    if want(Check::Gpm) {
        let g = gpm_section(sys).map_err(|e| engine(&e))?;
        rep.results.insert("gpm", matches!(&g, Section::Done(s) if s.passed()) || matches!(g, Section::Skipped { .. }));
        rep.gpm = Some(g);
    }
    if want(Check::Lemmas) {
        let l = match (&sys.states, &sys.effects) {
            (Body::Polytope(s), Body::Polytope(e)) => Section::Done(check_lemmas(s, e, 50, cfg.seed)),
            _ => Section::Skipped {
                skipped: "lemma instances need polytopes".into(),
            },
        };
        rep.results.insert("lemmas", !matches!(&l, Section::Done(r) if !r.passed()));
        rep.lemmas = Some(l);
    }
    Ok(rep)
}

pub fn system_report(sys: &AnySystem, name: &str, cfg: &RunConfig) -> Result<Report, CliError> {
    let scalar = sys.scalar_name();
    let mut rep = with_system!(sys, s => build(s, name, scalar, cfg))?;
    rep.passed = rep.results.values().all(|&b| b);
    Ok(rep)
}

/// Report for a catalog entry, with its expected-vs-actual table and companion.
pub fn entry_report(entry: &CatalogEntry, system: &AnySystem, cfg: &RunConfig) -> Result<Report, CliError> {
    let mut rep = system_report(system, &entry.name, cfg)?;
    let out = with_system!(system, s => evaluate(s)).map_err(|e| CliError::Engine(format!("{}: {e}", entry.name)))?;
    rep.claims = entry.expected.compare(&out);
    let claims_ok = rep.claims.iter().all(|c| c.pass);
    rep.results.insert("claims", claims_ok);
    if let Some(c) = &entry.companion {
        let mut sys = c.system.clone();
        if let Some(t) = cfg.tol {
            crate::set_tolerance(&mut sys, t);
        }
        let sub = entry_report(c, &sys, cfg)?;
        rep.results.insert("companion_claims", sub.results.get("claims").copied().unwrap_or(false));
        rep.companion = Some(Box::new(sub));
    }
    rep.passed = rep.results.values().all(|&b| b);
    Ok(rep)
}
