//! GPT systems: state and effect spaces, the maps `E(S)` and `W(E)`,
//! validation and restriction classes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bodies::{ArcBody, BodyError, ConvexBody, PillDual};
use crate::geometry::{
    linalg, lp_optimize, GeometryError, HRep, HalfSpace, Polytope, Sense, Vector,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GptError {
    #[error("operation needs a polytope, found {0}")]
    NotPolytopal(&'static str),
    #[error("unsupported body family: {0}")]
    UnsupportedFamily(String),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Body(#[from] BodyError),
}

/// A state or effect body.
#[derive(Clone, Debug)]
pub enum Body<T: Scalar> {
    Polytope(Polytope<T>),
    Arc(ArcBody),
    PillDual(PillDual),
}

impl<T: Scalar> Body<T> {
    pub fn ambient_dim(&self) -> usize {
        self.convex().ambient_dim()
    }

    pub fn convex(&self) -> &dyn ConvexBody {
        match self {
            Body::Polytope(p) => p,
            Body::Arc(a) => a,
            Body::PillDual(d) => d,
        }
    }

    pub fn as_polytope(&self) -> Option<&Polytope<T>> {
        match self {
            Body::Polytope(p) => Some(p),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Body::Polytope(_) => "polytope",
            Body::Arc(_) => "arc body",
            Body::PillDual(_) => "analytic stadium dual",
        }
    }

    /// Finite list of points generating (or densely sampling) the body.
    pub fn generators_f64(&self) -> Vec<Vec<f64>> {
        match self {
            Body::Polytope(p) => p.vertices_f64().to_vec(),
            Body::Arc(a) => a.sampled_generators(15),
            Body::PillDual(d) => {
                let mut g = vec![vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]];
                for k in 0..64 {
                    let y = d.stadium.polar_point(std::f64::consts::PI * k as f64 / 32.0);
                    g.push(PillDual::middle_effect(y));
                }
                g
            }
        }
    }

    pub fn contains_f64(&self, x: &[f64]) -> Result<bool, GptError> {
        Ok(match self {
            Body::Polytope(p) => {
                let h = p.hrep();
                x.len() == p.ambient_dim()
                    && h.halfspaces
                        .iter()
                        .all(|hs| dot(&hs.normal.to_f64(), x) <= hs.bound.to_f64() + 1e-9)
                    && h.equalities
                        .iter()
                        .all(|e| (dot(&e.normal.to_f64(), x) - e.value.to_f64()).abs() <= 1e-9)
            }
            Body::Arc(a) => a.contains_point(x)?,
            Body::PillDual(d) => d.contains(x),
        })
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            Body::Polytope(_) if T::EXACT => 0.0,
            _ => self.convex().tolerance(),
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A finite-outcome observable `⟦e₁, e₂, …⟧`.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable<T> {
    pub effects: Vec<Vector<T>>,
}

impl<T: Scalar> Observable<T> {
    pub fn new(effects: Vec<Vector<T>>) -> Self {
        Observable { effects }
    }
    /// The couple `⟦e, u − e⟧`.
    pub fn couple(e: &Vector<T>) -> Self {
        let u = Vector::unit_effect(e.len());
        Observable::new(vec![e.clone(), u.sub(e)])
    }
    pub fn sum(&self) -> Vector<T> {
        let n = self.effects[0].len();
        self.effects
            .iter()
            .fold(Vector::zeros(n), |acc, e| acc.add(e))
    }
}

#[derive(Clone, Debug)]
pub struct GptSystem<T: Scalar> {
    pub states: Body<T>,
    pub effects: Body<T>,
    pub observables: Vec<Observable<T>>,
}

impl<T: Scalar> GptSystem<T> {
    /// System with every couple over the listed generator effects.
    pub fn new(states: Body<T>, effects: Body<T>) -> Self {
        let observables = listed_effects(&effects)
            .iter()
            .map(Observable::couple)
            .collect();
        GptSystem {
            states,
            effects,
            observables,
        }
    }

    pub fn with_observables(states: Body<T>, effects: Body<T>, observables: Vec<Observable<T>>) -> Self {
        GptSystem {
            states,
            effects,
            observables,
        }
    }

    /// `d + 1`.
    pub fn dim(&self) -> usize {
        self.states.ambient_dim()
    }

    pub fn is_polytopal(&self) -> bool {
        matches!((&self.states, &self.effects), (Body::Polytope(_), Body::Polytope(_)))
    }
}

/// Finitely many listed effects of a body: vertices, point generators and
/// arc endpoints.
pub fn listed_effects<T: Scalar>(body: &Body<T>) -> Vec<Vector<T>> {
    match body {
        Body::Polytope(p) => p.vertices().to_vec(),
        Body::Arc(a) => {
            let mut out: Vec<Vector<T>> = Vec::new();
            for g in a.generator_points() {
                let v = Vector::from_f64(&g);
                if !out.iter().any(|w| w.eq_s(&v)) {
                    out.push(v);
                }
            }
            out
        }
        Body::PillDual(_) => vec![Vector::zeros(3), Vector::unit_effect(3)],
    }
}

/// `E(S) = {e : 0 ≤ e·ω ≤ 1 for all ω ∈ S}`.
pub fn unrestricted_effects<T: Scalar>(states: &Polytope<T>) -> Result<Polytope<T>, GptError> {
    let n = states.ambient_dim();
    let mut h = HRep::new(n);
    for w in states.vertices() {
        h.push_inequality(w.clone(), T::one());
        h.push_inequality(w.neg(), T::zero());
    }
    Ok(Polytope::from_hrep(&h)?)
}

/// `W(E) = {ω : ω·e ≤ 1 for all e ∈ E, ω·u = 1}`.
pub fn unrestricted_states<T: Scalar>(effects: &Polytope<T>) -> Result<Polytope<T>, GptError> {
    let n = effects.ambient_dim();
    let mut h = HRep::new(n);
    for e in effects.vertices() {
        if !e.is_zero() {
            h.push_inequality(e.clone(), T::one());
        }
    }
    h.push_equality(Vector::unit_effect(n), T::one());
    Ok(Polytope::from_hrep(&h)?)
}

/// `W(E)` for any effect body. Arc bodies use the generators of the closed
/// cone (sampled arcs plus limit tangents); the stadium dual returns the
/// stadium.
pub fn unrestricted_states_body<T: Scalar>(effects: &Body<T>) -> Result<Body<T>, GptError> {
    match effects {
        Body::Polytope(p) => Ok(Body::Polytope(unrestricted_states(p)?)),
        Body::PillDual(d) => Ok(Body::Arc(d.states())),
        Body::Arc(a) => {
            let n = a.ambient_dim();
            let u: Vec<f64> = (0..n).map(|i| if i + 1 == n { 1.0 } else { 0.0 }).collect();
            let mut h = HRep::new(n);
            for r in a.limit_rays(&u) {
                h.push_inequality(Vector::new(r.iter().map(|x| -x).collect()), 0.0);
            }
            for g in a.sampled_generators(63) {
                if g.iter().all(|x| x.abs() <= 1e-12) {
                    continue;
                }
                let neg: Vec<f64> = g.iter().map(|x| -x).collect();
                h.push_inequality(Vector::new(neg), 0.0);
                let comp: Vec<f64> = u.iter().zip(&g).map(|(a, b)| a - b).collect();
                if comp.iter().any(|x| x.abs() > 1e-12) {
                    h.push_inequality(Vector::new(comp.iter().map(|x| -x).collect()), 0.0);
                }
            }
            h.push_equality(Vector::new(u), 1.0);
            let p = Polytope::<f64>::from_hrep(&h)?;
            Ok(Body::Polytope(p.map_scalar(|x| T::from_f64(*x))))
        }
    }
}

/// `W(E(S)) = S`, tested by exact vertex-list equality.
pub fn check_wes_identity<T: Scalar>(states: &Polytope<T>) -> Result<bool, GptError> {
    let e = unrestricted_effects(states)?;
    let w = unrestricted_states(&e)?;
    Ok(w == *states)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
    fn push(&mut self, name: &str, failure: Option<String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed: failure.is_none(),
            detail: failure,
        });
    }
}

fn fmt_f64(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}

/// Runs every structural check and reports each failure.
pub fn validate_system<T: Scalar>(sys: &GptSystem<T>) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let n = sys.dim();
    if sys.effects.ambient_dim() != n {
        rep.push(
            "dimension",
            Some(format!("states live in R^{n}, effects in R^{}", sys.effects.ambient_dim())),
        );
        return rep;
    }
    rep.push("dimension", None);
    if let (Body::Polytope(s), Body::Polytope(e)) = (&sys.states, &sys.effects) {
        validate_exact(s, e, &sys.observables, &mut rep);
    } else {
        validate_float(sys, &mut rep);
    }
    rep
}

fn validate_exact<T: Scalar>(s: &Polytope<T>, e: &Polytope<T>, obs: &[Observable<T>], rep: &mut ValidationReport) {
    let n = s.ambient_dim();
    let bad_state = s.vertices().iter().find(|w| !w.last().eq_s(&T::one()));
    rep.push("states_normalized", bad_state.map(|w| format!("state {w} has last coordinate ≠ 1")));
    let zero = Vector::<T>::zeros(n);
    let u = Vector::<T>::unit_effect(n);
    rep.push("contains_zero", (!e.contains(&zero)).then(|| "0 ∉ E".to_string()));
    rep.push("contains_unit", (!e.contains(&u)).then(|| "u ∉ E".to_string()));
    let bad = e.vertices().iter().find(|x| !e.contains(&u.sub(x)));
    rep.push("complement_closed", bad.map(|x| format!("u − {x} ∉ E")));
    let rows: Vec<Vec<T>> = e.vertices().iter().map(|v| v.coords().to_vec()).collect();
    let r = linalg::rank(&rows, n);
    rep.push("spans", (r != n).then(|| format!("effects span a {r}-dimensional subspace of R^{n}")));
    let mut fail = None;
    'outer: for x in e.vertices() {
        for w in s.vertices() {
            let p = x.dot(w);
            if p.is_negative_s() || (p.clone() - T::one()).is_positive_s() {
                fail = Some(format!("e = {x}, ω = {w}: e·ω = {p}"));
                break 'outer;
            }
        }
    }
    rep.push("probabilities_in_unit_interval", fail);
    let mut fail = None;
    for (k, o) in obs.iter().enumerate() {
        if !o.sum().eq_s(&u) {
            fail = Some(format!("observable {k} sums to {}", o.sum()));
            break;
        }
        if let Some(x) = o.effects.iter().find(|x| !e.contains(x)) {
            fail = Some(format!("observable {k} has effect {x} ∉ E"));
            break;
        }
    }
    rep.push("observables", fail);
}

fn validate_float<T: Scalar>(sys: &GptSystem<T>, rep: &mut ValidationReport) {
    let n = sys.dim();
    let tol = 1e-7;
    let sg = sys.states.generators_f64();
    let bad = sg.iter().find(|w| (w[n - 1] - 1.0).abs() > tol);
    rep.push("states_normalized", bad.map(|w| format!("state {} has last coordinate ≠ 1", fmt_f64(w))));
    let zero = vec![0.0; n];
    let mut u = vec![0.0; n];
    u[n - 1] = 1.0;
    let check = |x: &[f64]| sys.effects.contains_f64(x).unwrap_or(false);
    rep.push("contains_zero", (!check(&zero)).then(|| "0 ∉ E".to_string()));
    rep.push("contains_unit", (!check(&u)).then(|| "u ∉ E".to_string()));
    let eg = sys.effects.generators_f64();
    let bad = eg
        .iter()
        .map(|x| u.iter().zip(x).map(|(a, b)| a - b).collect::<Vec<f64>>())
        .find(|c| !check(c));
    rep.push("complement_closed", bad.map(|c| format!("{} ∉ E", fmt_f64(&c))));
    let rows: Vec<Vec<f64>> = eg.clone();
    let r = linalg::rank(&rows, n);
    rep.push("spans", (r != n).then(|| format!("effects span a {r}-dimensional subspace of R^{n}")));
    let sb = sys.states.convex();
    let mut fail = None;
    for x in &eg {
        if x.iter().all(|v| v.abs() <= 1e-12) {
            continue;
        }
        let hi = sb.support(x).map(|r| r.0);
        let lo = sb.min_value(x);
        match (hi, lo) {
            (Ok(hi), Ok(lo)) if hi <= 1.0 + tol && lo >= -tol => {}
            (Ok(hi), Ok(lo)) => {
                fail = Some(format!("e = {}: e·ω ranges over [{lo:.6}, {hi:.6}]", fmt_f64(x)));
                break;
            }
            (Err(err), _) | (_, Err(err)) => {
                fail = Some(err.to_string());
                break;
            }
        }
    }
    rep.push("probabilities_in_unit_interval", fail);
    let mut fail = None;
    for (k, o) in sys.observables.iter().enumerate() {
        let s = o.sum().to_f64();
        if s.iter().zip(&u).any(|(a, b)| (a - b).abs() > tol) {
            fail = Some(format!("observable {k} sums to {}", fmt_f64(&s)));
            break;
        }
        if let Some(x) = o.effects.iter().find(|x| !check(&x.to_f64())) {
            fail = Some(format!("observable {k} has effect {x} ∉ E"));
            break;
        }
    }
    rep.push("observables", fail);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RestrictionClass {
    Unrestricted,
    Nu,
    Anu,
    Other,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: RestrictionClass,
    pub gleason_type: bool,
    /// Extreme rays of the cone of `E(S)` that `E` reaches only in the limit.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub limit_rays: Vec<Vec<f64>>,
    /// Extreme rays of the cone of `E(S)` missed even in the limit.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub missing_rays: Vec<Vec<f64>>,
}

/// Largest `p ∈ [0, 1]` with `p·r ∈ E`.
pub fn ray_scale<T: Scalar>(effects: &Polytope<T>, r: &[T]) -> Result<T, GptError> {
    let mut h = HRep::new(1);
    for hs in &effects.hrep().halfspaces {
        h.halfspaces.push(HalfSpace::new(Vector::new(vec![hs.normal.dot(r)]), hs.bound.clone()));
    }
    for eq in &effects.hrep().equalities {
        let a = eq.normal.dot(r);
        h.push_inequality(Vector::new(vec![a.clone()]), eq.value.clone());
        h.push_inequality(Vector::new(vec![-a]), -eq.value.clone());
    }
    h.push_inequality(Vector::new(vec![T::one()]), T::one());
    h.push_inequality(Vector::new(vec![-T::one()]), T::zero());
    Ok(lp_optimize(&[T::one()], &h, Sense::Max)?.value)
}

fn approx_same(a: &Polytope<f64>, b: &Polytope<f64>, tol: f64) -> bool {
    let (va, vb) = (a.vertices_f64(), b.vertices_f64());
    va.len() == vb.len()
        && va.iter().all(|x| vb.iter().any(|y| x.iter().zip(y).all(|(p, q)| (p - q).abs() <= tol)))
}

/// Restriction class (unrestricted ⇒ NU ⇒ aNU) and whether `S = W(E)`.
pub fn classify_restriction<T: Scalar>(sys: &GptSystem<T>) -> Result<Classification, GptError> {
    match (&sys.states, &sys.effects) {
        (Body::Polytope(s), Body::Polytope(e)) => {
            let es = unrestricted_effects(s)?;
            let gleason = unrestricted_states(e)? == *s;
            let mut missing = Vec::new();
            for r in es.vertices().iter().filter(|v| !v.is_zero()) {
                if !ray_scale(e, r)?.is_positive_s() {
                    missing.push(r.to_f64());
                }
            }
            let class = if es == *e {
                RestrictionClass::Unrestricted
            } else if missing.is_empty() {
                RestrictionClass::Nu
            } else if gleason {
                RestrictionClass::Anu
            } else {
                RestrictionClass::Other
            };
            Ok(Classification {
                class,
                gleason_type: gleason,
                limit_rays: Vec::new(),
                missing_rays: missing,
            })
        }
        (Body::Polytope(s), effects) => {
            let es = unrestricted_effects(s)?;
            let sf = s.to_f64();
            let w = unrestricted_states_body(effects)?;
            let gleason = match &w {
                Body::Polytope(wp) => approx_same(&wp.to_f64(), &sf, 1e-7),
                _ => false,
            };
            let n = s.ambient_dim();
            let mut u = vec![0.0; n];
            u[n - 1] = 1.0;
            let mut all_in = true;
            let mut limit = Vec::new();
            let mut missing = Vec::new();
            for r in es.vertices().iter().filter(|v| !v.is_zero()) {
                let rf = r.to_f64();
                if !effects.contains_f64(&rf)? {
                    all_in = false;
                }
                let hit = match effects {
                    Body::Arc(a) => a.ray_hit(&rf),
                    Body::PillDual(d) => d.states().min_value(&rf)? >= -1e-9,
                    Body::Polytope(_) => unreachable!(),
                };
                if hit {
                    continue;
                }
                let is_limit = match effects {
                    Body::Arc(a) => a.limit_rays(&u).iter().any(|t| parallel(t, &rf)),
                    _ => false,
                };
                if is_limit {
                    limit.push(rf);
                } else {
                    missing.push(rf);
                }
            }
            let class = if all_in {
                RestrictionClass::Unrestricted
            } else if limit.is_empty() && missing.is_empty() {
                RestrictionClass::Nu
            } else if missing.is_empty() {
                RestrictionClass::Anu
            } else {
                RestrictionClass::Other
            };
            if (class != RestrictionClass::Other) != gleason {
                return Err(GptError::InvalidSystem(format!(
                    "tangent-cone certificate ({class:?}) disagrees with W(E) = S ({gleason})"
                )));
            }
            Ok(Classification {
                class,
                gleason_type: gleason,
                limit_rays: limit,
                missing_rays: missing,
            })
        }
        (Body::Arc(s), Body::PillDual(d)) => {
            let same = *s == d.states();
            Ok(Classification {
                class: if same { RestrictionClass::Unrestricted } else { RestrictionClass::Other },
                gleason_type: same,
                limit_rays: Vec::new(),
                missing_rays: Vec::new(),
            })
        }
        (s, e) => Err(GptError::UnsupportedFamily(format!(
            "classification of ({}, {}) pairs",
            s.kind(),
            e.kind()
        ))),
    }
}

fn parallel(a: &[f64], b: &[f64]) -> bool {
    let na = dot(a, a).sqrt();
    let nb = dot(b, b).sqrt();
    na > 0.0 && nb > 0.0 && (dot(a, b) / (na * nb) - 1.0).abs() <= 1e-9
}

/// A system over one of the supported scalar fields.
#[derive(Clone, Debug)]
pub enum AnySystem {
    Rational(GptSystem<crate::scalar::Rational>),
    Sqrt2(GptSystem<crate::scalar::QSqrt2>),
    Float(GptSystem<f64>),
}

/// Runs a generic expression on whichever system an [`AnySystem`] holds.
#[macro_export]
macro_rules! with_system {
    ($any:expr, $s:ident => $body:expr) => {
        match $any {
            $crate::gpt::AnySystem::Rational($s) => $body,
            $crate::gpt::AnySystem::Sqrt2($s) => $body,
            $crate::gpt::AnySystem::Float($s) => $body,
        }
    };
}

impl AnySystem {
    pub fn scalar_name(&self) -> &'static str {
        match self {
            AnySystem::Rational(_) => "rational",
            AnySystem::Sqrt2(_) => "qsqrt2",
            AnySystem::Float(_) => "f64",
        }
    }

    pub fn dim(&self) -> usize {
        with_system!(self, s => s.dim())
    }
}
