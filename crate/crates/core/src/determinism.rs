//! Actual sets, actual faces, the two conditions characterizing
//! intermediate determinism, a direct-definition oracle and propensity
//! states.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bodies::{BodyError, ConvexBody, Face, MinimalFace};
use crate::geometry::{lp_optimize, GeometryError, Polytope, Sense, Vector};
use crate::gpt::{
    classify_restriction, unrestricted_effects, unrestricted_states, unrestricted_states_body, Body,
    GptError, GptSystem, RestrictionClass,
};
use crate::scalar::Scalar;

/// Tolerance for float tightness and containment tests.
pub const FLOAT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeterminismError {
    #[error("state is outside the paired state space")]
    StateOutOfSpace,
    #[error("operation needs polytopes, found {0}")]
    NotPolytopal(&'static str),
    #[error("system is not noisy unrestricted (class {0:?})")]
    NotNu(RestrictionClass),
    #[error("face correspondence failed: {0}")]
    BijectionFailure(String),
    #[error("unsupported body family: {0}")]
    UnsupportedFamily(String),
    #[error(transparent)]
    Gpt(#[from] GptError),
    #[error(transparent)]
    Body(#[from] BodyError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// `A_ω = {e ∈ E : e·ω = 1}` recorded as a face of the effect body.
#[derive(Clone, Debug, PartialEq)]
pub struct ActualSet<T> {
    pub owner: Vector<T>,
    pub face: Face<T>,
}

/// Exact actual set in a polytope effect space.
pub fn actual_set<T: Scalar>(omega: &Vector<T>, effects: &Polytope<T>) -> Result<ActualSet<T>, DeterminismError> {
    let n = effects.ambient_dim();
    if omega.len() != n || !omega.last().eq_s(&T::one()) {
        return Err(DeterminismError::StateOutOfSpace);
    }
    let (value, idx) = effects.support(omega);
    if !value.eq_s(&T::one()) {
        return Err(DeterminismError::StateOutOfSpace);
    }
    let face = crate::bodies::polytope_face(effects, omega.clone(), value, idx);
    Ok(ActualSet {
        owner: omega.clone(),
        face,
    })
}

/// Actual set in any effect body, within its tolerance.
pub fn actual_set_body(omega: &[f64], effects: &dyn ConvexBody) -> Result<Face<f64>, DeterminismError> {
    let (value, face) = effects.support(omega)?;
    if (value - 1.0).abs() > FLOAT_TOL.max(100.0 * effects.tolerance()) {
        return Err(DeterminismError::StateOutOfSpace);
    }
    Ok(face)
}

/// A maximal exposed face of `E(S)` containing `u`, with the state `ω`
/// whose actual set it is.
#[derive(Clone, Debug, PartialEq)]
pub struct ActualFace<T> {
    pub face: Face<T>,
    pub state: Vector<T>,
}

/// Actual faces of a full-dimensional effect polytope: its facets through `u`.
pub fn actual_faces<T: Scalar>(es: &Polytope<T>) -> Vec<ActualFace<T>> {
    let n = es.ambient_dim();
    let u = Vector::<T>::unit_effect(n);
    es.facets()
        .into_iter()
        .filter(|f| f.halfspace.is_tight(&u))
        .map(|f| {
            let m = f.halfspace.bound.clone();
            let state = f.halfspace.normal.scale(&(T::one() / m.clone()));
            let face = crate::bodies::polytope_face(es, state.clone(), T::one(), f.vertices);
            ActualFace { face, state }
        })
        .collect()
}

/// Pairs each minimal exposed face (vertex) of `S` with the actual face of
/// `E(S)` it determines, checking both directions.
pub fn face_state_correspondence<T: Scalar>(
    states: &Polytope<T>,
) -> Result<Vec<(Vector<T>, ActualFace<T>)>, DeterminismError> {
    let es = unrestricted_effects(states)?;
    let faces = actual_faces(&es);
    if faces.len() != states.vertices().len() {
        return Err(DeterminismError::BijectionFailure(format!(
            "{} vertices but {} actual faces",
            states.vertices().len(),
            faces.len()
        )));
    }
    let mut out = Vec::new();
    for w in states.vertices() {
        let f = faces
            .iter()
            .find(|f| f.state.eq_s(w))
            .ok_or_else(|| DeterminismError::BijectionFailure(format!("no actual face for {w}")))?;
        let a = actual_set(w, &es)?;
        if a.face.vertices != f.face.vertices {
            return Err(DeterminismError::BijectionFailure(format!("actual set of {w} is not its face")));
        }
        out.push((w.clone(), f.clone()));
    }
    for f in &faces {
        if !states.is_vertex(&f.state) {
            return Err(DeterminismError::BijectionFailure(format!(
                "face state {} is not a vertex of S",
                f.state
            )));
        }
    }
    Ok(out)
}

/// `F ∩ E ⊆ F′ ∩ E` for distinct actual faces `F`, `F′`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacePair {
    /// States whose actual sets in `E(S)` are `F` and `F′`.
    pub states: [Vec<f64>; 2],
    /// Generators of `F ∩ E`.
    pub face: Vec<Vec<f64>>,
    /// Generators of `F′ ∩ E`.
    pub contained_in: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionI {
    pub holds: bool,
    pub witness: Option<FacePair>,
    /// Generators of each `F ∩ E`, in the order of the representative states.
    pub intersections: Vec<Vec<Vec<f64>>>,
    pub states: Vec<Vec<f64>>,
}

/// Exact condition (i) for polytopes.
pub fn check_condition_i<T: Scalar>(states: &Polytope<T>, effects: &Polytope<T>) -> Result<ConditionI, DeterminismError> {
    let es = unrestricted_effects(states)?;
    let faces = actual_faces(&es);
    let tight: Vec<Vec<usize>> = faces
        .iter()
        .map(|f| effects.tight_vertices(&f.state, &T::one()))
        .collect();
    let gens = |idx: &[usize]| -> Vec<Vec<f64>> { idx.iter().map(|&i| effects.vertices_f64()[i].clone()).collect() };
    let mut witness = None;
    'outer: for j in 0..faces.len() {
        for k in 0..faces.len() {
            if j != k && tight[j].iter().all(|x| tight[k].contains(x)) {
                witness = Some(FacePair {
                    states: [faces[j].state.to_f64(), faces[k].state.to_f64()],
                    face: gens(&tight[j]),
                    contained_in: gens(&tight[k]),
                });
                break 'outer;
            }
        }
    }
    Ok(ConditionI {
        holds: witness.is_none(),
        witness,
        intersections: tight.iter().map(|t| gens(t)).collect(),
        states: faces.iter().map(|f| f.state.to_f64()).collect(),
    })
}

/// Points of each minimal exposed face of `S` used to evaluate actual faces
/// of `E(S)` on curved bodies.
pub fn representative_states<T: Scalar>(states: &Body<T>) -> Result<Vec<Vec<f64>>, DeterminismError> {
    match states {
        Body::Polytope(p) => Ok(p.vertices_f64().to_vec()),
        Body::Arc(a) => {
            let mut out = Vec::new();
            for f in a.minimal_exposed_faces()? {
                match f {
                    MinimalFace::Point(x) => out.push(x),
                    MinimalFace::Segment([x, y]) => out.push(x.iter().zip(&y).map(|(p, q)| 0.5 * (p + q)).collect()),
                    MinimalFace::ArcFamily { arc, theta, .. } => {
                        let k = 16;
                        for i in 1..k {
                            let t = theta[0] + (theta[1] - theta[0]) * i as f64 / k as f64;
                            out.push(a.arcs[arc].point(t));
                        }
                    }
                }
            }
            Ok(out)
        }
        Body::PillDual(_) => Err(DeterminismError::UnsupportedFamily("stadium dual as a state space".into())),
    }
}

fn face_points(effects: &Body<impl Scalar>, face: &Face<f64>) -> Vec<Vec<f64>> {
    let mut pts: Vec<Vec<f64>> = face.points.iter().map(|p| p.coords().to_vec()).collect();
    if let Body::Arc(a) = effects {
        for piece in &face.arcs {
            for i in 0..=8 {
                let t = piece.theta[0] + (piece.theta[1] - piece.theta[0]) * i as f64 / 8.0;
                pts.push(a.arcs[piece.arc].point(t));
            }
        }
    }
    pts
}

/// `A_j ⊆ A_k` where `A_j` is a face and `omega_k` the state cutting `A_k`.
fn face_within(effects: &dyn ConvexBody, face_j: &Face<f64>, omega_k: &[f64]) -> bool {
    effects.min_over_face(face_j, omega_k) >= 1.0 - FLOAT_TOL
}

/// Condition (i) on float bodies.
pub fn check_condition_i_body<T: Scalar>(states: &Body<T>, effects: &Body<T>) -> Result<ConditionI, DeterminismError> {
    let reps = representative_states(states)?;
    let eb = effects.convex();
    let faces: Vec<Face<f64>> = reps
        .iter()
        .map(|w| actual_set_body(w, eb))
        .collect::<Result<_, _>>()?;
    let mut witness = None;
    'outer: for j in 0..faces.len() {
        for k in 0..faces.len() {
            if j != k && face_within(eb, &faces[j], &reps[k]) {
                witness = Some(FacePair {
                    states: [reps[j].clone(), reps[k].clone()],
                    face: face_points(effects, &faces[j]),
                    contained_in: face_points(effects, &faces[k]),
                });
                break 'outer;
            }
        }
    }
    Ok(ConditionI {
        holds: witness.is_none(),
        witness,
        intersections: faces.iter().map(|f| face_points(effects, f)).collect(),
        states: reps,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionII {
    pub holds: bool,
    /// An extremal point of `S` that is not exposed.
    pub witness: Option<Vec<f64>>,
}

/// Every extremal point of `S` is exposed.
pub fn check_condition_ii<T: Scalar>(states: &Body<T>) -> Result<ConditionII, DeterminismError> {
    match states {
        Body::Polytope(_) => Ok(ConditionII {
            holds: true,
            witness: None,
        }),
        Body::Arc(a) => {
            let bad = a.non_exposed_extremal_points()?;
            Ok(ConditionII {
                holds: bad.is_empty(),
                witness: bad.into_iter().next(),
            })
        }
        Body::PillDual(_) => Err(DeterminismError::UnsupportedFamily("stadium dual as a state space".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Agree,
    Skipped,
    Disagree,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Extremal state.
    pub state: Vec<f64>,
    /// A different state with the same actual set.
    pub other: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub satisfies_id: bool,
    pub counterexample: Option<Counterexample>,
}

/// Direct test of the definition on polytopes: for each vertex `ω`, the
/// slice of `S` where every effect generator tight at `ω` stays tight must be
/// `{ω}`; otherwise the midpoint of `ω` and another slice point shares its
/// actual set.
pub fn brute_force_id_oracle<T: Scalar>(states: &Polytope<T>, effects: &Polytope<T>) -> Result<OracleResult, DeterminismError> {
    let n = states.ambient_dim();
    let sig = |w: &Vector<T>| effects.tight_vertices(w, &T::one());
    for w in states.vertices() {
        let t = sig(w);
        let mut slice = states.hrep().clone();
        for &i in &t {
            slice.push_equality(effects.vertices()[i].clone(), T::one());
        }
        for i in 0..n - 1 {
            let mut c = vec![T::zero(); n];
            c[i] = T::one();
            for sense in [Sense::Max, Sense::Min] {
                let sol = lp_optimize(&c, &slice, sense)?;
                if !sol.value.eq_s(&w[i]) {
                    let half = T::from_ratio(1, 2);
                    let other = w.add(&sol.witness).scale(&half);
                    if sig(&other) != t {
                        return Err(DeterminismError::BijectionFailure(
                            "slice midpoint changed the tightness signature".into(),
                        ));
                    }
                    return Ok(OracleResult {
                        satisfies_id: false,
                        counterexample: Some(Counterexample {
                            state: w.to_f64(),
                            other: other.to_f64(),
                        }),
                    });
                }
            }
        }
    }
    Ok(OracleResult {
        satisfies_id: true,
        counterexample: None,
    })
}

/// Float oracle for a polytope state space and any effect body: the slice
/// through `ω` is a face of `S`, so it suffices to look for another vertex
/// whose actual set contains `A_ω`.
pub fn brute_force_id_oracle_body<T: Scalar>(states: &Polytope<T>, effects: &Body<T>) -> Result<OracleResult, DeterminismError> {
    let eb = effects.convex();
    let vs = states.vertices_f64();
    for w in vs {
        let a = actual_set_body(w, eb)?;
        for v in vs {
            if v == w || !face_within(eb, &a, v) {
                continue;
            }
            let mid: Vec<f64> = w.iter().zip(v).map(|(p, q)| 0.5 * (p + q)).collect();
            let am = actual_set_body(&mid, eb)?;
            if face_within(eb, &a, &mid) && face_within(eb, &am, w) {
                return Ok(OracleResult {
                    satisfies_id: false,
                    counterexample: Some(Counterexample {
                        state: w.clone(),
                        other: mid,
                    }),
                });
            }
        }
    }
    Ok(OracleResult {
        satisfies_id: true,
        counterexample: None,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_i: Option<FacePair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_ii: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeterminismVerdict {
    pub condition_i: bool,
    pub condition_ii: bool,
    pub satisfies_id: bool,
    pub oracle: OracleStatus,
    /// `exact` or `float`.
    pub engine: String,
    pub actual_faces: usize,
    pub witnesses: Witnesses,
}

impl DeterminismVerdict {
    pub fn oracle_agrees(&self) -> bool {
        self.oracle != OracleStatus::Disagree
    }
}

/// Both conditions plus the oracle when it applies.
pub fn check_intermediate_determinism<T: Scalar>(sys: &GptSystem<T>) -> Result<DeterminismVerdict, DeterminismError> {
    let (ci, engine) = match (&sys.states, &sys.effects) {
        (Body::Polytope(s), Body::Polytope(e)) if T::EXACT => (check_condition_i(s, e)?, "exact"),
        (states, effects) => (check_condition_i_body(states, effects)?, "float"),
    };
    let cii = check_condition_ii(&sys.states)?;
    let satisfies = ci.holds && cii.holds;
    let oracle = match (&sys.states, &sys.effects) {
        (Body::Polytope(s), Body::Polytope(e)) if T::EXACT => Some(brute_force_id_oracle(s, e)?),
        (Body::Polytope(s), effects) => Some(brute_force_id_oracle_body(s, effects)?),
        _ => None,
    };
    let status = match &oracle {
        None => OracleStatus::Skipped,
        Some(o) if o.satisfies_id == satisfies => OracleStatus::Agree,
        Some(_) => OracleStatus::Disagree,
    };
    Ok(DeterminismVerdict {
        condition_i: ci.holds,
        condition_ii: cii.holds,
        satisfies_id: satisfies,
        oracle: status,
        engine: engine.to_string(),
        actual_faces: ci.states.len(),
        witnesses: Witnesses {
            condition_i: ci.witness,
            condition_ii: cii.witness,
            oracle: oracle.and_then(|o| o.counterexample),
        },
    })
}

/// A noisy unrestricted system with exposed extremal states satisfies
/// intermediate determinism; returns the verdict's `satisfies_id`.
pub fn check_corollary_nu<T: Scalar>(sys: &GptSystem<T>) -> Result<bool, DeterminismError> {
    if !matches!(sys.states, Body::Polytope(_)) {
        return Err(DeterminismError::NotPolytopal("a curved state space"));
    }
    let class = classify_restriction(sys)?.class;
    if !matches!(class, RestrictionClass::Unrestricted | RestrictionClass::Nu) {
        return Err(DeterminismError::NotNu(class));
    }
    Ok(check_intermediate_determinism(sys)?.satisfies_id)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PropensityReport {
    pub propensity: Vec<Vec<f64>>,
    pub excluded: Vec<Vec<f64>>,
}

impl PropensityReport {
    pub fn all_extremal(&self) -> bool {
        self.excluded.is_empty()
    }
}

/// Extremal states of `S` that are propensity functions: no other point of
/// `W(E)` has their actual set. The points of `W(E)` whose actual set
/// contains `A_ω` form a face of `W(E)`; uniqueness holds iff that face is
/// `{ω}`.
pub fn propensity_states<T: Scalar>(sys: &GptSystem<T>) -> Result<PropensityReport, DeterminismError> {
    if let (Body::Polytope(s), Body::Polytope(e)) = (&sys.states, &sys.effects) {
        if T::EXACT {
            return propensity_exact(s, e);
        }
    }
    let w = unrestricted_states_body(&sys.effects)?;
    let wb = w.convex();
    let eb = sys.effects.convex();
    let mut cands = representative_states(&sys.states)?;
    if let Body::Arc(a) = &sys.states {
        cands.extend(a.non_exposed_extremal_points()?);
    }
    let mut rep = PropensityReport::default();
    for omega in cands {
        let a = actual_set_body(&omega, eb)?;
        let pts = face_points(&sys.effects, &a);
        let n = omega.len();
        let g: Vec<f64> = (0..n).map(|i| pts.iter().map(|p| p[i]).sum()).collect();
        let (_, face) = wb.support(&g)?;
        let unique = face.dimension == 0
            && face.arcs.is_empty()
            && face
                .points
                .iter()
                .all(|p| p.iter().zip(&omega).all(|(x, y)| (x - y).abs() <= 1e-7));
        if unique {
            rep.propensity.push(omega);
        } else {
            rep.excluded.push(omega);
        }
    }
    Ok(rep)
}

fn propensity_exact<T: Scalar>(s: &Polytope<T>, e: &Polytope<T>) -> Result<PropensityReport, DeterminismError> {
    let w = unrestricted_states(e)?;
    let mut rep = PropensityReport::default();
    for omega in s.vertices() {
        let a = e.tight_vertices(omega, &T::one());
        let g: Vec<usize> = (0..w.vertices().len())
            .filter(|&i| a.iter().all(|&j| e.vertices()[j].dot(&w.vertices()[i]).eq_s(&T::one())))
            .collect();
        let unique = g.len() == 1 && w.vertices()[g[0]].eq_s(omega);
        if unique {
            rep.propensity.push(omega.to_f64());
        } else {
            rep.excluded.push(omega.to_f64());
        }
    }
    Ok(rep)
}

/// Propensity by the face criterion: `ω` is a vertex of `W(E)` and its
/// actual set is a facet of `E` through `u`.
pub fn propensity_by_faces<T: Scalar>(s: &Polytope<T>, e: &Polytope<T>) -> Result<Vec<Vector<T>>, DeterminismError> {
    let w = unrestricted_states(e)?;
    let faces = actual_faces(e);
    Ok(s.vertices()
        .iter()
        .filter(|omega| {
            let a = e.tight_vertices(omega, &T::one());
            w.is_vertex(omega) && faces.iter().any(|f| f.face.vertices == a)
        })
        .cloned()
        .collect())
}

/// For every exposed face `G` of `S`, builds `f ∈ E(S)` with
/// `G = {ω ∈ S : f·ω = 1}` by mixing an exposing functional with `u`;
/// returns the number of faces checked.
pub fn check_sfaces<T: Scalar>(states: &Polytope<T>) -> Result<usize, DeterminismError> {
    let n = states.ambient_dim();
    let u = Vector::<T>::unit_effect(n);
    let facets = states.facets();
    let all = states.vertices().len();
    let faces = states.faces();
    for g in &faces {
        let f = if g.len() == all {
            u.clone()
        } else {
            let mut h = Vector::zeros(n);
            let mut m = T::zero();
            for fc in facets.iter().filter(|fc| g.iter().all(|v| fc.vertices.contains(v))) {
                h = h.add(&fc.halfspace.normal);
                m = m + fc.halfspace.bound.clone();
            }
            let h = h.add(&u.scale(&(T::one() - m)));
            let l = states.min_value(&h);
            if l.is_negative_s() {
                let a = l.clone() / (l.clone() - T::one());
                let b = T::one() / (T::one() - l);
                u.scale(&a).add(&h.scale(&b))
            } else {
                h
            }
        };
        let vals: Vec<T> = states.vertices().iter().map(|v| f.dot(v)).collect();
        if vals.iter().any(|x| x.is_negative_s() || (x.clone() - T::one()).is_positive_s()) {
            return Err(DeterminismError::BijectionFailure(format!("constructed {f} ∉ E(S)")));
        }
        let tight: Vec<usize> = (0..all).filter(|&i| vals[i].eq_s(&T::one())).collect();
        if &tight != g {
            return Err(DeterminismError::BijectionFailure(format!("{f} does not cut the face {g:?}")));
        }
    }
    Ok(faces.len())
}

/// For every exposed face `F` of `E` containing `u`, checks that `ω = h/x`
/// lies in `W(E)` and cuts exactly `F`; returns the number of faces checked.
pub fn check_esfaces<T: Scalar>(effects: &Polytope<T>) -> Result<usize, DeterminismError> {
    let n = effects.ambient_dim();
    let u = Vector::<T>::unit_effect(n);
    let ui = effects
        .vertex_index(&u)
        .ok_or_else(|| DeterminismError::BijectionFailure("u is not a vertex of E".into()))?;
    let facets = effects.facets();
    let mut count = 0;
    for g in effects.faces() {
        if !g.contains(&ui) || g.len() == effects.vertices().len() {
            continue;
        }
        let mut h = Vector::zeros(n);
        let mut x = T::zero();
        for fc in facets.iter().filter(|fc| g.iter().all(|v| fc.vertices.contains(v))) {
            h = h.add(&fc.halfspace.normal);
            x = x + fc.halfspace.bound.clone();
        }
        if x.is_zero_s() {
            return Err(DeterminismError::BijectionFailure("supporting level is zero".into()));
        }
        let omega = h.scale(&(T::one() / x));
        let in_w = omega.dot(&u).eq_s(&T::one())
            && effects
                .vertices()
                .iter()
                .all(|e| !(e.dot(&omega) - T::one()).is_positive_s());
        let tight = effects.tight_vertices(&omega, &T::one());
        if !in_w || tight != g {
            return Err(DeterminismError::BijectionFailure(format!("ω = {omega} does not cut {g:?}")));
        }
        count += 1;
    }
    Ok(count)
}

/// `A_ω = ∩ A_{ω_j}` for a mixture `ω = Σ p_j ω_j` with positive weights.
pub fn check_mixture_actual_set<T: Scalar>(effects: &Polytope<T>, parts: &[Vector<T>], weights: &[T]) -> bool {
    let omega = Vector::combination(parts, weights);
    let a = effects.tight_vertices(&omega, &T::one());
    let mut meet: Vec<usize> = (0..effects.vertices().len()).collect();
    for p in parts {
        let t = effects.tight_vertices(p, &T::one());
        meet.retain(|i| t.contains(i));
    }
    a == meet
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    /// Exposed faces of `S` cut by a constructed effect.
    pub sfaces: Result<usize, String>,
    /// Exposed faces of `E` through `u` cut by a constructed state.
    pub esfaces: Result<usize, String>,
    /// Vertex–actual-face pairs of `S` and `E(S)`.
    pub correspondence: Result<usize, String>,
    /// Every minimal exposed face of `S` is a point.
    pub minimal_faces_are_points: bool,
    pub mixture_trials: usize,
    pub mixture_failures: usize,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.sfaces.is_ok()
            && self.esfaces.is_ok()
            && self.correspondence.is_ok()
            && self.minimal_faces_are_points
            && self.mixture_failures == 0
    }
}

/// Face-lemma instance checks on a polytopal system, with `trials` random
/// mixtures for the intersection property of actual sets.
pub fn check_lemmas<T: Scalar>(states: &Polytope<T>, effects: &Polytope<T>, trials: usize, seed: u64) -> LemmaReport {
    use rand::{Rng, SeedableRng};
    let msg = |e: DeterminismError| e.to_string();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let vs = states.vertices();
    let mut failures = 0;
    for _ in 0..trials {
        let k = rng.random_range(1..=vs.len().min(4));
        let parts: Vec<Vector<T>> = (0..k).map(|_| vs[rng.random_range(0..vs.len())].clone()).collect();
        let raw: Vec<i64> = (0..k).map(|_| rng.random_range(1..=9)).collect();
        let total: i64 = raw.iter().sum();
        let weights: Vec<T> = raw.iter().map(|&w| T::from_ratio(w, total)).collect();
        if !check_mixture_actual_set(effects, &parts, &weights) {
            failures += 1;
        }
    }
    LemmaReport {
        sfaces: check_sfaces(states).map_err(msg),
        esfaces: check_esfaces(effects).map_err(msg),
        correspondence: face_state_correspondence(states).map(|v| v.len()).map_err(msg),
        minimal_faces_are_points: crate::bodies::minimal_exposed_faces(states)
            .iter()
            .all(|f| f.dimension == 0),
        mixture_trials: trials,
        mixture_failures: failures,
    }
}
