//! JSON forms of systems, bodies and probability structures.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bodies::{ArcBody, PillDual};
use crate::geometry::{GeometryError, Polytope, Vector};
use crate::gpt::{AnySystem, Body, GptSystem, Observable};
use crate::scalar::{ParseScalarError, QSqrt2, Rational, Scalar};
use crate::with_system;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{0}")]
    Schema(String),
}

/// A coordinate given as an exact string (`"3/4"`, `"1/2*sqrt2"`) or as a number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Str(String),
    Num(f64),
}

impl ScalarRepr {
    pub fn parse<T: Scalar>(&self) -> Result<T, ParseScalarError> {
        match self {
            ScalarRepr::Str(s) => T::parse_str(s),
            ScalarRepr::Num(x) => Ok(T::from_f64(*x)),
        }
    }
}

fn to_repr<T: Scalar>(v: &Vector<T>) -> Vec<ScalarRepr> {
    v.iter()
        .map(|x| {
            if T::EXACT {
                ScalarRepr::Str(x.to_string())
            } else {
                ScalarRepr::Num(x.to_f64())
            }
        })
        .collect()
}

fn from_repr<T: Scalar>(v: &[ScalarRepr]) -> Result<Vector<T>, ParseScalarError> {
    Ok(Vector::new(v.iter().map(|x| x.parse()).collect::<Result<_, _>>()?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexList {
    pub vertices: Vec<Vec<ScalarRepr>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BodyJson {
    Vertices(VertexList),
    Stadium(PillDual),
    Arc(ArcBody),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarField {
    #[default]
    Rational,
    Qsqrt2,
    F64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    /// `d`; vectors have `d + 1` coordinates.
    pub dim: usize,
    #[serde(default)]
    pub scalar: ScalarField,
    pub states: BodyJson,
    pub effects: BodyJson,
    #[serde(default)]
    pub observables: Vec<Vec<Vec<ScalarRepr>>>,
}

fn body_to_json<T: Scalar>(b: &Body<T>) -> BodyJson {
    match b {
        Body::Polytope(p) => BodyJson::Vertices(VertexList {
            vertices: p.vertices().iter().map(to_repr).collect(),
        }),
        Body::Arc(a) => BodyJson::Arc(a.clone()),
        Body::PillDual(d) => BodyJson::Stadium(d.clone()),
    }
}

fn body_from_json<T: Scalar>(b: &BodyJson, n: usize) -> Result<Body<T>, IoError> {
    let body = match b {
        BodyJson::Vertices(v) => {
            let pts = v
                .vertices
                .iter()
                .map(|p| from_repr::<T>(p))
                .collect::<Result<Vec<_>, _>>()?;
            if pts.iter().any(|p| p.len() != n) {
                return Err(IoError::Schema(format!("vertex with wrong length, expected {n}")));
            }
            Body::Polytope(Polytope::from_points(pts)?)
        }
        BodyJson::Arc(a) => {
            a.validate().map_err(|e| IoError::Schema(e.to_string()))?;
            Body::Arc(a.clone())
        }
        BodyJson::Stadium(d) => Body::PillDual(d.clone()),
    };
    if body.ambient_dim() != n {
        return Err(IoError::Schema(format!("body has dimension {}, expected {n}", body.ambient_dim())));
    }
    Ok(body)
}

pub fn system_to_json<T: Scalar>(sys: &GptSystem<T>, field: ScalarField) -> SystemJson {
    SystemJson {
        dim: sys.dim() - 1,
        scalar: field,
        states: body_to_json(&sys.states),
        effects: body_to_json(&sys.effects),
        observables: sys
            .observables
            .iter()
            .map(|o| o.effects.iter().map(to_repr).collect())
            .collect(),
    }
}

pub fn any_to_json(sys: &AnySystem) -> SystemJson {
    match sys {
        AnySystem::Rational(s) => system_to_json(s, ScalarField::Rational),
        AnySystem::Sqrt2(s) => system_to_json(s, ScalarField::Qsqrt2),
        AnySystem::Float(s) => system_to_json(s, ScalarField::F64),
    }
}

fn system_from<T: Scalar>(j: &SystemJson) -> Result<GptSystem<T>, IoError> {
    let n = j.dim + 1;
    let states = body_from_json::<T>(&j.states, n)?;
    let effects = body_from_json::<T>(&j.effects, n)?;
    if j.observables.is_empty() {
        return Ok(GptSystem::new(states, effects));
    }
    let obs = j
        .observables
        .iter()
        .map(|o| Ok(Observable::new(o.iter().map(|e| from_repr::<T>(e)).collect::<Result<_, _>>()?)))
        .collect::<Result<Vec<_>, IoError>>()?;
    if obs.iter().flat_map(|o| &o.effects).any(|e| e.len() != n) {
        return Err(IoError::Schema("observable effect with wrong length".into()));
    }
    Ok(GptSystem::with_observables(states, effects, obs))
}

pub fn system_from_json(j: &SystemJson) -> Result<AnySystem, IoError> {
    Ok(match j.scalar {
        ScalarField::Rational => AnySystem::Rational(system_from::<Rational>(j)?),
        ScalarField::Qsqrt2 => AnySystem::Sqrt2(system_from::<QSqrt2>(j)?),
        ScalarField::F64 => AnySystem::Float(system_from::<f64>(j)?),
    })
}

pub fn parse_system(text: &str) -> Result<AnySystem, IoError> {
    system_from_json(&serde_json::from_str(text)?)
}

pub fn write_system(sys: &AnySystem) -> String {
    serde_json::to_string_pretty(&any_to_json(sys)).expect("serializable system")
}

/// Vertex count of the states and effects, for summaries.
pub fn body_sizes(sys: &AnySystem) -> (usize, usize) {
    with_system!(sys, s => (
        s.states.as_polytope().map_or(0, |p| p.vertices().len()),
        s.effects.as_polytope().map_or(0, |p| p.vertices().len()),
    ))
}
