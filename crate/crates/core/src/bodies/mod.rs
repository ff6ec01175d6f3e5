//! Convex bodies: exact polytopes and float bodies generated by points and
//! circular arcs, with support functions, exposed faces and point
//! classification.

mod arc;
mod pill;
mod planar;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use arc::{ArcBody, CircularArc};
pub use pill::{PillDual, Stadium};
pub use planar::{MinimalFace, PlanarBoundary};

use crate::geometry::{linalg, GeometryError, Polytope, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BodyError {
    #[error("zero direction")]
    ZeroDirection,
    #[error("point lies outside the body")]
    OutsideBody,
    #[error("unsupported body family: {0}")]
    UnsupportedFamily(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid arc: {0}")]
    InvalidArc(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Interior,
    BoundaryNonExtremal,
    ExtremalExposed,
    ExtremalNotExposed,
}

/// Sub-interval `[θ0, θ1]` of an arc generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcPiece {
    pub arc: usize,
    pub theta: [f64; 2],
}

/// Exposed face `{x ∈ body : normal · x = level}` recorded by its generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Face<T> {
    pub normal: Vector<T>,
    pub level: T,
    /// Indices of the point generators (polytope vertices) in the face.
    pub vertices: Vec<usize>,
    /// Coordinates of every zero-dimensional generator in the face, including
    /// isolated arc points.
    pub points: Vec<Vector<T>>,
    /// Whole arc pieces lying in the face.
    pub arcs: Vec<ArcPiece>,
    pub dimension: usize,
    /// False when the supremum is reached only at excluded arc endpoints.
    pub attained: bool,
}

impl<T: Scalar> Face<T> {
    pub fn is_point(&self) -> bool {
        self.dimension == 0
    }
}

/// Float support-function interface shared by every body type.
pub trait ConvexBody {
    fn ambient_dim(&self) -> usize;
    fn tolerance(&self) -> f64;
    /// Maximum of `direction · x` and the exposed face attaining it.
    fn support(&self, direction: &[f64]) -> Result<(f64, Face<f64>), BodyError>;
    /// Minimum of `direction · x` over the generators of `face`.
    fn min_over_face(&self, face: &Face<f64>, direction: &[f64]) -> f64 {
        face.points
            .iter()
            .map(|p| p.dot(direction))
            .fold(f64::INFINITY, f64::min)
    }
    /// Finite sample of points of the body used for soundness checks.
    fn sample_points(&self, count: usize, seed: u64) -> Vec<Vec<f64>>;
    fn min_value(&self, direction: &[f64]) -> Result<f64, BodyError> {
        let neg: Vec<f64> = direction.iter().map(|x| -x).collect();
        Ok(-self.support(&neg)?.0)
    }
    /// One maximizer of `direction · x`.
    fn support_point(&self, direction: &[f64]) -> Result<Vec<f64>, BodyError> {
        let (_, face) = self.support(direction)?;
        Ok(face
            .points
            .iter()
            .max_by(|a, b| a.dot(direction).total_cmp(&b.dot(direction)))
            .map(|p| p.coords().to_vec())
            .unwrap_or_else(|| self.face_point(&face)))
    }
    /// A point of a face given only by arc pieces.
    fn face_point(&self, face: &Face<f64>) -> Vec<f64> {
        vec![0.0; face.normal.len()]
    }
    /// Lower and upper bounds on the Euclidean distance from `x` to the body
    /// (Gilbert's algorithm driven by the support oracle).
    fn distance_bounds(&self, x: &[f64]) -> Result<(f64, f64), BodyError> {
        self.distance_bounds_until(x, 1e-10, 1e-6)
    }
    /// As [`ConvexBody::distance_bounds`], stopping once the upper bound drops
    /// to `inside` or the lower bound exceeds `outside`.
    fn distance_bounds_until(&self, x: &[f64], inside: f64, outside: f64) -> Result<(f64, f64), BodyError> {
        let n = self.ambient_dim();
        if x.len() != n {
            return Err(BodyError::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        let mut y = self.support_point(&vec![1.0; n])?;
        let mut lower: f64 = 0.0;
        let mut upper = dist_f(x, &y);
        for _ in 0..20_000 {
            let d: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
            let nd = dot64(&d, &d).sqrt();
            upper = upper.min(nd);
            if nd <= 1e-12 {
                return Ok((0.0, nd));
            }
            let p = self.support_point(&d)?;
            let gap_lower = (dot64(&d, x) - dot64(&d, &p)) / nd;
            lower = lower.max(gap_lower);
            if upper - lower <= 1e-12 || lower > outside || upper <= inside {
                break;
            }
            let py: Vec<f64> = p.iter().zip(&y).map(|(a, b)| a - b).collect();
            let den = dot64(&py, &py);
            if den <= 0.0 {
                break;
            }
            let t = (dot64(&d, &py) / den).clamp(0.0, 1.0);
            if t <= 0.0 {
                break;
            }
            for (yi, pi) in y.iter_mut().zip(&py) {
                *yi += t * pi;
            }
        }
        Ok((lower.max(0.0), upper))
    }
    /// Membership up to `100 · tolerance`.
    fn contains_point(&self, x: &[f64]) -> Result<bool, BodyError> {
        let tol = 100.0 * self.tolerance();
        let (lo, up) = self.distance_bounds_until(x, tol, tol)?;
        Ok(up <= tol || (lo <= tol && up <= 1e-6))
    }
}

fn dist_f(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn check_direction(dim: usize, direction: &[f64], tol: f64) -> Result<(), BodyError> {
    if direction.len() != dim {
        return Err(BodyError::DimensionMismatch {
            expected: dim,
            found: direction.len(),
        });
    }
    if direction.iter().all(|x| x.abs() <= tol) {
        return Err(BodyError::ZeroDirection);
    }
    Ok(())
}

/// Exact support of a polytope: optimum value and its exposed face.
pub fn support<T: Scalar>(body: &Polytope<T>, direction: &[T]) -> Result<(T, Face<T>), BodyError> {
    if direction.len() != body.ambient_dim() {
        return Err(BodyError::DimensionMismatch {
            expected: body.ambient_dim(),
            found: direction.len(),
        });
    }
    if direction.iter().all(|x| x.is_zero_s()) {
        return Err(BodyError::ZeroDirection);
    }
    let (value, idx) = body.support(direction);
    let face = polytope_face(body, Vector::new(direction.to_vec()), value.clone(), idx);
    Ok((value, face))
}

pub fn exposed_face_at<T: Scalar>(body: &Polytope<T>, direction: &[T]) -> Result<Face<T>, BodyError> {
    support(body, direction).map(|(_, f)| f)
}

pub(crate) fn polytope_face<T: Scalar>(
    body: &Polytope<T>,
    normal: Vector<T>,
    level: T,
    idx: Vec<usize>,
) -> Face<T> {
    let points: Vec<Vector<T>> = idx.iter().map(|&i| body.vertices()[i].clone()).collect();
    let dimension = linalg::affine_dim::<T>(&points).unwrap_or(0);
    Face {
        normal,
        level,
        vertices: idx,
        points,
        arcs: Vec::new(),
        dimension,
        attained: true,
    }
}

/// Classification of a point of a polytope: vertices are exposed, points on a
/// facet are non-extremal boundary points.
pub fn classify_point<T: Scalar>(body: &Polytope<T>, x: &[T]) -> Result<PointClass, BodyError> {
    if !body.contains(x) {
        return Err(BodyError::OutsideBody);
    }
    if body.is_vertex(x) {
        return Ok(PointClass::ExtremalExposed);
    }
    if body.hrep().halfspaces.iter().any(|h| h.is_tight(x)) {
        Ok(PointClass::BoundaryNonExtremal)
    } else {
        Ok(PointClass::Interior)
    }
}

/// Minimal exposed faces of a polytope: its vertices, each exposed by a
/// functional tight only there.
pub fn minimal_exposed_faces<T: Scalar>(body: &Polytope<T>) -> Vec<Face<T>> {
    let facets = body.facets();
    let hrep = body.hrep();
    (0..body.vertices().len())
        .map(|i| {
            let v = &body.vertices()[i];
            // Sum of tight facet normals exposes exactly this vertex; a
            // single-point polytope is exposed by any functional.
            let mut normal = Vector::zeros(body.ambient_dim());
            for f in facets.iter().filter(|f| f.vertices.contains(&i)) {
                normal = normal.add(&f.halfspace.normal);
            }
            if normal.is_zero() {
                normal = hrep
                    .equalities
                    .first()
                    .map(|e| e.normal.clone())
                    .unwrap_or_else(|| Vector::unit(body.ambient_dim(), 0));
            }
            let level = normal.dot(v);
            polytope_face(body, normal, level, vec![i])
        })
        .collect()
}

impl<T: Scalar> ConvexBody for Polytope<T> {
    fn ambient_dim(&self) -> usize {
        Polytope::ambient_dim(self)
    }
    fn tolerance(&self) -> f64 {
        1e-9
    }
    fn support(&self, direction: &[f64]) -> Result<(f64, Face<f64>), BodyError> {
        check_direction(Polytope::ambient_dim(self), direction, 0.0)?;
        let vs = self.vertices_f64();
        let vals: Vec<f64> = vs
            .iter()
            .map(|v| v.iter().zip(direction).map(|(a, b)| a * b).sum())
            .collect();
        let best = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let idx: Vec<usize> = (0..vals.len())
            .filter(|&i| vals[i] >= best - self.tolerance())
            .collect();
        let points: Vec<Vector<f64>> = idx.iter().map(|&i| Vector::new(vs[i].clone())).collect();
        let dimension = linalg::affine_dim::<f64>(&points).unwrap_or(0);
        Ok((
            best,
            Face {
                normal: Vector::new(direction.to_vec()),
                level: best,
                vertices: idx,
                points,
                arcs: Vec::new(),
                dimension,
                attained: true,
            },
        ))
    }
    fn sample_points(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        sample_hull(self.vertices_f64(), count, seed)
    }
}

/// Vertices plus random convex combinations of them.
pub(crate) fn sample_hull(points: &[Vec<f64>], count: usize, seed: u64) -> Vec<Vec<f64>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<f64>> = points.to_vec();
    let n = points[0].len();
    while out.len() < count {
        let w: Vec<f64> = (0..points.len()).map(|_| -rng.random::<f64>().ln()).collect();
        let s: f64 = w.iter().sum();
        let mut x = vec![0.0; n];
        for (p, wi) in points.iter().zip(&w) {
            for (xj, pj) in x.iter_mut().zip(p) {
                *xj += wi / s * pj;
            }
        }
        out.push(x);
    }
    out.truncate(count.max(points.len()));
    out
}

pub(crate) fn dot64(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
