//! Exact linear algebra, linear programming and polytope representation
//! conversion.

mod dd;
pub mod linalg;
mod lp;
mod polytope;
mod vector;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dd::hrep_to_vrep;
pub use lp::{is_feasible, lp_optimize, LpSolution, Sense};
pub use polytope::{vrep_to_hrep, Facet, Polytope};
pub use vector::{dot, euclid_norm, lex_cmp, normalize_max, sort_dedup, Vector};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum GeometryError {
    #[error("region is empty")]
    Infeasible,
    #[error("region or objective is unbounded")]
    Unbounded,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty point set")]
    Empty,
    #[error("half-space with zero normal")]
    ZeroNormal,
}

/// `normal · x ≤ bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpace<T> {
    pub normal: Vector<T>,
    pub bound: T,
}

impl<T: Scalar> HalfSpace<T> {
    pub fn new(normal: Vector<T>, bound: T) -> Self {
        HalfSpace { normal, bound }
    }
    pub fn contains(&self, x: &[T]) -> bool {
        !self.normal.dot(x).cmp_s(&self.bound).is_gt()
    }
    pub fn is_tight(&self, x: &[T]) -> bool {
        self.normal.dot(x).eq_s(&self.bound)
    }
}

/// `normal · x = value`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane<T> {
    pub normal: Vector<T>,
    pub value: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HRep<T> {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpace<T>>,
    pub equalities: Vec<Hyperplane<T>>,
}

impl<T: Scalar> HRep<T> {
    pub fn new(dim: usize) -> Self {
        HRep {
            dim,
            halfspaces: Vec::new(),
            equalities: Vec::new(),
        }
    }
    pub fn from_inequalities(dim: usize, halfspaces: Vec<HalfSpace<T>>) -> Self {
        HRep {
            dim,
            halfspaces,
            equalities: Vec::new(),
        }
    }
    pub fn push_inequality(&mut self, normal: Vector<T>, bound: T) {
        self.halfspaces.push(HalfSpace::new(normal, bound));
    }
    pub fn push_equality(&mut self, normal: Vector<T>, value: T) {
        self.equalities.push(Hyperplane { normal, value });
    }
    /// Checks the region's constraints for nonzero normals and matching lengths.
    pub fn check(&self) -> Result<(), GeometryError> {
        for n in self
            .halfspaces
            .iter()
            .map(|h| &h.normal)
            .chain(self.equalities.iter().map(|e| &e.normal))
        {
            if n.len() != self.dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: self.dim,
                    found: n.len(),
                });
            }
            if n.is_zero() {
                return Err(GeometryError::ZeroNormal);
            }
        }
        Ok(())
    }
    pub fn contains(&self, x: &[T]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
            && self
                .equalities
                .iter()
                .all(|e| e.normal.dot(x).eq_s(&e.value))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VRep<T> {
    pub vertices: Vec<Vector<T>>,
}

impl<T: Scalar> VRep<T> {
    pub fn new(vertices: Vec<Vector<T>>) -> Self {
        VRep { vertices }
    }
}
