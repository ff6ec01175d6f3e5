use std::sync::OnceLock;

use super::linalg::{nullspace, rank, rref};
use super::vector::sort_dedup;
use super::{hrep_to_vrep, GeometryError, HRep, HalfSpace, VRep, Vector};
use crate::scalar::Scalar;

/// Facets and affine-hull equalities of the convex hull of a point set.
///
/// The point set may contain redundant points. Inequalities are normalized so
/// that the largest absolute normal coordinate is 1 and listed in
/// lexicographic order; equalities are in reduced row echelon form.
pub fn vrep_to_hrep<T: Scalar>(points: &VRep<T>) -> Result<HRep<T>, GeometryError> {
    let pts = &points.vertices;
    let first = pts.first().ok_or(GeometryError::Empty)?;
    let n = first.len();
    if let Some(p) = pts.iter().find(|p| p.len() != n) {
        return Err(GeometryError::DimensionMismatch {
            expected: n,
            found: p.len(),
        });
    }
    let diffs: Vec<Vec<T>> = pts[1..].iter().map(|p| p.sub(first).into_inner()).collect();
    let (_, pivots) = rref(&diffs, n);
    let k = pivots.len();

    let mut h = HRep::new(n);
    let eqs = rref(&nullspace(&diffs, n), n).0;
    for row in eqs {
        let value = super::dot(&row, first);
        h.push_equality(Vector::new(row), value);
    }
    if k == 0 {
        return Ok(h);
    }

    // Full-dimensional problem in the pivot coordinates, solved through the
    // polar body around the centroid.
    let proj: Vec<Vector<T>> = pts
        .iter()
        .map(|p| Vector::new(pivots.iter().map(|&i| p[i].clone()).collect()))
        .collect();
    let c = Vector::centroid(&proj);
    let mut polar = HRep::new(k);
    for y in &proj {
        let dir = y.sub(&c);
        if !dir.is_zero() {
            polar.push_inequality(dir, T::one());
        }
    }
    let gs = hrep_to_vrep(&polar)?;
    let mut facets: Vec<Vector<T>> = Vec::new();
    for g in gs.vertices {
        let mut normal = vec![T::zero(); n];
        for (j, &i) in pivots.iter().enumerate() {
            normal[i] = g[j].clone();
        }
        let bound = T::one() + g.dot(&c);
        let scale = normal
            .iter()
            .map(|x| x.abs_s())
            .fold(T::zero(), |a, x| a.max_s(x));
        let mut row: Vec<T> = normal.into_iter().map(|x| x / scale.clone()).collect();
        row.push(bound / scale);
        facets.push(Vector::new(row));
    }
    sort_dedup(&mut facets);
    for f in facets {
        let b = f.last().clone();
        h.push_inequality(f.truncate_last(), b);
    }
    Ok(h)
}

/// A facet together with the indices of the vertices it contains.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet<T> {
    pub halfspace: HalfSpace<T>,
    pub vertices: Vec<usize>,
}

/// Convex polytope stored by its canonical (sorted, irredundant) vertex list,
/// with a lazily computed H-representation.
#[derive(Debug)]
pub struct Polytope<T: Scalar> {
    dim: usize,
    vertices: Vec<Vector<T>>,
    hrep: OnceLock<HRep<T>>,
    floats: OnceLock<Vec<Vec<f64>>>,
}

impl<T: Scalar> Clone for Polytope<T> {
    fn clone(&self) -> Self {
        let p = Polytope {
            dim: self.dim,
            vertices: self.vertices.clone(),
            hrep: OnceLock::new(),
            floats: OnceLock::new(),
        };
        if let Some(h) = self.hrep.get() {
            let _ = p.hrep.set(h.clone());
        }
        p
    }
}

impl<T: Scalar> PartialEq for Polytope<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.vertices.len() == other.vertices.len()
            && self
                .vertices
                .iter()
                .zip(&other.vertices)
                .all(|(a, b)| a.eq_s(b))
    }
}

impl<T: Scalar> Polytope<T> {
    fn with(dim: usize, vertices: Vec<Vector<T>>, hrep: Option<HRep<T>>) -> Self {
        let p = Polytope {
            dim,
            vertices,
            hrep: OnceLock::new(),
            floats: OnceLock::new(),
        };
        if let Some(h) = hrep {
            let _ = p.hrep.set(h);
        }
        p
    }

    /// Convex hull of a finite point set; redundant points are dropped.
    pub fn from_points(points: Vec<Vector<T>>) -> Result<Self, GeometryError> {
        let mut pts = points;
        sort_dedup(&mut pts);
        let h = vrep_to_hrep(&VRep::new(pts.clone()))?;
        let dim = h.dim;
        let k = pts.len();
        if k <= 2 {
            return Ok(Self::with(dim, pts, Some(h)));
        }
        let affine = super::linalg::affine_dim::<T>(&pts).unwrap_or(0);
        let vertices: Vec<Vector<T>> = pts
            .into_iter()
            .filter(|p| {
                let tight: Vec<Vec<T>> = h
                    .halfspaces
                    .iter()
                    .filter(|hs| hs.is_tight(p))
                    .map(|hs| hs.normal.coords().to_vec())
                    .collect();
                rank(&tight, dim) == affine
            })
            .collect();
        Ok(Self::with(dim, vertices, Some(h)))
    }

    /// Polytope with an already irredundant, sorted vertex list.
    pub fn from_vertices_unchecked(dim: usize, vertices: Vec<Vector<T>>) -> Self {
        Self::with(dim, vertices, None)
    }

    /// Bounded region given in H-representation.
    pub fn from_hrep(region: &HRep<T>) -> Result<Self, GeometryError> {
        let v = hrep_to_vrep(region)?;
        let dim = region.dim;
        let vertices = v.vertices;
        let affine = super::linalg::affine_dim::<T>(&vertices).unwrap_or(0);
        if affine == dim && region.equalities.is_empty() {
            // Keep the given inequalities that are facets.
            let mut seen: Vec<Vec<usize>> = Vec::new();
            let mut h = HRep::new(dim);
            for hs in &region.halfspaces {
                let tight: Vec<usize> = (0..vertices.len())
                    .filter(|&i| hs.is_tight(&vertices[i]))
                    .collect();
                let pts: Vec<&[T]> = tight.iter().map(|&i| vertices[i].coords()).collect();
                let is_facet = !tight.is_empty()
                    && super::linalg::affine_dim::<T>(&pts).unwrap_or(0) + 1 == dim;
                if is_facet && !seen.contains(&tight) {
                    seen.push(tight);
                    let normal = hs.normal.normalize_max();
                    let scale = hs.normal[first_nonzero_abs_max(&hs.normal)].abs_s();
                    h.push_inequality(normal, hs.bound.clone() / scale);
                }
            }
            h.halfspaces.sort_by(|a, b| {
                a.normal
                    .extend(a.bound.clone())
                    .lex_cmp(&b.normal.extend(b.bound.clone()))
            });
            return Ok(Self::with(dim, vertices, Some(h)));
        }
        Ok(Self::with(dim, vertices, None))
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }
    pub fn vertices(&self) -> &[Vector<T>] {
        &self.vertices
    }
    pub fn vrep(&self) -> VRep<T> {
        VRep::new(self.vertices.clone())
    }
    pub fn hrep(&self) -> &HRep<T> {
        self.hrep.get_or_init(|| {
            vrep_to_hrep(&self.vrep()).expect("non-empty polytope has an H-representation")
        })
    }
    pub fn vertices_f64(&self) -> &[Vec<f64>] {
        self.floats
            .get_or_init(|| self.vertices.iter().map(|v| v.to_f64()).collect())
    }
    pub fn affine_dim(&self) -> usize {
        super::linalg::affine_dim::<T>(&self.vertices).unwrap_or(0)
    }
    /// Average of the vertices.
    pub fn relative_interior_point(&self) -> Vector<T> {
        Vector::centroid(&self.vertices)
    }
    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.dim && self.hrep().contains(x)
    }
    pub fn is_vertex(&self, x: &[T]) -> bool {
        self.vertex_index(x).is_some()
    }
    pub fn vertex_index(&self, x: &[T]) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| super::lex_cmp(v, x).is_eq())
    }
    /// Indices of vertices with `normal · v = level`.
    pub fn tight_vertices(&self, normal: &[T], level: &T) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.vertices[i].dot(normal).eq_s(level))
            .collect()
    }
    /// Maximum of `dir · x` and the indices of the vertices attaining it.
    pub fn support(&self, dir: &[T]) -> (T, Vec<usize>) {
        let vals: Vec<T> = self.vertices.iter().map(|v| v.dot(dir)).collect();
        let best = vals
            .iter()
            .cloned()
            .reduce(|a, b| a.max_s(b))
            .expect("non-empty");
        let idx = (0..vals.len()).filter(|&i| vals[i].eq_s(&best)).collect();
        (best, idx)
    }
    /// Minimum of `dir · x` over the polytope.
    pub fn min_value(&self, dir: &[T]) -> T {
        self.vertices
            .iter()
            .map(|v| v.dot(dir))
            .reduce(|a, b| a.min_s(b))
            .expect("non-empty")
    }
    pub fn facets(&self) -> Vec<Facet<T>> {
        self.hrep()
            .halfspaces
            .iter()
            .map(|hs| Facet {
                halfspace: hs.clone(),
                vertices: self.tight_vertices(&hs.normal, &hs.bound),
            })
            .collect()
    }
    /// Vertex index sets of all nonempty faces, the polytope itself included.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut faces: Vec<Vec<usize>> = self.facets().into_iter().map(|f| f.vertices).collect();
        faces.sort();
        faces.dedup();
        let mut i = 0;
        while i < faces.len() {
            for j in 0..i {
                let meet: Vec<usize> = faces[i].iter().filter(|v| faces[j].contains(v)).copied().collect();
                if !meet.is_empty() && !faces.contains(&meet) {
                    faces.push(meet);
                }
            }
            i += 1;
        }
        faces.push((0..self.vertices.len()).collect());
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        faces
    }
    pub fn to_f64(&self) -> Polytope<f64> {
        Polytope::from_vertices_unchecked(
            self.dim,
            self.vertices.iter().map(|v| Vector::from_f64(&v.to_f64())).collect(),
        )
    }
    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polytope<U> {
        Polytope::from_vertices_unchecked(
            self.dim,
            self.vertices.iter().map(|v| v.map(&f)).collect(),
        )
    }
}

fn first_nonzero_abs_max<T: Scalar>(v: &[T]) -> usize {
    let mut best = 0;
    for i in 1..v.len() {
        if v[i].abs_s().cmp_s(&v[best].abs_s()).is_gt() {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    fn pts(xs: &[&[i64]]) -> Vec<Vector<Rational>> {
        xs.iter().map(|p| Vector::from_ints(p)).collect()
    }

    #[test]
    fn simplex_facets() {
        let h = vrep_to_hrep(&VRep::new(pts(&[&[0, 0], &[1, 0], &[0, 1]]))).unwrap();
        assert!(h.equalities.is_empty());
        assert_eq!(h.halfspaces.len(), 3);
        let expect = [(vec![-1, 0], 0), (vec![0, -1], 0), (vec![1, 1], 1)];
        for (n, b) in expect {
            assert!(h
                .halfspaces
                .iter()
                .any(|hs| hs.normal == Vector::from_ints(&n) && hs.bound == q(b, 1)));
        }
    }

    #[test]
    fn square_face_lattice() {
        let p = Polytope::from_points(pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let faces = p.faces();
        assert_eq!(faces.iter().filter(|f| f.len() == 1).count(), 4);
        assert_eq!(faces.iter().filter(|f| f.len() == 2).count(), 4);
        assert_eq!(faces.len(), 9);
    }

    #[test]
    fn single_point_gives_equalities() {
        let h = vrep_to_hrep(&VRep::new(pts(&[&[1, 1]]))).unwrap();
        assert!(h.halfspaces.is_empty());
        assert_eq!(h.equalities.len(), 2);
        assert_eq!(h.equalities[0].normal, Vector::from_ints(&[1, 0]));
        assert_eq!(h.equalities[0].value, q(1, 1));
        assert_eq!(h.equalities[1].normal, Vector::from_ints(&[0, 1]));
        assert_eq!(h.equalities[1].value, q(1, 1));
    }

    #[test]
    fn redundant_points_dropped() {
        let p = Polytope::from_points(pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1], &[1, 0]]))
            .unwrap();
        assert_eq!(p.vertices(), &pts(&[&[0, 0], &[0, 2], &[2, 0], &[2, 2]])[..]);
    }

    #[test]
    fn segment_in_plane() {
        let p = Polytope::from_points(pts(&[&[-1, 1], &[1, 1], &[0, 1]])).unwrap();
        assert_eq!(p.vertices().len(), 2);
        assert_eq!(p.affine_dim(), 1);
        assert_eq!(p.relative_interior_point(), Vector::from_ints(&[0, 1]));
        assert!(p.contains(&Vector::from_ratios(&[(1, 2), (1, 1)])));
        assert!(!p.contains(&Vector::from_ratios(&[(1, 2), (1, 2)])));
    }
}
