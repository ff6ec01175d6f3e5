use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::planar::{MinimalFace, PlanarBoundary};
use super::{check_direction, dot64, ArcPiece, BodyError, ConvexBody, Face, PointClass};
use crate::geometry::{linalg, Polytope, Vector};

/// Arc `center + r·(cos θ·a + sin θ·b)` for θ in `theta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircularArc {
    pub center: Vec<f64>,
    pub radius: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub theta: [f64; 2],
    pub closed: [bool; 2],
}

impl CircularArc {
    pub fn new(center: Vec<f64>, radius: f64, a: Vec<f64>, b: Vec<f64>, theta: [f64; 2]) -> Self {
        CircularArc {
            center,
            radius,
            a,
            b,
            theta,
            closed: [true, true],
        }
    }

    pub fn validate(&self, tol: f64) -> Result<(), BodyError> {
        let n = self.center.len();
        if self.a.len() != n || self.b.len() != n {
            return Err(BodyError::InvalidArc("frame length differs from center".into()));
        }
        if self.radius <= 0.0 {
            return Err(BodyError::InvalidArc("radius must be positive".into()));
        }
        let na = dot64(&self.a, &self.a).sqrt();
        let nb = dot64(&self.b, &self.b).sqrt();
        if (na - 1.0).abs() > 1e3 * tol || (nb - 1.0).abs() > 1e3 * tol {
            return Err(BodyError::InvalidArc("frame vectors must be unit".into()));
        }
        if dot64(&self.a, &self.b).abs() > 1e3 * tol {
            return Err(BodyError::InvalidArc("frame vectors must be orthogonal".into()));
        }
        if !(self.theta[0] < self.theta[1]) || self.theta[1] - self.theta[0] > TAU {
            return Err(BodyError::InvalidArc("angle interval must satisfy θ0 < θ1 ≤ θ0 + 2π".into()));
        }
        Ok(())
    }

    pub fn point(&self, theta: f64) -> Vec<f64> {
        let (s, c) = theta.sin_cos();
        (0..self.center.len())
            .map(|i| self.center[i] + self.radius * (c * self.a[i] + s * self.b[i]))
            .collect()
    }

    pub fn tangent(&self, theta: f64) -> Vec<f64> {
        let (s, c) = theta.sin_cos();
        (0..self.center.len())
            .map(|i| -s * self.a[i] + c * self.b[i])
            .collect()
    }

    pub fn endpoints(&self) -> [Vec<f64>; 2] {
        [self.point(self.theta[0]), self.point(self.theta[1])]
    }

    /// Same arc with the frame rotated so that the interval starts at 0.
    pub fn normalized(&self) -> CircularArc {
        let t0 = self.theta[0];
        let (s, c) = t0.sin_cos();
        let a: Vec<f64> = (0..self.a.len()).map(|i| c * self.a[i] + s * self.b[i]).collect();
        let b: Vec<f64> = (0..self.a.len()).map(|i| -s * self.a[i] + c * self.b[i]).collect();
        CircularArc {
            center: self.center.clone(),
            radius: self.radius,
            a,
            b,
            theta: [0.0, self.theta[1] - t0],
            closed: self.closed,
        }
    }

    pub(crate) fn contains_angle(&self, theta: f64) -> Option<f64> {
        let mut t = theta;
        while t < self.theta[0] {
            t += TAU;
        }
        while t >= self.theta[0] + TAU {
            t -= TAU;
        }
        (t <= self.theta[1]).then_some(t)
    }

    /// Extremum of `h · x` over the arc: `(value, θ)`; `None` for θ when the
    /// functional is constant on the arc.
    pub fn extremum(&self, h: &[f64], maximize: bool, tol: f64) -> (f64, Option<f64>) {
        let ch = dot64(&self.center, h);
        let al = dot64(&self.a, h);
        let be = dot64(&self.b, h);
        if al.abs() <= tol && be.abs() <= tol {
            return (ch, None);
        }
        let mut star = be.atan2(al);
        if !maximize {
            star += std::f64::consts::PI;
        }
        let sgn = if maximize { 1.0 } else { -1.0 };
        if let Some(t) = self.contains_angle(star) {
            return (ch + sgn * self.radius * (al * al + be * be).sqrt(), Some(t));
        }
        let v0 = dot64(&self.point(self.theta[0]), h);
        let v1 = dot64(&self.point(self.theta[1]), h);
        let pick0 = if maximize { v0 >= v1 } else { v0 <= v1 };
        if pick0 {
            (v0, Some(self.theta[0]))
        } else {
            (v1, Some(self.theta[1]))
        }
    }

    fn is_open_at(&self, theta: f64, tol: f64) -> bool {
        ((theta - self.theta[0]).abs() <= tol && !self.closed[0])
            || ((theta - self.theta[1]).abs() <= tol && !self.closed[1])
    }
}

/// Convex hull of finitely many points and circular arcs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcBody {
    pub points: Vec<Vec<f64>>,
    pub arcs: Vec<CircularArc>,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn default_tol() -> f64 {
    1e-9
}

impl ArcBody {
    pub fn new(points: Vec<Vec<f64>>, arcs: Vec<CircularArc>) -> Result<Self, BodyError> {
        Self::with_tolerance(points, arcs, default_tol())
    }

    pub fn with_tolerance(points: Vec<Vec<f64>>, arcs: Vec<CircularArc>, tol: f64) -> Result<Self, BodyError> {
        let body = ArcBody { points, arcs, tol };
        body.validate()?;
        Ok(body)
    }

    pub fn validate(&self) -> Result<(), BodyError> {
        let n = self.ambient_dim();
        if n == 0 {
            return Err(BodyError::InvalidArc("body has no generators".into()));
        }
        for p in &self.points {
            if p.len() != n {
                return Err(BodyError::DimensionMismatch {
                    expected: n,
                    found: p.len(),
                });
            }
        }
        for arc in &self.arcs {
            if arc.center.len() != n {
                return Err(BodyError::DimensionMismatch {
                    expected: n,
                    found: arc.center.len(),
                });
            }
            arc.validate(self.tol)?;
        }
        Ok(())
    }

    /// Float polytope with the given vertices, as an arc body.
    pub fn from_polytope(p: &Polytope<f64>) -> Self {
        ArcBody {
            points: p.vertices_f64().to_vec(),
            arcs: Vec::new(),
            tol: default_tol(),
        }
    }

    /// All finite generators: points, then both endpoints of each arc.
    pub fn generator_points(&self) -> Vec<Vec<f64>> {
        let mut out = self.points.clone();
        for arc in &self.arcs {
            out.extend(arc.endpoints());
        }
        out
    }

    /// Points spanning the affine hull: point generators and three points of
    /// each arc.
    pub(crate) fn spanning_points(&self) -> Vec<Vec<f64>> {
        let mut out = self.points.clone();
        for arc in &self.arcs {
            let [t0, t1] = arc.theta;
            out.push(arc.point(t0));
            out.push(arc.point(0.5 * (t0 + t1)));
            out.push(arc.point(t1));
        }
        out
    }

    pub fn affine_dim(&self) -> usize {
        linalg::affine_dim::<f64>(&self.spanning_points()).unwrap_or(0)
    }

    /// Centroid of the spanning points; lies in the relative interior.
    pub fn relative_interior_point(&self) -> Vec<f64> {
        let pts = self.spanning_points();
        let n = self.ambient_dim();
        let mut c = vec![0.0; n];
        for p in &pts {
            for (ci, pi) in c.iter_mut().zip(p) {
                *ci += pi / pts.len() as f64;
            }
        }
        c
    }

    pub fn exposed_face_at(&self, direction: &[f64]) -> Result<Face<f64>, BodyError> {
        self.support(direction).map(|(_, f)| f)
    }

    /// Boundary structure when the body lies in a 2-dimensional affine plane.
    pub fn planar_boundary(&self) -> Result<PlanarBoundary, BodyError> {
        PlanarBoundary::trace(self)
    }

    pub fn classify_point(&self, x: &[f64]) -> Result<PointClass, BodyError> {
        if self.arcs.is_empty() {
            return classify_float_hull(&self.points, x, self.tol);
        }
        self.planar_boundary()?.classify(x)
    }

    /// Minimal exposed faces; arc points are reported as continuum families.
    pub fn minimal_exposed_faces(&self) -> Result<Vec<MinimalFace>, BodyError> {
        if self.arcs.is_empty() {
            let p = Polytope::<f64>::from_points(
                self.points.iter().map(|x| Vector::new(x.clone())).collect(),
            )?;
            return Ok(p.vertices_f64().iter().map(|v| MinimalFace::Point(v.clone())).collect());
        }
        Ok(self.planar_boundary()?.minimal_faces())
    }

    /// Generators plus `per_arc` interior samples of every arc.
    pub fn sampled_generators(&self, per_arc: usize) -> Vec<Vec<f64>> {
        let mut out = self.points.clone();
        for arc in &self.arcs {
            for i in 0..=per_arc + 1 {
                let t = arc.theta[0] + (arc.theta[1] - arc.theta[0]) * i as f64 / (per_arc + 1) as f64;
                out.push(arc.point(t));
            }
        }
        out
    }

    /// Whether some point of the body other than the origin lies on the open
    /// ray spanned by `r` (checked on generators; exact for extreme rays).
    pub fn ray_hit(&self, r: &[f64]) -> bool {
        let nr = dot64(r, r).sqrt();
        let unit: Vec<f64> = r.iter().map(|x| x / nr).collect();
        let tol = 100.0 * self.tol;
        let on_ray = |x: &[f64]| {
            let s = dot64(x, &unit);
            s > tol && dist(x, &unit.iter().map(|u| s * u).collect::<Vec<_>>()) <= tol
        };
        if self.points.iter().any(|p| on_ray(p)) {
            return true;
        }
        for arc in &self.arcs {
            let perp = |t: f64| {
                let x = arc.point(t);
                let s = dot64(&x, &unit);
                dist(&x, &unit.iter().map(|u| s * u).collect::<Vec<_>>())
            };
            let k = 512;
            let step = (arc.theta[1] - arc.theta[0]) / k as f64;
            let best = (0..=k)
                .map(|i| arc.theta[0] + step * i as f64)
                .min_by(|a, b| perp(*a).total_cmp(&perp(*b)))
                .unwrap();
            let (mut a, mut b) = ((best - step).max(arc.theta[0]), (best + step).min(arc.theta[1]));
            for _ in 0..200 {
                let m1 = a + (b - a) / 3.0;
                let m2 = b - (b - a) / 3.0;
                if perp(m1) < perp(m2) {
                    b = m2;
                } else {
                    a = m1;
                }
            }
            let t = 0.5 * (a + b);
            let open_end = (!arc.closed[0] && (t - arc.theta[0]).abs() < 1e-9)
                || (!arc.closed[1] && (t - arc.theta[1]).abs() < 1e-9);
            if !open_end && on_ray(&arc.point(t)) {
                return true;
            }
        }
        false
    }

    /// Inward tangent directions at arc endpoints located at the origin, and
    /// the negated inward tangents at endpoints located at `unit`. These are
    /// the extra generators of the closed cone.
    pub fn limit_rays(&self, unit: &[f64]) -> Vec<Vec<f64>> {
        let tol = 100.0 * self.tol;
        let zero = vec![0.0; self.ambient_dim()];
        let mut out = Vec::new();
        for arc in &self.arcs {
            for (k, t) in arc.theta.iter().enumerate() {
                let x = arc.point(*t);
                let mut tan = arc.tangent(*t);
                if k == 1 {
                    tan.iter_mut().for_each(|v| *v = -*v);
                }
                if dist(&x, &zero) <= tol {
                    out.push(tan);
                } else if dist(&x, unit) <= tol {
                    out.push(tan.into_iter().map(|v| -v).collect());
                }
            }
        }
        out
    }

    /// Extremal points that are not exposed (planar bodies).
    pub fn non_exposed_extremal_points(&self) -> Result<Vec<Vec<f64>>, BodyError> {
        if self.arcs.is_empty() {
            return Ok(Vec::new());
        }
        Ok(self.planar_boundary()?.non_exposed_points())
    }
}

fn classify_float_hull(points: &[Vec<f64>], x: &[f64], tol: f64) -> Result<PointClass, BodyError> {
    let p = Polytope::<f64>::from_points(points.iter().map(|v| Vector::new(v.clone())).collect())?;
    let xs = Vector::new(x.to_vec());
    let h = p.hrep();
    let slack_ok = h.halfspaces.iter().all(|hs| hs.normal.dot(&xs) <= hs.bound + tol)
        && h.equalities.iter().all(|e| (e.normal.dot(&xs) - e.value).abs() <= tol);
    if !slack_ok {
        return Err(BodyError::OutsideBody);
    }
    if p
        .vertices_f64()
        .iter()
        .any(|v| v.iter().zip(x).all(|(a, b)| (a - b).abs() <= tol))
    {
        return Ok(PointClass::ExtremalExposed);
    }
    if h
        .halfspaces
        .iter()
        .any(|hs| (hs.normal.dot(&xs) - hs.bound).abs() <= tol)
    {
        Ok(PointClass::BoundaryNonExtremal)
    } else {
        Ok(PointClass::Interior)
    }
}

impl ConvexBody for ArcBody {
    fn ambient_dim(&self) -> usize {
        self.points
            .first()
            .map(|p| p.len())
            .or_else(|| self.arcs.first().map(|a| a.center.len()))
            .unwrap_or(0)
    }

    fn tolerance(&self) -> f64 {
        self.tol
    }

    fn support(&self, direction: &[f64]) -> Result<(f64, Face<f64>), BodyError> {
        check_direction(self.ambient_dim(), direction, 0.0)?;
        let tol = self.tol;
        let mut best = f64::NEG_INFINITY;
        let pvals: Vec<f64> = self.points.iter().map(|p| dot64(p, direction)).collect();
        for v in &pvals {
            best = best.max(*v);
        }
        let avals: Vec<(f64, Option<f64>)> = self
            .arcs
            .iter()
            .map(|a| a.extremum(direction, true, tol))
            .collect();
        for (v, _) in &avals {
            best = best.max(*v);
        }
        let mut vertices = Vec::new();
        let mut points: Vec<Vector<f64>> = Vec::new();
        let mut arcs = Vec::new();
        let mut attained = false;
        for (i, v) in pvals.iter().enumerate() {
            if *v >= best - tol {
                vertices.push(i);
                points.push(Vector::new(self.points[i].clone()));
                attained = true;
            }
        }
        for (j, (v, t)) in avals.iter().enumerate() {
            if *v < best - tol {
                continue;
            }
            let arc = &self.arcs[j];
            match t {
                None => {
                    arcs.push(ArcPiece {
                        arc: j,
                        theta: arc.theta,
                    });
                    attained = true;
                }
                Some(t) => {
                    points.push(Vector::new(arc.point(*t)));
                    if !arc.is_open_at(*t, 1e-12) {
                        attained = true;
                    }
                }
            }
        }
        // Both endpoints of an arc can tie (chord direction): include them.
        for (j, arc) in self.arcs.iter().enumerate() {
            if arcs.iter().any(|p: &ArcPiece| p.arc == j) {
                continue;
            }
            for t in arc.theta {
                let x = arc.point(t);
                if dot64(&x, direction) >= best - tol
                    && !points.iter().any(|p| dist(p, &x) <= tol)
                {
                    points.push(Vector::new(x));
                }
            }
        }
        let mut span: Vec<Vec<f64>> = points.iter().map(|p| p.coords().to_vec()).collect();
        for piece in &arcs {
            let arc = &self.arcs[piece.arc];
            let [t0, t1] = piece.theta;
            span.push(arc.point(t0));
            span.push(arc.point(0.5 * (t0 + t1)));
            span.push(arc.point(t1));
        }
        let dimension = linalg::affine_dim::<f64>(&span).unwrap_or(0);
        Ok((
            best,
            Face {
                normal: Vector::new(direction.to_vec()),
                level: best,
                vertices,
                points,
                arcs,
                dimension,
                attained,
            },
        ))
    }

    fn min_over_face(&self, face: &Face<f64>, direction: &[f64]) -> f64 {
        let mut m = face
            .points
            .iter()
            .map(|p| p.dot(direction))
            .fold(f64::INFINITY, f64::min);
        for piece in &face.arcs {
            let mut arc = self.arcs[piece.arc].clone();
            arc.theta = piece.theta;
            m = m.min(arc.extremum(direction, false, self.tol).0);
        }
        m
    }

    fn face_point(&self, face: &Face<f64>) -> Vec<f64> {
        match face.arcs.first() {
            Some(piece) => self.arcs[piece.arc].point(piece.theta[0]),
            None => vec![0.0; self.ambient_dim()],
        }
    }

    fn sample_points(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut gens = self.points.clone();
        for arc in &self.arcs {
            let k = 16;
            for i in 0..=k {
                let t = arc.theta[0] + (arc.theta[1] - arc.theta[0]) * i as f64 / k as f64;
                gens.push(arc.point(t));
            }
        }
        super::sample_hull(&gens, count, seed)
    }
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn lens() -> ArcBody {
        // Discs of radius 1/√2 centred at (±1/2, 1/2); each arc is the part
        // of one circle inside the other disc.
        let r = FRAC_1_SQRT_2;
        let right = CircularArc::new(vec![0.5, 0.5], r, vec![1.0, 0.0], vec![0.0, 1.0], [0.75 * PI, 1.25 * PI]);
        let left = CircularArc::new(vec![-0.5, 0.5], r, vec![1.0, 0.0], vec![0.0, 1.0], [-0.25 * PI, 0.25 * PI]);
        ArcBody::new(vec![], vec![right, left]).unwrap()
    }

    #[test]
    fn lens_support_at_diagonal_is_unit() {
        let (v, f) = lens().support(&[1.0, 1.0]).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert_eq!(f.dimension, 0);
        assert!(f.points.iter().all(|p| dist(p, &[0.0, 1.0]) < 1e-9));
    }

    #[test]
    fn arc_extremum_clips_to_interval() {
        let arc = CircularArc::new(vec![0.0, 0.0], 1.0, vec![1.0, 0.0], vec![0.0, 1.0], [0.0, 0.5 * PI]);
        let (v, t) = arc.extremum(&[-1.0, 0.0], true, 1e-12);
        assert!((v - 0.0).abs() < 1e-12);
        assert!((t.unwrap() - 0.5 * PI).abs() < 1e-12);
        let n = arc.normalized();
        assert_eq!(n.theta, [0.0, 0.5 * PI]);
    }

    #[test]
    fn zero_arc_body_matches_polytope() {
        let sq = vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5], vec![-0.5, 0.5]];
        let body = ArcBody::new(sq.clone(), vec![]).unwrap();
        let poly = Polytope::<f64>::from_points(sq.into_iter().map(Vector::new).collect()).unwrap();
        for dir in [[1.0, 1.0], [1.0, 0.0], [-0.3, 0.7], [0.0, -1.0]] {
            let (a, fa) = body.support(&dir).unwrap();
            let (b, fb) = ConvexBody::support(&poly, &dir).unwrap();
            assert!((a - b).abs() < 1e-12);
            let mut pa: Vec<_> = fa.points.iter().map(|p| p.to_f64()).collect();
            let mut pb: Vec<_> = fb.points.iter().map(|p| p.to_f64()).collect();
            pa.sort_by(|x, y| x.partial_cmp(y).unwrap());
            pb.sort_by(|x, y| x.partial_cmp(y).unwrap());
            assert_eq!(pa, pb);
        }
    }
}
