use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::arc::dist;
use super::{dot64, ArcBody, BodyError, PointClass};

const SAMPLES: usize = 4096;
const PHASE: f64 = 1.234_567e-4;
const ANGLE_RES: f64 = 1e-13;
/// Transitions shorter than this are continuous (rounding near arc ends).
const SNAP: f64 = 1e-6;

/// A minimal exposed face of a planar arc body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalFace {
    Point(Vec<f64>),
    Segment([Vec<f64>; 2]),
    /// Every point of `arc` with parameter in `theta` is an exposed point;
    /// an `open` end is excluded (reported elsewhere or not exposed).
    ArcFamily {
        arc: usize,
        theta: [f64; 2],
        open: [bool; 2],
    },
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Point(Vec<f64>),
    Arc(usize),
}

#[derive(Clone, Debug)]
struct Probe {
    token: Token,
    location: Vec<f64>,
    theta: Option<f64>,
}

#[derive(Clone, Debug)]
struct Breakpoint {
    phi: f64,
    left: Probe,
    right: Probe,
}

#[derive(Clone, Debug)]
pub struct Corner {
    pub point: Vec<f64>,
    pub normal_cone: [f64; 2],
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub phi: f64,
    pub ends: [Vec<f64>; 2],
}

#[derive(Clone, Debug)]
pub struct ArcRun {
    pub arc: usize,
    pub theta: [f64; 2],
}

/// Boundary of a 2-dimensional arc body traced by sweeping the outward
/// normal once around its plane.
#[derive(Clone, Debug)]
pub struct PlanarBoundary {
    body: ArcBody,
    origin: Vec<f64>,
    basis: [Vec<f64>; 2],
    pub corners: Vec<Corner>,
    pub edges: Vec<Edge>,
    pub arc_runs: Vec<ArcRun>,
    match_tol: f64,
}

impl PlanarBoundary {
    pub fn trace(body: &ArcBody) -> Result<Self, BodyError> {
        let origin = body.relative_interior_point();
        let basis = plane_basis(body, &origin)?;
        let match_tol = (100.0 * body.tol).max(1e-9);
        let mut pb = PlanarBoundary {
            body: body.clone(),
            origin,
            basis,
            corners: Vec::new(),
            edges: Vec::new(),
            arc_runs: Vec::new(),
            match_tol,
        };
        pb.sweep();
        Ok(pb)
    }

    fn direction(&self, phi: f64) -> Vec<f64> {
        let (s, c) = phi.sin_cos();
        self.basis[0]
            .iter()
            .zip(&self.basis[1])
            .map(|(x, y)| c * x + s * y)
            .collect()
    }

    fn probe(&self, phi: f64) -> Probe {
        let h = self.direction(phi);
        let mut best = f64::NEG_INFINITY;
        let mut out = None;
        for p in &self.body.points {
            let v = dot64(p, &h);
            if v > best {
                best = v;
                out = Some(Probe {
                    token: Token::Point(p.clone()),
                    location: p.clone(),
                    theta: None,
                });
            }
        }
        for (j, arc) in self.body.arcs.iter().enumerate() {
            let (v, t) = arc.extremum(&h, true, 0.0);
            let t = t.unwrap_or(0.5 * (arc.theta[0] + arc.theta[1]));
            if v > best {
                best = v;
                let x = arc.point(t);
                let inner = t > arc.theta[0] + 1e-12 && t < arc.theta[1] - 1e-12;
                out = Some(Probe {
                    token: if inner { Token::Arc(j) } else { Token::Point(x.clone()) },
                    location: x,
                    theta: Some(t),
                });
            }
        }
        out.expect("body has generators")
    }

    fn same(&self, a: &Token, b: &Token) -> bool {
        match (a, b) {
            (Token::Arc(i), Token::Arc(j)) => i == j,
            (Token::Point(x), Token::Point(y)) => dist(x, y) <= 1e-9,
            _ => false,
        }
    }

    fn resolve(&self, mut a: f64, mut pa: Probe, mut b: f64, mut pb: Probe, out: &mut Vec<Breakpoint>, depth: usize) {
        while b - a > ANGLE_RES {
            let m = 0.5 * (a + b);
            let pm = self.probe(m);
            if self.same(&pm.token, &pa.token) {
                a = m;
                pa = pm;
            } else if self.same(&pm.token, &pb.token) {
                b = m;
                pb = pm;
            } else if depth < 64 {
                self.resolve(a, pa, m, pm.clone(), out, depth + 1);
                self.resolve(m, pm, b, pb, out, depth + 1);
                return;
            } else {
                break;
            }
        }
        out.push(Breakpoint {
            phi: 0.5 * (a + b),
            left: pa,
            right: pb,
        });
    }

    fn sweep(&mut self) {
        let phis: Vec<f64> = (0..=SAMPLES).map(|i| PHASE + TAU * i as f64 / SAMPLES as f64).collect();
        let probes: Vec<Probe> = phis[..SAMPLES].iter().map(|&p| self.probe(p)).collect();
        let mut bps = Vec::new();
        for i in 0..SAMPLES {
            let (pa, pb) = (&probes[i], &probes[(i + 1) % SAMPLES]);
            if !self.same(&pa.token, &pb.token) {
                self.resolve(phis[i], pa.clone(), phis[i + 1], pb.clone(), &mut bps, 0);
            }
        }
        if bps.is_empty() {
            if let Token::Point(x) = &probes[0].token {
                self.corners.push(Corner {
                    point: x.clone(),
                    normal_cone: [0.0, TAU],
                });
            }
            return;
        }
        for bp in &bps {
            if dist(&bp.left.location, &bp.right.location) > SNAP {
                self.edges.push(Edge {
                    phi: bp.phi,
                    ends: [self.snap(&bp.left.location), self.snap(&bp.right.location)],
                });
            }
        }
        let k = bps.len();
        for i in 0..k {
            let start = &bps[i];
            let end = &bps[(i + 1) % k];
            let mut phi_end = end.phi;
            if i + 1 == k {
                phi_end += TAU;
            }
            match &start.right.token {
                Token::Point(x) => {
                    let x = &self.snap(x);
                    if phi_end - start.phi > 1e-10 {
                        self.corners.push(Corner {
                            point: x.clone(),
                            normal_cone: [start.phi, phi_end],
                        });
                    }
                }
                Token::Arc(j) => {
                    let t0 = start.right.theta.unwrap_or(0.0);
                    let t1 = end.left.theta.unwrap_or(0.0);
                    self.arc_runs.push(ArcRun {
                        arc: *j,
                        theta: [t0.min(t1), t0.max(t1)],
                    });
                }
            }
        }
    }

    /// Nearest finite generator within `SNAP`, else the point itself.
    fn snap(&self, x: &[f64]) -> Vec<f64> {
        self.body
            .generator_points()
            .into_iter()
            .filter(|g| dist(g, x) <= SNAP)
            .min_by(|a, b| dist(a, x).total_cmp(&dist(b, x)))
            .unwrap_or_else(|| x.to_vec())
    }

    fn is_corner(&self, x: &[f64]) -> bool {
        self.corners.iter().any(|c| dist(&c.point, x) <= self.match_tol)
    }

    /// Edge endpoints that are not corners: extremal but not exposed.
    pub fn non_exposed_points(&self) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for e in &self.edges {
            for x in &e.ends {
                if !self.is_corner(x) && !out.iter().any(|y| dist(x, y) <= self.match_tol) {
                    out.push(x.clone());
                }
            }
        }
        out
    }

    pub fn minimal_faces(&self) -> Vec<MinimalFace> {
        let mut out = Vec::new();
        for c in &self.corners {
            if !out
                .iter()
                .any(|f| matches!(f, MinimalFace::Point(y) if dist(y, &c.point) <= self.match_tol))
            {
                out.push(MinimalFace::Point(c.point.clone()));
            }
        }
        for e in &self.edges {
            if !self.is_corner(&e.ends[0]) && !self.is_corner(&e.ends[1]) {
                out.push(MinimalFace::Segment(e.ends.clone()));
            }
        }
        for run in &self.arc_runs {
            let arc = &self.body.arcs[run.arc];
            let open = run.theta.map(|t| {
                let x = arc.point(t);
                self.is_corner(&x) || self.edges.iter().any(|e| e.ends.iter().any(|y| dist(y, &x) <= self.match_tol))
            });
            out.push(MinimalFace::ArcFamily {
                arc: run.arc,
                theta: run.theta,
                open,
            });
        }
        out
    }

    fn max_gap(&self, x: &[f64]) -> f64 {
        let gap = |phi: f64| {
            let h = self.direction(phi);
            let p = self.probe(phi);
            dot64(&h, x) - dot64(&h, &p.location)
        };
        let step = TAU / SAMPLES as f64;
        let (mut best_phi, mut best) = (0.0, f64::NEG_INFINITY);
        for i in 0..SAMPLES {
            let phi = i as f64 * step;
            let g = gap(phi);
            if g > best {
                best = g;
                best_phi = phi;
            }
        }
        let (mut a, mut b) = (best_phi - step, best_phi + step);
        for _ in 0..100 {
            let m1 = a + (b - a) / 3.0;
            let m2 = b - (b - a) / 3.0;
            if gap(m1) < gap(m2) {
                a = m1;
            } else {
                b = m2;
            }
        }
        best.max(gap(0.5 * (a + b)))
    }

    pub fn classify(&self, x: &[f64]) -> Result<PointClass, BodyError> {
        let n = self.origin.len();
        if x.len() != n {
            return Err(BodyError::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        let d: Vec<f64> = x.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        let c0 = dot64(&d, &self.basis[0]);
        let c1 = dot64(&d, &self.basis[1]);
        let off: f64 = (0..n)
            .map(|i| d[i] - c0 * self.basis[0][i] - c1 * self.basis[1][i])
            .map(|r| r * r)
            .sum::<f64>()
            .sqrt();
        if off > self.match_tol {
            return Err(BodyError::OutsideBody);
        }
        if self.is_corner(x) {
            return Ok(PointClass::ExtremalExposed);
        }
        if self.non_exposed_points().iter().any(|y| dist(x, y) <= self.match_tol) {
            return Ok(PointClass::ExtremalNotExposed);
        }
        if self.edges.iter().any(|e| segment_dist(x, &e.ends[0], &e.ends[1]) <= self.match_tol) {
            return Ok(PointClass::BoundaryNonExtremal);
        }
        for run in &self.arc_runs {
            let arc = &self.body.arcs[run.arc];
            let rel: Vec<f64> = x.iter().zip(&arc.center).map(|(a, b)| a - b).collect();
            let (ca, cb) = (dot64(&rel, &arc.a), dot64(&rel, &arc.b));
            if ((ca * ca + cb * cb).sqrt() - arc.radius).abs() > self.match_tol {
                continue;
            }
            if let Some(t) = arc.contains_angle(cb.atan2(ca)) {
                if t >= run.theta[0] - 1e-12 && t <= run.theta[1] + 1e-12 {
                    return Ok(PointClass::ExtremalExposed);
                }
            }
        }
        let g = self.max_gap(x);
        if g > self.match_tol {
            Err(BodyError::OutsideBody)
        } else if g >= -self.match_tol {
            Ok(PointClass::BoundaryNonExtremal)
        } else {
            Ok(PointClass::Interior)
        }
    }
}

fn segment_dist(x: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab: Vec<f64> = b.iter().zip(a).map(|(p, q)| p - q).collect();
    let ax: Vec<f64> = x.iter().zip(a).map(|(p, q)| p - q).collect();
    let l2 = dot64(&ab, &ab);
    let t = if l2 > 0.0 { (dot64(&ax, &ab) / l2).clamp(0.0, 1.0) } else { 0.0 };
    let p: Vec<f64> = a.iter().zip(&ab).map(|(p, q)| p + t * q).collect();
    dist(x, &p)
}

fn plane_basis(body: &ArcBody, origin: &[f64]) -> Result<[Vec<f64>; 2], BodyError> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut cands: Vec<Vec<f64>> = body
        .spanning_points()
        .into_iter()
        .map(|p| p.iter().zip(origin).map(|(a, b)| a - b).collect())
        .collect();
    for arc in &body.arcs {
        cands.push(arc.a.clone());
        cands.push(arc.b.clone());
    }
    for mut v in cands {
        for b in &basis {
            let c = dot64(&v, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
        let n = dot64(&v, &v).sqrt();
        if n > 1e-7 {
            basis.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    if basis.len() != 2 || body.affine_dim() != 2 {
        return Err(BodyError::UnsupportedFamily(format!(
            "boundary tracing needs a 2-dimensional body, found dimension {}",
            body.affine_dim()
        )));
    }
    let b1 = basis.pop().unwrap();
    let b0 = basis.pop().unwrap();
    Ok([b0, b1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::CircularArc;
    use std::f64::consts::PI;

    fn pill() -> ArcBody {
        let right = CircularArc::new(vec![1.0, 0.0, 1.0], 1.0, vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], [-0.5 * PI, 0.5 * PI]);
        let left = CircularArc::new(vec![-1.0, 0.0, 1.0], 1.0, vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], [0.5 * PI, 1.5 * PI]);
        ArcBody::new(vec![], vec![right, left]).unwrap()
    }

    #[test]
    fn pill_structure() {
        let b = pill().planar_boundary().unwrap();
        assert!(b.corners.is_empty());
        assert_eq!(b.edges.len(), 2);
        assert_eq!(b.non_exposed_points().len(), 4);
        let faces = b.minimal_faces();
        assert_eq!(faces.iter().filter(|f| matches!(f, MinimalFace::Segment(_))).count(), 2);
        assert_eq!(faces.iter().filter(|f| matches!(f, MinimalFace::ArcFamily { .. })).count(), 2);
    }

    #[test]
    fn pill_classification() {
        let b = pill();
        assert_eq!(b.classify_point(&[1.0, 1.0, 1.0]).unwrap(), PointClass::ExtremalNotExposed);
        assert_eq!(b.classify_point(&[-1.0, -1.0, 1.0]).unwrap(), PointClass::ExtremalNotExposed);
        assert_eq!(b.classify_point(&[0.0, 1.0, 1.0]).unwrap(), PointClass::BoundaryNonExtremal);
        assert_eq!(b.classify_point(&[2.0, 0.0, 1.0]).unwrap(), PointClass::ExtremalExposed);
        assert_eq!(b.classify_point(&[0.3, -0.2, 1.0]).unwrap(), PointClass::Interior);
        assert_eq!(b.classify_point(&[0.0, 1.1, 1.0]), Err(BodyError::OutsideBody));
        assert_eq!(b.classify_point(&[0.0, 0.0, 1.5]), Err(BodyError::OutsideBody));
    }

    #[test]
    fn lens_meeting_points_are_exposed() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let right = CircularArc::new(vec![0.5, 0.5], r, vec![1.0, 0.0], vec![0.0, 1.0], [0.75 * PI, 1.25 * PI]);
        let left = CircularArc::new(vec![-0.5, 0.5], r, vec![1.0, 0.0], vec![0.0, 1.0], [-0.25 * PI, 0.25 * PI]);
        let lens = ArcBody::new(vec![], vec![right, left]).unwrap();
        let b = lens.planar_boundary().unwrap();
        assert_eq!(b.corners.len(), 2);
        assert!(b.edges.is_empty(), "{:?}", b.edges);
        let faces = b.minimal_faces();
        assert_eq!(faces.len(), 4);
        assert_eq!(lens.classify_point(&[0.0, 1.0]).unwrap(), PointClass::ExtremalExposed);
        assert_eq!(lens.classify_point(&[0.0, 0.5]).unwrap(), PointClass::Interior);
        let x = lens.arcs[0].point(PI);
        assert_eq!(lens.classify_point(&x).unwrap(), PointClass::ExtremalExposed);
    }

    #[test]
    fn square_corners() {
        let sq = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]];
        let arc = CircularArc::new(vec![0.5, 0.5], 0.1, vec![1.0, 0.0], vec![0.0, 1.0], [0.0, 1.0]);
        let b = ArcBody::new(sq, vec![arc]).unwrap().planar_boundary().unwrap();
        assert_eq!(b.corners.len(), 4);
        assert_eq!(b.edges.len(), 4);
        assert!(b.non_exposed_points().is_empty());
        assert_eq!(b.minimal_faces().len(), 4);
    }
}
