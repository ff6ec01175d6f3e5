use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::{check_direction, ArcBody, BodyError, CircularArc, ConvexBody, Face};
use crate::geometry::{linalg, Vector};

/// Stadium of points within `radius` of the segment `[-half_length, half_length] × {0}`,
/// lifted to the state plane `z = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stadium {
    pub half_length: f64,
    pub radius: f64,
}

impl Stadium {
    pub fn new(half_length: f64, radius: f64) -> Result<Self, BodyError> {
        if !(half_length >= 0.0 && radius > 0.0) {
            return Err(BodyError::InvalidArc("stadium needs half_length ≥ 0 and radius > 0".into()));
        }
        Ok(Stadium { half_length, radius })
    }

    /// Support of the planar stadium in direction `n`.
    pub fn support2(&self, n: [f64; 2]) -> f64 {
        self.half_length * n[0].abs() + self.radius * (n[0] * n[0] + n[1] * n[1]).sqrt()
    }

    /// Minkowski gauge of the planar stadium at `(p, q)` and the unique
    /// polar point `y` with `y · (p, q)` equal to it.
    pub fn gauge(&self, p: f64, q: f64) -> (f64, [f64; 2]) {
        let (l, r) = (self.half_length, self.radius);
        if p == 0.0 && q == 0.0 {
            return (0.0, [0.0, 0.0]);
        }
        let t_flat = q.abs() / r;
        if p.abs() <= t_flat * l {
            return (t_flat, [0.0, q.signum() / r]);
        }
        // dist((p, q), t·segment) − t·r is decreasing in t.
        let f = |t: f64| {
            let dx = (p.abs() - t * l).max(0.0);
            (dx * dx + q * q).sqrt() - t * r
        };
        let (mut lo, mut hi) = (0.0, (p.abs() + q.abs()) / r + 1.0);
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if f(m) > 0.0 {
                lo = m;
            } else {
                hi = m;
            }
        }
        let t = 0.5 * (lo + hi);
        let nx = p.abs() - t * l;
        let norm = (nx * nx + q * q).sqrt();
        let n = [p.signum() * nx / norm, q / norm];
        let h = self.support2(n);
        (t, [n[0] / h, n[1] / h])
    }

    /// Boundary point of the polar body in normal direction `alpha`.
    pub fn polar_point(&self, alpha: f64) -> [f64; 2] {
        let n = [alpha.cos(), alpha.sin()];
        let h = self.support2(n);
        [n[0] / h, n[1] / h]
    }

    /// The stadium as a convex hull of two semicircles.
    pub fn arc_body(&self) -> ArcBody {
        let (l, r) = (self.half_length, self.radius);
        let frame = (vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]);
        let right = CircularArc::new(vec![l, 0.0, 1.0], r, frame.0.clone(), frame.1.clone(), [-FRAC_PI_2, FRAC_PI_2]);
        let left = CircularArc::new(vec![-l, 0.0, 1.0], r, frame.0, frame.1, [FRAC_PI_2, 3.0 * FRAC_PI_2]);
        ArcBody::new(Vec::new(), vec![right, left]).expect("valid stadium arcs")
    }
}

/// Unrestricted effect space of a stadium state space, given analytically:
/// the double cone over half the polar stadium with apexes `0` and `u`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PillDual {
    pub stadium: Stadium,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn default_tol() -> f64 {
    1e-9
}

impl PillDual {
    pub fn new(stadium: Stadium) -> Self {
        PillDual { stadium, tol: default_tol() }
    }

    /// The paired state space.
    pub fn states(&self) -> ArcBody {
        self.stadium.arc_body()
    }

    /// Extremal effect `(y/2, 1/2)` at polar boundary point `y`.
    pub fn middle_effect(y: [f64; 2]) -> Vec<f64> {
        vec![0.5 * y[0], 0.5 * y[1], 0.5]
    }

    pub fn contains(&self, e: &[f64]) -> bool {
        let c = e[2];
        self.stadium.support2([e[0], e[1]]) <= c.min(1.0 - c) + self.tol
    }
}

impl ConvexBody for PillDual {
    fn ambient_dim(&self) -> usize {
        3
    }

    fn tolerance(&self) -> f64 {
        self.tol
    }

    fn support(&self, direction: &[f64]) -> Result<(f64, Face<f64>), BodyError> {
        check_direction(3, direction, 0.0)?;
        let (p, q, r) = (direction[0], direction[1], direction[2]);
        let (hk, y) = self.stadium.gauge(p, q);
        let mid = 0.5 * (hk + r);
        let best = 0.0f64.max(r).max(mid);
        let mut points = Vec::new();
        if best <= self.tol {
            points.push(Vector::new(vec![0.0, 0.0, 0.0]));
        }
        if r >= best - self.tol {
            points.push(Vector::new(vec![0.0, 0.0, 1.0]));
        }
        if mid >= best - self.tol {
            if p == 0.0 && q == 0.0 {
                for k in 0..8 {
                    let y = self.stadium.polar_point(PI * k as f64 / 4.0);
                    points.push(Vector::new(Self::middle_effect(y)));
                }
            } else {
                points.push(Vector::new(Self::middle_effect(y)));
            }
        }
        let dimension = linalg::affine_dim::<f64>(&points).unwrap_or(0);
        Ok((
            best,
            Face {
                normal: Vector::new(direction.to_vec()),
                level: best,
                vertices: Vec::new(),
                points,
                arcs: Vec::new(),
                dimension,
                attained: true,
            },
        ))
    }

    fn sample_points(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut gens = vec![vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]];
        for k in 0..64 {
            let y = self.stadium.polar_point(PI * k as f64 / 32.0);
            gens.push(Self::middle_effect(y));
        }
        super::sample_hull(&gens, count, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauge_matches_boundary() {
        let s = Stadium::new(1.0, 1.0).unwrap();
        assert!((s.gauge(2.0, 0.0).0 - 1.0).abs() < 1e-12);
        assert!((s.gauge(0.5, 1.0).0 - 1.0).abs() < 1e-12);
        let (t, y) = s.gauge(1.0 + 0.6, 0.8);
        assert!((t - 1.0).abs() < 1e-12);
        assert!((y[0] * 1.6 + y[1] * 0.8 - 1.0).abs() < 1e-12);
        assert!((s.gauge(4.0, 0.0).0 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn dual_support_at_states() {
        let d = PillDual::new(Stadium::new(1.0, 1.0).unwrap());
        let (v, f) = d.support(&[1.0, 1.0, 1.0]).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert_eq!(f.points.len(), 2);
        assert_eq!(f.points[1].coords(), &[0.0, 0.5, 0.5]);
        let (v, f) = d.support(&[0.3, 0.1, 1.0]).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert_eq!(f.points.len(), 1);
    }
}
