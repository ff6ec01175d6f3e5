//! Brute-force oracles written independently of the library's geometry.
#![allow(dead_code)]

use gptlab::geometry::{Polytope, Vector};
use gptlab::{q, Rational, Scalar};
use itertools::Itertools;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Row reduction of `[a | b]`; `Some(x)` iff the system is consistent with a
/// unique solution.
pub fn solve_unique<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect())
        .collect();
    let mut piv = 0;
    for c in 0..cols {
        let p = (piv..rows).find(|&r| !m[r][c].is_zero_s())?;
        m.swap(piv, p);
        let inv = T::one() / m[piv][c].clone();
        for x in m[piv].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..rows {
            if r != piv && !m[r][c].is_zero_s() {
                let f = m[r][c].clone();
                for k in 0..=cols {
                    let v = m[r][k].clone() - f.clone() * m[piv][k].clone();
                    m[r][k] = v;
                }
            }
        }
        piv += 1;
    }
    if m[piv..].iter().any(|r| !r[cols].is_zero_s()) {
        return None;
    }
    Some(m[..cols].iter().map(|r| r[cols].clone()).collect())
}

/// Rank by elimination with an absolute pivot threshold.
pub fn rank_f64(rows: &[Vec<f64>], tol: f64) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())) else {
            break;
        };
        if m[p][c].abs() <= tol {
            continue;
        }
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            let f = m[r][c] / m[rank][c];
            for k in c..cols {
                m[r][k] -= f * m[rank][k];
            }
        }
        rank += 1;
    }
    rank
}

pub fn affine_dim_f64(points: &[Vec<f64>]) -> usize {
    let diffs: Vec<Vec<f64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        0
    } else {
        rank_f64(&diffs, 1e-9)
    }
}

pub fn exact_rank(rows: &[Vector<Rational>]) -> usize {
    let n = rows.first().map_or(0, |r| r.len());
    (1..=rows.len().min(n))
        .rev()
        .find(|&k| {
            rows.iter().combinations(k).any(|sub| {
                // k independent rows iff some k×k minor is invertible
                (0..n).combinations(k).any(|cols| {
                    let a: Vec<Vec<Rational>> = cols.iter().map(|&c| sub.iter().map(|r| r[c].clone()).collect()).collect();
                    solve_unique(&a, &vec![Rational::from_int(0); k]).is_some()
                })
            })
        })
        .unwrap_or(0)
}

/// `p` is a convex combination of affinely independent points of `others`
/// (Carathéodory: subsets of size at most `dim + 1` suffice).
fn in_hull(p: &Vector<Rational>, others: &[&Vector<Rational>]) -> bool {
    let n = p.len();
    for k in 1..=others.len().min(n) {
        for sub in others.iter().combinations(k) {
            let mut a: Vec<Vec<Rational>> = (0..n).map(|r| sub.iter().map(|x| x[r].clone()).collect()).collect();
            a.push(vec![Rational::from_int(1); k]);
            let mut b: Vec<Rational> = p.iter().cloned().collect();
            b.push(Rational::from_int(1));
            if let Some(l) = solve_unique(&a, &b) {
                if l.iter().all(|x| !x.is_negative_s()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Extreme points of `conv(points)`, deduplicated and sorted.
pub fn hull_vertices(points: &[Vector<Rational>]) -> Vec<Vector<Rational>> {
    let mut pts: Vec<Vector<Rational>> = Vec::new();
    for p in points {
        if !pts.iter().any(|x| x.eq_s(p)) {
            pts.push(p.clone());
        }
    }
    let mut out: Vec<Vector<Rational>> = (0..pts.len())
        .filter(|&i| {
            let others: Vec<&Vector<Rational>> = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x).collect();
            !in_hull(&pts[i], &others)
        })
        .map(|i| pts[i].clone())
        .collect();
    out.sort_by(|a, b| a.lex_cmp(b));
    out
}

pub fn same_points<T: Scalar>(a: &[Vector<T>], b: &[Vector<T>]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| y.eq_s(x))) && b.iter().all(|y| a.iter().any(|x| x.eq_s(y)))
}

pub fn same_points_f64(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    let close = |x: &Vec<f64>, y: &Vec<f64>| x.iter().zip(y).all(|(s, t)| (s - t).abs() <= tol);
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| close(x, y))) && b.iter().all(|y| a.iter().any(|x| close(x, y)))
}

/// Intermediate determinism straight from the definition on vertex lists:
/// a vertex `ω` fails iff another vertex of `S` makes every effect vertex
/// tight at `ω` tight as well (the midpoint then has the same actual set).
pub fn id_by_vertices<T: Scalar>(states: &[Vector<T>], effects: &[Vector<T>]) -> bool {
    states.iter().all(|w| {
        let tight: Vec<&Vector<T>> = effects.iter().filter(|e| e.dot(w).eq_s(&T::one())).collect();
        states
            .iter()
            .filter(|x| !x.eq_s(w))
            .all(|x| tight.iter().any(|e| !e.dot(x).eq_s(&T::one())))
    })
}

/// `dim + 1`-dimensional normalized states with small dyadic coordinates.
pub fn random_states(rng: &mut ChaCha8Rng, d: usize, max_vertices: usize) -> Polytope<Rational> {
    loop {
        let m = rng.random_range(d + 1..=max_vertices.max(d + 1));
        let pts: Vec<Vector<Rational>> = (0..m)
            .map(|_| {
                let mut c: Vec<Rational> = (0..d).map(|_| q(rng.random_range(-8..=8), 4)).collect();
                c.push(Rational::from_int(1));
                Vector::new(c)
            })
            .collect();
        if exact_rank(&pts) != d + 1 {
            continue;
        }
        if let Ok(p) = Polytope::from_points(pts) {
            return p;
        }
    }
}

/// `conv{0, u, p·e, u − p·e : e ∈ vert E(S)}`.
pub fn nu_truncation(es: &Polytope<Rational>, p: &Rational) -> Polytope<Rational> {
    let n = es.ambient_dim();
    let u = Vector::<Rational>::unit_effect(n);
    let mut pts = vec![Vector::zeros(n), u.clone()];
    for e in es.vertices() {
        pts.push(e.scale(p));
        pts.push(u.sub(&e.scale(p)));
    }
    Polytope::from_points(pts).expect("truncation")
}

/// Complement-closed hull of `0`, `u` and a few random mixtures of effects.
pub fn random_restriction(rng: &mut ChaCha8Rng, es: &Polytope<Rational>) -> Polytope<Rational> {
    let n = es.ambient_dim();
    let u = Vector::<Rational>::unit_effect(n);
    let v = es.vertices();
    loop {
        let mut pts = vec![Vector::zeros(n), u.clone()];
        for _ in 0..rng.random_range(n..=2 * n + 2) {
            let i = rng.random_range(0..v.len());
            let j = rng.random_range(0..v.len());
            let t = q(rng.random_range(0..=4), 4);
            let e = v[i].scale(&t).add(&v[j].scale(&(Rational::from_int(1) - t.clone())));
            pts.push(u.sub(&e));
            pts.push(e);
        }
        if exact_rank(&pts) == n {
            return Polytope::from_points(pts).expect("restriction");
        }
    }
}
