//! Double description method for pointed polyhedral cones.

use super::linalg::{inverse, rref};
use super::lp::is_feasible;
use super::vector::{lex_cmp, normalize_max, sort_dedup};
use super::{GeometryError, HRep, VRep, Vector};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
struct RowSet(Vec<u64>);

impl RowSet {
    fn empty(n: usize) -> Self {
        RowSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn intersect(&self, o: &RowSet) -> RowSet {
        RowSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &RowSet) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray<T> {
    y: Vec<T>,
    zeros: RowSet,
}

pub(crate) struct Lineality;

/// Extreme rays of the cone `{y : row · y ≤ 0 for every row}` in R^n.
///
/// Rows are inserted in lexicographic order. Fails if the cone has lineality.
pub(crate) fn cone_extreme_rays<T: Scalar>(
    rows: &[Vec<T>],
    n: usize,
) -> Result<Vec<Vec<T>>, Lineality> {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| lex_cmp(&rows[a], &rows[b]).then(a.cmp(&b)));

    let mut basis_rows: Vec<usize> = Vec::new();
    let mut current: Vec<Vec<T>> = Vec::new();
    for &i in &order {
        let mut trial = current.clone();
        trial.push(rows[i].clone());
        if rref(&trial, n).1.len() > current.len() {
            current = trial;
            basis_rows.push(i);
            if basis_rows.len() == n {
                break;
            }
        }
    }
    if basis_rows.len() < n {
        return Err(Lineality);
    }
    let inv = inverse(&current).expect("independent rows");
    let mut rays: Vec<Ray<T>> = (0..n)
        .map(|j| {
            let y: Vec<T> = (0..n).map(|i| -inv[i][j].clone()).collect();
            let mut zeros = RowSet::empty(rows.len());
            for (k, &r) in basis_rows.iter().enumerate() {
                if k != j {
                    zeros.insert(r);
                }
            }
            Ray {
                y: normalize_max(&y),
                zeros,
            }
        })
        .collect();

    for &r in order.iter().filter(|i| !basis_rows.contains(i)) {
        let row = &rows[r];
        let vals: Vec<T> = rays.iter().map(|ray| super::dot(row, &ray.y)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive_s()).collect();
        if pos.is_empty() {
            for (ray, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero_s() {
                    ray.zeros.insert(r);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative_s()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &m in &neg {
                let common = rays[p].zeros.intersect(&rays[m].zeros);
                if n >= 2 && common.len() < n - 2 {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|k| k == p || k == m || !common.subset_of(&rays[k].zeros));
                if !adjacent {
                    continue;
                }
                // y = v_p·y_m − v_m·y_p lies on the new hyperplane.
                let (vp, vm) = (vals[p].clone(), vals[m].clone());
                let y: Vec<T> = rays[m]
                    .y
                    .iter()
                    .zip(&rays[p].y)
                    .map(|(a, b)| vp.clone() * a.clone() - vm.clone() * b.clone())
                    .collect();
                let mut zeros = common;
                zeros.insert(r);
                fresh.push(Ray {
                    y: normalize_max(&y),
                    zeros,
                });
            }
        }
        let mut next = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut ray) in rays.into_iter().enumerate() {
            if vals[k].is_positive_s() {
                continue;
            }
            if vals[k].is_zero_s() {
                ray.zeros.insert(r);
            }
            next.push(ray);
        }
        next.extend(fresh);
        rays = next;
    }
    Ok(rays.into_iter().map(|r| r.y).collect())
}

/// Vertices of a bounded region given by inequalities and equalities.
///
/// The output is irredundant and sorted lexicographically.
pub fn hrep_to_vrep<T: Scalar>(region: &HRep<T>) -> Result<VRep<T>, GeometryError> {
    region.check()?;
    let d = region.dim;
    let mut rows: Vec<Vec<T>> = Vec::new();
    for h in &region.halfspaces {
        let mut r = h.normal.coords().to_vec();
        r.push(-h.bound.clone());
        rows.push(r);
    }
    for e in &region.equalities {
        let mut r = e.normal.coords().to_vec();
        r.push(-e.value.clone());
        rows.push(r.iter().map(|x| -x.clone()).collect());
        rows.push(r);
    }
    let mut t_row = vec![T::zero(); d + 1];
    t_row[d] = -T::one();
    rows.push(t_row);

    let rays = match cone_extreme_rays(&rows, d + 1) {
        Ok(r) => r,
        Err(Lineality) => {
            return Err(if is_feasible(region) {
                GeometryError::Unbounded
            } else {
                GeometryError::Infeasible
            })
        }
    };
    let mut vertices = Vec::new();
    let mut recession = false;
    for y in rays {
        let t = y[d].clone();
        if t.is_positive_s() {
            vertices.push(Vector::new(
                y[..d].iter().map(|x| x.clone() / t.clone()).collect(),
            ));
        } else if y.iter().any(|x| !x.is_zero_s()) {
            recession = true;
        }
    }
    if vertices.is_empty() {
        return Err(GeometryError::Infeasible);
    }
    if recession {
        return Err(GeometryError::Unbounded);
    }
    sort_dedup(&mut vertices);
    Ok(VRep::new(vertices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    #[test]
    fn unit_square_vertices() {
        let mut h = HRep::<Rational>::new(2);
        h.push_inequality(Vector::from_ints(&[-1, 0]), q(0, 1));
        h.push_inequality(Vector::from_ints(&[0, -1]), q(0, 1));
        h.push_inequality(Vector::from_ints(&[1, 0]), q(1, 1));
        h.push_inequality(Vector::from_ints(&[0, 1]), q(1, 1));
        let v = hrep_to_vrep(&h).unwrap();
        let expect: Vec<Vector<Rational>> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|p| Vector::from_ints(p))
            .collect();
        assert_eq!(v.vertices, expect);
    }

    #[test]
    fn empty_and_unbounded() {
        let mut h = HRep::<Rational>::new(2);
        h.push_inequality(Vector::from_ints(&[1, 0]), q(-1, 1));
        h.push_inequality(Vector::from_ints(&[-1, 0]), q(-1, 1));
        assert_eq!(hrep_to_vrep(&h), Err(GeometryError::Infeasible));
        let mut h = HRep::<Rational>::new(2);
        h.push_inequality(Vector::from_ints(&[-1, 0]), q(0, 1));
        h.push_inequality(Vector::from_ints(&[0, -1]), q(0, 1));
        assert_eq!(hrep_to_vrep(&h), Err(GeometryError::Unbounded));
        let mut h = HRep::<Rational>::new(2);
        h.push_inequality(Vector::from_ints(&[-1, 0]), q(0, 1));
        h.push_inequality(Vector::from_ints(&[0, -1]), q(0, 1));
        h.push_inequality(Vector::from_ints(&[1, 1]), q(-1, 1));
        assert_eq!(hrep_to_vrep(&h), Err(GeometryError::Infeasible));
    }

    #[test]
    fn point_from_equalities() {
        let mut h = HRep::<Rational>::new(2);
        h.push_equality(Vector::from_ints(&[1, 0]), q(1, 1));
        h.push_equality(Vector::from_ints(&[0, 1]), q(1, 1));
        let v = hrep_to_vrep(&h).unwrap();
        assert_eq!(v.vertices, vec![Vector::from_ints(&[1, 1])]);
    }
}
