//! Dense Gaussian elimination over any [`Scalar`] field.

use crate::scalar::Scalar;

/// Reduced row echelon form of a row-major matrix with `ncols` columns.
///
/// Returns the non-zero rows of the RREF and their pivot columns.
pub fn rref<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        // Largest magnitude pivot keeps the float path stable; harmless when exact.
        let mut best: Option<usize> = None;
        for i in r..m.len() {
            if m[i][c].is_zero_s() {
                continue;
            }
            match best {
                None => best = Some(i),
                Some(b) if !T::EXACT && m[i][c].abs_s().cmp_s(&m[b][c].abs_s()).is_gt() => {
                    best = Some(i)
                }
                _ => {}
            }
        }
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        m[r][c] = T::one();
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero_s() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..ncols {
                let v = m[r][j].clone();
                m[i][j] = m[i][j].clone() - f.clone() * v;
            }
            m[i][c] = T::zero();
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : A x = 0}` in RREF (each basis vector has a unit entry at a
/// distinct free column).
pub fn nullspace<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `A x = b`, or `None` if inconsistent.
pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T], ncols: usize) -> Option<Vec<T>> {
    let aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![T::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<T: Scalar>(a: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let aug: Vec<Vec<T>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Dimension of the affine hull of a point set (−1 for the empty set is
/// reported as `None`).
pub fn affine_dim<T: Scalar>(points: &[impl AsRef<[T]>]) -> Option<usize> {
    let first = points.first()?.as_ref();
    let n = first.len();
    let diffs: Vec<Vec<T>> = points[1..]
        .iter()
        .map(|p| {
            p.as_ref()
                .iter()
                .zip(first)
                .map(|(x, y)| x.clone() - y.clone())
                .collect()
        })
        .collect();
    Some(rank(&diffs, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x, 1)).collect())
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a, 3), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let s: Rational = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert_eq!(s, q(0, 1));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[-1, 2]]));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_consistency() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[q(2, 1), q(0, 1)], 2), Some(vec![q(1, 1), q(1, 1)]));
        let b = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&b, &[q(1, 1), q(3, 1)], 2), None);
    }

    #[test]
    fn affine_dim_cases() {
        let pts = m(&[&[0, 0], &[1, 1], &[2, 2]]);
        assert_eq!(affine_dim::<Rational>(&pts), Some(1));
        assert_eq!(affine_dim::<Rational>(&pts[..1]), Some(0));
    }
}
