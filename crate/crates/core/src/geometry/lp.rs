//! Two-phase simplex over an ordered field with Bland's anti-cycling rule.

use serde::{Deserialize, Serialize};

use super::{GeometryError, HRep, Vector};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Max,
    Min,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub value: T,
    pub witness: Vector<T>,
}

struct Tableau<T> {
    a: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
}

enum Step {
    Optimal,
    Unbounded,
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = T::one() / self.a[r][c].clone();
        for x in self.a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        self.rhs[r] = self.rhs[r].clone() * inv;
        self.a[r][c] = T::one();
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero_s() {
                continue;
            }
            let f = self.a[i][c].clone();
            for j in 0..self.a[i].len() {
                let v = self.a[r][j].clone();
                self.a[i][j] = self.a[i][j].clone() - f.clone() * v;
            }
            self.a[i][c] = T::zero();
            let rv = self.rhs[r].clone();
            self.rhs[i] = self.rhs[i].clone() - f * rv;
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · x` over columns `< allowed`.
    fn optimize(&mut self, cost: &[T], allowed: usize) -> Step {
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero_s() && !self.a[i][j].is_zero_s() {
                        rc = rc - cost[b].clone() * self.a[i][j].clone();
                    }
                }
                if rc.is_positive_s() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][c].is_positive_s() {
                    continue;
                }
                let ratio = self.rhs[i].clone() / self.a[i][c].clone();
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => match ratio.cmp_s(&lr) {
                        std::cmp::Ordering::Less => Some((i, ratio)),
                        std::cmp::Ordering::Equal if self.basis[i] < self.basis[li] => {
                            Some((i, ratio))
                        }
                        _ => Some((li, lr)),
                    },
                };
            }
            let Some((r, _)) = leave else {
                return Step::Unbounded;
            };
            self.pivot(r, c);
        }
    }

    fn value_of(&self, col: usize) -> T {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map(|i| self.rhs[i].clone())
            .unwrap_or_else(T::zero)
    }
}

/// Optimizes `objective · x` over `region`, returning the optimum and a vertex
/// attaining it.
pub fn lp_optimize<T: Scalar>(
    objective: &[T],
    region: &HRep<T>,
    sense: Sense,
) -> Result<LpSolution<T>, GeometryError> {
    let n = region.dim;
    if objective.len() != n {
        return Err(GeometryError::DimensionMismatch {
            expected: n,
            found: objective.len(),
        });
    }
    let m_ineq = region.halfspaces.len();
    let nrows = m_ineq + region.equalities.len();
    let slack0 = 2 * n;
    let art0 = slack0 + m_ineq;

    let mut rows: Vec<Vec<T>> = Vec::with_capacity(nrows);
    let mut rhs = Vec::with_capacity(nrows);
    let mut needs_art = Vec::with_capacity(nrows);
    for (i, h) in region.halfspaces.iter().enumerate() {
        let mut row = vec![T::zero(); art0];
        for j in 0..n {
            row[j] = h.normal[j].clone();
            row[n + j] = -h.normal[j].clone();
        }
        row[slack0 + i] = T::one();
        let mut b = h.bound.clone();
        let flip = b.is_negative_s();
        if flip {
            row.iter_mut().for_each(|x| *x = -x.clone());
            b = -b;
        }
        rows.push(row);
        rhs.push(b);
        needs_art.push(flip);
    }
    for e in &region.equalities {
        let mut row = vec![T::zero(); art0];
        for j in 0..n {
            row[j] = e.normal[j].clone();
            row[n + j] = -e.normal[j].clone();
        }
        let mut b = e.value.clone();
        if b.is_negative_s() {
            row.iter_mut().for_each(|x| *x = -x.clone());
            b = -b;
        }
        rows.push(row);
        rhs.push(b);
        needs_art.push(true);
    }
    let n_art = needs_art.iter().filter(|&&x| x).count();
    let total = art0 + n_art;
    let mut basis = Vec::with_capacity(nrows);
    let mut k = 0;
    for (i, row) in rows.iter_mut().enumerate() {
        row.resize(total, T::zero());
        if needs_art[i] {
            row[art0 + k] = T::one();
            basis.push(art0 + k);
            k += 1;
        } else {
            basis.push(slack0 + i);
        }
    }
    let mut t = Tableau { a: rows, rhs, basis };

    if n_art > 0 {
        let mut cost = vec![T::zero(); total];
        for c in cost.iter_mut().skip(art0) {
            *c = -T::one();
        }
        if let Step::Unbounded = t.optimize(&cost, total) {
            unreachable!("phase one is bounded");
        }
        let infeas = (art0..total).fold(T::zero(), |acc, c| acc + t.value_of(c));
        if infeas.is_positive_s() {
            return Err(GeometryError::Infeasible);
        }
        // Drive remaining artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < t.a.len() {
            if t.basis[i] >= art0 {
                if let Some(c) = (0..art0).find(|&c| !t.a[i][c].is_zero_s()) {
                    t.pivot(i, c);
                    i += 1;
                } else {
                    t.a.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                }
            } else {
                i += 1;
            }
        }
    }

    let mut cost = vec![T::zero(); total];
    for j in 0..n {
        let c = match sense {
            Sense::Max => objective[j].clone(),
            Sense::Min => -objective[j].clone(),
        };
        cost[n + j] = -c.clone();
        cost[j] = c;
    }
    if let Step::Unbounded = t.optimize(&cost, art0) {
        return Err(GeometryError::Unbounded);
    }
    let witness: Vec<T> = (0..n).map(|j| t.value_of(j) - t.value_of(n + j)).collect();
    let value = super::vector::dot(objective, &witness);
    Ok(LpSolution {
        value,
        witness: Vector::new(witness),
    })
}

/// True if the region has at least one point.
pub fn is_feasible<T: Scalar>(region: &HRep<T>) -> bool {
    let zero = vec![T::zero(); region.dim];
    !matches!(
        lp_optimize(&zero, region, Sense::Max),
        Err(GeometryError::Infeasible)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{HalfSpace, HRep};
    use crate::scalar::{q, Rational};

    fn unit_square() -> HRep<Rational> {
        HRep::from_inequalities(
            2,
            vec![
                HalfSpace::new(Vector::from_ints(&[-1, 0]), q(0, 1)),
                HalfSpace::new(Vector::from_ints(&[0, -1]), q(0, 1)),
                HalfSpace::new(Vector::from_ints(&[1, 0]), q(1, 1)),
                HalfSpace::new(Vector::from_ints(&[0, 1]), q(1, 1)),
            ],
        )
    }

    #[test]
    fn box_optimum() {
        let s = lp_optimize(&[q(1, 1), q(0, 1)], &unit_square(), Sense::Max).unwrap();
        assert_eq!(s.value, q(1, 1));
        assert_eq!(s.witness[0], q(1, 1));
        let s = lp_optimize(&[q(1, 1), q(1, 1)], &unit_square(), Sense::Min).unwrap();
        assert_eq!(s.value, q(0, 1));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut h = unit_square();
        h.halfspaces.push(HalfSpace::new(Vector::from_ints(&[1, 0]), q(-1, 1)));
        assert_eq!(
            lp_optimize(&[q(1, 1), q(0, 1)], &h, Sense::Max),
            Err(GeometryError::Infeasible)
        );
        let half = HRep::from_inequalities(
            2,
            vec![HalfSpace::new(Vector::from_ints(&[-1, 0]), q(0, 1))],
        );
        assert_eq!(
            lp_optimize(&[q(1, 1), q(0, 1)], &half, Sense::Max),
            Err(GeometryError::Unbounded)
        );
    }

    #[test]
    fn equalities_and_negative_bounds() {
        // x + y = 1, x ≥ 1/3 (i.e. −x ≤ −1/3), y ≥ 0
        let mut h = HRep::from_inequalities(
            2,
            vec![
                HalfSpace::new(Vector::from_ints(&[-1, 0]), q(-1, 3)),
                HalfSpace::new(Vector::from_ints(&[0, -1]), q(0, 1)),
            ],
        );
        h.push_equality(Vector::from_ints(&[1, 1]), q(1, 1));
        let s = lp_optimize(&[q(0, 1), q(1, 1)], &h, Sense::Max).unwrap();
        assert_eq!(s.value, q(2, 3));
        assert_eq!(s.witness, Vector::from_ratios(&[(1, 3), (2, 3)]));
    }
}
