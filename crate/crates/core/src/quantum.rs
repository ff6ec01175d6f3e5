//! Finite-dimensional quantum checks: Born probabilities, actual sets of
//! density operators and the two-dimensional projection counterexample.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gpm::{verify_gpm, Gpm, ProbabilityStructure};

pub type C = Complex64;

/// Self-adjointness tolerance.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues below this count as kernel.
pub const KERNEL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
}

/// A self-adjoint operator stored as a dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    pub dim: usize,
    pub entries: Vec<Vec<C>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<C>>,
}

fn inner(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C]) -> f64 {
    inner(a, a).re.sqrt()
}

impl HermitianOperator {
    pub fn new(entries: Vec<Vec<C>>) -> Result<Self, QuantumError> {
        let dim = entries.len();
        if entries.iter().any(|r| r.len() != dim) {
            return Err(QuantumError::InvalidOperator("matrix is not square".into()));
        }
        for i in 0..dim {
            for j in 0..dim {
                if (entries[i][j] - entries[j][i].conj()).norm() > HERMITIAN_TOL {
                    return Err(QuantumError::InvalidOperator(format!("entry ({i}, {j}) breaks self-adjointness")));
                }
            }
        }
        Ok(HermitianOperator { dim, entries })
    }

    fn raw(dim: usize, f: impl Fn(usize, usize) -> C) -> Self {
        HermitianOperator {
            dim,
            entries: (0..dim).map(|i| (0..dim).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::raw(dim, |_, _| C::new(0.0, 0.0))
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn diagonal(d: &[f64]) -> Self {
        Self::raw(d.len(), |i, j| if i == j { C::new(d[i], 0.0) } else { C::new(0.0, 0.0) })
    }

    /// `|ψ⟩⟨ψ|` for a normalized copy of `psi`.
    pub fn projector(psi: &[C]) -> Self {
        let n = norm(psi);
        Self::raw(psi.len(), |i, j| psi[i] * psi[j].conj() / (n * n))
    }

    /// `Σ w_k |ψ_k⟩⟨ψ_k|`.
    pub fn from_spectrum(weights: &[f64], vectors: &[Vec<C>]) -> Self {
        let dim = vectors[0].len();
        let mut out = Self::zero(dim);
        for (w, v) in weights.iter().zip(vectors) {
            out = out.add(&Self::projector(v).scale(*w));
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::raw(self.dim, |i, j| self.entries[i][j] + o.entries[i][j])
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::raw(self.dim, |i, j| self.entries[i][j] - o.entries[i][j])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::raw(self.dim, |i, j| self.entries[i][j] * s)
    }

    /// Matrix product (not necessarily self-adjoint).
    pub fn mul_raw(&self, o: &Self) -> Vec<Vec<C>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| (0..self.dim).map(|k| self.entries[i][k] * o.entries[k][j]).sum()).collect())
            .collect()
    }

    pub fn apply(&self, v: &[C]) -> Vec<C> {
        self.entries.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn trace(&self) -> C {
        (0..self.dim).map(|i| self.entries[i][i]).sum()
    }

    /// `Tr(AB)`.
    pub fn trace_product(&self, o: &Self) -> C {
        (0..self.dim)
            .flat_map(|i| (0..self.dim).map(move |k| (i, k)))
            .map(|(i, k)| self.entries[i][k] * o.entries[k][i])
            .sum()
    }

    /// Frobenius norm of the difference.
    pub fn distance(&self, o: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(o.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Cyclic Jacobi eigendecomposition.
    pub fn eigen(&self) -> SpectralDecomposition {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut v: Vec<Vec<C>> = (0..n)
            .map(|i| (0..n).map(|j| C::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
        for _ in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|(i, j)| i != j)
                .map(|(i, j)| a[i][j].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= HERMITIAN_TOL {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let b = a[p][q];
                    if b.norm() == 0.0 {
                        continue;
                    }
                    let g = b.norm();
                    let phase = b / g;
                    let theta = 0.5 * (2.0 * g).atan2(a[q][q].re - a[p][p].re);
                    let (c, s) = (theta.cos(), theta.sin());
                    let e = phase.conj();
                    let u = [[C::new(c, 0.0), C::new(s, 0.0)], [-e * s, e * c]];
                    for row in a.iter_mut() {
                        let (x, y) = (row[p], row[q]);
                        row[p] = x * u[0][0] + y * u[1][0];
                        row[q] = x * u[0][1] + y * u[1][1];
                    }
                    for k in 0..n {
                        let (x, y) = (a[p][k], a[q][k]);
                        a[p][k] = u[0][0].conj() * x + u[1][0].conj() * y;
                        a[q][k] = u[0][1].conj() * x + u[1][1].conj() * y;
                    }
                    for row in v.iter_mut() {
                        let (x, y) = (row[p], row[q]);
                        row[p] = x * u[0][0] + y * u[1][0];
                        row[q] = x * u[0][1] + y * u[1][1];
                    }
                }
            }
        }
        let mut pairs: Vec<(f64, Vec<C>)> = (0..n).map(|j| (a[j][j].re, (0..n).map(|i| v[i][j]).collect())).collect();
        pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
        SpectralDecomposition {
            eigenvalues: pairs.iter().map(|p| p.0).collect(),
            eigenvectors: pairs.into_iter().map(|p| p.1).collect(),
        }
    }

    pub fn is_effect(&self, tol: f64) -> bool {
        self.eigen().eigenvalues.iter().all(|&l| l >= -tol && l <= 1.0 + tol)
    }

    pub fn is_density(&self, tol: f64) -> bool {
        (self.trace() - C::new(1.0, 0.0)).norm() <= tol && self.eigen().eigenvalues.iter().all(|&l| l >= -tol)
    }

    pub fn is_projection(&self, tol: f64) -> bool {
        let sq = self.mul_raw(self);
        sq.iter().flatten().zip(self.entries.iter().flatten()).all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Projection onto the span of eigenvectors with eigenvalue above
    /// [`KERNEL_TOL`].
    pub fn support_projection(&self) -> Self {
        let sd = self.eigen();
        let mut p = Self::zero(self.dim);
        for (l, v) in sd.eigenvalues.iter().zip(&sd.eigenvectors) {
            if *l > KERNEL_TOL {
                p = p.add(&Self::projector(v));
            }
        }
        p
    }
}

impl SpectralDecomposition {
    pub fn reconstruct(&self) -> HermitianOperator {
        HermitianOperator::from_spectrum(&self.eigenvalues, &self.eigenvectors)
    }
}

/// `Tr(Eρ)`, clamped to `[0, 1]`.
pub fn born_measure(rho: &HermitianOperator, e: &HermitianOperator) -> Result<f64, QuantumError> {
    if rho.dim != e.dim {
        return Err(QuantumError::InvalidOperator("dimension mismatch".into()));
    }
    if !rho.is_density(1e-10) {
        return Err(QuantumError::InvalidOperator("not a density operator".into()));
    }
    if !e.is_effect(1e-10) {
        return Err(QuantumError::InvalidOperator("not an effect".into()));
    }
    let t = e.trace_product(rho);
    if t.im.abs() > 1e-12 || t.re < -1e-10 || t.re > 1.0 + 1e-10 {
        return Err(QuantumError::InvalidOperator(format!("trace {t} out of range")));
    }
    Ok(t.re.clamp(0.0, 1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    /// `Tr(Eρ) ≥ 1 − 1e-10`.
    pub member: bool,
    /// `E` acts as the identity on the support of `ρ`.
    pub structural: bool,
    /// Largest `‖(E − I)ψ‖` over support eigenvectors.
    pub residual: f64,
}

impl Membership {
    pub fn agree(&self) -> bool {
        self.member == self.structural
    }
}

/// Whether `E` lies in the actual set of `ρ`, by the trace and by the
/// structural criterion.
pub fn actual_set_membership(e: &HermitianOperator, rho: &HermitianOperator) -> Result<Membership, QuantumError> {
    let p = born_measure(rho, e)?;
    let sd = rho.eigen();
    let mut residual: f64 = 0.0;
    for (l, psi) in sd.eigenvalues.iter().zip(&sd.eigenvectors) {
        if *l > KERNEL_TOL {
            let ep = e.apply(psi);
            let d: Vec<C> = ep.iter().zip(psi).map(|(a, b)| a - b).collect();
            residual = residual.max(norm(&d));
        }
    }
    Ok(Membership {
        member: p >= 1.0 - 1e-10,
        structural: residual <= 1e-8,
        residual,
    })
}

fn gaussian_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<C> {
    (0..dim)
        .map(|_| C::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Haar-random orthonormal basis (Gram–Schmidt on Gaussian vectors).
pub fn random_basis(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Vec<C>> {
    let mut out: Vec<Vec<C>> = Vec::new();
    while out.len() < dim {
        let mut v = gaussian_vector(rng, dim);
        for b in &out {
            let c = inner(b, &v);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
        let n = norm(&v);
        if n > 1e-6 {
            out.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    out
}

/// Density operator of the given rank with random spectrum and eigenbasis.
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize, rank: usize) -> HermitianOperator {
    let basis = random_basis(rng, dim);
    let mut w: Vec<f64> = (0..rank).map(|_| rng.random_range(0.05..1.0)).collect();
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);
    HermitianOperator::from_spectrum(&w, &basis[..rank])
}

/// Effect with random eigenbasis and eigenvalues uniform in `[0, 1]`.
pub fn random_effect(rng: &mut ChaCha8Rng, dim: usize) -> HermitianOperator {
    let basis = random_basis(rng, dim);
    let w: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..=1.0)).collect();
    HermitianOperator::from_spectrum(&w, &basis)
}

/// `Π_supp(ρ) + (I − Π) X (I − Π)` for a random effect `X`: a random
/// member of the actual set of `ρ`.
pub fn random_actual_effect(rng: &mut ChaCha8Rng, rho: &HermitianOperator) -> HermitianOperator {
    let p = rho.support_projection();
    let k = HermitianOperator::identity(rho.dim).sub(&p);
    let x = random_effect(rng, rho.dim);
    let kx = HermitianOperator {
        dim: rho.dim,
        entries: k.mul_raw(&x),
    };
    let kxk = kx.mul_raw(&k);
    p.add(&HermitianOperator {
        dim: rho.dim,
        entries: kxk,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub failures: usize,
    pub max_residual: f64,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// `Tr(Eρ) + Tr((I − E)ρ) = 1` on random pairs.
pub fn complement_additivity_scan(dim: usize, trials: usize, seed: u64) -> Result<ScanReport, QuantumError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = HermitianOperator::identity(dim);
    let mut rep = ScanReport {
        dim,
        trials,
        seed,
        failures: 0,
        max_residual: 0.0,
    };
    for _ in 0..trials {
        let rank = rng.random_range(1..=dim);
        let rho = random_density(&mut rng, dim, rank);
        let e = random_effect(&mut rng, dim);
        let r = (born_measure(&rho, &e)? + born_measure(&rho, &id.sub(&e))? - 1.0).abs();
        rep.max_residual = rep.max_residual.max(r);
        if r > 1e-10 {
            rep.failures += 1;
        }
    }
    Ok(rep)
}

/// Trace and structural membership criteria agree on random pairs, half of
/// them drawn from the actual set.
pub fn characterization_scan(dim: usize, trials: usize, seed: u64) -> Result<ScanReport, QuantumError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = ScanReport {
        dim,
        trials,
        seed,
        failures: 0,
        max_residual: 0.0,
    };
    for t in 0..trials {
        let rank = rng.random_range(1..=dim);
        let rho = random_density(&mut rng, dim, rank);
        let e = if t % 2 == 0 {
            random_actual_effect(&mut rng, &rho)
        } else {
            random_effect(&mut rng, dim)
        };
        let m = actual_set_membership(&e, &rho)?;
        if m.member {
            rep.max_residual = rep.max_residual.max(m.residual);
        }
        if !m.agree() || (t % 2 == 0 && !m.member) {
            rep.failures += 1;
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    /// Rank-one pairs whose actual sets the witness `Π_supp(ρ)` separated.
    pub separated: usize,
    /// Near-identical rank-one pairs redrawn.
    pub rejected: usize,
    /// Same-support pairs of higher rank.
    pub same_support_pairs: usize,
    /// Same-support pairs with equal support projections and no
    /// distinguishing effect in the battery.
    pub same_support_equal: usize,
    pub battery_size: usize,
    pub max_residual: f64,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        self.separated == self.trials && self.same_support_equal == self.same_support_pairs
    }
}

/// Rank-one densities have unique actual sets; higher-rank densities share
/// theirs with every density of the same support.
pub fn rank_one_uniqueness_scan(dim: usize, trials: usize, seed: u64) -> Result<UniquenessReport, QuantumError> {
    if !(2..=4).contains(&dim) {
        return Err(QuantumError::InvalidOperator(format!("dimension {dim} outside 2..=4")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let battery = 8;
    let mut rep = UniquenessReport {
        dim,
        trials,
        seed,
        separated: 0,
        rejected: 0,
        same_support_pairs: 0,
        same_support_equal: 0,
        battery_size: 0,
        max_residual: 0.0,
    };
    for _ in 0..trials {
        let rho = random_density(&mut rng, dim, 1);
        let other = loop {
            let r = random_density(&mut rng, dim, 1);
            if rho.trace_product(&r).re <= 1.0 - 1e-6 {
                break r;
            }
            rep.rejected += 1;
        };
        let witness = rho.support_projection();
        let own = actual_set_membership(&witness, &rho)?;
        let theirs = actual_set_membership(&witness, &other)?;
        rep.max_residual = rep.max_residual.max(own.residual);
        if own.member && own.agree() && !theirs.member && theirs.agree() {
            rep.separated += 1;
        }
    }
    for _ in 0..trials / 10 {
        let rank = rng.random_range(2..=dim);
        let basis = random_basis(&mut rng, dim);
        let spectrum = |rng: &mut ChaCha8Rng| {
            let mut w: Vec<f64> = (0..rank).map(|_| rng.random_range(0.05..1.0)).collect();
            let s: f64 = w.iter().sum();
            w.iter_mut().for_each(|x| *x /= s);
            w
        };
        let a = HermitianOperator::from_spectrum(&spectrum(&mut rng), &basis[..rank]);
        let b = HermitianOperator::from_spectrum(&spectrum(&mut rng), &basis[..rank]);
        rep.same_support_pairs += 1;
        let mut equal = a.support_projection().distance(&b.support_projection()) <= 1e-8 && a.distance(&b) > 1e-6;
        for k in 0..battery {
            let e = if k % 2 == 0 {
                random_actual_effect(&mut rng, &a)
            } else {
                random_effect(&mut rng, dim)
            };
            let (ma, mb) = (actual_set_membership(&e, &a)?, actual_set_membership(&e, &b)?);
            rep.battery_size += 1;
            if ma.member {
                rep.max_residual = rep.max_residual.max(ma.residual);
            }
            if ma.member != mb.member {
                equal = false;
            }
        }
        if equal {
            rep.same_support_equal += 1;
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dim2Counterexample {
    /// Bloch vectors of the sampled rank-one projections; index 0 is `Π`
    /// and index 1 is `I − Π`.
    pub projections: Vec<[f64; 3]>,
    pub v1: Vec<f64>,
    pub v2: Vec<f64>,
    pub v1_valid: bool,
    pub v2_valid: bool,
    /// Labels of the shared actual set.
    pub shared_actual_set: Vec<String>,
    pub actual_sets_equal: bool,
    pub max_difference: f64,
}

fn bloch_projection(n: [f64; 3]) -> HermitianOperator {
    let h = 0.5;
    HermitianOperator::raw(2, |i, j| match (i, j) {
        (0, 0) => C::new(h * (1.0 + n[2]), 0.0),
        (1, 1) => C::new(h * (1.0 - n[2]), 0.0),
        (0, 1) => C::new(h * n[0], -h * n[1]),
        _ => C::new(h * n[0], h * n[1]),
    })
}

/// Two distinct measures on a finite family of qubit projections with the
/// same actual set `{Π, I}`: `v₁ = Tr(·Π)` and the measure that is `1` on
/// `Π`, `0` on `I − Π` and `1/2` on every other rank-one projection.
pub fn dim2_projection_counterexample(samples: usize, seed: u64) -> Dim2Counterexample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bloch = vec![[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]];
    for _ in 0..samples {
        let g: Vec<f64> = (0..3).map(|_| rng.sample(StandardNormal)).collect();
        let n = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
        let b = [g[0] / n, g[1] / n, g[2] / n];
        bloch.push(b);
        bloch.push([-b[0], -b[1], -b[2]]);
    }
    let pi = bloch_projection(bloch[0]);
    let mut names = vec!["0".to_string(), "I".to_string()];
    let mut table = vec![[0, 0, 0], [0, 1, 1], [1, 0, 1]];
    for k in 0..bloch.len() {
        names.push(if k == 0 { "Π".into() } else if k == 1 { "I−Π".into() } else { format!("P{k}") });
        let idx = k + 2;
        table.push([0, idx, idx]);
        table.push([idx, 0, idx]);
        let partner = if k % 2 == 0 { idx + 1 } else { idx - 1 };
        table.push([idx, partner, 1]);
    }
    let s = ProbabilityStructure::new(names.clone(), table, 0, 1).expect("valid indices");
    let mut v1 = vec![0.0, 1.0];
    let mut v2 = vec![0.0, 1.0];
    for (k, b) in bloch.iter().enumerate() {
        v1.push(bloch_projection(*b).trace_product(&pi).re);
        let delta_pi = if k == 0 { 1.0 } else { 0.0 };
        let delta_comp = if k == 1 { 1.0 } else { 0.0 };
        v2.push(2f64.powf(delta_pi - 1.0) - delta_comp / 2.0);
    }
    let ones = |v: &[f64]| -> Vec<usize> { (0..v.len()).filter(|&i| (v[i] - 1.0).abs() <= 1e-12).collect() };
    let (a1, a2) = (ones(&v1), ones(&v2));
    let max_difference = v1.iter().zip(&v2).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Dim2Counterexample {
        projections: bloch,
        v1_valid: verify_gpm(&s, &Gpm { values: v1.clone() }).valid,
        v2_valid: verify_gpm(&s, &Gpm { values: v2.clone() }).valid,
        shared_actual_set: a1.iter().map(|&i| names[i].clone()).collect(),
        actual_sets_equal: a1 == a2,
        v1,
        v2,
        max_difference,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ket0(dim: usize) -> Vec<C> {
        (0..dim).map(|i| C::new(if i == 0 { 1.0 } else { 0.0 }, 0.0)).collect()
    }

    #[test]
    fn born_examples() {
        let rho = HermitianOperator::projector(&ket0(2));
        assert!((born_measure(&rho, &rho).unwrap() - 1.0).abs() < 1e-12);
        let mixed = HermitianOperator::identity(2).scale(0.5);
        let plus = HermitianOperator::projector(&[C::new(1.0, 0.0), C::new(0.0, 1.0)]);
        assert!((born_measure(&mixed, &plus).unwrap() - 0.5).abs() < 1e-12);
        let x_half = HermitianOperator::new(vec![
            vec![C::new(0.5, 0.0), C::new(0.5, 0.0)],
            vec![C::new(0.5, 0.0), C::new(0.5, 0.0)],
        ])
        .unwrap();
        assert!((born_measure(&rho, &x_half).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn membership_examples() {
        let rho = HermitianOperator::projector(&ket0(3));
        let e = HermitianOperator::diagonal(&[1.0, 0.3, 0.0]);
        let m = actual_set_membership(&e, &rho).unwrap();
        assert!(m.member && m.structural);
        let rho2 = HermitianOperator::projector(&ket0(2));
        let m = actual_set_membership(&HermitianOperator::diagonal(&[0.99, 0.0]), &rho2).unwrap();
        assert!(!m.member && m.agree());
    }

    #[test]
    fn jacobi_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 2..=4 {
            let e = random_effect(&mut rng, dim);
            let sd = e.eigen();
            assert!(sd.reconstruct().distance(&e) <= 1e-10);
            assert!(sd.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn counterexample_values() {
        let c = dim2_projection_counterexample(20, 1);
        assert_eq!(c.v2[2], 1.0);
        assert_eq!(c.v2[3], 0.0);
        assert!(c.v2[4..].iter().all(|&x| x == 0.5));
        assert!(c.v1_valid && c.v2_valid && c.actual_sets_equal);
        assert_eq!(c.shared_actual_set, vec!["I".to_string(), "Π".to_string()]);
    }
}
