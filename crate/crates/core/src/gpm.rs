//! Generalized probability measures on finite partial commutative monoids
//! and on finite lists of GPT effects.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{linalg, lp_optimize, GeometryError, HRep, Polytope, Sense, Vector};
use crate::gpt::{unrestricted_states, GptError, Observable};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GpmError {
    #[error("no observables given")]
    EmptyObservableSet,
    #[error("effect {0} is not in the list")]
    UnlistedEffect(String),
    #[error("element index {0} out of range")]
    BadIndex(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Gpt(#[from] GptError),
}

/// A finite set with a partial sum `⊕`, given by its table of defined sums.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityStructure {
    pub elements: Vec<String>,
    /// Entries `[i, j, k]` meaning `m_i ⊕ m_j = m_k`.
    pub sum_table: Vec<[usize; 3]>,
    pub zero: usize,
    pub unit: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// The table lists at most one value per pair.
    WellDefined,
    Commutative,
    Associative,
    ZeroNeutral,
    UnitExclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub violations: Vec<AxiomViolation>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl ProbabilityStructure {
    pub fn new(elements: Vec<String>, sum_table: Vec<[usize; 3]>, zero: usize, unit: usize) -> Result<Self, GpmError> {
        let n = elements.len();
        for &i in sum_table.iter().flatten().chain([&zero, &unit]) {
            if i >= n {
                return Err(GpmError::BadIndex(i));
            }
        }
        Ok(ProbabilityStructure {
            elements,
            sum_table,
            zero,
            unit,
        })
    }

    fn table(&self) -> BTreeMap<(usize, usize), usize> {
        self.sum_table.iter().map(|&[i, j, k]| ((i, j), k)).collect()
    }

    /// `m_i ⊕ m_j` when defined (first listed value).
    pub fn sum(&self, i: usize, j: usize) -> Option<usize> {
        self.sum_table.iter().find(|t| t[0] == i && t[1] == j).map(|t| t[2])
    }

    /// Boolean algebra `{0, a, aᶜ, 1}` with `a ⊕ aᶜ = 1`.
    pub fn boolean_bit() -> Self {
        let el = ["0", "a", "a'", "1"].map(String::from).to_vec();
        let mut t = Vec::new();
        for m in 0..4 {
            t.push([0, m, m]);
            if m != 0 {
                t.push([m, 0, m]);
            }
        }
        t.push([1, 2, 3]);
        t.push([2, 1, 3]);
        ProbabilityStructure::new(el, t, 0, 3).expect("valid indices")
    }

    /// Effects of a list with `⊕` the vector sum whenever it is listed.
    pub fn from_effects<T: Scalar>(effects: &[Vector<T>]) -> Result<Self, GpmError> {
        let n = effects.first().map_or(0, |e| e.len());
        let find = |v: &Vector<T>| effects.iter().position(|e| e.eq_s(v));
        let zero = find(&Vector::zeros(n)).ok_or_else(|| GpmError::UnlistedEffect("0".into()))?;
        let unit = find(&Vector::unit_effect(n)).ok_or_else(|| GpmError::UnlistedEffect("u".into()))?;
        let mut t = Vec::new();
        for (i, j) in (0..effects.len()).cartesian_product(0..effects.len()) {
            if let Some(k) = find(&effects[i].add(&effects[j])) {
                t.push([i, j, k]);
            }
        }
        ProbabilityStructure::new(effects.iter().map(|e| e.to_string()).collect(), t, zero, unit)
    }
}

/// Exhaustive check of the partial commutative monoid axioms and the unit
/// condition over the finite table.
pub fn verify_structure(s: &ProbabilityStructure) -> StructureReport {
    let mut rep = StructureReport::default();
    let mut push = |axiom, detail: String| rep.violations.push(AxiomViolation { axiom, detail });
    let name = |i: usize| s.elements[i].as_str();
    let tab = s.table();
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &[i, j, k] in &s.sum_table {
        if let Some(&k0) = seen.get(&(i, j)) {
            if k0 != k {
                push(Axiom::WellDefined, format!("{} ⊕ {} listed as {} and {}", name(i), name(j), name(k0), name(k)));
            }
        }
        seen.insert((i, j), k);
    }
    for (&(i, j), &k) in &tab {
        match tab.get(&(j, i)) {
            None => push(Axiom::Commutative, format!("{} ⊕ {} defined but not {} ⊕ {}", name(i), name(j), name(j), name(i))),
            Some(&k2) if k2 != k => push(Axiom::Commutative, format!("{} ⊕ {} ≠ {} ⊕ {}", name(i), name(j), name(j), name(i))),
            _ => {}
        }
    }
    for (&(a, b), &ab) in &tab {
        for c in 0..s.elements.len() {
            let Some(&left) = tab.get(&(ab, c)) else { continue };
            let right = tab.get(&(b, c)).and_then(|&bc| tab.get(&(a, bc)));
            if right != Some(&left) {
                push(
                    Axiom::Associative,
                    format!("({} ⊕ {}) ⊕ {} defined but {} ⊕ ({} ⊕ {}) is not equal", name(a), name(b), name(c), name(a), name(b), name(c)),
                );
            }
        }
    }
    for m in 0..s.elements.len() {
        if tab.get(&(s.zero, m)) != Some(&m) {
            push(Axiom::ZeroNeutral, format!("0 ⊕ {} ≠ {}", name(m), name(m)));
        }
        let defined = tab.contains_key(&(s.unit, m));
        if defined != (m == s.zero) {
            push(Axiom::UnitExclusive, format!("u ⊕ {} defined: {defined}", name(m)));
        }
    }
    rep
}

/// Values of a measure, indexed like the elements it is defined on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gpm<T> {
    pub values: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GpmCheck {
    pub valid: bool,
    pub violation: Option<String>,
}

/// `v(u) = 1`, values in `[0, 1]` and `v(m ⊕ n) = v(m) + v(n)` on every
/// defined sum.
pub fn verify_gpm<T: Scalar>(s: &ProbabilityStructure, v: &Gpm<T>) -> GpmCheck {
    let fail = |msg: String| GpmCheck {
        valid: false,
        violation: Some(msg),
    };
    if v.values.len() != s.elements.len() {
        return fail(format!("{} values for {} elements", v.values.len(), s.elements.len()));
    }
    if !v.values[s.unit].eq_s(&T::one()) {
        return fail(format!("v(u) = {}", v.values[s.unit]));
    }
    for (i, x) in v.values.iter().enumerate() {
        if x.is_negative_s() || (x.clone() - T::one()).is_positive_s() {
            return fail(format!("v({}) = {x} outside [0, 1]", s.elements[i]));
        }
    }
    for &[i, j, k] in &s.sum_table {
        let sum = v.values[i].clone() + v.values[j].clone();
        if !sum.eq_s(&v.values[k]) {
            return fail(format!(
                "v({} ⊕ {}) = {} but v({}) + v({}) = {sum}",
                s.elements[i], s.elements[j], v.values[k], s.elements[i], s.elements[j]
            ));
        }
    }
    GpmCheck {
        valid: true,
        violation: None,
    }
}

/// Vertices of the polytope of all measures on a finite structure.
pub fn structure_gpms<T: Scalar>(s: &ProbabilityStructure) -> Result<Vec<Vec<T>>, GpmError> {
    let m = s.elements.len();
    let mut h = unit_box::<T>(m);
    let mut e = vec![T::zero(); m];
    e[s.unit] = T::one();
    h.push_equality(Vector::new(e), T::one());
    for &[i, j, k] in &s.sum_table {
        let mut c = vec![T::zero(); m];
        c[i] = c[i].clone() + T::one();
        c[j] = c[j].clone() + T::one();
        c[k] = c[k].clone() - T::one();
        if c.iter().any(|x| !x.is_zero_s()) {
            h.push_equality(Vector::new(c), T::zero());
        }
    }
    vertices(&h)
}

fn unit_box<T: Scalar>(m: usize) -> HRep<T> {
    let mut h = HRep::new(m);
    for i in 0..m {
        h.push_inequality(Vector::unit(m, i), T::one());
        h.push_inequality(Vector::unit(m, i).neg(), T::zero());
    }
    h
}

fn vertices<T: Scalar>(h: &HRep<T>) -> Result<Vec<Vec<T>>, GpmError> {
    let p = Polytope::from_hrep(h)?;
    Ok(p.vertices().iter().map(|v| v.coords().to_vec()).collect())
}

/// Index lists of every observable, checking each outcome is listed.
fn observable_indices<T: Scalar>(effects: &[Vector<T>], observables: &[Observable<T>]) -> Result<Vec<Vec<usize>>, GpmError> {
    if observables.is_empty() {
        return Err(GpmError::EmptyObservableSet);
    }
    observables
        .iter()
        .map(|o| {
            o.effects
                .iter()
                .map(|e| {
                    effects
                        .iter()
                        .position(|f| f.eq_s(e))
                        .ok_or_else(|| GpmError::UnlistedEffect(e.to_string()))
                })
                .collect()
        })
        .collect()
}

fn observable_hrep<T: Scalar>(effects: &[Vector<T>], observables: &[Observable<T>]) -> Result<HRep<T>, GpmError> {
    let m = effects.len();
    let mut h = unit_box::<T>(m);
    for idx in observable_indices(effects, observables)? {
        let mut c = vec![T::zero(); m];
        for i in idx {
            c[i] = c[i].clone() + T::one();
        }
        h.push_equality(Vector::new(c), T::one());
    }
    if let Some(u) = effects.iter().position(|e| e.eq_s(&Vector::unit_effect(e.len()))) {
        h.push_equality(Vector::unit(m, u), T::one());
    }
    Ok(h)
}

/// Vertices of `{v ∈ [0,1]^n : Σ_{e∈O} v(e) = 1 for every O, v(u) = 1}`.
pub fn enumerate_gpms<T: Scalar>(effects: &[Vector<T>], observables: &[Observable<T>]) -> Result<Vec<Vec<T>>, GpmError> {
    vertices(&observable_hrep(effects, observables)?)
}

/// Linear relations `Σ c_i e_i = 0` among the listed effects (a basis).
pub fn mixture_identities<T: Scalar>(effects: &[Vector<T>]) -> Vec<Vec<T>> {
    let n = effects.first().map_or(0, |e| e.len());
    let rows: Vec<Vec<T>> = (0..n).map(|r| effects.iter().map(|e| e[r].clone()).collect()).collect();
    linalg::nullspace(&rows, effects.len())
}

/// As [`enumerate_gpms`], additionally imposing every mixture identity
/// `Σ c_i v(e_i) = 0`.
pub fn enumerate_mixture_gpms<T: Scalar>(effects: &[Vector<T>], observables: &[Observable<T>]) -> Result<Vec<Vec<T>>, GpmError> {
    let mut h = observable_hrep(effects, observables)?;
    for c in mixture_identities(effects) {
        h.push_equality(Vector::new(c), T::zero());
    }
    vertices(&h)
}

/// Every couple `⟦e, u − e⟧` with both outcomes listed.
pub fn couples<T: Scalar>(effects: &[Vector<T>]) -> Vec<Observable<T>> {
    let mut out: Vec<Observable<T>> = Vec::new();
    for e in effects {
        let o = Observable::couple(e);
        let listed = effects.iter().any(|f| f.eq_s(&o.effects[1]));
        let dup = out.iter().any(|p| p.effects[1].eq_s(e));
        if listed && !dup {
            out.push(o);
        }
    }
    out
}

/// Every multiset of listed nonzero effects with at most `max_len`
/// elements summing to `u`.
pub fn unit_sequences<T: Scalar>(effects: &[Vector<T>], max_len: usize) -> Vec<Observable<T>> {
    let n = effects.first().map_or(0, |e| e.len());
    let u = Vector::<T>::unit_effect(n);
    let nz: Vec<&Vector<T>> = effects.iter().filter(|e| !e.is_zero()).collect();
    let mut out = Vec::new();
    for len in 1..=max_len {
        for combo in (0..nz.len()).combinations_with_replacement(len) {
            let s = combo.iter().fold(Vector::zeros(n), |acc, &i| acc.add(nz[i]));
            if s.eq_s(&u) {
                out.push(Observable::new(combo.iter().map(|&i| nz[i].clone()).collect()));
            }
        }
    }
    out
}

/// The state `ω ∈ W(conv(effects))` with `v(e_i) = e_i·ω`, if any.
pub fn represent<T: Scalar>(effects: &[Vector<T>], v: &[T]) -> Result<Option<Vector<T>>, GpmError> {
    let n = effects.first().map_or(0, |e| e.len());
    let rows: Vec<Vec<T>> = effects.iter().map(|e| e.coords().to_vec()).collect();
    let Some(omega) = linalg::solve(&rows, v, n) else {
        return Ok(None);
    };
    let omega = Vector::new(omega);
    let w = unrestricted_states(&Polytope::from_points(effects.to_vec())?)?;
    Ok(w.contains(&omega).then_some(omega))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentationReport {
    pub vertices: usize,
    pub realized: usize,
    /// Affine dimension of the effect list plus one equals the ambient dimension.
    pub spanning: bool,
    pub unrealized: Vec<Vec<f64>>,
}

impl RepresentationReport {
    pub fn all_realized(&self) -> bool {
        self.realized == self.vertices
    }
}

/// Checks every GPM vertex against `W(conv(effects))`.
pub fn representation_check<T: Scalar>(effects: &[Vector<T>], gpms: &[Vec<T>]) -> Result<RepresentationReport, GpmError> {
    let n = effects.first().map_or(0, |e| e.len());
    let rows: Vec<Vec<T>> = effects.iter().map(|e| e.coords().to_vec()).collect();
    let mut rep = RepresentationReport {
        vertices: gpms.len(),
        realized: 0,
        spanning: linalg::rank(&rows, n) == n,
        unrealized: Vec::new(),
    };
    for v in gpms {
        if represent(effects, v)?.is_some() {
            rep.realized += 1;
        } else {
            rep.unrealized.push(v.iter().map(|x| x.to_f64()).collect());
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GpmPropensity {
    pub vertices: Vec<Vec<f64>>,
    /// Indices into `vertices`.
    pub propensity: Vec<usize>,
    pub non_propensity: Vec<usize>,
}

/// Splits the vertices of a GPM polytope given by `h` into propensity
/// functions (the face `{v′ : v′ = 1 on A_v}` is `{v}`) and the rest.
pub fn propensity_split<T: Scalar>(h: &HRep<T>, gpms: &[Vec<T>]) -> Result<GpmPropensity, GpmError> {
    let m = h.dim;
    let mut out = GpmPropensity {
        vertices: gpms.iter().map(|v| v.iter().map(|x| x.to_f64()).collect()).collect(),
        propensity: Vec::new(),
        non_propensity: Vec::new(),
    };
    for (idx, v) in gpms.iter().enumerate() {
        let mut face = h.clone();
        for (i, x) in v.iter().enumerate() {
            if x.eq_s(&T::one()) {
                face.push_equality(Vector::unit(m, i), T::one());
            }
        }
        let mut unique = true;
        'coords: for i in 0..m {
            let c = Vector::<T>::unit(m, i);
            for sense in [Sense::Max, Sense::Min] {
                if !lp_optimize(&c, &face, sense)?.value.eq_s(&v[i]) {
                    unique = false;
                    break 'coords;
                }
            }
        }
        if unique {
            out.propensity.push(idx);
        } else {
            out.non_propensity.push(idx);
        }
    }
    Ok(out)
}

/// Propensity split of the GPMs of a finite effect list.
pub fn gpm_propensity_check<T: Scalar>(effects: &[Vector<T>], observables: &[Observable<T>]) -> Result<GpmPropensity, GpmError> {
    let h = observable_hrep(effects, observables)?;
    let gpms = vertices(&h)?;
    propensity_split(&h, &gpms)
}

/// Propensity split of the GPMs of a finite structure.
pub fn structure_propensity_check<T: Scalar>(s: &ProbabilityStructure, gpms: &[Vec<T>]) -> Result<GpmPropensity, GpmError> {
    let m = s.elements.len();
    let mut h = unit_box::<T>(m);
    h.push_equality(Vector::unit(m, s.unit), T::one());
    for &[i, j, k] in &s.sum_table {
        let mut c = vec![T::zero(); m];
        c[i] = c[i].clone() + T::one();
        c[j] = c[j].clone() + T::one();
        c[k] = c[k].clone() - T::one();
        if c.iter().any(|x| !x.is_zero_s()) {
            h.push_equality(Vector::new(c), T::zero());
        }
    }
    propensity_split(&h, gpms)
}

/// The structure definition and the observable definition (with couples)
/// give the same measures on an effect list.
pub fn coherent<T: Scalar>(effects: &[Vector<T>]) -> Result<bool, GpmError> {
    let s = ProbabilityStructure::from_effects(effects)?;
    let mut a = structure_gpms::<T>(&s)?;
    let mut b = enumerate_gpms(effects, &couples(effects))?;
    let key = |v: &Vec<T>, w: &Vec<T>| crate::geometry::lex_cmp(v, w);
    a.sort_by(key);
    b.sort_by(key);
    Ok(a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x.iter().zip(y).all(|(p, q)| p.eq_s(q))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    fn bit_effects() -> Vec<Vector<Rational>> {
        vec![
            Vector::from_ints(&[0, 0]),
            Vector::from_ints(&[0, 1]),
            Vector::from_ratios(&[(1, 2), (1, 2)]),
            Vector::from_ratios(&[(-1, 2), (1, 2)]),
        ]
    }

    #[test]
    fn boolean_bit_is_a_structure() {
        assert!(verify_structure(&ProbabilityStructure::boolean_bit()).passed());
    }

    #[test]
    fn unit_sum_is_flagged() {
        let mut s = ProbabilityStructure::boolean_bit();
        s.sum_table.push([3, 3, 3]);
        assert!(verify_structure(&s).violates(Axiom::UnitExclusive));
    }

    #[test]
    fn bit_effect_structure() {
        let s = ProbabilityStructure::from_effects(&bit_effects()).unwrap();
        assert!(verify_structure(&s).passed());
        let v = Gpm {
            values: vec![q(0, 1), q(1, 1), q(1, 4), q(3, 4)],
        };
        assert!(verify_gpm(&s, &v).valid);
        let bad = Gpm {
            values: vec![q(0, 1), q(9, 10), q(1, 4), q(3, 4)],
        };
        assert!(!verify_gpm(&s, &bad).valid);
        assert!(coherent(&bit_effects()).unwrap());
    }

    #[test]
    fn bit_gpms_are_pure_states() {
        let e = bit_effects();
        let g = enumerate_gpms(&e, &couples(&e)).unwrap();
        assert_eq!(g.len(), 2);
        let rep = representation_check(&e, &g).unwrap();
        assert!(rep.all_realized() && rep.spanning);
        let p = gpm_propensity_check(&e, &couples(&e)).unwrap();
        assert_eq!(p.propensity.len(), 2);
    }

    #[test]
    fn trivial_list() {
        let e = vec![Vector::<Rational>::from_ints(&[0]), Vector::from_ints(&[1])];
        let g = enumerate_gpms(&e, &couples(&e)).unwrap();
        assert_eq!(g, vec![vec![q(0, 1), q(1, 1)]]);
        assert_eq!(gpm_propensity_check(&e, &couples(&e)).unwrap().propensity, vec![0]);
        assert_eq!(enumerate_gpms(&e, &[]), Err(GpmError::EmptyObservableSet));
    }
}
