//! Built-in example systems with their expected verdicts.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI, SQRT_2};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bodies::{ArcBody, CircularArc, PillDual, Stadium};
use crate::determinism::{check_intermediate_determinism, propensity_states, DeterminismError, DeterminismVerdict, PropensityReport};
use crate::geometry::{Polytope, Vector};
use crate::gpt::{
    classify_restriction, unrestricted_effects, unrestricted_states, unrestricted_states_body, AnySystem, Body,
    Classification, GptSystem, RestrictionClass,
};
use crate::scalar::{q, QSqrt2, Rational, Scalar};
use crate::with_system;
use num_traits::{One, Zero};

/// Tolerance for comparing reported points with expected ones.
pub const MATCH_TOL: f64 = 1e-8;

pub const NAMES: [&str; 7] = [
    "classical_bit",
    "nu_bit",
    "anu_bit",
    "pill",
    "diamond_in_pill",
    "octagon_unrestricted",
    "octagon_anu",
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Determinism(#[from] DeterminismError),
}

impl From<crate::gpt::GptError> for CatalogError {
    fn from(e: crate::gpt::GptError) -> Self {
        CatalogError::Determinism(e.into())
    }
}

/// Expected verdicts. `propensity` lists states that must be reported as
/// propensity functions; `excluded` must equal the reported exclusions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub class: RestrictionClass,
    pub gleason_type: bool,
    pub satisfies_id: bool,
    pub propensity: Vec<Vec<f64>>,
    pub excluded: Vec<Vec<f64>>,
}

/// Everything the pipeline reports about one system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub classification: Classification,
    pub determinism: DeterminismVerdict,
    pub propensity: PropensityReport,
}

pub fn evaluate<T: Scalar>(sys: &GptSystem<T>) -> Result<Outcome, CatalogError> {
    Ok(Outcome {
        classification: classify_restriction(sys)?,
        determinism: check_intermediate_determinism(sys)?,
        propensity: propensity_states(sys)?,
    })
}

pub fn evaluate_any(sys: &AnySystem) -> Result<Outcome, CatalogError> {
    with_system!(sys, s => evaluate(s))
}

/// One row of the expected-vs-actual table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub claim: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn same_point(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= MATCH_TOL)
}

fn fmt_points(ps: &[Vec<f64>]) -> String {
    let inner: Vec<String> = ps
        .iter()
        .map(|p| {
            let c: Vec<String> = p.iter().map(|x| format!("{:.6}", x + 0.0)).collect();
            format!("({})", c.join(", "))
        })
        .collect();
    format!("[{}]", inner.join(", "))
}

impl Expected {
    pub fn compare(&self, out: &Outcome) -> Vec<Claim> {
        let row = |claim: &str, e: String, a: String, pass: bool| Claim {
            claim: claim.to_string(),
            expected: e,
            actual: a,
            pass,
        };
        let cls = &out.classification;
        let prop_ok = self
            .propensity
            .iter()
            .all(|p| out.propensity.propensity.iter().any(|x| same_point(p, x)));
        let excl_ok = self.excluded.len() == out.propensity.excluded.len()
            && self
                .excluded
                .iter()
                .all(|p| out.propensity.excluded.iter().any(|x| same_point(p, x)));
        vec![
            row("class", format!("{:?}", self.class), format!("{:?}", cls.class), self.class == cls.class),
            row(
                "gleason_type",
                self.gleason_type.to_string(),
                cls.gleason_type.to_string(),
                self.gleason_type == cls.gleason_type,
            ),
            row(
                "satisfies_id",
                self.satisfies_id.to_string(),
                out.determinism.satisfies_id.to_string(),
                self.satisfies_id == out.determinism.satisfies_id,
            ),
            row(
                "oracle",
                "agree or skipped".into(),
                format!("{:?}", out.determinism.oracle),
                out.determinism.oracle_agrees(),
            ),
            row(
                "propensity_states",
                format!("⊇ {}", fmt_points(&self.propensity)),
                fmt_points(&out.propensity.propensity),
                prop_ok,
            ),
            row(
                "excluded_states",
                fmt_points(&self.excluded),
                fmt_points(&out.propensity.excluded),
                excl_ok,
            ),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub system: AnySystem,
    pub expected: Expected,
    /// A second system the entry's claims depend on.
    pub companion: Option<Box<CatalogEntry>>,
}

impl CatalogEntry {
    pub fn evaluate(&self) -> Result<Outcome, CatalogError> {
        evaluate_any(&self.system)
    }
}

/// Builds an entry; `nu_bit` takes an optional rational parameter as
/// `nu_bit(1/4)`.
pub fn build(name: &str) -> Result<CatalogEntry, CatalogError> {
    let (base, arg) = match name.split_once('(') {
        Some((b, rest)) => {
            let a = rest
                .strip_suffix(')')
                .ok_or_else(|| CatalogError::InvalidParameter(name.to_string()))?;
            (b.trim(), Some(a.trim()))
        }
        None => (name.trim(), None),
    };
    if arg.is_some() && base != "nu_bit" {
        return Err(CatalogError::InvalidParameter(format!("{base} takes no parameter")));
    }
    match base {
        "classical_bit" => Ok(classical_bit()),
        "nu_bit" => {
            let p = match arg {
                Some(a) => Rational::parse_str(a).map_err(|e| CatalogError::InvalidParameter(e.to_string()))?,
                None => q(1, 2),
            };
            nu_bit(p)
        }
        "anu_bit" => Ok(anu_bit()),
        "pill" => Ok(pill()),
        "diamond_in_pill" => Ok(diamond_in_pill()),
        "octagon_unrestricted" => Ok(octagon_unrestricted()),
        "octagon_anu" => octagon_anu(),
        _ => Err(CatalogError::UnknownEntry(name.to_string())),
    }
}

pub fn all_entries() -> Result<Vec<CatalogEntry>, CatalogError> {
    NAMES.iter().map(|n| build(n)).collect()
}

fn rpoly(xs: &[&[(i64, i64)]]) -> Polytope<Rational> {
    Polytope::from_points(xs.iter().map(|p| Vector::from_ratios(p)).collect()).expect("catalog polytope")
}

/// The classical bit's state space: the segment between `(−1, 1)` and `(1, 1)`.
pub fn bit_states() -> Polytope<Rational> {
    rpoly(&[&[(-1, 1), (1, 1)], &[(1, 1), (1, 1)]])
}

fn bit_expected(class: RestrictionClass) -> Expected {
    Expected {
        class,
        gleason_type: true,
        satisfies_id: true,
        propensity: vec![vec![-1.0, 1.0], vec![1.0, 1.0]],
        excluded: Vec::new(),
    }
}

pub fn classical_bit() -> CatalogEntry {
    let s = bit_states();
    let e = unrestricted_effects(&s).expect("bit effects");
    CatalogEntry {
        name: "classical_bit".into(),
        description: "classical bit with the square effect space".into(),
        system: AnySystem::Rational(GptSystem::new(Body::Polytope(s), Body::Polytope(e))),
        expected: bit_expected(RestrictionClass::Unrestricted),
        companion: None,
    }
}

/// Effect hexagon `conv{0, u, p·e±, u − p·e±}` with `e± = (±1/2, 1/2)`.
pub fn nu_bit_effects(p: &Rational) -> Polytope<Rational> {
    let e_plus = Vector::from_ratios(&[(1, 2), (1, 2)]);
    let e_minus = Vector::from_ratios(&[(-1, 2), (1, 2)]);
    let u = Vector::<Rational>::unit_effect(2);
    let a = e_plus.scale(p);
    let b = e_minus.scale(p);
    Polytope::from_points(vec![Vector::zeros(2), u.clone(), u.sub(&a), u.sub(&b), a, b]).expect("nu bit effects")
}

pub fn nu_bit(p: Rational) -> Result<CatalogEntry, CatalogError> {
    if !(p.is_positive_s() && (p.clone() - Rational::from_int(1)).is_negative_s()) {
        return Err(CatalogError::InvalidParameter(format!("nu_bit needs 0 < p < 1, got {p}")));
    }
    let e = nu_bit_effects(&p);
    Ok(CatalogEntry {
        name: format!("nu_bit({p})"),
        description: "bit whose effects are the square shrunk towards its diagonal".into(),
        system: AnySystem::Rational(GptSystem::new(Body::Polytope(bit_states()), Body::Polytope(e))),
        expected: bit_expected(RestrictionClass::Nu),
        companion: None,
    })
}

/// Lens `E_aB`: intersection of two discs of radius `1/√2` centred at
/// `(±1/2, 1/2)`, meeting at `0` and `u`.
pub fn anu_bit_effects() -> ArcBody {
    let r = FRAC_1_SQRT_2;
    let (a, b) = (vec![1.0, 0.0], vec![0.0, 1.0]);
    let right = CircularArc::new(vec![0.5, 0.5], r, a.clone(), b.clone(), [3.0 * FRAC_PI_4, 5.0 * FRAC_PI_4]);
    let left = CircularArc::new(vec![-0.5, 0.5], r, a, b, [-FRAC_PI_4, FRAC_PI_4]);
    ArcBody::new(Vec::new(), vec![right, left]).expect("lens arcs")
}

pub fn anu_bit() -> CatalogEntry {
    CatalogEntry {
        name: "anu_bit".into(),
        description: "bit with the lens effect space".into(),
        system: AnySystem::Rational(GptSystem::new(Body::Polytope(bit_states()), Body::Arc(anu_bit_effects()))),
        expected: Expected {
            class: RestrictionClass::Anu,
            gleason_type: true,
            satisfies_id: false,
            propensity: Vec::new(),
            excluded: vec![vec![-1.0, 1.0], vec![1.0, 1.0]],
        },
        companion: None,
    }
}

/// The pill `S_p`: a `2 × 2` square with unit semicircles on its left and
/// right sides.
pub fn pill_arcs() -> ArcBody {
    pill_stadium().arc_body()
}

pub fn pill_stadium() -> Stadium {
    Stadium::new(1.0, 1.0).expect("unit stadium")
}

fn pill_edge_points() -> Vec<Vec<f64>> {
    vec![
        vec![-1.0, -1.0, 1.0],
        vec![-1.0, 1.0, 1.0],
        vec![0.0, -1.0, 1.0],
        vec![0.0, 1.0, 1.0],
        vec![1.0, -1.0, 1.0],
        vec![1.0, 1.0, 1.0],
    ]
}

pub fn pill() -> CatalogEntry {
    let d = PillDual::new(pill_stadium());
    CatalogEntry {
        name: "pill".into(),
        description: "pill state space with its unrestricted effect space".into(),
        system: AnySystem::Float(GptSystem::new(Body::Arc(d.states()), Body::PillDual(d))),
        expected: Expected {
            class: RestrictionClass::Unrestricted,
            gleason_type: true,
            satisfies_id: false,
            propensity: vec![vec![2.0, 0.0, 1.0], vec![-2.0, 0.0, 1.0]],
            excluded: pill_edge_points(),
        },
        companion: None,
    }
}

/// Diamond with vertices at the semicircle apexes and flat-edge midpoints.
pub fn diamond_states() -> Polytope<Rational> {
    rpoly(&[
        &[(2, 1), (0, 1), (1, 1)],
        &[(-2, 1), (0, 1), (1, 1)],
        &[(0, 1), (1, 1), (1, 1)],
        &[(0, 1), (-1, 1), (1, 1)],
    ])
}

pub fn diamond_in_pill() -> CatalogEntry {
    let d = PillDual::new(pill_stadium());
    CatalogEntry {
        name: "diamond_in_pill".into(),
        description: "diamond state space restricted inside the pill, with the pill's effects".into(),
        system: AnySystem::Rational(GptSystem::new(Body::Polytope(diamond_states()), Body::PillDual(d))),
        expected: Expected {
            class: RestrictionClass::Other,
            gleason_type: false,
            satisfies_id: true,
            propensity: vec![vec![2.0, 0.0, 1.0], vec![-2.0, 0.0, 1.0]],
            excluded: vec![vec![0.0, 1.0, 1.0], vec![0.0, -1.0, 1.0]],
        },
        companion: None,
    }
}

/// `(cos πj/4, sin πj/4)` in Q(√2).
fn octagon_direction(j: usize) -> (QSqrt2, QSqrt2) {
    let h = QSqrt2::from_parts(0, 1, 1, 2);
    let z = QSqrt2::zero();
    let one = QSqrt2::one();
    match j % 8 {
        0 => (one, z),
        1 => (h.clone(), h),
        2 => (z, one),
        3 => (-h.clone(), h),
        4 => (-one, z),
        5 => (-h.clone(), -h),
        6 => (z, -one),
        _ => (h.clone(), -h),
    }
}

/// `e_j = (cos πj/4, sin πj/4, 1)/2` for `j = 3, 7`, otherwise
/// `(cos πj/4, sin πj/4, 2)/4`.
pub fn octagon_effect(j: usize) -> Vector<QSqrt2> {
    let (c, s) = octagon_direction(j);
    let (k, z) = if j % 4 == 3 {
        (QSqrt2::from_parts(1, 2, 0, 1), QSqrt2::from_parts(1, 2, 0, 1))
    } else {
        (QSqrt2::from_parts(1, 4, 0, 1), QSqrt2::from_parts(1, 2, 0, 1))
    };
    Vector::new(vec![c * k.clone(), s * k, z])
}

/// `0, u, e_1, …, e_8`.
pub fn octagon_effect_vertices() -> Vec<Vector<QSqrt2>> {
    let mut v = vec![Vector::zeros(3), Vector::unit_effect(3)];
    v.extend((1..=8).map(octagon_effect));
    v
}

pub fn octagon_unrestricted_effects() -> Polytope<QSqrt2> {
    Polytope::from_points(octagon_effect_vertices()).expect("octagon effects")
}

/// Vertices of `W(E_u)` as floats, in angular order starting at angle 0.
pub fn octagon_state_vertices() -> Vec<Vec<f64>> {
    let (a, b) = (2.0 * SQRT_2 - 2.0, 2.0 - SQRT_2);
    vec![
        vec![2.0, a, 1.0],
        vec![a, 2.0, 1.0],
        vec![b, 2.0, 1.0],
        vec![-2.0, -b, 1.0],
        vec![-2.0, -a, 1.0],
        vec![-a, -2.0, 1.0],
        vec![-b, -2.0, 1.0],
        vec![2.0, b, 1.0],
    ]
}

pub fn octagon_unrestricted() -> CatalogEntry {
    let e = octagon_unrestricted_effects();
    let s = unrestricted_states(&e).expect("octagon states");
    CatalogEntry {
        name: "octagon_unrestricted".into(),
        description: "octagon state space with its unrestricted effects, exact over Q(√2)".into(),
        system: AnySystem::Sqrt2(GptSystem::new(Body::Polytope(s), Body::Polytope(e))),
        expected: Expected {
            class: RestrictionClass::Unrestricted,
            gleason_type: true,
            satisfies_id: true,
            propensity: octagon_state_vertices(),
            excluded: Vec::new(),
        },
        companion: None,
    }
}

/// `E_a`: the octagon effects with `e_3` and `e_7` replaced by lenses in
/// the vertical plane through them.
pub fn octagon_anu_effects() -> ArcBody {
    let f = |v: Vector<QSqrt2>| v.to_f64();
    let mut points = vec![vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]];
    for j in [1, 2, 4, 5, 6, 8] {
        points.push(f(octagon_effect(j)));
    }
    let a = vec![-FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0];
    let b = vec![0.0, 0.0, 1.0];
    let r = FRAC_1_SQRT_2;
    let toward_e3 = CircularArc::new(f(octagon_effect(7)), r, a.clone(), b.clone(), [-FRAC_PI_4, FRAC_PI_4]);
    let toward_e7 = CircularArc::new(f(octagon_effect(3)), r, a, b, [3.0 * FRAC_PI_4, 5.0 * FRAC_PI_4]);
    ArcBody::new(points, vec![toward_e3, toward_e7]).expect("octagon lens arcs")
}

pub fn octagon_anu() -> Result<CatalogEntry, CatalogError> {
    let e = octagon_anu_effects();
    let w = match unrestricted_states_body::<f64>(&Body::Arc(e.clone()))? {
        Body::Polytope(p) => p,
        _ => unreachable!("arc effects give a polytope of states"),
    };
    let verts = octagon_state_vertices();
    let keep = [0usize, 1, 4, 5];
    let gleason_sys = GptSystem::new(Body::Polytope(w), Body::Arc(e.clone()));
    let props = propensity_states(&gleason_sys)?;
    let sa = Polytope::from_points(props.propensity.iter().map(|p| Vector::new(p.clone())).collect())
        .map_err(|g| CatalogError::Determinism(g.into()))?;
    let companion = CatalogEntry {
        name: "octagon_anu/gleason".into(),
        description: "lens-modified octagon effects paired with their unrestricted states".into(),
        system: AnySystem::Float(gleason_sys),
        expected: Expected {
            class: RestrictionClass::Anu,
            gleason_type: true,
            satisfies_id: false,
            propensity: keep.iter().map(|&i| verts[i].clone()).collect(),
            excluded: (0..8).filter(|i| !keep.contains(i)).map(|i| verts[i].clone()).collect(),
        },
        companion: None,
    };
    Ok(CatalogEntry {
        name: "octagon_anu".into(),
        description: "hull of the propensity states of the lens-modified octagon".into(),
        system: AnySystem::Float(GptSystem::new(Body::Polytope(sa), Body::Arc(e))),
        expected: Expected {
            class: RestrictionClass::Other,
            gleason_type: false,
            satisfies_id: true,
            propensity: keep.iter().map(|&i| verts[i].clone()).collect(),
            excluded: Vec::new(),
        },
        companion: Some(Box::new(companion)),
    })
}

/// Angle grid used by sampled figure outlines.
pub fn angle_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octagon_effects_exact() {
        let v = octagon_effect_vertices();
        assert_eq!(v.len(), 10);
        let quarter = QSqrt2::from_parts(1, 4, 0, 1);
        let half = QSqrt2::from_parts(1, 2, 0, 1);
        assert_eq!(octagon_effect(2).coords(), &[QSqrt2::zero(), quarter.clone(), half.clone()]);
        assert_eq!(octagon_effect(4).coords(), &[-quarter, QSqrt2::zero(), half.clone()]);
        let r = QSqrt2::from_parts(0, 1, 1, 4);
        assert_eq!(octagon_effect(3).coords(), &[-r.clone(), r, half]);
        assert!(v[1].coords()[2].is_one());
    }

    #[test]
    fn octagon_states_match_hand_vertices() {
        let s = unrestricted_states(&octagon_unrestricted_effects()).unwrap();
        let got = s.vertices_f64();
        assert_eq!(got.len(), 8);
        for v in octagon_state_vertices() {
            assert!(got.iter().any(|g| same_point(g, &v)), "{v:?}");
        }
    }

    #[test]
    fn pill_support_oracles() {
        use crate::bodies::{ConvexBody, PointClass};
        let p = pill_arcs();
        let (v, _) = p.support(&[1.0, 0.0, 0.0]).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        assert!(same_point(&p.support_point(&[1.0, 0.0, 0.0]).unwrap(), &[2.0, 0.0, 1.0]));
        let (v, f) = p.support(&[0.0, 1.0, 0.0]).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert_eq!(f.dimension, 1);
        assert_eq!(p.classify_point(&[1.0, 1.0, 1.0]).unwrap(), PointClass::ExtremalNotExposed);
    }

    #[test]
    fn build_rejects_bad_names() {
        assert!(matches!(build("nu_bit(3/2)"), Err(CatalogError::InvalidParameter(_))));
        assert!(matches!(build("hexagon"), Err(CatalogError::UnknownEntry(_))));
        assert_eq!(build("nu_bit(1/4)").unwrap().name, "nu_bit(1/4)");
    }
}
