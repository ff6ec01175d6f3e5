mod common;

use gptlab::bodies::ConvexBody;
use gptlab::catalog::{anu_bit_effects, octagon_anu_effects, pill_arcs};
use gptlab::determinism::check_intermediate_determinism;
use gptlab::geometry::{lp_optimize, HRep, Polytope, Sense, Vector};
use gptlab::gpt::{unrestricted_effects, unrestricted_states, AnySystem, Body, GptSystem};
use gptlab::{io, q, QSqrt2, Rational, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn states_strategy() -> impl Strategy<Value = Vec<Vector<Rational>>> {
    (1usize..=3).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, d), d + 1..=9).prop_map(|pts| {
            pts.into_iter()
                .map(|c| {
                    let mut v: Vec<Rational> = c.into_iter().map(|x| q(x, 3)).collect();
                    v.push(Rational::from_int(1));
                    Vector::new(v)
                })
                .collect()
        })
    })
}

fn full(pts: &[Vector<Rational>]) -> bool {
    exact_rank(pts) == pts[0].len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_display_parses_back(n in -1000i64..1000, d in 1i64..500) {
        let x = q(n, d);
        prop_assert_eq!(Rational::parse_str(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn qsqrt2_display_parses_back(a in -50i64..50, b in 1i64..20, c in -50i64..50, e in 1i64..20) {
        let x = QSqrt2::from_parts(a, b, c, e);
        prop_assert!(QSqrt2::parse_str(&x.to_string()).unwrap().eq_s(&x));
        let y = x.clone() * x.conjugate();
        prop_assert!(y.eq_s(&QSqrt2::rational(x.norm())));
    }

    #[test]
    fn hull_matches_caratheodory(pts in states_strategy()) {
        prop_assume!(full(&pts));
        let p = Polytope::from_points(pts.clone()).unwrap();
        prop_assert!(same_points(p.vertices(), &hull_vertices(&pts)));
    }

    #[test]
    fn lp_optimum_is_best_vertex(pts in states_strategy(), c in prop::collection::vec(-5i64..=5, 4)) {
        prop_assume!(full(&pts));
        let p = Polytope::from_points(pts.clone()).unwrap();
        let n = p.ambient_dim();
        let obj: Vec<Rational> = c[..n].iter().map(|&x| Rational::from_int(x)).collect();
        let best = hull_vertices(&pts)
            .iter()
            .map(|v| v.dot(&obj))
            .reduce(|a, b| if b.cmp_s(&a).is_gt() { b } else { a })
            .unwrap();
        let sol = lp_optimize(&obj, p.hrep(), Sense::Max).unwrap();
        prop_assert!(sol.value.eq_s(&best));
        prop_assert!(p.contains(&sol.witness));
    }

    #[test]
    fn lp_strong_duality(pts in states_strategy(), c in prop::collection::vec(-5i64..=5, 4)) {
        prop_assume!(full(&pts));
        let p = Polytope::from_points(pts).unwrap();
        let n = p.ambient_dim();
        let obj: Vec<Rational> = c[..n].iter().map(|&x| Rational::from_int(x)).collect();
        let h = p.hrep();
        let primal = lp_optimize(&obj, h, Sense::Max).unwrap().value;
        // min b·y + f·z  s.t.  Aᵀy + Fᵀz = c,  y ≥ 0,  z free (z = z⁺ − z⁻)
        let (m, k) = (h.halfspaces.len(), h.equalities.len());
        let vars = m + 2 * k;
        let mut dual = HRep::new(vars);
        for i in 0..vars {
            dual.push_inequality(Vector::unit(vars, i).neg(), Rational::from_int(0));
        }
        for r in 0..n {
            let mut row: Vec<Rational> = h.halfspaces.iter().map(|s| s.normal[r].clone()).collect();
            row.extend(h.equalities.iter().map(|e| e.normal[r].clone()));
            row.extend(h.equalities.iter().map(|e| -e.normal[r].clone()));
            dual.push_equality(Vector::new(row), obj[r].clone());
        }
        let mut cost: Vec<Rational> = h.halfspaces.iter().map(|s| s.bound.clone()).collect();
        cost.extend(h.equalities.iter().map(|e| e.value.clone()));
        cost.extend(h.equalities.iter().map(|e| -e.value.clone()));
        let d = lp_optimize(&cost, &dual, Sense::Min).unwrap().value;
        prop_assert!(d.eq_s(&primal));
    }

    #[test]
    fn states_are_recovered_from_their_effects(pts in states_strategy()) {
        prop_assume!(full(&pts));
        let s = Polytope::from_points(pts.clone()).unwrap();
        let w = unrestricted_states(&unrestricted_effects(&s).unwrap()).unwrap();
        prop_assert!(same_points(w.vertices(), &hull_vertices(&pts)));
    }

    #[test]
    fn verdict_matches_definition(pts in states_strategy(), seed in 0u64..1000, unrestricted in any::<bool>()) {
        prop_assume!(full(&pts));
        let s = Polytope::from_points(pts).unwrap();
        let es = unrestricted_effects(&s).unwrap();
        let e = if unrestricted { es } else { random_restriction(&mut ChaCha8Rng::seed_from_u64(seed), &es) };
        let truth = id_by_vertices(s.vertices(), e.vertices());
        let sys = GptSystem::new(Body::Polytope(s), Body::Polytope(e));
        let v = check_intermediate_determinism(&sys).unwrap();
        prop_assert_eq!(v.satisfies_id, truth);
        prop_assert!(v.oracle_agrees());
        if unrestricted {
            prop_assert!(truth);
        }
    }

    #[test]
    fn system_json_round_trips(pts in states_strategy()) {
        prop_assume!(full(&pts));
        let s = Polytope::from_points(pts).unwrap();
        let e = unrestricted_effects(&s).unwrap();
        let sys = AnySystem::Rational(GptSystem::new(Body::Polytope(s.clone()), Body::Polytope(e.clone())));
        let back = io::parse_system(&io::write_system(&sys)).unwrap();
        let AnySystem::Rational(b) = back else { panic!("scalar field changed") };
        prop_assert!(same_points(b.states.as_polytope().unwrap().vertices(), s.vertices()));
        prop_assert!(same_points(b.effects.as_polytope().unwrap().vertices(), e.vertices()));
    }

    #[test]
    fn arc_support_dominates_samples(a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0) {
        prop_assume!(a.abs() + b.abs() + c.abs() > 1e-3);
        let bodies: Vec<Box<dyn ConvexBody>> = vec![Box::new(pill_arcs()), Box::new(octagon_anu_effects())];
        for body in bodies {
            let dir = [a, b, c];
            let (h, face) = body.support(&dir).unwrap();
            let samples = body.sample_points(400, 1);
            let best = samples.iter().map(|x| x.iter().zip(&dir).map(|(p, q)| p * q).sum::<f64>()).fold(f64::MIN, f64::max);
            prop_assert!(h >= best - 1e-9);
            for p in &face.points {
                let v: f64 = p.iter().zip(&dir).map(|(p, q)| p * q).sum();
                prop_assert!((v - h).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn lens_support_is_exact(t in 0.0f64..std::f64::consts::TAU) {
        let lens = anu_bit_effects();
        let dir = [t.cos(), t.sin()];
        let (h, _) = lens.support(&dir).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut best = f64::MIN;
        for k in 0..=20_000 {
            let s = k as f64 / 20_000.0 * std::f64::consts::FRAC_PI_2;
            for (cx, th) in [(0.5, 0.75 * std::f64::consts::PI + s), (-0.5, -0.25 * std::f64::consts::PI + s)] {
                let p = [cx + r * th.cos(), 0.5 + r * th.sin()];
                best = best.max(p[0] * dir[0] + p[1] * dir[1]);
            }
        }
        prop_assert!(h >= best - 1e-12 && h - best <= 1e-8, "h = {h}, sampled {best}");
    }
}
