use bouncer_core::bouncer::{
    classical_density, make_state, quantum_density, turning_point_grid, wavefunction,
};
use bouncer_core::correspondence::{
    classical_coefficient, density_coefficient, leading_coefficient, quantum_coefficient_albright,
    quantum_coefficient_closed, quantum_coefficient_numeric,
};
use bouncer_core::special_fn::{airy, airy_zero};
use num_complex::Complex64;
use proptest::prelude::*;

const INV_2PI: f64 = 0.5 / std::f64::consts::PI;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn airy_equation_residual(x in -30.0f64..5.0) {
        // five-point derivative of Ai' against x Ai
        let d = 1e-3;
        let p = |t: f64| airy(t).unwrap().ai_prime;
        let second = (p(x - 2.0 * d) - 8.0 * p(x - d) + 8.0 * p(x + d) - p(x + 2.0 * d)) / (12.0 * d);
        let residual = (second - x * airy(x).unwrap().ai).abs();
        prop_assert!(residual < 1e-8, "x={} residual={}", x, residual);
    }

    #[test]
    fn wronskian_like_bound(x in -50.0f64..-1.0) {
        // Ai^2 + Ai'^2 / |x| ~ 1 / (pi sqrt|x|) on the oscillatory side
        let p = airy(x).unwrap();
        let env = p.ai * p.ai + p.ai_prime * p.ai_prime / x.abs();
        let expect = 1.0 / (std::f64::consts::PI * x.abs().sqrt());
        prop_assert!((env / expect - 1.0).abs() < 0.5 / x.abs().powf(1.5));
    }

    #[test]
    fn densities_nonnegative(n in 1usize..40, span in 0.2f64..1.6) {
        let s = make_state(n).unwrap();
        let g = turning_point_grid(s.turning_point, span, 200).unwrap();
        let q = quantum_density(&s, &g).unwrap();
        let c = classical_density(s.turning_point, &g).unwrap();
        prop_assert!(q.values().iter().all(|v| *v >= 0.0));
        prop_assert!(c.values().iter().all(|v| *v >= 0.0));
        for (z, v) in g.iter().zip(c.values()) {
            if *z > s.turning_point {
                prop_assert_eq!(*v, 0.0);
            }
        }
    }

    #[test]
    fn energy_identity(n in 1usize..500) {
        let s = make_state(n).unwrap();
        prop_assert_eq!(s.energy, s.turning_point);
        prop_assert!(s.turning_point > 0.0);
        prop_assert!(wavefunction(&s, 0.0).unwrap().abs() < 1e-10);
    }

    #[test]
    fn closed_form_equals_classical(big_q in 0.0f64..50.0, h in 0.5f64..200.0) {
        let q = big_q / h;
        let c = classical_coefficient(h, q).unwrap().value;
        let l = leading_coefficient(big_q).unwrap();
        prop_assert!((c - l).norm() < 1e-10, "Q={} {} vs {}", big_q, c, l);
    }

    #[test]
    fn series_matches_closed_form(big_q in 0.0f64..30.0, n in 1usize..60) {
        let s = make_state(n).unwrap();
        let q = big_q / s.turning_point;
        let a = quantum_coefficient_albright(&s, q, 0).unwrap().value;
        let c = quantum_coefficient_closed(&s, q).unwrap().value;
        prop_assert!((a - c).norm() < 1e-12);
    }

    #[test]
    fn conjugate_symmetry(big_q in 0.0f64..30.0, n in 1usize..30) {
        let s = make_state(n).unwrap();
        let q = big_q / s.turning_point;
        let p = quantum_coefficient_numeric(&s, q).unwrap().value;
        let m = quantum_coefficient_numeric(&s, -q).unwrap().value;
        prop_assert!((p.conj() - m).norm() < 1e-12);
        let p = classical_coefficient(s.turning_point, q).unwrap().value;
        let m = classical_coefficient(s.turning_point, -q).unwrap().value;
        prop_assert!((p.conj() - m).norm() < 1e-12);
    }

    #[test]
    fn transform_is_linear(alpha in 0.0f64..1.0, q in -8.0f64..8.0) {
        // rho1 uniform on [0, 2], rho2 = 3 z^2 / 8 on [0, 2]
        let r1 = |_: f64| 0.5;
        let r2 = |z: f64| 3.0 * z * z / 8.0;
        let mix = |z: f64| alpha * r1(z) + (1.0 - alpha) * r2(z);
        let c1 = density_coefficient(r1, 0.0, 2.0, q, 1e-13).unwrap();
        let c2 = density_coefficient(r2, 0.0, 2.0, q, 1e-13).unwrap();
        let cm = density_coefficient(mix, 0.0, 2.0, q, 1e-13).unwrap();
        prop_assert!((cm - (c1 * alpha + c2 * (1.0 - alpha))).norm() < 1e-12);
        let c0 = density_coefficient(mix, 0.0, 2.0, 0.0, 1e-13).unwrap();
        prop_assert!((c0 - Complex64::new(INV_2PI, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn spectrum_gaps_shrink() {
    let e: Vec<f64> = (1..=200).map(|n| -airy_zero(n).unwrap().value).collect();
    for w in e.windows(3) {
        assert!(w[1] > w[0]);
        assert!(w[2] - w[1] < w[1] - w[0]);
    }
}

#[test]
fn route_consistency() {
    // numeric vs first-order series: the residual is the next layer,
    // C(Q) |a_n|^-6 with C independent of n
    let mut scaled = Vec::new();
    for n in [5, 10, 50] {
        let s = make_state(n).unwrap();
        let next = s.turning_point.powi(-6);
        let mut row = Vec::new();
        for i in 0..=30 {
            let big_q = f64::from(i);
            let q = big_q / s.turning_point;
            let num = quantum_coefficient_numeric(&s, q).unwrap().value;
            let o1 = quantum_coefficient_albright(&s, q, 1).unwrap().value;
            let c0 = quantum_coefficient_closed(&s, q).unwrap().value;
            let dev = (num - o1).norm();
            let bound = 0.1 * (1.0 + big_q).powi(4) * next;
            assert!(
                dev < 1e-11_f64.max(bound),
                "n={n} Q={i}: {dev:e} vs {bound:e}"
            );
            assert!((o1 - c0).norm() < 1e-11_f64.max(big_q.powi(3) * next.sqrt()));
            row.push(dev / next);
        }
        scaled.push(row);
    }
    for (i, (x, y)) in scaled[1].iter().zip(&scaled[2]).enumerate().skip(3) {
        assert!((x / y - 1.0).abs() < 0.1, "Q={i}");
    }
}
