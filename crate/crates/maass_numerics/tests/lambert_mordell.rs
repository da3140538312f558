use std::f64::consts::PI;

use num_complex::Complex64 as C;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use maass_numerics::lambert::{o3, o_ac, o_u, pbar, u3, u_ac, v3, v_ac};
use maass_numerics::mordell::{mordell_has_pole, mordell_pv, mordell_residue};
use maass_numerics::*;
use overpartition_ranks::{pbar_values, rank_table_lambert, RankTable};

const I: C = C::new(0.0, 1.0);

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn q(z: C, e: f64) -> C {
    (2.0 * PI * I * z * e).exp()
}

fn eta(z: C) -> C {
    (1..=400).fold(q(z, 1.0 / 24.0), |p, n| p * (1.0 - q(z, n as f64)))
}

fn cis(t: f64) -> C {
    C::from_polar(1.0, 2.0 * PI * t)
}

fn s_of(b: f64) -> f64 {
    if b <= 0.25 {
        0.0
    } else if b <= 0.75 {
        1.0
    } else {
        2.0
    }
}

fn naive_u(a: f64, z: C) -> C {
    let s: C = (-30..=30)
        .map(|n| {
            let qn = q(z, n as f64);
            (1.0 + qn) * q(z, (n * n) as f64 + n as f64 / 2.0) / (1.0 - 2.0 * qn * (2.0 * PI * a).cos() + qn * qn)
        })
        .sum();
    (PI * a).sin() * eta(z / 2.0) / eta(z).powi(2) * s
}

fn naive_v(a: f64, z: C) -> C {
    let zeta = cis(-a);
    let s: C = (-30i64..=30)
        .map(|m| {
            let x = zeta * q(z, m as f64 + 0.5);
            (-1f64).powi(m as i32) * q(z, (m * m + m) as f64) * (1.0 + x) / (1.0 - x)
        })
        .sum();
    eta(2.0 * z) / eta(z).powi(2) * q(z, 0.25) * s
}

fn naive_u3(a: f64, b: f64, z: C) -> C {
    let s = s_of(b);
    let zeta = cis(-a);
    let sum: C = (-30i64..=30)
        .map(|m| {
            let m = m as f64;
            q(z, m * (2.0 * m + 1.0) / 2.0 + m * s) / (1.0 - zeta * q(z, m + b))
        })
        .sum();
    eta(z / 2.0) / eta(z).powi(2) * cis(a * (4.0 * b - 1.0 - 2.0 * s) / 2.0) * q(z, s * b + b / 2.0 - b * b) * sum
}

/// Σ_n Σ_m N̄(m,n) ζ^m qⁿ from an exact table.
fn table_sum(t: &RankTable, zeta: C, z: C) -> C {
    (0..=t.max_n())
        .map(|n| {
            let inner: C = t.row(n).map(|(m, c)| c.to_f64().unwrap() * zeta.powi(m as i32)).sum();
            inner * q(z, n as f64)
        })
        .sum()
}

/// Midpoint rule on a grid symmetric about 0; for a simple pole at 0 this is
/// the principal value.
fn midpoint(f: impl Fn(f64) -> C, half_width: f64, n: usize) -> C {
    let h = 2.0 * half_width / n as f64;
    (0..n).map(|j| f(-half_width + (j as f64 + 0.5) * h)).sum::<C>() * h
}

fn mordell_naive(a: i64, c: i64, k: i64, nu: i64, w: C) -> C {
    let kt = (k % 2) as f64;
    let kf = k as f64;
    let arg = 2.0 * PI * I * (nu as f64 / kf - kt / (4.0 * kf));
    let cs = (2.0 * PI * a as f64 / c as f64).cos();
    let f = |x: f64| {
        let e = arg - 2.0 * PI * w * x / kf;
        (-2.0 * PI * w * x * x / kf).exp() * e.exp() / (1.0 - 2.0 * cs * e.exp() + (2.0 * e).exp())
    };
    midpoint(f, 12.0 * kf.sqrt(), 400_000)
}

// O(1/3; i), frozen from the exact rank table (n ≤ 60)
const O13_I: f64 = 1.003727923827715;
// U(0,1,3; i) and I_{1,3,1,0}(1), frozen from the naive sum and the midpoint rule
const U3_013_I: f64 = 0.09668045404980327;
const I1310_AT_1: f64 = 0.1807624542972614;

#[test]
fn o_at_u_one_is_pbar() {
    for z in [C::new(0.0, 1.0), C::new(0.2, 0.5), C::new(-0.3, 0.35)] {
        let a = o_u(C::new(1.0, 0.0), z, &cfg()).unwrap();
        let b = pbar(z, &cfg()).unwrap();
        assert!((a - b).norm() < 1e-15 * b.norm());
    }
    let vals = pbar_values(40);
    let z = C::new(0.1, 1.0);
    let exact: C = vals.iter().enumerate().map(|(n, v)| v.to_f64().unwrap() * q(z, n as f64)).sum();
    assert!((pbar(z, &cfg()).unwrap() - exact).norm() < 1e-13);
}

#[test]
fn o_agrees_with_the_exact_rank_table() {
    let t = rank_table_lambert(60);
    for (a, c) in [(1, 3), (2, 5), (1, 4), (1, 6), (3, 8)] {
        for z in [C::new(0.0, 1.0), C::new(0.27, 0.8), C::new(-0.4, 1.3)] {
            let want = table_sum(&t, cis(a as f64 / c as f64), z);
            let got = o_ac(a, c, z, &cfg()).unwrap();
            assert!((got - want).norm() < 1e-10, "{a}/{c} at {z}: {got} vs {want}");
        }
    }
    let want = table_sum(&t, cis(1.0 / 3.0), C::new(0.0, 1.0));
    assert!((want.re - O13_I).abs() < 1e-14);
    let got = o_eval(1, 3, UpperHalfPoint::i(), &cfg()).unwrap();
    assert!((got.re - O13_I).abs() < 1e-13 && got.im.abs() < 1e-15);
}

#[test]
fn o_is_real_on_the_imaginary_axis_and_symmetric_in_a() {
    let z = C::new(0.0, 0.7);
    let a = o_ac(1, 5, z, &cfg()).unwrap();
    let b = o_ac(4, 5, z, &cfg()).unwrap();
    assert!(a.im.abs() < 1e-14 && (a - b).norm() < 1e-14);
}

#[test]
fn u_and_v_against_naive_sums() {
    for (a, c) in [(1, 3), (2, 5), (1, 4), (3, 8)] {
        for z in [C::new(0.0, 1.0), C::new(0.15, 0.6)] {
            let af = a as f64 / c as f64;
            let u = u_ac(a, c, z, &cfg()).unwrap();
            let nu = naive_u(af, z);
            assert!((u - nu).norm() < 1e-12 * nu.norm(), "U {a}/{c}: {u} vs {nu}");
            let v = v_ac(a, c, z, &cfg()).unwrap();
            let nv = naive_v(af, z);
            assert!((v - nv).norm() < 1e-12 * nv.norm().max(1.0), "V {a}/{c}: {v} vs {nv}");
        }
    }
}

#[test]
fn three_parameter_u_against_naive_sum() {
    for (a, b, c) in [(0, 1, 3), (1, 1, 3), (2, 1, 5), (1, 3, 4), (3, 4, 5), (1, 5, 6)] {
        let z = C::new(0.1, 0.9);
        let got = u3(a, b, c, z, &cfg()).unwrap();
        let want = naive_u3(a as f64 / c as f64, b as f64 / c as f64, z);
        assert!((got - want).norm() < 1e-12 * want.norm().max(1.0), "({a},{b},{c}): {got} vs {want}");
    }
    let want = naive_u3(0.0, 1.0 / 3.0, C::new(0.0, 1.0));
    assert!((want.re - U3_013_I).abs() < 1e-14);
    let got = u3_eval(0, 1, 3, UpperHalfPoint::i(), &cfg()).unwrap();
    assert!((got.re - U3_013_I).abs() < 1e-13);
}

#[test]
fn v3_and_o3_reject_their_excluded_parameters() {
    let z = C::new(0.0, 1.0);
    assert!(v3(1, 0, 4, z, &cfg()).is_err());
    assert!(u3(1, 4, 4, z, &cfg()).is_err());
    assert!(o3(1, 2, 4, z, &cfg()).is_err());
    assert!(o3(1, 1, 4, z, &cfg()).is_ok());
}

#[test]
fn evaluators_enforce_the_height_floor() {
    let low = UpperHalfPoint::from_parts(0.0, 0.1).unwrap();
    assert!(matches!(o_eval(1, 3, low, &cfg()), Err(MaassError::ConvergenceDomain(_))));
    assert!(matches!(o_eval(3, 3, UpperHalfPoint::i(), &cfg()), Err(MaassError::BadParams(_))));
    assert!(UpperHalfPoint::from_parts(0.0, -1.0).is_err());
}

#[test]
fn kernel_symmetries() {
    for x in [C::new(0.3, 0.2), C::new(-1.1, 2.5), C::new(4.0, -0.7)] {
        for (a, c) in [(1, 3), (2, 5), (1, 8)] {
            let h = h_ac(a, c, x).unwrap();
            assert!((h - h_ac(a, c, -x).unwrap()).norm() < 1e-15 * h.norm().max(1.0));
            assert!((h - h_ac(a, c, x + 2.0 * PI * I).unwrap()).norm() < 1e-13 * h.norm().max(1.0));
            assert!((h - h_ac(c - a, c, x).unwrap()).norm() < 1e-15 * h.norm().max(1.0));
        }
    }
    assert!(matches!(h_ac(1, 6, C::new(0.0, PI / 3.0)), Err(MaassError::PoleHit(_))));
}

#[test]
fn mordell_against_the_midpoint_rule() {
    let w = C::new(1.0, 0.0);
    let got = mordell_integral(1, 3, 1, 0, w, &cfg()).unwrap();
    let want = mordell_naive(1, 3, 1, 0, w);
    assert!((got - want).norm() < 1e-9);
    assert!((want.re - I1310_AT_1).abs() < 1e-12);
    assert!((got.re - I1310_AT_1).abs() < 1e-9);
    for (a, c, k, nu, w) in [(2, 5, 3, 1, C::new(0.7, 0.3)), (1, 4, 2, 1, C::new(1.2, -0.5)), (1, 3, 6, 4, C::new(2.0, 0.0))] {
        let got = mordell_integral(a, c, k, nu, w, &cfg()).unwrap();
        let want = mordell_naive(a, c, k, nu, w);
        assert!((got - want).norm() < 1e-8, "({a},{c},{k},{nu},{w}): {got} vs {want}");
    }
}

#[test]
fn mordell_principal_value_against_the_symmetric_midpoint_rule() {
    // k = 6, ν = 2 puts the pole of H_{1,3} at x = 0
    assert!(mordell_has_pole(1, 3, 6, 2));
    let w = C::new(1.0, 0.4);
    assert!(mordell_residue(1, 3, 6, 2, w).is_some());
    let got = mordell_integral(1, 3, 6, 2, w, &cfg()).unwrap();
    let want = mordell_naive(1, 3, 6, 2, w);
    assert!((got - want).norm() < 1e-7, "{got} vs {want}");
}

#[test]
fn mordell_cutoff_doubling_changes_nothing() {
    let w = C::new(0.9, 0.2);
    let base = mordell_integral(2, 5, 3, 2, w, &cfg()).unwrap();
    let x = (3.0 * ((1e9f64).ln() + 12.0) / (2.0 * PI * 0.9)).sqrt();
    let doubled = EvalConfig { quad_cutoff: Some(2.0 * x), ..cfg() };
    let wide = mordell_integral(2, 5, 3, 2, w, &doubled).unwrap();
    assert!((base - wide).norm() < 1e-9);
}

#[test]
fn mordell_pv_is_stable_under_halving_the_radius() {
    let w = C::new(1.0, 0.4);
    let a = mordell_pv(1, 3, 6, 2, w, 0.02, &cfg()).unwrap();
    let b = mordell_pv(1, 3, 6, 2, w, 0.01, &cfg()).unwrap();
    assert!((a - b).norm() < cfg().quad_tol);
}

#[test]
fn mordell_rejects_bad_arguments() {
    assert!(mordell_integral(1, 3, 0, 0, C::new(1.0, 0.0), &cfg()).is_err());
    assert!(mordell_integral(1, 3, 1, 0, C::new(-1.0, 0.0), &cfg()).is_err());
    assert!(mordell_integral(0, 3, 1, 0, C::new(1.0, 0.0), &cfg()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mordell_is_continuous_in_w(re in 0.4f64..2.0, im in -1.0f64..1.0, nu in 0i64..3) {
        let w = C::new(re, im);
        let f = |w: C| mordell_integral(2, 5, 3, nu, w, &cfg()).unwrap();
        let base = f(w);
        let d2 = (f(w + 1e-2) - base).norm();
        let d3 = (f(w + 1e-3) - base).norm();
        prop_assert!(d3 < d2 || d2 < 1e-9);
        prop_assert!(d3 < 1e-2);
    }

    #[test]
    fn mordell_conjugation(re in 0.4f64..2.0, im in -1.0f64..1.0) {
        // at even k and ν = 0 the kernel has real coefficients
        let w = C::new(re, im);
        let a = mordell_integral(1, 3, 2, 0, w, &cfg()).unwrap();
        let b = mordell_integral(1, 3, 2, 0, w.conj(), &cfg()).unwrap();
        prop_assert!((a.conj() - b).norm() < 1e-8);
    }

    #[test]
    fn o_tracks_the_table_above_height_point_eight(x in -0.5f64..0.5, y in 0.8f64..2.0, a in 1i64..5) {
        static T: std::sync::OnceLock<RankTable> = std::sync::OnceLock::new();
        let t = T.get_or_init(|| rank_table_lambert(60));
        let z = C::new(x, y);
        let want = table_sum(t, cis(a as f64 / 5.0), z);
        let got = o_ac(a, 5, z, &cfg()).unwrap();
        // tail of the table beyond n = 60 is below p̄(61)·e^{−2π·0.8·61}
        prop_assert!((got - want).norm() < 1e-10);
    }
}
