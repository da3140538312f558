//! The standard battery of residual checks at a list of points.

use serde_json::json;

use crate::completion::{fourier_check, j_lemma, j_raw, m_raw, m_series, theta_integral_lemma};
use crate::laplacian::laplacian_residual;
use crate::report::ResidualReport;
use crate::slash::{slash_check, Group, Matrix};
use crate::transform::inversion;
use crate::u_minus1::{minus1_inversion, derivative_residual, m_minus1, sump_residual};
use crate::util::check_c_not_two;
use crate::{EvalConfig, Result, UpperHalfPoint, C64};

fn gap((l, r): (C64, C64)) -> f64 {
    (l - r).norm()
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// Config with the quadrature tightened for second differences.
pub fn laplacian_config(cfg: &EvalConfig) -> EvalConfig {
    cfg.with_quad_tol(cfg.quad_tol.min(1e-13))
}

/// Config whose term cap covers q-series with Gaussian exponents at height `y`.
pub fn deep_config(y: f64, cfg: &EvalConfig) -> EvalConfig {
    let need = (50.0 / (2.0 * std::f64::consts::PI * y)).sqrt().ceil() as usize + 10;
    EvalConfig { series_trunc: cfg.series_trunc.max(need), ..cfg.clone() }
}

/// ΔM/scale for M(a/c;·) at weight 1/2.
pub fn laplacian_m(a: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<f64> {
    let lc = laplacian_config(cfg);
    Ok(laplacian_residual(|p| m_raw(a, c, p, &lc), 0.5, z, cfg.fd_step)?.relative())
}

/// ΔM/scale for M(−1;·) at weight 3/2.
pub fn laplacian_m_minus1(z: C64, cfg: &EvalConfig) -> Result<f64> {
    let lc = laplacian_config(cfg);
    Ok(laplacian_residual(|p| m_minus1(p, &lc), 1.5, z, cfg.fd_step)?.relative())
}

/// Residual ratio ρ(1e−3)/ρ(5e−4) of the central difference in r, minus 4.
pub fn richardson_gap(z: C64, cfg: &EvalConfig) -> Result<f64> {
    let r1 = derivative_residual(z, 1e-3, cfg)?;
    let r2 = derivative_residual(z, 5e-4, cfg)?;
    Ok((r1 / r2 - 4.0).abs())
}

/// Battery for M(a/c;·) and M(−1;·) at each point.
pub fn maass_suite(a: i64, c: i64, zs: &[UpperHalfPoint], cfg: &EvalConfig) -> Result<Vec<ResidualReport>> {
    cfg.validate()?;
    crate::util::check_ac(a, c)?;
    check_c_not_two(c)?;
    let mut out = Vec::new();
    for &p in zs {
        let zc = p.require(cfg)?;
        let params = json!({ "a": a, "c": c, "z": [zc.re, zc.im] });
        let push = |out: &mut Vec<ResidualReport>, id: &str, r: Result<f64>, tol: f64| {
            out.push(ResidualReport::from_result(id, params.clone(), r, tol, cfg));
        };
        push(&mut out, "inversion", inversion(a, c, zc, cfg).map(gap), 1e-6);
        push(&mut out, "theta_integral_lemma", theta_integral_lemma(a, c, zc, cfg).map(gap), 1e-6);
        push(&mut out, "j_inversion_lemma", j_lemma(a, c, zc, cfg).map(gap), 1e-6);
        push(
            &mut out,
            "j_periodicity",
            j_raw(a, c, zc + one(), cfg).and_then(|x| Ok((x - j_raw(a, c, zc, cfg)?).norm())),
            1e-8,
        );
        if c % 2 == 1 {
            push(&mut out, "fourier_expansion", fourier_check(a, c, p, cfg), 1e-6);
        }
        push(&mut out, "laplacian_m", laplacian_m(a, c, zc, cfg), 1e-3);
        push(
            &mut out,
            "slash_translation",
            slash_check(|q| m_raw(a, c, q, cfg), 1, Matrix::new(1, 1, 0, 1), Group::Gamma1(16 * c * c), |_| one(), zc),
            1e-8,
        );
        let n = 16 * c * c;
        let gen = Matrix::new(1, 0, n, 1);
        let deep = deep_config(gen.act(zc).im, cfg);
        out.push(ResidualReport::from_result(
            "slash_gamma1",
            params.clone(),
            slash_check(|q| m_series(a, c, q, &deep), 1, gen, Group::Gamma1(n), |_| one(), zc),
            1e-5,
            &deep,
        ));
        push(&mut out, "minus1_inversion", minus1_inversion(zc, cfg).map(gap), 1e-5);
        push(&mut out, "minus1_richardson", richardson_gap(zc, cfg), 0.25);
        push(&mut out, "minus1_sump", sump_residual(zc, cfg), 1e-12);
        push(&mut out, "laplacian_m_minus1", laplacian_m_minus1(zc, cfg), 1e-3);
        push(
            &mut out,
            "slash_minus1_gamma0",
            slash_check(|q| m_minus1(q, cfg), 3, Matrix::new(1, 0, 16, 1), Group::Gamma0(16), |_| one(), zc),
            1e-5,
        );
    }
    Ok(out)
}
