//! The transformation law of O(a/c;q) under q = e^{2πi(h+iw)/k} ↦ q₁ = e^{2πi(h′+i/w)/k}.
//!
//! The six cases split on whether c | k (c₁ = 1), the parity of k, and
//! c₁ ∈ {2, 4}. Each evaluates to a holomorphic piece (an ω-multiplier, a
//! phase and one auxiliary Lambert series at q₁) and a ν-sum of Mordell
//! integrals; the check is |O − holomorphic − integral|.

use std::f64::consts::{PI, SQRT_2};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eta::omega_hk;
use crate::lambert::{o3, o_ac, s_of, t_of, u3, u_ac, v3, v_ac};
use crate::mordell::mordell_integral;
use crate::util::{check_ac, check_c_not_two, csqrt, e_rat, gcd, I};
use crate::{EvalConfig, MaassError, Result, C64};

/// With k odd the representative is taken even, in [0, 2k).
pub fn h_prime(h: i64, k: i64) -> i64 {
    (0..2 * k)
        .find(|&hp| (h * hp + 1).rem_euclid(k) == 0 && (k % 2 == 0 || hp % 2 == 0))
        .expect("gcd(h,k) = 1 guarantees an inverse")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformCase {
    pub a: i64,
    pub c: i64,
    pub h: i64,
    pub k: i64,
    pub hp: i64,
    pub w: C64,
    pub k1: i64,
    pub c1: i64,
    pub l: i64,
    /// s(l,c₁), absent when c₁ = 1.
    pub s: Option<i64>,
    /// t(l,c₁), absent when c₁ = 1 or l/c₁ = 1/2.
    pub t: Option<i64>,
    pub kt: i64,
}

impl TransformCase {
    pub fn new(a: i64, c: i64, h: i64, k: i64, w: C64) -> Result<Self> {
        check_ac(a, c)?;
        check_c_not_two(c)?;
        if k < 1 || gcd(h, k) != 1 {
            return Err(MaassError::BadParams(format!("need k ≥ 1 and gcd(h,k) = 1, got h={h}, k={k}")));
        }
        if !(w.re > 0.0) {
            return Err(MaassError::BadParams(format!("need Re w > 0, got {w}")));
        }
        let g = gcd(k, c);
        let (k1, c1) = (k / g, c / g);
        let l = (a * k1).rem_euclid(c1);
        let s = (c1 > 1).then(|| s_of(l, c1));
        let t = (c1 > 1 && 2 * l != c1).then(|| t_of(l, c1));
        Ok(TransformCase { a, c, h, k, hp: h_prime(h, k), w, k1, c1, l, s, t, kt: k % 2 })
    }

    pub fn case_id(&self) -> u8 {
        let even = self.k % 2 == 0;
        match (self.c1, even) {
            (1, true) => 1,
            (1, false) => 2,
            (2, true) => 4,
            (_, true) => 3,
            (4, false) => 6,
            (_, false) => 5,
        }
    }

    /// (h + iw)/k
    pub fn source_point(&self) -> C64 {
        (C64::new(self.h as f64, 0.0) + I * self.w) / self.k as f64
    }

    /// (h′ + i/w)/k
    pub fn image_point(&self) -> C64 {
        (C64::new(self.hp as f64, 0.0) + I / self.w) / self.k as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformTerms {
    pub case_id: u8,
    pub lhs: C64,
    pub holomorphic: C64,
    pub integral: C64,
}

impl TransformTerms {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.holomorphic - self.integral).norm()
    }
}

/// Both sides of the transformation law for `tc`.
pub fn transform_terms(tc: &TransformCase, cfg: &EvalConfig) -> Result<TransformTerms> {
    let TransformCase { a, c, k, hp, w, k1, c1, l, .. } = *tc;
    let z1 = tc.image_point();
    let lhs = o_ac(a, c, tc.source_point(), cfg)?;
    let x = PI * a as f64 / c as f64;
    let (ta, s2) = (x.tan(), x.sin().powi(2));
    let (wp, wm) = (csqrt(w), csqrt(w).inv());
    let om = if k % 2 == 0 {
        omega_hk(tc.h, k).powi(2) / omega_hk(tc.h, k / 2)
    } else {
        omega_hk(tc.h, k).powi(2) / omega_hk(2 * tc.h, k)
    };

    let terms: Vec<C64> = (0..k)
        .into_par_iter()
        .map(|nu| {
            let phase = if k % 2 == 0 {
                let sign = if nu % 2 == 0 { 1.0 } else { -1.0 };
                sign * e_rat(-hp * nu * nu, k)
            } else {
                e_rat(-hp * (2 * nu * nu - nu), 2 * k)
            };
            Ok(phase * mordell_integral(a, c, k, nu, w, cfg)?)
        })
        .collect::<Result<_>>()?;
    let nu_sum: C64 = terms.iter().sum();
    let pre = if k % 2 == 0 { 4.0 } else { 4.0 * SQRT_2 };
    let integral = pre * s2 * om / k as f64 * wp * nu_sum;

    let ah = a * hp;
    let common = ta * om * wm;
    let hol = match tc.case_id() {
        1 => {
            let sign = if k1 % 2 == 0 { 1.0 } else { -1.0 };
            let cot = (PI * ah.rem_euclid(c) as f64 / c as f64).tan().recip();
            sign * I * e_rat(-a * a * hp * k1, c) * cot * common * o_ac(ah, c, z1, cfg)?
        }
        2 => SQRT_2 * I * e_rat(hp, 16 * k) * e_rat(-a * a * hp * k1, c) * common * u_ac(ah, c, z1, cfg)?,
        3 => {
            let sign = if (c1 * (l + k1)) % 2 == 0 { 1.0 } else { -1.0 };
            -2.0 * sign * e_rat(-a * a * hp * k1, c1 * c) * common * o3(ah, l * c / c1, c, z1, cfg)?
        }
        4 => {
            let sign = if ((a * k1 - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            -sign * e_rat(-a * a * hp * k1, 2 * c) * common * v_ac(ah, c, z1, cfg)?
        }
        5 => {
            -SQRT_2 * e_rat(hp, 16 * k) * e_rat(-hp * a * a * k1, c * c1) * common * u3(ah, l * c / c1, c, z1, cfg)?
        }
        _ => -e_rat(hp, 16 * k) * e_rat(-hp * a * a * k1, c * c1) * common / SQRT_2 * v3(ah, l * c / c1, c, z1, cfg)?,
    };
    Ok(TransformTerms { case_id: tc.case_id(), lhs, holomorphic: -hol, integral })
}

/// |LHS − RHS| of transformation case `case_id`; `tc` must fall in that case.
pub fn check_transform(case_id: u8, tc: &TransformCase, cfg: &EvalConfig) -> Result<f64> {
    if tc.case_id() != case_id {
        return Err(MaassError::BadParams(format!(
            "parameters (a,c,h,k) = ({},{},{},{}) belong to case {}, not {case_id}",
            tc.a,
            tc.c,
            tc.h,
            tc.k,
            tc.case_id()
        )));
    }
    Ok(transform_terms(tc, cfg)?.residual())
}

/// Both sides of the inversion z ↦ −1/z:
/// O(a/c;−1/z) = √2·tan(πa/c)·√(−iz)·U(0,a,c;z) + 4√2·sin²(πa/c)/√(−iz)·I_{a,c,1,0}(i/z),
/// with (tan(πa/c)/√2)·√(−iz)·V(0,a,c;z) in place of the first term when c = 4.
pub fn inversion(a: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<(C64, C64)> {
    check_ac(a, c)?;
    check_c_not_two(c)?;
    let lhs = o_ac(a, c, -z.inv(), cfg)?;
    let x = PI * a as f64 / c as f64;
    let r = csqrt(-I * z);
    let mi = mordell_integral(a, c, 1, 0, I / z, cfg)?;
    let hol = if c == 4 { x.tan() / SQRT_2 * r * v3(0, a, c, z, cfg)? } else { SQRT_2 * x.tan() * r * u3(0, a, c, z, cfg)? };
    Ok((lhs, hol + 4.0 * SQRT_2 * x.sin().powi(2) / r * mi))
}
