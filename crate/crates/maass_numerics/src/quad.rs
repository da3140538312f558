//! Adaptive Gauss–Kronrod (7/15) quadrature for complex-valued integrands.

use crate::{MaassError, Result, C64};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const MAX_INTERVALS: usize = 4000;

struct Piece {
    a: f64,
    b: f64,
    val: C64,
    err: f64,
}

fn gk15<F: FnMut(f64) -> Result<C64>>(f: &mut F, a: f64, b: f64) -> Result<Piece> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x)? + f(c + x)?;
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    let val = k * h;
    let err = ((k - g) * h).norm();
    if !val.re.is_finite() || !val.im.is_finite() {
        return Err(MaassError::QuadratureFailure { estimate: f64::INFINITY, tol: 0.0 });
    }
    Ok(Piece { a, b, val, err })
}

/// ∫_a^b f with absolute error estimate below `tol`, splitting first at the
/// interior breakpoints `pts`.
pub fn integrate_pts<F: FnMut(f64) -> Result<C64>>(mut f: F, pts: &[f64], tol: f64) -> Result<C64> {
    let mut pieces = Vec::new();
    for w in pts.windows(2) {
        if w[1] > w[0] {
            pieces.push(gk15(&mut f, w[0], w[1])?);
        }
    }
    loop {
        let total_err: f64 = pieces.iter().map(|p| p.err).sum();
        if total_err <= tol {
            break;
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(MaassError::QuadratureFailure { estimate: total_err, tol });
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .expect("at least one piece");
        let p = pieces.swap_remove(idx);
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            // Interval at machine resolution: keep its estimate.
            return Err(MaassError::QuadratureFailure { estimate: total_err, tol });
        }
        pieces.push(gk15(&mut f, p.a, m)?);
        pieces.push(gk15(&mut f, m, p.b)?);
    }
    Ok(pieces.iter().map(|p| p.val).sum())
}

pub fn integrate<F: FnMut(f64) -> Result<C64>>(f: F, a: f64, b: f64, tol: f64) -> Result<C64> {
    integrate_pts(f, &[a, b], tol)
}

/// ∫_a^∞ f on geometrically growing segments of initial width `scale`,
/// stopping once two consecutive segments contribute less than `tol`/100.
pub fn integrate_to_inf<F: FnMut(f64) -> Result<C64>>(mut f: F, a: f64, scale: f64, tol: f64) -> Result<C64> {
    let mut s = C64::new(0.0, 0.0);
    let mut lo = a;
    let mut width = scale;
    let mut quiet = 0;
    for j in 0..80 {
        let hi = lo + width;
        let part = integrate(&mut f, lo, hi, tol / 2f64.powi(j.min(40) + 1))?;
        s += part;
        if j >= 2 && part.norm() < tol * 1e-2 {
            quiet += 1;
            if quiet >= 2 {
                return Ok(s);
            }
        } else {
            quiet = 0;
        }
        lo = hi;
        width *= 2.0;
    }
    Err(MaassError::QuadratureFailure { estimate: f64::INFINITY, tol })
}
