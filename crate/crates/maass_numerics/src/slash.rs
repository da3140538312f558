//! Half-integral weight slash invariance
//! f(Az) = (c/d)^{2k}·ε_d^{−2k}·χ(d)·(cz+d)^k·f(z).

use serde::{Deserialize, Serialize};

use crate::util::cpow;
use crate::{MaassError, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Matrix {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Matrix { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn act(&self, z: C64) -> C64 {
        (z * self.a as f64 + self.b as f64) / (z * self.c as f64 + self.d as f64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Group {
    Gamma0(i64),
    Gamma1(i64),
}

impl Group {
    pub fn check(&self, m: &Matrix) -> Result<()> {
        if m.det() != 1 {
            return Err(MaassError::BadMatrix(format!("{m:?} has determinant {}", m.det())));
        }
        if m.d % 2 == 0 {
            return Err(MaassError::BadMatrix(format!("{m:?}: d must be odd")));
        }
        let (n, unipotent) = match *self {
            Group::Gamma0(n) => (n, false),
            Group::Gamma1(n) => (n, true),
        };
        if m.c % n != 0 || (unipotent && ((m.a - 1) % n != 0 || (m.d - 1) % n != 0)) {
            return Err(MaassError::BadMatrix(format!("{m:?} is not in {self:?}")));
        }
        Ok(())
    }
}

/// Jacobi symbol (a/n) for odd n > 0.
pub fn jacobi(a: i64, n: i64) -> i8 {
    assert!(n > 0 && n % 2 == 1, "Jacobi symbol needs odd positive n");
    let (mut a, mut n) = (a.rem_euclid(n), n);
    let mut r = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                r = -r;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            r = -r;
        }
        a %= n;
    }
    if n == 1 {
        r
    } else {
        0
    }
}

/// (c/d) for odd d, extended to d < 0 by (c/d) = (c/|d|), negated when c, d < 0.
pub fn symbol(c: i64, d: i64) -> i8 {
    let j = jacobi(c, d.abs());
    if c < 0 && d < 0 {
        -j
    } else {
        j
    }
}

/// ε_d = 1 for d ≡ 1 (mod 4), i for d ≡ 3 (mod 4).
pub fn epsilon(d: i64) -> C64 {
    if d.rem_euclid(4) == 1 {
        C64::new(1.0, 0.0)
    } else {
        C64::new(0.0, 1.0)
    }
}

/// (c/d)^{2k}·ε_d^{−2k}·χ(d)·(cz+d)^k with 2k = `two_k` odd.
pub fn multiplier(m: &Matrix, two_k: i32, chi: C64, z: C64) -> C64 {
    let sym = symbol(m.c, m.d) as f64;
    let sym = if two_k % 2 == 0 { 1.0 } else { sym };
    let eps = epsilon(m.d).powi(-two_k);
    let j = cpow(z * m.c as f64 + m.d as f64, two_k as f64 / 2.0);
    sym * eps * chi * j
}

/// |f(Az) − multiplier·f(z)| for A in `group`; `chi` gives χ(d).
pub fn slash_check<F, X>(f: F, two_k: i32, m: Matrix, group: Group, chi: X, z: C64) -> Result<f64>
where
    F: Fn(C64) -> Result<C64>,
    X: Fn(i64) -> C64,
{
    group.check(&m)?;
    if z.im <= 0.0 {
        return Err(MaassError::BadParams(format!("{z} is not in the upper half-plane")));
    }
    let lhs = f(m.act(z))?;
    let rhs = multiplier(&m, two_k, chi(m.d), z) * f(z)?;
    Ok((lhs - rhs).norm())
}
