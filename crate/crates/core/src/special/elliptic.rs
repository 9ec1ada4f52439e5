//! Jacobi elliptic functions and the Legendre integral of the first kind.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(sn, cn, dn)` of `u` with modulus `k`, by descending Landen
/// transformation.
pub fn jacobi_sncndn(u: f64, k: f64) -> Result<(f64, f64, f64)> {
    let m = k * k;
    if !(0.0..=1.0).contains(&m) || !u.is_finite() {
        return Err(Error::Domain(format!(
            "Jacobi functions need 0 ≤ k² ≤ 1, got k = {k}"
        )));
    }
    let emc = 1.0 - m;
    if emc == 0.0 {
        let c = 1.0 / u.cosh();
        return Ok((u.tanh(), c, c));
    }
    const CA: f64 = 1e-8;
    let mut em = [0.0; 16];
    let mut en = [0.0; 16];
    let mut a = 1.0;
    let mut b = emc;
    let mut dn = 1.0;
    let mut l = 0;
    let mut c = 1.0;
    for i in 0..16 {
        l = i;
        em[i] = a;
        b = b.sqrt();
        en[i] = b;
        c = 0.5 * (a + b);
        if (a - b).abs() <= CA * a {
            break;
        }
        b *= a;
        a = c;
    }
    let v = u * c;
    let mut sn = v.sin();
    let mut cn = v.cos();
    if sn != 0.0 {
        let mut a = cn / sn;
        c *= a;
        for ii in (0..=l).rev() {
            let b = em[ii];
            a *= c;
            c *= dn;
            dn = (en[ii] + a) / (b + a);
            a = c / b;
        }
        let r = 1.0 / (c * c + 1.0).sqrt();
        sn = if sn >= 0.0 { r } else { -r };
        cn = c * sn;
    }
    Ok((sn, cn, dn))
}

/// Carlson's symmetric integral `R_F(x, y, z)`.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> Result<f64> {
    if x.min(y).min(z) < 0.0 || [x + y, x + z, y + z].contains(&0.0) {
        return Err(Error::Domain(format!("R_F({x}, {y}, {z}) undefined")));
    }
    const ERRTOL: f64 = 0.0008;
    let (mut x, mut y, mut z) = (x, y, z);
    for _ in 0..200 {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        let ave = (x + y + z) / 3.0;
        let (dx, dy, dz) = ((ave - x) / ave, (ave - y) / ave, (ave - z) / ave);
        if dx.abs().max(dy.abs()).max(dz.abs()) <= ERRTOL {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return Ok((1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / ave.sqrt());
        }
    }
    Err(Error::Numerical("R_F did not converge".into()))
}

/// Complete integral `K(k)` via `R_F(0, 1 − k², 1)`.
pub fn elliptic_k(k: f64) -> Result<f64> {
    if !(k * k < 1.0) {
        return Err(Error::Domain(format!("K(k) needs k² < 1, got k = {k}")));
    }
    carlson_rf(0.0, 1.0 - k * k, 1.0)
}

/// Complete integral `K(k) = π / (2 AGM(1, √(1 − k²)))`.
pub fn elliptic_k_agm(k: f64) -> Result<f64> {
    if !(k * k < 1.0) {
        return Err(Error::Domain(format!("K(k) needs k² < 1, got k = {k}")));
    }
    let (mut a, mut b) = (1.0f64, (1.0 - k * k).sqrt());
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        let (an, bn) = (0.5 * (a + b), (a * b).sqrt());
        a = an;
        b = bn;
    }
    Ok(std::f64::consts::FRAC_PI_2 / a)
}

/// How the first argument of `F` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FConvention {
    /// `F(φ, k) = ∫₀^φ dθ / √(1 − k² sin²θ)`.
    Amplitude,
    /// `F(x, k) = ∫₀^x dt / √((1 − t²)(1 − k²t²))`, `|x| ≤ 1`.
    Argument,
}

/// Legendre incomplete integral of the first kind.
pub fn elliptic_f(x: f64, k: f64, convention: FConvention) -> Result<f64> {
    let m = k * k;
    match convention {
        FConvention::Argument => {
            if x.abs() > 1.0 {
                return Err(Error::Domain(format!(
                    "argument-form F needs |x| ≤ 1, got {x}"
                )));
            }
            if m * x * x >= 1.0 {
                return Err(Error::Domain("F diverges at k²x² = 1".into()));
            }
            if x == 0.0 {
                return Ok(0.0);
            }
            Ok(x * carlson_rf(1.0 - x * x, 1.0 - m * x * x, 1.0)?)
        }
        FConvention::Amplitude => {
            if !x.is_finite() {
                return Err(Error::Domain("amplitude must be finite".into()));
            }
            let half = std::f64::consts::FRAC_PI_2;
            let n = (x / std::f64::consts::PI).round();
            let phi = x - n * std::f64::consts::PI;
            debug_assert!(phi.abs() <= half + 1e-12);
            let s = phi.sin();
            if m * s * s >= 1.0 {
                return Err(Error::Domain("F diverges at k² sin²φ = 1".into()));
            }
            let part = if s == 0.0 {
                0.0
            } else {
                s * carlson_rf(phi.cos().powi(2), 1.0 - m * s * s, 1.0)?
            };
            let whole = if n != 0.0 {
                2.0 * n * elliptic_k(k)?
            } else {
                0.0
            };
            Ok(whole + part)
        }
    }
}

/// Modulus `k = 2ε / (4C₁ + ε)` of the travelling-wave solution.
pub fn travelling_wave_modulus(epsilon: f64, c1: f64) -> f64 {
    2.0 * epsilon / (4.0 * c1 + epsilon)
}

/// `0 < k² < 1` for the travelling-wave modulus.
pub fn jacobi_branch_valid(epsilon: f64, c1: f64) -> bool {
    let k = travelling_wave_modulus(epsilon, c1);
    let m = k * k;
    m.is_finite() && m > 0.0 && m < 1.0
}
