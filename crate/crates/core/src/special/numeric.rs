//! Tanh-sinh quadrature and Brent root finding.

use crate::algebra::Ring;
use crate::error::{Error, Result};

/// Accuracy target of [`quadrature`].
pub const QUAD_TOLERANCE: f64 = 1e-10;

const MAX_LEVEL: usize = 12;
const T_MAX: f64 = 3.5;

/// Integrates `f` over `[a, b]` with the tanh-sinh rule, which tolerates
/// integrable endpoint singularities. The integrand receives the abscissa
/// and its distances to both endpoints, so singular factors such as
/// `1/√(x − a)` can be evaluated without cancellation.
pub fn quadrature_with<R, F>(f: F, a: f64, b: f64) -> Result<R>
where
    R: Ring,
    F: Fn(f64, f64, f64) -> R,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("quadrature bounds must be finite".into()));
    }
    let half = 0.5 * (b - a);
    let node = |t: f64| -> Option<(f64, f64, f64, f64)> {
        let s = std::f64::consts::FRAC_PI_2 * t.sinh();
        let c = std::f64::consts::FRAC_PI_2 * t.cosh();
        let ch = s.cosh();
        // 1 ∓ tanh(s) in cancellation-free form.
        let db = half.abs() * 2.0 / ((2.0 * s).exp() + 1.0);
        let da = half.abs() * 2.0 / ((-2.0 * s).exp() + 1.0);
        let w = half * c / (ch * ch);
        if !(w.is_finite()) || w == 0.0 {
            return None;
        }
        let dir = half.signum();
        let x = if s <= 0.0 { a + dir * da } else { b - dir * db };
        Some((x, w, da, db))
    };
    let eval = |t: f64| -> Option<R> {
        let (x, w, da, db) = node(t)?;
        if da <= 0.0 || db <= 0.0 {
            return None;
        }
        let v = f(x, da, db);
        Some(v.scale(w))
    };
    let origin = eval(0.0).ok_or_else(|| Error::Numerical("quadrature node failure".into()))?;
    let mut sum = origin.clone();
    let mut h = 1.0;
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        if t > T_MAX {
            break;
        }
        for tt in [t, -t] {
            if let Some(v) = eval(tt) {
                sum = sum.add(&v);
            }
        }
        k += 1;
    }
    let mut estimate = sum.scale(h);
    for _ in 0..MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            for tt in [t, -t] {
                if let Some(v) = eval(tt) {
                    sum = sum.add(&v);
                }
            }
            k += 2;
        }
        let next = sum.scale(h);
        if !next.is_finite() {
            return Err(Error::Numerical(
                "quadrature produced a non-finite value".into(),
            ));
        }
        let change = next.sub(&estimate).body().abs();
        let scale = next.body().abs().max(1.0);
        estimate = next;
        if change <= 0.1 * QUAD_TOLERANCE * scale {
            return Ok(estimate);
        }
    }
    Err(Error::Numerical(
        "tanh-sinh quadrature did not converge".into(),
    ))
}

/// `∫_a^b f(x) dx` with the tanh-sinh rule.
pub fn quadrature<R: Ring, F: Fn(f64) -> R>(f: F, a: f64, b: f64) -> Result<R> {
    quadrature_with(|x, _, _| f(x), a, b)
}

/// Root of `g` in a sign-changing bracket, to absolute accuracy `tol`.
pub fn brent_root<G: Fn(f64) -> f64>(g: G, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (g(a), g(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::Numerical(format!(
            "root not bracketed in [{lo}, {hi}]"
        )));
    }
    let (mut c, mut fc) = (b, fb);
    let (mut d, mut e) = (b - a, b - a);
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else {
            tol1 * xm.signum()
        };
        fb = g(b);
    }
    Err(Error::Numerical("Brent iteration did not converge".into()))
}

/// Real roots of a polynomial `Σ c_k y^k` (ascending coefficients), found by
/// scanning the Cauchy bound and polishing each sign change.
pub fn real_roots(coeffs: &[f64]) -> Result<Vec<f64>> {
    let deg = coeffs
        .iter()
        .rposition(|c| *c != 0.0)
        .ok_or_else(|| Error::Domain("zero polynomial has no isolated roots".into()))?;
    let lead = coeffs[deg];
    let bound = 1.0
        + coeffs[..deg]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max);
    let p = |y: f64| coeffs[..=deg].iter().rev().fold(0.0, |acc, c| acc * y + c);
    let dp = |y: f64| {
        coeffs[1..=deg]
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (k, c)| acc * y + (k as f64 + 1.0) * c)
    };
    // Roots of p are separated by roots of p', so scan p on a fine mesh and
    // also test double roots at extrema.
    let m = 20_000;
    let mut roots: Vec<f64> = Vec::new();
    let step = 2.0 * bound / m as f64;
    let mut prev = (-bound, p(-bound));
    for i in 1..=m {
        let y = -bound + i as f64 * step;
        let v = p(y);
        if v == 0.0 {
            roots.push(y);
        } else if prev.1 != 0.0 && v.signum() != prev.1.signum() {
            roots.push(brent_root(p, prev.0, y, 1e-15)?);
        } else if (dp(prev.0) * dp(y)) < 0.0 {
            let e = brent_root(dp, prev.0, y, 1e-15)?;
            if p(e).abs() < 1e-12 * lead.abs().max(1.0) {
                roots.push(e);
            }
        }
        prev = (y, v);
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_integral() {
        let v: f64 = quadrature(|y| 2.0 * y, 0.0, 1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫₀¹ dy/√(1 − y²) = π/2
        let v: f64 = quadrature_with(|y, _, db| 1.0 / ((1.0 + y) * db).sqrt(), 0.0, 1.0).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-10, "{v}");
        let w: f64 = quadrature(|y| 1.0 / y.sqrt(), 0.0, 4.0).unwrap();
        assert!((w - 4.0).abs() < 1e-9, "{w}");
    }

    #[test]
    fn reversed_interval() {
        let v: f64 = quadrature(|y: f64| y.exp(), 1.0, 0.0).unwrap();
        assert!((v + (1f64.exp() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn sqrt_two() {
        let r = brent_root(|y| y * y - 2.0, 1.0, 2.0, 1e-14).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-10);
        assert!(brent_root(|y| y * y + 1.0, 0.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn quartic_roots() {
        // (y² − 1)(y² − 4)
        let r = real_roots(&[4.0, 0.0, -5.0, 0.0, 1.0]).unwrap();
        assert_eq!(r.len(), 4);
        for (a, b) in r.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
