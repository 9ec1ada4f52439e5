//! Weierstrass ℘ with even-supernumber invariants, the travelling-wave
//! quartic and its invariants, and the rational ℘ form of its solution.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmann::{Parity, Supernumber};

/// Below this `|z|` the pole of ℘ is reported instead of evaluated.
pub const POLE_THRESHOLD: f64 = 1e-7;

const LAURENT_TERMS: usize = 60;

/// Laurent coefficients `c_k` of `℘(z) = z⁻² + Σ_{k≥2} c_k z^{2k−2}`.
fn laurent(g2: &Supernumber, g3: &Supernumber) -> Vec<Supernumber> {
    let n = g2.generators();
    let mut c = vec![Supernumber::zero(n); LAURENT_TERMS + 1];
    c[2] = g2.scale(1.0 / 20.0);
    if LAURENT_TERMS >= 3 {
        c[3] = g3.scale(1.0 / 28.0);
    }
    for k in 4..=LAURENT_TERMS {
        let mut s = Supernumber::zero(n);
        for m in 2..=k - 2 {
            s = &s + &(&c[m] * &c[k - m]);
        }
        c[k] = s.scale(3.0 / ((2 * k + 1) as f64 * (k - 3) as f64));
    }
    c
}

/// `(℘(z), ℘′(z))` for real `z` and even invariants. The series about the
/// origin seeds a point `z/2^m`; `m` rational duplications then reach `z`
/// (the tangent-slope form loses a digit per step). All steps
/// are ring operations, so nilpotent parts of `g₂, g₃` propagate exactly.
pub fn weierstrass_p(
    z: f64,
    g2: &Supernumber,
    g3: &Supernumber,
) -> Result<(Supernumber, Supernumber)> {
    if !z.is_finite() {
        return Err(Error::Domain("℘ needs a finite argument".into()));
    }
    if z.abs() < POLE_THRESHOLD {
        return Err(Error::Pole(z));
    }
    for (name, g) in [("g2", g2), ("g3", g3)] {
        if !g.is_zero() && g.parity() != Parity::Even {
            return Err(Error::Parity(format!("{name} must be even")));
        }
    }
    let n = g2.generators();
    let scale = 1f64
        .max(g2.body().abs().powf(0.25))
        .max(g3.body().abs().powf(1.0 / 6.0));
    let r0 = 0.5 / scale;
    let mut m = 0;
    let mut w = z;
    while w.abs() > r0 {
        w *= 0.5;
        m += 1;
    }
    let c = laurent(g2, g3);
    let w2 = w * w;
    let mut p = Supernumber::scalar(n, 1.0 / w2);
    let mut dp = Supernumber::scalar(n, -2.0 / (w2 * w));
    let mut pw = 1.0; // w^{2k−4}
    for (k, ck) in c.iter().enumerate().skip(2) {
        pw *= if k == 2 { 1.0 } else { w2 };
        p = &p + &ck.scale(pw * w2);
        dp = &dp + &ck.scale((2 * k - 2) as f64 * pw * w);
    }
    // ℘(2u) = N(℘)/D(℘) with N = ℘⁴ + g₂℘²/2 + 2g₃℘ + g₂²/16 and
    // D = 4℘³ − g₂℘ − g₃; differentiating gives ℘′(2u).
    let g2g2 = (g2 * g2).scale(1.0 / 16.0);
    for _ in 0..m {
        let p2 = &p * &p;
        let p3 = &p2 * &p;
        let num = &(&(&(&p2 * &p2) + &(g2 * &p2).scale(0.5)) + &(g3 * &p).scale(2.0)) + &g2g2;
        let den = &(&p3.scale(4.0) - &(g2 * &p)) - g3;
        let dnum = &(&p3.scale(4.0) + &(g2 * &p)) + &g3.scale(2.0);
        let dden = &p2.scale(12.0) - g2;
        let den_inv = den.inv().map_err(|_| Error::Pole(z))?;
        let ratio = &(&(&dnum * &den) - &(&num * &dden)) * &(&den_inv * &den_inv);
        dp = (&ratio * &dp).scale(0.5);
        p = &num * &den_inv;
    }
    if !p.is_finite() || !dp.is_finite() || p.body().abs() > 1.0 / (POLE_THRESHOLD * POLE_THRESHOLD)
    {
        return Err(Error::Pole(z));
    }
    Ok((p, dp))
}

/// Real-invariant convenience wrapper.
pub fn weierstrass_p_real(z: f64, g2: f64, g3: f64) -> Result<(f64, f64)> {
    let (p, dp) = weierstrass_p(z, &Supernumber::scalar(0, g2), &Supernumber::scalar(0, g3))?;
    Ok((p.body(), dp.body()))
}

/// `f(y) = −y⁴ − 4C₀y³ + (4C₁ − 2)y² − 4C₀y − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quartic {
    pub c0: Supernumber,
    pub c1: f64,
}

/// Invariants from the closed formulas and from the quartic's coefficients.
#[derive(Debug, Clone, Serialize)]
pub struct QuarticInvariants {
    pub g2_closed: Supernumber,
    pub g3_closed: Supernumber,
    pub g2_classical: Supernumber,
    pub g3_classical: Supernumber,
    pub g2_agree: bool,
    pub g3_agree: bool,
    /// `g₃(closed) − g₃(classical)`.
    pub g3_discrepancy: Supernumber,
}

impl Quartic {
    pub fn new(c0: Supernumber, c1: f64) -> Self {
        Quartic { c0, c1 }
    }

    fn n(&self) -> usize {
        self.c0.generators()
    }

    /// Ascending coefficients `[−1, −4C₀, 4C₁ − 2, −4C₀, −1]`.
    pub fn coefficients(&self) -> [Supernumber; 5] {
        let n = self.n();
        let lin = self.c0.scale(-4.0);
        [
            Supernumber::scalar(n, -1.0),
            lin.clone(),
            Supernumber::scalar(n, 4.0 * self.c1 - 2.0),
            lin,
            Supernumber::scalar(n, -1.0),
        ]
    }

    /// Value and first two derivatives at a (possibly nilpotent-shifted) `y`.
    pub fn eval(&self, y: &Supernumber) -> [Supernumber; 3] {
        let c = self.coefficients();
        let n = self.n();
        let mut f = Supernumber::zero(n);
        let mut d1 = Supernumber::zero(n);
        let mut d2 = Supernumber::zero(n);
        for k in (0..5).rev() {
            d2 = &(&d2 * y) + &d1.scale(2.0);
            d1 = &(&d1 * y) + &f;
            f = &(&f * y) + &c[k];
        }
        [f, d1, d2]
    }

    pub fn eval_real(&self, y: f64) -> f64 {
        let c1 = self.c1;
        let c0 = self.c0.body();
        (((-y - 4.0 * c0) * y + 4.0 * c1 - 2.0) * y - 4.0 * c0) * y - 1.0
    }

    /// Both forms of the ℘ invariants, with agreement flags.
    pub fn invariants(&self) -> QuarticInvariants {
        let n = self.n();
        let c1 = self.c1;
        let c0sq = &self.c0 * &self.c0;
        let s = |v: f64| Supernumber::scalar(n, v);
        let g2_closed = &(&s(4.0 / 3.0) - &c0sq.scale(4.0)) + &s(4.0 / 3.0 * c1 * (c1 - 1.0));
        let g3_closed =
            &(&s(4.0 / 9.0 * c1 - 8.0 / 27.0 - 8.0 / 27.0 * c1.powi(3) + 4.0 / 9.0 * c1 * c1)
                + &c0sq.scale(2.0 / 3.0 * c1))
                - &c0sq.scale(7.0 / 3.0);
        // f = a₀y⁴ + 4a₁y³ + 6a₂y² + 4a₃y + a₄
        let a0 = s(-1.0);
        let a1 = self.c0.scale(-1.0);
        let a2 = s((4.0 * c1 - 2.0) / 6.0);
        let a3 = a1.clone();
        let a4 = s(-1.0);
        let g2_classical = &(&(&a0 * &a4) - &(&a1 * &a3).scale(4.0)) + &(&a2 * &a2).scale(3.0);
        let g3_classical = &(&(&(&(&(&a0 * &a2) * &a4) + &(&(&a1 * &a2) * &a3).scale(2.0))
            - &(&(&a2 * &a2) * &a2))
            - &(&(&a0 * &a3) * &a3))
            - &(&(&a1 * &a1) * &a4);
        let close =
            |a: &Supernumber, b: &Supernumber| (a - b).max_abs() <= 1e-12 * (1.0 + a.max_abs());
        let g3_discrepancy = &g3_closed - &g3_classical;
        QuarticInvariants {
            g2_agree: close(&g2_closed, &g2_classical),
            g3_agree: close(&g3_closed, &g3_classical),
            g2_closed,
            g3_closed,
            g2_classical,
            g3_classical,
            g3_discrepancy,
        }
    }

    /// Real roots of the body quartic.
    pub fn real_roots(&self) -> Result<Vec<f64>> {
        let c0 = self.c0.body();
        super::numeric::real_roots(&[-1.0, -4.0 * c0, 4.0 * self.c1 - 2.0, -4.0 * c0, -1.0])
    }

    /// Lifts a simple real root to a root in the full ring by Newton
    /// iteration (exact once the nilpotent corrections are exhausted).
    pub fn lift_root(&self, real_root: f64) -> Result<Supernumber> {
        let n = self.n();
        let mut y = Supernumber::scalar(n, real_root);
        for _ in 0..(n + 6) {
            let [f, d1, _] = self.eval(&y);
            let step = &f * &d1.inv()?;
            y = &y - &step;
        }
        let [f, _, _] = self.eval(&y);
        if f.max_abs() > 1e-10 {
            return Err(Error::Numerical(format!(
                "root lift failed, |f(y₀)| = {}",
                f.max_abs()
            )));
        }
        Ok(y)
    }
}

/// `y(σ)` and `dy/dσ` from `y = y₀ + ¼f′(y₀) / (℘(s) − f″(y₀)/24)` with
/// `s = (σ − σ_r)/2`, which solves `4(y′)² = f(y)` (the ℘ variable is
/// half the travelling-wave variable). `σ_r` is where `y = y₀`.
pub fn weierstrass_solution(
    q: &Quartic,
    y0: &Supernumber,
    sigma_r: f64,
    sigma: f64,
) -> Result<(Supernumber, Supernumber)> {
    let inv = q.invariants();
    let [_, d1, d2] = q.eval(y0);
    let a = d1.scale(0.25);
    let b = d2.scale(1.0 / 24.0);
    let s = 0.5 * (sigma - sigma_r);
    let (p, dp) = weierstrass_p(s, &inv.g2_classical, &inv.g3_classical)?;
    let denom_inv = (&p - &b).inv()?;
    let y = y0 + &(&a * &denom_inv);
    // dy/dσ = ½ dy/ds = −½ a ℘′ / (℘ − b)²
    let dy = (&(&a * &dp) * &(&denom_inv * &denom_inv)).scale(-0.5);
    Ok((y, dy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::elliptic::jacobi_sncndn;

    /// ℘ from the Jacobi functions for three real lattice roots
    /// `e₁ > e₂ > e₃`: `℘(z) = e₃ + (e₁ − e₃)/sn²(√(e₁ − e₃) z, k)`.
    fn p_from_jacobi(z: f64, e: [f64; 3]) -> f64 {
        let r = (e[0] - e[2]).sqrt();
        let k = ((e[1] - e[2]) / (e[0] - e[2])).sqrt();
        let sn = jacobi_sncndn(r * z, k).unwrap().0;
        e[2] + (e[0] - e[2]) / (sn * sn)
    }

    #[test]
    fn pure_pole_when_invariants_vanish() {
        let (p, dp) = weierstrass_p_real(1e-3, 0.0, 0.0).unwrap();
        assert!((p * 1e-6 - 1.0).abs() < 1e-12);
        assert!((dp + 2e9).abs() < 1e-3);
        let (p, _) = weierstrass_p_real(2.5, 0.0, 0.0).unwrap();
        assert!((p - 0.16).abs() < 1e-12);
        assert!(matches!(
            weierstrass_p_real(1e-9, 1.0, 1.0),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn matches_jacobi_oracle() {
        let e = [1.0, 0.25, -1.25];
        let g2 = -4.0 * (e[0] * e[1] + e[1] * e[2] + e[0] * e[2]);
        let g3 = 4.0 * e[0] * e[1] * e[2];
        for z in [0.05, 0.3, 0.9, 1.4, 2.2] {
            let (p, dp) = weierstrass_p_real(z, g2, g3).unwrap();
            let want = p_from_jacobi(z, e);
            assert!(
                (p - want).abs() < 1e-9 * want.abs().max(1.0),
                "z={z}: {p} vs {want}"
            );
            let ode = dp * dp - (4.0 * p * p * p - g2 * p - g3);
            assert!(ode.abs() < 1e-8 * (1.0 + p.abs().powi(3)), "z={z}: {ode}");
        }
    }

    #[test]
    fn nilpotent_invariants_propagate() {
        let (g2, g3, z) = (1.3, -0.4, 0.8);
        let d = 1e-5;
        let sens = |dg2: f64| weierstrass_p_real(z, g2 + dg2, g3).unwrap().0;
        let fd = (sens(d) - sens(-d)) / (2.0 * d);
        let delta = 0.25;
        let g2s = &Supernumber::scalar(2, g2) + &Supernumber::monomial(2, 0b11, delta);
        let (p, _) = weierstrass_p(z, &g2s, &Supernumber::scalar(2, g3)).unwrap();
        let soul = p.coeff(0b11);
        assert!(
            (soul - fd * delta).abs() < 1e-6 * (fd * delta).abs(),
            "{soul} vs {}",
            fd * delta
        );
    }

    #[test]
    fn closed_and_classical_invariants() {
        for c1 in [-1.0, 0.0, 0.6, 1.0, 2.5] {
            let q = Quartic::new(Supernumber::zero(2), c1);
            let inv = q.invariants();
            assert!(inv.g2_agree && inv.g3_agree, "C1 = {c1}");
        }
        let c0 = Supernumber::monomial(2, 0b11, 0.1);
        let inv = Quartic::new(c0, 0.7).invariants();
        assert!(inv.g2_agree && inv.g3_agree);
        let inv = Quartic::new(Supernumber::scalar(0, 0.3), 0.7).invariants();
        assert!(inv.g2_agree);
        assert!(!inv.g3_agree);
        // C₀² (4C₁/3 + 4/3) versus C₀² (2C₁/3 − 7/3)
        let expect = 0.09 * ((2.0 / 3.0 * 0.7 - 7.0 / 3.0) - (4.0 / 3.0 * 0.7 + 4.0 / 3.0));
        assert!((inv.g3_discrepancy.body() - expect).abs() < 1e-14);
    }

    #[test]
    fn rational_form_solves_the_quartic_ode() {
        let q = Quartic::new(Supernumber::zero(0), 1.2);
        let roots = q.real_roots().unwrap();
        assert_eq!(roots.len(), 4);
        let y0 = Supernumber::scalar(0, roots[3]);
        for sigma in [-2.0, -0.7, 0.4, 1.9, 3.3] {
            let (y, dy) = weierstrass_solution(&q, &y0, 0.0, sigma).unwrap();
            let r = 4.0 * dy.body().powi(2) - q.eval_real(y.body());
            assert!(r.abs() < 1e-8, "σ={sigma}: {r}");
        }
    }
}
