//! Reduced functions `(α, η, λ, β)` of one variable, accessed through
//! Taylor series at arbitrary real points.

use crate::algebra::{Ring, Series};
use crate::error::{Error, Result};
use crate::grassmann::Supernumber;

/// Slot order used everywhere: `α, η, λ, β`.
pub const SLOTS: [&str; 4] = ["alpha", "eta", "lambda", "beta"];

pub trait Profile: Send + Sync {
    fn generators(&self) -> usize;
    /// Closed interval on which the profile may be evaluated.
    fn domain(&self) -> (f64, f64);
    /// Taylor series of `α, η, λ, β` about `s0` up to `degree`.
    fn series(&self, s0: f64, degree: usize) -> Result<[Series; 4]>;

    fn check_domain(&self, s0: f64) -> Result<()> {
        let (a, b) = self.domain();
        let slack = 1e-9 * (b - a).abs().max(1.0);
        if s0 < a - slack || s0 > b + slack || !s0.is_finite() {
            return Err(Error::Extrapolation(format!("σ = {s0} outside [{a}, {b}]")));
        }
        Ok(())
    }
}

/// `Σ_k c_k e^{w_k s}` per slot, with supernumber amplitudes. Used as a
/// smooth test profile with exact derivatives.
#[derive(Debug, Clone)]
pub struct ExpSumProfile {
    n: usize,
    pub terms: [Vec<(Supernumber, f64)>; 4],
}

impl ExpSumProfile {
    pub fn new(n: usize, terms: [Vec<(Supernumber, f64)>; 4]) -> Self {
        ExpSumProfile { n, terms }
    }
}

impl Profile for ExpSumProfile {
    fn generators(&self) -> usize {
        self.n
    }

    fn domain(&self) -> (f64, f64) {
        (f64::MIN, f64::MAX)
    }

    fn series(&self, s0: f64, degree: usize) -> Result<[Series; 4]> {
        let build = |terms: &Vec<(Supernumber, f64)>| {
            let mut coeffs = vec![Supernumber::zero(self.n); degree + 1];
            for (c, w) in terms {
                let mut factor = (w * s0).exp();
                for (j, slot) in coeffs.iter_mut().enumerate() {
                    if j > 0 {
                        factor *= w / j as f64;
                    }
                    *slot = &*slot + &c.scale(factor);
                }
            }
            Series::new(coeffs)
        };
        Ok([
            build(&self.terms[0]),
            build(&self.terms[1]),
            build(&self.terms[2]),
            build(&self.terms[3]),
        ])
    }
}

/// Re-expands `Σ a_j h^j` about `h = δ`.
pub fn shift_series(s: &Series, delta: f64) -> Series {
    let a = s.coeffs();
    let d = a.len();
    let mut out = Vec::with_capacity(d);
    for m in 0..d {
        let mut acc = a[0].zero_like();
        let mut binom = 1.0;
        let mut pow = 1.0;
        for (j, aj) in a.iter().enumerate().skip(m) {
            if j > m {
                binom *= j as f64 / (j - m) as f64;
                pow *= delta;
            }
            if !aj.is_zero() {
                acc = &acc + &aj.scale(binom * pow);
            }
        }
        out.push(acc);
    }
    Series::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_profile_derivatives() {
        let p = ExpSumProfile::new(
            2,
            [
                vec![(Supernumber::scalar(2, 2.0), 0.5)],
                vec![],
                vec![],
                vec![(Supernumber::monomial(2, 0b11, 1.0), -1.0)],
            ],
        );
        let [a, _, _, b] = p.series(0.3, 3).unwrap();
        assert!((a.derivative(2).body() - 2.0 * 0.25 * 0.15f64.exp()).abs() < 1e-14);
        assert!((b.derivative(3).coeff(0b11) + (-0.3f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn shifting_a_polynomial_is_exact() {
        let s = Series::new(
            (0..4)
                .map(|k| Supernumber::scalar(0, [1.0, 2.0, -1.0, 0.5][k]))
                .collect(),
        );
        let t = shift_series(&s, 0.7);
        let f = |h: f64| 1.0 + 2.0 * h - h * h + 0.5 * h * h * h;
        assert!((t.coeffs()[0].body() - f(0.7)).abs() < 1e-14);
        assert!((t.coeffs()[1].body() - (2.0 - 1.4 + 1.5 * 0.49)).abs() < 1e-14);
        let back = shift_series(&t, -0.7);
        for k in 0..4 {
            assert!((&back.coeffs()[k] - &s.coeffs()[k]).max_abs() < 1e-14);
        }
    }
}
