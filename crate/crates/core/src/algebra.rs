//! Ring abstractions shared by the numerical layer.
//!
//! [`Ring`] is what the integrators and quadrature need (sums, products, real
//! scaling). [`AnalyticRing`] adds the hyperbolic functions used by the reduced
//! equations, so the same right-hand side can be evaluated on plain
//! supernumbers (for stepping) and on truncated Taylor series (for exact
//! derivative grids).

use crate::error::{Error, Result};
use crate::grassmann::{AnalyticFn, Parity, Supernumber};

pub trait Ring: Clone + Send + Sync {
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, k: f64) -> Self;
    /// Real part used for NaN and divergence checks.
    fn body(&self) -> f64;
    fn is_finite(&self) -> bool;

    fn neg(&self) -> Self {
        self.scale(-1.0)
    }
}

pub trait AnalyticRing: Ring {
    /// Embeds a supernumber constant.
    fn constant(&self, c: &Supernumber) -> Self;
    fn real(&self, c: f64) -> Self;
    fn apply(&self, f: AnalyticFn) -> Result<Self>;
    fn recip(&self) -> Result<Self>;

    fn sinh(&self) -> Result<Self> {
        self.apply(AnalyticFn::Sinh)
    }
    fn cosh(&self) -> Result<Self> {
        self.apply(AnalyticFn::Cosh)
    }
    fn tanh(&self) -> Result<Self> {
        self.apply(AnalyticFn::Tanh)
    }
    fn powf(&self, p: f64) -> Result<Self> {
        self.apply(AnalyticFn::Power(p))
    }
}

impl Ring for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, k: f64) -> Self {
        self * k
    }
    fn body(&self) -> f64 {
        *self
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Ring for Supernumber {
    fn zero_like(&self) -> Self {
        Supernumber::zero(self.generators())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, k: f64) -> Self {
        Supernumber::scale(self, k)
    }
    fn body(&self) -> f64 {
        Supernumber::body(self)
    }
    fn is_finite(&self) -> bool {
        Supernumber::is_finite(self)
    }
}

impl AnalyticRing for Supernumber {
    fn constant(&self, c: &Supernumber) -> Self {
        c.clone()
    }
    fn real(&self, c: f64) -> Self {
        Supernumber::scalar(self.generators(), c)
    }
    fn apply(&self, f: AnalyticFn) -> Result<Self> {
        crate::grassmann::gfunc(f, self)
    }
    fn recip(&self) -> Result<Self> {
        self.inv()
    }
}

/// Truncated power series `Σ_{k≤deg} c_k s^k` with ring coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<Supernumber>,
}

impl Series {
    /// Series with the given coefficients (`coeffs.len() − 1` is the degree).
    pub fn new(coeffs: Vec<Supernumber>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        Series { coeffs }
    }

    /// `value + s` truncated at `degree`: the independent variable.
    pub fn variable(value: Supernumber, degree: usize) -> Self {
        let n = value.generators();
        let mut coeffs = vec![Supernumber::zero(n); degree + 1];
        coeffs[0] = value;
        if degree >= 1 {
            coeffs[1] = Supernumber::one(n);
        }
        Series { coeffs }
    }

    pub fn constant_series(c: Supernumber, degree: usize) -> Self {
        let n = c.generators();
        let mut coeffs = vec![Supernumber::zero(n); degree + 1];
        coeffs[0] = c;
        Series { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Supernumber] {
        &self.coeffs
    }

    /// `k`-th derivative at the expansion point, `k! c_k`.
    pub fn derivative(&self, k: usize) -> Supernumber {
        let mut f = 1.0;
        for i in 2..=k {
            f *= i as f64;
        }
        self.coeffs
            .get(k)
            .map(|c| c.scale(f))
            .unwrap_or_else(|| Supernumber::zero(self.coeffs[0].generators()))
    }

    /// Formal derivative, one degree lower.
    pub fn differentiate(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Series::new(vec![self.coeffs[0].zero_like()]);
        }
        Series::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(k as f64))
                .collect(),
        )
    }

    /// Antiderivative with constant term `c0`, one degree higher.
    pub fn integrate(&self, c0: Supernumber) -> Self {
        let mut coeffs = vec![c0];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(1.0 / (k as f64 + 1.0))),
        );
        Series::new(coeffs)
    }

    pub fn truncate(&self, degree: usize) -> Self {
        let mut coeffs: Vec<_> = self.coeffs.iter().take(degree + 1).cloned().collect();
        while coeffs.len() < degree + 1 {
            coeffs.push(self.coeffs[0].zero_like());
        }
        Series::new(coeffs)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Supernumber, &Supernumber) -> Supernumber) -> Self {
        let deg = self.degree().min(other.degree());
        Series::new(
            (0..=deg)
                .map(|k| f(&self.coeffs[k], &other.coeffs[k]))
                .collect(),
        )
    }

    /// `Σ_k a_k (self − x₀)^k` for a real expansion point `x₀`; the shift
    /// keeps the soul of the constant term.
    fn compose(&self, x0: f64, taylor: &[Supernumber]) -> Self {
        let deg = self.degree();
        let n = self.coeffs[0].generators();
        let mut shift = self.clone();
        shift.coeffs[0] = &shift.coeffs[0] - &Supernumber::scalar(n, x0);
        let mut out = Series::constant_series(taylor[0].clone(), deg);
        let mut power = Series::constant_series(Supernumber::one(n), deg);
        for a in taylor.iter().skip(1) {
            power = power.mul(&shift);
            if power.coeffs.iter().all(Supernumber::is_zero) {
                break;
            }
            out = out.add(&Series::new(power.coeffs.iter().map(|c| c * a).collect()));
        }
        out
    }
}

impl Series {
    /// `exp(u)` from `e′ = u′e`; needs commuting coefficients.
    fn exp_even(&self) -> Result<Self> {
        let u = &self.coeffs;
        let mut e = vec![u[0].exp()?];
        for k in 1..u.len() {
            let mut acc = u[0].zero_like();
            for j in 1..=k {
                acc = &acc + &(&u[j] * &e[k - j]).scale(j as f64);
            }
            e.push(acc.scale(1.0 / k as f64));
        }
        Ok(Series::new(e))
    }

    /// `u^p` from `u y′ = p u′ y`; needs commuting coefficients and an
    /// invertible constant term.
    fn pow_even(&self, p: f64) -> Result<Self> {
        let u = &self.coeffs;
        let inv0 = u[0].inv()?;
        let mut y = vec![crate::grassmann::gfunc(AnalyticFn::Power(p), &u[0])?];
        for k in 1..u.len() {
            let mut acc = u[0].zero_like();
            for j in 1..=k {
                let w = p * j as f64 - (k - j) as f64;
                if w != 0.0 {
                    acc = &acc + &(&u[j] * &y[k - j]).scale(w);
                }
            }
            y.push((&acc * &inv0).scale(1.0 / k as f64));
        }
        Ok(Series::new(y))
    }

    /// `a / b` by long division; needs commuting coefficients.
    fn div_even(&self, b: &Self) -> Result<Self> {
        let deg = self.degree().min(b.degree());
        let inv0 = b.coeffs[0].inv()?;
        let mut q: Vec<Supernumber> = Vec::with_capacity(deg + 1);
        for k in 0..=deg {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc = &acc - &(&b.coeffs[j] * &q[k - j]);
            }
            q.push(&acc * &inv0);
        }
        Ok(Series::new(q))
    }

    fn apply_even(&self, f: AnalyticFn) -> Result<Self> {
        let out = match f {
            AnalyticFn::Exp => self.exp_even()?,
            AnalyticFn::Sinh | AnalyticFn::Cosh | AnalyticFn::Tanh => {
                let ep = self.exp_even()?;
                let em = self.scale(-1.0).exp_even()?;
                let sh = ep.sub(&em).scale(0.5);
                let ch = ep.add(&em).scale(0.5);
                match f {
                    AnalyticFn::Sinh => sh,
                    AnalyticFn::Cosh => ch,
                    _ => sh.div_even(&ch)?,
                }
            }
            AnalyticFn::Sqrt => self.pow_even(0.5)?,
            AnalyticFn::Power(p) => self.pow_even(p)?,
        };
        if !out.is_finite() {
            return Err(Error::Domain(format!("{f:?} of a series is not finite")));
        }
        Ok(out)
    }
}

impl Ring for Series {
    fn zero_like(&self) -> Self {
        Series::new(vec![self.coeffs[0].zero_like(); self.coeffs.len()])
    }
    fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }
    fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }
    fn mul(&self, other: &Self) -> Self {
        let deg = self.degree().min(other.degree());
        let mut out = vec![self.coeffs[0].zero_like(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(deg + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(deg + 1 - i) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Series::new(out)
    }
    fn scale(&self, k: f64) -> Self {
        Series::new(self.coeffs.iter().map(|c| c.scale(k)).collect())
    }
    fn body(&self) -> f64 {
        self.coeffs[0].body()
    }
    fn is_finite(&self) -> bool {
        self.coeffs.iter().all(Supernumber::is_finite)
    }
}

impl AnalyticRing for Series {
    fn constant(&self, c: &Supernumber) -> Self {
        Series::constant_series(c.clone(), self.degree())
    }
    fn real(&self, c: f64) -> Self {
        let n = self.coeffs[0].generators();
        Series::constant_series(Supernumber::scalar(n, c), self.degree())
    }
    fn apply(&self, f: AnalyticFn) -> Result<Self> {
        if self
            .coeffs
            .iter()
            .all(|c| c.is_zero() || c.parity() == Parity::Even)
        {
            return self.apply_even(f);
        }
        let c0 = &self.coeffs[0];
        let n = c0.generators();
        let body = c0.body();
        let order = self.degree() + n / 2 + 1;
        let real = f.taylor(body, order, c0.soul().is_zero() && self.degree() == 0)?;
        if !real.iter().all(|c| c.is_finite()) {
            return Err(Error::Domain(format!("{f:?}({body}) is not finite")));
        }
        let taylor: Vec<Supernumber> = real.iter().map(|&c| Supernumber::scalar(n, c)).collect();
        Ok(self.compose(body, &taylor))
    }
    fn recip(&self) -> Result<Self> {
        self.apply(AnalyticFn::Power(-1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: f64) -> Supernumber {
        Supernumber::scalar(4, c)
    }

    #[test]
    fn series_sinh_matches_derivatives() {
        let x = Series::variable(s(0.7), 4);
        let y = x.sinh().unwrap();
        let d: Vec<f64> = (0..=4).map(|k| y.derivative(k).body()).collect();
        let (sh, ch) = (0.7f64.sinh(), 0.7f64.cosh());
        let expect = [sh, ch, sh, ch, sh];
        for (a, b) in d.iter().zip(expect) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn series_reciprocal_with_soul() {
        let x12 = Supernumber::monomial(4, 0b11, 0.5);
        let c = &s(2.0) + &x12;
        let x = Series::variable(c.clone(), 3);
        let r = x.recip().unwrap();
        let prod = x.mul(&r);
        assert!((&prod.coeffs()[0] - &s(1.0)).max_abs() < 1e-15);
        for k in 1..=3 {
            assert!(prod.coeffs()[k].max_abs() < 1e-14);
        }
        assert!((&r.coeffs()[0] - &c.inv().unwrap()).max_abs() < 1e-15);
    }

    #[test]
    fn recurrences_match_composition() {
        let mut c = vec![&s(0.4) + &Supernumber::monomial(4, 0b0011, 0.3)];
        c.push(&s(-0.7) + &Supernumber::monomial(4, 0b1100, 0.2));
        c.push(&s(0.25) + &Supernumber::monomial(4, 0b0110, -0.5));
        c.push(s(0.1));
        let u = Series::new(c);
        for f in [
            AnalyticFn::Sinh,
            AnalyticFn::Cosh,
            AnalyticFn::Tanh,
            AnalyticFn::Power(-1.5),
        ] {
            let fast = u.apply_even(f).unwrap();
            let slow = u.compose(
                0.4,
                &f.taylor(0.4, 12, false)
                    .unwrap()
                    .iter()
                    .map(|&v| s(v))
                    .collect::<Vec<_>>(),
            );
            for k in 0..=3 {
                assert!(
                    (&fast.coeffs()[k] - &slow.coeffs()[k]).max_abs() < 1e-13,
                    "{f:?} k={k}"
                );
            }
        }
    }

    #[test]
    fn derivative_and_integral_invert() {
        let x = Series::variable(s(0.3), 5).cosh().unwrap();
        let back = x.differentiate().integrate(x.coeffs()[0].clone());
        for k in 0..=5 {
            assert!((&back.coeffs()[k] - &x.coeffs()[k]).max_abs() < 1e-15);
        }
    }
}
