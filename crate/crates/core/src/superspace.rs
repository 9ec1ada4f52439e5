//! Polynomial calculus on superspace `(x, t, θ₁, θ₂)` with supernumber
//! coefficients.
//!
//! A term is stored as `x^a t^b Φ^c θ^m · coeff`: the θ-monomial sits to the
//! *left* of its coefficient, matching the component expansion
//! `Φ = a₀ + θ₁a₁ + θ₂a₂ + θ₁θ₂a₁₂`. Odd coefficients therefore pick up signs
//! only when a θ has to move past them during multiplication. Even exponents
//! are rationals so that `t^{±1/2}` invariants are representable; `Φ` is an
//! extra even variable used by vector fields that act on the field itself.
//!
//! Odd derivatives act from the left with the graded Leibniz rule
//! `∂θ(fg) = (∂θ f) g + (−1)^{deg f} f ∂θ g`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational32;

use crate::error::{Error, Result};
use crate::grassmann::{monomial_sign, AnalyticFn, Parity, Supernumber};

pub const THETA1: u8 = 0b01;
pub const THETA2: u8 = 0b10;

/// Superspace coordinates, plus the field variable `Φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    T,
    Phi,
    Theta1,
    Theta2,
}

impl Var {
    pub fn is_odd(self) -> bool {
        matches!(self, Var::Theta1 | Var::Theta2)
    }

    pub const ALL: [Var; 5] = [Var::X, Var::T, Var::Phi, Var::Theta1, Var::Theta2];
}

/// `x^x t^t Φ^phi θ^theta`; `theta` bit 0 is θ₁, bit 1 is θ₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: Rational32,
    pub t: Rational32,
    pub phi: u32,
    pub theta: u8,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        x: Rational32::new_raw(0, 1),
        t: Rational32::new_raw(0, 1),
        phi: 0,
        theta: 0,
    };

    pub fn new(x: i32, t: i32, theta: u8) -> Self {
        Monomial {
            x: Rational32::from_integer(x),
            t: Rational32::from_integer(t),
            phi: 0,
            theta,
        }
    }

    pub fn theta(theta: u8) -> Self {
        Monomial {
            theta,
            ..Monomial::ONE
        }
    }

    /// Total integer degree in `x` and `t` (for truncation of local jets).
    pub fn spatial_degree(&self) -> Option<u32> {
        if self.x.is_integer() && self.t.is_integer() {
            Some((self.x.to_integer() + self.t.to_integer()) as u32)
        } else {
            None
        }
    }

    fn theta_count(&self) -> u32 {
        self.theta.count_ones()
    }
}

/// θ-expansion `c₀ + θ₁c₁ + θ₂c₂ + θ₁θ₂c₁₂`, indexed by θ-mask.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaExpansion(pub [Supernumber; 4]);

impl ThetaExpansion {
    pub fn zero(n: usize) -> Self {
        ThetaExpansion(std::array::from_fn(|_| Supernumber::zero(n)))
    }

    pub fn component(&self, mask: u8) -> &Supernumber {
        &self.0[mask as usize]
    }

    pub fn sub(&self, other: &Self) -> Self {
        ThetaExpansion(std::array::from_fn(|i| &self.0[i] - &other.0[i]))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(Supernumber::max_abs).fold(0.0, f64::max)
    }

    /// As a θ-only polynomial.
    pub fn to_polynomial(&self) -> SuperPolynomial {
        let n = self.0[0].generators();
        let mut p = SuperPolynomial::zero(n);
        for (mask, c) in self.0.iter().enumerate() {
            p.add_term(Monomial::theta(mask as u8), c.clone());
        }
        p
    }
}

/// Sparse polynomial in `x, t, Φ, θ₁, θ₂` with supernumber coefficients.
#[derive(Clone, PartialEq)]
pub struct SuperPolynomial {
    n: usize,
    terms: BTreeMap<Monomial, Supernumber>,
}

/// Sign of moving a coefficient of parity split `(even, odd)` to the right of
/// a θ-monomial with `k` factors: `c θ^m = θ^m (c_even + (−1)^k c_odd)`.
fn pass_theta(c: &Supernumber, k: u32) -> Supernumber {
    if k.is_multiple_of(2) {
        c.clone()
    } else {
        &c.even_part() - &c.odd_part()
    }
}

impl SuperPolynomial {
    pub fn zero(n: usize) -> Self {
        SuperPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Supernumber) -> Self {
        let mut p = Self::zero(c.generators());
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn real(n: usize, c: f64) -> Self {
        Self::constant(Supernumber::scalar(n, c))
    }

    pub fn var(n: usize, v: Var) -> Self {
        let m = match v {
            Var::X => Monomial::new(1, 0, 0),
            Var::T => Monomial::new(0, 1, 0),
            Var::Phi => Monomial {
                phi: 1,
                ..Monomial::ONE
            },
            Var::Theta1 => Monomial::theta(THETA1),
            Var::Theta2 => Monomial::theta(THETA2),
        };
        Self::term(m, Supernumber::one(n))
    }

    pub fn term(m: Monomial, c: Supernumber) -> Self {
        let mut p = Self::zero(c.generators());
        p.add_term(m, c);
        p
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Supernumber)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Supernumber {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Supernumber::zero(self.n))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(Supernumber::max_abs)
            .fold(0.0, f64::max)
    }

    /// Adds `m · c` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Supernumber) {
        assert_eq!(c.generators(), self.n, "generator count mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Parity of each term: coefficient parity plus number of θ's.
    pub fn parity(&self) -> Parity {
        let mut acc: Option<Parity> = None;
        for (m, c) in &self.terms {
            let p = c.parity().combine(Parity::of_grade(m.theta_count()));
            acc = match acc {
                None => Some(p),
                Some(q) if q == p => Some(q),
                Some(_) => Some(Parity::Mixed),
            };
        }
        acc.unwrap_or(Parity::Even)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(*m, c.scale(k));
        }
        out
    }

    /// `self · c` (constant on the right; no signs).
    pub fn mul_constant_right(&self, c: &Supernumber) -> Self {
        let mut out = Self::zero(self.n);
        for (m, a) in &self.terms {
            out.add_term(*m, a * c);
        }
        out
    }

    /// `c · self` (constant on the left; odd parts of `c` pass the θ's).
    pub fn mul_constant_left(&self, c: &Supernumber) -> Self {
        let mut out = Self::zero(self.n);
        for (m, a) in &self.terms {
            out.add_term(*m, &pass_theta(c, m.theta_count()) * a);
        }
        out
    }

    /// Graded product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let s = monomial_sign(m1.theta as u16, m2.theta as u16);
                if s == 0.0 {
                    continue;
                }
                let m = Monomial {
                    x: m1.x + m2.x,
                    t: m1.t + m2.t,
                    phi: m1.phi + m2.phi,
                    theta: m1.theta | m2.theta,
                };
                let c = &pass_theta(c1, m2.theta_count()) * c2;
                out.add_term(m, c.scale(s));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::real(self.n, 1.0);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative; odd derivatives act from the left.
    pub fn deriv(&self, v: Var) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            match v {
                Var::X | Var::T => {
                    let e = if v == Var::X { m.x } else { m.t };
                    if e == Rational32::from_integer(0) {
                        continue;
                    }
                    let mut nm = *m;
                    let one = Rational32::from_integer(1);
                    if v == Var::X {
                        nm.x = e - one;
                    } else {
                        nm.t = e - one;
                    }
                    out.add_term(nm, c.scale(*e.numer() as f64 / *e.denom() as f64));
                }
                Var::Phi => {
                    if m.phi == 0 {
                        continue;
                    }
                    let nm = Monomial {
                        phi: m.phi - 1,
                        ..*m
                    };
                    out.add_term(nm, c.scale(m.phi as f64));
                }
                Var::Theta1 | Var::Theta2 => {
                    let bit = if v == Var::Theta1 { THETA1 } else { THETA2 };
                    if m.theta & bit == 0 {
                        continue;
                    }
                    // Number of θ's standing before the removed one.
                    let before = (m.theta & (bit - 1)).count_ones();
                    let sign = if before % 2 == 0 { 1.0 } else { -1.0 };
                    let nm = Monomial {
                        theta: m.theta & !bit,
                        ..*m
                    };
                    out.add_term(nm, c.scale(sign));
                }
            }
        }
        out
    }

    /// Simultaneous substitution of variables by polynomials.
    ///
    /// Even variables must be replaced by even polynomials and θ's by odd
    /// ones. Non-integer exponents are only allowed when the replacement is a
    /// single θ-free term with positive body.
    pub fn substitute(&self, map: &Substitution) -> Result<Self> {
        for (v, p) in map.entries() {
            let want = if v.is_odd() {
                Parity::Odd
            } else {
                Parity::Even
            };
            let got = p.parity();
            if got != want && !p.is_zero() {
                return Err(Error::Parity(format!(
                    "substitution for {v:?} must be {want:?}, got {got:?}"
                )));
            }
        }
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let mut acc = Self::real(self.n, 1.0);
            acc = acc.mul(&self.power_of(map, Var::X, m.x)?);
            acc = acc.mul(&self.power_of(map, Var::T, m.t)?);
            acc = acc.mul(&self.power_of(map, Var::Phi, Rational32::from_integer(m.phi as i32))?);
            if m.theta & THETA1 != 0 {
                acc = acc.mul(&map.image(self.n, Var::Theta1));
            }
            if m.theta & THETA2 != 0 {
                acc = acc.mul(&map.image(self.n, Var::Theta2));
            }
            out = out.add(&acc.mul_constant_right(c));
        }
        Ok(out)
    }

    fn power_of(&self, map: &Substitution, v: Var, e: Rational32) -> Result<Self> {
        if e == Rational32::from_integer(0) {
            return Ok(Self::real(self.n, 1.0));
        }
        let image = map.image(self.n, v);
        if e.is_integer() && e.to_integer() > 0 {
            return Ok(image.pow(e.to_integer() as u32));
        }
        // Fractional or negative power of a single even monomial.
        let mut it = image.terms.iter();
        match (it.next(), it.next()) {
            (Some((m, c)), None) if m.theta == 0 && m.phi == 0 => {
                let ef = *e.numer() as f64 / *e.denom() as f64;
                let cp = c.powf(ef)?;
                Ok(Self::term(
                    Monomial {
                        x: m.x * e,
                        t: m.t * e,
                        phi: 0,
                        theta: 0,
                    },
                    cp,
                ))
            }
            _ => Err(Error::Domain(format!(
                "power {e} of a non-monomial substitution for {v:?}"
            ))),
        }
    }

    /// Evaluates at real `(x, t)` (and `Φ` if present), keeping θ.
    pub fn evaluate(&self, x: f64, t: f64, phi: Option<&Supernumber>) -> Result<ThetaExpansion> {
        let mut out = ThetaExpansion::zero(self.n);
        for (m, c) in &self.terms {
            let f = real_power(x, m.x)? * real_power(t, m.t)?;
            let mut v = c.scale(f);
            if m.phi > 0 {
                let p = phi.ok_or_else(|| {
                    Error::Configuration("polynomial depends on Φ but no value given".into())
                })?;
                for _ in 0..m.phi {
                    v = &v * p;
                }
            }
            let slot = &mut out.0[m.theta as usize];
            *slot = &*slot + &v;
        }
        Ok(out)
    }

    /// Taylor expansion about `(x0, t0)` in local offsets, truncated at total
    /// degree `order`. In the result `x` and `t` denote `x − x0` and `t − t0`.
    pub fn localize(&self, x0: f64, t0: f64, order: u32) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let xs = binomial_series(x0, m.x, order)?;
            let ts = binomial_series(t0, m.t, order)?;
            for (i, a) in xs.iter().enumerate() {
                for (j, b) in ts.iter().enumerate().take(order as usize + 1 - i) {
                    let f = a * b;
                    if f == 0.0 {
                        continue;
                    }
                    let nm = Monomial {
                        x: Rational32::from_integer(i as i32),
                        t: Rational32::from_integer(j as i32),
                        ..*m
                    };
                    out.add_term(nm, c.scale(f));
                }
            }
        }
        Ok(out)
    }

    /// Drops terms of integer spatial degree above `order`.
    pub fn truncate(&self, order: u32) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if m.spatial_degree().is_none_or(|d| d <= order) {
                out.terms.insert(*m, c.clone());
            }
        }
        out
    }

    /// Product truncated at spatial degree `order`.
    pub fn mul_truncated(&self, other: &Self, order: u32) -> Self {
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = Monomial {
                    x: m1.x + m2.x,
                    t: m1.t + m2.t,
                    phi: m1.phi + m2.phi,
                    theta: m1.theta | m2.theta,
                };
                if m.spatial_degree().is_some_and(|d| d > order) {
                    continue;
                }
                let s = monomial_sign(m1.theta as u16, m2.theta as u16);
                if s == 0.0 {
                    continue;
                }
                let c = &pass_theta(c1, m2.theta_count()) * c2;
                out.add_term(m, c.scale(s));
            }
        }
        out
    }

    /// Real body of the constant term.
    pub fn constant_body(&self) -> f64 {
        self.terms
            .get(&Monomial::ONE)
            .map(Supernumber::body)
            .unwrap_or(0.0)
    }

    /// `Σ_k (self − center)^k · coeffs[k]`, truncated at spatial degree
    /// `order`. The shift must be nilpotent up to truncation, i.e. `center`
    /// is the body of the constant term.
    pub fn compose_taylor(&self, center: f64, coeffs: &[Supernumber], order: u32) -> Self {
        let n = self.n;
        let h = self.sub(&Self::real(n, center));
        let mut out = Self::zero(n);
        let mut power = Self::real(n, 1.0);
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 {
                power = power.mul_truncated(&h, order);
                if power.is_zero() {
                    break;
                }
            }
            out = out.add(&power.mul_constant_right(c));
        }
        out
    }

    /// Length of Taylor expansion that exhausts the nilpotent shift of a
    /// jet truncated at `order`.
    pub fn nilpotency_bound(&self, order: u32) -> usize {
        order as usize + 2 + self.n + 1
    }

    /// `f(self)` for an even jet, expanded about the body of its constant.
    pub fn apply_analytic(&self, f: AnalyticFn, order: u32) -> Result<Self> {
        if matches!(self.parity(), Parity::Odd | Parity::Mixed) {
            return Err(Error::Parity(format!("{f:?} of a non-even polynomial")));
        }
        let b = self.constant_body();
        let k = self.nilpotency_bound(order);
        let real = f.taylor(b, k, false)?;
        if !real.iter().all(|c| c.is_finite()) {
            return Err(Error::Domain(format!("{f:?}({b}) is not finite")));
        }
        let coeffs: Vec<Supernumber> = real
            .iter()
            .map(|&c| Supernumber::scalar(self.n, c))
            .collect();
        Ok(self.compose_taylor(b, &coeffs, order))
    }

    /// Substitution of local jets, truncated at spatial degree `order`.
    /// Every image must be a polynomial with integer exponents.
    pub fn substitute_truncated(&self, map: &Substitution, order: u32) -> Result<Self> {
        let n = self.n;
        let image = |v: Var| map.image(n, v);
        let xs = image(Var::X);
        let ts = image(Var::T);
        let (t1, t2) = (image(Var::Theta1), image(Var::Theta2));
        for (v, p) in [(Var::Theta1, &t1), (Var::Theta2, &t2)] {
            if !p.is_zero() && p.parity() != Parity::Odd {
                return Err(Error::Parity(format!("substitution for {v:?} must be odd")));
            }
        }
        for (v, p) in [(Var::X, &xs), (Var::T, &ts)] {
            if !p.is_zero() && p.parity() != Parity::Even {
                return Err(Error::Parity(format!(
                    "substitution for {v:?} must be even"
                )));
            }
        }
        let mut xp: Vec<Self> = vec![Self::real(n, 1.0)];
        let mut tp: Vec<Self> = vec![Self::real(n, 1.0)];
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            if m.phi != 0
                || !m.x.is_integer()
                || !m.t.is_integer()
                || m.x < 0.into()
                || m.t < 0.into()
            {
                return Err(Error::Domain(
                    "truncated substitution needs a local jet".into(),
                ));
            }
            let (i, j) = (m.x.to_integer() as usize, m.t.to_integer() as usize);
            while xp.len() <= i {
                let next = xp.last().unwrap().mul_truncated(&xs, order);
                xp.push(next);
            }
            while tp.len() <= j {
                let next = tp.last().unwrap().mul_truncated(&ts, order);
                tp.push(next);
            }
            let mut acc = xp[i].mul_truncated(&tp[j], order);
            if m.theta & THETA1 != 0 {
                acc = acc.mul_truncated(&t1, order);
            }
            if m.theta & THETA2 != 0 {
                acc = acc.mul_truncated(&t2, order);
            }
            out = out.add(&acc.mul_constant_right(c));
        }
        Ok(out)
    }

    /// Coefficient of `θ^mask` in the θ-expansion, as a θ-free polynomial.
    pub fn theta_component(&self, mask: u8) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if m.theta == mask {
                out.terms.insert(Monomial { theta: 0, ..*m }, c.clone());
            }
        }
        out
    }

    /// Coefficient written in coefficient-left form, `coeff · θ^m`.
    fn left_coefficient(m: &Monomial, c: &Supernumber) -> Supernumber {
        pass_theta(c, m.theta_count())
    }
}

fn real_power(v: f64, e: Rational32) -> Result<f64> {
    if e.is_integer() {
        return Ok(v.powi(e.to_integer()));
    }
    if v <= 0.0 {
        return Err(Error::Domain(format!(
            "non-integer power {e} of non-positive value {v}"
        )));
    }
    Ok(v.powf(*e.numer() as f64 / *e.denom() as f64))
}

/// Coefficients of `(v0 + h)^e` in powers of `h` up to `order`.
fn binomial_series(v0: f64, e: Rational32, order: u32) -> Result<Vec<f64>> {
    let ef = *e.numer() as f64 / *e.denom() as f64;
    let natural = e.is_integer() && e.to_integer() >= 0;
    if !natural && v0 <= 0.0 && !(e.is_integer() && v0 != 0.0) {
        return Err(Error::Domain(format!("cannot expand power {e} about {v0}")));
    }
    let mut out = Vec::with_capacity(order as usize + 1);
    let mut binom = 1.0;
    for k in 0..=order {
        if k > 0 {
            binom *= (ef - (k as f64 - 1.0)) / k as f64;
        }
        if natural && k as i32 > e.to_integer() {
            break;
        }
        let p = ef - k as f64;
        let base = if natural {
            v0.powi(p as i32)
        } else {
            v0.powf(p)
        };
        out.push(binom * base);
    }
    Ok(out)
}

/// Variable → polynomial map; unmapped variables stay themselves.
#[derive(Debug, Clone, Default)]
pub struct Substitution {
    map: BTreeMap<Var, SuperPolynomial>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, p: SuperPolynomial) -> Self {
        self.map.insert(v, p);
        self
    }

    pub fn get(&self, v: Var) -> Option<&SuperPolynomial> {
        self.map.get(&v)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Var, &SuperPolynomial)> {
        self.map.iter().map(|(v, p)| (*v, p))
    }

    pub fn image(&self, n: usize, v: Var) -> SuperPolynomial {
        self.map
            .get(&v)
            .cloned()
            .unwrap_or_else(|| SuperPolynomial::var(n, v))
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Substitution, n: usize) -> Result<Substitution> {
        let mut out = Substitution::new();
        for v in Var::ALL {
            out.map.insert(v, other.image(n, v).substitute(self)?);
        }
        Ok(out)
    }
}

pub fn sp_mul(p: &SuperPolynomial, q: &SuperPolynomial) -> SuperPolynomial {
    p.mul(q)
}

pub fn sp_deriv(p: &SuperPolynomial, v: Var) -> SuperPolynomial {
    p.deriv(v)
}

pub fn sp_substitute(p: &SuperPolynomial, map: &Substitution) -> Result<SuperPolynomial> {
    p.substitute(map)
}

fn fmt_exp(f: &mut fmt::Formatter<'_>, name: &str, e: Rational32) -> fmt::Result {
    if e == Rational32::from_integer(0) {
        Ok(())
    } else if e == Rational32::from_integer(1) {
        write!(f, " {name}")
    } else {
        write!(f, " {name}^{e}")
    }
}

impl fmt::Display for SuperPolynomial {
    /// Terms as `coeff·x^a t^b θ1 θ2` with the coefficient moved to the left.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·", Self::left_coefficient(m, c))?;
            if m.spatial_degree() == Some(0) && m.phi == 0 && m.theta == 0 {
                write!(f, "1")?;
            }
            fmt_exp(f, "x", m.x)?;
            fmt_exp(f, "t", m.t)?;
            fmt_exp(f, "Φ", Rational32::from_integer(m.phi as i32))?;
            if m.theta & THETA1 != 0 {
                write!(f, " θ1")?;
            }
            if m.theta & THETA2 != 0 {
                write!(f, " θ2")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: usize = 4;

    fn xi(i: usize) -> Supernumber {
        Supernumber::generator(N, i)
    }
    fn v(var: Var) -> SuperPolynomial {
        SuperPolynomial::var(N, var)
    }
    fn c(p: &Supernumber) -> SuperPolynomial {
        SuperPolynomial::constant(p.clone())
    }

    #[test]
    fn theta_products() {
        let t21 = v(Var::Theta2).mul(&v(Var::Theta1));
        let t12 = v(Var::Theta1).mul(&v(Var::Theta2));
        assert_eq!(t21, t12.neg());
        let a = v(Var::X).add(&v(Var::Theta1));
        let b = v(Var::X).sub(&v(Var::Theta1));
        assert_eq!(a.mul(&b), v(Var::X).pow(2));
        let p = c(&xi(0)).mul(&v(Var::Theta1));
        let q = c(&xi(0)).mul(&v(Var::Theta2));
        assert!(p.mul(&q).is_zero());
    }

    #[test]
    fn odd_coefficient_passes_theta() {
        // ξ₁ θ₁ = −θ₁ ξ₁
        let p = c(&xi(0)).mul(&v(Var::Theta1));
        let expect = SuperPolynomial::term(Monomial::theta(THETA1), -&xi(0));
        assert_eq!(p, expect);
        assert_eq!(p, v(Var::Theta1).mul_constant_right(&xi(0)).neg());
        assert_eq!(v(Var::Theta1).mul_constant_left(&xi(0)), p);
    }

    #[test]
    fn odd_derivatives() {
        let t12 = v(Var::Theta1).mul(&v(Var::Theta2));
        assert_eq!(sp_deriv(&t12, Var::Theta1), v(Var::Theta2));
        assert_eq!(sp_deriv(&t12, Var::Theta2), v(Var::Theta1).neg());
        let p = v(Var::X).pow(2).mul(&v(Var::Theta1));
        assert_eq!(
            sp_deriv(&p, Var::X),
            v(Var::X).mul(&v(Var::Theta1)).scale(2.0)
        );
        // ∂θ₁(ξ₁θ₁) = −ξ₁ since ξ₁ is odd.
        let q = c(&xi(0)).mul(&v(Var::Theta1));
        assert_eq!(q.deriv(Var::Theta1), c(&xi(0)).neg());
    }

    #[test]
    fn substitution_of_a_supersymmetry_flow() {
        // p = xθ₁ under x → x − ξ₁θ₁, θ₁ → θ₁ + ξ₁:
        // (x − ξ₁θ₁)(θ₁ + ξ₁) = xθ₁ + xξ₁ − ξ₁θ₁ξ₁ = xθ₁ + xξ₁ − θ₁ξ₁ξ₁ = xθ₁ + xξ₁.
        let p = v(Var::X).mul(&v(Var::Theta1));
        let map = Substitution::new()
            .with(Var::X, v(Var::X).sub(&c(&xi(0)).mul(&v(Var::Theta1))))
            .with(Var::Theta1, v(Var::Theta1).add(&c(&xi(0))));
        let got = p.substitute(&map).unwrap();
        let expect = p.add(&v(Var::X).mul(&c(&xi(0))));
        assert_eq!(got, expect);
        // t is untouched.
        assert_eq!(v(Var::T).substitute(&map).unwrap(), v(Var::T));
    }

    #[test]
    fn flow_and_inverse_cancel() {
        let fwd = Substitution::new().with(Var::Theta1, v(Var::Theta1).add(&c(&xi(0))));
        let back = Substitution::new().with(Var::Theta1, v(Var::Theta1).sub(&c(&xi(0))));
        let p = v(Var::Theta1);
        assert_eq!(p.substitute(&fwd).unwrap().substitute(&back).unwrap(), p);
    }

    #[test]
    fn substitution_parity_is_checked() {
        let bad = Substitution::new().with(Var::X, v(Var::Theta1));
        assert!(matches!(v(Var::X).substitute(&bad), Err(Error::Parity(_))));
        let bad = Substitution::new().with(Var::Theta1, v(Var::X));
        assert!(matches!(
            v(Var::Theta1).substitute(&bad),
            Err(Error::Parity(_))
        ));
    }

    #[test]
    fn half_integer_powers() {
        let half = Rational32::new(1, 2);
        let p = SuperPolynomial::term(
            Monomial {
                t: half,
                ..Monomial::theta(THETA1)
            },
            Supernumber::one(N),
        );
        // ∂t t^{1/2} θ₁ = ½ t^{-1/2} θ₁
        let d = p.deriv(Var::T);
        let e = d.evaluate(1.0, 4.0, None).unwrap();
        assert!((e.component(THETA1).body() - 0.25).abs() < 1e-15);
        let scale = Substitution::new().with(Var::T, v(Var::T).scale(4.0));
        let q = p.substitute(&scale).unwrap();
        assert_eq!(q, p.scale(2.0));
    }

    #[test]
    fn localize_expands_around_point() {
        let p = v(Var::X).pow(3).mul(&v(Var::T));
        let loc = p.localize(2.0, 3.0, 4).unwrap();
        // back at the point the value is x0³ t0
        let e = loc.evaluate(0.0, 0.0, None).unwrap();
        assert_eq!(e.component(0).body(), 24.0);
        let e = loc.evaluate(0.5, -1.0, None).unwrap();
        assert!((e.component(0).body() - 2.5f64.powi(3) * 2.0).abs() < 1e-12);
    }

    #[test]
    fn display_uses_coefficient_left_form() {
        let p = c(&xi(0)).mul(&v(Var::Theta1));
        assert_eq!(p.to_string(), "[[1,1.0]]· θ1");
    }
}
