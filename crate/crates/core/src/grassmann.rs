//! Exact arithmetic in the finite real Grassmann ring `Λ = ∧[ξ₁, …, ξ_N]`.
//!
//! A [`Supernumber`] is stored as a sparse, sorted list of
//! `(generator-subset bitmask, coefficient)` pairs. Bit `i` of a mask stands
//! for the generator `ξ_{i+1}`; monomials are always written with their
//! generators in ascending order, so `ξ₂ξ₁` is stored as `−ξ₁ξ₂`.
//!
//! Transcendental functions of even elements are evaluated through the
//! finite Taylor series around the body, which terminates because the
//! soul is nilpotent.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Number of generators used when none is specified.
pub const DEFAULT_GENERATORS: usize = 4;

/// Largest supported number of generators (masks are 16-bit).
pub const MAX_GENERATORS: usize = 16;

/// Bodies with magnitude below this are treated as zero when inverting.
pub const BODY_TOLERANCE: f64 = 1e-12;

type Terms = SmallVec<[(u16, f64); 4]>;

/// Grade parity of a supernumber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    /// Parity of a homogeneous element of grade `grade`.
    pub fn of_grade(grade: u32) -> Parity {
        if grade.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `deg` in {0, 1}; `None` for mixed.
    pub fn degree(self) -> Option<u32> {
        match self {
            Parity::Even => Some(0),
            Parity::Odd => Some(1),
            Parity::Mixed => None,
        }
    }

    /// Parity of a product of homogeneous factors.
    pub fn combine(self, other: Parity) -> Parity {
        match (self.degree(), other.degree()) {
            (Some(a), Some(b)) => Parity::of_grade(a + b),
            _ => Parity::Mixed,
        }
    }
}

/// Sign picked up when the monomial `a` is multiplied by the monomial `b`
/// (both in ascending order) and the concatenation is sorted. Zero if the
/// monomials share a generator.
#[inline]
pub fn monomial_sign(a: u16, b: u16) -> f64 {
    if a & b != 0 {
        return 0.0;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += ((a as u32) >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Element of the real Grassmann ring with `n` generators.
#[derive(Clone, PartialEq)]
pub struct Supernumber {
    n: u8,
    terms: Terms,
}

impl Supernumber {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators");
        Supernumber {
            n: n as u8,
            terms: Terms::new(),
        }
    }

    pub fn scalar(n: usize, c: f64) -> Self {
        let mut s = Self::zero(n);
        if c != 0.0 {
            s.terms.push((0, c));
        }
        s
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, 1.0)
    }

    /// The generator `ξ_{index+1}` (zero-based index).
    pub fn generator(n: usize, index: usize) -> Self {
        assert!(
            index < n,
            "generator index {index} out of range for N = {n}"
        );
        Self::monomial(n, 1 << index, 1.0)
    }

    pub fn monomial(n: usize, mask: u16, c: f64) -> Self {
        let mut s = Self::zero(n);
        assert!(
            n >= 16 || (mask as u32) >> n == 0,
            "mask {mask:#b} uses generators beyond N = {n}"
        );
        if c != 0.0 {
            s.terms.push((mask, c));
        }
        s
    }

    /// Builds a supernumber from `(mask, coefficient)` pairs; duplicate masks
    /// are summed.
    pub fn from_terms<I: IntoIterator<Item = (u16, f64)>>(n: usize, terms: I) -> Result<Self> {
        if n > MAX_GENERATORS {
            return Err(Error::Configuration(format!(
                "{n} generators requested, at most {MAX_GENERATORS} supported"
            )));
        }
        let mut raw: SmallVec<[(u16, f64); 8]> = SmallVec::new();
        for (mask, c) in terms {
            if n < 16 && (mask as u32) >> n != 0 {
                return Err(Error::Configuration(format!(
                    "mask {mask} uses generators beyond N = {n}"
                )));
            }
            raw.push((mask, c));
        }
        Ok(Self::canonical(n as u8, raw))
    }

    fn canonical(n: u8, mut raw: SmallVec<[(u16, f64); 8]>) -> Self {
        raw.sort_unstable_by_key(|&(m, _)| m);
        let mut terms = Terms::new();
        for (m, c) in raw {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|&mut (_, c)| c != 0.0);
        Supernumber { n, terms }
    }

    pub fn generators(&self) -> usize {
        self.n as usize
    }

    /// Sorted `(mask, coefficient)` pairs with no zero coefficient.
    pub fn terms(&self) -> &[(u16, f64)] {
        &self.terms
    }

    pub fn coeff(&self, mask: u16) -> f64 {
        match self.terms.binary_search_by_key(&mask, |&(m, _)| m) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0.0,
        }
    }

    pub fn body(&self) -> f64 {
        self.coeff(0)
    }

    pub fn soul(&self) -> Self {
        Supernumber {
            n: self.n,
            terms: self
                .terms
                .iter()
                .copied()
                .filter(|&(m, _)| m != 0)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parity(&self) -> Parity {
        parity_of(self)
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 1)
    }

    fn filter(&self, keep: impl Fn(u16) -> bool) -> Self {
        Supernumber {
            n: self.n,
            terms: self
                .terms
                .iter()
                .copied()
                .filter(|&(m, _)| keep(m))
                .collect(),
        }
    }

    /// Largest absolute coefficient (0 for zero).
    pub fn max_abs(&self) -> f64 {
        self.terms.iter().fold(0.0, |acc, &(_, c)| acc.max(c.abs()))
    }

    /// Drops coefficients with `|c| <= tol`.
    pub fn prune(&self, tol: f64) -> Self {
        Supernumber {
            n: self.n,
            terms: self
                .terms
                .iter()
                .copied()
                .filter(|&(_, c)| c.abs() > tol)
                .collect(),
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        if k == 0.0 {
            return Self::zero(self.n as usize);
        }
        Supernumber {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|&(m, c)| (m, c * k))
                .filter(|&(_, c)| c != 0.0)
                .collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|&(_, c)| c.is_finite())
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::Configuration(format!(
                "generator count mismatch: {} vs {}",
                self.n, other.n
            )))
        } else {
            Ok(())
        }
    }

    fn merge(&self, other: &Self, sign: f64) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Terms::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                a[i - 1]
            } else if i >= a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, sign * b[j - 1].1)
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, a[i - 1].1 + sign * b[j - 1].1)
            };
            if next.1 != 0.0 {
                out.push(next);
            }
        }
        Supernumber {
            n: self.n,
            terms: out,
        }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.n as usize);
        }
        let mut raw: SmallVec<[(u16, f64); 8]> = SmallVec::new();
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let s = monomial_sign(ma, mb);
                if s != 0.0 {
                    raw.push((ma | mb, s * ca * cb));
                }
            }
        }
        Self::canonical(self.n, raw)
    }

    /// Literal form `[[mask, coeff], …]`.
    pub fn to_literal(&self) -> Vec<(u16, f64)> {
        self.terms.to_vec()
    }

    pub fn from_literal(n: usize, literal: &[(u16, f64)]) -> Result<Self> {
        Self::from_terms(n, literal.iter().copied())
    }

    /// Parses the JSON literal `[[mask, coeff], …]`.
    pub fn parse_literal(n: usize, text: &str) -> Result<Self> {
        let pairs: Vec<(u16, f64)> = serde_json::from_str(text)
            .map_err(|e| Error::Configuration(format!("bad supernumber literal {text:?}: {e}")))?;
        Self::from_literal(n, &pairs)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        gadd(self, other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        gmul(self, other)
    }

    pub fn inv(&self) -> Result<Self> {
        ginv(self)
    }

    pub fn sinh(&self) -> Result<Self> {
        gfunc(AnalyticFn::Sinh, self)
    }

    pub fn cosh(&self) -> Result<Self> {
        gfunc(AnalyticFn::Cosh, self)
    }

    pub fn tanh(&self) -> Result<Self> {
        gfunc(AnalyticFn::Tanh, self)
    }

    pub fn exp(&self) -> Result<Self> {
        gfunc(AnalyticFn::Exp, self)
    }

    pub fn sqrt(&self) -> Result<Self> {
        gfunc(AnalyticFn::Sqrt, self)
    }

    pub fn powf(&self, p: f64) -> Result<Self> {
        gfunc(AnalyticFn::Power(p), self)
    }
}

/// Coefficient-wise sum.
pub fn gadd(a: &Supernumber, b: &Supernumber) -> Result<Supernumber> {
    a.check_n(b)?;
    Ok(a.merge(b, 1.0))
}

/// Grassmann product.
pub fn gmul(a: &Supernumber, b: &Supernumber) -> Result<Supernumber> {
    a.check_n(b)?;
    Ok(a.product(b))
}

/// Even/Odd for homogeneous elements, Mixed otherwise; zero is Even.
pub fn parity_of(a: &Supernumber) -> Parity {
    let mut even = false;
    let mut odd = false;
    for &(m, _) in &a.terms {
        if m.count_ones() % 2 == 0 {
            even = true;
        } else {
            odd = true;
        }
    }
    match (even, odd) {
        (_, false) => Parity::Even,
        (false, true) => Parity::Odd,
        (true, true) => Parity::Mixed,
    }
}

/// Inverse through the terminating geometric series in `soul / body`.
pub fn ginv(a: &Supernumber) -> Result<Supernumber> {
    let body = a.body();
    if body.abs() < BODY_TOLERANCE {
        return Err(Error::NotInvertible(body));
    }
    let n = a.generators();
    let ratio = a.soul().scale(-1.0 / body);
    let mut sum = Supernumber::one(n);
    let mut power = Supernumber::one(n);
    for _ in 0..n {
        power = power.product(&ratio);
        if power.is_zero() {
            break;
        }
        sum = sum.merge(&power, 1.0);
    }
    Ok(sum.scale(1.0 / body))
}

/// Analytic functions that can be lifted to even supernumbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AnalyticFn {
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Sqrt,
    Power(f64),
}

impl AnalyticFn {
    /// Taylor coefficients `f^(k)(x) / k!` for `k = 0..=order`.
    pub fn taylor(self, x: f64, order: usize, soul_is_zero: bool) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(order + 1);
        let mut fact = 1.0;
        match self {
            AnalyticFn::Sinh | AnalyticFn::Cosh => {
                let (s, c) = (x.sinh(), x.cosh());
                let start_sinh = self == AnalyticFn::Sinh;
                for k in 0..=order {
                    if k > 0 {
                        fact *= k as f64;
                    }
                    let use_sinh = (k % 2 == 0) == start_sinh;
                    out.push(if use_sinh { s } else { c } / fact);
                }
            }
            AnalyticFn::Exp => {
                let e = x.exp();
                for k in 0..=order {
                    if k > 0 {
                        fact *= k as f64;
                    }
                    out.push(e / fact);
                }
            }
            AnalyticFn::Tanh => {
                // tanh = sinh / cosh as truncated series.
                let s = AnalyticFn::Sinh.taylor(x, order, soul_is_zero)?;
                let c = AnalyticFn::Cosh.taylor(x, order, soul_is_zero)?;
                for k in 0..=order {
                    let mut v = s[k];
                    for j in 1..=k {
                        v -= c[j] * out[k - j];
                    }
                    out.push(v / c[0]);
                }
            }
            AnalyticFn::Sqrt => return AnalyticFn::Power(0.5).taylor(x, order, soul_is_zero),
            AnalyticFn::Power(p) => {
                let integer = p.fract() == 0.0;
                if x < 0.0 && !integer {
                    return Err(Error::Domain(format!("power {p} of negative body {x}")));
                }
                if x == 0.0 {
                    // Only the value survives when there is no soul; otherwise
                    // derivatives of x^p at 0 are needed.
                    if !(integer && p >= 0.0) && !soul_is_zero {
                        return Err(Error::Domain(format!(
                            "power {p} is not analytic at zero body"
                        )));
                    }
                    if p < 0.0 {
                        return Err(Error::Domain(format!("power {p} of zero")));
                    }
                }
                let mut binom = 1.0;
                for k in 0..=order {
                    if k > 0 {
                        binom *= (p - (k as f64 - 1.0)) / k as f64;
                    }
                    let e = p - k as f64;
                    let xp = if x == 0.0 {
                        if e == 0.0 {
                            1.0
                        } else {
                            0.0
                        }
                    } else {
                        x.powf(e)
                    };
                    out.push(binom * xp);
                }
            }
        }
        Ok(out)
    }
}

/// `f(body) + Σ_k f^(k)(body) soul^k / k!` for an even supernumber.
pub fn gfunc(f: AnalyticFn, a: &Supernumber) -> Result<Supernumber> {
    match parity_of(a) {
        Parity::Even => {}
        p => {
            return Err(Error::Parity(format!(
                "{f:?} needs an even argument, got {p:?}"
            )))
        }
    }
    let n = a.generators();
    let soul = a.soul();
    let order = if soul.is_zero() { 0 } else { n / 2 };
    let coeffs = f.taylor(a.body(), order, soul.is_zero())?;
    if !coeffs.iter().all(|c| c.is_finite()) {
        return Err(Error::Domain(format!("{f:?}({}) is not finite", a.body())));
    }
    let mut sum = Supernumber::scalar(n, coeffs[0]);
    let mut power = Supernumber::one(n);
    for &c in coeffs.iter().skip(1) {
        power = power.product(&soul);
        if power.is_zero() {
            break;
        }
        sum = sum.merge(&power.scale(c), 1.0);
    }
    Ok(sum)
}

impl fmt::Debug for Supernumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Supernumber(N={}, {})", self.n, self)
    }
}

impl fmt::Display for Supernumber {
    /// Literal format `[[mask,coeff],…]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{m},{c:?}]")?;
        }
        write!(f, "]")
    }
}

// Operators panic on a generator-count mismatch; use `gadd`/`gmul` for the
// fallible forms.

impl Add for &Supernumber {
    type Output = Supernumber;
    fn add(self, rhs: &Supernumber) -> Supernumber {
        gadd(self, rhs).expect("supernumber addition")
    }
}

impl Sub for &Supernumber {
    type Output = Supernumber;
    fn sub(self, rhs: &Supernumber) -> Supernumber {
        self.check_n(rhs).expect("supernumber subtraction");
        self.merge(rhs, -1.0)
    }
}

impl Mul for &Supernumber {
    type Output = Supernumber;
    fn mul(self, rhs: &Supernumber) -> Supernumber {
        gmul(self, rhs).expect("supernumber multiplication")
    }
}

impl Mul<f64> for &Supernumber {
    type Output = Supernumber;
    fn mul(self, rhs: f64) -> Supernumber {
        self.scale(rhs)
    }
}

impl Neg for &Supernumber {
    type Output = Supernumber;
    fn neg(self) -> Supernumber {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Supernumber {
            type Output = Supernumber;
            fn $m(self, rhs: Supernumber) -> Supernumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Supernumber> for Supernumber {
            type Output = Supernumber;
            fn $m(self, rhs: &Supernumber) -> Supernumber {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Supernumber {
    type Output = Supernumber;
    fn neg(self) -> Supernumber {
        self.scale(-1.0)
    }
}

impl Serialize for Supernumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_literal().serialize(s)
    }
}

/// A literal deserialized without context lives in the default ring, or in a
/// larger one if its masks need more generators.
impl<'de> Deserialize<'de> for Supernumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(u16, f64)> = Vec::deserialize(d)?;
        let needed = pairs
            .iter()
            .map(|&(m, _)| 16 - m.leading_zeros() as usize)
            .max()
            .unwrap_or(0);
        Supernumber::from_literal(needed.max(DEFAULT_GENERATORS), &pairs)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi(i: usize) -> Supernumber {
        Supernumber::generator(4, i)
    }

    fn s(c: f64) -> Supernumber {
        Supernumber::scalar(4, c)
    }

    #[test]
    fn addition_cancels_and_accumulates() {
        let a = &s(1.0) + &xi(0);
        let b = &s(2.0) - &xi(0);
        assert_eq!(gadd(&a, &b).unwrap(), s(3.0));
        assert_eq!(&a + &Supernumber::zero(4), a);
        let x12 = &xi(0) * &xi(1);
        assert_eq!(&x12 + &x12, Supernumber::monomial(4, 0b11, 2.0));
    }

    #[test]
    fn mismatched_generator_count_is_a_configuration_error() {
        let a = Supernumber::one(4);
        let b = Supernumber::one(3);
        assert!(matches!(gadd(&a, &b), Err(Error::Configuration(_))));
        assert!(matches!(gmul(&a, &b), Err(Error::Configuration(_))));
    }

    #[test]
    fn products_anticommute() {
        assert_eq!(&xi(0) * &xi(1), Supernumber::monomial(4, 0b11, 1.0));
        assert_eq!(&xi(1) * &xi(0), Supernumber::monomial(4, 0b11, -1.0));
        assert!((&xi(2) * &xi(2)).is_zero());
        let x12 = &xi(0) * &xi(1);
        let p = &(&s(1.0) + &x12) * &(&s(1.0) - &x12);
        assert_eq!(p, s(1.0));
    }

    #[test]
    fn monomial_sign_counts_inversions() {
        // ξ₂ξ₃ · ξ₁ = ξ₁ξ₂ξ₃ after two transpositions.
        assert_eq!(monomial_sign(0b110, 0b001), 1.0);
        // ξ₃ · ξ₁ξ₂ = ξ₁ξ₂ξ₃ after two transpositions.
        assert_eq!(monomial_sign(0b100, 0b011), 1.0);
        // ξ₂ · ξ₁ξ₃ = −ξ₁ξ₂ξ₃.
        assert_eq!(monomial_sign(0b010, 0b101), -1.0);
        assert_eq!(monomial_sign(0b011, 0b010), 0.0);
    }

    #[test]
    fn parity_classification() {
        let x12 = &xi(0) * &xi(1);
        assert_eq!(parity_of(&(&s(3.0) + &x12)), Parity::Even);
        let x123 = &x12 * &xi(2);
        assert_eq!(parity_of(&(&xi(0) + &x123)), Parity::Odd);
        assert_eq!(parity_of(&(&s(1.0) + &xi(0))), Parity::Mixed);
        assert_eq!(parity_of(&Supernumber::zero(4)), Parity::Even);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(ginv(&s(2.0)).unwrap(), s(0.5));
        let x12 = &xi(0) * &xi(1);
        assert_eq!(ginv(&(&s(1.0) + &x12)).unwrap(), &s(1.0) - &x12);
        assert!(matches!(ginv(&x12), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn inverse_of_deep_soul() {
        // soul with soul² ≠ 0 needs the second-order term.
        let soul = &(&xi(0) * &xi(1)) + &(&xi(2) * &xi(3));
        let a = &s(3.0) + &soul;
        let inv = ginv(&a).unwrap();
        let prod = &a * &inv;
        assert!((&prod - &s(1.0)).max_abs() < 1e-15);
        assert!(inv.coeff(0b1111).abs() > 0.0);
    }

    #[test]
    fn function_examples() {
        let x12 = &xi(0) * &xi(1);
        assert_eq!(gfunc(AnalyticFn::Sinh, &x12).unwrap(), x12);
        assert_eq!(gfunc(AnalyticFn::Cosh, &x12).unwrap(), s(1.0));
        let e = std::f64::consts::E;
        let ex = gfunc(AnalyticFn::Exp, &(&s(1.0) + &x12)).unwrap();
        assert!((ex.body() - e).abs() < 1e-15);
        assert!((ex.coeff(0b11) - e).abs() < 1e-15);
    }

    #[test]
    fn function_errors() {
        assert!(matches!(
            gfunc(AnalyticFn::Sinh, &xi(0)),
            Err(Error::Parity(_))
        ));
        assert!(matches!(
            gfunc(AnalyticFn::Sinh, &(&s(1.0) + &xi(0))),
            Err(Error::Parity(_))
        ));
        assert!(matches!(
            gfunc(AnalyticFn::Sqrt, &s(-1.0)),
            Err(Error::Domain(_))
        ));
        let x12 = &xi(0) * &xi(1);
        assert!(matches!(
            gfunc(AnalyticFn::Sqrt, &x12),
            Err(Error::Domain(_))
        ));
        assert_eq!(gfunc(AnalyticFn::Sqrt, &s(0.0)).unwrap(), s(0.0));
    }

    #[test]
    fn sqrt_and_power_are_consistent() {
        let a = &s(2.0) + &(&(&xi(0) * &xi(1)) + &(&xi(2) * &xi(3)));
        let r = a.sqrt().unwrap();
        assert!((&(&r * &r) - &a).max_abs() < 1e-14);
        let cube = a.powf(3.0).unwrap();
        assert!((&cube - &(&(&a * &a) * &a)).max_abs() < 1e-13);
        let t = a.tanh().unwrap();
        let expect = &a.sinh().unwrap() * &a.cosh().unwrap().inv().unwrap();
        assert!((&t - &expect).max_abs() < 1e-14);
    }

    #[test]
    fn literal_round_trip() {
        let a = Supernumber::parse_literal(4, "[[0,1.0],[3,2.0]]").unwrap();
        assert_eq!(a, &s(1.0) + &Supernumber::monomial(4, 3, 2.0));
        assert_eq!(a.to_string(), "[[0,1.0],[3,2.0]]");
        let json = serde_json::to_string(&a).unwrap();
        let back: Supernumber = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(Supernumber::parse_literal(2, "[[4,1.0]]").is_err());
    }
}
