//! Superfield component calculus.
//!
//! A superfield is queried through local jets: `jet(p, k)` returns the Taylor
//! polynomial of `Φ` about `p` in the offsets `(x − x₀, t − t₀)`, truncated
//! at total degree `k`, with the θ-dependence kept exactly. The covariant
//! derivatives and supersymmetry operators then act as polynomial operators
//! on the jet.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{AnalyticFn, Parity, Supernumber};
use crate::superspace::{
    Monomial, Substitution, SuperPolynomial, ThetaExpansion, Var, THETA1, THETA2,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldPoint {
    pub x: f64,
    pub t: f64,
}

impl FieldPoint {
    pub fn new(x: f64, t: f64) -> Self {
        FieldPoint { x, t }
    }
}

/// Field on superspace, accessed through local jets.
pub trait Superfield: Send + Sync {
    fn generators(&self) -> usize;

    /// Taylor polynomial about `p` in local offsets, truncated at total
    /// spatial degree `order`.
    fn jet(&self, p: FieldPoint, order: u32) -> Result<SuperPolynomial>;

    /// Value at `p` as a θ-expansion.
    fn value(&self, p: FieldPoint) -> Result<ThetaExpansion> {
        self.jet(p, 0)?.evaluate(0.0, 0.0, None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativeScheme {
    Analytic,
    FiniteDifference,
}

/// `∂x^i ∂t^j` of a component at `(x, t)`.
pub type PartialFn = Arc<dyn Fn(f64, f64, u32, u32) -> Supernumber + Send + Sync>;
/// Plain component values; derivatives by finite differences.
pub type ValueFn = Arc<dyn Fn(f64, f64) -> Supernumber + Send + Sync>;

#[derive(Clone)]
pub enum Component {
    Analytic(PartialFn),
    Sampled(ValueFn),
}

const FD_STEPS: [f64; 4] = [0.0, 1e-5, 1e-3, 1e-2];

fn stencil(order: u32) -> &'static [(i32, f64)] {
    match order {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        _ => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
    }
}

fn central_difference(f: &ValueFn, x: f64, t: f64, i: u32, j: u32, h: f64) -> Supernumber {
    let mut acc = Supernumber::zero(f(x, t).generators());
    for &(a, wa) in stencil(i) {
        for &(b, wb) in stencil(j) {
            let v = f(x + a as f64 * h, t + b as f64 * h);
            acc = &acc + &v.scale(wa * wb);
        }
    }
    acc.scale(h.powi(-((i + j) as i32)))
}

/// Central differences with one Richardson step.
pub fn fd_partial(f: &ValueFn, x: f64, t: f64, i: u32, j: u32) -> Result<Supernumber> {
    if i > 3 || j > 3 || i + j > 3 {
        return Err(Error::Numerical(format!(
            "finite differences support total order ≤ 3, asked for ({i},{j})"
        )));
    }
    if i + j == 0 {
        return Ok(f(x, t));
    }
    let h = FD_STEPS[(i + j) as usize];
    let coarse = central_difference(f, x, t, i, j, h);
    let fine = central_difference(f, x, t, i, j, h / 2.0);
    let r = (&fine.scale(4.0) - &coarse).scale(1.0 / 3.0);
    if !r.is_finite() {
        return Err(Error::Numerical(format!(
            "non-finite difference at ({x}, {t})"
        )));
    }
    Ok(r)
}

impl Component {
    pub fn partial(&self, x: f64, t: f64, i: u32, j: u32) -> Result<Supernumber> {
        match self {
            Component::Analytic(f) => Ok(f(x, t, i, j)),
            Component::Sampled(f) => fd_partial(f, x, t, i, j),
        }
    }
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// `Φ = a₀ + θ₁a₁ + θ₂a₂ + θ₁θ₂a₁₂` from four component functions.
#[derive(Clone)]
pub struct ComponentSuperfield {
    n: usize,
    components: [Component; 4],
}

impl ComponentSuperfield {
    pub fn new(n: usize, components: [Component; 4]) -> Self {
        ComponentSuperfield { n, components }
    }

    pub fn analytic(n: usize, parts: [PartialFn; 4]) -> Self {
        Self::new(n, parts.map(Component::Analytic))
    }

    pub fn sampled(n: usize, values: [ValueFn; 4]) -> Self {
        Self::new(n, values.map(Component::Sampled))
    }

    pub fn scheme(&self) -> DerivativeScheme {
        if self
            .components
            .iter()
            .all(|c| matches!(c, Component::Analytic(_)))
        {
            DerivativeScheme::Analytic
        } else {
            DerivativeScheme::FiniteDifference
        }
    }
}

impl Superfield for ComponentSuperfield {
    fn generators(&self) -> usize {
        self.n
    }

    fn jet(&self, p: FieldPoint, order: u32) -> Result<SuperPolynomial> {
        let mut jet = SuperPolynomial::zero(self.n);
        for (mask, comp) in self.components.iter().enumerate() {
            let want = if mask == 1 || mask == 2 {
                Parity::Odd
            } else {
                Parity::Even
            };
            for i in 0..=order {
                for j in 0..=(order - i) {
                    let d = comp.partial(p.x, p.t, i, j)?;
                    if d.generators() != self.n {
                        return Err(Error::Configuration(
                            "component generator count differs from the field".into(),
                        ));
                    }
                    if !d.is_zero() && d.parity() != want {
                        return Err(Error::Parity(format!(
                            "component θ-mask {mask} must be {want:?}, got {:?}",
                            d.parity()
                        )));
                    }
                    let m = Monomial::new(i as i32, j as i32, mask as u8);
                    jet.add_term(m, d.scale(1.0 / (factorial(i) * factorial(j))));
                }
            }
        }
        Ok(jet)
    }
}

/// Superfield given by a global polynomial in `(x, t, θ)`.
#[derive(Clone, Debug)]
pub struct PolynomialSuperfield(pub SuperPolynomial);

impl Superfield for PolynomialSuperfield {
    fn generators(&self) -> usize {
        self.0.generators()
    }

    fn jet(&self, p: FieldPoint, order: u32) -> Result<SuperPolynomial> {
        Ok(self.0.localize(p.x, p.t, order)?.truncate(order))
    }
}

/// `Φ̃(x, t, θ) = Φ(X(x,t,θ), T(x,t,θ), Θ(x,t,θ))` for a coordinate map
/// given as global polynomials.
#[derive(Clone)]
pub struct PulledBackField {
    inner: Arc<dyn Superfield>,
    map: Substitution,
    extra: u32,
}

impl PulledBackField {
    pub fn new(inner: Arc<dyn Superfield>, map: Substitution) -> Self {
        PulledBackField {
            inner,
            map,
            extra: 2,
        }
    }
}

impl Superfield for PulledBackField {
    fn generators(&self) -> usize {
        self.inner.generators()
    }

    fn jet(&self, p: FieldPoint, order: u32) -> Result<SuperPolynomial> {
        let n = self.generators();
        let local = |v: Var| -> Result<SuperPolynomial> {
            Ok(self
                .map
                .image(n, v)
                .localize(p.x, p.t, order)?
                .truncate(order))
        };
        let xl = local(Var::X)?;
        let tl = local(Var::T)?;
        let (x0, t0) = (xl.constant_body(), tl.constant_body());
        let inner = self
            .inner
            .jet(FieldPoint::new(x0, t0), order + self.extra)?;
        let sub = Substitution::new()
            .with(Var::X, xl.sub(&SuperPolynomial::real(n, x0)))
            .with(Var::T, tl.sub(&SuperPolynomial::real(n, t0)))
            .with(Var::Theta1, local(Var::Theta1)?)
            .with(Var::Theta2, local(Var::Theta2)?);
        inner.substitute_truncated(&sub, order)
    }
}

/// The odd operators of superspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OddOperator {
    Dx,
    Dt,
    Qx,
    Qt,
}

impl OddOperator {
    pub const ALL: [OddOperator; 4] = [
        OddOperator::Dx,
        OddOperator::Dt,
        OddOperator::Qx,
        OddOperator::Qt,
    ];

    /// `(θ-variable, even variable, sign)` for `∂θ + sign·θ∂`.
    fn parts(self) -> (Var, Var, f64) {
        match self {
            OddOperator::Dx => (Var::Theta1, Var::X, 1.0),
            OddOperator::Dt => (Var::Theta2, Var::T, -1.0),
            OddOperator::Qx => (Var::Theta1, Var::X, -1.0),
            OddOperator::Qt => (Var::Theta2, Var::T, 1.0),
        }
    }

    /// Applies the operator to a polynomial (global or jet).
    pub fn apply(self, p: &SuperPolynomial) -> SuperPolynomial {
        let (th, ev, s) = self.parts();
        let n = p.generators();
        let shift = SuperPolynomial::var(n, th).mul(&p.deriv(ev)).scale(s);
        p.deriv(th).add(&shift)
    }
}

/// Terms of a jet at the expansion point (offsets zero).
pub fn at_origin(p: &SuperPolynomial) -> SuperPolynomial {
    p.truncate(0)
}

fn odd_operator_at(
    phi: &dyn Superfield,
    pt: FieldPoint,
    op: OddOperator,
) -> Result<ThetaExpansion> {
    let jet = phi.jet(pt, 1)?;
    op.apply(&jet).evaluate(0.0, 0.0, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CovariantDerivative {
    Dx,
    Dt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupersymmetryOperator {
    Qx,
    Qt,
}

pub fn apply_d(
    phi: &dyn Superfield,
    pt: FieldPoint,
    which: CovariantDerivative,
) -> Result<ThetaExpansion> {
    let op = match which {
        CovariantDerivative::Dx => OddOperator::Dx,
        CovariantDerivative::Dt => OddOperator::Dt,
    };
    odd_operator_at(phi, pt, op)
}

pub fn apply_q(
    phi: &dyn Superfield,
    pt: FieldPoint,
    which: SupersymmetryOperator,
) -> Result<ThetaExpansion> {
    let op = match which {
        SupersymmetryOperator::Qx => OddOperator::Qx,
        SupersymmetryOperator::Qt => OddOperator::Qt,
    };
    odd_operator_at(phi, pt, op)
}

/// `sinh(α + τ₁c₁ + τ₂c₂ + τ₁τ₂c₁₂)` in the same basis.
pub fn sinh_superfield(c: [&Supernumber; 4]) -> Result<[Supernumber; 4]> {
    let [a, c1, c2, c12] = c;
    for (name, v, want) in [
        ("α", a, Parity::Even),
        ("c1", c1, Parity::Odd),
        ("c2", c2, Parity::Odd),
        ("c12", c12, Parity::Even),
    ] {
        if !v.is_zero() && v.parity() != want {
            return Err(Error::Parity(format!("{name} must be {want:?}")));
        }
    }
    let s = a.sinh()?;
    let ch = a.cosh()?;
    Ok([
        s.clone(),
        c1 * &ch,
        c2 * &ch,
        &(c12 * &ch) - &(&(c1 * c2) * &s),
    ])
}

fn jet_derivative(jet: &SuperPolynomial, mask: u8, i: i32, j: i32) -> Supernumber {
    jet.coeff(&Monomial::new(i, j, mask))
        .scale(factorial(i as u32) * factorial(j as u32))
}

/// θ-components of `D_x D_t Φ − sinh Φ`:
///
/// ```text
/// θ⁰   : −a₁₂ − sinh a₀
/// θ₁   : ∂ₓa₂ − a₁ cosh a₀
/// θ₂   : ∂ₜa₁ − a₂ cosh a₀
/// θ₁θ₂ : −∂ₓ∂ₜa₀ − a₁₂ cosh a₀ + a₁a₂ sinh a₀
/// ```
pub fn shg_residual(phi: &dyn Superfield, pt: FieldPoint) -> Result<ThetaExpansion> {
    let jet = phi.jet(pt, 2)?;
    shg_residual_from_jet(&jet)
}

pub fn shg_residual_from_jet(jet: &SuperPolynomial) -> Result<ThetaExpansion> {
    let a0 = jet_derivative(jet, 0, 0, 0);
    let a1 = jet_derivative(jet, THETA1, 0, 0);
    let a2 = jet_derivative(jet, THETA2, 0, 0);
    let a12 = jet_derivative(jet, THETA1 | THETA2, 0, 0);
    let a0_xt = jet_derivative(jet, 0, 1, 1);
    let a1_t = jet_derivative(jet, THETA1, 0, 1);
    let a2_x = jet_derivative(jet, THETA2, 1, 0);
    let s = a0.sinh()?;
    let c = a0.cosh()?;
    Ok(ThetaExpansion([
        &(-&a12) - &s,
        &a2_x - &(&a1 * &c),
        &a1_t - &(&a2 * &c),
        &(&(-&a0_xt) - &(&a12 * &c)) + &(&(&a1 * &a2) * &s),
    ]))
}

/// `D_x D_t Φ − sinh Φ` computed symbolically on the jet.
pub fn shg_residual_symbolic(jet: &SuperPolynomial) -> Result<ThetaExpansion> {
    let dd = OddOperator::Dx.apply(&OddOperator::Dt.apply(jet));
    let sinh = jet.apply_analytic(AnalyticFn::Sinh, 0)?;
    at_origin(&dd.sub(&sinh)).evaluate(0.0, 0.0, None)
}

/// Left side of the N = 2 super-KdV equation with parameter `a`.
pub fn skdv_residual(field: &dyn Superfield, pt: FieldPoint, a: f64) -> Result<ThetaExpansion> {
    let jet = field.jet(pt, 3)?;
    skdv_residual_from_jet(&jet, a)
}

pub fn skdv_residual_from_jet(jet: &SuperPolynomial, a: f64) -> Result<ThetaExpansion> {
    let n = jet.generators();
    // Derivative subscripts act left to right: A_{xθ₁θ₂} = ∂θ₂ ∂θ₁ ∂x A.
    let d = |vars: &[Var]| -> SuperPolynomial {
        let mut p = jet.clone();
        for v in vars {
            p = p.deriv(*v);
        }
        at_origin(&p)
    };
    use Var::{Theta1 as T1, Theta2 as T2, T, X};
    let aa = d(&[]);
    let at = d(&[T]);
    let ax = d(&[X]);
    let axx = d(&[X, X]);
    let axxx = d(&[X, X, X]);
    let axxt2 = d(&[X, X, T2]);
    let axxt1 = d(&[X, X, T1]);
    let axt1 = d(&[X, T1]);
    let axt2 = d(&[X, T2]);
    let at1t2 = d(&[T1, T2]);
    let axt1t2 = d(&[X, T1, T2]);
    let at1 = d(&[T1]);
    let at2 = d(&[T2]);
    let th1 = SuperPolynomial::var(n, T1);
    let th2 = SuperPolynomial::var(n, T2);
    let th12 = th1.mul(&th2);

    let mut r = at.add(&axxx);
    r = r.sub(&th12.mul(&ax).mul(&axx).scale(3.0 * a));
    r = r.sub(&th1.mul(&aa).mul(&axxt2).scale(a + 2.0));
    r = r.sub(
        &th12
            .mul(&aa)
            .mul(&axxx)
            .sub(&th2.mul(&aa).mul(&axxt1))
            .scale(a + 2.0),
    );
    r = r.add(&th2.mul(&ax).mul(&axt1).scale(2.0 * a + 1.0));
    r = r.add(&ax.mul(&at1t2).add(&aa.mul(&axt1t2)).scale(a + 2.0));
    r = r.sub(&th1.mul(&ax).mul(&axt2).scale(2.0 * a + 1.0));
    let bracket = th1
        .mul(&at2)
        .mul(&axx)
        .sub(&th2.mul(&at1).mul(&axx))
        .add(&at1.mul(&axt2))
        .sub(&at2.mul(&axt1));
    r = r.sub(&bracket.scale(a - 1.0));
    r = r.sub(&aa.mul(&aa).mul(&ax).scale(3.0 * a));
    r.evaluate(0.0, 0.0, None)
}

/// Uniform rectangular evaluation grid (endpoints included).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub nx: usize,
    pub nt: usize,
}

impl GridSpec {
    pub fn new(x: (f64, f64), t: (f64, f64), nx: usize, nt: usize) -> Self {
        GridSpec {
            x_min: x.0,
            x_max: x.1,
            t_min: t.0,
            t_max: t.1,
            nx,
            nt,
        }
    }

    /// The default 101 × 101 window.
    pub fn square(x: (f64, f64), t: (f64, f64)) -> Self {
        Self::new(x, t, 101, 101)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.nx >= 1
            && self.nt >= 1
            && [self.x_min, self.x_max, self.t_min, self.t_max]
                .iter()
                .all(|v| v.is_finite())
            && self.x_min <= self.x_max
            && self.t_min <= self.t_max;
        if ok {
            Ok(())
        } else {
            Err(Error::Configuration(format!("invalid grid {self:?}")))
        }
    }

    fn axis(min: f64, max: f64, n: usize) -> Vec<f64> {
        if n == 1 {
            return vec![min];
        }
        (0..n)
            .map(|i| min + (max - min) * i as f64 / (n - 1) as f64)
            .collect()
    }

    pub fn points(&self) -> Vec<FieldPoint> {
        let xs = Self::axis(self.x_min, self.x_max, self.nx);
        let ts = Self::axis(self.t_min, self.t_max, self.nt);
        ts.iter()
            .flat_map(|&t| xs.iter().map(move |&x| FieldPoint::new(x, t)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub theta_mask: u8,
    pub max_abs: f64,
    pub argmax_point: FieldPoint,
    /// Keyed by Grassmann bitmask.
    pub per_grassmann_monomial: BTreeMap<u16, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub grid: GridSpec,
    pub scheme: DerivativeScheme,
    pub components: Vec<ComponentReport>,
}

impl ResidualReport {
    pub fn max_abs(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.max_abs)
            .fold(0.0, f64::max)
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.components
            .iter()
            .all(|c| c.max_abs.is_finite() && c.max_abs <= tolerance)
    }

    pub fn component(&self, mask: u8) -> Option<&ComponentReport> {
        self.components.iter().find(|c| c.theta_mask == mask)
    }

    fn accumulate(
        grid: GridSpec,
        scheme: DerivativeScheme,
        samples: &[(FieldPoint, ThetaExpansion)],
    ) -> Self {
        let components = (0..4u8)
            .map(|mask| {
                let mut rep = ComponentReport {
                    theta_mask: mask,
                    max_abs: 0.0,
                    argmax_point: samples
                        .first()
                        .map(|s| s.0)
                        .unwrap_or(FieldPoint::new(0.0, 0.0)),
                    per_grassmann_monomial: BTreeMap::new(),
                };
                for (p, r) in samples {
                    let c = r.component(mask);
                    for &(m, v) in c.terms() {
                        let e = rep.per_grassmann_monomial.entry(m).or_insert(0.0);
                        *e = e.max(v.abs());
                        if v.abs() > rep.max_abs || v.is_nan() {
                            rep.max_abs = if v.is_nan() { f64::INFINITY } else { v.abs() };
                            rep.argmax_point = *p;
                        }
                    }
                }
                rep
            })
            .collect();
        ResidualReport {
            grid,
            scheme,
            components,
        }
    }
}

/// Evaluates `residual` at every grid point (in parallel) and reduces to
/// per-component, per-monomial maxima.
pub fn residual_report<F>(
    grid: GridSpec,
    scheme: DerivativeScheme,
    residual: F,
) -> Result<ResidualReport>
where
    F: Fn(FieldPoint) -> Result<ThetaExpansion> + Send + Sync,
{
    grid.validate()?;
    let samples: Vec<(FieldPoint, ThetaExpansion)> = grid
        .points()
        .into_par_iter()
        .map(|p| residual(p).map(|r| (p, r)))
        .collect::<Result<_>>()?;
    Ok(ResidualReport::accumulate(grid, scheme, &samples))
}

/// `shg_residual` over a grid.
pub fn shg_report(
    phi: &dyn Superfield,
    grid: GridSpec,
    scheme: DerivativeScheme,
) -> Result<ResidualReport> {
    residual_report(grid, scheme, |p| shg_residual(phi, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superspace::Monomial;

    const N: usize = 4;

    fn poly_field(p: SuperPolynomial) -> PolynomialSuperfield {
        PolynomialSuperfield(p)
    }

    fn theta_component_field(mask: u8, f: SuperPolynomial) -> SuperPolynomial {
        SuperPolynomial::term(Monomial::theta(mask), Supernumber::one(N)).mul(&f)
    }

    #[test]
    fn dx_of_constant_odd_component() {
        let phi = Supernumber::generator(N, 0);
        let p = theta_component_field(THETA1, SuperPolynomial::constant(phi.clone()));
        let r = apply_d(
            &poly_field(p),
            FieldPoint::new(0.3, 0.2),
            CovariantDerivative::Dx,
        )
        .unwrap();
        assert_eq!(r.component(0), &phi);
        assert!(r.component(THETA1).is_zero());
    }

    #[test]
    fn dx_dt_of_top_component() {
        // Φ = θ₁θ₂ F with F = x²t: θ⁰ part of DxDtΦ is −F.
        let n = N;
        let f = SuperPolynomial::var(n, Var::X)
            .pow(2)
            .mul(&SuperPolynomial::var(n, Var::T));
        let p = theta_component_field(THETA1 | THETA2, f);
        let jet = poly_field(p).jet(FieldPoint::new(1.5, 2.0), 2).unwrap();
        let dd = OddOperator::Dx.apply(&OddOperator::Dt.apply(&jet));
        let e = dd.evaluate(0.0, 0.0, None).unwrap();
        assert_eq!(e.component(0).body(), -4.5);
    }

    #[test]
    fn dt_of_constant_even_field() {
        let p = SuperPolynomial::real(N, 2.5);
        let r = apply_d(
            &poly_field(p),
            FieldPoint::new(0.0, 0.0),
            CovariantDerivative::Dt,
        )
        .unwrap();
        assert_eq!(r.max_abs(), 0.0);
    }

    #[test]
    fn sinh_superfield_examples() {
        let z = Supernumber::zero(N);
        let eta = Supernumber::generator(N, 0);
        let lam = Supernumber::generator(N, 1);
        let r = sinh_superfield([&z, &eta, &z, &z]).unwrap();
        assert_eq!(r[0], z);
        assert_eq!(r[1], eta);
        let a = Supernumber::scalar(N, 0.4);
        let r = sinh_superfield([&a, &z, &z, &z]).unwrap();
        assert_eq!(r[0].body(), 0.4f64.sinh());
        let b = Supernumber::scalar(N, -0.2);
        let r = sinh_superfield([&a, &eta, &lam, &b]).unwrap();
        let expect12 = &b.scale(0.4f64.cosh()) - &(&eta * &lam).scale(0.4f64.sinh());
        assert!((&r[3] - &expect12).max_abs() < 1e-15);
        assert!(matches!(
            sinh_superfield([&eta, &z, &z, &z]),
            Err(Error::Parity(_))
        ));
    }

    #[test]
    fn shg_residual_examples() {
        let zero = poly_field(SuperPolynomial::zero(N));
        let r = shg_residual(&zero, FieldPoint::new(0.1, 0.2)).unwrap();
        assert_eq!(r.max_abs(), 0.0);
        let c = poly_field(SuperPolynomial::real(N, 0.7));
        let r = shg_residual(&c, FieldPoint::new(0.1, 0.2)).unwrap();
        assert_eq!(r.component(0).body(), -(0.7f64.sinh()));
    }

    #[test]
    fn finite_differences_match_analytic_partials() {
        let f: ValueFn = Arc::new(|x, t| Supernumber::scalar(N, (x * t).sin() + x.exp()));
        let x = 0.4;
        let t = 0.9;
        let d1 = fd_partial(&f, x, t, 1, 0).unwrap().body();
        assert!((d1 - (t * (x * t).cos() + x.exp())).abs() < 1e-9);
        let d11 = fd_partial(&f, x, t, 1, 1).unwrap().body();
        let exact = (x * t).cos() - x * t * (x * t).sin();
        assert!((d11 - exact).abs() < 1e-8);
        let d3 = fd_partial(&f, x, t, 3, 0).unwrap().body();
        let exact = -t.powi(3) * (x * t).cos() + x.exp();
        assert!((d3 - exact).abs() < 1e-6);
    }

    #[test]
    fn skdv_zero_and_constant() {
        let zero = poly_field(SuperPolynomial::zero(N));
        assert_eq!(
            skdv_residual(&zero, FieldPoint::new(0.0, 0.0), 1.3)
                .unwrap()
                .max_abs(),
            0.0
        );
        let c = poly_field(SuperPolynomial::real(N, 2.0));
        assert_eq!(
            skdv_residual(&c, FieldPoint::new(0.0, 0.0), -0.7)
                .unwrap()
                .max_abs(),
            0.0
        );
    }

    #[test]
    fn report_serializes() {
        let zero = poly_field(SuperPolynomial::zero(N));
        let rep = shg_report(
            &zero,
            GridSpec::new((0.0, 1.0), (0.0, 1.0), 3, 3),
            DerivativeScheme::Analytic,
        )
        .unwrap();
        assert!(rep.passes(1e-12));
        let s = serde_json::to_string(&rep).unwrap();
        assert!(s.contains("\"theta_mask\":3"));
        assert!(s.contains("\"scheme\":\"analytic\""));
    }

    #[test]
    fn hard_coded_residual_matches_symbolic_derivation() {
        let mut rng = crate::sampling::rng(7);
        for _ in 0..40 {
            let p = crate::sampling::polynomial(&mut rng, N, 3, false, 0.7);
            let jet = poly_field(p).jet(FieldPoint::new(0.3, -0.6), 2).unwrap();
            let hard = shg_residual_from_jet(&jet).unwrap();
            let sym = shg_residual_symbolic(&jet).unwrap();
            assert!(hard.sub(&sym).max_abs() < 1e-12, "{hard:?} vs {sym:?}");
        }
    }

    #[test]
    fn anticommutators_on_random_fields() {
        let mut rng = crate::sampling::rng(11);
        for _ in 0..20 {
            let p = crate::sampling::polynomial(&mut rng, N, 3, false, 0.5);
            let ac =
                |a: OddOperator, b: OddOperator| a.apply(&b.apply(&p)).add(&b.apply(&a.apply(&p)));
            let dx = p.deriv(Var::X);
            let dt = p.deriv(Var::T);
            assert_eq!(ac(OddOperator::Qx, OddOperator::Qx), dx.scale(-2.0));
            assert_eq!(ac(OddOperator::Qt, OddOperator::Qt), dt.scale(2.0));
            assert!(ac(OddOperator::Qx, OddOperator::Qt).max_abs_coeff() < 1e-12);
            assert!(ac(OddOperator::Dx, OddOperator::Dt).max_abs_coeff() < 1e-12);
            for d in [OddOperator::Dx, OddOperator::Dt] {
                for q in [OddOperator::Qx, OddOperator::Qt] {
                    assert!(ac(d, q).max_abs_coeff() < 1e-12);
                }
            }
        }
    }
}
