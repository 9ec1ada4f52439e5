//! IC-driven solvers for the reduced systems of S₁, S₄, S₈ and S₁₂.
//!
//! All four systems are integrated in the first-order state
//! `(α, α_σ, η, λ)` with `β = −sinh α`, directly from the reduced
//! equations. The state lives in the Grassmann ring, so nilpotent constants
//! and odd data propagate through every RK4 step.

use serde::{Deserialize, Serialize};

use crate::algebra::AnalyticRing;
use crate::error::{Error, Result};
use crate::grassmann::{monomial_sign, Parity, Supernumber};
use crate::special::{quadrature_with, real_roots, rk4_system, OdeSystem};
use crate::symalg::{SubalgebraId, SubalgebraParams};

use super::{
    central_difference, equations, DerivativeGrids, Diagnostics, ReducedSolution, SigmaGrid,
};

/// Tolerance on the odd constraints (`ηλ = C₀` and friends).
pub const CONSTRAINT_TOLERANCE: f64 = 1e-8;
/// `|α_σ|` below which a node counts as a turning point.
pub const TURNING_THRESHOLD: f64 = 1e-8;

/// Reduced system of one subalgebra in the state `(α, α_σ, η, λ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedSystem {
    pub subalgebra: SubalgebraId,
    pub epsilon: f64,
    pub mu: Supernumber,
    pub nu: Supernumber,
}

impl ReducedSystem {
    pub fn new(id: SubalgebraId, params: &SubalgebraParams) -> Result<Self> {
        use SubalgebraId::*;
        equations::require_reducible(id)?;
        if !matches!(id, S1 | S4 | S8 | S12) {
            return Err(Error::Configuration(format!(
                "{id} admits only the null solution; there is no system to integrate"
            )));
        }
        params.validate()?;
        Ok(ReducedSystem {
            subalgebra: id,
            epsilon: params.epsilon,
            mu: params.mu.clone(),
            nu: params.nu.clone(),
        })
    }

    pub fn for_solution(r: &ReducedSolution) -> Result<Self> {
        Self::new(r.subalgebra, &r.params())
    }

    /// `(α, η, λ, β)` from a state.
    pub fn slots<R: AnalyticRing>(&self, y: &[R]) -> Result<[R; 4]> {
        Ok([y[0].clone(), y[2].clone(), y[3].clone(), y[0].sinh()?.neg()])
    }
}

impl OdeSystem for ReducedSystem {
    fn dim(&self) -> usize {
        4
    }

    fn rhs<R: AnalyticRing>(&self, s: &R, y: &[R]) -> Result<Vec<R>> {
        use SubalgebraId::*;
        let eps = self.epsilon;
        let (a, a1, eta, lam) = (&y[0], &y[1], &y[2], &y[3]);
        let sh = a.sinh()?;
        let ch = a.cosh()?;
        // −sinh α cosh α − ηλ sinh α, the common part of the α equations
        let force = sh.mul(&ch).add(&eta.mul(lam).mul(&sh)).neg();
        Ok(match self.subalgebra {
            S1 => {
                let inv = s.recip()?;
                let a2 = a1.neg().sub(&force).mul(&inv);
                let eta1 = lam.mul(&ch).sub(&eta.scale(0.5)).mul(&inv);
                vec![a1.clone(), a2, eta1, eta.mul(&ch)]
            }
            S4 => vec![
                a1.clone(),
                force.scale(eps),
                lam.mul(&ch).scale(-eps),
                eta.mul(&ch),
            ],
            S8 => {
                let mu = a.constant(&self.mu);
                let eta1 = mu.mul(a1).add(&lam.mul(&ch)).neg();
                let a2 = force.sub(&mu.mul(&eta1)).scale(eps);
                vec![a1.clone(), a2, eta1, eta.mul(&ch).scale(eps)]
            }
            S12 => {
                let nu = a.constant(&self.nu);
                let lam1 = nu.mul(a1).sub(&eta.mul(&ch)).scale(eps);
                let a2 = force.sub(&nu.mul(&lam1)).scale(eps);
                vec![a1.clone(), a2, lam.mul(&ch), lam1]
            }
            other => unreachable!("no system for {other}"),
        })
    }
}

/// Odd initial data `(η(σ₀), λ(σ₀))`.
#[derive(Debug, Clone, PartialEq)]
pub enum OddInitial {
    /// S₄/S₁: factor the constraint value `C₀` (times `σ₀^{−1/2}` for S₁)
    /// as `η₀λ₀`; zero data when `C₀ = 0`. S₈/S₁₂: zero data.
    Auto,
    Explicit {
        eta: Supernumber,
        lambda: Supernumber,
    },
    /// Through a real function `f` with `f(σ₀) = f`, `f_σ(σ₀) = df`:
    /// S₄/S₁ `λ = K̲f, η = K̲f_σ/cosh α`; S₈ `λ = μ̲f, η = εμ̲f_σ/cosh α`;
    /// S₁₂ `η = ν̲f, λ = ν̲f_σ/cosh α`.
    Function { f: f64, df: f64 },
}

/// Everything a solve needs.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveRequest {
    pub subalgebra: SubalgebraId,
    pub epsilon: f64,
    pub generators: usize,
    pub mu: Supernumber,
    pub nu: Supernumber,
    pub k: Supernumber,
    pub c0: Supernumber,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub alpha0: Supernumber,
    pub dalpha0: Supernumber,
    pub odd: OddInitial,
    pub grid: SigmaGrid,
    /// Where the initial data sit (snapped to the nearest node); grid
    /// centre by default.
    pub ic_sigma: Option<f64>,
    pub substeps: usize,
}

impl SolveRequest {
    pub fn new(subalgebra: SubalgebraId, epsilon: f64, generators: usize, grid: SigmaGrid) -> Self {
        let z = Supernumber::zero(generators);
        SolveRequest {
            subalgebra,
            epsilon,
            generators,
            mu: z.clone(),
            nu: z.clone(),
            k: z.clone(),
            c0: z.clone(),
            c1: None,
            c2: None,
            alpha0: z.clone(),
            dalpha0: z,
            odd: OddInitial::Auto,
            grid,
            ic_sigma: None,
            substeps: 4,
        }
    }

    pub fn with_alpha(mut self, alpha: f64, dalpha: f64) -> Self {
        self.alpha0 = Supernumber::scalar(self.generators, alpha);
        self.dalpha0 = Supernumber::scalar(self.generators, dalpha);
        self
    }
}

/// Splits an even nilpotent `c` as `ξᵢ · r` for a generator `ξᵢ` present in
/// every term; returns `(ξᵢ, r)`. Used to produce odd data with `ηλ = c`.
pub fn factor_even(c: &Supernumber) -> Result<(Supernumber, Supernumber)> {
    let n = c.generators();
    if c.is_zero() {
        return Ok((Supernumber::zero(n), Supernumber::zero(n)));
    }
    if c.parity() != Parity::Even {
        return Err(Error::Parity("the constraint constant must be even".into()));
    }
    if c.body() != 0.0 {
        return Err(Error::Constraint(format!(
            "the constraint constant must be nilpotent, body is {}",
            c.body()
        )));
    }
    let common = c.terms().iter().fold(u16::MAX, |acc, (m, _)| acc & m);
    if common == 0 {
        return Err(Error::Constraint(
            "no generator divides every term of the constraint constant; give odd initial data explicitly".into(),
        ));
    }
    let i = common.trailing_zeros() as usize;
    let bit = 1u16 << i;
    let r = Supernumber::from_terms(
        n,
        c.terms()
            .iter()
            .map(|&(m, v)| (m ^ bit, v * monomial_sign(bit, m ^ bit))),
    )?;
    let xi = Supernumber::generator(n, i);
    debug_assert!((&(&xi * &r) - c).max_abs() < 1e-15);
    Ok((xi, r))
}

fn require_parity(name: &str, v: &Supernumber, p: Parity) -> Result<()> {
    if v.is_zero() || v.parity() == p {
        Ok(())
    } else {
        Err(Error::Parity(format!("{name} must be {p:?}")))
    }
}

fn embed(n: usize, v: &Supernumber) -> Result<Supernumber> {
    if v.generators() == n {
        Ok(v.clone())
    } else {
        Supernumber::from_literal(n, &v.to_literal())
    }
}

/// `C₁ = 1 + εα_σ² + sinh²α + 2C₀ cosh α` (body) at the initial point.
fn first_integral(eps: f64, a: f64, da: f64, c0: f64) -> f64 {
    1.0 + eps * da * da + a.sinh().powi(2) + 2.0 * c0 * a.cosh()
}

/// Integrates the reduced system described by `req`.
pub fn solve(req: &SolveRequest) -> Result<ReducedSolution> {
    use SubalgebraId::*;
    let id = req.subalgebra;
    let n = req.generators;
    let e = |v: &Supernumber| embed(n, v);
    let (mu, nu, k, c0) = (e(&req.mu)?, e(&req.nu)?, e(&req.k)?, e(&req.c0)?);
    let (alpha0, dalpha0) = (e(&req.alpha0)?, e(&req.dalpha0)?);
    let params = SubalgebraParams::new(req.epsilon, mu.clone(), nu.clone());
    let sys = ReducedSystem::new(id, &params)?;
    req.grid.validate()?;
    require_parity("K", &k, Parity::Odd)?;
    require_parity("α(σ₀)", &alpha0, Parity::Even)?;
    require_parity("α_σ(σ₀)", &dalpha0, Parity::Even)?;
    require_parity("C₀", &c0, Parity::Even)?;
    if c0.body() != 0.0 {
        return Err(Error::Constraint("C₀ must be nilpotent".into()));
    }
    if matches!(id, S8 | S12) && !c0.is_zero() {
        return Err(Error::Constraint(format!(
            "{id} has no C₀ coupling; C₀ must be 0"
        )));
    }
    if id == S1 && req.grid.min <= 0.0 {
        return Err(Error::Domain(format!(
            "S1 needs σ = xt > 0 on the whole grid; got σ_min = {}",
            req.grid.min
        )));
    }
    let eps = req.epsilon;
    let sigma = req.grid.nodes();
    let centre = 0.5 * (req.grid.min + req.grid.max);
    let ic = req.grid.nearest(req.ic_sigma.unwrap_or(centre));
    let s0 = sigma[ic];

    // η, λ at σ₀
    let weight = if id == S1 { s0.powf(-0.5) } else { 1.0 };
    let inv_cosh = alpha0.cosh()?.inv()?;
    let (eta0, lambda0) = match &req.odd {
        OddInitial::Auto => match id {
            S1 | S4 => factor_even(&c0.scale(weight))?,
            _ => (Supernumber::zero(n), Supernumber::zero(n)),
        },
        OddInitial::Explicit { eta, lambda } => (e(eta)?, e(lambda)?),
        OddInitial::Function { f, df } => match id {
            S1 | S4 => (&k.scale(*df) * &inv_cosh, k.scale(*f)),
            S8 => (&mu.scale(eps * df) * &inv_cosh, mu.scale(*f)),
            S12 => (nu.scale(*f), &nu.scale(*df) * &inv_cosh),
            _ => unreachable!(),
        },
    };
    require_parity("η(σ₀)", &eta0, Parity::Odd)?;
    require_parity("λ(σ₀)", &lambda0, Parity::Odd)?;

    let y0 = vec![alpha0.clone(), dalpha0.clone(), eta0, lambda0];
    let state = rk4_system(&sys, y0, &sigma, ic, req.substeps)?;

    let mut slots: [Vec<Supernumber>; 4] = Default::default();
    let mut d = DerivativeGrids {
        alpha1: Vec::with_capacity(sigma.len()),
        alpha2: Vec::with_capacity(sigma.len()),
        eta1: Vec::with_capacity(sigma.len()),
        lambda1: Vec::with_capacity(sigma.len()),
    };
    for (s, y) in sigma.iter().zip(&state) {
        for (slot, v) in slots.iter_mut().zip(sys.slots(y)?) {
            slot.push(v);
        }
        let f = sys.rhs(&Supernumber::scalar(n, *s), y)?;
        d.alpha1.push(f[0].clone());
        d.alpha2.push(f[1].clone());
        d.eta1.push(f[2].clone());
        d.lambda1.push(f[3].clone());
    }
    let [alpha, eta, lambda, beta] = slots;

    let mut diag = Diagnostics::default();
    let eta_lambda: Vec<Supernumber> = eta.iter().zip(&lambda).map(|(a, b)| a * b).collect();
    let violation = match id {
        S4 => eta_lambda
            .iter()
            .map(|v| (v - &c0).max_abs())
            .fold(0.0, f64::max),
        S1 => eta_lambda
            .iter()
            .zip(&sigma)
            .map(|(v, s)| (v - &c0.scale(s.powf(-0.5))).max_abs())
            .fold(0.0, f64::max),
        // (ηλ)_σ = −α_σ μ̲ λ and its mirror (ηλ)_σ = ε η ν̲ α_σ
        S8 | S12 => (0..sigma.len())
            .map(|i| {
                let dl = &(&d.eta1[i] * &lambda[i]) + &(&eta[i] * &d.lambda1[i]);
                let rhs = if id == S8 {
                    -&(&(&d.alpha1[i] * &mu) * &lambda[i])
                } else {
                    (&(&eta[i] * &nu) * &d.alpha1[i]).scale(eps)
                };
                (&dl - &rhs).max_abs()
            })
            .fold(0.0, f64::max),
        _ => unreachable!(),
    };
    diag.constraint_violation = Some(violation);
    if violation > CONSTRAINT_TOLERANCE {
        return Err(Error::Constraint(format!(
            "{id} odd constraint violated by {violation:e} (initial data inconsistent with C₀?)"
        )));
    }

    let mut c1 = req.c1;
    if matches!(id, S4 | S8 | S12) {
        // E = (ε/2)α_σ² + ½sinh²α + C₀ cosh α
        let energy = |i: usize| -> Result<Supernumber> {
            let a1 = &d.alpha1[i];
            let sh = alpha[i].sinh()?;
            Ok(&(&(a1 * a1).scale(0.5 * eps) + &(&sh * &sh).scale(0.5))
                + &(&c0 * &alpha[i].cosh()?))
        };
        let e0 = energy(ic)?;
        let mut drift = 0.0f64;
        for i in 0..sigma.len() {
            drift = drift.max((&energy(i)? - &e0).max_abs());
        }
        diag.energy_drift = Some(drift);
        let derived = first_integral(eps, alpha0.body(), dalpha0.body(), c0.body());
        if let Some(requested) = req.c1 {
            if (requested - derived).abs() > 1e-9 * (1.0 + derived.abs()) {
                diag.c1_requested = Some(requested);
                diag.warnings.push(format!(
                    "C1 = {requested} disagrees with the initial data; using C1 = {derived}"
                ));
            }
        }
        c1 = Some(derived);
    }
    let c2 = req.c2.or_else(|| {
        // phase: σ + C₂ vanishes at the first turning point after σ₀
        if !matches!(id, S4 | S8 | S12) {
            return None;
        }
        let b: Vec<f64> = d.alpha1.iter().map(Supernumber::body).collect();
        (ic..sigma.len() - 1).find_map(|i| {
            (b[i] != 0.0 && b[i].signum() != b[i + 1].signum()).then(|| {
                let t = b[i] / (b[i] - b[i + 1]);
                -(sigma[i] + t * (sigma[i + 1] - sigma[i]))
            })
        })
    });

    let sol = ReducedSolution {
        subalgebra: id,
        epsilon: eps,
        generators: n,
        mu,
        nu,
        k,
        c0,
        c1,
        c2,
        grid: req.grid,
        ic_index: ic,
        sigma,
        alpha,
        eta,
        lambda,
        beta,
        derivatives: Some(d),
        state: Some(state),
        diagnostics: diag,
    };
    sol.validate()?;
    Ok(sol)
}

/// S₄: `εα_σσ + sinh α cosh α + C₀ sinh α = 0` with the odd pair
/// `λ_σ = η cosh α`, `εη_σ = −λ cosh α`.
pub fn solve_s4(
    epsilon: f64,
    c0: &Supernumber,
    c1: Option<f64>,
    alpha0: &Supernumber,
    dalpha0: &Supernumber,
    odd: OddInitial,
    grid: SigmaGrid,
) -> Result<ReducedSolution> {
    let n = c0.generators().max(alpha0.generators());
    let mut req = SolveRequest::new(SubalgebraId::S4, epsilon, n, grid);
    req.c0 = c0.clone();
    req.c1 = c1;
    req.alpha0 = alpha0.clone();
    req.dalpha0 = dalpha0.clone();
    req.odd = odd;
    solve(&req)
}

/// S₁ on a σ-grid with `σ = xt > 0`.
pub fn solve_s1(
    c0: &Supernumber,
    alpha0: &Supernumber,
    dalpha0: &Supernumber,
    odd: OddInitial,
    k: &Supernumber,
    grid: SigmaGrid,
) -> Result<ReducedSolution> {
    let n = c0.generators().max(alpha0.generators());
    let mut req = SolveRequest::new(SubalgebraId::S1, 1.0, n, grid);
    req.c0 = c0.clone();
    req.k = k.clone();
    req.alpha0 = alpha0.clone();
    req.dalpha0 = dalpha0.clone();
    req.odd = odd;
    solve(&req)
}

/// S₈ (odd constant `μ̲`) or S₁₂ (odd constant `ν̲`).
pub fn solve_s8_s12(
    id: SubalgebraId,
    epsilon: f64,
    odd_constant: &Supernumber,
    alpha0: &Supernumber,
    dalpha0: &Supernumber,
    odd: OddInitial,
    grid: SigmaGrid,
) -> Result<ReducedSolution> {
    let n = odd_constant.generators();
    let mut req = SolveRequest::new(id, epsilon, n, grid);
    match id {
        SubalgebraId::S8 => req.mu = odd_constant.clone(),
        SubalgebraId::S12 => req.nu = odd_constant.clone(),
        other => {
            return Err(Error::Configuration(format!(
                "solve_s8_s12 called with {other}"
            )));
        }
    }
    req.alpha0 = alpha0.clone();
    req.dalpha0 = dalpha0.clone();
    req.odd = odd;
    solve(&req)
}

/// The S₁₂ solution predicted from an S₈ solution by the interchange
/// `σ → −εσ`, `ν̲ = μ̲`, `η₁₂(σ) = ελ₈(−εσ)`, `λ₁₂(σ) = −εη₈(−εσ)`.
/// For ε = 1 the grid must be symmetric about 0.
pub fn mirror_s8(r: &ReducedSolution) -> Result<ReducedSolution> {
    if r.subalgebra != SubalgebraId::S8 {
        return Err(Error::Configuration(
            "mirror_s8 needs an S8 solution".into(),
        ));
    }
    let eps = r.epsilon;
    let m = r.len();
    let flip = eps > 0.0;
    if flip && (r.grid.min + r.grid.max).abs() > 1e-12 * r.grid.max.abs().max(1.0) {
        return Err(Error::Configuration(
            "the mirror needs a grid symmetric about σ = 0".into(),
        ));
    }
    let at = |i: usize| if flip { m - 1 - i } else { i };
    let map = |v: &Vec<Supernumber>, k: f64| (0..m).map(|i| v[at(i)].scale(k)).collect::<Vec<_>>();
    let d = r.derivatives.as_ref().map(|d| DerivativeGrids {
        alpha1: map(&d.alpha1, -eps),
        alpha2: map(&d.alpha2, 1.0),
        eta1: map(&d.lambda1, -1.0),
        lambda1: map(&d.eta1, 1.0),
    });
    let state = match (&r.state, &d) {
        (Some(_), Some(d)) => Some(
            (0..m)
                .map(|i| {
                    vec![
                        r.alpha[at(i)].clone(),
                        d.alpha1[i].clone(),
                        r.lambda[at(i)].scale(eps),
                        r.eta[at(i)].scale(-eps),
                    ]
                })
                .collect(),
        ),
        _ => None,
    };
    Ok(ReducedSolution {
        subalgebra: SubalgebraId::S12,
        nu: r.mu.clone(),
        mu: Supernumber::zero(r.generators),
        ic_index: at(r.ic_index),
        alpha: map(&r.alpha, 1.0),
        eta: map(&r.lambda, eps),
        lambda: map(&r.eta, -eps),
        beta: map(&r.beta, 1.0),
        derivatives: d,
        state,
        c2: None,
        diagnostics: Diagnostics::default(),
        ..r.clone()
    })
}

/// Outcome of the quadrature check of an S₄-type bosonic trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureCheck {
    /// Largest `| ∫ 2dy/√(εf(y)) − |Δσ| |` over the checked segments.
    pub max_error: f64,
    pub segments: usize,
    pub turning_points: usize,
    /// The trajectory sits at an equilibrium; nothing to check.
    pub stationary: bool,
}

/// Checks the implicit quadrature relation `∫ 2dy / √(εf(y)) = ±(σ + C₂)`,
/// `y = e^α`, with `f(y) = −y⁴ − 4C₀y³ + (4C₁ − 2)y² − 4C₀y − 1`, on
/// segments of roughly `segment` σ-length. Across a turning point the
/// integral runs to the root of `f` and back. Body parts only.
pub fn quadrature_check(r: &ReducedSolution, segment: f64) -> Result<QuadratureCheck> {
    use SubalgebraId::*;
    if !matches!(r.subalgebra, S4 | S8 | S12) {
        return Err(Error::Configuration(format!(
            "{} has no quadrature relation",
            r.subalgebra
        )));
    }
    let c1 =
        r.c1.ok_or_else(|| Error::Configuration("the solution carries no C1".into()))?;
    let eps = r.epsilon;
    let c0 = r.c0.body();
    let alpha: Vec<f64> = r.alpha.iter().map(Supernumber::body).collect();
    let da: Vec<f64> = match &r.derivatives {
        Some(d) => d.alpha1.iter().map(Supernumber::body).collect(),
        None => central_difference(&alpha, r.grid.step()),
    };
    if da.iter().all(|v| v.abs() < 1e-12) {
        return Ok(QuadratureCheck {
            max_error: 0.0,
            segments: 0,
            turning_points: 0,
            stationary: true,
        });
    }
    let coeffs = [-1.0, -4.0 * c0, 4.0 * c1 - 2.0, -4.0 * c0, -1.0];
    let f = |y: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c);
    let roots = real_roots(&coeffs)?;
    // f(y)/(y − r) by synthetic division
    let deflated = |root: f64| {
        let mut q = [0.0; 4];
        let mut acc = 0.0;
        for k in (1..5).rev() {
            acc = acc * root + coeffs[k];
            q[k - 1] = acc;
        }
        move |y: f64| q.iter().rev().fold(0.0, |a, c| a * y + c)
    };
    // ∫ from y to the root, singular at the root end
    let leg = |y: f64, root: f64| -> Result<f64> {
        if (y - root).abs() < 1e-300 {
            return Ok(0.0);
        }
        let q = deflated(root);
        let dir = (root - y).signum();
        let v: f64 = quadrature_with(
            |x: f64, _da: f64, db: f64| {
                // f(x) = (x − root) q(x) and x − root = −dir·db
                let g = eps * (-dir * db) * q(x);
                2.0 / g.abs().sqrt()
            },
            y,
            root,
        )?;
        Ok(v.abs())
    };
    let h = r.grid.step();
    let stride = ((segment / h).round() as usize).max(1);
    let mut max_error = 0.0f64;
    let mut segments = 0;
    let mut turning_points = 0;
    let mut i = 0;
    while i + stride < alpha.len() {
        let j = i + stride;
        let (yi, yj) = (alpha[i].exp(), alpha[j].exp());
        let target = r.sigma[j] - r.sigma[i];
        let turning = (i..j).any(|m| da[m].signum() != da[m + 1].signum())
            || da[i].abs() < TURNING_THRESHOLD
            || da[j].abs() < TURNING_THRESHOLD;
        let value = if !turning {
            let v: f64 = quadrature_with(
                |x: f64, _a: f64, _b: f64| 2.0 / (eps * f(x)).abs().sqrt(),
                yi,
                yj,
            )?;
            v.abs()
        } else {
            turning_points += 1;
            let hi = yi.max(yj);
            let lo = yi.min(yj);
            // α_σ decreases through a maximum
            let maximum = da[j] < da[i];
            let root = if maximum {
                roots
                    .iter()
                    .copied()
                    .filter(|&r| r >= hi - 1e-7 * hi)
                    .fold(f64::INFINITY, f64::min)
            } else {
                roots
                    .iter()
                    .copied()
                    .filter(|&r| r <= lo + 1e-7 * lo)
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            if !root.is_finite() {
                return Err(Error::Numerical(format!(
                    "no turning root of f near σ = {}",
                    r.sigma[i]
                )));
            }
            leg(yi, root)? + leg(yj, root)?
        };
        max_error = max_error.max((value - target).abs());
        segments += 1;
        i = j;
    }
    Ok(QuadratureCheck {
        max_error,
        segments,
        turning_points,
        stationary: false,
    })
}
