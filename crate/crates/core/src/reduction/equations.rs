//! Reduced ODE systems of the standard subalgebras and their relation to
//! the full superfield residual.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AnalyticRing, Ring, Series};
use crate::error::{Error, Result};
use crate::fieldcalc::FieldPoint;
use crate::grassmann::Supernumber;
use crate::superspace::{SuperPolynomial, ThetaExpansion};
use crate::symalg::{SubalgebraId, SubalgebraParams, SubalgebraRep};

use super::profile::Profile;

/// Values and derivatives entering a reduced system at one point.
#[derive(Debug, Clone)]
pub struct ReducedValues<R> {
    pub s: R,
    pub alpha: R,
    pub alpha1: R,
    pub alpha2: R,
    pub eta: R,
    pub eta1: R,
    pub lambda: R,
    pub lambda1: R,
    pub beta: R,
}

impl ReducedValues<Series> {
    /// Builds values from series of `α, η, λ, β` about `s0`; the result has
    /// degree `deg(α) − 2`.
    pub fn from_series(s0: f64, f: &[Series; 4]) -> Self {
        let n = f[0].coeffs()[0].generators();
        let a1 = f[0].differentiate();
        let a2 = a1.differentiate();
        ReducedValues {
            s: Series::variable(Supernumber::scalar(n, s0), f[0].degree()),
            alpha: f[0].clone(),
            alpha1: a1,
            alpha2: a2,
            eta: f[1].clone(),
            eta1: f[1].differentiate(),
            lambda: f[2].clone(),
            lambda1: f[2].differentiate(),
            beta: f[3].clone(),
        }
    }
}

pub fn require_reducible(id: SubalgebraId) -> Result<()> {
    if id.is_nonstandard() {
        Err(Error::NotReducible(id.to_string()))
    } else {
        Ok(())
    }
}

/// Human-readable left-hand sides, in evaluation order.
pub fn equation_names(id: SubalgebraId) -> Result<[&'static str; 4]> {
    use SubalgebraId::*;
    require_reducible(id)?;
    Ok(match id {
        S1 => [
            "β + sinh α",
            "λ_σ − η cosh α",
            "σ η_σ + η/2 − λ cosh α",
            "α_σ + σ α_σσ + β cosh α − ηλ sinh α",
        ],
        S2 => [
            "β + sinh α",
            "η cosh α",
            "η_t − λ cosh α",
            "β cosh α − ηλ sinh α",
        ],
        S3 => [
            "β + sinh α",
            "λ_x − η cosh α",
            "λ cosh α",
            "β cosh α − ηλ sinh α",
        ],
        S4 => [
            "β + sinh α",
            "λ_σ − η cosh α",
            "ε η_σ + λ cosh α",
            "ε α_σσ − β cosh α + ηλ sinh α",
        ],
        S6 => [
            "β + sinh α",
            "μβ − η cosh α",
            "η_t − λ cosh α",
            "μ η_t − β cosh α + ηλ sinh α",
        ],
        S7 => [
            "β + sinh α",
            "λ_σ − η cosh α",
            "μ α_σ + λ cosh α",
            "μ η_σ − β cosh α + ηλ sinh α",
        ],
        S8 => [
            "β + sinh α",
            "ε λ_σ − η cosh α",
            "η_σ + μ α_σ + λ cosh α",
            "ε α_σσ + μ η_σ − β cosh α + ηλ sinh α",
        ],
        S10 => [
            "β + sinh α",
            "ν α_σ − η cosh α",
            "η_σ − λ cosh α",
            "ν λ_σ − β cosh α + ηλ sinh α",
        ],
        S11 => [
            "β + sinh α",
            "λ_x − η cosh α",
            "ν β + λ cosh α",
            "ν λ_x − β cosh α + ηλ sinh α",
        ],
        S12 => [
            "β + sinh α",
            "ν α_σ − ε λ_σ − η cosh α",
            "η_σ − λ cosh α",
            "ε α_σσ + ν λ_σ − β cosh α + ηλ sinh α",
        ],
        _ => unreachable!("nonstandard ids rejected above"),
    })
}

/// Evaluates the four reduced equations of `id` in any analytic ring.
pub fn reduced_equations<R: AnalyticRing>(
    id: SubalgebraId,
    p: &SubalgebraParams,
    v: &ReducedValues<R>,
) -> Result<[R; 4]> {
    use SubalgebraId::*;
    require_reducible(id)?;
    let eps = p.epsilon;
    let mu = v.alpha.constant(&p.mu);
    let nu = v.alpha.constant(&p.nu);
    let sh = v.alpha.sinh()?;
    let ch = v.alpha.cosh()?;
    let e1 = v.beta.add(&sh);
    let eta_ch = v.eta.mul(&ch);
    let lam_ch = v.lambda.mul(&ch);
    let beta_ch = v.beta.mul(&ch);
    let el_sh = v.eta.mul(&v.lambda).mul(&sh);
    let tail = el_sh.sub(&beta_ch); // −β cosh α + ηλ sinh α
    Ok(match id {
        S1 => [
            e1,
            v.lambda1.sub(&eta_ch),
            v.s.mul(&v.eta1).add(&v.eta.scale(0.5)).sub(&lam_ch),
            v.alpha1.add(&v.s.mul(&v.alpha2)).add(&beta_ch).sub(&el_sh),
        ],
        S2 => [e1, eta_ch, v.eta1.sub(&lam_ch), beta_ch.sub(&el_sh)],
        S3 => [e1, v.lambda1.sub(&eta_ch), lam_ch, beta_ch.sub(&el_sh)],
        S4 => [
            e1,
            v.lambda1.sub(&eta_ch),
            v.eta1.scale(eps).add(&lam_ch),
            v.alpha2.scale(eps).add(&tail),
        ],
        S6 => [
            e1,
            mu.mul(&v.beta).sub(&eta_ch),
            v.eta1.sub(&lam_ch),
            mu.mul(&v.eta1).add(&tail),
        ],
        S7 => [
            e1,
            v.lambda1.sub(&eta_ch),
            mu.mul(&v.alpha1).add(&lam_ch),
            mu.mul(&v.eta1).add(&tail),
        ],
        S8 => [
            e1,
            v.lambda1.scale(eps).sub(&eta_ch),
            v.eta1.add(&mu.mul(&v.alpha1)).add(&lam_ch),
            v.alpha2.scale(eps).add(&mu.mul(&v.eta1)).add(&tail),
        ],
        S10 => [
            e1,
            nu.mul(&v.alpha1).sub(&eta_ch),
            v.eta1.sub(&lam_ch),
            nu.mul(&v.lambda1).add(&tail),
        ],
        S11 => [
            e1,
            v.lambda1.sub(&eta_ch),
            nu.mul(&v.beta).add(&lam_ch),
            nu.mul(&v.lambda1).add(&tail),
        ],
        S12 => [
            e1,
            nu.mul(&v.alpha1).sub(&v.lambda1.scale(eps)).sub(&eta_ch),
            v.eta1.sub(&lam_ch),
            v.alpha2.scale(eps).add(&nu.mul(&v.lambda1)).add(&tail),
        ],
        _ => unreachable!("nonstandard ids rejected above"),
    })
}

/// Signs `s_i` with `DxDtΦ − sinh Φ = s₀E₁ + τ₁ s₁E₂ + τ₂ s₂E₃ + τ₁τ₂ s₃E₄`
/// on the ansatz, where `E_i` are the reduced equations in listed order.
pub fn residual_signs(id: SubalgebraId) -> Result<[f64; 4]> {
    use SubalgebraId::*;
    require_reducible(id)?;
    Ok(match id {
        S1 => [-1.0, 1.0, 1.0, -1.0],
        S2 => [-1.0, -1.0, 1.0, -1.0],
        S3 => [-1.0, 1.0, -1.0, -1.0],
        S4 | S7 | S8 | S11 => [-1.0, 1.0, -1.0, 1.0],
        S6 | S10 | S12 => [-1.0, 1.0, 1.0, 1.0],
        _ => unreachable!("nonstandard ids rejected above"),
    })
}

fn invariant<'a>(rep: &'a SubalgebraRep, name: &str) -> Result<&'a SuperPolynomial> {
    rep.invariant(name)
        .ok_or_else(|| Error::NotReducible(format!("{} has no invariant {name}", rep.id)))
}

/// The reduced equations evaluated on `profile`, composed with the
/// invariants at `pt` and assembled as a θ-expansion.
pub fn mapped_residual(
    rep: &SubalgebraRep,
    profile: &dyn Profile,
    pt: FieldPoint,
) -> Result<ThetaExpansion> {
    let signs = residual_signs(rep.id)?;
    let sigma = invariant(rep, "σ")?.localize(pt.x, pt.t, 0)?.truncate(0);
    let tau1 = invariant(rep, "τ1")?.localize(pt.x, pt.t, 0)?.truncate(0);
    let tau2 = invariant(rep, "τ2")?.localize(pt.x, pt.t, 0)?.truncate(0);
    let s0 = sigma.constant_body();
    profile.check_domain(s0)?;
    let k = sigma.nilpotency_bound(0);
    let series = profile.series(s0, k + 2)?;
    let values = ReducedValues::from_series(s0, &series);
    let eqs = reduced_equations(rep.id, &rep.params, &values)?;
    let composed: Vec<SuperPolynomial> = eqs
        .iter()
        .zip(signs)
        .map(|(e, sgn)| sigma.compose_taylor(s0, e.scale(sgn).coeffs(), 0))
        .collect();
    let total = composed[0]
        .add(&tau1.mul_truncated(&composed[1], 0))
        .add(&tau2.mul_truncated(&composed[2], 0))
        .add(&tau1.mul_truncated(&tau2, 0).mul_truncated(&composed[3], 0));
    total.evaluate(0.0, 0.0, None)
}

/// Residual of one reduced equation over a σ-grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquationResidual {
    pub equation: String,
    pub values: Vec<Supernumber>,
    pub max_abs: f64,
    pub per_grassmann_monomial: BTreeMap<u16, f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReducedResidualReport {
    pub subalgebra: SubalgebraId,
    pub equations: Vec<EquationResidual>,
}

impl ReducedResidualReport {
    pub fn max_abs(&self) -> f64 {
        self.equations.iter().map(|e| e.max_abs).fold(0.0, f64::max)
    }
}

pub(crate) fn summarize(
    id: SubalgebraId,
    rows: Vec<[Supernumber; 4]>,
) -> Result<ReducedResidualReport> {
    let names = equation_names(id)?;
    let equations = (0..4)
        .map(|i| {
            let values: Vec<Supernumber> = rows.iter().map(|r| r[i].clone()).collect();
            let mut per = BTreeMap::new();
            for v in &values {
                for &(m, c) in v.terms() {
                    let e = per.entry(m).or_insert(0.0f64);
                    *e = e.max(c.abs());
                }
            }
            EquationResidual {
                equation: names[i].to_string(),
                max_abs: values.iter().map(Supernumber::max_abs).fold(0.0, f64::max),
                values,
                per_grassmann_monomial: per,
            }
        })
        .collect();
    Ok(ReducedResidualReport {
        subalgebra: id,
        equations,
    })
}

/// Reduced residuals of a profile sampled on `grid` (exact derivatives).
pub fn profile_residuals(
    id: SubalgebraId,
    params: &SubalgebraParams,
    profile: &dyn Profile,
    grid: &[f64],
) -> Result<ReducedResidualReport> {
    let rows = grid
        .iter()
        .map(|&s| {
            let series = profile.series(s, 2)?;
            let v = ReducedValues::from_series(s, &series);
            let eqs = reduced_equations(id, params, &v)?;
            Ok([
                eqs[0].coeffs()[0].clone(),
                eqs[1].coeffs()[0].clone(),
                eqs[2].coeffs()[0].clone(),
                eqs[3].coeffs()[0].clone(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    summarize(id, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::profile::ExpSumProfile;

    fn params() -> SubalgebraParams {
        SubalgebraParams::new(
            1.0,
            Supernumber::generator(4, 0),
            Supernumber::generator(4, 1),
        )
    }

    #[test]
    fn nonstandard_ids_are_not_reducible() {
        for id in [
            SubalgebraId::S5,
            SubalgebraId::S9,
            SubalgebraId::S13,
            SubalgebraId::S16,
        ] {
            assert!(matches!(equation_names(id), Err(Error::NotReducible(_))));
            assert!(matches!(residual_signs(id), Err(Error::NotReducible(_))));
        }
    }

    #[test]
    fn zero_profile_has_zero_residuals() {
        let p = ExpSumProfile::new(4, [vec![], vec![], vec![], vec![]]);
        let grid: Vec<f64> = (0..5).map(|i| i as f64 * 0.5).collect();
        for id in SubalgebraId::ALL.iter().filter(|i| !i.is_nonstandard()) {
            let r = profile_residuals(*id, &params(), &p, &grid).unwrap();
            assert_eq!(r.max_abs(), 0.0, "{id}");
        }
    }

    #[test]
    fn constant_alpha_in_null_subalgebra() {
        let c = 0.8;
        let n = 4;
        let p = ExpSumProfile::new(
            n,
            [
                vec![(Supernumber::scalar(n, c), 0.0)],
                vec![],
                vec![],
                vec![(Supernumber::scalar(n, -c.sinh()), 0.0)],
            ],
        );
        let r = profile_residuals(SubalgebraId::S2, &params(), &p, &[0.0]).unwrap();
        assert!(r.equations[0].max_abs < 1e-15);
        let e4 = &r.equations[3].values[0];
        assert!((e4.body() + c.sinh() * c.cosh()).abs() < 1e-14);
    }
}
