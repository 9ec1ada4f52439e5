//! Symmetry reductions: the ansatz `Φ = α(σ) + τ₁η(σ) + τ₂λ(σ) + τ₁τ₂β(σ)`,
//! the reduced ODE systems, IC-driven solvers, reconstruction of the
//! superfield and its certification against the full equation.

pub mod equations;
pub mod io;
pub mod nonstandard;
pub mod profile;
pub mod reconstruct;
pub mod solve;

use serde::{Deserialize, Serialize};

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::grassmann::{Parity, Supernumber};
use crate::symalg::{SubalgebraId, SubalgebraParams};

pub use equations::{
    equation_names, mapped_residual, profile_residuals, reduced_equations, residual_signs,
    EquationResidual, ReducedResidualReport, ReducedValues,
};
pub use nonstandard::{s5_witness, NonreducibilityWitness};
pub use profile::{shift_series, ExpSumProfile, Profile, SLOTS};
pub use reconstruct::{certify, reconstruct, ReconstructedField, SolutionProfile};
pub use solve::{
    factor_even, mirror_s8, quadrature_check, solve, solve_s1, solve_s4, solve_s8_s12, OddInitial,
    QuadratureCheck, ReducedSystem, SolveRequest, CONSTRAINT_TOLERANCE,
};

/// Uniform σ-grid `min, min + h, ..., max` with `n` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaGrid {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl SigmaGrid {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        let g = SigmaGrid { min, max, n };
        g.validate()?;
        Ok(g)
    }

    /// Parses `min:max:n`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let bad = || Error::Configuration(format!("grid must look like min:max:n, got {text:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let min: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let max: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        Self::new(min, max, n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || !self.min.is_finite() || !self.max.is_finite() || self.min >= self.max {
            return Err(Error::Configuration(format!(
                "σ-grid needs min < max and at least two nodes, got {}:{}:{}",
                self.min, self.max, self.n
            )));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.n - 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.n)
            .map(|i| {
                if i + 1 == self.n {
                    self.max
                } else {
                    self.min + h * i as f64
                }
            })
            .collect()
    }

    pub fn nearest(&self, s: f64) -> usize {
        let i = ((s - self.min) / self.step()).round();
        i.clamp(0.0, (self.n - 1) as f64) as usize
    }
}

/// Derivatives of the reduced functions at the grid nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivativeGrids {
    pub alpha1: Vec<Supernumber>,
    pub alpha2: Vec<Supernumber>,
    pub eta1: Vec<Supernumber>,
    pub lambda1: Vec<Supernumber>,
}

/// Checks performed while solving.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Largest deviation of the conserved energy from its initial value.
    pub energy_drift: Option<f64>,
    /// Largest violation of the odd constraint of the subalgebra.
    pub constraint_violation: Option<f64>,
    /// `C₁` from the request when it disagreed with the initial data.
    pub c1_requested: Option<f64>,
    pub warnings: Vec<String>,
}

/// A solution of a reduced system sampled on a σ-grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedSolution {
    pub subalgebra: SubalgebraId,
    pub epsilon: f64,
    pub generators: usize,
    pub mu: Supernumber,
    pub nu: Supernumber,
    pub k: Supernumber,
    pub c0: Supernumber,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub grid: SigmaGrid,
    pub ic_index: usize,
    pub sigma: Vec<f64>,
    pub alpha: Vec<Supernumber>,
    pub eta: Vec<Supernumber>,
    pub lambda: Vec<Supernumber>,
    pub beta: Vec<Supernumber>,
    pub derivatives: Option<DerivativeGrids>,
    /// Integrated state `(α, α_σ, η, λ)`; present when the solution came
    /// from a solver, and required for reconstruction.
    pub state: Option<Vec<Vec<Supernumber>>>,
    pub diagnostics: Diagnostics,
}

impl ReducedSolution {
    pub fn params(&self) -> SubalgebraParams {
        SubalgebraParams::new(self.epsilon, self.mu.clone(), self.nu.clone())
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn slots(&self) -> [&Vec<Supernumber>; 4] {
        [&self.alpha, &self.eta, &self.lambda, &self.beta]
    }

    /// Re-embeds every supernumber in the ring with `generators`
    /// generators (deserialised literals land in the smallest ring that
    /// holds them).
    pub fn normalize(mut self) -> Result<Self> {
        let n = self.generators;
        let fix = |v: &mut Supernumber| -> Result<()> {
            *v = Supernumber::from_literal(n, &v.to_literal())?;
            Ok(())
        };
        for v in [&mut self.mu, &mut self.nu, &mut self.k, &mut self.c0] {
            fix(v)?;
        }
        for grid in [
            &mut self.alpha,
            &mut self.eta,
            &mut self.lambda,
            &mut self.beta,
        ] {
            grid.iter_mut().try_for_each(fix)?;
        }
        if let Some(d) = &mut self.derivatives {
            for grid in [&mut d.alpha1, &mut d.alpha2, &mut d.eta1, &mut d.lambda1] {
                grid.iter_mut().try_for_each(fix)?;
            }
        }
        if let Some(state) = &mut self.state {
            for row in state.iter_mut() {
                row.iter_mut().try_for_each(fix)?;
            }
        }
        self.validate()?;
        Ok(self)
    }

    /// Shape and parity invariants of the sampled data.
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        let n = self.sigma.len();
        if n != self.grid.n || self.slots().iter().any(|g| g.len() != n) || self.ic_index >= n {
            return Err(Error::Configuration(
                "solution grids have inconsistent lengths".into(),
            ));
        }
        if let Some(s) = &self.state {
            if s.len() != n || s.iter().any(|row| row.len() != 4) {
                return Err(Error::Configuration(
                    "solution state has the wrong shape".into(),
                ));
            }
        }
        let want = [Parity::Even, Parity::Odd, Parity::Odd, Parity::Even];
        for (slot, (grid, parity)) in SLOTS.iter().zip(self.slots().into_iter().zip(want)) {
            if let Some(i) = grid
                .iter()
                .position(|v| !v.is_zero() && v.parity() != parity)
            {
                return Err(Error::Parity(format!("{slot}[{i}] is not {parity:?}")));
            }
        }
        Ok(())
    }
}

/// Evaluates the reduced equations on the sampled solution. Derivatives
/// come from the stored derivative grids when present, otherwise from
/// fourth-order central differences (second order at the ends).
pub fn reduced_residuals(r: &ReducedSolution) -> Result<ReducedResidualReport> {
    equations::require_reducible(r.subalgebra)?;
    r.validate()?;
    let params = r.params();
    let h = r.grid.step();
    let (a1, a2, e1, l1) = match &r.derivatives {
        Some(d) => (
            d.alpha1.clone(),
            d.alpha2.clone(),
            d.eta1.clone(),
            d.lambda1.clone(),
        ),
        None => {
            let a1 = central_difference(&r.alpha, h);
            let a2 = central_difference(&a1, h);
            (
                a1,
                a2,
                central_difference(&r.eta, h),
                central_difference(&r.lambda, h),
            )
        }
    };
    let n = r.generators;
    let rows = (0..r.len())
        .map(|i| {
            let v = ReducedValues {
                s: Supernumber::scalar(n, r.sigma[i]),
                alpha: r.alpha[i].clone(),
                alpha1: a1[i].clone(),
                alpha2: a2[i].clone(),
                eta: r.eta[i].clone(),
                eta1: e1[i].clone(),
                lambda: r.lambda[i].clone(),
                lambda1: l1[i].clone(),
                beta: r.beta[i].clone(),
            };
            reduced_equations(r.subalgebra, &params, &v)
        })
        .collect::<Result<Vec<_>>>()?;
    equations::summarize(r.subalgebra, rows)
}

/// First derivative on a uniform grid: fourth-order central stencil in the
/// interior, second-order one-sided stencils at the two ends on each side.
pub fn central_difference<R: Ring>(v: &[R], h: f64) -> Vec<R> {
    let n = v.len();
    assert!(n >= 3, "central differences need three samples");
    (0..n)
        .map(|i| {
            if i >= 2 && i + 2 < n {
                v[i - 2]
                    .sub(&v[i + 2])
                    .add(&v[i + 1].sub(&v[i - 1]).scale(8.0))
                    .scale(1.0 / (12.0 * h))
            } else if i == 0 {
                v[1].scale(4.0)
                    .sub(&v[0].scale(3.0))
                    .sub(&v[2])
                    .scale(0.5 / h)
            } else if i + 1 == n {
                v[n - 1]
                    .scale(3.0)
                    .sub(&v[n - 2].scale(4.0))
                    .add(&v[n - 3])
                    .scale(0.5 / h)
            } else {
                v[i + 1].sub(&v[i - 1]).scale(0.5 / h)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing_and_nodes() {
        let g = SigmaGrid::parse("-5:5:2001").unwrap();
        assert_eq!(g.nodes().len(), 2001);
        assert_eq!(g.nodes()[1000], 0.0);
        assert_eq!(g.nearest(0.0012), 1000);
        assert!(SigmaGrid::parse("1:0:5").is_err());
        assert!(SigmaGrid::parse("0:1").is_err());
    }

    #[test]
    fn differences_of_a_cubic() {
        let h = 0.1;
        let v: Vec<f64> = (0..20).map(|i| (i as f64 * h).powi(3)).collect();
        let d = central_difference(&v, h);
        for (i, di) in d.iter().enumerate().skip(2).take(15) {
            assert!((di - 3.0 * (i as f64 * h).powi(2)).abs() < 1e-12);
        }
    }
}
