//! Reconstruction of the superfield from reduced functions, and its
//! certification against the full equation.

use std::sync::{Arc, OnceLock};

use crate::algebra::{AnalyticRing, Series};
use crate::error::{Error, Result};
use crate::fieldcalc::{
    shg_report, DerivativeScheme, FieldPoint, GridSpec, ResidualReport, Superfield,
};
use crate::special::taylor_jet;
use crate::superspace::SuperPolynomial;
use crate::symalg::{subalgebra, SubalgebraId, SubalgebraRep};

use super::profile::{shift_series, Profile};
use super::solve::ReducedSystem;
use super::{equations, ReducedSolution};

/// Degree of the cached node expansions.
pub const JET_DEGREE: usize = 14;

/// Profile of a solved system: at each node the local Taylor expansion of
/// the ODE solution through the stored state (computed on demand and
/// cached), re-expanded at the requested point.
pub struct SolutionProfile {
    solution: Arc<ReducedSolution>,
    system: ReducedSystem,
    jets: Vec<OnceLock<[Series; 4]>>,
    flip_beta: bool,
}

impl SolutionProfile {
    pub fn new(solution: Arc<ReducedSolution>) -> Result<Self> {
        let system = ReducedSystem::for_solution(&solution)?;
        if solution.state.is_none() {
            return Err(Error::Configuration(
                "the solution carries no integrated state and cannot be reconstructed".into(),
            ));
        }
        let jets = (0..solution.len()).map(|_| OnceLock::new()).collect();
        Ok(SolutionProfile {
            solution,
            system,
            jets,
            flip_beta: false,
        })
    }

    /// Sentinel: replaces `β = −sinh α` by `+sinh α`.
    pub fn with_flipped_beta(mut self) -> Self {
        self.flip_beta = true;
        self
    }

    fn node_jet(&self, i: usize, degree: usize) -> Result<[Series; 4]> {
        let build = |deg: usize| -> Result<[Series; 4]> {
            let y = &self.solution.state.as_ref().expect("checked in new")[i];
            let jet = taylor_jet(&self.system, self.solution.sigma[i], y, deg)?;
            self.system.slots(&jet)
        };
        if degree > JET_DEGREE {
            return build(degree);
        }
        if let Some(j) = self.jets[i].get() {
            return Ok(j.clone());
        }
        let j = build(JET_DEGREE)?;
        Ok(self.jets[i].get_or_init(|| j).clone())
    }
}

impl Profile for SolutionProfile {
    fn generators(&self) -> usize {
        self.solution.generators
    }

    fn domain(&self) -> (f64, f64) {
        (self.solution.grid.min, self.solution.grid.max)
    }

    fn series(&self, s0: f64, degree: usize) -> Result<[Series; 4]> {
        self.check_domain(s0)?;
        let i = self.solution.grid.nearest(s0);
        let delta = s0 - self.solution.sigma[i];
        let jet = self.node_jet(i, degree)?;
        let mut out = jet.map(|s| shift_series(&s, delta).truncate(degree));
        if self.flip_beta {
            out[3] = out[0].sinh()?;
        }
        Ok(out)
    }
}

/// `Φ = α(σ) + τ₁η(σ) + τ₂λ(σ) + τ₁τ₂β(σ)` with the invariants of a
/// subalgebra representative.
pub struct ReconstructedField {
    rep: SubalgebraRep,
    profile: Arc<dyn Profile>,
}

impl ReconstructedField {
    pub fn new(rep: SubalgebraRep, profile: Arc<dyn Profile>) -> Result<Self> {
        equations::require_reducible(rep.id)?;
        for name in ["σ", "τ1", "τ2"] {
            if rep.invariant(name).is_none() {
                return Err(Error::NotReducible(format!(
                    "{} lacks the invariant {name}",
                    rep.id
                )));
            }
        }
        Ok(ReconstructedField { rep, profile })
    }

    pub fn rep(&self) -> &SubalgebraRep {
        &self.rep
    }

    fn local(&self, name: &str, p: FieldPoint, order: u32) -> Result<SuperPolynomial> {
        let inv = self.rep.invariant(name).expect("checked in new");
        Ok(inv.localize(p.x, p.t, order)?.truncate(order))
    }
}

impl Superfield for ReconstructedField {
    fn generators(&self) -> usize {
        self.profile.generators()
    }

    fn jet(&self, p: FieldPoint, order: u32) -> Result<SuperPolynomial> {
        let sigma = self.local("σ", p, order)?;
        let tau1 = self.local("τ1", p, order)?;
        let tau2 = self.local("τ2", p, order)?;
        let s0 = sigma.constant_body();
        let series = self.profile.series(s0, sigma.nilpotency_bound(order))?;
        let [a, e, l, b] = series.map(|s| sigma.compose_taylor(s0, s.coeffs(), order));
        Ok(a.add(&tau1.mul_truncated(&e, order))
            .add(&tau2.mul_truncated(&l, order))
            .add(&tau1.mul_truncated(&tau2, order).mul_truncated(&b, order)))
    }
}

/// Superfield of a solved reduction.
pub fn reconstruct(r: &ReducedSolution) -> Result<ReconstructedField> {
    let rep = subalgebra(r.subalgebra, r.params())?;
    let profile = SolutionProfile::new(Arc::new(r.clone()))?;
    ReconstructedField::new(rep, Arc::new(profile))
}

/// Full-equation residual of the reconstructed field over `window`.
/// The solution passes iff `report.passes(tolerance)`.
pub fn certify(r: &ReducedSolution, window: GridSpec) -> Result<ResidualReport> {
    window.validate()?;
    if r.subalgebra == SubalgebraId::S1 && window.t_min <= 0.0 {
        return Err(Error::Domain(format!(
            "S1 invariants need t > 0 on the window; got t_min = {}",
            window.t_min
        )));
    }
    let field = reconstruct(r)?;
    shg_report(&field, window, DerivativeScheme::Analytic)
}
