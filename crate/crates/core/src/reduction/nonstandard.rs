//! Why the nonstandard subalgebras give no reduced system: a witness for
//! `S₅ = {μ̲Qx}` with the nilpotent invariant `τ = μ̲xθ₁`.

use serde::Serialize;

use crate::error::Result;
use crate::fieldcalc::OddOperator;
use crate::grassmann::{AnalyticFn, Supernumber};
use crate::superspace::{SuperPolynomial, Var, THETA1};
use crate::symalg::{annihilates, subalgebra, SubalgebraId, SubalgebraParams};

#[derive(Debug, Clone, Serialize)]
pub struct NonreducibilityWitness {
    pub subalgebra: SubalgebraId,
    /// The invariant used in the ansatz.
    pub invariant: String,
    pub invariant_annihilated: bool,
    /// The trial field `Φ = A(t, τ, θ₂)`.
    pub field: String,
    pub field_annihilated: bool,
    /// `DxDtΦ − sinh Φ` of the trial field.
    pub residual: String,
    /// Residual terms carrying `x` without `θ₁`; none of them can be
    /// written through `t`, `θ₂` and `τ`.
    pub explicit_x_terms: Vec<String>,
    pub reducible: bool,
}

/// Substitutes `Φ = t + τθ₂κ̲` (odd constant `κ̲`) with `τ = μ̲xθ₁` into
/// the equation and collects the residual terms that depend on `x`
/// outside `τ`.
pub fn s5_witness(n: usize) -> Result<NonreducibilityWitness> {
    let mu = Supernumber::generator(n, 0);
    let params = SubalgebraParams::new(1.0, mu.clone(), Supernumber::zero(n));
    let rep = subalgebra(SubalgebraId::S5, params)?;
    let v = |var| SuperPolynomial::var(n, var);
    let tau = SuperPolynomial::constant(mu)
        .mul(&v(Var::X))
        .mul(&v(Var::Theta1));
    let kappa = SuperPolynomial::constant(Supernumber::generator(n, 1));
    let phi = tau.mul(&v(Var::Theta2)).mul(&kappa).add(&v(Var::T));
    let dd = OddOperator::Dx.apply(&OddOperator::Dt.apply(&phi));
    // Φ is polynomial of degree 2 in (x, t); sinh is expanded far enough
    // that truncation plays no role on the terms inspected below.
    let sinh = phi.apply_analytic(AnalyticFn::Sinh, 8)?;
    let residual = dd.sub(&sinh);
    let explicit_x_terms: Vec<String> = residual
        .terms()
        .filter(|(m, c)| *m.x.numer() != 0 && m.theta & THETA1 == 0 && !c.is_zero())
        .map(|(m, c)| SuperPolynomial::term(*m, c.clone()).to_string())
        .collect();
    Ok(NonreducibilityWitness {
        subalgebra: SubalgebraId::S5,
        invariant: tau.to_string(),
        invariant_annihilated: annihilates(&rep.generator, &tau).annihilated,
        field: phi.to_string(),
        field_annihilated: annihilates(&rep.generator, &phi).annihilated,
        residual: residual.to_string(),
        reducible: explicit_x_terms.is_empty(),
        explicit_x_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s5_residual_keeps_explicit_x() {
        let w = s5_witness(4).unwrap();
        assert!(w.invariant_annihilated && w.field_annihilated);
        assert!(!w.reducible);
        assert!(!w.explicit_x_terms.is_empty());
    }
}
