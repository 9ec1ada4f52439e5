//! Batch verification routines shared by the command-line tool and the
//! acceptance suite: operator algebra, invariant annihilation and the
//! super-KdV checks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::fieldcalc::{skdv_residual_from_jet, OddOperator};
use crate::grassmann::Supernumber;
use crate::reduction::{s5_witness, NonreducibilityWitness};
use crate::sampling::{self, SampleRng};
use crate::superspace::{Monomial, SuperPolynomial, Var};
use crate::symalg::{
    annihilates, kdv_nonstandard, subalgebra, verify_kdv_table, SubalgebraId, SubalgebraParams,
    TableReport,
};

pub const OPERATOR_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct OperatorAlgebraReport {
    pub fields: usize,
    /// Largest coefficient of `{A, B} − expected` per identity.
    pub deviations: BTreeMap<String, f64>,
    pub max_deviation: f64,
    pub pass: bool,
}

/// Anticommutators of `Dx, Dt, Qx, Qt` on random even polynomial
/// superfields: `{Qx,Qx} = −2∂x`, `{Qt,Qt} = 2∂t`, all others zero.
pub fn operator_algebra(n: usize, fields: usize, seed: u64) -> OperatorAlgebraReport {
    use OddOperator::*;
    let mut rng = sampling::rng(seed);
    let mut deviations: BTreeMap<String, f64> = BTreeMap::new();
    for _ in 0..fields {
        let p = sampling::polynomial(&mut rng, n, 3, false, 0.6);
        let ac = |a: OddOperator, b: OddOperator| a.apply(&b.apply(&p)).add(&b.apply(&a.apply(&p)));
        let zero = SuperPolynomial::zero(n);
        let mut cases = vec![
            (
                "{Qx,Qx}+2∂x".to_string(),
                ac(Qx, Qx).add(&p.deriv(Var::X).scale(2.0)),
            ),
            (
                "{Qt,Qt}-2∂t".to_string(),
                ac(Qt, Qt).sub(&p.deriv(Var::T).scale(2.0)),
            ),
            ("{Qx,Qt}".to_string(), ac(Qx, Qt)),
            ("{Dx,Dt}".to_string(), ac(Dx, Dt)),
        ];
        for d in [Dx, Dt] {
            for q in [Qx, Qt] {
                cases.push((format!("{{{d:?},{q:?}}}"), ac(d, q).sub(&zero)));
            }
        }
        for (name, diff) in cases {
            let e = deviations.entry(name).or_insert(0.0);
            *e = e.max(diff.max_abs_coeff());
        }
    }
    let max_deviation = deviations.values().copied().fold(0.0, f64::max);
    OperatorAlgebraReport {
        fields,
        deviations,
        max_deviation,
        pass: max_deviation < OPERATOR_TOLERANCE,
    }
}

/// Generic odd constant with dyadic coefficients on two odd monomials
/// (products stay exact).
pub fn generic_odd(rng: &mut SampleRng, n: usize, first: usize) -> Supernumber {
    let a = sampling::odd_generator_constant(rng, n, first);
    if n < 3 {
        return a;
    }
    let others: u16 = (0..n)
        .filter(|i| *i != first)
        .take(2)
        .fold(0, |m, i| m | (1 << i));
    let mask = (1u16 << first) | others;
    &a + &Supernumber::monomial(n, mask, sampling::dyadic(rng, 1.0, 3).max(0.125))
}

#[derive(Debug, Clone, Serialize)]
pub struct SubalgebraCheck {
    pub subalgebra: SubalgebraId,
    pub epsilon: f64,
    pub invariants_checked: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub degree: u32,
    pub checks: Vec<SubalgebraCheck>,
    pub s5_witness: NonreducibilityWitness,
    pub pass: bool,
}

/// Applies every subalgebra generator (both signs of ε, generic μ̲, ν̲) to
/// its standard invariants and to the nonstandard basis up to `degree`.
pub fn invariant_annihilation(n: usize, degree: u32, seed: u64) -> Result<InvariantReport> {
    let mut rng = sampling::rng(seed);
    let mu = generic_odd(&mut rng, n, 0);
    let nu = generic_odd(&mut rng, n, 1);
    let mut checks = Vec::new();
    for id in SubalgebraId::ALL {
        for eps in [1.0, -1.0] {
            let rep = subalgebra(id, SubalgebraParams::new(eps, mu.clone(), nu.clone()))?;
            let mut candidates: Vec<(String, SuperPolynomial)> = rep.invariants.clone();
            if let Some(ns) = &rep.nonstandard {
                for (k, b) in ns.basis(degree).into_iter().enumerate() {
                    candidates.push((format!("basis[{k}]"), b));
                }
            }
            let failures = candidates
                .iter()
                .filter(|(_, inv)| !annihilates(&rep.generator, inv).annihilated)
                .map(|(name, _)| name.clone())
                .collect();
            checks.push(SubalgebraCheck {
                subalgebra: id,
                epsilon: eps,
                invariants_checked: candidates.len(),
                failures,
            });
        }
    }
    let s5 = s5_witness(n)?;
    let pass =
        checks.iter().all(|c| c.failures.is_empty()) && s5.invariant_annihilated && !s5.reducible;
    Ok(InvariantReport {
        degree,
        checks,
        s5_witness: s5,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KdvNonstandardCheck {
    pub generator: String,
    pub invariants_checked: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KdvReport {
    pub table: TableReport,
    pub nonstandard: Vec<KdvNonstandardCheck>,
    /// `max |skdv_residual|` of the zero field.
    pub zero_field_residual: f64,
    /// Largest deviation, for θ-free fields, of the θ⁰ component from
    /// `u_t + u_xxx − 3a u²u_x`, of the θ₁θ₂ component from
    /// `−3a u_x u_xx − (a+2) u u_xxx`, and of the odd components from 0.
    pub classical_deviation: f64,
    pub pass: bool,
}

fn jet_at(p: &SuperPolynomial, x: f64, t: f64) -> Result<SuperPolynomial> {
    Ok(p.localize(x, t, 3)?.truncate(3))
}

/// Frozen bracket table, nonstandard invariants and the residual of the
/// N = 2 super-KdV equation.
pub fn kdv_check(n: usize, seed: u64) -> Result<KdvReport> {
    let mut rng = sampling::rng(seed);
    let table = verify_kdv_table(n)?;
    let mu = generic_odd(&mut rng, n, 0);
    let nu = generic_odd(&mut rng, n, 1);
    let mut nonstandard = Vec::new();
    for (name, field, invariants, ns) in kdv_nonstandard(n, &mu, &nu)? {
        let mut candidates = invariants;
        for (k, b) in ns.basis(3).into_iter().enumerate() {
            candidates.push((format!("basis[{k}]"), b));
        }
        let failures = candidates
            .iter()
            .filter(|(_, inv)| !annihilates(&field, inv).annihilated)
            .map(|(k, _)| k.clone())
            .collect();
        nonstandard.push(KdvNonstandardCheck {
            generator: name,
            invariants_checked: candidates.len(),
            failures,
        });
    }

    let zero = SuperPolynomial::zero(n);
    let mut zero_field_residual = 0.0f64;
    for a in [-2.0, 0.0, 1.0, 4.0] {
        zero_field_residual = zero_field_residual.max(skdv_residual_from_jet(&zero, a)?.max_abs());
    }

    // θ-free u(x, t) with real coefficients
    let mut classical_deviation = 0.0f64;
    for _ in 0..10 {
        let mut u = SuperPolynomial::zero(n);
        for i in 0..=3 {
            for j in 0..=(3 - i) {
                u.add_term(
                    Monomial::new(i, j, 0),
                    Supernumber::scalar(n, sampling::dyadic(&mut rng, 1.0, 4)),
                );
            }
        }
        let a = sampling::dyadic(&mut rng, 2.0, 2);
        let (x, t) = (
            sampling::dyadic(&mut rng, 1.0, 3),
            sampling::dyadic(&mut rng, 1.0, 3),
        );
        let r = skdv_residual_from_jet(&jet_at(&u, x, t)?, a)?;
        let val = |p: &SuperPolynomial| -> Result<f64> {
            Ok(p.evaluate(x, t, None)?.component(0).body())
        };
        let ux = u.deriv(Var::X);
        let uxx = ux.deriv(Var::X);
        let (u0, u1, u2, u3) = (val(&u)?, val(&ux)?, val(&uxx)?, val(&uxx.deriv(Var::X))?);
        let classical = val(&u.deriv(Var::T))? + u3 - 3.0 * a * u0 * u0 * u1;
        let top = -3.0 * a * u1 * u2 - (a + 2.0) * u0 * u3;
        let dev = (r.component(0).body() - classical)
            .abs()
            .max((r.component(3).body() - top).abs())
            .max(r.component(0).soul().max_abs())
            .max(r.component(3).soul().max_abs())
            .max(r.component(1).max_abs())
            .max(r.component(2).max_abs());
        classical_deviation = classical_deviation.max(dev);
    }
    let pass = table.all_pass()
        && nonstandard.iter().all(|c| c.failures.is_empty())
        && zero_field_residual == 0.0
        && classical_deviation < 1e-10;
    Ok(KdvReport {
        table,
        nonstandard,
        zero_field_residual,
        classical_deviation,
        pass,
    })
}
