//! One PASS/FAIL line per acceptance criterion. Runs as a plain binary so
//! the lines always appear in `cargo test` output.

use std::sync::Arc;
use std::time::Instant;

use supersinh::fieldcalc::{
    shg_report, shg_residual, DerivativeScheme, FieldPoint, GridSpec, PulledBackField, Superfield,
};
use supersinh::reduction::{
    central_difference, certify, mapped_residual, mirror_s8, quadrature_check, reconstruct,
    reduced_equations, solve_s4, solve_s8_s12, ExpSumProfile, OddInitial, Profile,
    ReconstructedField, ReducedValues, SigmaGrid,
};
use supersinh::sampling::{self, SampleRng};
use supersinh::special::{
    elliptic_k, jacobi_sncndn, weierstrass_p_real, weierstrass_solution, Quartic,
};
use supersinh::symalg::{
    flow_transform, subalgebra, verify_table1, FlowGenerator, SubalgebraId, SubalgebraParams,
};
use supersinh::verify::{generic_odd, invariant_annihilation, kdv_check, operator_algebra};
use supersinh::{Result, Supernumber};

const N: usize = 4;
const SEED: u64 = 7;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn c1_table() -> Result<Outcome> {
    let t0 = Instant::now();
    let r = verify_table1(N, false)?;
    let secs = t0.elapsed().as_secs_f64();
    outcome(
        r.all_pass() && r.cells.len() == 25 && secs < 1.0,
        format!("{}/25 cells, {secs:.3} s (limit 1 s)", r.passed()),
    )
}

fn c2_operators() -> Result<Outcome> {
    let t0 = Instant::now();
    let r = operator_algebra(N, 100, SEED);
    let secs = t0.elapsed().as_secs_f64();
    outcome(
        r.pass && secs < 10.0,
        format!(
            "100 fields, max deviation {:.2e} (< 1e-10), {secs:.2} s",
            r.max_deviation
        ),
    )
}

fn c3_invariants() -> Result<Outcome> {
    let t0 = Instant::now();
    let r = invariant_annihilation(N, 3, SEED)?;
    let secs = t0.elapsed().as_secs_f64();
    let checked: usize = r.checks.iter().map(|c| c.invariants_checked).sum();
    let failed: usize = r.checks.iter().map(|c| c.failures.len()).sum();
    outcome(
        r.pass && secs < 30.0,
        format!(
            "{} subalgebra/ε cases, {checked} invariants, {failed} failures, S5 explicit-x terms {}, {secs:.2} s",
            r.checks.len(),
            r.s5_witness.explicit_x_terms.len()
        ),
    )
}

fn random_profile(rng: &mut SampleRng) -> ExpSumProfile {
    let mut slot = |odd: bool| -> Vec<(Supernumber, f64)> {
        (0..2)
            .map(|_| {
                let c = if odd {
                    sampling::odd(rng, N)
                } else {
                    sampling::even(rng, N, 0.5)
                };
                (c, sampling::dyadic(rng, 0.5, 6))
            })
            .collect()
    };
    ExpSumProfile::new(N, [slot(false), slot(true), slot(true), slot(false)])
}

fn c4_table3() -> Result<Outcome> {
    let t0 = Instant::now();
    let mut rng = sampling::rng(SEED);
    let mu = generic_odd(&mut rng, N, 0);
    let nu = generic_odd(&mut rng, N, 1);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for id in SubalgebraId::ALL
        .into_iter()
        .filter(|i| !i.is_nonstandard())
    {
        for eps in [1.0, -1.0] {
            let rep = subalgebra(id, SubalgebraParams::new(eps, mu.clone(), nu.clone()))?;
            let profile: Arc<dyn Profile> = Arc::new(random_profile(&mut rng));
            let field = ReconstructedField::new(rep.clone(), profile.clone())?;
            for _ in 0..4 {
                // S1 needs t > 0
                let pt = FieldPoint::new(
                    sampling::dyadic(&mut rng, 1.0, 4),
                    0.25 + sampling::dyadic(&mut rng, 1.0, 4).abs(),
                );
                let full = shg_residual(&field, pt)?;
                let mapped = mapped_residual(&rep, profile.as_ref(), pt)?;
                worst = worst.max(full.sub(&mapped).max_abs());
                cases += 1;
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    outcome(
        worst < 1e-9 && secs < 60.0,
        format!("{cases} points over 10 subalgebras x 2 signs, max |full - mapped| {worst:.2e} (< 1e-9), {secs:.2} s"),
    )
}

fn c5_s4_bosonic() -> Result<Outcome> {
    let z = Supernumber::zero(N);
    let grid = SigmaGrid::new(-5.0, 5.0, 2001)?;
    let r = solve_s4(
        1.0,
        &z,
        None,
        &Supernumber::scalar(N, 0.8),
        &Supernumber::scalar(N, 0.3),
        OddInitial::Auto,
        grid,
    )?;
    // independent energy evaluation from the sampled grids
    let d = r.derivatives.as_ref().expect("solver stores derivatives");
    let energy: Vec<f64> = (0..r.len())
        .map(|i| 0.5 * d.alpha1[i].body().powi(2) + 0.5 * r.alpha[i].body().sinh().powi(2))
        .collect();
    let drift = energy
        .iter()
        .map(|e| (e - energy[r.ic_index]).abs())
        .fold(0.0, f64::max);
    let window = GridSpec::new((-2.0, 2.0), (-2.0, 2.0), 101, 101);
    let cert = certify(&r, window)?;
    let quad = quadrature_check(&r, 0.25)?;
    outcome(
        drift < 1e-8 && cert.passes(1e-6) && quad.max_error < 1e-6,
        format!(
            "energy drift {drift:.2e} (< 1e-8), 101x101 residual {:.2e} (< 1e-6), quadrature {:.2e} over {} segments, {} turning points (< 1e-6)",
            cert.max_abs(),
            quad.max_error,
            quad.segments,
            quad.turning_points
        ),
    )
}

/// First-order sensitivity `δ = ∂α/∂C₀` from
/// `εδ'' + (cosh²α + sinh²α)δ + sinh α = 0`, integrated with its own RK4.
fn variational(eps: f64, a0: f64, da0: f64, nodes: &[f64], ic: usize) -> Vec<f64> {
    let rhs = |y: [f64; 4]| -> [f64; 4] {
        let (sh, ch) = (y[0].sinh(), y[0].cosh());
        [
            y[1],
            -eps * sh * ch,
            y[3],
            -eps * ((ch * ch + sh * sh) * y[2] + sh),
        ]
    };
    let step = |y: [f64; 4], h: f64| -> [f64; 4] {
        let add = |a: [f64; 4], b: [f64; 4], k: f64| {
            [
                a[0] + k * b[0],
                a[1] + k * b[1],
                a[2] + k * b[2],
                a[3] + k * b[3],
            ]
        };
        let k1 = rhs(y);
        let k2 = rhs(add(y, k1, h / 2.0));
        let k3 = rhs(add(y, k2, h / 2.0));
        let k4 = rhs(add(y, k3, h));
        let mut out = y;
        for i in 0..4 {
            out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        out
    };
    let sub = 16;
    let mut out = vec![0.0; nodes.len()];
    for dir in [1isize, -1] {
        let mut y = [a0, da0, 0.0, 0.0];
        let mut i = ic as isize;
        loop {
            out[i as usize] = y[2];
            let j = i + dir;
            if j < 0 || j as usize >= nodes.len() {
                break;
            }
            let h = (nodes[j as usize] - nodes[i as usize]) / sub as f64;
            for _ in 0..sub {
                y = step(y, h);
            }
            i = j;
        }
    }
    out
}

fn c6_s4_nilpotent() -> Result<Outcome> {
    let mask = 0b0011;
    let coeff = 0.5;
    let c0 = Supernumber::monomial(N, mask, coeff);
    let mut worst_rel = 0.0f64;
    let mut worst_constraint = 0.0f64;
    // ε = −1 is the unstable branch; smaller amplitude and range
    for (eps, a0, da0, range) in [(1.0, 0.6, 0.2, 5.0), (-1.0, 0.1, 0.05, 2.0)] {
        let grid = SigmaGrid::new(-range, range, 2001)?;
        let r = solve_s4(
            eps,
            &c0,
            None,
            &Supernumber::scalar(N, a0),
            &Supernumber::scalar(N, da0),
            OddInitial::Auto,
            grid,
        )?;
        let delta = variational(eps, a0, da0, &r.sigma, r.ic_index);
        let scale = delta.iter().map(|d| (coeff * d).abs()).fold(0.0, f64::max);
        let err = r
            .alpha
            .iter()
            .zip(&delta)
            .map(|(a, d)| (a.coeff(mask) - coeff * d).abs())
            .fold(0.0, f64::max);
        worst_rel = worst_rel.max(err / scale);
        let constraint = r
            .eta
            .iter()
            .zip(&r.lambda)
            .map(|(e, l)| (&(e * l) - &c0).max_abs())
            .fold(0.0, f64::max);
        worst_constraint = worst_constraint.max(constraint);
    }
    outcome(
        worst_rel < 1e-6 && worst_constraint < 1e-8,
        format!("soul vs variational ODE rel. error {worst_rel:.2e} (< 1e-6), max |ηλ - C0| {worst_constraint:.2e} (< 1e-8)"),
    )
}

fn c7_mirror() -> Result<Outcome> {
    let mu = Supernumber::monomial(N, 0b0001, 0.5);
    let mut mirror_err = 0.0f64;
    let mut restr_err = 0.0f64;
    for (eps, a0, da0) in [(1.0, 0.5, 0.2), (-1.0, 0.05, 0.02)] {
        let (a0, da0) = (Supernumber::scalar(N, a0), Supernumber::scalar(N, da0));
        let grid = SigmaGrid::new(-3.0, 3.0, 1201)?;
        let odd = OddInitial::Explicit {
            eta: Supernumber::monomial(N, 0b0100, 0.3),
            lambda: Supernumber::monomial(N, 0b0010, 0.4),
        };
        let s8 = solve_s8_s12(SubalgebraId::S8, eps, &mu, &a0, &da0, odd, grid)?;
        let s12 = solve_s8_s12(
            SubalgebraId::S12,
            eps,
            &mu,
            &a0,
            &da0.scale(-eps),
            OddInitial::Explicit {
                eta: s8.lambda[s8.ic_index].scale(eps),
                lambda: s8.eta[s8.ic_index].scale(-eps),
            },
            grid,
        )?;
        let pred = mirror_s8(&s8)?;
        for (a, b) in s12.slots().iter().zip(pred.slots()) {
            for (x, y) in a.iter().zip(b.iter()) {
                mirror_err = mirror_err.max((x - y).max_abs());
            }
        }
        // (ηλ)_σ = −α_σ μ λ by finite differences of the sampled grids
        let h = grid.step();
        let el: Vec<Supernumber> = s8.eta.iter().zip(&s8.lambda).map(|(e, l)| e * l).collect();
        let d_el = central_difference(&el, h);
        let d_a = central_difference(&s8.alpha, h);
        for i in 2..s8.len() - 2 {
            let rhs = (&(&d_a[i] * &mu) * &s8.lambda[i]).scale(-1.0);
            restr_err = restr_err.max((&d_el[i] - &rhs).max_abs());
        }
    }
    outcome(
        mirror_err < 1e-8 && restr_err < 1e-8,
        format!("S12 vs mirrored S8 {mirror_err:.2e} (< 1e-8), S8 odd constraint by finite differences {restr_err:.2e} (< 1e-8)"),
    )
}

fn c8_elliptic() -> Result<Outcome> {
    let mut rng = sampling::rng(SEED);
    let mut jacobi = 0.0f64;
    let mut quarter = 0.0f64;
    for _ in 0..200 {
        let k = sampling::dyadic(&mut rng, 1.0, 10).abs().min(0.999);
        let u = sampling::dyadic(&mut rng, 6.0, 10);
        let (sn, cn, dn) = jacobi_sncndn(u, k)?;
        jacobi = jacobi
            .max((sn * sn + cn * cn - 1.0).abs())
            .max((dn * dn + k * k * sn * sn - 1.0).abs());
        quarter = quarter.max((jacobi_sncndn(elliptic_k(k)?, k)?.0 - 1.0).abs());
    }
    let mut p_ode = 0.0f64;
    for _ in 0..100 {
        let g2 = sampling::dyadic(&mut rng, 4.0, 8);
        let g3 = sampling::dyadic(&mut rng, 4.0, 8);
        let z = 0.1 + sampling::dyadic(&mut rng, 0.8, 8).abs();
        let (p, dp) = weierstrass_p_real(z, g2, g3)?;
        let res = dp * dp - (4.0 * p * p * p - g2 * p - g3);
        p_ode = p_ode.max(res.abs() / (1.0 + (p * p * p).abs()));
    }
    // C₀ = 0, y₀ a root of the quartic
    let q = Quartic::new(Supernumber::zero(N), 2.0);
    let y0 = q.lift_root(q.real_roots()?[0])?;
    let mut y_ode = 0.0f64;
    for i in 0..201 {
        let s = -2.0 + 0.02 * i as f64 + 0.001;
        let (y, dy) = weierstrass_solution(&q, &y0, 0.0, s)?;
        y_ode = y_ode.max((4.0 * dy.body().powi(2) - q.eval_real(y.body())).abs());
    }
    let inv = q.invariants();
    // C₀² ≠ 0 needs two disjoint terms
    let c0 = Supernumber::from_terms(N, [(0b0011, 0.5), (0b1100, 0.25)])?;
    let nil = Quartic::new(c0, 2.0).invariants();
    outcome(
        jacobi < 1e-12 && quarter < 1e-10 && p_ode < 1e-8 && y_ode < 1e-6 && inv.g2_agree && inv.g3_agree,
        format!(
            "Jacobi {jacobi:.1e} (< 1e-12), sn(K) {quarter:.1e}, P ODE {p_ode:.1e} (< 1e-8), 4y'^2 = f(y) {y_ode:.1e} (< 1e-6), g2 agree at C0 = 0: {}; g3 discrepancy (reported, not asserted) for C0 = 0.5 e1e2 + 0.25 e3e4: {:?}",
            inv.g2_agree,
            nil.g3_discrepancy.to_literal()
        ),
    )
}

fn c9_null() -> Result<Outcome> {
    let mut rng = sampling::rng(SEED);
    let mu = generic_odd(&mut rng, N, 0);
    let nu = generic_odd(&mut rng, N, 1);
    let mut min_nonzero = f64::INFINITY;
    let mut zero_max = 0.0f64;
    let mut cases = 0;
    for id in SubalgebraId::ALL.into_iter().filter(|i| i.is_null()) {
        for eps in [1.0, -1.0] {
            let params = SubalgebraParams::new(eps, mu.clone(), nu.clone());
            for _ in 0..20 {
                let mut alpha = sampling::even(&mut rng, N, 1.5);
                if alpha.body().abs() < 0.2 {
                    alpha = &alpha + &Supernumber::scalar(N, 0.5);
                }
                let v = ReducedValues {
                    s: Supernumber::scalar(N, sampling::dyadic(&mut rng, 2.0, 6)),
                    alpha: alpha.clone(),
                    alpha1: sampling::even(&mut rng, N, 1.0),
                    alpha2: sampling::even(&mut rng, N, 1.0),
                    eta: sampling::odd(&mut rng, N),
                    eta1: sampling::odd(&mut rng, N),
                    lambda: sampling::odd(&mut rng, N),
                    lambda1: sampling::odd(&mut rng, N),
                    beta: alpha.sinh()?.scale(-1.0),
                };
                let r = reduced_equations(id, &params, &v)?;
                min_nonzero = min_nonzero.min(r.iter().map(|e| e.max_abs()).fold(0.0, f64::max));
                cases += 1;
            }
            let z = Supernumber::zero(N);
            let zero = ReducedValues {
                s: Supernumber::scalar(N, 0.7),
                alpha: z.clone(),
                alpha1: z.clone(),
                alpha2: z.clone(),
                eta: z.clone(),
                eta1: z.clone(),
                lambda: z.clone(),
                lambda1: z.clone(),
                beta: z,
            };
            let r = reduced_equations(id, &params, &zero)?;
            zero_max = zero_max.max(r.iter().map(|e| e.max_abs()).fold(0.0, f64::max));
        }
    }
    outcome(
        min_nonzero > 1e-6 && zero_max == 0.0,
        format!("{cases} random candidates, smallest residual {min_nonzero:.2e} (> 0), Φ = 0 residual {zero_max:.1e}"),
    )
}

fn c10_flow() -> Result<Outcome> {
    let c0 = Supernumber::monomial(N, 0b0011, 0.5);
    let grid = SigmaGrid::new(-5.0, 5.0, 2001)?;
    let r = solve_s4(
        1.0,
        &c0,
        None,
        &Supernumber::scalar(N, 0.6),
        &Supernumber::scalar(N, 0.2),
        OddInitial::Auto,
        grid,
    )?;
    let window = GridSpec::new((-1.5, 1.5), (-1.5, 1.5), 41, 41);
    let before = certify(&r, window)?;
    let field: Arc<dyn Superfield> = Arc::new(reconstruct(&r)?);
    let mut worst = 0.0f64;
    for (gen, k) in [(FlowGenerator::Qx, 2), (FlowGenerator::Qt, 3)] {
        let map = flow_transform(gen, &Supernumber::monomial(N, 1 << k, 0.375))?;
        let moved = PulledBackField::new(field.clone(), map);
        worst = worst.max(shg_report(&moved, window, DerivativeScheme::Analytic)?.max_abs());
    }
    outcome(
        before.passes(1e-6) && worst < 1e-6,
        format!(
            "certified S4 ({:.1e}) after Qx and Qt flows: {worst:.2e} (< 1e-6)",
            before.max_abs()
        ),
    )
}

fn c11_kdv() -> Result<Outcome> {
    let r = kdv_check(N, SEED)?;
    let ns: usize = r.nonstandard.iter().map(|c| c.invariants_checked).sum();
    let a1 = r
        .table
        .cells
        .get("A1,A1")
        .map(|c| c.computed.clone())
        .unwrap_or_default();
    outcome(
        r.pass && a1 == "-2C1",
        format!(
            "{}/{} bracket cells ({{A1,A1}} = {a1}), {ns} nonstandard invariants, zero field {:.1e}, theta-free fields {:.1e}",
            r.table.passed(),
            r.table.cells.len(),
            r.zero_field_residual,
            r.classical_deviation
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 11] = [
        ("supercommutation table", c1_table),
        ("operator algebra", c2_operators),
        ("invariant annihilation", c3_invariants),
        ("reduced-equation consistency", c4_table3),
        ("S4 bosonic travelling wave", c5_s4_bosonic),
        ("S4 with nilpotent C0", c6_s4_nilpotent),
        ("S8/S12 mirror symmetry", c7_mirror),
        ("elliptic layer", c8_elliptic),
        ("null-solution subalgebras", c9_null),
        ("supersymmetry flow covariance", c10_flow),
        ("super-KdV check", c11_kdv),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} [{}] {name}: {detail} ({:.2} s)",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            t0.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed, total {:.1} s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
