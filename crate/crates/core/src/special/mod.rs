//! Special functions and ring-generic numerics.

pub mod elliptic;
pub mod numeric;
pub mod ode;
pub mod weierstrass;

pub use elliptic::{
    carlson_rf, elliptic_f, elliptic_k, elliptic_k_agm, jacobi_branch_valid, jacobi_sncndn,
    travelling_wave_modulus, FConvention,
};
pub use numeric::{brent_root, quadrature, quadrature_with, real_roots};
pub use ode::{rk4_ring, rk4_step, rk4_system, taylor_jet, OdeSystem};
pub use weierstrass::{
    weierstrass_p, weierstrass_p_real, weierstrass_solution, Quartic, QuarticInvariants,
};
