//! Seeded random samples for property checks: supernumbers, polynomial
//! superfields and dyadic odd constants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grassmann::Supernumber;
use crate::superspace::{Monomial, SuperPolynomial};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dyadic rational `k / 2^bits` in `[-range, range]`; products of such
/// values are exact in floating point.
pub fn dyadic(rng: &mut SampleRng, range: f64, bits: u32) -> f64 {
    let scale = (1u64 << bits) as f64;
    let k = rng.gen_range(-(range * scale) as i64..=(range * scale) as i64);
    k as f64 / scale
}

/// Random element whose monomials all have grade of the given parity
/// (`odd = false` for even). `body` is used for the empty monomial.
pub fn supernumber(rng: &mut SampleRng, n: usize, odd: bool, body: f64, scale: f64) -> Supernumber {
    let mut terms = Vec::new();
    for mask in 0u16..(1 << n) {
        let grade_odd = mask.count_ones() % 2 == 1;
        if grade_odd != odd {
            continue;
        }
        if mask == 0 {
            terms.push((0, body));
        } else if rng.gen_bool(0.6) {
            terms.push((mask, rng.gen_range(-scale..scale)));
        }
    }
    Supernumber::from_terms(n, terms).expect("valid sample")
}

pub fn even(rng: &mut SampleRng, n: usize, body_range: f64) -> Supernumber {
    let body = rng.gen_range(-body_range..=body_range);
    supernumber(rng, n, false, body, 1.0)
}

pub fn odd(rng: &mut SampleRng, n: usize) -> Supernumber {
    supernumber(rng, n, true, 0.0, 1.0)
}

/// Odd constant supported on a single generator with a dyadic coefficient.
pub fn odd_generator_constant(rng: &mut SampleRng, n: usize, generator: usize) -> Supernumber {
    let mut c = 0.0;
    while c == 0.0 {
        c = dyadic(rng, 2.0, 3);
    }
    Supernumber::monomial(n, 1 << generator, c)
}

/// Random homogeneous polynomial in `(x, t, θ₁, θ₂)` of total spatial degree
/// at most `degree`. Coefficients on even θ-monomials share the parity
/// `odd`, those on odd θ-monomials the opposite one.
pub fn polynomial(
    rng: &mut SampleRng,
    n: usize,
    degree: i32,
    odd: bool,
    density: f64,
) -> SuperPolynomial {
    let mut p = SuperPolynomial::zero(n);
    for i in 0..=degree {
        for j in 0..=(degree - i) {
            for theta in 0u8..4 {
                if !rng.gen_bool(density) {
                    continue;
                }
                let coeff_odd = odd ^ (theta.count_ones() % 2 == 1);
                let body = if coeff_odd {
                    0.0
                } else {
                    rng.gen_range(-1.0..1.0)
                };
                let c = supernumber(rng, n, coeff_odd, body, 1.0);
                p.add_term(Monomial::new(i, j, theta), c);
            }
        }
    }
    p
}
