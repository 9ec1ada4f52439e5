//! Ring-generic RK4 and Taylor jets of ODE solutions.

use crate::algebra::{AnalyticRing, Ring, Series};
use crate::error::{Error, Result};
use crate::grassmann::Supernumber;

/// First-order system `y' = F(s, y)` whose right-hand side only uses ring
/// operations, so it can be evaluated on supernumbers and on series.
pub trait OdeSystem: Send + Sync {
    fn dim(&self) -> usize;
    fn rhs<R: AnalyticRing>(&self, s: &R, y: &[R]) -> Result<Vec<R>>;
}

fn check(y: &[impl Ring], s: f64) -> Result<()> {
    if y.iter().all(Ring::is_finite) {
        Ok(())
    } else {
        Err(Error::Numerical(format!("non-finite state at σ = {s}")))
    }
}

fn axpy<R: Ring>(y: &[R], k: &[R], h: f64) -> Vec<R> {
    y.iter().zip(k).map(|(a, b)| a.add(&b.scale(h))).collect()
}

/// One classical RK4 step of size `h`.
pub fn rk4_step<R, F>(f: &F, s: f64, y: &[R], h: f64) -> Result<Vec<R>>
where
    R: Ring,
    F: Fn(f64, &[R]) -> Result<Vec<R>>,
{
    let k1 = f(s, y)?;
    let k2 = f(s + 0.5 * h, &axpy(y, &k1, 0.5 * h))?;
    let k3 = f(s + 0.5 * h, &axpy(y, &k2, 0.5 * h))?;
    let k4 = f(s + h, &axpy(y, &k3, h))?;
    Ok(y.iter()
        .enumerate()
        .map(|(i, v)| {
            let incr = k1[i]
                .add(&k2[i].scale(2.0))
                .add(&k3[i].scale(2.0))
                .add(&k4[i]);
            v.add(&incr.scale(h / 6.0))
        })
        .collect())
}

/// Integrates `y' = f(s, y)` along `grid`, starting from `y0` at
/// `grid[ic_index]` and stepping outwards in both directions with `substeps`
/// RK4 steps per grid interval. Only ring operations touch the state.
pub fn rk4_ring<R, F>(
    f: F,
    y0: Vec<R>,
    grid: &[f64],
    ic_index: usize,
    substeps: usize,
) -> Result<Vec<Vec<R>>>
where
    R: Ring,
    F: Fn(f64, &[R]) -> Result<Vec<R>>,
{
    if grid.is_empty() || ic_index >= grid.len() {
        return Err(Error::Configuration(
            "initial index outside the grid".into(),
        ));
    }
    let substeps = substeps.max(1);
    check(&y0, grid[ic_index])?;
    let mut out: Vec<Option<Vec<R>>> = vec![None; grid.len()];
    out[ic_index] = Some(y0.clone());
    for dir in [1isize, -1] {
        let mut y = y0.clone();
        let mut i = ic_index as isize;
        loop {
            let j = i + dir;
            if j < 0 || j >= grid.len() as isize {
                break;
            }
            let (a, b) = (grid[i as usize], grid[j as usize]);
            let h = (b - a) / substeps as f64;
            for m in 0..substeps {
                y = rk4_step(&f, a + m as f64 * h, &y, h)?;
            }
            check(&y, b)?;
            out[j as usize] = Some(y.clone());
            i = j;
        }
    }
    Ok(out
        .into_iter()
        .map(|v| v.expect("every node visited"))
        .collect())
}

/// Integrates an [`OdeSystem`] on supernumbers.
pub fn rk4_system<S: OdeSystem>(
    sys: &S,
    y0: Vec<Supernumber>,
    grid: &[f64],
    ic_index: usize,
    substeps: usize,
) -> Result<Vec<Vec<Supernumber>>> {
    let n = y0.first().map(Supernumber::generators).unwrap_or(0);
    rk4_ring(
        |s, y: &[Supernumber]| sys.rhs(&Supernumber::scalar(n, s), y),
        y0,
        grid,
        ic_index,
        substeps,
    )
}

/// Taylor expansion of the solution through `(s0, y0)` up to `degree`, by
/// Picard iteration on truncated series (each sweep fixes one more
/// coefficient).
pub fn taylor_jet<S: OdeSystem>(
    sys: &S,
    s0: f64,
    y0: &[Supernumber],
    degree: usize,
) -> Result<Vec<Series>> {
    let n = y0.first().map(Supernumber::generators).unwrap_or(0);
    let mut y: Vec<Series> = y0
        .iter()
        .map(|c| Series::constant_series(c.clone(), 0))
        .collect();
    for d in 1..=degree {
        let s = Series::variable(Supernumber::scalar(n, s0), d);
        let prev: Vec<Series> = y.iter().map(|v| v.truncate(d)).collect();
        let f = sys.rhs(&s, &prev)?;
        y = f
            .iter()
            .zip(y0)
            .map(|(fi, c)| fi.truncate(d - 1).integrate(c.clone()))
            .collect();
    }
    if !y.iter().all(Ring::is_finite) {
        return Err(Error::Numerical(format!(
            "non-finite Taylor jet at σ = {s0}"
        )));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Exp;
    impl OdeSystem for Exp {
        fn dim(&self) -> usize {
            1
        }
        fn rhs<R: AnalyticRing>(&self, _s: &R, y: &[R]) -> Result<Vec<R>> {
            Ok(vec![y[0].clone()])
        }
    }

    fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect()
    }

    #[test]
    fn zero_field_is_constant() {
        let y0 = vec![Supernumber::scalar(2, 0.7)];
        let traj = rk4_ring(
            |_, y: &[Supernumber]| Ok(vec![y[0].zero_like()]),
            y0.clone(),
            &grid(0.0, 1.0, 11),
            0,
            1,
        )
        .unwrap();
        assert!(traj.iter().all(|v| v == &y0));
    }

    #[test]
    fn exponential_and_order() {
        let g = grid(0.0, 1.0, 1001);
        let traj = rk4_ring(|_, y: &[f64]| Ok(vec![y[0]]), vec![1.0], &g, 0, 1).unwrap();
        let e1 = (traj[1000][0] - 1f64.exp()).abs();
        assert!(e1 < 1e-8);
        let coarse = rk4_ring(
            |_, y: &[f64]| Ok(vec![y[0]]),
            vec![1.0],
            &grid(0.0, 1.0, 11),
            0,
            1,
        )
        .unwrap();
        let fine = rk4_ring(
            |_, y: &[f64]| Ok(vec![y[0]]),
            vec![1.0],
            &grid(0.0, 1.0, 21),
            0,
            1,
        )
        .unwrap();
        let ratio = (coarse[10][0] - 1f64.exp()).abs() / (fine[20][0] - 1f64.exp()).abs();
        assert!((ratio - 16.0).abs() < 1.5, "{ratio}");
    }

    #[test]
    fn nilpotent_forcing() {
        let n = 2;
        let c = Supernumber::monomial(n, 0b11, 1.0);
        let traj = rk4_ring(
            |_, y: &[Supernumber]| Ok(vec![&y[0] + &c]),
            vec![Supernumber::zero(n)],
            &grid(0.0, 1.0, 1001),
            0,
            1,
        )
        .unwrap();
        let last = &traj[1000][0];
        assert!(last.body().abs() < 1e-15);
        assert!((last.coeff(0b11) - (1f64.exp() - 1.0)).abs() < 1e-8);
    }

    #[test]
    fn backward_from_centre() {
        let g = grid(-1.0, 1.0, 201);
        let traj = rk4_ring(|_, y: &[f64]| Ok(vec![y[0]]), vec![1.0], &g, 100, 2).unwrap();
        assert!((traj[0][0] - (-1f64).exp()).abs() < 1e-10);
        assert!((traj[200][0] - 1f64.exp()).abs() < 1e-10);
    }

    #[test]
    fn taylor_jet_of_exponential() {
        let jet = taylor_jet(&Exp, 0.0, &[Supernumber::scalar(1, 2.0)], 6).unwrap();
        let mut fact = 1.0;
        for k in 0..=6 {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((jet[0].coeffs()[k].body() - 2.0 / fact).abs() < 1e-14);
        }
    }
}
