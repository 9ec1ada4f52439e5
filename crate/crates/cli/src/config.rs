use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use supersinh::fieldcalc::GridSpec;
use supersinh::reduction::{OddInitial, SigmaGrid, SolveRequest};
use supersinh::symalg::SubalgebraId;
use supersinh::{Error, Parity, Result, Supernumber};

/// Supernumber literal `[[mask, coeff], …]`.
pub type Literal = Vec<(u16, f64)>;

pub const DEFAULT_GENERATORS: usize = 4;
pub const DEFAULT_GRID: &str = "-5:5:2001";
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IcConfig {
    pub alpha: Option<f64>,
    pub dalpha: Option<f64>,
    pub eta: Option<Literal>,
    pub lambda: Option<Literal>,
    pub f: Option<f64>,
    pub df: Option<f64>,
    pub sigma: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WindowConfig {
    pub x: Option<[f64; 2]>,
    pub t: Option<[f64; 2]>,
    pub nx: Option<usize>,
    pub nt: Option<usize>,
}

/// Everything a run can be configured with. Loaded from `--config` and
/// then overridden by command-line flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub seed: Option<u64>,
    pub generators: Option<usize>,
    pub subalgebra: Option<String>,
    pub epsilon: Option<f64>,
    pub mu: Option<Literal>,
    pub nu: Option<Literal>,
    pub k: Option<Literal>,
    pub c0: Option<Literal>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub ic: IcConfig,
    pub grid: Option<String>,
    pub window: WindowConfig,
    pub tolerance: Option<f64>,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub solution: Option<PathBuf>,
    pub sentinel: Option<bool>,
    pub fields: Option<usize>,
    pub degree: Option<u32>,
    pub root: Option<usize>,
}

pub fn set<T>(slot: &mut Option<T>, flag: Option<T>) {
    if flag.is_some() {
        *slot = flag;
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Configuration(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Configuration(format!("invalid config {}: {e}", path.display())))
    }

    /// Rejects a config written for a different subcommand.
    pub fn check_command(&self, name: &str) -> Result<()> {
        match &self.command {
            Some(c) if c != name => Err(Error::Configuration(format!(
                "config is for command {c:?}, running {name:?}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn generators(&self) -> Result<usize> {
        let n = self.generators.unwrap_or(DEFAULT_GENERATORS);
        if !(1..=16).contains(&n) {
            return Err(Error::Configuration(format!(
                "generators must be in 1..=16, got {n}"
            )));
        }
        Ok(n)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn epsilon(&self) -> Result<f64> {
        let e = self.epsilon.unwrap_or(1.0);
        if e != 1.0 && e != -1.0 {
            return Err(Error::Configuration(format!("ε must be ±1, got {e}")));
        }
        Ok(e)
    }

    pub fn tolerance(&self) -> Result<f64> {
        let t = self.tolerance.unwrap_or(DEFAULT_TOLERANCE);
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Configuration(format!(
                "tolerance must be positive, got {t}"
            )));
        }
        Ok(t)
    }

    pub fn subalgebra(&self) -> Result<SubalgebraId> {
        let s = self
            .subalgebra
            .as_deref()
            .ok_or_else(|| Error::Configuration("--subalgebra is required".into()))?;
        SubalgebraId::parse(s)
    }

    pub fn grid(&self) -> Result<SigmaGrid> {
        SigmaGrid::parse(self.grid.as_deref().unwrap_or(DEFAULT_GRID))
    }

    /// Certification window, `[−1, 1]²` with 101 × 101 points by default.
    pub fn window(&self) -> Result<GridSpec> {
        let w = &self.window;
        let x = w.x.unwrap_or([-1.0, 1.0]);
        let t = w.t.unwrap_or([-1.0, 1.0]);
        let g = GridSpec::new(
            (x[0], x[1]),
            (t[0], t[1]),
            w.nx.unwrap_or(101),
            w.nt.unwrap_or(101),
        );
        g.validate()?;
        Ok(g)
    }

    fn literal(&self, name: &str, v: &Option<Literal>, parity: Parity) -> Result<Supernumber> {
        let n = self.generators()?;
        let s = match v {
            Some(l) => Supernumber::from_literal(n, l)?,
            None => Supernumber::zero(n),
        };
        if !s.is_zero() && s.parity() != parity {
            return Err(Error::Parity(format!("{name} must be {parity:?}")));
        }
        Ok(s)
    }

    pub fn c0(&self) -> Result<Supernumber> {
        self.literal("C0", &self.c0, Parity::Even)
    }

    pub fn solve_request(&self) -> Result<SolveRequest> {
        let n = self.generators()?;
        let mut req = SolveRequest::new(self.subalgebra()?, self.epsilon()?, n, self.grid()?);
        req.mu = self.literal("mu", &self.mu, Parity::Odd)?;
        req.nu = self.literal("nu", &self.nu, Parity::Odd)?;
        req.k = self.literal("K", &self.k, Parity::Odd)?;
        req.c0 = self.c0()?;
        req.c1 = self.c1;
        req.c2 = self.c2;
        let ic = &self.ic;
        req = req.with_alpha(ic.alpha.unwrap_or(0.0), ic.dalpha.unwrap_or(0.0));
        req.ic_sigma = ic.sigma;
        let explicit = ic.eta.is_some() || ic.lambda.is_some();
        let function = ic.f.is_some() || ic.df.is_some();
        req.odd = match (explicit, function) {
            (true, true) => {
                return Err(Error::Configuration(
                    "give either --ic-eta/--ic-lambda or --ic-f/--ic-df, not both".into(),
                ))
            }
            (true, false) => OddInitial::Explicit {
                eta: self.literal("eta", &ic.eta, Parity::Odd)?,
                lambda: self.literal("lambda", &ic.lambda, Parity::Odd)?,
            },
            (false, true) => OddInitial::Function {
                f: ic.f.unwrap_or(0.0),
                df: ic.df.unwrap_or(0.0),
            },
            (false, false) => OddInitial::Auto,
        };
        Ok(req)
    }
}

/// `a:b` as a closed interval.
pub fn parse_range(text: &str) -> std::result::Result<[f64; 2], String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("expected a:b, got {text:?}"))?;
    let a: f64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad number in {text:?}"))?;
    let b: f64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad number in {text:?}"))?;
    Ok([a, b])
}

pub fn parse_literal(text: &str) -> std::result::Result<Literal, String> {
    serde_json::from_str(text).map_err(|e| format!("expected [[mask, coeff], …]: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_fields() {
        let cfg: RunConfig = serde_json::from_str(
            r#"{"subalgebra": "S4", "epsilon": -1, "c0": [[12, 0.5]], "ic": {"alpha": 0.2}, "window": {"x": [0, 1]}}"#,
        )
        .unwrap();
        let req = cfg.solve_request().unwrap();
        assert_eq!(req.epsilon, -1.0);
        assert_eq!(req.c0.coeff(12), 0.5);
        assert_eq!(req.alpha0.body(), 0.2);
        assert_eq!(cfg.window().unwrap().x_max, 1.0);
        assert!(serde_json::from_str::<RunConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn literal_parities_are_checked() {
        let cfg = RunConfig {
            subalgebra: Some("S4".into()),
            c0: Some(vec![(1, 0.5)]),
            ..Default::default()
        };
        assert!(matches!(cfg.solve_request(), Err(Error::Parity(_))));
        let cfg = RunConfig {
            tolerance: Some(0.0),
            ..Default::default()
        };
        assert!(cfg.tolerance().is_err());
    }
}
