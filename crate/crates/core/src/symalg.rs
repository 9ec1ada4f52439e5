//! Lie superalgebra engine: vector fields on superspace with polynomial
//! coefficients, superbrackets, the symmetry generators of the sinh-Gordon
//! and super-KdV equations, one-dimensional subalgebras with their
//! invariants, and finite flows.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{Parity, Supernumber};
use crate::superspace::{Monomial, Substitution, SuperPolynomial, Var};

/// `ξ∂x + τ∂t + Λ∂Φ + ρ∂θ₁ + σ∂θ₂` with a declared parity.
#[derive(Clone, PartialEq)]
pub struct SuperVectorField {
    coeffs: [SuperPolynomial; 5],
    parity: Parity,
}

fn slot(v: Var) -> usize {
    match v {
        Var::X => 0,
        Var::T => 1,
        Var::Phi => 2,
        Var::Theta1 => 3,
        Var::Theta2 => 4,
    }
}

impl SuperVectorField {
    pub fn zero(n: usize, parity: Parity) -> Self {
        SuperVectorField {
            coeffs: std::array::from_fn(|_| SuperPolynomial::zero(n)),
            parity,
        }
    }

    pub fn with(mut self, v: Var, p: SuperPolynomial) -> Self {
        self.coeffs[slot(v)] = p;
        self
    }

    pub fn generators(&self) -> usize {
        self.coeffs[0].generators()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn coeff(&self, v: Var) -> &SuperPolynomial {
        &self.coeffs[slot(v)]
    }

    pub fn coeff_x(&self) -> &SuperPolynomial {
        self.coeff(Var::X)
    }
    pub fn coeff_t(&self) -> &SuperPolynomial {
        self.coeff(Var::T)
    }
    pub fn coeff_theta1(&self) -> &SuperPolynomial {
        self.coeff(Var::Theta1)
    }
    pub fn coeff_theta2(&self) -> &SuperPolynomial {
        self.coeff(Var::Theta2)
    }
    pub fn coeff_phi(&self) -> &SuperPolynomial {
        self.coeff(Var::Phi)
    }

    /// Checks that coefficient parities agree with the declared parity.
    pub fn validate(&self) -> Result<()> {
        let d = self
            .parity
            .degree()
            .ok_or_else(|| Error::Parity("vector field parity must be Even or Odd".into()))?;
        for v in Var::ALL {
            let p = self.coeff(v);
            if p.is_zero() {
                continue;
            }
            let want = Parity::of_grade(d + u32::from(v.is_odd()));
            if p.parity() != want {
                return Err(Error::Parity(format!(
                    "coefficient of ∂{v:?} must be {want:?}, got {:?}",
                    p.parity()
                )));
            }
        }
        Ok(())
    }

    /// Acts as a derivation: `X(I) = Σ_v X^v ∂_v I`.
    pub fn apply(&self, f: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(f.generators());
        for v in Var::ALL {
            let c = self.coeff(v);
            if c.is_zero() {
                continue;
            }
            out = out.add(&c.mul(&f.deriv(v)));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let parity = if self.is_zero() {
            other.parity
        } else if other.is_zero() || self.parity == other.parity {
            self.parity
        } else {
            return Err(Error::Parity("sum of fields of different parity".into()));
        };
        Ok(SuperVectorField {
            coeffs: std::array::from_fn(|i| self.coeffs[i].add(&other.coeffs[i])),
            parity,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, k: f64) -> Self {
        SuperVectorField {
            coeffs: std::array::from_fn(|i| self.coeffs[i].scale(k)),
            parity: self.parity,
        }
    }

    /// `c · X` for a homogeneous constant `c` (e.g. `μ̲Q_x`, which is even).
    pub fn times_constant(&self, c: &Supernumber) -> Result<Self> {
        let cp = c.parity();
        if cp == Parity::Mixed {
            return Err(Error::Parity(
                "constant multiplier must be homogeneous".into(),
            ));
        }
        let k = SuperPolynomial::constant(c.clone());
        Ok(SuperVectorField {
            coeffs: std::array::from_fn(|i| k.mul(&self.coeffs[i])),
            parity: self.parity.combine(cp),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SuperPolynomial::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(SuperPolynomial::max_abs_coeff)
            .fold(0.0, f64::max)
    }

    /// Coefficient vector over (variable, monomial, Grassmann mask).
    fn flatten(&self) -> BTreeMap<(usize, Monomial, u16), f64> {
        let mut out = BTreeMap::new();
        for (i, p) in self.coeffs.iter().enumerate() {
            for (m, c) in p.terms() {
                for &(mask, v) in c.terms() {
                    out.insert((i, *m, mask), v);
                }
            }
        }
        out
    }
}

impl fmt::Display for SuperVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["∂x", "∂t", "∂Φ", "∂θ1", "∂θ2"];
        let mut first = true;
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({p}){}", names[i])?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SuperVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperVectorField[{:?}]({self})", self.parity)
    }
}

/// `[X, Y]^v = X(Y^v) − (−1)^{|X||Y|} Y(X^v)`.
pub fn superbracket(x: &SuperVectorField, y: &SuperVectorField) -> Result<SuperVectorField> {
    let (dx, dy) = match (x.parity.degree(), y.parity.degree()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::Parity(
                "superbracket needs homogeneous fields".into(),
            ))
        }
    };
    let sign = if dx * dy % 2 == 1 { -1.0 } else { 1.0 };
    let coeffs = std::array::from_fn(|i| {
        let v = Var::ALL[i];
        x.apply(y.coeff(v)).sub(&y.apply(x.coeff(v)).scale(sign))
    });
    Ok(SuperVectorField {
        coeffs,
        parity: Parity::of_grade(dx + dy),
    })
}

/// Solves `field = Σ c_i basis_i` by least squares and returns the
/// coefficients when the fit is exact to `tol`.
pub fn decompose(
    field: &SuperVectorField,
    basis: &[SuperVectorField],
    tol: f64,
) -> Option<Vec<f64>> {
    let target = field.flatten();
    let flats: Vec<_> = basis.iter().map(SuperVectorField::flatten).collect();
    let k = basis.len();
    let dot = |a: &BTreeMap<(usize, Monomial, u16), f64>,
               b: &BTreeMap<(usize, Monomial, u16), f64>| {
        a.iter()
            .map(|(key, v)| v * b.get(key).copied().unwrap_or(0.0))
            .sum::<f64>()
    };
    let mut g = vec![vec![0.0; k + 1]; k];
    for i in 0..k {
        for j in 0..k {
            g[i][j] = dot(&flats[i], &flats[j]);
        }
        g[i][k] = dot(&flats[i], &target);
    }
    // Gaussian elimination with partial pivoting.
    for col in 0..k {
        let piv = (col..k).max_by(|&a, &b| g[a][col].abs().total_cmp(&g[b][col].abs()))?;
        if g[piv][col].abs() < 1e-14 {
            return None;
        }
        g.swap(col, piv);
        for row in 0..k {
            if row != col {
                let f = g[row][col] / g[col][col];
                for c in col..=k {
                    g[row][c] -= f * g[col][c];
                }
            }
        }
    }
    let coeffs: Vec<f64> = (0..k).map(|i| g[i][k] / g[i][i]).collect();
    let mut recon = SuperVectorField::zero(field.generators(), field.parity);
    for (c, b) in coeffs.iter().zip(basis) {
        recon = SuperVectorField {
            coeffs: std::array::from_fn(|i| recon.coeffs[i].add(&b.coeffs[i].scale(*c))),
            parity: field.parity,
        };
    }
    let diff = SuperVectorField {
        coeffs: std::array::from_fn(|i| recon.coeffs[i].sub(&field.coeffs[i])),
        parity: field.parity,
    };
    (diff.max_abs() <= tol).then_some(coeffs)
}

/// A generator set with names, used for bracket tables.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub names: Vec<&'static str>,
    pub fields: Vec<SuperVectorField>,
}

impl GeneratorSet {
    pub fn get(&self, name: &str) -> Option<&SuperVectorField> {
        self.names
            .iter()
            .position(|n| *n == name)
            .map(|i| &self.fields[i])
    }

    /// Renders `Σ c_i X_i` using the set's names.
    pub fn render(&self, coeffs: &[f64]) -> String {
        let parts: Vec<String> = coeffs
            .iter()
            .zip(&self.names)
            .filter(|(c, _)| c.abs() > 1e-12)
            .map(|(c, n)| {
                if (*c - 1.0).abs() < 1e-12 {
                    n.to_string()
                } else if (*c + 1.0).abs() < 1e-12 {
                    format!("-{n}")
                } else {
                    format!("{c}{n}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn combination(&self, coeffs: &[(usize, f64)]) -> SuperVectorField {
        let parity = coeffs
            .first()
            .map(|(i, _)| self.fields[*i].parity)
            .unwrap_or(Parity::Even);
        let mut out = SuperVectorField::zero(self.fields[0].generators(), parity);
        for (i, c) in coeffs {
            out = out
                .add(&self.fields[*i].scale(*c))
                .expect("homogeneous combination");
        }
        out
    }
}

fn poly(n: usize, v: Var) -> SuperPolynomial {
    SuperPolynomial::var(n, v)
}

fn real(n: usize, c: f64) -> SuperPolynomial {
    SuperPolynomial::real(n, c)
}

/// `L, P_x, P_t, Q_x, Q_t` of the sinh-Gordon symmetry superalgebra.
pub fn standard_generators(n: usize) -> GeneratorSet {
    standard_generators_with(n, false)
}

/// As [`standard_generators`]; `flip_qt` replaces `Q_t` by
/// `−θ₂∂t + ∂θ₂` (fault injection for the verification harness).
pub fn standard_generators_with(n: usize, flip_qt: bool) -> GeneratorSet {
    use Var::*;
    let l = SuperVectorField::zero(n, Parity::Even)
        .with(X, poly(n, X).scale(-2.0))
        .with(T, poly(n, T).scale(2.0))
        .with(Theta1, poly(n, Theta1).scale(-1.0))
        .with(Theta2, poly(n, Theta2));
    let px = SuperVectorField::zero(n, Parity::Even).with(X, real(n, 1.0));
    let pt = SuperVectorField::zero(n, Parity::Even).with(T, real(n, 1.0));
    let qx = SuperVectorField::zero(n, Parity::Odd)
        .with(X, poly(n, Theta1).scale(-1.0))
        .with(Theta1, real(n, 1.0));
    let qt_sign = if flip_qt { -1.0 } else { 1.0 };
    let qt = SuperVectorField::zero(n, Parity::Odd)
        .with(T, poly(n, Theta2).scale(qt_sign))
        .with(Theta2, real(n, 1.0));
    GeneratorSet {
        names: vec!["L", "Px", "Pt", "Qx", "Qt"],
        fields: vec![l, px, pt, qx, qt],
    }
}

/// `C₁, C₂, C₃, A₁, A₂` of the N = 2 super-KdV symmetry superalgebra.
pub fn kdv_generators(n: usize) -> GeneratorSet {
    use Var::*;
    let c1 = SuperVectorField::zero(n, Parity::Even).with(X, real(n, 1.0));
    let c2 = SuperVectorField::zero(n, Parity::Even).with(T, real(n, 1.0));
    let c3 = SuperVectorField::zero(n, Parity::Even)
        .with(X, poly(n, X))
        .with(T, poly(n, T).scale(3.0))
        .with(Theta1, poly(n, Theta1).scale(0.5))
        .with(Theta2, poly(n, Theta2).scale(0.5))
        .with(Phi, poly(n, Phi).scale(-1.0));
    let a1 = SuperVectorField::zero(n, Parity::Odd)
        .with(X, poly(n, Theta1))
        .with(Theta1, real(n, -1.0));
    let a2 = SuperVectorField::zero(n, Parity::Odd)
        .with(X, poly(n, Theta2))
        .with(Theta2, real(n, -1.0));
    GeneratorSet {
        names: vec!["C1", "C2", "C3", "A1", "A2"],
        fields: vec![c1, c2, c3, a1, a2],
    }
}

/// Expected bracket table as sparse combinations of the generator indices.
pub type BracketTable = Vec<Vec<Vec<(usize, f64)>>>;

/// The supercommutation table of `L, P_x, P_t, Q_x, Q_t`.
pub fn table1() -> BracketTable {
    let (l, px, pt, qx, qt) = (0, 1, 2, 3, 4);
    let mut t: BracketTable = vec![vec![Vec::new(); 5]; 5];
    t[l][px] = vec![(px, 2.0)];
    t[px][l] = vec![(px, -2.0)];
    t[l][pt] = vec![(pt, -2.0)];
    t[pt][l] = vec![(pt, 2.0)];
    t[l][qx] = vec![(qx, 1.0)];
    t[qx][l] = vec![(qx, -1.0)];
    t[l][qt] = vec![(qt, -1.0)];
    t[qt][l] = vec![(qt, 1.0)];
    t[qx][qx] = vec![(px, -2.0)];
    t[qt][qt] = vec![(pt, 2.0)];
    t
}

/// Frozen bracket table of `C₁, C₂, C₃, A₁, A₂`.
pub fn kdv_table() -> BracketTable {
    let (c1, c2, c3, a1, a2) = (0, 1, 2, 3, 4);
    let mut t: BracketTable = vec![vec![Vec::new(); 5]; 5];
    t[a1][a1] = vec![(c1, -2.0)];
    t[a2][a2] = vec![(c1, -2.0)];
    t[c3][c1] = vec![(c1, -1.0)];
    t[c1][c3] = vec![(c1, 1.0)];
    t[c3][c2] = vec![(c2, -3.0)];
    t[c2][c3] = vec![(c2, 3.0)];
    t[c3][a1] = vec![(a1, -0.5)];
    t[a1][c3] = vec![(a1, 0.5)];
    t[c3][a2] = vec![(a2, -0.5)];
    t[a2][c3] = vec![(a2, 0.5)];
    t
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    /// Keyed by `"X,Y"`.
    pub cells: BTreeMap<String, CellReport>,
}

impl TableReport {
    pub fn passed(&self) -> usize {
        self.cells.values().filter(|c| c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.cells.values().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.cells
            .iter()
            .filter(|(_, c)| !c.pass)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

pub const BRACKET_TOLERANCE: f64 = 1e-12;

/// Brackets every ordered pair of `set` and matches against `expected`,
/// where expected cells are combinations of the same generator set.
pub fn verify_table(set: &GeneratorSet, expected: &BracketTable) -> Result<TableReport> {
    let mut cells = BTreeMap::new();
    for (i, x) in set.fields.iter().enumerate() {
        for (j, y) in set.fields.iter().enumerate() {
            let got = superbracket(x, y)?;
            let want_coeffs: Vec<f64> = (0..set.fields.len())
                .map(|k| {
                    expected[i][j]
                        .iter()
                        .filter(|(idx, _)| *idx == k)
                        .map(|(_, c)| c)
                        .sum()
                })
                .collect();
            let want = set.combination(&expected[i][j]);
            let diff = SuperVectorField {
                coeffs: std::array::from_fn(|v| got.coeffs[v].sub(&want.coeffs[v])),
                parity: got.parity,
            };
            let pass = diff.max_abs() <= BRACKET_TOLERANCE;
            let computed = match decompose(&got, &set.fields, BRACKET_TOLERANCE) {
                Some(c) => set.render(&c),
                None => got.to_string(),
            };
            cells.insert(
                format!("{},{}", set.names[i], set.names[j]),
                CellReport {
                    expected: set.render(&want_coeffs),
                    computed,
                    pass,
                },
            );
        }
    }
    Ok(TableReport { cells })
}

/// All 25 cells of the sinh-Gordon supercommutation table.
pub fn verify_table1(n: usize, flip_qt: bool) -> Result<TableReport> {
    verify_table(&standard_generators_with(n, flip_qt), &table1())
}

pub fn verify_kdv_table(n: usize) -> Result<TableReport> {
    verify_table(&kdv_generators(n), &kdv_table())
}

/// Result of applying a field to a candidate invariant.
#[derive(Debug, Clone)]
pub struct Annihilation {
    pub annihilated: bool,
    pub residual: SuperPolynomial,
}

pub fn annihilates(x: &SuperVectorField, inv: &SuperPolynomial) -> Annihilation {
    let residual = x.apply(inv);
    Annihilation {
        annihilated: residual.is_zero(),
        residual,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubalgebraId {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    S9,
    S10,
    S11,
    S12,
    S13,
    S14,
    S15,
    S16,
}

impl SubalgebraId {
    pub const ALL: [SubalgebraId; 16] = [
        SubalgebraId::S1,
        SubalgebraId::S2,
        SubalgebraId::S3,
        SubalgebraId::S4,
        SubalgebraId::S5,
        SubalgebraId::S6,
        SubalgebraId::S7,
        SubalgebraId::S8,
        SubalgebraId::S9,
        SubalgebraId::S10,
        SubalgebraId::S11,
        SubalgebraId::S12,
        SubalgebraId::S13,
        SubalgebraId::S14,
        SubalgebraId::S15,
        SubalgebraId::S16,
    ];

    pub fn index(self) -> usize {
        self as usize + 1
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['S', 's']);
        t.parse::<usize>()
            .ok()
            .filter(|k| (1..=16).contains(k))
            .map(|k| Self::ALL[k - 1])
            .ok_or_else(|| Error::UnknownSubalgebra(s.to_string()))
    }

    pub fn is_nonstandard(self) -> bool {
        use SubalgebraId::*;
        matches!(self, S5 | S9 | S13 | S14 | S15 | S16)
    }

    /// Subalgebras whose reduced systems only admit `Φ = 0`.
    pub fn is_null(self) -> bool {
        use SubalgebraId::*;
        matches!(self, S2 | S3 | S6 | S7 | S10 | S11)
    }

    pub fn uses_epsilon(self) -> bool {
        use SubalgebraId::*;
        matches!(self, S4 | S8 | S12 | S16)
    }

    pub fn uses_mu(self) -> bool {
        use SubalgebraId::*;
        matches!(self, S5 | S6 | S7 | S8 | S13 | S14 | S15 | S16)
    }

    pub fn uses_nu(self) -> bool {
        use SubalgebraId::*;
        matches!(self, S9 | S10 | S11 | S12 | S13 | S14 | S15 | S16)
    }
}

impl fmt::Display for SubalgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.index())
    }
}

/// Parameters of a subalgebra representative.
#[derive(Debug, Clone, PartialEq)]
pub struct SubalgebraParams {
    pub epsilon: f64,
    pub mu: Supernumber,
    pub nu: Supernumber,
}

impl SubalgebraParams {
    pub fn new(epsilon: f64, mu: Supernumber, nu: Supernumber) -> Self {
        SubalgebraParams { epsilon, mu, nu }
    }

    pub fn validate(&self) -> Result<()> {
        if self.epsilon * self.epsilon != 1.0 {
            return Err(Error::Configuration(format!(
                "ε must be ±1, got {}",
                self.epsilon
            )));
        }
        for (name, v) in [("μ", &self.mu), ("ν", &self.nu)] {
            if !v.is_zero() && v.parity() != Parity::Odd {
                return Err(Error::Parity(format!("{name} must be odd")));
            }
        }
        if self.mu.generators() != self.nu.generators() {
            return Err(Error::Configuration(
                "μ and ν live in different rings".into(),
            ));
        }
        Ok(())
    }
}

/// Variables the arbitrary function of a nonstandard invariant may use.
#[derive(Debug, Clone, PartialEq)]
pub struct NonstandardInvariant {
    /// Odd (or odd-product) prefactor: `μ̲`, `ν̲` or `μ̲ν̲`.
    pub factor: Supernumber,
    /// Even arguments of `f`, as polynomials (e.g. `x − εt`).
    pub even_args: Vec<SuperPolynomial>,
    pub uses_theta: bool,
    pub uses_phi: bool,
}

impl NonstandardInvariant {
    /// `factor · m` for every monomial `m` of the basis: products of the
    /// even arguments up to total degree `degree`, times every θ-monomial and
    /// optionally `Φ`.
    pub fn basis(&self, degree: u32) -> Vec<SuperPolynomial> {
        let n = self.factor.generators();
        let mut evens = vec![SuperPolynomial::real(n, 1.0)];
        let mut frontier = evens.clone();
        for _ in 0..degree {
            let mut next = Vec::new();
            for p in &frontier {
                for a in &self.even_args {
                    next.push(p.mul(a));
                }
            }
            evens.extend(next.iter().cloned());
            frontier = next;
        }
        let thetas: Vec<u8> = if self.uses_theta {
            vec![0, 1, 2, 3]
        } else {
            vec![0]
        };
        let phis: &[u32] = if self.uses_phi { &[0, 1] } else { &[0] };
        let k = SuperPolynomial::constant(self.factor.clone());
        let mut out = Vec::new();
        for e in &evens {
            for &th in &thetas {
                for &ph in phis {
                    let m = SuperPolynomial::term(
                        Monomial {
                            phi: ph,
                            ..Monomial::theta(th)
                        },
                        Supernumber::one(n),
                    );
                    out.push(k.mul(&e.mul(&m)));
                }
            }
        }
        out
    }
}

/// One-dimensional subalgebra with its invariants.
#[derive(Debug, Clone)]
pub struct SubalgebraRep {
    pub id: SubalgebraId,
    pub params: SubalgebraParams,
    pub generator: SuperVectorField,
    /// Named invariants (`σ`, `τ₁`, `τ₂`, `Φ`, ...).
    pub invariants: Vec<(String, SuperPolynomial)>,
    pub nonstandard: Option<NonstandardInvariant>,
    /// Conjugacy normalisation remark (documentation only).
    pub conjugacy: &'static str,
}

impl SubalgebraRep {
    pub fn invariant(&self, name: &str) -> Option<&SuperPolynomial> {
        self.invariants
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, p)| p)
    }
}

/// Builds the representative `id` with the given parameters.
pub fn subalgebra(id: SubalgebraId, params: SubalgebraParams) -> Result<SubalgebraRep> {
    params.validate()?;
    let n = params.mu.generators();
    let g = standard_generators(n);
    let f = |name: &str| g.get(name).expect("standard generator").clone();
    let (l, px, pt, qx, qt) = (f("L"), f("Px"), f("Pt"), f("Qx"), f("Qt"));
    let eps = params.epsilon;
    let mu = &params.mu;
    let nu = &params.nu;
    let muqx = qx.times_constant(mu)?;
    let nuqt = qt.times_constant(nu)?;
    let px_eps_pt = px.add(&pt.scale(eps))?;
    use SubalgebraId::*;
    let generator = match id {
        S1 => l,
        S2 => px,
        S3 => pt,
        S4 => px_eps_pt,
        S5 => muqx,
        S6 => px.add(&muqx)?,
        S7 => pt.add(&muqx)?,
        S8 => px_eps_pt.add(&muqx)?,
        S9 => nuqt,
        S10 => px.add(&nuqt)?,
        S11 => pt.add(&nuqt)?,
        S12 => px_eps_pt.add(&nuqt)?,
        S13 => muqx.add(&nuqt)?,
        S14 => px.add(&muqx)?.add(&nuqt)?,
        S15 => pt.add(&muqx)?.add(&nuqt)?,
        S16 => px_eps_pt.add(&muqx)?.add(&nuqt)?,
    };

    let x = poly(n, Var::X);
    let t = poly(n, Var::T);
    let th1 = poly(n, Var::Theta1);
    let th2 = poly(n, Var::Theta2);
    let phi = poly(n, Var::Phi);
    let c = |v: &Supernumber| SuperPolynomial::constant(v.clone());
    let half = num_rational::Rational32::new(1, 2);
    let t_pow = |e: num_rational::Rational32, theta: u8| {
        SuperPolynomial::term(
            Monomial {
                t: e,
                ..Monomial::theta(theta)
            },
            Supernumber::one(n),
        )
    };
    let named = |v: Vec<(&str, SuperPolynomial)>| -> Vec<(String, SuperPolynomial)> {
        v.into_iter().map(|(k, p)| (k.to_string(), p)).collect()
    };
    let mu_nu = mu * nu;
    let nonstd = |factor: Supernumber, even_args: Vec<SuperPolynomial>| NonstandardInvariant {
        factor,
        even_args,
        uses_theta: true,
        uses_phi: true,
    };

    let (invariants, nonstandard, conjugacy) = match id {
        S1 => (
            named(vec![
                ("σ", x.mul(&t)),
                ("τ1", t_pow(half, 0b01)),
                ("τ2", t_pow(-half, 0b10)),
                ("Φ", phi),
            ]),
            None,
            "",
        ),
        S2 => (
            named(vec![("σ", t), ("τ1", th1), ("τ2", th2), ("Φ", phi)]),
            None,
            "",
        ),
        S3 => (
            named(vec![("σ", x), ("τ1", th1), ("τ2", th2), ("Φ", phi)]),
            None,
            "",
        ),
        S4 => (
            named(vec![
                ("σ", x.sub(&t.scale(eps))),
                ("τ1", th1),
                ("τ2", th2),
                ("Φ", phi),
            ]),
            None,
            "",
        ),
        S5 => (
            named(vec![("t", t.clone()), ("θ2", th2), ("Φ", phi)]),
            Some(nonstd(mu.clone(), vec![x, t])),
            "μ and kμ conjugate for invertible even k",
        ),
        S6 => (
            named(vec![
                ("σ", t),
                ("τ1", th1.sub(&c(mu).mul(&x))),
                ("τ2", th2),
                ("Φ", phi),
            ]),
            None,
            "μ and e^k μ conjugate for even k",
        ),
        S7 => (
            named(vec![
                ("σ", x.add(&c(mu).mul(&th1).mul(&t))),
                ("τ1", th1.sub(&c(mu).mul(&t))),
                ("τ2", th2),
                ("Φ", phi),
            ]),
            None,
            "μ and e^k μ conjugate for even k",
        ),
        S8 => (
            named(vec![
                ("σ", x.scale(eps).sub(&t).add(&c(mu).mul(&t).mul(&th1))),
                ("τ1", th1.sub(&c(mu).mul(&t).scale(eps))),
                ("τ2", th2),
                ("Φ", phi),
            ]),
            None,
            "",
        ),
        S9 => (
            named(vec![("x", x.clone()), ("θ1", th1), ("Φ", phi)]),
            Some(nonstd(nu.clone(), vec![x, t])),
            "ν and kν conjugate for invertible even k",
        ),
        S10 => (
            named(vec![
                ("σ", t.sub(&c(nu).mul(&th2).mul(&x))),
                ("τ1", th1),
                ("τ2", th2.sub(&c(nu).mul(&x))),
                ("Φ", phi),
            ]),
            None,
            "ν and e^k ν conjugate for even k",
        ),
        S11 => (
            named(vec![
                ("σ", x),
                ("τ1", th1),
                ("τ2", th2.sub(&c(nu).mul(&t))),
                ("Φ", phi),
            ]),
            None,
            "ν and e^k ν conjugate for even k",
        ),
        S12 => (
            named(vec![
                ("σ", t.sub(&x.scale(eps)).sub(&c(nu).mul(&x).mul(&th2))),
                ("τ1", th1),
                ("τ2", th2.sub(&c(nu).mul(&x))),
                ("Φ", phi),
            ]),
            None,
            "",
        ),
        S13 => (
            named(vec![("Φ", phi)]),
            Some(nonstd(mu_nu, vec![x, t])),
            "(μ, ν) and (e^k μ, e^k ν) conjugate for even k",
        ),
        S14 => (
            named(vec![("Φ", phi)]),
            Some(nonstd(mu_nu, vec![t])),
            "(μ, ν) and (e^k μ, e^{3k} ν) conjugate for even k",
        ),
        S15 => (
            named(vec![("Φ", phi)]),
            Some(nonstd(mu_nu, vec![x])),
            "(μ, ν) and (e^{3k} μ, e^k ν) conjugate for even k",
        ),
        S16 => (
            named(vec![("Φ", phi)]),
            Some(nonstd(mu_nu, vec![x.sub(&t.scale(eps))])),
            "",
        ),
    };
    Ok(SubalgebraRep {
        id,
        params,
        generator,
        invariants,
        nonstandard,
        conjugacy,
    })
}

/// Nonstandard invariants of super-KdV subalgebras.
pub fn kdv_nonstandard(
    n: usize,
    mu: &Supernumber,
    nu: &Supernumber,
) -> Result<
    Vec<(
        String,
        SuperVectorField,
        Vec<(String, SuperPolynomial)>,
        NonstandardInvariant,
    )>,
> {
    let g = kdv_generators(n);
    let f = |name: &str| g.get(name).expect("kdv generator").clone();
    let (c1, a1, a2) = (f("C1"), f("A1"), f("A2"));
    let x = poly(n, Var::X);
    let t = poly(n, Var::T);
    let mua1 = a1.times_constant(mu)?;
    let nua2 = a2.times_constant(nu)?;
    let all = |factor: Supernumber, args: Vec<SuperPolynomial>| NonstandardInvariant {
        factor,
        even_args: args,
        uses_theta: true,
        uses_phi: true,
    };
    Ok(vec![
        (
            "μA1".into(),
            mua1.clone(),
            vec![
                ("t".into(), t.clone()),
                ("θ2".into(), poly(n, Var::Theta2)),
                ("Φ".into(), poly(n, Var::Phi)),
            ],
            all(mu.clone(), vec![x.clone(), t.clone()]),
        ),
        (
            "μA1+νA2".into(),
            mua1.add(&nua2)?,
            vec![],
            all(mu * nu, vec![x, t.clone()]),
        ),
        (
            "C1-μA1-νA2".into(),
            c1.sub(&mua1)?.sub(&nua2)?,
            vec![],
            all(mu * nu, vec![t]),
        ),
    ])
}

/// Generators with a finite flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlowGenerator {
    L,
    Px,
    Pt,
    Qx,
    Qt,
}

/// Coordinate map of the flow of `x` with parameter `s` (even for
/// `L, P_x, P_t`; odd for `Q_x, Q_t`).
pub fn flow_transform(gen: FlowGenerator, s: &Supernumber) -> Result<Substitution> {
    let n = s.generators();
    let odd = matches!(gen, FlowGenerator::Qx | FlowGenerator::Qt);
    let want = if odd { Parity::Odd } else { Parity::Even };
    if !s.is_zero() && s.parity() != want {
        return Err(Error::Parity(format!(
            "flow of {gen:?} needs an {want:?} parameter"
        )));
    }
    let v = |var: Var| poly(n, var);
    let c = SuperPolynomial::constant(s.clone());
    Ok(match gen {
        FlowGenerator::Px => Substitution::new().with(Var::X, v(Var::X).add(&c)),
        FlowGenerator::Pt => Substitution::new().with(Var::T, v(Var::T).add(&c)),
        FlowGenerator::L => {
            let e = |k: f64| -> Result<Supernumber> { s.scale(k).exp() };
            Substitution::new()
                .with(Var::X, v(Var::X).mul_constant_right(&e(-2.0)?))
                .with(Var::T, v(Var::T).mul_constant_right(&e(2.0)?))
                .with(Var::Theta1, v(Var::Theta1).mul_constant_right(&e(-1.0)?))
                .with(Var::Theta2, v(Var::Theta2).mul_constant_right(&e(1.0)?))
        }
        FlowGenerator::Qx => Substitution::new()
            .with(Var::X, v(Var::X).sub(&c.mul(&v(Var::Theta1))))
            .with(Var::Theta1, v(Var::Theta1).add(&c)),
        FlowGenerator::Qt => Substitution::new()
            .with(Var::T, v(Var::T).add(&c.mul(&v(Var::Theta2))))
            .with(Var::Theta2, v(Var::Theta2).add(&c)),
    })
}
