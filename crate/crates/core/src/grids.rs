//! Node sets on `[-1, 1]` and the Gauss–Lobatto rule for the weight
//! `(1-x)^μ (1+x)^{-μ}`.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::jacobi::{self, deriv_raw, eval_raw, gamma_ratio, JacobiParams};
use crate::roots::{newton_bisect, sign_change_brackets};
use crate::superconsistency::ChiFamily;

/// Minimum spacing between adjacent nodes.
pub const MIN_GAP: f64 = 1e-12;

/// Step tolerance used by every polynomial root search in this module.
pub const ROOT_STEP_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridRole {
    Representation,
    Collocation,
}

/// Where a node set came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridFamily {
    ChebyshevLobatto,
    LegendreLobatto,
    LegendreGauss,
    /// zeros of `d/dx P_N^{μ,-μ}`
    JacobiMuLobatto { mu: f64 },
    /// zeros of `d/dx P_N^{α,β}` for other parameter pairs
    JacobiLobatto { alpha: f64, beta: f64 },
    PsiZeros { family: ChiFamily, sigma: f64 },
    MixedZeros { family: ChiFamily, sigma: f64, k: f64 },
}

impl fmt::Display for GridFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridFamily::ChebyshevLobatto => write!(f, "chebyshev_lobatto"),
            GridFamily::LegendreLobatto => write!(f, "legendre_lobatto"),
            GridFamily::LegendreGauss => write!(f, "legendre_gauss"),
            GridFamily::JacobiMuLobatto { mu } => write!(f, "jacobi_mu_lobatto({mu})"),
            GridFamily::JacobiLobatto { alpha, beta } => write!(f, "jacobi_lobatto({alpha},{beta})"),
            GridFamily::PsiZeros { family, sigma } => write!(f, "psi_zeros({family},{sigma})"),
            GridFamily::MixedZeros { family, sigma, k } => {
                write!(f, "mixed_zeros({family},{sigma},{k})")
            }
        }
    }
}

/// Strictly increasing nodes in `[-1, 1]` with their role and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    nodes: Vec<f64>,
    role: GridRole,
    family: GridFamily,
}

impl Grid {
    pub fn new(nodes: Vec<f64>, role: GridRole, family: GridFamily) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Size("grid has no nodes".into()));
        }
        for &x in &nodes {
            if !x.is_finite() || !(-1.0..=1.0).contains(&x) {
                return Err(Error::Domain(format!("grid node {x} outside [-1, 1]")));
            }
        }
        for w in nodes.windows(2) {
            if w[1] - w[0] < MIN_GAP {
                return Err(Error::Numerical(format!(
                    "grid nodes {} and {} not strictly increasing by {MIN_GAP}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { nodes, role, family })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn role(&self) -> GridRole {
        self.role
    }

    pub fn family(&self) -> GridFamily {
        self.family
    }

    pub fn includes_left(&self) -> bool {
        self.nodes[0] == -1.0
    }

    pub fn includes_right(&self) -> bool {
        self.nodes[self.nodes.len() - 1] == 1.0
    }

    pub fn with_role(mut self, role: GridRole) -> Self {
        self.role = role;
        self
    }

    /// Same nodes with `x = -1` removed.
    pub fn without_left(&self) -> Self {
        let nodes = if self.includes_left() {
            self.nodes[1..].to_vec()
        } else {
            self.nodes.clone()
        };
        Self { nodes, ..*self }
    }

    /// Same nodes with both endpoints removed.
    pub fn interior(&self) -> Self {
        let nodes = self
            .nodes
            .iter()
            .copied()
            .filter(|&x| x > -1.0 && x < 1.0)
            .collect();
        Self { nodes, ..*self }
    }

    /// One node per line, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for x in &self.nodes {
            s.push_str(&format!("{x:.16e}\n"));
        }
        s
    }
}

/// `x_j = -cos(jπ/N)`, `j = 0..=N`: the zeros of `T_N'` plus `±1`.
pub fn chebyshev_lobatto(n: usize) -> Result<Grid> {
    if n < 1 {
        return Err(Error::Size(format!("chebyshev_lobatto needs N >= 1, got {n}")));
    }
    let nf = n as f64;
    let mut nodes: Vec<f64> = (0..=n).map(|j| -(j as f64 * PI / nf).cos()).collect();
    nodes[0] = -1.0;
    nodes[n] = 1.0;
    // exact zero and exact symmetry for the middle of the grid
    for j in 1..n {
        if 2 * j == n {
            nodes[j] = 0.0;
        } else if 2 * j > n {
            nodes[j] = -nodes[n - j];
        }
    }
    Grid::new(nodes, GridRole::Representation, GridFamily::ChebyshevLobatto)
}

/// All `n` zeros of `P_n^{α,β}` in increasing order.
///
/// Brackets come from a sign scan that is uniform in the Chebyshev angle;
/// each bracket is then refined by Newton with bisection safeguard, starting
/// from the Chebyshev-angle guess nearest the bracket.
pub(crate) fn jacobi_zeros(n: usize, alpha: f64, beta: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let samples = (16 * n).max(64);
    let xs: Vec<f64> = (0..=samples)
        .map(|i| -(i as f64 * PI / samples as f64).cos())
        .collect();
    let brackets = sign_change_brackets(|x| eval_raw(n, alpha, beta, x), &xs);
    if brackets.len() != n {
        return Err(Error::Bracketing {
            expected: n,
            found: brackets.len(),
        });
    }
    let f = |x: f64| (eval_raw(n, alpha, beta, x), deriv_raw(n, alpha, beta, x, 1));
    let mut zeros = Vec::with_capacity(n);
    for (k, &(lo, hi)) in brackets.iter().enumerate() {
        if lo == hi {
            zeros.push(lo);
            continue;
        }
        let guess = -((k as f64 + 0.75) * PI / (n as f64 + 0.5)).cos();
        let x0 = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
        zeros.push(newton_bisect(f, lo, hi, x0, ROOT_STEP_TOL)?);
    }
    Ok(zeros)
}

/// The `N-1` zeros of `d/dx P_N^{α,β}` (that is, of `P_{N-1}^{α+1,β+1}`),
/// optionally with `±1` appended.
pub fn jacobi_deriv_zeros(n: usize, alpha: f64, beta: f64, with_endpoints: bool) -> Result<Grid> {
    if n < 1 || (n == 1 && !with_endpoints) {
        return Err(Error::Size(format!("jacobi_deriv_zeros has no nodes for N = {n}")));
    }
    JacobiParams::new(n, alpha, beta)?;
    let mut nodes = if n == 1 {
        Vec::new()
    } else {
        jacobi_zeros(n - 1, alpha + 1.0, beta + 1.0)?
    };
    if with_endpoints {
        nodes.insert(0, -1.0);
        nodes.push(1.0);
    }
    let family = if alpha == 0.0 && beta == 0.0 {
        GridFamily::LegendreLobatto
    } else if alpha == -beta && alpha > 0.0 && alpha < 1.0 {
        GridFamily::JacobiMuLobatto { mu: alpha }
    } else {
        GridFamily::JacobiLobatto { alpha, beta }
    };
    Grid::new(nodes, GridRole::Representation, family)
}

/// The `N` zeros of the Legendre polynomial `P_N`.
pub fn legendre_zeros(n: usize) -> Result<Grid> {
    if n < 1 {
        return Err(Error::Size("legendre_zeros needs N >= 1".into()));
    }
    let mut nodes = jacobi_zeros(n, 0.0, 0.0)?;
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    for k in 0..n / 2 {
        let m = 0.5 * (nodes[n - 1 - k] - nodes[k]);
        nodes[k] = -m;
        nodes[n - 1 - k] = m;
    }
    Grid::new(nodes, GridRole::Collocation, GridFamily::LegendreGauss)
}

/// Gauss–Lobatto rule for `(1-x)^μ (1+x)^{-μ}` on the zeros of
/// `d/dx P_N^{μ,-μ}` plus `±1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    grid: Grid,
    weights: Vec<f64>,
    mu: f64,
}

impl QuadratureRule {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn nodes(&self) -> &[f64] {
        self.grid.nodes()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Polynomial degree of the rule: `N` for `N+1` nodes.
    pub fn degree(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.grid
            .nodes()
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(x) * w)
            .sum()
    }
}

/// `∫ (1+x)^k (1-x)^μ (1+x)^{-μ} dx = 2^{k+1} B(k+1-μ, 1+μ)`.
pub fn weighted_moment(k: usize, mu: f64) -> Result<f64> {
    let kf = k as f64;
    // B(a, b) = Γ(a)Γ(b)/Γ(a+b) with a + b = k + 2
    let beta = gamma_ratio(kf + 1.0 - mu, kf + 2.0)? * jacobi::gamma_fn(1.0 + mu)?;
    Ok((kf + 1.0).exp2() * beta)
}

/// Interior weights from the closed formula; the two endpoint weights from
/// exactness on `1` and `1+x` given the interior ones.
pub fn gauss_lobatto_weights(n: usize, mu: f64) -> Result<QuadratureRule> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::Parameter(format!("mu = {mu} outside (0, 1)")));
    }
    let grid = jacobi_deriv_zeros(n, mu, -mu, true)?;
    let nf = n as f64;
    // 2 Γ(N+μ) Γ(N-μ) / ((N+1) [(N-1)!]^2)
    let lead = 2.0 * gamma_ratio(nf + mu, nf)? * gamma_ratio(nf - mu, nf)? / (nf + 1.0);
    let nodes = grid.nodes();
    let mut weights = vec![0.0; n + 1];
    for m in 1..n {
        let x = nodes[m];
        let denom = eval_raw(n, mu, -mu, x) * deriv_raw(n - 1, mu, -mu, x, 1);
        if denom.abs() < 1e-300 {
            return Err(Error::Numerical(format!("degenerate quadrature node {x}")));
        }
        weights[m] = -lead / denom;
    }
    let m0 = weighted_moment(0, mu)?;
    let m1 = weighted_moment(1, mu)?;
    let inner0: f64 = weights[1..n].iter().sum();
    let inner1: f64 = (1..n).map(|m| weights[m] * (1.0 + nodes[m])).sum();
    weights[n] = 0.5 * (m1 - inner1);
    weights[0] = m0 - inner0 - weights[n];
    Ok(QuadratureRule { grid, weights, mu })
}
