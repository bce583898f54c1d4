//! The fractional Lagrange basis
//!
//! ```text
//! H_j(x) = ((x+1)/(x_j+1))^{1-μ} ∏_{k=1..N, k≠j} (x-x_k)/(x_j-x_k)
//!        = (x+1)^{-μ} Σ_{n=1..N} c(j,n) [P_n^{μ,-μ}(x) - P_n^{μ,-μ}(-1)]
//! ```
//!
//! on a representation grid `x_0 = -1 < x_1 < ... < x_N`, and the change of
//! basis between the two forms.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::grids::{Grid, GridFamily, QuadratureRule};
use crate::jacobi::{self, eval_all_raw, jacobi_norm_sq, JacobiParams};
use crate::linalg;

/// Nodes closer than this to `-1` cannot carry a basis function.
pub const LEFT_GUARD: f64 = 1e-14;

fn check_mu(mu: f64) -> Result<()> {
    if mu > 0.0 && mu < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("mu = {mu} outside (0, 1)")))
    }
}

/// Nodes `x_1..x_N`: the grid without its leading `-1`.
fn basis_nodes(grid: &Grid) -> Result<Vec<f64>> {
    let nodes = grid.without_left().nodes().to_vec();
    if let Some(&x) = nodes.iter().find(|&&x| x + 1.0 <= LEFT_GUARD) {
        return Err(Error::Domain(format!(
            "basis node {x} coincides with the left endpoint"
        )));
    }
    Ok(nodes)
}

/// `P_n^{μ,-μ}(x) - P_n^{μ,-μ}(-1)` for `n = 1..=N`.
fn shifted_jacobi(n: usize, mu: f64, x: f64) -> Vec<f64> {
    let vals = eval_all_raw(n, mu, -mu, x);
    (1..=n)
        .map(|k| {
            let p = JacobiParams::new(k, mu, -mu).expect("mu validated");
            vals[k] - jacobi::jacobi_at_minus_one(&p)
        })
        .collect()
}

/// `a_{j,n} = (x_j+1)^{-μ} [P_n^{μ,-μ}(x_j) - P_n^{μ,-μ}(-1)]`, rows indexed
/// by node, columns by degree.
#[derive(Debug, Clone)]
pub struct BasisChangeMatrix {
    entries: DMatrix<f64>,
    mu: f64,
    grid: Grid,
}

impl BasisChangeMatrix {
    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }
}

pub fn assemble_a(grid: &Grid, mu: f64) -> Result<BasisChangeMatrix> {
    check_mu(mu)?;
    let nodes = basis_nodes(grid)?;
    let n = nodes.len();
    let mut entries = DMatrix::zeros(n, n);
    for (j, &x) in nodes.iter().enumerate() {
        let w = (x + 1.0).powf(-mu);
        for (k, v) in shifted_jacobi(n, mu, x).into_iter().enumerate() {
            entries[(j, k)] = w * v;
        }
    }
    Ok(BasisChangeMatrix {
        entries,
        mu,
        grid: grid.clone(),
    })
}

/// Coefficients `c(j,n)` (row `j`, column `n-1`) such that
/// `Σ_n c(j,n) a_{m,n} = δ_{jm}`, i.e. `c = (A^{-1})ᵀ`.
pub fn coefficients_by_solve(a: &BasisChangeMatrix) -> Result<DMatrix<f64>> {
    Ok(linalg::inverse(&a.entries)?.transpose())
}

/// Closed-form coefficients on the `(μ,-μ)` Gauss–Lobatto grid, from the
/// quadrature rule and orthogonality.
pub fn coefficients_explicit(n: usize, mu: f64, rule: &QuadratureRule) -> Result<DMatrix<f64>> {
    check_mu(mu)?;
    match rule.grid().family() {
        GridFamily::JacobiMuLobatto { mu: m } if (m - mu).abs() < 1e-15 => {}
        other => {
            return Err(Error::Precondition(format!(
                "explicit coefficients need the jacobi_mu_lobatto({mu}) grid, got {other}"
            )))
        }
    }
    if rule.degree() != n {
        return Err(Error::Dimension {
            expected: n + 1,
            got: rule.nodes().len(),
        });
    }
    let nodes = rule.nodes();
    let w = rule.weights();
    let vals: Vec<Vec<f64>> = nodes.iter().map(|&x| eval_all_raw(n, mu, -mu, x)).collect();
    let mut denom = Vec::with_capacity(n);
    for k in 1..n {
        denom.push(jacobi_norm_sq(&JacobiParams::new(k, mu, -mu)?)?);
    }
    // the degree-N norm is replaced by its discrete counterpart
    denom.push((0..=n).map(|m| vals[m][n] * vals[m][n] * w[m]).sum());
    let mut c = DMatrix::zeros(n, n);
    for j in 1..=n {
        let scale = (nodes[j] + 1.0).powf(mu) * w[j];
        for k in 1..=n {
            c[(j - 1, k - 1)] = scale * vals[j][k] / denom[k - 1];
        }
    }
    Ok(c)
}

/// 2-norm condition number via singular values.
pub fn condition_number_2(a: &BasisChangeMatrix) -> Result<f64> {
    linalg::cond2(&a.entries)
}

/// 1-norm condition number, kept for comparison.
pub fn condition_number_1(a: &BasisChangeMatrix) -> Result<f64> {
    linalg::cond1(&a.entries)
}

/// Representation grid, exponent `μ` and the cached coefficients `c(j,n)`.
#[derive(Debug, Clone)]
pub struct FracBasis {
    rep_grid: Grid,
    nodes: Vec<f64>,
    mu: f64,
    coeffs: DMatrix<f64>,
}

impl FracBasis {
    /// Coefficients by inverting `A_N`.
    pub fn new(rep_grid: &Grid, mu: f64) -> Result<Self> {
        let a = assemble_a(rep_grid, mu)?;
        let coeffs = coefficients_by_solve(&a)?;
        Self::from_coefficients(rep_grid, mu, coeffs)
    }

    /// Coefficients from the Gauss–Lobatto formulas; the grid is the zeros of
    /// `d/dx P_N^{μ,-μ}` plus `±1`.
    pub fn explicit(rule: &QuadratureRule) -> Result<Self> {
        let n = rule.degree();
        let coeffs = coefficients_explicit(n, rule.mu(), rule)?;
        Self::from_coefficients(rule.grid(), rule.mu(), coeffs)
    }

    pub fn from_coefficients(rep_grid: &Grid, mu: f64, coeffs: DMatrix<f64>) -> Result<Self> {
        check_mu(mu)?;
        let nodes = basis_nodes(rep_grid)?;
        if coeffs.nrows() != nodes.len() || coeffs.ncols() != nodes.len() {
            return Err(Error::Dimension {
                expected: nodes.len(),
                got: coeffs.nrows(),
            });
        }
        Ok(Self {
            rep_grid: rep_grid.clone(),
            nodes,
            mu,
            coeffs,
        })
    }

    pub fn rep_grid(&self) -> &Grid {
        &self.rep_grid
    }

    /// `x_1..x_N`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn dim(&self) -> usize {
        self.nodes.len()
    }

    /// Row `j-1` holds `c(j, 1..=N)`.
    pub fn coeffs(&self) -> &DMatrix<f64> {
        &self.coeffs
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.dim() {
            Err(Error::Parameter(format!(
                "basis index {j} outside 1..={}",
                self.dim()
            )))
        } else {
            Ok(())
        }
    }

    /// `H_j(x)` in the Lagrange product form with the positive exponent
    /// `1-μ`, so `x = -1` gives exactly zero.
    pub fn h_basis_eval(&self, j: usize, x: f64) -> Result<f64> {
        self.check_index(j)?;
        Ok(self.h_product(j - 1, x))
    }

    fn h_product(&self, j: usize, x: f64) -> f64 {
        let xj = self.nodes[j];
        let r = x + 1.0;
        if r <= 0.0 {
            return 0.0;
        }
        let mut v = (r / (xj + 1.0)).powf(1.0 - self.mu);
        for (k, &xk) in self.nodes.iter().enumerate() {
            if k != j {
                v *= (x - xk) / (xj - xk);
            }
        }
        v
    }

    /// `H_j(x)` through the weighted Jacobi expansion; undefined at `-1`.
    pub fn h_expansion_eval(&self, j: usize, x: f64) -> Result<f64> {
        self.check_index(j)?;
        if x + 1.0 <= 0.0 {
            return Err(Error::Domain("expansion form is singular at x = -1".into()));
        }
        let shifted = shifted_jacobi(self.dim(), self.mu, x);
        let row = self.coeffs.row(j - 1);
        let s: f64 = row.iter().zip(&shifted).map(|(c, p)| c * p).sum();
        Ok((x + 1.0).powf(-self.mu) * s)
    }

    /// `u_N(x) = Σ_j values_j H_j(x)`; `values` may cover only the first
    /// `len` basis functions (the Dirichlet case).
    pub fn reconstruct(&self, values: &[f64], x: f64) -> Result<f64> {
        if values.len() > self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: values.len(),
            });
        }
        Ok(values
            .iter()
            .enumerate()
            .map(|(j, &u)| u * self.h_product(j, x))
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grids::{chebyshev_lobatto, gauss_lobatto_weights, GridRole};
    use approx::assert_relative_eq;

    #[test]
    fn one_by_one_matrix() {
        let g = Grid::new(vec![-1.0, 1.0], GridRole::Representation, GridFamily::ChebyshevLobatto).unwrap();
        let a = assemble_a(&g, 0.5).unwrap();
        assert_relative_eq!(a.entries()[(0, 0)], 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn identity_gives_identity() {
        let g = chebyshev_lobatto(3).unwrap();
        let a = BasisChangeMatrix {
            entries: DMatrix::identity(3, 3),
            mu: 0.5,
            grid: g,
        };
        assert_eq!(coefficients_by_solve(&a).unwrap(), DMatrix::identity(3, 3));
    }

    #[test]
    fn solve_residual_scales_with_condition() {
        for n in [5, 12, 30] {
            let g = chebyshev_lobatto(n).unwrap();
            let a = assemble_a(&g, 0.5).unwrap();
            let c = coefficients_by_solve(&a).unwrap();
            let r = a.entries() * c.transpose() - DMatrix::identity(n, n);
            let cond = condition_number_2(&a).unwrap();
            assert!(r.amax() <= 1e-8 * cond);
        }
    }

    #[test]
    fn kronecker_on_chebyshev_grid() {
        let basis = FracBasis::new(&chebyshev_lobatto(10).unwrap(), 0.5).unwrap();
        for j in 1..=10 {
            for (m, &x) in basis.nodes().iter().enumerate() {
                let h = basis.h_expansion_eval(j, x).unwrap();
                let want = if m + 1 == j { 1.0 } else { 0.0 };
                assert!((h - want).abs() < 1e-10, "H_{j}(x_{}) = {h}", m + 1);
                assert!((basis.h_basis_eval(j, x).unwrap() - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn explicit_matches_solve() {
        for n in [4, 8, 12] {
            for mu in [0.3, 0.5, 0.8] {
                let rule = gauss_lobatto_weights(n, mu).unwrap();
                let explicit = coefficients_explicit(n, mu, &rule).unwrap();
                let solved = coefficients_by_solve(&assemble_a(rule.grid(), mu).unwrap()).unwrap();
                let diff = (&explicit - &solved).amax();
                assert!(diff <= 1e-9, "N={n} mu={mu}: {diff}");
            }
        }
    }

    #[test]
    fn explicit_basis_is_kronecker() {
        let rule = gauss_lobatto_weights(4, 0.5).unwrap();
        let basis = FracBasis::explicit(&rule).unwrap();
        for j in 1..=4 {
            for (m, &x) in basis.nodes().iter().enumerate() {
                let want = if m + 1 == j { 1.0 } else { 0.0 };
                assert!((basis.h_expansion_eval(j, x).unwrap() - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn explicit_rejects_other_grids() {
        let rule = gauss_lobatto_weights(5, 0.4).unwrap();
        assert!(matches!(
            coefficients_explicit(5, 0.6, &rule),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reconstruct_properties() {
        let mu = 0.4;
        let basis = FracBasis::new(&chebyshev_lobatto(7).unwrap(), mu).unwrap();
        let mut e = vec![0.0; 7];
        e[2] = 1.0;
        assert_relative_eq!(basis.reconstruct(&e, basis.nodes()[2]).unwrap(), 1.0, epsilon = 1e-14);
        // (1+x)^{1-μ} lies in the span
        let f = |x: f64| (1.0 + x).powf(1.0 - mu);
        let vals: Vec<f64> = basis.nodes().iter().map(|&x| f(x)).collect();
        for i in 0..=40 {
            let x = -1.0 + 0.05 * i as f64;
            assert!((basis.reconstruct(&vals, x).unwrap() - f(x)).abs() < 1e-10);
        }
        assert_eq!(basis.reconstruct(&vals, -1.0).unwrap(), 0.0);
    }

    #[test]
    fn partition_at_nodes() {
        let basis = FracBasis::new(&chebyshev_lobatto(9).unwrap(), 0.7).unwrap();
        for &x in basis.nodes() {
            let s: f64 = (1..=9).map(|j| basis.h_basis_eval(j, x).unwrap()).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_inputs() {
        let g = chebyshev_lobatto(4).unwrap();
        assert!(assemble_a(&g, 1.0).is_err());
        let basis = FracBasis::new(&g, 0.5).unwrap();
        assert!(basis.h_basis_eval(0, 0.0).is_err());
        assert!(basis.h_basis_eval(5, 0.0).is_err());
        assert_eq!(basis.h_basis_eval(2, -1.0).unwrap(), 0.0);
    }
}
