//! Dense linear algebra on top of `nalgebra`: LU with partial pivoting and
//! singular-value condition numbers.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Pivots smaller than this are treated as singular.
pub const PIVOT_FLOOR: f64 = 1e-300;

fn checked_lu(a: &DMatrix<f64>) -> Result<nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>> {
    if !a.is_square() {
        return Err(Error::Dimension {
            expected: a.nrows(),
            got: a.ncols(),
        });
    }
    let lu = a.clone().lu();
    let pivot = lu
        .u()
        .diagonal()
        .iter()
        .fold(f64::INFINITY, |m, v| m.min(v.abs()));
    if !(pivot >= PIVOT_FLOOR) {
        return Err(Error::Singular { pivot });
    }
    Ok(lu)
}

pub fn inverse(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    checked_lu(a)?
        .try_inverse()
        .ok_or(Error::Singular { pivot: 0.0 })
}

/// Solves `a x = b`, with one step of iterative refinement when the
/// residual exceeds `1e-12 ‖b‖`.
pub fn solve(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    if a.nrows() != b.len() {
        return Err(Error::Dimension {
            expected: a.nrows(),
            got: b.len(),
        });
    }
    let lu = checked_lu(a)?;
    let mut x = lu.solve(b).ok_or(Error::Singular { pivot: 0.0 })?;
    let r = b - a * &x;
    if r.amax() > 1e-12 * b.amax() {
        if let Some(dx) = lu.solve(&r) {
            x += dx;
        }
    }
    Ok(x)
}

/// `σ_max / σ_min` from the singular values.
pub fn cond2(a: &DMatrix<f64>) -> Result<f64> {
    let sv = a.singular_values();
    let max = sv.max();
    let min = sv.min();
    if !(min > 0.0) {
        return Err(Error::Singular { pivot: min });
    }
    Ok(max / min)
}

/// `‖A‖_1 ‖A^{-1}‖_1`.
pub fn cond1(a: &DMatrix<f64>) -> Result<f64> {
    let inv = inverse(a)?;
    Ok(norm1(a) * norm1(&inv))
}

fn norm1(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}
