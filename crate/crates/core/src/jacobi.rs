//! Jacobi polynomials `P_n^{α,β}` and the gamma-function helpers that the
//! rest of the crate leans on.
//!
//! Values come from the forward three-term recurrence, derivatives from the
//! parameter-shift identity `d/dx P_n^{α,β} = (n+α+β+1)/2 · P_{n-1}^{α+1,β+1}`.
//! Gamma ratios with integer offsets are formed as running products so that
//! degrees of a few hundred never overflow.

use crate::error::{Error, Result};

/// Largest Jacobi parameter accepted by the public constructor.
pub const MAX_PARAM: f64 = 3.0;

/// Degree and parameters of one Jacobi polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    n: usize,
    alpha: f64,
    beta: f64,
}

impl JacobiParams {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !v.is_finite() || v <= -1.0 || v > MAX_PARAM {
                return Err(Error::Parameter(format!(
                    "{name} = {v} outside (-1, {MAX_PARAM}]"
                )));
            }
        }
        Ok(Self { n, alpha, beta })
    }

    /// Legendre polynomial `P_n = P_n^{0,0}`.
    pub fn legendre(n: usize) -> Self {
        Self {
            n,
            alpha: 0.0,
            beta: 0.0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn with_degree(&self, n: usize) -> Self {
        Self { n, ..*self }
    }
}

/// Recurrence coefficients `(a_n, b_n, c_n)` with
/// `P_n = (a_n x + b_n) P_{n-1} + c_n P_{n-2}`, valid for `n >= 2`.
pub fn recurrence_coeffs(n: usize, alpha: f64, beta: f64) -> (f64, f64, f64) {
    debug_assert!(n >= 2);
    let n = n as f64;
    let s = alpha + beta;
    let d = 2.0 * n * (n + s);
    let a = (2.0 * n + s) * (2.0 * n + s - 1.0) / d;
    let b = (alpha * alpha - beta * beta) * (2.0 * n + s - 1.0) / (d * (2.0 * n + s - 2.0));
    let c = -2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * (2.0 * n + s) / (d * (2.0 * n + s - 2.0));
    (a, b, c)
}

/// `P_0 .. P_{n_max}` at `x`, unvalidated parameters.
pub(crate) fn eval_all_raw(n_max: usize, alpha: f64, beta: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    out.push(0.5 * (alpha + beta + 2.0) * x + 0.5 * (alpha - beta));
    for n in 2..=n_max {
        let (a, b, c) = recurrence_coeffs(n, alpha, beta);
        let next = (a * x + b) * out[n - 1] + c * out[n - 2];
        out.push(next);
    }
    out
}

pub(crate) fn eval_raw(n: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 0.5 * (alpha + beta + 2.0) * x + 0.5 * (alpha - beta),
        _ => {
            let mut p0 = 1.0;
            let mut p1 = 0.5 * (alpha + beta + 2.0) * x + 0.5 * (alpha - beta);
            for k in 2..=n {
                let (a, b, c) = recurrence_coeffs(k, alpha, beta);
                let p2 = (a * x + b) * p1 + c * p0;
                p0 = p1;
                p1 = p2;
            }
            p1
        }
    }
}

/// `order`-th derivative of `P_n^{α,β}` by repeated use of the shift identity.
pub(crate) fn deriv_raw(n: usize, alpha: f64, beta: f64, x: f64, order: usize) -> f64 {
    if order > n {
        return 0.0;
    }
    let scale = deriv_scale(n, alpha, beta, order);
    scale * eval_raw(n - order, alpha + order as f64, beta + order as f64, x)
}

fn deriv_scale(n: usize, alpha: f64, beta: f64, order: usize) -> f64 {
    let base = n as f64 + alpha + beta + 1.0;
    (0..order).map(|i| 0.5 * (base + i as f64)).product()
}

/// `d^order/dx^order P_n^{α,β}(x)` for every `n = 0..=n_max`.
pub(crate) fn deriv_all_raw(n_max: usize, alpha: f64, beta: f64, x: f64, order: usize) -> Vec<f64> {
    if order == 0 {
        return eval_all_raw(n_max, alpha, beta, x);
    }
    let mut out = vec![0.0; n_max + 1];
    if n_max < order {
        return out;
    }
    let shifted = eval_all_raw(
        n_max - order,
        alpha + order as f64,
        beta + order as f64,
        x,
    );
    for n in order..=n_max {
        out[n] = deriv_scale(n, alpha, beta, order) * shifted[n - order];
    }
    out
}

/// Value of `P_n^{α,β}(x)` via the forward recurrence.
///
/// Intended for `|x| <= 1`; slightly larger arguments are fine for root
/// bracketing.
pub fn jacobi_eval(p: &JacobiParams, x: f64) -> f64 {
    eval_raw(p.n, p.alpha, p.beta, x)
}

/// All values `P_0^{α,β}(x), ..., P_{n_max}^{α,β}(x)`.
pub fn jacobi_eval_all(n_max: usize, alpha: f64, beta: f64, x: f64) -> Vec<f64> {
    eval_all_raw(n_max, alpha, beta, x)
}

/// First or second derivative of `P_n^{α,β}` at `x`. Zero when `order > n`.
pub fn jacobi_deriv(p: &JacobiParams, x: f64, order: usize) -> f64 {
    deriv_raw(p.n, p.alpha, p.beta, x, order)
}

/// `P_n^{α,β}(-1) = (-1)^n Γ(n+β+1) / (n! Γ(β+1))`, as a product.
pub fn jacobi_at_minus_one(p: &JacobiParams) -> f64 {
    let mut v = 1.0;
    for k in 1..=p.n {
        v *= -(k as f64 + p.beta) / k as f64;
    }
    v
}

/// Weighted squared norm `∫ [P_n^{α,β}]² (1-x)^α (1+x)^β dx`.
///
/// For `n = 0` the closed form has a removable pole when `α+β = -1`, so the
/// Beta integral `2^{α+β+1} B(α+1, β+1)` is used instead.
pub fn jacobi_norm_sq(p: &JacobiParams) -> Result<f64> {
    let (a, b) = (p.alpha, p.beta);
    let pow2 = (a + b + 1.0).exp2();
    if p.n == 0 {
        return Ok(pow2 * gamma_fn(a + 1.0)? * gamma_ratio(b + 1.0, a + b + 2.0)?);
    }
    let n = p.n as f64;
    let r1 = gamma_ratio(n + a + 1.0, n + a + b + 1.0)?;
    let r2 = gamma_ratio(n + b + 1.0, n + 1.0)?;
    Ok(pow2 / (2.0 * n + a + b + 1.0) * r1 * r2)
}

/// A gamma-function value together with its argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    pub argument: f64,
    pub value: f64,
}

impl GammaValue {
    pub fn of(argument: f64) -> Result<Self> {
        Ok(Self {
            argument,
            value: gamma_fn(argument)?,
        })
    }
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Euler gamma function. Positive integers return exact factorials.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() || is_pole(x) {
        return Err(Error::Domain(format!("gamma pole or non-finite argument {x}")));
    }
    if x == x.round() && x <= 171.0 {
        let m = x as u64;
        return Ok((1..m).map(|k| k as f64).product());
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// `Γ(a) / Γ(b)`, reduced by unit steps so that large arguments never
/// overflow. A pole in `b` gives zero; a pole in `a` is an error.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    if !a.is_finite() || !b.is_finite() || is_pole(a) {
        return Err(Error::Domain(format!("gamma ratio Γ({a})/Γ({b}) undefined")));
    }
    if is_pole(b) {
        return Ok(0.0);
    }
    if a > 1.0e4 || b > 1.0e4 {
        use statrs::function::gamma::ln_gamma;
        let sign = if a > 0.0 && b > 0.0 { 1.0 } else { gamma_fn(a)?.signum() * gamma_fn(b)?.signum() };
        return Ok(sign * (ln_gamma(a) - ln_gamma(b)).exp());
    }
    let (mut a, mut b) = (a, b);
    let mut r = 1.0;
    while a > 2.0 && b > 2.0 {
        a -= 1.0;
        b -= 1.0;
        r *= a / b;
    }
    while a > 2.0 {
        a -= 1.0;
        r *= a;
    }
    while b > 2.0 {
        b -= 1.0;
        r /= b;
    }
    Ok(r * gamma_fn(a)? / gamma_fn(b)?)
}

/// `Γ(n - μ + 1) / n!` as `Γ(1-μ) ∏_{k=1}^{n} (k-μ)/k`.
///
/// This is the gain picked up by `(1+x)^{-μ}(P_n^{μ,-μ} - P_n^{μ,-μ}(-1))`
/// under the fractional derivative of order `1-μ`.
pub fn frac_gain(n: usize, mu: f64) -> f64 {
    let mut v = statrs::function::gamma::gamma(1.0 - mu);
    for k in 1..=n {
        v *= (k as f64 - mu) / k as f64;
    }
    v
}
