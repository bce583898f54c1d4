//! Reference values of Riemann–Liouville derivatives for validation.
//!
//! Three independent routes:
//! - the power rule for `(1+x)^p`,
//! - the closed form for `(1+x)^{-μ}(P_n^{μ,-μ}(x) - P_n^{μ,-μ}(-1))`,
//! - brute-force quadrature of the defining integral followed by numerical
//!   differentiation.
//!
//! None of this goes through the differentiation matrices.

use std::f64::consts::FRAC_PI_2;

use statrs::function::gamma::{gamma, ln_gamma};

use crate::error::{Error, Result};
use crate::jacobi::{jacobi_deriv, jacobi_eval, JacobiParams};

/// Relative tolerance of the inner tanh-sinh quadrature.
pub const QUAD_TOL: f64 = 1e-14;

/// Relative tolerance of the Richardson sequence for the outer derivative.
pub const DERIV_TOL: f64 = 1e-10;

/// Maximum number of step halvings for the outer derivative.
pub const MAX_LEVELS: usize = 20;

const TANH_SINH_TMAX: f64 = 6.0;
const TANH_SINH_MAX_LEVEL: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    AnalyticMonomial,
    AskeyClosedForm,
    SingularQuadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub method: OracleMethod,
    /// Zero for the analytic routes.
    pub est_error: f64,
}

impl OracleResult {
    fn exact(value: f64, method: OracleMethod) -> Self {
        Self {
            value,
            method,
            est_error: 0.0,
        }
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("sigma = {sigma} outside (0, 1)")))
    }
}

/// `Γ(a) / Γ(b)` for positive arguments.
fn gamma_quotient(a: f64, b: f64) -> f64 {
    if a > 150.0 || b > 150.0 {
        (ln_gamma(a) - ln_gamma(b)).exp()
    } else {
        gamma(a) / gamma(b)
    }
}

/// `D^σ (1+x)^p = Γ(p+1)/Γ(p+1-σ) (1+x)^{p-σ}`.
///
/// When `p + 1 - σ` is a non-positive integer the result is identically
/// zero.
pub fn rl_monomial(p: f64, sigma: f64, x: f64) -> Result<OracleResult> {
    if !(p > -1.0) {
        return Err(Error::Domain(format!("exponent p = {p} must exceed -1")));
    }
    check_sigma(sigma)?;
    if !(x > -1.0 && x <= 1.0) {
        return Err(Error::Domain(format!("x = {x} outside (-1, 1]")));
    }
    let b = p + 1.0 - sigma;
    if b <= 0.0 && b == b.round() {
        return Ok(OracleResult::exact(0.0, OracleMethod::AnalyticMonomial));
    }
    let c = if b > 0.0 {
        gamma_quotient(p + 1.0, b)
    } else {
        gamma(p + 1.0) / gamma(b)
    };
    Ok(OracleResult::exact(
        c * (1.0 + x).powf(p - sigma),
        OracleMethod::AnalyticMonomial,
    ))
}

/// `D^{1-μ}[(1+x)^{-μ}(P_n^{μ,-μ}(x) - P_n^{μ,-μ}(-1))] = Γ(n-μ+1)/n! · P_n'(x)`
/// with `P_n` the Legendre polynomial.
pub fn rl_weighted_jacobi(n: usize, mu: f64, x: f64) -> Result<OracleResult> {
    check_sigma(mu)?;
    if n == 0 {
        return Ok(OracleResult::exact(0.0, OracleMethod::AskeyClosedForm));
    }
    let c = gamma_quotient(n as f64 - mu + 1.0, n as f64 + 1.0);
    let dp = jacobi_deriv(&JacobiParams::legendre(n), x, 1);
    Ok(OracleResult::exact(c * dp, OracleMethod::AskeyClosedForm))
}

/// Coefficients `a_k`, `k = 0..=n`, of `P_n^{μ,-μ}(x) = Σ a_k (1+x)^k`, from
/// the explicit hypergeometric sum.
pub fn weighted_jacobi_power_coeffs(n: usize, mu: f64) -> Vec<f64> {
    let sign_n = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let lead = gamma(n as f64 + 1.0 - mu);
    let mut binom = 1.0;
    let mut rising = 1.0; // (n+k)!/n!
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            binom *= (n + 1 - k) as f64 / k as f64;
            rising *= (n + k) as f64;
        }
        let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = lead / gamma(n as f64 + 1.0) * binom * rising / gamma(k as f64 + 1.0 - mu)
            * sign_k
            / 2f64.powi(k as i32);
        out.push(sign_n * term);
    }
    out
}

/// The weighted Jacobi image computed term by term with [`rl_monomial`].
pub fn rl_weighted_jacobi_by_monomials(n: usize, mu: f64, x: f64) -> Result<OracleResult> {
    let sigma = 1.0 - mu;
    let coeffs = weighted_jacobi_power_coeffs(n, mu);
    let mut value = 0.0;
    for (k, a) in coeffs.iter().enumerate().skip(1) {
        value += a * rl_monomial(k as f64 - mu, sigma, x)?.value;
    }
    Ok(OracleResult::exact(value, OracleMethod::AnalyticMonomial))
}

/// Double-exponential quadrature of `f` over `[a, b]`.
///
/// `f(s, s - a, b - s)` receives the distances to both ends computed without
/// cancellation, so integrands with algebraic end singularities can be
/// written in terms of them. Returns the value and the difference between
/// the last two levels.
pub fn tanh_sinh<F: Fn(f64, f64, f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    if !(b > a) {
        return Err(Error::Domain(format!("empty interval [{a}, {b}]")));
    }
    let half = 0.5 * (b - a);
    let term = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        let da = half * u.exp() / cu;
        let db = half * (-u).exp() / cu;
        if da <= 0.0 || db <= 0.0 {
            return 0.0;
        }
        let s = if t < 0.0 { a + da } else { b - db };
        let w = half * FRAC_PI_2 * t.cosh() / (cu * cu);
        let v = w * f(s, da, db);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let mut h = 0.5;
    let steps = (TANH_SINH_TMAX / h) as i64;
    let mut sum: f64 = (-steps..=steps).map(|j| term(j as f64 * h)).sum();
    let mut value = h * sum;
    let mut err = f64::INFINITY;
    for level in 1..=TANH_SINH_MAX_LEVEL {
        h *= 0.5;
        let steps = (TANH_SINH_TMAX / h) as i64;
        let mut j = -steps + if steps % 2 == 0 { 1 } else { 0 };
        while j <= steps {
            sum += term(j as f64 * h);
            j += 2;
        }
        let next = h * sum;
        err = (next - value).abs();
        value = next;
        if level >= 3 && err <= tol * value.abs().max(f64::MIN_POSITIVE) {
            return Ok((value, err));
        }
    }
    if err <= 1e3 * tol * value.abs().max(1.0) {
        Ok((value, err))
    } else {
        Err(Error::Tolerance {
            best: value,
            est_error: err,
        })
    }
}

/// `∫_{-1}^x f(s)(x-s)^{-σ} ds / Γ(1-σ)` after the substitution
/// `s = x - t^{1/(1-σ)}`, which removes the kernel singularity.
///
/// `f(s, 1+s)` receives the distance to `-1` separately.
pub fn rl_integral<F: Fn(f64, f64) -> f64>(f: &F, sigma: f64, x: f64) -> Result<(f64, f64)> {
    let k = 1.0 / (1.0 - sigma);
    let r = 1.0 + x;
    let tt = r.powf(1.0 - sigma);
    let g = |t: f64, dt0: f64, dtt: f64| {
        // 1 + s = r - t^k = r (1 - (1 - dtt/T)^k), kept accurate near t = T
        let rs = if t < 0.5 * tt {
            r - dt0.powf(k)
        } else {
            -r * (k * (-dtt / tt).ln_1p()).exp_m1()
        };
        f(x - t.powf(k), rs)
    };
    let (v, e) = tanh_sinh(g, 0.0, tt, QUAD_TOL)?;
    let c = 1.0 / gamma(2.0 - sigma);
    Ok((c * v, c * e))
}

/// `D^σ f(x)` by quadrature of the defining integral and five-point central
/// differences with Richardson extrapolation.
pub fn rl_quadrature<F: Fn(f64, f64) -> f64>(f: F, sigma: f64, x: f64) -> Result<OracleResult> {
    check_sigma(sigma)?;
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Domain(format!("x = {x} outside (-1, 1)")));
    }
    let integral = |y: f64| rl_integral(&f, sigma, y).map(|(v, _)| v);
    let stencil = |h: f64| -> Result<f64> {
        let (m2, m1) = (integral(x - 2.0 * h)?, integral(x - h)?);
        let (p1, p2) = (integral(x + h)?, integral(x + 2.0 * h)?);
        Ok((m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h))
    };
    // keep x + 2h inside the interval where f is defined
    let mut h = 0.05f64.min((1.0 + x) / 8.0).min((1.0 - x).max(1e-3) / 4.0);
    let mut prev = stencil(h)?;
    let mut prev_rich: Option<f64> = None;
    let mut best = (prev, f64::INFINITY);
    for _ in 0..MAX_LEVELS {
        h *= 0.5;
        let d = stencil(h)?;
        let rich = d + (d - prev) / 15.0;
        if let Some(pr) = prev_rich {
            let diff = (rich - pr).abs();
            if diff < best.1 {
                best = (rich, diff);
            }
            if diff <= DERIV_TOL * rich.abs().max(1.0) {
                return Ok(OracleResult {
                    value: rich,
                    method: OracleMethod::SingularQuadrature,
                    est_error: diff,
                });
            }
            // round-off has taken over
            if diff > 1e3 * best.1 {
                break;
            }
        }
        prev_rich = Some(rich);
        prev = d;
    }
    if best.1 <= 1e-7 * best.0.abs().max(1.0) {
        Ok(OracleResult {
            value: best.0,
            method: OracleMethod::SingularQuadrature,
            est_error: best.1,
        })
    } else {
        Err(Error::Tolerance {
            best: best.0,
            est_error: best.1,
        })
    }
}

/// Left side of the integral identity
/// `P_n(-1) / (Γ(1-μ)Γ(μ) P_n^{μ,-μ}(-1)) ∫_{-1}^x (1+s)^{-μ} P_n^{μ,-μ}(s) (x-s)^{μ-1} ds = P_n(x)`,
/// by direct quadrature with both end singularities in place.
pub fn askey_integral(n: usize, mu: f64, x: f64) -> Result<OracleResult> {
    check_sigma(mu)?;
    if !(x > -1.0 && x <= 1.0) {
        return Err(Error::Domain(format!("x = {x} outside (-1, 1]")));
    }
    let p = JacobiParams::new(n, mu, -mu)?;
    let f = |s: f64, da: f64, db: f64| da.powf(-mu) * jacobi_eval(&p, s) * db.powf(mu - 1.0);
    let (v, e) = tanh_sinh(f, -1.0, x, QUAD_TOL)?;
    let leg_m1 = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let p_m1 = jacobi_eval(&p, -1.0);
    let c = leg_m1 / (gamma(1.0 - mu) * gamma(mu) * p_m1);
    Ok(OracleResult {
        value: c * v,
        method: OracleMethod::SingularQuadrature,
        est_error: (c * e).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn legendre(n: usize, x: f64) -> f64 {
        jacobi_eval(&JacobiParams::legendre(n), x)
    }

    #[test]
    fn power_rule_examples() {
        let r = rl_monomial(0.0, 0.5, 0.0).unwrap();
        assert!((r.value - 0.5641895835477563).abs() < 1e-13);
        assert_eq!(r.est_error, 0.0);
        let s = 0.3;
        let r = rl_monomial(s, s, 0.4).unwrap();
        assert!((r.value - gamma(s + 1.0)).abs() < 1e-14);
        let r = rl_monomial(s + 2.0, s, 0.5).unwrap();
        assert!((r.value - gamma(s + 3.0) / 2.0 * 2.25).abs() < 1e-13);
        assert!(rl_monomial(-1.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let r = rl_weighted_jacobi(1, 0.5, 0.3).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-14);
        assert_eq!(rl_weighted_jacobi(0, 0.5, 0.3).unwrap().value, 0.0);
    }

    #[test]
    fn power_coefficients_reproduce_polynomial() {
        for n in 0..=8 {
            let mu = 0.35;
            let c = weighted_jacobi_power_coeffs(n, mu);
            let p = JacobiParams::new(n, mu, -mu).unwrap();
            for &x in &[-1.0f64, -0.3, 0.2, 0.9] {
                let terms: Vec<f64> = c.iter().enumerate().map(|(k, a)| a * (1.0 + x).powi(k as i32)).collect();
                let s: f64 = terms.iter().sum();
                let scale: f64 = terms.iter().map(|t| t.abs()).sum();
                assert!((s - jacobi_eval(&p, x)).abs() < 1e-13 * scale, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn tanh_sinh_on_beta_integral() {
        // ∫_{-1}^{1} (1+s)^{-0.7} (1-s)^{0.2} ds = 2^{0.5} B(0.3, 1.2)
        let (v, _) = tanh_sinh(|_, da, db| da.powf(-0.7) * db.powf(0.2), -1.0, 1.0, 1e-14).unwrap();
        let exact = 2f64.powf(0.5) * gamma(0.3) * gamma(1.2) / gamma(1.5);
        assert!((v - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn quadrature_power_rule() {
        let s = 0.5;
        let r = rl_quadrature(|_, r| r.powf(s), s, 0.5).unwrap();
        assert!((r.value - 0.886226925452758).abs() < 1e-6);
        assert_eq!(r.method, OracleMethod::SingularQuadrature);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let (n, mu, x) = (5, 0.3, 0.4);
        let p = JacobiParams::new(n, mu, -mu).unwrap();
        let pm1 = jacobi_eval(&p, -1.0);
        let f = |s: f64, r: f64| r.powf(-mu) * (jacobi_eval(&p, s) - pm1);
        let q = rl_quadrature(f, 1.0 - mu, x).unwrap();
        let a = rl_weighted_jacobi(n, mu, x).unwrap();
        assert!((q.value - a.value).abs() < 1e-6);
    }

    #[test]
    fn quadrature_is_linear() {
        let s = 0.4;
        let x = 0.1;
        let f = |_: f64, r: f64| r.powf(1.2);
        let g = |s: f64, r: f64| r * s.cos();
        let a = rl_quadrature(f, s, x).unwrap();
        let b = rl_quadrature(g, s, x).unwrap();
        let c = rl_quadrature(|s, r| 2.0 * f(s, r) - 3.0 * g(s, r), s, x).unwrap();
        let tol = 2.0 * a.est_error + 3.0 * b.est_error + c.est_error + 1e-9;
        assert!((c.value - 2.0 * a.value + 3.0 * b.value).abs() <= tol);
    }

    #[test]
    fn integral_identity_by_quadrature() {
        for n in [0, 1, 4, 10] {
            for mu in [0.2, 0.5, 0.8] {
                for &x in &[-0.7, 0.0, 0.6, 1.0] {
                    let v = askey_integral(n, mu, x).unwrap().value;
                    let p = legendre(n, x);
                    assert!((v - p).abs() <= 1e-6 * p.abs().max(1e-2), "n={n} mu={mu} x={x}: {v} vs {p}");
                }
            }
        }
    }
}
