//! Superconsistent collocation nodes.
//!
//! `χ_N` is a weighted polynomial that vanishes on every node of the
//! representation grid, so the discrete operator cannot see it. Placing the
//! collocation nodes at the zeros of the exact image `Ψ_N = D^σ χ_N` makes
//! `(D^σ - D^σ_N) χ_N` vanish there too, which enlarges the space on which
//! the scheme is exact by one function.
//!
//! Three families are supported:
//!
//! | family | weight            | grid                               |
//! |--------|-------------------|------------------------------------|
//! | `Chebyshev` | `(1+x)^{1/2} P^{1/2,1/2}_{N-1}` | Chebyshev–Lobatto       |
//! | `Legendre`  | `(1+x) P^{1,1}_{N-1}`           | Legendre–Lobatto        |
//! | `Mu`        | `(1+x)^{1-μ} P^{1+μ,1-μ}_{N-1}` | zeros of `d/dx P_N^{μ,-μ}` |

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grids::{chebyshev_lobatto, jacobi_deriv_zeros, legendre_zeros, Grid, GridFamily, GridRole};
use crate::jacobi::{deriv_raw, eval_raw, gamma_ratio, recurrence_coeffs};
use crate::roots::{bisect, sign_change_brackets};

/// Bracket width at which node refinement stops.
pub const NODE_TOL: f64 = 1e-15;

/// Default number of panels in the sign scan for the mixed condition.
pub const DEFAULT_SCAN_PANELS: usize = 2000;

/// Relative size below which a bracket edge value counts as a zero.
const EDGE_ZERO_TOL: f64 = 1e-13;

/// Left evaluation point for families whose `Ψ` is singular or vanishes at `-1`.
const LEFT_OFFSET: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChiFamily {
    /// `α = β = 1/2`, representation on Chebyshev–Lobatto nodes
    Chebyshev,
    /// `α = β = 1`, representation on Legendre–Lobatto nodes
    Legendre,
    /// `α = 1+μ, β = 1-μ`, representation on the `(μ,-μ)` Lobatto nodes
    Mu,
}

impl fmt::Display for ChiFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChiFamily::Chebyshev => "cheb",
            ChiFamily::Legendre => "leg",
            ChiFamily::Mu => "mu",
        })
    }
}

impl FromStr for ChiFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cheb" | "chebyshev" => Ok(ChiFamily::Chebyshev),
            "leg" | "legendre" => Ok(ChiFamily::Legendre),
            "mu" | "jacobi" => Ok(ChiFamily::Mu),
            other => Err(Error::Parameter(format!("unknown family '{other}'"))),
        }
    }
}

impl ChiFamily {
    /// Jacobi parameters `(α, β)` of the polynomial inside `χ`.
    pub fn params(self, mu: f64) -> (f64, f64) {
        match self {
            ChiFamily::Chebyshev => (0.5, 0.5),
            ChiFamily::Legendre => (1.0, 1.0),
            ChiFamily::Mu => (1.0 + mu, 1.0 - mu),
        }
    }

    /// The grid on which `χ` vanishes, endpoints included.
    pub fn representation_grid(self, n: usize, mu: f64) -> Result<Grid> {
        match self {
            ChiFamily::Chebyshev => chebyshev_lobatto(n),
            ChiFamily::Legendre => jacobi_deriv_zeros(n, 0.0, 0.0, true),
            ChiFamily::Mu => {
                check_open_mu(mu)?;
                jacobi_deriv_zeros(n, mu, -mu, true)
            }
        }
    }
}

fn check_open_mu(mu: f64) -> Result<()> {
    if mu > 0.0 && mu < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("mu = {mu} outside (0, 1)")))
    }
}

fn check_closed_mu(mu: f64) -> Result<()> {
    if (0.0..=1.0).contains(&mu) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("mu = {mu} outside [0, 1]")))
    }
}

/// `χ_N(x) = scale · (1+x)^β (1-x) P^{α,β}_{N-1}(x)`, stored as the
/// three-term expansion `(1+x)^β Σ coef · P^{α,β}_k` obtained from the
/// recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiFunction {
    family: ChiFamily,
    n: usize,
    mu: f64,
    alpha: f64,
    beta: f64,
    scale: f64,
    terms: [(f64, usize); 3],
}

impl ChiFunction {
    pub fn new(family: ChiFamily, n: usize, mu: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Size("chi needs N >= 1".into()));
        }
        check_closed_mu(mu)?;
        let (alpha, beta) = family.params(mu);
        let scale = match family {
            // (N+1)/2 turns P^{1+μ,1-μ}_{N-1} into d/dx P_N^{μ,-μ}
            ChiFamily::Mu => 0.5 * (n as f64 + 1.0),
            _ => 1.0,
        };
        let terms = if n == 1 {
            // 1 - x written on P_0 and P_1^{α,β}
            let s = alpha + beta + 2.0;
            [(1.0 + (alpha - beta) / s, 0), (-2.0 / s, 1), (0.0, 0)]
        } else {
            let (a, b, c) = recurrence_coeffs(n, alpha, beta);
            [(1.0 + b / a, n - 1), (-1.0 / a, n), (c / a, n - 2)]
        };
        Ok(Self {
            family,
            n,
            mu,
            alpha,
            beta,
            scale,
            terms,
        })
    }

    pub fn family(&self) -> ChiFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `(coefficient, degree)` pairs of the expansion, scale included.
    pub fn expansion(&self) -> [(f64, usize); 3] {
        self.terms.map(|(c, k)| (self.scale * c, k))
    }

    /// Three-term expansion form.
    pub fn eval(&self, x: f64) -> f64 {
        let r = 1.0 + x;
        if r <= 0.0 {
            return 0.0;
        }
        let s: f64 = self
            .terms
            .iter()
            .map(|&(c, k)| c * eval_raw(k, self.alpha, self.beta, x))
            .sum();
        self.scale * r.powf(self.beta) * s
    }

    /// Product form `scale (1+x)^β (1-x) P^{α,β}_{N-1}(x)`.
    pub fn eval_product(&self, x: f64) -> f64 {
        let r = 1.0 + x;
        if r <= 0.0 {
            return 0.0;
        }
        self.scale * r.powf(self.beta) * (1.0 - x) * eval_raw(self.n - 1, self.alpha, self.beta, x)
    }

    /// `χ''` by the product rule on `(1+x)^β · (1-x) P_{N-1}^{α,β}`.
    pub fn second_deriv(&self, x: f64) -> Result<f64> {
        let r = 1.0 + x;
        if r.abs() < 1e-10 {
            return Err(Error::Domain(format!("chi'' is singular at {x}")));
        }
        let (a, b, m) = (self.alpha, self.beta, self.n - 1);
        let p = eval_raw(m, a, b, x);
        let p1 = deriv_raw(m, a, b, x, 1);
        let p2 = deriv_raw(m, a, b, x, 2);
        let q = (1.0 - x) * p;
        let q1 = -p + (1.0 - x) * p1;
        let q2 = -2.0 * p1 + (1.0 - x) * p2;
        let w = r.powf(b);
        let w1 = b * r.powf(b - 1.0);
        let w2 = b * (b - 1.0) * r.powf(b - 2.0);
        Ok(self.scale * (w2 * q + 2.0 * w1 * q1 + w * q2))
    }
}

/// `χ''` for the `Mu` family in closed form, with `F = (1-x²) d/dx P_N^{μ,-μ}`
/// and `d/dx F = 2μ P_N' - N(N+1) P_N` from the Sturm–Liouville equation.
pub fn chi_second_deriv(n: usize, mu: f64, x: f64) -> Result<f64> {
    let r = 1.0 + x;
    if r.abs() < 1e-10 {
        return Err(Error::Domain(format!("chi'' is singular at {x}")));
    }
    let nn = (n * (n + 1)) as f64;
    let p = eval_raw(n, mu, -mu, x);
    let p1 = deriv_raw(n, mu, -mu, x, 1);
    let p2 = deriv_raw(n, mu, -mu, x, 2);
    let bracket = mu * (mu + 1.0) * (1.0 - x * x) - 4.0 * mu * mu * r - nn * r * r;
    Ok(r.powf(-mu - 2.0) * bracket * p1
        + 2.0 * mu * nn * r.powf(-mu - 1.0) * p
        + 2.0 * mu * r.powf(-mu) * p2)
}

/// `Ψ_N = D^σ χ_N` with `σ = 1 - μ`, evaluated exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiFunction {
    chi: ChiFunction,
    /// Legendre-form coefficients of `Q = A P_N + B P_{N+1} + C P_{N-1}` and
    /// the leading factor, for the `Mu` family.
    legendre_form: Option<(f64, [f64; 3])>,
}

impl PsiFunction {
    pub fn new(family: ChiFamily, n: usize, mu: f64) -> Result<Self> {
        let chi = ChiFunction::new(family, n, mu)?;
        let legendre_form = if family == ChiFamily::Mu && n >= 2 {
            let nf = n as f64;
            let (a, b, c) = recurrence_coeffs(n, 1.0 + mu, 1.0 - mu);
            let lead = (nf + 1.0) * gamma_ratio(nf - mu, nf + 1.0)?;
            let ca = (1.0 + b / a) * (nf - mu) / (nf + 1.0);
            let cb = -(nf + 1.0 - mu) * (nf - mu) / (a * (nf + 2.0) * (nf + 1.0));
            let cc = c / a;
            Some((lead, [ca, cb, cc]))
        } else {
            None
        };
        Ok(Self { chi, legendre_form })
    }

    pub fn from_chi(chi: ChiFunction) -> Result<Self> {
        Self::new(chi.family, chi.n, chi.mu)
    }

    pub fn chi(&self) -> &ChiFunction {
        &self.chi
    }

    pub fn family(&self) -> ChiFamily {
        self.chi.family
    }

    pub fn n(&self) -> usize {
        self.chi.n
    }

    pub fn mu(&self) -> f64 {
        self.chi.mu
    }

    /// `Ψ(x)`. The `Mu` family uses the Legendre polynomial form
    /// `lead · d/dx{(1+x) Q'(x)}`; the others use the weighted Jacobi form.
    pub fn eval(&self, x: f64) -> f64 {
        match self.legendre_form {
            Some((lead, [ca, cb, cc])) => {
                let n = self.chi.n;
                let q1 = ca * deriv_raw(n, 0.0, 0.0, x, 1)
                    + cb * deriv_raw(n + 1, 0.0, 0.0, x, 1)
                    + cc * deriv_raw(n - 1, 0.0, 0.0, x, 1);
                let q2 = ca * deriv_raw(n, 0.0, 0.0, x, 2)
                    + cb * deriv_raw(n + 1, 0.0, 0.0, x, 2)
                    + cc * deriv_raw(n - 1, 0.0, 0.0, x, 2);
                lead * (q1 + (1.0 + x) * q2)
            }
            None => self.eval_weighted_jacobi(x),
        }
    }

    /// `Ψ(x)` term by term from the Askey identity:
    /// `D^σ[(1+x)^β P_k^{α,β}] = Γ(k+β+1)/Γ(k+β+μ+1) · d/dx[(1+x)^{β+μ} P_k^{α-μ,β+μ}]`.
    pub fn eval_weighted_jacobi(&self, x: f64) -> f64 {
        let chi = &self.chi;
        let mu = chi.mu;
        let (a, b) = (chi.alpha - mu, chi.beta + mu);
        let r = 1.0 + x;
        let s: f64 = chi
            .terms
            .iter()
            .map(|&(c, k)| {
                let kf = k as f64;
                let g = gamma_ratio(kf + chi.beta + 1.0, kf + chi.beta + mu + 1.0)
                    .expect("positive arguments");
                let p = eval_raw(k, a, b, x);
                let dp = deriv_raw(k, a, b, x, 1);
                let d = if b == 1.0 {
                    p + r * dp
                } else {
                    b * r.powf(b - 1.0) * p + r.powf(b) * dp
                };
                c * g * d
            })
            .sum();
        chi.scale * s
    }
}

/// Large-`N` approximation
/// `-(N+1)Γ(N-μ)/N! · [(1+x) P_N'(x) + (N²+N+1) P_N(x)]`.
pub fn psi_approx_eval(n: usize, mu: f64, x: f64) -> f64 {
    psi_approx_factor(n, mu)
        * -((1.0 + x) * deriv_raw(n, 0.0, 0.0, x, 1) + (n * n + n + 1) as f64 * eval_raw(n, 0.0, 0.0, x))
}

/// The multiplying constant `(N+1)Γ(N-μ)/N!` of [`psi_approx_eval`].
pub fn psi_approx_factor(n: usize, mu: f64) -> f64 {
    let nf = n as f64;
    (nf + 1.0) * gamma_ratio(nf - mu, nf + 1.0).expect("N - mu > 0")
}

/// Zeros of `f` bracketed by the Legendre zeros of degree `n`, augmented
/// with `-1` and `1`: one root per inner bracket and one in exactly one of
/// the two end brackets.
fn interlaced_zeros<F: Fn(f64) -> f64>(f: F, n: usize, left: f64) -> Result<Vec<f64>> {
    let leg = legendre_zeros(n)?;
    let mut edges = Vec::with_capacity(n + 2);
    edges.push(left);
    edges.extend_from_slice(leg.nodes());
    edges.push(1.0);
    let mut vals: Vec<f64> = edges.iter().map(|&x| f(x)).collect();
    // at μ = 0 the zeros sit on the Legendre zeros themselves, at μ = 1 the
    // last one sits on x = 1
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for v in &mut vals[1..=n + 1] {
        if v.abs() <= EDGE_ZERO_TOL * scale {
            *v = 0.0;
        }
    }
    let changes = |i: usize| vals[i] == 0.0 || vals[i] * vals[i + 1] < 0.0;
    for i in 1..n {
        if !changes(i) {
            return Err(Error::Interlacing {
                lo: edges[i],
                hi: edges[i + 1],
            });
        }
    }
    let first = changes(0);
    let last = changes(n) || vals[n + 1] == 0.0;
    let mut brackets: Vec<(f64, f64)> = Vec::with_capacity(n);
    match (first, last) {
        (true, true) => {
            return Err(Error::Bracketing {
                expected: n,
                found: n + 1,
            })
        }
        (false, false) => {
            return Err(Error::Interlacing {
                lo: edges[0],
                hi: edges[1],
            })
        }
        (true, false) => brackets.push((edges[0], edges[1])),
        (false, true) => {}
    }
    for i in 1..n {
        brackets.push((edges[i], edges[i + 1]));
    }
    if last {
        brackets.push((edges[n], edges[n + 1]));
    }
    let on_zero = |x: f64| edges.iter().zip(&vals).any(|(&e, &v)| e == x && v == 0.0);
    brackets
        .into_iter()
        .map(|(lo, hi)| {
            if on_zero(lo) {
                Ok(lo)
            } else if on_zero(hi) {
                Ok(hi)
            } else {
                bisect(&f, lo, hi, NODE_TOL)
            }
        })
        .collect()
}

/// The `N` zeros of `Ψ_N` in `(-1, 1)`, bracketed by the Legendre zeros of
/// degree `N`, refined by bisection.
pub fn superconsistent_nodes(family: ChiFamily, n: usize, sigma: f64) -> Result<Grid> {
    let mu = 1.0 - sigma;
    let psi = PsiFunction::new(family, n, mu)?;
    let left = if family == ChiFamily::Mu { -1.0 } else { -1.0 + LEFT_OFFSET };
    let zeros = interlaced_zeros(|x| psi.eval(x), n, left)?;
    Grid::new(
        zeros,
        GridRole::Collocation,
        GridFamily::PsiZeros { family, sigma },
    )
}

/// Zeros of the large-`N` approximation, bracketed the same way.
pub fn approx_superconsistent_nodes(n: usize, sigma: f64) -> Result<Vec<f64>> {
    let mu = 1.0 - sigma;
    check_closed_mu(mu)?;
    interlaced_zeros(|x| psi_approx_eval(n, mu, x), n, -1.0)
}

/// The `N-1` roots of `-χ''(z) + K Ψ(z) = 0` in `(-1, 1)`.
pub fn mixed_collocation_nodes(family: ChiFamily, n: usize, sigma: f64, k: f64) -> Result<Grid> {
    mixed_collocation_nodes_with(family, n, sigma, k, DEFAULT_SCAN_PANELS)
}

/// As [`mixed_collocation_nodes`] with a configurable scan resolution.
pub fn mixed_collocation_nodes_with(
    family: ChiFamily,
    n: usize,
    sigma: f64,
    k: f64,
    panels: usize,
) -> Result<Grid> {
    if panels < 2 {
        return Err(Error::Parameter("scan needs at least 2 panels".into()));
    }
    let mu = 1.0 - sigma;
    let psi = PsiFunction::new(family, n, mu)?;
    let chi = psi.chi().clone();
    let f = |x: f64| {
        let d2 = if family == ChiFamily::Mu {
            chi_second_deriv(n, mu, x)
        } else {
            chi.second_deriv(x)
        };
        -d2.unwrap_or(f64::NAN) + k * psi.eval(x)
    };
    let xs: Vec<f64> = (0..=panels)
        .map(|i| {
            if i == 0 {
                -1.0 + 1e-10
            } else {
                -1.0 + 2.0 * i as f64 / panels as f64
            }
        })
        .collect();
    let brackets = sign_change_brackets(f, &xs[..panels]);
    if brackets.len() != n - 1 {
        let trace: Vec<String> = brackets
            .iter()
            .map(|(lo, hi)| format!("[{lo:.6}, {hi:.6}]"))
            .collect();
        return Err(Error::BlowUp {
            expected: n - 1,
            found: brackets.len(),
            trace: if trace.is_empty() { "none".into() } else { trace.join(" ") },
        });
    }
    let roots = brackets
        .into_iter()
        .map(|(lo, hi)| if lo == hi { Ok(lo) } else { bisect(f, lo, hi, NODE_TOL) })
        .collect::<Result<Vec<f64>>>()?;
    Grid::new(
        roots,
        GridRole::Collocation,
        GridFamily::MixedZeros { family, sigma, k },
    )
}

/// Maximum of `|Ψ|` over a uniform sample of `[-1, 1]`.
pub fn psi_sup_norm(psi: &PsiFunction, samples: usize) -> f64 {
    let left = if psi.family() == ChiFamily::Mu { -1.0 } else { -1.0 + LEFT_OFFSET };
    (0..=samples)
        .map(|i| {
            let x = left + (1.0 - left) * i as f64 / samples as f64;
            psi.eval(x).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_vanishes_on_representation_grid() {
        for family in [ChiFamily::Chebyshev, ChiFamily::Legendre, ChiFamily::Mu] {
            for n in [1, 3, 6, 11] {
                let mu = 0.4;
                let chi = ChiFunction::new(family, n, mu).unwrap();
                let g = family.representation_grid(n, mu).unwrap();
                for &x in g.nodes() {
                    assert!(chi.eval(x).abs() <= 1e-10, "{family} N={n} x={x}");
                }
                assert_eq!(chi.eval(1.0).abs(), 0.0f64.max(chi.eval(1.0).abs()));
                assert!(chi.eval(1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn chi_expansion_matches_product_and_derivative_form() {
        let (n, mu) = (7, 0.3);
        let chi = ChiFunction::new(ChiFamily::Mu, n, mu).unwrap();
        for i in 0..20 {
            let x = -0.95 + 0.1 * i as f64;
            let direct = (1.0 + x).powf(1.0 - mu) * (1.0 - x) * deriv_raw(n, mu, -mu, x, 1);
            assert!((chi.eval(x) - direct).abs() < 1e-10 * (1.0 + direct.abs()));
            assert!((chi.eval_product(x) - direct).abs() < 1e-10 * (1.0 + direct.abs()));
        }
    }

    #[test]
    fn chebyshev_and_legendre_constants() {
        let n = 6;
        let nf = n as f64;
        let chi = ChiFunction::new(ChiFamily::Chebyshev, n, 0.5).unwrap();
        let e = chi.expansion();
        assert!((e[1].0 + (nf + 1.0) / (2.0 * nf + 1.0)).abs() < 1e-15);
        assert!((e[2].0 + (2.0 * nf - 1.0) / (4.0 * nf)).abs() < 1e-15);
        let chi = ChiFunction::new(ChiFamily::Legendre, n, 0.5).unwrap();
        let e = chi.expansion();
        assert!((e[1].0 + nf * (nf + 2.0) / ((nf + 1.0) * (2.0 * nf + 1.0))).abs() < 1e-15);
        assert!((e[2].0 + nf / (2.0 * nf + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn mu_family_recurrence_constants() {
        let (n, mu) = (5usize, 0.37);
        let nf = n as f64;
        let (a, b, c) = recurrence_coeffs(n, 1.0 + mu, 1.0 - mu);
        assert!((a - (nf + 1.0) * (2.0 * nf + 1.0) / (nf * (nf + 2.0))).abs() < 1e-14);
        assert!((b - mu * (2.0 * nf + 1.0) / (nf * nf * (nf + 2.0))).abs() < 1e-14);
        assert!((c + (nf * nf - mu * mu) * (nf + 1.0) / (nf * nf * (nf + 2.0))).abs() < 1e-14);
    }

    #[test]
    fn legendre_form_matches_weighted_jacobi_form() {
        for n in [2, 5, 9] {
            for mu in [0.1, 0.5, 0.85] {
                let psi = PsiFunction::new(ChiFamily::Mu, n, mu).unwrap();
                for i in 0..=20 {
                    let x = -1.0 + 0.1 * i as f64;
                    let a = psi.eval(x);
                    let b = psi.eval_weighted_jacobi(x);
                    assert!((a - b).abs() < 1e-11 * (1.0 + a.abs()), "N={n} mu={mu} x={x}");
                }
            }
        }
    }

    #[test]
    fn approximation_constant_limits() {
        let n = 6;
        let nf = n as f64;
        assert!((psi_approx_factor(n, 0.0) - (nf + 1.0) / nf).abs() < 1e-13);
        assert!((psi_approx_factor(n, 1.0) - (nf + 1.0) / (nf * (nf - 1.0))).abs() < 1e-13);
    }

    #[test]
    fn chi_second_derivative_forms_agree() {
        for n in [3, 6, 10] {
            for mu in [0.2, 0.5, 0.9] {
                let chi = ChiFunction::new(ChiFamily::Mu, n, mu).unwrap();
                for &x in &[-0.8, -0.1, 0.3, 0.95] {
                    let a = chi_second_deriv(n, mu, x).unwrap();
                    let b = chi.second_deriv(x).unwrap();
                    assert!((a - b).abs() < 1e-10 * (1.0 + a.abs()));
                }
            }
        }
        assert!(chi_second_deriv(4, 0.5, -1.0).is_err());
    }

    #[test]
    fn chi_second_derivative_finite_difference() {
        let (n, mu, x, h) = (6, 0.5, 0.3, 1e-4);
        let g = |x: f64| (1.0 + x).powf(-mu) * (1.0 - x * x) * deriv_raw(n, mu, -mu, x, 1);
        let fd = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
        let d2 = chi_second_deriv(n, mu, x).unwrap();
        assert!((d2 - fd).abs() <= 1e-4 * d2.abs());
    }

    #[test]
    fn sturm_liouville_substitution() {
        let (n, mu) = (8, 0.45);
        let nn = (n * (n + 1)) as f64;
        for i in 0..20 {
            let x = -0.95 + 0.1 * i as f64;
            // d/dx[(1-x²)P'] = (1-x²)P'' - 2x P'
            let lhs = (1.0 - x * x) * deriv_raw(n, mu, -mu, x, 2) - 2.0 * x * deriv_raw(n, mu, -mu, x, 1);
            let rhs = 2.0 * mu * deriv_raw(n, mu, -mu, x, 1) - nn * eval_raw(n, mu, -mu, x);
            assert!((lhs - rhs).abs() < 1e-9 * (1.0 + lhs.abs()));
        }
    }

    #[test]
    fn node_counts_and_residuals() {
        for n in 2..=20 {
            for i in 1..=9 {
                let sigma = 0.1 * i as f64;
                let g = superconsistent_nodes(ChiFamily::Mu, n, sigma).unwrap();
                assert_eq!(g.len(), n);
                let psi = PsiFunction::new(ChiFamily::Mu, n, 1.0 - sigma).unwrap();
                let sup = psi_sup_norm(&psi, 4000);
                for &z in g.nodes() {
                    assert!(psi.eval(z).abs() <= 1e-10 * sup, "N={n} sigma={sigma}");
                }
            }
        }
    }

    #[test]
    fn interlacing_with_legendre_zeros() {
        for n in [4, 5] {
            let g = superconsistent_nodes(ChiFamily::Mu, n, 0.5).unwrap();
            let leg = legendre_zeros(n).unwrap();
            let (z, l) = (g.nodes(), leg.nodes());
            for i in 0..n - 1 {
                assert!(z[i] > l[i] && z[i] < l[i + 1], "N={n} i={i}");
            }
            assert!(z[n - 1] > l[n - 1]);
        }
    }

    #[test]
    fn approximate_zeros_are_close() {
        // the approximation keeps a zero in [-1, ξ_1] instead of [ξ_N, 1],
        // so compare the largest zero of each with the matching Legendre gap
        let exact = superconsistent_nodes(ChiFamily::Mu, 5, 0.5).unwrap();
        let approx = approx_superconsistent_nodes(5, 0.5).unwrap();
        for (a, b) in exact.nodes().iter().zip(&approx) {
            assert!((a - b).abs() < 0.1, "{a} vs {b}");
        }
    }

    #[test]
    fn mixed_nodes_with_zero_k_are_zeros_of_chi_second_derivative() {
        let (n, sigma) = (6, 0.5);
        let g = mixed_collocation_nodes(ChiFamily::Mu, n, sigma, 0.0).unwrap();
        assert_eq!(g.len(), n - 1);
        for &z in g.nodes() {
            let d2 = chi_second_deriv(n, 1.0 - sigma, z).unwrap();
            let scale = chi_second_deriv(n, 1.0 - sigma, 0.0).unwrap().abs().max(1.0);
            assert!(d2.abs() < 1e-9 * scale);
        }
    }

    #[test]
    fn family_names_round_trip() {
        for f in [ChiFamily::Chebyshev, ChiFamily::Legendre, ChiFamily::Mu] {
            assert_eq!(f.to_string().parse::<ChiFamily>().unwrap(), f);
        }
        assert!("hermite".parse::<ChiFamily>().is_err());
    }

    #[test]
    fn last_zero_at_one_when_mu_is_one() {
        for n in 2..=8 {
            let z = superconsistent_nodes(ChiFamily::Mu, n, 0.0).unwrap();
            assert_eq!(z.len(), n);
            assert_eq!(*z.nodes().last().unwrap(), 1.0);
        }
    }

    #[test]
    fn zeros_at_mu_zero_are_legendre_zeros() {
        for n in 2..=8 {
            let z = superconsistent_nodes(ChiFamily::Mu, n, 1.0).unwrap();
            let leg = legendre_zeros(n).unwrap();
            for (a, b) in z.nodes().iter().zip(leg.nodes()) {
                assert!((a - b).abs() < 1e-12, "N={n}: {a} vs {b}");
            }
        }
    }
}
