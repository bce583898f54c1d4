use fracolloc::solvers::{nodal_error, reference_solution, solve, GridChoice, Problem};
use statrs::function::gamma::ln_gamma;

/// Exact solution of `D^σ u = sin(2(x+1)^2)`, `u(-1) = 0`, as a power series.
fn exact(sigma: f64, x: f64) -> f64 {
    let r = 1.0 + x;
    let mut sum = 0.0;
    for m in 0..40 {
        let mf = m as f64;
        let p = 4.0 * mf + 2.0;
        // 2^{2m+1}/(2m+1)! · Γ(p+1)/Γ(p+1+σ)
        let ln = (2.0 * mf + 1.0) * 2f64.ln() - ln_gamma(2.0 * mf + 2.0) + ln_gamma(p + 1.0)
            - ln_gamma(p + 1.0 + sigma)
            + (p + sigma) * r.ln();
        let term = ln.exp();
        sum += if m % 2 == 0 { term } else { -term };
        if term < 1e-18 {
            break;
        }
    }
    sum
}

fn table2_problem(sigma: f64) -> Problem {
    Problem::fractional_ode(sigma, |x| (2.0 * (x + 1.0) * (x + 1.0)).sin())
}

#[test]
fn reference_matches_series() {
    for sigma in [0.3, 0.5, 0.7] {
        let r = reference_solution(&table2_problem(sigma), 50).unwrap();
        for &x in r.unknown_nodes() {
            assert!((r.eval(x) - exact(sigma, x)).abs() < 1e-9, "sigma={sigma} x={x}");
        }
    }
}

#[test]
fn superconsistent_choice_converges_fastest() {
    let p = table2_problem(0.5);
    let reference = reference_solution(&p, 50).unwrap();
    let err = |n, c| nodal_error(&solve(&p, n, c).unwrap(), &reference);
    let mut prev = f64::INFINITY;
    for n in 6..=14 {
        let e3 = err(n, GridChoice::C3);
        assert!(e3 < prev, "N={n}");
        assert!(e3 < err(n, GridChoice::C1) && e3 < err(n, GridChoice::C2), "N={n}");
        prev = e3;
    }
    assert!(prev < 1e-5);
}

#[test]
fn residual_is_small() {
    let p = Problem::advection_diffusion(0.5, 10.0, |_| 1.0);
    for c in [GridChoice::C4, GridChoice::C5, GridChoice::C6] {
        let r = solve(&p, 10, c).unwrap();
        assert!(r.residual < 1e-10, "{c}: {}", r.residual);
        assert_eq!(r.nodal_values.len(), 9);
    }
}
