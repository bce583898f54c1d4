//! One function per command; each returns a [`Table`] ready for CSV.

use fracolloc::basis::{assemble_a, condition_number_1, condition_number_2, FracBasis};
use fracolloc::grids::{chebyshev_lobatto, legendre_zeros};
use fracolloc::operators::{advdiff_matrix, apply_frac_deriv, apply_frac_deriv_plus_one, frac_diff_matrix};
use fracolloc::solvers::{
    collocation_grid, reference_solution, representation_grid, solve, ErrorRecord, GridChoice,
    Problem,
};
use fracolloc::superconsistency::{mixed_collocation_nodes, superconsistent_nodes};
use fracolloc::ChiFamily;
use log::{info, warn};
use rayon::prelude::*;

use crate::config::{Command, RhsKind, RunConfig};
use crate::error::{usage, CliError, Result};

pub const NA: &str = "NA";
/// `K` for boundary value runs when none is given.
pub const DEFAULT_K: f64 = 10.0;

/// Header plus rows of already formatted cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Rows (or cells) that hold `NA` because a computation failed.
    pub failures: usize,
}

impl Table {
    fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            failures: 0,
        }
    }
}

pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn run(cfg: &RunConfig) -> Result<Table> {
    info!("running {} with N = {:?}", cfg.command, cfg.ns);
    match cfg.command {
        Command::Table1 => table1(cfg),
        Command::Table2 => error_columns(cfg, ode_problem(cfg)?),
        Command::Table3 => error_columns(cfg, bvp_problem(cfg)?),
        Command::Fig1 => fig1(cfg),
        Command::Nodes => nodes(cfg),
        Command::Matrix => matrix(cfg),
        Command::Solve => solve_cmd(cfg),
    }
}

fn ode_problem(cfg: &RunConfig) -> Result<Problem> {
    let rhs = cfg.rhs.unwrap_or(RhsKind::Sine);
    Ok(Problem::fractional_ode(cfg.sigma()?, move |x| rhs.eval(x)))
}

fn bvp_problem(cfg: &RunConfig) -> Result<Problem> {
    let rhs = cfg.rhs.unwrap_or(RhsKind::One);
    Ok(Problem::advection_diffusion(cfg.sigma()?, cfg.k.unwrap_or(DEFAULT_K), move |x| rhs.eval(x)))
}

/// `N, cond2, cond1` of the basis change matrix on Chebyshev–Lobatto nodes.
pub fn table1(cfg: &RunConfig) -> Result<Table> {
    let mu = cfg.mu()?;
    let rows = cfg
        .ns
        .par_iter()
        .map(|&n| {
            let a = assemble_a(&chebyshev_lobatto(n)?, mu)?;
            Ok(vec![
                n.to_string(),
                fmt_real(condition_number_2(&a)?),
                fmt_real(condition_number_1(&a)?),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(["N", "cond2", "cond1"]);
    t.rows = rows;
    Ok(t)
}

/// `N, err_choiceK...` against one reference solution. A failed solve is
/// written as `NA` and counted.
pub fn error_columns(cfg: &RunConfig, problem: Problem) -> Result<Table> {
    let reference = reference_solution(&problem, cfg.n_ref)?;
    let mut t = Table::new(
        std::iter::once("N".to_string())
            .chain(cfg.choices.iter().map(|c| format!("err_choice{}", c.number()))),
    );
    let rows: Vec<(Vec<String>, usize)> = cfg
        .ns
        .par_iter()
        .map(|&n| {
            let mut row = vec![n.to_string()];
            let mut failed = 0;
            for &c in &cfg.choices {
                match solve(&problem, n, c).and_then(|r| ErrorRecord::new(&r, &reference, cfg.norm)) {
                    Ok(rec) => row.push(fmt_real(rec.error)),
                    Err(e) if e.is_numerical() => {
                        warn!("N={n} {c}: {e}");
                        row.push(NA.into());
                        failed += 1;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok((row, failed))
        })
        .collect::<Result<_>>()?;
    for (row, failed) in rows {
        t.failures += failed;
        t.rows.push(row);
    }
    Ok(t)
}

fn fig1_f(x: f64) -> f64 {
    ((x + 1.0) * (x + 1.0)).sin()
}

/// Discrete derivatives of `sin((x+1)^2)` on a uniform mesh, one column
/// per order. Orders above one differentiate the order `σ-1` image.
pub fn fig1(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.n()?;
    let rep = chebyshev_lobatto(n)?;
    let mesh: Vec<f64> = (0..cfg.mesh_points)
        .map(|i| {
            let t = i as f64 / (cfg.mesh_points - 1) as f64;
            if i + 1 == cfg.mesh_points { 1.0 } else { -1.0 + 2.0 * t }
        })
        .collect();
    let columns = cfg
        .sigmas
        .par_iter()
        .map(|&s| {
            let (base, plus_one) = if s > 1.0 { (s - 1.0, true) } else { (s, false) };
            let basis = FracBasis::new(&rep, 1.0 - base)?;
            let values: Vec<f64> = basis.nodes().iter().map(|&x| fig1_f(x)).collect();
            mesh.iter()
                .map(|&x| {
                    if plus_one {
                        apply_frac_deriv_plus_one(&basis, &values, x)
                    } else {
                        apply_frac_deriv(&basis, &values, x)
                    }
                    .map_err(CliError::from)
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(
        std::iter::once("x".to_string()).chain(cfg.sigmas.iter().map(|s| format!("sigma_{s}"))),
    );
    for (i, &x) in mesh.iter().enumerate() {
        let mut row = vec![fmt_real(x)];
        row.extend(columns.iter().map(|c| fmt_real(c[i])));
        t.rows.push(row);
    }
    Ok(t)
}

/// `kind, N, mu, K, index, x` for representation nodes, Legendre zeros,
/// `Ψ` zeros and, with `K`, the mixed roots.
pub fn nodes(cfg: &RunConfig) -> Result<Table> {
    let family = cfg.family;
    let pairs: Vec<(usize, f64)> = cfg
        .ns
        .iter()
        .flat_map(|&n| cfg.mus.iter().map(move |&m| (n, m)))
        .collect();
    let blocks: Vec<(Vec<Vec<String>>, usize)> = pairs
        .par_iter()
        .map(|&(n, mu)| node_block(family, n, mu, cfg.k))
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(["kind", "N", "mu", "K", "index", "x"]);
    for (rows, failed) in blocks {
        t.rows.extend(rows);
        t.failures += failed;
    }
    Ok(t)
}

fn node_block(family: ChiFamily, n: usize, mu: f64, k: Option<f64>) -> Result<(Vec<Vec<String>>, usize)> {
    let mut rows = Vec::new();
    let mut failed = 0;
    let k_cell = k.map(|v| v.to_string()).unwrap_or_default();
    let push = |rows: &mut Vec<Vec<String>>, kind: &str, k: &str, nodes: &[f64]| {
        for (i, &x) in nodes.iter().enumerate() {
            rows.push(vec![kind.into(), n.to_string(), mu.to_string(), k.into(), i.to_string(), fmt_real(x)]);
        }
    };
    // the (μ,-μ) Lobatto grid does not exist at μ = 0 or 1
    if family != ChiFamily::Mu || (mu > 0.0 && mu < 1.0) {
        push(&mut rows, "representation", "", family.representation_grid(n, mu)?.nodes());
    }
    push(&mut rows, "legendre", "", legendre_zeros(n)?.nodes());
    match superconsistent_nodes(family, n, 1.0 - mu) {
        Ok(g) => push(&mut rows, "psi_zero", "", g.nodes()),
        Err(e) if e.is_numerical() => {
            warn!("psi zeros N={n} mu={mu}: {e}");
            rows.push(vec!["psi_zero".into(), n.to_string(), mu.to_string(), String::new(), NA.into(), NA.into()]);
            failed += 1;
        }
        Err(e) => return Err(e.into()),
    }
    if let Some(kv) = k {
        match mixed_collocation_nodes(family, n, 1.0 - mu, kv) {
            Ok(g) => push(&mut rows, "mixed_root", &k_cell, g.nodes()),
            Err(e) if e.is_numerical() => {
                warn!("mixed roots N={n} mu={mu} K={kv}: {e}");
                rows.push(vec!["mixed_root".into(), n.to_string(), mu.to_string(), k_cell.clone(), NA.into(), NA.into()]);
                failed += 1;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok((rows, failed))
}

/// The collocation matrix of one choice: column `z` holds the collocation
/// node, then one column per basis function.
pub fn matrix(cfg: &RunConfig) -> Result<Table> {
    let (n, sigma) = (cfg.n()?, cfg.sigma()?);
    let choice = match cfg.choices.as_slice() {
        [c] => *c,
        _ => return usage("matrix takes a single choice"),
    };
    let k = cfg.k.unwrap_or(DEFAULT_K);
    let basis = FracBasis::new(&representation_grid(n, sigma)?, 1.0 - sigma)?;
    let colloc = collocation_grid(choice, n, sigma, k)?;
    let m = if choice.is_ode() {
        frac_diff_matrix(&basis, &colloc, sigma)?
    } else {
        advdiff_matrix(&basis, &colloc, sigma, k)?
    };
    let cols = m.entries().ncols();
    let mut t = Table::new(std::iter::once("z".to_string()).chain((1..=cols).map(|j| format!("H_{j}"))));
    for (i, &z) in colloc.nodes().iter().enumerate() {
        let mut row = vec![fmt_real(z)];
        row.extend(m.entries().row(i).iter().map(|&v| fmt_real(v)));
        t.rows.push(row);
    }
    Ok(t)
}

/// `choice, N, index, x, u` at every representation node, boundary nodes
/// included.
pub fn solve_cmd(cfg: &RunConfig) -> Result<Table> {
    let ode = ode_problem(cfg)?;
    let bvp = bvp_problem(cfg)?;
    let jobs: Vec<(usize, GridChoice)> = cfg
        .ns
        .iter()
        .flat_map(|&n| cfg.choices.iter().map(move |&c| (n, c)))
        .collect();
    let results: Vec<Result<Vec<Vec<String>>>> = jobs
        .par_iter()
        .map(|&(n, c)| {
            let problem = if c.is_ode() { &ode } else { &bvp };
            let r = solve(problem, n, c)?;
            let mut values = vec![0.0];
            values.extend_from_slice(&r.nodal_values);
            if !c.is_ode() {
                values.push(0.0);
            }
            Ok(r.basis
                .rep_grid()
                .nodes()
                .iter()
                .zip(values)
                .enumerate()
                .map(|(i, (&x, u))| vec![c.to_string(), n.to_string(), i.to_string(), fmt_real(x), fmt_real(u)])
                .collect())
        })
        .collect();
    let mut t = Table::new(["choice", "N", "index", "x", "u"]);
    for (res, (n, c)) in results.into_iter().zip(jobs) {
        match res {
            Ok(rows) => t.rows.extend(rows),
            Err(CliError::Library(e)) if e.is_numerical() => {
                warn!("N={n} {c}: {e}");
                t.rows.push(vec![c.to_string(), n.to_string(), NA.into(), NA.into(), NA.into()]);
                t.failures += 1;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(t)
}
