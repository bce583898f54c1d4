//! Collocation solvers for
//!
//! - the fractional initial value problem `D^σ u = g`, `u(-1) = 0`;
//! - the advection–diffusion problem `-u'' + K D^σ u = g`, `u(±1) = 0`.
//!
//! The unknowns are nodal values on the `(μ,-μ)` Lobatto grid, `μ = 1 - σ`.
//! Six collocation choices are provided, three per problem.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use nalgebra::DVector;

use crate::basis::FracBasis;
use crate::error::{Error, Result};
use crate::grids::{chebyshev_lobatto, jacobi_deriv_zeros, Grid};
use crate::linalg;
use crate::operators::{advdiff_matrix, frac_diff_matrix};
use crate::superconsistency::{mixed_collocation_nodes, superconsistent_nodes, ChiFamily};

/// Resolution of the reference solution.
pub const DEFAULT_N_REF: usize = 50;

/// Points of the uniform error mesh.
pub const DEFAULT_MESH_POINTS: usize = 1001;

/// Left end of the error mesh.
pub const MESH_LEFT: f64 = -1.0 + 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GridChoice {
    /// initial value problem, collocation at the representation nodes
    C1,
    /// initial value problem, collocation at Chebyshev–Lobatto nodes
    C2,
    /// initial value problem, collocation at the zeros of `Ψ`
    C3,
    /// boundary value problem, collocation at the interior representation nodes
    C4,
    /// boundary value problem, collocation at interior Chebyshev–Lobatto nodes
    C5,
    /// boundary value problem, collocation at the roots of `-χ'' + KΨ`
    C6,
}

impl GridChoice {
    pub const ALL: [GridChoice; 6] = [
        GridChoice::C1,
        GridChoice::C2,
        GridChoice::C3,
        GridChoice::C4,
        GridChoice::C5,
        GridChoice::C6,
    ];

    pub fn is_ode(self) -> bool {
        matches!(self, GridChoice::C1 | GridChoice::C2 | GridChoice::C3)
    }

    /// 1..=6
    pub fn number(self) -> usize {
        self as usize + 1
    }
}

impl fmt::Display for GridChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.number())
    }
}

impl FromStr for GridChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t.strip_prefix(['C', 'c']).unwrap_or(t);
        match digits.parse::<usize>() {
            Ok(i @ 1..=6) => Ok(GridChoice::ALL[i - 1]),
            _ => Err(Error::Parameter(format!("unknown grid choice '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProblemKind {
    FractionalOde,
    AdvectionDiffusion { k: f64 },
}

pub type Rhs = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct Problem {
    pub kind: ProblemKind,
    pub sigma: f64,
    pub rhs: Rhs,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("kind", &self.kind)
            .field("sigma", &self.sigma)
            .finish_non_exhaustive()
    }
}

impl Problem {
    pub fn fractional_ode<G: Fn(f64) -> f64 + Send + Sync + 'static>(sigma: f64, g: G) -> Self {
        Self {
            kind: ProblemKind::FractionalOde,
            sigma,
            rhs: Arc::new(g),
        }
    }

    pub fn advection_diffusion<G: Fn(f64) -> f64 + Send + Sync + 'static>(sigma: f64, k: f64, g: G) -> Self {
        Self {
            kind: ProblemKind::AdvectionDiffusion { k },
            sigma,
            rhs: Arc::new(g),
        }
    }

    pub fn k(&self) -> f64 {
        match self.kind {
            ProblemKind::FractionalOde => 0.0,
            ProblemKind::AdvectionDiffusion { k } => k,
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return Err(Error::Parameter(format!("sigma = {} outside (0, 1)", self.sigma)));
        }
        if !self.k().is_finite() {
            return Err(Error::Parameter("K must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub n: usize,
    pub sigma: f64,
    pub k: f64,
    /// `None` for a reference solution.
    pub choice: Option<GridChoice>,
    /// Values at `x_1..x_N` (or `x_1..x_{N-1}` with Dirichlet conditions).
    pub nodal_values: Vec<f64>,
    pub basis: FracBasis,
    pub colloc: Grid,
    /// `‖M u - g‖_∞`.
    pub residual: f64,
    pub runtime_ms: f64,
}

impl SolveReport {
    /// `u_N(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        self.basis
            .reconstruct(&self.nodal_values, x)
            .expect("nodal values fit the basis")
    }

    /// Representation nodes carrying unknowns.
    pub fn unknown_nodes(&self) -> &[f64] {
        &self.basis.nodes()[..self.nodal_values.len()]
    }
}

/// The `(μ,-μ)` Lobatto representation grid shared by all six choices.
pub fn representation_grid(n: usize, sigma: f64) -> Result<Grid> {
    jacobi_deriv_zeros(n, 1.0 - sigma, sigma - 1.0, true)
}

/// Collocation nodes for a choice.
pub fn collocation_grid(choice: GridChoice, n: usize, sigma: f64, k: f64) -> Result<Grid> {
    match choice {
        GridChoice::C1 => Ok(representation_grid(n, sigma)?.without_left()),
        GridChoice::C2 => Ok(chebyshev_lobatto(n)?.without_left()),
        GridChoice::C3 => superconsistent_nodes(ChiFamily::Mu, n, sigma),
        GridChoice::C4 => Ok(representation_grid(n, sigma)?.interior()),
        GridChoice::C5 => Ok(chebyshev_lobatto(n)?.interior()),
        GridChoice::C6 => mixed_collocation_nodes(ChiFamily::Mu, n, sigma, k),
    }
}

/// Assembles and solves the collocation system on the given grids.
pub fn solve_on_grids(problem: &Problem, rep: &Grid, colloc: &Grid) -> Result<SolveReport> {
    problem.check()?;
    let start = Instant::now();
    let sigma = problem.sigma;
    let basis = FracBasis::new(rep, 1.0 - sigma)?;
    let m = match problem.kind {
        ProblemKind::FractionalOde => frac_diff_matrix(&basis, colloc, sigma)?,
        ProblemKind::AdvectionDiffusion { k } => advdiff_matrix(&basis, colloc, sigma, k)?,
    }
    .into_entries();
    let g = DVector::from_iterator(colloc.len(), colloc.nodes().iter().map(|&z| (problem.rhs)(z)));
    if g.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("right-hand side is not finite at a collocation node".into()));
    }
    let u = linalg::solve(&m, &g)?;
    let residual = (&m * &u - &g).amax();
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SolveReport {
        n: basis.dim(),
        sigma,
        k: problem.k(),
        choice: None,
        nodal_values: u.iter().copied().collect(),
        basis,
        colloc: colloc.clone(),
        residual,
        runtime_ms,
    })
}

fn solve_choice(problem: &Problem, n: usize, choice: GridChoice) -> Result<SolveReport> {
    problem.check()?;
    let start = Instant::now();
    let rep = representation_grid(n, problem.sigma)?;
    let colloc = collocation_grid(choice, n, problem.sigma, problem.k())?;
    let mut report = solve_on_grids(problem, &rep, &colloc)?;
    report.choice = Some(choice);
    report.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// `D^σ u = g`, `u(-1) = 0`, with choice C1, C2 or C3.
pub fn solve_fractional_ode(problem: &Problem, n: usize, choice: GridChoice) -> Result<SolveReport> {
    if problem.kind != ProblemKind::FractionalOde {
        return Err(Error::Parameter("expected an initial value problem".into()));
    }
    if !choice.is_ode() {
        return Err(Error::Parameter(format!("choice {choice} is for the boundary value problem")));
    }
    if n < 1 {
        return Err(Error::Size("N must be at least 1".into()));
    }
    solve_choice(problem, n, choice)
}

/// `-u'' + K D^σ u = g`, `u(±1) = 0`, with choice C4, C5 or C6.
pub fn solve_fractional_bvp(problem: &Problem, n: usize, choice: GridChoice) -> Result<SolveReport> {
    if !matches!(problem.kind, ProblemKind::AdvectionDiffusion { .. }) {
        return Err(Error::Parameter("expected a boundary value problem".into()));
    }
    if choice.is_ode() {
        return Err(Error::Parameter(format!("choice {choice} is for the initial value problem")));
    }
    if n < 2 {
        return Err(Error::Size("N must be at least 2".into()));
    }
    solve_choice(problem, n, choice)
}

/// Dispatches on the problem kind.
pub fn solve(problem: &Problem, n: usize, choice: GridChoice) -> Result<SolveReport> {
    match problem.kind {
        ProblemKind::FractionalOde => solve_fractional_ode(problem, n, choice),
        ProblemKind::AdvectionDiffusion { .. } => solve_fractional_bvp(problem, n, choice),
    }
}

/// High-resolution surrogate with Chebyshev–Lobatto nodes for both grids.
pub fn reference_solution(problem: &Problem, n_ref: usize) -> Result<SolveReport> {
    if n_ref < 2 {
        return Err(Error::Size("reference needs N_ref >= 2".into()));
    }
    let rep = chebyshev_lobatto(n_ref)?;
    let colloc = match problem.kind {
        ProblemKind::FractionalOde => rep.without_left(),
        ProblemKind::AdvectionDiffusion { .. } => rep.interior(),
    };
    solve_on_grids(problem, &rep, &colloc)
}

/// Uniform mesh of `points` points on `[-1 + 1e-6, 1]`.
pub fn error_mesh(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![1.0],
        _ => (0..points)
            .map(|i| 1.0 - (1.0 - MESH_LEFT) * (points - 1 - i) as f64 / (points - 1) as f64)
            .collect(),
    }
}

/// `max |u_N - u_ref|` over the default error mesh.
pub fn max_norm_error(report: &SolveReport, reference: &SolveReport) -> f64 {
    max_norm_error_on(report, reference, &error_mesh(DEFAULT_MESH_POINTS))
}

pub fn max_norm_error_on(report: &SolveReport, reference: &SolveReport, mesh: &[f64]) -> f64 {
    mesh.iter()
        .map(|&x| (report.eval(x) - reference.eval(x)).abs())
        .fold(0.0, f64::max)
}

/// `max |u_N - u_ref|` over the report's own unknown nodes.
pub fn nodal_error(report: &SolveReport, reference: &SolveReport) -> f64 {
    report
        .unknown_nodes()
        .iter()
        .zip(&report.nodal_values)
        .map(|(&x, &u)| (u - reference.eval(x)).abs())
        .fold(0.0, f64::max)
}

/// Where the discrete maximum norm is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorNorm {
    /// the report's own representation nodes
    #[default]
    Nodal,
    /// a uniform mesh of the given number of points
    Mesh(usize),
}

impl fmt::Display for ErrorNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorNorm::Nodal => f.write_str("nodal"),
            ErrorNorm::Mesh(n) => write!(f, "mesh({n})"),
        }
    }
}

impl ErrorNorm {
    pub fn error(self, report: &SolveReport, reference: &SolveReport) -> f64 {
        match self {
            ErrorNorm::Nodal => nodal_error(report, reference),
            ErrorNorm::Mesh(points) => max_norm_error_on(report, reference, &error_mesh(points)),
        }
    }
}

/// One row of an error table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRecord {
    pub n: usize,
    pub sigma: f64,
    pub k: f64,
    pub choice: GridChoice,
    pub error: f64,
    pub runtime_ms: f64,
}

impl ErrorRecord {
    pub const CSV_HEADER: [&'static str; 6] = ["N", "sigma", "K", "choice", "error", "runtime_ms"];

    pub fn new(report: &SolveReport, reference: &SolveReport, norm: ErrorNorm) -> Result<Self> {
        let choice = report
            .choice
            .ok_or_else(|| Error::Parameter("report has no grid choice".into()))?;
        Ok(Self {
            n: report.n,
            sigma: report.sigma,
            k: report.k,
            choice,
            error: norm.error(report, reference),
            runtime_ms: report.runtime_ms,
        })
    }

    pub fn csv_fields(&self) -> [String; 6] {
        [
            self.n.to_string(),
            format!("{:.16e}", self.sigma),
            format!("{:.16e}", self.k),
            self.choice.to_string(),
            format!("{:.16e}", self.error),
            format!("{:.3}", self.runtime_ms),
        ]
    }
}

/// Errors of every `(N, choice)` pair against one reference solution.
pub fn error_table(
    problem: &Problem,
    ns: &[usize],
    choices: &[GridChoice],
    n_ref: usize,
    norm: ErrorNorm,
) -> Result<Vec<ErrorRecord>> {
    let reference = reference_solution(problem, n_ref)?;
    let mut out = Vec::with_capacity(ns.len() * choices.len());
    for &n in ns {
        for &c in choices {
            let report = solve(problem, n, c)?;
            out.push(ErrorRecord::new(&report, &reference, norm)?);
        }
    }
    Ok(out)
}
