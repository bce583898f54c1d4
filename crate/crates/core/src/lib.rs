//! Spectral collocation for Riemann–Liouville fractional derivatives on
//! Jacobi-type bases, with superconsistent collocation nodes.
//!
//! The representation of a function `u` with `u(-1) = 0` is
//! `u_N(x) = Σ_j u(x_j) H_j(x)`, where each `H_j` is a polynomial of degree
//! `N` times `(1+x)^{-μ}` expanded on `P_n^{μ,-μ}`. For `σ = 1 - μ` the
//! fractional derivative of every such function is a polynomial, which gives
//! exact differentiation matrices.
//!
//! ```
//! use fracolloc::solvers::{solve_fractional_ode, GridChoice, Problem};
//!
//! let problem = Problem::fractional_ode(0.5, |x| (x + 1.0).sin());
//! let report = solve_fractional_ode(&problem, 8, GridChoice::C3).unwrap();
//! assert_eq!(report.eval(-1.0), 0.0);
//! ```

pub mod basis;
pub mod error;
pub mod grids;
pub mod jacobi;
pub mod linalg;
pub mod operators;
pub mod oracle;
pub mod roots;
pub mod solvers;
pub mod superconsistency;

pub use basis::FracBasis;
pub use error::{Error, Result};
pub use grids::{Grid, GridFamily, GridRole, QuadratureRule};
pub use jacobi::JacobiParams;
pub use operators::OperatorMatrix;
pub use solvers::{GridChoice, Problem, SolveReport};
pub use superconsistency::{ChiFamily, ChiFunction, PsiFunction};
