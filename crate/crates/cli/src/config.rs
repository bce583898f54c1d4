//! Run configuration: flag and config-file settings, list parsers and
//! validation.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use fracolloc::solvers::{ErrorNorm, GridChoice, DEFAULT_N_REF};
use fracolloc::ChiFamily;

use crate::error::{usage, CliError, Result};

/// Largest accepted polynomial degree.
pub const MAX_N: usize = 400;
/// Longest list any parser will expand.
pub const MAX_LIST: usize = 10_000;
pub const MAX_MESH_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Table1,
    Table2,
    Table3,
    Fig1,
    Nodes,
    Matrix,
    Solve,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Table1,
        Command::Table2,
        Command::Table3,
        Command::Fig1,
        Command::Nodes,
        Command::Matrix,
        Command::Solve,
    ];
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Table1 => "table1",
            Command::Table2 => "table2",
            Command::Table3 => "table3",
            Command::Fig1 => "fig1",
            Command::Nodes => "nodes",
            Command::Matrix => "matrix",
            Command::Solve => "solve",
        })
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Command::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown command '{s}'")))
    }
}

/// Right-hand side for `solve`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsKind {
    /// `g = 1`
    One,
    /// `g = sin(2(x+1)^2)`
    Sine,
}

impl FromStr for RhsKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "one" | "1" => Ok(RhsKind::One),
            "sine" | "sin" => Ok(RhsKind::Sine),
            other => usage(format!("unknown rhs '{other}' (one|sine)")),
        }
    }
}

impl RhsKind {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            RhsKind::One => 1.0,
            RhsKind::Sine => (2.0 * (x + 1.0) * (x + 1.0)).sin(),
        }
    }
}

/// Unvalidated string settings, as they come from flags or a config file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Settings {
    pub command: Option<String>,
    pub n: Option<String>,
    pub n_range: Option<String>,
    pub sigma: Option<String>,
    pub k: Option<String>,
    pub mu: Option<String>,
    pub family: Option<String>,
    pub choices: Option<String>,
    pub out: Option<String>,
    pub mesh_points: Option<String>,
    pub seed: Option<String>,
    pub norm: Option<String>,
    pub n_ref: Option<String>,
    pub rhs: Option<String>,
}

impl Settings {
    fn slot(&mut self, key: &str) -> Option<&mut Option<String>> {
        let key = key.trim().to_ascii_lowercase().replace('_', "-");
        Some(match key.as_str() {
            "command" => &mut self.command,
            "n" => &mut self.n,
            "n-range" => &mut self.n_range,
            "sigma" => &mut self.sigma,
            "k" => &mut self.k,
            "mu" => &mut self.mu,
            "family" => &mut self.family,
            "choices" | "choice" => &mut self.choices,
            "out" => &mut self.out,
            "mesh-points" => &mut self.mesh_points,
            "seed" => &mut self.seed,
            "norm" => &mut self.norm,
            "n-ref" => &mut self.n_ref,
            "rhs" => &mut self.rhs,
            _ => return None,
        })
    }

    /// Field-wise: values in `self` win over `fallback`.
    pub fn or(self, fallback: Settings) -> Settings {
        Settings {
            command: self.command.or(fallback.command),
            n: self.n.or(fallback.n),
            n_range: self.n_range.or(fallback.n_range),
            sigma: self.sigma.or(fallback.sigma),
            k: self.k.or(fallback.k),
            mu: self.mu.or(fallback.mu),
            family: self.family.or(fallback.family),
            choices: self.choices.or(fallback.choices),
            out: self.out.or(fallback.out),
            mesh_points: self.mesh_points.or(fallback.mesh_points),
            seed: self.seed.or(fallback.seed),
            norm: self.norm.or(fallback.norm),
            n_ref: self.n_ref.or(fallback.n_ref),
            rhs: self.rhs.or(fallback.rhs),
        }
    }
}

/// `key = value` lines; `#` starts a comment, blank lines are skipped.
/// Repeated keys are rejected.
pub fn parse_config_file(text: &str) -> Result<Settings> {
    let mut s = Settings::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| CliError::Config { line: i + 1, msg };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected key = value, got '{line}'")))?;
        let value = value.trim();
        if value.is_empty() {
            return Err(err(format!("empty value for '{}'", key.trim())));
        }
        let slot = s
            .slot(key)
            .ok_or_else(|| err(format!("unknown key '{}'", key.trim())))?;
        if slot.is_some() {
            return Err(err(format!("duplicate key '{}'", key.trim())));
        }
        *slot = Some(value.to_string());
    }
    Ok(s)
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .or_else(|_| usage(format!("'{}' is not a non-negative integer", s.trim())))
}

pub fn parse_real(s: &str) -> Result<f64> {
    let s = s.trim();
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => usage(format!("'{s}' is not a finite number")),
    }
}

/// Comma-separated items, each a single integer or an inclusive range
/// `a..b`, `a..=b` or `a:b`.
pub fn parse_n_list(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return usage(format!("empty entry in '{s}'"));
        }
        let bounds = item
            .split_once("..=")
            .or_else(|| item.split_once(".."))
            .or_else(|| item.split_once(':'));
        let (lo, hi) = match bounds {
            Some((a, b)) => (parse_usize(a)?, parse_usize(b)?),
            None => {
                let v = parse_usize(item)?;
                (v, v)
            }
        };
        if lo > hi {
            return usage(format!("empty range '{item}'"));
        }
        if hi - lo >= MAX_LIST || out.len() + hi - lo + 1 > MAX_LIST {
            return usage(format!("list longer than {MAX_LIST} entries"));
        }
        out.extend(lo..=hi);
    }
    Ok(out)
}

/// Comma-separated items, each a number or an inclusive `start:stop:step`
/// range. The last point of a range is kept when it lands within
/// `1e-9·step` of `stop`.
pub fn parse_real_list(s: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return usage(format!("empty entry in '{s}'"));
        }
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(parse_real(v)?),
            [a, b, h] => {
                let (a, b, h) = (parse_real(a)?, parse_real(b)?, parse_real(h)?);
                if h <= 0.0 || b < a {
                    return usage(format!("range '{item}' needs start <= stop and step > 0"));
                }
                let count = ((b - a) / h + 1e-9).floor();
                if !(count < MAX_LIST as f64) || out.len() + count as usize + 1 > MAX_LIST {
                    return usage(format!("list longer than {MAX_LIST} entries"));
                }
                // multiply rather than accumulate so 0.1 steps stay clean
                out.extend((0..=count as usize).map(|i| {
                    let v = a + i as f64 * h;
                    (v * 1e12).round() / 1e12
                }));
            }
            _ => return usage(format!("'{item}' is neither a number nor start:stop:step")),
        }
    }
    Ok(out)
}

pub fn parse_choices(s: &str) -> Result<Vec<GridChoice>> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let c: GridChoice = item.trim().parse()?;
        if out.contains(&c) {
            return usage(format!("choice {c} listed twice"));
        }
        out.push(c);
    }
    Ok(out)
}

pub fn parse_norm(s: &str, mesh_points: usize) -> Result<ErrorNorm> {
    match s.trim().to_ascii_lowercase().as_str() {
        "nodal" => Ok(ErrorNorm::Nodal),
        "mesh" => Ok(ErrorNorm::Mesh(mesh_points)),
        other => usage(format!("unknown norm '{other}' (nodal|mesh)")),
    }
}

/// A validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub ns: Vec<usize>,
    pub sigmas: Vec<f64>,
    pub k: Option<f64>,
    pub mus: Vec<f64>,
    pub family: ChiFamily,
    pub choices: Vec<GridChoice>,
    pub out: Option<PathBuf>,
    pub mesh_points: usize,
    pub seed: Option<u64>,
    pub norm: ErrorNorm,
    pub n_ref: usize,
    pub rhs: Option<RhsKind>,
}

fn open_unit(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        usage(format!("{name} = {v} outside (0, 1)"))
    }
}

fn single<T: Copy + fmt::Display>(name: &str, v: &[T]) -> Result<T> {
    match v {
        [x] => Ok(*x),
        _ => usage(format!("{name} takes a single value here")),
    }
}

impl RunConfig {
    pub fn from_settings(s: &Settings) -> Result<Self> {
        let command: Command = match &s.command {
            Some(c) => c.parse()?,
            None => return usage("no command given"),
        };
        let ns = match (&s.n, &s.n_range) {
            (Some(_), Some(_)) => return usage("give either N or N-range, not both"),
            (Some(v), None) | (None, Some(v)) => parse_n_list(v)?,
            (None, None) => match command {
                Command::Table1 => vec![5, 10, 20, 50, 100],
                Command::Table2 | Command::Table3 => (4..=15).collect(),
                Command::Fig1 => vec![19],
                Command::Nodes => vec![5],
                Command::Matrix => vec![8],
                Command::Solve => vec![10],
            },
        };
        if ns.is_empty() {
            return usage("empty N list");
        }
        if let Some(&n) = ns.iter().find(|&&n| !(2..=MAX_N).contains(&n)) {
            return usage(format!("N = {n} outside 2..={MAX_N}"));
        }
        let sigmas = match &s.sigma {
            Some(v) => parse_real_list(v)?,
            None if command == Command::Fig1 => parse_real_list("0.1:0.9:0.1,1.1:1.9:0.1")?,
            None => vec![0.5],
        };
        for &sg in &sigmas {
            if command == Command::Fig1 {
                if !(sg > 0.0 && sg < 2.0) || (sg - 1.0).abs() < 1e-12 {
                    return usage(format!("sigma = {sg} outside (0, 1) and (1, 2)"));
                }
            } else {
                open_unit("sigma", sg)?;
            }
        }
        let k = s.k.as_deref().map(parse_real).transpose()?;
        let mus = match &s.mu {
            Some(v) => parse_real_list(v)?,
            None => vec![0.5],
        };
        for &m in &mus {
            if command == Command::Nodes {
                if !(0.0..=1.0).contains(&m) {
                    return usage(format!("mu = {m} outside [0, 1]"));
                }
            } else {
                open_unit("mu", m)?;
            }
        }
        let family = match &s.family {
            Some(f) => f.parse()?,
            None => ChiFamily::Mu,
        };
        let choices = match &s.choices {
            Some(c) => parse_choices(c)?,
            None => match command {
                Command::Table3 => vec![GridChoice::C4, GridChoice::C5, GridChoice::C6],
                Command::Matrix | Command::Solve => vec![GridChoice::C3],
                _ => vec![GridChoice::C1, GridChoice::C2, GridChoice::C3],
            },
        };
        match command {
            Command::Table2 if choices.iter().any(|c| !c.is_ode()) => {
                return usage("table2 takes choices C1..C3")
            }
            Command::Table3 if choices.iter().any(|c| c.is_ode()) => {
                return usage("table3 takes choices C4..C6")
            }
            _ => {}
        }
        let mesh_points = match &s.mesh_points {
            Some(v) => parse_usize(v)?,
            None if command == Command::Fig1 => 201,
            None => fracolloc::solvers::DEFAULT_MESH_POINTS,
        };
        if !(2..=MAX_MESH_POINTS).contains(&mesh_points) {
            return usage(format!("mesh-points = {mesh_points} outside 2..={MAX_MESH_POINTS}"));
        }
        let seed = match &s.seed {
            Some(v) => Some(
                v.trim()
                    .parse()
                    .or_else(|_| usage(format!("seed '{v}' is not an integer")))?,
            ),
            None => None,
        };
        let norm = match &s.norm {
            Some(v) => parse_norm(v, mesh_points)?,
            None => ErrorNorm::Nodal,
        };
        let n_ref = match &s.n_ref {
            Some(v) => parse_usize(v)?,
            None => DEFAULT_N_REF,
        };
        if !(2..=MAX_N).contains(&n_ref) {
            return usage(format!("n-ref = {n_ref} outside 2..={MAX_N}"));
        }
        let rhs = s.rhs.as_deref().map(str::parse).transpose()?;
        Ok(RunConfig {
            command,
            ns,
            sigmas,
            k,
            mus,
            family,
            choices,
            out: s.out.as_ref().map(PathBuf::from),
            mesh_points,
            seed,
            norm,
            n_ref,
            rhs,
        })
    }

    pub fn sigma(&self) -> Result<f64> {
        single("sigma", &self.sigmas)
    }

    pub fn mu(&self) -> Result<f64> {
        single("mu", &self.mus)
    }

    pub fn n(&self) -> Result<usize> {
        single("N", &self.ns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_lists() {
        assert_eq!(parse_n_list("4..7").unwrap(), vec![4, 5, 6, 7]);
        assert_eq!(parse_n_list("4:6,10").unwrap(), vec![4, 5, 6, 10]);
        assert_eq!(parse_n_list("3..=3").unwrap(), vec![3]);
        assert!(parse_n_list("7..4").is_err());
        assert!(parse_n_list("1..100000000").is_err());
        assert!(parse_n_list("4,,5").is_err());
        assert!(parse_n_list("-3").is_err());
    }

    #[test]
    fn real_lists() {
        let v = parse_real_list("0:1:0.1").unwrap();
        assert_eq!(v.len(), 11);
        assert_eq!(v[3], 0.3);
        assert_eq!(v[10], 1.0);
        assert_eq!(parse_real_list("0.25, 0.5").unwrap(), vec![0.25, 0.5]);
        assert!(parse_real_list("nan").is_err());
        assert!(parse_real_list("0:1:0").is_err());
        assert!(parse_real_list("0:1e300:1e-300").is_err());
        assert!(parse_real_list("1:2").is_err());
    }

    #[test]
    fn config_file() {
        let s = parse_config_file("# run\ncommand = table3\nK=12 # stiffer\n\nN-range=4..6\n").unwrap();
        assert_eq!(s.command.as_deref(), Some("table3"));
        assert_eq!(s.k.as_deref(), Some("12"));
        assert_eq!(s.n_range.as_deref(), Some("4..6"));
        assert!(matches!(parse_config_file("sigma=0.5\nsigma=0.6"), Err(CliError::Config { line: 2, .. })));
        assert!(parse_config_file("bogus=1").is_err());
        assert!(parse_config_file("sigma").is_err());
        assert!(parse_config_file("sigma=").is_err());
    }

    #[test]
    fn flags_win_over_file() {
        let flags = Settings { sigma: Some("0.3".into()), ..Default::default() };
        let file = parse_config_file("command=table2\nsigma=0.7").unwrap();
        let cfg = RunConfig::from_settings(&flags.or(file)).unwrap();
        assert_eq!(cfg.sigmas, vec![0.3]);
        assert_eq!(cfg.command, Command::Table2);
        assert_eq!(cfg.ns, (4..=15).collect::<Vec<_>>());
    }

    #[test]
    fn validation() {
        let mk = |text: &str| RunConfig::from_settings(&parse_config_file(text).unwrap());
        assert!(mk("command=table2\nsigma=1.2").is_err());
        assert!(mk("command=fig1\nsigma=1.2").is_ok());
        assert!(mk("command=fig1\nsigma=1").is_err());
        assert!(mk("command=table1\nN=1").is_err());
        assert!(mk("command=table3\nchoices=C1").is_err());
        assert!(mk("command=nodes\nmu=0:1:0.1").is_ok());
        assert!(mk("command=table1\nmu=0").is_err());
        assert!(mk("command=solve\nN=4\nN-range=4..5").is_err());
        assert!(mk("N=4").is_err());
        assert_eq!(mk("command=table2\nnorm=mesh\nmesh-points=11").unwrap().norm, ErrorNorm::Mesh(11));
    }
}
