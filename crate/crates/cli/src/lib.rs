//! Library side of the `vancycle` binary: JSON readers, the commands, and
//! the mapping of failures to exit codes.

use std::fmt;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use vancycle::classify::{classify_all, quartic_orbit_class, CycleVerdict, OrbitClass};
use vancycle::joincycles::{monomial_intersection_matrix, AbstractGrid, CycleRef, Fibration};
use vancycle::linalg::IntMatrix;
use vancycle::monodromy::{distinct_eigenvalue_count, total_monomial_monodromy, OrbitReport, Orbits};
use vancycle::polycore::RatPoly;
use vancycle::verify::{run_suite, Manifest, Options, SUITES};

pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad input: unreadable file, malformed JSON, degenerate polynomial.
    Invalid(String),
    /// A computation ran but a check did not hold.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Failed(_) => EXIT_FAILED,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Failed(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<vancycle::Error> for CliError {
    fn from(e: vancycle::Error) -> Self {
        match e {
            vancycle::Error::ClassMismatch { .. } => CliError::Failed(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Read a file, or stdin for "-".
pub fn read_source(path: &Path) -> CliResult<String> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    Ok(s)
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("{what}: {e}")))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    parse_json(&read_source(path)?, &path.display().to_string())
}

/// Compact JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("output types serialize");
    s.push('\n');
    s
}

/// What a command works on.
#[derive(Debug, Clone, PartialEq)]
pub enum JobInput {
    /// y^e + x^d.
    Monomial {
        e: usize,
        d: usize,
    },
    Grid(AbstractGrid),
    Polys {
        h: RatPoly,
        g: RatPoly,
    },
}

impl JobInput {
    pub fn fibration(&self) -> CliResult<Fibration> {
        Ok(match self {
            JobInput::Monomial { e, d } => Fibration::monomial(*e, *d)?,
            JobInput::Grid(ag) => Fibration::from_grid(ag)?,
            JobInput::Polys { h, g } => Fibration::from_polys(h, g)?,
        })
    }
}

pub fn intmatrix(e: usize, d: usize) -> CliResult<IntMatrix> {
    Ok(monomial_intersection_matrix(e, d)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitOutput {
    #[serde(flatten)]
    pub span: OrbitReport,
    /// Number of distinct eigenvalues of the total monodromy; pure powers only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinct_eigenvalues: Option<usize>,
}

pub fn orbit(input: &JobInput, cycle: CycleRef) -> CliResult<OrbitOutput> {
    let f = input.fibration()?;
    let k = f.basis.resolve(cycle)?;
    let span = Orbits::for_fibration(&f)?.of_cycle(k)?;
    let distinct_eigenvalues = match input {
        JobInput::Monomial { e, d } => Some(distinct_eigenvalue_count(&total_monomial_monodromy(*e, *d)?.matrix)?),
        _ => None,
    };
    Ok(OrbitOutput { span: span.report(&f.basis), distinct_eigenvalues })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub class: OrbitClass,
    pub verdicts: Vec<CycleVerdict>,
}

pub fn classify(h: &RatPoly, g: &RatPoly) -> CliResult<ClassifyOutput> {
    let class = quartic_orbit_class(h, g)?;
    let verdicts = classify_all(&Fibration::from_polys(h, g)?)?;
    Ok(ClassifyOutput { class, verdicts })
}

/// Expand "all" and reject unknown names.
pub fn suite_names(requested: &[String]) -> CliResult<Vec<&'static str>> {
    if requested.is_empty() || requested.iter().any(|s| s == "all") {
        return Ok(SUITES.to_vec());
    }
    requested
        .iter()
        .map(|r| {
            SUITES.iter().copied().find(|s| s == r).ok_or_else(|| {
                CliError::Invalid(format!("unknown suite {r:?}; expected one of {} or all", SUITES.join(", ")))
            })
        })
        .collect()
}

pub fn verify(suites: &[&str], opts: &Options, timings: bool) -> Manifest {
    let results = suites
        .iter()
        .map(|s| {
            let r = run_suite(s, opts).expect("suite names are checked");
            if timings {
                r
            } else {
                r.without_timings()
            }
        })
        .collect();
    Manifest::new(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(vancycle::Error::ZeroVector).exit_code(), EXIT_INVALID);
        let m = vancycle::Error::ClassMismatch { by_ideal: "O1".into(), by_span: "O2".into() };
        assert_eq!(CliError::from(m).exit_code(), EXIT_FAILED);
    }

    #[test]
    fn suite_selection() {
        assert_eq!(suite_names(&[]).unwrap(), SUITES.to_vec());
        assert_eq!(suite_names(&["ranks".into(), "all".into()]).unwrap(), SUITES.to_vec());
        assert_eq!(suite_names(&["tables".into()]).unwrap(), vec!["tables"]);
        assert!(suite_names(&["nope".into()]).is_err());
    }

    #[test]
    fn orbit_output_round_trips() {
        let out = orbit(&JobInput::Monomial { e: 4, d: 6 }, CycleRef::Position(5)).unwrap();
        let back: OrbitOutput = parse_json(&to_json(&out), "orbit").unwrap();
        assert_eq!(back, out);
    }
}
