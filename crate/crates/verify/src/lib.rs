//! Property batteries over `orbitkit`, grouped into named suites. A suite run
//! returns a report listing every check with its residual and the statement it
//! tests. Reports depend only on the seed and options, never on timing or
//! thread scheduling.

mod suites;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

pub use suites::DEFAULT_FAMILIES;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Triples,
    Classify,
    Closure,
    Reduction,
    Invariants,
    Poisson,
    Jordan,
    Contraction,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 9] =
        ["triples", "classify", "closure", "reduction", "invariants", "poisson", "jordan", "contraction", "all"];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Triples => "triples",
            Suite::Classify => "classify",
            Suite::Closure => "closure",
            Suite::Reduction => "reduction",
            Suite::Invariants => "invariants",
            Suite::Poisson => "poisson",
            Suite::Jordan => "jordan",
            Suite::Contraction => "contraction",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownSuite(pub String);

impl fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown suite '{}'; expected one of {}", self.0, Suite::NAMES.join(", "))
    }
}

impl std::error::Error for UnknownSuite {}

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "triples" => Suite::Triples,
            "classify" => Suite::Classify,
            "closure" => Suite::Closure,
            "reduction" => Suite::Reduction,
            "invariants" => Suite::Invariants,
            "poisson" => Suite::Poisson,
            "jordan" => Suite::Jordan,
            "contraction" => Suite::Contraction,
            "all" => Suite::All,
            _ => return Err(UnknownSuite(s.to_string())),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Used where a check has no tolerance of its own.
    pub tolerance: f64,
    /// Overrides the primary sample count of every sampled check.
    pub samples: Option<usize>,
    /// Worker threads; 0 picks the machine's parallelism.
    #[serde(skip)]
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 1, tolerance: DEFAULT_TOLERANCE, samples: None, threads: 0 }
    }
}

impl VerifyOptions {
    pub(crate) fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub suite: String,
    pub pass: bool,
    /// Worst observed deviation, in the units the check documents.
    pub residual: f64,
    pub statement: String,
    pub detail: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Copy)]
pub struct CheckSpec {
    pub name: &'static str,
    pub suite: Suite,
    pub statement: &'static str,
    pub run: fn(&VerifyOptions) -> orbitkit::Result<Outcome>,
}

/// What a check body returns; errors become failing checks.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub pass: bool,
    pub residual: f64,
    pub detail: Value,
}

impl CheckSpec {
    pub fn execute(&self, opts: &VerifyOptions) -> Check {
        let t0 = Instant::now();
        let (pass, residual, detail) = match (self.run)(opts) {
            Ok(o) => (o.pass, o.residual, o.detail),
            Err(e) => (false, f64::NAN, serde_json::json!({ "error": e.to_string() })),
        };
        Check {
            name: self.name.to_string(),
            suite: self.suite.name().to_string(),
            pass,
            residual,
            statement: self.statement.to_string(),
            detail,
            elapsed: t0.elapsed(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub options: VerifyOptions,
    pub pass: bool,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One line per check.
    pub fn to_table(&self) -> String {
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let mut out = format!("{:<w$}  {:<4}  {:>10}  statement\n", "name", "pass", "residual");
        for c in &self.checks {
            out += &format!(
                "{:<w$}  {:<4}  {:>10.3e}  {}\n",
                c.name,
                if c.pass { "ok" } else { "FAIL" },
                c.residual,
                c.statement
            );
        }
        out += &format!("{} passed, {} failed\n", self.passed, self.failed);
        out
    }
}

/// Check specs making up a suite, in report order.
pub fn suite_checks(suite: Suite) -> Vec<CheckSpec> {
    let all = suites::all_checks();
    if suite == Suite::All {
        all
    } else {
        all.into_iter().filter(|c| c.suite == suite).collect()
    }
}

pub fn find_check(name: &str) -> Option<CheckSpec> {
    suites::all_checks().into_iter().find(|c| c.name == name)
}

/// Runs specs on worker threads and returns checks in spec order.
pub fn run_checks(specs: &[CheckSpec], opts: &VerifyOptions) -> Vec<Check> {
    let threads = match opts.threads {
        0 => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        n => n,
    }
    .min(specs.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Check>>> = Mutex::new(vec![None; specs.len()]);
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= specs.len() {
                    break;
                }
                let c = specs[i].execute(opts);
                slots.lock().unwrap()[i] = Some(c);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|c| c.expect("every slot filled")).collect()
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Report {
    let t0 = Instant::now();
    let checks = run_checks(&suite_checks(suite), opts);
    let passed = checks.iter().filter(|c| c.pass).count();
    let failed = checks.len() - passed;
    Report { suite: suite.name().to_string(), options: *opts, pass: failed == 0, passed, failed, checks, elapsed: t0.elapsed() }
}

/// Parses the suite name and runs it. The caller maps `Err` to a usage error.
pub fn run_verify_suite(suite: &str, opts: &VerifyOptions) -> Result<Report, UnknownSuite> {
    Ok(run_suite(suite.parse()?, opts))
}
