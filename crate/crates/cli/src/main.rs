use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orbitkit::classify::{classify_nilpotent, Classification, ClassifyOptions};
use orbitkit::divalg::CMat;
use orbitkit::dualpair::{reduce_and_classify, DualPairCase, DualPairConfig};
use orbitkit::jordan::{albert_rank, fundamental_invariant, generic_norm, is_regular, jordan_rank_classical, AlbertElement};
use orbitkit::liealg::{Family, LieAlgebraDescriptor};
use orbitkit::poisson::{pplus_basis, pplus_bracket_matrix, PoissonContext};
use orbitkit::triples::{ks_element, orbit_rep};
use orbitkit_verify::{run_verify_suite, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "orbitkit", version, about = "Holomorphic nilpotent orbits in classical hermitian Lie algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// sp, u, sostar or so2q
    #[arg(long, global = true)]
    family: Option<String>,
    /// Family sizes, comma separated (u takes p,q)
    #[arg(long, global = true, value_delimiter = ',')]
    params: Vec<usize>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, env = "ORBITKIT_TOL", default_value_t = orbitkit_verify::DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Relative threshold below which singular values and eigenvalues count as zero
    #[arg(long, global = true, default_value_t = orbitkit::linalg::RANK_REL_TOL)]
    rank_tol: f64,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Pairs {
    /// Holomorphic/antiholomorphic p+ coordinate brackets
    Pplus,
    /// Full matrix of basis coordinate brackets
    Basis,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Orbit type of a square-zero element read from --input
    Classify,
    /// Representative e_{t,u}
    Rep {
        #[arg(long = "type", value_delimiter = ',', required = true)]
        ty: Vec<usize>,
    },
    /// Zero-level reduction histogram for a dual pair
    Reduce {
        /// o-sp, u-u, sp-sostar or sp-so2q
        #[arg(long)]
        case: String,
        #[arg(long)]
        sprime: usize,
        #[arg(long, default_value_t = 0)]
        ssecond: usize,
        /// Size parameters of the target algebra
        #[arg(long, value_delimiter = ',', required = true)]
        target: Vec<usize>,
    },
    /// Lie-Poisson brackets evaluated at a point
    Bracket {
        #[arg(long)]
        at: PathBuf,
        #[arg(long, value_enum, default_value_t = Pairs::Pplus)]
        pairs: Pairs,
    },
    /// Albert algebra norm and rank, or Jordan invariants of an element from --input
    Jordan {
        #[arg(long)]
        norm: Option<PathBuf>,
        #[arg(long)]
        rank: Option<PathBuf>,
    },
    /// p+ element attached to the first s standard triples
    Ks {
        #[arg(long)]
        s: usize,
    },
    /// Run a property battery
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Worker threads (0: all cores)
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Check(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<orbitkit::OrbitError> for Failure {
    fn from(e: orbitkit::OrbitError) -> Self {
        Failure::Usage(e.into())
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&s).with_context(|| format!("parsing {}", path.display()))
}

/// Family from the flags, else from the input document's "family"/"params".
fn family(g: &Global, doc: Option<&Value>) -> Result<Family> {
    if let Some(name) = &g.family {
        return Ok(Family::parse(name, &g.params)?);
    }
    let doc = doc.ok_or_else(|| anyhow!("--family is required"))?;
    let name = doc.get("family").and_then(Value::as_str).ok_or_else(|| anyhow!("--family is required"))?;
    let params: Vec<usize> = doc
        .get("params")
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(|v| v.as_u64().map(|x| x as usize)).collect())
        .unwrap_or_default();
    Ok(Family::parse(name, &params)?)
}

fn descriptor(g: &Global, doc: Option<&Value>) -> Result<LieAlgebraDescriptor> {
    Ok(LieAlgebraDescriptor::new(family(g, doc)?)?)
}

fn cmat_json(m: &CMat) -> Value {
    Value::Array(m.row_iter().map(|r| Value::Array(r.iter().map(|z| json!([z.re + 0.0, z.im + 0.0])).collect())).collect())
}

fn classify_opts(g: &Global) -> ClassifyOptions {
    ClassifyOptions { rank_tol: g.rank_tol, nil_tol: g.tolerance, ..ClassifyOptions::default() }
}

fn member_tol(g: &Global) -> f64 {
    g.tolerance.max(ClassifyOptions::default().member_tol)
}

fn classify(g: &Global) -> Result<Value, Failure> {
    let path = g.input.as_ref().ok_or_else(|| anyhow!("classify needs --input"))?;
    let doc = read_json(path)?;
    let d = descriptor(g, Some(&doc))?;
    let x = d.element_from_json(&doc, member_tol(g))?;
    let c = classify_nilpotent(&d, &x, &classify_opts(g))?;
    Ok(match c {
        Classification::Type(t) => json!({
            "family": d.name(),
            "type": [t.t, t.u],
            "holomorphic": t.is_holomorphic(),
            "pseudoholomorphic": true,
            "closure_max_s": t.t,
        }),
        Classification::NotPseudoholomorphic => json!({
            "family": d.name(),
            "type": null,
            "holomorphic": false,
            "pseudoholomorphic": false,
            "closure_max_s": null,
        }),
    })
}

fn rep(g: &Global, ty: &[usize]) -> Result<Value, Failure> {
    let [t, u] = ty else {
        return Err(anyhow!("--type takes t,u").into());
    };
    let d = descriptor(g, None)?;
    let e = orbit_rep(&d, *t, *u)?;
    let mut v = d.element_to_json(&e)?;
    v["type"] = json!([t, u]);
    Ok(v)
}

fn reduce(g: &Global, case: &str, sprime: usize, ssecond: usize, target: &[usize]) -> Result<Value, Failure> {
    let case = DualPairCase::parse(case)?;
    let fam = match case {
        DualPairCase::OSp => "sp",
        DualPairCase::UU => "u",
        DualPairCase::SpSoStar => "sostar",
        DualPairCase::SpSo2q => "so2q",
    };
    let cfg = DualPairConfig::new(case, sprime, ssecond, Family::parse(fam, target)?)?;
    let rep = reduce_and_classify(&cfg, g.samples.unwrap_or(500), g.seed, &classify_opts(g))?;
    let mut v = rep.to_json();
    v["seed"] = json!(g.seed);
    Ok(v)
}

fn bracket(g: &Global, at: &Path, pairs: Pairs) -> Result<Value, Failure> {
    let doc = read_json(at)?;
    let d = descriptor(g, Some(&doc))?;
    let xi = d.element_from_json(&doc, member_tol(g))?;
    match pairs {
        Pairs::Pplus => {
            let basis = pplus_basis(&d)?;
            let br = pplus_bracket_matrix(&d, &basis, &xi.mat);
            Ok(json!({
                "family": d.name(),
                "coordinates": basis.len(),
                "holomorphic": cmat_json(&br.holo),
                "mixed": cmat_json(&br.mixed),
            }))
        }
        Pairs::Basis => {
            let ctx = PoissonContext::new(&d)?;
            let basis = d.basis();
            let n = basis.len();
            let mut m = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    m[i][j] = ctx.bracket_via_structure(&basis[i], &basis[j], &xi.mat)?.re;
                }
            }
            Ok(json!({ "family": d.name(), "dim": n, "brackets": m }))
        }
    }
}

fn jordan(g: &Global, norm: Option<&PathBuf>, rank: Option<&PathBuf>) -> Result<Value, Failure> {
    if let Some(p) = norm.or(rank) {
        let a = AlbertElement::from_json(&read_json(p)?)?;
        let n = generic_norm(&a);
        let mut v = json!({ "field": a.field.to_string(), "norm": [n.re, n.im] });
        if rank.is_some() {
            v["rank"] = json!(albert_rank(&a, g.tolerance));
        }
        return Ok(v);
    }
    // otherwise: Jordan invariants of the p+ part of a Lie algebra element
    let path = g.input.as_ref().ok_or_else(|| anyhow!("jordan needs --norm, --rank or --input"))?;
    let doc = read_json(path)?;
    let d = descriptor(g, Some(&doc))?;
    let x = d.element_from_json(&doc, member_tol(g))?;
    let w = d.to_p_plus(&d.wrap(d.proj_p(&x.mat)))?;
    let mut v = json!({ "family": d.name(), "jordan_rank": jordan_rank_classical(&w, g.rank_tol)?, "split_rank": d.split_rank });
    if is_regular(d.family) {
        let f = fundamental_invariant(&w)?;
        v["fundamental_invariant"] = json!([f.re, f.im]);
    }
    Ok(v)
}

fn ks(g: &Global, s: usize) -> Result<Value, Failure> {
    let d = descriptor(g, None)?;
    let w = ks_element(&d, s)?;
    let mut v = w.to_json();
    v["s"] = json!(s);
    v["jordan_rank"] = json!(jordan_rank_classical(&w, g.rank_tol)?);
    Ok(v)
}

fn verify(g: &Global, suite: &str, threads: usize) -> Result<(Value, String), Failure> {
    let opts = VerifyOptions { seed: g.seed, tolerance: g.tolerance, samples: g.samples, threads };
    let rep = run_verify_suite(suite, &opts).map_err(|e| Failure::Usage(e.into()))?;
    let table = rep.to_table();
    let v = rep.to_json();
    if !rep.pass {
        let names: Vec<_> = rep.checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
        print_value(&v, Some(&table), g.output);
        return Err(Failure::Check(format!("failed checks: {}", names.join(", "))));
    }
    Ok((v, table))
}

fn table(v: &Value) -> String {
    match v {
        Value::Object(m) => {
            let w = m.keys().map(String::len).max().unwrap_or(0);
            m.iter()
                .map(|(k, x)| {
                    let s = match x {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    format!("{k:<w$}  {s}\n")
                })
                .collect()
        }
        other => format!("{other}\n"),
    }
}

fn print_value(v: &Value, table_text: Option<&str>, out: Output) {
    match out {
        Output::Json => println!("{}", serde_json::to_string_pretty(v).expect("json")),
        Output::Table => print!("{}", table_text.map(str::to_string).unwrap_or_else(|| table(v))),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let g = &cli.global;
    if g.tolerance <= 0.0 || g.rank_tol <= 0.0 || !g.tolerance.is_finite() {
        return Err(anyhow!("tolerances must be positive").into());
    }
    let (v, text) = match &cli.cmd {
        Cmd::Classify => (classify(g)?, None),
        Cmd::Rep { ty } => (rep(g, ty)?, None),
        Cmd::Reduce { case, sprime, ssecond, target } => (reduce(g, case, *sprime, *ssecond, target)?, None),
        Cmd::Bracket { at, pairs } => (bracket(g, at, *pairs)?, None),
        Cmd::Jordan { norm, rank } => {
            if norm.is_some() && rank.is_some() {
                return Err(Failure::Usage(anyhow!("pass one of --norm, --rank")));
            }
            (jordan(g, norm.as_ref(), rank.as_ref())?, None)
        }
        Cmd::Ks { s } => (ks(g, *s)?, None),
        Cmd::Verify { suite, threads } => {
            let (v, t) = verify(g, suite, *threads)?;
            (v, Some(t))
        }
    };
    print_value(&v, text.as_deref(), g.output);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("orbitkit: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("orbitkit: {e:#}");
            ExitCode::from(2)
        }
    }
}
