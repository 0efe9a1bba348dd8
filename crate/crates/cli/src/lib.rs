//! Command-line driver for `convfan`: `phi`, `fan` and `verify`.
//!
//! Exit codes: 0 success or VERIFIED, 1 domain failure or FALSIFIED,
//! 2 usage, validation or budget error.

pub mod input;
pub mod report;

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use convfan::fans::{is_linear_on, linearity_fan, normal_fan, smooth_refine};
use convfan::graded::{verify_proposition, Verdict, VerifyConfig};
use convfan::lp::{build_q, phi_alpha, verify_duality};
use convfan::{Cone, Error, Fan, QVector, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use input::{parse_geometry, parse_vector, parse_vector_list, GeometryInput, SystemFile};
use report::{digest, FanPayload, PhiPayload, RunReport, VerifyPayload};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "convfan", version, about = "Exact cones, fans and graded monomial systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimum cost of representing v by generators, with LP certificates.
    Phi(PhiArgs),
    /// Print the cone, linearity fan or normal fan of the generators.
    Fan(FanArgs),
    /// Check the fan decomposition of a graded system given as JSON.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct GeometrySource {
    /// JSON file with generators (and alpha, v), or `-` for stdin.
    pub input: Option<String>,
    /// Inline generators, e.g. "1,0;0,1;1,1".
    #[arg(long)]
    pub generators: Option<String>,
}

#[derive(Args, Debug)]
pub struct PhiArgs {
    #[command(flatten)]
    pub source: GeometrySource,
    /// Costs, e.g. "1,1,1".
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Target vector, e.g. "1,1".
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FanArgs {
    #[command(flatten)]
    pub source: GeometrySource,
    /// Fan cut out by all hyperplanes spanned by generators.
    #[arg(long, conflicts_with = "normal_fan_alpha")]
    pub linearity: bool,
    /// Normal fan of {γ : ⟨vᵢ, γ⟩ ≤ αᵢ} for the given costs.
    #[arg(long, allow_hyphen_values = true)]
    pub normal_fan_alpha: Option<String>,
    /// Refine to a smooth fan.
    #[arg(long)]
    pub smooth: bool,
    /// Test that φ_α is linear on every cone for sampled α.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// System file, or `-` for stdin.
    pub system: String,
    #[arg(long)]
    pub p_bound: Option<u64>,
    #[arg(long)]
    pub d_cap: Option<u64>,
    #[arg(long = "L", visible_alias = "ell")]
    pub ell_bound: Option<u64>,
    /// Skip smooth refinement.
    #[arg(long)]
    pub no_smooth: bool,
    /// Debug: use the single cone C, unrefined.
    #[arg(long)]
    pub no_refine: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// A failed run: exit code and message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DOMAIN, message: message.into() }
    }
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = String::new();
    let result = match &cli.command {
        Command::Phi(a) => cmd_phi(a, stdin, &mut out),
        Command::Fan(a) => cmd_fan(a, stdin, &mut out),
        Command::Verify(a) => cmd_verify(a, stdin, &mut out),
    };
    match result {
        Ok(code) => Output { code, stdout: out, stderr: String::new() },
        Err(f) => Output { code: f.code, stdout: out, stderr: format!("error: {}\n", f.message) },
    }
}

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))
    }
}

/// Loads geometry from a file or inline flags; returns it with the bytes digested.
fn load_geometry(src: &GeometrySource, stdin: &mut dyn Read) -> Result<(GeometryInput, String), Failure> {
    match (&src.input, &src.generators) {
        (Some(_), Some(_)) => Err(Failure::usage("give either an input file or --generators, not both")),
        (Some(path), None) => {
            let text = read_source(path, stdin)?;
            Ok((parse_geometry(&text)?, text))
        }
        (None, Some(g)) => Ok((
            GeometryInput { generators: parse_vector_list(g)?, alpha: None, v: None },
            g.clone(),
        )),
        (None, None) => Err(Failure::usage("no generators given")),
    }
}

fn ambient_dim(gens: &[QVector]) -> Result<usize, Failure> {
    let n = gens.first().map(QVector::dim).ok_or_else(|| Failure::usage("no generators given"))?;
    if gens.iter().any(|g| g.dim() != n) {
        return Err(Failure::usage("generators have different lengths"));
    }
    Ok(n)
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, report: &RunReport<T>) -> Result<(), Failure> {
    if let Some(path) = path {
        let mut text = serde_json::to_string_pretty(report).expect("report serializes");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn domain_or_usage(e: Error) -> Failure {
    match e {
        Error::NotInCone(_) => Failure::domain("v not in cone"),
        Error::NotPointed { line } => Failure::domain(format!("cone is not strongly convex: contains the line through {line}")),
        Error::NotPointedSupport { line } => Failure::domain(format!("normal fan is not pointed: line through {line}")),
        Error::NegativeCost => Failure::usage("validation error: alpha has a negative entry"),
        other => Failure::usage(other.to_string()),
    }
}

fn cmd_phi(a: &PhiArgs, stdin: &mut dyn Read, out: &mut String) -> Result<i32, Failure> {
    let (mut geo, mut raw) = load_geometry(&a.source, stdin)?;
    if let Some(alpha) = &a.alpha {
        geo.alpha = Some(parse_vector(alpha)?);
        raw.push_str(&format!("|alpha={alpha}"));
    }
    if let Some(v) = &a.v {
        geo.v = Some(parse_vector(v)?);
        raw.push_str(&format!("|v={v}"));
    }
    let n = ambient_dim(&geo.generators)?;
    let alpha = geo.alpha.ok_or_else(|| Failure::usage("missing alpha"))?;
    let v = geo.v.ok_or_else(|| Failure::usage("missing v"))?;
    if alpha.dim() != geo.generators.len() {
        return Err(Failure::usage("validation error: alpha needs one entry per generator"));
    }
    if v.dim() != n {
        return Err(Failure::usage("validation error: v has the wrong length"));
    }
    if !alpha.is_nonnegative() {
        return Err(Failure::usage("validation error: alpha has a negative entry"));
    }
    let phi = phi_alpha(&geo.generators, &alpha, &v).map_err(domain_or_usage)?;
    let duality = verify_duality(&geo.generators, &alpha, &v).map_err(domain_or_usage)?;
    writeln!(
        out,
        "phi = {}, witness = {}, dual max = {} at {}",
        phi.value, phi.witness, duality.dual_value, duality.maximizer
    )
    .unwrap();
    let report = RunReport {
        command: "phi",
        input_sha256: digest(raw.as_bytes()),
        config: json!({}),
        payload: PhiPayload::new(&phi, &duality),
        exit_status: EXIT_OK,
    };
    write_json(&a.json, &report)?;
    Ok(EXIT_OK)
}

fn sampled_alphas(r: usize, count: usize, seed: u64) -> Vec<QVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..r)
                .map(|_| {
                    let num: i64 = rng.random_range(1..=12);
                    let den: i64 = rng.random_range(1..=4);
                    Rat::new(num.into(), den.into())
                })
                .collect()
        })
        .collect()
}

fn print_fan(out: &mut String, fan: &Fan) {
    let rays = fan.rays();
    let names: Vec<String> = rays.iter().map(ToString::to_string).collect();
    writeln!(out, "rays: {}", names.join(" ")).unwrap();
    writeln!(out, "maximal cones: {}", fan.maximal_cones().len()).unwrap();
    for c in fan.maximal_cones() {
        let rs: Vec<String> = c.rays().iter().map(ToString::to_string).collect();
        writeln!(out, "  [{}]", rs.join(", ")).unwrap();
    }
}

fn cmd_fan(a: &FanArgs, stdin: &mut dyn Read, out: &mut String) -> Result<i32, Failure> {
    let (geo, mut raw) = load_geometry(&a.source, stdin)?;
    let n = ambient_dim(&geo.generators)?;
    let gens = geo.generators;
    let mut fan = if a.linearity {
        linearity_fan(n, &gens).map_err(domain_or_usage)?
    } else if let Some(alpha) = &a.normal_fan_alpha {
        raw.push_str(&format!("|alpha={alpha}"));
        let alpha = parse_vector(alpha)?;
        if alpha.dim() != gens.len() {
            return Err(Failure::usage("validation error: alpha needs one entry per generator"));
        }
        Cone::from_generators(n, &gens).map_err(domain_or_usage)?;
        normal_fan(&build_q(&gens, &alpha)).map_err(domain_or_usage)?
    } else {
        Fan::from_cone(Cone::from_generators(n, &gens).map_err(domain_or_usage)?)
    };
    if a.smooth {
        fan = smooth_refine(&fan).map_err(domain_or_usage)?;
    }
    print_fan(out, &fan);
    let mut code = EXIT_OK;
    let mut check = None;
    if a.check {
        let mut pass = true;
        for (k, alpha) in sampled_alphas(gens.len(), a.samples, a.seed).iter().enumerate() {
            for c in fan.maximal_cones() {
                pass &= is_linear_on(&gens, alpha, c, 8, a.seed.wrapping_add(k as u64)).map_err(domain_or_usage)?;
            }
        }
        writeln!(out, "linearity check over {} sampled alpha: {}", a.samples, if pass { "PASS" } else { "FAIL" })
            .unwrap();
        if !pass {
            code = EXIT_DOMAIN;
        }
        check = Some(pass);
    }
    let report = RunReport {
        command: "fan",
        input_sha256: digest(raw.as_bytes()),
        config: json!({
            "linearity": a.linearity,
            "normal_fan_alpha": a.normal_fan_alpha,
            "smooth": a.smooth,
            "check": a.check,
            "samples": a.samples,
            "seed": a.seed,
        }),
        payload: FanPayload::new(&fan, check),
        exit_status: code,
    };
    write_json(&a.json, &report)?;
    Ok(code)
}

fn cmd_verify(a: &VerifyArgs, stdin: &mut dyn Read, out: &mut String) -> Result<i32, Failure> {
    let text = read_source(&a.system, stdin)?;
    let file = SystemFile::parse(&text)?;
    let sys = file.build()?;
    let defaults = VerifyConfig::default();
    let config = VerifyConfig {
        p_bound: a.p_bound.or(file.caps.p_bound).unwrap_or(defaults.p_bound),
        d_cap: a.d_cap.or(file.caps.d_cap).unwrap_or(defaults.d_cap),
        ell_bound: a.ell_bound.or(file.caps.ell_bound).unwrap_or(defaults.ell_bound),
        refine_smooth: !a.no_smooth && !a.no_refine,
        single_cone: a.no_refine,
        seed: a.seed.or(file.caps.seed).unwrap_or(defaults.seed),
        random_weights: defaults.random_weights,
    };
    let report = verify_proposition(&sys, &config).map_err(|e| Failure::usage(e.to_string()))?;

    let rays: Vec<String> = report.fan.rays().iter().map(ToString::to_string).collect();
    writeln!(out, "fan: {} maximal cones, rays {}", report.fan.maximal_cones().len(), rays.join(" ")).unwrap();
    let per_ray: Vec<String> =
        report.exponents.per_ray.iter().map(|e| format!("{} -> {}", e.ray, e.d)).collect();
    writeln!(out, "d = {} (per ray: {})", report.exponents.d, per_ray.join(", ")).unwrap();
    let ideal_level = report.exponents.per_ray.iter().all(|e| e.ideal_level);
    writeln!(
        out,
        "ideal-level stabilization a_(dle) = a_(de)^l for l <= {}: {}",
        config.ell_bound,
        if ideal_level { "holds" } else { "fails (closure level still holds)" }
    )
    .unwrap();
    for c in &report.cones {
        let rs: Vec<String> = c.rays.iter().map(ToString::to_string).collect();
        writeln!(
            out,
            "cone [{}]: {} tuples, {}",
            rs.join(", "),
            c.tuples.len(),
            if c.passed() { "PASS" } else { "FAIL" }
        )
        .unwrap();
    }
    if let Some((c, t)) = report.first_failure() {
        let rs: Vec<String> = c.rays.iter().map(ToString::to_string).collect();
        let p: Vec<String> = t.p.iter().map(ToString::to_string).collect();
        let mut line = format!("witness: cone [{}], p = ({})", rs.join(", "), p.join(","));
        if let Some(w) = &t.witness {
            line.push_str(&format!(", separating weight {w}"));
        }
        if let Some(ch) = &t.failed_chain {
            line.push_str(&format!(
                ", chain at weight {}: v(a_dm) = {}, sum over rays = {}, asymptotic = {}",
                ch.weight, ch.value_dm, ch.sum_of_rays, ch.asymptotic_dm
            ));
        }
        writeln!(out, "{line}").unwrap();
    }
    let code = match report.verdict {
        Verdict::Verified => EXIT_OK,
        Verdict::Falsified => EXIT_DOMAIN,
    };
    writeln!(out, "verdict: {}", report::verdict_name(report.verdict)).unwrap();

    let run = RunReport {
        command: "verify",
        input_sha256: digest(text.as_bytes()),
        config: json!({
            "p_bound": config.p_bound,
            "d_cap": config.d_cap,
            "L": config.ell_bound,
            "refine_smooth": config.refine_smooth,
            "single_cone": config.single_cone,
            "seed": config.seed,
            "random_weights": config.random_weights,
        }),
        payload: VerifyPayload::from(&report),
        exit_status: code,
    };
    write_json(&a.json, &run)?;
    Ok(code)
}
