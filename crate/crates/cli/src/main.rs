//! `sphereprod`: build, certify, convert and inspect sphere-product triangulations.
//!
//! Exit codes: 0 when every check passes, 1 on a failed check or bad input,
//! 2 when a search budget or group cap ran out before deciding.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sphereprod::certify::{acceptance_targets, build, certify, certify_many, Certificate, RunManifest, Target};
use sphereprod::crosspoly::{gamma_union, lemma_shelling_order, verify_shelling};
use sphereprod::homology::{audited_smith_forms, homology};
use sphereprod::io::{ComplexDocument, Format};
use sphereprod::verify::{
    check_automorphism, check_balanced, check_closed_pseudomanifold, check_cs, find_isomorphism, link_homology_survey,
    skeleton_contained, VerificationReport, DEFAULT_BUDGET,
};
use sphereprod::{Coloring, Error, Face, Permutation, Result, VertexId};

#[derive(Parser, Debug)]
#[command(
    name = "sphereprod",
    version,
    about = "Build and certify triangulations of sphere products"
)]
struct Cli {
    /// Directory for written files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Encoding of written complexes (default json) and of stdout (default plain).
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Plain,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Plain => Format::Plain,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a complex and write it in canonical form.
    Build(BuildArgs),
    /// Run the full check suite for a target and write `manifest.json`.
    ///
    /// Complex files are written as well when `--out` is given.
    Certify(CertifyArgs),
    /// Convert a complex file between the plain and JSON encodings.
    Convert { input: PathBuf, output: PathBuf },
    /// Print the integral homology of a complex file.
    Homology {
        file: PathBuf,
        /// Unreduced homology instead of reduced.
        #[arg(long)]
        unreduced: bool,
        /// Also recompute every Smith form with unimodular transforms and check U·M·V = D.
        #[arg(long)]
        verify_transforms: bool,
    },
    /// Run one check on a complex file, or the full suite for a built target.
    Verify(VerifyArgs),
    /// Standalone certificate checks.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BuildKind {
    CrossPolytope,
    BComplex,
    GammaBelt,
    Cycle,
    CsProduct,
    BalancedProduct,
    Inductive,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(value_enum)]
    target: BuildKind,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    i: Option<usize>,
    /// Also write Γ, Δ₁, Δ₂ and the tube N (balanced-product only).
    #[arg(long)]
    emit_intermediates: bool,
    /// Use the circle seed (inductive only).
    #[arg(long)]
    circle: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CertifyKind {
    CrossPolytope,
    BComplex,
    Shelling,
    Cycle,
    CsProduct,
    CsSymmetry,
    BalancedProduct,
    Inductive,
    InductiveCircle,
    Engine,
    All,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[arg(value_enum)]
    target: CertifyKind,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    /// Largest dimension for `all`.
    #[arg(long, default_value_t = 6)]
    max_d: usize,
    /// Random samples for `engine`.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    emit_intermediates: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Balanced,
    Cs,
    Pseudomanifold,
    Links,
    Isomorphic,
    Skeleton,
    Automorphism,
    /// Full suite for the built balanced product (needs --d).
    BalancedProduct,
    /// Full suite for the built cs product (needs --d).
    CsProduct,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: CheckKind,
    /// Complex file (plain or JSON; detected from contents).
    file: Option<PathBuf>,
    #[arg(long)]
    d: Option<usize>,
    /// JSON map from vertex to color; defaults to the one embedded in the file.
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// JSON map from vertex to vertex; defaults to the one embedded in the file.
    #[arg(long)]
    involution: Option<PathBuf>,
    /// Second complex for `isomorphic` and `skeleton`.
    #[arg(long)]
    against: Option<PathBuf>,
    /// Skeleton dimension for `skeleton`.
    #[arg(long, default_value_t = 2)]
    dim: isize,
    /// Search budget for `isomorphic`.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Verify the belt-order shelling of Γ_0 ∪ … ∪ Γ_i.
    Shelling {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        i: usize,
    },
}

/// Outcome of a command, mapped onto the exit code.
enum Status {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    // die quietly when stdout is closed early (e.g. piped into `head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: cannot size the worker pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource_limit() { 2 } else { 1 })
        }
    }
}

fn run(cli: &Cli) -> Result<Status> {
    match &cli.command {
        Command::Build(a) => cmd_build(cli, a),
        Command::Certify(a) => cmd_certify(cli, a),
        Command::Convert { input, output } => cmd_convert(cli, input, output),
        Command::Homology {
            file,
            unreduced,
            verify_transforms,
        } => cmd_homology(cli, file, *unreduced, *verify_transforms),
        Command::Verify(a) => cmd_verify(cli, a),
        Command::Check {
            what: CheckCommand::Shelling { d, i },
        } => cmd_check_shelling(cli, *d, *i),
    }
}

/// Encoding of reports on stdout: human-readable unless JSON is asked for.
fn out_format(cli: &Cli) -> Format {
    cli.format.map(Format::from).unwrap_or_default()
}

/// Encoding of written complexes: JSON unless plain is asked for, so that
/// colorings and involutions survive by default.
fn file_format(cli: &Cli) -> Format {
    cli.format.map(Format::from).unwrap_or(Format::Json)
}

fn out_dir(cli: &Cli) -> Result<PathBuf> {
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
    Ok(dir)
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn require(value: Option<usize>, flag: &str, target: &str) -> Result<usize> {
    value.ok_or_else(|| Error::Precondition(format!("{target} needs --{flag}")))
}

/// Writes every document and returns file name → digest.
fn write_documents(cli: &Cli, docs: &[ComplexDocument]) -> Result<BTreeMap<String, String>> {
    let dir = out_dir(cli)?;
    let format = file_format(cli);
    let mut digests = BTreeMap::new();
    for doc in docs {
        let name = format!("{}.{}", doc.name, format.extension());
        if doc.loses_metadata(format) {
            eprintln!("warning: {name}: coloring/involution dropped in plain format");
        }
        let digest = doc.write(dir.join(&name), format)?;
        digests.insert(name, digest);
    }
    Ok(digests)
}

fn cmd_build(cli: &Cli, a: &BuildArgs) -> Result<Status> {
    let d = a.d;
    let target = match a.target {
        BuildKind::CrossPolytope => Target::CrossPolytope { d },
        BuildKind::BComplex => Target::BComplex {
            i: require(a.i, "i", "b-complex")?,
            d,
        },
        BuildKind::GammaBelt => Target::Shelling {
            d,
            i: require(a.i, "i", "gamma-belt")?,
        },
        BuildKind::Cycle => Target::Cycle { d },
        BuildKind::CsProduct => Target::CsProduct { d },
        BuildKind::BalancedProduct => Target::BalancedProduct {
            d,
            intermediates: a.emit_intermediates,
        },
        BuildKind::Inductive if a.circle => Target::InductiveCircle { d },
        BuildKind::Inductive => Target::Inductive {
            i: require(a.i, "i", "inductive")?,
            d,
        },
    };
    let docs = build(&target)?;
    let digests = write_documents(cli, &docs)?;
    let summary: Vec<_> = docs
        .iter()
        .map(|doc| {
            let file = format!("{}.{}", doc.name, file_format(cli).extension());
            json!({
                "file": file,
                "f_vector": doc.complex.f_vector().nonempty(),
                "sha256": digests[&file],
            })
        })
        .collect();
    if out_format(cli) == Format::Json {
        println!(
            "{}",
            serde_json::to_string_pretty(&summary).expect("json values serialize")
        );
    } else {
        for s in &summary {
            println!(
                "{}  f = {}  sha256 {}",
                s["file"].as_str().unwrap_or_default(),
                s["f_vector"],
                s["sha256"].as_str().unwrap_or_default()
            );
        }
    }
    Ok(Status::Pass)
}

fn certify_targets(a: &CertifyArgs) -> Result<Vec<Target>> {
    let d = || require(a.d, "d", "this target");
    let i = || require(a.i, "i", "this target");
    Ok(match a.target {
        CertifyKind::All => acceptance_targets(a.max_d),
        CertifyKind::CrossPolytope => vec![Target::CrossPolytope { d: d()? }],
        CertifyKind::BComplex => vec![Target::BComplex { i: i()?, d: d()? }],
        CertifyKind::Shelling => vec![Target::Shelling { d: d()?, i: i()? }],
        CertifyKind::Cycle => vec![Target::Cycle { d: d()? }],
        CertifyKind::CsProduct => vec![Target::CsProduct { d: d()? }],
        CertifyKind::CsSymmetry => vec![Target::CsSymmetry { d: d()? }],
        CertifyKind::BalancedProduct => vec![Target::BalancedProduct {
            d: d()?,
            intermediates: a.emit_intermediates,
        }],
        CertifyKind::Inductive => vec![Target::Inductive { i: i()?, d: d()? }],
        CertifyKind::InductiveCircle => vec![Target::InductiveCircle { d: d()? }],
        CertifyKind::Engine => vec![Target::Engine {
            samples: a.samples,
            seed: a.seed,
        }],
    })
}

fn print_certificate(cert: &Certificate, target: &Target) {
    println!("{} {target}", if cert.passed { "PASS" } else { "FAIL" });
    for r in &cert.reports {
        println!("  {r}");
        if r.check == "shelling" {
            if let Some(list) = r.metrics.get("restrictions").and_then(|v| v.as_array()) {
                let shown: Vec<&str> = list.iter().filter_map(|v| v.as_str()).collect();
                println!("    restrictions: {}", shown.join(", "));
            }
        }
        if let Some(b) = r.metrics.get("betti") {
            println!("    betti: {b}");
        }
    }
}

fn cmd_certify(cli: &Cli, a: &CertifyArgs) -> Result<Status> {
    let start = Instant::now();
    let targets = certify_targets(a)?;
    let results = certify_many(&targets);
    let mut certificates = Vec::new();
    let mut undecided = None;
    for (t, r) in targets.iter().zip(results) {
        match r {
            Ok(c) => certificates.push(c),
            Err(e) if e.is_resource_limit() => {
                eprintln!("undecided: {t}: {e}");
                undecided.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    let mut outputs = BTreeMap::new();
    if cli.out.is_some() {
        let docs: Vec<ComplexDocument> = certificates.iter().flat_map(|c| c.artifacts.clone()).collect();
        outputs = write_documents(cli, &docs)?;
    }
    let passed = undecided.is_none() && certificates.iter().all(|c| c.passed);
    let manifest = RunManifest {
        command: std::env::args().collect(),
        params: serde_json::from_value(json!({
            "target": format!("{:?}", a.target).to_lowercase(),
            "d": a.d,
            "i": a.i,
            "max_d": a.max_d,
            "samples": a.samples,
            "seed": a.seed,
        }))
        .unwrap_or_default(),
        inputs: BTreeMap::new(),
        outputs,
        certificates,
        passed,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    let path = out_dir(cli)?.join("manifest.json");
    std::fs::write(&path, format!("{text}\n")).map_err(|e| io_error(&path, e))?;
    if out_format(cli) == Format::Json {
        println!("{text}");
    } else {
        for (c, t) in manifest.certificates.iter().zip(&targets) {
            print_certificate(c, t);
        }
        if let Some(f) = manifest.certificates.iter().find_map(Certificate::first_failure) {
            println!("first failure: {f}");
        }
    }
    match undecided {
        Some(e) => Err(e),
        None if passed => Ok(Status::Pass),
        None => Ok(Status::Fail),
    }
}

fn cmd_convert(cli: &Cli, input: &Path, output: &Path) -> Result<Status> {
    let doc = ComplexDocument::read(input)?;
    let format = match cli.format {
        Some(f) => f.into(),
        None if output.extension().is_some_and(|e| e == "json") => Format::Json,
        None => Format::Plain,
    };
    if doc.loses_metadata(format) {
        eprintln!("warning: coloring/involution dropped in plain format");
    }
    let digest = doc.write(output, format)?;
    println!("{}  {format}  sha256 {digest}", output.display());
    Ok(Status::Pass)
}

fn cmd_homology(cli: &Cli, file: &Path, unreduced: bool, verify_transforms: bool) -> Result<Status> {
    let doc = ComplexDocument::read(file)?;
    let h = homology(&doc.complex, !unreduced)?;
    let audited = if verify_transforms {
        match audited_smith_forms(&doc.complex) {
            Ok(forms) => Some(forms.len()),
            Err(Error::CriterionFailed(why)) => {
                eprintln!("transform audit failed: {why}");
                return Ok(Status::Fail);
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    if out_format(cli) == Format::Json {
        let mut value = serde_json::to_value(&h).expect("profile serializes");
        if let Some(n) = audited {
            value["transforms_verified"] = json!(n);
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("json values serialize")
        );
    } else {
        println!("{h}");
        if let Some(n) = audited {
            println!("transforms verified for {n} boundary maps");
        }
    }
    Ok(Status::Pass)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}

fn load_coloring(a: &VerifyArgs, doc: &ComplexDocument) -> Result<Option<Coloring>> {
    match &a.coloring {
        Some(p) => Ok(Some(Coloring::new(read_json::<BTreeMap<VertexId, u32>>(p)?))),
        None => Ok(doc.coloring.clone()),
    }
}

fn load_involution(a: &VerifyArgs, doc: &ComplexDocument) -> Result<Permutation> {
    match &a.involution {
        Some(p) => Permutation::new(read_json::<BTreeMap<VertexId, VertexId>>(p)?),
        None => doc
            .involution
            .clone()
            .ok_or_else(|| Error::Precondition("no involution given and none embedded in the file".into())),
    }
}

fn emit_report(cli: &Cli, report: &VerificationReport) -> Status {
    if cli.format == Some(FormatArg::Plain) {
        println!("{report}");
    } else {
        println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
    }
    if report.passed {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> Result<Status> {
    let suite = match a.check {
        CheckKind::BalancedProduct => Some(Target::BalancedProduct {
            d: require(a.d, "d", "balanced-product")?,
            intermediates: false,
        }),
        CheckKind::CsProduct => Some(Target::CsProduct {
            d: require(a.d, "d", "cs-product")?,
        }),
        _ => None,
    };
    if let Some(t) = suite {
        let cert = certify(&t)?;
        if cli.format == Some(FormatArg::Plain) {
            print_certificate(&cert, &t);
        } else {
            println!(
                "{}",
                serde_json::to_string_pretty(&cert).expect("certificate serializes")
            );
        }
        return Ok(if cert.passed { Status::Pass } else { Status::Fail });
    }
    let file = a
        .file
        .as_ref()
        .ok_or_else(|| Error::Precondition("this check needs a complex file".into()))?;
    let doc = ComplexDocument::read(file)?;
    let against = || -> Result<ComplexDocument> {
        let p = a
            .against
            .as_ref()
            .ok_or_else(|| Error::Precondition("this check needs --against".into()))?;
        ComplexDocument::read(p)
    };
    let report = match a.check {
        CheckKind::Balanced => check_balanced(&doc.complex, load_coloring(a, &doc)?.as_ref()),
        CheckKind::Cs => check_cs(&doc.complex, &load_involution(a, &doc)?),
        CheckKind::Automorphism => check_automorphism(&doc.complex, &load_involution(a, &doc)?),
        CheckKind::Pseudomanifold => check_closed_pseudomanifold(&doc.complex),
        CheckKind::Links => link_homology_survey(&doc.complex),
        CheckKind::Skeleton => skeleton_contained(&doc.complex, &against()?.complex, a.dim),
        CheckKind::Isomorphic => match find_isomorphism(&doc.complex, &against()?.complex, a.budget)? {
            Some(m) => VerificationReport::pass("isomorphic").metric("map", m.mapping()),
            None => VerificationReport::fail("isomorphic", "no isomorphism exists"),
        },
        CheckKind::BalancedProduct | CheckKind::CsProduct => unreachable!("handled above"),
    };
    Ok(emit_report(cli, &report))
}

fn cmd_check_shelling(cli: &Cli, d: usize, i: usize) -> Result<Status> {
    let complex = gamma_union(i, d)?;
    let order = lemma_shelling_order(i, d)?;
    let report = match verify_shelling(&complex, &order) {
        Ok(cert) => {
            let shown: Vec<String> = cert.restrictions.iter().map(Face::to_string).collect();
            VerificationReport::pass("shelling")
                .metric("facets", order.len())
                .metric("restrictions", shown)
        }
        Err(e @ Error::NotShelling { .. }) => VerificationReport::fail("shelling", e.to_string()),
        Err(e) => return Err(e),
    };
    if cli.format == Some(FormatArg::Json) {
        return Ok(emit_report(cli, &report));
    }
    println!("{report}");
    if let Some(list) = report.metrics.get("restrictions").and_then(|v| v.as_array()) {
        for (k, r) in order.iter().zip(list) {
            println!("  {k}  r = {}", r.as_str().unwrap_or_default());
        }
    }
    Ok(if report.passed { Status::Pass } else { Status::Fail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_parse_after_subcommands() {
        let cli = Cli::try_parse_from([
            "sphereprod",
            "build",
            "cycle",
            "--d",
            "5",
            "--format",
            "json",
            "--jobs",
            "3",
        ])
        .unwrap();
        assert_eq!(cli.format, Some(FormatArg::Json));
        assert_eq!(cli.jobs, Some(3));
        assert!(matches!(
            cli.command,
            Command::Build(BuildArgs {
                target: BuildKind::Cycle,
                d: 5,
                ..
            })
        ));
    }
}
