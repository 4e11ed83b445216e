//! `cdc`: constant dimension subspace codes from the command line.
//!
//! Verbs: `bound` (lower bounds with certificates), `construct` (explicit
//! codes to a file), `verify` (brute-force distance checking), `rankdist`
//! (MRD rank distributions), `table` (bound tables).
//!
//! Exit status: 0 success, 1 runtime or parameter error, 2 usage error,
//! 3 verification failure.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cdc_core::bounds::{
    best_bound, bound_improved_linkage, bound_lifted_mrd, bound_parallel, bound_rrmc, Certificate,
    Orientation, Registry,
};
use cdc_core::codefile;
use cdc_core::construct::{generalized_parallel_linkage, lifted_mrd, linkage};
use cdc_core::field::{prime_power_decompose, FieldSpec};
use cdc_core::matrix::Matrix;
use cdc_core::rankmetric::{GabidulinCode, MrdCodeSpec, RankDistribution, DEFAULT_ENUM_CAP};
use cdc_core::subspace::ConstantDimensionCode;
use cdc_core::verify::{verify_subspaces_with_progress, PairSampling, VerifyReport};

/// Environment variable naming the default registry file.
const REGISTRY_ENV: &str = "CDC_REGISTRY";

/// Codes above this size need an explicit --full or --sample choice.
const FULL_VERIFY_DEFAULT_LIMIT: usize = 10_000;

#[derive(Parser)]
#[command(name = "cdc", version, about = "Constant dimension subspace code toolkit")]
struct Cli {
    /// Cap the number of worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Best,
    Registry,
    Lmrd,
    Improved,
    Parallel,
    Rrmc,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    /// n1 hosts the base constant dimension code of the first half.
    Cdc,
    /// n1 hosts the MRD code of the first half.
    Mrd,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Cdc => Orientation::Cdc,
            OrientationArg::Mrd => Orientation::Mrd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CertFormat {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Lmrd,
    Linkage,
    Parallel,
    ParallelT,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a lower bound on A_q(n, d, k) and print its certificate.
    Bound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// Registry file (default: $CDC_REGISTRY, then the built-in registry).
        #[arg(long)]
        registry: Option<PathBuf>,
        /// Bound rule; `best` searches all rules and parameters.
        #[arg(long, value_enum, default_value = "best")]
        rule: RuleArg,
        /// Split parameter: segment length n1 (rules parallel/rrmc) or m (improved).
        #[arg(long)]
        n1: Option<usize>,
        /// Shift parameter for the parallel and rank-restricted rules.
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long, value_enum, default_value = "cdc")]
        orientation: OrientationArg,
        /// Certificate rendering.
        #[arg(long, value_enum, default_value = "text")]
        cert: CertFormat,
    },
    /// Build a code and write it to a code file.
    Construct {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        /// Ambient dimension (method lmrd).
        #[arg(long)]
        n: Option<usize>,
        /// First segment length (methods linkage/parallel/parallel-t).
        #[arg(long)]
        n1: Option<usize>,
        /// Second segment length (methods linkage/parallel/parallel-t).
        #[arg(long)]
        n2: Option<usize>,
        /// Shift (method parallel-t).
        #[arg(long, default_value_t = 0)]
        t: usize,
        /// Base code files: first for the n1 segment, second for the n2 one.
        /// Defaults to the single whole-space code when the segment length
        /// equals k, and to a lifted MRD code otherwise.
        #[arg(long)]
        base: Vec<PathBuf>,
        /// Enumeration cap for rank-metric codes.
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the minimum distance claimed in a code file.
    Verify {
        file: PathBuf,
        /// Examine every codeword pair (default up to 10000 codewords).
        #[arg(long)]
        full: bool,
        /// Examine this many seeded pseudorandom pairs instead; can refute a
        /// distance claim but never certify one.
        #[arg(long, conflicts_with = "full")]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the rank distribution of an MRD code.
    Rankdist {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Best-bound table over a parameter grid.
    Table {
        /// Comma-separated list of prime powers, e.g. 2,3.
        #[arg(long)]
        q: String,
        /// Ambient dimensions: comma-separated values or inclusive ranges,
        /// e.g. 12, 8-13, 8..13.
        #[arg(long)]
        n: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        registry: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(cli.threads);
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(feature = "parallel")]
fn init_threads(threads: Option<usize>) {
    if let Some(n) = threads {
        if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: could not configure {n} threads: {err}");
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn init_threads(threads: Option<usize>) {
    if threads.is_some() {
        eprintln!("warning: built without the parallel feature; --threads is ignored");
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Bound {
            q,
            n,
            d,
            k,
            registry,
            rule,
            n1,
            t,
            orientation,
            cert,
        } => {
            let reg = load_registry(registry)?;
            let certificate = evaluate_bound(q, n, d, k, rule, n1, t, orientation.into(), &reg)?;
            println!("{}", certificate.value());
            match cert {
                CertFormat::Text => print!("{certificate}"),
                CertFormat::Structured => println!("{}", certificate.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct {
            method,
            q,
            k,
            d,
            n,
            n1,
            n2,
            t,
            base,
            cap,
            out,
        } => {
            let code = run_construct(method, q, k, d, n, n1, n2, t, &base, cap)?;
            let file = File::create(&out)
                .with_context(|| format!("cannot create {}", out.display()))?;
            let mut writer = BufWriter::new(file);
            codefile::write_code(&mut writer, &code)?;
            writer.flush()?;
            println!(
                "M={} d_claimed={}",
                code.len(),
                code.claimed_min_distance().expect("constructions claim a distance")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            file,
            full,
            sample,
            seed,
        } => run_verify(&file, full, sample, seed),
        Command::Rankdist { q, m, n, d } => {
            let spec = MrdCodeSpec::new(q, m, n, d)?;
            let dist = RankDistribution::delsarte(spec);
            let mut out = String::new();
            for (r, count) in dist.counts() {
                if r > 0 {
                    out.push_str(&format!("r {r} {count}\n"));
                }
            }
            out.push_str(&format!("total {}\n", dist.total()));
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Table {
            q,
            n,
            d,
            k,
            registry,
            format,
        } => {
            let reg = load_registry(registry)?;
            let qs = parse_list(&q).context("cannot parse --q")?;
            let ns = parse_ranges(&n).context("cannot parse --n")?;
            let mut rows = Vec::new();
            for &q in &qs {
                for &n in &ns {
                    let cert = best_bound(q, n, d, k, &reg)?;
                    rows.push((q, n, cert.value().to_string(), cert.rule_name()));
                }
            }
            match format {
                TableFormat::Csv => {
                    println!("q,n,d,k,value,rule");
                    for (q, n, value, rule) in rows {
                        println!("{q},{n},{d},{k},{value},{rule}");
                    }
                }
                TableFormat::Markdown => {
                    println!("| q | n | d | k | value | rule |");
                    println!("| - | - | - | - | - | - |");
                    for (q, n, value, rule) in rows {
                        println!("| {q} | {n} | {d} | {k} | {value} | {rule} |");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn evaluate_bound(
    q: u64,
    n: usize,
    d: usize,
    k: usize,
    rule: RuleArg,
    n1: Option<usize>,
    t: usize,
    orientation: Orientation,
    reg: &Registry,
) -> Result<Certificate> {
    let need_n1 =
        |n1: Option<usize>| n1.ok_or_else(|| anyhow!("this rule needs the --n1 split parameter"));
    let cert = match rule {
        RuleArg::Best => best_bound(q, n, d, k, reg)?,
        RuleArg::Registry => reg.lookup(q, n, d, k)?,
        RuleArg::Lmrd => bound_lifted_mrd(q, n, d, k)?,
        RuleArg::Improved => bound_improved_linkage(q, n, d, k, need_n1(n1)?, reg)?,
        RuleArg::Parallel => bound_parallel(q, n, d, k, need_n1(n1)?, t, orientation, reg)?,
        RuleArg::Rrmc => bound_rrmc(q, n, d, k, need_n1(n1)?, t, reg)?,
    };
    Ok(cert)
}

#[allow(clippy::too_many_arguments)]
fn run_construct(
    method: MethodArg,
    q: u64,
    k: usize,
    d: usize,
    n: Option<usize>,
    n1: Option<usize>,
    n2: Option<usize>,
    t: usize,
    base: &[PathBuf],
    cap: u64,
) -> Result<ConstantDimensionCode> {
    let (p, e) = prime_power_decompose(q)?;
    let spec = Arc::new(FieldSpec::new(p, e)?);
    if d == 0 || !d.is_multiple_of(2) {
        bail!("--d must be a positive even integer");
    }
    let need =
        |value: Option<usize>, flag: &str| value.ok_or_else(|| anyhow!("method needs --{flag}"));
    match method {
        MethodArg::Lmrd => {
            let n = need(n, "n")?;
            Ok(lifted_mrd(&spec, n, k, d, cap)?)
        }
        MethodArg::Linkage => {
            let (n1, n2) = (need(n1, "n1")?, need(n2, "n2")?);
            let u = base_code(&spec, base.first(), n1, k, d, cap)?;
            let q_words = gabidulin_words(&spec, k, n2, d / 2, cap)?;
            Ok(linkage(&u, &q_words, d / 2)?)
        }
        MethodArg::Parallel | MethodArg::ParallelT => {
            let (n1, n2) = (need(n1, "n1")?, need(n2, "n2")?);
            let t = match method {
                MethodArg::Parallel => 0,
                _ => t,
            };
            if n2 < t + k {
                bail!("shift t={t} leaves the n2 segment shorter than k={k}");
            }
            let u = base_code(&spec, base.first(), n1, k, d, cap)?;
            let v = base_code(&spec, base.get(1), n2 - t, k, d, cap)?;
            let q1 = gabidulin_words(&spec, k, n2, d / 2, cap)?;
            let gab2 = GabidulinCode::new(&spec, MrdCodeSpec::new(q, k, n1 + t, d / 2)?)?;
            let q2 = gab2.restricted_subcode(k - d / 2, cap)?;
            Ok(generalized_parallel_linkage(&u, &v, &q1, &q2, d, t)?)
        }
    }
}

/// Base code for a segment: an imported file when given, the whole space
/// when the segment length equals k, and a lifted MRD code otherwise.
fn base_code(
    spec: &Arc<FieldSpec>,
    file: Option<&PathBuf>,
    len: usize,
    k: usize,
    d: usize,
    cap: u64,
) -> Result<ConstantDimensionCode> {
    if let Some(path) = file {
        let reader = BufReader::new(
            File::open(path).with_context(|| format!("cannot open {}", path.display()))?,
        );
        let code =
            codefile::read_code(reader).with_context(|| format!("{}", path.display()))?;
        if code.spec() != spec {
            bail!("{}: base code field does not match q", path.display());
        }
        if code.ambient_dim() != len || code.dim() != k {
            bail!(
                "{}: base code is ({}, {})-dimensional, expected ({len}, {k})",
                path.display(),
                code.ambient_dim(),
                code.dim()
            );
        }
        return Ok(code);
    }
    if len == k {
        return Ok(ConstantDimensionCode::full_space(spec, k));
    }
    Ok(lifted_mrd(spec, len, k, d, cap)?)
}

fn gabidulin_words(
    spec: &Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    d: usize,
    cap: u64,
) -> Result<Vec<Matrix>> {
    let code = GabidulinCode::new(spec, MrdCodeSpec::new(spec.q(), rows, cols, d)?)?;
    let words = code.enumerate(cap)?.collect();
    Ok(words)
}

fn run_verify(path: &PathBuf, full: bool, sample: Option<u64>, seed: u64) -> Result<ExitCode> {
    let reader = BufReader::new(
        File::open(path).with_context(|| format!("cannot open {}", path.display()))?,
    );
    let (header, _, words) = codefile::read_code_raw(reader)?;
    let mode = if let Some(count) = sample {
        PairSampling::Seeded { count, seed }
    } else if full || words.len() <= FULL_VERIFY_DEFAULT_LIMIT {
        PairSampling::Full
    } else {
        bail!(
            "code has M={} codewords; pass --full for the exhaustive check or --sample N --seed S",
            words.len()
        );
    };
    let report = verify_subspaces_with_progress(&words, header.d, mode, true)?;
    print_report(&report);
    if report.ok {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn print_report(report: &VerifyReport) {
    if let Some(v) = &report.violating_pair {
        println!("FAIL pair={},{} distance={}", v.i, v.j, v.distance);
    } else {
        match report.observed_min_distance {
            Some(d) => println!("ok min_distance={d}"),
            None => println!("ok min_distance=none"),
        }
    }
}

fn load_registry(path: Option<PathBuf>) -> Result<Registry> {
    let path = path.or_else(|| std::env::var_os(REGISTRY_ENV).map(PathBuf::from));
    match path {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("cannot read registry {}", path.display()))?;
            Ok(Registry::parse(&text).with_context(|| format!("{}", path.display()))?)
        }
        None => Ok(Registry::builtin()),
    }
}

fn parse_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.trim().parse::<u64>().map_err(|e| anyhow!("{s:?}: {e}")))
        .collect()
}

/// Comma-separated values or inclusive ranges: `12`, `8-13`, `8..13`.
fn parse_ranges(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in text.split(',').filter(|s| !s.is_empty()) {
        let item = item.trim();
        let bounds: Option<(&str, &str)> = item.split_once("..").or_else(|| item.split_once('-'));
        match bounds {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|e| anyhow!("{item:?}: {e}"))?;
                let hi: usize = hi.trim().parse().map_err(|e| anyhow!("{item:?}: {e}"))?;
                out.extend(lo..=hi);
            }
            None => out.push(item.parse().map_err(|e| anyhow!("{item:?}: {e}"))?),
        }
    }
    Ok(out)
}
