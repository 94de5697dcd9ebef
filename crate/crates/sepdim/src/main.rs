use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sepdim::format::{
    family_to_string, read_certificate, read_family, read_plane, trace_to_string,
    write_certificate, write_family, FormatError,
};
use sepdim::parallel::{default_workers, search_parallel, separation_profile_parallel};
use sepdim::report;
use sepdim_core::certify::{certify_lower_bound, check_certificate, Verdict};
use sepdim_core::classify::classify_case;
use sepdim_core::construct::{build_perfect_family, g};
use sepdim_core::perm::Edge;
use sepdim_core::verify::{
    coverage_histogram_sampled, delta_balance, ksca_profile, separation_histogram_sampled,
    CoverageProfile, SeparationProfile,
};

/// Default ceiling on elementary membership checks before exhaustive
/// verification must be requested explicitly.
const EXHAUSTIVE_BUDGET: u128 = 1_000_000_000;

#[derive(Parser)]
#[command(
    name = "sepdim",
    version,
    about = "Construct, verify, classify, certify and search perfect separating families",
    after_help = "Exit status: 0 = property holds / certified / witness found, \
                  1 = property fails, 2 = usage or input error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WorkerOpts {
    /// Worker threads (default: available parallelism)
    #[arg(long, conflicts_with = "single_thread")]
    workers: Option<usize>,
    /// Force one worker; makes witness reporting deterministic
    #[arg(long)]
    single_thread: bool,
}

impl WorkerOpts {
    fn count(&self) -> usize {
        if self.single_thread {
            1
        } else {
            self.workers.unwrap_or_else(default_workers).max(1)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the perfect separating family for K_n and write it to a file
    Construct {
        /// Ground-set size (at least 3)
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        n: u64,
        /// Output family file
        #[arg(long)]
        out: PathBuf,
        /// Optional recursion trace file
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Verify a family file: perfection, k-sequence coverage, or balance
    Verify {
        /// Family file to verify
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_enum)]
        mode: VerifyMode,
        /// Sequence length for ksca mode (2..=4)
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Balance bound for delta mode
        #[arg(long, default_value_t = 0)]
        max_delta: u64,
        /// Run exhaustively even past the default work budget
        #[arg(long, conflicts_with = "sample")]
        exhaustive: bool,
        /// Verify a seeded uniform sample of this many subsets instead
        #[arg(long, requires = "seed")]
        sample: Option<u64>,
        /// Seed for sampled verification
        #[arg(long)]
        seed: Option<u64>,
        /// Write the report to this file as well as stdout
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        worker_opts: WorkerOpts,
    },
    /// Classify a disjoint edge pair against every class of a plane file
    Classify {
        /// Plane file
        #[arg(long)]
        plane: PathBuf,
        /// First edge, e.g. 1,2
        #[arg(value_parser = parse_pair)]
        e: Edge,
        /// Second edge, e.g. 3,5
        #[arg(value_parser = parse_pair)]
        f: Edge,
    },
    /// Check the two plane axioms of a plane file
    ValidatePlane {
        #[arg(long)]
        plane: PathBuf,
    },
    /// Produce a lower-bound certificate for a perfect family
    Certify {
        /// Family file (must verify as perfect)
        #[arg(long)]
        family: PathBuf,
        /// Output certificate file
        #[arg(long)]
        out: PathBuf,
    },
    /// Revalidate a certificate file against a family file
    CheckCertificate {
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Exhaustively determine the minimum perfect family size for small n
    Search {
        /// Ground-set size (4..=6)
        #[arg(long, value_parser = clap::value_parser!(u64).range(4..=6))]
        n: u64,
        /// Largest family size to try; must be a multiple of 3
        #[arg(long)]
        max_size: u64,
        /// Disable the counter-based pruning
        #[arg(long)]
        no_prune: bool,
        /// Write the witness family to this file when one is found
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Write the search report to this file as well as stdout
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        worker_opts: WorkerOpts,
    },
    /// Write the shipped fixture files into a directory
    Fixtures {
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    /// Constant separation count over all disjoint edge pairs
    Perfect,
    /// Constant coverage count over all ordered k-sequences
    Ksca,
    /// Separation counts within max-delta of each other, all positive
    Delta,
}

fn parse_pair(s: &str) -> Result<Edge, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b] = parts[..] else {
        return Err(format!("expected a pair like 1,2 — got {s:?}"));
    };
    let a: u32 = a.trim().parse().map_err(|_| format!("bad vertex {a:?}"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad vertex {b:?}"))?;
    Edge::new(a, b).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] sepdim_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Construct { n, out, trace } => cmd_construct(n as usize, &out, trace.as_deref()),
        Command::Verify {
            family,
            mode,
            k,
            max_delta,
            exhaustive,
            sample,
            seed,
            report,
            worker_opts,
        } => cmd_verify(
            &family,
            mode,
            k,
            max_delta,
            exhaustive,
            sample.map(|s| (s, seed.expect("clap enforces --seed"))),
            report.as_deref(),
            worker_opts.count(),
        ),
        Command::Classify { plane, e, f } => cmd_classify(&plane, e, f),
        Command::ValidatePlane { plane } => cmd_validate_plane(&plane),
        Command::Certify { family, out } => cmd_certify(&family, &out),
        Command::CheckCertificate { certificate, family } => {
            cmd_check_certificate(&certificate, &family)
        }
        Command::Search { n, max_size, no_prune, witness, report, worker_opts } => cmd_search(
            n as usize,
            max_size,
            !no_prune,
            witness.as_deref(),
            report.as_deref(),
            worker_opts.count(),
        ),
        Command::Fixtures { out_dir } => {
            for path in sepdim::fixtures::write_all(&out_dir)? {
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
    }
}

fn cmd_construct(
    n: usize,
    out: &std::path::Path,
    trace_path: Option<&std::path::Path>,
) -> Result<u8, CliError> {
    let (fam, trace) = build_perfect_family(n)?;
    write_family(out, &fam)?;
    if let Some(path) = trace_path {
        std::fs::write(path, trace_to_string(&trace))?;
    }
    let size = g(n as u64)?;
    println!("wrote a perfect separating family of K_{n} ({size} orders) to {}", out.display());
    println!("g={size}");
    if n >= 4 {
        println!("lambda={}", size / 3);
    } else {
        println!("lambda=vacuous");
    }
    println!("t={}", size / 6);
    Ok(0)
}

struct VerifyOutcome {
    report: String,
    holds: bool,
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    family: &std::path::Path,
    mode: VerifyMode,
    k: usize,
    max_delta: u64,
    exhaustive: bool,
    sample: Option<(u64, u64)>,
    report_path: Option<&std::path::Path>,
    workers: usize,
) -> Result<u8, CliError> {
    let fam = read_family(family)?;
    let n = fam.n() as u128;
    let members = fam.len() as u128;

    let work = match mode {
        VerifyMode::Perfect | VerifyMode::Delta => {
            if fam.n() >= 4 {
                n * (n - 1) * (n - 2) * (n - 3) / 8 * members
            } else {
                0
            }
        }
        VerifyMode::Ksca => {
            if k <= fam.n() {
                (0..k).map(|i| n - i as u128).product::<u128>() * members
            } else {
                0
            }
        }
    };
    if sample.is_none() && !exhaustive && work > EXHAUSTIVE_BUDGET {
        return Err(CliError::Usage(format!(
            "exhaustive verification needs about {work} membership checks, over the default \
             budget of {EXHAUSTIVE_BUDGET}; pass --exhaustive, or --sample <N> --seed <S>"
        )));
    }

    let outcome = match mode {
        VerifyMode::Perfect => {
            let (profile, sampled) = separation(&fam, sample, workers);
            VerifyOutcome {
                holds: profile.is_perfect(),
                report: report::separation_report(&profile, sampled),
            }
        }
        VerifyMode::Delta => {
            let (profile, sampled) = separation(&fam, sample, workers);
            let balance = sepdim_core::verify::DeltaBalance {
                delta: profile.delta(),
                separating: profile.is_separating(),
            };
            VerifyOutcome {
                holds: balance.delta <= max_delta && balance.separating,
                report: report::delta_report(&balance, max_delta, profile.pair_count, sampled),
            }
        }
        VerifyMode::Ksca => {
            let (profile, sampled) = match sample {
                Some((samples, seed)) => {
                    let hist = coverage_histogram_sampled(&fam, k, samples, seed)?;
                    (CoverageProfile::from_histogram(k, hist), Some(samples))
                }
                None => (ksca_profile(&fam, k)?, None),
            };
            VerifyOutcome {
                holds: profile.is_perfect(),
                report: report::coverage_report(&profile, sampled),
            }
        }
    };

    print!("{}", outcome.report);
    if let Some(path) = report_path {
        std::fs::write(path, &outcome.report)?;
    }
    Ok(if outcome.holds { 0 } else { 1 })
}

fn separation(
    fam: &sepdim_core::PermFamily,
    sample: Option<(u64, u64)>,
    workers: usize,
) -> (SeparationProfile, Option<u64>) {
    match sample {
        Some((samples, seed)) => (
            SeparationProfile::from_histogram(separation_histogram_sampled(fam, samples, seed)),
            Some(samples),
        ),
        None => (separation_profile_parallel(fam, workers), None),
    }
}

fn cmd_classify(plane_path: &std::path::Path, e: Edge, f: Edge) -> Result<u8, CliError> {
    let plane = read_plane(plane_path)?;
    let validation = plane.validate();
    if !validation.is_valid() {
        eprint!("{}", report::plane_validation_report(&validation));
        return Err(CliError::Usage("the plane file violates the plane axioms".into()));
    }
    let cls = classify_case(&plane, e, f)?;
    println!("pair {e}, {f} against a plane of order {}", plane.order());
    print!("{}", report::classification_report(&cls));
    Ok(if cls.case_id.is_some() { 0 } else { 1 })
}

fn cmd_validate_plane(plane_path: &std::path::Path) -> Result<u8, CliError> {
    let plane = read_plane(plane_path)?;
    let validation = plane.validate();
    print!("{}", report::plane_validation_report(&validation));
    Ok(if validation.is_valid() { 0 } else { 1 })
}

fn cmd_certify(family: &std::path::Path, out: &std::path::Path) -> Result<u8, CliError> {
    let fam = read_family(family)?;
    let cert = match certify_lower_bound(&fam) {
        Ok(cert) => cert,
        Err(
            err @ (sepdim_core::Error::NotPerfect
            | sepdim_core::Error::NoNonExtremalPair
            | sepdim_core::Error::Domain(_)),
        ) => {
            println!("not certifiable: {err}");
            return Ok(1);
        }
        Err(err) => return Err(err.into()),
    };
    write_certificate(out, &cert)?;
    print!("{}", report::certificate_report(&cert));
    println!("wrote certificate to {}", out.display());
    Ok(if cert.verdict == Verdict::Certified { 0 } else { 1 })
}

fn cmd_check_certificate(
    certificate: &std::path::Path,
    family: &std::path::Path,
) -> Result<u8, CliError> {
    let cert = read_certificate(certificate)?;
    let fam = read_family(family)?;
    let check = check_certificate(&cert, &fam);
    print!("{}", report::check_report(&check));
    Ok(if check.ok() { 0 } else { 1 })
}

fn cmd_search(
    n: usize,
    max_size: u64,
    prune: bool,
    witness_path: Option<&std::path::Path>,
    report_path: Option<&std::path::Path>,
    workers: usize,
) -> Result<u8, CliError> {
    if max_size % 3 != 0 {
        return Err(CliError::Usage(
            "—max-size must be a multiple of 3: each order separates exactly one pairing of \
             every 4-set, so perfect sizes are multiples of 3"
                .into(),
        ));
    }
    let result = search_parallel(n, max_size, prune, workers)?;
    let text = report::search_report(&result);
    print!("{text}");
    if let Some(path) = report_path {
        std::fs::write(path, &text)?;
    }
    if let Some(witness) = &result.witness {
        if let Some(path) = witness_path {
            write_family(path, witness)?;
            println!("wrote witness to {}", path.display());
        } else {
            print!("witness:\n{}", family_to_string(witness));
        }
    }
    Ok(if result.minimum.is_some() { 0 } else { 1 })
}
