//! Command line driver: catalog listing, batch measurement runs with JSON or
//! CSV reports, the built-in verification suite, and a standalone exerciser
//! for the rational fixed-space solver.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use finpair::algebra::{
    classify_twist, fixed_space_dim, random_invertible, RatMat, TwistKind,
};
use finpair::report::{render_csv, render_json, run_batch, Caps, RunConfig};
use finpair::sympair::catalog;
use finpair::verify::{render_table, run_suite};
use finpair::Error;

#[derive(Parser)]
#[command(
    name = "finpair",
    version,
    about = "Double cosets, Hecke algebras, and multiplicity bounds for symmetric pairs \
             of matrix groups over small finite fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the built-in pair families
    Pairs,
    /// Run the measurement pipeline over a (pair, q) grid and write reports
    Run(RunArgs),
    /// Run the built-in verification suite and print claim vs measured
    Verify,
    /// Exercise the rational fixed-space solver on reference and random inputs
    Algebra(AlgebraArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Pair id, repeatable; defaults to the whole catalog
    #[arg(long = "pair")]
    pair: Vec<String>,
    /// Field sizes, comma separated; defaults to 3
    #[arg(long = "q", value_delimiter = ',')]
    q: Vec<u64>,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Seed echoed into the report config
    #[arg(long)]
    seed: Option<u64>,
    /// Group enumeration cap
    #[arg(long = "cap-group")]
    cap_group: Option<u64>,
    /// Double coset cap
    #[arg(long = "cap-cosets")]
    cap_cosets: Option<usize>,
    /// TOML config file; command line flags win on conflict
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Matrix rank, at least 2
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Number of random trials
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Random seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

/// Optional settings accepted from a TOML file.  Every field can also be set
/// by a flag, and flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    pairs: Option<Vec<String>>,
    qs: Option<Vec<u64>>,
    out: Option<PathBuf>,
    format: Option<String>,
    seed: Option<u64>,
    cap_group: Option<u64>,
    cap_cosets: Option<usize>,
    suite: Option<bool>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Pairs => cmd_pairs(),
        Cmd::Run(args) => cmd_run(args),
        Cmd::Verify => cmd_verify(),
        Cmd::Algebra(args) => cmd_algebra(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn cmd_pairs() -> Result<ExitCode, Error> {
    for entry in catalog() {
        println!(
            "{:<16} {:<10} {}",
            entry.id,
            if entry.trusted { "trusted" } else { "untrusted" },
            entry.description
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, Error> {
    let file: FileConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {}", path.display(), e)))?
        }
        None => FileConfig::default(),
    };

    let pairs = if !args.pair.is_empty() {
        args.pair
    } else {
        file.pairs
            .unwrap_or_else(|| catalog().iter().map(|e| e.id.to_string()).collect())
    };
    let qs = if !args.q.is_empty() {
        args.q
    } else {
        file.qs.unwrap_or_else(|| vec![3])
    };
    let out = args.out.or(file.out);
    let format = match args.format {
        Some(f) => f,
        None => match file.format.as_deref() {
            None | Some("json") => FormatArg::Json,
            Some("csv") => FormatArg::Csv,
            Some(other) => {
                return Err(Error::Config(format!(
                    "unknown format {:?}, expected json or csv",
                    other
                )))
            }
        },
    };
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let cap_group = args.cap_group.or(file.cap_group).unwrap_or(Caps::default().group);
    let cap_cosets = args
        .cap_cosets
        .or(file.cap_cosets)
        .unwrap_or(Caps::default().cosets);
    let suite = file.suite.unwrap_or(false);

    if pairs.is_empty() {
        return Err(Error::Config("no pairs selected".into()));
    }
    if qs.is_empty() {
        return Err(Error::Config("no field sizes selected".into()));
    }
    if cap_group == 0 || cap_cosets == 0 {
        return Err(Error::Config("caps must be positive".into()));
    }
    for &q in &qs {
        let (p, _) = finpair::ff::factor_prime_power(q)?;
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
    }

    let config = RunConfig {
        pairs,
        qs,
        seed,
        cap_group,
        cap_cosets,
    };
    let started = Instant::now();
    let (doc, err) = run_batch(&config);
    eprintln!(
        "{} report(s) in {} ms",
        doc.reports.len(),
        started.elapsed().as_millis()
    );

    let rendered = match format {
        FormatArg::Json => render_json(&doc),
        FormatArg::Csv => render_csv(&doc)?,
    };
    match &out {
        Some(path) => {
            std::fs::write(path, rendered)?;
            eprintln!("wrote {} report(s) to {}", doc.reports.len(), path.display());
        }
        None => print!("{}", rendered),
    }

    if let Some(e) = err {
        eprintln!("error: {}", e);
        return Ok(ExitCode::from(e.exit_code() as u8));
    }
    if suite {
        let summary = run_suite()?;
        eprint!("{}", render_table(&summary));
        if !summary.all_pass() {
            return Ok(ExitCode::from(4));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify() -> Result<ExitCode, Error> {
    let summary = run_suite()?;
    print!("{}", render_table(&summary));
    if summary.all_pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(4))
    }
}

fn kind_str(k: TwistKind) -> &'static str {
    match k {
        TwistKind::Symmetric => "symmetric",
        TwistKind::Skew => "skew",
        TwistKind::NotInvolution => "not-involution",
    }
}

fn cmd_algebra(args: AlgebraArgs) -> Result<ExitCode, Error> {
    let n = args.n;
    if n < 2 {
        return Err(Error::Config(format!("rank must be at least 2, got {}", n)));
    }
    let id = RatMat::identity(n);
    println!(
        "reference identity: dim {} ({})",
        fixed_space_dim(&id)?,
        kind_str(classify_twist(&id)?)
    );
    if n % 2 == 0 {
        let mut j = RatMat::zero(n);
        for i in 0..n / 2 {
            j.set(i, n / 2 + i, num::BigRational::from_integer(1.into()));
            j.set(n / 2 + i, i, num::BigRational::from_integer((-1).into()));
        }
        println!(
            "reference skew form: dim {} ({})",
            fixed_space_dim(&j)?,
            kind_str(classify_twist(&j)?)
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut min_dim = usize::MAX;
    let mut max_dim = 0usize;
    for t in 0..args.trials {
        let g = random_invertible(n, &mut rng);
        let d = fixed_space_dim(&g)?;
        let k = classify_twist(&g)?;
        min_dim = min_dim.min(d);
        max_dim = max_dim.max(d);
        println!("trial {:>4}: dim {:>3} ({})", t, d, kind_str(k));
    }
    if args.trials > 0 {
        println!(
            "summary: {} trials at n = {}, dims in {}..={}, ceiling n(n+1)/2 = {}",
            args.trials,
            n,
            min_dim,
            max_dim,
            n * (n + 1) / 2
        );
    }
    Ok(ExitCode::SUCCESS)
}
