//! Batch command-line interface over the derivation-algebra library.
//!
//! Exit codes: 0 for success (including a certified verdict), 1 for a
//! mathematical rejection (verification failed, a screening check failed,
//! normalization impossible), 2 for malformed or inconsistent input.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use unitri_core::{
    check_homomorphism, check_injectivity, derived_length, dimension, endo_from_automorphism,
    endo_from_exp_ad, image_rank, normalize, parse_automorphism, parse_derivation,
    parse_endomorphism, parse_polynomial, parse_spanners, random_automorphism, scan_max_index,
    verify_theorem, write_endomorphism, FiltrationBasis, SpannedSubalgebra,
    DEFAULT_NILPOTENCY_CAP,
};

#[derive(Parser)]
#[command(
    name = "unitri",
    version,
    about = "Exact computation in the Lie algebra of unitriangular polynomial derivations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lie bracket of two derivations
    Bracket {
        /// First derivation, e.g. "d1 + x1 d2"
        d: String,
        /// Second derivation
        e: String,
        /// Ambient variable count (default: inferred from the inputs)
        #[arg(long)]
        n: Option<usize>,
    },
    /// Apply a derivation to a polynomial
    Apply {
        /// Derivation to apply
        d: String,
        /// Polynomial argument, e.g. "3/2 x1^2 x3 - x2"
        p: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Apply the exponential of the adjoint operator of g to a derivation
    ExpAd {
        /// Adjoint generator g
        g: String,
        /// Derivation the series acts on
        d: String,
        /// Iteration bound for the nilpotency search
        #[arg(long, default_value_t = DEFAULT_NILPOTENCY_CAP)]
        cap: usize,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Conjugate a derivation by a triangular automorphism
    Act {
        /// File in the automorphism line format (xK -> c xK + tail)
        #[arg(long)]
        sigma: PathBuf,
        /// Derivation to conjugate
        d: String,
        /// Act by the inverse automorphism instead
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Position of the first nonzero coefficient of a derivation
    IdealIndex {
        d: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Dimension of the level-d filtration space for n variables
    DimN { n: usize, d: u32 },
    /// Basis indices of the level-d filtration space, one per line
    Basis { n: usize, d: u32 },
    /// Derived length of the subalgebra spanned by a file of derivations
    DerivedLength {
        /// File with one derivation per line
        #[arg(long)]
        spanners: PathBuf,
        /// Level bound the spanners must satisfy
        #[arg(long)]
        budget: u32,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Build an endomorphism file from an automorphism, an adjoint
    /// exponential, or a random automorphism
    MakeEndo {
        /// Automorphism file to restrict to the level
        #[arg(long)]
        sigma: Option<PathBuf>,
        /// Adjoint generator expression for exp(ad g)
        #[arg(long = "exp-ad", value_name = "DERIVATION")]
        exp_ad: Option<String>,
        /// Generate a random automorphism (requires --n)
        #[arg(long)]
        random_sigma: bool,
        /// Filtration level of the domain
        #[arg(long)]
        level: u32,
        #[arg(long)]
        n: Option<usize>,
        /// RNG seed for --random-sigma
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Total degree bound for random tails
        #[arg(long, default_value_t = 2)]
        tail_degree: u32,
        /// Term count bound for random tails
        #[arg(long, default_value_t = 2)]
        tail_terms: usize,
        /// Iteration bound for the nilpotency search (--exp-ad only)
        #[arg(long, default_value_t = DEFAULT_NILPOTENCY_CAP)]
        cap: usize,
        /// Write the endomorphism file here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the source automorphism in its line format
        #[arg(long)]
        sigma_out: Option<PathBuf>,
    },
    /// Screen an endomorphism file: bracket compatibility and injectivity
    CheckEndo {
        #[arg(long)]
        endo: PathBuf,
    },
    /// Factor an endomorphism file through its normalizing automorphism
    Normalize {
        #[arg(long)]
        endo: PathBuf,
        /// Write the normalizing automorphism here (also printed)
        #[arg(long)]
        sigma_out: Option<PathBuf>,
        /// Write the normalized endomorphism file here
        #[arg(long)]
        psi_out: Option<PathBuf>,
    },
    /// Run the full certification pipeline on an endomorphism file
    Verify {
        #[arg(long)]
        endo: PathBuf,
        /// Highest sublevel to rank-certify (default: half the level)
        #[arg(long)]
        budget: Option<u32>,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
}

enum CliError {
    Core(unitri_core::Error),
    Msg(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Msg(m) => write!(f, "{m}"),
        }
    }
}

impl From<unitri_core::Error> for CliError {
    fn from(e: unitri_core::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Msg(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> CliResult<()> {
    fs::write(path, content)
        .map_err(|e| CliError::Msg(format!("cannot write {}: {e}", path.display())))
}

/// Ambient variable count: the explicit `--n` when given (cross-checked
/// against the inputs), otherwise the largest index mentioned anywhere.
fn infer_n(explicit: Option<usize>, sources: &[&str]) -> CliResult<usize> {
    let scanned = sources.iter().map(|s| scan_max_index(s)).max().unwrap_or(0);
    match explicit {
        Some(0) => Err(CliError::Msg("--n must be at least 1".into())),
        Some(n) if n < scanned => Err(CliError::Msg(format!(
            "--n {n} is smaller than the largest variable index {scanned} in the input"
        ))),
        Some(n) => Ok(n),
        None if scanned >= 1 => Ok(scanned),
        None => Err(CliError::Msg(
            "cannot infer the variable count from the input; pass --n".into(),
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CliResult<ExitCode> {
    match command {
        Command::Bracket { d, e, n } => {
            let n = infer_n(n, &[&d, &e])?;
            let d = parse_derivation(&d, n)?;
            let e = parse_derivation(&e, n)?;
            println!("{}", d.bracket(&e)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Apply { d, p, n } => {
            let n = infer_n(n, &[&d, &p])?;
            let d = parse_derivation(&d, n)?;
            let p = parse_polynomial(&p, n)?;
            println!("{}", d.apply(&p)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::ExpAd { g, d, cap, n } => {
            let n = infer_n(n, &[&g, &d])?;
            let g = parse_derivation(&g, n)?;
            let d = parse_derivation(&d, n)?;
            println!("{}", g.exp_ad(&d, cap)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Act { sigma, d, inverse, n } => {
            let text = read_file(&sigma)?;
            let n = infer_n(n, &[&text, &d])?;
            let sigma = parse_automorphism(&text, n)?;
            let d = parse_derivation(&d, n)?;
            let out = if inverse {
                sigma.act_by_inverse(&d)?
            } else {
                sigma.act_on_derivation(&d)?
            };
            println!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::IdealIndex { d, n } => {
            let n = infer_n(n, &[&d])?;
            println!("{}", parse_derivation(&d, n)?.ideal_index());
            Ok(ExitCode::SUCCESS)
        }
        Command::DimN { n, d } => {
            println!("{}", dimension(n, d)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Basis { n, d } => {
            let basis = FiltrationBasis::enumerate(n, d)?;
            for idx in basis.elements() {
                println!("{idx}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::DerivedLength { spanners, budget, n } => {
            let text = read_file(&spanners)?;
            let n = infer_n(n, &[&text])?;
            let list = parse_spanners(&text, n)?;
            let s = SpannedSubalgebra::new(n, list)?;
            println!("{}", derived_length(&s, budget)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::MakeEndo {
            sigma,
            exp_ad,
            random_sigma,
            level,
            n,
            seed,
            tail_degree,
            tail_terms,
            cap,
            out,
            sigma_out,
        } => {
            let chosen =
                usize::from(sigma.is_some()) + usize::from(exp_ad.is_some()) + usize::from(random_sigma);
            if chosen != 1 {
                return Err(CliError::Msg(
                    "pass exactly one of --sigma, --exp-ad, --random-sigma".into(),
                ));
            }
            let (map, sigma_text) = if let Some(path) = sigma {
                let text = read_file(&path)?;
                let n = infer_n(n, &[&text])?;
                let s = parse_automorphism(&text, n)?;
                (endo_from_automorphism(&s, level)?, Some(s.to_string()))
            } else if let Some(expr) = exp_ad {
                let n = infer_n(n, &[&expr])?;
                let g = parse_derivation(&expr, n)?;
                (endo_from_exp_ad(&g, level, cap)?, None)
            } else {
                let n = n.ok_or_else(|| CliError::Msg("--random-sigma requires --n".into()))?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let s = random_automorphism(&mut rng, n, tail_degree, tail_terms);
                (endo_from_automorphism(&s, level)?, Some(s.to_string()))
            };
            if let Some(path) = sigma_out {
                match &sigma_text {
                    Some(text) => write_file(&path, text)?,
                    None => {
                        return Err(CliError::Msg(
                            "--sigma-out requires an automorphism source".into(),
                        ))
                    }
                }
            }
            let text = write_endomorphism(&map);
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckEndo { endo } => {
            let map = parse_endomorphism(&read_file(&endo)?)?;
            let level = map.level();
            match check_homomorphism(&map)? {
                Some(violation) => {
                    println!("homomorphism: violated");
                    println!("  {violation}");
                    Ok(ExitCode::from(1))
                }
                None => {
                    println!("homomorphism: ok");
                    let rank = image_rank(&map, level)?;
                    let dim = map.domain().len();
                    if check_injectivity(&map, level)? {
                        println!("injectivity at level {level}: ok (rank {rank}, dim {dim})");
                        Ok(ExitCode::SUCCESS)
                    } else {
                        println!("injectivity at level {level}: FAILED (rank {rank}, dim {dim})");
                        Ok(ExitCode::from(1))
                    }
                }
            }
        }
        Command::Normalize { endo, sigma_out, psi_out } => {
            let map = parse_endomorphism(&read_file(&endo)?)?;
            match normalize(&map) {
                Ok((sigma, psi)) => {
                    let sigma_text = sigma.to_string();
                    print!("{sigma_text}");
                    if let Some(path) = sigma_out {
                        write_file(&path, &sigma_text)?;
                    }
                    if let Some(path) = psi_out {
                        write_file(&path, &write_endomorphism(&psi))?;
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("rejected: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Verify { endo, budget, json } => {
            let map = parse_endomorphism(&read_file(&endo)?)?;
            let report = verify_theorem(&map, budget);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            if report.is_certified() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}
