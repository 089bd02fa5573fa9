//! Command-line interface: exact-arithmetic analyses of (pro-p) group
//! presentations at finite truncation.
//!
//! Exit codes: 0 success, 1 analysis obstruction (torsion certificate, failed
//! diagram verdict, cd2 obstruction), 2 input error, 3 budget exhaustion.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use unipotent_lab::analysis::{
    one_relator_cd2_evidence, p_regularity_scan, qr_graded_scan, RunConfig,
};
use unipotent_lab::crossed::build_diagram;
use unipotent_lab::report;
use unipotent_lab::series::{
    dimension_quotient, magnus_expand, zassenhaus_index, CoefficientRing, MagnusMode, SeriesCtx,
};
use unipotent_lab::words::{parse_presentation, parse_word, Presentation};
use unipotent_lab::Error;

#[derive(Parser)]
#[command(
    name = "unipotent-lab",
    about = "Exact-arithmetic workbench for truncated prounipotent analyses of group presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WordArgs {
    /// The word, e.g. "[x,y] x^-2" (juxtaposition is multiplication).
    #[arg(long)]
    word: String,
    /// Space-separated generator names.
    #[arg(long, default_value = "x y")]
    generators: String,
    #[arg(long, default_value_t = 5)]
    cutoff: u32,
}

#[derive(Args)]
struct FileArgs {
    /// Presentation file.
    #[arg(long)]
    file: PathBuf,
    #[arg(long, default_value_t = 5)]
    cutoff: u32,
    /// Sample count for exact point checks.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here (atomically).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Magnus expansion of a word in the truncated free associative algebra.
    Expand {
        #[command(flatten)]
        word: WordArgs,
        /// Work over Z/p^e instead of the rationals.
        #[arg(long)]
        p: Option<u64>,
        /// Exponent e for Z/p^e.
        #[arg(long, default_value_t = 3)]
        precision: u32,
        /// Substitution mode: "one-plus-x" or "exponential".
        #[arg(long, default_value = "one-plus-x")]
        mode: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Zassenhaus filtration index of a word over F_p.
    Zindex {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order of the unit-group dimension quotient F/M_n by closure enumeration.
    Dimsub {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1 << 20)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the abelianized comparison diagram and report its verdicts.
    Diagram {
        #[command(flatten)]
        common: FileArgs,
    },
    /// Report the second homotopy object dimensions of a presentation.
    Pi2 {
        #[command(flatten)]
        common: FileArgs,
    },
    /// Quasirationality graded torsion scan.
    QrScan {
        #[command(flatten)]
        common: FileArgs,
    },
    /// p-regularity graded torsion scan.
    PRegular {
        #[command(flatten)]
        common: FileArgs,
    },
    /// One-relator cd=2 evidence pipeline.
    Cd2 {
        #[command(flatten)]
        common: FileArgs,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExhausted(_) => 3,
        _ => 2,
    }
}

fn split_names(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

fn load_presentation(path: &PathBuf) -> Result<Presentation, Error> {
    let text = std::fs::read_to_string(path)?;
    parse_presentation(&text)
}

fn write_out(out: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), Error> {
    if let Some(path) = out {
        report::write_atomic(path, value)?;
    }
    Ok(())
}

fn check_cutoff(c: u32) -> Result<(), Error> {
    RunConfig { cutoff: c, ..RunConfig::default() }.validate()
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Expand { word, p, precision, mode, out } => {
            check_cutoff(word.cutoff)?;
            let names = split_names(&word.generators);
            let w = parse_word(&word.word, &names)?;
            let ring = match p {
                None => CoefficientRing::Rationals,
                Some(p) => CoefficientRing::mod_pe(p, precision),
            };
            let mode = match mode.as_str() {
                "one-plus-x" => MagnusMode::OnePlusX,
                "exponential" => MagnusMode::Exponential,
                other => {
                    return Err(Error::Syntax {
                        line: 0,
                        col: 0,
                        msg: format!("unknown mode `{other}` (expected one-plus-x or exponential)"),
                    })
                }
            };
            let ctx = SeriesCtx::new(ring, word.cutoff, names.len());
            let s = magnus_expand(&w, &ctx, mode)?;
            println!("{}", s.render(&names));
            write_out(&out, &report::series_json(&s, &names))?;
            Ok(0)
        }
        Command::Zindex { word, p, out } => {
            check_cutoff(word.cutoff)?;
            let names = split_names(&word.generators);
            let w = parse_word(&word.word, &names)?;
            let idx = zassenhaus_index(&w, p, word.cutoff, names.len())?;
            println!("{idx}");
            write_out(&out, &report::zindex_json(&word.word, p, word.cutoff, &idx))?;
            Ok(0)
        }
        Command::Dimsub { rank, p, n, budget, out } => {
            let d = dimension_quotient(rank, p, n, budget)?;
            println!("order = {p}^{}", d.order_log_p);
            write_out(&out, &report::dimsub_json(rank, p, n, d.order_log_p))?;
            Ok(0)
        }
        Command::Diagram { common } => {
            check_cutoff(common.cutoff)?;
            let pres = load_presentation(&common.file)?;
            let r = build_diagram(&pres, common.cutoff, common.samples, common.seed)?;
            for w in &r.frattini_warnings {
                eprintln!("warning: {w}");
            }
            println!(
                "C-bar dims {:?}; R-bar dims {:?}; u2 dims {:?}",
                r.cbar_dims, r.rbar_dims, r.u2_dims
            );
            println!(
                "commutative: {}; exact rows: {}; freeness: {}",
                r.commutative, r.exact_rows, r.freeness
            );
            write_out(&common.out, &report::diagram_json(&r))?;
            Ok(if r.commutative && r.exact_rows && r.freeness { 0 } else { 1 })
        }
        Command::Pi2 { common } => {
            check_cutoff(common.cutoff)?;
            let pres = load_presentation(&common.file)?;
            let r = build_diagram(&pres, common.cutoff, common.samples, common.seed)?;
            println!("pi2 truncation dims (degrees 1..{}): {:?}", r.cutoff, r.pi2_dims);
            for (d, b) in &r.u2_basis {
                println!("  degree {d}: {b}");
            }
            write_out(&common.out, &report::diagram_json(&r))?;
            Ok(0)
        }
        Command::QrScan { common } => {
            check_cutoff(common.cutoff)?;
            let pres = load_presentation(&common.file)?;
            let r = qr_graded_scan(&pres, common.cutoff)?;
            let v = report::torsion_json(&r);
            println!("{}", v["verdict"].as_str().unwrap_or_default());
            write_out(&common.out, &v)?;
            Ok(if r.torsion_found() { 1 } else { 0 })
        }
        Command::PRegular { common } => {
            check_cutoff(common.cutoff)?;
            let pres = load_presentation(&common.file)?;
            let r = p_regularity_scan(&pres, common.cutoff)?;
            let v = report::torsion_json(&r);
            println!("{}", v["verdict"].as_str().unwrap_or_default());
            write_out(&common.out, &v)?;
            Ok(if r.torsion_found() { 1 } else { 0 })
        }
        Command::Cd2 { common } => {
            let pres = load_presentation(&common.file)?;
            let cfg = RunConfig {
                cutoff: common.cutoff,
                samples: common.samples,
                seed: common.seed,
                ..RunConfig::default()
            };
            let r = one_relator_cd2_evidence(&pres, &cfg)?;
            println!("{}", r.verdict);
            write_out(&common.out, &report::cd2_json(&r))?;
            Ok(if r.obstruction_degree.is_none() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
