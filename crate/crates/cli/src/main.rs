//! `hecke2`: command-line access to the series, Hecke operators, dihedral
//! tables, Hecke-algebra expansions and verification suites.
//!
//! Exit codes: 0 on success, 1 for usage or argument errors, 2 when a check
//! fails or a computed object violates a structural property.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hecke2_core::action::direct_image;
use hecke2_core::expalgebra::{decode, g};
use hecke2_core::gaussclasses::{default_generator, dihedral_basis, dihedral_bound};
use hecke2_core::heckealgebra::HeckeAlgebra;
use hecke2_core::heckeop::{apply_tp, apply_tp_int};
use hecke2_core::qexpansions::{build, verify_identities, SeriesName};
use hecke2_core::recursions::{t3_v, t5_w5_to_w1, t7_w5};
use hecke2_core::verify::{run_all, run_suite, Scale, SuiteReport};
use hecke2_core::{Error, Gf2Series, IntSeries, Level};
use serde_json::json;

#[derive(Parser)]
#[command(name = "hecke2", version, about = "Mod-2 Hecke operators of level 3")]
struct Cli {
    /// Output format: `exps` (the default dump), `bits` (series only) or `json`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Exps)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Exps,
    Bits,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print one of the series F, G, H, D, E, r.
    Series {
        name: SeriesName,
        #[arg(long)]
        trunc: usize,
    },
    /// Apply T_p to a series dump.
    Tp {
        #[arg(long)]
        p: u64,
        /// `trunc=N; exps=...`, or `trunc=N; coeffs=...` with --int.
        #[arg(long)]
        input: String,
        /// Characteristic-0 operator with the sign (-1/p).
        #[arg(long)]
        int: bool,
    },
    /// T_p of a single monomial by recursion: p = 7, 5 on D^n (n ≡ 5 mod 6), p = 3 on F^n.
    Tpw {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// Also compute the image by series arithmetic and compare.
        #[arg(long)]
        oracle_check: bool,
    },
    /// The monomial [a, b] with base^n = [a, b].
    Decode {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        level: u64,
    },
    /// The g-code g(n).
    G {
        #[arg(long)]
        n: u32,
    },
    /// The dihedral basis beta_1..beta_q (level 3) or alpha_0..alpha_(q-1) (level 1).
    Dihedral {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 3)]
        level: u64,
        /// Generator a + 2bi given as `a,b`.
        #[arg(long, value_parser = parse_gen)]
        gen: Option<(i64, i64)>,
    },
    /// The adapted basis m_(a,b), a + b <= r.
    Adapted {
        #[arg(long)]
        r: u32,
        /// `json` for machine-readable output.
        #[arg(long)]
        out: Option<String>,
    },
    /// T_p (p ≡ 1 mod 6) as a power series in X = T_7, Y = T_13.
    TpSeries {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        deg: usize,
    },
    /// lambda with T_5^2 = lambda^2, modulo (X, Y)^deg.
    Lambda {
        #[arg(long)]
        deg: usize,
    },
    /// t with T_p = t(X, Y) T_5 for p ≡ 5 mod 6.
    Cofactor {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        deg: usize,
    },
    /// Run verification suites.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// The fifteen q-expansion identities.
    Identities {
        #[arg(long, default_value_t = 1 << 14)]
        trunc: usize,
    },
    /// Every suite.
    All {
        #[arg(long, default_value = "quick")]
        scale: Scale,
    },
    /// A single suite by number (1 to 11).
    Suite {
        id: u8,
        #[arg(long, default_value = "quick")]
        scale: Scale,
    },
}

fn parse_gen(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected `a,b`")?;
    let a = a.trim().parse().map_err(|e| format!("a: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("b: {e}"))?;
    Ok((a, b))
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_consistency() {
            Failure::Check(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn series_output(s: &Gf2Series, format: Format) -> String {
    match format {
        Format::Exps => s.dump(),
        Format::Bits => s.bits(),
        Format::Json => json!({"trunc": s.trunc(), "exps": s.exponents().collect::<Vec<_>>()}).to_string(),
    }
}

fn int_output(s: &IntSeries, format: Format) -> String {
    match format {
        Format::Json => json!({"trunc": s.trunc(), "coeffs": s.coeffs()}).to_string(),
        _ => s.to_string(),
    }
}

fn emit<T: serde::Serialize + std::fmt::Display>(value: &T, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(value).expect("serializable"),
        _ => value.to_string(),
    }
}

fn report_output(reports: &[SuiteReport], format: Format) -> String {
    if format == Format::Json {
        return serde_json::to_string(reports).expect("serializable");
    }
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("{} {:>2} {}\n", if r.passed() { "PASS" } else { "FAIL" }, r.id, r.title));
        for c in &r.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            out.push_str(&format!("     {mark} {}", c.name));
            if !c.passed {
                out.push_str(&format!(": {}", c.detail));
            }
            out.push('\n');
        }
    }
    out.pop();
    out
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = cli.format;
    if format == Format::Bits && !matches!(cli.command, Command::Series { .. } | Command::Tp { .. }) {
        return Err(Failure::Usage("--format bits applies to series output only".into()));
    }
    Ok(match cli.command {
        Command::Series { name, trunc } => series_output(&build(name, trunc)?, format),
        Command::Tp { p, input, int } => {
            if int {
                let s: IntSeries = input.parse()?;
                int_output(&apply_tp_int(&s, p)?, format)
            } else {
                let s: Gf2Series = input.parse()?;
                series_output(&apply_tp(&s, p)?, format)
            }
        }
        Command::Tpw { p, n, oracle_check } => {
            let (image, level) = match p {
                3 => (t3_v(n)?, Level::One),
                5 => (t5_w5_to_w1(n)?, Level::Three),
                7 => (t7_w5(n)?, Level::Three),
                _ => return Err(Failure::Usage(format!("tpw supports p = 3, 5, 7, got {p}"))),
            };
            if oracle_check {
                let direct = direct_image(p, level, n)?;
                if direct != image {
                    return Err(Failure::Check(format!(
                        "recursion and series operator disagree on T_{p}: {image} vs {direct}"
                    )));
                }
            }
            emit(&image, format)
        }
        Command::Decode { n, level } => {
            let level = Level::from_number(level)?;
            let pair = decode(n, level)?;
            match format {
                Format::Json => json!({"n": n, "level": level.number(), "a": pair.a, "b": pair.b}).to_string(),
                _ => pair.to_string(),
            }
        }
        Command::G { n } => match format {
            Format::Json => json!({"n": n, "g": g(n)}).to_string(),
            _ => g(n).to_string(),
        },
        Command::Dihedral { q, level, gen } => {
            let level = Level::from_number(level)?;
            let gen = gen.unwrap_or_else(|| default_generator(level));
            let basis = dihedral_basis(q, gen, level, 2 * dihedral_bound(q, level))?;
            match format {
                Format::Json => serde_json::to_string(&basis).expect("serializable"),
                _ => basis.table().trim_end().to_string(),
            }
        }
        Command::Adapted { r, out } => {
            let basis = HeckeAlgebra::new().adapted_basis(r)?;
            let json_out = match out.as_deref() {
                None => format == Format::Json,
                Some("json") => true,
                Some(other) => return Err(Failure::Usage(format!("unknown --out `{other}` (expected json)"))),
            };
            if json_out {
                serde_json::to_string(&basis).expect("serializable")
            } else {
                basis
                    .vectors()
                    .iter()
                    .map(|(p, v)| format!("m_({},{}): {v}", p.a, p.b))
                    .collect::<Vec<_>>()
                    .join("\n")
            }
        }
        Command::TpSeries { p, deg } => emit(&HeckeAlgebra::new().tp_xy_series(p, deg)?, format),
        Command::Lambda { deg } => emit(&HeckeAlgebra::new().lambda_series(deg)?, format),
        Command::Cofactor { p, deg } => emit(&HeckeAlgebra::new().tp_t5_cofactor(p, deg)?, format),
        Command::Verify { what } => match what {
            VerifyCommand::Identities { trunc } => {
                let report = verify_identities(trunc)?;
                let text = match format {
                    Format::Json => json!({
                        "trunc": report.trunc,
                        "checks": report.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed})).collect::<Vec<_>>(),
                    })
                    .to_string(),
                    _ => report
                        .checks
                        .iter()
                        .map(|c| format!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name))
                        .collect::<Vec<_>>()
                        .join("\n"),
                };
                if !report.all_passed() {
                    println!("{text}");
                    return Err(Failure::Check("identity check failed".into()));
                }
                text
            }
            VerifyCommand::All { scale } => {
                let reports = run_all(scale);
                checked(report_output(&reports, format), &reports)?
            }
            VerifyCommand::Suite { id, scale } => {
                let reports = vec![run_suite(id, scale, &mut HeckeAlgebra::new())?];
                checked(report_output(&reports, format), &reports)?
            }
        },
    })
}

fn checked(text: String, reports: &[SuiteReport]) -> Result<String, Failure> {
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed == 0 {
        Ok(text)
    } else {
        println!("{text}");
        Err(Failure::Check(format!("{failed} suite(s) failed")))
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("HECKE2_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("HECKE2_THREADS must be a positive integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    match run(cli) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(2)
        }
    }
}
