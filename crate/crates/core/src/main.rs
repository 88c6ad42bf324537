use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use almost_convex::ball::{GroupModel, DEFAULT_ELEMENT_CAP};
use almost_convex::cache::{cache_dir, cache_path, load_or_build, GroupSpec};
use almost_convex::error::{Error, Result};
use almost_convex::geodesic::{geodesic_length, normalize_with, Orientation};
use almost_convex::scan::{scan_ball, ScanReport};
use almost_convex::stallings::Stallings;
use almost_convex::witness::{
    build_case, verify_bs1q_notmac, verify_case, verify_notpac, verify_stallings_witness, CaseParams,
};
use almost_convex::words::{GenAlphabet, Word};

#[derive(Parser)]
#[command(name = "almost-convex", version, about = "Convexity experiments in BS(1,q) and Stallings' group")]
struct Cli {
    /// Element cap for ball construction.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP, value_parser = parse_cap)]
    cap: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Allow Stallings balls beyond radius 4.
    #[arg(long, global = true)]
    big: bool,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build or load B(r) and print sphere sizes.
    Ball {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        r: u32,
    },
    /// Bridging lengths for close sphere points, r_lo..=r.
    Scan {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        r_lo: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check one of the non-convexity witnesses.
    Witness {
        #[command(subcommand)]
        which: WitnessCmd,
    },
    /// Build and verify a bridging-path instance in BS(1,2).
    Case(Box<CaseArgs>),
    /// Geodesic length of a word in BS(1,q).
    Length {
        #[arg(long, default_value = "bs:q=2")]
        group: GroupSpec,
        #[arg(long)]
        word: String,
    },
    /// Normal form of a geodesic word in BS(1,q).
    Normalize {
        #[arg(long, default_value = "bs:q=2")]
        group: GroupSpec,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = OrientationArg::Pn)]
        orientation: OrientationArg,
    },
}

#[derive(Subcommand)]
enum WitnessCmd {
    Notpac {
        #[arg(long)]
        n: u32,
    },
    Bs1q {
        #[arg(long, default_value_t = 7)]
        q: u32,
        #[arg(long)]
        n: u32,
    },
    Stallings {
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
}

#[derive(Args)]
struct CaseArgs {
    #[arg(long)]
    id: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Smallest randomly drawn size parameter.
    #[arg(long, default_value_t = 2)]
    min_size: i64,
    /// Largest randomly drawn size parameter.
    #[arg(long, default_value_t = 30)]
    max_size: i64,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    f1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    i: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    i1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    i2: Option<i64>,
    #[arg(long)]
    v: Option<String>,
    #[arg(long)]
    w2: Option<String>,
    #[arg(long)]
    w3: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Ndjson,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Pn,
    Np,
}

fn parse_cap(s: &str) -> std::result::Result<usize, String> {
    let cap: usize = s.parse().map_err(|e| format!("{e}"))?;
    if cap < 1000 {
        return Err("cap must be at least 1000".into());
    }
    Ok(cap)
}

/// Output text plus whether every asserted check held.
struct Outcome {
    text: String,
    ok: bool,
}

fn json<T: Serialize>(value: &T, ok: bool) -> Result<Outcome> {
    Ok(Outcome { text: serde_json::to_string_pretty(value)? + "\n", ok })
}

fn bs_word(text: &str) -> Result<Word> {
    Word::parse(text, &GenAlphabet::bs())
}

fn bs_only(group: GroupSpec) -> Result<almost_convex::bs::BsParams> {
    match group {
        GroupSpec::Bs(p) => Ok(p),
        GroupSpec::Stallings => Err(Error::InvalidParams("this command needs a group bs:q=K".into())),
    }
}

/// Largest Stallings radius built without `--big`.
const STALLINGS_SMALL_RADIUS: u32 = 4;

fn stallings_radius(r: u32, big: bool) -> Result<()> {
    if r > STALLINGS_SMALL_RADIUS && !big {
        return Err(Error::InvalidParams(format!("Stallings ball of radius {r} needs --big")));
    }
    Ok(())
}

fn ball_table<M: GroupModel>(model: &M, r: u32, cap: usize) -> Result<Outcome> {
    let dir = cache_dir();
    let (ball, hit) = load_or_build(&dir, model, r, cap)?;
    let mut text = format!("# {} r={} elements={}\n", model.descriptor(), r, ball.len());
    text += "r,sphere\n";
    for (k, n) in ball.sphere_sizes().iter().enumerate() {
        writeln!(text, "{k},{n}").expect("string write");
    }
    let path = cache_path(&dir, &model.descriptor(), r);
    eprintln!("{} {}", if hit { "loaded" } else { "wrote" }, path.display());
    Ok(Outcome { text, ok: true })
}

fn scan_table<M: GroupModel>(model: &M, r_lo: u32, r: u32, cap: usize, format: Format) -> Result<Outcome> {
    let (ball, _) = load_or_build(&cache_dir(), model, r, cap)?;
    let report = scan_ball(model, &ball, r_lo, r);
    let text = match format {
        Format::Csv => report.to_csv(),
        Format::Ndjson => report
            .rows
            .iter()
            .map(|row| serde_json::to_string(row).map(|s| s + "\n"))
            .collect::<serde_json::Result<String>>()?,
        Format::Text => scan_text(&report),
    };
    Ok(Outcome { text, ok: true })
}

fn scan_text(report: &ScanReport) -> String {
    let mut out = format!("{}\n", report.group);
    for row in &report.rows {
        let f = row.fmax.map(|f| f.to_string()).unwrap_or_else(|| "-".into());
        writeln!(out, "r={:<3} fmax={:<4} 2r-2={:<4} pairs={}", row.r, f, 2 * row.r - 2, row.pairs)
            .expect("string write");
    }
    if let Some(r0) = report.r0_mprime() {
        writeln!(out, "fmax <= 2r-2 from r={r0}").expect("string write");
    }
    out
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.cmd {
        Cmd::Ball { group, r } => match *group {
            GroupSpec::Bs(p) => ball_table(&p, *r, cli.cap),
            GroupSpec::Stallings => {
                stallings_radius(*r, cli.big)?;
                ball_table(&Stallings, *r, cli.cap)
            }
        },
        Cmd::Scan { group, r, r_lo, format } => match *group {
            GroupSpec::Bs(p) => scan_table(&p, *r_lo, *r, cli.cap, *format),
            GroupSpec::Stallings => {
                stallings_radius(*r, cli.big)?;
                scan_table(&Stallings, *r_lo, *r, cli.cap, *format)
            }
        },
        Cmd::Witness { which } => match which {
            WitnessCmd::Notpac { n } => {
                let rep = verify_notpac(*n, cli.cap)?;
                json(&rep, rep.passed())
            }
            WitnessCmd::Bs1q { q, n } => {
                let rep = verify_bs1q_notmac(*q, *n, cli.cap)?;
                json(&rep, rep.passed())
            }
            WitnessCmd::Stallings { n } => {
                stallings_radius(2 * n + 2, cli.big)?;
                let rep = verify_stallings_witness(*n, cli.cap)?;
                json(&rep, rep.passed())
            }
        },
        Cmd::Case(a) => {
            let word = |w: &Option<String>| w.as_deref().map(bs_word).transpose();
            let params = CaseParams {
                p: a.p,
                l: a.l,
                f1: a.f1,
                k: a.k,
                m: a.m,
                i: a.i,
                j: a.j,
                i1: a.i1,
                i2: a.i2,
                v: word(&a.v)?,
                w2: word(&a.w2)?,
                w3: word(&a.w3)?,
            };
            let cw = build_case(&a.id, &params, a.seed, a.min_size..=a.max_size)?;
            let rep = verify_case(&cw);
            json(&rep, rep.passed())
        }
        Cmd::Length { group, word } => {
            let p = bs_only(*group)?;
            let g = p.eval(&bs_word(word)?);
            Ok(Outcome { text: format!("{}\n", geodesic_length(&g, &p)), ok: true })
        }
        Cmd::Normalize { group, word, orientation } => {
            let p = bs_only(*group)?;
            let o = match orientation {
                OrientationArg::Pn => Orientation::Pn,
                OrientationArg::Np => Orientation::Np,
            };
            match normalize_with(&bs_word(word)?, &p, o) {
                Ok(nf) => Ok(Outcome { text: format!("{nf}\nclass {}\n", nf.class), ok: true }),
                Err(e @ Error::NotGeodesic { .. }) => Ok(Outcome { text: format!("{e}\n"), ok: false }),
                Err(e) => Err(e),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text),
        None => {
            print!("{}", outcome.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
