//! The `vslink` command line.
//!
//! Exit codes: 0 success (including `equivalent=false`), 1 usage error,
//! 2 invalid input, 3 failed trace verification.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::cobordism::{
    is_string_link_cobordism, replay_trace, surface_stats, welded_unknot_trace, Trace,
};
use crate::diagram::GaussDiagram;
use crate::error::Error;
use crate::gsld::{parse_diagram, serialize_diagram};
use crate::invariants::{linking_vector, LinkingVector};
use crate::moves::Calculus;
use crate::normalize::{
    equivalent, inverse_sum, normalize_cobordism, normalize_unwelded_with, standard_form,
    trivialize_inverse_sum, NormalizeOptions,
};
use crate::oracle::{bfs_reachable, check_classification, random_diagram, SearchCaps};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TRACE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "vslink",
    version,
    about = "Gauss-diagram calculus for virtual string links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print strand and chord counts and the linking vector.
    Info { file: PathBuf },
    /// Rewrite to the standard form, recording the trace.
    Normalize { file: PathBuf },
    /// Decide equivalence of two diagrams.
    Equiv { first: PathBuf, second: PathBuf },
    /// Build the standard form for `--n` strands and `--lk`.
    Standard,
    /// Connected sum.
    Sum { first: PathBuf, second: PathBuf },
    /// Concordance inverse.
    Inverse { file: PathBuf },
    /// `D # inverse(D)` and its genus-zero trivialization.
    InverseSum { file: PathBuf },
    /// Closure into a link diagram.
    Closure { file: PathBuf },
    /// Replay a trace against an initial diagram.
    VerifyTrace,
    /// Welded concordance to the trivial 1-strand diagram.
    UnknotWelded { file: PathBuf },
    /// Random diagram from `--n`, `--chords` and `--seed`.
    Generate,
    /// Bounded breadth-first search of the move graph.
    OracleBfs {
        file: PathBuf,
        /// Diagrams whose reachability is reported.
        #[arg(long = "target")]
        targets: Vec<PathBuf>,
    },
    /// Sampled classification cross-check.
    Check,
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// unwelded | cobordism | welded-concordance (oracle-bfs also takes virtual | welded)
    #[arg(long, global = true)]
    calculus: Option<String>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    trace_out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[arg(long, global = true)]
    max_extra_chords: Option<usize>,
    #[arg(long, global = true)]
    max_closed: Option<usize>,
    #[arg(long, global = true)]
    max_states: Option<usize>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    chords: Option<usize>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Ordered linking numbers `v1,v2,...` in lexicographic pair order.
    #[arg(long, global = true, allow_hyphen_values = true)]
    lk: Option<String>,
    #[arg(long, global = true)]
    initial: Option<PathBuf>,
    #[arg(long, global = true)]
    trace: Option<PathBuf>,
    #[arg(long, global = true)]
    require_genus_zero: bool,
    #[arg(long, global = true)]
    require_string_link: bool,
    /// Search for R3-based expansions of mixed commutes.
    #[arg(long, global = true)]
    expand_mix: bool,
    /// TOML file with the same keys (snake_case); flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

/// Config-file settings; every key mirrors a flag.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    calculus: Option<String>,
    out: Option<PathBuf>,
    trace_out: Option<PathBuf>,
    seed: Option<u64>,
    depth: Option<usize>,
    max_extra_chords: Option<usize>,
    max_closed: Option<usize>,
    max_states: Option<usize>,
    n: Option<usize>,
    chords: Option<usize>,
    samples: Option<usize>,
    lk: Option<toml::Value>,
    initial: Option<PathBuf>,
    trace: Option<PathBuf>,
    require_genus_zero: Option<bool>,
    require_string_link: Option<bool>,
    expand_mix: Option<bool>,
}

enum Failure {
    Usage(String),
    Input(String),
    Trace(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Trace(t) => Failure::Trace(t.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Out<'a> = &'a mut dyn Write;

fn merge(mut f: Flags) -> Result<Flags, Failure> {
    let Some(path) = f.config.clone() else {
        return Ok(f);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let c: FileConfig =
        toml::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    macro_rules! fill {
        ($($k:ident),*) => { $( if f.$k.is_none() { f.$k = c.$k; } )* };
    }
    fill!(
        calculus,
        out,
        trace_out,
        seed,
        depth,
        max_extra_chords,
        max_closed,
        max_states,
        n,
        chords,
        samples,
        initial,
        trace
    );
    if f.lk.is_none() {
        f.lk = match c.lk {
            None => None,
            Some(toml::Value::String(s)) => Some(s),
            Some(toml::Value::Array(a)) => Some(
                a.iter()
                    .map(|v| v.as_integer().map(|x| x.to_string()))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Failure::Input("config: lk must hold integers".into()))?
                    .join(","),
            ),
            Some(_) => {
                return Err(Failure::Input(
                    "config: lk must be a string or an array".into(),
                ))
            }
        };
    }
    f.require_genus_zero |= c.require_genus_zero.unwrap_or(false);
    f.require_string_link |= c.require_string_link.unwrap_or(false);
    f.expand_mix |= c.expand_mix.unwrap_or(false);
    Ok(f)
}

fn read_diagram(path: &Path) -> Result<GaussDiagram, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_diagram(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_trace(path: &Path) -> Result<Trace, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Trace::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn io(e: std::io::Error) -> Failure {
    Failure::Input(format!("output: {e}"))
}

/// Write a diagram to `--out`, or to the output stream.
fn emit_diagram(d: &GaussDiagram, flags: &Flags, out: Out) -> Result<(), Failure> {
    let text = serialize_diagram(d)?;
    match &flags.out {
        Some(p) => write_file(p, &text),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

/// Write a trace to `--trace-out`, or to the output stream.
fn emit_trace(t: &Trace, flags: &Flags, out: Out) -> Result<(), Failure> {
    let text = t.to_string();
    match &flags.trace_out {
        Some(p) => write_file(p, &text),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

fn calculus(flags: &Flags, default: Calculus, allowed: &[Calculus]) -> Result<Calculus, Failure> {
    let cal = match &flags.calculus {
        None => default,
        Some(s) => s.parse::<Calculus>().map_err(Failure::Usage)?,
    };
    if !allowed.contains(&cal) {
        let names: Vec<&str> = allowed.iter().map(|c| c.name()).collect();
        return Err(Failure::Usage(format!(
            "--calculus must be one of {}",
            names.join(", ")
        )));
    }
    Ok(cal)
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn parse_lk(n: usize, s: &str) -> Result<LinkingVector, Failure> {
    let entries = if s.trim().is_empty() {
        Vec::new()
    } else {
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Failure::Usage(format!("--lk: bad entry `{x}`")))
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok(LinkingVector::new(n, entries)?)
}

fn print_lk(v: &LinkingVector, out: Out) -> Result<(), Failure> {
    for ((i, j), x) in v.iter() {
        writeln!(out, "lk[{i}->{j}]={x}").map_err(io)?;
    }
    Ok(())
}

fn run_command(cmd: Command, flags: Flags, out: Out) -> Result<(), Failure> {
    const DECIDABLE: [Calculus; 3] = [
        Calculus::Unwelded,
        Calculus::Cobordism,
        Calculus::WeldedConcordance,
    ];
    match cmd {
        Command::Info { file } => {
            let d = read_diagram(&file)?;
            writeln!(out, "strands={}", d.strands()).map_err(io)?;
            writeln!(out, "chords={}", d.chord_count()).map_err(io)?;
            writeln!(out, "closed={}", d.closed_count()).map_err(io)?;
            print_lk(&linking_vector(&d), out)?;
        }
        Command::Normalize { file } => {
            let cal = calculus(&flags, Calculus::Unwelded, &DECIDABLE)?;
            let d = read_diagram(&file)?;
            let (n, t) = match cal {
                Calculus::Unwelded => normalize_unwelded_with(
                    &d,
                    NormalizeOptions {
                        expand_mix: flags.expand_mix,
                    },
                )?,
                Calculus::Cobordism => normalize_cobordism(&d)?,
                _ => {
                    if d.strands() != 1 {
                        return Err(Failure::Input(format!(
                            "welded-concordance normalization needs a 1-strand diagram (got {}); no decision procedure is known for two or more strands",
                            d.strands()
                        )));
                    }
                    (GaussDiagram::empty(1), welded_unknot_trace(&d)?)
                }
            };
            emit_diagram(&n, &flags, out)?;
            if flags.trace_out.is_some() {
                emit_trace(&t, &flags, out)?;
            }
        }
        Command::Equiv { first, second } => {
            let cal = calculus(&flags, Calculus::Unwelded, &DECIDABLE)?;
            let (d1, d2) = (read_diagram(&first)?, read_diagram(&second)?);
            let e = equivalent(&d1, &d2, cal)?;
            writeln!(out, "equivalent={}", e.verdict).map_err(io)?;
            if let Some(((i, j), a, b)) = e.difference {
                writeln!(out, "differs=lk[{i}->{j}] {a} {b}").map_err(io)?;
            }
            if let Some(t) = &e.certificate {
                writeln!(out, "certificate_steps={}", t.len()).map_err(io)?;
                emit_trace(t, &flags, out)?;
            }
        }
        Command::Standard => {
            let n = need(flags.n, "n")?;
            let lk = parse_lk(n, flags.lk.as_deref().unwrap_or(""))?;
            emit_diagram(&standard_form(n, &lk)?, &flags, out)?;
        }
        Command::Sum { first, second } => {
            let s = read_diagram(&first)?.connected_sum(&read_diagram(&second)?)?;
            emit_diagram(&s, &flags, out)?;
        }
        Command::Inverse { file } => {
            emit_diagram(&read_diagram(&file)?.concordance_inverse(), &flags, out)?
        }
        Command::InverseSum { file } => {
            let d = read_diagram(&file)?;
            let s = inverse_sum(&d)?;
            let t = trivialize_inverse_sum(&d)?;
            emit_diagram(&s, &flags, out)?;
            if flags.trace_out.is_some() {
                emit_trace(&t, &flags, out)?;
            }
        }
        Command::Closure { file } => emit_diagram(&read_diagram(&file)?.closure(), &flags, out)?,
        Command::VerifyTrace => {
            let initial = flags
                .initial
                .as_deref()
                .ok_or_else(|| Failure::Usage("missing --initial".into()))?;
            let trace = flags
                .trace
                .as_deref()
                .ok_or_else(|| Failure::Usage("missing --trace".into()))?;
            let (d, t) = (read_diagram(initial)?, read_trace(trace)?);
            let end = replay_trace(&d, &t)?;
            writeln!(out, "valid=true").map_err(io)?;
            writeln!(out, "steps={}", t.len()).map_err(io)?;
            if matches!(
                t.calculus,
                Calculus::Cobordism | Calculus::WeldedConcordance
            ) {
                let surface = surface_stats(&d, &t)?;
                writeln!(out, "saddles={}", surface.saddles()).map_err(io)?;
                writeln!(out, "births={}", surface.births()).map_err(io)?;
                writeln!(out, "deaths={}", surface.deaths()).map_err(io)?;
                for (k, c) in surface.components.iter().enumerate() {
                    writeln!(out, "genus[{}]={}", k + 1, c.genus()).map_err(io)?;
                }
                if flags.require_genus_zero {
                    if let Some((k, c)) = surface
                        .components
                        .iter()
                        .enumerate()
                        .find(|(_, c)| c.genus() != 0)
                    {
                        return Err(Failure::Trace(format!(
                            "surface component {} has genus {}",
                            k + 1,
                            c.genus()
                        )));
                    }
                }
            }
            if flags.require_string_link {
                let bad = is_string_link_cobordism(&d, &t)?;
                if let Some(v) = bad.first() {
                    return Err(Failure::Trace(format!("not a string-link cobordism: {v}")));
                }
            }
            writeln!(
                out,
                "final_fingerprint={}",
                crate::cobordism::Fingerprint::of(&end)
            )
            .map_err(io)?;
        }
        Command::UnknotWelded { file } => {
            let d = read_diagram(&file)?;
            let t = welded_unknot_trace(&d)?;
            let surface = surface_stats(&d, &t)?;
            writeln!(out, "saddles={}", surface.saddles()).map_err(io)?;
            writeln!(out, "deaths={}", surface.deaths()).map_err(io)?;
            writeln!(
                out,
                "genus={}",
                surface.components.iter().map(|c| c.genus()).sum::<i64>()
            )
            .map_err(io)?;
            emit_trace(&t, &flags, out)?;
        }
        Command::Generate => {
            let n = need(flags.n, "n")?;
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let d = random_diagram(n, flags.chords.unwrap_or(0), flags.seed.unwrap_or(0));
            emit_diagram(&d, &flags, out)?;
        }
        Command::OracleBfs { file, targets } => {
            let cal = calculus(&flags, Calculus::Unwelded, &Calculus::ALL)?;
            let d = read_diagram(&file)?;
            let defaults = SearchCaps::default();
            let caps = SearchCaps {
                max_extra_chords: flags.max_extra_chords.unwrap_or(defaults.max_extra_chords),
                max_closed: flags.max_closed.unwrap_or(defaults.max_closed),
                max_states: flags.max_states.unwrap_or(defaults.max_states),
            };
            let targets = targets
                .iter()
                .map(|p| read_diagram(p))
                .collect::<Result<Vec<_>, _>>()?;
            let report = bfs_reachable(&d, cal, flags.depth.unwrap_or(3), caps, &targets);
            out.write_all(report.render().as_bytes()).map_err(io)?;
        }
        Command::Check => {
            let report = check_classification(
                flags.samples.unwrap_or(100),
                flags.n.unwrap_or(3),
                flags.chords.unwrap_or(8),
                flags.seed.unwrap_or(0),
            );
            out.write_all(report.render().as_bytes()).map_err(io)?;
        }
    }
    Ok(())
}

/// Run with explicit arguments (including the program name) and streams.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = merge(cli.flags).and_then(|flags| run_command(cli.command, flags, out));
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, "usage", m),
                Failure::Input(m) => (EXIT_INPUT, "invalid input", m),
                Failure::Trace(m) => (EXIT_TRACE, "trace verification failed", m),
            };
            let _ = writeln!(err, "error: {kind}: {msg}");
            code
        }
    }
}

/// Run against the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run_with(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    code
}
