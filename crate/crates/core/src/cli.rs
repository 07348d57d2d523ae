//! Command-line interface. `run` does all the work and returns the outcome so
//! it can be driven from tests; `main` only prints it.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::codec::{decode, encode, read_listing, write_listing, HexForm, Listing};
use crate::config::KeyValues;
use crate::constructions::{base_to_t, tt_to_base, verify_base, verify_t};
use crate::enumerate::{
    decompositions, enumerate_canonical, realizability_report, EnumerateConfig,
};
use crate::error::{Error, Result};
use crate::quad::TurynQuad;
use crate::search::{search_from, Checkpoint, SearchConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
    /// Files written by the command.
    pub artifacts: Vec<PathBuf>,
}

#[derive(Parser, Debug)]
#[command(
    name = "turyn",
    version,
    about = "Turyn-type sequences: verify, enumerate, search, construct"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Full,
    Compact,
}

impl From<FormArg> for HexForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Full => HexForm::Full,
            FormArg::Compact => HexForm::Compact,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Base,
    Tseq,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check hex codes or blocks of four +/- lines.
    Verify {
        /// Listing, bare codes, or +/- blocks; read alongside any --code.
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "code")]
        codes: Vec<String>,
    },
    /// List the canonical representative of every class.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "compact")]
        form: FormArg,
        /// Refuse lengths above this.
        #[arg(long, default_value_t = EnumerateConfig::default().cap)]
        cap: usize,
    },
    /// Boundary-seeded search driven by a key=value config file.
    Search {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        resume: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        stop_after: Option<usize>,
    },
    /// Base sequences or T-sequences from a Turyn-type sequence.
    Construct {
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "code")]
        codes: Vec<String>,
        #[arg(long, value_enum)]
        target: Target,
        /// One sequence per line, no labels.
        #[arg(long)]
        machine: bool,
    },
    /// Solutions of a^2 + b^2 + 2c^2 + 2d^2 = 6n - 2.
    Decompositions {
        #[arg(long)]
        n: usize,
        /// Also report which are realized by some TT(n).
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Hex code of A B C D given as +/- strings.
    Encode {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(long, value_enum, default_value = "compact")]
        form: FormArg,
    },
    /// A B C D of a hex code.
    Decode {
        code: String,
        #[arg(long)]
        n: usize,
    },
}

pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let exit_code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let mut out = CommandOutcome {
                exit_code,
                ..Default::default()
            };
            if e.use_stderr() {
                out.stderr = text;
            } else {
                out.stdout = text;
            }
            return out;
        }
    };
    let mut out = CommandOutcome::default();
    let result = match cli.command {
        Command::Verify { input, n, codes } => cmd_verify(input.as_deref(), n, &codes, &mut out),
        Command::Enumerate {
            n,
            jobs,
            out: path,
            form,
            cap,
        } => cmd_enumerate(n, jobs, path.as_deref(), form.into(), cap, &mut out),
        Command::Search {
            config,
            out: path,
            checkpoint,
            resume,
            jobs,
            stop_after,
        } => cmd_search(
            &config, path, checkpoint, resume, jobs, stop_after, &mut out,
        ),
        Command::Construct {
            input,
            n,
            codes,
            target,
            machine,
        } => cmd_construct(input.as_deref(), n, &codes, target, machine, &mut out),
        Command::Decompositions { n, check, jobs } => cmd_decompositions(n, check, jobs, &mut out),
        Command::Encode { a, b, c, d, form } => cmd_encode([&a, &b, &c, &d], form.into(), &mut out),
        Command::Decode { code, n } => cmd_decode(&code, n, &mut out),
    };
    if let Err(e) = result {
        out.exit_code = exit_code_for(&e);
        let _ = writeln!(out.stderr, "error: {e}");
    }
    out
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NotTuryn
        | Error::NotCanonical
        | Error::InvalidBase
        | Error::CanonicalCount { .. } => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

/// A quadruple read from input, with a label for reports.
struct Record {
    label: String,
    quad: TurynQuad,
}

/// Reads hex codes (bare or `INDEX CODE`) and blocks of four `+`/`-` lines
/// (optionally prefixed by `A=` etc.). A `# n=K` header supplies `n` for codes.
fn parse_records(text: &str, mut n: Option<usize>) -> Result<Vec<Record>> {
    let mut records = Vec::new();
    let mut block: Vec<(usize, String)> = Vec::new();
    let line_err = |line: usize, e: Error| match e {
        Error::Parse { message, .. } => Error::parse(line, message),
        other => Error::parse(line, other.to_string()),
    };
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("n=") {
                n = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| Error::parse(line_no, "bad n header"))?,
                );
            }
            continue;
        }
        let body = match line.split_once('=') {
            Some((label, rest)) if label.len() == 1 => rest.trim(),
            _ => line,
        };
        if body.chars().all(|c| matches!(c, '+' | '-' | '\u{2212}')) {
            block.push((line_no, body.to_owned()));
            if block.len() == 4 {
                let start = block[0].0;
                let quad = TurynQuad::parse(&block[0].1, &block[1].1, &block[2].1, &block[3].1)
                    .map_err(|e| line_err(start, e))?;
                records.push(Record {
                    label: format!("line {start}"),
                    quad,
                });
                block.clear();
            }
            continue;
        }
        if !block.is_empty() {
            return Err(Error::parse(line_no, "incomplete +/- block"));
        }
        let code = line.split_whitespace().last().unwrap_or_default();
        let n = n.ok_or_else(|| Error::parse(line_no, "n is required for hex codes"))?;
        let quad = decode(code, n).map_err(|e| line_err(line_no, e))?;
        records.push(Record {
            label: code.to_ascii_lowercase(),
            quad,
        });
    }
    if let Some((line, _)) = block.first() {
        return Err(Error::parse(*line, "incomplete +/- block"));
    }
    Ok(records)
}

fn gather_records(input: Option<&Path>, n: Option<usize>, codes: &[String]) -> Result<Vec<Record>> {
    let mut text = String::new();
    if let Some(path) = input {
        text = fs::read_to_string(path)?;
    }
    let mut records = parse_records(&text, n)?;
    for code in codes {
        let n = n.ok_or_else(|| Error::Config("--n is required with --code".into()))?;
        records.push(Record {
            label: code.to_ascii_lowercase(),
            quad: decode(code, n)?,
        });
    }
    if records.is_empty() {
        return Err(Error::Config("no input records".into()));
    }
    Ok(records)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_verify(
    input: Option<&Path>,
    n: Option<usize>,
    codes: &[String],
    out: &mut CommandOutcome,
) -> Result<()> {
    let records = gather_records(input, n, codes)?;
    let mut failed = 0;
    for r in &records {
        let tt = r.quad.verify_tt();
        let [a, b, c, d] = r.quad.row_sums();
        if !tt {
            failed += 1;
        }
        let _ = writeln!(
            out.stdout,
            "{} n={} tt={} canonical={} sums={a},{b},{c},{d}",
            r.label,
            r.quad.n(),
            yes_no(tt),
            yes_no(r.quad.is_canonical()),
        );
    }
    let _ = writeln!(out.stdout, "checked={} failed={failed}", records.len());
    if failed > 0 {
        out.exit_code = EXIT_CHECK_FAILED;
    }
    Ok(())
}

fn cmd_enumerate(
    n: usize,
    jobs: usize,
    path: Option<&Path>,
    form: HexForm,
    cap: usize,
    out: &mut CommandOutcome,
) -> Result<()> {
    let cfg = EnumerateConfig {
        cap,
        jobs,
        ..EnumerateConfig::default()
    };
    let classes = enumerate_canonical(n, &cfg)?;
    let listing = match form {
        HexForm::Compact => classes.to_listing(),
        HexForm::Full => {
            let codes: Vec<String> = classes
                .quads()
                .iter()
                .map(|q| encode(q, HexForm::Full).map(|c| c.to_string()))
                .collect::<Result<_>>()?;
            Listing::from_codes(n, codes)
        }
    };
    let _ = writeln!(out.stdout, "{}", classes.len());
    match path {
        Some(p) => {
            fs::write(p, write_listing(&listing))?;
            out.artifacts.push(p.to_owned());
        }
        None => out.stdout.push_str(&write_listing(&listing)),
    }
    Ok(())
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn cmd_search(
    config: &Path,
    path: Option<PathBuf>,
    checkpoint: Option<PathBuf>,
    resume: bool,
    jobs: Option<usize>,
    stop_after: Option<usize>,
    out: &mut CommandOutcome,
) -> Result<()> {
    let mut cfg = SearchConfig::from_key_values(&KeyValues::parse(&fs::read_to_string(config)?)?)?;
    if let Some(j) = jobs {
        cfg.jobs = j;
    }
    if stop_after.is_some() {
        cfg.stop_after = stop_after;
    }
    cfg.validate()?;
    let path = path.unwrap_or_else(|| config.with_extension("listing"));
    let checkpoint = checkpoint.unwrap_or_else(|| {
        let mut p = path.as_os_str().to_owned();
        p.push(".checkpoint");
        PathBuf::from(p)
    });
    let hash = cfg.fingerprint();

    let mut known = BTreeSet::new();
    let mut start_seed = 0;
    let mut next_index = 1;
    if resume {
        let text = fs::read_to_string(&checkpoint)
            .map_err(|e| Error::Checkpoint(format!("{}: {e}", checkpoint.display())))?;
        let cp = Checkpoint::parse(&text)?;
        if cp.config_hash != hash {
            return Err(Error::Checkpoint(format!(
                "config hash {} does not match {hash}",
                cp.config_hash
            )));
        }
        let listing = read_listing(&fs::read_to_string(&path)?)?;
        if listing.n.is_some_and(|n| n != cfg.n) {
            return Err(Error::Checkpoint("listing is for a different n".into()));
        }
        next_index += listing.records.len();
        known.extend(listing.codes().map(str::to_owned));
        start_seed = cp.seed_index;
    } else {
        fs::write(
            &path,
            write_listing(&Listing::from_codes(cfg.n, Vec::<String>::new())),
        )?;
        write_atomic(
            &checkpoint,
            &Checkpoint {
                seed_index: 0,
                config_hash: hash.clone(),
            }
            .to_text(),
        )?;
    }

    let mut file = fs::OpenOptions::new().append(true).open(&path)?;
    let mut batches = 0u64;
    let summary = search_from(&cfg, start_seed, &mut known, &mut |p| {
        for code in p.new_codes {
            writeln!(file, "{next_index} {code}")?;
            next_index += 1;
        }
        file.flush()?;
        write_atomic(
            &checkpoint,
            &Checkpoint {
                seed_index: p.next_seed,
                config_hash: hash.clone(),
            }
            .to_text(),
        )?;
        batches += 1;
        if batches.is_multiple_of(256) {
            eprintln!("seeds={} results={}", p.next_seed, next_index - 1);
        }
        Ok(())
    })?;
    let state = if summary.stopped {
        "stopped"
    } else if summary.exhausted {
        "complete"
    } else {
        "partial"
    };
    let _ = writeln!(
        out.stdout,
        "results={} seeds={} status={state}",
        next_index - 1,
        summary.next_seed
    );
    out.artifacts.push(path);
    out.artifacts.push(checkpoint);
    Ok(())
}

fn cmd_construct(
    input: Option<&Path>,
    n: Option<usize>,
    codes: &[String],
    target: Target,
    machine: bool,
    out: &mut CommandOutcome,
) -> Result<()> {
    for r in gather_records(input, n, codes)? {
        let base = tt_to_base(&r.quad)?;
        let (text, ok) = match target {
            Target::Base => {
                let text = if machine {
                    base.to_machine()
                } else {
                    format!("{base}\n")
                };
                (text, verify_base(&base))
            }
            Target::Tseq => {
                let t = base_to_t(&base)?;
                let text = if machine {
                    t.to_machine()
                } else {
                    format!("{t}\n")
                };
                (text, verify_t(&t))
            }
        };
        out.stdout.push_str(&text);
        if !machine {
            let _ = writeln!(
                out.stdout,
                "verdict={}",
                if ok { "valid" } else { "invalid" }
            );
        }
        if !ok {
            out.exit_code = EXIT_CHECK_FAILED;
        }
    }
    Ok(())
}

fn cmd_decompositions(n: usize, check: bool, jobs: usize, out: &mut CommandOutcome) -> Result<()> {
    let decs = decompositions(n)?;
    let report = if check {
        let cfg = EnumerateConfig {
            jobs,
            ..EnumerateConfig::default()
        };
        Some(realizability_report(n, &cfg)?)
    } else {
        None
    };
    for d in &decs {
        let _ = write!(out.stdout, "{} {} {} {}", d.a, d.b, d.c, d.d);
        if let Some(r) = &report {
            let realized = r.get(d).copied().unwrap_or(false);
            let _ = write!(
                out.stdout,
                " {}",
                if realized { "realized" } else { "unrealized" }
            );
            if !realized {
                out.exit_code = EXIT_CHECK_FAILED;
            }
        }
        out.stdout.push('\n');
    }
    Ok(())
}

fn cmd_encode(parts: [&str; 4], form: HexForm, out: &mut CommandOutcome) -> Result<()> {
    let q = TurynQuad::parse(parts[0], parts[1], parts[2], parts[3])?;
    let _ = writeln!(out.stdout, "{}", encode(&q, form)?);
    Ok(())
}

fn cmd_decode(code: &str, n: usize, out: &mut CommandOutcome) -> Result<()> {
    let _ = writeln!(out.stdout, "{}", decode(code, n)?);
    Ok(())
}
