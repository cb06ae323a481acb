use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use sturmian::numeration::{enumerate_valid, is_legal, is_ostrowski, is_valid, ostrowski, value, ReprJson};
use sturmian::pal_length::{
    build_witness_within, counting_audit, pal_length_fast, pal_length_oracle, run_experiment, verify_witness,
    DEFAULT_WITNESS_HORIZON,
};
use sturmian::palindromes::{palindrome_construction, OccurrenceJson};
use sturmian::transforms::{normalize, TraceJson};
use sturmian::{DirectiveSequence, Error, Representation, WordFamily, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(
    name = "sturmian",
    version,
    about = "Ostrowski-like numeration and palindromic length on Sturmian words"
)]
struct Cli {
    /// Maximum number of prefix symbols materialized.
    #[arg(long, global = true, env = "STURMIAN_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[arg(long, global = true, value_enum, default_value_t = Output::Plain)]
    output: Output,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Ostrowski,
    Enumerate,
    Normalize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Fast,
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Print the prefix w(0..L].
    Word {
        directive: String,
        #[arg(long)]
        length: u64,
    },
    /// Representations of N.
    Repr {
        directive: String,
        n: u64,
        #[arg(long, value_enum, default_value_t = Mode::Ostrowski)]
        mode: Mode,
        /// Digits to normalize, most significant first.
        digits: Option<String>,
    },
    /// Maximal extension and representation pair of the palindrome w(p1..p2].
    Pal { directive: String, p1: usize, p2: usize },
    /// Prefix length whose palindromic length exceeds Q.
    Witness {
        directive: String,
        q: u64,
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_WITNESS_HORIZON)]
        horizon: usize,
    },
    /// Palindromic length of w(0..L].
    Length {
        directive: String,
        #[arg(long)]
        length: u64,
        #[arg(long, value_enum, default_value_t = Engine::Fast)]
        engine: Engine,
    },
    /// Build and verify witnesses for Q = 1..=max-q.
    Experiment {
        directive: String,
        #[arg(long, default_value_t = 2)]
        max_q: u64,
    },
    /// Replay the digit ledger of a palindromic factorization of w(0..N].
    Audit {
        directive: String,
        n: u64,
        /// Comma-separated cut positions; a minimal factorization when omitted.
        #[arg(long)]
        cuts: Option<String>,
        /// Representation of N to end on (default: Ostrowski).
        #[arg(long)]
        target: Option<String>,
    },
    /// Randomized consistency checks on seeded directive sequences.
    Selfcheck {
        #[arg(long, default_value_t = 5)]
        families: usize,
        #[arg(long, default_value_t = 200)]
        max_n: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if cli.budget == 0 {
        eprintln!("error: budget must be positive");
        return ExitCode::from(1);
    }
    let mut out = io::stdout().lock();
    match run(&cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_resource() {
        3
    } else if matches!(e, Error::Parse(_) | Error::InvalidCuts(_)) {
        1
    } else {
        2
    }
}

fn family(cli: &Cli, directive: &str) -> Result<WordFamily, Error> {
    Ok(WordFamily::with_budget(
        directive.parse::<DirectiveSequence>()?,
        cli.budget,
    ))
}

fn json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_error)
}

fn io_error(e: io::Error) -> Error {
    Error::ConstructionFailed(format!("write failed: {e}"))
}

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(io_error)?
    };
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), Error> {
    match &cli.command {
        Command::Word { directive, length } => {
            let mut f = family(cli, directive)?;
            let w = f.characteristic_prefix(*length)?;
            let text = String::from_utf8_lossy(w).into_owned();
            match cli.output {
                Output::Json => json(out, &serde_json::json!({ "length": length, "word": text }))?,
                _ => emit!(out, "{text}"),
            }
        }

        Command::Repr {
            directive,
            n,
            mode,
            digits,
        } => {
            let mut f = family(cli, directive)?;
            match mode {
                Mode::Ostrowski => {
                    let r = ostrowski(&f, *n)?;
                    match cli.output {
                        Output::Json => json(out, &ReprJson::new(&f, &r)?)?,
                        Output::Csv => {
                            emit!(out, "N,digits");
                            emit!(out, "{n},{r}");
                        }
                        Output::Plain => emit!(out, "{r}"),
                    }
                }
                Mode::Enumerate => {
                    let set = enumerate_valid(&mut f, *n)?;
                    let width = set.iter().map(Representation::len).max().unwrap_or(1).max(1);
                    match cli.output {
                        Output::Json => {
                            let all = set
                                .iter()
                                .map(|r| ReprJson::new(&f, r))
                                .collect::<Result<Vec<_>, _>>()?;
                            json(out, &all)?;
                        }
                        Output::Csv => {
                            emit!(out, "digits,legal,ostrowski");
                            for r in &set {
                                emit!(
                                    out,
                                    "{},{},{}",
                                    r.to_string_width(width),
                                    is_legal(&f, r),
                                    is_ostrowski(&f, r)
                                );
                            }
                        }
                        Output::Plain => {
                            for r in &set {
                                emit!(out, "{}", r.to_string_width(width));
                            }
                        }
                    }
                }
                Mode::Normalize => {
                    let text = digits
                        .as_deref()
                        .ok_or_else(|| Error::Parse("normalize mode needs a digit string".into()))?;
                    let r: Representation = text.parse()?;
                    let actual = value(&f, &r)?;
                    if actual != *n {
                        return Err(Error::ValueMismatch { expected: *n, actual });
                    }
                    let trace = normalize(&mut f, &r)?;
                    match cli.output {
                        Output::Json => json(out, &TraceJson::new(&f, &trace)?)?,
                        Output::Csv => {
                            emit!(out, "step,move,digits");
                            let states = trace.replay(&f)?;
                            emit!(out, "0,,{}", states[0]);
                            for (i, (step, r)) in trace.steps.iter().zip(&states[1..]).enumerate() {
                                emit!(out, "{},{step},{r}", i + 1);
                            }
                        }
                        Output::Plain => emit!(out, "{}", trace.describe(&f)?),
                    }
                }
            }
        }

        Command::Pal { directive, p1, p2 } => {
            let mut f = family(cli, directive)?;
            let c = palindrome_construction(&mut f, *p1, *p2)?;
            match cli.output {
                Output::Plain => {
                    let o = &c.occurrence;
                    emit!(out, "occurrence w({}..{}]", o.p1, o.p2);
                    let mut label = format!("c_{{{},{}}}", o.central.n, o.central.j);
                    if c.label != o.central {
                        label += &format!(" = c_{{{},{}}}", c.label.n, c.label.j);
                    }
                    emit!(out, "extension w({}..{}] = {label}", o.ext_left, o.ext_right);
                    emit!(out, "pair r1 = {}, r2 = {}, m = {}", c.pair.r1, c.pair.r2, c.pair.m);
                }
                Output::Csv => {
                    emit!(out, "p1,p2,ext_left,ext_right,n,j,r1,r2,m");
                    let o = &c.occurrence;
                    emit!(
                        out,
                        "{},{},{},{},{},{},{},{},{}",
                        o.p1,
                        o.p2,
                        o.ext_left,
                        o.ext_right,
                        o.central.n,
                        o.central.j,
                        c.pair.r1,
                        c.pair.r2,
                        c.pair.m
                    );
                }
                Output::Json => json(out, &OccurrenceJson::new(&f, &c)?)?,
            }
        }

        Command::Witness {
            directive,
            q,
            verify,
            horizon,
        } => {
            let mut f = family(cli, directive)?;
            let spec = build_witness_within(&f, *q, *horizon)?;
            let report = if *verify {
                Some(verify_witness(&mut f, &spec)?)
            } else {
                None
            };
            match cli.output {
                Output::Json => json(out, &serde_json::json!({ "witness": spec, "report": report }))?,
                Output::Csv => {
                    emit!(out, "Q,N,positions,digit,pal_len");
                    emit!(
                        out,
                        "{},{},{},{},{}",
                        spec.q,
                        spec.n,
                        join(&spec.positions, ";"),
                        spec.digit,
                        report.as_ref().map(|r| r.pal_len.to_string()).unwrap_or_default()
                    );
                }
                Output::Plain => {
                    emit!(
                        out,
                        "Q = {}, N = {}, positions = {}, digit = {}",
                        spec.q,
                        spec.n,
                        join(&spec.positions, ","),
                        spec.digit
                    );
                    emit!(out, "representation {}", spec.representation);
                    if let Some(r) = report {
                        emit!(
                            out,
                            "pal_len = {} > {} (oracle: {:?}, {} ms)",
                            r.pal_len,
                            r.q,
                            r.oracle_pal_len,
                            r.runtime_ms
                        );
                    }
                }
            }
        }

        Command::Length {
            directive,
            length,
            engine,
        } => {
            let mut f = family(cli, directive)?;
            let w = f.characteristic_prefix(*length)?;
            let result = match engine {
                Engine::Fast => pal_length_fast(w)?,
                Engine::Oracle => pal_length_oracle(w)?,
            };
            match cli.output {
                Output::Json => json(out, &result)?,
                Output::Csv => {
                    emit!(out, "length,pal_len,cuts");
                    emit!(
                        out,
                        "{},{},{}",
                        result.length,
                        result.pal_len,
                        join(&result.witness_cuts, ";")
                    );
                }
                Output::Plain => {
                    emit!(out, "{}", result.pal_len);
                    emit!(out, "cuts {}", join(&result.witness_cuts, ","));
                }
            }
        }

        Command::Experiment { directive, max_q } => {
            let mut f = family(cli, directive)?;
            let rows = run_experiment(&mut f, 1..=*max_q)?;
            match cli.output {
                Output::Json => json(out, &rows)?,
                _ => {
                    emit!(out, "Q,N,positions,pal_len,runtime_ms");
                    for r in &rows {
                        emit!(out, "{},{},{},{},{}", r.q, r.n, r.positions, r.pal_len, r.runtime_ms);
                    }
                }
            }
        }

        Command::Audit {
            directive,
            n,
            cuts,
            target,
        } => {
            let mut f = family(cli, directive)?;
            let cuts: Vec<usize> = match cuts {
                Some(text) => text
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse()
                            .map_err(|_| Error::InvalidCuts(format!("bad cut {t:?}")))
                    })
                    .collect::<Result<_, _>>()?,
                None => pal_length_fast(f.characteristic_prefix(*n)?)?.witness_cuts,
            };
            let target = target.as_deref().map(str::parse::<Representation>).transpose()?;
            let report = counting_audit(&mut f, *n, &cuts, target.as_ref())?;
            match cli.output {
                Output::Json => json(out, &report)?,
                Output::Csv => {
                    emit!(out, "p_start,p_end,r_start,r_end,free_position,z_changed,drift_in");
                    for s in &report.steps {
                        emit!(
                            out,
                            "{},{},{},{},{},{},{}",
                            s.p_start,
                            s.p_end,
                            s.r_start,
                            s.r_end,
                            s.free_position.map(|m| m.to_string()).unwrap_or_default(),
                            join(&s.z_changed, ";"),
                            s.drift_in
                        );
                    }
                }
                Output::Plain => {
                    for s in &report.steps {
                        emit!(
                            out,
                            "w({}..{}]  {} -> {}  free {:?}  drift {}",
                            s.p_start,
                            s.p_end,
                            s.r_start,
                            s.r_end,
                            s.free_position,
                            s.drift_in
                        );
                    }
                    emit!(out, "target {} drift {}", report.target, report.drift_out);
                    emit!(
                        out,
                        "max drift {}, free changes only: {}",
                        report.max_drift,
                        report.free_changes_only
                    );
                    let v = &report.verdict;
                    emit!(
                        out,
                        "{} parts, {} positions with z > {}, contradiction: {}",
                        v.parts,
                        v.positions_above.len(),
                        v.threshold,
                        v.contradiction
                    );
                }
            }
        }

        Command::Selfcheck { families, max_n } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut failures = 0usize;
            emit!(out, "directive,checked,failures");
            for _ in 0..*families {
                let period: Vec<u64> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(1..=4)).collect();
                let directive = DirectiveSequence::periodic(period)?;
                let mut f = WordFamily::with_budget(directive.clone(), cli.budget);
                let mut bad = 0usize;
                for n in 0..=*max_n {
                    let expected = ostrowski(&f, n)?;
                    for r in enumerate_valid(&mut f, n)? {
                        let trace = normalize(&mut f, &r)?;
                        if trace.end != expected || !is_valid(&mut f, &r)? {
                            bad += 1;
                        }
                    }
                }
                failures += bad;
                emit!(out, "\"{directive}\",{},{bad}", max_n + 1);
            }
            if failures > 0 {
                return Err(Error::ConstructionFailed(format!(
                    "{failures} representations failed to normalize"
                )));
            }
        }
    }
    Ok(())
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}
