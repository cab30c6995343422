//! `multifrac`: decide the word problem of an Artin-Tits group by padded
//! multifraction reduction, and expose the underlying tools.
//!
//! Exit codes: 0 trivial or success, 1 nontrivial (or a search that
//! exhausted its space without reaching the target), 2 undetermined,
//! 3 usage error, 4 structural or I/O failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use multifrac::dihedral::{fractional_normal_form, padding_bound, FractionSide};
use multifrac::multifraction::{
    from_signed_word, parse_multifraction, reduce_greedy, Multifraction, DEFAULT_STATE_BUDGET,
};
use multifrac::property_h::{prop_h_reaches_empty, PropHBudget};
use multifrac::reversing::{reverse_full, DEFAULT_REVERSING_BUDGET};
use multifrac::solver::{decide, Answer, DecideOptions, PaddingStrategy};
use multifrac::split::{split_reduces_to_trivial, SplitBudget};
use multifrac::trace::trace_records;
use multifrac::{ArtinPresentation, Error, Monoid, ReductionTrace, Side};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "multifrac",
    version,
    about = "Word problems in Artin-Tits groups via multifraction reduction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Presentation file: `generators: a b c`, then lines `m: a b 3`.
    #[arg(long, short = 'p', value_name = "PATH")]
    presentation: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a signed word (uppercase = inverse) is trivial.
    ///
    /// A trivial answer is always backed by a replayed reduction trace. A
    /// nontrivial answer needs a completeness guarantee: `--assume-fc`, or a
    /// sufficiently large presentation with at least quadratic padding.
    Solve {
        #[command(flatten)]
        common: Common,
        word: String,
        /// Trust that the presentation is of FC type.
        #[arg(long)]
        assume_fc: bool,
        /// none | quadratic | constant:P | custom:P0,P1,... | P.
        /// Defaults to quadratic for sufficiently large presentations
        /// without `--assume-fc`, none otherwise.
        #[arg(long)]
        padding: Option<String>,
        /// Maximum number of search states.
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget: usize,
    },
    /// Reduce a multifraction (`ab/c/1`) or a signed word to an irreducible one.
    Reduce {
        #[command(flatten)]
        common: Common,
        input: String,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget: usize,
    },
    /// Search for a split reduction of the input to a trivial multifraction.
    Split {
        #[command(flatten)]
        common: Common,
        input: String,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Reverse a signed word until no reversible factor remains.
    Reverse {
        #[command(flatten)]
        common: Common,
        word: String,
        /// Left reversing (`s t^-1` factors) instead of right.
        #[arg(long)]
        left: bool,
        #[arg(long, default_value_t = DEFAULT_REVERSING_BUDGET)]
        budget: usize,
    },
    /// Search for special transformations taking a word to the empty word.
    Proph {
        #[command(flatten)]
        common: Common,
        word: String,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Least common multiple of two positive words (right by default).
    Lcm {
        #[command(flatten)]
        common: Common,
        x: String,
        y: String,
        #[arg(long)]
        left: bool,
    },
    /// Greatest common divisor of two positive words (left by default).
    Gcd {
        #[command(flatten)]
        common: Common,
        x: String,
        y: String,
        /// Right gcd, dividing from the right.
        #[arg(long)]
        right: bool,
    },
    /// Irreducible fraction of a word over two generators.
    Nf {
        #[command(flatten)]
        common: Common,
        word: String,
        /// Left form `c^-1 d` instead of `a b^-1`.
        #[arg(long)]
        left: bool,
    },
    /// Print generators, labels and the sufficiently-large classification.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Padding bound for an even word-length.
    Bound {
        length: usize,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Fatal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidWord(_)
            | Error::UnknownGenerator(_)
            | Error::Precondition(_)
            | Error::FreePair(..) => Failure::Usage(e.to_string()),
            _ => Failure::Fatal(e.to_string()),
        }
    }
}

struct Output {
    code: u8,
    text: String,
    json: Value,
}

fn load(common: &Common) -> Result<Monoid, Failure> {
    let text = fs::read_to_string(&common.presentation)
        .map_err(|e| Failure::Fatal(format!("{}: {e}", common.presentation.display())))?;
    let pres = ArtinPresentation::parse(&text)
        .map_err(|e| Failure::Fatal(format!("{}: {e}", common.presentation.display())))?;
    Ok(Monoid::new(pres))
}

fn parse_input(m: &Monoid, input: &str) -> Result<Multifraction, Failure> {
    if input.contains('/') {
        Ok(parse_multifraction(m, input)?)
    } else {
        Ok(from_signed_word(m, &m.presentation().parse_word(input)?))
    }
}

fn trace_text(p: &ArtinPresentation, trace: &ReductionTrace) -> String {
    trace_records(p, trace)
        .iter()
        .map(|r| format!("  {}\n", serde_json::to_string(r).unwrap()))
        .collect()
}

fn envelope(p: &ArtinPresentation, input: &str, rest: Value) -> Value {
    let mut v = json!({ "version": 1, "presentation": p.summary(), "input": input });
    v.as_object_mut()
        .unwrap()
        .extend(rest.as_object().unwrap().clone());
    v
}

fn run(cmd: Command) -> Result<(Output, bool), Failure> {
    let out = match cmd {
        Command::Solve {
            common,
            word,
            assume_fc,
            padding,
            budget,
        } => {
            let m = load(&common)?;
            let p = m.presentation();
            let w = p.parse_word(&word)?;
            let strategy = match padding {
                Some(s) => PaddingStrategy::parse(&s)?,
                None if p.is_sufficiently_large() && !assume_fc => PaddingStrategy::Quadratic,
                None => PaddingStrategy::None,
            };
            let v = decide(
                &m,
                &w,
                &strategy,
                DecideOptions {
                    states: budget,
                    assume_fc,
                },
            )?;
            let trace = v.trace.clone().unwrap_or_default();
            let mut text = format!(
                "answer: {}\npadding: {} ({})\nstates: {}\nsteps: {}\n",
                serde_json::to_value(v.answer).unwrap().as_str().unwrap(),
                v.padding,
                strategy.describe(),
                v.stats.states,
                v.stats.steps
            );
            if v.answer == Answer::Trivial {
                text.push_str(&format!(
                    "start: {}\ntrace:\n{}",
                    v.start.format(p),
                    trace_text(p, &trace)
                ));
            }
            let json = envelope(
                p,
                &word,
                json!({
                    "padding": v.padding,
                    "answer": v.answer,
                    "trace": trace_records(p, &trace),
                    "stats": v.stats,
                }),
            );
            (
                Output {
                    code: v.answer.exit_code() as u8,
                    text,
                    json,
                },
                common.json,
            )
        }
        Command::Reduce {
            common,
            input,
            budget,
        } => {
            let m = load(&common)?;
            let p = m.presentation();
            let a = parse_input(&m, &input)?;
            let (end, trace) = reduce_greedy(&m, &a, budget)?;
            let text = format!(
                "{}\nsteps: {}\ntrace:\n{}",
                end.format(p),
                trace.len(),
                trace_text(p, &trace)
            );
            let json = envelope(
                p,
                &input,
                json!({ "result": end.format(p), "trivial": end.is_trivial(), "trace": trace_records(p, &trace) }),
            );
            (
                Output {
                    code: 0,
                    text,
                    json,
                },
                common.json,
            )
        }
        Command::Split {
            common,
            input,
            budget,
        } => {
            let m = load(&common)?;
            let p = m.presentation();
            let a = parse_input(&m, &input)?;
            let mut b = SplitBudget::for_start(&a);
            if let Some(n) = budget {
                b.states = n;
            }
            let (answer, states, trace) = match split_reduces_to_trivial(&m, &a, b) {
                Ok(o) => {
                    let states = o.states;
                    match o.found {
                        Some((_, t)) => (Answer::Trivial, states, t),
                        None => (Answer::Nontrivial, states, Vec::new()),
                    }
                }
                Err(Error::BudgetExhausted { explored }) => {
                    (Answer::Undetermined, explored, Vec::new())
                }
                Err(e) => return Err(e.into()),
            };
            search_output(p, &input, answer, states, &trace, common.json)?
        }
        Command::Proph {
            common,
            word,
            budget,
        } => {
            let m = load(&common)?;
            let p = m.presentation();
            let w = p.parse_word(&word)?;
            let mut b = PropHBudget::for_word(&w);
            if let Some(n) = budget {
                b.states = n;
            }
            let (answer, states, trace) = match prop_h_reaches_empty(&m, &w, b) {
                Ok(o) => match o.found {
                    Some(t) => (Answer::Trivial, o.states, t),
                    // a length-capped miss proves nothing
                    None if o.pruned => (Answer::Undetermined, o.states, Vec::new()),
                    None => (Answer::Nontrivial, o.states, Vec::new()),
                },
                Err(Error::BudgetExhausted { explored }) => {
                    (Answer::Undetermined, explored, Vec::new())
                }
                Err(e) => return Err(e.into()),
            };
            search_output(p, &word, answer, states, &trace, common.json)?
        }
        Command::Reverse {
            common,
            word,
            left,
            budget,
        } => {
            let m = load(&common)?;
            let p = m.presentation();
            let w = p.parse_word(&word)?;
            let side = if left { Side::Left } else { Side::Right };
            let r = reverse_full(p, side, &w, budget)?;
            let terminal = p.format_word(&r.terminal);
            let text = format!("{terminal}\nsteps: {}\n", r.steps.len());
            let json = envelope(
                p,
                &word,
                json!({ "side": side_name(side), "terminal": terminal, "trace": trace_records(p, &r.steps) }),
            );
            (
                Output {
                    code: 0,
                    text,
                    json,
                },
                common.json,
            )
        }
        Command::Lcm { common, x, y, left } => {
            let m = load(&common)?;
            let p = m.presentation();
            let side = if left { Side::Left } else { Side::Right };
            let (ex, ey) = (m.parse_element(&x)?, m.parse_element(&y)?);
            let lcm = m.lcm(side, &ex, &ey)?.map(|z| m.format(&z));
            let text = format!("{}\n", lcm.as_deref().unwrap_or("none"));
            let json = envelope(
                p,
                &format!("{x} {y}"),
                json!({ "side": side_name(side), "lcm": lcm }),
            );
            (
                Output {
                    code: 0,
                    text,
                    json,
                },
                common.json,
            )
        }
        Command::Gcd {
            common,
            x,
            y,
            right,
        } => {
            let m = load(&common)?;
            let p = m.presentation();
            let side = if right { Side::Right } else { Side::Left };
            let (ex, ey) = (m.parse_element(&x)?, m.parse_element(&y)?);
            let g = m.format(&m.gcd(side, &ex, &ey)?);
            let text = format!("{g}\n");
            let json = envelope(
                p,
                &format!("{x} {y}"),
                json!({ "side": side_name(side), "gcd": g }),
            );
            (
                Output {
                    code: 0,
                    text,
                    json,
                },
                common.json,
            )
        }
        Command::Nf { common, word, left } => {
            let m = load(&common)?;
            let p = m.presentation();
            let w = p.parse_word(&word)?;
            let side = if left {
                FractionSide::Left
            } else {
                FractionSide::Right
            };
            let fp = fractional_normal_form(&m, side, &w)?;
            let text = format!("{}\n", fp.format(&m));
            let json = envelope(
                p,
                &word,
                json!({
                    "side": if left { "left" } else { "right" },
                    "numerator": m.format(&fp.num),
                    "denominator": m.format(&fp.den),
                }),
            );
            (
                Output {
                    code: 0,
                    text,
                    json,
                },
                common.json,
            )
        }
        Command::Classify { common } => {
            let m = load(&common)?;
            let p = m.presentation();
            let summary = p.summary();
            let large = p.is_sufficiently_large();
            let mut text = format!("generators: {}\n", summary.generators.join(" "));
            for (s, t, l) in &summary.labels {
                text.push_str(&format!("m: {s} {t} {l}\n"));
            }
            text.push_str(&format!("sufficiently-large: {large}\n"));
            let json =
                json!({ "version": 1, "presentation": summary, "sufficiently_large": large });
            (
                Output {
                    code: 0,
                    text,
                    json,
                },
                common.json,
            )
        }
        Command::Bound { length, json } => {
            let b = padding_bound(length)?;
            let out = Output {
                code: 0,
                text: format!("{b}\n"),
                json: json!({ "version": 1, "length": length, "bound": b }),
            };
            (out, json)
        }
    };
    Ok(out)
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Right => "right",
        Side::Left => "left",
    }
}

fn search_output(
    p: &ArtinPresentation,
    input: &str,
    answer: Answer,
    states: usize,
    trace: &ReductionTrace,
    as_json: bool,
) -> Result<(Output, bool), Failure> {
    let name = serde_json::to_value(answer).unwrap();
    let mut text = format!(
        "answer: {}\nstates: {states}\nsteps: {}\n",
        name.as_str().unwrap(),
        trace.len()
    );
    if answer == Answer::Trivial {
        text.push_str(&format!("trace:\n{}", trace_text(p, trace)));
    }
    let json = envelope(
        p,
        input,
        json!({
            "answer": answer,
            "trace": trace_records(p, trace),
            "stats": { "states": states, "steps": trace.len() },
        }),
    );
    Ok((
        Output {
            code: answer.exit_code() as u8,
            text,
            json,
        },
        as_json,
    ))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok((out, as_json)) => {
            if as_json {
                println!("{}", serde_json::to_string_pretty(&out.json).unwrap());
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}
