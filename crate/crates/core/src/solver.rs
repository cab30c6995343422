//! Word-problem decision through padded R-reduction.

use serde::Serialize;

use crate::dihedral::padding_bound;
use crate::error::{Error, Result};
use crate::monoid::Monoid;
use crate::multifraction::{
    from_signed_word, reduces_to_trivial, replay_reds, Multifraction, DEFAULT_STATE_BUDGET,
};
use crate::trace::ReductionTrace;
use crate::word::SignedWord;

/// The map `f` giving how many trivial pairs `1/1` are prepended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PaddingStrategy {
    None,
    Constant(usize),
    /// `3ℓ(ℓ+2)/4` with `ℓ` the word-length rounded up to even.
    Quadratic,
    /// `table[ℓ]`, with the last entry reused for longer inputs.
    Custom(Vec<usize>),
}

impl PaddingStrategy {
    pub fn padding(&self, a: &Multifraction) -> usize {
        let len = a.wordlength();
        match self {
            PaddingStrategy::None => 0,
            PaddingStrategy::Constant(p) => *p,
            PaddingStrategy::Quadratic => quadratic_padding(len),
            PaddingStrategy::Custom(table) => table.get(len).or(table.last()).copied().unwrap_or(0),
        }
    }

    /// Parses `none`, `quadratic`, `constant:P`, or `custom:P0,P1,...`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("unknown padding strategy `{text}`"));
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        match text.split_once(':') {
            None if text == "none" => Ok(PaddingStrategy::None),
            None if text == "quadratic" => Ok(PaddingStrategy::Quadratic),
            None => text
                .parse()
                .map(PaddingStrategy::Constant)
                .map_err(|_| bad()),
            Some(("constant", p)) => Ok(PaddingStrategy::Constant(num(p)?)),
            Some(("custom", list)) => {
                let table = list.split(',').map(num).collect::<Result<Vec<_>>>()?;
                Ok(PaddingStrategy::Custom(table))
            }
            Some(_) => Err(bad()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            PaddingStrategy::None => "none".into(),
            PaddingStrategy::Constant(p) => format!("constant:{p}"),
            PaddingStrategy::Quadratic => "quadratic".into(),
            PaddingStrategy::Custom(t) => {
                let parts: Vec<String> = t.iter().map(|p| p.to_string()).collect();
                format!("custom:{}", parts.join(","))
            }
        }
    }
}

pub fn quadratic_padding(len: usize) -> usize {
    padding_bound(len + len % 2).expect("even length")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Trivial,
    Nontrivial,
    Undetermined,
}

impl Answer {
    pub fn exit_code(self) -> i32 {
        match self {
            Answer::Trivial => 0,
            Answer::Nontrivial => 1,
            Answer::Undetermined => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Stats {
    pub states: usize,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    /// Present exactly for trivial answers.
    pub trace: Option<ReductionTrace>,
    pub start: Multifraction,
    pub padding: usize,
    pub stats: Stats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    pub states: usize,
    /// Trust that the presentation is of FC type, so that reduction without
    /// padding already decides.
    pub assume_fc: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            states: DEFAULT_STATE_BUDGET,
            assume_fc: false,
        }
    }
}

/// Decides whether `cl(w) = 1`.
///
/// A trivial answer carries a re-validated trace. A nontrivial answer needs
/// an exhausted search and a completeness guarantee: FC type, or
/// sufficiently large type with at least the quadratic padding. Anything
/// else is undetermined.
pub fn decide(
    m: &Monoid,
    w: &SignedWord,
    strategy: &PaddingStrategy,
    opts: DecideOptions,
) -> Result<Verdict> {
    let a = from_signed_word(m, w);
    let padding = strategy.padding(&a);
    let start = a.pad(padding);
    let complete = opts.assume_fc
        || (m.presentation().is_sufficiently_large()
            && padding >= quadratic_padding(a.wordlength()));
    let mut verdict = Verdict {
        answer: Answer::Undetermined,
        trace: None,
        start: start.clone(),
        padding,
        stats: Stats::default(),
    };
    let outcome = match reduces_to_trivial(m, &start, opts.states) {
        Ok(o) => o,
        Err(Error::BudgetExhausted { explored }) => {
            verdict.stats.states = explored;
            return Ok(verdict);
        }
        Err(e) => return Err(e),
    };
    verdict.stats.states = outcome.states;
    match outcome.found {
        Some((_, trace)) => {
            if !replay_reds(m, &start, &trace)?.is_trivial() {
                return Err(Error::Structural(
                    "reduction trace does not end trivial".into(),
                ));
            }
            verdict.stats.steps = trace.len();
            verdict.answer = Answer::Trivial;
            verdict.trace = Some(trace);
        }
        None if complete => verdict.answer = Answer::Nontrivial,
        None => {}
    }
    Ok(verdict)
}
