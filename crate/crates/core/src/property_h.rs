//! Special transformations of signed words and the search for `w ⊸ ε`.
//!
//! A special step applies one relation inside a positive or a negative
//! factor, or performs one right or left reversing step. No step inserts a
//! trivial factor `sS` or `Ss`. Equivalences keep the length, deletions
//! shorten by 2, and reversing `s^-1 t` into `v u^-1` changes the length by
//! `2 m_st - 4`, so words can grow once some label exceeds 2.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::monoid::{Monoid, Side};
use crate::reversing::reverse_step;
use crate::trace::{ReductionTrace, TraceStep};
use crate::word::{Letter, SignedWord};

pub const DEFAULT_PROPH_STATES: usize = 1_000_000;
pub const PROPH_LENGTH_SLACK: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropHBudget {
    pub states: usize,
    /// Words longer than this are not explored.
    pub max_len: usize,
}

impl PropHBudget {
    pub fn for_word(w: &SignedWord) -> Self {
        PropHBudget {
            states: DEFAULT_PROPH_STATES,
            max_len: w.len() + PROPH_LENGTH_SLACK,
        }
    }
}

/// Every one-step special transformation of `w`, with its descriptor.
pub fn special_steps(m: &Monoid, w: &SignedWord) -> Vec<(TraceStep, SignedWord)> {
    let p = m.presentation();
    let mut out = Vec::new();
    let letters = w.letters();
    for r in p.relations() {
        for (from, to) in [(&r.lhs, &r.rhs), (&r.rhs, &r.lhs)] {
            let k = from.len();
            if k > letters.len() {
                continue;
            }
            let pos_from = SignedWord::positive(from);
            let neg_from = SignedWord::negative(from);
            for j in 0..=letters.len() - k {
                let factor = &letters[j..j + k];
                let (step, repl) = if factor == pos_from.letters() {
                    let repl = SignedWord::positive(to);
                    (
                        TraceStep::PosEquiv {
                            start: j,
                            end: j + k,
                            replacement: repl.clone(),
                        },
                        repl,
                    )
                } else if factor == neg_from.letters() {
                    let repl = SignedWord::negative(to);
                    (
                        TraceStep::NegEquiv {
                            start: j,
                            end: j + k,
                            replacement: repl.clone(),
                        },
                        repl,
                    )
                } else {
                    continue;
                };
                let mut nw: Vec<Letter> = letters[..j].to_vec();
                nw.extend_from_slice(repl.letters());
                nw.extend_from_slice(&letters[j + k..]);
                out.push((step, SignedWord(nw)));
            }
        }
    }
    for position in 0..letters.len().saturating_sub(1) {
        if let Some(nw) = reverse_step(p, Side::Right, w, position) {
            out.push((TraceStep::RightRev { position }, nw));
        }
        if let Some(nw) = reverse_step(p, Side::Left, w, position) {
            out.push((TraceStep::LeftRev { position }, nw));
        }
    }
    out
}

/// The distinct words reachable from `w` in one special step.
pub fn special_neighbors(m: &Monoid, w: &SignedWord) -> Vec<SignedWord> {
    let mut out: Vec<SignedWord> = special_steps(m, w).into_iter().map(|(_, nw)| nw).collect();
    out.sort();
    out.dedup();
    out
}

/// Applies one special-step descriptor, checking that it is legitimate.
pub fn apply_special(m: &Monoid, w: &SignedWord, step: &TraceStep) -> Option<SignedWord> {
    special_steps(m, w)
        .into_iter()
        .find(|(s, _)| s == step)
        .map(|(_, nw)| nw)
}

pub fn replay_special(m: &Monoid, w: &SignedWord, trace: &[TraceStep]) -> Result<SignedWord> {
    let mut cur = w.clone();
    for (k, s) in trace.iter().enumerate() {
        cur = apply_special(m, &cur, s)
            .ok_or_else(|| Error::Precondition(format!("special step {k} does not apply")))?;
    }
    Ok(cur)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropHOutcome {
    /// A trace from the input to the empty word, if one was found.
    pub found: Option<ReductionTrace>,
    pub states: usize,
    /// Some neighbour was skipped for exceeding the length cap, so a miss
    /// only covers words up to that length.
    pub pruned: bool,
}

/// Breadth-first search for a sequence of special steps ending at ε.
///
/// Words are deduplicated exactly and capped in length, so the explored set
/// is finite. Finding ε certifies `cl(w) = 1`.
pub fn prop_h_reaches_empty(
    m: &Monoid,
    w: &SignedWord,
    budget: PropHBudget,
) -> Result<PropHOutcome> {
    let mut parent: HashMap<SignedWord, Option<(SignedWord, TraceStep)>> = HashMap::new();
    parent.insert(w.clone(), None);
    let mut queue = VecDeque::from([w.clone()]);
    let mut hit = w.is_empty().then(|| w.clone());
    let mut pruned = false;
    while hit.is_none() {
        let Some(cur) = queue.pop_front() else { break };
        for (step, nw) in special_steps(m, &cur) {
            if nw.len() > budget.max_len {
                pruned = true;
                continue;
            }
            if parent.contains_key(&nw) {
                continue;
            }
            parent.insert(nw.clone(), Some((cur.clone(), step)));
            if nw.is_empty() {
                hit = Some(nw);
                break;
            }
            if parent.len() >= budget.states {
                return Err(Error::BudgetExhausted {
                    explored: parent.len(),
                });
            }
            queue.push_back(nw);
        }
    }
    let states = parent.len();
    let found = hit.map(|end| {
        let mut trace = Vec::new();
        let mut k = end;
        while let Some(Some((prev, step))) = parent.get(&k) {
            trace.push(step.clone());
            k = prev.clone();
        }
        trace.reverse();
        trace
    });
    Ok(PropHOutcome {
        found,
        states,
        pruned,
    })
}
