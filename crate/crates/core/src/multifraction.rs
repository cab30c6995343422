//! Multifractions and the R-reduction rewrite system.
//!
//! A multifraction `a1/a2/a3/...` stands for `a1 a2^-1 a3 a4^-1 ...` in the
//! enveloping group. Positions are 1-based throughout, as in the rules.

use std::collections::VecDeque;
use std::fmt;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::monoid::{Monoid, MonoidElement, Side};
use crate::presentation::ArtinPresentation;
use crate::trace::{ReductionTrace, TraceStep};
use crate::word::{Gen, Letter, SignedWord};

pub const DEFAULT_STATE_BUDGET: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multifraction {
    entries: Vec<MonoidElement>,
}

impl Multifraction {
    pub fn new(entries: Vec<MonoidElement>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Precondition(
                "a multifraction has depth at least 1".into(),
            ));
        }
        Ok(Multifraction { entries })
    }

    /// The all-trivial multifraction of the given depth.
    pub fn trivial(depth: usize) -> Self {
        Multifraction {
            entries: vec![MonoidElement::identity(); depth.max(1)],
        }
    }

    pub fn entries(&self) -> &[MonoidElement] {
        &self.entries
    }

    /// Entry `a_i`, 1-based.
    pub fn entry(&self, i: usize) -> &MonoidElement {
        &self.entries[i - 1]
    }

    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    pub fn wordlength(&self) -> usize {
        self.entries.iter().map(|e| e.len()).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|e| e.is_identity())
    }

    /// Prepends `2p` trivial entries.
    pub fn pad(&self, p: usize) -> Self {
        let mut entries = vec![MonoidElement::identity(); 2 * p];
        entries.extend(self.entries.iter().cloned());
        Multifraction { entries }
    }

    /// Drops trivial final entries, keeping depth at least 1.
    pub fn strip_trailing_ones(&self) -> Self {
        let mut entries = self.entries.clone();
        while entries.len() > 1 && entries.last().unwrap().is_identity() {
            entries.pop();
        }
        Multifraction { entries }
    }

    /// Concatenates the entry words, inverting the even ones.
    pub fn to_signed_word(&self) -> SignedWord {
        let mut out = Vec::new();
        for (k, e) in self.entries.iter().enumerate() {
            if k % 2 == 0 {
                out.extend(e.word().iter().map(|&g| Letter::pos(g)));
            } else {
                out.extend(SignedWord::negative(e.word()).0);
            }
        }
        SignedWord(out)
    }

    pub fn format(&self, pres: &ArtinPresentation) -> String {
        self.entries
            .iter()
            .map(|e| {
                if e.is_identity() {
                    "1".to_string()
                } else {
                    pres.format_positive(e.word())
                }
            })
            .collect::<Vec<_>>()
            .join("/")
    }

    /// Compact state key: canonical letters with `0xFF` separators.
    pub(crate) fn key(&self) -> Box<[u8]> {
        let mut k = Vec::with_capacity(self.wordlength() + self.depth());
        for (j, e) in self.entries.iter().enumerate() {
            if j > 0 {
                k.push(0xFF);
            }
            k.extend(e.word().iter().map(|g| g.0));
        }
        k.into_boxed_slice()
    }

    pub(crate) fn from_key(key: &[u8]) -> Self {
        let entries = key
            .split(|&b| b == 0xFF)
            .map(|part| MonoidElement::from_canonical(part.iter().map(|&b| Gen(b)).collect()))
            .collect();
        Multifraction { entries }
    }

    pub(crate) fn with_entries(entries: Vec<MonoidElement>) -> Self {
        debug_assert!(!entries.is_empty());
        Multifraction { entries }
    }
}

impl fmt::Debug for Multifraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

/// Parses `a/b/1`-style text; `1` (or an empty part) is the identity.
pub fn parse_multifraction(m: &Monoid, text: &str) -> Result<Multifraction> {
    let entries = text
        .trim()
        .split('/')
        .map(|part| {
            let part = part.trim();
            if part.is_empty() || part == "1" {
                Ok(MonoidElement::identity())
            } else {
                m.parse_element(part)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Multifraction::new(entries)
}

/// Splits `w` into maximal runs `w1 W2 w3 ...` of alternating sign; `w1` is
/// empty exactly when `w` starts with a negative letter.
pub fn from_signed_word(m: &Monoid, w: &SignedWord) -> Multifraction {
    let mut entries = Vec::new();
    let mut run: Vec<Gen> = Vec::new();
    let mut positive = true;
    for l in w.letters() {
        if l.is_pos() != positive {
            entries.push(run_element(m, &run, positive));
            run.clear();
            positive = l.is_pos();
        }
        run.push(l.gen);
    }
    entries.push(run_element(m, &run, positive));
    Multifraction { entries }
}

fn run_element(m: &Monoid, run: &[Gen], positive: bool) -> MonoidElement {
    if positive {
        m.element_of(run)
    } else {
        // the run spells the inverse of its reversal
        let w: Vec<Gen> = run.iter().rev().copied().collect();
        m.element_of(&w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RStep {
    pub i: usize,
    pub x: MonoidElement,
}

impl RStep {
    pub fn new(i: usize, x: MonoidElement) -> Self {
        RStep { i, x }
    }

    pub fn to_trace(&self) -> TraceStep {
        TraceStep::R {
            i: self.i,
            x: self.x.clone(),
        }
    }
}

/// `a • R_{i,x}`, or `None` when the rule does not apply.
pub fn apply_red(m: &Monoid, a: &Multifraction, step: &RStep) -> Result<Option<Multifraction>> {
    let RStep { i, x } = step;
    let i = *i;
    if i < 1 || i >= a.depth() || x.is_identity() {
        return Ok(None);
    }
    let mut b = a.entries.clone();
    if i == 1 {
        let (Some(b1), Some(b2)) = (
            m.divides(Side::Right, x, a.entry(1)),
            m.divides(Side::Right, x, a.entry(2)),
        ) else {
            return Ok(None);
        };
        b[0] = b1;
        b[1] = b2;
    } else if i % 2 == 0 {
        let Some(next) = m.divides(Side::Left, x, a.entry(i + 1)) else {
            return Ok(None);
        };
        // x b_i = a_i x' = x ∨ a_i
        let Some((_, bi, xp)) = m.lcm_data(Side::Right, x, a.entry(i))? else {
            return Ok(None);
        };
        b[i - 2] = m.multiply(a.entry(i - 1), &xp);
        b[i - 1] = bi;
        b[i] = next;
    } else {
        let Some(next) = m.divides(Side::Right, x, a.entry(i + 1)) else {
            return Ok(None);
        };
        // b_i x = x' a_i = x ∨~ a_i
        let Some((_, xp, bi)) = m.lcm_data(Side::Left, x, a.entry(i))? else {
            return Ok(None);
        };
        b[i - 2] = m.multiply(&xp, a.entry(i - 1));
        b[i - 1] = bi;
        b[i] = next;
    }
    Ok(Some(Multifraction { entries: b }))
}

/// Every applicable `R_{i,x}`, ordered by `i` then by the canonical word of `x`.
pub fn enumerate_reds(m: &Monoid, a: &Multifraction) -> Result<Vec<RStep>> {
    let mut out = Vec::new();
    for i in 1..a.depth() {
        if i == 1 {
            let d2 = m.divisor_set(Side::Right, a.entry(2));
            for x in m.divisor_set(Side::Right, a.entry(1)).iter() {
                if !x.is_identity() && d2.binary_search(x).is_ok() {
                    out.push(RStep::new(1, x.clone()));
                }
            }
        } else {
            let (div_side, lcm_side) = if i % 2 == 0 {
                (Side::Left, Side::Right)
            } else {
                (Side::Right, Side::Left)
            };
            for x in m.divisor_set(div_side, a.entry(i + 1)).iter() {
                if !x.is_identity() && m.lcm(lcm_side, x, a.entry(i))?.is_some() {
                    out.push(RStep::new(i, x.clone()));
                }
            }
        }
    }
    Ok(out)
}

pub fn pad(a: &Multifraction, p: usize) -> Multifraction {
    a.pad(p)
}

/// Replays an R-trace, failing on the first step that does not apply.
pub fn replay_reds(m: &Monoid, a: &Multifraction, trace: &[TraceStep]) -> Result<Multifraction> {
    let mut cur = a.clone();
    for (k, s) in trace.iter().enumerate() {
        let TraceStep::R { i, x } = s else {
            return Err(Error::Precondition(format!("step {k} is not an R-step")));
        };
        cur = apply_red(m, &cur, &RStep::new(*i, x.clone()))?
            .ok_or_else(|| Error::Precondition(format!("step {k} (R_{i}) does not apply")))?;
    }
    Ok(cur)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// The first target reached in breadth-first order, with its trace.
    pub found: Option<(Multifraction, ReductionTrace)>,
    /// Distinct states stored.
    pub states: usize,
}

/// Breadth-first search over R-reductions from `start` for a multifraction
/// satisfying `target`.
///
/// Exhausting the reachable set without a hit gives `found: None`; running
/// past `budget` states without a hit is `BudgetExhausted`.
pub fn search_reductions<F>(
    m: &Monoid,
    start: &Multifraction,
    budget: usize,
    target: F,
) -> Result<SearchOutcome>
where
    F: Fn(&Multifraction) -> bool,
{
    let mut seen: IndexSet<Box<[u8]>> = IndexSet::new();
    let mut parent: Vec<Option<(usize, RStep)>> = Vec::new();
    seen.insert(start.key());
    parent.push(None);
    let path = |seen: &IndexSet<Box<[u8]>>, parent: &[Option<(usize, RStep)>], mut k: usize| {
        let end = Multifraction::from_key(&seen[k]);
        let mut steps = Vec::new();
        while let Some((p, s)) = &parent[k] {
            steps.push(s.to_trace());
            k = *p;
        }
        steps.reverse();
        (end, steps)
    };
    if target(start) {
        return Ok(SearchOutcome {
            found: Some((start.clone(), Vec::new())),
            states: 1,
        });
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let a = Multifraction::from_key(&seen[k]);
        for step in enumerate_reds(m, &a)? {
            let Some(b) = apply_red(m, &a, &step)? else {
                continue;
            };
            let (idx, fresh) = seen.insert_full(b.key());
            if !fresh {
                continue;
            }
            parent.push(Some((k, step)));
            if target(&b) {
                return Ok(SearchOutcome {
                    found: Some(path(&seen, &parent, idx)),
                    states: seen.len(),
                });
            }
            if seen.len() >= budget {
                return Err(Error::BudgetExhausted {
                    explored: seen.len(),
                });
            }
            queue.push_back(idx);
        }
    }
    Ok(SearchOutcome {
        found: None,
        states: seen.len(),
    })
}

/// Searches for a reduction of `a` to the all-trivial multifraction of the
/// same depth.
pub fn reduces_to_trivial(m: &Monoid, a: &Multifraction, budget: usize) -> Result<SearchOutcome> {
    search_reductions(m, a, budget, |b| b.is_trivial())
}

/// Applies the first applicable R-step until none is left.
///
/// Reduction terminates in a noetherian monoid, and when it is convergent
/// (FC type) the endpoint is the unique irreducible form of `a`.
pub fn reduce_greedy(
    m: &Monoid,
    a: &Multifraction,
    budget: usize,
) -> Result<(Multifraction, ReductionTrace)> {
    let mut cur = a.clone();
    let mut trace = Vec::new();
    while let Some(step) = enumerate_reds(m, &cur)?.into_iter().next() {
        if trace.len() >= budget {
            return Err(Error::BudgetExhausted {
                explored: trace.len(),
            });
        }
        cur = apply_red(m, &cur, &step)?.expect("enumerated step applies");
        trace.push(step.to_trace());
    }
    Ok((cur, trace))
}

/// Group equality through R-reduction; decisive only for presentations of
/// FC type, where reduction is convergent and `w1 w2^-1` represents 1 exactly
/// when its irreducible form is trivial.
pub fn equal_in_group_fc(
    m: &Monoid,
    w1: &SignedWord,
    w2: &SignedWord,
    budget: usize,
) -> Result<bool> {
    let a = from_signed_word(m, &w1.concat(&w2.invert()));
    Ok(reduce_greedy(m, &a, budget)?.0.is_trivial())
}
