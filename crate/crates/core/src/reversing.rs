//! Left and right subword reversing on signed words.

use crate::error::{Error, Result};
use crate::monoid::Side;
use crate::presentation::ArtinPresentation;
use crate::trace::{ReductionTrace, TraceStep};
use crate::word::{Letter, SignedWord};

pub const DEFAULT_REVERSING_BUDGET: usize = 10_000;

pub fn invert(w: &SignedWord) -> SignedWord {
    w.invert()
}

/// The replacement for the factor `(a, b)`, or `None` if no reversing step
/// applies there.
fn replacement(p: &ArtinPresentation, side: Side, a: Letter, b: Letter) -> Option<Vec<Letter>> {
    match side {
        Side::Right => {
            // s^-1 t -> v u^-1 with s v = t u
            if !(a.is_neg() && b.is_pos()) {
                return None;
            }
            if a.gen == b.gen {
                return Some(Vec::new());
            }
            let (v, u) = p.right_complements(a.gen, b.gen)?;
            let mut out = SignedWord::positive(&v).0;
            out.extend(SignedWord::negative(&u).0);
            Some(out)
        }
        Side::Left => {
            // s t^-1 -> v^-1 u with v s = u t
            if !(a.is_pos() && b.is_neg()) {
                return None;
            }
            if a.gen == b.gen {
                return Some(Vec::new());
            }
            let (v, u) = p.left_complements(a.gen, b.gen)?;
            let mut out = SignedWord::negative(&v).0;
            out.extend(SignedWord::positive(&u).0);
            Some(out)
        }
    }
}

/// One reversing step on the factor starting at `position`.
pub fn reverse_step(
    p: &ArtinPresentation,
    side: Side,
    w: &SignedWord,
    position: usize,
) -> Option<SignedWord> {
    if position + 1 >= w.len() {
        return None;
    }
    let r = replacement(p, side, w.0[position], w.0[position + 1])?;
    let mut out = w.0.clone();
    out.splice(position..position + 2, r);
    Some(SignedWord(out))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reversal {
    pub terminal: SignedWord,
    pub steps: ReductionTrace,
}

/// Reverses at the leftmost applicable factor until none remains.
pub fn reverse_full(
    p: &ArtinPresentation,
    side: Side,
    w: &SignedWord,
    budget: usize,
) -> Result<Reversal> {
    let mut cur = w.0.clone();
    let mut steps = Vec::new();
    let mut k = 0;
    while k + 1 < cur.len() {
        match replacement(p, side, cur[k], cur[k + 1]) {
            None => k += 1,
            Some(r) => {
                if steps.len() >= budget {
                    return Err(Error::BudgetExhausted {
                        explored: steps.len(),
                    });
                }
                cur.splice(k..k + 2, r);
                steps.push(match side {
                    Side::Right => TraceStep::RightRev { position: k },
                    Side::Left => TraceStep::LeftRev { position: k },
                });
                // nothing left of k-1 can have become applicable
                k = k.saturating_sub(1);
            }
        }
    }
    Ok(Reversal {
        terminal: SignedWord(cur),
        steps,
    })
}

/// Replays a list of reversing steps, failing on the first inapplicable one.
pub fn replay(p: &ArtinPresentation, w: &SignedWord, steps: &[TraceStep]) -> Option<SignedWord> {
    let mut cur = w.clone();
    for s in steps {
        cur = match *s {
            TraceStep::RightRev { position } => reverse_step(p, Side::Right, &cur, position)?,
            TraceStep::LeftRev { position } => reverse_step(p, Side::Left, &cur, position)?,
            _ => return None,
        };
    }
    Some(cur)
}
