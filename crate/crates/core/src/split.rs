//! Split reduction: rules `R<i,x,y>` and trims `T_i`, their translations to
//! and from R-reduction, and a bounded search.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::monoid::{Monoid, MonoidElement, Side};
use crate::multifraction::{apply_red, Multifraction, RStep, SearchOutcome};
use crate::trace::{ReductionTrace, TraceStep};

pub const DEFAULT_SPLIT_STATES: usize = 100_000;
pub const SPLIT_DEPTH_SLACK: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SStep {
    Split {
        i: usize,
        x: MonoidElement,
        y: MonoidElement,
    },
    Trim {
        i: usize,
    },
}

impl SStep {
    pub fn to_trace(&self) -> TraceStep {
        match self {
            SStep::Split { i, x, y } => TraceStep::Split {
                i: *i,
                x: x.clone(),
                y: y.clone(),
            },
            SStep::Trim { i } => TraceStep::Trim { i: *i },
        }
    }

    pub fn from_trace(step: &TraceStep) -> Option<SStep> {
        match step {
            TraceStep::Split { i, x, y } => Some(SStep::Split {
                i: *i,
                x: x.clone(),
                y: y.clone(),
            }),
            TraceStep::Trim { i } => Some(SStep::Trim { i: *i }),
            _ => None,
        }
    }
}

/// `a • R<i,x,y>`; depth grows by 2.
pub fn apply_split(
    m: &Monoid,
    a: &Multifraction,
    i: usize,
    x: &MonoidElement,
    y: &MonoidElement,
) -> Result<Option<Multifraction>> {
    if i < 1 || i >= a.depth() || (x.is_identity() && y.is_identity()) {
        return Ok(None);
    }
    let (ai, next) = (a.entry(i), a.entry(i + 1));
    let quads = if i.is_multiple_of(2) {
        // y b_i = a_i, y b_{i+1} = x b_{i+2} = x ∨ y, x b_{i+3} = a_{i+1}
        let (Some(bi), Some(b3)) = (m.divides(Side::Left, y, ai), m.divides(Side::Left, x, next))
        else {
            return Ok(None);
        };
        let Some((_, x_under_y, y_under_x)) = m.lcm_data(Side::Right, x, y)? else {
            return Ok(None);
        };
        [bi, y_under_x, x_under_y, b3]
    } else {
        // b_i y = a_i, b_{i+1} y = b_{i+2} x = x ∨~ y, b_{i+3} x = a_{i+1}
        let (Some(bi), Some(b3)) = (
            m.divides(Side::Right, y, ai),
            m.divides(Side::Right, x, next),
        ) else {
            return Ok(None);
        };
        let Some((_, x_over_y, y_over_x)) = m.lcm_data(Side::Left, x, y)? else {
            return Ok(None);
        };
        [bi, x_over_y, y_over_x, b3]
    };
    let e = a.entries();
    let mut out = e[..i - 1].to_vec();
    out.extend(quads);
    out.extend_from_slice(&e[i + 1..]);
    Ok(Some(Multifraction::with_entries(out)))
}

/// `a • T_i`; needs `a_{i+1} = 1`, depth shrinks by 2.
pub fn apply_trim(m: &Monoid, a: &Multifraction, i: usize) -> Option<Multifraction> {
    if i < 1 || i + 2 > a.depth() || !a.entry(i + 1).is_identity() {
        return None;
    }
    let merged = if i % 2 == 1 {
        m.multiply(a.entry(i), a.entry(i + 2))
    } else {
        m.multiply(a.entry(i + 2), a.entry(i))
    };
    let e = a.entries();
    let mut out = e[..i - 1].to_vec();
    out.push(merged);
    out.extend_from_slice(&e[i + 2..]);
    Some(Multifraction::with_entries(out))
}

pub fn apply_sstep(m: &Monoid, a: &Multifraction, s: &SStep) -> Result<Option<Multifraction>> {
    match s {
        SStep::Split { i, x, y } => apply_split(m, a, *i, x, y),
        SStep::Trim { i } => Ok(apply_trim(m, a, *i)),
    }
}

/// Replays split and trim steps, failing on the first one that does not apply.
pub fn replay_splits(m: &Monoid, a: &Multifraction, trace: &[TraceStep]) -> Result<Multifraction> {
    let mut cur = a.clone();
    for (k, t) in trace.iter().enumerate() {
        let s = SStep::from_trace(t)
            .ok_or_else(|| Error::Precondition(format!("step {k} is not a split or trim")))?;
        cur = apply_sstep(m, &cur, &s)?
            .ok_or_else(|| Error::Precondition(format!("step {k} does not apply")))?;
    }
    Ok(cur)
}

/// All applicable split and trim steps: splits by `(i, x, y)` in canonical
/// order, then trims by `i`.
pub fn enumerate_ssteps(m: &Monoid, a: &Multifraction) -> Result<Vec<SStep>> {
    let mut out = Vec::new();
    for i in 1..a.depth() {
        let (div_side, lcm_side) = if i % 2 == 0 {
            (Side::Left, Side::Right)
        } else {
            (Side::Right, Side::Left)
        };
        let xs = m.divisor_set(div_side, a.entry(i + 1));
        let ys = m.divisor_set(div_side, a.entry(i));
        for x in xs.iter() {
            for y in ys.iter() {
                if x.is_identity() && y.is_identity() {
                    continue;
                }
                if m.lcm(lcm_side, x, y)?.is_some() {
                    out.push(SStep::Split {
                        i,
                        x: x.clone(),
                        y: y.clone(),
                    });
                }
            }
        }
    }
    for i in 1..a.depth().saturating_sub(1) {
        if a.entry(i + 1).is_identity() {
            out.push(SStep::Trim { i });
        }
    }
    Ok(out)
}

/// Two S-steps reaching `a • R_{i,x}`: the split `R<i,x,a_i>`, then the trim
/// that absorbs the trivial entry it leaves at position `i` (or at position 1
/// followed by a trivial second entry when `i = 1`).
pub fn simulate_r_by_s(m: &Monoid, a: &Multifraction, step: &RStep) -> Result<ReductionTrace> {
    if apply_red(m, a, step)?.is_none() {
        return Err(Error::Precondition(format!("R_{} does not apply", step.i)));
    }
    let i = step.i;
    let trim = if i == 1 { 1 } else { i - 1 };
    Ok(vec![
        TraceStep::Split {
            i,
            x: step.x.clone(),
            y: a.entry(i).clone(),
        },
        TraceStep::Trim { i: trim },
    ])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaddedSimulation {
    /// `pad(a, p)` reduces along `rtrace` to the endpoint followed by `2q`
    /// trivial entries.
    pub p: usize,
    pub q: usize,
    pub rtrace: ReductionTrace,
}

fn push_red(out: &mut Vec<RStep>, i: usize, x: &MonoidElement) {
    if !x.is_identity() {
        out.push(RStep::new(i, x.clone()));
    }
}

/// R-steps simulating one S-step from `a`, with their `(p, q)`.
fn simulate_one(m: &Monoid, a: &Multifraction, s: &SStep) -> Result<(usize, usize, Vec<RStep>)> {
    let mut steps = Vec::new();
    match s {
        SStep::Split { i, x, y } => {
            let i = *i;
            let bi = if i % 2 == 0 {
                m.divides(Side::Left, y, a.entry(i))
            } else {
                m.divides(Side::Right, y, a.entry(i))
            }
            .ok_or_else(|| Error::Precondition(format!("split at {i} does not apply")))?;
            // shift a_1 .. a_{i-1} left through the padding, split a_i into
            // b_i / 1 / y, then reduce x into y
            for k in 2..=i {
                push_red(&mut steps, k, a.entry(k - 1));
            }
            push_red(&mut steps, i + 1, &bi);
            push_red(&mut steps, i + 2, x);
            Ok((1, 0, steps))
        }
        SStep::Trim { i } => {
            let i = *i;
            push_red(&mut steps, i + 1, a.entry(i + 2));
            for k in i + 2..a.depth() {
                push_red(&mut steps, k, a.entry(k + 1));
            }
            Ok((0, 1, steps))
        }
    }
}

/// Turns an S-trace from `a` into an R-trace from `pad(a, p)` to the
/// endpoint followed by `2q` trivial entries.
pub fn simulate_s_by_padded_r(
    m: &Monoid,
    a: &Multifraction,
    strace: &[SStep],
) -> Result<PaddedSimulation> {
    let (mut p, mut q) = (0, 0);
    let mut trace: Vec<RStep> = Vec::new();
    let mut cur = a.clone();
    for s in strace {
        let next = apply_sstep(m, &cur, s)?
            .ok_or_else(|| Error::Precondition("S-trace does not apply".into()))?;
        let (dp, dq, steps) = simulate_one(m, &cur, s)?;
        for r in &mut trace {
            r.i += 2 * dp;
        }
        trace.extend(steps);
        p += dp;
        q += dq;
        cur = next;
    }
    Ok(PaddedSimulation {
        p,
        q,
        rtrace: trace.iter().map(|r| r.to_trace()).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitBudget {
    pub states: usize,
    /// States deeper than this are not stored.
    pub max_depth: usize,
}

impl SplitBudget {
    pub fn for_start(a: &Multifraction) -> Self {
        SplitBudget {
            states: DEFAULT_SPLIT_STATES,
            max_depth: 2 * a.depth() + SPLIT_DEPTH_SLACK,
        }
    }
}

/// Bounded search for `a ⇒* 1` under split reduction.
///
/// States are expanded smallest word-length first, then smallest depth. A
/// miss is only reported as `found: None` when no state was pruned by the
/// depth bound; otherwise it is `BudgetExhausted`.
pub fn split_reduces_to_trivial(
    m: &Monoid,
    a: &Multifraction,
    budget: SplitBudget,
) -> Result<SearchOutcome> {
    if a.is_trivial() {
        return Ok(SearchOutcome {
            found: Some((a.clone(), Vec::new())),
            states: 1,
        });
    }
    let mut seen: IndexSet<Box<[u8]>> = IndexSet::new();
    let mut parent: Vec<Option<(usize, SStep)>> = Vec::new();
    seen.insert(a.key());
    parent.push(None);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((a.wordlength(), a.depth(), 0usize)));
    let mut pruned = false;
    while let Some(Reverse((_, _, k))) = heap.pop() {
        let cur = Multifraction::from_key(&seen[k]);
        for s in enumerate_ssteps(m, &cur)? {
            let Some(b) = apply_sstep(m, &cur, &s)? else {
                continue;
            };
            if b.depth() > budget.max_depth {
                pruned = true;
                continue;
            }
            let (idx, fresh) = seen.insert_full(b.key());
            if !fresh {
                continue;
            }
            parent.push(Some((k, s)));
            if b.is_trivial() {
                let mut steps = Vec::new();
                let mut j = idx;
                while let Some((pj, st)) = &parent[j] {
                    steps.push(st.to_trace());
                    j = *pj;
                }
                steps.reverse();
                return Ok(SearchOutcome {
                    found: Some((b, steps)),
                    states: seen.len(),
                });
            }
            if seen.len() >= budget.states {
                return Err(Error::BudgetExhausted {
                    explored: seen.len(),
                });
            }
            heap.push(Reverse((b.wordlength(), b.depth(), idx)));
        }
    }
    if pruned {
        return Err(Error::BudgetExhausted {
            explored: seen.len(),
        });
    }
    Ok(SearchOutcome {
        found: None,
        states: seen.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multifraction::{parse_multifraction, replay_reds};
    use crate::presentation::ArtinPresentation;

    fn a2() -> Monoid {
        Monoid::new(ArtinPresentation::parse("generators: a b\nm: a b 3").unwrap())
    }

    fn a2_tilde() -> Monoid {
        Monoid::new(
            ArtinPresentation::parse("generators: a b c\nm: a b 3\nm: b c 3\nm: a c 3").unwrap(),
        )
    }

    fn mf(m: &Monoid, s: &str) -> Multifraction {
        parse_multifraction(m, s).unwrap()
    }

    fn el(m: &Monoid, s: &str) -> MonoidElement {
        m.parse_element(s).unwrap()
    }

    fn split(m: &Monoid, a: &Multifraction, i: usize, x: &str, y: &str) -> Multifraction {
        apply_split(m, a, i, &el(m, x), &el(m, y)).unwrap().unwrap()
    }

    #[test]
    fn two_splits_on_the_affine_example() {
        let m = a2_tilde();
        let a = mf(&m, "ab/c");
        let b = split(&m, &a, 1, "c", "b");
        assert_eq!(b.format(m.presentation()), "a/bc/cb/1");
        let c = split(&m, &b, 1, "c", "a");
        assert_eq!(c, mf(&m, "1/ac/ca/b/cb/1"));
        let mut d = c;
        for (i, x, y) in [(3, "b", "a"), (3, "b", "c"), (5, "a", "c"), (5, "a", "b")] {
            d = split(&m, &d, i, x, y);
        }
        assert_eq!(d, mf(&m, "1/ac/1/cb/1/ba/ab/c/ac/1/ba/1/cb/1"));
    }

    #[test]
    fn padding_insertion_split() {
        let m = a2();
        let a = mf(&m, "1/1/ab/b");
        // first nontrivial entry is a_3
        let b = split(&m, &a, 3, "", "ab");
        assert_eq!(b, mf(&m, "1/1/1/1/ab/b"));
        assert_eq!(
            apply_split(&m, &a, 3, &m.identity(), &m.identity()).unwrap(),
            None
        );
    }

    #[test]
    fn trims() {
        let m = a2();
        let p = m.presentation();
        assert_eq!(
            apply_trim(&m, &mf(&m, "a/1/b/ab"), 1).unwrap().format(p),
            "ab/ab"
        );
        assert_eq!(
            apply_trim(&m, &Multifraction::trivial(3), 1).unwrap(),
            Multifraction::trivial(1)
        );
        // i = 2 even: b_2 = a_4 a_2
        assert_eq!(
            apply_trim(&m, &mf(&m, "a/b/1/a"), 2).unwrap().format(p),
            "a/ab"
        );
        assert_eq!(apply_trim(&m, &mf(&m, "a/b/a"), 1), None);
    }

    #[test]
    fn r_step_by_split_and_trim() {
        let m = a2();
        let a = mf(&m, "1/1/ab");
        let step = RStep::new(2, el(&m, "a"));
        let t = simulate_r_by_s(&m, &a, &step).unwrap();
        assert_eq!(
            t[0],
            TraceStep::Split {
                i: 2,
                x: el(&m, "a"),
                y: m.identity()
            }
        );
        assert_eq!(t[1], TraceStep::Trim { i: 1 });
        assert_eq!(replay_splits(&m, &a, &t).unwrap(), mf(&m, "a/1/b"));

        let a = mf(&m, "ab/b");
        let step = RStep::new(1, el(&m, "b"));
        let t = simulate_r_by_s(&m, &a, &step).unwrap();
        assert_eq!(replay_splits(&m, &a, &t).unwrap(), mf(&m, "a/1"));
        assert!(simulate_r_by_s(&m, &a, &RStep::new(1, el(&m, "a"))).is_err());
    }

    #[test]
    fn padded_simulation_of_single_steps() {
        let m = a2();
        let a = mf(&m, "ab/b/a");
        let s = SStep::Split {
            i: 2,
            x: el(&m, "a"),
            y: el(&m, "b"),
        };
        let end = apply_sstep(&m, &a, &s).unwrap().unwrap();
        let sim = simulate_s_by_padded_r(&m, &a, &[s]).unwrap();
        assert_eq!((sim.p, sim.q), (1, 0));
        assert_eq!(replay_reds(&m, &a.pad(1), &sim.rtrace).unwrap(), end);

        let a = mf(&m, "a/1/b/ab");
        let t = SStep::Trim { i: 1 };
        let sim = simulate_s_by_padded_r(&m, &a, std::slice::from_ref(&t)).unwrap();
        assert_eq!((sim.p, sim.q), (0, 1));
        let end = apply_sstep(&m, &a, &t).unwrap().unwrap();
        let mut padded = end.entries().to_vec();
        padded.extend([m.identity(), m.identity()]);
        assert_eq!(
            replay_reds(&m, &a, &sim.rtrace).unwrap().entries(),
            &padded[..]
        );

        let sim = simulate_s_by_padded_r(&m, &a, &[]).unwrap();
        assert_eq!((sim.p, sim.q, sim.rtrace.len()), (0, 0, 0));
    }

    #[test]
    fn split_search() {
        let m = a2();
        let r = split_reduces_to_trivial(
            &m,
            &Multifraction::trivial(2),
            SplitBudget::for_start(&Multifraction::trivial(2)),
        );
        assert!(r.unwrap().found.is_some());
        let w = m.presentation().parse_word("abaBAB").unwrap();
        let a = crate::multifraction::from_signed_word(&m, &w);
        let (end, trace) = split_reduces_to_trivial(&m, &a, SplitBudget::for_start(&a))
            .unwrap()
            .found
            .unwrap();
        assert!(end.is_trivial());
        assert_eq!(replay_splits(&m, &a, &trace).unwrap(), end);
    }
}
