//! Rule descriptors certifying a transformation, and their JSON records.

use serde::Serialize;

use crate::monoid::MonoidElement;
use crate::presentation::ArtinPresentation;
use crate::word::SignedWord;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TraceStep {
    /// R-reduction `R_{i,x}`.
    R {
        i: usize,
        x: MonoidElement,
    },
    /// Split rule `R<i,x,y>`.
    Split {
        i: usize,
        x: MonoidElement,
        y: MonoidElement,
    },
    Trim {
        i: usize,
    },
    /// Replace the positive factor `[start, end)` by an equivalent word.
    PosEquiv {
        start: usize,
        end: usize,
        replacement: SignedWord,
    },
    /// Same on a negative factor.
    NegEquiv {
        start: usize,
        end: usize,
        replacement: SignedWord,
    },
    RightRev {
        position: usize,
    },
    LeftRev {
        position: usize,
    },
}

pub type ReductionTrace = Vec<TraceStep>;

/// One serialisable trace record, words rendered through the presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule")]
pub enum TraceRecord {
    R {
        i: usize,
        x: String,
    },
    S {
        i: usize,
        x: String,
        y: String,
    },
    T {
        i: usize,
    },
    #[serde(rename = "pos")]
    Pos {
        start: usize,
        end: usize,
        replacement: String,
    },
    #[serde(rename = "neg")]
    Neg {
        start: usize,
        end: usize,
        replacement: String,
    },
    #[serde(rename = "rrev")]
    RightRev {
        position: usize,
    },
    #[serde(rename = "lrev")]
    LeftRev {
        position: usize,
    },
}

impl TraceStep {
    pub fn record(&self, pres: &ArtinPresentation) -> TraceRecord {
        let el = |x: &MonoidElement| pres.format_positive(x.word());
        match self {
            TraceStep::R { i, x } => TraceRecord::R { i: *i, x: el(x) },
            TraceStep::Split { i, x, y } => TraceRecord::S {
                i: *i,
                x: el(x),
                y: el(y),
            },
            TraceStep::Trim { i } => TraceRecord::T { i: *i },
            TraceStep::PosEquiv {
                start,
                end,
                replacement,
            } => TraceRecord::Pos {
                start: *start,
                end: *end,
                replacement: pres.format_word(replacement),
            },
            TraceStep::NegEquiv {
                start,
                end,
                replacement,
            } => TraceRecord::Neg {
                start: *start,
                end: *end,
                replacement: pres.format_word(replacement),
            },
            TraceStep::RightRev { position } => TraceRecord::RightRev {
                position: *position,
            },
            TraceStep::LeftRev { position } => TraceRecord::LeftRev {
                position: *position,
            },
        }
    }
}

pub fn trace_records(pres: &ArtinPresentation, trace: &[TraceStep]) -> Vec<TraceRecord> {
    trace.iter().map(|s| s.record(pres)).collect()
}
