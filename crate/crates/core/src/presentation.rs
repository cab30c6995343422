//! Finite Artin-Tits presentations: parsing, relations, classification.
//!
//! File format (UTF-8 text):
//!
//! ```text
//! # comment
//! generators: a b c
//! m: a b 3
//! m: b c 3
//! ```
//!
//! Pairs without an `m:` line are free (label infinity).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{alternating, Gen, Letter, PositiveWord, Sign, SignedWord};

/// Largest supported rank; generator indices must fit in a byte with one
/// value left over as a separator for compact state keys.
pub const MAX_GENERATORS: usize = 255;

/// One defining relation `s t s .. = t s t ..`, both sides of length `m_st`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub lhs: PositiveWord,
    pub rhs: PositiveWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinPresentation {
    names: Vec<String>,
    // symmetric; None means m = infinity
    labels: Vec<Vec<Option<u32>>>,
}

/// Serializable view used in JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct PresentationSummary {
    pub generators: Vec<String>,
    pub labels: Vec<(String, String, u32)>,
}

fn valid_ident(tok: &str) -> bool {
    let mut chars = tok.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl ArtinPresentation {
    /// A presentation with the given generators and every pair free.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.len() > MAX_GENERATORS {
            return Err(Error::Precondition(format!(
                "at most {MAX_GENERATORS} generators are supported"
            )));
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if out.iter().any(|m| m == n) {
                return Err(Error::DuplicateGenerator(n.to_string()));
            }
            out.push(n.to_string());
        }
        let k = out.len();
        Ok(ArtinPresentation {
            names: out,
            labels: vec![vec![None; k]; k],
        })
    }

    /// Convenience constructor from `(s, t, m)` triples.
    pub fn with_labels<S: AsRef<str>>(names: &[S], labels: &[(&str, &str, u32)]) -> Result<Self> {
        let mut p = Self::new(names)?;
        for &(s, t, m) in labels {
            p.set_label(s, t, m)?;
        }
        Ok(p)
    }

    /// Declares `m_st = m`. Re-declaring the same value is accepted.
    pub fn set_label(&mut self, s: &str, t: &str, m: u32) -> Result<()> {
        let gs = self
            .gen(s)
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))?;
        let gt = self
            .gen(t)
            .ok_or_else(|| Error::UnknownGenerator(t.to_string()))?;
        if gs == gt {
            return Err(Error::DiagonalLabel(s.to_string()));
        }
        if m < 2 {
            return Err(Error::LabelTooSmall {
                s: s.to_string(),
                t: t.to_string(),
                m,
            });
        }
        if let Some(prev) = self.labels[gs.index()][gt.index()] {
            if prev != m {
                return Err(Error::AsymmetricLabel {
                    s: s.to_string(),
                    t: t.to_string(),
                    first: prev,
                    second: m,
                });
            }
        }
        self.labels[gs.index()][gt.index()] = Some(m);
        self.labels[gt.index()][gs.index()] = Some(m);
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut pres: Option<ArtinPresentation> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (key, rest) = content.split_once(':').ok_or_else(|| Error::Parse {
                line,
                msg: format!("expected `key: value`, got `{content}`"),
            })?;
            let toks: Vec<&str> = rest.split_whitespace().collect();
            match key.trim() {
                "generators" => {
                    if pres.is_some() {
                        return Err(Error::Parse {
                            line,
                            msg: "generators declared twice".into(),
                        });
                    }
                    if let Some(bad) = toks.iter().find(|t| !valid_ident(t)) {
                        return Err(Error::Parse {
                            line,
                            msg: format!("invalid generator name `{bad}`"),
                        });
                    }
                    pres = Some(ArtinPresentation::new(&toks)?);
                }
                "m" => {
                    let p = pres.as_mut().ok_or_else(|| Error::Parse {
                        line,
                        msg: "`m:` line before `generators:`".into(),
                    })?;
                    if toks.len() != 3 {
                        return Err(Error::Parse {
                            line,
                            msg: "expected `m: <s> <t> <label>`".into(),
                        });
                    }
                    let (s, t) = (toks[0], toks[1]);
                    if toks[2] == "inf" {
                        let gs = p.gen(s).ok_or_else(|| Error::UnknownGenerator(s.into()))?;
                        let gt = p.gen(t).ok_or_else(|| Error::UnknownGenerator(t.into()))?;
                        if gs == gt {
                            return Err(Error::DiagonalLabel(s.into()));
                        }
                        if let Some(prev) = p.label(gs, gt) {
                            return Err(Error::Parse {
                                line,
                                msg: format!("pair ({s}, {t}) already labelled {prev}"),
                            });
                        }
                        continue;
                    }
                    let m: u32 = toks[2].parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("invalid label `{}`", toks[2]),
                    })?;
                    p.set_label(s, t, m)?;
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        pres.ok_or(Error::Parse {
            line: 0,
            msg: "missing `generators:` line".into(),
        })
    }

    /// Renders the presentation in the file format accepted by [`parse`](Self::parse).
    pub fn to_text(&self) -> String {
        let mut out = format!("generators: {}\n", self.names.join(" "));
        for (s, t, m) in self.summary().labels {
            out.push_str(&format!("m: {s} {t} {m}\n"));
        }
        out
    }

    pub fn summary(&self) -> PresentationSummary {
        let mut labels = Vec::new();
        for s in self.generators() {
            for t in self.generators() {
                if s < t {
                    if let Some(m) = self.label(s, t) {
                        labels.push((self.name(s).to_string(), self.name(t).to_string(), m));
                    }
                }
            }
        }
        PresentationSummary {
            generators: self.names.clone(),
            labels,
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + Clone {
        (0..self.names.len()).map(|i| Gen(i as u8))
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g.index()]
    }

    pub fn gen(&self, name: &str) -> Option<Gen> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Gen(i as u8))
    }

    /// `m_st`, or `None` for a free pair (and for `s == t`).
    pub fn label(&self, s: Gen, t: Gen) -> Option<u32> {
        self.labels[s.index()][t.index()]
    }

    /// The relation `s t s .. = t s t ..`, oriented with `lhs` starting by `s`.
    pub fn relation(&self, s: Gen, t: Gen) -> Option<Relation> {
        let m = self.label(s, t)? as usize;
        Some(Relation {
            lhs: alternating(s, t, m),
            rhs: alternating(t, s, m),
        })
    }

    /// One relation per labelled pair, oriented with the smaller generator first.
    pub fn relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for s in self.generators() {
            for t in self.generators() {
                if s < t {
                    if let Some(r) = self.relation(s, t) {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    /// Right complements: `(v, u)` with `s v = t u` the relation for `(s, t)`.
    pub fn right_complements(&self, s: Gen, t: Gen) -> Option<(PositiveWord, PositiveWord)> {
        let m = self.label(s, t)? as usize;
        Some((alternating(t, s, m - 1), alternating(s, t, m - 1)))
    }

    /// Left complements: `(v, u)` with `v s = u t` the relation for `(s, t)`.
    pub fn left_complements(&self, s: Gen, t: Gen) -> Option<(PositiveWord, PositiveWord)> {
        let m = self.label(s, t)? as usize;
        // v ends with t, u ends with s, both of length m - 1
        let v = if (m - 1).is_multiple_of(2) {
            alternating(s, t, m - 1)
        } else {
            alternating(t, s, m - 1)
        };
        let u = if (m - 1).is_multiple_of(2) {
            alternating(t, s, m - 1)
        } else {
            alternating(s, t, m - 1)
        };
        Some((v, u))
    }

    /// Every triangle of the Coxeter diagram has no label 2, only labels 2,
    /// or some label infinity.
    pub fn is_sufficiently_large(&self) -> bool {
        let n = self.rank();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let ls = [self.labels[i][j], self.labels[j][k], self.labels[i][k]];
                    let twos = ls.iter().filter(|l| **l == Some(2)).count();
                    let free = ls.iter().any(|l| l.is_none());
                    if !(twos == 0 || twos == 3 || free) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True when every generator name is a single lowercase ASCII letter, so
    /// words can use the one-character syntax.
    pub fn has_letter_names(&self) -> bool {
        self.names.iter().all(|n| n.len() == 1 && valid_ident(n))
    }

    fn letter_names(&self) -> Result<()> {
        if self.has_letter_names() {
            Ok(())
        } else {
            Err(Error::InvalidWord(
                "word syntax needs single-letter generator names".into(),
            ))
        }
    }

    /// Parses the one-character word syntax: lowercase letters are
    /// generators, uppercase letters their inverses.
    pub fn parse_word(&self, text: &str) -> Result<SignedWord> {
        self.letter_names()?;
        let mut out = Vec::with_capacity(text.len());
        for c in text.chars() {
            let lower = c.to_ascii_lowercase();
            let g = self
                .gen(lower.encode_utf8(&mut [0; 4]))
                .ok_or_else(|| Error::InvalidWord(format!("unknown letter `{c}` in `{text}`")))?;
            if c.is_ascii_uppercase() {
                out.push(Letter::neg(g));
            } else {
                out.push(Letter::pos(g));
            }
        }
        Ok(SignedWord(out))
    }

    pub fn parse_positive(&self, text: &str) -> Result<PositiveWord> {
        let w = self.parse_word(text)?;
        if !w.is_positive() {
            return Err(Error::InvalidWord(format!(
                "`{text}` is not a positive word"
            )));
        }
        Ok(w.0.into_iter().map(|l| l.gen).collect())
    }

    /// Formats a signed word. Single-letter presentations use the compact
    /// syntax; otherwise names are space-separated and inverses get `^-1`.
    pub fn format_word(&self, w: &SignedWord) -> String {
        if self.has_letter_names() {
            w.letters()
                .iter()
                .map(|l| {
                    let n = self.name(l.gen);
                    match l.sign {
                        Sign::Pos => n.to_string(),
                        Sign::Neg => n.to_ascii_uppercase(),
                    }
                })
                .collect()
        } else {
            w.letters()
                .iter()
                .map(|l| match l.sign {
                    Sign::Pos => self.name(l.gen).to_string(),
                    Sign::Neg => format!("{}^-1", self.name(l.gen)),
                })
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    pub fn format_positive(&self, w: &[Gen]) -> String {
        self.format_word(&SignedWord::positive(w))
    }
}
