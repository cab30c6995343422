//! Letters and words over a generating set and its formal inverses.

use std::fmt;

/// Index of a generator in its presentation's declared order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(pub u8);

impl Gen {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A word in the generators only.
pub type PositiveWord = Vec<Gen>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(gen: Gen) -> Self {
        Letter {
            gen,
            sign: Sign::Pos,
        }
    }

    pub fn neg(gen: Gen) -> Self {
        Letter {
            gen,
            sign: Sign::Neg,
        }
    }

    pub fn is_pos(self) -> bool {
        self.sign == Sign::Pos
    }

    pub fn is_neg(self) -> bool {
        self.sign == Sign::Neg
    }

    pub fn inverse(self) -> Self {
        let sign = match self.sign {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        };
        Letter {
            gen: self.gen,
            sign,
        }
    }
}

/// A word over generators and formal inverses. Free reduction is never
/// applied implicitly.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedWord(pub Vec<Letter>);

impl SignedWord {
    pub fn new() -> Self {
        SignedWord(Vec::new())
    }

    pub fn positive(word: &[Gen]) -> Self {
        SignedWord(word.iter().map(|&g| Letter::pos(g)).collect())
    }

    /// The inverse of a positive word, `s1 s2 .. sk` -> `Sk .. S2 S1`.
    pub fn negative(word: &[Gen]) -> Self {
        SignedWord(word.iter().rev().map(|&g| Letter::neg(g)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Exchange every letter with its inverse and reverse the order.
    pub fn invert(&self) -> SignedWord {
        SignedWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &SignedWord) -> SignedWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SignedWord(v)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| l.is_pos())
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|l| l.is_neg())
    }

    /// Exponent sum: the image under the map sending every generator to 1.
    pub fn exponent_sum(&self) -> i64 {
        self.0.iter().map(|l| if l.is_pos() { 1 } else { -1 }).sum()
    }

    /// Cancels adjacent `sS` / `Ss` pairs until none remain.
    pub fn free_reduce(&self) -> SignedWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        SignedWord(out)
    }

    /// If the word has shape `p N` (positive letters then negative ones),
    /// returns the positive words `(p, n)` with the word equal to `p` followed
    /// by the inverse of `n`.
    pub fn split_pos_neg(&self) -> Option<(PositiveWord, PositiveWord)> {
        let k = self
            .0
            .iter()
            .position(|l| l.is_neg())
            .unwrap_or(self.0.len());
        if self.0[k..].iter().any(|l| l.is_pos()) {
            return None;
        }
        let p = self.0[..k].iter().map(|l| l.gen).collect();
        let n = self.0[k..].iter().rev().map(|l| l.gen).collect();
        Some((p, n))
    }

    /// If the word has shape `N p`, returns `(n, p)` with the word equal to the
    /// inverse of `n` followed by `p`.
    pub fn split_neg_pos(&self) -> Option<(PositiveWord, PositiveWord)> {
        let k = self
            .0
            .iter()
            .position(|l| l.is_pos())
            .unwrap_or(self.0.len());
        if self.0[k..].iter().any(|l| l.is_neg()) {
            return None;
        }
        let n = self.0[..k].iter().rev().map(|l| l.gen).collect();
        let p = self.0[k..].iter().map(|l| l.gen).collect();
        Some((n, p))
    }
}

impl FromIterator<Letter> for SignedWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        SignedWord(iter.into_iter().collect())
    }
}

/// Alternating word `s t s t ...` of the given length.
pub fn alternating(s: Gen, t: Gen, len: usize) -> PositiveWord {
    (0..len).map(|k| if k % 2 == 0 { s } else { t }).collect()
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}
