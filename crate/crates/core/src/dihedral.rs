//! Two-generator (dihedral) Artin-Tits machinery: the Garside element,
//! fractional normal forms, geodesics, and an explicit R-reduction from a
//! padded fractional normal form to a multifraction spelled by a geodesic.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::monoid::{Monoid, MonoidElement, Side};
use crate::multifraction::{apply_red, from_signed_word, Multifraction, RStep};
use crate::reversing::{reverse_full, DEFAULT_REVERSING_BUDGET};
use crate::trace::ReductionTrace;
use crate::word::{alternating, Gen, Letter, SignedWord};

/// `s ∨ t`, the alternating word of length `m_st`.
pub fn garside_element(m: &Monoid, s: Gen, t: Gen) -> Result<MonoidElement> {
    let p = m.presentation();
    if s == t {
        return Err(Error::Precondition("the two generators must differ".into()));
    }
    match p.label(s, t) {
        Some(k) => Ok(m.element_of(&alternating(s, t, k as usize))),
        None => Err(Error::FreePair(p.name(s).into(), p.name(t).into())),
    }
}

/// The generators occurring in `w`, checked to span a spherical dihedral
/// parabolic. Words over a single generator are accepted.
fn generator_pair(m: &Monoid, w: &SignedWord) -> Result<Vec<Gen>> {
    let mut gens: Vec<Gen> = w.letters().iter().map(|l| l.gen).collect();
    gens.sort();
    gens.dedup();
    if gens.len() > 2 {
        return Err(Error::Precondition(format!(
            "word `{}` uses more than two generators",
            m.presentation().format_word(w)
        )));
    }
    if let [s, t] = gens[..] {
        garside_element(m, s, t)?;
    }
    Ok(gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FractionSide {
    /// `num · den⁻¹`
    Right,
    /// `num⁻¹ · den`
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Num,
    Den,
}

/// A reduced fraction: `(a, b)` for `a b⁻¹` or `(c, d)` for `c⁻¹ d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FractionPair {
    pub side: FractionSide,
    pub num: MonoidElement,
    pub den: MonoidElement,
}

impl FractionPair {
    pub fn part(&self, which: Part) -> &MonoidElement {
        match which {
            Part::Num => &self.num,
            Part::Den => &self.den,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self.side {
            FractionSide::Right => self.den.is_identity(),
            FractionSide::Left => self.num.is_identity(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self.side {
            FractionSide::Right => self.num.is_identity(),
            FractionSide::Left => self.den.is_identity(),
        }
    }

    pub fn to_signed_word(&self) -> SignedWord {
        let num = SignedWord::positive(self.num.word());
        let den = SignedWord::positive(self.den.word());
        match self.side {
            FractionSide::Right => num.concat(&den.invert()),
            FractionSide::Left => num.invert().concat(&den),
        }
    }

    pub fn format(&self, m: &Monoid) -> String {
        let (n, d) = (m.format(&self.num), m.format(&self.den));
        match self.side {
            FractionSide::Right => format!("({n})·({d})^-1"),
            FractionSide::Left => format!("({n})^-1·({d})"),
        }
    }
}

/// The right (`a b⁻¹`, right gcd trivial) or left (`c⁻¹ d`, left gcd
/// trivial) fractional normal form of `cl(w)`.
pub fn fractional_normal_form(
    m: &Monoid,
    side: FractionSide,
    w: &SignedWord,
) -> Result<FractionPair> {
    let gens = generator_pair(m, w)?;
    let p = m.presentation();
    let rev_side = match side {
        FractionSide::Right => Side::Right,
        FractionSide::Left => Side::Left,
    };
    let terminal = match reverse_full(p, rev_side, w, DEFAULT_REVERSING_BUDGET) {
        Ok(r) => r.terminal,
        Err(Error::BudgetExhausted { explored }) => {
            return Err(Error::Structural(format!(
                "two-generator reversing did not terminate within {explored} steps"
            )))
        }
        Err(e) => return Err(e),
    };
    let fp = match side {
        FractionSide::Right => {
            let (pw, nw) = terminal.split_pos_neg().ok_or_else(|| {
                Error::Structural("right reversing left a negative-positive factor".into())
            })?;
            let (a, b) = (m.element_of(&pw), m.element_of(&nw));
            let g = m.gcd(Side::Right, &a, &b)?;
            FractionPair {
                side,
                num: m.divides(Side::Right, &g, &a).expect("gcd divides"),
                den: m.divides(Side::Right, &g, &b).expect("gcd divides"),
            }
        }
        FractionSide::Left => {
            let (nw, pw) = terminal.split_neg_pos().ok_or_else(|| {
                Error::Structural("left reversing left a positive-negative factor".into())
            })?;
            let (c, d) = (m.element_of(&nw), m.element_of(&pw));
            let g = m.gcd(Side::Left, &c, &d)?;
            FractionPair {
                side,
                num: m.divides(Side::Left, &g, &c).expect("gcd divides"),
                den: m.divides(Side::Left, &g, &d).expect("gcd divides"),
            }
        }
    };
    if let [s, t] = gens[..] {
        if !fp.num.is_identity() && !fp.den.is_identity() {
            let delta = garside_element(m, s, t)?;
            for x in [&fp.num, &fp.den] {
                if m.divides(Side::Left, &delta, x).is_some() || m.class(x).len() != 1 {
                    return Err(Error::Structural(format!(
                        "entry {} of a reduced fraction is not uniquely spelled",
                        m.format(x)
                    )));
                }
            }
        }
    }
    Ok(fp)
}

/// The fractional normal form of the same element on the other side.
pub fn other_form(m: &Monoid, fp: &FractionPair) -> Result<FractionPair> {
    let side = match fp.side {
        FractionSide::Right => FractionSide::Left,
        FractionSide::Left => FractionSide::Right,
    };
    fractional_normal_form(m, side, &fp.to_signed_word())
}

fn unique_word<'a>(m: &Monoid, fp: &'a FractionPair, which: Part) -> Result<&'a [Gen]> {
    let x = fp.part(which);
    let partner = match which {
        Part::Num => &fp.den,
        Part::Den => &fp.num,
    };
    if x.is_identity() || partner.is_identity() {
        return Err(Error::Precondition(
            "both entries of the fraction must be nontrivial".into(),
        ));
    }
    if m.class(x).len() != 1 {
        return Err(Error::Structural(format!(
            "{} has several spellings",
            m.format(x)
        )));
    }
    Ok(x.word())
}

/// First letter of the unique word spelling the addressed entry.
pub fn first_letter(m: &Monoid, fp: &FractionPair, which: Part) -> Result<Gen> {
    Ok(unique_word(m, fp, which)?[0])
}

pub fn last_letter(m: &Monoid, fp: &FractionPair, which: Part) -> Result<Gen> {
    Ok(*unique_word(m, fp, which)?.last().unwrap())
}

fn right_form_of(m: &Monoid, a: &MonoidElement, b: &MonoidElement) -> Result<FractionPair> {
    fractional_normal_form(
        m,
        FractionSide::Right,
        &SignedWord::positive(a.word()).concat(&SignedWord::negative(b.word())),
    )
}

/// The letters a geodesic of `a b⁻¹` can start with, paired with what is
/// left after peeling that letter. Empty for positive or negative elements.
fn peel_candidates(m: &Monoid, fp: &FractionPair) -> Result<Vec<(Letter, FractionPair)>> {
    if fp.is_positive() || fp.is_negative() {
        return Ok(Vec::new());
    }
    let x = first_letter(m, fp, Part::Num)?;
    let rest_pos = FractionPair {
        side: FractionSide::Right,
        num: m
            .divides(Side::Left, &m.generator(x), &fp.num)
            .expect("first letter divides"),
        den: fp.den.clone(),
    };
    let left = other_form(m, fp)?;
    let y = last_letter(m, &left, Part::Num)?;
    let c = m
        .divides(Side::Right, &m.generator(y), &left.num)
        .expect("last letter divides");
    let rest_neg = fractional_normal_form(
        m,
        FractionSide::Right,
        &SignedWord::negative(c.word()).concat(&SignedWord::positive(left.den.word())),
    )?;
    Ok(vec![(Letter::pos(x), rest_pos), (Letter::neg(y), rest_neg)])
}

/// Geodesic length of the element with right fractional normal form `fp`.
///
/// Every geodesic starts with one of the two peel candidates, so a level by
/// level search over candidates finds the length.
fn geodesic_length_of(m: &Monoid, fp: &FractionPair) -> Result<usize> {
    let mut best = fp.num.len() + fp.den.len();
    let mut level: Vec<FractionPair> = vec![fp.clone()];
    let mut seen: HashSet<FractionPair> = HashSet::from([fp.clone()]);
    let mut k = 0;
    while !level.is_empty() && k < best {
        let mut next = Vec::new();
        for node in &level {
            if node.is_positive() || node.is_negative() {
                best = best.min(k + node.num.len() + node.den.len());
                continue;
            }
            for (_, child) in peel_candidates(m, node)? {
                if seen.insert(child.clone()) {
                    next.push(child);
                }
            }
        }
        level = next;
        k += 1;
    }
    Ok(best)
}

/// Length of a shortest signed word representing `cl(w)`.
pub fn geodesic_length(m: &Monoid, w: &SignedWord) -> Result<usize> {
    let fp = fractional_normal_form(m, FractionSide::Right, w)?;
    geodesic_length_of(m, &fp)
}

/// A geodesic representative of `cl(w)`, built letter by letter and
/// preferring a positive first letter whenever one starts a geodesic.
pub fn geodesic_word(m: &Monoid, w: &SignedWord) -> Result<SignedWord> {
    let mut fp = fractional_normal_form(m, FractionSide::Right, w)?;
    let mut out = Vec::new();
    loop {
        if fp.is_positive() || fp.is_negative() {
            out.extend(
                SignedWord::positive(fp.num.word())
                    .concat(&SignedWord::negative(fp.den.word()))
                    .0,
            );
            return Ok(SignedWord(out));
        }
        let target = geodesic_length_of(m, &fp)? - 1;
        let mut chosen = None;
        for (letter, rest) in peel_candidates(m, &fp)? {
            if geodesic_length_of(m, &rest)? == target {
                chosen = Some((letter, rest));
                break;
            }
        }
        let (letter, rest) = chosen
            .ok_or_else(|| Error::Structural("no peel candidate starts a geodesic".into()))?;
        out.push(letter);
        fp = rest;
    }
}

/// An explicit R-reduction and its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicTrace {
    pub start: Multifraction,
    pub trace: ReductionTrace,
    pub terminal: Multifraction,
}

/// True when `a`, once trailing trivial entries are dropped, is the
/// multifraction whose entries are the maximal sign runs of `v`.
pub fn sharply_represents(m: &Monoid, v: &SignedWord, a: &Multifraction) -> bool {
    a.strip_trailing_ones() == from_signed_word(m, v).strip_trailing_ones()
}

struct Builder<'a> {
    m: &'a Monoid,
    cur: Multifraction,
    trace: ReductionTrace,
}

impl Builder<'_> {
    /// Entry `k` (1-based), with `1` beyond either end.
    fn entry(&self, k: usize) -> MonoidElement {
        if k == 0 || k > self.cur.depth() {
            MonoidElement::identity()
        } else {
            self.cur.entry(k).clone()
        }
    }

    fn red(&mut self, i: usize, x: MonoidElement) -> Result<()> {
        let step = RStep::new(i, x);
        match apply_red(self.m, &self.cur, &step)? {
            Some(next) => {
                self.trace.push(step.to_trace());
                self.cur = next;
                Ok(())
            }
            None => Err(Error::Structural(format!("R step at {i} does not apply"))),
        }
    }

    fn expect(&self, k: usize, x: &MonoidElement) -> Result<()> {
        if self.entry(k) == *x {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "unexpected entry at position {k}"
            )))
        }
    }

    fn require_gap(&self, k: usize) -> Result<()> {
        if self.entry(k).is_identity() {
            Ok(())
        } else {
            Err(Error::Precondition(
                "padding too short for the geodesic".into(),
            ))
        }
    }
}

/// Starting from `1^{4|v|}/a/b` (right form) or `1^{4|v|-1}/c/d` (left
/// form), R-reduces to a multifraction spelled by `v` followed by trivial
/// entries.
///
/// The element sits as a fraction pair at positions `(q, q+1)`, a right form
/// when `q` is odd and a left form when `q` is even. Each letter of `v` is
/// peeled off the pair, swapping forms first if the letter has the wrong
/// sign, and carried left over trivial entries until it joins the prefix
/// already spelled.
pub fn to_geodesic_trace(m: &Monoid, g: &FractionPair, v: &SignedWord) -> Result<GeodesicTrace> {
    if g.num.is_identity() || g.den.is_identity() {
        return Err(Error::Precondition(
            "element is positive or negative".into(),
        ));
    }
    if fractional_normal_form(m, g.side, &g.to_signed_word())? != *g {
        return Err(Error::Precondition(
            "pair is not a fractional normal form".into(),
        ));
    }
    if fractional_normal_form(m, g.side, v)? != *g {
        return Err(Error::Precondition(
            "word does not represent the element".into(),
        ));
    }
    if geodesic_length_of(m, &right_form_of_pair(m, g)?)? != v.len() {
        return Err(Error::Precondition("word is not geodesic".into()));
    }
    let pad = match g.side {
        FractionSide::Right => 4 * v.len(),
        FractionSide::Left => 4 * v.len() - 1,
    };
    let mut entries = vec![MonoidElement::identity(); pad];
    entries.push(g.num.clone());
    entries.push(g.den.clone());
    let start = Multifraction::new(entries)?;
    let mut b = Builder {
        m,
        cur: start.clone(),
        trace: Vec::new(),
    };
    let mut q = pad + 1;
    let mut prefix = 0;
    for l in v.letters() {
        let positive = l.is_pos();
        // pair parity matching the letter's sign
        if (q % 2 == 1) != positive {
            if b.entry(q).is_identity() {
                q += 1;
            } else {
                b.require_gap(q - 1)?;
                let (x, y) = (b.entry(q), b.entry(q + 1));
                let other = if positive {
                    fractional_normal_form(
                        m,
                        FractionSide::Right,
                        &SignedWord::negative(x.word()).concat(&SignedWord::positive(y.word())),
                    )?
                } else {
                    right_form_of(m, &x, &y).and_then(|f| other_form(m, &f))?
                };
                b.red(q, y)?;
                b.expect(q - 1, &other.num)?;
                b.expect(q, &other.den)?;
                b.expect(q + 1, &MonoidElement::identity())?;
                q -= 1;
            }
        }
        let x = m.generator(l.gen);
        let side = if positive { Side::Left } else { Side::Right };
        if m.divides(side, &x, &b.entry(q)).is_none() {
            return Err(Error::Precondition(
                "word does not follow the normal forms".into(),
            ));
        }
        let target = match (positive, prefix % 2 == 1) {
            (true, true) => prefix,
            (true, false) => prefix + 1,
            (false, true) => prefix + 1,
            (false, false) => prefix.max(2),
        };
        let mut r = q;
        while r > target {
            b.require_gap(r - 1)?;
            b.red(r - 1, x.clone())?;
            r -= 2;
        }
        if r != target {
            return Err(Error::Precondition(
                "padding too short for the geodesic".into(),
            ));
        }
        prefix = target;
    }
    Ok(GeodesicTrace {
        start,
        trace: b.trace,
        terminal: b.cur,
    })
}

fn right_form_of_pair(m: &Monoid, g: &FractionPair) -> Result<FractionPair> {
    match g.side {
        FractionSide::Right => Ok(g.clone()),
        FractionSide::Left => other_form(m, g),
    }
}

/// `3ℓ(ℓ+2)/4` for even `ℓ`.
pub fn padding_bound(len: usize) -> Result<usize> {
    if len % 2 == 1 {
        return Err(Error::Precondition(format!("length {len} must be even")));
    }
    Ok(3 * len * (len + 2) / 4)
}
