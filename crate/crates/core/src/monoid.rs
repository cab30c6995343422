//! Elements of an Artin-Tits monoid as classes of positive words.
//!
//! An element is stored through the lexicographically least word of its
//! class. Classes are materialised by closing a word under single relation
//! applications; they are finite because relations preserve length.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::presentation::ArtinPresentation;
use crate::word::{Gen, Letter, PositiveWord, SignedWord};

pub const DEFAULT_LCM_BUDGET: usize = 10_000;

/// Which side an operation acts on.
///
/// For divisibility and gcds, `Left` means left-divisibility (`y = x z`).
/// For lcms, `Right` is the right-lcm (least common right-multiple, computed
/// by right reversing) and `Left` the left-lcm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// `Under` is `x \ y` with `x (x \ y) = x ∨ y`; `Over` is `x / y` with
/// `(x / y) y` the left-lcm of `x` and `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplementKind {
    Under,
    Over,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElement {
    word: PositiveWord,
}

impl MonoidElement {
    pub fn identity() -> Self {
        MonoidElement { word: Vec::new() }
    }

    /// The canonical (lex-least) representative word.
    pub fn word(&self) -> &[Gen] {
        &self.word
    }

    /// Word-length; the same for every word of the class.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub(crate) fn from_canonical(word: PositiveWord) -> Self {
        MonoidElement { word }
    }
}

impl fmt::Debug for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.word.iter().map(|g| g.0.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

type LcmKey = (Side, MonoidElement, MonoidElement);
/// `(lcm, complement of x, complement of y)`
type LcmData = Option<(MonoidElement, MonoidElement, MonoidElement)>;

/// Monoid operations for one presentation, with memo caches.
///
/// The caches sit behind `RwLock`s; concurrent writers insert identical
/// values, so sharing a `Monoid` between threads is fine.
pub struct Monoid {
    pres: ArtinPresentation,
    // (from, to) rewriting patterns, both orientations of every relation
    patterns: Vec<(PositiveWord, PositiveWord)>,
    classes: RwLock<HashMap<PositiveWord, Arc<[PositiveWord]>>>,
    lcms: RwLock<HashMap<LcmKey, LcmData>>,
    divisor_sets: RwLock<HashMap<(Side, MonoidElement), Arc<[MonoidElement]>>>,
    lcm_budget: usize,
}

impl fmt::Debug for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Monoid").field("pres", &self.pres).finish()
    }
}

impl Monoid {
    pub fn new(pres: ArtinPresentation) -> Self {
        Self::with_lcm_budget(pres, DEFAULT_LCM_BUDGET)
    }

    pub fn with_lcm_budget(pres: ArtinPresentation, lcm_budget: usize) -> Self {
        let mut patterns = Vec::new();
        for r in pres.relations() {
            patterns.push((r.lhs.clone(), r.rhs.clone()));
            patterns.push((r.rhs, r.lhs));
        }
        Monoid {
            pres,
            patterns,
            classes: RwLock::new(HashMap::new()),
            lcms: RwLock::new(HashMap::new()),
            divisor_sets: RwLock::new(HashMap::new()),
            lcm_budget,
        }
    }

    pub fn presentation(&self) -> &ArtinPresentation {
        &self.pres
    }

    pub fn lcm_budget(&self) -> usize {
        self.lcm_budget
    }

    pub fn identity(&self) -> MonoidElement {
        MonoidElement::identity()
    }

    pub fn generator(&self, g: Gen) -> MonoidElement {
        MonoidElement::from_canonical(vec![g])
    }

    /// Every word obtained from `w` by one relation application.
    pub fn relation_neighbors(&self, w: &[Gen]) -> Vec<PositiveWord> {
        let mut out = Vec::new();
        for (from, to) in &self.patterns {
            let m = from.len();
            if m > w.len() {
                continue;
            }
            for j in 0..=w.len() - m {
                if w[j..j + m] == from[..] {
                    let mut nw = w.to_vec();
                    nw[j..j + m].copy_from_slice(to);
                    out.push(nw);
                }
            }
        }
        out
    }

    /// The full equivalence class of `w`, sorted lexicographically.
    pub fn class_of_word(&self, w: &[Gen]) -> Arc<[PositiveWord]> {
        if let Some(c) = self.classes.read().unwrap().get(w) {
            return c.clone();
        }
        let mut seen: HashSet<PositiveWord> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(cur) = queue.pop_front() {
            for nw in self.relation_neighbors(&cur) {
                if seen.insert(nw.clone()) {
                    queue.push_back(nw);
                }
            }
        }
        let mut members: Vec<PositiveWord> = seen.into_iter().collect();
        members.sort();
        let class: Arc<[PositiveWord]> = members.into();
        let mut cache = self.classes.write().unwrap();
        for m in class.iter() {
            cache.insert(m.clone(), class.clone());
        }
        class
    }

    pub fn class(&self, x: &MonoidElement) -> Arc<[PositiveWord]> {
        self.class_of_word(&x.word)
    }

    pub fn element_of(&self, w: &[Gen]) -> MonoidElement {
        if w.len() < 2 || self.patterns.is_empty() {
            return MonoidElement::from_canonical(w.to_vec());
        }
        MonoidElement::from_canonical(self.class_of_word(w)[0].clone())
    }

    pub fn parse_element(&self, text: &str) -> Result<MonoidElement> {
        Ok(self.element_of(&self.pres.parse_positive(text)?))
    }

    pub fn format(&self, x: &MonoidElement) -> String {
        self.pres.format_positive(x.word())
    }

    pub fn multiply(&self, x: &MonoidElement, y: &MonoidElement) -> MonoidElement {
        if x.is_identity() {
            return y.clone();
        }
        if y.is_identity() {
            return x.clone();
        }
        let mut w = x.word.clone();
        w.extend_from_slice(&y.word);
        self.element_of(&w)
    }

    /// `Left`: `z` with `y = x z`; `Right`: `z` with `y = z x`.
    pub fn divides(
        &self,
        side: Side,
        x: &MonoidElement,
        y: &MonoidElement,
    ) -> Option<MonoidElement> {
        if x.is_identity() {
            return Some(y.clone());
        }
        if x.len() > y.len() {
            return None;
        }
        let k = x.len();
        let n = y.len();
        let class = self.class(y);
        for w in class.iter() {
            let hit = match side {
                Side::Left => self.element_of(&w[..k]) == *x,
                Side::Right => self.element_of(&w[n - k..]) == *x,
            };
            if hit {
                let rest = match side {
                    Side::Left => &w[k..],
                    Side::Right => &w[..n - k],
                };
                return Some(self.element_of(rest));
            }
        }
        None
    }

    /// All left (resp. right) divisors of `x`, including `1` and `x`, in
    /// lexicographic order of canonical words.
    pub fn divisors(&self, side: Side, x: &MonoidElement) -> Vec<MonoidElement> {
        self.divisor_set(side, x).to_vec()
    }

    pub(crate) fn divisor_set(&self, side: Side, x: &MonoidElement) -> Arc<[MonoidElement]> {
        let key = (side, x.clone());
        if let Some(d) = self.divisor_sets.read().unwrap().get(&key) {
            return d.clone();
        }
        let class = self.class(x);
        let n = x.len();
        let mut seen: HashSet<MonoidElement> = HashSet::new();
        for w in class.iter() {
            for k in 0..=n {
                let part = match side {
                    Side::Left => &w[..k],
                    Side::Right => &w[n - k..],
                };
                seen.insert(self.element_of(part));
            }
        }
        let mut out: Vec<MonoidElement> = seen.into_iter().collect();
        out.sort();
        let out: Arc<[MonoidElement]> = out.into();
        self.divisor_sets.write().unwrap().insert(key, out.clone());
        out
    }

    /// Greatest common left (resp. right) divisor.
    pub fn gcd(&self, side: Side, x: &MonoidElement, y: &MonoidElement) -> Result<MonoidElement> {
        let (short, long) = if x.len() <= y.len() { (x, y) } else { (y, x) };
        let common: Vec<MonoidElement> = self
            .divisors(side, short)
            .into_iter()
            .filter(|d| self.divides(side, d, long).is_some())
            .collect();
        let best = common.iter().map(|d| d.len()).max().unwrap_or(0);
        let top: Vec<&MonoidElement> = common.iter().filter(|d| d.len() == best).collect();
        if top.len() != 1 {
            return Err(Error::Structural(format!(
                "{} maximal common divisors of {} and {}",
                top.len(),
                self.format(x),
                self.format(y)
            )));
        }
        Ok(top[0].clone())
    }

    /// Right-lcm `x ∨ y` (`Side::Right`) or left-lcm (`Side::Left`); `None`
    /// when no common multiple exists.
    pub fn lcm(
        &self,
        side: Side,
        x: &MonoidElement,
        y: &MonoidElement,
    ) -> Result<Option<MonoidElement>> {
        Ok(self.lcm_data(side, x, y)?.map(|(m, _, _)| m))
    }

    pub fn complement(
        &self,
        kind: ComplementKind,
        x: &MonoidElement,
        y: &MonoidElement,
    ) -> Result<Option<MonoidElement>> {
        let side = match kind {
            ComplementKind::Under => Side::Right,
            ComplementKind::Over => Side::Left,
        };
        Ok(self.lcm_data(side, x, y)?.map(|(_, cx, _)| cx))
    }

    /// Right side: `(x ∨ y, x \ y, y \ x)`. Left side: `(lcm, x / y, y / x)`,
    /// so `(x / y) y = (y / x) x = lcm`.
    pub(crate) fn lcm_data(
        &self,
        side: Side,
        x: &MonoidElement,
        y: &MonoidElement,
    ) -> Result<LcmData> {
        match side {
            Side::Right => self.right_lcm(x, y, &mut Vec::new(), self.lcm_budget),
            Side::Left => {
                // Reversed words present the same monoid, and left reversing
                // of x y^-1 mirrors right reversing.
                let (xr, yr) = (self.mirror(x), self.mirror(y));
                let d = self.right_lcm(&xr, &yr, &mut Vec::new(), self.lcm_budget)?;
                // x^R cx' = m^R gives cx'^R x = m, so cx'^R = y / x
                Ok(d.map(|(m, cx, cy)| (self.mirror(&m), self.mirror(&cy), self.mirror(&cx))))
            }
        }
    }

    fn mirror(&self, x: &MonoidElement) -> MonoidElement {
        let w: PositiveWord = x.word().iter().rev().copied().collect();
        self.element_of(&w)
    }

    fn cached_right_lcm(&self, x: &MonoidElement, y: &MonoidElement) -> Option<LcmData> {
        let cache = self.lcms.read().unwrap();
        if let Some(d) = cache.get(&(Side::Right, x.clone(), y.clone())) {
            return Some(d.clone());
        }
        let d = cache.get(&(Side::Right, y.clone(), x.clone()))?;
        Some(d.clone().map(|(m, cy, cx)| (m, cx, cy)))
    }

    fn right_lcm(
        &self,
        x: &MonoidElement,
        y: &MonoidElement,
        stack: &mut Vec<(MonoidElement, MonoidElement)>,
        budget: usize,
    ) -> Result<LcmData> {
        if x.is_identity() {
            return Ok(Some((y.clone(), y.clone(), MonoidElement::identity())));
        }
        if y.is_identity() || x == y {
            return Ok(Some((
                x.clone(),
                MonoidElement::identity(),
                self.divides(Side::Left, y, x).unwrap(),
            )));
        }
        if let Some(d) = self.cached_right_lcm(x, y) {
            return Ok(d);
        }
        stack.push((x.clone(), y.clone()));
        let r = self.reverse_for_lcm(x, y, stack, budget);
        stack.pop();
        if let Ok(d) = &r {
            self.lcms
                .write()
                .unwrap()
                .insert((Side::Right, x.clone(), y.clone()), d.clone());
        }
        r
    }

    /// Right reversing of `x^-1 y`, leftmost factor first.
    ///
    /// Besides blocking on a free pair, the loop stops with "no common
    /// multiple" when some negative-positive corner `U' V'` sitting at a
    /// vertex `e` has prefixes `u'', v''` of `u', v'` without a common
    /// multiple. If `x ∨ y = m` existed, `e (u' ∨ v')` would divide `m`, so
    /// `|u'' ∨ v''| <= |m| - |e|`. Pairs still on the stack of enclosing
    /// computations count as having no common multiple when `|e| >= 1`:
    /// closing such a cycle makes some lcm strictly shorter than itself.
    fn reverse_for_lcm(
        &self,
        x: &MonoidElement,
        y: &MonoidElement,
        stack: &mut Vec<(MonoidElement, MonoidElement)>,
        budget: usize,
    ) -> Result<LcmData> {
        let mut w: Vec<Letter> = SignedWord::negative(x.word()).0;
        w.extend(y.word().iter().map(|&g| Letter::pos(g)));
        let reach = x.len().max(y.len());
        let mut steps = 0usize;
        let mut pos = 0usize;
        loop {
            let mut found = None;
            let mut k = pos;
            while k + 1 < w.len() {
                if w[k].is_neg() && w[k + 1].is_pos() {
                    let (s, t) = (w[k].gen, w[k + 1].gen);
                    if s == t || self.pres.label(s, t).is_some() {
                        found = Some(k);
                        break;
                    }
                }
                k += 1;
            }
            let Some(k) = found else { break };
            if steps >= budget {
                return Err(Error::BudgetExhausted { explored: steps });
            }
            steps += 1;
            let (s, t) = (w[k].gen, w[k + 1].gen);
            let r = if s == t {
                w.drain(k..k + 2);
                0
            } else {
                let (v, u) = self.pres.right_complements(s, t).expect("labelled pair");
                let mut repl: Vec<Letter> = v.iter().map(|&g| Letter::pos(g)).collect();
                repl.extend(SignedWord::negative(&u).0);
                let r = repl.len();
                w.splice(k..k + 2, repl);
                r
            };
            pos = k.saturating_sub(1);

            let lo = k.saturating_sub(reach).max(1);
            let hi = (k + r + reach).min(w.len());
            let mut height = x.len() as i64;
            for l in &w[..lo] {
                height += if l.is_pos() { 1 } else { -1 };
            }
            for c in lo..hi {
                if w[c - 1].is_neg()
                    && w[c].is_pos()
                    && self.corner_blocks(&w, c, height, reach, stack, budget)
                {
                    return Ok(None);
                }
                height += if w[c].is_pos() { 1 } else { -1 };
            }
        }
        match SignedWord(w).split_pos_neg() {
            Some((vp, up)) => {
                let cx = self.element_of(&vp);
                let cy = self.element_of(&up);
                let mut lw = x.word().to_vec();
                lw.extend_from_slice(&vp);
                Ok(Some((self.element_of(&lw), cx, cy)))
            }
            // blocked on a free pair
            None => Ok(None),
        }
    }

    fn corner_blocks(
        &self,
        w: &[Letter],
        c: usize,
        height: i64,
        reach: usize,
        stack: &mut Vec<(MonoidElement, MonoidElement)>,
        budget: usize,
    ) -> bool {
        const MAX_NESTING: usize = 3;
        let neg: PositiveWord = w[..c]
            .iter()
            .rev()
            .take(reach)
            .take_while(|l| l.is_neg())
            .map(|l| l.gen)
            .collect();
        let pos: PositiveWord = w[c..]
            .iter()
            .take(reach)
            .take_while(|l| l.is_pos())
            .map(|l| l.gen)
            .collect();
        for i in (1..=neg.len()).rev() {
            for j in (1..=pos.len()).rev() {
                let u = self.element_of(&neg[..i]);
                let v = self.element_of(&pos[..j]);
                if u == v {
                    continue;
                }
                if height >= 1
                    && stack
                        .iter()
                        .any(|(a, b)| (*a == u && *b == v) || (*a == v && *b == u))
                {
                    return true;
                }
                match self.cached_right_lcm(&u, &v) {
                    Some(None) => return true,
                    Some(Some(_)) => continue,
                    None => {}
                }
                if stack.len() < MAX_NESTING {
                    if let Ok(None) = self.right_lcm(&u, &v, stack, budget / 4) {
                        return true;
                    }
                }
            }
        }
        false
    }
}
