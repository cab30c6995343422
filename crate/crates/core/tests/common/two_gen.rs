//! Exhaustive checks over the elements of a two-generator group reached by
//! short signed words, with group equality decided by Burau matrices.

use std::collections::{BTreeMap, HashMap};

use multifrac::dihedral::{
    first_letter, fractional_normal_form, garside_element, geodesic_word, last_letter,
    FractionPair, FractionSide, Part,
};
use multifrac::{Gen, Letter, Monoid, MonoidElement, Side, SignedWord};

use super::burau::{Burau, Mat};
use super::elements_up_to;

/// Every signed word of length at most `n` over the generators of `m`.
pub fn signed_words(m: &Monoid, n: usize) -> Vec<SignedWord> {
    let letters: Vec<Letter> = m
        .presentation()
        .generators()
        .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
        .collect();
    let mut out = vec![SignedWord::new()];
    let mut layer = vec![SignedWord::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let mut v = w.clone();
                v.0.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Group elements reached by words of length at most `n`, each with its
/// representing words in order of length.
pub fn group_elements(m: &Monoid, burau: &Burau, n: usize) -> BTreeMap<Mat, Vec<SignedWord>> {
    let mut out: BTreeMap<Mat, Vec<SignedWord>> = BTreeMap::new();
    for w in signed_words(m, n) {
        out.entry(burau.eval(&w)).or_default().push(w);
    }
    out
}

/// Shortest words of the element; complete because every element listed was
/// reached by a word no longer than the enumeration bound.
pub fn geodesics(words: &[SignedWord]) -> Vec<SignedWord> {
    let best = words.iter().map(|w| w.len()).min().unwrap();
    words.iter().filter(|w| w.len() == best).cloned().collect()
}

fn pos(x: &MonoidElement) -> SignedWord {
    SignedWord::positive(x.word())
}

fn neg(x: &MonoidElement) -> SignedWord {
    SignedWord::negative(x.word())
}

fn coprime(m: &Monoid, side: Side, x: &MonoidElement, y: &MonoidElement) -> bool {
    !m.presentation().generators().any(|g| {
        let s = m.generator(g);
        m.divides(side, &s, x).is_some() && m.divides(side, &s, y).is_some()
    })
}

#[derive(Debug, Default)]
pub struct FactStats {
    pub elements: usize,
    pub mixed: usize,
    pub geodesics_checked: usize,
}

/// Checks, for every element reached by words of length `<= n`:
/// uniqueness of reduced fractions among pairs of length `<= frac_len`,
/// unique spelling and Δ-freeness of the entries, the letter inequalities
/// between the two forms, the first-letter rule for every geodesic, and
/// that `geodesic_word` returns a geodesic.
pub fn check_two_generator_facts(
    m: &Monoid,
    n: usize,
    frac_len: usize,
) -> Result<FactStats, String> {
    let burau = Burau::for_presentation(m.presentation());
    let fmt = |w: &SignedWord| m.presentation().format_word(w);
    let elements = group_elements(m, &burau, n);
    let monoid_elts = elements_up_to(m, frac_len);
    let mut right: HashMap<Mat, Vec<(MonoidElement, MonoidElement)>> = HashMap::new();
    let mut left: HashMap<Mat, Vec<(MonoidElement, MonoidElement)>> = HashMap::new();
    for x in &monoid_elts {
        for y in &monoid_elts {
            if coprime(m, Side::Right, x, y) {
                let g = burau.eval(&pos(x).concat(&neg(y)));
                if elements.contains_key(&g) {
                    right.entry(g).or_default().push((x.clone(), y.clone()));
                }
            }
            if coprime(m, Side::Left, x, y) {
                let g = burau.eval(&neg(x).concat(&pos(y)));
                if elements.contains_key(&g) {
                    left.entry(g).or_default().push((x.clone(), y.clone()));
                }
            }
        }
    }
    let delta = garside_element(m, Gen(0), Gen(1)).map_err(|e| e.to_string())?;
    let mut stats = FactStats::default();
    for (g, words) in &elements {
        stats.elements += 1;
        let w = &words[0];
        let r = fractional_normal_form(m, FractionSide::Right, w).map_err(|e| e.to_string())?;
        let l = fractional_normal_form(m, FractionSide::Left, w).map_err(|e| e.to_string())?;
        for (fp, table) in [(&r, &right), (&l, &left)] {
            let found = table.get(g).map(|v| v.as_slice()).unwrap_or(&[]);
            if found.len() != 1 || found[0] != (fp.num.clone(), fp.den.clone()) {
                return Err(format!(
                    "{}: {} reduced {:?} fractions, expected {}",
                    fmt(w),
                    found.len(),
                    fp.side,
                    fp.format(m)
                ));
            }
        }
        let geos = geodesics(words);
        let gw = geodesic_word(m, w).map_err(|e| e.to_string())?;
        if gw.len() != geos[0].len() || burau.eval(&gw) != *g {
            return Err(format!("geodesic_word({}) = {}", fmt(w), fmt(&gw)));
        }
        let mixed = |fp: &FractionPair| !fp.num.is_identity() && !fp.den.is_identity();
        if !mixed(&r) {
            continue;
        }
        if !mixed(&l) {
            return Err(format!("{}: only one form is mixed", fmt(w)));
        }
        stats.mixed += 1;
        for x in [&r.num, &r.den, &l.num, &l.den] {
            if m.class(x).len() != 1 || m.divides(Side::Left, &delta, x).is_some() {
                return Err(format!(
                    "{}: entry {} not uniquely spelled",
                    fmt(w),
                    m.format(x)
                ));
            }
        }
        let e = |res: multifrac::Result<Gen>| res.map_err(|e| e.to_string());
        let (fa, fb) = (
            e(first_letter(m, &r, Part::Num))?,
            e(first_letter(m, &r, Part::Den))?,
        );
        let (lc, ld) = (
            e(last_letter(m, &l, Part::Num))?,
            e(last_letter(m, &l, Part::Den))?,
        );
        if fa == lc || fb == ld {
            return Err(format!("{}: letter inequalities fail", fmt(w)));
        }
        for v in &geos {
            let f = v.letters()[0];
            let ok = if f.is_pos() { f.gen == fa } else { f.gen == lc };
            if !ok {
                return Err(format!(
                    "{}: geodesic {} starts off the normal forms",
                    fmt(w),
                    fmt(v)
                ));
            }
            stats.geodesics_checked += 1;
        }
    }
    Ok(stats)
}

/// Builds the trace from both padded normal forms of `cl(v)` and checks it
/// step by step against `apply_red`, its length, and the final spelling.
pub fn check_geodesic_trace(m: &Monoid, v: &SignedWord) -> Result<usize, String> {
    use multifrac::dihedral::{sharply_represents, to_geodesic_trace};
    use multifrac::multifraction::{apply_red, RStep};
    use multifrac::TraceStep;
    let fmt = m.presentation().format_word(v);
    let mut steps = 0;
    for side in [FractionSide::Right, FractionSide::Left] {
        let g = fractional_normal_form(m, side, v).map_err(|e| e.to_string())?;
        let t = to_geodesic_trace(m, &g, v).map_err(|e| format!("{fmt}: {e}"))?;
        let pad = match side {
            FractionSide::Right => 4 * v.len(),
            FractionSide::Left => 4 * v.len() - 1,
        };
        let head = &t.start.entries()[..pad];
        if t.start.depth() != pad + 2 || head.iter().any(|x| !x.is_identity()) {
            return Err(format!("{fmt}: wrong start"));
        }
        if t.start.entries()[pad..] != [g.num.clone(), g.den.clone()] {
            return Err(format!("{fmt}: start does not end with the fraction"));
        }
        let mut cur = t.start.clone();
        for s in &t.trace {
            let TraceStep::R { i, x } = s else {
                return Err(format!("{fmt}: non-R step"));
            };
            cur = apply_red(m, &cur, &RStep::new(*i, x.clone()))
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{fmt}: step at {i} does not apply"))?;
        }
        if cur != t.terminal || !sharply_represents(m, v, &cur) {
            return Err(format!("{fmt}: terminal {}", cur.format(m.presentation())));
        }
        if t.trace.len() > 8 * v.len() {
            return Err(format!("{fmt}: {} steps", t.trace.len()));
        }
        steps += t.trace.len();
    }
    Ok(steps)
}
