#![allow(dead_code)]

pub mod burau;
pub mod two_gen;

use std::collections::{BTreeSet, HashMap};

use multifrac::{ArtinPresentation, Gen, Monoid, MonoidElement, Side};

pub fn a2() -> ArtinPresentation {
    ArtinPresentation::parse("generators: a b\nm: a b 3").unwrap()
}

pub fn b2() -> ArtinPresentation {
    ArtinPresentation::parse("generators: a b\nm: a b 4").unwrap()
}

pub fn a2_tilde() -> ArtinPresentation {
    ArtinPresentation::parse("generators: a b c\nm: a b 3\nm: b c 3\nm: a c 3").unwrap()
}

/// All monoid elements of word-length at most `n`, grouped by length.
pub fn elements_by_length(m: &Monoid, n: usize) -> Vec<Vec<MonoidElement>> {
    let gens: Vec<Gen> = m.presentation().generators().collect();
    let mut out: Vec<Vec<MonoidElement>> = vec![vec![m.identity()]];
    for len in 1..=n {
        let mut next = BTreeSet::new();
        for x in &out[len - 1] {
            for &g in &gens {
                next.insert(m.multiply(x, &m.generator(g)));
            }
        }
        out.push(next.into_iter().collect());
    }
    out
}

pub fn elements_up_to(m: &Monoid, n: usize) -> Vec<MonoidElement> {
    elements_by_length(m, n).into_iter().flatten().collect()
}

/// Brute-force lcm by scanning common multiples of increasing length.
///
/// Every element up to `max_len` gets an id (shorter elements first) and each
/// short element `x` a bitset of the ids of its multiples, so `None` only
/// means "no common multiple up to `max_len`".
pub struct LcmOracle<'a> {
    m: &'a Monoid,
    elements: Vec<MonoidElement>,
    // divisor -> slot in `bits`
    slots: HashMap<MonoidElement, usize>,
    // [slot][side] -> bitset over element ids
    bits: Vec<[Vec<u64>; 2]>,
}

fn side_index(side: Side) -> usize {
    match side {
        Side::Right => 0,
        Side::Left => 1,
    }
}

impl<'a> LcmOracle<'a> {
    pub fn new(m: &'a Monoid, max_len: usize, divisor_len: usize) -> Self {
        let elements: Vec<MonoidElement> = elements_by_length(m, max_len)
            .into_iter()
            .flatten()
            .collect();
        let rank = m.presentation().rank();
        let code = |w: &[Gen]| {
            w.iter()
                .fold(0usize, |acc, g| acc * (rank + 1) + g.index() + 1)
        };
        let mut slot_of_code: HashMap<usize, usize> = HashMap::new();
        let mut slots: HashMap<MonoidElement, usize> = HashMap::new();
        for e in elements.iter().take_while(|e| e.len() <= divisor_len) {
            for w in m.class(e).iter() {
                let next = slots.len();
                let s = *slots.entry(e.clone()).or_insert(next);
                slot_of_code.insert(code(w), s);
            }
        }
        let words = elements.len().div_ceil(64);
        let mut bits = vec![[vec![0u64; words], vec![0u64; words]]; slots.len()];
        for (id, e) in elements.iter().enumerate() {
            let n = e.len();
            for w in m.class(e).iter() {
                for k in 0..=divisor_len.min(n) {
                    // x z = e makes e a right multiple of x
                    let r = slot_of_code[&code(&w[..k])];
                    bits[r][0][id / 64] |= 1 << (id % 64);
                    let l = slot_of_code[&code(&w[n - k..])];
                    bits[l][1][id / 64] |= 1 << (id % 64);
                }
            }
        }
        LcmOracle {
            m,
            elements,
            slots,
            bits,
        }
    }

    /// Returns the unique shortest common multiple, asserting it divides the
    /// common multiples up to two letters longer.
    pub fn lcm(&self, side: Side, x: &MonoidElement, y: &MonoidElement) -> Option<MonoidElement> {
        let si = side_index(side);
        let bx = &self.bits[self.slots[x]][si];
        let by = &self.bits[self.slots[y]][si];
        let mut common = Vec::new();
        for (k, (a, b)) in bx.iter().zip(by).enumerate() {
            let mut both = a & b;
            while both != 0 {
                let t = both.trailing_zeros() as usize;
                common.push(&self.elements[k * 64 + t]);
                both &= both - 1;
            }
            if let Some(first) = common.first() {
                if common.last().unwrap().len() > first.len() + 2 {
                    break;
                }
            }
        }
        let best = common.first()?.len();
        let top: Vec<&&MonoidElement> = common.iter().filter(|e| e.len() == best).collect();
        assert_eq!(top.len(), 1, "several shortest common multiples");
        let l = (*top[0]).clone();
        let div_side = match side {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        };
        for c in common.iter().filter(|c| c.len() <= best + 2) {
            assert!(
                self.m.divides(div_side, &l, c).is_some(),
                "lcm does not divide a common multiple"
            );
        }
        Some(l)
    }
}

pub mod random {
    use multifrac::multifraction::Multifraction;
    use multifrac::{Gen, Letter, Monoid, SignedWord};
    use rand::seq::SliceRandom;
    use rand::Rng;

    pub fn letter<R: Rng>(rng: &mut R, rank: usize) -> Letter {
        let g = Gen(rng.gen_range(0..rank) as u8);
        if rng.gen_bool(0.5) {
            Letter::pos(g)
        } else {
            Letter::neg(g)
        }
    }

    pub fn word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> SignedWord {
        (0..len).map(|_| letter(rng, rank)).collect()
    }

    /// A word equal to 1: relators (in a random rotation and orientation)
    /// and cancelling pairs inserted at random positions, never longer than
    /// `max_len`. Nonempty whenever `max_len >= 2`.
    pub fn identity_word<R: Rng>(rng: &mut R, m: &Monoid, max_len: usize) -> SignedWord {
        let p = m.presentation();
        let relators: Vec<SignedWord> = p
            .relations()
            .iter()
            .map(|r| SignedWord::positive(&r.lhs).concat(&SignedWord::negative(&r.rhs)))
            .collect();
        let mut w = SignedWord::new();
        for _ in 0..8 {
            let piece = match relators.choose(rng) {
                Some(r) if rng.gen_bool(0.7) => {
                    let k = rng.gen_range(0..r.len());
                    let mut rot = r.0[k..].to_vec();
                    rot.extend_from_slice(&r.0[..k]);
                    let rot = SignedWord(rot);
                    if rng.gen_bool(0.5) {
                        rot.invert()
                    } else {
                        rot
                    }
                }
                _ => {
                    let l = letter(rng, p.rank());
                    SignedWord(vec![l, l.inverse()])
                }
            };
            if w.len() + piece.len() > max_len {
                continue;
            }
            let at = rng.gen_range(0..=w.len());
            w.0.splice(at..at, piece.0);
        }
        if w.is_empty() && max_len >= 2 {
            let l = letter(rng, p.rank());
            w = SignedWord(vec![l, l.inverse()]);
        }
        w
    }

    /// Entries of word-length at most `entry_len`.
    pub fn multifraction<R: Rng>(
        rng: &mut R,
        m: &Monoid,
        depth: usize,
        entry_len: usize,
    ) -> Multifraction {
        let rank = m.presentation().rank();
        let entries = (0..depth)
            .map(|_| {
                let n = rng.gen_range(0..=entry_len);
                let w: Vec<Gen> = (0..n).map(|_| Gen(rng.gen_range(0..rank) as u8)).collect();
                m.element_of(&w)
            })
            .collect();
        Multifraction::new(entries).unwrap()
    }
}
