//! Reduced Burau matrices over Z[t, t^-1], faithful on the 3-strand braid
//! group. Used as an exact group-equality oracle for the two-generator
//! groups of types A2 (`a -> s1, b -> s2`) and B2 (`a -> s1^2, b -> s2`).

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use multifrac::{ArtinPresentation, SignedWord};

/// Laurent polynomial as exponent -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly(BTreeMap<i32, i64>);

impl Poly {
    pub fn mono(c: i64, e: i32) -> Poly {
        let mut p = Poly::default();
        if c != 0 {
            p.0.insert(e, c);
        }
        p
    }

    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::mono(1, 0)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.0.clone();
        for (&e, &c) in &o.0 {
            let v = r.entry(e).or_insert(0);
            *v += c;
            if *v == 0 {
                r.remove(&e);
            }
        }
        Poly(r)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut r: BTreeMap<i32, i64> = BTreeMap::new();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &o.0 {
                *r.entry(e1 + e2).or_insert(0) += c1 * c2;
            }
        }
        r.retain(|_, c| *c != 0);
        Poly(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat([[Poly; 2]; 2]);

impl Mat {
    pub fn identity() -> Mat {
        Mat([[Poly::one(), Poly::zero()], [Poly::zero(), Poly::one()]])
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity()
    }

    fn from(rows: [[(i64, i32); 2]; 2]) -> Mat {
        Mat(rows.map(|r| r.map(|(c, e)| Poly::mono(c, e))))
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, o: &Mat) -> Mat {
        let a = &self.0;
        let b = &o.0;
        let cell = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Mat([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }
}

fn s1() -> (Mat, Mat) {
    (
        Mat::from([[(-1, 1), (1, 0)], [(0, 0), (1, 0)]]),
        Mat::from([[(-1, -1), (1, -1)], [(0, 0), (1, 0)]]),
    )
}

fn s2() -> (Mat, Mat) {
    (
        Mat::from([[(1, 0), (0, 0)], [(1, 1), (-1, 1)]]),
        Mat::from([[(1, 0), (0, 0)], [(1, 0), (-1, -1)]]),
    )
}

/// Matrix images `(g, g^-1)` of the two generators.
pub struct Burau {
    images: Vec<(Mat, Mat)>,
}

impl Burau {
    /// Supports the two-generator presentations with label 3 or 4.
    pub fn for_presentation(p: &ArtinPresentation) -> Burau {
        let gens: Vec<_> = p.generators().collect();
        assert_eq!(gens.len(), 2, "Burau oracle covers two generators only");
        let a = match p.label(gens[0], gens[1]) {
            Some(3) => s1(),
            Some(4) => {
                let (x, y) = s1();
                (&x * &x, &y * &y)
            }
            other => panic!("no Burau embedding for label {other:?}"),
        };
        Burau {
            images: vec![a, s2()],
        }
    }

    pub fn eval(&self, w: &SignedWord) -> Mat {
        let mut m = Mat::identity();
        for l in w.letters() {
            let (g, gi) = &self.images[l.gen.index()];
            m = &m * if l.is_pos() { g } else { gi };
        }
        m
    }
}
