mod common;

use common::{a2, a2_tilde, b2, elements_up_to, LcmOracle};
use multifrac::{ArtinPresentation, Monoid, Side};

fn check(pres: ArtinPresentation, oracle_len: usize) -> (usize, usize) {
    let m = Monoid::new(pres);
    let xs = elements_up_to(&m, 4);
    let oracle = LcmOracle::new(&m, oracle_len, 4);
    let (mut present, mut absent) = (0, 0);
    for side in [Side::Right, Side::Left] {
        for x in &xs {
            for y in &xs {
                let got = m.lcm(side, x, y).unwrap();
                let want = oracle.lcm(side, x, y);
                assert_eq!(
                    got,
                    want,
                    "{side:?} lcm of {} and {}",
                    m.format(x),
                    m.format(y)
                );
                if got.is_some() {
                    present += 1;
                } else {
                    absent += 1;
                }
            }
        }
    }
    (present, absent)
}

#[test]
fn braid_lcms_match_brute_force() {
    let (_, absent) = check(a2(), 13);
    assert_eq!(absent, 0);
}

#[test]
fn b2_lcms_match_brute_force() {
    let (_, absent) = check(b2(), 17);
    assert_eq!(absent, 0);
}

#[test]
fn affine_lcms_match_brute_force() {
    let (present, absent) = check(a2_tilde(), 13);
    assert!(present > 0 && absent > 0);
}
