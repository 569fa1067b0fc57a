//! Enumeration of nu_A = { det(A) + es + ft } over border witnesses of
//! the border expansion: a box channel collecting every value realized with
//! max(|e|,|f|,|s|,|t|) <= B, and a closed-form arithmetic-progression
//! channel for diagonal matrices.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::int_entries;
use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::ring::{egcd, RingSpec};
use crate::scan;

/// Canonical arithmetic progression offset + step*Z (offset reduced mod
/// step when step > 0; step = 0 means the single value).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Progression {
    pub offset: BigInt,
    pub step: BigInt,
}

impl Progression {
    fn canonical(offset: BigInt, step: BigInt) -> Progression {
        let step = step.abs();
        if step.is_zero() {
            Progression { offset, step }
        } else {
            Progression { offset: offset.mod_floor(&step), step }
        }
    }

    pub fn contains(&self, v: &BigInt) -> bool {
        if self.step.is_zero() {
            v == &self.offset
        } else {
            (v - &self.offset).is_multiple_of(&self.step)
        }
    }
}

/// Values realized inside the box, each with its first witness in scan
/// order; `progression` is present exactly when b = c = 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NuSample {
    pub bound: i64,
    pub values: BTreeSet<BigInt>,
    pub witnesses: BTreeMap<BigInt, (i64, i64, i64, i64)>,
    pub progression: Option<Progression>,
}

/// All nu values with witnesses bounded by B, plus the progression channel
/// for diagonal matrices: with aE + dF = 1 parameterized along the Bezout
/// line, nu = ad + E0 + F0 + k(d - a).
pub fn nu_enumerate(a: &Mat2, bound: i64) -> Result<NuSample> {
    if a.ring != RingSpec::Integers {
        return Err(Error::UnsupportedRing("nu_enumerate is over Z".into()));
    }
    if !a.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    let m = int_entries(a)?;
    let delta = m[0] * m[3] - m[1] * m[2];
    let mut values = BTreeSet::new();
    let mut witness_keys: BTreeMap<BigInt, (u64, Vec<u64>)> = BTreeMap::new();
    let mut witnesses: BTreeMap<BigInt, (i64, i64, i64, i64)> = BTreeMap::new();

    // box channel: for each (e, f) the witnesses (s, t) lie on the line
    // P s + Q t = 1 with P = ae + cf, Q = be + df
    scan::scan_tuples::<()>(2, bound, |ef| {
        let (e, f) = (ef[0] as i128, ef[1] as i128);
        let p = m[0] * e + m[2] * f;
        let q = m[1] * e + m[3] * f;
        let mut record = |s: i128, t: i128| {
            let nu = BigInt::from(delta + e * s + f * t);
            let tuple = [e as i64, f as i64, s as i64, t as i64];
            let key = scan::scan_key(&tuple);
            values.insert(nu.clone());
            match witness_keys.get(&nu) {
                Some(prev) if prev <= &key => {}
                _ => {
                    witness_keys.insert(nu.clone(), key);
                    witnesses.insert(nu, (tuple[0], tuple[1], tuple[2], tuple[3]));
                }
            }
        };
        let b = bound as i128;
        if p == 0 && q == 0 {
            return None;
        }
        if p == 0 {
            // Q t = 1
            if q == 1 || q == -1 {
                for s in -b..=b {
                    record(s, q);
                }
            }
            return None;
        }
        if q == 0 {
            if p == 1 || p == -1 {
                for t in -b..=b {
                    record(p, t);
                }
            }
            return None;
        }
        let (g, x, y) = egcd(&BigInt::from(p), &BigInt::from(q));
        if g != BigInt::from(1) {
            return None;
        }
        let s0 = i128::try_from(&x).unwrap();
        let t0 = i128::try_from(&y).unwrap();
        // s = s0 + q k, t = t0 - p k; intersect |s| <= B with |t| <= B
        let ceil_div = |x: i128, d: i128| (x + d - 1).div_euclid(d);
        // k interval for |base + step k| <= b, step != 0
        let k_interval = |base: i128, step: i128| -> (i128, i128) {
            if step > 0 {
                (ceil_div(-b - base, step), (b - base).div_euclid(step))
            } else {
                let (lo, hi) = (ceil_div(-b - base, -step), (b - base).div_euclid(-step));
                (-hi, -lo)
            }
        };
        let (k1lo, k1hi) = k_interval(s0, q);
        let (k2lo, k2hi) = k_interval(t0, -p);
        let klo = k1lo.max(k2lo);
        let khi = k1hi.min(k2hi);
        for k in klo..=khi {
            let s = s0 + q * k;
            let t = t0 - p * k;
            debug_assert!(s.unsigned_abs() <= b as u128 && t.unsigned_abs() <= b as u128);
            record(s, t);
        }
        None
    });

    // progression channel for diagonal matrices
    let progression = if m[1] == 0 && m[2] == 0 {
        let (g, e0, f0) = egcd(&BigInt::from(m[0]), &BigInt::from(m[3]));
        debug_assert!(g == BigInt::from(1));
        let offset = BigInt::from(delta) + &e0 + &f0;
        let step = BigInt::from(m[3] - m[0]);
        Some(Progression::canonical(offset, step))
    } else {
        None
    };

    Ok(NuSample { bound, values, witnesses, progression })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    #[test]
    fn diag_7_11_is_multiples_of_four() {
        let a = Mat2::from_ints(&z(), [7, 0, 0, 11]);
        let nus = nu_enumerate(&a, 40).unwrap();
        for v in &nus.values {
            assert!(v.is_multiple_of(&BigInt::from(4)), "nu value {v} not in 4Z");
        }
        let p = nus.progression.unwrap();
        assert_eq!(p, Progression { offset: BigInt::zero(), step: BigInt::from(4) });
        // witnesses revalidate through the border expansion
        for (nu, (e, f, s, t)) in &nus.witnesses {
            assert_eq!(7 * e * s + 11 * f * t, 1);
            assert_eq!(BigInt::from(77 + e * s + f * t), *nu);
        }
    }

    #[test]
    fn diag_1_5_progression() {
        let a = Mat2::from_ints(&z(), [1, 0, 0, 5]);
        let nus = nu_enumerate(&a, 20).unwrap();
        let p = nus.progression.unwrap();
        assert_eq!(p, Progression { offset: BigInt::from(2), step: BigInt::from(4) });
        for v in &nus.values {
            assert!(p.contains(v));
        }
    }

    #[test]
    fn box_channel_matches_brute_force() {
        let bound = 9i64;
        for m in [[7, 0, 0, 11], [0, 3, 2, 6], [6, -10, 0, -15], [15, 6, 10, 14], [2, 1, 1, 1]] {
            let a = Mat2::from_ints(&z(), m);
            let nus = nu_enumerate(&a, bound).unwrap();
            let [ma, mb, mc, md] = m.map(i64::from);
            let delta = ma * md - mb * mc;
            let mut expect = BTreeSet::new();
            for e in -bound..=bound {
                for f in -bound..=bound {
                    for s in -bound..=bound {
                        for t in -bound..=bound {
                            if ma * e * s + mb * e * t + mc * f * s + md * f * t == 1 {
                                expect.insert(BigInt::from(delta + e * s + f * t));
                            }
                        }
                    }
                }
            }
            assert_eq!(nus.values, expect, "matrix {m:?}");
        }
    }

    #[test]
    fn sec5_2_progression_families() {
        // (a, b, d) = (6, -10, -15): nu contains members of 3 + 7Z and of
        // 1 + 14Z once the box is large enough
        let a = Mat2::from_ints(&z(), [6, -10, 0, -15]);
        let nus = nu_enumerate(&a, 70).unwrap();
        assert!(nus.values.contains(&BigInt::from(3)));
        assert!(nus.values.contains(&BigInt::from(-83)));
        let seven = BigInt::from(7);
        let fourteen = BigInt::from(14);
        assert!(nus
            .values
            .iter()
            .any(|v| (v - BigInt::from(3)).is_multiple_of(&seven) && v != &BigInt::from(3)));
        assert!(nus
            .values
            .iter()
            .any(|v| (v - BigInt::from(1)).is_multiple_of(&fourteen)));
    }
}
