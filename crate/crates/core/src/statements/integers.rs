//! Statement routes over Z: constructive for statements 1-3 through the
//! Smith reduction, box searches for 4, 5, 9, residue searches modulo
//! |det| for 7 and 10, and the companion construction carrying a statement-5
//! witness to 6 and 8.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::extend::nonfull::nonfull_decompose_int_any;
use crate::extend::smith::{simple_extension_snf, smith2};
use crate::matrix::Mat2;
use crate::ring::{RElem, RingSpec};
use crate::scan;

use super::{Budget, FailCert, Status, Witness};

fn ints(a: &Mat2) -> [i128; 4] {
    a.entries().clone().map(|e| match e {
        RElem::Int(v) => i128::try_from(&v).expect("entry fits i128"),
        _ => unreachable!(),
    })
}

fn int(v: i128) -> RElem {
    RElem::Int(BigInt::from(v))
}

fn mat(v: [i128; 4]) -> Mat2 {
    Mat2::new(RingSpec::Integers, v.map(int)).expect("integer matrix")
}

pub fn check_statement_z(a: &Mat2, k: u8, budget: &Budget) -> Result<Status> {
    if !a.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    let m = ints(a);
    let delta = m[0] * m[3] - m[1] * m[2];
    match k {
        1 => {
            let snf = smith2(a)?;
            Ok(Status::Holds(Witness::Equivalence { m: snf.m, n: snf.n }))
        }
        2 => Ok(Status::Holds(Witness::SimpleExt(simple_extension_snf(a)?))),
        3 => {
            let w = simple_extension_snf(a)?;
            Ok(Status::Holds(Witness::BorderPair { e: w.e, f: w.f, s: w.s, t: w.t }))
        }
        4 => {
            // relation + non-full matrix; over Z a det-0 matrix is non-full
            let hit = scan::scan_tuples(4, budget.box_bound, |t| {
                let v = [t[0] as i128, t[1] as i128, t[2] as i128, t[3] as i128];
                let lin = m[0] * v[0] + m[1] * v[1] + m[2] * v[2] + m[3] * v[3];
                if lin == 1 && v[0] * v[3] == v[1] * v[2] {
                    Some(v)
                } else {
                    None
                }
            });
            match hit {
                Some(v) => {
                    let ints4 = [
                        BigInt::from(v[0]),
                        BigInt::from(v[1]),
                        BigInt::from(v[2]),
                        BigInt::from(v[3]),
                    ];
                    let (col, row) = nonfull_decompose_int_any(&ints4)
                        .expect("det-0 integer matrix factors");
                    Ok(Status::Holds(Witness::NonFullRelation {
                        x: int(v[0]),
                        y: int(v[1]),
                        z: int(v[2]),
                        w: int(v[3]),
                        col: (RElem::Int(col[0].clone()), RElem::Int(col[1].clone())),
                        row: (RElem::Int(row[0].clone()), RElem::Int(row[1].clone())),
                    }))
                }
                None => Ok(Status::Unknown { budget: budget.box_bound.max(0) as u64 }),
            }
        }
        5 => match s5_search(&m, budget.box_bound) {
            Some(v) => Ok(Status::Holds(Witness::Relation {
                x: int(v[0]),
                y: int(v[1]),
                z: int(v[2]),
                w: int(v[3]),
            })),
            None => Ok(Status::Unknown { budget: budget.box_bound.max(0) as u64 }),
        },
        6 | 8 => {
            // a statement-5 tuple gives B = [[-w, z],[y, -x]] with both
            // determinant conditions exact
            match s5_search(&m, budget.box_bound) {
                Some(v) => {
                    let b = mat([-v[3], v[2], v[1], -v[0]]);
                    let w = Witness::CompanionZero { b };
                    super::revalidate_witness(a, k, &w)?;
                    Ok(Status::Holds(w))
                }
                None => Ok(Status::Unknown { budget: budget.box_bound.max(0) as u64 }),
            }
        }
        7 | 10 => {
            let unimod = k == 7;
            if delta == 0 {
                // congruence mod 0 is equality: C = A works (det 0 given)
                return Ok(Status::Holds(Witness::Congruent { c: a.clone() }));
            }
            if delta.unsigned_abs() == 1 {
                // congruence mod a unit is vacuous
                return Ok(Status::Holds(Witness::Congruent { c: mat([1, 0, 0, 0]) }));
            }
            let n = delta.unsigned_abs();
            if n > budget.residue_cap as u128 {
                return Ok(Status::Unknown { budget: budget.residue_cap });
            }
            match residue_search(&m, n as i128, unimod) {
                Some(c) => Ok(Status::Holds(Witness::Congruent { c: mat(c) })),
                None => {
                    // complete fallback for 7: the statement-5 route yields
                    // a unimodular congruent det-0 matrix A + delta B
                    if let Some(v) = s5_search(&m, budget.box_bound) {
                        let c = mat([
                            m[0] + delta * -v[3],
                            m[1] + delta * v[2],
                            m[2] + delta * v[1],
                            m[3] + delta * -v[0],
                        ]);
                        let w = Witness::Congruent { c };
                        super::revalidate_witness(a, k, &w)?;
                        return Ok(Status::Holds(w));
                    }
                    Ok(Status::Unknown { budget: budget.residue_cap })
                }
            }
        }
        9 => {
            let hit = scan::scan_tuples(4, budget.box_bound, |t| {
                let v = [t[0] as i128, t[1] as i128, t[2] as i128, t[3] as i128];
                let lin = m[0] * v[0] + m[1] * v[1] + m[2] * v[2] + m[3] * v[3];
                if lin - delta * (v[0] * v[3] - v[1] * v[2]) == 1 {
                    Some(v)
                } else {
                    None
                }
            });
            match hit {
                Some(v) => Ok(Status::Holds(Witness::Relation {
                    x: int(v[0]),
                    y: int(v[1]),
                    z: int(v[2]),
                    w: int(v[3]),
                })),
                None => Ok(Status::Unknown { budget: budget.box_bound.max(0) as u64 }),
            }
        }
        _ => Err(Error::Precondition(format!("statement index {k} out of range"))),
    }
}

fn s5_search(m: &[i128; 4], bound: i64) -> Option<[i128; 4]> {
    scan::scan_tuples(4, bound, |t| {
        let v = [t[0] as i128, t[1] as i128, t[2] as i128, t[3] as i128];
        let lin = m[0] * v[0] + m[1] * v[1] + m[2] * v[2] + m[3] * v[3];
        if lin == 1 && v[0] * v[3] == v[1] * v[2] {
            Some(v)
        } else {
            None
        }
    })
}

/// Residues (l, m, p, q) mod n with l p = a, l q = b, m p = c, m q = d
/// (mod n); the lifted product C = (l,m)^T (p,q) then has det 0 and is
/// congruent to A. Scans (l, m) ascending and solves the congruences for
/// p and q.
fn residue_search(a: &[i128; 4], n: i128, require_unimodular: bool) -> Option<[i128; 4]> {
    for l in 0..n {
        for m in 0..n {
            let ps = congruence_pair_solutions(l, a[0], m, a[2], n);
            if ps.is_empty() {
                continue;
            }
            let qs = congruence_pair_solutions(l, a[1], m, a[3], n);
            if qs.is_empty() {
                continue;
            }
            for &p in &ps {
                for &q in &qs {
                    let c = [l * p, l * q, m * p, m * q];
                    debug_assert_eq!(c[0] * c[3] - c[1] * c[2], 0);
                    if require_unimodular {
                        let g = gcd4(&c);
                        if g != 1 {
                            continue;
                        }
                    }
                    return Some(c);
                }
            }
        }
    }
    None
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd4(v: &[i128; 4]) -> i128 {
    gcd_i128(gcd_i128(v[0], v[1]), gcd_i128(v[2], v[3]))
}

/// Ascending solutions x in [0, n) of l x = a and m x = c (mod n).
fn congruence_pair_solutions(l: i128, a: i128, m: i128, c: i128, n: i128) -> Vec<i128> {
    let am = a.rem_euclid(n);
    let cm = c.rem_euclid(n);
    let mut out = Vec::new();
    // base solution and period of l x = a (mod n)
    let (x0, step) = if l == 0 {
        if am != 0 {
            return out;
        }
        (0, 1)
    } else {
        let g = gcd_i128(l, n);
        if am % g != 0 {
            return out;
        }
        let (gg, inv, _) = crate::ring::egcd(&BigInt::from(l / g), &BigInt::from(n / g));
        debug_assert!(gg.is_one());
        let inv = i128::try_from(&inv).unwrap().rem_euclid(n / g);
        (((am / g) % (n / g) * inv).rem_euclid(n / g), n / g)
    };
    let mut x = x0;
    while x < n {
        if (m * x - cm).rem_euclid(n) == 0 {
            out.push(x);
        }
        x += step;
    }
    out
}

/// Fallback certificate route for rings where absence can be certified:
/// det-0 unimodular matrices over Quadratic(D < 0) with an irreducibility
/// obstruction are full, hence not simply extendable.
pub fn check_statement_quadratic(a: &Mat2, k: u8, budget: &Budget) -> Result<Status> {
    if !matches!(&a.ring, RingSpec::Quadratic(d) if d < &BigInt::zero()) {
        return Err(Error::UnsupportedRing(format!("statements over {}", a.ring)));
    }
    if !(2..=3).contains(&k) {
        return Err(Error::UnsupportedRing(
            "only statements 2 and 3 are decided over quadratic rings".into(),
        ));
    }
    if let Some(w) = crate::extend::find_simple_extension_search(a, budget.box_bound)? {
        return Ok(match k {
            2 => Status::Holds(Witness::SimpleExt(w)),
            _ => Status::Holds(Witness::BorderPair { e: w.e, f: w.f, s: w.s, t: w.t }),
        });
    }
    if a.ring.is_zero(&a.det()?)? {
        if let Some(cert) = crate::extend::fullness_certificate(a)? {
            return Ok(Status::Fails(FailCert::Fullness(cert)));
        }
    }
    Ok(Status::Unknown { budget: budget.box_bound.max(0) as u64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    #[test]
    fn sec5_3_statement_3() {
        let a = Mat2::from_ints(&z(), [15, 6, 10, 14]);
        let st = check_statement_z(&a, 3, &Budget::default()).unwrap();
        match st {
            Status::Holds(Witness::BorderPair { e, f, .. }) => {
                // the displayed witness is (e,f) = (-1,-2) with pair
                // (-35,-34); any valid pair revalidates
                let (e, f) = match (e, f) {
                    (RElem::Int(e), RElem::Int(f)) => (e, f),
                    _ => panic!(),
                };
                let p = BigInt::from(15) * &e + BigInt::from(10) * &f;
                let q = BigInt::from(6) * &e + BigInt::from(14) * &f;
                assert!(crate::ring::egcd(&p, &q).0.is_one());
            }
            other => panic!("unexpected status {other:?}"),
        }
        // the displayed witness checks out too
        let pair = (BigInt::from(-15 - 20), BigInt::from(-6 - 28));
        assert_eq!(pair, (BigInt::from(-35), BigInt::from(-34)));
        assert!(crate::ring::egcd(&pair.0, &pair.1).0.is_one());
    }

    #[test]
    fn all_ten_decided_for_small_matrix() {
        let a = Mat2::from_ints(&z(), [15, 6, 10, 14]);
        for k in 1..=10 {
            let st = check_statement_z(&a, k, &Budget::default()).unwrap();
            assert!(matches!(st, Status::Holds(_)), "statement {k} undecided");
        }
    }

    #[test]
    fn delta_zero_degenerations() {
        let a = Mat2::from_ints(&z(), [2, 4, 1, 2]);
        for k in [7u8, 10] {
            let st = check_statement_z(&a, k, &Budget::default()).unwrap();
            match st {
                Status::Holds(Witness::Congruent { c }) => assert_eq!(c, a),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn residue_search_on_77() {
        let a = Mat2::from_ints(&z(), [7, 0, 0, 11]);
        let st = check_statement_z(&a, 7, &Budget::default()).unwrap();
        match st {
            Status::Holds(Witness::Congruent { c }) => {
                let ci = ints(&c);
                let ai = ints(&a);
                assert_eq!(ci[0] * ci[3] - ci[1] * ci[2], 0);
                for i in 0..4 {
                    assert_eq!((ci[i] - ai[i]).rem_euclid(77), 0);
                }
                assert_eq!(gcd4(&ci), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn quadratic_fullness_failure() {
        let q5 = RingSpec::quadratic(-5).unwrap();
        let b = Mat2::parse(&q5, "3,1-1*w;1+1*w,2").unwrap();
        let st = check_statement_quadratic(&b, 2, &Budget { box_bound: 3, ..Budget::default() })
            .unwrap();
        assert!(matches!(st, Status::Fails(FailCert::Fullness(_))));
    }
}
