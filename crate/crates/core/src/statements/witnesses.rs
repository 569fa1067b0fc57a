//! Witness solvers for the named equations: the Hermite-to-EDR
//! factorization d + ct = d1 d2, the Bezout-domain criteria in (q, r) and
//! (e, f), the quartic identity linear in z, the (2,3)-entry -1 simple
//! extensions of upper triangular matrices, and the congruent det-0
//! perturbation A + det(A) C.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::extend::ExtWitness;
use crate::matrix::Mat2;
use crate::ring::{egcd, RElem, RingSpec};
use crate::scan;

use super::{check_statement, Budget, Status, Witness};

/// Equation tags with their solution payloads. Every constructor verifies
/// the exact residual before returning.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EqWitness {
    /// d + c t = d1 d2 with (a, d1) and (b, d2) unimodular.
    Th5_8 { t: BigInt, d1: BigInt, d2: BigInt },
    /// (q, r) with t in Ry + Rat for y = r+s-asq-bqr, t = 1+q-aq-br.
    Cr3_2 { q: BigInt, r: BigInt, y: BigInt, t: BigInt, u: BigInt, v: BigInt },
    /// (e, f) unimodular with (a, e) and (be+af, 1-bs-a) unimodular.
    Cr3_3 { e: BigInt, f: BigInt },
    /// (s, l, z) solving (1-su-la)^2 + l - sul - l^2 a - z(s+t-sut) = 0.
    C14 { s: BigInt, l: BigInt, z: BigInt },
    /// e = 1 simple extension of an upper triangular matrix.
    C9(ExtWitness),
    /// C with A + det(A) C unimodular and det(C) = det(A + det(A) C) = 0.
    Th2_2 { c: Mat2 },
}

fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

fn coprime(a: &BigInt, b: &BigInt) -> bool {
    egcd(a, b).0.is_one()
}

/// Divisors of |n| in ascending absolute value, negative first at each
/// magnitude (the canonical value order); n must be nonzero.
fn divisor_candidates(n: &BigInt) -> Vec<BigInt> {
    let abs = n.abs();
    let mut mags = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= abs {
        if (abs.clone() % &d).is_zero() {
            mags.push(d.clone());
            let other = &abs / &d;
            if other != d {
                mags.push(other);
            }
        }
        d += 1;
    }
    mags.sort();
    let mut out = Vec::with_capacity(2 * mags.len());
    for m in mags {
        out.push(-m.clone());
        out.push(m);
    }
    out
}

/// th5-8 witness over Z: scan t in value order; for each, factor
/// d + c t = d1 d2 over divisor splittings with gcd(a, d1) = gcd(b, d2)
/// = 1.
pub fn th5_8_witness(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    d: &BigInt,
    budget: i64,
) -> Result<EqWitness> {
    if !coprime(a, b) {
        return Err(Error::Precondition("(a, b) must be unimodular".into()));
    }
    if !coprime(c, d) {
        return Err(Error::Precondition("(c, d) must be unimodular".into()));
    }
    let hit = scan::scan_tuples(1, budget, |tv| {
        let t = BigInt::from(tv[0]);
        let n = d + c * &t;
        if n.is_zero() {
            // 0 = d1 d2 needs one factor 0; gcd(x, 0) = |x|
            if a.abs().is_one() {
                return Some((t, BigInt::zero(), BigInt::one()));
            }
            if b.abs().is_one() {
                return Some((t, BigInt::one(), BigInt::zero()));
            }
            return None;
        }
        for d1 in divisor_candidates(&n) {
            let d2 = &n / &d1;
            if coprime(a, &d1) && coprime(b, &d2) {
                return Some((t, d1, d2));
            }
        }
        None
    });
    match hit {
        Some((t, d1, d2)) => {
            debug_assert_eq!(d + c * &t, &d1 * &d2);
            Ok(EqWitness::Th5_8 { t, d1, d2 })
        }
        None => Err(Error::BudgetExhausted(budget.max(0) as u64)),
    }
}

/// cr3-2 witness over Z: scan (q, r); membership t in Zy + Z(at) holds
/// iff gcd(y, at) divides t, with gcd(0,0) = 0.
pub fn cr3_witness(a: &BigInt, b: &BigInt, s: &BigInt, budget: i64) -> Result<EqWitness> {
    let hit = scan::scan_tuples(2, budget, |qr| {
        let q = BigInt::from(qr[0]);
        let r = BigInt::from(qr[1]);
        let y = &r + s - a * s * &q - b * &q * &r;
        let t = BigInt::one() + &q - a * &q - b * &r;
        let at = a * &t;
        let (g, u, v) = egcd(&y, &at);
        if g.is_zero() {
            if t.is_zero() {
                return Some((q, r, y, t, BigInt::zero(), BigInt::zero()));
            }
            return None;
        }
        if (t.clone() % &g).is_zero() {
            let k = &t / &g;
            return Some((q, r, y.clone(), t, u * &k, v * &k));
        }
        None
    });
    match hit {
        Some((q, r, y, t, u, v)) => {
            debug_assert_eq!(&u * &y + &v * (a * &t), t);
            Ok(EqWitness::Cr3_2 { q, r, y, t, u, v })
        }
        None => Err(Error::BudgetExhausted(budget.max(0) as u64)),
    }
}

/// cr3-3 witness over Z: first (e, f) unimodular with (a, e) and
/// (be+af, 1-bs-a) unimodular. Two known shortcut recipes are tried
/// first, but only when they validate.
pub fn cr3_statement3_witness(
    a: &BigInt,
    b: &BigInt,
    s: &BigInt,
    budget: i64,
) -> Result<EqWitness> {
    let target = BigInt::one() - b * s - a;
    let valid = |e: &BigInt, f: &BigInt| {
        coprime(e, f) && coprime(a, e) && coprime(&(b * e + a * f), &target)
    };
    // shortcut (e,f) = (s,-1) for (a,s) unimodular; validated, not trusted
    if coprime(a, s) {
        let (e, f) = (s.clone(), bi(-1));
        if valid(&e, &f) {
            return Ok(EqWitness::Cr3_3 { e, f });
        }
    }
    // shortcut (e,f) = (1,0) for (1-a, b) unimodular
    if coprime(&(BigInt::one() - a), b) {
        let (e, f) = (BigInt::one(), BigInt::zero());
        if valid(&e, &f) {
            return Ok(EqWitness::Cr3_3 { e, f });
        }
    }
    let hit = scan::scan_tuples(2, budget, |ef| {
        let e = BigInt::from(ef[0]);
        let f = BigInt::from(ef[1]);
        if valid(&e, &f) {
            Some((e, f))
        } else {
            None
        }
    });
    match hit {
        Some((e, f)) => Ok(EqWitness::Cr3_3 { e, f }),
        None => Err(Error::BudgetExhausted(budget.max(0) as u64)),
    }
}

/// c14 witness over Z: scan (s, l); the equation is linear in z.
pub fn c14_witness(a: &BigInt, u: &BigInt, t: &BigInt, budget: i64) -> Result<EqWitness> {
    if u.is_zero() {
        return Err(Error::Precondition("u must be nonzero".into()));
    }
    let hit = scan::scan_tuples(2, budget, |sl| {
        let s = BigInt::from(sl[0]);
        let l = BigInt::from(sl[1]);
        let base = BigInt::one() - &s * u - &l * a;
        let lhs = &base * &base + &l - &s * u * &l - &l * &l * a;
        let denom = &s + t - &s * u * t;
        if denom.is_zero() {
            if lhs.is_zero() {
                return Some((s, l, BigInt::zero()));
            }
            return None;
        }
        let (z, rem) = num_integer::Integer::div_rem(&lhs, &denom);
        if rem.is_zero() {
            Some((s, l, z))
        } else {
            None
        }
    });
    match hit {
        Some((s, l, z)) => {
            let base = BigInt::one() - &s * u - &l * a;
            let residual = &base * &base + &l - &s * u * &l - &l * &l * a
                - &z * (&s + t - &s * u * t);
            if !residual.is_zero() {
                return Err(Error::Precondition("c14 residual nonzero".into()));
            }
            Ok(EqWitness::C14 { s, l, z })
        }
        None => Err(Error::BudgetExhausted(budget.max(0) as u64)),
    }
}

/// C9-style extension with e = 1 for upper triangular [[a, b],[0, d]]:
/// for a != 0 find f with (b + d f, a) unimodular and Bezout (s, t); for
/// a = 0 a unit b + d f is required and may not exist over Z.
pub fn c9_extension(a_mat: &Mat2, budget: i64) -> Result<Option<EqWitness>> {
    if a_mat.ring != RingSpec::Integers {
        return Err(Error::UnsupportedRing("c9_extension is over Z".into()));
    }
    if !a_mat.ring.is_zero(a_mat.c())? {
        return Err(Error::Precondition("matrix must be upper triangular".into()));
    }
    if !a_mat.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    let (a, b, d) = match (a_mat.a(), a_mat.b(), a_mat.d()) {
        (RElem::Int(a), RElem::Int(b), RElem::Int(d)) => (a.clone(), b.clone(), d.clone()),
        _ => unreachable!(),
    };
    let ring = &a_mat.ring;
    if a.is_zero() {
        // need b + d f a unit: at most two candidate f values, solved
        // exactly, so not-found here is a genuine decision
        let mut hit: Option<(BigInt, BigInt)> = None;
        for unit in [BigInt::one(), -BigInt::one()] {
            let num = &unit - &b;
            if d.is_zero() {
                if num.is_zero() {
                    hit = Some((BigInt::zero(), unit));
                    break;
                }
                continue;
            }
            let (f, rem) = num_integer::Integer::div_rem(&num, &d);
            if rem.is_zero() {
                hit = Some((f, unit));
                break;
            }
        }
        let Some((f, unit)) = hit else { return Ok(None) };
        // border expansion with e = 1, a = c = 0: (b + d f) t = 1
        let w = ExtWitness::from_parts(
            a_mat,
            ring.one(),
            RElem::Int(f),
            ring.zero(),
            RElem::Int(unit),
            ring.zero(),
        )?;
        return Ok(Some(EqWitness::C9(w)));
    }
    let hit = scan::scan_tuples(1, budget, |fv| {
        let f = BigInt::from(fv[0]);
        let val = &b + &d * &f;
        if coprime(&val, &a) {
            Some((f, val))
        } else {
            None
        }
    });
    let Some((f, val)) = hit else { return Ok(None) };
    // a s + (b + d f) t = 1 completes the border expansion with e = 1
    let (g, s, t) = egcd(&a, &val);
    debug_assert!(g.is_one());
    let w = ExtWitness::from_parts(
        a_mat,
        ring.one(),
        RElem::Int(f),
        RElem::Int(s),
        RElem::Int(t),
        ring.zero(),
    )?;
    Ok(Some(EqWitness::C9(w)))
}

/// TH2(2) witness: C with A + det(A) C unimodular and both determinants
/// zero. Over Z this is the companion construction from a statement-5
/// witness; over finite rings it is the exhaustive statement-6 search.
pub fn th2_2_witness(a: &Mat2, budget: &Budget) -> Result<Status> {
    let ring = &a.ring;
    if !a.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    if ring.is_zero(&a.det()?)? {
        // A + 0*C = A: C = A works since det(A) = 0
        return Ok(Status::Holds(Witness::CompanionZero { b: a.clone() }));
    }
    let st = check_statement(a, 6, budget)?;
    Ok(st)
}

impl EqWitness {
    /// Residual re-check against the tagged equation.
    pub fn revalidate(&self, inputs: &EqInputs) -> Result<()> {
        let ok = match (self, inputs) {
            (EqWitness::Th5_8 { t, d1, d2 }, EqInputs::Th5_8 { a, b, c, d }) => {
                d + c * t == d1 * d2 && coprime(a, d1) && coprime(b, d2)
            }
            (EqWitness::Cr3_2 { q, r, y, t, u, v }, EqInputs::Cr3 { a, b, s }) => {
                let y2 = r + s - a * s * q - b * q * r;
                let t2 = BigInt::one() + q - a * q - b * r;
                y == &y2 && t == &t2 && u * y + v * (a * t) == *t
            }
            (EqWitness::Cr3_3 { e, f }, EqInputs::Cr3 { a, b, s }) => {
                coprime(e, f)
                    && coprime(a, e)
                    && coprime(&(b * e + a * f), &(BigInt::one() - b * s - a))
            }
            (EqWitness::C14 { s, l, z }, EqInputs::C14 { a, u, t }) => {
                let base = BigInt::one() - s * u - l * a;
                (&base * &base + l - s * u * l - l * l * a - z * (s + t - s * u * t)).is_zero()
            }
            (EqWitness::C9(w), EqInputs::Matrix(m)) => {
                w.validate(m).is_ok() && w.e == m.ring.one()
            }
            (EqWitness::Th2_2 { c }, EqInputs::Matrix(m)) => {
                super::revalidate_witness(m, 6, &Witness::CompanionZero { b: c.clone() }).is_ok()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Precondition("equation witness failed revalidation".into()))
        }
    }
}

/// Inputs of the tagged equations, for revalidation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EqInputs {
    Th5_8 { a: BigInt, b: BigInt, c: BigInt, d: BigInt },
    Cr3 { a: BigInt, b: BigInt, s: BigInt },
    C14 { a: BigInt, u: BigInt, t: BigInt },
    Matrix(Mat2),
}
