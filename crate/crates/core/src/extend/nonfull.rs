//! Column-row factorizations of determinant-zero matrices: over Z from the
//! row gcd structure, over Z/n through a simple extension and the
//! constructive transforms M A N = [[1,0],[w,0]].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::smith::simple_extension_snf;
use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::ring::{RElem, RingSpec};

/// A = col * row entrywise: (l, m) as a column times (n, q) as a row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NonFullWitness {
    pub col: (RElem, RElem),
    pub row: (RElem, RElem),
}

impl NonFullWitness {
    /// Entrywise product identity against A.
    pub fn validate(&self, a: &Mat2) -> Result<()> {
        let r = &a.ring;
        let expect = [
            r.mul(&self.col.0, &self.row.0)?,
            r.mul(&self.col.0, &self.row.1)?,
            r.mul(&self.col.1, &self.row.0)?,
            r.mul(&self.col.1, &self.row.1)?,
        ];
        if &expect != a.entries() {
            return Err(Error::Precondition("column-row product does not equal A".into()));
        }
        Ok(())
    }
}

/// Factorization of an arbitrary det-0 integer matrix (no unimodularity
/// required): l = gcd of the first row, m forced by the proportionality
/// n d = q c.
pub(crate) fn nonfull_decompose_int_any(e: &[BigInt; 4]) -> Option<([BigInt; 2], [BigInt; 2])> {
    let [a, b, c, d] = e.clone();
    if (&a * &d - &b * &c) != BigInt::zero() {
        return None;
    }
    if a.is_zero() && b.is_zero() {
        return Some(([BigInt::zero(), BigInt::from(1)], [c, d]));
    }
    let l = a.gcd(&b);
    let n = &a / &l;
    let q = &b / &l;
    let m = if !n.is_zero() {
        let (m, r) = c.div_rem(&n);
        if !r.is_zero() {
            return None;
        }
        m
    } else {
        let (m, r) = d.div_rem(&q);
        if !r.is_zero() {
            return None;
        }
        m
    };
    if &m * &n == c && &m * &q == d {
        Some(([l, m], [n, q]))
    } else {
        None
    }
}

/// Column-row factorization of a unimodular determinant-zero matrix over Z
/// or Z/n.
pub fn nonfull_decompose(a: &Mat2) -> Result<NonFullWitness> {
    if !a.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    if !a.ring.is_zero(&a.det()?)? {
        return Err(Error::NonzeroDeterminant);
    }
    match &a.ring {
        RingSpec::Integers => {
            let ints: [BigInt; 4] = a.entries().clone().map(|e| match e {
                RElem::Int(v) => v,
                _ => unreachable!(),
            });
            let (col, row) = nonfull_decompose_int_any(&ints)
                .ok_or_else(|| Error::Precondition("gcd factorization failed".into()))?;
            let w = NonFullWitness {
                col: (RElem::Int(col[0].clone()), RElem::Int(col[1].clone())),
                row: (RElem::Int(row[0].clone()), RElem::Int(row[1].clone())),
            };
            w.validate(a)?;
            Ok(w)
        }
        RingSpec::ModN(_) => {
            let w = from_simple_extension(a)?;
            w.validate(a)?;
            Ok(w)
        }
        other => Err(Error::UnsupportedRing(format!("nonfull_decompose over {other}"))),
    }
}

/// The constructive route of the simply-extendable => non-full direction:
/// from a witness (e, f, s, t), SL2 transforms M, N with
/// M A N = [[1,0],[w,0]] give A = (M^-1 [1 w]^T)([1 0] N^-1).
pub(crate) fn from_simple_extension(a: &Mat2) -> Result<NonFullWitness> {
    let ring = &a.ring;
    let wit = simple_extension_snf(a)?;
    let (e, f, s, t) = (&wit.e, &wit.f, &wit.s, &wit.t);
    // pair (P, Q) = (ae+cf, be+df), with P s + Q t = 1
    let p = ring.add(&ring.mul(a.a(), e)?, &ring.mul(a.c(), f)?)?;
    let q = ring.add(&ring.mul(a.b(), e)?, &ring.mul(a.d(), f)?)?;
    // (e, f) is unimodular; get r, pp with e*r + f*pp = 1 (det of M below)
    let cert = ring
        .unimodular_certificate(&[e.clone(), f.clone()])?
        .ok_or_else(|| Error::Precondition("(e,f) not unimodular".into()))?;
    let (r, pp) = (cert[0].clone(), cert[1].clone());
    // w = second row of (M A) applied to (s, t), M = [[e, f],[-pp, r]]
    let ma_21 = ring.sub(&ring.mul(&r, a.c())?, &ring.mul(&pp, a.a())?)?;
    let ma_22 = ring.sub(&ring.mul(&r, a.d())?, &ring.mul(&pp, a.b())?)?;
    let w = ring.add(&ring.mul(&ma_21, s)?, &ring.mul(&ma_22, t)?)?;
    // col = M^-1 (1, w)^T with M^-1 = [[r, -f],[pp, e]]
    let col = (
        ring.sub(&r, &ring.mul(&f.clone(), &w)?)?,
        ring.add(&pp, &ring.mul(&e.clone(), &w)?)?,
    );
    Ok(NonFullWitness { col, row: (p, q) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn int(v: i64) -> RElem {
        RElem::Int(v.into())
    }

    #[test]
    fn idempotent_projection() {
        let a = Mat2::from_ints(&z(), [1, 0, 0, 0]);
        let w = nonfull_decompose(&a).unwrap();
        assert_eq!(w.col, (int(1), int(0)));
        assert_eq!(w.row, (int(1), int(0)));
    }

    #[test]
    fn gcd_factorizations() {
        let a = Mat2::from_ints(&z(), [2, 4, 1, 2]);
        let w = nonfull_decompose(&a).unwrap();
        assert_eq!(w.col, (int(2), int(1)));
        assert_eq!(w.row, (int(1), int(2)));
        // [[6,3],[4,2]] = (3,2)^T (2,1)
        let a = Mat2::from_ints(&z(), [6, 3, 4, 2]);
        let w = nonfull_decompose(&a).unwrap();
        assert_eq!(w.col, (int(3), int(2)));
        assert_eq!(w.row, (int(2), int(1)));
    }

    #[test]
    fn nonzero_determinant_rejected() {
        let a = Mat2::from_ints(&z(), [1, 0, 0, 1]);
        assert!(matches!(nonfull_decompose(&a), Err(Error::NonzeroDeterminant)));
    }

    #[test]
    fn mod_n_route_through_simple_extension() {
        let m6 = RingSpec::mod_n(6).unwrap();
        let a = Mat2::from_ints(&m6, [2, 4, 1, 2]);
        assert!(a.is_unimodular().unwrap());
        let w = nonfull_decompose(&a).unwrap();
        w.validate(&a).unwrap();
        // a det-0 unimodular matrix mod 6 that is not one over Z
        let a = Mat2::from_ints(&m6, [3, 3, 4, 4]);
        assert_eq!(a.det().unwrap(), RElem::Mod(0.into()));
        assert!(a.is_unimodular().unwrap());
        let w = nonfull_decompose(&a).unwrap();
        w.validate(&a).unwrap();
    }

    #[test]
    fn zero_first_row() {
        let a = Mat2::from_ints(&z(), [0, 0, 3, 2]);
        let w = nonfull_decompose(&a).unwrap();
        w.validate(&a).unwrap();
        assert_eq!(w.col, (int(0), int(1)));
    }
}
