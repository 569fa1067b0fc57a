//! Extension transfer through reduction: a simple extension of A modulo
//! det(A) lifts to an SL3-extension of A over Z once the (3,3) entry
//! absorbs the determinant defect.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::nonfull::nonfull_decompose;
use super::smith::simple_extension_snf;
use super::{assemble_extension, ExtWitness};
use crate::error::{Error, Result};
use crate::matrix::{sigma, theta, Mat2, Mat3};
use crate::ring::{RElem, RingSpec};

/// SL3-extension of a unimodular integer matrix. det = 0 delegates to the
/// non-full route (the extension is then simple); |det| = 1 borders with
/// sigma; otherwise a witness mod |det| is lifted and the (3,3) entry
/// corrected.
pub fn extend_via_reduction(a: &Mat2) -> Result<Mat3> {
    if a.ring != RingSpec::Integers {
        return Err(Error::UnsupportedRing("extend_via_reduction is over Z".into()));
    }
    if !a.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    let det = match a.det()? {
        RElem::Int(v) => v,
        _ => unreachable!(),
    };
    let ring = &a.ring;
    if det.is_zero() {
        // det 0: non-full, and a simple extension assembles directly from
        // Bezout pairs for the column and the row
        let nf = nonfull_decompose(a)?;
        let ce = ring
            .unimodular_certificate(&[nf.col.0.clone(), nf.col.1.clone()])?
            .ok_or(Error::NotUnimodular)?;
        let rs = ring
            .unimodular_certificate(&[nf.row.0.clone(), nf.row.1.clone()])?
            .ok_or(Error::NotUnimodular)?;
        let (e, f) = (ce[0].clone(), ce[1].clone());
        let (s, t) = (rs[0].clone(), rs[1].clone());
        let w = ExtWitness::from_parts(a, e, f, s, t, ring.zero())?;
        return Ok(w.aplus);
    }
    if det.abs().is_one() {
        return sigma(a);
    }
    let n = det.abs();
    let reduced = a.reduce_mod(n.clone())?;
    let wit = simple_extension_snf(&reduced)?;
    let lift = |e: &RElem| -> RElem {
        match e {
            RElem::Mod(v) => RElem::Int(v.clone()),
            _ => unreachable!(),
        }
    };
    let (e, f, s, t) = (lift(&wit.e), lift(&wit.f), lift(&wit.s), lift(&wit.t));
    let b = assemble_extension(a, &e, &f, &s, &t, &ring.zero())?;
    let det_b = match b.det()? {
        RElem::Int(v) => v,
        _ => unreachable!(),
    };
    // det(B) = 1 + w*det(A); subtracting w at (3,3) lands in SL3
    let defect = &det_b - BigInt::one();
    debug_assert!(&defect % &det == BigInt::zero());
    let w = &defect / &det;
    let mut aplus = b;
    aplus.set_entry(2, 2, RElem::Int(-w))?;
    let d = aplus.det()?;
    if d != RElem::Int(BigInt::one()) {
        return Err(Error::Precondition(format!("lifted extension has det {d}")));
    }
    debug_assert_eq!(&theta(&aplus)?, a);
    Ok(aplus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn check(a: &Mat2) {
        let ext = extend_via_reduction(a).unwrap();
        assert_eq!(ext.det().unwrap(), RElem::Int(1.into()));
        assert_eq!(theta(&ext).unwrap(), a.clone());
    }

    #[test]
    fn composite_determinants() {
        check(&Mat2::from_ints(&z(), [15, 6, 10, 14]));
        check(&Mat2::from_ints(&z(), [7, 0, 0, 11]));
        check(&Mat2::from_ints(&z(), [30, 42, 70, 105]));
    }

    #[test]
    fn unit_determinant_uses_sigma() {
        let a = Mat2::from_ints(&z(), [2, 1, 1, 1]);
        let ext = extend_via_reduction(&a).unwrap();
        assert_eq!(ext, sigma(&a).unwrap());
    }

    #[test]
    fn zero_determinant_gives_simple_extension() {
        let a = Mat2::from_ints(&z(), [2, 4, 1, 2]);
        let ext = extend_via_reduction(&a).unwrap();
        assert_eq!(ext.det().unwrap(), RElem::Int(1.into()));
        assert_eq!(ext.entry(2, 2), &RElem::Int(0.into()));
        assert_eq!(theta(&ext).unwrap(), a);
    }
}
