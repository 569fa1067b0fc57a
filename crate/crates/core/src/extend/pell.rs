//! Pell-type witness for symmetric determinant-zero matrices
//! [[a,b],[b,c]]: a pair (e, f) with a e^2 - c f^2 a unit yields the
//! border pair (ae - bf, be - cf) through the identity
//! a e^2 - c f^2 = e(ae - bf) + f(be - cf).

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::ring::{RElem, RingSpec};
use crate::scan;

use super::{int_entries, ExtWitness};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PellWitness {
    pub e: RElem,
    pub f: RElem,
    /// The unit a e^2 - c f^2.
    pub unit: RElem,
    pub witness: ExtWitness,
}

/// Searches |e|, |f| <= bound for a e^2 - c f^2 in U(R); absence within the
/// box is not a refutation.
pub fn pell_simple_extendable(a_mat: &Mat2, bound: i64) -> Result<Option<PellWitness>> {
    if a_mat.b() != a_mat.c() {
        return Err(Error::Precondition("matrix must be symmetric".into()));
    }
    if !a_mat.ring.is_zero(&a_mat.det()?)? {
        return Err(Error::NonzeroDeterminant);
    }
    if !a_mat.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    match &a_mat.ring {
        RingSpec::Integers => {
            let m = int_entries(a_mat)?;
            let (a, b, c) = (m[0], m[1], m[3]);
            let hit = scan::scan_tuples(2, bound, |t| {
                let (e, f) = (t[0] as i128, t[1] as i128);
                let u = a * e * e - c * f * f;
                if u == 1 || u == -1 {
                    Some((e as i64, f as i64, u as i64))
                } else {
                    None
                }
            });
            let Some((e, f, u)) = hit else { return Ok(None) };
            // border pair from the search pair: (e3, f3) = (e, -f)
            let p = a * (e as i128) - b * (f as i128);
            let q = b * (e as i128) - c * (f as i128);
            let (g, s, t) = crate::ring::egcd(&p.into(), &q.into());
            debug_assert!(g == 1.into());
            let ring = &a_mat.ring;
            let witness = ExtWitness::from_parts(
                a_mat,
                ring.from_int(e),
                ring.from_int(-f),
                RElem::Int(s),
                RElem::Int(t),
                ring.zero(),
            )?;
            Ok(Some(PellWitness {
                e: ring.from_int(e),
                f: ring.from_int(f),
                unit: ring.from_int(u),
                witness,
            }))
        }
        RingSpec::ModN(n) => {
            let nn = u64::try_from(n).map_err(|_| Error::InputTooLarge("modulus".into()))?;
            let ring = &a_mat.ring;
            for e in 0..nn {
                for f in 0..nn {
                    let (ee, ff) = (ring.from_int(e as i64), ring.from_int(f as i64));
                    let u = ring.sub(
                        &ring.mul(a_mat.a(), &ring.mul(&ee, &ee)?)?,
                        &ring.mul(a_mat.d(), &ring.mul(&ff, &ff)?)?,
                    )?;
                    if !ring.is_unit(&u)? {
                        continue;
                    }
                    let f3 = ring.neg(&ff)?;
                    let p = ring.add(&ring.mul(a_mat.a(), &ee)?, &ring.mul(a_mat.c(), &f3)?)?;
                    let q = ring.add(&ring.mul(a_mat.b(), &ee)?, &ring.mul(a_mat.d(), &f3)?)?;
                    let cert = ring
                        .unimodular_certificate(&[p, q])?
                        .ok_or_else(|| Error::Precondition("pair not unimodular".into()))?;
                    let witness = ExtWitness::from_parts(
                        a_mat,
                        ee.clone(),
                        f3,
                        cert[0].clone(),
                        cert[1].clone(),
                        ring.zero(),
                    )?;
                    return Ok(Some(PellWitness { e: ee, f: ff, unit: u, witness }));
                }
            }
            Ok(None)
        }
        other => Err(Error::UnsupportedRing(format!("pell search over {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    #[test]
    fn worked_pell_examples() {
        // [[4,2],[2,1]]: (e,f) = (0,1) gives -1; the canonical scan order
        // reaches (0,-1) first, with the same unit
        let a = Mat2::from_ints(&z(), [4, 2, 2, 1]);
        let w = pell_simple_extendable(&a, 64).unwrap().unwrap();
        assert_eq!((w.e.clone(), w.f.clone()), (RElem::Int(0.into()), RElem::Int((-1).into())));
        assert_eq!(w.unit, RElem::Int((-1).into()));
        w.witness.validate(&a).unwrap();
        // [[1,1],[1,1]]: (e,f) = (1,0) gives 1, among others
        let a = Mat2::from_ints(&z(), [1, 1, 1, 1]);
        let w = pell_simple_extendable(&a, 64).unwrap().unwrap();
        assert_eq!(w.unit, RElem::Int((-1).into()));
        w.witness.validate(&a).unwrap();
        // [[1,0],[0,0]]
        let a = Mat2::from_ints(&z(), [1, 0, 0, 0]);
        let w = pell_simple_extendable(&a, 64).unwrap().unwrap();
        w.witness.validate(&a).unwrap();
    }

    #[test]
    fn pell_unsolvable_family_reports_not_found() {
        // [[9,6],[6,4]] = (3,2)^T(3,2): a e^2 - c f^2 = (3e-2f)(3e+2f) is
        // never a unit; the honest outcome is None, not a refutation of
        // extendability (the matrix is simply extendable over Z).
        let a = Mat2::from_ints(&z(), [9, 6, 6, 4]);
        assert!(pell_simple_extendable(&a, 64).unwrap().is_none());
        assert!(super::super::smith::simple_extension_snf(&a).is_ok());
    }

    #[test]
    fn preconditions() {
        let a = Mat2::from_ints(&z(), [1, 2, 3, 4]);
        assert!(pell_simple_extendable(&a, 8).is_err()); // not symmetric
        let a = Mat2::from_ints(&z(), [1, 1, 1, 2]);
        assert!(matches!(
            pell_simple_extendable(&a, 8),
            Err(Error::NonzeroDeterminant)
        ));
    }

    #[test]
    fn mod_n_pell() {
        let m6 = RingSpec::mod_n(6).unwrap();
        let a = Mat2::from_ints(&m6, [3, 0, 0, 2]);
        assert_eq!(a.det().unwrap(), RElem::Mod(0.into()));
        assert!(a.is_unimodular().unwrap());
        let w = pell_simple_extendable(&a, 0).unwrap().unwrap();
        assert!(m6.is_unit(&w.unit).unwrap());
        w.witness.validate(&a).unwrap();
    }
}
