//! Companion test matrices and the universal test matrices over Z[x,y,z]:
//! triangularize by an SL2 transform, split the diagonal through the gcd
//! structure g = a*c, h = b*c with (a, b) unimodular, and read the result
//! as the image of the universal matrix under x, y, z -> aa', u, u'.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::ring::poly::Poly3;
use crate::ring::{egcd, RElem, RingSpec};

/// The four universal test matrices of the theory.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UniversalMatrix {
    /// [[x(1-yz), y],[0,(1-x)(1-yz)]] - first test matrix for Hermite rings.
    D,
    /// [[x, y],[0,(1-x)(1-yz)^2]] - the matrix equivalent to D.
    E,
    /// [[x, y],[0,(1-x)(1-yz)]] - second test matrix for Hermite rings.
    F,
    /// [[x, y],[0,1-x-yz]] - test matrix for all rings.
    G,
}

/// Data of the companion test matrix D associated to A: the SL2
/// triangularizer, the gcd splitting, the Bezout cofactors, D itself, and
/// the evaluation triple phi with D = UniversalMatrix::D at phi.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompanionData {
    pub triangularizer: Mat2,
    pub g: BigInt,
    pub u: BigInt,
    pub h: BigInt,
    pub cgcd: BigInt,
    pub aq: BigInt,
    pub bq: BigInt,
    pub aq2: BigInt,
    pub bq2: BigInt,
    pub c2: BigInt,
    pub u2: BigInt,
    pub d: Mat2,
    pub phi: (BigInt, BigInt, BigInt),
}

fn x() -> Poly3 {
    Poly3::var_x()
}
fn y() -> Poly3 {
    Poly3::var_y()
}
fn z() -> Poly3 {
    Poly3::var_z()
}
fn onep() -> Poly3 {
    Poly3::constant(1)
}

/// The displayed polynomial matrices over Z[x,y,z].
pub fn universal_matrix(which: UniversalMatrix) -> Mat2 {
    let ring = RingSpec::PolyZ3;
    let zero = Poly3::zero();
    let one_minus_yz = onep().sub(&y().mul(&z()));
    let entries = match which {
        UniversalMatrix::D => [
            x().mul(&one_minus_yz),
            y(),
            zero,
            onep().sub(&x()).mul(&one_minus_yz),
        ],
        UniversalMatrix::E => [
            x(),
            y(),
            zero,
            onep().sub(&x()).mul(&one_minus_yz).mul(&one_minus_yz),
        ],
        UniversalMatrix::F => [x(), y(), zero, onep().sub(&x()).mul(&one_minus_yz)],
        UniversalMatrix::G => [x(), y(), zero, onep().sub(&x()).sub(&y().mul(&z()))],
    };
    Mat2::new(ring, entries.map(RElem::Poly)).expect("polynomial entries")
}

/// Substitutes x, y, z by ring elements in each entry of a polynomial
/// matrix. The images may live in any ring, including Z[x,y,z] itself
/// (endomorphism evaluation).
pub fn evaluate_hom(m: &Mat2, target: &RingSpec, images: &[RElem; 3]) -> Result<Mat2> {
    if m.ring != RingSpec::PolyZ3 {
        return Err(Error::UnsupportedRing("evaluate_hom needs a matrix over Z[x,y,z]".into()));
    }
    for im in images {
        if !target.contains(im) {
            return Err(Error::RingMismatch(target.to_string()));
        }
    }
    let eval = |p: &Poly3| -> Result<RElem> {
        p.eval_with(
            |var, e| {
                let mut acc = target.one();
                for _ in 0..e {
                    acc = target.mul(&acc, &images[var])?;
                }
                Ok(acc)
            },
            |a, b| target.mul(&a, &b),
            |a, b| target.add(&a, &b),
            |c, m| target.mul(&target.from_int(c.clone()), &m),
            target.zero(),
        )
    };
    let mut out = Vec::with_capacity(4);
    for e in m.entries() {
        match e {
            RElem::Poly(p) => out.push(eval(p)?),
            _ => unreachable!(),
        }
    }
    Mat2::new(target.clone(), out.try_into().unwrap())
}

/// Companion test matrix of a unimodular integer matrix.
pub fn companion_test_matrix(a_mat: &Mat2) -> Result<CompanionData> {
    if a_mat.ring != RingSpec::Integers {
        return Err(Error::UnsupportedRing("companion_test_matrix is over Z".into()));
    }
    if !a_mat.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    let [a, b, c, d] = a_mat.entries().clone().map(|e| match e {
        RElem::Int(v) => v,
        _ => unreachable!(),
    });
    // SL2 triangularizer M with M A = [[g, u],[0, h]]
    let (m, g, u, h);
    if c.is_zero() {
        m = Mat2::identity(&a_mat.ring);
        g = a.clone();
        u = b.clone();
        h = d.clone();
    } else {
        let (g0, xx, yy) = egcd(&a, &c);
        let t = [xx.clone(), yy.clone(), -(&c / &g0), &a / &g0];
        m = Mat2::new(a_mat.ring.clone(), t.map(RElem::Int))?;
        g = g0.clone();
        u = &xx * &b + &yy * &d;
        h = (&a * &d - &b * &c) / &g0;
    }
    // g = aq * cgcd, h = bq * cgcd with (aq, bq) unimodular
    let cgcd = g.gcd(&h);
    let (aq, bq) = if cgcd.is_zero() {
        (BigInt::one(), BigInt::one())
    } else {
        (&g / &cgcd, &h / &cgcd)
    };
    let (one1, aq2, bq2) = egcd(&aq, &bq);
    if !one1.is_one() {
        return Err(Error::Precondition("(aq, bq) not coprime".into()));
    }
    let (one2, c2, u2) = egcd(&cgcd, &u);
    if !one2.is_one() {
        return Err(Error::Precondition("(cgcd, u) not coprime; input not unimodular".into()));
    }
    let d11 = &aq * &aq2 * &cgcd * &c2;
    let d22 = &bq * &bq2 * &cgcd * &c2;
    let dmat = Mat2::new(
        a_mat.ring.clone(),
        [
            RElem::Int(d11),
            RElem::Int(u.clone()),
            RElem::Int(BigInt::zero()),
            RElem::Int(d22),
        ],
    )?;
    let phi = (&aq * &aq2, u.clone(), u2.clone());
    // consistency: D equals the universal matrix D evaluated at phi
    let eval = evaluate_hom(
        &universal_matrix(UniversalMatrix::D),
        &a_mat.ring,
        &[
            RElem::Int(phi.0.clone()),
            RElem::Int(phi.1.clone()),
            RElem::Int(phi.2.clone()),
        ],
    )?;
    if eval != dmat {
        return Err(Error::Precondition("companion D disagrees with the universal evaluation".into()));
    }
    Ok(CompanionData {
        triangularizer: m,
        g,
        u,
        h,
        cgcd,
        aq,
        bq,
        aq2,
        bq2,
        c2,
        u2,
        d: dmat,
        phi,
    })
}

/// The L and R elementary factors with E = L * D * R identically in
/// Z[x,y,z].
pub fn e_from_d_factors() -> (Mat2, Mat2) {
    let ring = RingSpec::PolyZ3;
    let one_minus_yz = onep().sub(&y().mul(&z()));
    let l21 = z().mul(&x().sub(&onep())).mul(&one_minus_yz);
    let l = Mat2::new(
        ring.clone(),
        [
            RElem::Poly(onep()),
            RElem::Poly(Poly3::zero()),
            RElem::Poly(l21),
            RElem::Poly(onep()),
        ],
    )
    .unwrap();
    let r = Mat2::new(
        ring,
        [
            RElem::Poly(onep()),
            RElem::Poly(Poly3::zero()),
            RElem::Poly(x().mul(&z())),
            RElem::Poly(onep()),
        ],
    )
    .unwrap();
    (l, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_equals_l_d_r_identically() {
        let (l, r) = e_from_d_factors();
        let d = universal_matrix(UniversalMatrix::D);
        let e = universal_matrix(UniversalMatrix::E);
        assert_eq!(l.mul(&d).unwrap().mul(&r).unwrap(), e);
    }

    #[test]
    fn f_specializes_to_e() {
        // z -> 2z - y z^2 turns F into E
        let f = universal_matrix(UniversalMatrix::F);
        let e = universal_matrix(UniversalMatrix::E);
        let ring = RingSpec::PolyZ3;
        let img_z = Poly3::constant(2)
            .mul(&z())
            .sub(&y().mul(&z()).mul(&z()));
        let images = [RElem::Poly(x()), RElem::Poly(y()), RElem::Poly(img_z)];
        assert_eq!(evaluate_hom(&f, &ring, &images).unwrap(), e);
    }

    #[test]
    fn g_at_a_point() {
        let g = universal_matrix(UniversalMatrix::G);
        let z_ring = RingSpec::Integers;
        let images = [
            RElem::Int(1.into()),
            RElem::Int(0.into()),
            RElem::Int(0.into()),
        ];
        let img = evaluate_hom(&g, &z_ring, &images).unwrap();
        assert_eq!(img, Mat2::from_ints(&z_ring, [1, 0, 0, 0]));
    }

    #[test]
    fn d_at_integer_triple() {
        // (x,y,z) = (2,3,1): 1-yz = -2, D = [[-4, 3],[0, 2]]
        let d = universal_matrix(UniversalMatrix::D);
        let z_ring = RingSpec::Integers;
        let images = [
            RElem::Int(2.into()),
            RElem::Int(3.into()),
            RElem::Int(1.into()),
        ];
        let img = evaluate_hom(&d, &z_ring, &images).unwrap();
        assert_eq!(img, Mat2::from_ints(&z_ring, [-4, 3, 0, 2]));
    }

    #[test]
    fn companion_of_diagonal() {
        let zr = RingSpec::Integers;
        let a = Mat2::from_ints(&zr, [1, 0, 0, 7]);
        let data = companion_test_matrix(&a).unwrap();
        assert_eq!(data.g, BigInt::one());
        assert_eq!(data.h, BigInt::from(7));
        assert_eq!(data.cgcd, BigInt::one());
        assert_eq!(data.u, BigInt::zero());
    }

    #[test]
    fn companion_consistency_on_mixed_matrices() {
        let zr = RingSpec::Integers;
        for ents in [[15, 6, 10, 14], [30, 42, 70, 105], [0, 1, 0, 0], [2, 3, 4, 5]] {
            let a = Mat2::from_ints(&zr, ents);
            // evaluation agreement is checked inside the constructor
            companion_test_matrix(&a).unwrap();
        }
    }
}
