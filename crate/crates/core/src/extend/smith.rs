//! 2x2 Smith reduction over Z and Z/n, and the diagonal-reduction route to
//! simple extensions: when M A N = Diag(1, d), bordering
//! [[1,0,0],[0,d,1],[0,-1,0]] and undoing the transforms extends A.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ExtWitness;
use crate::error::{Error, Result};
use crate::matrix::{sigma, Mat2, Mat3};
use crate::ring::{egcd, RElem, RingSpec};

/// Transforms M, N with unit determinants and M A N = Diag(d1, d2),
/// d1 | d2. Over Z with A unimodular, d1 = 1 and d2 = det(A) exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SNF2 {
    pub m: Mat2,
    pub n: Mat2,
    pub d1: RElem,
    pub d2: RElem,
}

/// Integer 2x2 Smith reduction with SL2 transforms: returns (m, n, d1, d2)
/// with m * a * n = diag(d1, d2), det(m) = det(n) = 1, d1 >= 0, d1 | d2.
fn smith2_int(a: &[BigInt; 4]) -> ([BigInt; 4], [BigInt; 4], BigInt, BigInt) {
    let mut w = a.clone();
    let mut m = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    let mut n = m.clone();

    let mul = |x: &[BigInt; 4], y: &[BigInt; 4]| -> [BigInt; 4] {
        [
            &x[0] * &y[0] + &x[1] * &y[2],
            &x[0] * &y[1] + &x[1] * &y[3],
            &x[2] * &y[0] + &x[3] * &y[2],
            &x[2] * &y[1] + &x[3] * &y[3],
        ]
    };

    loop {
        // clear (2,1) with a left SL2 transform built from egcd
        if !w[2].is_zero() {
            let (g, x, y) = egcd(&w[0], &w[2]);
            let t = [x.clone(), y.clone(), -(&w[2] / &g), &w[0] / &g];
            w = mul(&t, &w);
            m = mul(&t, &m);
        }
        // clear (1,2) with a right SL2 transform
        if !w[1].is_zero() {
            let (g, x, y) = egcd(&w[0], &w[1]);
            let s = [x.clone(), -(&w[1] / &g), y.clone(), &w[0] / &g];
            w = mul(&w, &s);
            n = mul(&n, &s);
        }
        if w[1].is_zero() && w[2].is_zero() {
            // enforce the divisibility chain d1 | d2
            if !w[0].is_zero() && !w[3].is_multiple_of(&w[0]) {
                // add column 2 to column 1 and reduce again
                let s = [BigInt::one(), BigInt::zero(), BigInt::one(), BigInt::one()];
                w = mul(&w, &s);
                n = mul(&n, &s);
                continue;
            }
            break;
        }
    }

    // sign normalization: d1 >= 0, then fold unit determinants of the
    // transforms into d2 so that det(m) = det(n) = 1
    if w[0].is_negative() {
        for i in [0, 1] {
            m[i] = -m[i].clone();
        }
        w[0] = -w[0].clone();
    }
    let det_m = &m[0] * &m[3] - &m[1] * &m[2];
    if det_m == BigInt::from(-1) {
        for i in [2, 3] {
            m[i] = -m[i].clone();
        }
        w[3] = -w[3].clone();
    }
    let det_n = &n[0] * &n[3] - &n[1] * &n[2];
    if det_n == BigInt::from(-1) {
        for i in [1, 3] {
            n[i] = -n[i].clone();
        }
        w[3] = -w[3].clone();
    }
    (m, n, w[0].clone(), w[3].clone())
}

/// Smith reduction for a unimodular matrix over Z or Z/n.
pub fn smith2(a: &Mat2) -> Result<SNF2> {
    if !a.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    match &a.ring {
        RingSpec::Integers => {
            let ints: [BigInt; 4] = a
                .entries()
                .clone()
                .map(|e| match e {
                    RElem::Int(v) => v,
                    _ => unreachable!(),
                });
            let (m, n, d1, d2) = smith2_int(&ints);
            debug_assert!(d1.is_one());
            let snf = SNF2 {
                m: Mat2::new(a.ring.clone(), m.map(RElem::Int))?,
                n: Mat2::new(a.ring.clone(), n.map(RElem::Int))?,
                d1: RElem::Int(d1),
                d2: RElem::Int(d2),
            };
            snf.validate(a)?;
            Ok(snf)
        }
        RingSpec::ModN(modulus) => {
            let ints: [BigInt; 4] = a
                .entries()
                .clone()
                .map(|e| match e {
                    RElem::Mod(v) => v,
                    _ => unreachable!(),
                });
            let (m, n, d1, d2) = smith2_int(&ints);
            // d1 is the integer gcd of the lifted entries; coprime to the
            // modulus since A is unimodular mod n, hence a unit: scale the
            // first row of M by its inverse so the pivot becomes 1.
            let ring = a.ring.clone();
            let (g, inv, _) = egcd(&d1, modulus);
            if !g.is_one() {
                return Err(Error::NotUnimodular);
            }
            let m = [
                (&m[0] * &inv).mod_floor(modulus),
                (&m[1] * &inv).mod_floor(modulus),
                m[2].mod_floor(modulus),
                m[3].mod_floor(modulus),
            ];
            let n = n.map(|v| v.mod_floor(modulus));
            let snf = SNF2 {
                m: Mat2::new(ring.clone(), m.map(RElem::Mod))?,
                n: Mat2::new(ring.clone(), n.map(RElem::Mod))?,
                d1: RElem::Mod(BigInt::one()),
                d2: RElem::Mod(d2.mod_floor(modulus)),
            };
            snf.validate(a)?;
            Ok(snf)
        }
        other => Err(Error::UnsupportedRing(format!("smith2 over {other}"))),
    }
}

impl SNF2 {
    /// M A N = Diag(d1, d2) with unit-determinant transforms and d1 | d2
    /// where divisibility is checked over Z.
    pub fn validate(&self, a: &Mat2) -> Result<()> {
        let ring = &a.ring;
        let prod = self.m.mul(a)?.mul(&self.n)?;
        let diag = Mat2::diag(ring, self.d1.clone(), self.d2.clone())?;
        if prod != diag {
            return Err(Error::Precondition("M*A*N is not Diag(d1,d2)".into()));
        }
        for t in [&self.m, &self.n] {
            if !ring.is_unit(&t.det()?)? {
                return Err(Error::Precondition("transform determinant is not a unit".into()));
            }
        }
        Ok(())
    }
}

/// Simple extension through diagonal reduction: with M A N = Diag(1, d),
/// sigma(M^-1) * [[1,0,0],[0,d,1],[0,-1,0]] * sigma(N^-1) is a simple
/// extension of A.
pub fn simple_extension_snf(a: &Mat2) -> Result<ExtWitness> {
    let snf = smith2(a)?;
    let ring = &a.ring;
    let m_inv = snf.m.inverse()?;
    let n_inv = snf.n.inverse()?;
    let (z, o) = (ring.zero(), ring.one());
    let core = Mat3::new(
        ring.clone(),
        [
            o.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            snf.d2.clone(),
            o.clone(),
            z.clone(),
            ring.neg(&o)?,
            z.clone(),
        ],
    )?;
    let aplus = sigma(&m_inv)?.mul(&core)?.mul(&sigma(&n_inv)?)?;
    let e = ring.neg(aplus.entry(1, 2))?;
    let f = aplus.entry(0, 2).clone();
    let s = aplus.entry(2, 1).clone();
    let t = ring.neg(aplus.entry(2, 0))?;
    let w = ExtWitness { e, f, s, t, aplus, simple: true };
    w.validate(a)?;
    Ok(w)
}
