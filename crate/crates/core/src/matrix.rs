//! 2x2 and 3x3 matrices over a RingSpec: determinants, the truncation and
//! bordering maps between SL3 and Um(M2), equivalence moves, and kernel
//! generators for determinant-zero matrices.
//!
//! Column-vector convention throughout: matrices act on columns.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{RElem, RingSpec};

/// Row-major 2x2 matrix [[a, b], [c, d]] with entries in one ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub ring: RingSpec,
    e: [RElem; 4],
}

/// Row-major 3x3 matrix with entries in one ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat3 {
    pub ring: RingSpec,
    e: [RElem; 9],
}

/// Kernel generators (-b, a) and (-d, c) of a determinant-zero 2x2 matrix,
/// as columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KernelGens {
    pub v1: (RElem, RElem),
    pub v2: (RElem, RElem),
}

impl Mat2 {
    pub fn new(ring: RingSpec, e: [RElem; 4]) -> Result<Self> {
        for x in &e {
            if !ring.contains(x) {
                return Err(Error::RingMismatch(ring.to_string()));
            }
        }
        Ok(Mat2 { ring, e })
    }

    pub fn from_ints(ring: &RingSpec, v: [i64; 4]) -> Self {
        Mat2 { ring: ring.clone(), e: v.map(|x| ring.from_int(x)) }
    }

    pub fn identity(ring: &RingSpec) -> Self {
        let (z, o) = (ring.zero(), ring.one());
        Mat2 { ring: ring.clone(), e: [o.clone(), z.clone(), z, o] }
    }

    pub fn diag(ring: &RingSpec, d1: RElem, d2: RElem) -> Result<Self> {
        let z = ring.zero();
        Mat2::new(ring.clone(), [d1, z.clone(), z, d2])
    }

    pub fn a(&self) -> &RElem {
        &self.e[0]
    }
    pub fn b(&self) -> &RElem {
        &self.e[1]
    }
    pub fn c(&self) -> &RElem {
        &self.e[2]
    }
    pub fn d(&self) -> &RElem {
        &self.e[3]
    }
    pub fn entries(&self) -> &[RElem; 4] {
        &self.e
    }

    pub fn det(&self) -> Result<RElem> {
        let r = &self.ring;
        r.sub(&r.mul(self.a(), self.d())?, &r.mul(self.b(), self.c())?)
    }

    pub fn mul(&self, rhs: &Mat2) -> Result<Mat2> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch(self.ring.to_string()));
        }
        let r = &self.ring;
        let p = |i: usize, j: usize| -> Result<RElem> {
            let mut acc = r.zero();
            for k in 0..2 {
                acc = r.add(&acc, &r.mul(&self.e[2 * i + k], &rhs.e[2 * k + j])?)?;
            }
            Ok(acc)
        };
        Ok(Mat2 { ring: r.clone(), e: [p(0, 0)?, p(0, 1)?, p(1, 0)?, p(1, 1)?] })
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2 {
            ring: self.ring.clone(),
            e: [self.e[0].clone(), self.e[2].clone(), self.e[1].clone(), self.e[3].clone()],
        }
    }

    /// adjugate([[a,b],[c,d]]) = [[d,-b],[-c,a]]; A * adj(A) = det(A) I.
    pub fn adjugate(&self) -> Result<Mat2> {
        let r = &self.ring;
        Ok(Mat2 {
            ring: r.clone(),
            e: [
                self.e[3].clone(),
                r.neg(&self.e[1])?,
                r.neg(&self.e[2])?,
                self.e[0].clone(),
            ],
        })
    }

    /// Inverse of a matrix with unit determinant.
    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det()?;
        if !self.ring.is_unit(&det)? {
            return Err(Error::DetNotUnit);
        }
        let inv_det = self.ring.inverse(&det)?;
        let adj = self.adjugate()?;
        adj.scale(&inv_det)
    }

    pub fn scale(&self, s: &RElem) -> Result<Mat2> {
        let r = &self.ring;
        Ok(Mat2 {
            ring: r.clone(),
            e: [
                r.mul(s, &self.e[0])?,
                r.mul(s, &self.e[1])?,
                r.mul(s, &self.e[2])?,
                r.mul(s, &self.e[3])?,
            ],
        })
    }

    pub fn add(&self, rhs: &Mat2) -> Result<Mat2> {
        let r = &self.ring;
        let mut e = Vec::with_capacity(4);
        for i in 0..4 {
            e.push(r.add(&self.e[i], &rhs.e[i])?);
        }
        Ok(Mat2 { ring: r.clone(), e: e.try_into().unwrap() })
    }

    /// Matrix-times-column action.
    pub fn apply(&self, v: (&RElem, &RElem)) -> Result<(RElem, RElem)> {
        let r = &self.ring;
        Ok((
            r.add(&r.mul(self.a(), v.0)?, &r.mul(self.b(), v.1)?)?,
            r.add(&r.mul(self.c(), v.0)?, &r.mul(self.d(), v.1)?)?,
        ))
    }

    /// Unimodularity of the entry tuple (a, b, c, d).
    pub fn is_unimodular(&self) -> Result<bool> {
        self.ring.is_unimodular_tuple(&self.e)
    }

    /// Kernel generators v1 = (-b, a), v2 = (-d, c) for det(A) = 0.
    pub fn kernel_gens(&self) -> Result<KernelGens> {
        if !self.ring.is_zero(&self.det()?)? {
            return Err(Error::NonzeroDeterminant);
        }
        let r = &self.ring;
        Ok(KernelGens {
            v1: (r.neg(self.b())?, self.a().clone()),
            v2: (r.neg(self.d())?, self.c().clone()),
        })
    }

    /// Entrywise reduction of an integer matrix modulo m >= 2.
    pub fn reduce_mod(&self, m: impl Into<num_bigint::BigInt>) -> Result<Mat2> {
        if self.ring != RingSpec::Integers {
            return Err(Error::UnsupportedRing("reduce_mod needs an integer matrix".into()));
        }
        let target = RingSpec::mod_n(m)?;
        let e = self.e.clone().map(|x| match x {
            RElem::Int(v) => target.from_int(v),
            _ => unreachable!(),
        });
        Ok(Mat2 { ring: target, e })
    }

    pub fn format_text(&self) -> String {
        format!("{},{};{},{}", self.e[0], self.e[1], self.e[2], self.e[3])
    }

    pub fn parse(ring: &RingSpec, s: &str) -> Result<Mat2> {
        let es = crate::ring::parse::parse_matrix_entries(ring, s)?;
        if es.len() != 4 {
            return Err(Error::Parse("expected a 2x2 matrix".into()));
        }
        Mat2::new(ring.clone(), es.try_into().unwrap())
    }
}

impl Mat3 {
    pub fn new(ring: RingSpec, e: [RElem; 9]) -> Result<Self> {
        for x in &e {
            if !ring.contains(x) {
                return Err(Error::RingMismatch(ring.to_string()));
            }
        }
        Ok(Mat3 { ring, e })
    }

    pub fn from_ints(ring: &RingSpec, v: [i64; 9]) -> Self {
        Mat3 { ring: ring.clone(), e: v.map(|x| ring.from_int(x)) }
    }

    pub fn identity(ring: &RingSpec) -> Self {
        let (z, o) = (ring.zero(), ring.one());
        Mat3 {
            ring: ring.clone(),
            e: [
                o.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                o.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                o,
            ],
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &RElem {
        &self.e[3 * i + j]
    }

    pub fn entries(&self) -> &[RElem; 9] {
        &self.e
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: RElem) -> Result<()> {
        if !self.ring.contains(&v) {
            return Err(Error::RingMismatch(self.ring.to_string()));
        }
        self.e[3 * i + j] = v;
        Ok(())
    }

    pub fn det(&self) -> Result<RElem> {
        let r = &self.ring;
        let m = |i: usize, j: usize| &self.e[3 * i + j];
        // cofactor expansion along the first row
        let c0 = r.sub(&r.mul(m(1, 1), m(2, 2))?, &r.mul(m(1, 2), m(2, 1))?)?;
        let c1 = r.sub(&r.mul(m(1, 0), m(2, 2))?, &r.mul(m(1, 2), m(2, 0))?)?;
        let c2 = r.sub(&r.mul(m(1, 0), m(2, 1))?, &r.mul(m(1, 1), m(2, 0))?)?;
        let t0 = r.mul(m(0, 0), &c0)?;
        let t1 = r.mul(m(0, 1), &c1)?;
        let t2 = r.mul(m(0, 2), &c2)?;
        r.add(&r.sub(&t0, &t1)?, &t2)
    }

    pub fn mul(&self, rhs: &Mat3) -> Result<Mat3> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch(self.ring.to_string()));
        }
        let r = &self.ring;
        let mut out = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = r.zero();
                for k in 0..3 {
                    acc = r.add(&acc, &r.mul(&self.e[3 * i + k], &rhs.e[3 * k + j])?)?;
                }
                out.push(acc);
            }
        }
        Ok(Mat3 { ring: r.clone(), e: out.try_into().unwrap() })
    }

    pub fn transpose(&self) -> Mat3 {
        let m = |i: usize, j: usize| self.e[3 * i + j].clone();
        Mat3 {
            ring: self.ring.clone(),
            e: [
                m(0, 0),
                m(1, 0),
                m(2, 0),
                m(0, 1),
                m(1, 1),
                m(2, 1),
                m(0, 2),
                m(1, 2),
                m(2, 2),
            ],
        }
    }

    pub fn format_text(&self) -> String {
        let m = |i: usize, j: usize| &self.e[3 * i + j];
        format!(
            "{},{},{};{},{},{};{},{},{}",
            m(0, 0),
            m(0, 1),
            m(0, 2),
            m(1, 0),
            m(1, 1),
            m(1, 2),
            m(2, 0),
            m(2, 1),
            m(2, 2)
        )
    }

    pub fn parse(ring: &RingSpec, s: &str) -> Result<Mat3> {
        let es = crate::ring::parse::parse_matrix_entries(ring, s)?;
        if es.len() != 9 {
            return Err(Error::Parse("expected a 3x3 matrix".into()));
        }
        Mat3::new(ring.clone(), es.try_into().unwrap())
    }
}

/// Truncation SL3 -> Um(M2): removes the last row and column. SL3
/// membership is verified eagerly; the image is guaranteed unimodular.
pub fn theta(q: &Mat3) -> Result<Mat2> {
    if !q.ring.is_zero(&q.ring.sub(&q.det()?, &q.ring.one())?)? {
        return Err(Error::NotSl3);
    }
    Mat2::new(
        q.ring.clone(),
        [
            q.entry(0, 0).clone(),
            q.entry(0, 1).clone(),
            q.entry(1, 0).clone(),
            q.entry(1, 1).clone(),
        ],
    )
}

/// Bordering GL2 -> SL3: M in the top-left block, det(M)^-1 at (3,3),
/// zeros elsewhere. theta(sigma(M)) = M.
pub fn sigma(m: &Mat2) -> Result<Mat3> {
    let det = m.det()?;
    if !m.ring.is_unit(&det)? {
        return Err(Error::DetNotUnit);
    }
    let inv = m.ring.inverse(&det)?;
    let z = m.ring.zero();
    Mat3::new(
        m.ring.clone(),
        [
            m.a().clone(),
            m.b().clone(),
            z.clone(),
            m.c().clone(),
            m.d().clone(),
            z.clone(),
            z.clone(),
            z,
            inv,
        ],
    )
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_text())
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_text())
    }
}
