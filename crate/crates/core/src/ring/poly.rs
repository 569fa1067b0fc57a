//! Sparse trivariate polynomials over the integers.
//!
//! Z[x,y,z] is representation-only here: construction, exact arithmetic,
//! substitution. No ideal machinery beyond the bounded unimodularity
//! certificates in `ring::mod`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exponent triple (x, y, z).
pub type Expo = (u32, u32, u32);

/// A polynomial in x, y, z with BigInt coefficients. The map never stores
/// explicit zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly3 {
    terms: BTreeMap<Expo, BigInt>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Poly3 { terms: BTreeMap::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Poly3::zero();
        if !c.is_zero() {
            p.terms.insert((0, 0, 0), c);
        }
        p
    }

    pub fn monomial(e: Expo, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Poly3::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn var_x() -> Self {
        Poly3::monomial((1, 0, 0), 1)
    }
    pub fn var_y() -> Self {
        Poly3::monomial((0, 1, 0), 1)
    }
    pub fn var_z() -> Self {
        Poly3::monomial((0, 0, 1), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j, k)| i + j + k).max().unwrap_or(0)
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&(0, 0, 0)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Some(c) when the polynomial is the constant c.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0, 0)).cloned(),
            _ => None,
        }
    }

    fn insert_term(&mut self, e: Expo, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (&e, c) in rhs.terms.iter() {
            out.insert_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly3 {
        Poly3 { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }

    pub fn sub(&self, rhs: &Poly3) -> Poly3 {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (&(i1, j1, k1), c1) in self.terms.iter() {
            for (&(i2, j2, k2), c2) in rhs.terms.iter() {
                out.insert_term((i1 + i2, j1 + j2, k1 + k2), c1 * c2);
            }
        }
        out
    }

    /// Exact division: returns q with rhs*q == self, or None.
    ///
    /// Leading-term peeling under the lex order; correct over an integral
    /// domain because the order is multiplicative.
    pub fn div_exact(&self, rhs: &Poly3) -> Option<Poly3> {
        if rhs.is_zero() {
            return if self.is_zero() { Some(Poly3::zero()) } else { None };
        }
        let (&le, lc) = rhs.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = Poly3::zero();
        while !rem.is_zero() {
            let (&re, rc) = rem.terms.iter().next_back().unwrap();
            if re.0 < le.0 || re.1 < le.1 || re.2 < le.2 {
                return None;
            }
            let (q, r) = num_integer::Integer::div_rem(rc, lc);
            if !r.is_zero() {
                return None;
            }
            let me = (re.0 - le.0, re.1 - le.1, re.2 - le.2);
            let t = Poly3::monomial(me, q);
            rem = rem.sub(&rhs.mul(&t));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Substitutes values for x, y, z using a caller-supplied ring
    /// multiplication/addition through closures acting on an accumulator.
    /// Used by evaluate_hom; kept generic so the target ring decides the
    /// arithmetic.
    pub fn eval_with<T, E>(
        &self,
        mut pow: impl FnMut(usize, u32) -> Result<T, E>,
        mut mul: impl FnMut(T, T) -> Result<T, E>,
        mut add: impl FnMut(T, T) -> Result<T, E>,
        mut scale: impl FnMut(&BigInt, T) -> Result<T, E>,
        zero: T,
    ) -> Result<T, E>
    where
        T: Clone,
    {
        let mut acc = zero;
        for (&(i, j, k), c) in self.terms.iter() {
            let xi = pow(0, i)?;
            let yj = pow(1, j)?;
            let zk = pow(2, k)?;
            let xy = mul(xi, yj)?;
            let m = mul(xy, zk)?;
            acc = add(acc, scale(c, m)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest term first, matching the usual hand-written order
        let mut first = true;
        for (&(i, j, k), c) in self.terms.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let is_const = i == 0 && j == 0 && k == 0;
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut sep = false;
            for (var, e) in [("x", i), ("y", j), ("z", k)] {
                if e == 0 {
                    continue;
                }
                if sep {
                    write!(f, "*")?;
                }
                sep = true;
                write!(f, "{var}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
            let _ = sep;
        }
        Ok(())
    }
}
