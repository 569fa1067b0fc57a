//! Dense tables for small finite rings (Z/n and products): elements are
//! u32 indices, operations are table lookups, and the gcd-flavored
//! predicates (units, unimodular tuples, principal-ideal membership) run
//! leafwise on the Z/n components.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::ring::{RElem, RingSpec};

/// Guard for table construction; every matrix-level operation that scans
/// matrices caps |R| well below this.
pub const MAX_FINITE_SIZE: usize = 512;

pub struct FiniteRing {
    pub spec: RingSpec,
    pub size: usize,
    pub elems: Vec<RElem>,
    index: HashMap<RElem, u32>,
    add_t: Vec<u32>,
    mul_t: Vec<u32>,
    neg_t: Vec<u32>,
    pub zero: u32,
    pub one: u32,
    units: Vec<bool>,
    jacobson: Vec<bool>,
    nilpotent: Vec<bool>,
    /// Moduli of the Z/n leaves, in left-to-right order.
    leaf_moduli: Vec<u64>,
    /// Per element, the residue at each leaf.
    leaf_vals: Vec<Vec<u64>>,
}

fn leaves_of(spec: &RingSpec, out: &mut Vec<u64>) -> Result<()> {
    match spec {
        RingSpec::ModN(n) => {
            out.push(u64::try_from(n).map_err(|_| Error::InputTooLarge("modulus".into()))?);
            Ok(())
        }
        RingSpec::Product(l, r) => {
            leaves_of(l, out)?;
            leaves_of(r, out)
        }
        _ => Err(Error::InfiniteRing),
    }
}

fn leaf_values(e: &RElem, out: &mut Vec<u64>) {
    match e {
        RElem::Mod(v) => out.push(u64::try_from(v).expect("canonical residue")),
        RElem::Pair(a, b) => {
            leaf_values(a, out);
            leaf_values(b, out);
        }
        _ => unreachable!("finite ring element"),
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl FiniteRing {
    pub fn new(spec: &RingSpec) -> Result<FiniteRing> {
        if !spec.is_finite() {
            return Err(Error::InfiniteRing);
        }
        let size_big = spec.size()?;
        let size = usize::try_from(&size_big)
            .ok()
            .filter(|&s| s <= MAX_FINITE_SIZE)
            .ok_or(Error::SizeGuard {
                size: u64::try_from(size_big).unwrap_or(u64::MAX),
                guard: MAX_FINITE_SIZE as u64,
            })?;
        let elems: Vec<RElem> = spec.enumerate_elements()?.collect();
        debug_assert_eq!(elems.len(), size);
        let index: HashMap<RElem, u32> =
            elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let mut add_t = vec![0u32; size * size];
        let mut mul_t = vec![0u32; size * size];
        let mut neg_t = vec![0u32; size];
        for (i, a) in elems.iter().enumerate() {
            neg_t[i] = index[&spec.neg(a)?];
            for (j, b) in elems.iter().enumerate() {
                add_t[i * size + j] = index[&spec.add(a, b)?];
                mul_t[i * size + j] = index[&spec.mul(a, b)?];
            }
        }
        let zero = index[&spec.zero()];
        let one = index[&spec.one()];
        let mut units = vec![false; size];
        for i in 0..size {
            units[i] = (0..size).any(|j| mul_t[i * size + j] == one);
        }
        // x in J(R) iff 1 - xy is a unit for every y
        let mut jacobson = vec![false; size];
        for i in 0..size {
            jacobson[i] = (0..size).all(|j| {
                let xy = mul_t[i * size + j] as usize;
                let m = add_t[one as usize * size + neg_t[xy] as usize] as usize;
                units[m]
            });
        }
        let mut nilpotent = vec![false; size];
        for i in 0..size {
            let mut p = i as u32;
            for _ in 0..size {
                p = mul_t[p as usize * size + i];
                if p == zero {
                    nilpotent[i] = true;
                    break;
                }
            }
            if i == zero as usize {
                nilpotent[i] = true;
            }
        }
        let mut leaf_moduli = Vec::new();
        leaves_of(spec, &mut leaf_moduli)?;
        let mut leaf_vals = Vec::with_capacity(size);
        for e in &elems {
            let mut v = Vec::with_capacity(leaf_moduli.len());
            leaf_values(e, &mut v);
            leaf_vals.push(v);
        }
        Ok(FiniteRing {
            spec: spec.clone(),
            size,
            elems,
            index,
            add_t,
            mul_t,
            neg_t,
            zero,
            one,
            units,
            jacobson,
            nilpotent,
            leaf_moduli,
            leaf_vals,
        })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add_t[a as usize * self.size + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul_t[a as usize * self.size + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg_t[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn is_unit(&self, a: u32) -> bool {
        self.units[a as usize]
    }
    #[inline]
    pub fn in_jacobson(&self, a: u32) -> bool {
        self.jacobson[a as usize]
    }

    pub fn id_of(&self, e: &RElem) -> Option<u32> {
        self.index.get(e).copied()
    }

    pub fn elem(&self, id: u32) -> &RElem {
        &self.elems[id as usize]
    }

    pub fn inverse(&self, a: u32) -> Option<u32> {
        (0..self.size as u32).find(|&j| self.mul(a, j) == self.one)
    }

    /// The ring is reduced iff 0 is its only nilpotent.
    pub fn is_reduced(&self) -> bool {
        self.nilpotent.iter().enumerate().all(|(i, &n)| !n || i == self.zero as usize)
    }

    /// Unimodular tuple: at every Z/n leaf the residues and the modulus
    /// have gcd 1 (the ideal of Z/n generated by values x_i is
    /// gcd(x_i, n) Z/n).
    pub fn is_unimodular(&self, tuple: &[u32]) -> bool {
        for (li, &m) in self.leaf_moduli.iter().enumerate() {
            let mut g = m;
            for &x in tuple {
                g = gcd_u64(g, self.leaf_vals[x as usize][li]);
                if g == 1 {
                    break;
                }
            }
            if g != 1 {
                return false;
            }
        }
        true
    }

    /// Membership of r in the principal ideal aR, leafwise.
    pub fn in_principal_ideal(&self, r: u32, a: u32) -> bool {
        for (li, &m) in self.leaf_moduli.iter().enumerate() {
            let g = gcd_u64(self.leaf_vals[a as usize][li], m);
            let rv = self.leaf_vals[r as usize][li];
            if g == 0 {
                if rv != 0 {
                    return false;
                }
            } else if !rv.is_multiple_of(g) {
                return false;
            }
        }
        true
    }

    /// The set aR as a sorted element list.
    pub fn principal_ideal(&self, a: u32) -> Vec<u32> {
        let mut v: Vec<u32> = (0..self.size as u32).map(|r| self.mul(a, r)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// All units, ascending.
    pub fn unit_ids(&self) -> Vec<u32> {
        (0..self.size as u32).filter(|&i| self.units[i as usize]).collect()
    }

    // 2x2 matrices as id quadruples, row-major

    #[inline]
    pub fn det2(&self, m: &[u32; 4]) -> u32 {
        self.sub(self.mul(m[0], m[3]), self.mul(m[1], m[2]))
    }

    pub fn mat_mul(&self, x: &[u32; 4], y: &[u32; 4]) -> [u32; 4] {
        [
            self.add(self.mul(x[0], y[0]), self.mul(x[1], y[2])),
            self.add(self.mul(x[0], y[1]), self.mul(x[1], y[3])),
            self.add(self.mul(x[2], y[0]), self.mul(x[3], y[2])),
            self.add(self.mul(x[2], y[1]), self.mul(x[3], y[3])),
        ]
    }

    pub fn mat_id(&self, m: &[u32; 4]) -> usize {
        let s = self.size;
        ((m[3] as usize * s + m[2] as usize) * s + m[1] as usize) * s + m[0] as usize
    }

    pub fn mat_of_id(&self, id: usize) -> [u32; 4] {
        let s = self.size;
        [
            (id % s) as u32,
            (id / s % s) as u32,
            (id / (s * s) % s) as u32,
            (id / (s * s * s)) as u32,
        ]
    }

    /// Inverse of a matrix with unit determinant.
    pub fn mat_inverse(&self, m: &[u32; 4]) -> Option<[u32; 4]> {
        let det = self.det2(m);
        let inv = self.inverse(det)?;
        Some([
            self.mul(inv, m[3]),
            self.mul(inv, self.neg(m[1])),
            self.mul(inv, self.neg(m[2])),
            self.mul(inv, m[0]),
        ])
    }

    pub fn mat_to_mat2(&self, m: &[u32; 4]) -> Mat2 {
        Mat2::new(
            self.spec.clone(),
            [
                self.elem(m[0]).clone(),
                self.elem(m[1]).clone(),
                self.elem(m[2]).clone(),
                self.elem(m[3]).clone(),
            ],
        )
        .expect("table elements")
    }

    pub fn mat2_to_ids(&self, m: &Mat2) -> Option<[u32; 4]> {
        let e = m.entries();
        Some([
            self.id_of(&e[0])?,
            self.id_of(&e[1])?,
            self.id_of(&e[2])?,
            self.id_of(&e[3])?,
        ])
    }
}

/// Size as BigInt (for guard reporting without overflow).
pub fn ring_size(spec: &RingSpec) -> Result<BigInt> {
    spec.size()
}
