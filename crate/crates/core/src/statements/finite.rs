//! Exhaustive deciders for the ten statements over a small finite ring.
//!
//! Statement 1 (equivalence to Diag(1, det)) runs on a precomputed
//! partition of M2(R) into GL2 x GL2 double orbits, generated by
//! elementary matrices and unit scalings; parent edges reconstruct
//! explicit transforms. Everything else is literal quantifier enumeration
//! in ascending element order.

use crate::error::{Error, Result};
use crate::finite::FiniteRing;
use crate::ring::RingSpec;

/// Cap on |R| for matrix-level exhaustion (|R|^4 table rows).
pub const MAX_MATRIX_RING: usize = 32;

pub struct FiniteCtx {
    pub ring: FiniteRing,
    mat_count: usize,
    orbit_root: Vec<u32>,
    /// Parent edge per matrix id: (parent id, generator index, side);
    /// u32::MAX parent marks an orbit root.
    parent: Vec<(u32, u16, u8)>,
    gens: Vec<[u32; 4]>,
    nonfull: Vec<bool>,
    nonfull_wit: Vec<[u32; 4]>,
}

const LEFT: u8 = 0;
const RIGHT: u8 = 1;

impl FiniteCtx {
    pub fn new(spec: &RingSpec) -> Result<FiniteCtx> {
        let ring = FiniteRing::new(spec)?;
        if ring.size > MAX_MATRIX_RING {
            return Err(Error::SizeGuard {
                size: ring.size as u64,
                guard: MAX_MATRIX_RING as u64,
            });
        }
        let s = ring.size;
        let mat_count = s * s * s * s;
        let (zero, one) = (ring.zero, ring.one);

        // GL2 generators: both elementary shears, their inverses, and unit
        // scalings of the first row
        let neg_one = ring.neg(one);
        let mut gens: Vec<[u32; 4]> = vec![
            [one, one, zero, one],
            [one, neg_one, zero, one],
            [one, zero, one, one],
            [one, zero, neg_one, one],
        ];
        for u in ring.unit_ids() {
            if u != one {
                gens.push([u, zero, zero, one]);
            }
        }
        gens.dedup();

        // double-orbit partition by BFS over all matrices
        let mut orbit_root = vec![u32::MAX; mat_count];
        let mut parent = vec![(u32::MAX, 0u16, 0u8); mat_count];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..mat_count {
            if orbit_root[start] != u32::MAX {
                continue;
            }
            orbit_root[start] = start as u32;
            queue.push_back(start as u32);
            while let Some(cur) = queue.pop_front() {
                let m = ring.mat_of_id(cur as usize);
                for (gi, g) in gens.iter().enumerate() {
                    for (side, nb) in
                        [(LEFT, ring.mat_mul(g, &m)), (RIGHT, ring.mat_mul(&m, g))]
                    {
                        let id = ring.mat_id(&nb);
                        if orbit_root[id] == u32::MAX {
                            orbit_root[id] = start as u32;
                            parent[id] = (cur, gi as u16, side);
                            queue.push_back(id as u32);
                        }
                    }
                }
            }
        }

        // non-full matrices with a first factorization witness
        let mut nonfull = vec![false; mat_count];
        let mut nonfull_wit = vec![[0u32; 4]; mat_count];
        for l in 0..s as u32 {
            for m in 0..s as u32 {
                for n in 0..s as u32 {
                    for q in 0..s as u32 {
                        let prod = [
                            ring.mul(l, n),
                            ring.mul(l, q),
                            ring.mul(m, n),
                            ring.mul(m, q),
                        ];
                        let id = ring.mat_id(&prod);
                        if !nonfull[id] {
                            nonfull[id] = true;
                            nonfull_wit[id] = [l, m, n, q];
                        }
                    }
                }
            }
        }

        Ok(FiniteCtx { ring, mat_count, orbit_root, parent, gens, nonfull, nonfull_wit })
    }

    pub fn mat_count(&self) -> usize {
        self.mat_count
    }

    /// Transforms (M, N) with mat = M * root * N, read off the BFS parent
    /// chain.
    fn transforms_to_root(&self, id: usize) -> ([u32; 4], [u32; 4]) {
        let r = &self.ring;
        let ident = [r.one, r.zero, r.zero, r.one];
        let mut edges = Vec::new();
        let mut cur = id as u32;
        while self.parent[cur as usize].0 != u32::MAX {
            let (p, gi, side) = self.parent[cur as usize];
            edges.push((gi, side));
            cur = p;
        }
        let mut m_acc = ident;
        let mut n_acc = ident;
        for &(gi, side) in edges.iter().rev() {
            let g = &self.gens[gi as usize];
            if side == LEFT {
                m_acc = r.mat_mul(g, &m_acc);
            } else {
                n_acc = r.mat_mul(&n_acc, g);
            }
        }
        (m_acc, n_acc)
    }

    /// Statement 1: equivalent to Diag(1, det A); on success the explicit
    /// transforms with M A N = Diag(1, det A).
    pub fn s1(&self, a: &[u32; 4]) -> Option<([u32; 4], [u32; 4])> {
        let r = &self.ring;
        let delta = r.det2(a);
        let d = [r.one, r.zero, r.zero, delta];
        let aid = r.mat_id(a);
        let did = r.mat_id(&d);
        if self.orbit_root[aid] != self.orbit_root[did] {
            return None;
        }
        let (ma, na) = self.transforms_to_root(aid);
        let (md, nd) = self.transforms_to_root(did);
        // A = Ma root Na and D = Md root Nd give (Md Ma^-1) A (Na^-1 Nd) = D
        let ma_inv = r.mat_inverse(&ma).expect("generator product is invertible");
        let na_inv = r.mat_inverse(&na).expect("generator product is invertible");
        let m = r.mat_mul(&md, &ma_inv);
        let n = r.mat_mul(&na_inv, &nd);
        debug_assert_eq!(r.mat_mul(&r.mat_mul(&m, a), &n), d);
        Some((m, n))
    }

    /// Statement 2: first (e, f, s, t) with the border expansion equal
    /// to 1.
    pub fn s2(&self, a: &[u32; 4]) -> Option<[u32; 4]> {
        let r = &self.ring;
        let s = r.size as u32;
        for e in 0..s {
            for f in 0..s {
                let p = r.add(r.mul(a[0], e), r.mul(a[2], f));
                let q = r.add(r.mul(a[1], e), r.mul(a[3], f));
                for ss in 0..s {
                    for tt in 0..s {
                        if r.add(r.mul(p, ss), r.mul(q, tt)) == r.one {
                            return Some([e, f, ss, tt]);
                        }
                    }
                }
            }
        }
        None
    }

    /// Statement 3: first (e, f) with (ae+cf, be+df) unimodular, plus
    /// cofactors.
    pub fn s3(&self, a: &[u32; 4]) -> Option<[u32; 4]> {
        let r = &self.ring;
        let s = r.size as u32;
        for e in 0..s {
            for f in 0..s {
                let p = r.add(r.mul(a[0], e), r.mul(a[2], f));
                let q = r.add(r.mul(a[1], e), r.mul(a[3], f));
                if r.is_unimodular(&[p, q]) {
                    for ss in 0..s {
                        for tt in 0..s {
                            if r.add(r.mul(p, ss), r.mul(q, tt)) == r.one {
                                return Some([e, f, ss, tt]);
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Statement 4: relation ax+by+cz+dw = 1 with [[x,y],[z,w]] non-full;
    /// returns the tuple and the factorization.
    pub fn s4(&self, a: &[u32; 4]) -> Option<([u32; 4], [u32; 4])> {
        let r = &self.ring;
        let s = r.size as u32;
        for x in 0..s {
            for y in 0..s {
                for z in 0..s {
                    for w in 0..s {
                        let lin = self.lin(a, &[x, y, z, w]);
                        if lin != r.one {
                            continue;
                        }
                        let id = r.mat_id(&[x, y, z, w]);
                        if self.nonfull[id] {
                            return Some(([x, y, z, w], self.nonfull_wit[id]));
                        }
                    }
                }
            }
        }
        None
    }

    fn lin(&self, a: &[u32; 4], v: &[u32; 4]) -> u32 {
        let r = &self.ring;
        let mut acc = r.mul(a[0], v[0]);
        acc = r.add(acc, r.mul(a[1], v[1]));
        acc = r.add(acc, r.mul(a[2], v[2]));
        r.add(acc, r.mul(a[3], v[3]))
    }

    /// Statement 5: ax+by+cz+dw = 1 with xw = yz.
    pub fn s5(&self, a: &[u32; 4]) -> Option<[u32; 4]> {
        let r = &self.ring;
        let s = r.size as u32;
        for x in 0..s {
            for y in 0..s {
                for z in 0..s {
                    for w in 0..s {
                        if r.mul(x, w) == r.mul(y, z)
                            && self.lin(a, &[x, y, z, w]) == r.one
                        {
                            return Some([x, y, z, w]);
                        }
                    }
                }
            }
        }
        None
    }

    /// Statement 6: unimodular B with det(B) = 0, delta B + A unimodular
    /// of determinant 0.
    pub fn s6(&self, a: &[u32; 4]) -> Option<[u32; 4]> {
        self.s6_s8(a, true)
    }

    /// Statement 8: like 6 without the unimodularity requirements.
    pub fn s8(&self, a: &[u32; 4]) -> Option<[u32; 4]> {
        self.s6_s8(a, false)
    }

    fn s6_s8(&self, a: &[u32; 4], unimod: bool) -> Option<[u32; 4]> {
        let r = &self.ring;
        let s = r.size as u32;
        let delta = r.det2(a);
        for b0 in 0..s {
            for b1 in 0..s {
                for b2 in 0..s {
                    for b3 in 0..s {
                        let b = [b0, b1, b2, b3];
                        if r.det2(&b) != r.zero {
                            continue;
                        }
                        if unimod && !r.is_unimodular(&b) {
                            continue;
                        }
                        let c = [
                            r.add(a[0], r.mul(delta, b[0])),
                            r.add(a[1], r.mul(delta, b[1])),
                            r.add(a[2], r.mul(delta, b[2])),
                            r.add(a[3], r.mul(delta, b[3])),
                        ];
                        if r.det2(&c) != r.zero {
                            continue;
                        }
                        if unimod && !r.is_unimodular(&c) {
                            continue;
                        }
                        return Some(b);
                    }
                }
            }
        }
        None
    }

    /// Statement 7: unimodular C congruent to A mod R delta with det 0.
    pub fn s7(&self, a: &[u32; 4]) -> Option<[u32; 4]> {
        self.s7_s10(a, true)
    }

    /// Statement 10: like 7 without unimodularity.
    pub fn s10(&self, a: &[u32; 4]) -> Option<[u32; 4]> {
        self.s7_s10(a, false)
    }

    fn s7_s10(&self, a: &[u32; 4], unimod: bool) -> Option<[u32; 4]> {
        let r = &self.ring;
        let delta = r.det2(a);
        let ideal = r.principal_ideal(delta);
        for &t0 in &ideal {
            for &t1 in &ideal {
                for &t2 in &ideal {
                    for &t3 in &ideal {
                        let c = [
                            r.add(a[0], t0),
                            r.add(a[1], t1),
                            r.add(a[2], t2),
                            r.add(a[3], t3),
                        ];
                        if r.det2(&c) != r.zero {
                            continue;
                        }
                        if unimod && !r.is_unimodular(&c) {
                            continue;
                        }
                        return Some(c);
                    }
                }
            }
        }
        None
    }

    /// Statement 9: ax+by+cz+dw - delta(xw - yz) = 1.
    pub fn s9(&self, a: &[u32; 4]) -> Option<[u32; 4]> {
        let r = &self.ring;
        let s = r.size as u32;
        let delta = r.det2(a);
        for x in 0..s {
            for y in 0..s {
                for z in 0..s {
                    for w in 0..s {
                        let lin = self.lin(a, &[x, y, z, w]);
                        let quad = r.mul(delta, r.sub(r.mul(x, w), r.mul(y, z)));
                        if r.sub(lin, quad) == r.one {
                            return Some([x, y, z, w]);
                        }
                    }
                }
            }
        }
        None
    }

    /// All ten statuses as booleans, in statement order.
    pub fn statuses(&self, a: &[u32; 4]) -> [bool; 10] {
        [
            self.s1(a).is_some(),
            self.s2(a).is_some(),
            self.s3(a).is_some(),
            self.s4(a).is_some(),
            self.s5(a).is_some(),
            self.s6(a).is_some(),
            self.s7(a).is_some(),
            self.s8(a).is_some(),
            self.s9(a).is_some(),
            self.s10(a).is_some(),
        ]
    }

    /// Unimodular matrices in ascending id order.
    pub fn unimodular_matrix_ids(&self) -> Vec<usize> {
        (0..self.mat_count)
            .filter(|&id| self.ring.is_unimodular(&self.ring.mat_of_id(id)))
            .collect()
    }
}
