//! Quotients of a finite ring by an ideal, realized as coset tables with
//! canonical minimal representatives. Unit groups of quotients are
//! computed by enumeration; ideals are handed in as explicit subgroup
//! sets (principal ideals or sums of principal ideals).

use std::collections::HashMap;

use crate::finite::FiniteRing;

pub struct Quotient {
    /// element id -> canonical representative id (minimum of the coset)
    rep: Vec<u32>,
    /// distinct representatives, ascending
    pub reps: Vec<u32>,
    /// unit representatives of the quotient, ascending
    pub unit_reps: Vec<u32>,
    one_rep: u32,
}

impl Quotient {
    pub fn new(ring: &FiniteRing, ideal: &[u32]) -> Quotient {
        let mut rep = vec![u32::MAX; ring.size];
        let mut reps = Vec::new();
        for x in 0..ring.size as u32 {
            if rep[x as usize] != u32::MAX {
                continue;
            }
            // x is minimal in its unvisited coset
            reps.push(x);
            for &i in ideal {
                let y = ring.add(x, i);
                if rep[y as usize] == u32::MAX {
                    rep[y as usize] = x;
                }
            }
            debug_assert_eq!(rep[x as usize], x);
        }
        let one_rep = rep[ring.one as usize];
        // unit in the quotient: some y with rep(x*y) = rep(1)
        let mut unit_reps = Vec::new();
        for &x in &reps {
            let is_unit =
                (0..ring.size as u32).any(|y| rep[ring.mul(x, y) as usize] == one_rep);
            if is_unit {
                unit_reps.push(x);
            }
        }
        Quotient { rep, reps, unit_reps, one_rep }
    }

    #[inline]
    pub fn reduce(&self, x: u32) -> u32 {
        self.rep[x as usize]
    }

    pub fn is_unit(&self, x: u32) -> bool {
        self.unit_reps.binary_search(&self.reduce(x)).is_ok()
    }

    pub fn one_rep(&self) -> u32 {
        self.one_rep
    }

    /// Representative of the inverse of a unit class.
    pub fn inverse(&self, ring: &FiniteRing, x: u32) -> Option<u32> {
        (0..ring.size as u32)
            .find(|&y| self.rep[ring.mul(x, y) as usize] == self.one_rep)
            .map(|y| self.reduce(y))
    }

    /// Product in the quotient, as a representative.
    pub fn mul(&self, ring: &FiniteRing, x: u32, y: u32) -> u32 {
        self.reduce(ring.mul(x, y))
    }
}

/// Sum of two ideal sets (as subgroup sets).
pub fn ideal_sum(ring: &FiniteRing, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = a
        .iter()
        .flat_map(|&x| b.iter().map(move |&y| (x, y)))
        .map(|(x, y)| ring.add(x, y))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Cache of quotients keyed by the ideal set.
#[derive(Default)]
pub struct QuotientCache {
    map: HashMap<Vec<u32>, std::rc::Rc<Quotient>>,
}

impl QuotientCache {
    pub fn get(&mut self, ring: &FiniteRing, ideal: Vec<u32>) -> std::rc::Rc<Quotient> {
        self.map
            .entry(ideal)
            .or_insert_with_key(|i| std::rc::Rc::new(Quotient::new(ring, i)))
            .clone()
    }

    pub fn principal(&mut self, ring: &FiniteRing, a: u32) -> std::rc::Rc<Quotient> {
        self.get(ring, ring.principal_ideal(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn z12_mod_4_looks_like_z4() {
        let ring = FiniteRing::new(&RingSpec::mod_n(12).unwrap()).unwrap();
        let q = Quotient::new(&ring, &ring.principal_ideal(4));
        assert_eq!(q.reps, vec![0, 1, 2, 3]);
        assert_eq!(q.unit_reps, vec![1, 3]);
        assert_eq!(q.reduce(7), 3);
        assert!(q.is_unit(5)); // 5 = 1 mod 4
    }

    #[test]
    fn quotient_by_unit_ideal_is_trivial() {
        let ring = FiniteRing::new(&RingSpec::mod_n(6).unwrap()).unwrap();
        let q = Quotient::new(&ring, &ring.principal_ideal(1));
        assert_eq!(q.reps, vec![0]);
        // in the zero ring, 0 = 1 is a unit
        assert_eq!(q.unit_reps, vec![0]);
    }

    #[test]
    fn ideal_sums() {
        let ring = FiniteRing::new(&RingSpec::mod_n(12).unwrap()).unwrap();
        let s = ideal_sum(&ring, &ring.principal_ideal(4), &ring.principal_ideal(6));
        // (4) + (6) = (2) in Z/12
        assert_eq!(s, ring.principal_ideal(2));
    }
}
