//! Structured simple-extension construction over Z from the column/row gcd
//! splitting a = g a', c = g c', b = h b', d = h d': with l = b'c' - a'd'
//! and m = b'e' + d'f', the pair (ae+cf, be+df) equals (gw, h(wm+vl)) for
//! (e, f) = (we' + c'v, wf' - a'v), and a four-case table picks (w, v).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ExtWitness;
use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::ring::{egcd, RElem, RingSpec};
use crate::scan;

/// Which rule produced (w, v).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Pr5Branch {
    GL,
    GM,
    HM,
    HL,
    Search,
}

#[derive(Clone, Debug)]
pub struct Pr5Data {
    pub g: BigInt,
    pub h: BigInt,
    pub l: BigInt,
    pub m: BigInt,
    pub w: BigInt,
    pub v: BigInt,
    pub branch: Pr5Branch,
    pub witness: ExtWitness,
}

fn coprime(a: &BigInt, b: &BigInt) -> bool {
    egcd(a, b).0.is_one()
}

/// PR5 construction; requires A unimodular over Z with gcd(a, c) nonzero.
pub fn simple_extension_pr5(a_mat: &Mat2, budget: i64) -> Result<Pr5Data> {
    if a_mat.ring != RingSpec::Integers {
        return Err(Error::UnsupportedRing("PR5 construction is over Z".into()));
    }
    if !a_mat.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    let [a, b, c, d] = a_mat.entries().clone().map(|e| match e {
        RElem::Int(v) => v,
        _ => unreachable!(),
    });
    let (g, _, _) = egcd(&a, &c);
    if g.is_zero() {
        return Err(Error::Precondition("column gcd g = gcd(a, c) must be nonzero".into()));
    }
    let a1 = &a / &g;
    let c1 = &c / &g;
    let (h, _, _) = egcd(&b, &d);
    let (b1, d1) = if h.is_zero() {
        (BigInt::one(), BigInt::one())
    } else {
        (&b / &h, &d / &h)
    };
    let (g1, e1, f1) = egcd(&a1, &c1);
    debug_assert!(g1.is_one());
    let l = &b1 * &c1 - &a1 * &d1;
    let m = &b1 * &e1 + &d1 * &f1;

    let (w, v, branch) = if coprime(&g, &l) {
        (g.clone(), BigInt::one(), Pr5Branch::GL)
    } else if coprime(&g, &m) {
        (BigInt::one(), BigInt::zero(), Pr5Branch::GM)
    } else if coprime(&h, &m) {
        // (hl, m) is coprime since (l, m) is; solve w m + v' h l = 1
        let hl = &h * &l;
        let (one, w, v1) = egcd(&m, &hl);
        debug_assert!(one.is_one());
        (w, &h * &v1, Pr5Branch::HM)
    } else if coprime(&h, &l) {
        let (one, p, q) = egcd(&l, &m);
        debug_assert!(one.is_one());
        (&h * &q + &l, &h * &p - &m, Pr5Branch::HL)
    } else {
        // bounded scan for (w, v) with (g, wm+vl) and (w, hvl) coprime
        let hit = scan::scan_tuples(2, budget, |t| {
            let (w, v) = (BigInt::from(t[0]), BigInt::from(t[1]));
            let wmvl = &w * &m + &v * &l;
            if coprime(&g, &wmvl) && coprime(&w, &(&h * &v * &l)) {
                Some((w, v))
            } else {
                None
            }
        });
        match hit {
            Some((w, v)) => (w, v, Pr5Branch::Search),
            None => return Err(Error::BudgetExhausted(budget.max(0) as u64)),
        }
    };

    let e = &w * &e1 + &c1 * &v;
    let f = &w * &f1 - &a1 * &v;
    let p_val = &g * &w;
    let q_val = &h * (&w * &m + &v * &l);
    let (one, s, t) = egcd(&p_val, &q_val);
    if !one.is_one() {
        return Err(Error::Precondition("PR5 pair is not unimodular".into()));
    }
    let ring = &a_mat.ring;
    let witness = ExtWitness::from_parts(
        a_mat,
        RElem::Int(e),
        RElem::Int(f),
        RElem::Int(s),
        RElem::Int(t),
        ring.zero(),
    )?;
    Ok(Pr5Data { g, h, l, m, w, v, branch, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    #[test]
    fn gm_branch_for_sec5_matrix() {
        let a = Mat2::from_ints(&z(), [15, 6, 10, 14]);
        let data = simple_extension_pr5(&a, 25).unwrap();
        assert_eq!(data.g, BigInt::from(5));
        assert_eq!(data.h, BigInt::from(2));
        data.witness.validate(&a).unwrap();
    }

    #[test]
    fn gl_branch_for_coprime_diagonal() {
        let a = Mat2::from_ints(&z(), [7, 0, 0, 11]);
        let data = simple_extension_pr5(&a, 25).unwrap();
        assert_eq!(data.branch, Pr5Branch::GL);
        assert_eq!((data.w.clone(), data.v.clone()), (BigInt::from(7), BigInt::from(1)));
        data.witness.validate(&a).unwrap();
    }

    #[test]
    fn h_zero_case() {
        // A = [[a, 0],[c, 0]] with (a, c) coprime: h = 0 forces g = 1
        let a = Mat2::from_ints(&z(), [3, 0, 5, 0]);
        let data = simple_extension_pr5(&a, 25).unwrap();
        assert_eq!(data.g, BigInt::one());
        assert_eq!(data.h, BigInt::zero());
        data.witness.validate(&a).unwrap();
    }

    #[test]
    fn zero_column_gcd_is_a_precondition_failure() {
        let a = Mat2::from_ints(&z(), [0, 3, 0, 2]);
        assert!(matches!(simple_extension_pr5(&a, 25), Err(Error::Precondition(_))));
    }
}
