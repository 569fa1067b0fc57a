//! t-adic determinant lifting with quadratic modulus growth: from
//! det(B) in (t^(2^(n-1))), a first-order correction solved from the signed
//! expansion det(B + tau X) = det(B) + tau(aw + dx - bz - cy) + tau^2(...)
//! pushes the determinant into (t^(2^n)).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::ring::{egcd, RElem, RingSpec};

/// B_0 = A, B_n congruent to B_(n-1) mod t^(2^(n-1)), det(B_n) in
/// (t^(2^n)).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftSequence {
    pub t: BigInt,
    pub steps: Vec<Mat2>,
}

impl LiftSequence {
    /// Rechecks both congruence and modulus-doubling invariants exactly.
    pub fn validate(&self) -> Result<()> {
        let mut modulus = self.t.clone();
        for n in 1..self.steps.len() {
            let prev = ints(&self.steps[n - 1]);
            let cur = ints(&self.steps[n]);
            for i in 0..4 {
                if !(&cur[i] - &prev[i]).is_multiple_of(&modulus) {
                    return Err(Error::Precondition(format!(
                        "step {n} not congruent to step {} mod {modulus}",
                        n - 1
                    )));
                }
            }
            let sq = &modulus * &modulus;
            let det = &cur[0] * &cur[3] - &cur[1] * &cur[2];
            if !det.is_multiple_of(&sq) {
                return Err(Error::Precondition(format!(
                    "det at step {n} is not divisible by {sq}"
                )));
            }
            modulus = sq;
        }
        Ok(())
    }
}

fn ints(a: &Mat2) -> [BigInt; 4] {
    a.entries().clone().map(|e| match e {
        RElem::Int(v) => v,
        _ => unreachable!(),
    })
}

/// Representative of v mod m with minimal absolute value (ties kept
/// positive). Signed lifts keep the lifted matrices small.
fn symmetric_rem(v: &BigInt, m: &BigInt) -> BigInt {
    let r = v.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// k lifting steps for a unimodular integer matrix with t | det(A), t >= 2.
pub fn lift_det_zero(a: &Mat2, t: impl Into<BigInt>, k: u32) -> Result<LiftSequence> {
    if a.ring != RingSpec::Integers {
        return Err(Error::UnsupportedRing("lift_det_zero is over Z".into()));
    }
    if !a.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    let t: BigInt = t.into();
    if t < BigInt::from(2) {
        return Err(Error::Precondition(format!("t must be >= 2, got {t}")));
    }
    let det0 = {
        let e = ints(a);
        &e[0] * &e[3] - &e[1] * &e[2]
    };
    if !det0.is_multiple_of(&t) {
        return Err(Error::Precondition(format!("t = {t} does not divide det(A) = {det0}")));
    }
    let mut steps = vec![a.clone()];
    let mut tau = t.clone();
    for _ in 0..k {
        let cur = ints(steps.last().unwrap());
        let det = &cur[0] * &cur[3] - &cur[1] * &cur[2];
        debug_assert!(det.is_multiple_of(&tau));
        let s = &det / &tau;
        // solve a*w + d*x - b*z - c*y = -s (mod tau); the coefficient tuple
        // is unimodular mod t, hence mod tau
        let coeffs = [cur[0].clone(), cur[3].clone(), -&cur[1], -&cur[2], tau.clone()];
        let combo = int_combination(&coeffs)
            .ok_or_else(|| Error::Precondition("entries not unimodular mod t".into()))?;
        // (w, x, z, y) scaled by -s, reduced symmetrically mod tau
        let scale = |c: &BigInt| symmetric_rem(&(-&s * c), &tau);
        let (w, x, z, y) = (scale(&combo[0]), scale(&combo[1]), scale(&combo[2]), scale(&combo[3]));
        let next = [
            &cur[0] + &tau * &x,
            &cur[1] + &tau * &y,
            &cur[2] + &tau * &z,
            &cur[3] + &tau * &w,
        ];
        steps.push(Mat2::new(a.ring.clone(), next.map(RElem::Int))?);
        tau = &tau * &tau;
    }
    let seq = LiftSequence { t, steps };
    seq.validate()?;
    Ok(seq)
}

/// Coefficients c with sum c_i v_i = gcd(v) = 1, or None. Earlier
/// coordinates are preferred: once the running gcd reaches 1, the
/// remaining coefficients are 0.
fn int_combination(vals: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut g = vals[0].abs();
    let mut coeffs = vec![if vals[0].is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    }];
    for v in &vals[1..] {
        if g.is_one() {
            coeffs.push(BigInt::zero());
            continue;
        }
        let (ng, s, t) = egcd(&g, v);
        for c in coeffs.iter_mut() {
            *c *= &s;
        }
        coeffs.push(t);
        g = ng;
    }
    if g.is_one() {
        Some(coeffs)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    #[test]
    fn one_step_reaches_exact_zero() {
        let a = Mat2::from_ints(&z(), [1, 1, 1, 6]);
        let seq = lift_det_zero(&a, 5, 1).unwrap();
        // correction w = -1 on the (2,2) entry
        assert_eq!(seq.steps[1], Mat2::from_ints(&z(), [1, 1, 1, 1]));
        assert_eq!(seq.steps[1].det().unwrap(), RElem::Int(0.into()));
    }

    #[test]
    fn zero_steps_is_just_a() {
        let a = Mat2::from_ints(&z(), [1, 0, 0, 5]);
        let seq = lift_det_zero(&a, 5, 0).unwrap();
        assert_eq!(seq.steps, vec![a]);
    }

    #[test]
    fn moduli_double_through_six_steps() {
        let a = Mat2::from_ints(&z(), [3, 1, 2, 4]); // det 10
        let seq = lift_det_zero(&a, 2, 6).unwrap();
        seq.validate().unwrap();
        assert_eq!(seq.steps.len(), 7);
        let seq = lift_det_zero(&a, 5, 6).unwrap();
        seq.validate().unwrap();
    }

    #[test]
    fn preconditions() {
        let a = Mat2::from_ints(&z(), [1, 1, 1, 6]);
        assert!(lift_det_zero(&a, 1, 1).is_err());
        assert!(lift_det_zero(&a, 3, 1).is_err()); // 3 does not divide 5
        let a = Mat2::from_ints(&z(), [2, 0, 0, 2]);
        assert!(matches!(lift_det_zero(&a, 2, 1), Err(Error::NotUnimodular)));
    }
}
