//! Quadratic integer rings Z[w] with w^2 = D (D a nonsquare integer).
//!
//! Elements are pairs (a, b) meaning a + b*w. Ideal membership of 1 for a
//! finitely generated ideal is decided exactly through the Z-lattice spanned
//! by the generators and their w-multiples, via an integer HNF with
//! transform tracking, which also produces an explicit certifying
//! combination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// a + b*w times c + d*w in Z[w], w^2 = D.
pub fn quad_mul(d_disc: &BigInt, a: (&BigInt, &BigInt), b: (&BigInt, &BigInt)) -> (BigInt, BigInt) {
    (a.0 * b.0 + d_disc * (a.1 * b.1), a.0 * b.1 + a.1 * b.0)
}

pub fn quad_conj(a: (&BigInt, &BigInt)) -> (BigInt, BigInt) {
    (a.0.clone(), -a.1)
}

/// norm(a + b*w) = a^2 - D b^2.
pub fn quad_norm(d_disc: &BigInt, a: (&BigInt, &BigInt)) -> BigInt {
    a.0 * a.0 - d_disc * (a.1 * a.1)
}

/// Exact quotient b / a in Z[w], if it exists.
pub fn quad_div_exact(
    d_disc: &BigInt,
    a: (&BigInt, &BigInt),
    b: (&BigInt, &BigInt),
) -> Option<(BigInt, BigInt)> {
    let n = quad_norm(d_disc, a);
    if n.is_zero() {
        // a = 0 in an integral domain (D nonsquare): only 0 is divisible
        return if b.0.is_zero() && b.1.is_zero() {
            Some((BigInt::zero(), BigInt::zero()))
        } else {
            None
        };
    }
    let conj = quad_conj(a);
    let num = quad_mul(d_disc, b, (&conj.0, &conj.1));
    let (q0, r0) = num.0.div_rem(&n);
    let (q1, r1) = num.1.div_rem(&n);
    if r0.is_zero() && r1.is_zero() {
        Some((q0, q1))
    } else {
        None
    }
}

/// Row-style HNF of an m x 2 integer matrix with transform: returns (H, U)
/// with U unimodular, H = U * G, and H in echelon form (at most two nonzero
/// rows, pivots positive).
fn hnf_2col(g: Vec<[BigInt; 2]>) -> (Vec<[BigInt; 2]>, Vec<Vec<BigInt>>) {
    let m = g.len();
    let mut h = g;
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..2 {
        // clear column `col` below pivot_row by Euclid on rows
        loop {
            let mut k = None;
            for r in pivot_row..m {
                if !h[r][col].is_zero() {
                    k = match k {
                        None => Some(r),
                        Some(prev) => {
                            if h[r][col].abs() < h[prev][col].abs() {
                                Some(r)
                            } else {
                                Some(prev)
                            }
                        }
                    };
                }
            }
            let Some(k) = k else { break };
            h.swap(pivot_row, k);
            u.swap(pivot_row, k);
            let mut done = true;
            for r in (pivot_row + 1)..m {
                if h[r][col].is_zero() {
                    continue;
                }
                let q = h[r][col].div_rem(&h[pivot_row][col]).0;
                for c in 0..2 {
                    let sub = &q * &h[pivot_row][c];
                    h[r][c] -= sub;
                }
                for c in 0..m {
                    let sub = &q * &u[pivot_row][c];
                    u[r][c] -= sub;
                }
                if !h[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < m && !h[pivot_row][col].is_zero() {
            if h[pivot_row][col].is_negative() {
                for c in 0..2 {
                    h[pivot_row][c] = -h[pivot_row][c].clone();
                }
                for c in 0..m {
                    u[pivot_row][c] = -u[pivot_row][c].clone();
                }
            }
            pivot_row += 1;
        }
        if pivot_row >= m {
            break;
        }
    }
    (h, u)
}

/// Decides whether the ideal of Z[w] generated by `gens` is the whole ring;
/// on success returns coefficients x_i in Z[w] with sum x_i * gens_i = 1.
pub fn ideal_contains_one(
    d_disc: &BigInt,
    gens: &[(BigInt, BigInt)],
) -> Option<Vec<(BigInt, BigInt)>> {
    // lattice rows: g_i and w*g_i, i.e. (a, b) and (D b, a)
    let mut rows: Vec<[BigInt; 2]> = Vec::with_capacity(2 * gens.len());
    for (a, b) in gens {
        rows.push([a.clone(), b.clone()]);
        rows.push([d_disc * b, a.clone()]);
    }
    if rows.is_empty() {
        return None;
    }
    let m = rows.len();
    let (h, u) = hnf_2col(rows);
    // the ideal equals Z[w] iff the lattice is all of Z^2, i.e. the two
    // pivots are 1 (echelon with pivot columns 0 and 1)
    if h.len() < 2 || !h[0][0].is_one() || !h[1][1].is_one() || !h[1][0].is_zero() {
        return None;
    }
    // 1 = (1,0) - h01 * (0,1) in coordinates; pull back through U
    let mut coeff = vec![BigInt::zero(); m];
    for c in 0..m {
        coeff[c] = &u[0][c] - &h[0][1] * &u[1][c];
    }
    let mut combo = Vec::with_capacity(gens.len());
    for i in 0..gens.len() {
        combo.push((coeff[2 * i].clone(), coeff[2 * i + 1].clone()));
    }
    // the combination must multiply back to 1 exactly
    let mut acc = (BigInt::zero(), BigInt::zero());
    for (x, g) in combo.iter().zip(gens.iter()) {
        let p = quad_mul(d_disc, (&x.0, &x.1), (&g.0, &g.1));
        acc = (acc.0 + p.0, acc.1 + p.1);
    }
    debug_assert!(acc.0.is_one() && acc.1.is_zero());
    if acc.0.is_one() && acc.1.is_zero() {
        Some(combo)
    } else {
        None
    }
}

/// Solves A x = b over the integers for a small dense system, via column
/// HNF: A V = H with V unimodular, H lower-echelon; solve H y = b by
/// forward substitution, then x = V y. Returns None when no integer
/// solution exists.
pub fn solve_integer_system(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let m = a.len();
    if m == 0 {
        return Some(Vec::new());
    }
    let n = a[0].len();
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut v: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let col_swap = |h: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, c1: usize, c2: usize| {
        for r in h.iter_mut() {
            r.swap(c1, c2);
        }
        for r in v.iter_mut() {
            r.swap(c1, c2);
        }
    };
    let col_axpy = |h: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for r in h.iter_mut() {
            let sub = q * &r[src];
            r[dst] -= sub;
        }
        for r in v.iter_mut() {
            let sub = q * &r[src];
            r[dst] -= sub;
        }
    };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pc = 0usize;
    for row in 0..m {
        if pc >= n {
            break;
        }
        loop {
            let mut k = None;
            for c in pc..n {
                if !h[row][c].is_zero() {
                    k = match k {
                        None => Some(c),
                        Some(prev) => {
                            if h[row][c].abs() < h[row][prev].abs() {
                                Some(c)
                            } else {
                                Some(prev)
                            }
                        }
                    };
                }
            }
            let Some(k) = k else { break };
            if k != pc {
                col_swap(&mut h, &mut v, pc, k);
            }
            let mut done = true;
            for c in (pc + 1)..n {
                if h[row][c].is_zero() {
                    continue;
                }
                let q = h[row][c].div_rem(&h[row][pc]).0;
                col_axpy(&mut h, &mut v, c, pc, &q);
                if !h[row][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !h[row][pc].is_zero() {
            pivots.push((row, pc));
            pc += 1;
        }
    }
    // forward substitution
    let mut y = vec![BigInt::zero(); n];
    let mut resid: Vec<BigInt> = b.to_vec();
    for &(r, c) in pivots.iter() {
        let (q, rem) = resid[r].div_rem(&h[r][c]);
        if !rem.is_zero() {
            return None;
        }
        y[c] = q.clone();
        for rr in 0..m {
            let sub = &q * &h[rr][c];
            resid[rr] -= sub;
        }
    }
    if resid.iter().any(|r| !r.is_zero()) {
        return None;
    }
    // x = V y
    let mut x = vec![BigInt::zero(); n];
    for (i, xi) in x.iter_mut().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            *xi += &v[i][j] * yj;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn norm_and_mul() {
        let d = bi(-5);
        // (1+w)(1-w) = 1 - w^2 = 6
        let p = quad_mul(&d, (&bi(1), &bi(1)), (&bi(1), &bi(-1)));
        assert_eq!(p, (bi(6), bi(0)));
        assert_eq!(quad_norm(&d, (&bi(1), &bi(1))), bi(6));
        assert_eq!(quad_norm(&d, (&bi(0), &bi(1))), bi(5));
    }

    #[test]
    fn exact_quotient() {
        let d = bi(-5);
        // (1+w) | 6 with quotient 1-w
        assert_eq!(quad_div_exact(&d, (&bi(1), &bi(1)), (&bi(6), &bi(0))), Some((bi(1), bi(-1))));
        // 2 does not divide 1+w
        assert_eq!(quad_div_exact(&d, (&bi(2), &bi(0)), (&bi(1), &bi(1))), None);
    }

    #[test]
    fn unit_ideal_detection() {
        let d = bi(-5);
        // EX11 entries for k=1: (3, 1-w, 1+w, 2) generate the unit ideal
        let gens = vec![(bi(3), bi(0)), (bi(1), bi(-1)), (bi(1), bi(1)), (bi(2), bi(0))];
        let combo = ideal_contains_one(&d, &gens).expect("ideal is the ring");
        let mut acc = (bi(0), bi(0));
        for (x, g) in combo.iter().zip(gens.iter()) {
            let p = quad_mul(&d, (&x.0, &x.1), (&g.0, &g.1));
            acc = (acc.0 + p.0, acc.1 + p.1);
        }
        assert_eq!(acc, (bi(1), bi(0)));
        // the ideal (2, 1+w) in Z[i sqrt 5] is proper (norm considerations)
        let gens = vec![(bi(2), bi(0)), (bi(1), bi(1))];
        assert!(ideal_contains_one(&d, &gens).is_none());
    }

    #[test]
    fn integer_system_solver() {
        // 3x + 5y = 1
        let a = vec![vec![bi(3), bi(5)]];
        let x = solve_integer_system(&a, &[bi(1)]).unwrap();
        assert_eq!(bi(3) * &x[0] + bi(5) * &x[1], bi(1));
        // 2x + 4y = 1 unsolvable
        let a = vec![vec![bi(2), bi(4)]];
        assert!(solve_integer_system(&a, &[bi(1)]).is_none());
        // square system
        let a = vec![vec![bi(1), bi(2)], vec![bi(0), bi(3)]];
        let x = solve_integer_system(&a, &[bi(5), bi(6)]).unwrap();
        assert_eq!(&x[0] + bi(2) * &x[1], bi(5));
        assert_eq!(bi(3) * &x[1], bi(6));
    }
}
