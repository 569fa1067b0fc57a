//! Deterministic box-scan order shared by every witness search.
//!
//! Coordinates are ranked 0, -1, 1, -2, 2, ... and tuples are visited by
//! increasing max-norm shell, then lexicographically in that coordinate
//! order. The first valid tuple under this order is the canonical witness.

/// Value of rank `i` in the canonical coordinate order 0, -1, 1, -2, 2, ...
pub fn value_of_rank(i: u64) -> i64 {
    if i == 0 {
        0
    } else if i % 2 == 1 {
        -(((i + 1) / 2) as i64)
    } else {
        (i / 2) as i64
    }
}

/// Rank of a value in the canonical coordinate order.
pub fn rank_of_value(v: i64) -> u64 {
    if v == 0 {
        0
    } else if v < 0 {
        2 * (-v as u64) - 1
    } else {
        2 * (v as u64)
    }
}

/// Scan key for comparing two tuples by the canonical order: shell first,
/// then coordinate ranks lexicographically.
pub fn scan_key(tuple: &[i64]) -> (u64, Vec<u64>) {
    let shell = tuple.iter().map(|&c| c.unsigned_abs()).max().unwrap_or(0);
    (shell, tuple.iter().map(|&c| rank_of_value(c)).collect())
}

/// Visits every `k`-tuple with max-norm <= `bound` in canonical order and
/// stops at the first tuple for which `f` returns `Some`.
pub fn scan_tuples<T>(k: usize, bound: i64, mut f: impl FnMut(&[i64]) -> Option<T>) -> Option<T> {
    assert!(k >= 1);
    let bound = bound.max(0) as u64;
    let mut tuple = vec![0i64; k];
    for shell in 0..=bound {
        let ranks_in_shell = 2 * shell + 1;
        // odometer over coordinate ranks, skipping tuples interior to the shell
        let mut idx = vec![0u64; k];
        loop {
            let mut on_shell = false;
            for (t, &i) in tuple.iter_mut().zip(idx.iter()) {
                *t = value_of_rank(i);
                if t.unsigned_abs() == shell {
                    on_shell = true;
                }
            }
            if (shell == 0 || on_shell) && tuple.iter().all(|c| c.unsigned_abs() <= shell) {
                if let Some(hit) = f(&tuple) {
                    return Some(hit);
                }
            }
            // advance odometer
            let mut pos = k;
            loop {
                if pos == 0 {
                    return_from_shell(&mut idx);
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < ranks_in_shell {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    None
}

fn return_from_shell(idx: &mut [u64]) {
    for i in idx.iter_mut() {
        *i = 0;
    }
}
