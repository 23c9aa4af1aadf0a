//! Smith normal form of small integer matrices with overflow-checked `i128`.

use alloc::vec::Vec;

use crate::error::{Error, Result};

fn checked_sub_mul(x: i128, q: i128, y: i128) -> Result<i128> {
    q.checked_mul(y).and_then(|qy| x.checked_sub(qy)).ok_or(Error::Overflow)
}

/// Nonzero elementary divisors `d_1 | d_2 | ... | d_r`, all positive.
#[allow(clippy::needless_range_loop)] // row and column operations read best as index loops
pub fn elementary_divisors(rows: &[Vec<i64>]) -> Result<Vec<u128>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::InvalidParameter("matrix rows have different lengths".into()));
    }
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut divisors = Vec::new();

    for t in 0..nrows.min(ncols) {
        let Some((pi, pj)) = min_abs_nonzero(&a, t..nrows, t..ncols) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);

        loop {
            let pivot = a[t][t];
            for i in t + 1..nrows {
                let q = a[i][t] / pivot;
                if q != 0 {
                    for j in t..ncols {
                        a[i][j] = checked_sub_mul(a[i][j], q, a[t][j])?;
                    }
                }
            }
            for j in t + 1..ncols {
                let q = a[t][j] / pivot;
                if q != 0 {
                    for i in t..nrows {
                        a[i][j] = checked_sub_mul(a[i][j], q, a[i][t])?;
                    }
                }
            }

            let col_rest = (t + 1..nrows).find(|&i| a[i][t] != 0);
            let row_rest = (t + 1..ncols).find(|&j| a[t][j] != 0);
            if col_rest.is_some() || row_rest.is_some() {
                // a remainder smaller than the pivot is left; make it the new pivot
                let (mut bi, mut bj) = (t, t);
                for i in t + 1..nrows {
                    if a[i][t] != 0 && a[i][t].unsigned_abs() < a[bi][bj].unsigned_abs() {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t + 1..ncols {
                    if a[t][j] != 0 && a[t][j].unsigned_abs() < a[bi][bj].unsigned_abs() {
                        (bi, bj) = (t, j);
                    }
                }
                a.swap(t, bi);
                swap_cols(&mut a, t, bj);
                continue;
            }

            let pivot = a[t][t];
            let offender = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % pivot != 0));
            match offender {
                Some(i) => {
                    for j in t..ncols {
                        a[t][j] = a[t][j].checked_add(a[i][j]).ok_or(Error::Overflow)?;
                    }
                }
                None => break,
            }
        }
        divisors.push(a[t][t].unsigned_abs());
    }
    Ok(divisors)
}

fn swap_cols(a: &mut [Vec<i128>], j1: usize, j2: usize) {
    if j1 != j2 {
        for row in a.iter_mut() {
            row.swap(j1, j2);
        }
    }
}

fn min_abs_nonzero(
    a: &[Vec<i128>],
    rows: core::ops::Range<usize>,
    cols: core::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].unsigned_abs() < a[bi][bj].unsigned_abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
