//! Small exact linear algebra: determinants over `Q(i)` and ranks of
//! integer matrices.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::scalars::GaussianRational;

/// Determinant of a square matrix over `Q(i)` by Gaussian elimination.
///
/// Panics if `rows` is not square.
pub fn determinant(mut rows: Vec<Vec<GaussianRational>>) -> GaussianRational {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    let mut det = GaussianRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return GaussianRational::zero();
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = -det;
        }
        let inv = rows[col][col].inv().expect("pivot is nonzero");
        det = &det * &rows[col][col];
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &inv;
            for c in col..n {
                let t = &factor * &rows[col][c];
                rows[r][c] = &rows[r][c] - &t;
            }
        }
    }
    det
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so growth is bounded
/// and no rationals are formed.
pub fn rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j];
                rows[i][j] = v / &prev;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        r += 1;
    }
    r
}

/// Invariant factors (diagonal of the Smith normal form) of an integer
/// matrix, in divisibility order. Zero factors are omitted.
#[cfg(feature = "smith")]
pub fn invariant_factors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    use num_integer::Integer;
    use num_traits::Signed;

    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Smallest nonzero entry in the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }

        let mut clean = true;
        for i in t + 1..nrows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            for j in t..ncols {
                let v = &q * &m[t][j];
                m[i][j] -= v;
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..ncols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            for i in t..nrows {
                let v = &q * &m[i][t];
                m[i][j] -= v;
            }
            clean &= m[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // Pivot must divide the rest of the block; otherwise fold a row in.
        let bad = (t + 1..nrows)
            .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
        if let Some((i, _)) = bad {
            for j in t..ncols {
                let v = m[i][j].clone();
                m[t][j] += v;
            }
            continue;
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}
