//! Dense symmetric positive-definite inversion on row-major buffers.
//!
//! The inner loops are contiguous dot products so they vectorize; this is the
//! kernel behind the pseudoinverse `(L + J/N)^-1 - J/N`.

use crate::error::{Error, Result};

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    let (a, b) = (&a[..n], &b[..n]);
    let mut acc = [0.0f64; 8];
    let chunks_a = a.chunks_exact(8);
    let chunks_b = b.chunks_exact(8);
    let tail: f64 = chunks_a
        .remainder()
        .iter()
        .zip(chunks_b.remainder())
        .map(|(x, y)| x * y)
        .sum();
    for (x, y) in chunks_a.zip(chunks_b) {
        for k in 0..8 {
            acc[k] += x[k] * y[k];
        }
    }
    acc.iter().sum::<f64>() + tail
}

/// Overwrites the lower triangle of `a` (row-major, `n x n`) with its Cholesky
/// factor. The strict upper triangle is left untouched.
pub(crate) fn cholesky_in_place(a: &mut [f64], n: usize) -> Result<()> {
    debug_assert_eq!(a.len(), n * n);
    for i in 0..n {
        let (done, rest) = a.split_at_mut(i * n);
        let row_i = &mut rest[..n];
        for j in 0..i {
            let row_j = &done[j * n..j * n + j + 1];
            let s = row_i[j] - dot(&row_i[..j], &row_j[..j]);
            row_i[j] = s / row_j[j];
        }
        let pivot = row_i[i] - dot(&row_i[..i], &row_i[..i]);
        if pivot.is_nan() || pivot <= 0.0 {
            return Err(Error::NotPositiveDefinite {
                pivot: i,
                value: pivot,
            });
        }
        row_i[i] = pivot.sqrt();
    }
    Ok(())
}

/// Given the Cholesky factor `L` in the lower triangle of `l`, returns
/// `W^T` for `W = L^-1`, row-major: row `k` holds column `k` of `W`, which is
/// zero before index `k`.
fn inverse_factor_transposed(l: &[f64], n: usize) -> Vec<f64> {
    let mut wt = vec![0.0; n * n];
    for k in 0..n {
        let col = &mut wt[k * n..(k + 1) * n];
        col[k] = 1.0 / l[k * n + k];
        for i in k + 1..n {
            let s = dot(&l[i * n + k..i * n + i], &col[k..i]);
            col[i] = -s / l[i * n + i];
        }
    }
    wt
}

/// Inverse of a symmetric positive-definite matrix given row-major.
pub(crate) fn spd_inverse(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    cholesky_in_place(&mut a, n)?;
    let wt = inverse_factor_transposed(&a, n);
    drop(a);
    // A^-1 = W^T W, so entry (j, k) = <column j of W, column k of W>
    let mut inv = vec![0.0; n * n];
    for j in 0..n {
        for k in j..n {
            let v = dot(&wt[j * n + k..(j + 1) * n], &wt[k * n + k..(k + 1) * n]);
            inv[j * n + k] = v;
            inv[k * n + j] = v;
        }
    }
    Ok(inv)
}

/// `tr(A^-1) = ||L^-1||_F^2` without forming the inverse.
pub(crate) fn spd_inverse_trace(mut a: Vec<f64>, n: usize) -> Result<f64> {
    cholesky_in_place(&mut a, n)?;
    let wt = inverse_factor_transposed(&a, n);
    Ok(wt.iter().map(|x| x * x).sum())
}
