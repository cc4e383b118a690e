//! Independent check of the wreath-product arithmetic: every element as an
//! explicit 2n×2n complex matrix, fixed spaces by Gaussian elimination.

#![allow(dead_code)]

use floplab_core::WreathElement;
use num_complex::Complex64;

pub type Matrix = Vec<Vec<Complex64>>;

pub const TOLERANCE: f64 = 1e-9;

/// `diag(ζ^gᵢ, ζ^-gᵢ)` on block `i` after moving block `j` to block `σ(j)`.
pub fn matrix_of(a: &WreathElement) -> Matrix {
    let m = a.params().m() as f64;
    let n = a.params().n() as usize;
    let mut out = vec![vec![Complex64::new(0.0, 0.0); 2 * n]; 2 * n];
    for (j, &target) in a.perm().iter().enumerate() {
        let g = a.twists()[target] as f64;
        let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * g / m);
        out[2 * target][2 * j] = zeta;
        out[2 * target + 1][2 * j + 1] = zeta.inv();
    }
    out
}

pub fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn approx_eq(a: &Matrix, b: &Matrix) -> bool {
    a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| (x - y).norm() < TOLERANCE)
}

pub fn is_identity(a: &Matrix) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| (x - if i == j { 1.0 } else { 0.0 }).norm() < TOLERANCE))
}

pub fn rank(mut a: Matrix) -> usize {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()));
        let Some(pivot) = pivot else { break };
        if a[pivot][col].norm() < TOLERANCE {
            continue;
        }
        a.swap(rank, pivot);
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank {
                let factor = row[col] / pivot_row[col];
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= factor * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Codimension of `ker(A - I)`, i.e. `rank(A - I)`.
pub fn fixed_codim(a: &WreathElement) -> u32 {
    let mut m = matrix_of(a);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= 1.0;
    }
    rank(m) as u32
}
