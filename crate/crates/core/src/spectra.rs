//! Singular values of representation matrices via a cyclic Jacobi
//! eigensolver on the Gram matrix. The largest eigenvalue of a bipartite
//! graph is the largest singular value of its representation matrix.

use serde::Serialize;

use crate::bipartite::{is_complete_pattern, RepresentationMatrix};
use crate::error::{invalid, Result};

/// Absolute tolerance for spectral comparisons on squared singular values.
pub const SPECTRAL_TOL: f64 = 1e-9;

const JACOBI_REL_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    /// Eigenvalues, nonincreasing.
    pub values: Vec<f64>,
    /// Eigenvectors as rows, aligned with `values`.
    pub vectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi rotations on a row-major `n x n` symmetric matrix.
///
/// Stops once the off-diagonal Frobenius norm drops below `1e-14 * ||M||_F`.
pub fn symmetric_eigen(matrix: &[f64], n: usize) -> SymmetricEigen {
    assert_eq!(matrix.len(), n * n, "matrix must be n x n");
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = JACOBI_REL_TOL * norm;

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a, n);
        if off <= target || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    SymmetricEigen {
        values: order.iter().map(|&i| a[i * n + i]).collect(),
        vectors: order
            .iter()
            .map(|&i| (0..n).map(|k| v[k * n + i]).collect())
            .collect(),
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Nonincreasing eigenvalues of a symmetric matrix.
pub fn symmetric_eigenvalues(matrix: &[f64], n: usize) -> Vec<f64> {
    symmetric_eigen(matrix, n).values
}

fn gram_f64(a: &RepresentationMatrix) -> Vec<f64> {
    a.gram().into_iter().map(|x| x as f64).collect()
}

fn nonzero(a: &RepresentationMatrix) -> Result<()> {
    if a.is_zero() {
        return invalid("singular values of the zero matrix are not defined here");
    }
    Ok(())
}

/// Eigenvalues of `A A^T`, i.e. the squared singular values, clamped so that
/// rounding noise below `1e-12 * sigma_1^2` reads as exactly zero.
pub fn squared_singular_values(a: &RepresentationMatrix) -> Vec<f64> {
    let mut vals = symmetric_eigenvalues(&gram_f64(a), a.rows());
    let floor = 1e-12 * vals.first().copied().unwrap_or(0.0).max(1.0);
    for v in &mut vals {
        if *v < floor {
            *v = 0.0;
        }
    }
    vals
}

/// Largest singular value: `sqrt` of the dominant eigenvalue of `A A^T`.
pub fn sigma1(a: &RepresentationMatrix) -> Result<f64> {
    nonzero(a)?;
    Ok(squared_singular_values(a)[0].sqrt())
}

/// `(sigma_1, sigma_2)`, with `sigma_2 = 0` for rank one (or one row).
pub fn sigma_pair(a: &RepresentationMatrix) -> Result<(f64, f64)> {
    nonzero(a)?;
    let vals = squared_singular_values(a);
    Ok((vals[0].sqrt(), vals.get(1).copied().unwrap_or(0.0).sqrt()))
}

/// Result of comparing `sigma_1` against `sqrt(e)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SqrtEGap {
    /// `sqrt(e) - sigma_1`.
    pub gap: f64,
    /// Gap below [`SPECTRAL_TOL`].
    pub equality: bool,
    pub complete: bool,
}

impl SqrtEGap {
    /// Equality must coincide with a complete pattern.
    pub fn consistent(&self) -> bool {
        self.equality == self.complete && self.gap >= -SPECTRAL_TOL
    }
}

pub fn sqrt_e_gap(a: &RepresentationMatrix) -> Result<SqrtEGap> {
    let s1 = sigma1(a)?;
    let complete = is_complete_pattern(a)?;
    let gap = (a.edges() as f64).sqrt() - s1;
    Ok(SqrtEGap {
        gap,
        equality: gap.abs() < SPECTRAL_TOL,
        complete,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralSummary {
    pub sigma1: f64,
    pub sigma2: f64,
    pub e: usize,
    pub sqrt_e_gap: f64,
}

pub fn spectral_summary(a: &RepresentationMatrix) -> Result<SpectralSummary> {
    let (sigma1, sigma2) = sigma_pair(a)?;
    let e = a.edges();
    Ok(SpectralSummary {
        sigma1,
        sigma2,
        e,
        sqrt_e_gap: (e as f64).sqrt() - sigma1,
    })
}

/// Unit dominant eigenvector of `A A^T`, sign-normalized to a nonnegative sum.
/// This is the left half `x` of the Perron vector of the bipartite adjacency matrix.
pub fn dominant_left_vector(a: &RepresentationMatrix) -> Result<Vec<f64>> {
    nonzero(a)?;
    let eig = symmetric_eigen(&gram_f64(a), a.rows());
    let mut x = eig.vectors[0].clone();
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    Ok(x)
}

/// Full spectrum of the adjacency matrix `[[0, A], [A^T, 0]]`.
pub fn adjacency_eigenvalues(a: &RepresentationMatrix) -> Vec<f64> {
    let (m, n) = (a.rows(), a.cols());
    let size = m + n;
    let mut b = vec![0.0; size * size];
    for i in 0..m {
        for j in 0..n {
            let x = a.get(i, j) as f64;
            b[i * size + m + j] = x;
            b[(m + j) * size + i] = x;
        }
    }
    symmetric_eigenvalues(&b, size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::{chain_from_degrees, DegreeSequence};

    fn chain(v: &[usize]) -> RepresentationMatrix {
        chain_from_degrees(&DegreeSequence::new(v.to_vec()).unwrap())
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1.0)
    }

    #[test]
    fn sigma1_examples() {
        assert!(
            rel(
                sigma1(&RepresentationMatrix::all_ones(2, 3)).unwrap(),
                6f64.sqrt()
            ) < 1e-12
        );
        assert!(rel(sigma1(&RepresentationMatrix::identity(2)).unwrap(), 1.0) < 1e-12);
        let want = ((3.0 + 5f64.sqrt()) / 2.0).sqrt();
        assert!(rel(sigma1(&chain(&[2, 1])).unwrap(), want) < 1e-12);
    }

    #[test]
    fn zero_matrix_rejected() {
        let z = RepresentationMatrix::new(2, 2, vec![0; 4]).unwrap();
        assert!(sigma1(&z).is_err());
        assert!(sigma_pair(&z).is_err());
    }

    #[test]
    fn sigma_pair_examples() {
        let (s1, s2) = sigma_pair(&chain(&[5, 5, 4])).unwrap();
        assert!((s1 * s1 - (7.0 + 41f64.sqrt())).abs() < 1e-10);
        assert!((s2 * s2 - (7.0 - 41f64.sqrt())).abs() < 1e-10);
        assert_eq!(
            sigma_pair(&RepresentationMatrix::all_ones(2, 2)).unwrap().1,
            0.0
        );
        assert!((sigma_pair(&RepresentationMatrix::all_ones(2, 2)).unwrap().0 - 2.0).abs() < 1e-12);
        let (a, b) = sigma_pair(&RepresentationMatrix::identity(2)).unwrap();
        assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gap_examples() {
        let g = sqrt_e_gap(&RepresentationMatrix::all_ones(3, 2)).unwrap();
        assert!(g.equality && g.complete && g.consistent());
        let g = sqrt_e_gap(&chain(&[2, 1])).unwrap();
        let want = 3f64.sqrt() - ((3.0 + 5f64.sqrt()) / 2.0).sqrt();
        assert!((g.gap - want).abs() < 1e-12 && !g.equality && g.consistent());
        let g = sqrt_e_gap(&chain(&[5, 2, 2, 1])).unwrap();
        assert!(g.gap > SPECTRAL_TOL && !g.complete);
        let with_zero_col = RepresentationMatrix::from_row_strings(&["10", "10"]).unwrap();
        assert!(sqrt_e_gap(&with_zero_col).is_err());
    }

    #[test]
    fn jacobi_reconstructs_matrix() {
        let m = [4.0, 1.0, 2.0, 1.0, 3.0, 0.5, 2.0, 0.5, 1.0];
        let eig = symmetric_eigen(&m, 3);
        for i in 0..3 {
            for j in 0..3 {
                let r: f64 = (0..3)
                    .map(|k| eig.values[k] * eig.vectors[k][i] * eig.vectors[k][j])
                    .sum();
                assert!((r - m[i * 3 + j]).abs() < 1e-12);
            }
        }
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn perron_vector_is_positive_and_ordered() {
        let x = dominant_left_vector(&chain(&[5, 2, 2, 1])).unwrap();
        assert!(x.iter().all(|&v| v > 0.0));
        assert!(x.windows(2).all(|w| w[0] >= w[1] - 1e-12));
        assert!((x[1] - x[2]).abs() < 1e-12);
    }
}
