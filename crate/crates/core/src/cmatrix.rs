//! C-matrices `M(c)` with entries `min(c_i, c_j)` for a nonincreasing
//! nonnegative vector `c`. For an integer degree vector `d`,
//! `M(d) = A(d) A(d)^T` where `A(d)` is the chain matrix, so `lambda_1(M(d))`
//! is `lambda_max(G_D)^2`.
//!
//! Also holds the decomposition of a degree vector into the rank-two
//! vertices `a_k(d) = (e'/k) 1_{m,k} + d_m 1_{m,m}`.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bipartite::DegreeSequence;
use crate::error::{invalid, Result};
use crate::spectra::symmetric_eigenvalues;
use crate::Rational;

/// Eigenvalues above this count toward the numerical rank.
pub const RANK_TOL: f64 = 1e-8;

/// Nonincreasing, nonnegative real vector.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CVector(Vec<f64>);

impl CVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return invalid("c-vector is empty");
        }
        if entries.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return invalid("c-vector entries must be finite and nonnegative");
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return invalid("c-vector must be nonincreasing");
        }
        Ok(Self(entries))
    }

    pub fn from_degrees(d: &DegreeSequence) -> Self {
        Self(d.degrees().iter().map(|&x| x as f64).collect())
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The positive prefix `c_+`.
    pub fn positive_part(&self) -> &[f64] {
        let k = self.0.iter().take_while(|&&x| x > 0.0).count();
        &self.0[..k]
    }

    /// Number of distinct positive entries.
    pub fn distinct_positive(&self) -> usize {
        let pos = self.positive_part();
        if pos.is_empty() {
            return 0;
        }
        1 + pos.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// Row-major `p x p` matrix with entry `(i, j)` equal to `c_{max(i,j)} = min(c_i, c_j)`.
pub fn build_cmatrix(c: &CVector) -> Vec<f64> {
    let p = c.len();
    let e = c.entries();
    (0..p)
        .flat_map(|i| (0..p).map(move |j| e[i.max(j)]))
        .collect()
}

/// Integer C-matrix `M(d)`, for exact comparison with `A(d) A(d)^T`.
pub fn build_cmatrix_int(d: &DegreeSequence) -> Vec<i64> {
    let p = d.len();
    let e = d.degrees();
    (0..p)
        .flat_map(|i| (0..p).map(move |j| e[i.max(j)] as i64))
        .collect()
}

pub fn cmatrix_eigenvalues(c: &CVector) -> Vec<f64> {
    symmetric_eigenvalues(&build_cmatrix(c), c.len())
}

/// Rank of `M(c)`: the number of distinct positive entries of `c`.
pub fn cmatrix_rank(c: &CVector) -> usize {
    c.distinct_positive()
}

/// Numerical rank: eigenvalues of `M(c)` above `tol`.
pub fn cmatrix_numerical_rank(c: &CVector, tol: f64) -> usize {
    cmatrix_eigenvalues(c).iter().filter(|&&l| l > tol).count()
}

/// `e = sum c_i` (the trace), `s2 = sum (2i-1) c_i^2` (trace of the square),
/// `beta = sum_{i<j} c_j (c_i - c_j)` (second elementary symmetric function).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceIdentities {
    pub e: f64,
    pub s2: f64,
    pub beta: f64,
}

pub fn trace_identities(c: &CVector) -> TraceIdentities {
    let x = c.entries();
    let e = x.iter().sum();
    let s2 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (2 * i + 1) as f64 * v * v)
        .sum();
    let mut beta = 0.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            beta += x[j] * (x[i] - x[j]);
        }
    }
    TraceIdentities { e, s2, beta }
}

/// `sqrt(sum (2i-1) c_i^2)`.
pub fn bound_est1(c: &CVector) -> f64 {
    trace_identities(c).s2.sqrt()
}

/// Larger root of `x(e-x) + (h-2)/(2(h-1)) (e-x)^2 = beta`, where `h` is
/// the number of distinct positive entries:
/// `((2a-1) e + sqrt(e^2 - 4 a beta)) / (2a)` with `a = h / (2(h-1))`.
pub fn bound_maxest(c: &CVector) -> Result<f64> {
    let h = c.distinct_positive();
    if h < 2 {
        return invalid(format!(
            "maxest needs at least two distinct positive entries, found {h}"
        ));
    }
    let TraceIdentities { e, beta, .. } = trace_identities(c);
    Ok(maxest_value(h, e, beta))
}

pub(crate) fn maxest_value(h: usize, e: f64, beta: f64) -> f64 {
    let alpha = h as f64 / (2.0 * (h - 1) as f64);
    let disc = (e * e - 4.0 * alpha * beta).max(0.0);
    ((2.0 * alpha - 1.0) * e + disc.sqrt()) / (2.0 * alpha)
}

/// Writes an integer degree vector `d` as a convex combination of the
/// rank-two vectors `a_k(d)`, `k = 1..s`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexDecomposition {
    pub m: usize,
    /// Smallest degree `d_m`.
    pub base_degree: usize,
    /// `e' = e - m d_m`.
    pub excess: usize,
    /// `delta_i = d_i - d_m` for the `s` rows with positive excess.
    pub excess_profile: Vec<usize>,
    #[serde(serialize_with = "ser_rational_rows")]
    pub vertices: Vec<Vec<Rational>>,
    #[serde(serialize_with = "ser_rational_row")]
    pub coefficients: Vec<Rational>,
}

fn ser_rational_row<S: serde::Serializer>(
    row: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(row.iter().map(|x| x.to_string()))
}

fn ser_rational_rows<S: serde::Serializer>(
    rows: &[Vec<Rational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        rows.iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    )
}

impl ConvexDecomposition {
    pub fn s(&self) -> usize {
        self.excess_profile.len()
    }

    pub fn e(&self) -> usize {
        self.excess + self.m * self.base_degree
    }

    /// `sum_k alpha_k a_k(d)`, exactly.
    pub fn recombine(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.m];
        for (a, &alpha) in self.vertices.iter().zip(&self.coefficients) {
            for (o, &x) in out.iter_mut().zip(a) {
                *o += alpha * x;
            }
        }
        out
    }

    pub fn vertex_cvector(&self, k: usize) -> CVector {
        CVector(
            self.vertices[k - 1]
                .iter()
                .map(|x| x.to_f64().expect("finite rational"))
                .collect(),
        )
    }

    /// `lambda_1(M(a_k))` from the rank-two closed form, for `k = 1..s`.
    pub fn vertex_eigenvalues(&self) -> Vec<f64> {
        (1..=self.s())
            .map(|k| vertex_eigenvalue(self.m, k, self.base_degree, self.excess))
            .collect()
    }
}

/// Requires at least two distinct degrees.
pub fn convex_decomposition(d: &DegreeSequence) -> Result<ConvexDecomposition> {
    if d.is_constant() {
        return invalid("all degrees equal: the decomposition is degenerate");
    }
    let m = d.len();
    let dm = d.min_degree();
    let delta: Vec<usize> = d
        .degrees()
        .iter()
        .map(|&x| x - dm)
        .take_while(|&x| x > 0)
        .collect();
    let s = delta.len();
    let excess: usize = delta.iter().sum();
    let ep = Rational::from_integer(excess as i128);

    let vertices = (1..=s)
        .map(|k| {
            let top = ep / (k as i128) + (dm as i128);
            (0..m)
                .map(|i| {
                    if i < k {
                        top
                    } else {
                        Rational::from_integer(dm as i128)
                    }
                })
                .collect()
        })
        .collect();
    // alpha_k = k (delta_k - delta_{k+1}) / e'
    let coefficients = (1..=s)
        .map(|k| {
            let next = if k < s { delta[k] } else { 0 };
            Rational::new((k * (delta[k - 1] - next)) as i128, excess as i128)
        })
        .collect();

    Ok(ConvexDecomposition {
        m,
        base_degree: dm,
        excess,
        excess_profile: delta,
        vertices,
        coefficients,
    })
}

/// `k (m - k) (e'/k) d_m`: the product of the two nonzero eigenvalues of `M(a_k)`.
pub fn vertex_omega(m: usize, k: usize, base_degree: usize, excess: usize) -> Rational {
    Rational::new(((m - k) * excess * base_degree) as i128, 1)
}

/// `(e + sqrt(e^2 - 4 omega(a_k))) / 2` with `e = e' + m d_m`.
/// For `k = m` the matrix has rank one and this returns `e`.
pub fn vertex_eigenvalue(m: usize, k: usize, base_degree: usize, excess: usize) -> f64 {
    let e = (excess + m * base_degree) as f64;
    let omega = vertex_omega(m, k, base_degree, excess)
        .to_f64()
        .expect("finite");
    (e + (e * e - 4.0 * omega).max(0.0).sqrt()) / 2.0
}
